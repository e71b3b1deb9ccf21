//! Polynomial families, their symmetric Jacobi matrices, the coefficients of
//! their difference equations and their Jacobi-class growth parameters.
//!
//! The difference equation has the form
//!
//! ```text
//! B(x) p_n(x + δ) - C(x, n) p_n(x) + D(x) p_n(x - δ) = 0
//! ```
//!
//! with `δ = 1` for polynomials orthogonal on the integers (Meixner) and
//! `δ = i` for polynomials orthogonal on the line (Meixner-Pollaczek).

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::eigen::{Scale, SymTridiag};
use crate::error::{Error, Result};
use crate::real::Real;

/// Family kind together with its parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Family {
    Hermite,
    Charlier { a: f64 },
    Meixner { beta: f64, c: f64 },
    MeixnerPollaczek { lambda: f64, phi: f64 },
}

/// A validated polynomial family. Parameter ranges are checked once, at
/// construction, so every other operation can assume them.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FamilySpec(Family);

impl FamilySpec {
    pub fn hermite() -> Self {
        FamilySpec(Family::Hermite)
    }

    pub fn charlier(a: f64) -> Result<Self> {
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::InvalidParameter(format!("Charlier requires a > 0, got {a}")));
        }
        Ok(FamilySpec(Family::Charlier { a }))
    }

    pub fn meixner(beta: f64, c: f64) -> Result<Self> {
        if !(beta.is_finite() && beta > 0.0) {
            return Err(Error::InvalidParameter(format!("Meixner requires beta > 0, got {beta}")));
        }
        if !(c > 0.0 && c < 1.0) {
            return Err(Error::InvalidParameter(format!("Meixner requires 0 < c < 1, got {c}")));
        }
        Ok(FamilySpec(Family::Meixner { beta, c }))
    }

    pub fn meixner_pollaczek(lambda: f64, phi: f64) -> Result<Self> {
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "Meixner-Pollaczek requires lambda > 0, got {lambda}"
            )));
        }
        if !(phi > 0.0 && phi < PI) {
            return Err(Error::InvalidParameter(format!(
                "Meixner-Pollaczek requires 0 < phi < pi, got {phi}"
            )));
        }
        Ok(FamilySpec(Family::MeixnerPollaczek { lambda, phi }))
    }

    pub fn kind(&self) -> Family {
        self.0
    }

    pub fn name(&self) -> &'static str {
        match self.0 {
            Family::Hermite => "Hermite",
            Family::Charlier { .. } => "Charlier",
            Family::Meixner { .. } => "Meixner",
            Family::MeixnerPollaczek { .. } => "Meixner-Pollaczek",
        }
    }

    /// Contraction that maps the zeros of `p_n` onto the support of the
    /// limiting density.
    pub fn scale(&self) -> Scale {
        match self.0 {
            Family::Hermite => Scale::HermiteContracted,
            _ => Scale::Degree,
        }
    }

    /// Diagonal and off-diagonal of the `n x n` truncated Jacobi matrix,
    /// evaluated in the scalar type `R`. Off-diagonals are returned as
    /// absolute values.
    pub fn jacobi_entries<R: Real>(&self, n: usize) -> (Vec<R>, Vec<R>) {
        let k_r = |k: usize| R::from_usize(k);
        match self.0 {
            Family::Hermite => {
                let diag = vec![R::zero(); n];
                let off = (0..n.saturating_sub(1))
                    .map(|k| (k_r(k + 1) * R::from_f64(0.5)).sqrt())
                    .collect();
                (diag, off)
            }
            Family::Charlier { a } => {
                let a_r = R::from_f64(a);
                let diag = (0..n).map(|k| k_r(k) + a_r.clone()).collect();
                let off = (0..n.saturating_sub(1))
                    .map(|k| (a_r.clone() * k_r(k + 1)).sqrt())
                    .collect();
                (diag, off)
            }
            Family::Meixner { beta, c } => {
                let beta_r = R::from_f64(beta);
                let c_r = R::from_f64(c);
                let one_minus_c = R::one() - c_r.clone();
                let diag = (0..n)
                    .map(|k| (k_r(k) + (k_r(k) + beta_r.clone()) * c_r.clone()) / one_minus_c.clone())
                    .collect();
                let off = (0..n.saturating_sub(1))
                    .map(|k| {
                        (k_r(k + 1) * (k_r(k) + beta_r.clone()) * c_r.clone()).sqrt()
                            / one_minus_c.clone()
                    })
                    .collect();
                (diag, off)
            }
            Family::MeixnerPollaczek { lambda, phi } => {
                // cot and sin are rounded to double; the matrix is exact for
                // those rounded constants.
                let cot = R::from_f64(phi.cos() / phi.sin());
                let two_sin = R::from_f64(2.0 * phi.sin());
                let lambda_r = R::from_f64(lambda);
                let two_lambda = R::from_f64(2.0 * lambda);
                let diag = (0..n)
                    .map(|k| -((k_r(k) + lambda_r.clone()) * cot.clone()))
                    .collect();
                let off = (0..n.saturating_sub(1))
                    .map(|k| (k_r(k + 1) * (two_lambda.clone() + k_r(k))).sqrt() / two_sin.clone())
                    .collect();
                (diag, off)
            }
        }
    }

    /// Whether the family's difference equation is implemented.
    pub fn has_difference_equation(&self) -> bool {
        matches!(self.0, Family::Meixner { .. } | Family::MeixnerPollaczek { .. })
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Family::Hermite => write!(f, "hermite"),
            Family::Charlier { a } => write!(f, "charlier:a={a}"),
            Family::Meixner { beta, c } => write!(f, "meixner:beta={beta},c={c}"),
            Family::MeixnerPollaczek { lambda, phi } => write!(f, "mp:lambda={lambda},phi={phi}"),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    /// Parses `hermite`, `charlier:a=<v>`, `meixner:beta=<v>,c=<v>` and
    /// `mp:lambda=<v>,phi=<v>` (phi in radians).
    fn from_str(input: &str) -> Result<Self> {
        let fail = |reason: String| Error::FamilyParse { input: input.to_string(), reason };
        let (name, params) = match input.split_once(':') {
            Some((name, params)) => (name.trim(), params.trim()),
            None => (input.trim(), ""),
        };
        let mut pairs: Vec<(&str, f64)> = Vec::new();
        if !params.is_empty() {
            for item in params.split(',') {
                let (key, value) = item
                    .split_once('=')
                    .ok_or_else(|| fail(format!("expected key=value, found '{item}'")))?;
                let value: f64 = value
                    .trim()
                    .parse()
                    .map_err(|_| fail(format!("'{}' is not a number", value.trim())))?;
                pairs.push((key.trim(), value));
            }
        }
        let take = |keys: &[&str]| -> Result<Vec<f64>> {
            if pairs.len() != keys.len() {
                return Err(fail(format!("expected parameters {}", keys.join(","))));
            }
            keys.iter()
                .map(|k| {
                    pairs
                        .iter()
                        .find(|(key, _)| key == k)
                        .map(|&(_, v)| v)
                        .ok_or_else(|| fail(format!("missing parameter '{k}'")))
                })
                .collect()
        };
        let spec = match name.to_ascii_lowercase().as_str() {
            "hermite" => {
                take(&[])?;
                FamilySpec::hermite()
            }
            "charlier" => {
                let v = take(&["a"])?;
                FamilySpec::charlier(v[0])?
            }
            "meixner" => {
                let v = take(&["beta", "c"])?;
                FamilySpec::meixner(v[0], v[1])?
            }
            "mp" | "meixner-pollaczek" => {
                let v = take(&["lambda", "phi"])?;
                FamilySpec::meixner_pollaczek(v[0], v[1])?
            }
            other => return Err(fail(format!("unknown family '{other}'"))),
        };
        Ok(spec)
    }
}

/// Truncated symmetric Jacobi matrix of size `n`; its eigenvalues are the
/// zeros of `p_n`.
pub fn recurrence_jacobi(family: &FamilySpec, n: usize) -> Result<SymTridiag> {
    if n == 0 {
        return Err(Error::InvalidParameter("matrix size n must be at least 1".into()));
    }
    let (diag, off) = family.jacobi_entries::<f64>(n);
    SymTridiag::new(diag, off)
}

/// Coefficients `B`, `C`, `D` and shift `δ` of the exact difference equation.
#[derive(Clone, Copy, Debug)]
pub struct ExactCoefficients {
    family: Family,
}

impl ExactCoefficients {
    pub fn b(&self, x: Complex64) -> Complex64 {
        match self.family {
            Family::Meixner { beta, c } => (x + beta) * c,
            Family::MeixnerPollaczek { lambda, phi } => {
                Complex64::from_polar(1.0, phi) * (lambda - Complex64::i() * x)
            }
            _ => unreachable!("constructed only for difference families"),
        }
    }

    pub fn c(&self, x: Complex64, n: usize) -> Complex64 {
        let n = n as f64;
        match self.family {
            Family::Meixner { beta, c } => x + (x + beta) * c + (c - 1.0) * n,
            Family::MeixnerPollaczek { lambda, phi } => {
                2.0 * Complex64::i() * ((n + lambda) * phi.sin() - x * phi.cos())
            }
            _ => unreachable!("constructed only for difference families"),
        }
    }

    pub fn d(&self, x: Complex64) -> Complex64 {
        match self.family {
            Family::Meixner { .. } => x,
            Family::MeixnerPollaczek { lambda, phi } => {
                -Complex64::from_polar(1.0, -phi) * (lambda + Complex64::i() * x)
            }
            _ => unreachable!("constructed only for difference families"),
        }
    }

    pub fn delta(&self) -> Complex64 {
        match self.family {
            Family::MeixnerPollaczek { .. } => Complex64::i(),
            _ => Complex64::new(1.0, 0.0),
        }
    }

    /// Whether `δ` is real (discrete weight).
    pub fn real_shift(&self) -> bool {
        !matches!(self.family, Family::MeixnerPollaczek { .. })
    }
}

pub fn exact_coefficients(family: &FamilySpec) -> Result<ExactCoefficients> {
    if !family.has_difference_equation() {
        return Err(Error::UnsupportedFamily {
            family: family.name(),
            operation: "difference-equation coefficients",
        });
    }
    Ok(ExactCoefficients { family: family.kind() })
}

/// Scaled limits `b(z) = lim B(zn)/n^μ` and likewise for `c`, `d`.
#[derive(Clone, Copy, Debug)]
pub struct LimitCoeffs {
    family: Family,
    /// Growth exponent of `C(x, n)` in `n`.
    pub mu: f64,
}

impl LimitCoeffs {
    pub fn b(&self, z: f64) -> Complex64 {
        match self.family {
            Family::Meixner { c, .. } => Complex64::new(c * z, 0.0),
            Family::MeixnerPollaczek { phi, .. } => -Complex64::i() * z * Complex64::from_polar(1.0, phi),
            _ => unreachable!(),
        }
    }

    pub fn c(&self, z: f64) -> Complex64 {
        match self.family {
            Family::Meixner { c, .. } => Complex64::new((1.0 + c) * z + c - 1.0, 0.0),
            Family::MeixnerPollaczek { phi, .. } => 2.0 * Complex64::i() * (phi.sin() - z * phi.cos()),
            _ => unreachable!(),
        }
    }

    pub fn d(&self, z: f64) -> Complex64 {
        match self.family {
            Family::Meixner { .. } => Complex64::new(z, 0.0),
            Family::MeixnerPollaczek { phi, .. } => -Complex64::i() * z * Complex64::from_polar(1.0, -phi),
            _ => unreachable!(),
        }
    }

    pub fn delta(&self) -> Complex64 {
        match self.family {
            Family::MeixnerPollaczek { .. } => Complex64::i(),
            _ => Complex64::new(1.0, 0.0),
        }
    }

    /// `c(z) / (2 sqrt(b(z) d(z)))` with the principal square root.
    pub fn ratio(&self, z: f64) -> Complex64 {
        self.c(z) / (2.0 * (self.b(z) * self.d(z)).sqrt())
    }
}

pub fn limit_coefficients(family: &FamilySpec) -> Result<LimitCoeffs> {
    if !family.has_difference_equation() {
        return Err(Error::UnsupportedFamily {
            family: family.name(),
            operation: "scaled difference-equation limits",
        });
    }
    Ok(LimitCoeffs { family: family.kind(), mu: 1.0 })
}

/// Jacobi-class parameters: `J_kk ~ a k^γ`, `J_{k,k+1} ~ (b/2) k^γ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScalingClass {
    pub a: f64,
    pub b: f64,
    pub gamma: f64,
    /// `true` when the family's diagonal grows like `-a k^γ`; its spectrum is
    /// the mirror image of the one described by `(a, b)`.
    pub mirrored: bool,
}

pub fn scaling_params(family: &FamilySpec) -> ScalingClass {
    match family.kind() {
        Family::Hermite => ScalingClass { a: 0.0, b: 2f64.sqrt(), gamma: 0.5, mirrored: false },
        Family::Charlier { .. } => ScalingClass { a: 1.0, b: 0.0, gamma: 1.0, mirrored: false },
        Family::Meixner { c, .. } => ScalingClass {
            a: (1.0 + c) / (1.0 - c),
            b: 2.0 * c.sqrt() / (1.0 - c),
            gamma: 1.0,
            mirrored: false,
        },
        Family::MeixnerPollaczek { phi, .. } => {
            let signed_a = -phi.cos() / phi.sin();
            ScalingClass {
                a: signed_a.abs(),
                b: 1.0 / phi.sin(),
                gamma: 1.0,
                mirrored: signed_a < 0.0,
            }
        }
    }
}
