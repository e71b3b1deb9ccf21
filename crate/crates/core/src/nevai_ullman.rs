//! Moments and eigenvalue densities for Jacobi matrices with
//! `J_nn ~ a φ(n)`, `J_{n,n+1} ~ b φ(n)/2`.
//!
//! The growth `φ` enters through `ψ`, the inverse of `t ↦ φ(tn)/φ(n)` on
//! `[0, 1]`, and its derivative weight `g = dt/dψ`. For `φ(n) = n^γ`:
//! `ψ(t) = t^γ`, `g(ω) = ω^{1/γ-1}/γ`.
//!
//! Density integrals are taken after substitutions that remove the inverse
//! square root at the lower limit: `ω = m + h cosh s` when `a < b`, and
//! `ω = m - h cos θ` when `a > b`, where `m ± h` are the roots of
//! `b²ω² - (z - aω)²`. Both turn the weight into `ds/√|b²-a²|`.

use std::f64::consts::PI;

use crate::eigen::{trace_power_normalized, SymTridiag};
use crate::error::{Error, Result};
use crate::families::{recurrence_jacobi, scaling_params, FamilySpec};
use crate::quad::{integrate, integrate_with_endpoints, Endpoint};

const INNER_TOL: f64 = 1e-13;
const CHEBYSHEV_NODES: usize = 32;

pub trait GrowthProfile: Send + Sync {
    /// `ψ(t)` on `[0, 1]`, increasing from 0 to 1.
    fn psi(&self, t: f64) -> f64;
    /// `g(ω) = dt/dψ` at `ψ = ω`.
    fn g(&self, omega: f64) -> f64;
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PowerGrowth {
    pub gamma: f64,
}

impl GrowthProfile for PowerGrowth {
    fn psi(&self, t: f64) -> f64 {
        t.powf(self.gamma)
    }

    fn g(&self, omega: f64) -> f64 {
        omega.powf(1.0 / self.gamma - 1.0) / self.gamma
    }
}

/// Jacobi-class parameters with power growth `φ(n) = n^γ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MomentSpec {
    a: f64,
    b: f64,
    gamma: f64,
}

impl MomentSpec {
    pub fn new(a: f64, b: f64, gamma: f64) -> Result<Self> {
        check_ab(a, b)?;
        if !(gamma > 0.0 && gamma.is_finite()) {
            return Err(Error::InvalidParameter(format!("gamma must be positive, got {gamma}")));
        }
        Ok(MomentSpec { a, b, gamma })
    }

    /// The class of a family. Signs are normalized so `a ≥ 0`.
    pub fn for_family(family: &FamilySpec) -> Self {
        let s = scaling_params(family);
        MomentSpec { a: s.a, b: s.b, gamma: s.gamma }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn profile(&self) -> PowerGrowth {
        PowerGrowth { gamma: self.gamma }
    }

    /// `[a-b, a+b]` when `a < b`, `[0, a+b]` otherwise.
    pub fn support(&self) -> (f64, f64) {
        if self.a < self.b {
            (self.a - self.b, self.a + self.b)
        } else {
            (0.0, self.a + self.b)
        }
    }
}

fn check_ab(a: f64, b: f64) -> Result<()> {
    if !(a >= 0.0 && b >= 0.0 && a.is_finite() && b.is_finite()) {
        return Err(Error::InvalidParameter(format!("a and b must be finite and non-negative, got a = {a}, b = {b}")));
    }
    if a == 0.0 && b == 0.0 {
        return Err(Error::InvalidParameter("a and b cannot both vanish".into()));
    }
    Ok(())
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `E[X^k]` for the arcsine law on `[a-b, a+b]`, from the binomial expansion
/// of `(a + b cos θ)^k` and `E[cos^{2m} θ] = C(2m, m)/4^m`.
pub fn arcsine_moment(a: f64, b: f64, k: usize) -> f64 {
    (0..=k)
        .step_by(2)
        .map(|j| binomial(k, j) * a.powi((k - j) as i32) * b.powi(j as i32) * binomial(j, j / 2) / 4f64.powi(j as i32 / 2))
        .sum()
}

/// The same expectation by Gauss-Chebyshev quadrature (exact below degree 64).
fn arcsine_moment_chebyshev(a: f64, b: f64, k: usize) -> f64 {
    let n = CHEBYSHEV_NODES;
    (1..=n)
        .map(|j| {
            let theta = (2 * j - 1) as f64 * PI / (2 * n) as f64;
            (a + b * theta.cos()).powi(k as i32)
        })
        .sum::<f64>()
        / n as f64
}

/// `μ_k` for a general growth profile.
pub fn moment_with<P: GrowthProfile + ?Sized>(profile: &P, a: f64, b: f64, k: usize) -> Result<f64> {
    check_ab(a, b)?;
    if k > 20 {
        return Err(Error::InvalidParameter(format!("moment order must be at most 20, got {k}")));
    }
    if k == 0 {
        return Ok(1.0);
    }
    let inner = arcsine_moment_chebyshev(a, b, k);
    // ∫ g(ψ) ψ^k dψ = ∫_0^1 ψ(t)^k dt
    let outer = integrate(|t| profile.psi(t).powi(k as i32), 0.0, 1.0, INNER_TOL)?;
    Ok(inner * outer)
}

/// `μ_k = E_arcsine[X^k] · ∫_0^1 ψ(t)^k dt`.
pub fn moment(spec: &MomentSpec, k: usize) -> Result<f64> {
    moment_with(&spec.profile(), spec.a, spec.b, k)
}

/// Eigenvalue density of `J(n)/φ(n)` for a general growth profile.
pub fn nu_density_with<P: GrowthProfile + ?Sized>(profile: &P, a: f64, b: f64, z: f64) -> Result<f64> {
    check_ab(a, b)?;
    if a == b {
        return Err(Error::DegenerateParameters { a, b });
    }
    if a < b {
        if z < a - b || z > a + b {
            return Ok(0.0);
        }
        let r = (b * b - a * a).sqrt();
        if z == 0.0 {
            // ∫_0^1 g(ω)/ω dω / (π r)
            let v = integrate_with_endpoints(
                |w: f64| profile.g(w) / w,
                0.0,
                1.0,
                Endpoint::Singular,
                Endpoint::Regular,
                INNER_TOL,
            );
            return Ok(v.map_or(f64::INFINITY, |v| v / (PI * r)));
        }
        let (w_plus, w_minus) = (z / (a + b), z / (a - b));
        let (w0, w_other) = if w_plus >= w_minus { (w_plus, w_minus) } else { (w_minus, w_plus) };
        let m = 0.5 * (w0 + w_other);
        let h = 0.5 * (w0 - w_other);
        // acosh((1 - m)/h) = acosh(1 + u) with u from an exact difference
        let root_gap = if w_plus >= w_minus { (a + b - z) / (a + b) } else { (a - b - z) / (a - b) };
        let u = root_gap.max(0.0) / h;
        let s_max = if u > 1e8 {
            u.ln_1p() + std::f64::consts::LN_2
        } else {
            (u + (u * (u + 2.0)).sqrt()).ln_1p()
        };
        // h cosh(s) in log form: h can be subnormal while cosh(s) overflows
        let ln_h = h.ln();
        // the integral is at most the peak of g times the length of the range
        let scale = profile.g(w0).max(profile.g(1.0)).max(1.0) * s_max.max(1.0);
        let v = integrate(
            |s: f64| profile.g(m + 0.5 * ((s + ln_h).exp() + (ln_h - s).exp())),
            0.0,
            s_max,
            INNER_TOL * scale,
        )?;
        Ok(v / (PI * r))
    } else {
        if z < 0.0 || z > a + b {
            return Ok(0.0);
        }
        let r = (a * a - b * b).sqrt();
        if b == 0.0 {
            return Ok(profile.g(z / a) / a);
        }
        let (z_eff, stretch) = if z < a - b { (a - b, z / (a - b)) } else { (z, 1.0) };
        let w1 = z_eff / (a + b);
        let w2 = z_eff / (a - b);
        let m = 0.5 * (w1 + w2);
        let h = 0.5 * (w2 - w1);
        // θ_max = acos((m - 1)/h), via half-angle form to keep accuracy near π
        let one_plus = ((z_eff - (a - b)) / (a - b)).max(0.0) / h;
        let one_minus = ((a + b - z_eff) / (a + b)).max(0.0) / h;
        let theta_max = 2.0 * one_minus.sqrt().atan2(one_plus.sqrt());
        if stretch == 0.0 {
            return Ok(profile.g(0.0) * theta_max / (PI * r));
        }
        let v = integrate(|t: f64| profile.g(stretch * (m - h * t.cos())), 0.0, theta_max, INNER_TOL)?;
        Ok(v / (PI * r))
    }
}

/// Eigenvalue density of `J(n)/n^γ`. On `[0, a-b]` (case `a > b`) the power
/// form `h(a-b)·(z/(a-b))^{1/γ-1}` is used; at `z = 0` with `a < b` the
/// closed form `1/(π(1-γ)√(b²-a²))` for `γ < 1`, `+∞` otherwise.
pub fn nu_density(spec: &MomentSpec, z: f64) -> Result<f64> {
    let MomentSpec { a, b, gamma } = *spec;
    if a == b {
        return Err(Error::DegenerateParameters { a, b });
    }
    let p = spec.profile();
    if a < b && z == 0.0 {
        let r = (b * b - a * a).sqrt();
        return Ok(if gamma < 1.0 { 1.0 / (PI * (1.0 - gamma) * r) } else { f64::INFINITY });
    }
    if a > b && b > 0.0 && (0.0..a - b).contains(&z) {
        let edge = nu_density_with(&p, a, b, a - b)?;
        return Ok(edge * (z / (a - b)).powf(1.0 / gamma - 1.0));
    }
    nu_density_with(&p, a, b, z)
}

/// Per-order comparison of two evaluations.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentRow {
    pub k: usize,
    pub expected: f64,
    pub measured: f64,
    pub abs_error: f64,
    pub rel_error: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MomentReport {
    pub rows: Vec<MomentRow>,
}

impl MomentReport {
    fn push(&mut self, k: usize, expected: f64, measured: f64) {
        let abs_error = (measured - expected).abs();
        // odd moments of symmetric laws come out at roundoff level, not exactly 0
        let rel_error = if expected.abs() < 1e-12 { abs_error } else { abs_error / expected.abs() };
        self.rows.push(MomentRow { k, expected, measured, abs_error, rel_error });
    }

    pub fn max_abs_error(&self) -> f64 {
        self.rows.iter().map(|r| r.abs_error).fold(0.0, f64::max)
    }

    pub fn max_rel_error(&self) -> f64 {
        self.rows.iter().map(|r| r.rel_error).fold(0.0, f64::max)
    }
}

/// `∫ z^k ρ(z) dz` against `moment(spec, k)` for `k = 0..=K`.
pub fn verify_moments(spec: &MomentSpec, max_k: usize) -> Result<MomentReport> {
    if max_k > 12 {
        return Err(Error::InvalidParameter(format!("K must be at most 12, got {max_k}")));
    }
    let (a, b) = (spec.a, spec.b);
    // Pieces with the behaviour of ρ at their ends.
    let pieces: Vec<(f64, f64, Endpoint, Endpoint)> = if a < b {
        vec![
            (a - b, 0.0, Endpoint::SqrtEdge, Endpoint::Singular),
            (0.0, a + b, Endpoint::Singular, Endpoint::SqrtEdge),
        ]
    } else if b == 0.0 {
        vec![(0.0, a, Endpoint::Singular, Endpoint::Regular)]
    } else {
        vec![
            (0.0, a - b, Endpoint::Singular, Endpoint::Regular),
            (a - b, a + b, Endpoint::SqrtEdge, Endpoint::SqrtEdge),
        ]
    };
    let mut report = MomentReport { rows: Vec::new() };
    for k in 0..=max_k {
        let mut total = 0.0;
        for &(lo, hi, left, right) in &pieces {
            total += integrate_with_endpoints(
                |z: f64| nu_density(spec, z).unwrap_or(f64::NAN) * z.powi(k as i32),
                lo,
                hi,
                left,
                right,
                1e-9,
            )?;
        }
        report.push(k, moment(spec, k)?, total);
    }
    Ok(report)
}

/// `(1/n) Tr[(J/n^γ)^k]` of the family's truncated Jacobi matrix against `μ_k`.
pub fn trace_vs_moment(family: &FamilySpec, n: usize, max_k: usize) -> Result<MomentReport> {
    if n > 5000 {
        return Err(Error::InvalidParameter(format!("n must be at most 5000, got {n}")));
    }
    if max_k > 8 {
        return Err(Error::InvalidParameter(format!("K must be at most 8, got {max_k}")));
    }
    let class = scaling_params(family);
    let spec = MomentSpec::for_family(family);
    let t: SymTridiag = recurrence_jacobi(family, n)?;
    let mut report = MomentReport { rows: Vec::new() };
    for k in 0..=max_k {
        // a → -a mirrors the spectrum
        let sign = if class.mirrored && k % 2 == 1 { -1.0 } else { 1.0 };
        let expected = sign * moment(&spec, k)?;
        report.push(k, expected, trace_power_normalized(&t, k, class.gamma)?);
    }
    Ok(report)
}
