//! Identities satisfied by the zeros: sum rules for the differential case,
//! exact product identities for the difference families, principal-value
//! integrals against the limiting density, and gap deviations on the
//! saturated region of discrete families.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::density::DensityModel;
use crate::eigen::ZeroSet;
use crate::error::{Error, Result};
use crate::families::{exact_coefficients, FamilySpec};
use crate::quad::NeumaierSum;
use crate::real::Real;

/// Per-zero residuals of one identity.
#[derive(Clone, Debug, PartialEq)]
pub struct VerifierReport {
    pub indices: Vec<usize>,
    pub residuals: Vec<f64>,
    /// `|residual| / (1 + |x|)`.
    pub relative: Vec<f64>,
    pub max_abs: f64,
    pub max_rel: f64,
    /// Number of consecutive gaps combined, when the check uses a window.
    pub window: Option<usize>,
}

impl VerifierReport {
    pub fn from_residuals(indices: Vec<usize>, residuals: Vec<f64>, xs: &[f64]) -> Self {
        let relative: Vec<f64> = residuals.iter().zip(xs).map(|(r, x)| r.abs() / (1.0 + x.abs())).collect();
        let max_abs = residuals.iter().map(|r| r.abs()).fold(0.0, f64::max);
        let max_rel = relative.iter().copied().fold(0.0, f64::max);
        VerifierReport { indices, residuals, relative, max_abs, max_rel, window: None }
    }

    pub fn len(&self) -> usize {
        self.residuals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.residuals.is_empty()
    }
}

fn check_index(m: usize, len: usize) -> Result<()> {
    if m >= len {
        return Err(Error::IndexOutOfRange { index: m, len });
    }
    Ok(())
}

/// `x_k - x_i` for all `i`, rounded to `f64` after the subtraction.
fn differences<R: Real>(xs: &[R], k: usize) -> Result<Vec<f64>> {
    xs.iter()
        .enumerate()
        .map(|(i, x)| {
            let d = (xs[k].clone() - x.clone()).to_f64();
            if i != k && d == 0.0 {
                Err(Error::NonDistinctZeros { i: i.min(k), j: i.max(k) })
            } else {
                Ok(d)
            }
        })
        .collect()
}

/// `Σ_{i≠k} 1/(x_k - x_i)`, compensated.
fn inverse_sum<R: Real>(xs: &[R], k: usize, power: i32) -> Result<f64> {
    let d = differences(xs, k)?;
    Ok(d.iter()
        .enumerate()
        .filter(|&(i, _)| i != k)
        .map(|(_, d)| d.powi(-power))
        .collect::<NeumaierSum>()
        .sum())
}

/// Residuals `2a(x_k) Σ_{i≠k} 1/(x_k - x_i) + b(x_k)` for zeros of a
/// polynomial solving `a y'' + b y' + c y = 0`.
pub fn sum_rule_residuals<R, A, B>(zeros: &ZeroSet<R>, a_fn: A, b_fn: B) -> Result<VerifierReport>
where
    R: Real,
    A: Fn(f64) -> f64 + Sync,
    B: Fn(f64) -> f64 + Sync,
{
    let xs = zeros.xs();
    let residuals = (0..xs.len())
        .into_par_iter()
        .map(|k| {
            let x = xs[k].to_f64();
            Ok(2.0 * a_fn(x) * inverse_sum(xs, k, 1)? + b_fn(x))
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(VerifierReport::from_residuals((0..xs.len()).collect(), residuals, &zeros.xs_f64()))
}

/// Hermite form of the sum rule: `Σ_{i≠k} 1/(x_k - x_i) - x_k`.
pub fn hermite_sum_rule<R: Real>(zeros: &ZeroSet<R>) -> Result<VerifierReport> {
    sum_rule_residuals(zeros, |_| 0.5, |x| -x)
}

/// `n^{-2μ} Σ_{i≠k} 1/(x_k - x_i)^2` for every zero.
pub fn sigma2_scaled<R: Real>(zeros: &ZeroSet<R>, mu: f64) -> Result<Vec<f64>> {
    let xs = zeros.xs();
    let norm = (xs.len() as f64).powf(-2.0 * mu);
    (0..xs.len()).into_par_iter().map(|k| Ok(norm * inverse_sum(xs, k, 2)?)).collect()
}

/// `Π_k (x_m - x_k + s) / (x_m - x_k + t)` over all `k`, including `k = m`.
///
/// Real shifts are applied in the zeros' own precision before rounding, so
/// near-poles from gaps within `1e-50` of the shift are still resolved when
/// the zeros carry that many digits.
pub fn shifted_product<R: Real>(xs: &[R], m: usize, s: Complex64, t: Complex64) -> Result<Complex64> {
    check_index(m, xs.len())?;
    let mut ln_mod = NeumaierSum::default();
    let mut arg = NeumaierSum::default();
    if s.im == 0.0 && t.im == 0.0 {
        let (s, t) = (R::from_f64(s.re), R::from_f64(t.re));
        let mut negative = false;
        for (k, x) in xs.iter().enumerate() {
            let d = xs[m].clone() - x.clone();
            let num = d.clone() + s.clone();
            let den = d + t.clone();
            if den.is_zero() {
                return Err(Error::Pole { m, k });
            }
            if num.is_zero() {
                return Ok(Complex64::new(0.0, 0.0));
            }
            negative ^= num.is_negative() != den.is_negative();
            ln_mod.add(num.ln_abs());
            ln_mod.add(-den.ln_abs());
        }
        let v = ln_mod.sum().exp();
        return Ok(Complex64::new(if negative { -v } else { v }, 0.0));
    }
    for (k, x) in xs.iter().enumerate() {
        let d = (xs[m].clone() - x.clone()).to_f64();
        let num = d + s;
        let den = d + t;
        if den == Complex64::new(0.0, 0.0) {
            return Err(Error::Pole { m, k });
        }
        if num == Complex64::new(0.0, 0.0) {
            return Ok(num);
        }
        let q = num.ln() - den.ln();
        ln_mod.add(q.re);
        arg.add(q.im);
    }
    Ok(Complex64::from_polar(ln_mod.sum().exp(), arg.sum()))
}

/// Residual of `Π_k (x_m - x_k + δ)/(x_m - x_k - δ) = -D(x_m)/B(x_m)`,
/// which holds exactly at the zeros.
pub fn bethe_product_exact<R: Real>(zeros: &ZeroSet<R>, m: usize, family: &FamilySpec) -> Result<Complex64> {
    let coeffs = exact_coefficients(family)?;
    let delta = coeffs.delta();
    let lhs = shifted_product(zeros.xs(), m, delta, -delta)?;
    let x = Complex64::new(zeros.xs()[m].to_f64(), 0.0);
    let b = coeffs.b(x);
    if b == Complex64::new(0.0, 0.0) {
        return Err(Error::ZeroDenominator("B(x_m)"));
    }
    Ok(lhs + coeffs.d(x) / b)
}

/// Residual of `Π_k (x_m - x_k + 2δ)/(x_m - x_k + δ) = C(x_m + δ, n)/B(x_m + δ)`.
pub fn bethe_product_shifted<R: Real>(zeros: &ZeroSet<R>, m: usize, family: &FamilySpec) -> Result<Complex64> {
    let coeffs = exact_coefficients(family)?;
    let delta = coeffs.delta();
    let lhs = shifted_product(zeros.xs(), m, 2.0 * delta, delta)?;
    let x = zeros.xs()[m].to_f64() + delta;
    let b = coeffs.b(x);
    if b == Complex64::new(0.0, 0.0) {
        return Err(Error::ZeroDenominator("B(x_m + δ)"));
    }
    Ok(lhs - coeffs.c(x, zeros.n()) / b)
}

/// Both product identities at every zero, as one report each.
pub fn bethe_products<R: Real>(zeros: &ZeroSet<R>, family: &FamilySpec) -> Result<(VerifierReport, VerifierReport)> {
    exact_coefficients(family)?;
    let n = zeros.n();
    let pairs = (0..n)
        .into_par_iter()
        .map(|m| Ok((bethe_product_exact(zeros, m, family)?.norm(), bethe_product_shifted(zeros, m, family)?.norm())))
        .collect::<Result<Vec<(f64, f64)>>>()?;
    let xs = zeros.xs_f64();
    let (exact, shifted): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
    Ok((
        VerifierReport::from_residuals((0..n).collect(), exact, &xs),
        VerifierReport::from_residuals((0..n).collect(), shifted, &xs),
    ))
}

const PV_TOL: f64 = 1e-9;

/// `V.p. ∫ ρ(ω)/(ω - z) dω`.
///
/// The singular part is removed by subtracting `ρ(z)`, whose principal value
/// over the support is a logarithm.
pub fn pv_integral(model: &DensityModel, z: f64) -> Result<f64> {
    let (lo, hi) = model.support();
    if !(z > lo && z < hi) || model.breakpoints().contains(&z) {
        return Err(Error::BoundaryPoint(z));
    }
    let rz = model.rho(z);
    if !rz.is_finite() {
        return Err(Error::BoundaryPoint(z));
    }
    let smooth = model.integrate(
        |w| if w == z { 0.0 } else { (model.rho(w) - rz) / (w - z) },
        lo,
        hi,
        &[z],
        PV_TOL,
    )?;
    Ok(smooth + rz * ((hi - z) / (z - lo)).ln())
}

/// A ratio `Δ_{m+1} / Δ_m` of consecutive gap deviations.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GapRatio {
    pub m: usize,
    /// Scaled position of the zero shared by both gaps.
    pub z: f64,
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GapDeviations {
    /// `Δ_m = x_{m+1} - x_m - 1`.
    pub deltas: Vec<f64>,
    pub ratios: Vec<GapRatio>,
    pub floor: f64,
}

/// Deviations of consecutive gaps from one, with ratios kept only where
/// both deviations exceed the precision floor of the zeros.
pub fn gap_deviations<R: Real>(zeros: &ZeroSet<R>) -> Result<GapDeviations> {
    let xs = zeros.xs();
    let n = xs.len();
    let one = R::one();
    let deltas: Vec<f64> = xs.windows(2).map(|w| (w[1].clone() - w[0].clone() - one.clone()).to_f64()).collect();
    let max_abs = xs.iter().map(|x| x.to_f64().abs()).fold(0.0, f64::max);
    let floor = (64.0 * R::resolution(max_abs)).max(2.0 * zeros.accuracy());
    if !deltas.iter().any(|d| d.abs() > floor) {
        return Err(Error::AllGapsBelowFloor { floor });
    }
    let div = zeros.scale().divisor(n);
    let ratios = deltas
        .windows(2)
        .enumerate()
        .filter(|(_, d)| d[0].abs() > floor && d[1].abs() > floor)
        .map(|(m, d)| GapRatio { m, z: xs[m + 1].to_f64() / div, ratio: d[1] / d[0] })
        .collect();
    Ok(GapDeviations { deltas, ratios, floor })
}

/// `(z, ln|Δ_{m+w}/Δ_m| / w)` over disjoint runs of `window` consecutive
/// ratios; `z` is the mean position of the run.
pub fn chi_empirical(gaps: &GapDeviations, window: usize) -> Result<Vec<(f64, f64)>> {
    if window == 0 {
        return Err(Error::InvalidParameter("window must be at least 1".into()));
    }
    let mut out = Vec::new();
    let mut run: Vec<GapRatio> = Vec::with_capacity(window);
    for r in &gaps.ratios {
        if run.last().is_some_and(|p| p.m + 1 != r.m) {
            run.clear();
        }
        run.push(*r);
        if run.len() == window {
            let w = window as f64;
            let z = run.iter().map(|r| r.z).sum::<f64>() / w;
            let ln = run.iter().map(|r| r.ratio.abs().ln()).sum::<f64>() / w;
            out.push((z, ln));
            run.clear();
        }
    }
    Ok(out)
}
