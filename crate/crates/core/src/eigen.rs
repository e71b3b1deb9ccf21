//! Symmetric tridiagonal eigensolver.
//!
//! Eigenvalues are isolated one index at a time by Sturm-count bisection
//! (LDLᵀ sign counts), first in `f64` and then, if the scalar type carries
//! more precision, continued in that type from a verified bracket. Optional
//! Newton polish uses the characteristic polynomial evaluated through the
//! three-term recurrence, safeguarded by the bracket.
//!
//! Indices are independent, so they are solved in parallel; the merged
//! output is ordered by index and identical for any thread count.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::families::FamilySpec;
use crate::fixed::Mp;
use crate::quad::NeumaierSum;
use crate::real::Real;

const MAX_BISECTION_STEPS: usize = 2200;
const MAX_NEWTON_STEPS: usize = 60;

/// Symmetric tridiagonal matrix stored as diagonal and (non-negative)
/// off-diagonal.
#[derive(Clone, Debug, PartialEq)]
pub struct SymTridiag<R: Real = f64> {
    diag: Vec<R>,
    off: Vec<R>,
}

impl<R: Real> SymTridiag<R> {
    /// Off-diagonal entries are stored as absolute values; flipping their
    /// signs leaves the spectrum unchanged.
    pub fn new(diag: Vec<R>, off: Vec<R>) -> Result<Self> {
        if diag.is_empty() {
            return Err(Error::InvalidParameter("empty matrix".into()));
        }
        if off.len() + 1 != diag.len() {
            return Err(Error::InvalidParameter(format!(
                "{} diagonal entries need {} off-diagonal entries, got {}",
                diag.len(),
                diag.len() - 1,
                off.len()
            )));
        }
        let off = off.into_iter().map(|e| e.abs()).collect();
        Ok(SymTridiag { diag, off })
    }

    pub fn from_family(family: &FamilySpec, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("matrix size n must be at least 1".into()));
        }
        let (diag, off) = family.jacobi_entries::<R>(n);
        SymTridiag::new(diag, off)
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    pub fn diag(&self) -> &[R] {
        &self.diag
    }

    pub fn offdiag(&self) -> &[R] {
        &self.off
    }

    pub fn to_f64(&self) -> SymTridiag<f64> {
        SymTridiag {
            diag: self.diag.iter().map(Real::to_f64).collect(),
            off: self.off.iter().map(Real::to_f64).collect(),
        }
    }

    /// Interval `[lo, hi]` containing every eigenvalue (union of Gershgorin discs).
    pub fn gershgorin(&self) -> (f64, f64) {
        let t = self.to_f64();
        let n = t.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for k in 0..n {
            let left = if k > 0 { t.off[k - 1] } else { 0.0 };
            let right = if k + 1 < n { t.off[k] } else { 0.0 };
            let r = left + right;
            lo = lo.min(t.diag[k] - r);
            hi = hi.max(t.diag[k] + r);
        }
        (lo, hi)
    }

    /// `max(|lo|, |hi|)` of the Gershgorin interval, a cheap bound on the spectral norm.
    pub fn gershgorin_norm(&self) -> f64 {
        let (lo, hi) = self.gershgorin();
        lo.abs().max(hi.abs())
    }

    /// Number of eigenvalues strictly below `x`.
    ///
    /// A pivot that vanishes (or falls below `pivmin = resolution(‖T‖)`) is
    /// replaced by `-pivmin`, so an eigenvalue exactly at `x` is counted.
    pub fn sturm_count(&self, x: f64) -> usize {
        Sturm::new(self).count(&R::from_f64(x))
    }

    /// Characteristic polynomial `det(xI - T)` and its derivative at `x`,
    /// up to a common positive factor introduced by rescaling.
    pub fn char_poly(&self, x: &R) -> (R, R) {
        char_poly_with_derivative(&self.diag, &self.off, x)
    }
}

/// Precomputed data for repeated Sturm counts.
struct Sturm<'a, R: Real> {
    diag: &'a [R],
    off_sq: Vec<R>,
    pivmin: R,
}

impl<'a, R: Real> Sturm<'a, R> {
    fn new(t: &'a SymTridiag<R>) -> Self {
        let norm = t.gershgorin_norm().max(f64::MIN_POSITIVE);
        Sturm {
            diag: &t.diag,
            off_sq: t.off.iter().map(|e| e.clone() * e.clone()).collect(),
            pivmin: R::from_f64(R::resolution(norm).max(f64::MIN_POSITIVE)),
        }
    }

    fn count(&self, x: &R) -> usize {
        let mut negatives = 0;
        let mut q = self.diag[0].clone() - x.clone();
        for k in 0..self.diag.len() {
            if k > 0 {
                q = self.diag[k].clone() - x.clone() - self.off_sq[k - 1].clone() / q;
            }
            if q.abs() < self.pivmin {
                q = -self.pivmin.clone();
            }
            if q.is_negative() {
                negatives += 1;
            }
        }
        negatives
    }
}

fn char_poly_with_derivative<R: Real>(diag: &[R], off: &[R], x: &R) -> (R, R) {
    let big = 2f64.powi(500);
    let shrink = R::from_f64(2f64.powi(-500));
    let mut p_prev = R::zero();
    let mut p = R::one();
    let mut dp_prev = R::zero();
    let mut dp = R::zero();
    for k in 0..diag.len() {
        let shifted = x.clone() - diag[k].clone();
        let (p_next, dp_next) = if k == 0 {
            (shifted.clone() * p.clone(), p.clone() + shifted * dp.clone())
        } else {
            let e2 = off[k - 1].clone() * off[k - 1].clone();
            (
                shifted.clone() * p.clone() - e2.clone() * p_prev.clone(),
                p.clone() + shifted * dp.clone() - e2 * dp_prev.clone(),
            )
        };
        p_prev = p;
        dp_prev = dp;
        p = p_next;
        dp = dp_next;
        if R::BOUNDED_EXPONENT && (p.to_f64().abs() > big || dp.to_f64().abs() > big) {
            p = p * shrink.clone();
            dp = dp * shrink.clone();
            p_prev = p_prev * shrink.clone();
            dp_prev = dp_prev * shrink.clone();
        }
    }
    (p, dp)
}

/// Arithmetic used for Sturm counts, bisection and polish.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Precision {
    #[default]
    Double,
    DoubleDouble,
    /// 512-bit binary fixed point ([`Mp`]).
    Multi,
}

impl Precision {
    /// Default tolerance, relative to the Gershgorin norm (absolute) and to
    /// the eigenvalue (relative).
    pub fn default_tolerance(self) -> f64 {
        match self {
            Precision::Double => 1e-13,
            Precision::DoubleDouble => 1e-29,
            Precision::Multi => 1e-140,
        }
    }

    pub fn dispatch<V: PrecisionVisitor>(self, visitor: V) -> V::Output {
        match self {
            Precision::Double => visitor.visit::<f64>(),
            Precision::DoubleDouble => visitor.visit::<Dd>(),
            Precision::Multi => visitor.visit::<Mp>(),
        }
    }
}

/// Runs a computation generic over the scalar type selected at run time.
pub trait PrecisionVisitor {
    type Output;
    fn visit<R: Real>(self) -> Self::Output;
}

impl fmt::Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Precision::Double => "double",
            Precision::DoubleDouble => "dd",
            Precision::Multi => "multi",
        })
    }
}

impl FromStr for Precision {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "double" => Ok(Precision::Double),
            "dd" | "double-double" => Ok(Precision::DoubleDouble),
            "multi" | "mp" => Ok(Precision::Multi),
            other => Err(Error::InvalidParameter(format!("unknown precision '{other}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EigenOptions {
    /// Absolute bracket width at which bisection stops. `None` means
    /// `precision.default_tolerance() * ‖T‖`.
    pub abs_tol: Option<f64>,
    pub rel_tol: f64,
    pub precision: Precision,
    pub refine: bool,
}

impl Default for EigenOptions {
    fn default() -> Self {
        EigenOptions::new(Precision::Double)
    }
}

impl EigenOptions {
    pub fn new(precision: Precision) -> Self {
        EigenOptions {
            abs_tol: None,
            rel_tol: precision.default_tolerance(),
            precision,
            refine: false,
        }
    }

    pub fn with_abs_tol(mut self, tol: f64) -> Self {
        self.abs_tol = Some(tol);
        self
    }

    pub fn with_rel_tol(mut self, tol: f64) -> Self {
        self.rel_tol = tol;
        self
    }

    pub fn refined(mut self, refine: bool) -> Self {
        self.refine = refine;
        self
    }

    fn validate(&self) -> Result<()> {
        if let Some(t) = self.abs_tol {
            if !(t > 0.0 && t.is_finite()) {
                return Err(Error::InvalidParameter(format!("abs_tol must be positive, got {t}")));
            }
        }
        if !(self.rel_tol > 0.0 && self.rel_tol.is_finite()) {
            return Err(Error::InvalidParameter(format!("rel_tol must be positive, got {}", self.rel_tol)));
        }
        Ok(())
    }

    fn abs_tol_for(&self, norm: f64) -> f64 {
        self.abs_tol
            .unwrap_or(self.precision.default_tolerance() * norm)
            .max(f64::MIN_POSITIVE)
    }
}

/// How zeros are contracted onto the support of their limiting density.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Scale {
    /// `z = x / n`
    Degree,
    /// `z = x / sqrt(2n)`
    HermiteContracted,
    /// `z = x / n^γ`
    Power(f64),
}

impl Scale {
    pub fn divisor(&self, n: usize) -> f64 {
        let n = n as f64;
        match *self {
            Scale::Degree => n,
            Scale::HermiteContracted => (2.0 * n).sqrt(),
            Scale::Power(gamma) => n.powf(gamma),
        }
    }
}

impl fmt::Display for Scale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scale::Degree => write!(f, "x/n"),
            Scale::HermiteContracted => write!(f, "x/sqrt(2n)"),
            Scale::Power(g) => write!(f, "x/n^{g}"),
        }
    }
}

/// Sorted zeros `x_1 < ... < x_n` of `p_n` with their contraction.
#[derive(Clone, Debug, PartialEq)]
pub struct ZeroSet<R: Real = f64> {
    xs: Vec<R>,
    scale: Scale,
    accuracy: f64,
}

impl<R: Real> ZeroSet<R> {
    /// Builds a zero set from strictly increasing values.
    pub fn from_values(xs: Vec<R>, scale: Scale) -> Result<Self> {
        if xs.is_empty() {
            return Err(Error::InvalidParameter("empty zero set".into()));
        }
        for i in 1..xs.len() {
            if xs[i - 1].partial_cmp(&xs[i]) != Some(std::cmp::Ordering::Less) {
                return Err(Error::NonDistinctZeros { i: i - 1, j: i });
            }
        }
        Ok(ZeroSet { xs, scale, accuracy: 0.0 })
    }

    pub fn with_accuracy(mut self, accuracy: f64) -> Self {
        self.accuracy = accuracy;
        self
    }

    pub fn with_scale(mut self, scale: Scale) -> Self {
        self.scale = scale;
        self
    }

    /// Degree of the polynomial (number of zeros).
    pub fn n(&self) -> usize {
        self.xs.len()
    }

    pub fn xs(&self) -> &[R] {
        &self.xs
    }

    pub fn scale(&self) -> Scale {
        self.scale
    }

    /// Upper bound on the absolute error of each zero, as reported by the solver.
    pub fn accuracy(&self) -> f64 {
        self.accuracy
    }

    pub fn xs_f64(&self) -> Vec<f64> {
        self.xs.iter().map(Real::to_f64).collect()
    }

    pub fn scaled(&self) -> Vec<f64> {
        let d = self.scale.divisor(self.n());
        self.xs.iter().map(|x| x.to_f64() / d).collect()
    }

    pub fn to_f64(&self) -> ZeroSet<f64> {
        ZeroSet { xs: self.xs_f64(), scale: self.scale, accuracy: self.accuracy }
    }
}

pub fn gershgorin<R: Real>(t: &SymTridiag<R>) -> (f64, f64) {
    t.gershgorin()
}

pub fn sturm_count<R: Real>(t: &SymTridiag<R>, x: f64) -> usize {
    t.sturm_count(x)
}

struct Bracket<R> {
    lo: R,
    hi: R,
}

fn bisect<R: Real>(
    sturm: &Sturm<'_, R>,
    index: usize,
    mut lo: R,
    mut hi: R,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<Bracket<R>> {
    for _ in 0..MAX_BISECTION_STEPS {
        let mid = (lo.clone() + hi.clone()).half();
        let width = (hi.clone() - lo.clone()).to_f64();
        if width <= abs_tol.max(rel_tol * mid.to_f64().abs()) || !(lo < mid && mid < hi) {
            return Ok(Bracket { lo, hi });
        }
        if sturm.count(&mid) > index {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Err(Error::NonConvergence { index, budget: MAX_BISECTION_STEPS })
}

/// Widens `[lo, hi]` until it provably contains eigenvalue `index` under `R` arithmetic.
fn verified_bracket<R: Real>(
    sturm: &Sturm<'_, R>,
    index: usize,
    lo: f64,
    hi: f64,
    outer: (f64, f64),
) -> Bracket<R> {
    let mut width = (hi - lo).max(f64::EPSILON * outer.0.abs().max(outer.1.abs()));
    let (mut lo, mut hi) = (lo, hi);
    loop {
        let lo_r = R::from_f64(lo);
        let hi_r = R::from_f64(hi);
        let ok_lo = lo <= outer.0 || sturm.count(&lo_r) <= index;
        let ok_hi = hi >= outer.1 || sturm.count(&hi_r) > index;
        if ok_lo && ok_hi {
            return Bracket { lo: lo_r, hi: hi_r };
        }
        if !ok_lo {
            lo = (lo - width).max(outer.0);
        }
        if !ok_hi {
            hi = (hi + width).min(outer.1);
        }
        width *= 2.0;
    }
}

/// Newton iteration on the characteristic polynomial, safeguarded by a
/// bracket on which it changes sign; falls back to bisection steps. Returns
/// the zero and a bound on its error.
fn safeguarded_newton<R: Real>(t: &SymTridiag<R>, bracket: Bracket<R>) -> (R, f64) {
    let Bracket { mut lo, mut hi } = bracket;
    let (p_lo, _) = t.char_poly(&lo);
    let lo_negative = p_lo.is_negative();
    let mut x = (lo.clone() + hi.clone()).half();
    let mut last_newton = f64::INFINITY;
    for _ in 0..MAX_NEWTON_STEPS {
        let floor = R::resolution(x.to_f64());
        let (p, dp) = t.char_poly(&x);
        if p.is_zero() {
            return (x, floor);
        }
        if p.is_negative() == lo_negative {
            lo = x.clone();
        } else {
            hi = x.clone();
        }
        let candidate = if dp.is_zero() { None } else { Some(x.clone() - p / dp) };
        match candidate {
            Some(next) if lo <= next && next <= hi => {
                let step = (next.clone() - x.clone()).to_f64().abs();
                x = next;
                // Converged, or stalled at the rounding level of the polynomial.
                if step <= 16.0 * floor || step >= 0.5 * last_newton {
                    return (x, step.max(floor));
                }
                last_newton = step;
            }
            _ => {
                x = (lo.clone() + hi.clone()).half();
                let width = (hi.clone() - lo.clone()).to_f64();
                if width <= 16.0 * floor {
                    return (x, width.max(floor));
                }
            }
        }
    }
    let width = (hi - lo).to_f64();
    (x, width)
}

/// All eigenvalues of `t`, ascending.
pub fn eigenvalues<R: Real>(t: &SymTridiag<R>, opts: &EigenOptions) -> Result<ZeroSet<R>> {
    opts.validate()?;
    let tf = t.to_f64();
    let (g_lo, g_hi) = tf.gershgorin();
    let norm = g_lo.abs().max(g_hi.abs()).max(f64::MIN_POSITIVE);
    let pad = 8.0 * f64::EPSILON * norm + f64::MIN_POSITIVE;
    let outer = (g_lo - pad, g_hi + pad);
    let abs_tol = opts.abs_tol_for(norm);
    let rel_tol = opts.rel_tol;
    let sturm_f = Sturm::new(&tf);
    let sturm_r = Sturm::new(t);
    // Coarse double bisection stops at its own rounding floor.
    let double_floor = 16.0 * f64::EPSILON * norm;
    let needs_more = abs_tol < double_floor && R::resolution(norm) < f64::EPSILON * norm;

    let solved: Vec<(R, f64)> = (0..t.len())
        .into_par_iter()
        .map(|index| -> Result<(R, f64)> {
            let coarse = bisect(
                &sturm_f,
                index,
                outer.0,
                outer.1,
                abs_tol.max(if needs_more { double_floor } else { 0.0 }),
                rel_tol,
            )?;
            if !needs_more && !opts.refine {
                let mid = 0.5 * (coarse.lo + coarse.hi);
                return Ok((R::from_f64(mid), 0.5 * (coarse.hi - coarse.lo)));
            }
            let bracket = if needs_more {
                verified_bracket(&sturm_r, index, coarse.lo, coarse.hi, outer)
            } else {
                Bracket { lo: R::from_f64(coarse.lo), hi: R::from_f64(coarse.hi) }
            };
            if opts.refine {
                Ok(safeguarded_newton(t, bracket))
            } else {
                let fine = bisect(&sturm_r, index, bracket.lo, bracket.hi, abs_tol, rel_tol)?;
                let half_width = (fine.hi.clone() - fine.lo.clone()).to_f64() * 0.5;
                Ok(((fine.lo + fine.hi).half(), half_width))
            }
        })
        .collect::<Result<_>>()?;

    let accuracy = solved.iter().map(|(_, e)| *e).fold(0.0, f64::max);
    let xs = solved.into_iter().map(|(x, _)| x).collect();
    Ok(ZeroSet { xs, scale: Scale::Degree, accuracy })
}

/// Zeros of `p_n` for a family, computed in the scalar type `R`.
pub fn family_zeros<R: Real>(family: &FamilySpec, n: usize, opts: &EigenOptions) -> Result<ZeroSet<R>> {
    let t = SymTridiag::<R>::from_family(family, n)?;
    Ok(eigenvalues(&t, opts)?.with_scale(family.scale()))
}

/// Newton polish of an approximate zero of `p_n`.
///
/// The bracket is the smallest interval `[x0 - h, x0 + h]` (h doubling from
/// a relative 1e-12) whose Sturm counts differ; leaving it is reported as
/// [`Error::Divergence`].
pub fn refine_zero(family: &FamilySpec, n: usize, x0: f64) -> Result<f64> {
    let t = SymTridiag::<f64>::from_family(family, n)?;
    let norm = t.gershgorin_norm();
    let mut h = 1e-12 * x0.abs().max(1.0);
    while t.sturm_count(x0 + h) == t.sturm_count(x0 - h) {
        h *= 2.0;
        if h > 4.0 * norm + 1.0 {
            return Err(Error::Divergence { lo: x0 - h, hi: x0 + h });
        }
    }
    newton_in_bracket(&t, x0, x0 - h, x0 + h)
}

/// Plain Newton iteration from `x0`; errors if an iterate leaves `[lo, hi]`.
pub fn newton_in_bracket(t: &SymTridiag<f64>, x0: f64, lo: f64, hi: f64) -> Result<f64> {
    let mut x = x0;
    let mut last = f64::INFINITY;
    for _ in 0..MAX_NEWTON_STEPS {
        let (p, dp) = t.char_poly(&x);
        if p == 0.0 {
            return Ok(x);
        }
        if dp == 0.0 {
            return Err(Error::Divergence { lo, hi });
        }
        let next = x - p / dp;
        if !(next >= lo && next <= hi) {
            return Err(Error::Divergence { lo, hi });
        }
        let step = (next - x).abs();
        x = next;
        if step <= 2.0 * f64::EPSILON * x.abs() || step >= last {
            return Ok(x);
        }
        last = step;
    }
    Ok(x)
}

/// `(1/n) Tr[(T / n^γ)^k]` by banded matrix-vector products, `O(n k²)`.
pub fn trace_power_normalized(t: &SymTridiag, k: usize, gamma: f64) -> Result<f64> {
    if k > 12 {
        return Err(Error::InvalidParameter(format!("trace power k must be at most 12, got {k}")));
    }
    let n = t.len();
    if k == 0 {
        return Ok(1.0);
    }
    let s = (n as f64).powf(gamma).recip();
    let diag: Vec<f64> = t.diag.iter().map(|d| d * s).collect();
    let off: Vec<f64> = t.off.iter().map(|e| e * s).collect();
    let k1 = k / 2;
    let k2 = k - k1;
    let mut total = NeumaierSum::default();
    // vectors live on the window [i - k2, i + k2], stored with offset
    let width = 2 * k2 + 1;
    let mut cur = vec![0.0; width];
    let mut next = vec![0.0; width];
    let mut half = vec![0.0; width];
    for i in 0..n {
        cur.iter_mut().for_each(|v| *v = 0.0);
        cur[k2] = 1.0;
        if k1 == 0 {
            half.copy_from_slice(&cur);
        }
        for step in 1..=k2 {
            for (w, slot) in next.iter_mut().enumerate() {
                let row = i as isize + w as isize - k2 as isize;
                *slot = 0.0;
                if row < 0 || row >= n as isize {
                    continue;
                }
                let r = row as usize;
                let mut acc = diag[r] * cur[w];
                if w > 0 && r > 0 {
                    acc += off[r - 1] * cur[w - 1];
                }
                if w + 1 < width && r + 1 < n {
                    acc += off[r] * cur[w + 1];
                }
                *slot = acc;
            }
            std::mem::swap(&mut cur, &mut next);
            if step == k1 {
                half.copy_from_slice(&cur);
            }
        }
        let dot: f64 = half.iter().zip(&cur).map(|(a, b)| a * b).sum();
        total.add(dot);
    }
    Ok(total.sum() / n as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::recurrence_jacobi;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn hermite(n: usize) -> SymTridiag {
        recurrence_jacobi(&FamilySpec::hermite(), n).unwrap()
    }

    fn meixner() -> FamilySpec {
        FamilySpec::meixner(1.0, 0.25).unwrap()
    }

    /// det(xI - T) by the plain three-term determinant recurrence, no rescaling.
    fn char_poly_oracle(t: &SymTridiag, x: f64) -> f64 {
        let (mut prev, mut cur) = (1.0, x - t.diag()[0]);
        for k in 1..t.len() {
            let e = t.offdiag()[k - 1];
            let next = (x - t.diag()[k]) * cur - e * e * prev;
            prev = cur;
            cur = next;
        }
        cur
    }

    /// Roots by scanning for sign changes on a fine grid, then bisecting.
    fn roots_oracle(t: &SymTridiag) -> Vec<f64> {
        let (lo, hi) = t.gershgorin();
        let (lo, hi) = (lo - 1.0, hi + 1.0);
        let steps = 200_000;
        let h = (hi - lo) / steps as f64;
        let mut roots = Vec::new();
        let mut a = lo - h;
        let mut fa = char_poly_oracle(t, a);
        for s in 0..=steps + 1 {
            let b = lo + s as f64 * h;
            let fb = char_poly_oracle(t, b);
            if fb == 0.0 {
                roots.push(b);
            } else if fa * fb < 0.0 {
                let (mut l, mut r, mut fl) = (a, b, fa);
                for _ in 0..200 {
                    let m = 0.5 * (l + r);
                    let fm = char_poly_oracle(t, m);
                    if fm * fl <= 0.0 {
                        r = m;
                    } else {
                        l = m;
                        fl = fm;
                    }
                }
                roots.push(0.5 * (l + r));
            }
            a = b;
            fa = fb;
        }
        roots
    }

    #[test]
    fn gershgorin_examples() {
        let (lo, hi) = hermite(2).gershgorin();
        assert_eq!((lo, hi), (-FRAC_1_SQRT_2, FRAC_1_SQRT_2));
        let single = SymTridiag::new(vec![5.0], vec![]).unwrap();
        assert_eq!(single.gershgorin(), (5.0, 5.0));
        let z = eigenvalues(&single, &EigenOptions::default()).unwrap();
        assert_eq!(z.xs(), &[5.0]);
    }

    #[test]
    fn gershgorin_mp_at_forty() {
        let n = 40;
        let t = recurrence_jacobi(&FamilySpec::meixner_pollaczek(1.0, PI / 2.0).unwrap(), n).unwrap();
        let (lo, hi) = t.gershgorin();
        // direct evaluation: row k has diag ~ 0 and radius (J_{k-1,k} + J_{k,k+1})
        let direct = (0..n)
            .map(|k| {
                let e = |j: usize| ((j + 1) as f64 * (2.0 + j as f64)).sqrt() / 2.0;
                (if k > 0 { e(k - 1) } else { 0.0 }) + if k + 1 < n { e(k) } else { 0.0 }
            })
            .fold(0.0, f64::max);
        assert!((hi - direct).abs() < 1e-12 && (lo + direct).abs() < 1e-12);
        assert!(hi / n as f64 <= 1.0 + 2.0 / n as f64);
    }

    #[test]
    fn sturm_count_examples() {
        let t = hermite(2);
        assert_eq!(t.sturm_count(0.0), 1);
        assert_eq!(t.sturm_count(-1.0), 0);
        assert_eq!(t.sturm_count(1.0), 2);

        let n = 20;
        let t = recurrence_jacobi(&meixner(), n).unwrap();
        let z = eigenvalues(&t, &EigenOptions::default()).unwrap();
        assert!(z.xs()[n - 1] < 3.0 * n as f64 + 1.0);
        assert_eq!(t.sturm_count(3.0 * n as f64 + 1.0), n);
    }

    #[test]
    fn hermite_two_zeros() {
        let z = eigenvalues(&hermite(2), &EigenOptions::default()).unwrap();
        assert!((z.xs()[0] + FRAC_1_SQRT_2).abs() < 1e-13);
        assert!((z.xs()[1] - FRAC_1_SQRT_2).abs() < 1e-13);
    }

    #[test]
    fn eigenvalues_rejects_bad_options() {
        let t = hermite(3);
        assert!(eigenvalues(&t, &EigenOptions::default().with_abs_tol(0.0)).is_err());
        assert!(eigenvalues(&t, &EigenOptions::default().with_rel_tol(-1.0)).is_err());
    }

    #[test]
    fn oracle_equivalence_small_n() {
        let families = [
            FamilySpec::hermite(),
            FamilySpec::charlier(1.5).unwrap(),
            meixner(),
            FamilySpec::meixner_pollaczek(1.0, PI / 3.0).unwrap(),
        ];
        for f in &families {
            for n in 1..=12 {
                let t = recurrence_jacobi(f, n).unwrap();
                let z = eigenvalues(&t, &EigenOptions::default()).unwrap();
                let oracle = roots_oracle(&t);
                assert_eq!(oracle.len(), n, "{f} n={n}");
                for (a, b) in z.xs().iter().zip(&oracle) {
                    assert!((a - b).abs() < 1e-10, "{f} n={n}: {a} vs {b}");
                }
            }
        }
    }

    #[test]
    fn interlacing_up_to_thirty() {
        // Meixner's smallest zeros sit far below double resolution, so the
        // strict inequalities are checked on multiprecision zeros.
        let opts = EigenOptions::new(Precision::Multi).refined(true);
        for f in &[FamilySpec::hermite(), meixner(), FamilySpec::meixner_pollaczek(0.5, 2.0).unwrap()] {
            let mut prev = family_zeros::<Mp>(f, 1, &opts).unwrap();
            for n in 2..=30 {
                let cur = family_zeros::<Mp>(f, n, &opts).unwrap();
                for (i, y) in prev.xs().iter().enumerate() {
                    assert!(cur.xs()[i] < *y && *y < cur.xs()[i + 1], "{f} n={n} i={i}");
                }
                prev = cur;
            }
        }
    }

    #[test]
    fn output_sorted_and_consistent_with_sturm() {
        let t = recurrence_jacobi(&meixner(), 60).unwrap();
        let z = eigenvalues(&t, &EigenOptions::default()).unwrap();
        for i in 0..z.n() - 1 {
            let (a, b) = (z.xs()[i], z.xs()[i + 1]);
            assert!(a < b);
            assert_eq!(t.sturm_count(0.5 * (a + b)), i + 1);
        }
        let (lo, hi) = t.gershgorin();
        assert!(z.xs()[0] >= lo && z.xs()[z.n() - 1] <= hi);
    }

    #[test]
    fn deterministic_across_thread_counts() {
        let t = recurrence_jacobi(&FamilySpec::meixner_pollaczek(1.0, 1.0).unwrap(), 120).unwrap();
        let opts = EigenOptions::default().refined(true);
        let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let four = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
        let a = one.install(|| eigenvalues(&t, &opts).unwrap());
        let b = four.install(|| eigenvalues(&t, &opts).unwrap());
        let bits = |z: &ZeroSet| z.xs().iter().map(|x| x.to_bits()).collect::<Vec<_>>();
        assert_eq!(bits(&a), bits(&b));
    }

    #[test]
    fn refine_zero_examples() {
        let x = refine_zero(&FamilySpec::hermite(), 2, 0.70).unwrap();
        assert!((x - FRAC_1_SQRT_2).abs() < 1e-15);
        // the derivative vanishes midway between the two zeros
        assert!(matches!(refine_zero(&FamilySpec::hermite(), 2, 0.0), Err(Error::Divergence { .. })));
    }

    #[test]
    fn newton_reports_divergence() {
        let t = hermite(2);
        // start at the local maximum of x^2 - 1/2's neighbour region with a tiny bracket
        let err = newton_in_bracket(&t, 0.1, 0.09, 0.11).unwrap_err();
        assert!(matches!(err, Error::Divergence { .. }));
    }

    #[test]
    fn meixner_refined_zeros_reproducible_across_tolerances() {
        let f = meixner();
        let coarse = family_zeros::<f64>(&f, 100, &EigenOptions::default().with_abs_tol(1e-8).refined(true)).unwrap();
        let fine = family_zeros::<f64>(&f, 100, &EigenOptions::default().with_abs_tol(1e-11).refined(true)).unwrap();
        for m in [0, 20, 25] {
            let gap = |z: &ZeroSet| z.xs()[m + 1] - z.xs()[m] - 1.0;
            assert!((gap(&coarse) - gap(&fine)).abs() < 1e-13, "m={m}");
        }
    }

    #[test]
    fn double_double_resolves_meixner_gaps() {
        let f = meixner();
        let z = family_zeros::<Dd>(&f, 100, &EigenOptions::new(Precision::DoubleDouble)).unwrap();
        // the 21st gap deviation is about 4.4e-11, far below double resolution of the
        // bisection but well inside double-double reach
        let d = (z.xs()[21] - z.xs()[20] - Dd::ONE).to_f64();
        assert!(d > 1e-11 && d < 1e-10, "{d}");
        assert!(z.accuracy() < 1e-25);
    }

    #[test]
    fn multiprecision_matches_reference_smallest_zero() {
        let f = meixner();
        let z = family_zeros::<Mp>(&f, 100, &EigenOptions::new(Precision::Multi).refined(true)).unwrap();
        // reference value from an independent 120-digit computation
        let x0 = z.xs()[0].to_f64();
        assert!((x0 / 4.65149221313e-59 - 1.0).abs() < 1e-10, "{x0:e}");
        let d0 = (z.xs()[1].clone() - z.xs()[0].clone() - Mp::one()).to_f64();
        assert!((d0 / 1.022e-54 - 1.0).abs() < 1e-3, "{d0:e}");
    }

    #[test]
    fn trace_examples() {
        let t = hermite(2000);
        assert_eq!(trace_power_normalized(&t, 1, 0.5).unwrap(), 0.0);
        let t2 = trace_power_normalized(&t, 2, 0.5).unwrap();
        assert!((t2 - 0.5).abs() < 0.01, "{t2}");
        let c = recurrence_jacobi(&FamilySpec::charlier(1.0).unwrap(), 2000).unwrap();
        let t1 = trace_power_normalized(&c, 1, 1.0).unwrap();
        assert!((t1 - 0.5).abs() < 0.01, "{t1}");
        assert!(trace_power_normalized(&c, 13, 1.0).is_err());
        assert_eq!(trace_power_normalized(&c, 0, 1.0).unwrap(), 1.0);
    }

    #[test]
    fn trace_matches_eigenvalue_power_sums() {
        let t = recurrence_jacobi(&FamilySpec::meixner_pollaczek(1.0, 1.2).unwrap(), 40).unwrap();
        let z = eigenvalues(&t, &EigenOptions::default()).unwrap();
        let n = t.len() as f64;
        for k in 1..=6 {
            let direct: f64 = z.xs().iter().map(|x| (x / n).powi(k as i32)).sum::<f64>() / n;
            let banded = trace_power_normalized(&t, k, 1.0).unwrap();
            assert!((direct - banded).abs() < 1e-10 * direct.abs().max(1.0), "k={k}");
        }
    }

    proptest! {
        #[test]
        fn sturm_count_is_monotone(
            diag in prop::collection::vec(-5.0f64..5.0, 1..25),
            seed in prop::collection::vec(0.01f64..3.0, 24),
            a in -12.0f64..12.0,
            b in -12.0f64..12.0,
        ) {
            let n = diag.len();
            let off = seed[..n - 1].to_vec();
            let t = SymTridiag::new(diag, off).unwrap();
            let (x, y) = if a <= b { (a, b) } else { (b, a) };
            prop_assert!(t.sturm_count(x) <= t.sturm_count(y));
            let (lo, hi) = t.gershgorin();
            prop_assert_eq!(t.sturm_count(lo - 1.0), 0);
            prop_assert_eq!(t.sturm_count(hi + 1.0), n);
        }

        #[test]
        fn eigenvalue_sum_is_trace(
            diag in prop::collection::vec(-5.0f64..5.0, 1..20),
            seed in prop::collection::vec(0.01f64..3.0, 19),
        ) {
            let n = diag.len();
            let trace: f64 = diag.iter().sum();
            let t = SymTridiag::new(diag, seed[..n - 1].to_vec()).unwrap();
            let z = eigenvalues(&t, &EigenOptions::default()).unwrap();
            let sum: f64 = z.xs().iter().sum();
            prop_assert!((sum - trace).abs() < 1e-9);
        }
    }
}
