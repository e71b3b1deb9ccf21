//! Limiting zero densities in closed form, their distribution functions,
//! and empirical comparison.
//!
//! Every model is a list of pieces on which ρ is given by one analytic
//! expression. Pieces also record how ρ behaves at their ends (regular,
//! square-root edge, integrable singularity), which selects the quadrature
//! substitution used for CDFs and principal-value integrals.

use std::f64::consts::PI;

use crate::eigen::{Scale, ZeroSet};
use crate::error::{Error, Result};
use crate::families::{Family, FamilySpec};
use crate::quad::{integrate_with_endpoints, Endpoint};

/// Absolute quadrature tolerance per integration segment.
pub const QUAD_TOL: f64 = 1e-11;

/// Scaled extreme-zero asymptotics, equal to the support of the density.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EdgeInfo {
    pub z_min: f64,
    pub z_max: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Piece {
    pub lo: f64,
    pub hi: f64,
    left: Endpoint,
    right: Endpoint,
}

impl Piece {
    fn new(lo: f64, hi: f64, left: Endpoint, right: Endpoint) -> Self {
        Piece { lo, hi, left, right }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Shape {
    MeixnerPollaczek { phi: f64 },
    Meixner { c: f64 },
    Semicircle,
    Uniform { height: f64 },
    JacobiClass { a: f64, b: f64 },
    /// Normalized counting measure of sorted points.
    Empirical { points: Vec<f64> },
}

/// Piecewise density ρ(z) of contracted zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityModel {
    shape: Shape,
    pieces: Vec<Piece>,
    plateau: Option<(f64, f64)>,
    scale: Scale,
}

fn meixner_alpha(c: f64) -> f64 {
    let s = c.sqrt();
    (1.0 + s) / (1.0 - s)
}

/// `acosh(|num/den|)` without forming the quotient when it is huge.
fn acosh_ratio(num: f64, den: f64) -> f64 {
    let (num, den) = (num.abs(), den.abs());
    if num >= 2.0 * den {
        let ln_y = num.ln() - den.ln();
        ln_y + (1.0 - (-2.0 * ln_y).exp()).sqrt().ln_1p()
    } else {
        (num / den).max(1.0).acosh()
    }
}

fn meixner_f(c: f64, z: f64) -> f64 {
    ((c + 1.0) * z + c - 1.0) / (2.0 * c.sqrt() * z)
}

impl DensityModel {
    /// The limiting density of the family's contracted zeros.
    pub fn for_family(family: &FamilySpec) -> Self {
        use Endpoint::*;
        match family.kind() {
            Family::Hermite => DensityModel {
                shape: Shape::Semicircle,
                pieces: vec![Piece::new(-1.0, 1.0, SqrtEdge, SqrtEdge)],
                plateau: None,
                scale: Scale::HermiteContracted,
            },
            Family::Charlier { .. } => DensityModel {
                shape: Shape::Uniform { height: 1.0 },
                pieces: vec![Piece::new(0.0, 1.0, Regular, Regular)],
                plateau: Some((0.0, 1.0)),
                scale: Scale::Degree,
            },
            Family::Meixner { c, .. } => {
                let alpha = meixner_alpha(c);
                DensityModel {
                    shape: Shape::Meixner { c },
                    pieces: vec![
                        Piece::new(0.0, 1.0 / alpha, Regular, Regular),
                        Piece::new(1.0 / alpha, alpha, SqrtEdge, SqrtEdge),
                    ],
                    plateau: Some((0.0, 1.0 / alpha)),
                    scale: Scale::Degree,
                }
            }
            Family::MeixnerPollaczek { phi, .. } => {
                let edges = mp_edges(phi);
                DensityModel {
                    shape: Shape::MeixnerPollaczek { phi },
                    pieces: vec![
                        Piece::new(edges.z_min, 0.0, SqrtEdge, Singular),
                        Piece::new(0.0, edges.z_max, Singular, SqrtEdge),
                    ],
                    plateau: None,
                    scale: Scale::Degree,
                }
            }
        }
    }

    /// Density of `J(n)/n` for a matrix with `J_nn ~ a n`, `J_{n,n+1} ~ b n/2`.
    /// `a` may be negative (mirror image of `|a|`); `|a| = |b|` is rejected.
    pub fn jacobi_class(a: f64, b: f64) -> Result<Self> {
        use Endpoint::*;
        let (a, b) = validate_ab(a, b)?;
        let (pieces, plateau) = if a.abs() < b {
            (
                vec![Piece::new(a - b, 0.0, SqrtEdge, Singular), Piece::new(0.0, a + b, Singular, SqrtEdge)],
                None,
            )
        } else {
            let s = a.signum();
            let m = a.abs();
            let mut pieces = vec![Piece::new(0.0, m - b, Regular, Regular)];
            if b > 0.0 {
                pieces.push(Piece::new(m - b, m + b, SqrtEdge, SqrtEdge));
            }
            if s < 0.0 {
                pieces = pieces
                    .into_iter()
                    .rev()
                    .map(|p| Piece::new(-p.hi, -p.lo, p.right, p.left))
                    .collect();
            }
            let plateau = if s < 0.0 { (-(m - b), 0.0) } else { (0.0, m - b) };
            (pieces, Some(plateau))
        };
        Ok(DensityModel { shape: Shape::JacobiClass { a, b }, pieces, plateau, scale: Scale::Degree })
    }

    /// Counting measure of the given points (sorted internally).
    pub fn empirical(mut points: Vec<f64>, scale: Scale) -> Result<Self> {
        if points.is_empty() || points.iter().any(|p| !p.is_finite()) {
            return Err(Error::InvalidParameter("empirical model needs finite points".into()));
        }
        points.sort_by(f64::total_cmp);
        let piece = Piece::new(points[0], points[points.len() - 1], Endpoint::Regular, Endpoint::Regular);
        Ok(DensityModel { shape: Shape::Empirical { points }, pieces: vec![piece], plateau: None, scale })
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn plateau(&self) -> Option<(f64, f64)> {
        self.plateau
    }

    pub fn scale(&self) -> Scale {
        self.scale
    }

    pub fn support(&self) -> (f64, f64) {
        (self.pieces[0].lo, self.pieces[self.pieces.len() - 1].hi)
    }

    pub fn edges(&self) -> EdgeInfo {
        let (z_min, z_max) = self.support();
        EdgeInfo { z_min, z_max }
    }

    /// Piece boundaries, including interior singular points.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut pts: Vec<f64> = self.pieces.iter().map(|p| p.lo).collect();
        pts.push(self.support().1);
        pts
    }

    /// ρ(z); zero outside the support and `+∞` at an interior singular point.
    /// The empirical model has no density and returns 0.
    pub fn rho(&self, z: f64) -> f64 {
        let (lo, hi) = self.support();
        if !(z >= lo && z <= hi) {
            return 0.0;
        }
        match self.shape {
            Shape::MeixnerPollaczek { phi } => {
                if z == 0.0 {
                    return f64::INFINITY;
                }
                acosh_ratio(phi.sin() - phi.cos() * z, z) / PI
            }
            Shape::Meixner { c } => {
                let alpha = meixner_alpha(c);
                if z <= 1.0 / alpha {
                    1.0
                } else {
                    meixner_f(c, z).clamp(-1.0, 1.0).acos() / PI
                }
            }
            Shape::Semicircle => (2.0 / PI) * (1.0 - z * z).max(0.0).sqrt(),
            Shape::Uniform { height } => height,
            Shape::JacobiClass { a, b } => jacobi_class_value(a, b, z),
            Shape::Empirical { .. } => 0.0,
        }
    }

    /// ln χ(z) on the plateau companion, if the model has one.
    pub fn ln_chi(&self, z: f64) -> Option<f64> {
        match self.shape {
            Shape::Meixner { c } => meixner_ln_chi(c, z).ok(),
            _ => None,
        }
    }

    /// `∫ f` over `[lo, hi] ∩ support`, split at piece boundaries and at
    /// `extra` points, with substitutions matched to the piece ends.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F, lo: f64, hi: f64, extra: &[f64], tol: f64) -> Result<f64> {
        let mut total = 0.0;
        for piece in &self.pieces {
            let u = lo.max(piece.lo);
            let v = hi.min(piece.hi);
            if u >= v {
                continue;
            }
            let mut cuts = vec![u];
            cuts.extend(extra.iter().copied().filter(|&x| x > u && x < v));
            cuts.push(v);
            cuts.sort_by(f64::total_cmp);
            for w in cuts.windows(2) {
                let left = if w[0] == piece.lo { piece.left } else { Endpoint::Regular };
                let right = if w[1] == piece.hi { piece.right } else { Endpoint::Regular };
                total += integrate_with_endpoints(&f, w[0], w[1], left, right, tol)?;
            }
        }
        Ok(total)
    }

    /// Mass of ρ on `[lo, hi]`.
    pub fn mass(&self, lo: f64, hi: f64) -> Result<f64> {
        if let Shape::Empirical { points } = &self.shape {
            let below = |z: f64| points.partition_point(|&p| p <= z);
            let m = below(hi).saturating_sub(points.partition_point(|&p| p < lo));
            return Ok(m as f64 / points.len() as f64);
        }
        if lo >= hi {
            return Ok(0.0);
        }
        self.integrate(|z| self.rho(z), lo, hi, &[], QUAD_TOL)
    }

    pub fn total_mass(&self) -> Result<f64> {
        let (lo, hi) = self.support();
        self.mass(lo, hi)
    }

    /// `∫_{z_min}^{z} ρ`, clamped to `[0, 1]`.
    pub fn cdf(&self, z: f64) -> Result<f64> {
        if let Shape::Empirical { points } = &self.shape {
            return Ok(points.partition_point(|&p| p <= z) as f64 / points.len() as f64);
        }
        let (lo, hi) = self.support();
        if z <= lo {
            return Ok(0.0);
        }
        Ok(self.mass(lo, z.min(hi))?.clamp(0.0, 1.0))
    }
}

fn mp_edges(phi: f64) -> EdgeInfo {
    let half = 0.5 * phi;
    EdgeInfo { z_min: -1.0 / half.tan(), z_max: half.tan() }
}

fn validate_ab(a: f64, b: f64) -> Result<(f64, f64)> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::InvalidParameter(format!("a and b must be finite, got a = {a}, b = {b}")));
    }
    let b = b.abs();
    if a.abs() == b {
        return Err(Error::DegenerateParameters { a, b });
    }
    Ok((a, b))
}

fn jacobi_class_value(a: f64, b: f64, z: f64) -> f64 {
    if a < 0.0 {
        return jacobi_class_value(-a, b, -z);
    }
    let r = (a * a - b * b).abs().sqrt();
    if a < b {
        if z < a - b || z > a + b {
            return 0.0;
        }
        if z == 0.0 {
            return f64::INFINITY;
        }
        acosh_ratio(r * r + a * z, z * b) / (PI * r)
    } else {
        if z < 0.0 || z > a + b {
            return 0.0;
        }
        if z <= a - b {
            return 1.0 / r;
        }
        (-r * r / (z * b) + a / b).clamp(-1.0, 1.0).acos() / (PI * r)
    }
}

fn meixner_ln_chi(c: f64, z: f64) -> Result<f64> {
    let alpha = meixner_alpha(c);
    if !(z > 0.0 && z <= alpha) {
        return Err(Error::Domain(format!("ln chi is defined on (0, {alpha}], got z = {z}")));
    }
    if z <= 1.0 / alpha {
        // |f| - 1 = (1+√c)²(1/α - z)/(2√c z), free of cancellation near 1/α
        let s = c.sqrt();
        let u = (1.0 + s) * (1.0 + s) * (1.0 / alpha - z) / (2.0 * s * z);
        Ok(2.0 * (u + (u * (u + 2.0)).sqrt()).ln_1p())
    } else {
        Ok(0.0)
    }
}

/// ρ(z) of the family's limiting zero density.
pub fn rho(family: &FamilySpec, z: f64) -> f64 {
    DensityModel::for_family(family).rho(z)
}

/// Exponential clustering rate of Meixner zeros on the plateau.
pub fn ln_chi(family: &FamilySpec, z: f64) -> Result<f64> {
    match family.kind() {
        Family::Meixner { c, .. } => meixner_ln_chi(c, z),
        _ => Err(Error::UnsupportedFamily { family: family.name(), operation: "ln chi" }),
    }
}

/// Density of the Jacobi class with parameters `(a, b)` at growth `n`.
pub fn rho_jacobi_class(a: f64, b: f64, z: f64) -> Result<f64> {
    let (a, b) = validate_ab(a, b)?;
    Ok(jacobi_class_value(a, b, z))
}

/// `(1/π)·sqrt(c∞(x)/a(x))`, the local zero density of a differential family.
pub fn local_density_de<A, C>(a_fn: A, c_inf_fn: C, x: f64) -> Result<f64>
where
    A: Fn(f64) -> f64,
    C: Fn(f64) -> f64,
{
    let a = a_fn(x);
    let c = c_inf_fn(x);
    if a * c <= 0.0 || (a * c).is_nan() {
        return Err(Error::Domain(format!("a(x)·c∞(x) = {} is not positive at x = {x}", a * c)));
    }
    Ok((c / a).sqrt() / PI)
}

pub fn cdf(model: &DensityModel, z: f64) -> Result<f64> {
    model.cdf(z)
}

pub fn support_edges(family: &FamilySpec) -> EdgeInfo {
    DensityModel::for_family(family).edges()
}

fn check_scale<R: crate::Real>(zeros: &ZeroSet<R>, model: &DensityModel) -> Result<()> {
    if zeros.scale() != model.scale() {
        return Err(Error::ScaleMismatch { zeros: zeros.scale().to_string(), model: model.scale().to_string() });
    }
    Ok(())
}

/// Kolmogorov-Smirnov distance between the scaled zeros and the model.
pub fn ks_statistic<R: crate::Real>(zeros: &ZeroSet<R>, model: &DensityModel) -> Result<f64> {
    check_scale(zeros, model)?;
    let mut pts = zeros.scaled();
    pts.sort_by(f64::total_cmp);
    let n = pts.len() as f64;
    let (lo, _) = model.support();
    let mut prev = lo;
    let mut cdf = 0.0;
    let mut d: f64 = 0.0;
    for (i, &p) in pts.iter().enumerate() {
        cdf = if matches!(model.shape, Shape::Empirical { .. }) {
            model.cdf(p)?
        } else {
            let step = if p > prev { model.mass(prev, p)? } else { 0.0 };
            prev = prev.max(p);
            (cdf + step).clamp(0.0, 1.0)
        };
        let i = i as f64;
        d = d.max((i + 1.0) / n - cdf).max(cdf - i / n);
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::scaling_params;
    use proptest::prelude::*;

    fn meixner() -> FamilySpec {
        FamilySpec::meixner(1.0, 0.25).unwrap()
    }

    fn mp(phi: f64) -> FamilySpec {
        FamilySpec::meixner_pollaczek(1.0, phi).unwrap()
    }

    /// Independent midpoint-rule integral of ρ on [lo, hi].
    fn midpoint_mass(model: &DensityModel, lo: f64, hi: f64, steps: usize) -> f64 {
        let h = (hi - lo) / steps as f64;
        (0..steps).map(|i| model.rho(lo + (i as f64 + 0.5) * h)).sum::<f64>() * h
    }

    #[test]
    fn rho_examples() {
        let m = meixner();
        assert_eq!(rho(&m, 1.0 / 3.0), 1.0);
        assert!((rho(&m, 1.0) - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(rho(&m, 3.0), 0.0);
        let oracle = (2.0 + 3f64.sqrt()).ln() / PI;
        assert!((rho(&mp(PI / 2.0), 0.5) - oracle).abs() < 1e-15);
        assert!((oracle - 0.419).abs() < 1e-3);
        for phi in [0.3, 1.0, PI / 3.0, 2.5] {
            assert_eq!(rho(&mp(phi), (phi / 2.0).tan()), 0.0);
        }
        assert_eq!(rho(&mp(1.0), 0.0), f64::INFINITY);
    }

    #[test]
    fn ln_chi_examples() {
        let m = meixner();
        assert_eq!(ln_chi(&m, 1.0 / 3.0).unwrap(), 0.0);
        let oracle = 2.0 * (2.5 + (2.5f64 * 2.5 - 1.0).sqrt()).ln();
        assert!((ln_chi(&m, 0.2).unwrap() - oracle).abs() < 1e-13);
        assert!((oracle - 3.1336).abs() < 1e-4);
        assert_eq!(ln_chi(&m, 0.6).unwrap(), 0.0);
        assert!(ln_chi(&m, 3.5).is_err());
        assert!(ln_chi(&m, 0.0).is_err());
        assert!(matches!(
            ln_chi(&FamilySpec::charlier(1.0).unwrap(), 0.5),
            Err(Error::UnsupportedFamily { .. })
        ));
    }

    #[test]
    fn jacobi_class_examples() {
        let v = rho_jacobi_class(0.0, 1.0, 0.5).unwrap();
        assert!((v - rho(&mp(PI / 2.0), 0.5)).abs() < 1e-15);
        assert!((rho_jacobi_class(5.0 / 3.0, 4.0 / 3.0, 1.0 / 3.0).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(rho_jacobi_class(1.0, 0.0, 0.4).unwrap(), 1.0);
        assert_eq!(rho_jacobi_class(1.0, 0.0, 1.2).unwrap(), 0.0);
        assert!(matches!(rho_jacobi_class(1.0, 1.0, 0.5), Err(Error::DegenerateParameters { .. })));
        assert!(matches!(rho_jacobi_class(-2.0, 2.0, 0.5), Err(Error::DegenerateParameters { .. })));
    }

    #[test]
    fn jacobi_class_reproduces_family_densities() {
        let families = [mp(PI / 6.0), mp(PI / 3.0), mp(PI / 2.0), mp(2.0 * PI / 3.0), meixner(),
            FamilySpec::meixner(2.0, 0.04).unwrap(), FamilySpec::meixner(0.5, 0.64).unwrap()];
        for f in &families {
            let s = scaling_params(f);
            let a = if s.mirrored { -s.a } else { s.a };
            let model = DensityModel::for_family(f);
            let (lo, hi) = model.support();
            for i in 0..=400 {
                let z = lo - 0.2 + (hi - lo + 0.4) * i as f64 / 400.0;
                let direct = model.rho(z);
                let via3 = rho_jacobi_class(a, s.b, z).unwrap();
                if direct.is_infinite() {
                    assert!(via3.is_infinite());
                } else {
                    assert!((direct - via3).abs() < 1e-12 * direct.max(1.0), "{f} z={z}: {direct} vs {via3}");
                }
            }
        }
        // Charlier is the b = 0 plateau
        let c = DensityModel::for_family(&FamilySpec::charlier(2.0).unwrap());
        for z in [-0.1, 0.0, 0.3, 1.0, 1.1] {
            assert_eq!(c.rho(z), rho_jacobi_class(1.0, 0.0, z).unwrap());
        }
    }

    #[test]
    fn jacobi_class_scaling_covariance() {
        for &(a, b) in &[(0.5, 1.0), (-0.3, 2.0), (5.0 / 3.0, 4.0 / 3.0), (3.0, 1.0)] {
            let r = f64::abs(a * a - b * b).sqrt();
            for i in 1..50 {
                let z = -4.0 + 8.0 * i as f64 / 50.0 + 1e-3;
                let lhs = rho_jacobi_class(a, b, z).unwrap();
                let rhs = rho_jacobi_class(a / r, b / r, z / r).unwrap() / r;
                assert!((lhs - rhs).abs() < 1e-12 * lhs.max(1.0), "({a},{b}) z={z}");
            }
        }
    }

    #[test]
    fn mirrored_jacobi_class_model_normalizes() {
        for &(a, b) in &[(-0.3, 2.0), (-3.0, 1.0), (3.0, 1.0), (0.5, 1.0), (2.0, 0.0)] {
            let m = DensityModel::jacobi_class(a, b).unwrap();
            assert!((m.total_mass().unwrap() - 1.0).abs() < 1e-8, "({a},{b})");
        }
    }

    #[test]
    fn local_density_examples() {
        let v = local_density_de(|_| 1.0, |_| 2.0, 0.3).unwrap();
        assert!((v - 2f64.sqrt() / PI).abs() < 1e-15);
        assert!((local_density_de(|x| x, |x| x, 2.0).unwrap() - 1.0 / PI).abs() < 1e-15);
        assert!((local_density_de(|_| 1.0, |_| PI * PI, 0.0).unwrap() - 1.0).abs() < 1e-15);
        assert!(matches!(local_density_de(|_| 1.0, |_| -1.0, 0.0), Err(Error::Domain(_))));
    }

    #[test]
    fn cdf_examples() {
        for f in [FamilySpec::hermite(), meixner(), mp(1.0), FamilySpec::charlier(1.0).unwrap()] {
            let m = DensityModel::for_family(&f);
            assert_eq!(m.cdf(m.support().0).unwrap(), 0.0);
        }
        let m = DensityModel::for_family(&meixner());
        assert!((m.cdf(1.0 / 3.0).unwrap() - 1.0 / 3.0).abs() < 1e-12);
        let h = DensityModel::for_family(&FamilySpec::hermite());
        assert!((h.cdf(0.0).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn normalization_on_parameter_grid() {
        let mut families = vec![FamilySpec::hermite(), FamilySpec::charlier(0.7).unwrap()];
        for phi in [PI / 6.0, PI / 3.0, PI / 2.0, 2.0 * PI / 3.0] {
            families.push(mp(phi));
        }
        for c in [0.04, 0.25, 0.64] {
            families.push(FamilySpec::meixner(1.0, c).unwrap());
        }
        for f in &families {
            let m = DensityModel::for_family(f);
            let total = m.total_mass().unwrap();
            assert!((total - 1.0).abs() < 1e-9, "{f}: {total}");
        }
    }

    #[test]
    fn cdf_agrees_with_midpoint_oracle() {
        for f in [meixner(), FamilySpec::hermite(), mp(2.0)] {
            let m = DensityModel::for_family(&f);
            let (lo, hi) = m.support();
            for frac in [0.1, 0.37, 0.8] {
                let z = lo + frac * (hi - lo);
                let oracle = midpoint_mass(&m, lo, z, 400_000);
                assert!((m.cdf(z).unwrap() - oracle).abs() < 1e-4, "{f} z={z}");
            }
        }
    }

    #[test]
    fn meixner_continuous_but_kinked() {
        let m = DensityModel::for_family(&meixner());
        for z0 in [1.0 / 3.0, 3.0] {
            let h = 1e-10;
            assert!((m.rho(z0 - h) - m.rho(z0 + h)).abs() < 1e-4);
        }
        // one-sided slopes at 1/α: zero on the plateau, unbounded on the other side
        let z0 = 1.0 / 3.0;
        let right = |h: f64| (m.rho(z0 + h) - m.rho(z0)) / h;
        let left = (m.rho(z0) - m.rho(z0 - 1e-6)) / 1e-6;
        assert_eq!(left, 0.0);
        assert!(right(1e-8).abs() > 10.0 * right(1e-4).abs());
    }

    #[test]
    fn plateau_densities_bounded_by_one() {
        for f in [meixner(), FamilySpec::meixner(1.0, 0.64).unwrap(), FamilySpec::charlier(3.0).unwrap()] {
            let m = DensityModel::for_family(&f);
            for i in 0..=2000 {
                let z = -1.0 + 12.0 * i as f64 / 2000.0;
                let r = m.rho(z);
                assert!((0.0..=1.0).contains(&r), "{f} z={z} rho={r}");
            }
        }
    }

    #[test]
    fn zero_outside_support() {
        for f in [meixner(), mp(1.0), FamilySpec::hermite(), FamilySpec::charlier(1.0).unwrap()] {
            let m = DensityModel::for_family(&f);
            let (lo, hi) = m.support();
            for d in [1e-9, 0.1, 5.0] {
                assert_eq!(m.rho(lo - d), 0.0);
                assert_eq!(m.rho(hi + d), 0.0);
            }
        }
    }

    #[test]
    fn mp_diverges_at_origin_but_cdf_is_continuous() {
        let m = DensityModel::for_family(&mp(PI / 3.0));
        let mut last = 0.0;
        for k in 1..12 {
            let r = m.rho(10f64.powi(-k));
            assert!(r > last);
            last = r;
        }
        let c0 = m.cdf(0.0).unwrap();
        assert!((m.cdf(1e-9).unwrap() - c0).abs() < 1e-7);
        assert!((m.cdf(-1e-9).unwrap() - c0).abs() < 1e-7);
    }

    #[test]
    fn support_edges_examples() {
        assert_eq!(support_edges(&meixner()), EdgeInfo { z_min: 0.0, z_max: 3.0 });
        let e = support_edges(&mp(PI / 2.0));
        assert!((e.z_min + 1.0).abs() < 1e-15 && (e.z_max - 1.0).abs() < 1e-15);
        let e = support_edges(&mp(PI / 3.0));
        assert!((e.z_min + 3f64.sqrt()).abs() < 1e-14 && (e.z_max - 1.0 / 3f64.sqrt()).abs() < 1e-15);
        assert_eq!(support_edges(&FamilySpec::charlier(4.0).unwrap()), EdgeInfo { z_min: 0.0, z_max: 1.0 });
        assert_eq!(support_edges(&FamilySpec::hermite()), EdgeInfo { z_min: -1.0, z_max: 1.0 });
    }

    #[test]
    fn ks_against_own_empirical_is_one_over_n() {
        let xs: Vec<f64> = (0..50).map(|i| (i as f64).sqrt()).collect();
        let zeros = ZeroSet::from_values(xs.clone(), Scale::Degree).unwrap();
        let model = DensityModel::empirical(zeros.scaled(), Scale::Degree).unwrap();
        let d = ks_statistic(&zeros, &model).unwrap();
        assert!(d <= 1.0 / 50.0 + 1e-15);
    }

    #[test]
    fn ks_rejects_scale_mismatch() {
        let zeros = ZeroSet::from_values(vec![-0.5, 0.5], Scale::Degree).unwrap();
        let model = DensityModel::for_family(&FamilySpec::hermite());
        assert!(matches!(ks_statistic(&zeros, &model), Err(Error::ScaleMismatch { .. })));
    }

    proptest! {
        #[test]
        fn cdf_is_monotone(c in 0.02f64..0.9, phi in 0.2f64..2.9, u in 0.0f64..1.0, v in 0.0f64..1.0) {
            for f in [FamilySpec::meixner(1.0, c).unwrap(), mp(phi)] {
                let m = DensityModel::for_family(&f);
                let (lo, hi) = m.support();
                let (x, y) = if u <= v { (u, v) } else { (v, u) };
                let cx = m.cdf(lo + x * (hi - lo)).unwrap();
                let cy = m.cdf(lo + y * (hi - lo)).unwrap();
                prop_assert!(cx <= cy + 1e-10);
                prop_assert!((0.0..=1.0).contains(&cx));
            }
        }

        #[test]
        fn jacobi_class_is_nonnegative(a in -3.0f64..3.0, b in 0.0f64..3.0, z in -7.0f64..7.0) {
            prop_assume!((a.abs() - b).abs() > 1e-6);
            let v = rho_jacobi_class(a, b, z).unwrap();
            prop_assert!(v >= 0.0);
        }
    }
}
