use zerodist_core::bethe::{
    bethe_product_exact, bethe_product_shifted, chi_empirical, gap_deviations, hermite_sum_rule, GapDeviations,
};
use zerodist_core::density::{self, ks_statistic};
use zerodist_core::eigen::{family_zeros, PrecisionVisitor};
use zerodist_core::nevai_ullman::{nu_density, trace_vs_moment, verify_moments, MomentReport};
use zerodist_core::{
    DensityModel, EigenOptions, Family, FamilySpec, MomentSpec, Precision, Real, Result as CoreResult, ZeroSet,
};

use crate::output::{Cell, Table};
use crate::{Failure, Solve};

type Verdict = Result<(), String>;

const MAX_GRID_POINTS: f64 = 1e7;

fn options(solve: &Solve, default: Precision) -> Result<EigenOptions, Failure> {
    if solve.n == 0 {
        return Err(Failure::Usage("--n must be at least 1".into()));
    }
    let opts = EigenOptions::new(solve.precision.unwrap_or(default));
    Ok(match solve.tol {
        Some(t) if !(t > 0.0 && t.is_finite()) => return Err(Failure::Usage(format!("--tol must be positive, got {t}"))),
        Some(t) => opts.with_abs_tol(t),
        None => opts.refined(true),
    })
}

fn grid_points(lo: f64, hi: f64, step: f64) -> Result<Vec<f64>, Failure> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(Failure::Usage(format!("--grid must be positive, got {step}")));
    }
    let count = ((hi - lo) / step + 1e-9).floor();
    if count > MAX_GRID_POINTS {
        return Err(Failure::Usage(format!("--grid {step} gives more than {MAX_GRID_POINTS:e} points")));
    }
    Ok((0..=count as usize).map(|i| lo + i as f64 * step).collect())
}

struct ZerosJob<'a> {
    family: &'a FamilySpec,
    n: usize,
    opts: EigenOptions,
}

impl PrecisionVisitor for ZerosJob<'_> {
    type Output = CoreResult<ZeroSet>;

    fn visit<R: Real>(self) -> Self::Output {
        Ok(family_zeros::<R>(self.family, self.n, &self.opts)?.to_f64())
    }
}

fn solve_f64(solve: &Solve) -> Result<ZeroSet, Failure> {
    let opts = options(solve, Precision::Double)?;
    Ok(opts.precision.dispatch(ZerosJob { family: &solve.family, n: solve.n, opts })?)
}

pub fn zeros(solve: &Solve) -> Result<Table, Failure> {
    let z = solve_f64(solve)?;
    let mut t = Table::new(&["k", "x_k", "z_k"]);
    for (k, (x, s)) in z.xs().iter().zip(z.scaled()).enumerate() {
        t.push(vec![(k + 1).into(), (*x).into(), s.into()]);
    }
    Ok(t)
}

pub fn density(family: &FamilySpec, step: f64) -> Result<Table, Failure> {
    let model = DensityModel::for_family(family);
    let (lo, hi) = model.support();
    let mut t = Table::new(&["z", "rho", "ln_chi"]);
    for z in grid_points(lo, hi, step)? {
        t.push(vec![z.into(), model.rho(z).into(), model.ln_chi(z).into()]);
    }
    Ok(t)
}

pub fn compare(solve: &Solve, ks_max: f64, edge_max: f64) -> Result<(Table, Verdict), Failure> {
    let zeros = solve_f64(solve)?;
    let model = DensityModel::for_family(&solve.family);
    let ks = ks_statistic(&zeros, &model)?;
    let scaled = zeros.scaled();
    let (lo, hi) = model.support();
    let (z_min, z_max) = (scaled[0], scaled[scaled.len() - 1]);
    let (lo_err, hi_err) = ((z_min - lo).abs(), (z_max - hi).abs());

    let mut t = Table::new(&["metric", "value", "threshold", "pass"]);
    let mut failures = Vec::new();
    let mut checked = |t: &mut Table, name: &'static str, value: f64, limit: f64| {
        let pass = value < limit;
        if !pass {
            failures.push(format!("{name} = {value:.4} is not below {limit}"));
        }
        t.push(vec![name.into(), value.into(), limit.into(), pass.into()]);
    };
    checked(&mut t, "ks", ks, ks_max);
    for (name, value) in [("z_min", z_min), ("edge_min", lo)] {
        t.push(vec![name.into(), value.into(), Cell::Missing, Cell::Missing]);
    }
    checked(&mut t, "edge_min_error", lo_err, edge_max);
    for (name, value) in [("z_max", z_max), ("edge_max", hi)] {
        t.push(vec![name.into(), value.into(), Cell::Missing, Cell::Missing]);
    }
    checked(&mut t, "edge_max_error", hi_err, edge_max);
    let verdict = if failures.is_empty() { Ok(()) } else { Err(failures.join("; ")) };
    Ok((t, verdict))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Identity {
    Exact,
    Shifted,
}

struct BetheJob<'a> {
    family: &'a FamilySpec,
    n: usize,
    opts: EigenOptions,
    identity: Identity,
}

/// Per zero: `x`, `|residual|`, and the value compared with the threshold.
type Residuals = Vec<(f64, f64, f64)>;

impl PrecisionVisitor for BetheJob<'_> {
    type Output = CoreResult<Residuals>;

    fn visit<R: Real>(self) -> Self::Output {
        let zeros = family_zeros::<R>(self.family, self.n, &self.opts)?;
        let xs = zeros.xs_f64();
        if matches!(self.family.kind(), Family::Hermite) {
            let report = hermite_sum_rule(&zeros)?;
            return Ok(xs.iter().zip(report.residuals.iter().zip(&report.relative)).map(|(x, (r, q))| (*x, r.abs(), *q)).collect());
        }
        (0..zeros.n())
            .map(|m| {
                let r = match self.identity {
                    Identity::Exact => bethe_product_exact(&zeros, m, self.family)?,
                    Identity::Shifted => bethe_product_shifted(&zeros, m, self.family)?,
                };
                Ok((xs[m], r.norm(), r.norm()))
            })
            .collect()
    }
}

pub fn bethe(solve: &Solve, identity: Identity, max_residual: f64) -> Result<(Table, Verdict), Failure> {
    let family = &solve.family;
    if !matches!(family.kind(), Family::Hermite) && !family.has_difference_equation() {
        return Err(Failure::Usage(format!(
            "bethe needs hermite, meixner or mp; {} has no implemented identity",
            family.name()
        )));
    }
    // the Meixner identities resolve gaps of order 1e-54
    let default = if matches!(family.kind(), Family::Meixner { .. }) { Precision::Multi } else { Precision::Double };
    let opts = options(solve, default)?;
    let rows = opts.precision.dispatch(BetheJob { family, n: solve.n, opts, identity })?;
    let div = family.scale().divisor(solve.n);
    let mut t = Table::new(&["m", "x_m", "z_m", "residual_abs"]);
    let mut worst: f64 = 0.0;
    for (m, (x, r, q)) in rows.iter().enumerate() {
        worst = worst.max(*q);
        t.push(vec![(m + 1).into(), (*x).into(), (x / div).into(), (*r).into()]);
    }
    let what = if matches!(family.kind(), Family::Hermite) { "relative sum-rule residual" } else { "product residual" };
    let verdict =
        if worst < max_residual { Ok(()) } else { Err(format!("max {what} {worst:.3e} is not below {max_residual:e}")) };
    Ok((t, verdict))
}

struct GapJob<'a> {
    family: &'a FamilySpec,
    n: usize,
    opts: EigenOptions,
}

impl PrecisionVisitor for GapJob<'_> {
    type Output = CoreResult<GapDeviations>;

    fn visit<R: Real>(self) -> Self::Output {
        gap_deviations(&family_zeros::<R>(self.family, self.n, &self.opts)?)
    }
}

pub fn chi(solve: &Solve, window: usize) -> Result<Table, Failure> {
    let family = &solve.family;
    if !matches!(family.kind(), Family::Meixner { .. } | Family::Charlier { .. }) {
        return Err(Failure::Usage(format!("chi needs meixner or charlier, got {}", family.name())));
    }
    let opts = options(solve, Precision::DoubleDouble)?;
    let gaps = opts.precision.dispatch(GapJob { family, n: solve.n, opts })?;
    let mut t = Table::new(&["z", "ln_ratio", "ln_chi_analytic"]);
    for (z, ln) in chi_empirical(&gaps, window)? {
        t.push(vec![z.into(), ln.into(), density::ln_chi(family, z).ok().into()]);
    }
    Ok(t)
}

pub enum MomentSource {
    Trace(FamilySpec, usize),
    Quadrature(f64, f64, f64),
}

pub fn moments(source: MomentSource, kmax: usize, max_error: Option<f64>) -> Result<(Table, Verdict), Failure> {
    let (report, limit): (MomentReport, f64) = match source {
        MomentSource::Trace(family, n) => (trace_vs_moment(&family, n, kmax)?, max_error.unwrap_or(0.02)),
        MomentSource::Quadrature(a, b, gamma) => {
            (verify_moments(&MomentSpec::new(a, b, gamma)?, kmax)?, max_error.unwrap_or(1e-6))
        }
    };
    let mut t = Table::new(&["k", "expected", "measured", "abs_error", "rel_error"]);
    for r in &report.rows {
        t.push(vec![r.k.into(), r.expected.into(), r.measured.into(), r.abs_error.into(), r.rel_error.into()]);
    }
    let worst = report.max_rel_error();
    let verdict = if worst < limit { Ok(()) } else { Err(format!("max relative error {worst:.3e} is not below {limit:e}")) };
    Ok((t, verdict))
}

pub fn nudensity(a: f64, b: f64, gamma: f64, step: f64) -> Result<Table, Failure> {
    let spec = MomentSpec::new(a, b, gamma)?;
    let (lo, hi) = spec.support();
    let mut t = Table::new(&["z", "rho"]);
    for z in grid_points(lo, hi, step)? {
        t.push(vec![z.into(), nu_density(&spec, z)?.into()]);
    }
    Ok(t)
}
