//! Adaptive Gauss-Kronrod (7-15) quadrature with endpoint substitutions for
//! square-root edges and integrable logarithmic or power singularities.

use std::collections::BinaryHeap;

use crate::error::{Error, Result};

/// Compensated (Neumaier) summation.
#[derive(Clone, Copy, Debug, Default)]
pub struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn sum(&self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for NeumaierSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = NeumaierSum::default();
        for x in iter {
            s.add(x);
        }
        s
    }
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// One Gauss-Kronrod 7-15 panel: `(kronrod estimate, |kronrod - gauss|)`.
pub fn gauss_kronrod_15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let dx = h * XGK[j];
        let pair = f(c - dx) + f(c + dx);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    (kronrod * h, ((kronrod - gauss) * h).abs())
}

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.error.total_cmp(&other.error)
    }
}

const MAX_PANELS: usize = 4000;

/// `∫_a^b f` to absolute tolerance `tol` by global adaptive bisection.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    if a > b {
        return integrate(f, b, a, tol).map(|v| -v);
    }
    integrate_seeded(f, &[a, b], tol)
}

/// Adaptive integration over `[points[0], points[last]]`, starting from the
/// panels between consecutive (increasing) points.
pub fn integrate_seeded<F: Fn(f64) -> f64>(f: F, points: &[f64], tol: f64) -> Result<f64> {
    let (a, b) = (points[0], points[points.len() - 1]);
    let mut heap = BinaryHeap::new();
    let mut total_error = 0.0;
    for w in points.windows(2) {
        let (value, error) = gauss_kronrod_15(&f, w[0], w[1]);
        total_error += error;
        heap.push(Panel { a: w[0], b: w[1], value, error });
    }
    // Panels too narrow to split further keep their error here.
    let mut frozen = NeumaierSum::default();
    let mut frozen_error = 0.0;
    let min_width = 64.0 * f64::EPSILON * a.abs().max(b.abs()).max(f64::MIN_POSITIVE);
    while total_error > tol && heap.len() < MAX_PANELS {
        let Some(p) = heap.pop() else { break };
        if !p.value.is_finite() {
            return Err(Error::Quadrature { tolerance: tol, estimate: f64::INFINITY });
        }
        let m = 0.5 * (p.a + p.b);
        if p.b - p.a < min_width {
            frozen.add(p.value);
            frozen_error += p.error;
            continue;
        }
        let (v1, e1) = gauss_kronrod_15(&f, p.a, m);
        let (v2, e2) = gauss_kronrod_15(&f, m, p.b);
        total_error += e1 + e2 - p.error;
        heap.push(Panel { a: p.a, b: m, value: v1, error: e1 });
        heap.push(Panel { a: m, b: p.b, value: v2, error: e2 });
        if heap.is_empty() {
            break;
        }
    }
    let mut sum = frozen;
    let mut err = frozen_error;
    for p in heap.iter() {
        sum.add(p.value);
        err += p.error;
    }
    let value = sum.sum();
    if !value.is_finite() || err > tol.max(frozen_error) {
        return Err(Error::Quadrature { tolerance: tol, estimate: err });
    }
    Ok(value)
}

/// Behaviour of an integrand at an interval endpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Endpoint {
    Regular,
    /// Square-root type edge, `f ~ c + d·sqrt(|x - x₀|)` or `f ~ 1/sqrt(|x - x₀|)`.
    SqrtEdge,
    /// Integrable logarithmic or weak power singularity.
    Singular,
}

/// Span of the exponential substitution: `e^-700` is below any relevant scale.
const EXP_SPAN: f64 = 700.0;

/// Initial panels `[0, 0.5, 1, 2, 4, ..., 700]` for the exponential
/// substitution, so that the bulk near `t = 0` is always sampled.
fn exp_panels() -> Vec<f64> {
    let mut pts = vec![0.0, 0.5];
    let mut t = 1.0;
    while t < EXP_SPAN {
        pts.push(t);
        t *= 2.0;
    }
    pts.push(EXP_SPAN);
    pts
}

/// `∫_a^b f` with substitutions chosen by the endpoint behaviour. Singular
/// or edge endpoints each get their own half of the interval.
pub fn integrate_with_endpoints<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    left: Endpoint,
    right: Endpoint,
    tol: f64,
) -> Result<f64> {
    if a >= b {
        return Ok(0.0);
    }
    if left == Endpoint::Regular && right == Endpoint::Regular {
        return integrate(&f, a, b, tol);
    }
    if left == Endpoint::SqrtEdge && right == Endpoint::SqrtEdge {
        return integrate_cos_substituted(&f, a, b, tol);
    }
    let m = 0.5 * (a + b);
    let lhs = match left {
        Endpoint::Regular => integrate(&f, a, m, 0.5 * tol)?,
        Endpoint::SqrtEdge => integrate_cos_substituted(&f, a, m, 0.5 * tol)?,
        Endpoint::Singular => integrate_singular_left(&f, a, m, 0.5 * tol)?,
    };
    let rhs = match right {
        Endpoint::Regular => integrate(&f, m, b, 0.5 * tol)?,
        Endpoint::SqrtEdge => integrate_cos_substituted(&f, m, b, 0.5 * tol)?,
        Endpoint::Singular => integrate_singular_right(&f, m, b, 0.5 * tol)?,
    };
    Ok(lhs + rhs)
}

/// `x = (a+b)/2 - (b-a)/2·cos θ`, which smooths square-root behaviour at both ends.
pub fn integrate_cos_substituted<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> Result<f64> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    integrate(
        |t: f64| {
            let x = (c - h * t.cos()).clamp(a, b);
            f(x) * h * t.sin()
        },
        0.0,
        std::f64::consts::PI,
        tol,
    )
}

/// `x = a + (b-a)·e^{-t}`, for an integrable singularity at `a`.
///
/// `x` is formed by adding to `a`, so for `a != 0` the part of the integral
/// closer to `a` than its rounding unit is dropped. That is harmless for
/// logarithms but not for strong power singularities away from the origin.
pub fn integrate_singular_left<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> Result<f64> {
    let w = b - a;
    integrate_seeded(
        |t: f64| {
            let s = w * (-t).exp();
            let x = a + s;
            if x == a {
                0.0
            } else {
                f(x) * s
            }
        },
        &exp_panels(),
        tol,
    )
}

/// `x = b - (b-a)·e^{-t}`, for an integrable singularity at `b`.
pub fn integrate_singular_right<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> Result<f64> {
    let w = b - a;
    integrate_seeded(
        |t: f64| {
            let s = w * (-t).exp();
            let x = b - s;
            if x == b {
                0.0
            } else {
                f(x) * s
            }
        },
        &exp_panels(),
        tol,
    )
}
