//! Layer-cake q-integration on `[0, 1]` and the checks built on it.

use serde::Serialize;

use super::function::{Layered, PiecewiseLinear, PiecewiseMonotone};
use super::interval::IntervalUnion;
use super::measure::RealQMeasure;
use super::quadrature::{integrate_pieces, QuadratureResult, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::report::{Report, Witness};
use crate::scalar::{sorted_distinct, Scalar};

/// `g(l) = mu{x in domain : f(x) > l}`, or its left limit `mu{f >= l}`.
pub fn layer_value<S: Scalar, F: Layered<S>>(
    mu: &RealQMeasure<S>,
    f: &F,
    domain: &IntervalUnion<S>,
    lambda: S,
    left_limit: bool,
) -> Result<S> {
    mu.measure(&f.superlevel(lambda, left_limit, domain)?)
}

/// `0`, `sup f` and every breakpoint strictly between them, ascending.
fn layer_breaks<S: Scalar, F: Layered<S>>(mu: &RealQMeasure<S>, f: &F, domain: &IntervalUnion<S>) -> Vec<S> {
    let Some((_, sup)) = f.range(domain) else {
        return Vec::new();
    };
    if sup <= S::zero() {
        return Vec::new();
    }
    let mut breaks: Vec<S> =
        f.breakpoints(domain, mu.shift()).into_iter().filter(|l| *l > S::zero() && *l < sup).collect();
    breaks.push(S::zero());
    breaks.push(sup);
    sorted_distinct(breaks)
}

fn positive_part_integral<F: Layered<f64>>(
    mu: &RealQMeasure<f64>,
    f: &F,
    domain: &IntervalUnion<f64>,
    tol: f64,
    budget: usize,
) -> Result<QuadratureResult> {
    let breaks = layer_breaks(mu, f, domain);
    integrate_pieces(|l, left| layer_value(mu, f, domain, l, left), &breaks, tol, budget)
}

/// `int_domain f dmu = int_0^inf mu{f > l} dl - int_0^inf mu{f < -l} dl` by
/// quadrature, with the default budget of `10^6` layer evaluations.
pub fn q_integral_real(
    mu: &RealQMeasure<f64>,
    f: &PiecewiseMonotone,
    domain: &IntervalUnion<f64>,
    tol: f64,
) -> Result<QuadratureResult> {
    q_integral_layered(mu, f, &f.negated(), domain, tol, DEFAULT_BUDGET)
}

/// As [`q_integral_real`] for any layered function, given `-f`.
pub fn q_integral_layered<F: Layered<f64>>(
    mu: &RealQMeasure<f64>,
    f: &F,
    neg_f: &F,
    domain: &IntervalUnion<f64>,
    tol: f64,
    budget: usize,
) -> Result<QuadratureResult> {
    if tol <= 0.0 {
        return Err(Error::InvalidArgument(format!("tolerance {tol} must be positive")));
    }
    let Some((inf, sup)) = f.range(domain) else {
        return Ok(QuadratureResult::zero());
    };
    let part_tol = if inf < 0.0 && sup > 0.0 { tol / 2.0 } else { tol };
    let pos = positive_part_integral(mu, f, domain, part_tol, budget)?;
    let neg = positive_part_integral(mu, neg_f, domain, part_tol, budget)?;
    Ok(QuadratureResult {
        value: pos.value - neg.value,
        error_estimate: pos.error_estimate + neg.error_estimate,
        evaluations: pos.evaluations + neg.evaluations,
    })
}

/// Exact layer integral of a piecewise-linear function: between the
/// candidate breakpoints the layer function is a polynomial of degree at
/// most 2, so Simpson's rule with left limits at each right end is exact.
pub fn q_integral_piecewise_linear<S: Scalar>(
    mu: &RealQMeasure<S>,
    f: &PiecewiseLinear<S>,
    domain: &IntervalUnion<S>,
) -> Result<S> {
    let half = S::from_ratio(1, 2);
    let six = S::from_i64(6);
    let four = S::from_i64(4);
    let part = |f: &PiecewiseLinear<S>| -> Result<S> {
        let breaks = layer_breaks(mu, f, domain);
        let mut total = S::zero();
        for w in breaks.windows(2) {
            let (a, b) = (w[0], w[1]);
            let fa = layer_value(mu, f, domain, a, false)?;
            let fm = layer_value(mu, f, domain, (a + b) * half, false)?;
            let fb = layer_value(mu, f, domain, b, true)?;
            total = total + (b - a) / six * (fa + four * fm + fb);
        }
        Ok(total)
    };
    Ok(part(f)? - part(&f.negated())?)
}

/// `int_[0,y] x^n dmu = 2 y^(n+2) / ((n+1)(n+2))` under q-Lebesgue measure.
pub fn monomial_integral_closed(n: u32, y: f64) -> f64 {
    let n = n as f64;
    2.0 * y.powf(n + 2.0) / ((n + 1.0) * (n + 2.0))
}

/// `int_[0,y] e^x dmu = 2(e^y - y - 1)` under q-Lebesgue measure.
pub fn exp_integral_closed(y: f64) -> f64 {
    if y == 0.0 {
        return 0.0;
    }
    2.0 * (y.exp_m1() - y)
}

/// `int_[0,y] (x^2 + x) dmu` against `y^4/6 + y^3/3`, the sum of the separate
/// integrals, under q-Lebesgue measure.
pub fn surprise_additivity_check(y: f64, tol: f64) -> Result<Report> {
    let domain = IntervalUnion::closed(0.0, y)?;
    let mu = RealQMeasure::QLebesgue;
    let quad_tol = tol * 1e-2;
    let whole = q_integral_real(&mu, &PiecewiseMonotone::square_plus_x(), &domain, quad_tol)?;
    let square = q_integral_real(&mu, &PiecewiseMonotone::monomial(2), &domain, quad_tol)?;
    let linear = q_integral_real(&mu, &PiecewiseMonotone::monomial(1), &domain, quad_tol)?;
    let expected = y.powi(4) / 6.0 + y.powi(3) / 3.0;
    let mut report = Report::new("surprise_additivity");
    report.cases = 1;
    report.note(format!(
        "y = {y}: int (x^2+x) = {}, int x^2 + int x = {}, closed form = {expected}",
        whole.value,
        square.value + linear.value
    ));
    let gap = (whole.value - expected).abs();
    if gap > tol {
        report.fail(Witness::detail(format!("|{} - {expected}| = {gap:e} > {tol:e}", whole.value)));
    }
    Ok(report)
}

/// Default step, quadrature tolerance and pass tolerance of the FTC check.
pub const FTC_STEP: f64 = 1e-2;
pub const FTC_QUAD_TOL: f64 = 1e-10;
pub const FTC_TOL: f64 = 5e-3;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FtcPoint {
    pub y: f64,
    /// `(F(y+h) - 2F(y) + F(y-h)) / (2h^2)`.
    pub half_second_difference: f64,
    pub f: f64,
    pub error: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FtcReport {
    pub points: Vec<FtcPoint>,
    pub max_error: f64,
    pub passed: bool,
}

/// `(1/2) d^2/dy^2 int_[0,y] f dmu = f(y)` under q-Lebesgue measure, by
/// central second differences of quadrature values. `f` must be monotone.
pub fn quantum_ftc_check(f: &PiecewiseMonotone, grid: &[f64], h: f64, quad_tol: f64, tol: f64) -> Result<FtcReport> {
    f.monotone_direction()?;
    if h <= 0.0 {
        return Err(Error::InvalidArgument(format!("step {h} must be positive")));
    }
    let (lo, hi) = (2.0 * h, 1.0 - 2.0 * h);
    if let Some(&y) = grid.iter().find(|y| !(**y > lo && **y < hi)) {
        return Err(Error::GridOutOfRange { y, lo, hi });
    }
    let mu = RealQMeasure::QLebesgue;
    let big_f = |y: f64| -> Result<f64> { Ok(q_integral_real(&mu, f, &IntervalUnion::closed(0.0, y)?, quad_tol)?.value) };
    let mut points = Vec::with_capacity(grid.len());
    for &y in grid {
        let d2 = (big_f(y + h)? - 2.0 * big_f(y)? + big_f(y - h)?) / (2.0 * h * h);
        let fy = f.eval(y);
        points.push(FtcPoint { y, half_second_difference: d2, f: fy, error: (d2 - fy).abs() });
    }
    let max_error = points.iter().map(|p| p.error).fold(0.0, f64::max);
    Ok(FtcReport { points, max_error, passed: max_error <= tol })
}

/// `mu{f > l} <= mu{g > l}` at every grid level, every breakpoint of `f`
/// and `g`, and the midpoints between consecutive levels.
pub fn mu_domination_check<F: Layered<f64>>(
    mu: &RealQMeasure<f64>,
    f: &F,
    g: &F,
    domain: &IntervalUnion<f64>,
    grid: &[f64],
    tol: f64,
) -> Result<Report> {
    let mut levels: Vec<f64> = grid.to_vec();
    levels.extend(f.breakpoints(domain, mu.shift()));
    levels.extend(g.breakpoints(domain, mu.shift()));
    levels.push(0.0);
    let levels = sorted_distinct(levels);
    let mut probes = levels.clone();
    probes.extend(levels.windows(2).map(|w| 0.5 * (w[0] + w[1])));
    let probes = sorted_distinct(probes);

    let mut report = Report::new("mu_domination");
    for l in probes {
        report.cases += 1;
        let a = layer_value(mu, f, domain, l, false)?;
        let b = layer_value(mu, g, domain, l, false)?;
        if a > b + tol {
            report.fail(Witness::detail(format!("l = {l}: mu{{f > l}} = {a} > mu{{g > l}} = {b}")));
        }
    }
    Ok(report)
}

/// `f <= g` at the midpoints of `samples` equal cells of the domain's
/// pieces; a sampled stand-in for `f <= g` almost everywhere.
pub fn pointwise_le_check(f: &PiecewiseMonotone, g: &PiecewiseMonotone, domain: &IntervalUnion<f64>, samples: usize) -> Report {
    let mut report = Report::new("pointwise_le");
    report.exhaustive = false;
    for (a, b) in domain.pieces() {
        for k in 0..samples {
            let x = a + (b - a) * (k as f64 + 0.5) / samples as f64;
            report.cases += 1;
            let (fx, gx) = (f.eval(x), g.eval(x));
            if fx > gx {
                report.fail(Witness::detail(format!("f({x}) = {fx} > g({x}) = {gx}")));
            }
        }
    }
    report
}

/// Integrals of an increasing sequence against the integral of its limit.
#[derive(Clone, Debug, PartialEq)]
pub struct MonotoneConvergence {
    pub integrals: Vec<f64>,
    pub limit_integral: f64,
    pub gap: f64,
    pub report: Report,
}

/// `int f_i dmu -> int f dmu` for `i = 1..=i_max`, after checking that the
/// sequence increases on a sample grid and that `g` mu-dominates each `f_i`.
/// Passes iff `|int f_(i_max) - int f| <= tol`.
#[allow(clippy::too_many_arguments)]
pub fn monotone_convergence_demo(
    mu: &RealQMeasure<f64>,
    sequence: impl Fn(usize) -> Result<PiecewiseMonotone>,
    limit: &PiecewiseMonotone,
    dominator: &PiecewiseMonotone,
    domain: &IntervalUnion<f64>,
    i_max: usize,
    tol: f64,
    quad_tol: f64,
) -> Result<MonotoneConvergence> {
    let mut report = Report::new("monotone_convergence");
    let fs: Vec<PiecewiseMonotone> = (1..=i_max).map(&sequence).collect::<Result<_>>()?;
    let xs: Vec<f64> = (0..=64).map(|k| k as f64 / 64.0).collect();
    let grid: Vec<f64> = (0..=32).map(|k| k as f64 / 32.0 * dominator.range(domain).map_or(0.0, |r| r.1)).collect();
    for (i, w) in fs.windows(2).enumerate() {
        if let Some(x) = xs.iter().find(|x| w[0].eval(**x) > w[1].eval(**x) + 1e-12) {
            report.fail(Witness::detail(format!("precondition: f_{} > f_{} at x = {x}", i + 1, i + 2)));
        }
    }
    for (i, f) in fs.iter().enumerate() {
        let dom = mu_domination_check(mu, f, dominator, domain, &grid, 1e-12)?;
        if !dom.passed {
            let detail = dom.witness.map(|w| w.detail).unwrap_or_default();
            report.fail(Witness::detail(format!("precondition: g does not dominate f_{}: {detail}", i + 1)));
        }
    }
    let integrals: Vec<f64> =
        fs.iter().map(|f| q_integral_real(mu, f, domain, quad_tol).map(|r| r.value)).collect::<Result<_>>()?;
    let limit_integral = q_integral_real(mu, limit, domain, quad_tol)?.value;
    let gap = integrals.last().map_or(f64::INFINITY, |v| (v - limit_integral).abs());
    report.cases = i_max as u64;
    report.note(format!("int f_{i_max} = {}, int f = {limit_integral}, gap = {gap:e}", integrals.last().unwrap_or(&0.0)));
    if gap > tol {
        report.fail(Witness::detail(format!("gap {gap:e} exceeds {tol:e} at i = {i_max}")));
    }
    Ok(MonotoneConvergence { integrals, limit_integral, gap, report })
}
