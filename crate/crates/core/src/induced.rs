//! Set functions `mu_1(A) = int_A f dmu` induced by a density, domination of
//! functions, and the failure of a Radon-Nikodym theorem.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::finite_space::{examples, grade2_check, regularity_check, CheckConfig, FiniteMeasure, QMeasureTable};
use crate::q_integral::{restricted_integral, FiniteFunction};
use crate::report::{Report, Witness};
use crate::scalar::{sorted_distinct, Rational, Scalar};
use crate::subset::SubsetMask;

/// `mu_1(A) = int_A f dmu` tabulated on every subset.
#[derive(Clone, Debug, PartialEq)]
pub struct InducedQMeasure<S> {
    pub base: QMeasureTable<S>,
    pub density: FiniteFunction<S>,
    pub table: QMeasureTable<S>,
    /// Grade-2 check of `table`, run at construction.
    pub grade2: Report,
}

pub fn induce<S: Scalar>(mu: &QMeasureTable<S>, f: &FiniteFunction<S>, config: &CheckConfig) -> Result<InducedQMeasure<S>> {
    mu.ensure_same_universe(f.universe())?;
    if let Some((index, v)) = f.values().iter().enumerate().find(|(_, v)| **v < S::zero()) {
        return Err(Error::NegativeFunction { index, value: v.to_string() });
    }
    let table = QMeasureTable::from_fn(mu.universe().clone(), |a| {
        restricted_integral(mu, f, a).expect("universe checked above")
    })?;
    let grade2 = grade2_check(&table, config);
    Ok(InducedQMeasure { base: mu.clone(), density: f.clone(), table, grade2 })
}

/// Inheritance results for an induced set function. Parts whose hypothesis
/// on `mu` fails are `None`.
#[derive(Clone, Debug, PartialEq)]
pub struct Theorem53Report {
    /// `mu_1` is grade-2 additive.
    pub q_measure: Report,
    /// `mu` regular implies `mu_1` regular.
    pub regular: Option<bool>,
    /// `mu` completely regular implies `mu_1` completely regular.
    pub completely_regular: Option<bool>,
    /// `mu` completely regular implies `mu(A) = 0 => mu_1(A) = 0`; holds the
    /// first `A` where it fails.
    pub absolutely_continuous: Option<std::result::Result<(), SubsetMask>>,
}

impl Theorem53Report {
    pub fn passed(&self) -> bool {
        self.q_measure.passed
            && self.regular != Some(false)
            && self.completely_regular != Some(false)
            && !matches!(self.absolutely_continuous, Some(Err(_)))
    }

    pub fn to_report(&self) -> Report {
        let mut r = Report::new("induced_measure");
        r.cases = self.q_measure.cases;
        r.note(format!(
            "q-measure: {}, regular: {:?}, completely regular: {:?}, absolutely continuous: {:?}",
            self.q_measure.passed,
            self.regular,
            self.completely_regular,
            self.absolutely_continuous.as_ref().map(|x| x.is_ok())
        ));
        r.note("the domination hypothesis is automatic on a finite space");
        if let Some(w) = &self.q_measure.witness {
            r.fail(w.clone());
        }
        if self.regular == Some(false) {
            r.fail(Witness::detail("mu regular but mu_1 not regular"));
        }
        if self.completely_regular == Some(false) {
            r.fail(Witness::detail("mu completely regular but mu_1 not"));
        }
        if let Some(Err(a)) = self.absolutely_continuous {
            r.fail(Witness::new(vec![a], "mu(A) = 0 but mu_1(A) != 0"));
        }
        r
    }
}

pub fn theorem53_check<S: Scalar>(mu: &QMeasureTable<S>, f: &FiniteFunction<S>, config: &CheckConfig) -> Result<Theorem53Report> {
    let induced = induce(mu, f, config)?;
    let base = regularity_check(mu, config)?;
    let derived = regularity_check(&induced.table, config)?;
    let regular = base.regular().then(|| derived.regular());
    let completely_regular = base.completely_regular().then(|| derived.completely_regular());
    let absolutely_continuous = base.completely_regular().then(|| {
        match mu.universe().subsets().find(|a| mu.mu(*a).near_zero(config.tol) && !induced.table.mu(*a).near_zero(config.tol)) {
            Some(a) => Err(a),
            None => Ok(()),
        }
    });
    Ok(Theorem53Report { q_measure: induced.grade2, regular, completely_regular, absolutely_continuous })
}

/// `g` mu-dominates `f`: `mu{f > l} <= mu{g > l}` for every real `l`. Both
/// layer functions are step functions that only change at values of `f` or
/// `g`, so those values and one level below them suffice.
pub fn dominates_finite<S: Scalar>(mu: &QMeasureTable<S>, f: &FiniteFunction<S>, g: &FiniteFunction<S>, tol: f64) -> Result<Report> {
    mu.ensure_same_universe(f.universe())?;
    mu.ensure_same_universe(g.universe())?;
    let mut levels: Vec<S> = f.values().iter().chain(g.values()).copied().collect();
    levels = sorted_distinct(levels);
    if let Some(low) = levels.first().copied() {
        levels.insert(0, low - S::one());
    }
    let mut report = Report::new("mu_domination");
    for l in levels {
        report.cases += 1;
        let (a, b) = (mu.mu(f.superlevel(l)), mu.mu(g.superlevel(l)));
        if a > b && !a.close_to(&b, tol) {
            report.fail(Witness::new(vec![f.superlevel(l), g.superlevel(l)], format!("l = {l}: {a} > {b}")));
        }
    }
    Ok(report)
}

/// Outcome of trying to represent a measure as `int_A f dmu`.
#[derive(Clone, Debug, PartialEq)]
pub struct RadonNikodym {
    /// `nu << mu`.
    pub absolutely_continuous: bool,
    /// Density values forced by the singleton equations
    /// `f(x_i) mu(x_i) = nu(x_i)`, or `None` where `mu(x_i) = 0`.
    pub forced: Vec<Option<Rational>>,
    /// `nu({x2, x3})`.
    pub nu_pair: Rational,
    /// `int_{x2,x3} f dmu` with the forced values.
    pub integral_pair: Rational,
    pub grid_candidates: usize,
    /// Grid densities reproducing `nu` on every subset.
    pub grid_matches: usize,
}

impl RadonNikodym {
    pub fn to_report(&self) -> Report {
        let mut r = Report::new("radon_nikodym_counterexample");
        r.cases = self.grid_candidates as u64;
        let forced: Vec<String> =
            self.forced.iter().map(|v| v.map_or_else(|| "free".to_string(), |v| v.to_string())).collect();
        r.note(format!("nu << mu: {}", self.absolutely_continuous));
        r.note(format!("forced density values: ({})", forced.join(", ")));
        r.note(format!(
            "exact argument: nu({{x2,x3}}) = {} but int_{{x2,x3}} f dmu = {}",
            self.nu_pair, self.integral_pair
        ));
        r.note(format!(
            "grid search (illustrative): {} of {} densities reproduce nu",
            self.grid_matches, self.grid_candidates
        ));
        if !self.absolutely_continuous || self.nu_pair == self.integral_pair || self.grid_matches > 0 {
            r.fail(Witness::detail("counterexample not reproduced"));
        }
        r
    }
}

/// The three-point space with `mu(x1) = 0`, `mu = 1` elsewhere, and
/// `nu = (0, 1, 1)`. Densities are searched on `{0, 0.1, ..., 3}^3`.
pub fn radon_nikodym_counterexample() -> RadonNikodym {
    let mu = examples::three_point();
    let u = mu.universe().clone();
    let (zero, one) = (Rational::from_i64(0), Rational::from_i64(1));
    let nu = FiniteMeasure::new(u.clone(), vec![zero, one, one]).expect("three weights");
    let nu_table = nu.to_table().expect("nonnegative");

    let absolutely_continuous = u.subsets().all(|a| !mu.mu(a).is_zero() || nu_table.mu(a).is_zero());
    let forced: Vec<Option<Rational>> = (0..u.len())
        .map(|i| {
            let m = mu.mu(SubsetMask::singleton(i));
            (!m.is_zero()).then(|| nu.weights()[i] / m)
        })
        .collect();
    let density = FiniteFunction::new(u.clone(), forced.iter().map(|v| v.unwrap_or(zero)).collect()).expect("three values");
    let pair = u.subset(&["x2", "x3"]).expect("labels");
    let integral_pair = restricted_integral(&mu, &density, pair).expect("same universe");

    let steps: Vec<Rational> = (0..=30).map(|k| Rational::new(k, 10)).collect();
    let mut grid_candidates = 0;
    let mut grid_matches = 0;
    for &a in &steps {
        for &b in &steps {
            for &c in &steps {
                grid_candidates += 1;
                let f = FiniteFunction::new(u.clone(), vec![a, b, c]).expect("three values");
                if u.subsets().all(|s| restricted_integral(&mu, &f, s).expect("same universe") == nu_table.mu(s)) {
                    grid_matches += 1;
                }
            }
        }
    }
    RadonNikodym {
        absolutely_continuous,
        forced,
        nu_pair: nu_table.mu(pair),
        integral_pair,
        grid_candidates,
        grid_matches,
    }
}
