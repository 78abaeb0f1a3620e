//! The q-integral of functions on a finite q-measure space.
//!
//! `int f dmu = int_0^inf mu{f > l} dl - int_0^inf mu{f < -l} dl`, evaluated
//! exactly as a finite sum over the distinct values of `f`.

use crate::error::{Error, Result};
use crate::finite_space::{examples, is_compatible, pairwise_expansion, QMeasureTable};
use crate::report::{Report, Witness};
use crate::scalar::{sorted_distinct, Rational, Scalar};
use crate::subset::{SubsetMask, Universe};

/// `f(x_i) = values[i]`.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteFunction<S> {
    universe: Universe,
    values: Vec<S>,
}

impl<S: Scalar> FiniteFunction<S> {
    pub fn new(universe: Universe, values: Vec<S>) -> Result<Self> {
        if values.len() != universe.len() {
            return Err(Error::DimensionMismatch { expected: universe.len(), found: values.len() });
        }
        Ok(FiniteFunction { universe, values })
    }

    pub fn constant(universe: Universe, c: S) -> Self {
        let values = vec![c; universe.len()];
        FiniteFunction { universe, values }
    }

    /// `c * chi_A`.
    pub fn indicator(universe: Universe, set: SubsetMask, c: S) -> Result<Self> {
        universe.check_subset(set)?;
        let values = (0..universe.len()).map(|i| if set.contains(i) { c } else { S::zero() }).collect();
        Ok(FiniteFunction { universe, values })
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    pub fn value(&self, i: usize) -> S {
        self.values[i]
    }

    fn map(&self, f: impl Fn(S) -> S) -> Self {
        FiniteFunction { universe: self.universe.clone(), values: self.values.iter().map(|v| f(*v)).collect() }
    }

    /// `f_1 = max(f, 0)`.
    pub fn positive_part(&self) -> Self {
        self.map(|v| S::max_of(v, S::zero()))
    }

    /// `f_2 = -min(f, 0)`.
    pub fn negative_part(&self) -> Self {
        self.map(|v| -S::min_of(v, S::zero()))
    }

    pub fn scale(&self, c: S) -> Self {
        self.map(|v| c * v)
    }

    /// `c + f`.
    pub fn shift(&self, c: S) -> Self {
        self.map(|v| c + v)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_universe(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| *a + *b).collect();
        Ok(FiniteFunction { universe: self.universe.clone(), values })
    }

    /// `f * chi_A`.
    pub fn restrict(&self, set: SubsetMask) -> Result<Self> {
        self.universe.check_subset(set)?;
        let values =
            self.values.iter().enumerate().map(|(i, v)| if set.contains(i) { *v } else { S::zero() }).collect();
        Ok(FiniteFunction { universe: self.universe.clone(), values })
    }

    /// `{x : f(x) != 0}`.
    pub fn support(&self) -> SubsetMask {
        SubsetMask::from_indices(self.values.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, _)| i))
    }

    /// `{x : f(x) > t}`.
    pub fn superlevel(&self, t: S) -> SubsetMask {
        SubsetMask::from_indices(self.values.iter().enumerate().filter(|(_, v)| **v > t).map(|(i, _)| i))
    }

    /// `{x : f(x) = t}`.
    pub fn level_set(&self, t: S) -> SubsetMask {
        SubsetMask::from_indices(self.values.iter().enumerate().filter(|(_, v)| **v == t).map(|(i, _)| i))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.values.iter().all(|v| *v >= S::zero())
    }

    fn check_universe(&self, other: &Self) -> Result<()> {
        if self.universe != other.universe {
            return Err(Error::UniverseMismatch { expected: self.universe.len(), found: other.universe.len() });
        }
        Ok(())
    }

    /// Distinct positive values, ascending.
    fn positive_levels(&self) -> Vec<S> {
        sorted_distinct(self.values.iter().copied().filter(|v| *v > S::zero()).collect())
    }
}

/// `g(l) = mu{f > l}` for `l >= 0`: a right-continuous step function with
/// `g(l) = plateaus[i]` on `[breakpoints[i], breakpoints[i+1])` and `0` from
/// the last breakpoint on.
#[derive(Clone, Debug, PartialEq)]
pub struct LayerFunction<S> {
    pub breakpoints: Vec<S>,
    pub plateaus: Vec<S>,
}

impl<S: Scalar> LayerFunction<S> {
    pub fn eval(&self, lambda: S) -> S {
        match self.breakpoints.iter().rposition(|b| *b <= lambda) {
            Some(i) if i < self.plateaus.len() => self.plateaus[i],
            _ => S::zero(),
        }
    }

    /// `int_0^inf g(l) dl`.
    pub fn integral(&self) -> S {
        self.plateaus
            .iter()
            .zip(self.breakpoints.windows(2))
            .fold(S::zero(), |acc, (p, w)| acc + *p * (w[1] - w[0]))
    }
}

fn check_universe<S: Scalar>(mu: &QMeasureTable<S>, f: &FiniteFunction<S>) -> Result<()> {
    mu.ensure_same_universe(f.universe())
}

/// Layer function of the nonnegative part of `f`.
pub fn layer_function<S: Scalar>(mu: &QMeasureTable<S>, f: &FiniteFunction<S>) -> Result<LayerFunction<S>> {
    check_universe(mu, f)?;
    let mut breakpoints = vec![S::zero()];
    breakpoints.extend(f.positive_levels());
    let plateaus = breakpoints[..breakpoints.len() - 1].iter().map(|a| mu.mu(f.superlevel(*a))).collect();
    Ok(LayerFunction { breakpoints, plateaus })
}

/// `int f dmu`.
pub fn q_integral<S: Scalar>(mu: &QMeasureTable<S>, f: &FiniteFunction<S>) -> Result<S> {
    check_universe(mu, f)?;
    let positive = layer_function(mu, f)?.integral();
    // h(l) = mu{f < -l}: strict sublevel sets of f are superlevel sets of f_2.
    let negative = layer_function(mu, &f.negative_part())?.integral();
    Ok(positive - negative)
}

/// The telescoped form over level sets `A_1, ..., A_n` with values
/// `0 < a_1 < ... < a_n`:
/// `sum_k a_k [sum_{j>k} mu(A_k + A_j) - (n-k-1) mu(A_k) - sum_{j>k} mu(A_j)]`,
/// where the last term is `a_n mu(A_n)`. Agrees with [`q_integral`] when `mu`
/// is grade-2 additive.
pub fn q_integral_closed_form<S: Scalar>(mu: &QMeasureTable<S>, f: &FiniteFunction<S>) -> Result<S> {
    check_universe(mu, f)?;
    if let Some((index, v)) = f.values().iter().enumerate().find(|(_, v)| **v < S::zero()) {
        return Err(Error::NegativeFunction { index, value: v.to_string() });
    }
    let levels = f.positive_levels();
    let sets: Vec<SubsetMask> = levels.iter().map(|a| f.level_set(*a)).collect();
    let n = levels.len();
    let mut total = S::zero();
    for k in 0..n {
        let mut coeff = S::zero();
        for j in k + 1..n {
            coeff = coeff + mu.mu(sets[k].union(sets[j])) - mu.mu(sets[j]);
        }
        let singles = if k + 1 == n { -S::one() } else { S::from_i64((n - k - 2) as i64) };
        coeff = coeff - singles * mu.mu(sets[k]);
        total = total + levels[k] * coeff;
    }
    Ok(total)
}

/// `N int f dmu = sum_i c_i mu(f = c_i)` over the distinct values of `f`.
pub fn naive_integral<S: Scalar>(mu: &QMeasureTable<S>, f: &FiniteFunction<S>) -> Result<S> {
    check_universe(mu, f)?;
    let values = sorted_distinct(f.values().to_vec());
    Ok(values.iter().filter(|c| !c.is_zero()).fold(S::zero(), |acc, c| acc + *c * mu.mu(f.level_set(*c))))
}

/// `int_A f dmu = int f chi_A dmu`.
pub fn restricted_integral<S: Scalar>(mu: &QMeasureTable<S>, f: &FiniteFunction<S>, set: SubsetMask) -> Result<S> {
    check_universe(mu, f)?;
    q_integral(mu, &f.restrict(set)?)
}

/// `int (f_1 + ... + f_k) = sum_{i<j} int (f_i + f_j) - (k-2) sum_i int f_i`
/// for `3 <= k <= 5` functions with mutually disjoint supports.
pub fn integral_expansion_check<S: Scalar>(mu: &QMeasureTable<S>, fs: &[FiniteFunction<S>]) -> Result<Report> {
    if fs.len() < 3 {
        return Err(Error::TooFewParts { needed: 3, found: fs.len() });
    }
    if fs.len() > 5 {
        return Err(Error::InvalidArgument(format!("at most 5 functions, got {}", fs.len())));
    }
    for f in fs {
        check_universe(mu, f)?;
    }
    for (i, f) in fs.iter().enumerate() {
        for g in &fs[i + 1..] {
            if !f.support().is_disjoint(g.support()) {
                return Err(Error::NotDisjoint(f.support(), g.support()));
            }
        }
    }
    let singles: Vec<S> = fs.iter().map(|f| q_integral(mu, f)).collect::<Result<_>>()?;
    let mut pairs = vec![vec![S::zero(); fs.len()]; fs.len()];
    for i in 0..fs.len() {
        for j in i + 1..fs.len() {
            pairs[i][j] = q_integral(mu, &fs[i].add(&fs[j])?)?;
        }
    }
    let rhs = pairwise_expansion(fs.len(), |i| singles[i], |i, j| pairs[i][j]);
    let sum = fs[1..].iter().try_fold(fs[0].clone(), |acc, f| acc.add(f))?;
    let lhs = q_integral(mu, &sum)?;

    let mut report = Report::new(format!("integral_grade2_{}", fs.len()));
    report.cases = 1;
    report.note(format!("left = {lhs}, right = {rhs}"));
    if !lhs.close_to(&rhs, 1e-9) {
        let sets = fs.iter().map(|f| f.support()).collect();
        report.fail(Witness::new(sets, format!("{lhs} != {rhs}")));
    }
    Ok(report)
}

/// Grade-2 additivity of the integral for three functions with mutually
/// disjoint supports.
pub fn theorem44_check<S: Scalar>(
    mu: &QMeasureTable<S>,
    f: &FiniteFunction<S>,
    g: &FiniteFunction<S>,
    h: &FiniteFunction<S>,
) -> Result<Report> {
    integral_expansion_check(mu, &[f.clone(), g.clone(), h.clone()])
}

/// Both sides of the grade-2 identity for three functions whose supports
/// overlap.
#[derive(Clone, Debug, PartialEq)]
pub struct Grade2IntegralGap {
    /// `int (f + g + h) dmu`.
    pub left: Rational,
    /// `int (f+g) + int (f+h) + int (g+h) - int f - int g - int h`.
    pub right: Rational,
}

impl Grade2IntegralGap {
    pub fn to_report(&self) -> Report {
        let mut r = Report::new("grade2_integral_counterexample");
        r.cases = 1;
        r.note(format!("left = {}, right = {}", self.left, self.right));
        if self.left != self.right {
            r.fail(Witness::detail(format!("{} != {}", self.left, self.right)));
        }
        r
    }
}

/// Quantum coin with `f = chi_{x1,x2}`, `g = chi_{x2,x3}`, `h = chi_{x3,x4}`.
pub fn grade2_integral_counterexample() -> Grade2IntegralGap {
    let mu = examples::quantum_coin();
    let u = mu.universe().clone();
    let one = Rational::from_i64(1);
    let chi = |labels: &[&str]| FiniteFunction::indicator(u.clone(), u.subset(labels).expect("labels"), one).expect("subset");
    let (f, g, h) = (chi(&["x1", "x2"]), chi(&["x2", "x3"]), chi(&["x3", "x4"]));
    let q = |x: &FiniteFunction<Rational>| q_integral(&mu, x).expect("same universe");
    let sum = |a: &FiniteFunction<Rational>, b: &FiniteFunction<Rational>| a.add(b).expect("same universe");
    let left = q(&sum(&sum(&f, &g), &h));
    let right = q(&sum(&f, &g)) + q(&sum(&f, &h)) + q(&sum(&g, &h)) - q(&f) - q(&g) - q(&h);
    Grade2IntegralGap { left, right }
}

/// `int (chi_A + chi_B) dmu = mu(A) + mu(B)` holds exactly when `A mu B`.
#[derive(Clone, Debug, PartialEq)]
pub struct Lemma43Report<S> {
    pub integral: S,
    pub sum_of_measures: S,
    /// `mu(A u B) + mu(A n B)`.
    pub union_plus_intersection: S,
    pub additive: bool,
    pub compatible: bool,
}

impl<S: Scalar> Lemma43Report<S> {
    pub fn to_report(&self) -> Report {
        let mut r = Report::new("compatible_pair_integral");
        r.cases = 1;
        r.note(format!(
            "integral = {}, mu(A) + mu(B) = {}, additive = {}, compatible = {}",
            self.integral, self.sum_of_measures, self.additive, self.compatible
        ));
        if self.additive != self.compatible {
            r.fail(Witness::detail("additivity and compatibility disagree"));
        } else if !self.integral.close_to(&self.union_plus_intersection, 1e-9) {
            r.fail(Witness::detail(format!(
                "integral {} != mu(A u B) + mu(A n B) = {}",
                self.integral, self.union_plus_intersection
            )));
        }
        r
    }
}

pub fn lemma43_check<S: Scalar>(mu: &QMeasureTable<S>, a: SubsetMask, b: SubsetMask, tol: f64) -> Result<Lemma43Report<S>> {
    let u = mu.universe().clone();
    let fa = FiniteFunction::indicator(u.clone(), a, S::one())?;
    let fb = FiniteFunction::indicator(u, b, S::one())?;
    let integral = q_integral(mu, &fa.add(&fb)?)?;
    let sum_of_measures = mu.mu(a) + mu.mu(b);
    Ok(Lemma43Report {
        integral,
        sum_of_measures,
        union_plus_intersection: mu.mu(a.union(b)) + mu.mu(a.intersection(b)),
        additive: integral.close_to(&sum_of_measures, tol),
        compatible: is_compatible(mu, a, b, tol),
    })
}

/// Naive and q-integrals of `f_n = chi_{x1,x2} + (1 - 1/n) chi_{x3}` on the
/// three-point table with `mu(x1) = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceDemo {
    /// `N int f_n dmu` for `n = 1, 2, ...`.
    pub naive: Vec<Rational>,
    pub naive_limit: Rational,
    /// `N int 1 dmu`.
    pub naive_of_limit: Rational,
    /// `int f_n dmu`.
    pub q: Vec<Rational>,
    /// `int 1 dmu`.
    pub q_of_limit: Rational,
}

impl ConvergenceDemo {
    pub fn to_report(&self) -> Report {
        let mut r = Report::new("naive_convergence_failure");
        r.cases = self.naive.len() as u64;
        r.note(format!(
            "lim N int f_n = {} vs N int 1 = {}; lim int f_n = {} vs int 1 = {}",
            self.naive_limit,
            self.naive_of_limit,
            self.q.last().copied().unwrap_or_default(),
            self.q_of_limit
        ));
        if self.naive_limit == self.naive_of_limit {
            r.fail(Witness::detail("naive integral unexpectedly converges"));
        }
        r
    }
}

pub fn convergence_failure_demo(terms: usize) -> ConvergenceDemo {
    let mu = examples::three_point();
    let u = mu.universe().clone();
    let one = Rational::from_i64(1);
    let f_n = |n: usize| {
        let tail = one - Rational::new(1, n as i128);
        FiniteFunction::new(u.clone(), vec![one, one, tail]).expect("three points")
    };
    let naive = (1..=terms).map(|n| naive_integral(&mu, &f_n(n)).expect("same universe")).collect();
    let q = (1..=terms).map(|n| q_integral(&mu, &f_n(n)).expect("same universe")).collect();
    let unit = FiniteFunction::constant(u, one);
    ConvergenceDemo {
        naive,
        naive_limit: Rational::from_i64(2),
        naive_of_limit: naive_integral(&mu, &unit).expect("same universe"),
        q,
        q_of_limit: q_integral(&mu, &unit).expect("same universe"),
    }
}
