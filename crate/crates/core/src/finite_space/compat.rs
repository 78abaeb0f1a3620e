//! Compatibility, the mu-center, splitting sets, regularity and the
//! complement criterion for destructive-pair measures.

use super::table::{CheckConfig, QMeasureTable};
use crate::error::{Error, Result};
use crate::report::{Report, Witness};
use crate::scalar::Scalar;
use crate::subset::SubsetMask;

/// Both forms of `A mu B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Compatibility {
    /// `mu(A u B) = mu(A) + mu(B) - mu(A n B)`.
    pub union_form: bool,
    /// `mu(A d B) = mu(A n B') + mu(A' n B)`.
    pub symmetric_difference_form: bool,
}

impl Compatibility {
    pub fn forms_agree(&self) -> bool {
        self.union_form == self.symmetric_difference_form
    }
}

pub fn compatibility<S: Scalar>(mu: &QMeasureTable<S>, a: SubsetMask, b: SubsetMask, tol: f64) -> Compatibility {
    let union_form = mu.mu(a.union(b)).close_to(&(mu.mu(a) + mu.mu(b) - mu.mu(a.intersection(b))), tol);
    let symmetric_difference_form =
        mu.mu(a.symmetric_difference(b)).close_to(&(mu.mu(a.difference(b)) + mu.mu(b.difference(a))), tol);
    Compatibility { union_form, symmetric_difference_form }
}

/// `A mu B`: `mu(A u B) = mu(A) + mu(B) - mu(A n B)`. On grade-2 tables this
/// agrees with the symmetric-difference form; see [`compatibility`].
pub fn is_compatible<S: Scalar>(mu: &QMeasureTable<S>, a: SubsetMask, b: SubsetMask, tol: f64) -> bool {
    compatibility(mu, a, b, tol).union_form
}

fn require_exhaustive<S: Scalar>(mu: &QMeasureTable<S>, config: &CheckConfig) -> Result<()> {
    if mu.n() > config.exhaustive_limit {
        return Err(Error::SizeOverflow { n: mu.n(), max: config.exhaustive_limit });
    }
    Ok(())
}

/// `Z_mu`: the sets compatible with every set, ascending.
pub fn mu_center<S: Scalar>(mu: &QMeasureTable<S>, config: &CheckConfig) -> Result<Vec<SubsetMask>> {
    require_exhaustive(mu, config)?;
    let u = mu.universe();
    Ok(u.subsets().filter(|a| u.subsets().all(|b| is_compatible(mu, *a, b, config.tol))).collect())
}

/// `mu(B) = mu(B n A) + mu(B n A')` for every `B`.
pub fn is_splitting<S: Scalar>(mu: &QMeasureTable<S>, a: SubsetMask, config: &CheckConfig) -> Result<bool> {
    require_exhaustive(mu, config)?;
    let ac = mu.complement(a);
    Ok(mu
        .universe()
        .subsets()
        .all(|b| mu.mu(b).close_to(&(mu.mu(b.intersection(a)) + mu.mu(b.intersection(ac))), config.tol)))
}

/// On the center: closure under complement and union, additivity on
/// disjoint pairs, and `mu(u (B n A_i)) = sum mu(B n A_i)` for every `B` and
/// every disjoint family of at most three center sets.
pub fn center_measure_check<S: Scalar>(mu: &QMeasureTable<S>, config: &CheckConfig) -> Result<Report> {
    let center = mu_center(mu, config)?;
    let n = mu.n();
    let tol = config.tol;
    let mut report = Report::new("center_measure");
    report.note(format!("center has {} sets", center.len()));
    let mut in_center = vec![false; mu.universe().subset_count()];
    for a in &center {
        in_center[a.index()] = true;
    }

    let mut cases = 0u64;
    for (i, &a) in center.iter().enumerate() {
        cases += 1;
        if !in_center[a.complement(n).index()] {
            report.fail(Witness::new(vec![a], "complement not in center"));
        }
        for &b in &center[i..] {
            cases += 1;
            if !in_center[a.union(b).index()] {
                report.fail(Witness::new(vec![a, b], "union not in center"));
            }
            if a.is_disjoint(b) && !mu.mu(a.union(b)).close_to(&(mu.mu(a) + mu.mu(b)), tol) {
                report.fail(Witness::new(vec![a, b], "mu not additive on center"));
            }
        }
    }

    let nonempty: Vec<SubsetMask> = center.iter().copied().filter(|a| !a.is_empty()).collect();
    let mut relative = |parts: &[SubsetMask], report: &mut Report| {
        for b in mu.universe().subsets() {
            cases += 1;
            let pieces = parts.iter().map(|p| b.intersection(*p));
            let union = pieces.clone().fold(SubsetMask::EMPTY, |u, p| u.union(p));
            let sum = pieces.fold(S::zero(), |acc, p| acc + mu.mu(p));
            if !mu.mu(union).close_to(&sum, tol) {
                let mut sets = vec![b];
                sets.extend_from_slice(parts);
                report.fail(Witness::new(sets, "relative additivity fails for B and family"));
                return false;
            }
        }
        true
    };
    'families: for (i, &a1) in nonempty.iter().enumerate() {
        for (j, &a2) in nonempty.iter().enumerate().skip(i + 1) {
            if !a1.is_disjoint(a2) {
                continue;
            }
            if !relative(&[a1, a2], &mut report) {
                break 'families;
            }
            for &a3 in &nonempty[j + 1..] {
                if a3.is_disjoint(a1) && a3.is_disjoint(a2) && !relative(&[a1, a2, a3], &mut report) {
                    break 'families;
                }
            }
        }
    }
    report.cases = cases;
    Ok(report)
}

/// Regularity conditions with the first witness for each failed one.
#[derive(Clone, Debug, PartialEq)]
pub struct RegularityReport {
    /// `mu(A) = 0` implies `mu(A + B) = mu(B)`.
    pub null_absorption: Option<Witness>,
    /// `mu(A + B) = 0` implies `mu(A) = mu(B)`.
    pub null_union: Option<Witness>,
    /// `mu(A) = 0` implies `mu(B) = 0` for `B` inside `A`.
    pub null_hereditary: Option<Witness>,
    /// Disjoint pairs examined.
    pub cases: u64,
}

impl RegularityReport {
    pub fn regular(&self) -> bool {
        self.null_absorption.is_none() && self.null_union.is_none()
    }

    pub fn completely_regular(&self) -> bool {
        self.regular() && self.null_hereditary.is_none()
    }

    pub fn to_report(&self) -> Report {
        let mut r = Report::new("regularity");
        r.cases = self.cases;
        r.note(format!("regular={} completely_regular={}", self.regular(), self.completely_regular()));
        r.note("continuity conditions hold trivially on a finite space");
        for w in [&self.null_absorption, &self.null_union].into_iter().flatten() {
            r.fail(w.clone());
        }
        r
    }
}

pub fn regularity_check<S: Scalar>(mu: &QMeasureTable<S>, config: &CheckConfig) -> Result<RegularityReport> {
    require_exhaustive(mu, config)?;
    let tol = config.tol;
    let n = mu.n();
    let is_null = |a: SubsetMask| mu.mu(a).near_zero(tol);
    let mut out = RegularityReport { null_absorption: None, null_union: None, null_hereditary: None, cases: 0 };
    for a in mu.universe().subsets() {
        for b in a.complement(n).submasks() {
            out.cases += 1;
            let ab = a.union(b);
            if out.null_absorption.is_none() && is_null(a) && !mu.mu(ab).close_to(&mu.mu(b), tol) {
                out.null_absorption =
                    Some(Witness::new(vec![a, b], format!("mu(A) = 0 but mu(A+B) = {} != mu(B) = {}", mu.mu(ab), mu.mu(b))));
            }
            if out.null_union.is_none() && is_null(ab) && !mu.mu(a).close_to(&mu.mu(b), tol) {
                out.null_union =
                    Some(Witness::new(vec![a, b], format!("mu(A+B) = 0 but mu(A) = {} != mu(B) = {}", mu.mu(a), mu.mu(b))));
            }
        }
        if out.null_hereditary.is_none() && is_null(a) {
            if let Some(b) = a.submasks().find(|b| !is_null(*b)) {
                out.null_hereditary =
                    Some(Witness::new(vec![a, b], format!("mu(A) = 0 but subset has mu = {}", mu.mu(b))));
            }
        }
    }
    Ok(out)
}

/// Per-set verdicts of the complement criterion.
#[derive(Clone, Debug, PartialEq)]
pub struct Theorem24Report {
    pub report: Report,
    /// Sets satisfying all three statements.
    pub satisfying: Vec<SubsetMask>,
}

/// For every `A`: (a) `A` in `Z_mu`, (b) `A mu A'`, (c) `mu(A) + mu(A') = total`.
/// Passes iff the three agree on every set.
pub fn theorem24_check<S: Scalar>(mu: &QMeasureTable<S>, total: S, config: &CheckConfig) -> Result<Theorem24Report> {
    let center = mu_center(mu, config)?;
    let mut in_center = vec![false; mu.universe().subset_count()];
    for a in &center {
        in_center[a.index()] = true;
    }
    let mut report = Report::new("complement_criterion");
    report.note(format!("total = {total}"));
    let mut satisfying = Vec::new();
    for a in mu.universe().subsets() {
        report.cases += 1;
        let ac = mu.complement(a);
        let in_z = in_center[a.index()];
        let compat = is_compatible(mu, a, ac, config.tol);
        let sums = (mu.mu(a) + mu.mu(ac)).close_to(&total, config.tol);
        if in_z != compat || compat != sums {
            report.fail(Witness::new(vec![a], format!("center={in_z} compatible_with_complement={compat} sum_is_total={sums}")));
        } else if in_z {
            satisfying.push(a);
        }
    }
    Ok(Theorem24Report { report, satisfying })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_space::builders::from_destructive_pairs;
    use crate::finite_space::examples;
    use crate::finite_space::table::FiniteMeasure;
    use crate::scalar::Rational;
    use crate::subset::Universe;

    fn cfg() -> CheckConfig {
        CheckConfig::default()
    }

    fn ordinary() -> QMeasureTable<Rational> {
        let w = [1, 2, 0, 5].map(Rational::from_i64).to_vec();
        FiniteMeasure::new(Universe::numbered(4).unwrap(), w).unwrap().to_table().unwrap()
    }

    #[test]
    fn compatibility_examples() {
        let mu = examples::quantum_coin();
        let a = SubsetMask::from_indices([0, 1]);
        let b = SubsetMask::from_indices([2, 3]);
        assert!(is_compatible(&mu, a, a, 0.0));
        assert!(!is_compatible(&mu, a, b, 0.0));
        assert!(compatibility(&mu, a, b, 0.0).forms_agree());
        assert!(is_compatible(&mu, a, SubsetMask::EMPTY, 0.0));
    }

    #[test]
    fn centers() {
        let mu = ordinary();
        assert_eq!(mu_center(&mu, &cfg()).unwrap().len(), 16);
        let coin = examples::quantum_coin();
        assert_eq!(mu_center(&coin, &cfg()).unwrap(), vec![SubsetMask::EMPTY, coin.full()]);
        let ex3 = from_destructive_pairs::<Rational>(1, 1).unwrap();
        let z = mu_center(&ex3, &cfg()).unwrap();
        assert!(z.contains(&SubsetMask::from_indices([0, 1])));
        assert!(z.contains(&SubsetMask::singleton(2)));
        assert!(!z.contains(&SubsetMask::singleton(0)));
    }

    #[test]
    fn splitting_matches_center() {
        for mu in [examples::quantum_coin(), examples::three_point(), from_destructive_pairs(2, 1).unwrap(), ordinary()] {
            let z = mu_center(&mu, &cfg()).unwrap();
            for a in mu.universe().subsets() {
                assert_eq!(is_splitting(&mu, a, &cfg()).unwrap(), z.contains(&a));
            }
        }
        let coin = examples::quantum_coin();
        assert!(is_splitting(&coin, coin.full(), &cfg()).unwrap());
        assert!(!is_splitting(&coin, SubsetMask::singleton(0), &cfg()).unwrap());
    }

    #[test]
    fn center_is_a_measure_algebra() {
        for mu in [examples::three_point(), from_destructive_pairs(1, 1).unwrap(), ordinary(), examples::quantum_coin()] {
            assert!(center_measure_check(&mu, &cfg()).unwrap().passed);
        }
    }

    #[test]
    fn regularity_of_examples() {
        let r = regularity_check(&examples::quantum_coin(), &cfg()).unwrap();
        assert!(r.regular() && r.completely_regular());
        let r = regularity_check(&from_destructive_pairs::<Rational>(1, 1).unwrap(), &cfg()).unwrap();
        assert!(r.regular());
        assert!(!r.completely_regular());
        assert_eq!(r.null_hereditary.unwrap().sets, vec![SubsetMask(3), SubsetMask(1)]);
        let r = regularity_check(&examples::three_point(), &cfg()).unwrap();
        assert!(r.completely_regular());
    }

    #[test]
    fn regularity_failure_witness() {
        // mu({x1}) = 0 yet adding x1 to {x2} changes the value.
        let u = Universe::numbered(2).unwrap();
        let mu = QMeasureTable::new(u, vec![0.0, 0.0, 1.0, 3.0]).unwrap();
        let r = regularity_check(&mu, &cfg()).unwrap();
        assert!(!r.regular());
        assert_eq!(r.null_absorption.unwrap().sets, vec![SubsetMask(1), SubsetMask(2)]);
    }

    #[test]
    fn theorem24_examples() {
        let ex3 = from_destructive_pairs::<Rational>(1, 1).unwrap();
        let rep = theorem24_check(&ex3, ex3.total(), &cfg()).unwrap();
        assert!(rep.report.passed);
        let mu = ordinary();
        let rep = theorem24_check(&mu, mu.total(), &cfg()).unwrap();
        assert!(rep.report.passed);
        assert_eq!(rep.satisfying.len(), 16);
        let coin = examples::quantum_coin();
        let rep = theorem24_check(&coin, Rational::from_i64(1), &cfg()).unwrap();
        assert!(rep.report.passed);
        assert_eq!(rep.satisfying, vec![SubsetMask::EMPTY, coin.full()]);
    }

    #[test]
    fn exhaustive_limit_enforced() {
        let mu = from_destructive_pairs::<f64>(3, 0).unwrap();
        let small = CheckConfig { exhaustive_limit: 4, ..cfg() };
        assert!(matches!(mu_center(&mu, &small), Err(Error::SizeOverflow { .. })));
    }
}
