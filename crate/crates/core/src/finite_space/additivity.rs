//! Grade-2 and grade-n additivity identities on finite tables.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::table::{CheckConfig, QMeasureTable};
use crate::error::{Error, Result};
use crate::report::{Report, Witness};
use crate::scalar::Scalar;
use crate::subset::{check_mutually_disjoint, SubsetMask};

fn grade2_residual<S: Scalar>(mu: &QMeasureTable<S>, a: SubsetMask, b: SubsetMask, c: SubsetMask) -> (S, S) {
    let lhs = mu.mu(a.union(b).union(c));
    let rhs = mu.mu(a.union(b)) + mu.mu(a.union(c)) + mu.mu(b.union(c)) - mu.mu(a) - mu.mu(b) - mu.mu(c);
    (lhs, rhs)
}

/// Visit every ordered triple of mutually disjoint subsets (A ascending,
/// then B, then C) until `visit` returns false. Returns the count visited.
pub(crate) fn for_each_disjoint_triple(
    n: usize,
    mut visit: impl FnMut(SubsetMask, SubsetMask, SubsetMask) -> bool,
) -> u64 {
    let full = SubsetMask::full(n);
    let mut count = 0;
    for a in full.submasks() {
        for b in a.complement(n).submasks() {
            for c in a.union(b).complement(n).submasks() {
                count += 1;
                if !visit(a, b, c) {
                    return count;
                }
            }
        }
    }
    count
}

/// Three disjoint random subsets: each point goes to A, B, C or the rest.
fn random_triple(n: usize, rng: &mut impl Rng) -> [SubsetMask; 3] {
    let mut parts = [SubsetMask::EMPTY; 3];
    for i in 0..n {
        let k = rng.gen_range(0..4);
        if k < 3 {
            parts[k] = parts[k].with(i);
        }
    }
    parts
}

/// `mu(A+B+C) = mu(A+B) + mu(A+C) + mu(B+C) - mu(A) - mu(B) - mu(C)` for
/// mutually disjoint `A, B, C`; exhaustive over all `4^n` assignments up to
/// `config.exhaustive_limit`, seeded sampling beyond.
pub fn grade2_check<S: Scalar>(mu: &QMeasureTable<S>, config: &CheckConfig) -> Report {
    let n = mu.n();
    let mut report = Report::new("grade2");
    report.note("continuity conditions hold trivially on a finite space");
    let mut check = |a, b, c| {
        let (lhs, rhs) = grade2_residual(mu, a, b, c);
        if lhs.close_to(&rhs, config.tol) {
            true
        } else {
            report.fail(Witness::new(vec![a, b, c], format!("mu(A+B+C) = {lhs}, grade-2 expansion = {rhs}")));
            false
        }
    };
    if n <= config.exhaustive_limit {
        let cases = for_each_disjoint_triple(n, &mut check);
        report.cases = cases;
        report
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let mut cases = 0;
        for _ in 0..config.samples {
            let [a, b, c] = random_triple(n, &mut rng);
            cases += 1;
            if !check(a, b, c) {
                break;
            }
        }
        report.cases = cases;
        report.sampled(config.seed)
    }
}

/// Right side of the grade-`k` identity for `k + 1` disjoint parts:
/// `sum_{j=1..k} (-1)^(k-j) sum_{|S|=j} mu(union of parts in S)`.
pub fn graden_expansion<S: Scalar>(mu: &QMeasureTable<S>, parts: &[SubsetMask]) -> S {
    let k = parts.len() - 1;
    let mut total = S::zero();
    for sel in 1u32..(1 << parts.len()) {
        let size = sel.count_ones() as usize;
        if size > k {
            continue;
        }
        let union = SubsetMask(sel).indices().fold(SubsetMask::EMPTY, |u, i| u.union(parts[i]));
        let v = mu.mu(union);
        if (k - size) % 2 == 0 {
            total = total + v;
        } else {
            total = total - v;
        }
    }
    total
}

/// Grade-`grade` additivity over all mutually disjoint `(grade+1)`-tuples.
///
/// Exhaustive when `(grade+2)^n` fits the same budget as the grade-2 check
/// (`4^exhaustive_limit`), otherwise seeded sampling.
pub fn graden_check<S: Scalar>(mu: &QMeasureTable<S>, grade: usize, config: &CheckConfig) -> Result<Report> {
    if grade < 2 {
        return Err(Error::InvalidArgument(format!("grade must be at least 2, got {grade}")));
    }
    let n = mu.n();
    let labels = grade + 2; // grade+1 parts plus "outside"
    let mut report = Report::new(format!("grade{grade}"));
    let budget = 4f64.powi(config.exhaustive_limit as i32);
    let exhaustive = (labels as f64).powi(n as i32) <= budget;

    let mut parts = vec![SubsetMask::EMPTY; grade + 1];
    let mut check = |parts: &[SubsetMask]| {
        let union = parts.iter().fold(SubsetMask::EMPTY, |u, p| u.union(*p));
        let lhs = mu.mu(union);
        let rhs = graden_expansion(mu, parts);
        if lhs.close_to(&rhs, config.tol) {
            true
        } else {
            report.fail(Witness::new(parts.to_vec(), format!("mu(union) = {lhs}, grade-{grade} expansion = {rhs}")));
            false
        }
    };

    let mut cases = 0u64;
    if exhaustive {
        // Odometer over label assignments, point 0 varying fastest.
        let mut digits = vec![0usize; n];
        loop {
            parts.iter_mut().for_each(|p| *p = SubsetMask::EMPTY);
            for (i, &d) in digits.iter().enumerate() {
                if d <= grade {
                    parts[d] = parts[d].with(i);
                }
            }
            cases += 1;
            if !check(&parts) {
                break;
            }
            let mut pos = 0;
            while pos < n && digits[pos] == labels - 1 {
                digits[pos] = 0;
                pos += 1;
            }
            if pos == n {
                break;
            }
            digits[pos] += 1;
        }
        report.cases = cases;
        Ok(report)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        for _ in 0..config.samples {
            parts.iter_mut().for_each(|p| *p = SubsetMask::EMPTY);
            for i in 0..n {
                let d = rng.gen_range(0..labels);
                if d <= grade {
                    parts[d] = parts[d].with(i);
                }
            }
            cases += 1;
            if !check(&parts) {
                break;
            }
        }
        report.cases = cases;
        Ok(report.sampled(config.seed))
    }
}

/// Outcome of the two-set characterization of grade-2 additivity.
#[derive(Clone, Debug, PartialEq)]
pub struct Theorem21Report {
    pub identity: Report,
    pub grade2: Report,
    pub verdicts_agree: bool,
}

/// `mu(A u B) = mu(A) + mu(B) - mu(A n B) + mu(A d B) - mu(A n B') - mu(A' n B)`
/// for all pairs, compared with the verdict of [`grade2_check`].
pub fn theorem21_check<S: Scalar>(mu: &QMeasureTable<S>, config: &CheckConfig) -> Theorem21Report {
    let n = mu.n();
    let mut identity = Report::new("two_set_identity");
    let mut check = |a: SubsetMask, b: SubsetMask| {
        let lhs = mu.mu(a.union(b));
        let rhs = mu.mu(a) + mu.mu(b) - mu.mu(a.intersection(b)) + mu.mu(a.symmetric_difference(b))
            - mu.mu(a.difference(b))
            - mu.mu(b.difference(a));
        if lhs.close_to(&rhs, config.tol) {
            true
        } else {
            identity.fail(Witness::new(vec![a, b], format!("mu(A u B) = {lhs}, expansion = {rhs}")));
            false
        }
    };
    let mut cases = 0u64;
    if n <= config.exhaustive_limit {
        'outer: for a in mu.universe().subsets() {
            for b in mu.universe().subsets() {
                cases += 1;
                if !check(a, b) {
                    break 'outer;
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let full = mu.full().bits();
        for _ in 0..config.samples {
            cases += 1;
            if !check(SubsetMask(rng.gen::<u32>() & full), SubsetMask(rng.gen::<u32>() & full)) {
                break;
            }
        }
        identity = identity.sampled(config.seed);
    }
    identity.cases = cases;
    let grade2 = grade2_check(mu, config);
    let verdicts_agree = identity.passed == grade2.passed;
    Theorem21Report { identity, grade2, verdicts_agree }
}

/// `sum_{i<j} mu(A_i + A_j) - (k-2) sum_i mu(A_i)` for `k >= 3` disjoint parts.
pub fn disjoint_union_expand<S: Scalar>(mu: &QMeasureTable<S>, parts: &[SubsetMask]) -> Result<S> {
    if parts.len() < 3 {
        return Err(Error::TooFewParts { needed: 3, found: parts.len() });
    }
    for p in parts {
        mu.universe().check_subset(*p)?;
    }
    check_mutually_disjoint(parts)?;
    Ok(pairwise_expansion(parts.len(), |i| mu.mu(parts[i]), |i, j| mu.mu(parts[i].union(parts[j]))))
}

/// `sum_{i<j} pair(i, j) - (k-2) sum_i single(i)`, shared by the set, form and
/// integral versions of the expansion.
pub fn pairwise_expansion<S: Scalar>(k: usize, single: impl Fn(usize) -> S, pair: impl Fn(usize, usize) -> S) -> S {
    let mut pairs = S::zero();
    for i in 0..k {
        for j in i + 1..k {
            pairs = pairs + pair(i, j);
        }
    }
    let singles = (0..k).fold(S::zero(), |acc, i| acc + single(i));
    pairs - S::from_i64(k as i64 - 2) * singles
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_space::builders::{from_destructive_pairs, random_pair_matrix, from_pair_matrix};
    use crate::finite_space::examples;
    use crate::finite_space::table::FiniteMeasure;
    use crate::scalar::Rational;
    use crate::subset::Universe;

    fn cfg() -> CheckConfig {
        CheckConfig::default()
    }

    #[test]
    fn triple_enumeration_counts_4_pow_n() {
        for n in 0..=6 {
            assert_eq!(for_each_disjoint_triple(n, |_, _, _| true), 4u64.pow(n as u32));
        }
    }

    #[test]
    fn grade2_on_worked_examples() {
        assert!(grade2_check(&examples::quantum_coin(), &cfg()).passed);
        assert!(grade2_check(&examples::three_point(), &cfg()).passed);
        assert!(grade2_check(&from_destructive_pairs::<Rational>(2, 2).unwrap(), &cfg()).passed);
        let nu = FiniteMeasure::new(Universe::numbered(5).unwrap(), vec![1.0, 2.0, 0.5, 0.0, 3.0]).unwrap();
        assert!(grade2_check(&nu.to_table().unwrap(), &cfg()).passed);
    }

    #[test]
    fn cube_table_fails_on_singletons() {
        let rep = grade2_check(&examples::cube_table(3), &cfg());
        assert!(!rep.passed);
        let w = rep.witness.unwrap();
        // First failure in (A, B, C) order; every part a singleton.
        assert!(w.sets.iter().all(|s| s.len() == 1), "{w:?}");
        assert!(w.detail.contains("= 27") && w.detail.contains("= 21"), "{}", w.detail);
    }

    #[test]
    fn sampled_mode_beyond_limit() {
        let mu = from_destructive_pairs::<f64>(3, 1).unwrap();
        let config = CheckConfig { exhaustive_limit: 4, samples: 2000, ..cfg() };
        let rep = grade2_check(&mu, &config);
        assert!(rep.passed);
        assert!(!rep.exhaustive);
        assert_eq!(rep.cases, 2000);
        assert_eq!(rep.seed, Some(config.seed));
        let bad = examples::cube_table(7).to_f64();
        assert!(!grade2_check(&bad, &config).passed);
    }

    #[test]
    fn graden_hierarchy_and_failure() {
        let mut rng = <ChaCha8Rng as SeedableRng>::seed_from_u64(3);
        for n in 2..=6 {
            let lambda = random_pair_matrix::<Rational>(n, &mut rng).unwrap();
            let mu = from_pair_matrix(&lambda, 0.0).unwrap();
            for grade in [2, 3, 4] {
                assert!(graden_check(&mu, grade, &cfg()).unwrap().passed, "n={n} grade={grade}");
            }
        }
        let nu = FiniteMeasure::new(Universe::numbered(4).unwrap(), vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        assert!(graden_check(&nu.to_table().unwrap(), 5, &cfg()).unwrap().passed);
        assert!(!graden_check(&examples::cube_table(3), 2, &cfg()).unwrap().passed);
        assert!(graden_check(&examples::cube_table(3), 1, &cfg()).is_err());
    }

    #[test]
    fn graden_grade2_matches_grade2_expansion() {
        let mu = examples::quantum_coin();
        let parts = [SubsetMask::singleton(0), SubsetMask::singleton(1), SubsetMask::singleton(3)];
        let (_, rhs) = grade2_residual(&mu, parts[0], parts[1], parts[2]);
        assert_eq!(graden_expansion(&mu, &parts), rhs);
    }

    #[test]
    fn theorem21_agrees() {
        for mu in [examples::quantum_coin(), examples::three_point(), examples::cube_table(3)] {
            let rep = theorem21_check(&mu, &cfg());
            assert!(rep.verdicts_agree);
        }
        assert!(theorem21_check(&examples::quantum_coin(), &cfg()).identity.passed);
        assert!(!theorem21_check(&examples::cube_table(3), &cfg()).identity.passed);
    }

    #[test]
    fn disjoint_union_expansion_examples() {
        let mu = examples::quantum_coin();
        let singles: Vec<_> = (0..4).map(SubsetMask::singleton).collect();
        assert_eq!(disjoint_union_expand(&mu, &singles).unwrap(), Rational::from_i64(1));

        let three = [SubsetMask::singleton(0), SubsetMask::singleton(1), SubsetMask::EMPTY];
        assert_eq!(disjoint_union_expand(&mu, &three).unwrap(), mu.mu(SubsetMask(0b11)));

        let ex3 = from_destructive_pairs::<Rational>(1, 1).unwrap();
        let parts: Vec<_> = (0..3).map(SubsetMask::singleton).collect();
        assert_eq!(disjoint_union_expand(&ex3, &parts).unwrap(), Rational::from_i64(1));

        assert!(matches!(
            disjoint_union_expand(&mu, &[SubsetMask(1), SubsetMask(3), SubsetMask(4)]),
            Err(Error::NotDisjoint(..))
        ));
        assert!(matches!(disjoint_union_expand(&mu, &singles[..2]), Err(Error::TooFewParts { .. })));
    }
}
