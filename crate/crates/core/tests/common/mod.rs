#![allow(dead_code)]

use qmeasure::finite_space::{examples, from_destructive_pairs, from_pair_matrix, random_pair_matrix, PairMeasureMatrix, QMeasureTable};
use qmeasure::q_integral::FiniteFunction;
use qmeasure::{Rational, Scalar, SubsetMask, Universe};
use rand::Rng;

pub fn r(p: i128, q: i128) -> Rational {
    Rational::new(p, q)
}

/// The quantum coin, the three-point table and three destructive-pair spaces.
pub fn worked_tables() -> Vec<(String, QMeasureTable<Rational>)> {
    let mut out = vec![
        ("quantum coin".to_string(), examples::quantum_coin()),
        ("three-point".to_string(), examples::three_point()),
    ];
    for (m, n) in [(1, 1), (2, 1), (2, 2)] {
        out.push((format!("destructive({m},{n})"), from_destructive_pairs(m, n).unwrap()));
    }
    out
}

/// Nonnegative tables that are not grade-2 additive.
pub fn adversarial_tables() -> Vec<(String, QMeasureTable<Rational>)> {
    vec![
        ("|A|^3".to_string(), examples::cube_table(3)),
        ("indicator of nonempty".to_string(), examples::indicator_of_nonempty(4)),
        ("concave".to_string(), examples::concave_table(5)),
    ]
}

pub fn random_q_table(n: usize, rng: &mut impl Rng) -> QMeasureTable<Rational> {
    let lambda = random_pair_matrix::<Rational>(n, rng).unwrap();
    from_pair_matrix(&lambda, 1e-9).unwrap()
}

/// `diag(l1, l2)`: the points of the first block split every set.
pub fn block_pair_matrix(n1: usize, n2: usize, rng: &mut impl Rng) -> PairMeasureMatrix<Rational> {
    let a = random_pair_matrix::<Rational>(n1, rng).unwrap();
    let b = random_pair_matrix::<Rational>(n2, rng).unwrap();
    let n = n1 + n2;
    let mut entries = vec![vec![Rational::from_i64(0); n]; n];
    for i in 0..n1 {
        for j in 0..n1 {
            entries[i][j] = a.get(i, j);
        }
    }
    for i in 0..n2 {
        for j in 0..n2 {
            entries[n1 + i][n1 + j] = b.get(i, j);
        }
    }
    PairMeasureMatrix::new(Universe::numbered(n).unwrap(), entries).unwrap()
}

/// Values `k/2` with `k` in `lo..=hi`.
pub fn random_function(u: &Universe, lo: i64, hi: i64, rng: &mut impl Rng) -> FiniteFunction<Rational> {
    let values = (0..u.len()).map(|_| Rational::from_ratio(rng.gen_range(lo..=hi), 2)).collect();
    FiniteFunction::new(u.clone(), values).unwrap()
}

pub fn random_subset(n: usize, rng: &mut impl Rng) -> SubsetMask {
    SubsetMask(rng.gen::<u32>() & SubsetMask::full(n).bits())
}

/// Every unordered family of `k` mutually disjoint nonempty subsets of an
/// `n`-point universe, each listed once with parts ordered by lowest point.
pub fn disjoint_families(n: usize, k: usize) -> Vec<Vec<SubsetMask>> {
    fn go(i: usize, n: usize, k: usize, used: usize, parts: &mut Vec<SubsetMask>, out: &mut Vec<Vec<SubsetMask>>) {
        if n - i < k - used {
            return;
        }
        if i == n {
            out.push(parts.clone());
            return;
        }
        go(i + 1, n, k, used, parts, out);
        for p in 0..used {
            parts[p] = parts[p].with(i);
            go(i + 1, n, k, used, parts, out);
            parts[p] = SubsetMask(parts[p].bits() & !(1 << i));
        }
        if used < k {
            parts.push(SubsetMask::singleton(i));
            go(i + 1, n, k, used + 1, parts, out);
            parts.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, 0, &mut Vec::new(), &mut out);
    out
}

#[test]
fn family_counts_match_stirling_numbers() {
    // k disjoint nonempty parts of n points <-> partitions of n+1 points into k+1 blocks.
    assert_eq!(disjoint_families(3, 3).len(), 1);
    assert_eq!(disjoint_families(4, 3).len(), 10);
    assert_eq!(disjoint_families(8, 5).len(), 2646);
    for fam in disjoint_families(5, 3) {
        assert!(fam.iter().all(|p| !p.is_empty()));
        assert!(fam[0].is_disjoint(fam[1]) && fam[1].is_disjoint(fam[2]) && fam[0].is_disjoint(fam[2]));
    }
}
