//! Constructors for q-measure tables: squared measures, complex amplitudes,
//! destructive pairs, symmetric pair matrices and decoherence matrices.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::additivity::grade2_check;
use super::table::{CheckConfig, FiniteMeasure, QMeasureTable};
use crate::error::{Error, Result};
use crate::report::{Report, Witness};
use crate::scalar::Scalar;
use crate::subset::{SubsetMask, Universe, MAX_POINTS};

/// `mu(A) = nu(A)^2` for a nonnegative measure `nu`.
pub fn from_measure_squared<S: Scalar>(nu: &FiniteMeasure<S>) -> Result<QMeasureTable<S>> {
    if let Some((index, w)) = nu.first_negative() {
        return Err(Error::NegativeWeight { index, value: w.to_string() });
    }
    from_signed_measure_squared(nu)
}

/// `mu(A) = nu(A)^2` for a signed measure; squares are never negative.
pub fn from_signed_measure_squared<S: Scalar>(nu: &FiniteMeasure<S>) -> Result<QMeasureTable<S>> {
    let values = nu.all_values().into_iter().map(|v| v * v).collect();
    QMeasureTable::new(nu.universe().clone(), values)
}

/// `mu(A) = |nu(A)|^2` for a complex measure with point masses `amplitudes`.
pub fn from_complex_amplitude<S: Scalar>(
    universe: &Universe,
    amplitudes: &[Complex<S>],
) -> Result<QMeasureTable<S>> {
    if amplitudes.len() != universe.len() {
        return Err(Error::DimensionMismatch { expected: universe.len(), found: amplitudes.len() });
    }
    let values = complex_subset_sums(amplitudes).into_iter().map(|z| z.norm_sqr()).collect();
    QMeasureTable::new(universe.clone(), values)
}

pub(crate) fn complex_subset_sums<S: Scalar>(w: &[Complex<S>]) -> Vec<Complex<S>> {
    let size = 1usize << w.len();
    let mut out = vec![Complex::new(S::zero(), S::zero()); size];
    for m in 1..size {
        let low = m.trailing_zeros() as usize;
        out[m] = out[m & (m - 1)] + w[low];
    }
    out
}

/// Universe `{x1..xm, y1..ym, z1..zn}` with `mu(A) = |A| - 2 * #{i : x_i, y_i in A}`.
///
/// Points are indexed `x_i -> i-1`, `y_i -> m+i-1`, `z_k -> 2m+k-1`.
pub fn from_destructive_pairs<S: Scalar>(pairs: usize, singles: usize) -> Result<QMeasureTable<S>> {
    let n = 2 * pairs + singles;
    if n > MAX_POINTS {
        return Err(Error::SizeOverflow { n, max: MAX_POINTS });
    }
    let labels = (1..=pairs)
        .map(|i| format!("x{i}"))
        .chain((1..=pairs).map(|i| format!("y{i}")))
        .chain((1..=singles).map(|k| format!("z{k}")));
    let universe = Universe::new(labels)?;
    let xs = SubsetMask::full(pairs);
    QMeasureTable::from_fn(universe, |a| {
        let annihilated = (a.bits() & xs.bits() & (a.bits() >> pairs)).count_ones() as i64;
        S::from_i64(a.len() as i64 - 2 * annihilated)
    })
}

/// Symmetric real matrix `lambda_ij = lambda({x_i} x {x_j})` of a signed
/// measure on `X x X`.
#[derive(Clone, Debug, PartialEq)]
pub struct PairMeasureMatrix<S> {
    universe: Universe,
    entries: Vec<Vec<S>>,
}

impl<S: Scalar> PairMeasureMatrix<S> {
    /// Checks the shape only; the symmetry and diagonal-positivity
    /// invariants are checked by [`validate`](Self::validate).
    pub fn new(universe: Universe, entries: Vec<Vec<S>>) -> Result<Self> {
        check_square(&universe, &entries)?;
        Ok(PairMeasureMatrix { universe, entries })
    }

    /// Rank-one matrix `w w^T`, the pair measure of `nu x nu`.
    pub fn outer(universe: Universe, w: &[S]) -> Result<Self> {
        let entries = w.iter().map(|a| w.iter().map(|b| *a * *b).collect()).collect();
        Self::new(universe, entries)
    }

    pub fn diagonal(universe: Universe, d: &[S]) -> Result<Self> {
        let n = d.len();
        let entries = (0..n)
            .map(|i| (0..n).map(|j| if i == j { d[i] } else { S::zero() }).collect())
            .collect();
        Self::new(universe, entries)
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn entries(&self) -> &[Vec<S>] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> S {
        self.entries[i][j]
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    /// `lambda(A x A)` for every subset, without sign checks.
    pub fn diagonal_values(&self) -> Vec<S> {
        let size = self.universe.subset_count();
        let mut out = vec![S::zero(); size];
        for m in 1..size {
            let i = m.trailing_zeros() as usize;
            let rest = SubsetMask((m & (m - 1)) as u32);
            let cross = rest.indices().fold(S::zero(), |acc, j| acc + self.entries[i][j] + self.entries[j][i]);
            out[m] = out[rest.index()] + self.entries[i][i] + cross;
        }
        out
    }

    /// `lambda(A x B)`.
    pub fn pair_value(&self, a: SubsetMask, b: SubsetMask) -> S {
        a.indices()
            .flat_map(|i| b.indices().map(move |j| (i, j)))
            .fold(S::zero(), |acc, (i, j)| acc + self.entries[i][j])
    }

    /// Symmetry, then diagonal positivity with the first negative subset as
    /// witness.
    pub fn validate(&self, tol: f64) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            for j in i + 1..n {
                if !self.entries[i][j].close_to(&self.entries[j][i], tol) {
                    return Err(Error::NotSymmetric { i, j });
                }
            }
        }
        if let Some((m, v)) =
            self.diagonal_values().iter().enumerate().find(|(_, v)| v.is_negative_beyond(tol))
        {
            return Err(Error::NotDiagonallyPositive { witness: SubsetMask(m as u32), value: v.to_string() });
        }
        Ok(())
    }

    /// Marginal `nu_1(A) = lambda(A x X)`, weights `sum_j lambda_ij`.
    pub fn marginal(&self) -> FiniteMeasure<S> {
        let weights = self.entries.iter().map(|row| row.iter().fold(S::zero(), |a, b| a + *b)).collect();
        FiniteMeasure::new(self.universe.clone(), weights).expect("square matrix")
    }
}

/// `mu(A) = lambda(A x A)`.
pub fn from_pair_matrix<S: Scalar>(lambda: &PairMeasureMatrix<S>, tol: f64) -> Result<QMeasureTable<S>> {
    lambda.validate(tol)?;
    let values = lambda
        .diagonal_values()
        .into_iter()
        .map(|v| if v < S::zero() { S::zero() } else { v })
        .collect();
    QMeasureTable::new(lambda.universe().clone(), values)
}

/// The unique symmetric pair matrix with `mu(A) = lambda(A x A)`, by
/// polarization on singletons and pairs.
pub fn recover_pair_matrix<S: Scalar>(mu: &QMeasureTable<S>, config: &CheckConfig) -> Result<PairMeasureMatrix<S>> {
    let report = grade2_check(mu, config);
    if !report.passed {
        let sets = report.witness.map(|w| w.sets).unwrap_or_default();
        let get = |k: usize| sets.get(k).copied().unwrap_or_default();
        return Err(Error::Grade2Failure { a: get(0), b: get(1), c: get(2) });
    }
    let n = mu.n();
    let half = S::one() / S::from_i64(2);
    let entries = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let si = SubsetMask::singleton(i);
                    if i == j {
                        mu.mu(si)
                    } else {
                        let sj = SubsetMask::singleton(j);
                        (mu.mu(si.union(sj)) - mu.mu(si) - mu.mu(sj)) * half
                    }
                })
                .collect()
        })
        .collect();
    PairMeasureMatrix::new(mu.universe().clone(), entries)
}

/// Complex matrix `D_ij = D({x_i}, {x_j})` of a decoherence functional.
#[derive(Clone, Debug, PartialEq)]
pub struct DecoherenceMatrix<S> {
    universe: Universe,
    entries: Vec<Vec<Complex<S>>>,
}

impl<S: Scalar> DecoherenceMatrix<S> {
    /// Checks the shape only; use [`decoherence_check`] for the decoherence conditions.
    pub fn new(universe: Universe, entries: Vec<Vec<Complex<S>>>) -> Result<Self> {
        check_square(&universe, &entries)?;
        Ok(DecoherenceMatrix { universe, entries })
    }

    /// Real matrix viewed as a decoherence matrix.
    pub fn from_real(universe: Universe, entries: Vec<Vec<S>>) -> Result<Self> {
        let entries = entries
            .into_iter()
            .map(|row| row.into_iter().map(|x| Complex::new(x, S::zero())).collect())
            .collect();
        Self::new(universe, entries)
    }

    /// `D = v v^*`.
    pub fn rank_one(universe: Universe, v: &[Complex<S>]) -> Result<Self> {
        let entries = v.iter().map(|a| v.iter().map(|b| *a * b.conj()).collect()).collect();
        Self::new(universe, entries)
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn entries(&self) -> &[Vec<Complex<S>>] {
        &self.entries
    }

    /// `D(A, B) = sum over i in A, j in B of D_ij`.
    pub fn functional(&self, a: SubsetMask, b: SubsetMask) -> Complex<S> {
        let zero = Complex::new(S::zero(), S::zero());
        a.indices().fold(zero, |acc, i| b.indices().fold(acc, |acc, j| acc + self.entries[i][j]))
    }

    /// `D(A, A)` for every subset.
    fn diagonal_values(&self) -> Vec<Complex<S>> {
        let size = self.universe.subset_count();
        let mut out = vec![Complex::new(S::zero(), S::zero()); size];
        for m in 1..size {
            let i = m.trailing_zeros() as usize;
            let rest = SubsetMask((m & (m - 1)) as u32);
            let cross = rest
                .indices()
                .fold(Complex::new(S::zero(), S::zero()), |acc, j| acc + self.entries[i][j] + self.entries[j][i]);
            out[m] = out[rest.index()] + self.entries[i][i] + cross;
        }
        out
    }
}

fn check_square<T>(universe: &Universe, entries: &[Vec<T>]) -> Result<()> {
    let n = universe.len();
    if entries.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: entries.len() });
    }
    if let Some(row) = entries.iter().find(|r| r.len() != n) {
        return Err(Error::DimensionMismatch { expected: n, found: row.len() });
    }
    Ok(())
}

fn complex_close<S: Scalar>(a: &Complex<S>, b: &Complex<S>, tol: f64) -> bool {
    a.re.close_to(&b.re, tol) && a.im.close_to(&b.im, tol)
}

/// First failing decoherence condition with its witness.
fn decoherence_failure<S: Scalar>(d: &DecoherenceMatrix<S>, config: &CheckConfig) -> (u64, bool, Option<(&'static str, Witness)>) {
    let n = d.universe.len();
    let tol = config.tol;
    let mut cases = 0u64;
    for i in 0..n {
        for j in i..n {
            cases += 1;
            if !complex_close(&d.entries[i][j], &d.entries[j][i].conj(), tol) {
                let w = Witness::new(
                    vec![SubsetMask::singleton(i), SubsetMask::singleton(j)],
                    format!("D_{i}{j} = {} but conj(D_{j}{i}) = {}", d.entries[i][j], d.entries[j][i].conj()),
                );
                return (cases, true, Some(("hermitian", w)));
            }
        }
    }

    let diag = d.diagonal_values();
    for (m, v) in diag.iter().enumerate() {
        cases += 1;
        if v.re.is_negative_beyond(tol) || !v.im.near_zero(tol) {
            let w = Witness::new(vec![SubsetMask(m as u32)], format!("D(A,A) = {v}"));
            return (cases, true, Some(("diagonal", w)));
        }
    }

    let cs = |a: SubsetMask, b: SubsetMask, dab: Complex<S>| -> Option<Witness> {
        let lhs = dab.norm_sqr();
        let rhs = diag[a.index()].re * diag[b.index()].re;
        let violated = if S::EXACT { lhs > rhs } else { lhs.to_f64() > rhs.to_f64() + tol };
        violated.then(|| Witness::new(vec![a, b], format!("|D(A,B)|^2 = {lhs} > D(A,A)D(B,B) = {rhs}")))
    };

    if n <= config.exhaustive_limit {
        // Column sums c_B[i] = sum_{j in B} D_ij, then D(A, B) by extending A.
        let size = 1usize << n;
        let zero = Complex::new(S::zero(), S::zero());
        let mut col = vec![zero; size * n];
        let mut dab = vec![zero; size];
        for b in 0..size {
            if b > 0 {
                let low = b.trailing_zeros() as usize;
                let prev = b & (b - 1);
                for i in 0..n {
                    col[b * n + i] = col[prev * n + i] + d.entries[i][low];
                }
            }
            for a in 0..size {
                if a > 0 {
                    let low = a.trailing_zeros() as usize;
                    dab[a] = dab[a & (a - 1)] + col[b * n + low];
                }
                cases += 1;
                // The failing pairs are symmetric under A <-> B, so scanning
                // B-major and reporting (A, B) swapped gives the
                // lexicographically first (A, B).
                if let Some(w) = cs(SubsetMask(b as u32), SubsetMask(a as u32), dab[a]) {
                    return (cases, true, Some(("cauchy-schwarz", w)));
                }
            }
        }
        (cases, true, None)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let full = SubsetMask::full(n).bits();
        for _ in 0..config.samples.min(100_000) {
            let a = SubsetMask(rng.gen::<u32>() & full);
            let b = SubsetMask(rng.gen::<u32>() & full);
            cases += 1;
            if let Some(w) = cs(a, b, d.functional(a, b)) {
                return (cases, false, Some(("cauchy-schwarz", w)));
            }
        }
        (cases, false, None)
    }
}

/// Verify Hermiticity entrywise, then the nonnegative diagonal and the
/// Cauchy-Schwarz bound over subset pairs. Additivity in each argument holds
/// for any matrix representation.
pub fn decoherence_check<S: Scalar>(d: &DecoherenceMatrix<S>, config: &CheckConfig) -> Report {
    let (cases, exhaustive, failure) = decoherence_failure(d, config);
    let mut report = Report::new("decoherence");
    if !exhaustive {
        report = report.sampled(config.seed);
    }
    report.cases = cases;
    report.note("additivity in each argument holds by the sum representation");
    if let Some((cond, mut w)) = failure {
        w.detail = format!("{cond}: {}", w.detail);
        report.fail(w);
    }
    report
}

/// `mu(A) = Re D(A, A)`; rejects matrices failing [`decoherence_check`].
pub fn from_decoherence<S: Scalar>(d: &DecoherenceMatrix<S>, config: &CheckConfig) -> Result<QMeasureTable<S>> {
    let (_, _, failure) = decoherence_failure(d, config);
    if let Some((condition, w)) = failure {
        let sets: Vec<String> = w.sets.iter().map(|s| d.universe.describe(*s)).collect();
        return Err(Error::Decoherence { condition, detail: format!("{} at {}", w.detail, sets.join(", ")) });
    }
    let values = d
        .diagonal_values()
        .into_iter()
        .map(|z| if z.re < S::zero() { S::zero() } else { z.re })
        .collect();
    QMeasureTable::new(d.universe.clone(), values)
}

/// Random symmetric diagonally positive matrix `B^T B + diag`, entries
/// multiples of 1/4 so rational tables stay small.
pub fn random_pair_matrix<S: Scalar>(n: usize, rng: &mut impl Rng) -> Result<PairMeasureMatrix<S>> {
    let rank = rng.gen_range(1..=n);
    let b: Vec<Vec<i64>> = (0..rank).map(|_| (0..n).map(|_| rng.gen_range(-3..=3)).collect()).collect();
    let entries = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let g: i64 = b.iter().map(|row| row[i] * row[j]).sum();
                    let extra = if i == j { rng.gen_range(0..=2) } else { 0 };
                    S::from_ratio(g + extra, 4)
                })
                .collect()
        })
        .collect();
    PairMeasureMatrix::new(Universe::numbered(n)?, entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_space::examples;
    use crate::scalar::Rational;

    fn r(p: i128, q: i128) -> Rational {
        Rational::new(p, q)
    }

    #[test]
    fn squared_measure_quantum_coin() {
        let mu = examples::quantum_coin();
        assert_eq!(mu.mu(SubsetMask::singleton(0)), r(1, 16));
        assert_eq!(mu.mu(SubsetMask::from_indices([0, 1, 2])), r(9, 16));
        let zero = FiniteMeasure::uniform(Universe::numbered(3).unwrap(), Rational::from_i64(0));
        assert!(from_measure_squared(&zero).unwrap().values().iter().all(|v| *v == Rational::from_i64(0)));
        let signed = FiniteMeasure::new(Universe::numbered(2).unwrap(), vec![r(1, 1), r(-1, 1)]).unwrap();
        assert!(matches!(from_measure_squared(&signed), Err(Error::NegativeWeight { index: 1, .. })));
    }

    #[test]
    fn complex_amplitudes() {
        let u = Universe::numbered(2).unwrap();
        let one = Rational::from_i64(1);
        let zero = Rational::from_i64(0);
        let mu = from_complex_amplitude(&u, &[Complex::new(one, zero), Complex::new(-one, zero)]).unwrap();
        assert_eq!(mu.values(), &[zero, one, one, zero]);
        let mu = from_complex_amplitude(&u, &[Complex::new(one, zero), Complex::new(zero, one)]).unwrap();
        assert_eq!(mu.mu(SubsetMask(3)), Rational::from_i64(2));

        // Real amplitudes agree with the signed squared measure.
        let w = [r(1, 2), r(-1, 3), r(2, 1)];
        let u3 = Universe::numbered(3).unwrap();
        let amp: Vec<_> = w.iter().map(|x| Complex::new(*x, zero)).collect();
        let via_complex = from_complex_amplitude(&u3, &amp).unwrap();
        let via_signed = from_signed_measure_squared(&FiniteMeasure::new(u3, w.to_vec()).unwrap()).unwrap();
        assert_eq!(via_complex, via_signed);
        assert!(from_complex_amplitude(&u, &amp).is_err());
    }

    #[test]
    fn destructive_pairs_values() {
        let mu = from_destructive_pairs::<Rational>(2, 1).unwrap();
        let u = mu.universe();
        let at = |labels: &[&str]| mu.mu(u.subset(labels).unwrap());
        assert_eq!(at(&["x1", "y1", "z1"]), Rational::from_i64(1));
        assert_eq!(at(&["x1", "y1", "y2", "z1"]), Rational::from_i64(2));
        assert_eq!(at(&[]), Rational::from_i64(0));
        for a in u.subsets() {
            let pairs = (0..2).filter(|&i| a.contains(i) && a.contains(2 + i)).count() as i64;
            assert_eq!(mu.mu(a), Rational::from_i64(a.len() as i64 - 2 * pairs));
        }
        assert!(matches!(from_destructive_pairs::<f64>(12, 1), Err(Error::SizeOverflow { .. })));
    }

    #[test]
    fn pair_matrix_round_trips() {
        let u = Universe::numbered(3).unwrap();
        let w = [r(1, 2), r(-1, 1), r(1, 3)];
        let outer = PairMeasureMatrix::outer(u.clone(), &w).unwrap();
        let table = from_pair_matrix(&outer, 0.0).unwrap();
        let signed = from_signed_measure_squared(&FiniteMeasure::new(u.clone(), w.to_vec()).unwrap()).unwrap();
        assert_eq!(table, signed);

        let d = [r(1, 1), r(0, 1), r(5, 2)];
        let diag = from_pair_matrix(&PairMeasureMatrix::diagonal(u.clone(), &d).unwrap(), 0.0).unwrap();
        assert_eq!(diag, FiniteMeasure::new(u, d.to_vec()).unwrap().to_table().unwrap());
    }

    #[test]
    fn example2_matrix_reproduces_table() {
        let mu = examples::three_point();
        let lambda = recover_pair_matrix(&mu, &CheckConfig::default()).unwrap();
        let (zero, one, half) = (r(0, 1), r(1, 1), r(1, 2));
        let expected = vec![vec![zero, zero, zero], vec![zero, one, -half], vec![zero, -half, one]];
        assert_eq!(lambda.entries(), expected.as_slice());
        assert_eq!(from_pair_matrix(&lambda, 0.0).unwrap(), mu);
    }

    #[test]
    fn recovery_of_worked_examples() {
        let cfg = CheckConfig::default();
        let lambda = recover_pair_matrix(&examples::quantum_coin(), &cfg).unwrap();
        assert!(lambda.entries().iter().flatten().all(|x| *x == r(1, 16)));

        let lambda = recover_pair_matrix(&from_destructive_pairs::<Rational>(1, 0).unwrap(), &cfg).unwrap();
        assert_eq!(lambda.entries(), &[vec![r(1, 1), r(-1, 1)], vec![r(-1, 1), r(1, 1)]]);

        let nu = FiniteMeasure::new(Universe::numbered(3).unwrap(), vec![r(1, 1), r(2, 1), r(3, 1)]).unwrap();
        let lambda = recover_pair_matrix(&nu.to_table().unwrap(), &cfg).unwrap();
        assert_eq!(lambda, PairMeasureMatrix::diagonal(nu.universe().clone(), nu.weights()).unwrap());

        assert!(matches!(recover_pair_matrix(&examples::cube_table(3), &cfg), Err(Error::Grade2Failure { .. })));
    }

    #[test]
    fn pair_matrix_invariant_violations() {
        let u = Universe::numbered(2).unwrap();
        let asym = PairMeasureMatrix::new(u.clone(), vec![vec![1.0, 0.5], vec![0.0, 1.0]]).unwrap();
        assert!(matches!(from_pair_matrix(&asym, 1e-9), Err(Error::NotSymmetric { i: 0, j: 1 })));
        let neg = PairMeasureMatrix::new(u, vec![vec![1.0, -1.0], vec![-1.0, 0.5]]).unwrap();
        match from_pair_matrix(&neg, 1e-9) {
            Err(Error::NotDiagonallyPositive { witness, .. }) => assert_eq!(witness, SubsetMask(3)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(PairMeasureMatrix::new(Universe::numbered(3).unwrap(), vec![vec![1.0; 3]; 2]).is_err());
    }

    #[test]
    fn decoherence_checks() {
        let cfg = CheckConfig::default();
        let u2 = Universe::numbered(2).unwrap();
        let psd = DecoherenceMatrix::new(
            u2.clone(),
            vec![
                vec![Complex::new(2.0, 0.0), Complex::new(0.5, 0.5)],
                vec![Complex::new(0.5, -0.5), Complex::new(1.0, 0.0)],
            ],
        )
        .unwrap();
        assert!(decoherence_check(&psd, &cfg).passed);

        let bad_herm = DecoherenceMatrix::new(
            u2.clone(),
            vec![
                vec![Complex::new(1.0, 0.0), Complex::new(0.5, 0.5)],
                vec![Complex::new(0.5, 0.5), Complex::new(1.0, 0.0)],
            ],
        )
        .unwrap();
        let rep = decoherence_check(&bad_herm, &cfg);
        assert!(!rep.passed);
        assert!(rep.witness.unwrap().detail.starts_with("hermitian"));

        let neg = DecoherenceMatrix::from_real(u2, vec![vec![1.0, 0.0], vec![0.0, -1.0]]).unwrap();
        let rep = decoherence_check(&neg, &cfg);
        let w = rep.witness.unwrap();
        assert!(w.detail.starts_with("diagonal"));
        assert_eq!(w.sets, vec![SubsetMask::singleton(1)]);
        assert!(matches!(from_decoherence(&neg, &cfg), Err(Error::Decoherence { condition: "diagonal", .. })));
    }

    #[test]
    fn cauchy_schwarz_violation_detected() {
        // Diagonally nonnegative but indefinite: D(A,A) >= 0 for all A, yet
        // |D({x1},{x2})|^2 = 4 > 1 * 1.
        let u = Universe::numbered(2).unwrap();
        let d = DecoherenceMatrix::from_real(u, vec![vec![1.0, -2.0], vec![-2.0, 1.0]]).unwrap();
        let rep = decoherence_check(&d, &CheckConfig::default());
        // D({x1,x2}) = 1 + 1 - 4 < 0 fails the diagonal condition first.
        assert!(rep.witness.unwrap().detail.starts_with("diagonal"));

        let u3 = Universe::numbered(3).unwrap();
        let d = DecoherenceMatrix::from_real(
            u3,
            vec![vec![1.0, 0.9, 0.9], vec![0.9, 1.0, -0.9], vec![0.9, -0.9, 1.0]],
        )
        .unwrap();
        let rep = decoherence_check(&d, &CheckConfig::default());
        assert!(!rep.passed);
        assert!(rep.witness.unwrap().detail.starts_with("cauchy-schwarz"));
    }

    #[test]
    fn decoherence_identity_is_counting_measure() {
        let n = 4;
        let u = Universe::numbered(n).unwrap();
        let entries =
            (0..n).map(|i| (0..n).map(|j| if i == j { r(1, n as i128) } else { r(0, 1) }).collect()).collect();
        let d = DecoherenceMatrix::from_real(u, entries).unwrap();
        let mu = from_decoherence(&d, &CheckConfig::default()).unwrap();
        for a in mu.universe().subsets() {
            assert_eq!(mu.mu(a), r(a.len() as i128, n as i128));
        }
    }
}
