//! Symmetric bilinear forms, quadratic forms and the quantum form of a
//! pair-measure matrix.
//!
//! Black-box quadratic forms can only be probed, so every check here reports
//! the probe set it passed on rather than a proof.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::finite_space::{pairwise_expansion, FiniteMeasure, PairMeasureMatrix, DEFAULT_SEED};
use crate::report::{Report, Witness};
use crate::scalar::Scalar;

/// `B(u, v) = u^T M v` with `M` symmetric.
#[derive(Clone, Debug, PartialEq)]
pub struct BilinearForm<S> {
    matrix: Vec<Vec<S>>,
}

impl<S: Scalar> BilinearForm<S> {
    pub fn new(matrix: Vec<Vec<S>>) -> Result<Self> {
        let n = matrix.len();
        if let Some(row) = matrix.iter().find(|row| row.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: row.len() });
        }
        for i in 0..n {
            for j in i + 1..n {
                if matrix[i][j] != matrix[j][i] {
                    return Err(Error::NotSymmetric { i, j });
                }
            }
        }
        Ok(BilinearForm { matrix })
    }

    pub fn identity(n: usize) -> Self {
        let matrix = (0..n)
            .map(|i| (0..n).map(|j| if i == j { S::one() } else { S::zero() }).collect())
            .collect();
        BilinearForm { matrix }
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<S>] {
        &self.matrix
    }

    pub fn apply(&self, u: &[S], v: &[S]) -> Result<S> {
        check_dim(self.dim(), u)?;
        check_dim(self.dim(), v)?;
        let mut total = S::zero();
        for (i, row) in self.matrix.iter().enumerate() {
            if u[i].is_zero() {
                continue;
            }
            let rv = row.iter().zip(v).fold(S::zero(), |acc, (m, x)| acc + *m * *x);
            total = total + u[i] * rv;
        }
        Ok(total)
    }
}

fn check_dim<S>(dim: usize, v: &[S]) -> Result<()> {
    if v.len() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: v.len() });
    }
    Ok(())
}

/// `Q(v) = B(v, v)`.
pub fn eval_q<S: Scalar>(b: &BilinearForm<S>, v: &[S]) -> Result<S> {
    b.apply(v, v)
}

type Evaluator = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// A real quadratic form given either by a matrix or by an arbitrary
/// evaluator that is only known through its values.
#[derive(Clone)]
pub struct QuadraticForm {
    dim: usize,
    eval: Evaluator,
    source: Option<BilinearForm<f64>>,
}

impl fmt::Debug for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("QuadraticForm").field("dim", &self.dim).field("source", &self.source).finish()
    }
}

impl QuadraticForm {
    pub fn from_bilinear(b: BilinearForm<f64>) -> Self {
        let inner = b.clone();
        QuadraticForm {
            dim: b.dim(),
            eval: Arc::new(move |v| eval_q(&inner, v).expect("dimension checked by caller")),
            source: Some(b),
        }
    }

    /// The evaluator must be pure.
    pub fn black_box(dim: usize, f: impl Fn(&[f64]) -> f64 + Send + Sync + 'static) -> Self {
        QuadraticForm { dim, eval: Arc::new(f), source: None }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn source(&self) -> Option<&BilinearForm<f64>> {
        self.source.as_ref()
    }

    pub fn eval(&self, v: &[f64]) -> Result<f64> {
        check_dim(self.dim, v)?;
        Ok((self.eval)(v))
    }

    fn at(&self, v: &[f64]) -> f64 {
        (self.eval)(v)
    }
}

/// Both polarization formulas for `B(u, v)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Polarization {
    /// `(Q(u+v) - Q(u) - Q(v)) / 2`.
    pub half_form: f64,
    /// `(Q(u+v) - Q(u-v)) / 4`.
    pub quarter_form: f64,
}

impl Polarization {
    pub fn value(&self) -> f64 {
        self.half_form
    }

    pub fn forms_agree(&self, tol: f64) -> bool {
        (self.half_form - self.quarter_form).abs() <= tol
    }
}

pub fn polarize(q: &QuadraticForm, u: &[f64], v: &[f64]) -> Result<Polarization> {
    check_dim(q.dim, u)?;
    check_dim(q.dim, v)?;
    let sum = add(u, v);
    let diff: Vec<f64> = u.iter().zip(v).map(|(a, b)| a - b).collect();
    let (qs, qu, qv, qd) = (q.at(&sum), q.at(u), q.at(v), q.at(&diff));
    Ok(Polarization { half_form: 0.5 * (qs - qu - qv), quarter_form: 0.25 * (qs - qd) })
}

fn add(u: &[f64], v: &[f64]) -> Vec<f64> {
    u.iter().zip(v).map(|(a, b)| a + b).collect()
}

fn neg(v: &[f64]) -> Vec<f64> {
    v.iter().map(|x| -x).collect()
}

fn basis(n: usize, i: usize) -> Vec<f64> {
    let mut e = vec![0.0; n];
    e[i] = 1.0;
    e
}

fn random_vector(n: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect()
}

fn close_rel(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * 1f64.max(a.abs()).max(b.abs())
}

/// Probe sizes and seed for the black-box checks.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbeConfig {
    pub tol: f64,
    pub random_pairs: usize,
    pub reconstruction_probes: usize,
    pub seed: u64,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        ProbeConfig { tol: 1e-8, random_pairs: 1000, reconstruction_probes: 100, seed: DEFAULT_SEED }
    }
}

/// `Q(u+v) + Q(u-v) = 2[Q(u) + Q(v)]` on basis pairs then seeded random pairs.
pub fn parallelogram_check(q: &QuadraticForm, config: &ProbeConfig) -> Report {
    let n = q.dim;
    let mut report = Report::new("parallelogram").sampled(config.seed);
    let test = |u: &[f64], v: &[f64], report: &mut Report| {
        report.cases += 1;
        let diff: Vec<f64> = u.iter().zip(v).map(|(a, b)| a - b).collect();
        let lhs = q.at(&add(u, v)) + q.at(&diff);
        let rhs = 2.0 * (q.at(u) + q.at(v));
        if !close_rel(lhs, rhs, config.tol) {
            report.fail(Witness::detail(format!("u = {u:?}, v = {v:?}: {lhs} != {rhs}")));
        }
    };
    for i in 0..n {
        for j in i..n {
            test(&basis(n, i), &basis(n, j), &mut report);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    for _ in 0..config.random_pairs {
        let (u, v) = (random_vector(n, &mut rng), random_vector(n, &mut rng));
        test(&u, &v, &mut report);
    }
    report.note(if report.passed { "passed on probe set" } else { "failed on probe set" });
    report
}

/// First failing pair of [`parallelogram_check`], as vectors.
fn parallelogram_witness(q: &QuadraticForm, config: &ProbeConfig) -> Option<(Vec<f64>, Vec<f64>)> {
    let n = q.dim;
    let fails = |u: &[f64], v: &[f64]| {
        let diff: Vec<f64> = u.iter().zip(v).map(|(a, b)| a - b).collect();
        !close_rel(q.at(&add(u, v)) + q.at(&diff), 2.0 * (q.at(u) + q.at(v)), config.tol)
    };
    for i in 0..n {
        for j in i..n {
            if fails(&basis(n, i), &basis(n, j)) {
                return Some((basis(n, i), basis(n, j)));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    for _ in 0..config.random_pairs {
        let (u, v) = (random_vector(n, &mut rng), random_vector(n, &mut rng));
        if fails(&u, &v) {
            return Some((u, v));
        }
    }
    None
}

/// The bilinear form whose quadratic form is `q`, by polarization on basis
/// vectors, then verified on seeded random probes.
pub fn from_quadratic(q: &QuadraticForm, config: &ProbeConfig) -> Result<BilinearForm<f64>> {
    if let Some((u, v)) = parallelogram_witness(q, config) {
        return Err(Error::ParallelogramFailure { u, v });
    }
    let n = q.dim;
    let mut matrix = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i..n {
            let b = polarize(q, &basis(n, i), &basis(n, j))?.value();
            matrix[i][j] = b;
            matrix[j][i] = b;
        }
    }
    let form = BilinearForm { matrix };
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0xB11);
    for _ in 0..config.reconstruction_probes {
        let v = random_vector(n, &mut rng);
        let (expected, found) = (q.at(&v), eval_q(&form, &v)?);
        if !close_rel(expected, found, config.tol) {
            return Err(Error::ReconstructionMismatch { v, expected, found });
        }
    }
    Ok(form)
}

/// Grade-2 additivity and evenness of a quadratic form, with the
/// parallelogram verdict on the same form for comparison.
#[derive(Clone, Debug, PartialEq)]
pub struct FormGrade2Report {
    pub report: Report,
    pub parallelogram: Report,
}

impl FormGrade2Report {
    pub fn verdicts_agree(&self) -> bool {
        self.report.passed == self.parallelogram.passed
    }
}

/// Evenness on basis and random vectors, then
/// `Q(u+v+w) = Q(u+v) + Q(u+w) + Q(v+w) - Q(u) - Q(v) - Q(w)` on the zero
/// triple, basis triples, `(u, v, -v)` and random triples.
pub fn grade2_form_check(q: &QuadraticForm, config: &ProbeConfig) -> FormGrade2Report {
    let n = q.dim;
    let mut report = Report::new("grade2_form").sampled(config.seed);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);

    let mut probes: Vec<Vec<f64>> = (0..n).map(|i| basis(n, i)).collect();
    probes.extend((0..config.random_pairs).map(|_| random_vector(n, &mut rng)));
    for v in &probes {
        report.cases += 1;
        let (a, b) = (q.at(v), q.at(&neg(v)));
        if !close_rel(a, b, config.tol) {
            report.fail(Witness::detail(format!("not even at v = {v:?}: Q(v) = {a}, Q(-v) = {b}")));
        }
    }

    let test = |u: &[f64], v: &[f64], w: &[f64], report: &mut Report| {
        report.cases += 1;
        let uv = add(u, v);
        let lhs = q.at(&add(&uv, w));
        let rhs = q.at(&uv) + q.at(&add(u, w)) + q.at(&add(v, w)) - q.at(u) - q.at(v) - q.at(w);
        if !close_rel(lhs, rhs, config.tol) {
            report.fail(Witness::detail(format!("u = {u:?}, v = {v:?}, w = {w:?}: {lhs} != {rhs}")));
        }
    };
    let zero = vec![0.0; n];
    test(&zero, &zero, &zero, &mut report);
    for i in 0..n {
        for j in i..n {
            for k in j..n {
                test(&basis(n, i), &basis(n, j), &basis(n, k), &mut report);
            }
        }
    }
    for _ in 0..config.random_pairs {
        let (u, v, w) = (random_vector(n, &mut rng), random_vector(n, &mut rng), random_vector(n, &mut rng));
        test(&u, &v, &neg(&v), &mut report);
        test(&u, &v, &w, &mut report);
    }
    report.note(if report.passed { "passed on probe set" } else { "failed on probe set" });

    let parallelogram = parallelogram_check(q, config);
    let agree = report.passed == parallelogram.passed;
    report.note(format!("parallelogram verdict agrees: {agree}"));
    FormGrade2Report { report, parallelogram }
}

/// Both sides of the pairwise expansion of `Q(v_1 + ... + v_k)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FormExpansion {
    /// `sum_{i<j} Q(v_i + v_j) - (k-2) sum_i Q(v_i)`.
    pub pairwise: f64,
    /// `Q(v_1 + ... + v_k)`.
    pub direct: f64,
    /// For four vectors, the grade-3 form
    /// `sum of triples - sum of pairs + sum of singles`.
    pub grade3: Option<f64>,
}

impl FormExpansion {
    pub fn holds(&self, tol: f64) -> bool {
        close_rel(self.pairwise, self.direct, tol) && self.grade3.map_or(true, |g| close_rel(g, self.direct, tol))
    }
}

pub fn graden_form_expand(q: &QuadraticForm, vs: &[Vec<f64>]) -> Result<FormExpansion> {
    if vs.len() < 3 {
        return Err(Error::TooFewParts { needed: 3, found: vs.len() });
    }
    for v in vs {
        check_dim(q.dim, v)?;
    }
    let k = vs.len();
    let pairwise = pairwise_expansion(k, |i| q.at(&vs[i]), |i, j| q.at(&add(&vs[i], &vs[j])));
    let total = vs.iter().skip(1).fold(vs[0].clone(), |acc, v| add(&acc, v));
    let direct = q.at(&total);
    let grade3 = (k == 4).then(|| {
        let mut triples = 0.0;
        let mut pairs = 0.0;
        for i in 0..4 {
            for j in i + 1..4 {
                let ij = add(&vs[i], &vs[j]);
                pairs += q.at(&ij);
                for l in j + 1..4 {
                    triples += q.at(&add(&ij, &vs[l]));
                }
            }
        }
        let singles: f64 = vs.iter().map(|v| q.at(v)).sum();
        triples - pairs + singles
    });
    Ok(FormExpansion { pairwise, direct, grade3 })
}

/// `Q_q(f) = sum_{i,j} lambda_ij f_i f_j`.
pub fn quantum_form<S: Scalar>(lambda: &PairMeasureMatrix<S>, f: &[S]) -> Result<S> {
    check_dim(lambda.dim(), f)?;
    let mut total = S::zero();
    for (i, row) in lambda.entries().iter().enumerate() {
        let rf = row.iter().zip(f).fold(S::zero(), |acc, (l, x)| acc + *l * *x);
        total = total + f[i] * rf;
    }
    Ok(total)
}

/// For a measure `nu`, the diagonal pair matrix `lambda_ii = nu(x_i)` has
/// `Q_q(f) = sum_i f_i^2 nu(x_i)`.
pub fn theorem36_check<S: Scalar>(nu: &FiniteMeasure<S>, f: &[S]) -> Result<Report> {
    if let Some((index, w)) = nu.first_negative() {
        return Err(Error::NegativeWeight { index, value: w.to_string() });
    }
    let lambda = PairMeasureMatrix::diagonal(nu.universe().clone(), nu.weights())?;
    let q = quantum_form(&lambda, f)?;
    let integral = f.iter().zip(nu.weights()).fold(S::zero(), |acc, (x, w)| acc + *x * *x * *w);
    let mut report = Report::new("quantum_form_identity");
    report.cases = 1;
    report.note(format!("Q_q(f) = {q}, integral of f^2 = {integral}"));
    if !q.close_to(&integral, 1e-12) {
        report.fail(Witness::detail(format!("{q} != {integral}")));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_space::examples;
    use crate::finite_space::recover_pair_matrix;
    use crate::finite_space::CheckConfig;
    use crate::scalar::Rational;
    use crate::subset::Universe;

    fn r(p: i128, q: i128) -> Rational {
        Rational::new(p, q)
    }

    #[test]
    fn eval_basics() {
        let id = BilinearForm::<f64>::identity(2);
        assert_eq!(eval_q(&id, &[3.0, 4.0]).unwrap(), 25.0);
        assert_eq!(eval_q(&id, &[0.0, 0.0]).unwrap(), 0.0);
        assert!(matches!(eval_q(&id, &[1.0]), Err(Error::DimensionMismatch { expected: 2, found: 1 })));
        let coin = BilinearForm::new(vec![vec![r(1, 16); 4]; 4]).unwrap();
        assert_eq!(eval_q(&coin, &[r(1, 1), r(1, 1), r(1, 1), r(0, 1)]).unwrap(), r(9, 16));
        assert!(matches!(BilinearForm::new(vec![vec![1.0, 2.0], vec![3.0, 1.0]]), Err(Error::NotSymmetric { .. })));
    }

    #[test]
    fn polarization_examples() {
        let norm = QuadraticForm::from_bilinear(BilinearForm::identity(2));
        let p = polarize(&norm, &[1.0, 0.0], &[0.0, 1.0]).unwrap();
        assert_eq!(p.value(), 0.0);
        let m = QuadraticForm::from_bilinear(BilinearForm::new(vec![vec![1.0, 2.0], vec![2.0, 1.0]]).unwrap());
        let p = polarize(&m, &[1.0, 0.0], &[0.0, 1.0]).unwrap();
        assert_eq!(p.value(), 2.0);
        assert!(p.forms_agree(1e-9));
        let u = [0.3, -0.7];
        assert!((polarize(&m, &u, &u).unwrap().value() - m.eval(&u).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn from_quadratic_examples() {
        let cfg = ProbeConfig::default();
        let quartic = QuadraticForm::black_box(2, |v| v.iter().map(|x| x * x).sum::<f64>().powi(2));
        match from_quadratic(&quartic, &cfg) {
            Err(Error::ParallelogramFailure { u, v }) => {
                assert_eq!(u, vec![1.0, 0.0]);
                assert_eq!(v, vec![1.0, 0.0]);
            }
            other => panic!("{other:?}"),
        }
        let hidden = BilinearForm::new(vec![vec![2.0, -0.5, 0.25], vec![-0.5, 0.0, 3.0], vec![0.25, 3.0, -1.0]]).unwrap();
        let q = QuadraticForm::from_bilinear(hidden.clone());
        assert_eq!(from_quadratic(&q, &cfg).unwrap(), hidden);
        let sum_sq = QuadraticForm::black_box(3, |v| v.iter().sum::<f64>().powi(2));
        assert_eq!(from_quadratic(&sum_sq, &cfg).unwrap().matrix(), &[vec![1.0; 3], vec![1.0; 3], vec![1.0; 3]]);
    }

    #[test]
    fn parallelogram_examples() {
        let cfg = ProbeConfig::default();
        let b = BilinearForm::new(vec![vec![1.0, 0.5], vec![0.5, -2.0]]).unwrap();
        assert!(parallelogram_check(&QuadraticForm::from_bilinear(b), &cfg).passed);
        let l1 = parallelogram_check(&QuadraticForm::black_box(2, |v| v.iter().map(|x| x.abs()).sum()), &cfg);
        assert!(!l1.passed);
        assert!(l1.witness.unwrap().detail.contains("u = [1.0, 0.0], v = [1.0, 0.0]"));
        assert!(parallelogram_check(&QuadraticForm::black_box(3, |_| 0.0), &cfg).passed);
    }

    #[test]
    fn grade2_form_examples() {
        let cfg = ProbeConfig::default();
        let norm = grade2_form_check(&QuadraticForm::from_bilinear(BilinearForm::identity(3)), &cfg);
        assert!(norm.report.passed && norm.verdicts_agree());
        let cubic = grade2_form_check(&QuadraticForm::black_box(2, |v| v.iter().map(|x| x.powi(3)).sum()), &cfg);
        assert!(!cubic.report.passed && cubic.verdicts_agree());
        assert!(cubic.report.witness.unwrap().detail.starts_with("not even at v = [1.0, 0.0]"));
        let constant = grade2_form_check(&QuadraticForm::black_box(2, |_| 5.0), &cfg);
        assert!(!constant.report.passed && constant.verdicts_agree());
        assert!(constant.report.witness.unwrap().detail.starts_with("u = [0.0, 0.0]"));
    }

    #[test]
    fn graden_form_examples() {
        let norm = QuadraticForm::from_bilinear(BilinearForm::identity(3));
        let e: Vec<Vec<f64>> = (0..3).map(|i| basis(3, i)).collect();
        let x = graden_form_expand(&norm, &e).unwrap();
        assert_eq!((x.pairwise, x.direct), (3.0, 3.0));

        let coin = QuadraticForm::from_bilinear(BilinearForm::new(vec![vec![1.0 / 16.0; 4]; 4]).unwrap());
        let singles: Vec<Vec<f64>> = (0..4).map(|i| basis(4, i)).collect();
        let x = graden_form_expand(&coin, &singles).unwrap();
        assert!((x.pairwise - 1.0).abs() < 1e-12 && (x.grade3.unwrap() - 1.0).abs() < 1e-12);
        assert!(x.holds(1e-8));

        let with_zero = vec![vec![0.2, 0.1, 0.0], vec![0.0; 3], vec![-0.4, 0.5, 1.0]];
        let x = graden_form_expand(&norm, &with_zero).unwrap();
        assert!(x.holds(1e-12));
        assert!(matches!(graden_form_expand(&norm, &e[..2]), Err(Error::TooFewParts { .. })));
    }

    #[test]
    fn quantum_form_examples() {
        let mu = examples::quantum_coin();
        let lambda = recover_pair_matrix(&mu, &CheckConfig::default()).unwrap();
        let chi = [r(1, 1), r(1, 1), r(1, 1), r(0, 1)];
        assert_eq!(quantum_form(&lambda, &chi).unwrap(), r(9, 16));
        assert_eq!(quantum_form(&lambda, &[r(0, 1); 4]).unwrap(), r(0, 1));

        let w = [r(1, 2), r(-1, 3), r(2, 1)];
        let u = Universe::numbered(3).unwrap();
        let rank1 = PairMeasureMatrix::outer(u, &w).unwrap();
        let f = [r(3, 1), r(1, 5), r(-1, 2)];
        let s: Rational = w.iter().zip(&f).map(|(a, b)| *a * *b).sum();
        assert_eq!(quantum_form(&rank1, &f).unwrap(), s * s);
    }

    #[test]
    fn theorem36_examples() {
        let nu = FiniteMeasure::uniform(Universe::numbered(4).unwrap(), r(1, 4));
        let rep = theorem36_check(&nu, &[r(2, 1), r(1, 1), r(1, 1), r(0, 1)]).unwrap();
        assert!(rep.passed);
        assert!(rep.notes[0].starts_with("Q_q(f) = 3/2"));
        let bad = FiniteMeasure::new(Universe::numbered(2).unwrap(), vec![1.0, -1.0]).unwrap();
        assert!(theorem36_check(&bad, &[1.0, 1.0]).is_err());
    }
}
