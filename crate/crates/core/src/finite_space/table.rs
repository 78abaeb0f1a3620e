use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::subset::{SubsetMask, Universe};

/// Seed used by every sampled check unless the caller overrides it.
pub const DEFAULT_SEED: u64 = 0x5EED_0001;

/// Knobs shared by the finite-space verification routines.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckConfig {
    /// Absolute tolerance on each identity (ignored by exact scalars).
    pub tol: f64,
    /// Universes up to this size are checked exhaustively.
    pub exhaustive_limit: usize,
    /// Number of random instances for larger universes.
    pub samples: u64,
    pub seed: u64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig { tol: 1e-9, exhaustive_limit: 12, samples: 1_000_000, seed: DEFAULT_SEED }
    }
}

/// A set function given by its value on every subset of a finite universe.
#[derive(Clone, Debug, PartialEq)]
pub struct QMeasureTable<S> {
    universe: Universe,
    values: Vec<S>,
}

impl<S: Scalar> QMeasureTable<S> {
    /// Validates length, `mu(empty) = 0` and nonnegativity. Additivity is not
    /// checked here; see [`grade2_check`](super::grade2_check).
    pub fn new(universe: Universe, values: Vec<S>) -> Result<Self> {
        let expected = universe.subset_count();
        if values.len() != expected {
            return Err(Error::TableLength { expected, found: values.len() });
        }
        if !values[0].is_zero() {
            return Err(Error::NonzeroEmpty(values[0].to_string()));
        }
        if let Some((i, v)) = values.iter().enumerate().find(|(_, v)| **v < S::zero()) {
            return Err(Error::NegativeValue { set: SubsetMask(i as u32), value: v.to_string() });
        }
        Ok(QMeasureTable { universe, values })
    }

    pub fn from_fn(universe: Universe, f: impl FnMut(SubsetMask) -> S) -> Result<Self> {
        let values = universe.subsets().map(f).collect();
        Self::new(universe, values)
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn n(&self) -> usize {
        self.universe.len()
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    pub fn full(&self) -> SubsetMask {
        self.universe.full()
    }

    /// `mu(A)`, checking that `A` lies in the universe.
    pub fn evaluate(&self, set: SubsetMask) -> Result<S> {
        self.universe.check_subset(set)?;
        Ok(self.values[set.index()])
    }

    /// Unchecked lookup for inner loops.
    #[inline]
    pub fn mu(&self, set: SubsetMask) -> S {
        self.values[set.index()]
    }

    pub fn total(&self) -> S {
        self.mu(self.full())
    }

    pub fn complement(&self, set: SubsetMask) -> SubsetMask {
        set.complement(self.n())
    }

    pub fn ensure_same_universe(&self, other: &Universe) -> Result<()> {
        if &self.universe != other {
            return Err(Error::UniverseMismatch { expected: self.n(), found: other.len() });
        }
        Ok(())
    }

    /// Multiply every value by `c >= 0`.
    pub fn scaled(&self, c: S) -> Result<Self> {
        Self::new(self.universe.clone(), self.values.iter().map(|v| *v * c).collect())
    }

    pub fn map_values<T: Scalar>(&self, f: impl Fn(S) -> T) -> QMeasureTable<T> {
        QMeasureTable { universe: self.universe.clone(), values: self.values.iter().map(|v| f(*v)).collect() }
    }

    pub fn to_f64(&self) -> QMeasureTable<f64> {
        self.map_values(|v| v.to_f64())
    }
}

/// Additive set function `nu(A) = sum of weights over A`.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteMeasure<S> {
    universe: Universe,
    weights: Vec<S>,
}

impl<S: Scalar> FiniteMeasure<S> {
    /// Signed weights are allowed; see [`is_nonnegative`](Self::is_nonnegative).
    pub fn new(universe: Universe, weights: Vec<S>) -> Result<Self> {
        if weights.len() != universe.len() {
            return Err(Error::DimensionMismatch { expected: universe.len(), found: weights.len() });
        }
        Ok(FiniteMeasure { universe, weights })
    }

    pub fn uniform(universe: Universe, weight: S) -> Self {
        let weights = vec![weight; universe.len()];
        FiniteMeasure { universe, weights }
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn weights(&self) -> &[S] {
        &self.weights
    }

    pub fn is_nonnegative(&self) -> bool {
        self.weights.iter().all(|w| *w >= S::zero())
    }

    pub fn first_negative(&self) -> Option<(usize, S)> {
        self.weights.iter().copied().enumerate().find(|(_, w)| *w < S::zero())
    }

    pub fn measure(&self, set: SubsetMask) -> S {
        set.indices().fold(S::zero(), |acc, i| acc + self.weights[i])
    }

    /// `nu(A)` for every subset, in bitmask order.
    pub fn all_values(&self) -> Vec<S> {
        subset_sums(&self.weights)
    }

    /// The measure as a table; fails if a weight is negative.
    pub fn to_table(&self) -> Result<QMeasureTable<S>> {
        if let Some((index, w)) = self.first_negative() {
            return Err(Error::NegativeWeight { index, value: w.to_string() });
        }
        QMeasureTable::new(self.universe.clone(), self.all_values())
    }
}

/// `out[A] = sum_{i in A} w[i]` for all `A`, by extending from `A` minus its
/// lowest point.
pub(crate) fn subset_sums<S: Scalar>(w: &[S]) -> Vec<S> {
    let size = 1usize << w.len();
    let mut out = vec![S::zero(); size];
    for m in 1..size {
        let low = m.trailing_zeros() as usize;
        out[m] = out[m & (m - 1)] + w[low];
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    #[test]
    fn table_validation() {
        let u = Universe::numbered(2).unwrap();
        assert!(matches!(
            QMeasureTable::new(u.clone(), vec![0.0, 1.0]),
            Err(Error::TableLength { expected: 4, found: 2 })
        ));
        assert!(matches!(QMeasureTable::new(u.clone(), vec![1.0, 1.0, 1.0, 1.0]), Err(Error::NonzeroEmpty(_))));
        assert!(matches!(
            QMeasureTable::new(u.clone(), vec![0.0, -1.0, 1.0, 1.0]),
            Err(Error::NegativeValue { .. })
        ));
        let t = QMeasureTable::new(u, vec![0.0, 1.0, 1.0, 0.0]).unwrap();
        assert_eq!(t.evaluate(SubsetMask(3)).unwrap(), 0.0);
        assert!(matches!(t.evaluate(SubsetMask(4)), Err(Error::SubsetOutOfRange { .. })));
    }

    #[test]
    fn empty_set_is_zero() {
        let nu = FiniteMeasure::uniform(Universe::numbered(3).unwrap(), Rational::new(1, 3));
        assert_eq!(nu.to_table().unwrap().evaluate(SubsetMask::EMPTY).unwrap(), Rational::from_i64(0));
    }

    #[test]
    fn subset_sums_match_direct() {
        let w = [1.0, 2.0, 4.0, -8.0];
        let sums = subset_sums(&w);
        for (m, s) in sums.iter().enumerate() {
            let direct: f64 = SubsetMask(m as u32).indices().map(|i| w[i]).sum();
            assert_eq!(*s, direct);
        }
    }

    #[test]
    fn negative_weights_rejected_for_tables() {
        let nu = FiniteMeasure::new(Universe::numbered(2).unwrap(), vec![1.0, -1.0]).unwrap();
        assert!(!nu.is_nonnegative());
        assert!(matches!(nu.to_table(), Err(Error::NegativeWeight { index: 1, .. })));
    }
}
