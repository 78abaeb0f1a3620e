//! The finite q-measures used throughout the test-suites and demos.

use super::builders::{from_destructive_pairs, from_measure_squared};
use super::table::{FiniteMeasure, QMeasureTable};
use crate::scalar::{Rational, Scalar};
use crate::subset::Universe;

/// Two fair coin flips `x1..x4` with `mu(A) = nu(A)^2`, `nu(x_i) = 1/4`.
pub fn quantum_coin() -> QMeasureTable<Rational> {
    let nu = FiniteMeasure::uniform(Universe::numbered(4).expect("4 points"), Rational::new(1, 4));
    from_measure_squared(&nu).expect("nonnegative weights")
}

/// Three points with `mu(empty) = mu(x1) = 0` and `mu = 1` elsewhere.
pub fn three_point() -> QMeasureTable<Rational> {
    QMeasureTable::from_fn(Universe::numbered(3).expect("3 points"), |a| {
        if a.bits() <= 1 {
            Rational::from_i64(0)
        } else {
            Rational::from_i64(1)
        }
    })
    .expect("valid table")
}

/// Destructive pairs `{x1..xm, y1..ym, z1..zn}`.
pub fn destructive_pairs(pairs: usize, singles: usize) -> QMeasureTable<Rational> {
    from_destructive_pairs(pairs, singles).expect("small universe")
}

/// `mu(A) = |A|^3`: nonnegative, vanishes on the empty set, not grade-2.
pub fn cube_table(n: usize) -> QMeasureTable<Rational> {
    QMeasureTable::from_fn(Universe::numbered(n).expect("small universe"), |a| {
        Rational::from_i64((a.len() as i64).pow(3))
    })
    .expect("valid table")
}

/// `mu(A) = 1` for every nonempty `A`: not grade-2 once `n >= 3`.
pub fn indicator_of_nonempty(n: usize) -> QMeasureTable<Rational> {
    QMeasureTable::from_fn(Universe::numbered(n).expect("small universe"), |a| {
        Rational::from_i64(if a.is_empty() { 0 } else { 1 })
    })
    .expect("valid table")
}

/// `mu(A) = sqrt(|A|)`-like concave table, rounded to quarters: `floor(2 sqrt |A|)/4`.
pub fn concave_table(n: usize) -> QMeasureTable<Rational> {
    QMeasureTable::from_fn(Universe::numbered(n).expect("small universe"), |a| {
        let k = (2.0 * (a.len() as f64).sqrt()).floor() as i64;
        Rational::from_ratio(k, 4)
    })
    .expect("valid table")
}
