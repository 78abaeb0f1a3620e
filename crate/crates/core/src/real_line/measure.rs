use std::fmt;

use super::interval::IntervalUnion;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Set functions on interval unions of `[0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RealQMeasure<S> {
    /// `nu(A)`, the ordinary Lebesgue measure.
    Lebesgue,
    /// `nu(A)^2`.
    QLebesgue,
    /// `nu(A) - 2 nu({x in A : x + s in A})`: points `s` apart annihilate.
    DestructiveShift(S),
}

impl<S: Scalar> RealQMeasure<S> {
    /// The destructive-shift measure with `s = 3/4`.
    pub fn destructive_default() -> Self {
        RealQMeasure::DestructiveShift(S::from_ratio(3, 4))
    }

    pub fn shift(&self) -> Option<S> {
        match self {
            RealQMeasure::DestructiveShift(s) => Some(*s),
            _ => None,
        }
    }

    /// `mu(A)`. A negative destructive-shift value is returned as an error
    /// rather than clamped.
    pub fn measure(&self, a: &IntervalUnion<S>) -> Result<S> {
        let nu = a.lebesgue();
        match self {
            RealQMeasure::Lebesgue => Ok(nu),
            RealQMeasure::QLebesgue => Ok(nu * nu),
            RealQMeasure::DestructiveShift(s) => {
                let paired = a.intersection(&a.translate(-*s)).lebesgue();
                let value = nu - (paired + paired);
                if value.is_negative_beyond(1e-12) {
                    return Err(Error::NegativeMeasure {
                        measure: self.to_string(),
                        set: a.to_string(),
                        value: value.to_string(),
                    });
                }
                Ok(S::max_of(value, S::zero()))
            }
        }
    }
}

impl<S: Scalar> fmt::Display for RealQMeasure<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealQMeasure::Lebesgue => write!(f, "lebesgue"),
            RealQMeasure::QLebesgue => write!(f, "qlebesgue"),
            RealQMeasure::DestructiveShift(s) => write!(f, "destructive:{s}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn r(p: i128, q: i128) -> Rational {
        Rational::new(p, q)
    }

    #[test]
    fn destructive_shift_values() {
        let mu = RealQMeasure::<Rational>::destructive_default();
        assert_eq!(mu.measure(&IntervalUnion::full()).unwrap(), r(1, 2));
        let ends = IntervalUnion::closed(r(0, 1), r(1, 4)).unwrap().union(&IntervalUnion::closed(r(3, 4), r(1, 1)).unwrap());
        assert_eq!(mu.measure(&ends).unwrap(), r(0, 1));
        assert_eq!(mu.measure(&IntervalUnion::closed(r(0, 1), r(1, 4)).unwrap()).unwrap(), r(1, 4));
        assert_eq!(mu.measure(&IntervalUnion::empty()).unwrap(), r(0, 1));
    }

    #[test]
    fn short_shifts_can_go_negative() {
        let mu = RealQMeasure::DestructiveShift(r(1, 10));
        assert!(matches!(mu.measure(&IntervalUnion::full()), Err(Error::NegativeMeasure { .. })));
    }

    #[test]
    fn q_lebesgue_squares() {
        let mu = RealQMeasure::<Rational>::QLebesgue;
        assert_eq!(mu.measure(&IntervalUnion::closed(r(0, 1), r(1, 2)).unwrap()).unwrap(), r(1, 4));
        assert_eq!(mu.to_string(), "qlebesgue");
        assert_eq!(RealQMeasure::DestructiveShift(r(3, 4)).to_string(), "destructive:3/4");
    }
}
