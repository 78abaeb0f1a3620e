use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{sorted_distinct, Scalar};

/// A finite union of half-open intervals `[a, b)` inside `[0, 1)`, plus a
/// flag for the point `1`. Pieces are sorted, nonempty and separated by
/// positive gaps.
#[derive(Clone, Debug, PartialEq)]
pub struct IntervalUnion<S> {
    pieces: Vec<(S, S)>,
    contains_one: bool,
}

impl<S: Scalar> IntervalUnion<S> {
    pub fn empty() -> Self {
        IntervalUnion { pieces: Vec::new(), contains_one: false }
    }

    /// `[0, 1]`.
    pub fn full() -> Self {
        IntervalUnion { pieces: vec![(S::zero(), S::one())], contains_one: true }
    }

    /// `[a, b)` clipped to `[0, 1)`.
    pub fn half_open(a: S, b: S) -> Result<Self> {
        if a > b {
            return Err(Error::InvalidInterval(format!("[{a}, {b})")));
        }
        Ok(Self::from_pieces(vec![(a, b)], false))
    }

    /// `[a, b]` clipped to `[0, 1]`; a closed endpoint below 1 is null and is
    /// dropped.
    pub fn closed(a: S, b: S) -> Result<Self> {
        if a > b {
            return Err(Error::InvalidInterval(format!("[{a}, {b}]")));
        }
        Ok(Self::from_pieces(vec![(a, b)], a <= S::one() && b >= S::one()))
    }

    /// Canonicalize arbitrary pieces: clip, drop empties, sort, merge.
    pub fn from_pieces(pieces: Vec<(S, S)>, contains_one: bool) -> Self {
        let (zero, one) = (S::zero(), S::one());
        let mut clipped: Vec<(S, S)> = pieces
            .into_iter()
            .map(|(a, b)| (S::max_of(a, zero), S::min_of(b, one)))
            .filter(|(a, b)| a < b)
            .collect();
        clipped.sort_by(|x, y| crate::scalar::cmp_scalar(&x.0, &y.0));
        let mut merged: Vec<(S, S)> = Vec::with_capacity(clipped.len());
        for (a, b) in clipped {
            match merged.last_mut() {
                Some(last) if a <= last.1 => last.1 = S::max_of(last.1, b),
                _ => merged.push((a, b)),
            }
        }
        IntervalUnion { pieces: merged, contains_one }
    }

    pub fn pieces(&self) -> &[(S, S)] {
        &self.pieces
    }

    pub fn contains_one(&self) -> bool {
        self.contains_one
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty() && !self.contains_one
    }

    pub fn contains(&self, x: S) -> bool {
        if x == S::one() {
            return self.contains_one;
        }
        self.pieces.iter().any(|(a, b)| *a <= x && x < *b)
    }

    /// Lebesgue measure.
    pub fn lebesgue(&self) -> S {
        self.pieces.iter().fold(S::zero(), |acc, (a, b)| acc + (*b - *a))
    }

    /// Every piece endpoint, ascending.
    pub fn endpoints(&self) -> Vec<S> {
        sorted_distinct(self.pieces.iter().flat_map(|(a, b)| [*a, *b]).collect())
    }

    fn combine(&self, other: &Self, op: impl Fn(bool, bool) -> bool) -> Self {
        let mut cuts = vec![S::zero(), S::one()];
        cuts.extend(self.endpoints());
        cuts.extend(other.endpoints());
        let cuts = sorted_distinct(cuts);
        let pieces = cuts
            .windows(2)
            .filter(|w| op(self.contains(w[0]), other.contains(w[0])))
            .map(|w| (w[0], w[1]))
            .collect();
        Self::from_pieces(pieces, op(self.contains_one, other.contains_one))
    }

    pub fn union(&self, other: &Self) -> Self {
        self.combine(other, |x, y| x || y)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.combine(other, |x, y| x && y)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.combine(other, |x, y| x && !y)
    }

    /// Complement in `[0, 1]`.
    pub fn complement(&self) -> Self {
        self.combine(self, |x, _| !x)
    }

    /// `{x in [0, 1] : x - t in A}` up to a null set: isolated points other
    /// than `1` are not representable and are dropped.
    pub fn translate(&self, t: S) -> Self {
        let pieces = self.pieces.iter().map(|(a, b)| (*a + t, *b + t)).collect();
        let one = S::one();
        let contains_one = self.contains(one - t) && one - t >= S::zero();
        Self::from_pieces(pieces, contains_one)
    }
}

impl<S: Scalar> fmt::Display for IntervalUnion<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "{{}}");
        }
        let mut parts: Vec<String> = Vec::new();
        for (i, (a, b)) in self.pieces.iter().enumerate() {
            let last = i + 1 == self.pieces.len();
            if last && self.contains_one && *b == S::one() {
                parts.push(format!("[{a}, {b}]"));
            } else {
                parts.push(format!("[{a}, {b})"));
            }
        }
        if self.contains_one && self.pieces.last().map_or(true, |p| p.1 != S::one()) {
            parts.push("{1}".to_string());
        }
        write!(f, "{}", parts.join(" u "))
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
    fn canonical_merging() {
        let a = IntervalUnion::from_pieces(vec![(r(1, 2), r(3, 4)), (r(0, 1), r(1, 4)), (r(1, 4), r(1, 3))], false);
        assert_eq!(a.pieces(), &[(r(0, 1), r(1, 3)), (r(1, 2), r(3, 4))]);
        assert_eq!(a.lebesgue(), r(7, 12));
        let clipped = IntervalUnion::half_open(r(-1, 1), r(2, 1)).unwrap();
        assert_eq!(clipped.pieces(), &[(r(0, 1), r(1, 1))]);
        assert!(!clipped.contains_one());
        assert!(IntervalUnion::closed(r(1, 1), r(0, 1)).is_err());
    }

    #[test]
    fn complement_and_translate() {
        let a = IntervalUnion::closed(r(0, 1), r(1, 4)).unwrap().union(&IntervalUnion::closed(r(3, 4), r(1, 1)).unwrap());
        let c = a.complement();
        assert_eq!(c.pieces(), &[(r(1, 4), r(3, 4))]);
        assert!(!c.contains_one());
        assert!(a.intersection(&c).is_empty());
        assert_eq!(a.union(&c), IntervalUnion::full());

        let tail = IntervalUnion::closed(r(3, 4), r(1, 1)).unwrap();
        let shifted = tail.translate(r(-3, 4)).intersection(&IntervalUnion::half_open(r(0, 1), r(1, 4)).unwrap());
        assert_eq!(shifted, IntervalUnion::half_open(r(0, 1), r(1, 4)).unwrap());
    }

    #[test]
    fn membership_and_display() {
        let a = IntervalUnion::closed(r(1, 2), r(1, 1)).unwrap();
        assert!(a.contains(r(1, 2)) && a.contains(r(1, 1)) && !a.contains(r(1, 4)));
        assert_eq!(a.to_string(), "[1/2, 1]");
        assert_eq!(IntervalUnion::<Rational>::empty().to_string(), "{}");
        let point = IntervalUnion::from_pieces(vec![(r(0, 1), r(1, 2))], true);
        assert_eq!(point.to_string(), "[0, 1/2) u {1}");
    }
}
