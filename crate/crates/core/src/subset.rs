//! Finite universes and subsets encoded as bitmasks.

use std::fmt;

use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest universe a table can be built over (2^24 values).
pub const MAX_POINTS: usize = 24;

/// Ordered, labelled point set `X = {x_0, ..., x_{n-1}}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Universe {
    labels: Vec<String>,
}

impl Universe {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::InvalidUniverse("universe must have at least one point".into()));
        }
        if labels.len() > MAX_POINTS {
            return Err(Error::SizeOverflow { n: labels.len(), max: MAX_POINTS });
        }
        for (i, l) in labels.iter().enumerate() {
            if l.is_empty() {
                return Err(Error::InvalidUniverse(format!("label {i} is empty")));
            }
            if labels[..i].contains(l) {
                return Err(Error::InvalidUniverse(format!("duplicate label {l:?}")));
            }
        }
        Ok(Universe { labels })
    }

    /// Points labelled `x1, ..., xn`.
    pub fn numbered(n: usize) -> Result<Self> {
        Universe::new((1..=n).map(|i| format!("x{i}")))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Number of subsets, `2^n`.
    pub fn subset_count(&self) -> usize {
        1usize << self.len()
    }

    pub fn full(&self) -> SubsetMask {
        SubsetMask::full(self.len())
    }

    /// Subset from labels.
    pub fn subset(&self, labels: &[&str]) -> Result<SubsetMask> {
        let mut m = SubsetMask::EMPTY;
        for l in labels {
            let i = self
                .index_of(l)
                .ok_or_else(|| Error::InvalidArgument(format!("unknown label {l:?}")))?;
            m = m.with(i);
        }
        Ok(m)
    }

    /// `{x1,x3}`-style rendering of a subset.
    pub fn describe(&self, set: SubsetMask) -> String {
        let names: Vec<&str> = set.indices().map(|i| self.label(i)).collect();
        format!("{{{}}}", names.join(","))
    }

    pub fn check_subset(&self, set: SubsetMask) -> Result<()> {
        if set.bits() >> self.len() != 0 {
            return Err(Error::SubsetOutOfRange { set, n: self.len() });
        }
        Ok(())
    }

    /// All subsets in ascending bitmask order.
    pub fn subsets(&self) -> impl Iterator<Item = SubsetMask> {
        (0..self.subset_count() as u32).map(SubsetMask)
    }
}

/// Subset of a universe: bit `i` set iff point `i` is a member.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SubsetMask(pub u32);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    pub fn full(n: usize) -> Self {
        if n >= 32 {
            SubsetMask(u32::MAX)
        } else {
            SubsetMask((1u32 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        SubsetMask(1 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        indices.into_iter().fold(SubsetMask::EMPTY, |m, i| m.with(i))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn with(self, i: usize) -> Self {
        SubsetMask(self.0 | (1 << i))
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn union(self, other: Self) -> Self {
        SubsetMask(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        SubsetMask(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        SubsetMask(self.0 & !other.0)
    }

    pub fn symmetric_difference(self, other: Self) -> Self {
        SubsetMask(self.0 ^ other.0)
    }

    /// Complement inside an `n`-point universe.
    pub fn complement(self, n: usize) -> Self {
        SubsetMask(!self.0 & SubsetMask::full(n).0)
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    /// All subsets of `self`, ascending, starting with the empty set.
    pub fn submasks(self) -> Submasks {
        Submasks { mask: self.0, next: Some(0) }
    }

    /// Lowest member, if any.
    pub fn lowest(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }
}

/// Iterator over the submasks of a mask in ascending numeric order.
pub struct Submasks {
    mask: u32,
    next: Option<u32>,
}

impl Iterator for Submasks {
    type Item = SubsetMask;

    fn next(&mut self) -> Option<SubsetMask> {
        let cur = self.next?;
        // (cur - mask) & mask steps to the next submask in increasing order.
        self.next = if cur == self.mask { None } else { Some(cur.wrapping_sub(self.mask) & self.mask) };
        Some(SubsetMask(cur))
    }
}

/// Check that every pair in `parts` is disjoint.
pub fn check_mutually_disjoint(parts: &[SubsetMask]) -> Result<()> {
    for (i, a) in parts.iter().enumerate() {
        for b in &parts[i + 1..] {
            if !a.is_disjoint(*b) {
                return Err(Error::NotDisjoint(*a, *b));
            }
        }
    }
    Ok(())
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.indices().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for SubsetMask {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.len()))?;
        for i in self.indices() {
            seq.serialize_element(&i)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for SubsetMask {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct MaskVisitor;

        impl<'de> Visitor<'de> for MaskVisitor {
            type Value = SubsetMask;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a list of point indices or a bitmask integer")
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<SubsetMask, E> {
                if v >> MAX_POINTS != 0 {
                    return Err(E::custom(format!("bitmask {v} exceeds {MAX_POINTS} points")));
                }
                Ok(SubsetMask(v as u32))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<SubsetMask, E> {
                if v < 0 {
                    return Err(E::custom("negative bitmask"));
                }
                self.visit_u64(v as u64)
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<SubsetMask, A::Error> {
                let mut m = SubsetMask::EMPTY;
                while let Some(i) = seq.next_element::<usize>()? {
                    if i >= MAX_POINTS {
                        return Err(de::Error::custom(format!("index {i} exceeds {MAX_POINTS} points")));
                    }
                    m = m.with(i);
                }
                Ok(m)
            }
        }

        deserializer.deserialize_any(MaskVisitor)
    }
}
