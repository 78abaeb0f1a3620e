//! Globally adaptive Simpson quadrature over breakpoint-delimited pieces.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::Serialize;

use crate::error::{Error, Result};

pub const DEFAULT_BUDGET: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct QuadratureResult {
    pub value: f64,
    /// Sum of `|S2 - S1|` over the final segments.
    pub error_estimate: f64,
    pub evaluations: usize,
}

impl QuadratureResult {
    pub fn zero() -> Self {
        QuadratureResult { value: 0.0, error_estimate: 0.0, evaluations: 0 }
    }
}

struct Segment {
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    fl: f64,
    fr: f64,
    whole: f64,
    halves: f64,
}

impl Segment {
    fn error(&self) -> f64 {
        (self.halves - self.whole).abs()
    }
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error() == other.error()
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error().total_cmp(&other.error())
    }
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

/// Integrate `g` over `[breaks[0], breaks[last]]`.
///
/// `g(l, true)` must return the left limit at `l`; it is used only at the
/// right end of each piece, so jumps at breakpoints are harmless. Each of
/// the `k` pieces is refined, largest error first, until its error estimate
/// is below `tol / k`.
pub fn integrate_pieces(
    mut g: impl FnMut(f64, bool) -> Result<f64>,
    breaks: &[f64],
    tol: f64,
    budget: usize,
) -> Result<QuadratureResult> {
    let pieces: Vec<(f64, f64)> = breaks.windows(2).filter(|w| w[1] > w[0]).map(|w| (w[0], w[1])).collect();
    if pieces.is_empty() {
        return Ok(QuadratureResult::zero());
    }
    let piece_tol = tol / pieces.len() as f64;
    let mut evaluations = 0usize;
    let mut eval = |l: f64, left_limit: bool, evaluations: &mut usize| {
        *evaluations += 1;
        g(l, left_limit)
    };
    let mut total = QuadratureResult::zero();

    for (a, b) in pieces {
        let fa = eval(a, false, &mut evaluations)?;
        let fb = eval(b, true, &mut evaluations)?;
        let fm = eval(0.5 * (a + b), false, &mut evaluations)?;
        let mut make = |a: f64, b: f64, fa: f64, fm: f64, fb: f64, evaluations: &mut usize| -> Result<Segment> {
            let m = 0.5 * (a + b);
            let fl = eval(0.5 * (a + m), false, evaluations)?;
            let fr = eval(0.5 * (m + b), false, evaluations)?;
            let whole = simpson(a, b, fa, fm, fb);
            let halves = simpson(a, m, fa, fl, fm) + simpson(m, b, fm, fr, fb);
            Ok(Segment { a, b, fa, fm, fb, fl, fr, whole, halves })
        };
        let mut heap = BinaryHeap::new();
        let first = make(a, b, fa, fm, fb, &mut evaluations)?;
        let mut error = first.error();
        heap.push(first);
        let mut frozen = Vec::new();
        while error > piece_tol {
            let Some(seg) = heap.pop() else { break };
            let m = 0.5 * (seg.a + seg.b);
            if m <= seg.a || m >= seg.b || seg.b - seg.a < 1e-15 {
                frozen.push(seg);
                continue;
            }
            if evaluations >= budget {
                heap.push(seg);
                let estimate = heap.iter().chain(&frozen).map(Segment::error).sum::<f64>() + total.error_estimate;
                return Err(Error::Quadrature { tol, budget, estimate });
            }
            error -= seg.error();
            let left = make(seg.a, m, seg.fa, seg.fl, seg.fm, &mut evaluations)?;
            let right = make(m, seg.b, seg.fm, seg.fr, seg.fb, &mut evaluations)?;
            error += left.error() + right.error();
            heap.push(left);
            heap.push(right);
        }
        for seg in heap.iter().chain(&frozen) {
            total.value += seg.halves + (seg.halves - seg.whole) / 15.0;
            total.error_estimate += seg.error();
        }
    }
    total.evaluations = evaluations;
    if total.error_estimate > tol {
        return Err(Error::Quadrature { tol, budget, estimate: total.error_estimate });
    }
    Ok(total)
}
