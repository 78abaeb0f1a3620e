use std::fmt;
use std::sync::Arc;

use super::interval::IntervalUnion;
use crate::error::{Error, Result};
use crate::scalar::{sorted_distinct, Scalar};

/// Functions on `[0, 1]` whose superlevel sets are finite interval unions.
pub trait Layered<S: Scalar> {
    /// `{x in domain : f(x) > l}`, or `{f >= l}` when `closed`.
    fn superlevel(&self, lambda: S, closed: bool, domain: &IntervalUnion<S>) -> Result<IntervalUnion<S>>;

    /// `(inf, sup)` of `f` over the domain, or `None` for a null domain.
    fn range(&self, domain: &IntervalUnion<S>) -> Option<(S, S)>;

    /// Levels at which `l -> mu{f > l}` may fail to be smooth: values at
    /// piece and domain endpoints, and, for a shift `s`, values at points `s`
    /// away from those endpoints.
    fn breakpoints(&self, domain: &IntervalUnion<S>, shift: Option<S>) -> Vec<S>;
}

/// `[lo, hi]` overlaps of pieces `[u, v)` with the domain's pieces, as
/// `(piece index, lo, hi)`.
fn overlaps<S: Scalar>(bounds: &[(S, S)], domain: &IntervalUnion<S>) -> Vec<(usize, S, S)> {
    let mut out = Vec::new();
    for (i, (u, v)) in bounds.iter().enumerate() {
        for (a, b) in domain.pieces() {
            let (lo, hi) = (S::max_of(*u, *a), S::min_of(*v, *b));
            if lo < hi {
                out.push((i, lo, hi));
            }
        }
    }
    out
}

fn check_partition<S: Scalar>(bounds: &[(S, S)]) -> Result<()> {
    let Some(first) = bounds.first() else {
        return Err(Error::InvalidFunction("no pieces".into()));
    };
    if first.0 != S::zero() {
        return Err(Error::InvalidFunction(format!("pieces start at {} instead of 0", first.0)));
    }
    for w in bounds.windows(2) {
        if w[0].1 != w[1].0 {
            return Err(Error::InvalidFunction(format!("gap or overlap at {} / {}", w[0].1, w[1].0)));
        }
    }
    for (u, v) in bounds {
        if u >= v {
            return Err(Error::InvalidFunction(format!("empty piece [{u}, {v}]")));
        }
    }
    let last = bounds[bounds.len() - 1].1;
    if last != S::one() {
        return Err(Error::InvalidFunction(format!("pieces end at {last} instead of 1")));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Increasing,
    Decreasing,
    Constant,
}

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// One monotone piece on `[lo, hi)` (closed at `1` for the last piece).
#[derive(Clone)]
pub struct MonotonePiece {
    pub lo: f64,
    pub hi: f64,
    pub direction: Direction,
    f: RealFn,
    inverse: Option<RealFn>,
}

impl fmt::Debug for MonotonePiece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MonotonePiece")
            .field("lo", &self.lo)
            .field("hi", &self.hi)
            .field("direction", &self.direction)
            .field("analytic_inverse", &self.inverse.is_some())
            .finish()
    }
}

impl MonotonePiece {
    /// Without an inverse, levels are inverted by bisection.
    pub fn new(
        lo: f64,
        hi: f64,
        direction: Direction,
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
        inverse: Option<Box<dyn Fn(f64) -> f64 + Send + Sync>>,
    ) -> Self {
        MonotonePiece { lo, hi, direction, f: Arc::new(f), inverse: inverse.map(Arc::from) }
    }

    pub fn constant(lo: f64, hi: f64, c: f64) -> Self {
        MonotonePiece { lo, hi, direction: Direction::Constant, f: Arc::new(move |_| c), inverse: None }
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.f)(x)
    }

    /// `t` in `[lo, hi]` with `f(t) = l`, for `l` between the end values.
    fn invert(&self, lambda: f64) -> Result<f64> {
        let t = match &self.inverse {
            Some(inv) => inv(lambda).clamp(self.lo, self.hi),
            None => self.bisect(lambda),
        };
        let miss = (self.eval(t) - lambda).abs();
        if miss > 1e-12 * lambda.abs().max(1.0) {
            return Err(Error::InverseOracle { lo: self.lo, hi: self.hi, level: lambda, miss });
        }
        Ok(t)
    }

    fn bisect(&self, lambda: f64) -> f64 {
        let increasing = self.direction == Direction::Increasing;
        let (mut lo, mut hi) = (self.lo, self.hi);
        while hi - lo > 1e-13 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if (self.eval(mid) < lambda) == increasing {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    fn above(&self, value: f64, lambda: f64, closed: bool) -> bool {
        if closed {
            value >= lambda
        } else {
            value > lambda
        }
    }

    /// Superlevel set inside `[lo, hi)`.
    fn superlevel(&self, lambda: f64, closed: bool) -> Result<Option<(f64, f64)>> {
        let (fl, fh) = (self.eval(self.lo), self.eval(self.hi));
        let whole = Some((self.lo, self.hi));
        Ok(match self.direction {
            Direction::Constant => self.above(fl, lambda, closed).then_some((self.lo, self.hi)),
            Direction::Increasing if fl > lambda || (closed && fl >= lambda) => whole,
            Direction::Increasing if fh <= lambda => None,
            Direction::Increasing => Some((self.invert(lambda)?, self.hi)),
            Direction::Decreasing if fh > lambda || (closed && fh >= lambda) => whole,
            Direction::Decreasing if fl <= lambda => None,
            Direction::Decreasing => Some((self.lo, self.invert(lambda)?)),
        })
    }
}

/// A function on `[0, 1]` given by monotone pieces that partition the
/// interval.
#[derive(Clone, Debug)]
pub struct PiecewiseMonotone {
    pieces: Vec<MonotonePiece>,
    name: String,
}

impl PiecewiseMonotone {
    /// Checks that the pieces partition `[0, 1]` and that each piece moves in
    /// its stated direction on a sample grid.
    pub fn new(name: impl Into<String>, pieces: Vec<MonotonePiece>) -> Result<Self> {
        let bounds: Vec<(f64, f64)> = pieces.iter().map(|p| (p.lo, p.hi)).collect();
        check_partition(&bounds)?;
        for p in &pieces {
            let samples: Vec<f64> = (0..=16).map(|k| p.eval(p.lo + (p.hi - p.lo) * k as f64 / 16.0)).collect();
            let ok = samples.windows(2).all(|w| match p.direction {
                Direction::Increasing => w[0] <= w[1],
                Direction::Decreasing => w[0] >= w[1],
                Direction::Constant => w[0] == w[1],
            });
            if !ok || samples.iter().any(|v| !v.is_finite()) {
                return Err(Error::NotMonotone(format!("piece [{}, {}] is not {:?}", p.lo, p.hi, p.direction)));
            }
        }
        Ok(PiecewiseMonotone { pieces, name: name.into() })
    }

    /// `x^n`.
    pub fn monomial(n: u32) -> Self {
        if n == 0 {
            return Self::constant(1.0);
        }
        let piece = MonotonePiece::new(
            0.0,
            1.0,
            Direction::Increasing,
            move |x| x.powi(n as i32),
            Some(Box::new(move |l: f64| if n == 1 { l } else { l.max(0.0).powf(1.0 / n as f64) })),
        );
        Self::new(if n == 1 { "x".to_string() } else { format!("x^{n}") }, vec![piece]).expect("valid piece")
    }

    /// `e^x`.
    pub fn exp() -> Self {
        let piece = MonotonePiece::new(0.0, 1.0, Direction::Increasing, f64::exp, Some(Box::new(|l: f64| l.ln())));
        Self::new("exp", vec![piece]).expect("valid piece")
    }

    /// `x^2 + x`, inverted by `-1/2 + sqrt(1 + 4l)/2`.
    pub fn square_plus_x() -> Self {
        let piece = MonotonePiece::new(
            0.0,
            1.0,
            Direction::Increasing,
            |x| x * x + x,
            Some(Box::new(|l: f64| -0.5 + 0.5 * (1.0 + 4.0 * l).max(0.0).sqrt())),
        );
        Self::new("x^2+x", vec![piece]).expect("valid piece")
    }

    pub fn constant(c: f64) -> Self {
        Self::new(format!("const:{c}"), vec![MonotonePiece::constant(0.0, 1.0, c)]).expect("valid piece")
    }

    /// `height` on `[a, b]`, `0` elsewhere.
    pub fn indicator(a: f64, b: f64, height: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&a) || !(0.0..=1.0).contains(&b) || a >= b {
            return Err(Error::InvalidInterval(format!("[{a}, {b}]")));
        }
        let mut pieces = Vec::new();
        if a > 0.0 {
            pieces.push(MonotonePiece::constant(0.0, a, 0.0));
        }
        pieces.push(MonotonePiece::constant(a, b, height));
        if b < 1.0 {
            pieces.push(MonotonePiece::constant(b, 1.0, 0.0));
        }
        Self::new(format!("indicator:{a},{b}:{height}"), pieces)
    }

    /// Linear pieces `slope * x + intercept` on `[from, to)`.
    pub fn linear(pieces: &[LinearPiece<f64>]) -> Result<Self> {
        let pieces = pieces
            .iter()
            .map(|p| {
                let LinearPiece { from, to, slope, intercept } = *p;
                let f = move |x: f64| slope * x + intercept;
                if slope == 0.0 {
                    MonotonePiece::constant(from, to, intercept)
                } else {
                    let dir = if slope > 0.0 { Direction::Increasing } else { Direction::Decreasing };
                    MonotonePiece::new(from, to, dir, f, Some(Box::new(move |l: f64| (l - intercept) / slope)))
                }
            })
            .collect();
        Self::new("piecewise", pieces)
    }

    /// `c * f` for `c >= 0`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        if c < 0.0 {
            return Err(Error::InvalidArgument(format!("scale {c} must be nonnegative")));
        }
        let pieces = self
            .pieces
            .iter()
            .map(|p| {
                if c == 0.0 || p.direction == Direction::Constant {
                    let v = c * p.eval(p.lo);
                    return MonotonePiece::constant(p.lo, p.hi, v);
                }
                let f = p.f.clone();
                let inverse = p.inverse.clone();
                MonotonePiece {
                    lo: p.lo,
                    hi: p.hi,
                    direction: p.direction,
                    f: Arc::new(move |x| c * f(x)),
                    inverse: inverse.map(|inv| Arc::new(move |l: f64| inv(l / c)) as RealFn),
                }
            })
            .collect();
        Ok(PiecewiseMonotone { pieces, name: format!("{c}*({})", self.name) })
    }

    /// `-f`.
    pub fn negated(&self) -> Self {
        let pieces = self
            .pieces
            .iter()
            .map(|p| {
                let f = p.f.clone();
                let direction = match p.direction {
                    Direction::Increasing => Direction::Decreasing,
                    Direction::Decreasing => Direction::Increasing,
                    Direction::Constant => Direction::Constant,
                };
                MonotonePiece {
                    lo: p.lo,
                    hi: p.hi,
                    direction,
                    f: Arc::new(move |x| -f(x)),
                    inverse: p.inverse.clone().map(|inv| Arc::new(move |l: f64| inv(-l)) as RealFn),
                }
            })
            .collect();
        PiecewiseMonotone { pieces, name: format!("-({})", self.name) }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn pieces(&self) -> &[MonotonePiece] {
        &self.pieces
    }

    pub fn eval(&self, x: f64) -> f64 {
        let i = self.pieces.iter().position(|p| x < p.hi).unwrap_or(self.pieces.len() - 1);
        self.pieces[i].eval(x)
    }

    /// The overall direction if `f` is monotone on all of `[0, 1]`,
    /// including across piece boundaries.
    pub fn monotone_direction(&self) -> Result<Direction> {
        let mut dir = Direction::Constant;
        for p in &self.pieces {
            match (dir, p.direction) {
                (_, Direction::Constant) => {}
                (Direction::Constant, d) => dir = d,
                (a, b) if a != b => return Err(Error::NotMonotone(format!("{} changes direction", self.name))),
                _ => {}
            }
        }
        let jumps: Vec<(f64, f64)> = self.pieces.windows(2).map(|w| (w[0].eval(w[0].hi), w[1].eval(w[1].lo))).collect();
        if dir == Direction::Constant {
            if jumps.iter().any(|(l, r)| l < r) {
                dir = Direction::Increasing;
            } else if jumps.iter().any(|(l, r)| l > r) {
                dir = Direction::Decreasing;
            }
        }
        for (w, (left, right)) in self.pieces.windows(2).zip(jumps) {
            let ok = match dir {
                Direction::Increasing => left <= right,
                Direction::Decreasing => left >= right,
                Direction::Constant => left == right,
            };
            if !ok {
                return Err(Error::NotMonotone(format!("{} jumps the wrong way at {}", self.name, w[0].hi)));
            }
        }
        Ok(dir)
    }

    fn bounds(&self) -> Vec<(f64, f64)> {
        self.pieces.iter().map(|p| (p.lo, p.hi)).collect()
    }
}

impl Layered<f64> for PiecewiseMonotone {
    fn superlevel(&self, lambda: f64, closed: bool, domain: &IntervalUnion<f64>) -> Result<IntervalUnion<f64>> {
        let mut found = Vec::new();
        for p in &self.pieces {
            if let Some(piece) = p.superlevel(lambda, closed)? {
                found.push(piece);
            }
        }
        let last = &self.pieces[self.pieces.len() - 1];
        let at_one = last.eval(1.0);
        let one = if closed { at_one >= lambda } else { at_one > lambda };
        Ok(IntervalUnion::from_pieces(found, one).intersection(domain))
    }

    fn range(&self, domain: &IntervalUnion<f64>) -> Option<(f64, f64)> {
        let values: Vec<f64> = overlaps(&self.bounds(), domain)
            .into_iter()
            .flat_map(|(i, lo, hi)| [self.pieces[i].eval(lo), self.pieces[i].eval(hi)])
            .collect();
        let lo = values.iter().copied().reduce(f64::min)?;
        let hi = values.iter().copied().reduce(f64::max)?;
        Some((lo, hi))
    }

    fn breakpoints(&self, domain: &IntervalUnion<f64>, shift: Option<f64>) -> Vec<f64> {
        let ov = overlaps(&self.bounds(), domain);
        let mut out = Vec::new();
        for &(i, lo, hi) in &ov {
            out.push(self.pieces[i].eval(lo));
            out.push(self.pieces[i].eval(hi));
        }
        if let Some(s) = shift {
            for &(_, lo, hi) in &ov {
                for e in [lo, hi] {
                    for x in [e - s, e + s] {
                        for &(j, lo2, hi2) in &ov {
                            if lo2 <= x && x <= hi2 {
                                out.push(self.pieces[j].eval(x));
                            }
                        }
                    }
                }
            }
        }
        out.retain(|v| v.is_finite());
        sorted_distinct(out)
    }
}

/// `slope * x + intercept` on `[from, to)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinearPiece<S> {
    pub from: S,
    pub to: S,
    pub slope: S,
    pub intercept: S,
}

impl<S: Scalar> LinearPiece<S> {
    pub fn eval(&self, x: S) -> S {
        self.slope * x + self.intercept
    }

    /// Where the line reaches level `l`.
    fn crossing(&self, lambda: S) -> S {
        (lambda - self.intercept) / self.slope
    }
}

/// A piecewise-linear function with exact level sets, used for exact
/// layer integration.
#[derive(Clone, Debug, PartialEq)]
pub struct PiecewiseLinear<S> {
    pieces: Vec<LinearPiece<S>>,
}

impl<S: Scalar> PiecewiseLinear<S> {
    pub fn new(pieces: Vec<LinearPiece<S>>) -> Result<Self> {
        let bounds: Vec<(S, S)> = pieces.iter().map(|p| (p.from, p.to)).collect();
        check_partition(&bounds)?;
        Ok(PiecewiseLinear { pieces })
    }

    /// `f(x) = x`.
    pub fn identity() -> Self {
        PiecewiseLinear {
            pieces: vec![LinearPiece { from: S::zero(), to: S::one(), slope: S::one(), intercept: S::zero() }],
        }
    }

    pub fn pieces(&self) -> &[LinearPiece<S>] {
        &self.pieces
    }

    pub fn eval(&self, x: S) -> S {
        let p = self.pieces.iter().find(|p| x < p.to).unwrap_or(&self.pieces[self.pieces.len() - 1]);
        p.eval(x)
    }

    pub fn negated(&self) -> Self {
        let pieces = self.pieces.iter().map(|p| LinearPiece { slope: -p.slope, intercept: -p.intercept, ..*p }).collect();
        PiecewiseLinear { pieces }
    }

    pub fn to_f64(&self) -> PiecewiseLinear<f64> {
        let pieces = self
            .pieces
            .iter()
            .map(|p| LinearPiece {
                from: p.from.to_f64(),
                to: p.to.to_f64(),
                slope: p.slope.to_f64(),
                intercept: p.intercept.to_f64(),
            })
            .collect();
        PiecewiseLinear { pieces }
    }

    fn bounds(&self) -> Vec<(S, S)> {
        self.pieces.iter().map(|p| (p.from, p.to)).collect()
    }
}

impl<S: Scalar> Layered<S> for PiecewiseLinear<S> {
    fn superlevel(&self, lambda: S, closed: bool, domain: &IntervalUnion<S>) -> Result<IntervalUnion<S>> {
        let above = |v: S| if closed { v >= lambda } else { v > lambda };
        let mut found = Vec::new();
        for p in &self.pieces {
            let (fl, fh) = (p.eval(p.from), p.eval(p.to));
            let zero = S::zero();
            let piece = if p.slope == zero {
                above(fl).then_some((p.from, p.to))
            } else if p.slope > zero {
                if above(fl) {
                    Some((p.from, p.to))
                } else if fh <= lambda {
                    None
                } else {
                    Some((p.crossing(lambda), p.to))
                }
            } else if above(fh) {
                Some((p.from, p.to))
            } else if fl <= lambda {
                None
            } else {
                Some((p.from, p.crossing(lambda)))
            };
            found.extend(piece);
        }
        let one = above(self.pieces[self.pieces.len() - 1].eval(S::one()));
        Ok(IntervalUnion::from_pieces(found, one).intersection(domain))
    }

    fn range(&self, domain: &IntervalUnion<S>) -> Option<(S, S)> {
        let values: Vec<S> = overlaps(&self.bounds(), domain)
            .into_iter()
            .flat_map(|(i, lo, hi)| [self.pieces[i].eval(lo), self.pieces[i].eval(hi)])
            .collect();
        let lo = values.iter().copied().reduce(S::min_of)?;
        let hi = values.iter().copied().reduce(S::max_of)?;
        Some((lo, hi))
    }

    /// Besides endpoint values: levels where a moving endpoint
    /// `t_i(l) = (l - c_i) / m_i` meets a fixed endpoint shifted by `0` or
    /// `+-s`, and where two moving endpoints are `s` apart. Between
    /// consecutive candidates every measure here is a polynomial of degree at
    /// most 2 in `l`.
    fn breakpoints(&self, domain: &IntervalUnion<S>, shift: Option<S>) -> Vec<S> {
        let mut fixed = vec![S::zero(), S::one()];
        fixed.extend(self.pieces.iter().flat_map(|p| [p.from, p.to]));
        fixed.extend(domain.endpoints());
        let offsets: Vec<S> = match shift {
            Some(s) => vec![S::zero(), s, -s],
            None => vec![S::zero()],
        };
        let mut out: Vec<S> = self.pieces.iter().flat_map(|p| [p.eval(p.from), p.eval(p.to)]).collect();
        let moving: Vec<&LinearPiece<S>> = self.pieces.iter().filter(|p| !p.slope.is_zero()).collect();
        for p in &moving {
            for e in &fixed {
                for o in &offsets {
                    out.push(p.eval(*e + *o));
                }
            }
        }
        if let Some(s) = shift {
            for (i, p) in moving.iter().enumerate() {
                for q in &moving[i + 1..] {
                    let a = S::one() / p.slope - S::one() / q.slope;
                    if a.is_zero() {
                        continue;
                    }
                    let base = p.intercept / p.slope - q.intercept / q.slope;
                    for sign in [s, -s] {
                        out.push((sign + base) / a);
                    }
                }
            }
        }
        sorted_distinct(out)
    }
}
