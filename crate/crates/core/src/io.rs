//! JSON schemas and the function/measure mini-language used by the CLI.
//!
//! Numbers are read exactly: JSON numbers and strings such as `"0.75"` or
//! `"9/16"` both become [`Rational`](crate::Rational)s.

use num_complex::Complex;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::finite_space::{DecoherenceMatrix, PairMeasureMatrix, QMeasureTable};
use crate::q_integral::FiniteFunction;
use crate::real_line::{LinearPiece, PiecewiseLinear, PiecewiseMonotone, RealQMeasure};
use crate::scalar::{format_sig12, Scalar};
use crate::subset::{SubsetMask, Universe};

/// Parse a JSON number or numeric string exactly.
pub fn parse_value<S: Scalar>(v: &Value) -> Result<S> {
    match v {
        Value::String(s) => S::parse_number(s),
        Value::Number(n) => S::parse_number(&n.to_string()),
        other => Err(Error::parse(format!("expected a number, found {other}"))),
    }
}

/// Render a scalar for output: `p/q` for exact values, 12 significant
/// digits otherwise.
pub fn render<S: Scalar>(x: S) -> String {
    if S::EXACT {
        x.to_string()
    } else {
        format_sig12(x.to_f64())
    }
}

#[derive(Deserialize)]
struct RawTable {
    universe: Vec<String>,
    values: Vec<RawEntry>,
}

#[derive(Deserialize)]
struct RawEntry {
    set: SubsetMask,
    mu: Value,
}

/// `{"universe": [...], "values": [{"set": [0, 2], "mu": "9/16"}, ...]}`
/// listing every subset exactly once.
pub fn parse_table<S: Scalar>(text: &str) -> Result<QMeasureTable<S>> {
    let raw: RawTable = serde_json::from_str(text)?;
    let universe = Universe::new(raw.universe)?;
    let mut values: Vec<Option<S>> = vec![None; universe.subset_count()];
    for entry in &raw.values {
        universe.check_subset(entry.set)?;
        let slot = &mut values[entry.set.index()];
        if slot.is_some() {
            return Err(Error::parse(format!("subset {} listed twice", universe.describe(entry.set))));
        }
        *slot = Some(parse_value(&entry.mu)?);
    }
    let values = values
        .into_iter()
        .enumerate()
        .map(|(i, v)| v.ok_or_else(|| Error::parse(format!("missing subset {}", universe.describe(SubsetMask(i as u32))))))
        .collect::<Result<Vec<S>>>()?;
    QMeasureTable::new(universe, values)
}

pub fn table_to_json<S: Scalar>(mu: &QMeasureTable<S>) -> Value {
    let values: Vec<Value> = mu.universe().subsets().map(|a| json!({"set": a, "mu": render(mu.mu(a))})).collect();
    json!({"universe": mu.universe().labels(), "values": values})
}

fn universe_for(raw: &Value, n: usize) -> Result<Universe> {
    match raw.get("universe") {
        Some(u) => {
            let labels: Vec<String> = serde_json::from_value(u.clone())?;
            let universe = Universe::new(labels)?;
            if universe.len() != n {
                return Err(Error::DimensionMismatch { expected: universe.len(), found: n });
            }
            Ok(universe)
        }
        None => Universe::numbered(n),
    }
}

fn matrix_rows(raw: &Value) -> Result<&Vec<Value>> {
    raw.get("matrix").and_then(Value::as_array).ok_or_else(|| Error::parse("expected {\"matrix\": [[...], ...]}"))
}

fn parse_complex<S: Scalar>(v: &Value) -> Result<Complex<S>> {
    match v {
        Value::Object(map) => {
            let part = |k: &str| map.get(k).map_or(Ok(S::zero()), parse_value);
            Ok(Complex::new(part("re")?, part("im")?))
        }
        other => Ok(Complex::new(parse_value(other)?, S::zero())),
    }
}

fn parse_rows<T>(rows: &[Value], entry: impl Fn(&Value) -> Result<T>) -> Result<Vec<Vec<T>>> {
    rows.iter()
        .map(|row| {
            row.as_array().ok_or_else(|| Error::parse("matrix rows must be arrays"))?.iter().map(&entry).collect()
        })
        .collect()
}

/// `{"matrix": [[...], ...]}` with real entries, optionally with a
/// `"universe"` of labels.
pub fn parse_pair_matrix<S: Scalar>(text: &str) -> Result<PairMeasureMatrix<S>> {
    let raw: Value = serde_json::from_str(text)?;
    let rows = matrix_rows(&raw)?;
    let entries = parse_rows(rows, parse_value)?;
    PairMeasureMatrix::new(universe_for(&raw, entries.len())?, entries)
}

/// `{"matrix": [[...], ...]}` with entries that are numbers or
/// `{"re": .., "im": ..}`.
pub fn parse_decoherence_matrix<S: Scalar>(text: &str) -> Result<DecoherenceMatrix<S>> {
    let raw: Value = serde_json::from_str(text)?;
    let rows = matrix_rows(&raw)?;
    let entries = parse_rows(rows, parse_complex)?;
    DecoherenceMatrix::new(universe_for(&raw, entries.len())?, entries)
}

/// `{"values": ["2", "1", "1", "0"]}` in the universe's label order.
pub fn parse_function<S: Scalar>(text: &str, universe: &Universe) -> Result<FiniteFunction<S>> {
    let raw: Value = serde_json::from_str(text)?;
    let values = raw.get("values").and_then(Value::as_array).ok_or_else(|| Error::parse("expected {\"values\": [...]}"))?;
    let values = values.iter().map(parse_value).collect::<Result<Vec<S>>>()?;
    FiniteFunction::new(universe.clone(), values)
}

/// `qlebesgue`, `lebesgue`, `destructive` (shift 3/4) or `destructive:s`.
pub fn parse_real_measure<S: Scalar>(spec: &str) -> Result<RealQMeasure<S>> {
    match spec.trim() {
        "qlebesgue" => Ok(RealQMeasure::QLebesgue),
        "lebesgue" => Ok(RealQMeasure::Lebesgue),
        "destructive" => Ok(RealQMeasure::destructive_default()),
        other => match other.strip_prefix("destructive:") {
            Some(s) => {
                let s = S::parse_number(s)?;
                if s <= S::zero() || s >= S::one() {
                    return Err(Error::parse(format!("shift {s} must lie in (0, 1)")));
                }
                Ok(RealQMeasure::DestructiveShift(s))
            }
            None => Err(Error::parse(format!("unknown measure {other:?}"))),
        },
    }
}

fn parse_pieces<S: Scalar>(text: &str) -> Result<Vec<LinearPiece<S>>> {
    let raw: Value = serde_json::from_str(text)?;
    let items = raw.as_array().ok_or_else(|| Error::parse("piecewise: expected a JSON array"))?;
    items
        .iter()
        .map(|item| {
            let field = |k: &str| {
                item.get(k).ok_or_else(|| Error::parse(format!("piecewise: missing {k:?}"))).and_then(parse_value::<S>)
            };
            Ok(LinearPiece { from: field("from")?, to: field("to")?, slope: field("slope")?, intercept: field("intercept")? })
        })
        .collect()
}

fn parse_indicator<S: Scalar>(rest: &str) -> Result<(S, S, S)> {
    let (range, height) = rest.split_once(':').ok_or_else(|| Error::parse("indicator:a,b:height"))?;
    let (a, b) = range.split_once(',').ok_or_else(|| Error::parse("indicator:a,b:height"))?;
    Ok((S::parse_number(a)?, S::parse_number(b)?, S::parse_number(height)?))
}

/// `x`, `x^n`, `exp`, `x^2+x`, `const:c`, `indicator:a,b:height` or
/// `piecewise:[{"from":..,"to":..,"slope":..,"intercept":..}, ...]`.
pub fn parse_real_function(spec: &str) -> Result<PiecewiseMonotone> {
    let spec = spec.trim();
    match spec {
        "x" => return Ok(PiecewiseMonotone::monomial(1)),
        "exp" => return Ok(PiecewiseMonotone::exp()),
        "x^2+x" => return Ok(PiecewiseMonotone::square_plus_x()),
        _ => {}
    }
    if let Some(n) = spec.strip_prefix("x^") {
        let n: u32 = n.parse().map_err(|_| Error::parse(format!("bad exponent in {spec:?}")))?;
        return Ok(PiecewiseMonotone::monomial(n));
    }
    if let Some(c) = spec.strip_prefix("const:") {
        return Ok(PiecewiseMonotone::constant(f64::parse_number(c)?));
    }
    if let Some(rest) = spec.strip_prefix("indicator:") {
        let (a, b, h) = parse_indicator::<f64>(rest)?;
        return PiecewiseMonotone::indicator(a, b, h);
    }
    if let Some(rest) = spec.strip_prefix("piecewise:") {
        return PiecewiseMonotone::linear(&parse_pieces::<f64>(rest)?);
    }
    Err(Error::parse(format!("unknown function {spec:?}")))
}

/// The piecewise-linear subset of the mini-language, read exactly: `x`,
/// `const:c`, `indicator:a,b:height` and `piecewise:[...]`.
pub fn parse_linear_function<S: Scalar>(spec: &str) -> Result<PiecewiseLinear<S>> {
    let spec = spec.trim();
    let (zero, one) = (S::zero(), S::one());
    let constant = |from: S, to: S, c: S| LinearPiece { from, to, slope: zero, intercept: c };
    if spec == "x" || spec == "x^1" {
        return Ok(PiecewiseLinear::identity());
    }
    if let Some(c) = spec.strip_prefix("const:") {
        return PiecewiseLinear::new(vec![constant(zero, one, S::parse_number(c)?)]);
    }
    if let Some(rest) = spec.strip_prefix("indicator:") {
        let (a, b, h) = parse_indicator::<S>(rest)?;
        if !(zero <= a && a < b && b <= one) {
            return Err(Error::InvalidInterval(format!("[{a}, {b}]")));
        }
        let mut pieces = Vec::new();
        if a > zero {
            pieces.push(constant(zero, a, zero));
        }
        pieces.push(constant(a, b, h));
        if b < one {
            pieces.push(constant(b, one, zero));
        }
        return PiecewiseLinear::new(pieces);
    }
    if let Some(rest) = spec.strip_prefix("piecewise:") {
        return PiecewiseLinear::new(parse_pieces(rest)?);
    }
    Err(Error::parse(format!("{spec:?} has no exact piecewise-linear form")))
}
