use serde_json::json;

use qmeasure::io::{parse_linear_function, parse_real_function, parse_real_measure, render};
use qmeasure::real_line::quadrature::DEFAULT_BUDGET;
use qmeasure::real_line::{q_integral_layered, q_integral_piecewise_linear, IntervalUnion};
use qmeasure::{Rational, Scalar};

use crate::failure::Failure;
use crate::output::Rendered;

#[derive(clap::Args, Debug)]
pub struct Args {
    /// `qlebesgue`, `lebesgue`, `destructive` or `destructive:s`.
    #[arg(long, default_value = "qlebesgue")]
    measure: String,
    /// `x`, `x^n`, `exp`, `x^2+x`, `const:c`, `indicator:a,b:height` or `piecewise:[...]`.
    #[arg(long)]
    function: String,
    /// Closed interval `a,b` inside [0, 1].
    #[arg(long, default_value = "0,1")]
    domain: String,
    /// Quadrature tolerance.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Maximum number of layer evaluations.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    /// Integrate piecewise-linear functions exactly in rational arithmetic.
    #[arg(long)]
    exact: bool,
}

pub fn parse_domain<S: Scalar>(spec: &str) -> Result<IntervalUnion<S>, Failure> {
    let (a, b) = spec.split_once(',').ok_or_else(|| Failure::input(format!("domain {spec:?} is not of the form a,b")))?;
    let (a, b) = (S::parse_number(a)?, S::parse_number(b)?);
    if a < S::zero() || b > S::one() {
        return Err(Failure::input(format!("domain [{a}, {b}] is not inside [0, 1]")));
    }
    Ok(IntervalUnion::closed(a, b)?)
}

fn record(value: String, error_estimate: String, evaluations: usize, measure: String, function: &str) -> Rendered {
    let json = json!({
        "value": value,
        "error_estimate": error_estimate,
        "evaluations": evaluations,
        "measure": measure,
        "function": function,
    });
    let header = ["value", "error_estimate", "evaluations", "measure", "function"].map(String::from).to_vec();
    let row = vec![value, error_estimate, evaluations.to_string(), measure, function.to_string()];
    let text = header.iter().zip(&row).map(|(k, v)| format!("{k} = {v}\n")).collect();
    Rendered { json, rows: vec![header, row], text }
}

pub fn run(args: &Args) -> Result<(Rendered, i32), Failure> {
    if !(args.tol > 0.0) {
        return Err(Failure::input(format!("tolerance {} must be positive", args.tol)));
    }
    if args.exact {
        let mu = parse_real_measure::<Rational>(&args.measure)?;
        let f = parse_linear_function::<Rational>(&args.function)?;
        let domain = parse_domain::<Rational>(&args.domain)?;
        let value = q_integral_piecewise_linear(&mu, &f, &domain)?;
        return Ok((record(render(value), "0".into(), 0, mu.to_string(), &args.function), 0));
    }
    let mu = parse_real_measure::<f64>(&args.measure)?;
    let f = parse_real_function(&args.function)?;
    let domain = parse_domain::<f64>(&args.domain)?;
    let r = q_integral_layered(&mu, &f, &f.negated(), &domain, args.tol, args.budget)?;
    Ok((record(render(r.value), render(r.error_estimate), r.evaluations, mu.to_string(), &args.function), 0))
}
