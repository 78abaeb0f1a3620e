use serde_json::{json, Map, Value};

use qmeasure::io::{parse_real_function, render};
use qmeasure::real_line::{
    exp_integral_closed, monomial_integral_closed, q_integral_real, quantum_ftc_check, IntervalUnion, PiecewiseMonotone,
    RealQMeasure,
};
use qmeasure::Scalar;

use crate::failure::Failure;
use crate::output::Rendered;

#[derive(clap::Args, Debug)]
pub struct Args {
    #[command(subcommand)]
    sweep: Sweep,
}

#[derive(clap::Subcommand, Debug)]
enum Sweep {
    /// `int_[0,y] x^n dmu` under q-Lebesgue measure against `2 y^(n+2) / ((n+1)(n+2))`.
    Monomial {
        /// Exponents: a list `0,2,5` or an inclusive range `0..6`.
        #[arg(long, default_value = "0..6")]
        n: String,
        #[arg(long, default_value = "1/4,1/2,3/4,1")]
        y: String,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// `int_[0,y] e^x dmu` under q-Lebesgue measure against `2(e^y - y - 1)`.
    Exp {
        #[arg(long, default_value = "1/2,1")]
        y: String,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Half second differences of `y -> int_[0,y] f dmu` against `f(y)`.
    Ftc {
        #[arg(long, default_value = "x^2")]
        function: String,
        /// Step sizes.
        #[arg(long, default_value = "1e-1,1e-2,1e-3")]
        h: String,
        #[arg(long, default_value = "1/2")]
        y: String,
        /// Quadrature tolerance for each integral.
        #[arg(long, default_value_t = 1e-12)]
        quad_tol: f64,
    },
}

fn list(spec: &str) -> Result<Vec<f64>, Failure> {
    spec.split(',').map(str::trim).filter(|s| !s.is_empty()).map(|s| Ok(f64::parse_number(s)?)).collect()
}

fn exponents(spec: &str) -> Result<Vec<u32>, Failure> {
    let bad = || Failure::input(format!("bad exponent list {spec:?}"));
    if let Some((a, b)) = spec.split_once("..") {
        let (a, b): (u32, u32) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
        return Ok((a..=b).collect());
    }
    spec.split(',').map(str::trim).filter(|s| !s.is_empty()).map(|s| s.parse().map_err(|_| bad())).collect()
}

fn positive(name: &str, x: f64) -> Result<(), Failure> {
    if x > 0.0 {
        Ok(())
    } else {
        Err(Failure::input(format!("{name} {x} must be positive")))
    }
}

fn unit(y: f64) -> Result<(), Failure> {
    if (0.0..=1.0).contains(&y) {
        Ok(())
    } else {
        Err(Failure::input(format!("y = {y} is not in [0, 1]")))
    }
}

fn rows(params: &[&str], data: Vec<(Vec<String>, f64, f64)>) -> Rendered {
    let mut header: Vec<String> = params.iter().map(|s| s.to_string()).collect();
    header.extend(["computed", "closed_form", "abs_error"].map(String::from));
    let mut table = vec![header.clone()];
    let mut records = Vec::new();
    for (p, computed, closed) in data {
        let mut row = p;
        row.extend([render(computed), render(closed), render((computed - closed).abs())]);
        let record: Map<String, Value> = header.iter().cloned().zip(row.iter().cloned().map(Value::String)).collect();
        records.push(Value::Object(record));
        table.push(row);
    }
    Rendered::table(json!(records), table)
}

pub fn run(args: &Args) -> Result<(Rendered, i32), Failure> {
    let mu = RealQMeasure::QLebesgue;
    let rendered = match &args.sweep {
        Sweep::Monomial { n, y, tol } => {
            positive("tolerance", *tol)?;
            let (ns, ys) = (exponents(n)?, list(y)?);
            let mut data = Vec::new();
            for &n in &ns {
                for &y in &ys {
                    unit(y)?;
                    let q = q_integral_real(&mu, &PiecewiseMonotone::monomial(n), &IntervalUnion::closed(0.0, y)?, *tol)?;
                    data.push((vec![n.to_string(), render(y)], q.value, monomial_integral_closed(n, y)));
                }
            }
            rows(&["n", "y"], data)
        }
        Sweep::Exp { y, tol } => {
            positive("tolerance", *tol)?;
            let mut data = Vec::new();
            for y in list(y)? {
                unit(y)?;
                let q = q_integral_real(&mu, &PiecewiseMonotone::exp(), &IntervalUnion::closed(0.0, y)?, *tol)?;
                data.push((vec![render(y)], q.value, exp_integral_closed(y)));
            }
            rows(&["y"], data)
        }
        Sweep::Ftc { function, h, y, quad_tol } => {
            positive("quadrature tolerance", *quad_tol)?;
            let f = parse_real_function(function)?;
            let ys = list(y)?;
            let mut data = Vec::new();
            for h in list(h)? {
                positive("step", h)?;
                let report = quantum_ftc_check(&f, &ys, h, *quad_tol, f64::INFINITY)?;
                for p in report.points {
                    data.push((vec![function.clone(), render(h), render(p.y)], p.half_second_difference, p.f));
                }
            }
            rows(&["function", "h", "y"], data)
        }
    };
    Ok((rendered, 0))
}
