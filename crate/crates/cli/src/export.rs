use qmeasure::finite_space::{examples, QMeasureTable};
use qmeasure::io::table_to_json;
use qmeasure::Rational;

use crate::failure::Failure;
use crate::output::Rendered;

#[derive(clap::Args, Debug)]
pub struct Args {
    /// `quantum-coin`, `three-point`, `destructive:m,n` or `cube:n`.
    name: String,
}

fn count(s: &str) -> Result<usize, Failure> {
    s.trim().parse().map_err(|_| Failure::input(format!("bad count {s:?}")))
}

fn build(name: &str) -> Result<QMeasureTable<Rational>, Failure> {
    match name {
        "quantum-coin" => Ok(examples::quantum_coin()),
        "three-point" => Ok(examples::three_point()),
        _ => {
            if let Some(rest) = name.strip_prefix("destructive:") {
                let (m, n) = rest.split_once(',').ok_or_else(|| Failure::input("destructive:m,n"))?;
                let (m, n) = (count(m)?, count(n)?);
                return Ok(qmeasure::finite_space::from_destructive_pairs(m, n)?);
            }
            if let Some(n) = name.strip_prefix("cube:") {
                let n = count(n)?;
                if n > qmeasure::subset::MAX_POINTS {
                    return Err(Failure::input(format!("cube:{n} exceeds {} points", qmeasure::subset::MAX_POINTS)));
                }
                return Ok(examples::cube_table(n));
            }
            Err(Failure::input(format!("unknown space {name:?}")))
        }
    }
}

pub fn run(args: &Args) -> Result<(Rendered, i32), Failure> {
    let mu = build(&args.name)?;
    let json = table_to_json(&mu);
    let mut rows = vec![vec!["set".to_string(), "mu".to_string()]];
    for a in mu.universe().subsets() {
        rows.push(vec![mu.universe().describe(a), mu.mu(a).to_string()]);
    }
    Ok((Rendered::table(json, rows), 0))
}
