use std::path::PathBuf;

use serde_json::{json, Value};

use qmeasure::finite_space::{
    center_measure_check, decoherence_check, from_decoherence, grade2_check, graden_check, regularity_check,
    theorem21_check, theorem24_check, CheckConfig, DecoherenceMatrix, QMeasureTable,
};
use qmeasure::io::{parse_decoherence_matrix, parse_table};
use qmeasure::{Rational, Report};

use crate::failure::{Failure, EXIT_CHECK_FAILED};
use crate::output::Rendered;

const SUITES: &[&str] = &["grade2", "grade3", "grade4", "two-set", "regularity", "center", "complement", "decoherence"];

#[derive(clap::Args, Debug)]
pub struct Args {
    /// Measure-space JSON (`universe` + `values`) or matrix JSON (`matrix`).
    #[arg(long)]
    input: PathBuf,
    /// Comma-separated: grade2, grade3, grade4, two-set, regularity, center,
    /// complement, decoherence or all.
    #[arg(long, value_delimiter = ',', default_value = "grade2")]
    suite: Vec<String>,
    /// Absolute tolerance for float identities.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
}

enum Input {
    Table(QMeasureTable<Rational>),
    Matrix(DecoherenceMatrix<Rational>),
}

fn load(path: &PathBuf) -> Result<Input, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    let raw: Value = serde_json::from_str(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    if raw.get("matrix").is_some() {
        Ok(Input::Matrix(parse_decoherence_matrix(&text)?))
    } else {
        Ok(Input::Table(parse_table(&text)?))
    }
}

fn suites(requested: &[String], matrix: bool) -> Result<Vec<&'static str>, Failure> {
    let mut out = Vec::new();
    for name in requested {
        let name = name.trim();
        if name == "all" {
            out.extend(SUITES.iter().filter(|s| matrix || **s != "decoherence"));
            continue;
        }
        let known = SUITES.iter().find(|s| **s == name).ok_or_else(|| {
            Failure::input(format!("unknown suite {name:?}; expected one of {} or all", SUITES.join(", ")))
        })?;
        out.push(*known);
    }
    let mut seen = Vec::new();
    out.retain(|s| if seen.contains(s) { false } else { seen.push(*s); true });
    Ok(out)
}

fn table_suite(mu: &QMeasureTable<Rational>, suite: &str, cfg: &CheckConfig) -> Result<Vec<Report>, Failure> {
    Ok(match suite {
        "grade2" => vec![grade2_check(mu, cfg)],
        "grade3" => vec![graden_check(mu, 3, cfg)?],
        "grade4" => vec![graden_check(mu, 4, cfg)?],
        "two-set" => {
            let t = theorem21_check(mu, cfg);
            let mut identity = t.identity;
            identity.note(format!("grade2 verdict {}; verdicts agree: {}", t.grade2.passed, t.verdicts_agree));
            if !t.verdicts_agree {
                identity.passed = false;
            }
            vec![identity]
        }
        "regularity" => vec![regularity_check(mu, cfg)?.to_report()],
        "center" => vec![center_measure_check(mu, cfg)?],
        "complement" => vec![theorem24_check(mu, mu.total(), cfg)?.report],
        _ => unreachable!("suite names are validated"),
    })
}

fn text(reports: &[Report]) -> String {
    let mut out = String::new();
    for r in reports {
        out.push_str(&format!("{r}\n"));
        for note in &r.notes {
            out.push_str(&format!("  {note}\n"));
        }
    }
    out
}

pub fn run(args: &Args, seed: u64) -> Result<(Rendered, i32), Failure> {
    if !(args.tol > 0.0) {
        return Err(Failure::input(format!("tolerance {} must be positive", args.tol)));
    }
    let cfg = CheckConfig { tol: args.tol, seed, ..CheckConfig::default() };
    let input = load(&args.input)?;
    let suites = suites(&args.suite, matches!(input, Input::Matrix(_)))?;
    let mut reports = Vec::new();
    let table = match &input {
        Input::Table(mu) => Some(mu.clone()),
        Input::Matrix(d) => {
            if suites.contains(&"decoherence") {
                reports.push(decoherence_check(d, &cfg));
            }
            if suites.iter().any(|s| *s != "decoherence") {
                Some(from_decoherence(d, &cfg)?)
            } else {
                None
            }
        }
    };
    for suite in &suites {
        match (*suite, &table) {
            ("decoherence", _) => {
                if matches!(input, Input::Table(_)) {
                    return Err(Failure::input("the decoherence suite needs a matrix input"));
                }
            }
            (s, Some(mu)) => reports.extend(table_suite(mu, s, &cfg)?),
            (_, None) => {}
        }
    }
    let passed = reports.iter().all(|r| r.passed);
    let json = json!({
        "input": args.input.display().to_string(),
        "passed": passed,
        "reports": reports,
    });
    let mut rows = vec![["check", "passed", "cases", "exhaustive", "witness"].map(String::from).to_vec()];
    for r in &reports {
        let witness = r.witness.as_ref().map_or(String::new(), |w| {
            let sets: Vec<String> = w.sets.iter().map(|s| s.to_string()).collect();
            [sets.join(" "), w.detail.clone()].iter().filter(|s| !s.is_empty()).cloned().collect::<Vec<_>>().join(" ")
        });
        rows.push(vec![r.check.clone(), r.passed.to_string(), r.cases.to_string(), r.exhaustive.to_string(), witness]);
    }
    let code = if passed { 0 } else { EXIT_CHECK_FAILED };
    Ok((Rendered { json, rows, text: text(&reports) }, code))
}
