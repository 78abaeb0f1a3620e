use serde_json::json;

use qmeasure::finite_space::examples;
use qmeasure::io::render;
use qmeasure::q_integral::{
    convergence_failure_demo, grade2_integral_counterexample, naive_integral, q_integral, FiniteFunction,
};
use qmeasure::real_line::{
    q_integral_piecewise_linear, q_integral_real, quantum_ftc_check, IntervalUnion, PiecewiseLinear, PiecewiseMonotone,
    RealQMeasure, FTC_QUAD_TOL, FTC_STEP, FTC_TOL,
};
use qmeasure::{Rational, Scalar};

use crate::failure::{Failure, EXIT_TOLERANCE};
use crate::output::Rendered;

pub const DEMOS: &[&str] = &[
    "quantum-coin",
    "naive-failure",
    "grade2-integral-gap",
    "destructive-shift",
    "radon-nikodym",
    "ftc",
    "surprise-additivity",
];

#[derive(clap::Args, Debug)]
pub struct Args {
    /// One of the named demos, or `all`.
    name: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Verdict {
    Match,
    Mismatch,
    MismatchAsExpected,
}

impl Verdict {
    fn as_str(self) -> &'static str {
        match self {
            Verdict::Match => "match",
            Verdict::Mismatch => "mismatch",
            Verdict::MismatchAsExpected => "mismatch-as-expected",
        }
    }
}

struct Row {
    demo: &'static str,
    quantity: String,
    computed: String,
    reference: String,
    verdict: Verdict,
}

struct Demo {
    name: &'static str,
    rows: Vec<Row>,
}

impl Demo {
    fn new(name: &'static str) -> Self {
        Demo { name, rows: Vec::new() }
    }

    fn push(&mut self, quantity: impl Into<String>, computed: String, reference: String, verdict: Verdict) {
        self.rows.push(Row { demo: self.name, quantity: quantity.into(), computed, reference, verdict });
    }

    fn exact(&mut self, quantity: impl Into<String>, computed: Rational, reference: Rational) {
        let v = if computed == reference { Verdict::Match } else { Verdict::Mismatch };
        self.push(quantity, computed.to_string(), reference.to_string(), v);
    }

    fn approx(&mut self, quantity: impl Into<String>, computed: f64, reference: f64, tol: f64) {
        let v = if (computed - reference).abs() <= tol { Verdict::Match } else { Verdict::Mismatch };
        self.push(quantity, render(computed), render(reference), v);
    }

    /// Two quantities that must differ.
    fn differ(&mut self, quantity: impl Into<String>, left: Rational, right: Rational) {
        let v = if left != right { Verdict::MismatchAsExpected } else { Verdict::Mismatch };
        self.push(quantity, left.to_string(), right.to_string(), v);
    }
}

fn r(p: i128, q: i128) -> Rational {
    Rational::new(p, q)
}

fn quantum_coin() -> Result<Demo, Failure> {
    let mut d = Demo::new("quantum-coin");
    let mu = examples::quantum_coin();
    let u = mu.universe().clone();
    d.exact("mu({x1,x2,x3})", mu.mu(u.subset(&["x1", "x2", "x3"])?), r(9, 16));
    d.exact("mu(x1)", mu.mu(u.subset(&["x1"])?), r(1, 16));
    d.exact("mu({x2,x3})", mu.mu(u.subset(&["x2", "x3"])?), r(1, 4));
    let heads = FiniteFunction::new(u, [2, 1, 1, 0].map(Rational::from_i64).to_vec())?;
    d.exact("int heads dmu", q_integral(&mu, &heads)?, r(5, 8));
    d.exact("N int heads dmu", naive_integral(&mu, &heads)?, r(3, 8));
    Ok(d)
}

fn naive_failure() -> Result<Demo, Failure> {
    let mut d = Demo::new("naive-failure");
    let c = convergence_failure_demo(100);
    let formula_holds = c.naive.iter().enumerate().filter(|(i, v)| **v == r(2, 1) - r(1, *i as i128 + 1)).count();
    d.exact("n with N int f_n = 2 - 1/n (n = 1..100)", Rational::from_i64(formula_holds as i64), r(100, 1));
    d.exact("N int f_1", c.naive[0], r(1, 1));
    d.exact("N int f_100", c.naive[99], r(199, 100));
    d.exact("lim N int f_n", c.naive_limit, r(2, 1));
    d.exact("N int 1", c.naive_of_limit, r(1, 1));
    d.differ("lim N int f_n vs N int 1", c.naive_limit, c.naive_of_limit);
    d.exact("int f_100", c.q[99], c.q_of_limit);
    d.exact("int 1", c.q_of_limit, r(1, 1));
    Ok(d)
}

fn grade2_gap() -> Result<Demo, Failure> {
    let mut d = Demo::new("grade2-integral-gap");
    let g = grade2_integral_counterexample();
    d.exact("int (f+g+h) dmu", g.left, r(5, 4));
    d.exact("six-term right side", g.right, r(3, 2));
    d.differ("left vs right", g.left, g.right);
    Ok(d)
}

fn destructive_shift() -> Result<Demo, Failure> {
    let mut d = Demo::new("destructive-shift");
    let mu = RealQMeasure::<Rational>::destructive_default();
    let closed = |a, b| IntervalUnion::closed(a, b);
    d.exact("mu([0,1])", mu.measure(&closed(r(0, 1), r(1, 1))?)?, r(1, 2));
    let ends = closed(r(0, 1), r(1, 4))?.union(&closed(r(3, 4), r(1, 1))?);
    d.exact("mu([0,1/4] u [3/4,1])", mu.measure(&ends)?, r(0, 1));
    d.exact("mu([0,1/4])", mu.measure(&closed(r(0, 1), r(1, 4))?)?, r(1, 4));
    let exact = q_integral_piecewise_linear(&mu, &PiecewiseLinear::identity(), &closed(r(0, 1), r(1, 1))?)?;
    d.exact("int x dmu (exact layers)", exact, r(7, 16));
    let q = q_integral_real(
        &RealQMeasure::destructive_default(),
        &PiecewiseMonotone::monomial(1),
        &IntervalUnion::closed(0.0, 1.0)?,
        1e-9,
    )?;
    d.approx("int x dmu (quadrature)", q.value, 7.0 / 16.0, 1e-6);
    Ok(d)
}

fn radon_nikodym() -> Result<Demo, Failure> {
    let mut d = Demo::new("radon-nikodym");
    let rn = qmeasure::induced::radon_nikodym_counterexample();
    let ac = if rn.absolutely_continuous { Verdict::Match } else { Verdict::Mismatch };
    d.push("nu << mu", rn.absolutely_continuous.to_string(), "true".into(), ac);
    for (i, forced) in rn.forced.iter().enumerate().skip(1) {
        let computed = forced.unwrap_or(Rational::from_i64(-1));
        d.exact(format!("forced f(x{})", i + 1), computed, r(1, 1));
    }
    d.exact("nu({x2,x3})", rn.nu_pair, r(2, 1));
    d.exact("int_{x2,x3} f dmu", rn.integral_pair, r(1, 1));
    d.differ("nu({x2,x3}) vs int_{x2,x3} f dmu", rn.nu_pair, rn.integral_pair);
    d.exact("grid densities tried", Rational::from_i64(rn.grid_candidates as i64), r(31 * 31 * 31, 1));
    d.exact("grid densities reproducing nu", Rational::from_i64(rn.grid_matches as i64), r(0, 1));
    Ok(d)
}

fn ftc() -> Result<Demo, Failure> {
    let mut d = Demo::new("ftc");
    let grid = [0.2, 0.4, 0.6, 0.8];
    for f in [PiecewiseMonotone::monomial(1), PiecewiseMonotone::monomial(2), PiecewiseMonotone::exp()] {
        let report = quantum_ftc_check(&f, &grid, FTC_STEP, FTC_QUAD_TOL, FTC_TOL)?;
        for p in &report.points {
            d.approx(format!("(1/2) F''({}) for f = {}", p.y, f.name()), p.half_second_difference, p.f, FTC_TOL);
        }
    }
    Ok(d)
}

fn surprise_additivity() -> Result<Demo, Failure> {
    let mut d = Demo::new("surprise-additivity");
    for y in [0.5, 1.0] {
        let domain = IntervalUnion::closed(0.0, y)?;
        let q = q_integral_real(&RealQMeasure::QLebesgue, &PiecewiseMonotone::square_plus_x(), &domain, 1e-10)?;
        d.approx(format!("int_[0,{y}] (x^2+x) dmu"), q.value, y.powi(4) / 6.0 + y.powi(3) / 3.0, 1e-6);
    }
    Ok(d)
}

fn build(name: &str) -> Result<Demo, Failure> {
    match name {
        "quantum-coin" => quantum_coin(),
        "naive-failure" => naive_failure(),
        "grade2-integral-gap" => grade2_gap(),
        "destructive-shift" => destructive_shift(),
        "radon-nikodym" => radon_nikodym(),
        "ftc" => ftc(),
        "surprise-additivity" => surprise_additivity(),
        _ => Err(Failure::input(format!("unknown demo {name:?}; expected one of {} or all", DEMOS.join(", ")))),
    }
}

pub fn run(args: &Args) -> Result<(Rendered, i32), Failure> {
    let names: Vec<&str> = if args.name == "all" { DEMOS.to_vec() } else { vec![args.name.as_str()] };
    let demos = names.iter().map(|n| build(n)).collect::<Result<Vec<_>, _>>()?;
    let rows: Vec<&Row> = demos.iter().flat_map(|d| &d.rows).collect();
    let ok = rows.iter().all(|r| r.verdict != Verdict::Mismatch);

    let json = json!({
        "demos": demos.iter().map(|d| json!({
            "name": d.name,
            "rows": d.rows.iter().map(|r| json!({
                "quantity": r.quantity,
                "computed": r.computed,
                "reference": r.reference,
                "verdict": r.verdict.as_str(),
            })).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "passed": ok,
    });
    let mut table = vec![["demo", "quantity", "computed", "reference", "verdict"].map(String::from).to_vec()];
    table.extend(rows.iter().map(|r| {
        vec![r.demo.to_string(), r.quantity.clone(), r.computed.clone(), r.reference.clone(), r.verdict.as_str().into()]
    }));
    let mut text = String::new();
    for d in &demos {
        text.push_str(&format!("{}\n", d.name));
        for r in &d.rows {
            text.push_str(&format!("  {}: {} vs {}: {}\n", r.quantity, r.computed, r.reference, r.verdict.as_str()));
        }
    }
    let rendered = Rendered { json, rows: table, text };
    Ok((rendered, if ok { 0 } else { EXIT_TOLERANCE }))
}
