//! Command-line front end.
//!
//! Orders are given in `x`-units (`x = y^4`) and converted internally.
//! Exit status: 0 when every check passes, 1 when a check fails, 2 on
//! precision or usage errors.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fukaya::{
    associativity_between, commutativity_holds, degree2_invertibility, monomial_name,
    StructureConstants, CUBIC_BASIS,
};
use crate::mirror::{mirror_map_check, required_truncation, MirrorReport};
use crate::relation::{
    expanded_matrix, kernel_dimension_certificate, kernel_report_unchecked, structure_table_checks, ClosedForms,
    STRUCTURE_TABLE,
};
use crate::series::{LaurentSeries, SeriesRecord, Y_PER_X};
use crate::theta::{ab_decomposition, family, mumford_identity_check, Family, FamilyIndex};
use crate::torus::oracle_comparisons;
use crate::{Rational, Scalar};

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "torus-mirror", version, about = "Mirror map of the two-torus from Fukaya products")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print a theta series A_k, B_k, C_k or D_k.
    Theta {
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[arg(long, allow_hyphen_values = true)]
        index: i64,
        #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(i64).range(1..))]
        order_x: i64,
    },
    /// Run one family of verifications.
    Verify {
        #[arg(value_enum)]
        which: Verification,
        #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(i64).range(1..))]
        order_x: i64,
    },
    /// Compare the j-invariant from the Hesse relation with the Eisenstein j.
    Jcheck {
        #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(i64).range(1..))]
        order_x: i64,
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u64).range(1..))]
        terms: u64,
    },
    /// Print the closed-form layout of the cubic structure matrix and its entries.
    Matrix {
        #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(i64).range(1..))]
        order_x: i64,
    },
    /// Print the cubic relation extracted from the kernel.
    Relation {
        #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(i64).range(1..))]
        order_x: i64,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Verification {
    Products,
    Commutativity,
    Associativity,
    Mumford,
    Oracle,
    Matrix,
    Relation,
}

fn parse_family(s: &str) -> std::result::Result<Family, String> {
    s.parse::<Family>().map_err(|e| e.to_string())
}

/// Rendered output and exit status of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_PASS };
            let text = e.render().to_string();
            return if code == EXIT_PASS {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let format = cli.format;
    let result = execute(&cli.command, format);
    let (code, body) = match result {
        Ok(done) => done,
        Err(e) => {
            let body = match format {
                Format::Text => format!("error: {e}\n"),
                Format::Json => render_json(&json!({
                    "schema_version": SCHEMA_VERSION,
                    "error": e.to_string(),
                })),
            };
            return Outcome {
                code: EXIT_ERROR,
                stdout: if format == Format::Json { body.clone() } else { String::new() },
                stderr: if format == Format::Text { body } else { String::new() },
            };
        }
    };
    if let Some(path) = &cli.output {
        if let Err(e) = std::fs::write(path, &body) {
            return Outcome {
                code: EXIT_ERROR,
                stdout: String::new(),
                stderr: format!("error: cannot write {}: {e}\n", path.display()),
            };
        }
        return Outcome { code, stdout: String::new(), stderr: String::new() };
    }
    Outcome { code, stdout: body, stderr: String::new() }
}

fn execute(command: &Command, format: Format) -> Result<(i32, String)> {
    match *command {
        Command::Theta { family: fam, index, order_x } => cmd_theta(fam, index, order_x, format),
        Command::Verify { which, order_x } => {
            let checks = cmd_verify(which, order_x)?;
            Ok(render_checks(which, order_x, &checks, format))
        }
        Command::Jcheck { order_x, terms } => {
            let report = cmd_jcheck(order_x, terms as usize)?;
            Ok(render_jcheck(order_x, &report, format))
        }
        Command::Matrix { order_x } => Ok((EXIT_PASS, cmd_matrix(order_x, format))),
        Command::Relation { order_x } => cmd_relation(order_x, format),
    }
}

fn y_order(order_x: i64) -> i64 {
    order_x * Y_PER_X
}

fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values always serialize");
    s.push('\n');
    s
}

/// The series in x when possible, otherwise in y.
fn series_record(s: &LaurentSeries<Rational>) -> SeriesRecord {
    match s.rebase_to_x() {
        Ok(x) => x.to_record(),
        Err(_) => s.to_record(),
    }
}

fn series_text(s: &LaurentSeries<Rational>) -> String {
    match s.rebase_to_x() {
        Ok(x) => x.to_string(),
        Err(_) => s.to_string(),
    }
}

fn cmd_theta(fam: Family, index: i64, order_x: i64, format: Format) -> Result<(i32, String)> {
    let idx = FamilyIndex::new(fam, index);
    let s = family::<Rational>(idx, y_order(order_x));
    let record = series_record(&s);
    let body = match format {
        Format::Text => format!("{idx} = {}\n", series_text(&s)),
        Format::Json => render_json(&json!({
            "schema_version": SCHEMA_VERSION,
            "command": "theta",
            "family": fam.to_string(),
            "index": idx.index(),
            "order_x": order_x,
            "x_expressible": record.base == crate::ExponentBase::X,
            "series": record,
        })),
    };
    Ok((EXIT_PASS, body))
}

/// One named pass/fail line of a verification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubCheck {
    pub name: String,
    pub pass: bool,
}

impl SubCheck {
    fn new(name: impl Into<String>, pass: bool) -> Self {
        Self { name: name.into(), pass }
    }
}

/// Runs the requested verification at `order_x` and returns every sub-check.
pub fn cmd_verify(which: Verification, order_x: i64) -> Result<Vec<SubCheck>> {
    let t = y_order(order_x);
    let consts = StructureConstants::<Rational>::new(t);
    let mut checks = Vec::new();
    match which {
        Verification::Products => {
            for i in 0..3 {
                for j in 0..3 {
                    let n = consts.product_xx(i, j).coefficients.len();
                    checks.push(SubCheck::new(format!("X_{i} X_{j} has 2 distinct Y terms"), n == 2));
                }
            }
            for i in 0..6 {
                for j in 0..3 {
                    let n = consts.product_yx(i, j).coefficients.len();
                    checks.push(SubCheck::new(format!("Y_{i} X_{j} has 3 distinct Z terms"), n == 3));
                }
            }
            let xx = |i, j, pairs: &[(i64, i64)]| {
                let p = consts.product_xx(i, j);
                pairs.iter().all(|&(y, a)| p.coefficient(y).is_some_and(|c| c.eq_joint(consts.a(a))))
            };
            let yx = |i, j, pairs: &[(i64, i64)]| {
                let p = consts.product_yx(i, j);
                pairs.iter().all(|&(z, b)| p.coefficient(z).is_some_and(|c| c.eq_joint(consts.b(b))))
            };
            checks.push(SubCheck::new("X_0 X_1 = A_1 Y_1 + A_2 Y_4", xx(0, 1, &[(1, 1), (4, 2)])));
            checks.push(SubCheck::new("X_0^2 = A_0 Y_0 + A_3 Y_3", xx(0, 0, &[(0, 0), (3, 3)])));
            checks.push(SubCheck::new(
                "Y_1 X_1 = B_1 Z_2 + B_7 Z_5 + B_13 Z_8",
                yx(1, 1, &[(2, 1), (5, 7), (8, 13)]),
            ));
            checks.push(SubCheck::new("Y_1 X_2 contains B_3 Z_3", yx(1, 2, &[(3, 3)])));
            for a in 0..6 {
                for b in 0..18 {
                    let d = ab_decomposition::<Rational>(a, b, t);
                    checks.push(SubCheck::new(format!("A_{a} B_{b} = sum C D"), d.equal));
                }
            }
            let invertible = degree2_invertibility::<Rational>(t)?;
            checks.push(SubCheck::new("degree-two products span the Y basis", invertible));
        }
        Verification::Commutativity => {
            for i in 0..3 {
                for j in 0..3 {
                    let ok = consts.product_xx(i, j).agrees_with(&consts.product_xx(j, i));
                    checks.push(SubCheck::new(format!("X_{i} X_{j} = X_{j} X_{i}"), ok));
                }
            }
            checks.push(SubCheck::new("all pairs", commutativity_holds(&consts)));
        }
        Verification::Associativity => {
            for i in 0..3 {
                for j in 0..3 {
                    for k in 0..3 {
                        let ok = associativity_between(&consts, &consts, i, j, k);
                        checks.push(SubCheck::new(format!("(X_{i} X_{j}) X_{k} = X_{i} (X_{j} X_{k})"), ok));
                    }
                }
            }
            for (label, ok) in z_relations(&consts) {
                checks.push(SubCheck::new(label, ok));
            }
        }
        Verification::Mumford => {
            for a in 0..6 {
                for b in 0..18 {
                    let ok = mumford_identity_check::<Rational>(a, b, 6, 3, t)?;
                    checks.push(SubCheck::new(format!("addition formula a={a} b={b} n=6 k=3"), ok));
                }
            }
        }
        Verification::Oracle => {
            let comparisons = oracle_comparisons::<Rational>(&Rational::from_int(1), t)?;
            // one line per (configuration, base vertex)
            let mut grouped: Vec<(String, bool)> = Vec::new();
            for c in comparisons {
                let name = format!("triangles {} based at {}", c.configuration, c.base);
                match grouped.iter_mut().find(|(n, _)| *n == name) {
                    Some((_, ok)) => *ok &= c.matches,
                    None => grouped.push((name, c.matches)),
                }
            }
            checks.extend(grouped.into_iter().map(|(n, ok)| SubCheck::new(n, ok)));
        }
        Verification::Matrix => {
            let entries = structure_table_checks(&consts);
            for (col, monomial) in CUBIC_BASIS.iter().enumerate() {
                let ok = entries.iter().filter(|e| e.col == col).all(|e| e.consistent);
                checks.push(SubCheck::new(
                    format!("column {} ({}) matches the closed-form table", col, monomial_name(monomial)),
                    ok,
                ));
            }
        }
        Verification::Relation => {
            let forms = ClosedForms::from_constants(&consts);
            let matrix = expanded_matrix(&consts);
            let report = kernel_report_unchecked(&matrix, &forms)?;
            checks.push(SubCheck::new("u = v", report.u_equals_v));
            checks.push(SubCheck::new("signed minors 3..8 vanish", report.minors_vanish_off_support));
            checks.push(SubCheck::new(
                "signed minors proportional to ((p+q)u - 2qv, pv - qu, pv - qu, 0, ..., 2q^2 - pq - p^2)",
                report.minors_proportional,
            ));
            checks.push(SubCheck::new(
                "closed form = (p - q)(u, u, u, 0, ..., 0, -(p + 2q))",
                report.factorization_holds,
            ));
            checks.push(SubCheck::new("M a = 0", report.residual_vanishes));
            checks.push(SubCheck::new("relation has Hesse form", report.relation.has_hesse_form()));
            checks.push(SubCheck::new("rank 9 certificate", kernel_dimension_certificate(&matrix)?));
        }
    }
    Ok(checks)
}

/// The three Z-coefficient identities behind `(X_0^2) X_1 = X_0 (X_0 X_1)`.
pub fn z_relations(c: &StructureConstants<Rational>) -> Vec<(String, bool)> {
    let ab = |a: i64, b: i64, a2: i64, b2: i64| c.a(a) * c.b(b) + c.a(a2) * c.b(b2);
    vec![
        ("A_0B_2 + A_3B_7 = A_1B_1 + A_2B_8".to_string(), ab(0, 2, 3, 7).eq_joint(&ab(1, 1, 2, 8))),
        ("A_0B_8 + A_3B_1 = A_1B_5 + A_2B_4".to_string(), ab(0, 8, 3, 1).eq_joint(&ab(1, 5, 2, 4))),
        ("A_0B_4 + A_3B_5 = A_1B_7 + A_2B_2".to_string(), ab(0, 4, 3, 5).eq_joint(&ab(1, 7, 2, 2))),
    ]
}

fn render_checks(which: Verification, order_x: i64, checks: &[SubCheck], format: Format) -> (i32, String) {
    let passed = checks.iter().filter(|c| c.pass).count();
    let verdict = passed == checks.len();
    let code = if verdict { EXIT_PASS } else { EXIT_CHECK_FAILED };
    let name = which.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
    let body = match format {
        Format::Text => {
            let mut s = String::new();
            for c in checks {
                let _ = writeln!(s, "{} {}", if c.pass { "PASS" } else { "FAIL" }, c.name);
            }
            let _ = writeln!(s, "{name}: {passed}/{} pass at order x^{order_x}", checks.len());
            s
        }
        Format::Json => render_json(&json!({
            "schema_version": SCHEMA_VERSION,
            "command": "verify",
            "which": name,
            "order_x": order_x,
            "checks": checks,
            "passed": passed,
            "total": checks.len(),
            "verdict": verdict,
        })),
    };
    (code, body)
}

/// Checks the precision budget, then runs the mirror map comparison.
pub fn cmd_jcheck(order_x: i64, n_terms: usize) -> Result<MirrorReport> {
    let required = required_truncation(n_terms);
    if y_order(order_x) < required {
        let needed_x = (required + Y_PER_X - 1) / Y_PER_X;
        return Err(Error::InvalidArgument(format!(
            "--order-x {order_x} cannot certify {n_terms} coefficients of j; \
             use --order-x {needed_x} or more"
        )));
    }
    mirror_map_check::<Rational>(y_order(order_x), n_terms)
}

fn render_jcheck(order_x: i64, report: &MirrorReport, format: Format) -> (i32, String) {
    let code = if report.verdict { EXIT_PASS } else { EXIT_CHECK_FAILED };
    let body = match format {
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "{:>8}  {:>24}  {:>24}  match", "x^e", "from relation", "Eisenstein");
            for r in &report.coefficients {
                let _ = writeln!(
                    s,
                    "{:>8}  {:>24}  {:>24}  {}",
                    r.exponent_x,
                    integer_text(&r.from_relation),
                    integer_text(&r.reference),
                    if r.matches { "yes" } else { "NO" }
                );
            }
            let _ = writeln!(s, "support on multiples of x^36: {}", pass_text(report.support_ok));
            let _ = writeln!(s, "integral coefficients: {}", pass_text(report.integral));
            let _ = writeln!(s, "verdict: {}", pass_text(report.verdict));
            s
        }
        Format::Json => render_json(&json!({
            "schema_version": SCHEMA_VERSION,
            "command": "jcheck",
            "order_x": order_x,
            "terms": report.coefficients.len(),
            "coefficients": report.coefficients,
            "support_ok": report.support_ok,
            "integral": report.integral,
            "verdict": report.verdict,
        })),
    };
    (code, body)
}

fn integer_text(fraction: &str) -> &str {
    fraction.strip_suffix("/1").unwrap_or(fraction)
}

fn pass_text(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

const ENTRY_FORMULAS: [(&str, &str); 7] = [
    ("p", "A_0B_0 + A_3B_9"),
    ("q", "A_0B_6 + A_3B_3"),
    ("r", "A_0B_2 + A_3B_7"),
    ("s", "A_0B_8 + A_3B_1"),
    ("t", "A_0B_4 + A_3B_5"),
    ("u", "A_2B_0 + A_1B_9"),
    ("v", "A_2B_6 + A_1B_3"),
];

fn cmd_matrix(order_x: i64, format: Format) -> String {
    let consts = StructureConstants::<Rational>::new(y_order(order_x));
    let forms = ClosedForms::from_constants(&consts);
    let series = [&forms.p, &forms.q, &forms.r, &forms.s, &forms.t, &forms.u, &forms.v];
    let table: Vec<Vec<String>> = STRUCTURE_TABLE
        .iter()
        .map(|row| row.iter().map(ToString::to_string).collect())
        .collect();
    match format {
        Format::Text => {
            let mut s = String::new();
            let header: Vec<String> = CUBIC_BASIS.iter().map(|m| monomial_name(m)).collect();
            let _ = writeln!(s, "columns: {}", header.join(", "));
            for (r, row) in table.iter().enumerate() {
                let _ = writeln!(s, "Z_{r}: {}", row.join(" "));
            }
            for ((name, formula), value) in ENTRY_FORMULAS.iter().zip(series) {
                let _ = writeln!(s, "{name} = {formula} = {}", series_text(value));
            }
            s
        }
        Format::Json => {
            let entries: serde_json::Map<String, Value> = ENTRY_FORMULAS
                .iter()
                .zip(series)
                .map(|((name, formula), value)| {
                    (
                        name.to_string(),
                        json!({ "formula": formula, "series": series_record(value) }),
                    )
                })
                .collect();
            render_json(&json!({
                "schema_version": SCHEMA_VERSION,
                "command": "matrix",
                "order_x": order_x,
                "columns": CUBIC_BASIS.iter().map(|m| monomial_name(m)).collect::<Vec<_>>(),
                "table": table,
                "entries": entries,
            }))
        }
    }
}

fn cmd_relation(order_x: i64, format: Format) -> Result<(i32, String)> {
    let consts = StructureConstants::<Rational>::new(y_order(order_x));
    let forms = ClosedForms::from_constants(&consts);
    let report = kernel_report_unchecked(&expanded_matrix(&consts), &forms)?;
    let code = if report.all_pass() { EXIT_PASS } else { EXIT_CHECK_FAILED };
    let rel = &report.relation;
    let body = match format {
        Format::Text => {
            let mut s = String::from("relation: a_0 X_0^3 + a_1 X_1^3 + a_2 X_2^3 + a_9 X_0X_1X_2 = 0\n");
            for (i, (a, m)) in rel.coefficients.iter().zip(CUBIC_BASIS).enumerate() {
                let _ = writeln!(s, "a_{i} [{}] = {}", monomial_name(&m), series_text(a));
            }
            let _ = writeln!(s, "checks: {}", pass_text(report.all_pass()));
            s
        }
        Format::Json => render_json(&json!({
            "schema_version": SCHEMA_VERSION,
            "command": "relation",
            "order_x": order_x,
            "monomials": CUBIC_BASIS.iter().map(|m| monomial_name(m)).collect::<Vec<_>>(),
            "coefficients": rel.coefficients.iter().map(series_record).collect::<Vec<_>>(),
            "verdict": report.all_pass(),
        })),
    };
    Ok((code, body))
}
