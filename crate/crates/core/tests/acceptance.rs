//! One line per acceptance criterion; exits nonzero if any fails.

mod common;

use std::time::{Duration, Instant};

use torus_mirror::cli::{cmd_jcheck, cmd_verify, SubCheck, Verification};
use torus_mirror::fukaya::StructureConstants;
use torus_mirror::relation::{
    kernel_dimension_certificate, kernel_report, structure_matrix, structure_table_checks,
};
use torus_mirror::theta::{a_series, b_series};
use torus_mirror::torus::{oracle_comparisons, triangle_oracle, TriangleBin};
use torus_mirror::{Rational, Scalar, Series};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const J_COEFFICIENTS: [(i64, i64); 5] = [
    (-36, 1),
    (0, 744),
    (36, 196884),
    (72, 21493760),
    (108, 864299970),
];

fn q(n: i64, d: i64) -> Rational {
    Rational::from_fraction(n, d)
}

fn j_expansion() -> Outcome {
    let start = Instant::now();
    let report = cmd_jcheck(200, 5).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let known: Vec<(i64, String)> = J_COEFFICIENTS
        .iter()
        .map(|&(e, c)| (e, Rational::from_int(c).to_fraction_string()))
        .collect();
    let got: Vec<(i64, String)> = report
        .coefficients
        .iter()
        .map(|r| (r.exponent_x, r.from_relation.clone()))
        .collect();
    if got != known {
        return Err(format!("coefficients {got:?}"));
    }
    if !report.verdict || report.coefficients.iter().any(|r| r.reference != r.from_relation) {
        return Err("disagrees with the Eisenstein reference".into());
    }
    if elapsed > Duration::from_secs(60) {
        return Err(format!("took {elapsed:.1?}"));
    }
    Ok(format!("1, 744, 196884, 21493760, 864299970 at order x^200 in {elapsed:.1?}"))
}

fn theta_expansions() -> Outcome {
    let x_terms = |exps: &[i64]| {
        Series::from_terms(exps.iter().map(|&e| (4 * e, Rational::from_int(1))), 1600)
    };
    let a1 = a_series::<Rational>(1, 1600);
    let b1 = b_series::<Rational>(1, 1600);
    let expected_a = x_terms(&[3, 75, 147, 363]);
    let expected_b = x_terms(&[1, 289, 361]);
    let ok_a = a1.eq_to_order(&expected_a, 1600).map_err(|e| e.to_string())?;
    let ok_b = b1.eq_to_order(&expected_b, 1600).map_err(|e| e.to_string())?;
    let x_ok = a1.rebase_to_x().is_ok() && b1.rebase_to_x().is_ok();
    match (ok_a, ok_b, x_ok) {
        (true, true, true) => Ok("A_1 = x^3 + x^75 + x^147 + x^363, B_1 = x + x^289 + x^361 through x^400".into()),
        _ => Err(format!("A_1 = {}, B_1 = {}", a1.rebase_to_x().map(|s| s.to_string()).unwrap_or_default(), b1)),
    }
}

fn oracle_equivalence() -> Outcome {
    let t = 1000;
    let comparisons = oracle_comparisons::<Rational>(&Rational::from_int(1), t).map_err(|e| e.to_string())?;
    let failed: Vec<&str> = comparisons.iter().filter(|c| !c.matches).map(|c| c.label.as_str()).collect();
    if !failed.is_empty() {
        return Err(format!("mismatched bins: {failed:?}"));
    }
    let mixed = comparisons.iter().filter(|c| c.configuration == "(0,3,9)").count();
    // X_0 X_1 -> Y_1 carries A_1; Y_1 X_1 -> Z_2 carries B_1.
    let xx = triangle_oracle(&q(0, 1), &q(3, 1), &q(6, 1), t).map_err(|e| e.to_string())?;
    let yx = triangle_oracle(&q(1, 6), &q(6, 1), &q(9, 1), t).map_err(|e| e.to_string())?;
    let smallest_xx = xx.get(&TriangleBin::new(q(1, 3), q(1, 6))).map(Series::valuation);
    let smallest_yx = yx.get(&TriangleBin::new(q(1, 3), q(2, 9))).map(Series::valuation);
    if smallest_xx != Some(12) || smallest_yx != Some(4) {
        return Err(format!("minimal exponents {smallest_xx:?} and {smallest_yx:?}"));
    }
    Ok(format!(
        "{} bins exact to y^{t} ({mixed} mixed-slope), minimal exponents 12 and 4",
        comparisons.len()
    ))
}

fn all_pass(which: Verification, order_x: i64) -> Result<Vec<SubCheck>, String> {
    let checks = cmd_verify(which, order_x).map_err(|e| e.to_string())?;
    match checks.iter().find(|c| !c.pass) {
        Some(c) => Err(format!("{} failed", c.name)),
        None => Ok(checks),
    }
}

fn identity_suite() -> Outcome {
    let order_x = 250;
    let mumford = all_pass(Verification::Mumford, order_x)?;
    let products = all_pass(Verification::Products, order_x)?;
    let assoc = all_pass(Verification::Associativity, order_x)?;
    let comm = all_pass(Verification::Commutativity, order_x)?;
    let decompositions = products.iter().filter(|c| c.name.ends_with("= sum C D")).count();
    let triples = assoc.iter().filter(|c| c.name.starts_with("(X_")).count();
    let z_relations = assoc.len() - triples;
    let counts = (mumford.len(), decompositions, z_relations, triples);
    if counts != (108, 108, 3, 27) {
        return Err(format!("unexpected check counts {counts:?}"));
    }
    Ok(format!(
        "mumford 108, decomposition 108, Z relations 3, associativity 27, commutativity {} at y^1000",
        comm.len()
    ))
}

fn relation_extraction() -> Outcome {
    let t = 800;
    let consts = StructureConstants::<Rational>::new(t);
    if let Some(bad) = structure_table_checks(&consts).iter().find(|e| !e.consistent) {
        return Err(format!("entry ({}, {}) disagrees with the table", bad.row, bad.col));
    }
    let sm = structure_matrix::<Rational>(t).map_err(|e| e.to_string())?;
    let report = kernel_report(&sm.matrix, &sm.forms).map_err(|e| e.to_string())?;
    let certified = kernel_dimension_certificate(&sm.matrix).map_err(|e| e.to_string())?;
    if !(report.all_pass() && report.relation.has_hesse_form() && certified) {
        return Err("kernel checks failed".into());
    }
    Ok(format!("M matches the table, u = v, minors 3..8 vanish, (p - q) a, M a = 0, rank 9 at y^{t}"))
}

fn property_suite() -> Outcome {
    let failures = common::run_property_suite(256);
    if failures.is_empty() {
        Ok("ring axioms, precision, canonical form, inverse, symmetries, phi, gamma^3 = rho".into())
    } else {
        Err(failures.join("; "))
    }
}

fn main() {
    let criteria: [Criterion; 6] = [
        ("j-expansion", j_expansion),
        ("theta expansions", theta_expansions),
        ("oracle equivalence", oracle_equivalence),
        ("identity suite", identity_suite),
        ("relation extraction", relation_extraction),
        ("property suite", property_suite),
    ];
    let mut failed = 0;
    for (n, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("[PASS] criterion {}: {name}: {detail}", n + 1),
            Err(why) => {
                failed += 1;
                println!("[FAIL] criterion {}: {name}: {why}", n + 1);
            }
        }
    }
    println!("acceptance: {}/{} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
