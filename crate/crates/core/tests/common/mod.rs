#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRng, TestRunner};

use torus_mirror::theta::{family, Family, FamilyIndex};
use torus_mirror::torus::{phi_vertex_check, AffineMap, SymplecticCharacter};
use torus_mirror::{Rational, Scalar, Series};

pub type Check = std::result::Result<(), TestCaseError>;

pub fn rational(n: i64) -> Rational {
    Rational::from_int(n)
}

/// Small sparse series with valuation in [-6, 10) and at least 4 known terms.
pub fn series() -> impl Strategy<Value = Series> {
    (-6i64..10, prop::collection::vec(-4i64..=4, 0..10), 4i64..16).prop_map(|(v, cs, extra)| {
        let len = cs.len() as i64;
        let terms = cs.into_iter().enumerate().map(|(i, c)| (v + i as i64, rational(c)));
        Series::from_terms(terms, v + len.max(1) + extra)
    })
}

/// A series whose leading term is known, so it can be inverted.
pub fn unit_series() -> impl Strategy<Value = Series> {
    (
        -6i64..10,
        prop::sample::select(vec![-3i64, -2, -1, 1, 2, 3]),
        prop::collection::vec(-4i64..=4, 0..8),
        1i64..12,
    )
        .prop_map(|(v, lead, tail, extra)| {
            let t = v + 1 + tail.len() as i64 + extra;
            let terms = tail.into_iter().enumerate().map(|(i, c)| (v + 1 + i as i64, rational(c)));
            Series::from_terms(std::iter::once((v, rational(lead))).chain(terms), t)
        })
}

pub fn canonical(s: &Series) -> bool {
    let len = s.coefficients().len() as i64;
    if s.is_zero() {
        return len == 0 && s.valuation() == s.truncation();
    }
    len == s.truncation() - s.valuation()
        && s.leading_coefficient().is_some_and(|c| *c != rational(0))
}

pub fn affine_generator() -> impl Strategy<Value = AffineMap<Rational>> {
    prop_oneof![
        Just(AffineMap::identity()),
        Just(AffineMap::gamma()),
        Just(AffineMap::rho()),
        (-5i64..5).prop_map(AffineMap::rho_power),
        (0i64..9).prop_map(AffineMap::phi),
    ]
}

pub fn affine_map() -> impl Strategy<Value = AffineMap<Rational>> {
    prop::collection::vec(affine_generator(), 1..5).prop_map(|maps| {
        maps.iter()
            .fold(AffineMap::identity(), |acc, m| acc.compose(m))
    })
}

pub fn ring_axioms(a: &Series, b: &Series, c: &Series) -> Check {
    prop_assert!((a + b).eq_joint(&(b + a)));
    prop_assert!((a * b).eq_joint(&(b * a)));
    prop_assert!((&(a + b) + c).eq_joint(&(a + &(b + c))));
    prop_assert!((&(a * b) * c).eq_joint(&(a * &(b * c))));
    prop_assert!((a * &(b + c)).eq_joint(&(&(a * b) + &(a * c))));
    prop_assert!((a + &-a).is_zero());
    Ok(())
}

pub fn precision_soundness(a: &Series, b: &Series, cut_a: i64, cut_b: i64) -> Check {
    let a_low = a.truncated(a.truncation() - cut_a);
    let b_low = b.truncated(b.truncation() - cut_b);
    for (high, low) in [(a + b, &a_low + &b_low), (a - b, &a_low - &b_low), (a * b, &a_low * &b_low)] {
        prop_assert!(high.truncation() >= low.truncation());
        prop_assert!(high.eq_to_order(&low, low.truncation()).unwrap());
    }
    Ok(())
}

pub fn inverse_soundness(u: &Series, cut: i64) -> Check {
    let low = u.truncated((u.truncation() - cut).max(u.valuation() + 1));
    let (hi, lo) = (u.inv().unwrap(), low.inv().unwrap());
    prop_assert!(hi.truncation() >= lo.truncation());
    prop_assert!(hi.eq_to_order(&lo, lo.truncation()).unwrap());
    Ok(())
}

pub fn canonical_outputs(a: &Series, b: &Series, n: u32) -> Check {
    let outputs = [a + b, a - b, a * b, -a, a.pow(n), a.truncated(a.truncation() - 2), a.scale(&rational(0))];
    for s in &outputs {
        prop_assert!(canonical(s), "not canonical: {:?}", s);
    }
    if let Ok(inv) = a.inv() {
        prop_assert!(canonical(&inv));
    }
    Ok(())
}

pub fn two_sided_inverse(u: &Series) -> Check {
    let inv = u.inv().unwrap();
    let left = &inv * u;
    let right = u * &inv;
    prop_assert!(left.truncation() > 0);
    prop_assert!(left.eq_joint(&Series::one(left.truncation())));
    prop_assert!(right.eq_joint(&Series::one(right.truncation())));
    Ok(())
}

pub fn family_symmetry(k: i64, truncation: i64) -> Check {
    for f in [Family::A, Family::B, Family::C, Family::D] {
        let s = family::<Rational>(FamilyIndex::new(f, k), truncation);
        let mirrored = family::<Rational>(FamilyIndex::new(f, f.period() - k), truncation);
        prop_assert_eq!(&s, &mirrored);
        prop_assert!(s.valuation() >= 0);
        prop_assert!(s.terms().all(|(_, c)| c.is_integer()));
    }
    Ok(())
}

pub fn character_multiplicative(f: &AffineMap<Rational>, g: &AffineMap<Rational>) -> Check {
    let cf = f.symplectic_character().unwrap().sign();
    let cg = g.symplectic_character().unwrap().sign();
    let cfg = f.compose(g).symplectic_character().unwrap().sign();
    prop_assert_eq!(cfg, cf * cg);
    Ok(())
}

pub fn gamma_cubed_is_rho() -> bool {
    let g = AffineMap::<Rational>::gamma();
    g.compose(&g).compose(&g) == AffineMap::rho()
}

pub fn phi_is_anti_symplectic(k: i64) -> bool {
    AffineMap::<Rational>::phi(k).symplectic_character().ok() == Some(SymplecticCharacter::AntiSymplectic)
        && phi_vertex_check::<Rational>(k)
}

/// Runs every property with a fixed-seed runner; returns the failures.
pub fn run_property_suite(cases: u32) -> Vec<String> {
    let mut failures = Vec::new();
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    let mut record = |name: &str, outcome: std::result::Result<(), String>| {
        if let Err(e) = outcome {
            failures.push(format!("{name}: {e}"));
        }
    };
    let runner = || TestRunner::new_with_rng(config.clone(), TestRng::deterministic_rng(config.rng_algorithm));

    record(
        "ring axioms",
        runner()
            .run(&(series(), series(), series()), |(a, b, c)| ring_axioms(&a, &b, &c))
            .map_err(|e| e.to_string()),
    );
    record(
        "precision soundness",
        runner()
            .run(&(series(), series(), 0i64..6, 0i64..6), |(a, b, x, y)| precision_soundness(&a, &b, x, y))
            .map_err(|e| e.to_string()),
    );
    record(
        "inverse precision soundness",
        runner()
            .run(&(unit_series(), 0i64..6), |(u, c)| inverse_soundness(&u, c))
            .map_err(|e| e.to_string()),
    );
    record(
        "canonical form",
        runner()
            .run(&(series(), series(), 0u32..4), |(a, b, n)| canonical_outputs(&a, &b, n))
            .map_err(|e| e.to_string()),
    );
    record(
        "two-sided inverse",
        runner().run(&unit_series(), |u| two_sided_inverse(&u)).map_err(|e| e.to_string()),
    );
    record(
        "family symmetry",
        runner()
            .run(&(-80i64..160, 100i64..1200), |(k, t)| family_symmetry(k, t))
            .map_err(|e| e.to_string()),
    );
    record(
        "character multiplicativity",
        runner()
            .run(&(affine_map(), affine_map()), |(f, g)| character_multiplicative(&f, &g))
            .map_err(|e| e.to_string()),
    );
    if !gamma_cubed_is_rho() {
        failures.push("gamma^3 != rho".into());
    }
    if let Some(k) = (-20..40).find(|&k| !phi_is_anti_symplectic(k)) {
        failures.push(format!("phi({k}) is not an anti-symplectic vertex map"));
    }
    failures
}
