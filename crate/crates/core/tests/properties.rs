mod common;

use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_axioms_hold_to_joint_precision(a in series(), b in series(), c in series()) {
        ring_axioms(&a, &b, &c)?;
    }

    #[test]
    fn refining_inputs_keeps_known_coefficients(a in series(), b in series(), x in 0i64..6, y in 0i64..6) {
        precision_soundness(&a, &b, x, y)?;
    }

    #[test]
    fn refining_inputs_keeps_inverse_coefficients(u in unit_series(), cut in 0i64..6) {
        inverse_soundness(&u, cut)?;
    }

    #[test]
    fn outputs_are_canonical(a in series(), b in series(), n in 0u32..4) {
        canonical_outputs(&a, &b, n)?;
    }

    #[test]
    fn inverse_is_two_sided(u in unit_series()) {
        two_sided_inverse(&u)?;
    }

    #[test]
    fn theta_families_are_symmetric(k in -80i64..160, t in 100i64..1200) {
        family_symmetry(k, t)?;
    }

    #[test]
    fn symplectic_character_is_multiplicative(f in affine_map(), g in affine_map()) {
        character_multiplicative(&f, &g)?;
    }

    #[test]
    fn phi_reverses_orientation_and_permutes_vertices(k in -50i64..50) {
        prop_assert!(phi_is_anti_symplectic(k));
    }
}

#[test]
fn gamma_cubed() {
    assert!(gamma_cubed_is_rho());
}
