//! Randomized round-trip and algebraic properties complementing the
//! deterministic sweeps: parser/printer round trips and profile invariants
//! on arbitrary inputs.

use std::collections::HashMap;

use proptest::prelude::*;

use hypergeo_core::linalg::RatMat;
use hypergeo_core::poly::{difference_profile, parse_poly, IntPoly};
use hypergeo_core::witness::{eval_word, parse_word};

proptest! {
    /// Printing a polynomial and parsing it back is the identity.
    #[test]
    fn poly_display_roundtrip(coeffs in proptest::collection::vec(-50i64..=50, 1..10)) {
        let p = IntPoly::from_i64(&coeffs);
        let reparsed = parse_poly(&p.to_string()).unwrap();
        prop_assert_eq!(p, reparsed);
    }

    /// A degree-4 palindromic difference always yields a consistent profile:
    /// symmetric coefficients, k at the valuation, and the leading
    /// coefficient reappearing at position k.
    #[test]
    fn difference_profile_invariants(a1 in -20i64..=20, a2 in -20i64..=20,
                                     b1 in -20i64..=20, b2 in -20i64..=20) {
        prop_assume!(a1 != b1 || a2 != b2);
        let f = IntPoly::from_i64(&[1, a1, a2, a1, 1]);
        let g = IntPoly::from_i64(&[1, b1, b2, b1, 1]);
        let profile = difference_profile(&f, &g).unwrap();
        prop_assert_eq!(profile.k, profile.r);
        prop_assert_eq!(profile.r + profile.d, 4);
        prop_assert_eq!(profile.h.coeff(profile.k), profile.c.clone());
        for j in 0..=4usize {
            prop_assert_eq!(profile.h.coeff(j), profile.h.coeff(4 - j));
        }
    }

    /// Printing a word and parsing it back evaluates to the same matrix.
    #[test]
    fn word_display_roundtrip(word in word_strategy()) {
        let parsed = parse_word(&word).unwrap();
        let reparsed = parse_word(&parsed.to_string()).unwrap();
        let env = sample_env();
        prop_assert_eq!(
            eval_word(&parsed, &env).unwrap(),
            eval_word(&reparsed, &env).unwrap()
        );
    }
}

/// Random well-formed word text over A and B with exponents, groups, and
/// commutators up to depth 2.
fn word_strategy() -> impl Strategy<Value = String> {
    let sym = (prop_oneof!(Just("A"), Just("B")), -3i64..=3)
        .prop_filter("nonzero exponent", |(_, e)| *e != 0)
        .prop_map(|(s, e)| if e == 1 { s.to_string() } else { format!("{s}^{e}") });
    let leaf = proptest::collection::vec(sym, 1..4).prop_map(|atoms| atoms.join(" "));
    leaf.prop_recursive(2, 8, 3, |inner| {
        prop_oneof![
            inner.clone(),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("[{a},{b}]")),
            (inner, -3i64..=3)
                .prop_filter("nonzero exponent", |(_, e)| *e != 0)
                .prop_map(|(w, e)| format!("({w})^{e}")),
        ]
    })
}

fn sample_env() -> HashMap<String, RatMat> {
    let mut env = HashMap::new();
    env.insert(
        "A".to_string(),
        RatMat::from_i64(&[&[1, 1], &[0, 1]]),
    );
    env.insert(
        "B".to_string(),
        RatMat::from_i64(&[&[1, 0], &[3, 1]]),
    );
    env
}
