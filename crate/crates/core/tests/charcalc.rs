use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use integral_fourier::charcalc::*;
use integral_fourier::identities::*;
use integral_fourier::lambda::{big_t, lemma_n};
use integral_fourier::Execution;

fn v(x: Var) -> GradedPolynomial {
    GradedPolynomial::var(x)
}

fn int(n: i64) -> GradedPolynomial {
    GradedPolynomial::integer(n)
}

fn ratio(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

#[test]
fn printed_todd_denominators() {
    let c1 = v(Var::c(1));
    let c2 = v(Var::c(2));
    assert_eq!(todd_component(0, 3).unwrap(), int(1));
    assert_eq!(todd_component(1, 3).unwrap(), c1.scale(&ratio(1, 2)));
    assert_eq!(todd_component(2, 3).unwrap(), (&(&c1 * &c1) + &c2).scale(&ratio(1, 12)));
    assert_eq!(f_td(1, 3).unwrap(), c1);
    assert_eq!(f_td(2, 3).unwrap(), &(&c1 * &c1) + &c2);
    for (m, d) in [(1u32, 2i64), (2, 12), (3, 24), (4, 720)] {
        assert_eq!(big_t(m as u64), BigInt::from(d));
        assert_eq!(todd_component(m, m).unwrap().lcd(), BigInt::from(d));
    }
}

#[test]
fn chern_character_scaled() {
    let r = v(Var::Rank);
    let c1 = v(Var::cp(1));
    let c2 = v(Var::cp(2));
    assert_eq!(chern_char_component(0).unwrap(), r);
    assert_eq!(chern_char_component(2).unwrap(), &(&c1 * &c1) - &c2.scale(&ratio(2, 1)));
    assert_eq!(ch_component(2).unwrap(), (&(&c1 * &c1) - &c2.scale(&ratio(2, 1))).scale(&ratio(1, 2)));
}

#[test]
fn inverse_todd_rank_one() {
    let c1 = v(Var::c(1));
    assert_eq!(f_td_inv(3, 0).unwrap(), int(6));
    assert_eq!(f_td_inv(1, 1).unwrap(), -&c1);
    assert_eq!(f_td_inv(1, 2).unwrap(), &c1 * &c1);
}

#[test]
fn coupled_class_low_degree() {
    let r = v(Var::Rank);
    assert_eq!(f_ct(0).unwrap(), r);
    let expected = &v(Var::cp(1)).scale(&ratio(2, 1)) + &(&r * &v(Var::c(1)));
    assert_eq!(f_ct(1).unwrap(), expected);
}

#[test]
fn lemma_witnesses() {
    assert_eq!(lemma_n(3).unwrap(), 2);
    assert_eq!(lemma_n(4).unwrap(), 5);
    assert_eq!(lemma_n(7).unwrap(), 1);
}

#[test]
fn identity_examples() {
    assert!(verify_exact_seq_identity(2, 2, 4).unwrap().passed());
    assert!(verify_dual_identity(1, 1).unwrap().passed());
    assert!(verify_dual_identity(3, 5).unwrap().passed());
    assert!(verify_td_inv_identity(2, 4).unwrap().passed());
    assert!(verify_binom_identity(6).unwrap().passed());
    for r in verify_identities(2, 4, Execution::Sequential).unwrap() {
        assert!(r.passed(), "{}", r.name);
    }
}

#[test]
fn key_collapse_values() {
    for (g, t) in [(1u32, "12"), (2, "720"), (3, "60480")] {
        let r = verify_key_collapse(g, 2).unwrap();
        assert!(r.passed());
        assert_eq!(r.notes["mu0_value"], t);
    }
}

#[test]
fn pappas_quotient() {
    let r = pappas_shape_check(2, 3).unwrap();
    assert!(r.passed());
    // T_5 / 3! = 1440 / 6
    assert_eq!(big_t(5), BigInt::from(1440));
}

#[test]
fn sequential_and_parallel_reports_agree() {
    let a = verify_identities(2, 4, Execution::Sequential).unwrap();
    let b = verify_identities(2, 4, Execution::Parallel).unwrap();
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}

fn arb_poly() -> impl Strategy<Value = GradedPolynomial> {
    let var = prop_oneof![
        Just(Var::Rank),
        Just(Var::Delta),
        (1u8..5).prop_map(Var::c),
        (1u8..5).prop_map(Var::cp),
        (1u8..4, 1u8..3).prop_map(|(i, b)| Var::chern(b + 2, i)),
    ];
    let term = (prop::collection::vec((var, 1u32..4), 0..3), -50i64..50, 1i64..13);
    prop::collection::vec(term, 0..6).prop_map(|ts| {
        GradedPolynomial::from_terms(
            ts.into_iter().map(|(m, a, b)| (Monomial::from_pairs(m), BigRational::new(a.into(), b.into()))),
        )
    })
}

proptest! {
    #[test]
    fn polynomial_json_round_trip(p in arb_poly()) {
        let text = serde_json::to_string(&p).unwrap();
        let back: GradedPolynomial = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&back, &p);
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }

    #[test]
    fn ring_operations_are_consistent(p in arb_poly(), q in arb_poly()) {
        prop_assert_eq!(&(&p + &q) - &q, p.clone());
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert!((&p - &p).is_zero());
    }
}
