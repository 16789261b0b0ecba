use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use integral_fourier::sl2::*;
use integral_fourier::Execution;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn basis_vector(dim: usize, i: usize) -> Vec<BigRational> {
    let mut v = vec![BigRational::zero(); dim];
    v[i] = BigRational::one();
    v
}

#[test]
fn standard_representation_matrices() {
    let st = sym_power(1, 1, default_ring(1)).unwrap();
    // basis (x_{-1}, x_1): e sends x_{-1} to x_1, f sends x_1 to x_{-1}
    assert_eq!(st.e(-1).to_rows(), vec![vec![q(1)]]);
    assert_eq!(st.f(1).to_rows(), vec![vec![q(1)]]);
    assert!(st.satisfies_relations().unwrap());

    let s2 = sym_power(2, 2, default_ring(2)).unwrap();
    assert_eq!(s2.e(-2).to_rows(), vec![vec![q(2)]]);
    assert_eq!(s2.e(0).to_rows(), vec![vec![q(1)]]);

    let s0 = sym_power(0, 2, default_ring(2)).unwrap();
    assert!(s0.e(0).is_zero() && s0.f(0).is_zero());
}

#[test]
fn dual_of_sym2_is_sym2() {
    let s2 = sym_power(2, 2, default_ring(2)).unwrap();
    let d = s2.dual();
    assert_eq!(d.dual(), s2);
    assert!(d.satisfies_relations().unwrap());
    assert!(sym_power(1, 1, default_ring(1)).unwrap().dual().satisfies_relations().unwrap());
    // a certified φ: Sym^2 ⊗ Λ → dual is the isomorphism
    let dec = decompose(&d, Execution::Sequential).unwrap();
    assert_eq!(dec.support(), vec![2]);
    assert_eq!(dec.multiplicities()[2], Multiplicity::normalized(1, &[]));
    assert!(verify_decomposition(&d, &dec).unwrap().passed());
}

#[test]
fn sym2_decomposes_to_itself() {
    let s2 = sym_power(2, 2, default_ring(2)).unwrap();
    let dec = decompose(&s2, Execution::Sequential).unwrap();
    let json = serde_json::to_value(dec.to_json()).unwrap();
    let nonzero = json["components"].as_array().unwrap();
    assert_eq!(nonzero.len(), 1);
    assert_eq!(nonzero[0]["n"], 2);
    assert_eq!(nonzero[0]["freeRank"], 1);
}

#[test]
fn torsion_standard_representation() {
    let st5 = sym_power(1, 2, default_ring(2)).unwrap().tensor_cyclic(Some((5, 1)), 1).unwrap();
    let dec = decompose(&st5, Execution::Sequential).unwrap();
    assert_eq!(dec.support(), vec![1]);
    assert_eq!(dec.multiplicities()[1], Multiplicity::normalized(0, &[(5, 1, 1)]));
    assert!(verify_decomposition(&st5, &dec).unwrap().passed());
}

#[test]
fn scrambled_mixed_sum_recovers_multiplicities() {
    let ring = default_ring(2);
    let v = sym_power(0, 2, ring.clone())
        .unwrap()
        .direct_sum(&sym_power(2, 2, ring.clone()).unwrap())
        .unwrap()
        .direct_sum(&sym_power(1, 2, ring).unwrap().tensor_cyclic(Some((5, 2)), 1).unwrap())
        .unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (scrambled, _) = v.scrambled(&mut rng).unwrap();
    assert!(scrambled.satisfies_relations().unwrap());
    let dec = decompose(&scrambled, Execution::Sequential).unwrap();
    let got: Vec<_> = dec.multiplicities();
    assert_eq!(
        got,
        vec![
            Multiplicity::normalized(1, &[]),
            Multiplicity::normalized(0, &[(5, 2, 1)]),
            Multiplicity::normalized(1, &[]),
        ]
    );
}

#[test]
fn flek_values() {
    for n in 1..=6 {
        assert_eq!(flek_coefficient(n, n, 1).unwrap(), BigInt::from(n));
        let nf: BigInt = (1..=n).map(BigInt::from).product();
        assert_eq!(flek_coefficient(n, n, n).unwrap(), &nf * &nf);
        for k in 0..n {
            assert!(flek_coefficient(n, k, k + 1).unwrap().is_zero());
        }
    }
    assert!(verify_flek(&sym_power(3, 3, default_ring(3)).unwrap(), 3).unwrap().passed());
}

#[test]
fn flek_on_direct_sum() {
    let ring = default_ring(2);
    let v = sym_power(1, 2, ring.clone()).unwrap().direct_sum(&sym_power(2, 2, ring).unwrap()).unwrap();
    let r = verify_flek(&v, 2).unwrap();
    assert!(r.passed(), "{:?}", r.notes);
    for n in 1..=2u32 {
        let (k, _) = kernel_of(&v, &v.f(n as i32), n as i32, n as i32 - 2).unwrap();
        assert_eq!(k.cols(), 0, "V_{n}[f] should vanish");
    }
}

#[test]
fn homogeneous_split_examples() {
    let st = sym_power(1, 1, default_ring(1)).unwrap();
    let w: Element = [(-1, vec![q(1)]), (1, vec![q(1)])].into_iter().collect();
    let parts = homogeneous_split(&st, &[w]).unwrap();
    let weights: Vec<i32> = parts.iter().flat_map(|p| p.keys().copied()).collect();
    assert_eq!(weights, vec![-1, 1]);

    assert!(homogeneous_split(&st, &[]).unwrap().is_empty());

    let s2 = sym_power(2, 2, default_ring(2)).unwrap();
    let everything: Element = s2.weights().filter(|&i| s2.dim(i) > 0).map(|i| (i, basis_vector(s2.dim(i), 0))).collect();
    let parts = homogeneous_split(&s2, &[everything]).unwrap();
    assert_eq!(parts.len(), 1);
    assert_eq!(parts[0].keys().copied().collect::<Vec<_>>(), vec![-2, 0, 2]);
}

#[test]
fn module_json_round_trip() {
    let v = random_instance(2, 11).unwrap().module;
    let text = serde_json::to_string(&v.to_json()).unwrap();
    let back = Sl2Module::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
    assert_eq!(back, v);
}

#[test]
fn broken_relation_is_rejected() {
    let st = sym_power(1, 1, default_ring(1)).unwrap();
    let mut j = st.to_json();
    j.e_maps[0].matrix[0][0] = serde_json::json!(2);
    assert!(Sl2Module::from_json(&j).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn seeded_instances_round_trip(g in 1u32..=3, seed in any::<u64>()) {
        let inst = random_instance(g, seed).unwrap();
        let dec = decompose(&inst.module, Execution::Sequential).unwrap();
        let got = dec.multiplicities();
        let expected = inst.expected.clone();
        prop_assert_eq!(got, expected);
    }
}
