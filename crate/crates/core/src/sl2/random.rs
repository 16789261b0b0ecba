//! Seeded random modules `⊕_n Sym^n(St) ⊗ M_n` with prescribed free and
//! `p`-power torsion multiplicities, scrambled by unit basis changes.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::decompose::{decompose, verify_decomposition, Multiplicity};
use super::module::{default_ring, sym_power, Sl2Module};
use crate::error::Result;
use crate::exec::Execution;
use crate::identities::{IdentityReport, Tally};
use crate::lambda::is_prime;

#[derive(Clone, Debug)]
pub struct RandomInstance {
    pub seed: u64,
    pub module: Sl2Module,
    /// `M_0, …, M_g`.
    pub expected: Vec<Multiplicity>,
}

/// The two smallest primes above `2g + 1`.
pub fn torsion_primes(g: u32) -> [u64; 2] {
    let mut out = [0; 2];
    let mut p = 2 * g as u64 + 2;
    for slot in out.iter_mut() {
        while !is_prime(p) {
            p += 1;
        }
        *slot = p;
        p += 1;
    }
    out
}

/// Assembles `⊕ Sym^n(St) ⊗ M_n` over `ℤ[1/(2g)!]`.
pub fn assemble(g: u32, multiplicities: &[Multiplicity]) -> Result<Sl2Module> {
    let ring = default_ring(g);
    let mut v = Sl2Module::new(g, ring.clone(), BTreeMap::new(), BTreeMap::new(), BTreeMap::new())?;
    for (n, m) in multiplicities.iter().enumerate() {
        let s = sym_power(n as u32, g, ring.clone())?;
        if m.free_rank > 0 {
            v = v.direct_sum(&s.tensor_cyclic(None, m.free_rank)?)?;
        }
        for &(p, k, c) in &m.torsion {
            v = v.direct_sum(&s.tensor_cyclic(Some((p, k)), c)?)?;
        }
    }
    Ok(v)
}

pub fn random_instance(g: u32, seed: u64) -> Result<RandomInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let primes = torsion_primes(g);
    let expected: Vec<Multiplicity> = (0..=g)
        .map(|_| {
            let free = rng.gen_range(0..=2);
            let torsion: Vec<(u64, u32, usize)> = (0..rng.gen_range(0..=2))
                .map(|_| (primes[rng.gen_range(0..2)], rng.gen_range(1..=2), rng.gen_range(1..=2)))
                .collect();
            Multiplicity::normalized(free, &torsion)
        })
        .collect();
    let (module, _) = assemble(g, &expected)?.scrambled(&mut rng)?;
    Ok(RandomInstance { seed, module, expected })
}

/// Decomposes `count` random instances with seeds `seed, seed+1, …` and
/// compares the recovered `M_n` with the prescribed ones; every
/// decomposition is also run through [`verify_decomposition`].
pub fn round_trip(g: u32, count: u64, seed: u64, exec: Execution) -> Result<IdentityReport> {
    let started = Instant::now();
    let seeds: Vec<u64> = (seed..seed + count).collect();
    let outcomes = exec.map(&seeds, |&s| -> Result<(u64, bool, bool)> {
        let inst = random_instance(g, s)?;
        let dec = decompose(&inst.module, Execution::Sequential)?;
        let structural = verify_decomposition(&inst.module, &dec)?.passed();
        Ok((s, dec.multiplicities() == inst.expected, structural))
    });
    let mut t = Tally::new();
    for o in outcomes {
        let (s, recovered, structural) = o?;
        t.check(recovered, || format!("seed {s}: multiplicities differ"));
        t.check(structural, || format!("seed {s}: structural checks"));
    }
    Ok(t
        .report("sl2-round-trip", &[("g", g as i64), ("count", count as i64)], started)
        .with_note("seed", seed))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_above_bound() {
        assert_eq!(torsion_primes(1), [5, 7]);
        assert_eq!(torsion_primes(2), [7, 11]);
    }

    #[test]
    fn instances_are_reproducible() {
        let a = random_instance(2, 11).unwrap();
        let b = random_instance(2, 11).unwrap();
        assert_eq!(a.module, b.module);
        assert_eq!(a.expected, b.expected);
    }

    #[test]
    fn small_round_trip() {
        let r = round_trip(2, 5, 0, Execution::Sequential).unwrap();
        assert!(r.passed(), "{:?}", r.notes);
    }
}
