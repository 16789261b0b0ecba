//! Desk-scale verification suite: every check the CLI's `suite` command
//! runs, in a fixed order.

use std::time::Instant;

use num_bigint::BigInt;

use crate::charcalc::{f_ct, f_td_components, f_td_inv, todd_component, Rank};
use crate::error::Result;
use crate::exec::Execution;
use crate::fourier::{
    eigen_grading_check, fourier_model_check, nilpotency_check, oracle_check, projector_check,
    scaled_fourier_check, MAX_G, ORACLE_MAX_G,
};
use crate::identities::{pappas_shape_sweep, verify_identities, verify_key_collapse, IdentityReport, Tally};
use crate::lambda::{big_t, lemma_n};
use crate::sl2::{chow_sl2_check, round_trip, sym_power, torsion_injectivity_demo, verify_flek};

/// The Todd denominators `2, 12, 24, 720` of degrees one to four.
pub const PRINTED_TODD_DENOMINATORS: [u64; 4] = [2, 12, 24, 720];

/// `T_m` against the least common denominator of `Td_m` (rank `m`, so no
/// Chern class vanishes), and against the printed denominators.
pub fn tm_table_check(max: u32) -> Result<IdentityReport> {
    let started = Instant::now();
    let mut t = Tally::new();
    for m in 1..=max {
        let lcd = todd_component(m, m)?.lcd();
        t.check(lcd == big_t(m as u64), || format!("lcd(Td_{m}) = {lcd} ≠ T_{m}"));
    }
    for (i, &d) in PRINTED_TODD_DENOMINATORS.iter().enumerate() {
        let m = i as u64 + 1;
        t.check(big_t(m) == BigInt::from(d), || format!("T_{m} ≠ {d}"));
    }
    Ok(t.report("tm-table", &[("max", max as i64)], started))
}

/// Integer coefficients of `fTd_m` (`m ≤ max_td`), `fTd^inv_n` (rank `≤
/// max_rank`, `n ≤ max_inv`) and `fCT_m` (`m ≤ max_ct`).
pub fn integrality_check(max_td: u32, max_rank: u32, max_inv: u32, max_ct: u32, exec: Execution) -> Result<IdentityReport> {
    let started = Instant::now();
    let mut t = Tally::new();
    for (m, p) in f_td_components(0, Rank::Generic, max_td)?.iter().enumerate() {
        t.check(p.is_integral(), || format!("fTd_{m}"));
    }
    let jobs: Vec<(u32, u32)> = (1..=max_rank).flat_map(|r| (0..=max_inv).map(move |n| (r, n))).collect();
    for ((r, n), ok) in jobs.iter().zip(exec.map(&jobs, |&(r, n)| f_td_inv(r, n).map(|p| p.is_integral()))) {
        t.check(ok?, || format!("fTdInv_{n} rank {r}"));
    }
    let ms: Vec<u32> = (0..=max_ct).collect();
    for (m, ok) in ms.iter().zip(exec.map(&ms, |&m| f_ct(m).map(|p| p.is_integral()))) {
        t.check(ok?, || format!("fCT_{m}"));
    }
    Ok(t.report(
        "integrality",
        &[("max_td", max_td as i64), ("max_rank", max_rank as i64), ("max_inv", max_inv as i64), ("max_ct", max_ct as i64)],
        started,
    ))
}

/// `T_h | N·h!²` for `1 ≤ h ≤ max_h`.
pub fn lemma_check(max_h: u64) -> Result<IdentityReport> {
    let started = Instant::now();
    let mut t = Tally::new();
    for h in 1..=max_h {
        t.check(lemma_n(h).is_ok(), || format!("h = {h}"));
    }
    Ok(t.report("tm-divides-n-h-factorial-squared", &[("max_h", max_h as i64)], started))
}

/// `flek` on `Sym^n(St)` for `n ≤ max_n` (weight bound `max_n`).
pub fn flek_suite(max_n: u32) -> Result<Vec<IdentityReport>> {
    (0..=max_n)
        .map(|n| {
            let g = max_n.max(1);
            verify_flek(&sym_power(n, g, crate::sl2::default_ring(g))?, n)
        })
        .collect()
}

/// Parameters of [`run_suite`].
#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    pub round_trip_count: u64,
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self { round_trip_count: 100, seed: 0 }
    }
}

/// Torsion demo parameters `(g, p, k)`.
pub const TORSION_DEMOS: [(u32, u64, u32); 3] = [(2, 7, 2), (3, 11, 2), (3, 11, 1)];

pub fn run_suite(config: SuiteConfig, exec: Execution, progress: &mut dyn FnMut(&str)) -> Result<Vec<IdentityReport>> {
    let mut out = Vec::new();
    let mut push = |r: Vec<IdentityReport>, progress: &mut dyn FnMut(&str)| {
        for x in &r {
            progress(&format!("{} {:?} {}", x.name, x.parameters, if x.passed() { "pass" } else { "FAIL" }));
        }
        out.extend(r);
    };
    push(vec![tm_table_check(10)?], progress);
    push(vec![integrality_check(10, 4, 8, 8, exec)?], progress);
    push(vec![lemma_check(30)?], progress);
    for rank in 1..=3 {
        push(verify_identities(rank, 6, exec)?, progress);
    }
    let gs: Vec<u32> = (1..=3).collect();
    push(exec.map(&gs, |&g| verify_key_collapse(g, 3)).into_iter().collect::<Result<_>>()?, progress);
    push(pappas_shape_sweep(12, exec)?, progress);
    let pd: Vec<(u32, u32)> = (1..=3).flat_map(|g| (0..=2).map(move |d| (g, d))).collect();
    push(exec.map(&pd, |&(g, d)| projector_check(g, d)).into_iter().collect::<Result<_>>()?, progress);
    let model: Vec<u32> = (1..=MAX_G).collect();
    push(exec.map(&model, |&g| fourier_model_check(g)).into_iter().collect::<Result<_>>()?, progress);
    push(exec.map(&model, |&g| eigen_grading_check(g)).into_iter().collect::<Result<_>>()?, progress);
    let og: Vec<u32> = (1..=ORACLE_MAX_G).collect();
    push(exec.map(&og, |&g| oracle_check(g)).into_iter().collect::<Result<_>>()?, progress);
    push(exec.map(&og, |&g| scaled_fourier_check(g)).into_iter().collect::<Result<_>>()?, progress);
    push(vec![nilpotency_check(1)?], progress);
    for g in 1..=4 {
        push(vec![round_trip(g, config.round_trip_count, config.seed + 1000 * g as u64, exec)?], progress);
    }
    push(flek_suite(6)?, progress);
    push(exec.map(&model, |&g| chow_sl2_check(g)).into_iter().collect::<Result<_>>()?, progress);
    for (g, p, k) in TORSION_DEMOS {
        push(vec![torsion_injectivity_demo(g, p, k)?], progress);
    }
    Ok(out)
}
