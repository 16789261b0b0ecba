//! Acceptance criteria, one line each: `PASS`/`FAIL`, the measured time and
//! the time budget. All comparisons are exact; the only tolerances are the
//! wall-clock budgets below.

use std::time::{Duration, Instant};

use num_bigint::BigInt;

use integral_fourier::charcalc::f_td;
use integral_fourier::fourier::{
    augmentation_action, fourier_model_check, nilpotency_check, oracle_check, projector_check,
    scaled_fourier_check, Form, MAX_G,
};
use integral_fourier::identities::{verify_exact_seq_identity, verify_identities, verify_key_collapse, IdentityReport};
use integral_fourier::lambda::big_t;
use integral_fourier::sl2::{chow_sl2_check, round_trip, torsion_injectivity_demo};
use integral_fourier::suite::{flek_suite, integrality_check, lemma_check, tm_table_check};
use integral_fourier::Execution;

const SECOND: Duration = Duration::from_secs(1);
const BUDGET_TM: Duration = SECOND;
const BUDGET_INTEGRALITY: Duration = Duration::from_secs(30);
const BUDGET_LEMMA: Duration = SECOND;
const BUDGET_IDENTITIES: Duration = Duration::from_secs(120);
const BUDGET_KEY_COLLAPSE: Duration = Duration::from_secs(120);
const BUDGET_PROJECTORS: Duration = Duration::from_secs(10);
const BUDGET_FOURIER_MODEL: Duration = Duration::from_secs(5);
const BUDGET_ORACLE: Duration = Duration::from_secs(60);
const BUDGET_ROUND_TRIP: Duration = Duration::from_secs(180);
const BUDGET_FLEK: Duration = Duration::from_secs(30);
const BUDGET_CHOW: Duration = Duration::from_secs(30);

/// Random sl2 modules per g, and the base seed.
const ROUND_TRIP_COUNT: u64 = 100;
const ROUND_TRIP_SEED: u64 = 20_240_601;

struct Line {
    id: &'static str,
    ok: bool,
    elapsed: Duration,
    budget: Duration,
    detail: String,
    /// Passes only against a corrected statement; printed as `PASS*`.
    deviation: bool,
}

fn all_pass(rs: &[IdentityReport]) -> Option<String> {
    rs.iter()
        .find(|r| !r.passed())
        .map(|r| format!("{} {:?} {:?}", r.name, r.parameters, r.notes))
}

fn run(id: &'static str, budget: Duration, f: impl FnOnce() -> (bool, String)) -> Line {
    let started = Instant::now();
    let (ok, detail) = f();
    Line { id, ok, elapsed: started.elapsed(), budget, detail, deviation: false }
}

fn from_reports(rs: integral_fourier::Result<Vec<IdentityReport>>, summary: &str) -> (bool, String) {
    match rs {
        Ok(rs) => match all_pass(&rs) {
            None => (true, format!("{summary} ({} reports)", rs.len())),
            Some(f) => (false, format!("failing: {f}")),
        },
        Err(e) => (false, format!("error: {e}")),
    }
}

fn main() {
    let exec = Execution::Parallel;
    let mut lines = Vec::new();

    lines.push(run("tm-table", BUDGET_TM, || {
        let printed = [2u64, 12, 24, 720];
        let direct = printed.iter().enumerate().all(|(i, &d)| big_t(i as u64 + 1) == BigInt::from(d));
        let (ok, detail) = from_reports(tm_table_check(4).map(|r| vec![r]), "T_1..T_4 = 2, 12, 24, 720 = lcd(Td_m)");
        (ok && direct, detail)
    }));

    lines.push(run("integrality", BUDGET_INTEGRALITY, || {
        let fixed_rank = (1..=10).all(|m| f_td(m, m).map(|p| p.is_integral()).unwrap_or(false));
        let (ok, detail) = from_reports(
            integrality_check(10, 4, 8, 8, exec).map(|r| vec![r]),
            "fTd_m (m ≤ 10), fTdInv_n (r ≤ 4, n ≤ 8), fCT_m (m ≤ 8) integral",
        );
        (ok && fixed_rank, detail)
    }));

    lines.push(run("tm-divides-n-h-factorial-squared", BUDGET_LEMMA, || {
        from_reports(lemma_check(30).map(|r| vec![r]), "h ≤ 30")
    }));

    lines.push(run("identity-ledger", BUDGET_IDENTITIES, || {
        let mut rs = Vec::new();
        for r in 1..=3 {
            match verify_identities(r, 6, exec) {
                Ok(x) => rs.extend(x),
                Err(e) => return (false, format!("error: {e}")),
            }
        }
        let pairs: Vec<(u32, u32)> = (1..=3).flat_map(|a| (1..=3).map(move |b| (a, b))).collect();
        for x in exec.map(&pairs, |&(a, b)| verify_exact_seq_identity(a, b, 6)) {
            match x {
                Ok(x) => rs.push(x),
                Err(e) => return (false, format!("error: {e}")),
            }
        }
        from_reports(Ok(rs), "four identities, ranks ≤ 3, degrees ≤ 6, residual exactly 0")
    }));

    lines.push(run("key-collapse", BUDGET_KEY_COLLAPSE, || {
        let gs = [1u32, 2, 3];
        let rs: integral_fourier::Result<Vec<_>> = exec.map(&gs, |&g| verify_key_collapse(g, 3)).into_iter().collect();
        let rs = match rs {
            Ok(rs) => rs,
            Err(e) => return (false, format!("error: {e}")),
        };
        let values_ok = rs
            .iter()
            .zip(gs)
            .all(|(r, g)| r.notes.get("mu0_value") == Some(&big_t(2 * g as u64).to_string()));
        let (ok, detail) = from_reports(Ok(rs), "μ=0 gives T_2g (12, 720, 60480); 1 ≤ μ ≤ 3 gives 0");
        (ok && values_ok, detail)
    }));

    lines.push(run("projector-suite", BUDGET_PROJECTORS, || {
        let pd: Vec<(u32, u32)> = (1..=3).flat_map(|g| (0..=2).map(move |d| (g, d))).collect();
        from_reports(
            exec.map(&pd, |&(g, d)| projector_check(g, d)).into_iter().collect(),
            "moments Σ a_{i,n} n^j = [j=2g−i]; π_i∘π_j = [i=j]π_i (composition, not ⋆); Σπ_i = Γ_[1] mod I^(2g+1); g ≤ 3, d ≤ 2",
        )
    }));

    lines.push(run("fourier-model", BUDGET_FOURIER_MODEL, || {
        let gs: Vec<u32> = (1..=MAX_G).collect();
        from_reports(
            exec.map(&gs, |&g| fourier_model_check(g)).into_iter().collect(),
            "F∘F = (−1)^g[−1]^*, F(x⋆y) = F(x)F(y), ℓ^g = ν·g!·[pt], λ characterisation; g ≤ 8, ν = 1",
        )
    }));

    let mut oracle = run("cohomology-oracle", BUDGET_ORACLE, || {
        let gs = [1u32, 2, 3];
        let mut rs: Vec<IdentityReport> = Vec::new();
        for x in exec.map(&gs, |&g| oracle_check(g).and_then(|a| Ok(vec![a, scaled_fourier_check(g)?]))) {
            match x {
                Ok(x) => rs.extend(x),
                Err(e) => return (false, format!("error: {e}")),
            }
        }
        // literal exponent min{g,2g}+1 = 2 at g = 1, against the sharp 2g+1 = 3
        let literal = augmentation_action(1, 2).map(|img| img.iter().all(Form::is_zero));
        let sharp = nilpotency_check(1);
        let (ok, detail) = from_reports(Ok(rs), "oracle F = model on ℓ^i; scaled relations; g ≤ 3");
        match (literal, sharp) {
            (Ok(false), Ok(s)) if s.passed() => (
                ok,
                format!(
                    "{detail}; nilpotency: exponent 2 does not annihilate H^*(X) at g = 1 (H^0 acts as 2), \
                     the sharp exponent is 2g+1 = {} and it annihilates",
                    s.notes["annihilating_exponent"]
                ),
            ),
            (Ok(true), _) => (false, "exponent 2 annihilates H^*: the analysis behind the deviation is wrong".into()),
            (l, s) => (false, format!("nilpotency: {:?} / {:?}", l.err(), s.err())),
        }
    });
    oracle.deviation = true;
    lines.push(oracle);

    lines.push(run("sl2-round-trip", BUDGET_ROUND_TRIP, || {
        let gs = [1u32, 2, 3, 4];
        let rs: integral_fourier::Result<Vec<_>> =
            gs.iter().map(|&g| round_trip(g, ROUND_TRIP_COUNT, ROUND_TRIP_SEED + 1000 * g as u64, exec)).collect();
        from_reports(
            rs,
            &format!("{ROUND_TRIP_COUNT} seeded modules per g ≤ 4 (seed {ROUND_TRIP_SEED}); invariant factors recovered exactly"),
        )
    }));

    lines.push(run("flek-calculus", BUDGET_FLEK, || {
        from_reports(flek_suite(6), "closed form = iterated action on Sym^n(St), n ≤ 6, all (k, l); V_n[f] = 0")
    }));

    lines.push(run("chow-sl2", BUDGET_CHOW, || {
        let gs: Vec<u32> = (1..=MAX_G).collect();
        let mut rs: Vec<IdentityReport> = Vec::new();
        for x in exec.map(&gs, |&g| chow_sl2_check(g)) {
            match x {
                Ok(x) => rs.push(x),
                Err(e) => return (false, format!("error: {e}")),
            }
        }
        for (g, p, k) in [(2, 7, 2), (3, 11, 2)] {
            match torsion_injectivity_demo(g, p, k) {
                Ok(x) => rs.push(x),
                Err(e) => return (false, format!("error: {e}")),
            }
        }
        from_reports(Ok(rs), "[e,f] = h, single Sym^g string, g ≤ 8; e^{i−1} injective for (2,7,2), (3,11,2)")
    }));

    println!();
    let mut failed = Vec::new();
    for (i, l) in lines.iter().enumerate() {
        let in_time = l.elapsed <= l.budget;
        let ok = l.ok && in_time;
        println!(
            "[{:<5}] {:02} {:<34} {:>9.3}s / {:>4}s  {}",
            match (ok, l.deviation) {
                (true, false) => "PASS",
                (true, true) => "PASS*",
                _ => "FAIL",
            },
            i + 1,
            l.id,
            l.elapsed.as_secs_f64(),
            l.budget.as_secs(),
            l.detail
        );
        if !ok {
            failed.push(l.id);
        }
    }
    println!("PASS* = passes against the corrected statement given in the detail column");
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
