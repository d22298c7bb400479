//! Randomized verification suites behind `weldmilnor verify`.
//!
//! Every suite is seeded, prints one line per trial with the parameters
//! that drove it, and reports PASS/FAIL per trial plus a summary line.
//! Reports are assembled deterministically: same seed, same bytes.

use std::fmt::Write as _;

use num_bigint::BigInt;
use weldmilnor::classify::{equivalent_2n_sv, equivalent_vn_sv, fingerprint_report, order_vn_group};
use weldmilnor::gausscode::MoveSite;
use weldmilnor::milnor::invariant_table;
use weldmilnor::moves::{insert_2n, apply_vn, is_self_crossing, virtualize_crossing, VnDirection};
use weldmilnor::rng::Rng;
use weldmilnor::wtree::{normal_form_sv, normal_form_vn_sv};
use weldmilnor::GaussCode;

pub struct SuiteReport {
    pub text: String,
    pub failures: usize,
}

fn random_site(code: &GaussCode, rng: &mut Rng) -> MoveSite {
    let m = code.strand_count();
    let sa = rng.below(m);
    let sb = rng.below(m);
    MoveSite {
        strand_a: sa,
        pos_a: rng.below(code.strand(sa).len() + 1),
        strand_b: sb,
        pos_b: rng.below(code.strand(sb).len() + 1),
    }
}

/// Site on two distinct strands; always succeeds for m >= 2.
fn random_two_strand_site(code: &GaussCode, rng: &mut Rng) -> MoveSite {
    let m = code.strand_count();
    let sa = rng.below(m);
    let mut sb = rng.below(m);
    while sb == sa {
        sb = rng.below(m);
    }
    MoveSite {
        strand_a: sa,
        pos_a: rng.below(code.strand(sa).len() + 1),
        strand_b: sb,
        pos_b: rng.below(code.strand(sb).len() + 1),
    }
}

pub fn isotopy_suite(seed: u64, trials: usize) -> SuiteReport {
    let mut rng = Rng::new(seed);
    let mut text = format!("suite=isotopy seed={} trials={}\n", seed, trials);
    let mut failures = 0;
    for t in 0..trials {
        let m = rng.range(2, 4);
        let crossings = rng.range(1, 12);
        let code = GaussCode::random(m, crossings, &mut rng);
        let move_seed = rng.next_u64();
        let scrambled = code.scramble(30, move_seed);
        let before = invariant_table(&code, 4, false).expect("valid code");
        let after = invariant_table(&scrambled, 4, false).expect("valid code");
        let ok = before == after;
        if !ok {
            failures += 1;
        }
        let _ = writeln!(
            text,
            "trial={} m={} crossings={} move_seed={} rewrites=30 {}",
            t,
            m,
            crossings,
            move_seed,
            if ok { "PASS" } else { "FAIL" }
        );
    }
    finish(text, "isotopy", trials, failures)
}

pub fn two_n_suite(seed: u64, trials: usize) -> SuiteReport {
    let mut rng = Rng::new(seed);
    let mut text = format!("suite=2n seed={} trials={}\n", seed, trials);
    let mut failures = 0;
    for t in 0..trials {
        let n = [2usize, 3][t % 2];
        let m = rng.range(2, 4);
        let code = GaussCode::random(m, rng.range(1, 10), &mut rng);
        let sign = rng.sign();
        let site = random_two_strand_site(&code, &mut rng);
        let moved = insert_2n(&code, &site, n, sign).expect("two-strand site");
        let before = invariant_table(&code, m, true).expect("valid code");
        let after = invariant_table(&moved, m, true).expect("valid code");
        let mut ok = before.congruent_mod(&after, n as u64);
        for i in 1..=m {
            for j in i + 1..=m {
                ok &= before.vlk_difference(i, j) == after.vlk_difference(i, j);
            }
        }
        let (i, j) = (site.strand_a + 1, site.strand_b + 1);
        let delta = BigInt::from(sign as i64 * n as i64);
        ok &= after.value(&[i, j]).unwrap() - before.value(&[i, j]).unwrap() == delta;
        ok &= after.value(&[j, i]).unwrap() - before.value(&[j, i]).unwrap() == delta;
        if !ok {
            failures += 1;
        }
        let _ = writeln!(
            text,
            "trial={} m={} n={} sign={} site={},{}/{},{} {}",
            t,
            m,
            n,
            sign,
            site.strand_a + 1,
            site.pos_a,
            site.strand_b + 1,
            site.pos_b,
            if ok { "PASS" } else { "FAIL" }
        );
    }
    finish(text, "2n", trials, failures)
}

pub fn vn_suite(seed: u64, trials: usize) -> SuiteReport {
    let mut rng = Rng::new(seed);
    let mut text = format!("suite=vn seed={} trials={}\n", seed, trials);
    let mut failures = 0;
    for t in 0..trials {
        let n = [2usize, 3][t % 2];
        let m = rng.range(2, 4);
        let code = GaussCode::random(m, rng.range(1, 10), &mut rng);
        let site = random_site(&code, &mut rng);
        let moved = match apply_vn(&code, n, VnDirection::Classicalize, &site, rng.sign()) {
            Ok(c) => c,
            Err(_) => {
                // Degenerate same-strand site; re-aim at two strands.
                let site = random_two_strand_site(&code, &mut rng);
                apply_vn(&code, n, VnDirection::Classicalize, &site, rng.sign())
                    .expect("two-strand site")
            }
        };
        let before = invariant_table(&code, m, true).expect("valid code");
        let after = invariant_table(&moved, m, true).expect("valid code");
        let ok = before.congruent_mod(&after, n as u64);
        if !ok {
            failures += 1;
        }
        let _ = writeln!(
            text,
            "trial={} m={} n={} {}",
            t,
            m,
            n,
            if ok { "PASS" } else { "FAIL" }
        );
    }
    finish(text, "vn", trials, failures)
}

pub fn prime_p_suite(seed: u64, trials: usize) -> SuiteReport {
    let mut rng = Rng::new(seed);
    let mut text = format!("suite=prime-p seed={} trials={}\n", seed, trials);
    let mut failures = 0;
    for t in 0..trials {
        let p = [2usize, 3][t % 2];
        let m = rng.range(2, 3);
        let code = GaussCode::random(m, rng.range(1, 8), &mut rng);
        let site = random_site(&code, &mut rng);
        let moved = match apply_vn(&code, p, VnDirection::Classicalize, &site, rng.sign()) {
            Ok(c) => c,
            Err(_) => {
                let site = random_two_strand_site(&code, &mut rng);
                apply_vn(&code, p, VnDirection::Classicalize, &site, rng.sign())
                    .expect("two-strand site")
            }
        };
        // All sequences of length <= p, repeated ones included.
        let before = invariant_table(&code, p.max(2), false).expect("valid code");
        let after = invariant_table(&moved, p.max(2), false).expect("valid code");
        let ok = before.congruent_mod(&after, p as u64);
        if !ok {
            failures += 1;
        }
        let _ = writeln!(
            text,
            "trial={} m={} p={} {}",
            t,
            m,
            p,
            if ok { "PASS" } else { "FAIL" }
        );
    }
    finish(text, "prime-p", trials, failures)
}

pub fn counting_suite() -> SuiteReport {
    let mut text = String::from("suite=counting\n");
    let mut failures = 0;
    for (m, n) in [(2usize, 2u64), (2, 3), (3, 2)] {
        let report = fingerprint_report(m, n).expect("within budget");
        let summary = report
            .lines()
            .last()
            .expect("report has a summary line")
            .to_string();
        let expected = order_vn_group(m as u64, n).to_string();
        let ok = summary == format!("classes={} expected={}", expected, expected);
        if !ok {
            failures += 1;
        }
        let _ = writeln!(
            text,
            "m={} n={} {} {}",
            m,
            n,
            summary,
            if ok { "PASS" } else { "FAIL" }
        );
    }
    finish(text, "counting", 3, failures)
}

pub fn normal_form_suite(seed: u64, trials: usize) -> SuiteReport {
    let mut rng = Rng::new(seed);
    let mut text = format!("suite=normal-form seed={} trials={}\n", seed, trials);
    let mut failures = 0;
    for t in 0..trials {
        let code = GaussCode::random(3, rng.range(1, 8), &mut rng);
        let (nf, _) = normal_form_sv(&code).expect("desk-scale exponents");
        let before = invariant_table(&code, 3, true).expect("valid code");
        let after = invariant_table(&nf, 3, true).expect("valid code");
        let mut ok = before == after;
        let n = [2u64, 3][t % 2];
        let (rep, _) = normal_form_vn_sv(&code, n).expect("desk-scale exponents");
        let rep_table = invariant_table(&rep, 3, true).expect("valid code");
        ok &= before.congruent_mod(&rep_table, n);
        if !ok {
            failures += 1;
        }
        let _ = writeln!(
            text,
            "trial={} crossings={} n={} {}",
            t,
            code.crossing_count(),
            n,
            if ok { "PASS" } else { "FAIL" }
        );
    }
    finish(text, "normal-form", trials, failures)
}

/// Builds pairs that are (2n+sv)-equivalent by construction and checks
/// that whenever the 2n-side predicate accepts, the V^n-side one does too.
pub fn implication_suite(seed: u64, trials: usize) -> SuiteReport {
    let mut rng = Rng::new(seed);
    let mut text = format!("suite=implication seed={} trials={}\n", seed, trials);
    let mut failures = 0;
    for t in 0..trials {
        let n = [2usize, 3][t % 2];
        let m = rng.range(2, 3);
        let a = GaussCode::random(m, rng.range(1, 7), &mut rng);
        let mut b = a.scramble(8, rng.next_u64());
        if rng.coin() {
            let site = random_two_strand_site(&b, &mut rng);
            b = insert_2n(&b, &site, n, rng.sign()).expect("two-strand site");
        }
        if rng.coin() {
            let self_ids: Vec<u32> = b
                .strands()
                .iter()
                .flatten()
                .map(|p| p.id)
                .filter(|&id| is_self_crossing(&b, id).unwrap_or(false))
                .collect();
            if let Some(&id) = self_ids.first() {
                b = virtualize_crossing(&b, id).expect("crossing exists");
            }
        }
        let premise = equivalent_2n_sv(&a, &b, n as u64).expect("same strand count");
        let conclusion = equivalent_vn_sv(&a, &b, n as u64).expect("same strand count");
        let ok = !premise || conclusion;
        if !ok {
            failures += 1;
        }
        let _ = writeln!(
            text,
            "trial={} m={} n={} premise={} conclusion={} {}",
            t,
            m,
            n,
            premise,
            conclusion,
            if ok { "PASS" } else { "FAIL" }
        );
    }
    finish(text, "implication", trials, failures)
}

fn finish(mut text: String, name: &str, trials: usize, failures: usize) -> SuiteReport {
    let _ = writeln!(
        text,
        "SUITE {}: {} ({}/{} passed)",
        name,
        if failures == 0 { "PASS" } else { "FAIL" },
        trials - failures,
        trials
    );
    SuiteReport { text, failures }
}
