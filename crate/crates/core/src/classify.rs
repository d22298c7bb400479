//! Equivalence predicates for the classified relations, the counting
//! formulas, and the representative enumeration with its fingerprint
//! report.
//!
//! The predicates are total and exact: non-repeated sequences over m
//! strands never exceed length m, so comparing invariant tables of max
//! length m decides each relation.

use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::gausscode::GaussCode;
use crate::milnor::{invariant_table, InvariantError, InvariantTable};
use crate::wtree::{generator_positions, generator_power, WTreeError};

/// Enumeration refuses to materialize more representatives than this.
pub const ENUMERATION_BUDGET: usize = 10_000;

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error("strand counts differ: {0} vs {1}")]
    StrandMismatch(usize, usize),
    #[error("modulus must be at least 1")]
    BadModulus,
    #[error("enumeration needs {needed} representatives, budget is {budget}")]
    BudgetExceeded { needed: BigUint, budget: usize },
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    WTree(#[from] WTreeError),
}

fn tables(
    a: &GaussCode,
    b: &GaussCode,
) -> Result<Option<(InvariantTable, InvariantTable)>, ClassifyError> {
    if a.strand_count() != b.strand_count() {
        return Err(ClassifyError::StrandMismatch(
            a.strand_count(),
            b.strand_count(),
        ));
    }
    let m = a.strand_count();
    if m < 2 {
        // No non-repeated sequences exist; everything is equivalent.
        return Ok(None);
    }
    Ok(Some((
        invariant_table(a, m, true)?,
        invariant_table(b, m, true)?,
    )))
}

/// sv-equivalence: all non-repeated invariants agree exactly.
pub fn equivalent_sv(a: &GaussCode, b: &GaussCode) -> Result<bool, ClassifyError> {
    Ok(match tables(a, b)? {
        None => true,
        Some((ta, tb)) => ta == tb,
    })
}

/// (2n+sv)-equivalence: non-repeated invariants agree mod n and the
/// differences mu(ij) - mu(ji) agree exactly for every i < j.
pub fn equivalent_2n_sv(a: &GaussCode, b: &GaussCode, n: u64) -> Result<bool, ClassifyError> {
    if n < 1 {
        return Err(ClassifyError::BadModulus);
    }
    let (ta, tb) = match tables(a, b)? {
        None => return Ok(true),
        Some(t) => t,
    };
    if !ta.congruent_mod(&tb, n) {
        return Ok(false);
    }
    let m = a.strand_count();
    for i in 1..=m {
        for j in i + 1..=m {
            if ta.vlk_difference(i, j) != tb.vlk_difference(i, j) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// (V^n+sv)-equivalence: non-repeated invariants agree mod n.
pub fn equivalent_vn_sv(a: &GaussCode, b: &GaussCode, n: u64) -> Result<bool, ClassifyError> {
    if n < 1 {
        return Err(ClassifyError::BadModulus);
    }
    Ok(match tables(a, b)? {
        None => true,
        Some((ta, tb)) => ta.congruent_mod(&tb, n),
    })
}

fn binomial(m: u64, r: u64) -> BigUint {
    if r > m {
        return BigUint::zero();
    }
    let mut out = BigUint::one();
    for k in 0..r {
        out = out * BigUint::from(m - k) / BigUint::from(k + 1);
    }
    out
}

fn factorial(k: u64) -> BigUint {
    (1..=k).map(BigUint::from).fold(BigUint::one(), |a, b| a * b)
}

/// Rank of the link-homotopy classes of classical string links:
/// s_m = sum_{r=2}^m (r-2)! C(m, r).
pub fn count_sm(m: u64) -> BigUint {
    (2..=m)
        .map(|r| factorial(r - 2) * binomial(m, r))
        .fold(BigUint::zero(), |a, b| a + b)
}

/// Rank of the sv-classes of welded string links:
/// w_m = sum_{r=2}^m (r-2)! r C(m, r).
pub fn count_wm(m: u64) -> BigUint {
    (2..=m)
        .map(|r| factorial(r - 2) * BigUint::from(r) * binomial(m, r))
        .fold(BigUint::zero(), |a, b| a + b)
}

/// Order n^{w_m} of the group of (V^n+sv)-classes.
pub fn order_vn_group(m: u64, n: u64) -> BigUint {
    let w = count_wm(m);
    let exp = w
        .to_u32()
        .unwrap_or_else(|| panic!("w_{} is too large an exponent to evaluate", m));
    BigUint::from(n).pow(exp)
}

/// Exponent assignment for one representative: digits in [0, n) over the
/// canonical generator positions.
pub type YTable = Vec<u64>;

/// All representatives prod W_Ii^{y_I} with every y_I in [0, n), paired
/// with their y-tables, in lexicographic y order over the canonical
/// position order.
pub fn enumerate_representatives(
    m: usize,
    n: u64,
) -> Result<Vec<(YTable, GaussCode)>, ClassifyError> {
    if n < 1 {
        return Err(ClassifyError::BadModulus);
    }
    let total = order_vn_group(m as u64, n);
    if total > BigUint::from(ENUMERATION_BUDGET) {
        return Err(ClassifyError::BudgetExceeded {
            needed: total,
            budget: ENUMERATION_BUDGET,
        });
    }
    let positions = generator_positions(m);
    let count = total.to_usize().expect("within budget");
    let mut out = Vec::with_capacity(count);
    let mut y: YTable = vec![0; positions.len()];
    loop {
        let mut code = GaussCode::identity(m);
        for (digit, (_, head, seq)) in y.iter().zip(positions.iter()) {
            if *digit > 0 {
                let block = generator_power(m, seq, *head, &BigInt::from(*digit))?;
                code = code.stack(&block).expect("same strand count");
            }
        }
        out.push((y.clone(), code));
        // Odometer increment, least significant digit last.
        let mut k = positions.len();
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            y[k] += 1;
            if y[k] < n {
                break;
            }
            y[k] = 0;
        }
    }
}

/// FNV-1a over the mod-n reduced invariant table dump; stable across runs.
pub fn fingerprint(code: &GaussCode, n: u64) -> Result<String, ClassifyError> {
    let m = code.strand_count();
    let text = if m < 2 {
        String::from("empty")
    } else {
        invariant_table(code, m, true)?.reduce_mod(n).to_tsv()
    };
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for b in text.bytes() {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    Ok(format!("{:016x}", hash))
}

/// Fingerprint report for the full representative list: one TSV row per
/// representative (`y_table`, `fingerprint_hash`) and a trailing summary
/// line `classes=<distinct> expected=<n^{w_m}>`.
pub fn fingerprint_report(m: usize, n: u64) -> Result<String, ClassifyError> {
    let reps = enumerate_representatives(m, n)?;
    let mut out = String::from("y_table\tfingerprint_hash\n");
    let mut seen = std::collections::BTreeSet::new();
    for (y, code) in &reps {
        let digits = y
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(",");
        let fp = fingerprint(code, n)?;
        seen.insert(fp.clone());
        let _ = writeln!(out, "{}\t{}", digits, fp);
    }
    let _ = writeln!(
        out,
        "classes={} expected={}",
        seen.len(),
        order_vn_group(m as u64, n)
    );
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moves::{insert_2n, virtualize_crossing, is_self_crossing};
    use crate::rng::Rng;
    use crate::wtree::{generator, normal_form_sv};

    #[test]
    fn counting_formulas() {
        assert_eq!(count_wm(2), BigUint::from(2u32));
        assert_eq!(count_wm(3), BigUint::from(9u32));
        assert_eq!(count_wm(4), BigUint::from(32u32));
        assert_eq!(count_sm(3), BigUint::from(4u32));
        assert_eq!(count_sm(4), BigUint::from(12u32));
        assert_eq!(order_vn_group(2, 3), BigUint::from(9u32));
        assert_eq!(order_vn_group(3, 2), BigUint::from(512u32));
    }

    #[test]
    fn sv_equivalence_basics() {
        let w21 = generator(2, &[2], 1, false).unwrap();
        let w12 = generator(2, &[1], 2, false).unwrap();
        assert!(equivalent_sv(&w21, &w21.scramble(20, 5)).unwrap());
        assert!(!equivalent_sv(&w21, &w12).unwrap());
        let (nf, _) = normal_form_sv(&w21).unwrap();
        assert!(equivalent_sv(&w21, &nf).unwrap());
        assert!(equivalent_sv(&GaussCode::identity(1), &GaussCode::identity(1)).unwrap());
        assert!(equivalent_sv(&w21, &GaussCode::identity(3)).is_err());
    }

    #[test]
    fn two_n_equivalence_examples() {
        let mut rng = Rng::new(7);
        for n in [2usize, 3] {
            let sigma = GaussCode::random(3, 6, &mut rng);
            let site = crate::gausscode::MoveSite {
                strand_a: 0,
                pos_a: 0,
                strand_b: 2,
                pos_b: 1,
            };
            let moved = insert_2n(&sigma, &site, n, -1).unwrap();
            assert!(equivalent_2n_sv(&sigma, &moved, n as u64).unwrap());
        }
        // W_21^n vs identity: vlk difference n is not zero.
        for n in [1u64, 2, 3] {
            let w = generator(2, &[2], 1, false).unwrap().stack_power(n as usize);
            assert!(!equivalent_2n_sv(&w, &GaussCode::identity(2), n).unwrap());
            assert!(equivalent_vn_sv(&w, &GaussCode::identity(2), n).unwrap());
        }
    }

    #[test]
    fn n_equals_one_special_cases() {
        let mut rng = Rng::new(13);
        let a = GaussCode::random(2, 5, &mut rng);
        let b = GaussCode::random(2, 5, &mut rng);
        // V^1+sv equates everything with equal strand counts.
        assert!(equivalent_vn_sv(&a, &b, 1).unwrap());
        // 2+sv with n=1 reduces to the vlk-difference condition.
        let expected = invariant_table(&a, 2, true)
            .unwrap()
            .vlk_difference(1, 2)
            == invariant_table(&b, 2, true).unwrap().vlk_difference(1, 2);
        assert_eq!(equivalent_2n_sv(&a, &b, 1).unwrap(), expected);
    }

    #[test]
    fn lemma_wii_power_is_2n_trivial_for_higher_degree() {
        // (W_Ii)^n with |I| >= 2 is (2n+sv)-equivalent to the identity.
        for n in [2u64, 3] {
            let w = generator(3, &[2, 3], 1, false).unwrap();
            let power = w.stack_power(n as usize);
            assert!(equivalent_2n_sv(&power, &GaussCode::identity(3), n).unwrap());
            assert!(equivalent_vn_sv(&power, &GaussCode::identity(3), n).unwrap());
        }
    }

    #[test]
    fn two_n_implies_vn_on_perturbed_pairs() {
        let mut rng = Rng::new(19);
        for trial in 0..30 {
            let n = [2usize, 3][trial % 2];
            let m = rng.range(2, 3);
            let a = GaussCode::random(m, rng.range(2, 7), &mut rng);
            let mut b = a.scramble(10, 500 + trial as u64);
            // A few extra 2n twists and self-virtualizations keep the pair
            // (2n+sv)-equivalent by construction.
            let site = crate::gausscode::MoveSite {
                strand_a: rng.below(m),
                pos_a: 0,
                strand_b: rng.below(m),
                pos_b: b.strand(rng.below(m)).len(),
            };
            if let Ok(moved) = insert_2n(&b, &site, n, rng.sign()) {
                b = moved;
            }
            let self_ids: Vec<u32> = b
                .strands()
                .iter()
                .flatten()
                .map(|p| p.id)
                .filter(|&id| is_self_crossing(&b, id).unwrap())
                .collect();
            if !self_ids.is_empty() {
                b = virtualize_crossing(&b, self_ids[0]).unwrap();
            }
            if equivalent_2n_sv(&a, &b, n as u64).unwrap() {
                assert!(equivalent_vn_sv(&a, &b, n as u64).unwrap(), "trial {}", trial);
            }
        }
    }

    #[test]
    fn enumeration_small_cases() {
        let reps = enumerate_representatives(2, 2).unwrap();
        assert_eq!(reps.len(), 4);
        let fps: std::collections::BTreeSet<String> = reps
            .iter()
            .map(|(_, c)| fingerprint(c, 2).unwrap())
            .collect();
        assert_eq!(fps.len(), 4);

        let reps = enumerate_representatives(2, 3).unwrap();
        assert_eq!(reps.len(), 9);
        let fps: std::collections::BTreeSet<String> = reps
            .iter()
            .map(|(_, c)| fingerprint(c, 3).unwrap())
            .collect();
        assert_eq!(fps.len(), 9);
    }

    #[test]
    fn perturbed_representatives_recover_their_y_table() {
        use crate::moves::{apply_vn, VnDirection};
        use crate::wtree::normal_form_vn_sv;
        let mut rng = Rng::new(37);
        for (m, n) in [(2usize, 2u64), (2, 3), (3, 2)] {
            let reps = enumerate_representatives(m, n).unwrap();
            // Sample a handful per case; (3,2) has 512.
            let step = (reps.len() / 6).max(1);
            for (y, rho) in reps.iter().step_by(step) {
                let mut perturbed = rho.scramble(8, rng.next_u64());
                let site = crate::gausscode::MoveSite {
                    strand_a: 0,
                    pos_a: rng.below(perturbed.strand(0).len() + 1),
                    strand_b: 1,
                    pos_b: rng.below(perturbed.strand(1).len() + 1),
                };
                perturbed = apply_vn(
                    &perturbed,
                    n as usize,
                    VnDirection::Classicalize,
                    &site,
                    rng.sign(),
                )
                .unwrap();
                assert!(equivalent_vn_sv(rho, &perturbed, n).unwrap());
                let (_, table) = normal_form_vn_sv(&perturbed, n).unwrap();
                let recovered: Vec<u64> = table
                    .rows()
                    .iter()
                    .map(|r| r.exponent.to_u64().expect("exponent in [0, n)"))
                    .collect();
                assert_eq!(&recovered, y, "(m, n) = ({}, {})", m, n);
            }
        }
    }

    #[test]
    fn enumeration_budget_guard() {
        assert!(matches!(
            enumerate_representatives(4, 2),
            Err(ClassifyError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn fingerprint_report_summary_line() {
        let report = fingerprint_report(2, 2).unwrap();
        assert!(report.starts_with("y_table\tfingerprint_hash\n"));
        assert!(report.trim_end().ends_with("classes=4 expected=4"));
    }

    #[test]
    fn classical_cross_check() {
        // Classical-realizable codes: stacked full twists have symmetric
        // invariants, so the vlk conditions hold and both predicates agree
        // with plain mod-n congruence.
        let full_twist = insert_2n(
            &GaussCode::identity(2),
            &crate::gausscode::MoveSite {
                strand_a: 0,
                pos_a: 0,
                strand_b: 1,
                pos_b: 0,
            },
            1,
            1,
        )
        .unwrap();
        for n in [2u64, 3] {
            let a = full_twist.stack_power(2);
            let b = full_twist.stack_power(2 + n as usize);
            assert!(equivalent_2n_sv(&a, &b, n).unwrap());
            assert!(equivalent_vn_sv(&a, &b, n).unwrap());
            let c = full_twist.stack_power(3);
            assert_eq!(
                equivalent_2n_sv(&a, &c, n).unwrap(),
                equivalent_vn_sv(&a, &c, n).unwrap()
                    && invariant_table(&a, 2, true).unwrap().vlk_difference(1, 2)
                        == invariant_table(&c, 2, true).unwrap().vlk_difference(1, 2)
            );
        }
    }
}
