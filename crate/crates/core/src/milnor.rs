//! Milnor invariants of welded string links.
//!
//! The pipeline reads a Wirtinger presentation off the Gauss code, pushes
//! the arc generators down to meridians with the eta recursion, and reads
//! invariants off the Magnus expansion of the zero-framed longitudes.
//!
//! Two routes are provided. `eta` and `longitude` materialize honest free
//! group words, which is what small examples and cross-checks want. The
//! production route (`milnor`, `invariant_table`) runs the same recursion
//! directly on truncated series, where conjugation and inversion stay
//! cheap no matter how long the words would have been; the two routes are
//! tested against each other.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use thiserror::Error;

use crate::freegroup::{Gen, Word};
use crate::gausscode::{CodeError, GaussCode, Role};
use crate::magnus::TruncSeries;

#[derive(Debug, Error)]
pub enum InvariantError {
    #[error("sequence must have length at least 2, got {0}")]
    SequenceTooShort(usize),
    #[error("sequence entry {entry} out of range 1..={m}")]
    EntryOutOfRange { entry: usize, m: usize },
    #[error("strand index {index} out of range 1..={m}")]
    StrandOutOfRange { index: usize, m: usize },
    #[error(transparent)]
    Code(#[from] CodeError),
}

/// One letter `u_ij`: the overpass arc generator at an undercrossing,
/// raised to the crossing sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OverpassLetter {
    pub strand: usize,
    pub arc: usize,
    pub exp: i8,
}

/// Wirtinger presentation data extracted from a diagram. All strand and
/// arc indices here are 1-based, matching the usual a_ij labelling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WirtingerData {
    m: usize,
    r: Vec<usize>,
    u: Vec<Vec<OverpassLetter>>,
}

impl WirtingerData {
    pub fn strand_count(&self) -> usize {
        self.m
    }

    /// Arc count r(i) of strand `i` (1-based).
    pub fn arc_count(&self, i: usize) -> usize {
        self.r[i - 1]
    }

    /// The letter u_ij (i, j 1-based, j in 1..r(i)).
    pub fn u(&self, i: usize, j: usize) -> OverpassLetter {
        self.u[i - 1][j - 1]
    }

    pub fn u_row(&self, i: usize) -> &[OverpassLetter] {
        &self.u[i - 1]
    }
}

/// Labels arcs along every strand and records which conjugating letter
/// acts at each undercrossing. Arcs break exactly at under-passages, so
/// the arc at any position is one more than the number of under-passages
/// strictly before it.
pub fn wirtinger(code: &GaussCode) -> Result<WirtingerData, InvariantError> {
    code.validate().map_err(CodeError::Invalid)?;
    let m = code.strand_count();
    let arc_at = |strand: usize, pos: usize| -> usize {
        1 + code.strand(strand)[..pos]
            .iter()
            .filter(|p| p.role == Role::Under)
            .count()
    };
    let mut r = Vec::with_capacity(m);
    let mut u = Vec::with_capacity(m);
    for i in 0..m {
        let mut row = Vec::new();
        for (pos, p) in code.strand(i).iter().enumerate() {
            if p.role != Role::Under {
                continue;
            }
            let (os, op) = code
                .partner(i, pos)
                .expect("valid code pairs every crossing");
            row.push(OverpassLetter {
                strand: os + 1,
                arc: arc_at(os, op),
                exp: p.sign,
            });
        }
        r.push(row.len() + 1);
        u.push(row);
    }
    Ok(WirtingerData { m, r, u })
}

/// Eta images of every arc generator as reduced meridian words, at
/// recursion depth `q`. Depth 1 sends a_ij to the meridian of strand i;
/// each further level conjugates the meridian by the image of the prefix
/// product v_ij of overpass letters.
pub fn eta(data: &WirtingerData, q: usize) -> BTreeMap<(usize, usize), Word> {
    assert!(q >= 1, "eta depth must be at least 1");
    let mut level: BTreeMap<(usize, usize), Word> = BTreeMap::new();
    for i in 1..=data.m {
        for j in 1..=data.arc_count(i) {
            level.insert((i, j), Word::gen(Gen::meridian(i)));
        }
    }
    for _ in 1..q {
        let mut next = BTreeMap::new();
        for i in 1..=data.m {
            let meridian = Word::gen(Gen::meridian(i));
            next.insert((i, 1), meridian.clone());
            let mut prefix = Word::empty();
            for j in 1..data.arc_count(i) {
                let letter = data.u(i, j);
                let image = &level[&(letter.strand, letter.arc)];
                let image = if letter.exp == 1 {
                    image.clone()
                } else {
                    image.invert()
                };
                prefix = prefix.multiply(&image);
                next.insert((i, j + 1), meridian.conjugate(&prefix));
            }
        }
        level = next;
    }
    level
}

fn framing_exponent(data: &WirtingerData, i: usize) -> i64 {
    -data
        .u_row(i)
        .iter()
        .filter(|l| l.strand == i)
        .map(|l| l.exp as i64)
        .sum::<i64>()
}

/// The i-th preferred longitude as a meridian word at eta depth `q`,
/// with `extra_framing` added to the zero-framing exponent (0 gives the
/// preferred longitude).
pub fn longitude_with_framing(
    data: &WirtingerData,
    i: usize,
    q: usize,
    extra_framing: i64,
) -> Result<Word, InvariantError> {
    if i < 1 || i > data.m {
        return Err(InvariantError::StrandOutOfRange { index: i, m: data.m });
    }
    let images = eta(data, q);
    let s = framing_exponent(data, i) + extra_framing;
    let mut word = Word::gen(Gen::meridian(i)).pow(s);
    for letter in data.u_row(i) {
        let image = &images[&(letter.strand, letter.arc)];
        word = word.multiply(&if letter.exp == 1 {
            image.clone()
        } else {
            image.invert()
        });
    }
    Ok(word)
}

/// The i-th preferred (zero-framed) longitude at eta depth `q`.
pub fn longitude(data: &WirtingerData, i: usize, q: usize) -> Result<Word, InvariantError> {
    longitude_with_framing(data, i, q, 0)
}

/// Magnus expansions of the eta images, computed level by level in the
/// truncated ring. Entry [i-1][j-1] is E(phi(eta_q(a_ij))) at truncation
/// degree `deg`.
fn eta_series(data: &WirtingerData, q: usize, deg: usize) -> Vec<Vec<TruncSeries>> {
    let m = data.m;
    let meridian: Vec<TruncSeries> = (1..=m)
        .map(|i| TruncSeries::one_plus_var(m, deg, i).expect("index in range"))
        .collect();
    let mut level: Vec<Vec<TruncSeries>> = (1..=m)
        .map(|i| vec![meridian[i - 1].clone(); data.arc_count(i)])
        .collect();
    for _ in 1..q {
        let inv: Vec<Vec<TruncSeries>> = level
            .iter()
            .map(|row| {
                row.iter()
                    .map(|s| s.inverse().expect("eta images have constant term 1"))
                    .collect()
            })
            .collect();
        let mut next: Vec<Vec<TruncSeries>> = Vec::with_capacity(m);
        for i in 1..=m {
            let mut row = Vec::with_capacity(data.arc_count(i));
            row.push(meridian[i - 1].clone());
            let mut prefix = TruncSeries::one(m, deg);
            let mut prefix_inv = TruncSeries::one(m, deg);
            for j in 1..data.arc_count(i) {
                let letter = data.u(i, j);
                let (fwd, bwd) = if letter.exp == 1 {
                    (
                        &level[letter.strand - 1][letter.arc - 1],
                        &inv[letter.strand - 1][letter.arc - 1],
                    )
                } else {
                    (
                        &inv[letter.strand - 1][letter.arc - 1],
                        &level[letter.strand - 1][letter.arc - 1],
                    )
                };
                prefix = prefix.mul(fwd).expect("compatible series");
                prefix_inv = bwd.mul(&prefix_inv).expect("compatible series");
                let conj = prefix_inv
                    .mul(&meridian[i - 1])
                    .and_then(|s| s.mul(&prefix))
                    .expect("compatible series");
                row.push(conj);
            }
            next.push(row);
        }
        level = next;
    }
    level
}

/// Magnus expansion of the i-th preferred longitude, computed without
/// materializing the longitude word.
pub fn longitude_series(
    data: &WirtingerData,
    i: usize,
    q: usize,
    deg: usize,
) -> Result<TruncSeries, InvariantError> {
    if i < 1 || i > data.m {
        return Err(InvariantError::StrandOutOfRange { index: i, m: data.m });
    }
    let images = eta_series(data, q, deg);
    Ok(longitude_series_from(data, &images, i, deg, 0))
}

fn longitude_series_from(
    data: &WirtingerData,
    images: &[Vec<TruncSeries>],
    i: usize,
    deg: usize,
    extra_framing: i64,
) -> TruncSeries {
    let m = data.m;
    let s = framing_exponent(data, i) + extra_framing;
    let meridian = TruncSeries::one_plus_var(m, deg, i).expect("index in range");
    let mut out = meridian.pow(s).expect("constant term 1");
    for letter in data.u_row(i) {
        let image = &images[letter.strand - 1][letter.arc - 1];
        let factor = if letter.exp == 1 {
            image.clone()
        } else {
            image.inverse().expect("constant term 1")
        };
        out = out.mul(&factor).expect("compatible series");
    }
    out
}

fn check_sequence(seq: &[usize], m: usize) -> Result<(), InvariantError> {
    if seq.len() < 2 {
        return Err(InvariantError::SequenceTooShort(seq.len()));
    }
    for &e in seq {
        if e < 1 || e > m {
            return Err(InvariantError::EntryOutOfRange { entry: e, m });
        }
    }
    Ok(())
}

/// The welded Milnor invariant mu^w(I): for I = j_1 ... j_k i, the
/// coefficient of X_{j_1} ... X_{j_k} in the Magnus expansion of the i-th
/// preferred longitude at eta depth |I|.
pub fn milnor(code: &GaussCode, seq: &[usize]) -> Result<BigInt, InvariantError> {
    check_sequence(seq, code.strand_count())?;
    let data = wirtinger(code)?;
    let q = seq.len();
    let deg = seq.len() - 1;
    let i = seq[seq.len() - 1];
    let series = longitude_series(&data, i, q, deg)?;
    Ok(series
        .coefficient(&seq[..seq.len() - 1])
        .expect("monomial within truncation"))
}

/// Same invariant with a framing offset on the longitude; used to check
/// that non-repeated invariants do not depend on the framing choice.
pub fn milnor_with_framing(
    code: &GaussCode,
    seq: &[usize],
    extra_framing: i64,
) -> Result<BigInt, InvariantError> {
    check_sequence(seq, code.strand_count())?;
    let data = wirtinger(code)?;
    let q = seq.len();
    let deg = seq.len() - 1;
    let i = seq[seq.len() - 1];
    let images = eta_series(&data, q, deg);
    let series = longitude_series_from(&data, &images, i, deg, extra_framing);
    Ok(series
        .coefficient(&seq[..seq.len() - 1])
        .expect("monomial within truncation"))
}

/// All index sequences over {1..m} of the given length, lexicographically,
/// optionally restricted to pairwise-distinct entries.
pub fn sequences(m: usize, len: usize, non_repeated: bool) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn rec(m: usize, len: usize, non_repeated: bool, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for e in 1..=m {
            if non_repeated && cur.contains(&e) {
                continue;
            }
            cur.push(e);
            rec(m, len, non_repeated, cur, out);
            cur.pop();
        }
    }
    rec(m, len, non_repeated, &mut cur, &mut out);
    out
}

/// Table of Milnor invariants for all sequences of length 2..=max_len.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantTable {
    m: usize,
    max_len: usize,
    non_repeated: bool,
    values: BTreeMap<Vec<usize>, BigInt>,
}

impl InvariantTable {
    pub fn strand_count(&self) -> usize {
        self.m
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn non_repeated(&self) -> bool {
        self.non_repeated
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value(&self, seq: &[usize]) -> Option<&BigInt> {
        self.values.get(seq)
    }

    /// Rows in the canonical order: by sequence length, then lexicographic.
    pub fn rows(&self) -> Vec<(&Vec<usize>, &BigInt)> {
        let mut rows: Vec<_> = self.values.iter().collect();
        rows.sort_by_key(|(seq, _)| (seq.len(), (*seq).clone()));
        rows
    }

    /// Reduces every value into [0, n).
    pub fn reduce_mod(&self, n: u64) -> InvariantTable {
        assert!(n >= 1);
        let n = BigInt::from(n);
        InvariantTable {
            m: self.m,
            max_len: self.max_len,
            non_repeated: self.non_repeated,
            values: self
                .values
                .iter()
                .map(|(k, v)| (k.clone(), ((v % &n) + &n) % &n))
                .collect(),
        }
    }

    /// Entrywise congruence mod n. Tables must cover the same sequences.
    pub fn congruent_mod(&self, other: &InvariantTable, n: u64) -> bool {
        self.values.len() == other.values.len()
            && self
                .reduce_mod(n)
                .values
                .iter()
                .zip(other.reduce_mod(n).values.iter())
                .all(|((ka, va), (kb, vb))| ka == kb && va == vb)
    }

    /// mu(ij) - mu(ji); both strands 1-based.
    pub fn vlk_difference(&self, i: usize, j: usize) -> BigInt {
        let a = self.values.get(&vec![i, j]).cloned().unwrap_or_default();
        let b = self.values.get(&vec![j, i]).cloned().unwrap_or_default();
        a - b
    }

    /// TSV dump: `sequence<TAB>value`, rows ordered by length then
    /// lexicographically.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("sequence\tvalue\n");
        for (seq, v) in self.rows() {
            let joined = seq
                .iter()
                .map(|e| e.to_string())
                .collect::<Vec<_>>()
                .join(",");
            let _ = writeln!(out, "{}\t{}", joined, v);
        }
        out
    }
}

/// Computes every Milnor invariant of length 2..=max_len in one eta run
/// at depth max_len (the values stabilize for any depth >= |I|, which the
/// test suite checks against per-sequence runs).
pub fn invariant_table(
    code: &GaussCode,
    max_len: usize,
    non_repeated: bool,
) -> Result<InvariantTable, InvariantError> {
    assert!(max_len >= 2, "table needs max_len >= 2");
    let m = code.strand_count();
    let data = wirtinger(code)?;
    let q = max_len;
    let deg = max_len - 1;
    let images = eta_series(&data, q, deg);
    let longitudes: Vec<TruncSeries> = (1..=m)
        .map(|i| longitude_series_from(&data, &images, i, deg, 0))
        .collect();
    let mut values = BTreeMap::new();
    for len in 2..=max_len {
        for seq in sequences(m, len, non_repeated) {
            let i = seq[len - 1];
            let coeff = longitudes[i - 1]
                .coefficient(&seq[..len - 1])
                .expect("monomial within truncation");
            values.insert(seq, coeff);
        }
    }
    Ok(InvariantTable {
        m,
        max_len,
        non_repeated,
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gausscode::Passage;
    use crate::magnus::magnus_expand;
    use crate::rng::Rng;
    use num_traits::Zero;

    /// One crossing, strand 2 over strand 1 (1-based), sign +1.
    fn w21() -> GaussCode {
        GaussCode::new(vec![
            vec![Passage::under(1, 1)],
            vec![Passage::over(1, 1)],
        ])
        .unwrap()
    }

    /// One crossing, strand 1 over strand 2, sign +1.
    fn w12() -> GaussCode {
        GaussCode::new(vec![
            vec![Passage::over(1, 1)],
            vec![Passage::under(1, 1)],
        ])
        .unwrap()
    }

    /// Classical full twist on two strands: two +1 crossings.
    fn full_twist() -> GaussCode {
        GaussCode::new(vec![
            vec![Passage::over(1, 1), Passage::under(2, 1)],
            vec![Passage::under(1, 1), Passage::over(2, 1)],
        ])
        .unwrap()
    }

    #[test]
    fn wirtinger_of_identity() {
        let data = wirtinger(&GaussCode::identity(3)).unwrap();
        for i in 1..=3 {
            assert_eq!(data.arc_count(i), 1);
            assert!(data.u_row(i).is_empty());
        }
    }

    #[test]
    fn wirtinger_of_single_crossing() {
        let data = wirtinger(&w12()).unwrap();
        assert_eq!(data.arc_count(1), 1);
        assert_eq!(data.arc_count(2), 2);
        assert_eq!(
            data.u(2, 1),
            OverpassLetter {
                strand: 1,
                arc: 1,
                exp: 1
            }
        );
    }

    #[test]
    fn wirtinger_of_w21_squared() {
        let code = w21().stack(&w21()).unwrap();
        let data = wirtinger(&code).unwrap();
        assert_eq!(data.arc_count(1), 3);
        assert_eq!(data.arc_count(2), 1);
        let exp = OverpassLetter {
            strand: 2,
            arc: 1,
            exp: 1,
        };
        assert_eq!(data.u(1, 1), exp);
        assert_eq!(data.u(1, 2), exp);
    }

    #[test]
    fn eta_depth_one_collapses_to_meridians() {
        let data = wirtinger(&full_twist()).unwrap();
        let images = eta(&data, 1);
        for ((i, _), w) in images.iter() {
            assert_eq!(w, &Word::gen(Gen::meridian(*i)));
        }
    }

    #[test]
    fn eta_one_step_of_single_crossing() {
        let data = wirtinger(&w12()).unwrap();
        let images = eta(&data, 2);
        let exp = Word::from_letters([
            (Gen::meridian(1), -1),
            (Gen::meridian(2), 1),
            (Gen::meridian(1), 1),
        ]);
        assert_eq!(images[&(2, 2)], exp);
        assert_eq!(images[&(1, 1)], Word::gen(Gen::meridian(1)));
    }

    #[test]
    fn eta_identity_is_stable() {
        let data = wirtinger(&GaussCode::identity(2)).unwrap();
        for q in 1..=4 {
            let images = eta(&data, q);
            assert_eq!(images[&(1, 1)], Word::gen(Gen::meridian(1)));
            assert_eq!(images[&(2, 1)], Word::gen(Gen::meridian(2)));
        }
    }

    #[test]
    fn longitudes_of_identity_are_trivial() {
        let data = wirtinger(&GaussCode::identity(3)).unwrap();
        for i in 1..=3 {
            assert!(longitude(&data, i, 3).unwrap().is_empty());
        }
    }

    #[test]
    fn longitudes_of_single_crossing() {
        let data = wirtinger(&w12()).unwrap();
        assert_eq!(longitude(&data, 2, 2).unwrap(), Word::gen(Gen::meridian(1)));
        assert!(longitude(&data, 1, 2).unwrap().is_empty());
        assert!(longitude(&data, 9, 2).is_err());
    }

    #[test]
    fn milnor_of_identity_vanishes() {
        let code = GaussCode::identity(3);
        for seq in sequences(3, 2, false)
            .into_iter()
            .chain(sequences(3, 3, false))
        {
            assert_eq!(milnor(&code, &seq).unwrap(), BigInt::from(0));
        }
    }

    #[test]
    fn milnor_is_asymmetric_on_one_crossing() {
        assert_eq!(milnor(&w12(), &[1, 2]).unwrap(), BigInt::from(1));
        assert_eq!(milnor(&w12(), &[2, 1]).unwrap(), BigInt::from(0));
        assert_eq!(milnor(&w21(), &[2, 1]).unwrap(), BigInt::from(1));
        assert_eq!(milnor(&w21(), &[1, 2]).unwrap(), BigInt::from(0));
    }

    #[test]
    fn milnor_of_full_twist_is_linking_number() {
        let code = full_twist();
        assert_eq!(milnor(&code, &[1, 2]).unwrap(), BigInt::from(1));
        assert_eq!(milnor(&code, &[2, 1]).unwrap(), BigInt::from(1));
        // Two stacked full twists: linking number 2.
        let code2 = code.stack(&code).unwrap();
        assert_eq!(milnor(&code2, &[1, 2]).unwrap(), BigInt::from(2));
        assert_eq!(milnor(&code2, &[2, 1]).unwrap(), BigInt::from(2));
    }

    #[test]
    fn milnor_rejects_bad_sequences() {
        assert!(milnor(&w21(), &[1]).is_err());
        assert!(milnor(&w21(), &[1, 7]).is_err());
    }

    #[test]
    fn table_of_trivial_link() {
        let table = invariant_table(&GaussCode::identity(3), 3, true).unwrap();
        assert_eq!(table.len(), 12); // 6 pairs + 6 triples
        assert!(table.rows().iter().all(|(_, v)| v.is_zero()));
    }

    #[test]
    fn table_of_w21() {
        let table = invariant_table(&w21(), 2, true).unwrap();
        assert_eq!(table.value(&[2, 1]).unwrap(), &BigInt::from(1));
        assert_eq!(table.value(&[1, 2]).unwrap(), &BigInt::from(0));
    }

    #[test]
    fn table_tsv_order_and_format() {
        let table = invariant_table(&w21(), 2, true).unwrap();
        assert_eq!(table.to_tsv(), "sequence\tvalue\n1,2\t0\n2,1\t1\n");
    }

    #[test]
    fn stacking_additivity_at_degree_two() {
        let mut rng = Rng::new(11);
        for _ in 0..10 {
            let a = GaussCode::random(3, 6, &mut rng);
            let b = GaussCode::random(3, 6, &mut rng);
            let ab = a.stack(&b).unwrap();
            for seq in sequences(3, 2, true) {
                let sum = milnor(&a, &seq).unwrap() + milnor(&b, &seq).unwrap();
                assert_eq!(milnor(&ab, &seq).unwrap(), sum);
            }
        }
    }

    #[test]
    fn word_and_series_routes_agree() {
        let mut rng = Rng::new(23);
        for _ in 0..12 {
            let code = GaussCode::random(3, 5, &mut rng);
            let data = wirtinger(&code).unwrap();
            for q in 2..=3usize {
                let deg = q - 1;
                for i in 1..=3 {
                    let word = longitude(&data, i, q).unwrap();
                    let via_word = magnus_expand(&word, 3, deg).unwrap();
                    let via_series = longitude_series(&data, i, q, deg).unwrap();
                    assert_eq!(via_word, via_series);
                }
            }
        }
    }

    #[test]
    fn stabilization_in_eta_depth() {
        let mut rng = Rng::new(31);
        for _ in 0..8 {
            let code = GaussCode::random(3, 6, &mut rng);
            let data = wirtinger(&code).unwrap();
            for seq in sequences(3, 2, false).into_iter().chain(sequences(3, 3, false)) {
                let q0 = seq.len();
                let i = seq[seq.len() - 1];
                let base = longitude_series(&data, i, q0, q0 - 1)
                    .unwrap()
                    .coefficient(&seq[..seq.len() - 1])
                    .unwrap();
                for q in q0 + 1..=q0 + 2 {
                    let more = longitude_series(&data, i, q, q0 - 1)
                        .unwrap()
                        .coefficient(&seq[..seq.len() - 1])
                        .unwrap();
                    assert_eq!(base, more);
                }
            }
        }
    }

    #[test]
    fn framing_choice_does_not_move_non_repeated_invariants() {
        let mut rng = Rng::new(41);
        for _ in 0..8 {
            let code = GaussCode::random(3, 6, &mut rng);
            for seq in sequences(3, 2, true).into_iter().chain(sequences(3, 3, true)) {
                let a = milnor(&code, &seq).unwrap();
                let b = milnor_with_framing(&code, &seq, 1).unwrap();
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn scramble_preserves_the_table() {
        let mut rng = Rng::new(53);
        for trial in 0..6 {
            let code = GaussCode::random(3, 6, &mut rng);
            let scrambled = code.scramble(30, 1000 + trial);
            let before = invariant_table(&code, 3, false).unwrap();
            let after = invariant_table(&scrambled, 3, false).unwrap();
            assert_eq!(before, after);
        }
    }
}
