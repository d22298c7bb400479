//! w-trees, their expansion into w-arrows, surgery on Gauss codes, the
//! generator links W_Ii and the normal-form constructions.
//!
//! In Gauss-code terms a w-arrow inserts exactly one classical crossing:
//! an over-passage at its tail site and an under-passage at its head site,
//! with sign +1 for untwisted arrows and -1 for twisted ones. Expanding a
//! higher-degree tree produces the arrow sequence spelling the iterated
//! commutator of its subtrees, so the head strand's longitude picks up
//! the corresponding bracket word.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::gausscode::{GaussCode, MoveError, Passage};
use crate::milnor::{invariant_table, InvariantError};

#[derive(Debug, Error)]
pub enum WTreeError {
    #[error("sequence {seq:?} is not in S_k({head}): {reason}")]
    BadGeneratorIndex {
        seq: Vec<usize>,
        head: usize,
        reason: String,
    },
    #[error("modulus must be at least 1")]
    BadModulus,
    #[error("normal-form exponent {0} exceeds the stacking budget")]
    ExponentOverflow(BigInt),
    #[error(transparent)]
    Move(#[from] MoveError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
}

/// A degree-1 w-tree: tail and head sites plus a twist parity.
/// Sites are (strand, position) with 0-based strands.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WArrow {
    pub tail: (usize, usize),
    pub head: (usize, usize),
    pub twist: bool,
}

/// Unrooted part of a w-tree: a leaf is a tail site, an inner node joins
/// two subtrees. Each child edge carries a twist parity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tree {
    Leaf { tail: (usize, usize) },
    Node {
        left: Box<Tree>,
        left_twist: bool,
        right: Box<Tree>,
        right_twist: bool,
    },
}

impl Tree {
    pub fn leaf(strand: usize, pos: usize) -> Tree {
        Tree::Leaf { tail: (strand, pos) }
    }

    pub fn degree(&self) -> usize {
        match self {
            Tree::Leaf { .. } => 1,
            Tree::Node { left, right, .. } => left.degree() + right.degree(),
        }
    }
}

/// A w-tree for a diagram: tree part, head site, and the twist parity of
/// the terminal edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedTree {
    pub tree: Tree,
    pub head: (usize, usize),
    pub terminal_twist: bool,
}

impl RootedTree {
    pub fn degree(&self) -> usize {
        self.tree.degree()
    }

    /// Expands the tree into the equivalent w-arrow sequence by applying
    /// the expansion move at the root until only arrows remain. The arrows
    /// are listed in the order their heads are met along the head strand;
    /// an inner node contributes the commutator pattern
    /// `inv(A) inv(B) A B` of its subtree expansions, and a twist inverts
    /// the subsequence it decorates (reverse and flip every arrow twist).
    pub fn expand(&self) -> Vec<WArrow> {
        let mut arrows = expand_tree(&self.tree, self.head);
        if self.terminal_twist {
            invert(&mut arrows);
        }
        arrows
    }
}

fn invert(arrows: &mut [WArrow]) {
    arrows.reverse();
    for a in arrows.iter_mut() {
        a.twist = !a.twist;
    }
}

fn expand_tree(tree: &Tree, head: (usize, usize)) -> Vec<WArrow> {
    match tree {
        Tree::Leaf { tail } => vec![WArrow {
            tail: *tail,
            head,
            twist: false,
        }],
        Tree::Node {
            left,
            left_twist,
            right,
            right_twist,
        } => {
            let mut a = expand_tree(left, head);
            if *left_twist {
                invert(&mut a);
            }
            let mut b = expand_tree(right, head);
            if *right_twist {
                invert(&mut b);
            }
            let mut out = Vec::with_capacity(2 * (a.len() + b.len()));
            let mut a_inv = a.clone();
            invert(&mut a_inv);
            let mut b_inv = b.clone();
            invert(&mut b_inv);
            out.extend(a_inv);
            out.extend(b_inv);
            out.extend(a);
            out.extend(b);
            out
        }
    }
}

/// Surgery along a sequence of w-arrows. Every position refers to the
/// input code; arrows sharing a site are inserted in sequence order, so
/// earlier arrows are met earlier along the strand.
pub fn surgery(code: &GaussCode, arrows: &[WArrow]) -> Result<GaussCode, MoveError> {
    let m = code.strand_count();
    for a in arrows {
        for &(s, p) in [&a.tail, &a.head] {
            if s >= m {
                return Err(MoveError::NoSuchStrand(s));
            }
            if p > code.strand(s).len() {
                return Err(MoveError::OutOfRange { strand: s, pos: p });
            }
        }
    }
    let base = code
        .strands()
        .iter()
        .flatten()
        .map(|p| p.id)
        .max()
        .unwrap_or(0);
    // Collect insertions per (strand, position), keeping sequence order.
    let mut inserts: BTreeMap<(usize, usize), Vec<Passage>> = BTreeMap::new();
    for (k, a) in arrows.iter().enumerate() {
        let id = base + 1 + k as u32;
        let sign = if a.twist { -1 } else { 1 };
        inserts
            .entry(a.tail)
            .or_default()
            .push(Passage::over(id, sign));
        inserts
            .entry(a.head)
            .or_default()
            .push(Passage::under(id, sign));
    }
    let mut strands = Vec::with_capacity(m);
    for (s, old) in code.strands().iter().enumerate() {
        let mut strand = Vec::with_capacity(old.len());
        for pos in 0..=old.len() {
            if let Some(new) = inserts.get(&(s, pos)) {
                strand.extend_from_slice(new);
            }
            if pos < old.len() {
                strand.push(old[pos]);
            }
        }
        strands.push(strand);
    }
    let out = GaussCode::new(strands).expect("surgery preserves validity");
    Ok(out)
}

/// Surgery along a single w-tree: surgery along its expansion.
pub fn tree_surgery(code: &GaussCode, tree: &RootedTree) -> Result<GaussCode, MoveError> {
    surgery(code, &tree.expand())
}

/// The sequences of S_k(i): k distinct integers in {1..m} minus {i} whose
/// last entry is the largest, in lexicographic order.
pub fn s_k_sequences(m: usize, k: usize, i: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::with_capacity(k);
    fn rec(m: usize, k: usize, i: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            if k == 1 || cur[..k - 1].iter().all(|&e| e < cur[k - 1]) {
                out.push(cur.clone());
            }
            return;
        }
        for e in 1..=m {
            if e == i || cur.contains(&e) {
                continue;
            }
            cur.push(e);
            rec(m, k, i, cur, out);
            cur.pop();
        }
    }
    rec(m, k, i, &mut cur, &mut out);
    out
}

fn check_s_k(m: usize, seq: &[usize], head: usize) -> Result<(), WTreeError> {
    let fail = |reason: &str| {
        Err(WTreeError::BadGeneratorIndex {
            seq: seq.to_vec(),
            head,
            reason: reason.into(),
        })
    };
    if seq.is_empty() {
        return fail("sequence is empty");
    }
    if head < 1 || head > m {
        return fail("head strand out of range");
    }
    let mut seen = vec![false; m + 1];
    for &e in seq {
        if e < 1 || e > m {
            return fail("entry out of range");
        }
        if e == head {
            return fail("entry equals the head strand");
        }
        if seen[e] {
            return fail("entries must be distinct");
        }
        seen[e] = true;
    }
    let last = seq[seq.len() - 1];
    if seq[..seq.len() - 1].iter().any(|&e| e >= last) {
        return fail("last entry must be the largest");
    }
    Ok(())
}

/// The w-tree T_Ii for the trivial diagram 1_m: the caterpillar whose
/// spine runs from the head on strand i out to the tail on strand j_k,
/// with the tails j_1 .. j_{k-1} hanging off in order. Its surgery word
/// is the right-normed commutator [a_{j_1}, [a_{j_2}, [... a_{j_k}]]],
/// the bracket whose only Magnus monomial ending in the largest index is
/// X_{j_1}...X_{j_k} itself. With `inverse` set, the terminal edge
/// carries a twist, giving W_Ii^{-1}.
pub fn generator_tree(
    m: usize,
    seq: &[usize],
    head: usize,
    inverse: bool,
) -> Result<RootedTree, WTreeError> {
    check_s_k(m, seq, head)?;
    let mut tree = Tree::leaf(seq[seq.len() - 1] - 1, 0);
    for &j in seq[..seq.len() - 1].iter().rev() {
        tree = Tree::Node {
            left: Box::new(Tree::leaf(j - 1, 0)),
            left_twist: false,
            right: Box::new(tree),
            right_twist: false,
        };
    }
    Ok(RootedTree {
        tree,
        head: (head - 1, 0),
        terminal_twist: inverse,
    })
}

/// The generator link W_Ii (or its inverse): surgery on 1_m along T_Ii.
/// `seq` and `head` are 1-based strand numbers with `seq` in S_k(head).
pub fn generator(
    m: usize,
    seq: &[usize],
    head: usize,
    inverse: bool,
) -> Result<GaussCode, WTreeError> {
    let tree = generator_tree(m, seq, head, inverse)?;
    Ok(tree_surgery(&GaussCode::identity(m), &tree).expect("sites exist on 1_m"))
}

/// `W_Ii^x` for a signed exponent: |x| stacked copies, inverse trees for
/// negative x.
pub fn generator_power(
    m: usize,
    seq: &[usize],
    head: usize,
    x: &BigInt,
) -> Result<GaussCode, WTreeError> {
    let count = x
        .abs()
        .to_usize()
        .filter(|&c| c <= 100_000)
        .ok_or_else(|| WTreeError::ExponentOverflow(x.clone()))?;
    let single = generator(m, seq, head, x.is_negative())?;
    Ok(single.stack_power(count))
}

/// Exponent table attached to a normal form: one row per generator
/// position (k, head, I), in the canonical product order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentTable {
    rows: Vec<ExponentRow>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentRow {
    pub k: usize,
    pub head: usize,
    pub seq: Vec<usize>,
    pub exponent: BigInt,
}

impl ExponentTable {
    pub fn rows(&self) -> &[ExponentRow] {
        &self.rows
    }

    pub fn get(&self, head: usize, seq: &[usize]) -> Option<&BigInt> {
        self.rows
            .iter()
            .find(|r| r.head == head && r.seq == seq)
            .map(|r| &r.exponent)
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.exponent.is_zero())
    }

    /// TSV dump: columns `k`, `i`, `I`, `exponent`.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("k\ti\tI\texponent\n");
        for r in &self.rows {
            let joined = r
                .seq
                .iter()
                .map(|e| e.to_string())
                .collect::<Vec<_>>()
                .join(",");
            let _ = writeln!(out, "{}\t{}\t{}\t{}", r.k, r.head, joined, r.exponent);
        }
        out
    }
}

/// All generator positions for m strands in canonical order: k ascending,
/// then head strand ascending, then I lexicographic.
pub fn generator_positions(m: usize) -> Vec<(usize, usize, Vec<usize>)> {
    let mut out = Vec::new();
    for k in 1..m {
        for i in 1..=m {
            for seq in s_k_sequences(m, k, i) {
                out.push((k, i, seq));
            }
        }
    }
    out
}

/// sv normal form: peels the invariants level by level, emitting
/// W_Ii^{x_I} with x read off the difference between the input's
/// invariants and the partial product's. The result is sv-equivalent to
/// the input, so its non-repeated invariants match the input's exactly.
pub fn normal_form_sv(code: &GaussCode) -> Result<(GaussCode, ExponentTable), WTreeError> {
    let m = code.strand_count();
    let mut rows = Vec::new();
    let mut partial = GaussCode::identity(m);
    if m < 2 {
        return Ok((partial, ExponentTable { rows }));
    }
    let table = invariant_table(code, m, true)?;
    for k in 1..m {
        let partial_table = invariant_table(&partial, m, true)?;
        let mut level = Vec::new();
        for i in 1..=m {
            for seq in s_k_sequences(m, k, i) {
                let mut target = seq.clone();
                target.push(i);
                let x = table.value(&target).cloned().unwrap_or_default()
                    - partial_table.value(&target).cloned().unwrap_or_default();
                level.push((i, seq, x));
            }
        }
        for (i, seq, x) in level {
            if !x.is_zero() {
                let block = generator_power(m, &seq, i, &x)?;
                partial = partial.stack(&block).expect("same strand count");
            }
            rows.push(ExponentRow {
                k,
                head: i,
                seq,
                exponent: x,
            });
        }
    }
    Ok((partial, ExponentTable { rows }))
}

fn mod_reduce(x: &BigInt, n: u64) -> BigInt {
    let n = BigInt::from(n);
    ((x % &n) + &n) % &n
}

/// Builds the stacked product for a full exponent assignment in canonical
/// order, skipping zero exponents.
fn build_product(m: usize, rows: &[ExponentRow]) -> Result<GaussCode, WTreeError> {
    let mut out = GaussCode::identity(m);
    for r in rows {
        if r.exponent.is_zero() {
            continue;
        }
        let block = generator_power(m, &r.seq, r.head, &r.exponent)?;
        out = out.stack(&block).expect("same strand count");
    }
    Ok(out)
}

/// (2n+sv) normal form. Exponents of degree >= 2 generators and the y
/// exponent of each pair reduce into [0, n); the opposite pair exponent
/// absorbs the difference so that mu(ij) - mu(ji) is preserved exactly.
pub fn normal_form_2n_sv(
    code: &GaussCode,
    n: u64,
) -> Result<(GaussCode, ExponentTable), WTreeError> {
    if n < 1 {
        return Err(WTreeError::BadModulus);
    }
    let m = code.strand_count();
    let (_, x_table) = normal_form_sv(code)?;
    let mut rows: Vec<ExponentRow> = x_table.rows().to_vec();
    // Degree 1: for each pair i < j reduce y_j (the W_ji exponent, head i)
    // and shift z_i (the W_ij exponent, head j) by the same amount.
    for i in 1..=m {
        for j in i + 1..=m {
            let x_j = x_table.get(i, &[j]).cloned().unwrap_or_default();
            let x_i = x_table.get(j, &[i]).cloned().unwrap_or_default();
            let y_j = mod_reduce(&x_j, n);
            let z_i = &x_i + (&y_j - &x_j);
            for r in rows.iter_mut() {
                if r.k == 1 && r.head == i && r.seq == [j] {
                    r.exponent = y_j.clone();
                } else if r.k == 1 && r.head == j && r.seq == [i] {
                    r.exponent = z_i.clone();
                }
            }
        }
    }
    for r in rows.iter_mut() {
        if r.k >= 2 {
            r.exponent = mod_reduce(&r.exponent, n);
        }
    }
    let product = build_product(m, &rows)?;
    Ok((product, ExponentTable { rows }))
}

/// (V^n+sv) normal form: every exponent reduces into [0, n).
pub fn normal_form_vn_sv(
    code: &GaussCode,
    n: u64,
) -> Result<(GaussCode, ExponentTable), WTreeError> {
    if n < 1 {
        return Err(WTreeError::BadModulus);
    }
    let m = code.strand_count();
    let (_, x_table) = normal_form_sv(code)?;
    let rows: Vec<ExponentRow> = x_table
        .rows()
        .iter()
        .map(|r| ExponentRow {
            exponent: mod_reduce(&r.exponent, n),
            ..r.clone()
        })
        .collect();
    let product = build_product(m, &rows)?;
    Ok((product, ExponentTable { rows }))
}
