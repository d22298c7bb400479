//! Gauss codes for welded string link diagrams.
//!
//! A diagram is stored as per-strand sequences of classical crossing
//! passages; virtual crossings are deliberately not represented, since the
//! virtual moves V1-V4 act trivially on Gauss codes and the Wirtinger
//! presentation ignores them. Welded isotopy therefore acts through the
//! classical Reidemeister patterns R1-R3 plus the overcrossings commute
//! move OC.
//!
//! Strand indices in this module are 0-based; strands run bottom to top,
//! so position 0 is the passage nearest the initial endpoint.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rng::Rng;

/// Which side of a classical crossing a passage takes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Role {
    #[serde(rename = "o")]
    Over,
    #[serde(rename = "u")]
    Under,
}

/// One passage of a strand through a classical crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Passage {
    pub id: u32,
    pub role: Role,
    pub sign: i8,
}

impl Passage {
    pub fn over(id: u32, sign: i8) -> Self {
        Passage {
            id,
            role: Role::Over,
            sign,
        }
    }

    pub fn under(id: u32, sign: i8) -> Self {
        Passage {
            id,
            role: Role::Under,
            sign,
        }
    }
}

/// Locates a two-strand move site: an insertion position on each strand.
/// `strand_a`/`strand_b` may name the same strand with distinct positions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MoveSite {
    pub strand_a: usize,
    pub pos_a: usize,
    pub strand_b: usize,
    pub pos_b: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    ZeroId,
    IdCount { id: u32, count: usize },
    RolePairing { id: u32 },
    SignMismatch { id: u32 },
    BadSign { id: u32, sign: i8 },
    NoStrands,
    StrandCountField { m: usize, found: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ZeroId => write!(f, "crossing id 0 is not positive"),
            Violation::IdCount { id, count } => {
                write!(f, "crossing {} appears {} times, expected 2", id, count)
            }
            Violation::RolePairing { id } => {
                write!(f, "crossing {} does not appear once over and once under", id)
            }
            Violation::SignMismatch { id } => {
                write!(f, "crossing {} carries two different signs", id)
            }
            Violation::BadSign { id, sign } => {
                write!(f, "crossing {} has sign {}, expected 1 or -1", id, sign)
            }
            Violation::NoStrands => write!(f, "diagram must have at least one strand"),
            Violation::StrandCountField { m, found } => {
                write!(f, "strand count field m={} does not match {} strand lists", m, found)
            }
        }
    }
}

#[derive(Debug, Error)]
pub enum CodeError {
    #[error("strand counts differ: {0} vs {1}")]
    StrandMismatch(usize, usize),
    #[error("invalid Gauss code: {}", format_violations(.0))]
    Invalid(Vec<Violation>),
    #[error("diagram JSON parse error: {0}")]
    Json(String),
    #[error("strand count field m={m} does not match {found} strand lists")]
    ShapeMismatch { m: usize, found: usize },
}

fn format_violations(vs: &[Violation]) -> String {
    vs.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MoveError {
    #[error("move pattern does not match at the given site: {0}")]
    PatternMismatch(String),
    #[error("position {pos} out of range on strand {strand}")]
    OutOfRange { strand: usize, pos: usize },
    #[error("strand index {0} out of range")]
    NoSuchStrand(usize),
    #[error("unknown crossing id {0}")]
    UnknownCrossing(u32),
}

/// An m-component welded string link diagram as a Gauss code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaussCode {
    m: usize,
    strands: Vec<Vec<Passage>>,
}

impl GaussCode {
    /// The trivial diagram `1_m`: every strand empty.
    pub fn identity(m: usize) -> Self {
        GaussCode {
            m,
            strands: vec![Vec::new(); m],
        }
    }

    /// Builds a code from explicit strands, validating the result.
    pub fn new(strands: Vec<Vec<Passage>>) -> Result<Self, CodeError> {
        let code = GaussCode {
            m: strands.len(),
            strands,
        };
        code.validate().map_err(CodeError::Invalid)?;
        Ok(code)
    }

    pub fn strand_count(&self) -> usize {
        self.m
    }

    pub fn strands(&self) -> &[Vec<Passage>] {
        &self.strands
    }

    pub fn strand(&self, s: usize) -> &[Passage] {
        &self.strands[s]
    }

    pub fn crossing_count(&self) -> usize {
        self.strands.iter().map(|s| s.len()).sum::<usize>() / 2
    }

    fn max_id(&self) -> u32 {
        self.strands
            .iter()
            .flatten()
            .map(|p| p.id)
            .max()
            .unwrap_or(0)
    }

    /// Checks every structural invariant, reporting all violations found.
    pub fn validate(&self) -> Result<(), Vec<Violation>> {
        let mut violations = Vec::new();
        if self.m == 0 {
            violations.push(Violation::NoStrands);
        }
        if self.strands.len() != self.m {
            violations.push(Violation::StrandCountField {
                m: self.m,
                found: self.strands.len(),
            });
        }
        let mut by_id: std::collections::BTreeMap<u32, Vec<&Passage>> =
            std::collections::BTreeMap::new();
        for p in self.strands.iter().flatten() {
            if p.id == 0 {
                violations.push(Violation::ZeroId);
            }
            if p.sign != 1 && p.sign != -1 {
                violations.push(Violation::BadSign {
                    id: p.id,
                    sign: p.sign,
                });
            }
            by_id.entry(p.id).or_default().push(p);
        }
        for (&id, ps) in by_id.iter() {
            if ps.len() != 2 {
                violations.push(Violation::IdCount {
                    id,
                    count: ps.len(),
                });
                continue;
            }
            if !(ps[0].role == Role::Over && ps[1].role == Role::Under
                || ps[0].role == Role::Under && ps[1].role == Role::Over)
            {
                violations.push(Violation::RolePairing { id });
            }
            if ps[0].sign != ps[1].sign {
                violations.push(Violation::SignMismatch { id });
            }
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(violations)
        }
    }

    /// Stacking product: strand i of the result is strand i of `self`
    /// followed by strand i of `other`, with `other`'s crossings relabelled
    /// past ours.
    pub fn stack(&self, other: &GaussCode) -> Result<GaussCode, CodeError> {
        if self.m != other.m {
            return Err(CodeError::StrandMismatch(self.m, other.m));
        }
        let shift = self.max_id();
        let strands = self
            .strands
            .iter()
            .zip(other.strands.iter())
            .map(|(a, b)| {
                a.iter()
                    .copied()
                    .chain(b.iter().map(|p| Passage {
                        id: p.id + shift,
                        ..*p
                    }))
                    .collect()
            })
            .collect();
        Ok(GaussCode {
            m: self.m,
            strands,
        })
    }

    /// Stacks `k` copies of `self`.
    pub fn stack_power(&self, k: usize) -> GaussCode {
        let mut out = GaussCode::identity(self.m);
        for _ in 0..k {
            out = out.stack(self).expect("same strand count");
        }
        out
    }

    /// Renumbers crossing ids by first appearance in strand-major,
    /// position-minor order. Used for structural comparison only.
    pub fn canonical_relabel(&self) -> GaussCode {
        let mut map = std::collections::HashMap::new();
        let mut next = 1u32;
        for strand in &self.strands {
            for p in strand {
                map.entry(p.id).or_insert_with(|| {
                    let id = next;
                    next += 1;
                    id
                });
            }
        }
        GaussCode {
            m: self.m,
            strands: self
                .strands
                .iter()
                .map(|s| {
                    s.iter()
                        .map(|p| Passage {
                            id: map[&p.id],
                            ..*p
                        })
                        .collect()
                })
                .collect(),
        }
    }

    /// Serializes to the diagram interchange format. Output is canonical:
    /// parsing and re-serializing a canonically relabelled code reproduces
    /// the bytes exactly.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("diagram serialization cannot fail")
    }

    /// Parses and fully validates the diagram interchange format.
    pub fn from_json(text: &str) -> Result<GaussCode, CodeError> {
        let code: GaussCode =
            serde_json::from_str(text).map_err(|e| CodeError::Json(e.to_string()))?;
        if code.strands.len() != code.m {
            return Err(CodeError::ShapeMismatch {
                m: code.m,
                found: code.strands.len(),
            });
        }
        code.validate().map_err(CodeError::Invalid)?;
        Ok(code)
    }

    fn check_site(&self, strand: usize, pos: usize) -> Result<(), MoveError> {
        if strand >= self.m {
            return Err(MoveError::NoSuchStrand(strand));
        }
        if pos > self.strands[strand].len() {
            return Err(MoveError::OutOfRange { strand, pos });
        }
        Ok(())
    }

    fn passage_at(&self, strand: usize, pos: usize) -> Result<Passage, MoveError> {
        if strand >= self.m {
            return Err(MoveError::NoSuchStrand(strand));
        }
        self.strands[strand]
            .get(pos)
            .copied()
            .ok_or(MoveError::OutOfRange { strand, pos })
    }

    /// Finds the other passage of a crossing: `(strand, pos)` of the passage
    /// with the same id but complementary role.
    pub fn partner(&self, strand: usize, pos: usize) -> Result<(usize, usize), MoveError> {
        let p = self.passage_at(strand, pos)?;
        for (s, list) in self.strands.iter().enumerate() {
            for (q, other) in list.iter().enumerate() {
                if other.id == p.id && (s, q) != (strand, pos) {
                    return Ok((s, q));
                }
            }
        }
        Err(MoveError::UnknownCrossing(p.id))
    }

    /// Applies one welded Reidemeister rewrite.
    pub fn apply(&self, mv: &ReidemeisterMove) -> Result<GaussCode, MoveError> {
        let out = self.apply_inner(mv)?;
        debug_assert!(out.validate().is_ok());
        Ok(out)
    }

    fn apply_inner(&self, mv: &ReidemeisterMove) -> Result<GaussCode, MoveError> {
        match *mv {
            ReidemeisterMove::R1Insert {
                strand,
                pos,
                sign,
                under_first,
            } => {
                self.check_site(strand, pos)?;
                if sign != 1 && sign != -1 {
                    return Err(MoveError::PatternMismatch("sign must be 1 or -1".into()));
                }
                let id = self.max_id() + 1;
                let (first, second) = if under_first {
                    (Passage::under(id, sign), Passage::over(id, sign))
                } else {
                    (Passage::over(id, sign), Passage::under(id, sign))
                };
                let mut out = self.clone();
                out.strands[strand].splice(pos..pos, [first, second]);
                Ok(out)
            }
            ReidemeisterMove::R1Delete { strand, pos } => {
                let a = self.passage_at(strand, pos)?;
                let b = self.passage_at(strand, pos + 1)?;
                if a.id != b.id {
                    return Err(MoveError::PatternMismatch(
                        "adjacent passages do not belong to one crossing".into(),
                    ));
                }
                let mut out = self.clone();
                out.strands[strand].drain(pos..=pos + 1);
                Ok(out)
            }
            ReidemeisterMove::R2Insert {
                site,
                sign,
                swap_under,
            } => {
                self.check_site(site.strand_a, site.pos_a)?;
                self.check_site(site.strand_b, site.pos_b)?;
                if sign != 1 && sign != -1 {
                    return Err(MoveError::PatternMismatch("sign must be 1 or -1".into()));
                }
                if site.strand_a == site.strand_b && site.pos_a == site.pos_b {
                    return Err(MoveError::PatternMismatch(
                        "same-strand R2 needs two distinct positions".into(),
                    ));
                }
                let x = self.max_id() + 1;
                let y = x + 1;
                let overs = [Passage::over(x, sign), Passage::over(y, -sign)];
                let unders = if swap_under {
                    [Passage::under(y, -sign), Passage::under(x, sign)]
                } else {
                    [Passage::under(x, sign), Passage::under(y, -sign)]
                };
                let mut out = self.clone();
                if site.strand_a == site.strand_b {
                    // Insert at the higher position first so the lower one stays valid.
                    if site.pos_a > site.pos_b {
                        out.strands[site.strand_a].splice(site.pos_a..site.pos_a, overs);
                        out.strands[site.strand_b].splice(site.pos_b..site.pos_b, unders);
                    } else {
                        out.strands[site.strand_b].splice(site.pos_b..site.pos_b, unders);
                        out.strands[site.strand_a].splice(site.pos_a..site.pos_a, overs);
                    }
                } else {
                    out.strands[site.strand_a].splice(site.pos_a..site.pos_a, overs);
                    out.strands[site.strand_b].splice(site.pos_b..site.pos_b, unders);
                }
                Ok(out)
            }
            ReidemeisterMove::R2Delete { strand, pos } => {
                let a = self.passage_at(strand, pos)?;
                let b = self.passage_at(strand, pos + 1)?;
                if a.role != Role::Over || b.role != Role::Over {
                    return Err(MoveError::PatternMismatch(
                        "R2 deletion needs two adjacent over-passages".into(),
                    ));
                }
                if a.sign != -b.sign {
                    return Err(MoveError::PatternMismatch(
                        "R2 pair must have opposite signs".into(),
                    ));
                }
                let (sa, qa) = self.partner(strand, pos)?;
                let (sb, qb) = self.partner(strand, pos + 1)?;
                if sa != sb || qa.abs_diff(qb) != 1 {
                    return Err(MoveError::PatternMismatch(
                        "under-passages are not adjacent".into(),
                    ));
                }
                let mut out = self.clone();
                // Remove the larger spans first to keep indices valid.
                let mut removals = vec![(strand, pos, pos + 1), (sa, qa.min(qb), qa.max(qb))];
                removals.sort_by_key(|&(s, lo, _)| (s, std::cmp::Reverse(lo)));
                for (s, lo, hi) in removals {
                    out.strands[s].drain(lo..=hi);
                }
                Ok(out)
            }
            ReidemeisterMove::R3 { strand, pos } => self.apply_r3(strand, pos),
            ReidemeisterMove::OcSwap { strand, pos } => {
                let a = self.passage_at(strand, pos)?;
                let b = self.passage_at(strand, pos + 1)?;
                if a.role != Role::Over || b.role != Role::Over {
                    return Err(MoveError::PatternMismatch(
                        "OC needs two adjacent over-passages".into(),
                    ));
                }
                let mut out = self.clone();
                out.strands[strand].swap(pos, pos + 1);
                Ok(out)
            }
        }
    }

    /// R3 in Gauss-code form, braid variant. The site names the strand
    /// segment carrying the two adjacent passages of the top strand; the
    /// same-role pairs on the other two segments are located through the
    /// crossing partners and all three pairs are swapped in place.
    fn apply_r3(&self, strand: usize, pos: usize) -> Result<GaussCode, MoveError> {
        let a = self.passage_at(strand, pos)?;
        let b = self.passage_at(strand, pos + 1)?;
        let mirror = match (a.role, b.role) {
            (Role::Over, Role::Over) => false,
            (Role::Under, Role::Under) => true,
            _ => {
                return Err(MoveError::PatternMismatch(
                    "top pair must have equal roles".into(),
                ))
            }
        };
        let want = if mirror { -1 } else { 1 };
        if a.sign != want || b.sign != want {
            return Err(MoveError::PatternMismatch(
                "crossing signs do not fit the R3 variant".into(),
            ));
        }
        let x = a.id;
        let y = b.id;
        // Middle segment: partner of x followed by a passage of a third
        // crossing z; bottom segment: partners of y and z adjacent.
        let (sm, qm) = self.partner(strand, pos)?;
        if qm + 1 >= self.strands[sm].len() {
            return Err(MoveError::PatternMismatch(
                "no crossing after the middle passage".into(),
            ));
        }
        let zp = self.strands[sm][qm + 1];
        let z = zp.id;
        if z == x || z == y || zp.sign != want {
            return Err(MoveError::PatternMismatch(
                "middle pair does not close an R3 triangle".into(),
            ));
        }
        let (need_mid, need_bot_first, need_bot_second) = if mirror {
            // Mirror variant: middle reads x-Over then z-Under,
            // bottom reads y-Over then z-Over.
            (Role::Under, Role::Over, Role::Over)
        } else {
            // Braid variant: middle reads x-Under then z-Over,
            // bottom reads y-Under then z-Under.
            (Role::Over, Role::Under, Role::Under)
        };
        if zp.role != need_mid {
            return Err(MoveError::PatternMismatch(
                "middle-segment roles do not match".into(),
            ));
        }
        let (sb, qb) = self.partner(strand, pos + 1)?;
        if self.strands[sb].get(qb).map(|p| p.role) != Some(need_bot_first) {
            return Err(MoveError::PatternMismatch(
                "bottom-segment roles do not match".into(),
            ));
        }
        let after = self
            .strands[sb]
            .get(qb + 1)
            .copied()
            .ok_or_else(|| MoveError::PatternMismatch("no passage after bottom pair".into()))?;
        if after.id != z || after.role != need_bot_second {
            return Err(MoveError::PatternMismatch(
                "bottom segment does not meet the third crossing".into(),
            ));
        }
        // The three adjacent pairs must be pairwise disjoint positions.
        let pairs = [(strand, pos), (sm, qm), (sb, qb)];
        for i in 0..3 {
            for j in i + 1..3 {
                let (si, pi) = pairs[i];
                let (sj, pj) = pairs[j];
                if si == sj && pi.abs_diff(pj) < 2 {
                    return Err(MoveError::PatternMismatch(
                        "R3 segment pairs overlap".into(),
                    ));
                }
            }
        }
        let mut out = self.clone();
        for (s, p) in pairs {
            out.strands[s].swap(p, p + 1);
        }
        Ok(out)
    }

    /// All sites where `R1Delete` applies.
    pub fn r1_delete_sites(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (s, strand) in self.strands.iter().enumerate() {
            for p in 0..strand.len().saturating_sub(1) {
                if strand[p].id == strand[p + 1].id {
                    out.push((s, p));
                }
            }
        }
        out
    }

    /// All sites where `R2Delete` applies.
    pub fn r2_delete_sites(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (s, strand) in self.strands.iter().enumerate() {
            for p in 0..strand.len().saturating_sub(1) {
                let site = ReidemeisterMove::R2Delete { strand: s, pos: p };
                if self.apply_inner(&site).is_ok() {
                    out.push((s, p));
                }
            }
        }
        out
    }

    /// All sites where the R3 rewrite applies.
    pub fn r3_sites(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (s, strand) in self.strands.iter().enumerate() {
            for p in 0..strand.len().saturating_sub(1) {
                if self.apply_r3(s, p).is_ok() {
                    out.push((s, p));
                }
            }
        }
        out
    }

    /// All sites where OC applies: adjacent over-passage pairs.
    pub fn oc_sites(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (s, strand) in self.strands.iter().enumerate() {
            for p in 0..strand.len().saturating_sub(1) {
                if strand[p].role == Role::Over && strand[p + 1].role == Role::Over {
                    out.push((s, p));
                }
            }
        }
        out
    }

    /// Applies `steps` random welded Reidemeister rewrites. The output is
    /// welded-isotopic to the input by construction, and identical runs of
    /// the same seed produce identical output.
    pub fn scramble(&self, steps: usize, seed: u64) -> GaussCode {
        let mut rng = Rng::new(seed);
        let mut code = self.clone();
        let soft_cap = 2 * self.crossing_count() + 8;
        for _ in 0..steps {
            code = Self::scramble_step(&code, &mut rng, soft_cap);
        }
        code
    }

    fn scramble_step(code: &GaussCode, rng: &mut Rng, soft_cap: usize) -> GaussCode {
        let growing = code.crossing_count() < soft_cap;
        // (kind, weight); insertions are damped once the code gets large.
        let kinds: [(u8, usize); 6] = [
            (0, if growing { 3 } else { 1 }), // R1 insert
            (1, 3),                           // R1 delete
            (2, if growing { 4 } else { 1 }), // R2 insert
            (3, 4),                           // R2 delete
            (4, 3),                           // R3
            (5, 3),                           // OC
        ];
        let total: usize = kinds.iter().map(|&(_, w)| w).sum();
        let mut roll = rng.below(total);
        let mut kind = 0;
        for &(k, w) in &kinds {
            if roll < w {
                kind = k;
                break;
            }
            roll -= w;
        }
        // Try the rolled kind, then fall through the rest; R1 insertion
        // always applies so the loop terminates.
        for attempt in 0..6 {
            let k = (kind + attempt) % 6;
            if let Some(next) = Self::try_kind(code, k, rng) {
                return next;
            }
        }
        unreachable!("R1 insertion is always applicable");
    }

    fn try_kind(code: &GaussCode, kind: u8, rng: &mut Rng) -> Option<GaussCode> {
        match kind {
            0 => {
                let strand = rng.below(code.m);
                let pos = rng.below(code.strands[strand].len() + 1);
                let mv = ReidemeisterMove::R1Insert {
                    strand,
                    pos,
                    sign: rng.sign(),
                    under_first: rng.coin(),
                };
                code.apply(&mv).ok()
            }
            1 => {
                let sites = code.r1_delete_sites();
                if sites.is_empty() {
                    return None;
                }
                let &(strand, pos) = rng.choose(&sites);
                code.apply(&ReidemeisterMove::R1Delete { strand, pos }).ok()
            }
            2 => {
                let strand_a = rng.below(code.m);
                let strand_b = rng.below(code.m);
                let pos_a = rng.below(code.strands[strand_a].len() + 1);
                let pos_b = rng.below(code.strands[strand_b].len() + 1);
                let mv = ReidemeisterMove::R2Insert {
                    site: MoveSite {
                        strand_a,
                        pos_a,
                        strand_b,
                        pos_b,
                    },
                    sign: rng.sign(),
                    swap_under: rng.coin(),
                };
                code.apply(&mv).ok()
            }
            3 => {
                let sites = code.r2_delete_sites();
                if sites.is_empty() {
                    return None;
                }
                let &(strand, pos) = rng.choose(&sites);
                code.apply(&ReidemeisterMove::R2Delete { strand, pos }).ok()
            }
            4 => {
                let sites = code.r3_sites();
                if sites.is_empty() {
                    return None;
                }
                let &(strand, pos) = rng.choose(&sites);
                code.apply(&ReidemeisterMove::R3 { strand, pos }).ok()
            }
            5 => {
                let sites = code.oc_sites();
                if sites.is_empty() {
                    return None;
                }
                let &(strand, pos) = rng.choose(&sites);
                code.apply(&ReidemeisterMove::OcSwap { strand, pos }).ok()
            }
            _ => None,
        }
    }

    /// Random valid code with the given strand and crossing counts. Every
    /// passage pairing is realizable virtually, so no rejection is needed.
    pub fn random(m: usize, crossings: usize, rng: &mut Rng) -> GaussCode {
        let mut code = GaussCode::identity(m);
        for c in 0..crossings {
            let id = (c + 1) as u32;
            let sign = rng.sign();
            let over_strand = rng.below(m);
            let under_strand = rng.below(m);
            let pos = rng.below(code.strands[over_strand].len() + 1);
            code.strands[over_strand].insert(pos, Passage::over(id, sign));
            let pos = rng.below(code.strands[under_strand].len() + 1);
            code.strands[under_strand].insert(pos, Passage::under(id, sign));
        }
        debug_assert!(code.validate().is_ok());
        code
    }
}

/// A welded Reidemeister rewrite together with its application site.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReidemeisterMove {
    /// Inserts a kink: both passages of a fresh crossing, adjacent on one strand.
    R1Insert {
        strand: usize,
        pos: usize,
        sign: i8,
        under_first: bool,
    },
    /// Deletes the kink whose two passages sit at `pos`, `pos + 1`.
    R1Delete { strand: usize, pos: usize },
    /// Slides one segment over another: adjacent over-passages on
    /// `strand_a` at `pos_a`, matching under-passages on `strand_b` at
    /// `pos_b`, opposite signs. `swap_under` reverses the order of the
    /// under pair (the antiparallel variant).
    R2Insert {
        site: MoveSite,
        sign: i8,
        swap_under: bool,
    },
    /// Deletes an R2 pair, located by its adjacent over-passages.
    R2Delete { strand: usize, pos: usize },
    /// Braid-form triple move located by the top strand's adjacent pair.
    R3 { strand: usize, pos: usize },
    /// Swaps two adjacent over-passages on one strand.
    OcSwap { strand: usize, pos: usize },
}
