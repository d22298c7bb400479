//! Local moves beyond welded isotopy: 2n-moves, V^n-moves and crossing
//! virtualization, as Gauss-code rewrites in both directions.
//!
//! Only the parallel-orientation 2n-move is implemented; the antiparallel
//! variant reduces to it modulo the other available moves. The inserted
//! passage pattern is calibrated so that a +1 insertion on strands i, j
//! raises both mu(ij) and mu(ji) by exactly n.

use crate::gausscode::{GaussCode, MoveError, MoveSite, Passage, Role};

/// Direction of a V^n rewrite: `Classicalize` inserts the block of n
/// classical crossings, `Virtualize` removes it (virtual crossings are
/// not represented, so removal is deletion).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VnDirection {
    Classicalize,
    Virtualize,
}

fn check_insert_site(code: &GaussCode, site: &MoveSite) -> Result<(), MoveError> {
    for &(s, p) in [(site.strand_a, site.pos_a), (site.strand_b, site.pos_b)].iter() {
        if s >= code.strand_count() {
            return Err(MoveError::NoSuchStrand(s));
        }
        if p > code.strand(s).len() {
            return Err(MoveError::OutOfRange { strand: s, pos: p });
        }
    }
    if site.strand_a == site.strand_b && site.pos_a == site.pos_b {
        return Err(MoveError::PatternMismatch(
            "two-strand move needs distinct insertion points".into(),
        ));
    }
    Ok(())
}

fn insert_blocks(
    code: &GaussCode,
    site: &MoveSite,
    block_a: Vec<Passage>,
    block_b: Vec<Passage>,
) -> GaussCode {
    let mut strands: Vec<Vec<Passage>> = code.strands().to_vec();
    if site.strand_a == site.strand_b {
        if site.pos_a > site.pos_b {
            strands[site.strand_a].splice(site.pos_a..site.pos_a, block_a);
            strands[site.strand_b].splice(site.pos_b..site.pos_b, block_b);
        } else {
            strands[site.strand_b].splice(site.pos_b..site.pos_b, block_b);
            strands[site.strand_a].splice(site.pos_a..site.pos_a, block_a);
        }
    } else {
        strands[site.strand_a].splice(site.pos_a..site.pos_a, block_a);
        strands[site.strand_b].splice(site.pos_b..site.pos_b, block_b);
    }
    GaussCode::new(strands).expect("insertion preserves validity")
}

fn max_id(code: &GaussCode) -> u32 {
    code.strands()
        .iter()
        .flatten()
        .map(|p| p.id)
        .max()
        .unwrap_or(0)
}

/// Inserts n full twists (2n crossings) between the two sites. For sign
/// +1 the segment at `strand_a` starts with an over-passage and the roles
/// alternate down both blocks; sign -1 mirrors the pattern.
pub fn insert_2n(
    code: &GaussCode,
    site: &MoveSite,
    n: usize,
    sign: i8,
) -> Result<GaussCode, MoveError> {
    if n < 1 {
        return Err(MoveError::PatternMismatch("n must be at least 1".into()));
    }
    if sign != 1 && sign != -1 {
        return Err(MoveError::PatternMismatch("sign must be 1 or -1".into()));
    }
    check_insert_site(code, site)?;
    let base = max_id(code);
    let mut block_a = Vec::with_capacity(2 * n);
    let mut block_b = Vec::with_capacity(2 * n);
    for k in 0..2 * n {
        let id = base + 1 + k as u32;
        let a_over = (k % 2 == 0) == (sign == 1);
        if a_over {
            block_a.push(Passage::over(id, sign));
            block_b.push(Passage::under(id, sign));
        } else {
            block_a.push(Passage::under(id, sign));
            block_b.push(Passage::over(id, sign));
        }
    }
    Ok(insert_blocks(code, site, block_a, block_b))
}

/// Removes n full twists whose blocks start at the two sites. The blocks
/// must hold the same 2n crossings in matching order, with the alternating
/// role pattern of `insert_2n` and one common sign.
pub fn delete_2n(code: &GaussCode, site: &MoveSite, n: usize) -> Result<GaussCode, MoveError> {
    if n < 1 {
        return Err(MoveError::PatternMismatch("n must be at least 1".into()));
    }
    let len = 2 * n;
    let block_a = block_at(code, site.strand_a, site.pos_a, len)?;
    let block_b = block_at(code, site.strand_b, site.pos_b, len)?;
    let sign = block_a[0].sign;
    for k in 0..len {
        let (pa, pb) = (block_a[k], block_b[k]);
        if pa.id != pb.id || pa.sign != sign || pb.sign != sign {
            return Err(MoveError::PatternMismatch(
                "blocks do not hold one twist region".into(),
            ));
        }
        let a_over = (k % 2 == 0) == (sign == 1);
        let want_a = if a_over { Role::Over } else { Role::Under };
        if pa.role != want_a || pb.role == want_a {
            return Err(MoveError::PatternMismatch(
                "roles do not alternate like a twist region".into(),
            ));
        }
    }
    remove_blocks(code, site, len)
}

fn block_at(
    code: &GaussCode,
    strand: usize,
    pos: usize,
    len: usize,
) -> Result<Vec<Passage>, MoveError> {
    if strand >= code.strand_count() {
        return Err(MoveError::NoSuchStrand(strand));
    }
    let s = code.strand(strand);
    if pos + len > s.len() {
        return Err(MoveError::OutOfRange { strand, pos });
    }
    Ok(s[pos..pos + len].to_vec())
}

fn remove_blocks(code: &GaussCode, site: &MoveSite, len: usize) -> Result<GaussCode, MoveError> {
    if site.strand_a == site.strand_b {
        let (lo, hi) = if site.pos_a < site.pos_b {
            (site.pos_a, site.pos_b)
        } else {
            (site.pos_b, site.pos_a)
        };
        if lo + len > hi {
            return Err(MoveError::PatternMismatch(
                "same-strand blocks overlap".into(),
            ));
        }
        let mut strands = code.strands().to_vec();
        strands[site.strand_a].drain(hi..hi + len);
        strands[site.strand_a].drain(lo..lo + len);
        return Ok(GaussCode::new(strands).expect("deletion preserves validity"));
    }
    let mut strands = code.strands().to_vec();
    strands[site.strand_a].drain(site.pos_a..site.pos_a + len);
    strands[site.strand_b].drain(site.pos_b..site.pos_b + len);
    Ok(GaussCode::new(strands).expect("deletion preserves validity"))
}

/// Applies a V^n-move. Classicalizing inserts n consecutive crossings with
/// `strand_a` over `strand_b`, all of sign `sign`, meeting both strands in
/// the same order; virtualizing checks that exact pattern at the site and
/// deletes it.
pub fn apply_vn(
    code: &GaussCode,
    n: usize,
    direction: VnDirection,
    site: &MoveSite,
    sign: i8,
) -> Result<GaussCode, MoveError> {
    if n < 1 {
        return Err(MoveError::PatternMismatch("n must be at least 1".into()));
    }
    if sign != 1 && sign != -1 {
        return Err(MoveError::PatternMismatch("sign must be 1 or -1".into()));
    }
    match direction {
        VnDirection::Classicalize => {
            check_insert_site(code, site)?;
            let base = max_id(code);
            let block_a: Vec<Passage> = (0..n)
                .map(|k| Passage::over(base + 1 + k as u32, sign))
                .collect();
            let block_b: Vec<Passage> = (0..n)
                .map(|k| Passage::under(base + 1 + k as u32, sign))
                .collect();
            Ok(insert_blocks(code, site, block_a, block_b))
        }
        VnDirection::Virtualize => {
            let block_a = block_at(code, site.strand_a, site.pos_a, n)?;
            let block_b = block_at(code, site.strand_b, site.pos_b, n)?;
            for k in 0..n {
                let (pa, pb) = (block_a[k], block_b[k]);
                if pa.id != pb.id
                    || pa.role != Role::Over
                    || pb.role != Role::Under
                    || pa.sign != sign
                    || pb.sign != sign
                {
                    return Err(MoveError::PatternMismatch(
                        "site does not hold a uniform over-block".into(),
                    ));
                }
            }
            remove_blocks(code, site, n)
        }
    }
}

/// Replaces one classical crossing by a virtual one, i.e. deletes both of
/// its passages.
pub fn virtualize_crossing(code: &GaussCode, id: u32) -> Result<GaussCode, MoveError> {
    let mut found = Vec::new();
    for (s, strand) in code.strands().iter().enumerate() {
        for (p, passage) in strand.iter().enumerate() {
            if passage.id == id {
                found.push((s, p));
            }
        }
    }
    if found.len() != 2 {
        return Err(MoveError::UnknownCrossing(id));
    }
    let mut strands = code.strands().to_vec();
    // Remove the later position first when both sit on one strand.
    found.sort_by_key(|&(s, p)| (s, std::cmp::Reverse(p)));
    for (s, p) in found {
        strands[s].remove(p);
    }
    Ok(GaussCode::new(strands).expect("deletion preserves validity"))
}

/// True iff both passages of the crossing lie on a single strand.
pub fn is_self_crossing(code: &GaussCode, id: u32) -> Result<bool, MoveError> {
    let mut strands_hit = Vec::new();
    for (s, strand) in code.strands().iter().enumerate() {
        for passage in strand {
            if passage.id == id {
                strands_hit.push(s);
            }
        }
    }
    if strands_hit.len() != 2 {
        return Err(MoveError::UnknownCrossing(id));
    }
    Ok(strands_hit[0] == strands_hit[1])
}
