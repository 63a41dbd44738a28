//! Exhaustive search oracles: tiling complements, spectra and tiles up to translation.
//!
//! All searches branch in lexicographic order so the first solution found is
//! reproducible.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::fourier::{zero_set, PointMultiset};
use crate::group::{GroupContext, GroupElement};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Largest group the searches will attempt.
    pub max_group: u64,
    /// Abort after this many branching steps.
    pub max_nodes: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            max_group: 1_000_000,
            max_nodes: 20_000_000,
        }
    }
}

impl SearchOptions {
    fn check(&self, ctx: &GroupContext) -> Result<usize> {
        let size = ctx.size()?;
        if size as u64 > self.max_group {
            return Err(Error::SearchBound {
                size: size as u64,
                bound: self.max_group,
            });
        }
        Ok(size)
    }
}

struct Placement {
    anchor: usize,
    next: usize,
    cells: Vec<usize>,
    shift: GroupElement,
}

/// Finds a tiling complement `B ∋ 0` of the plain set `A` by exact cover.
///
/// The smallest uncovered element is always covered next, trying the elements
/// of `A` in order. Returns `None` when `A` does not tile.
pub fn search_tiling_complement(a: &PointMultiset, opts: &SearchOptions) -> Result<Option<Vec<GroupElement>>> {
    if !a.is_set() || a.is_empty() {
        return Err(Error::Precondition("A must be a nonempty plain set".into()));
    }
    let ctx = a.ctx();
    let size = opts.check(ctx)?;
    if size % a.distinct() != 0 {
        return Ok(None);
    }
    let tile: Vec<GroupElement> = a.to_vec();
    let mut covered = vec![false; size];
    let mut stack: Vec<Placement> = Vec::new();
    let mut nodes = 0u64;
    let mut start = 0usize;

    loop {
        match (start..size).find(|&i| !covered[i]) {
            None => break,
            Some(anchor) => stack.push(Placement {
                anchor,
                next: 0,
                cells: Vec::new(),
                shift: ctx.zero(),
            }),
        }
        // Advance the top placement, backtracking while it has no options left.
        loop {
            let Some(top) = stack.last_mut() else {
                return Ok(None);
            };
            for &c in &top.cells {
                covered[c] = false;
            }
            top.cells.clear();
            let target = ctx.element_at(top.anchor);
            let mut placed = false;
            while top.next < tile.len() {
                let shift = ctx.sub(&target, &tile[top.next]);
                top.next += 1;
                nodes += 1;
                if nodes > opts.max_nodes {
                    return Err(Error::NodeLimit { nodes });
                }
                let cells: Vec<usize> = tile.iter().map(|t| ctx.index_of(&ctx.add(t, &shift))).collect();
                if cells.iter().all(|&c| !covered[c]) {
                    for &c in &cells {
                        covered[c] = true;
                    }
                    top.cells = cells;
                    top.shift = shift;
                    placed = true;
                    break;
                }
            }
            if placed {
                start = top.anchor + 1;
                break;
            }
            stack.pop();
        }
    }

    let base = stack[0].shift.clone();
    let mut complement: Vec<GroupElement> = stack.iter().map(|p| ctx.sub(&p.shift, &base)).collect();
    complement.sort();
    Ok(Some(complement))
}

/// Finds `S ∋ 0` with `|S| = |A|` and all differences in `Z(1̂_A)`, by clique search.
pub fn search_spectrum(a: &PointMultiset, opts: &SearchOptions) -> Result<Option<Vec<GroupElement>>> {
    if !a.is_set() || a.is_empty() {
        return Err(Error::Precondition("A must be a nonempty plain set".into()));
    }
    let ctx = a.ctx();
    opts.check(ctx)?;
    let want = a.distinct() - 1;
    let zeros = zero_set(a)?;
    let is_zero: HashSet<&GroupElement> = zeros.iter().collect();
    let mut chosen: Vec<usize> = Vec::new();
    let mut nodes = 0u64;

    // `chosen` holds indices into `zeros`, strictly increasing.
    fn extend(
        ctx: &GroupContext,
        zeros: &[GroupElement],
        is_zero: &HashSet<&GroupElement>,
        chosen: &mut Vec<usize>,
        from: usize,
        want: usize,
        nodes: &mut u64,
        limit: u64,
    ) -> Result<bool> {
        if chosen.len() == want {
            return Ok(true);
        }
        for i in from..zeros.len() {
            if zeros.len() - i < want - chosen.len() {
                break;
            }
            *nodes += 1;
            if *nodes > limit {
                return Err(Error::NodeLimit { nodes: *nodes });
            }
            let fits = chosen
                .iter()
                .all(|&j| is_zero.contains(&ctx.sub(&zeros[i], &zeros[j])));
            if fits {
                chosen.push(i);
                if extend(ctx, zeros, is_zero, chosen, i + 1, want, nodes, limit)? {
                    return Ok(true);
                }
                chosen.pop();
            }
        }
        Ok(false)
    }

    if extend(ctx, &zeros, &is_zero, &mut chosen, 0, want, &mut nodes, opts.max_nodes)? {
        let mut s: Vec<GroupElement> = std::iter::once(ctx.zero())
            .chain(chosen.iter().map(|&i| zeros[i].clone()))
            .collect();
        s.sort();
        Ok(Some(s))
    } else {
        Ok(None)
    }
}

/// Lexicographically smallest sorted translate `A − a`, `a ∈ A`.
pub fn canonical_translate(ctx: &GroupContext, set: &[GroupElement]) -> Vec<GroupElement> {
    set.iter()
        .map(|t| {
            let mut shifted: Vec<GroupElement> = set.iter().map(|x| ctx.sub(x, t)).collect();
            shifted.sort();
            shifted
        })
        .min()
        .unwrap_or_default()
}

/// A canonical set together with the complement found for it, if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TileRecord {
    pub set: Vec<GroupElement>,
    pub complement: Option<Vec<GroupElement>>,
}

impl TileRecord {
    pub fn is_tile(&self) -> bool {
        self.complement.is_some()
    }
}

/// All `size`-subsets containing 0, one per translation class, each tested for tiling.
pub fn enumerate_tiles(ctx: &GroupContext, size: usize, opts: &SearchOptions) -> Result<Vec<TileRecord>> {
    let order = opts.check(ctx)?;
    if size == 0 || order % size != 0 {
        return Err(Error::Precondition(format!("size {size} does not divide {order}")));
    }
    let mut out = Vec::new();
    let mut combo: Vec<usize> = (1..size).collect();
    loop {
        if combo.last().map_or(true, |&l| l < order) {
            let mut set: Vec<GroupElement> = std::iter::once(ctx.zero())
                .chain(combo.iter().map(|&i| ctx.element_at(i)))
                .collect();
            set.sort();
            if canonical_translate(ctx, &set) == set {
                let mask = PointMultiset::from_set(ctx, set.iter().cloned())?;
                let complement = search_tiling_complement(&mask, opts)?;
                out.push(TileRecord { set, complement });
            }
        }
        if !next_combination(&mut combo, order) {
            break;
        }
    }
    Ok(out)
}

/// Advances an increasing index vector over `1..limit`.
fn next_combination(combo: &mut [usize], limit: usize) -> bool {
    let k = combo.len();
    for i in (0..k).rev() {
        if combo[i] < limit - (k - i) {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
