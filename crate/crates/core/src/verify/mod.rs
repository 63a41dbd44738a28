//! Tiling-pair and spectral-pair verification with re-checkable certificates.
//!
//! `(A, B)` tiles `Z_n^d` when every element is hit exactly once by `A + B`;
//! equivalently `|A|·|B| = n^d` and every nonzero frequency is a zero of `1̂_A`
//! or of `1̂_B`. `(A, S)` is a spectral pair when `|A| = |S|` and every
//! difference of distinct elements of `S` is a zero of `1̂_A`.

mod search;

pub use search::{
    canonical_translate, enumerate_tiles, search_spectrum, search_tiling_complement, SearchOptions,
    TileRecord,
};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fourier::{ft_is_zero, PointMultiset};
use crate::group::{difference_set, GroupContext, GroupElement};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    DirectCover,
    FourierCriterion,
    Both,
}

/// Why a pair failed to tile.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TilingWitness {
    Uncovered { point: GroupElement },
    Overcovered { point: GroupElement, count: u64 },
    /// `|A|·|B| ≠ n^d`; the group order is a decimal string since it may exceed 64 bits.
    SizeMismatch { product: u64, group_order: String },
    /// A nonzero frequency annihilated by neither mask.
    Unannihilated { frequency: GroupElement },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TilingCertificate {
    pub n: u64,
    pub d: usize,
    pub a: Vec<GroupElement>,
    pub b: Vec<GroupElement>,
    pub method: Method,
    pub verdict: bool,
    pub witness: Option<TilingWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SpectralWitness {
    SizeMismatch { a_size: u64, s_size: u64 },
    NotAnnihilated { difference: GroupElement },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectralCertificate {
    pub n: u64,
    pub d: usize,
    pub a: Vec<GroupElement>,
    pub s: Vec<GroupElement>,
    pub verdict: bool,
    pub witness: Option<SpectralWitness>,
}

fn require_set(a: &PointMultiset, name: &str) -> Result<()> {
    if !a.is_set() {
        return Err(Error::Precondition(format!("{name} must be a plain set")));
    }
    Ok(())
}

fn require_same_group(a: &PointMultiset, b: &PointMultiset) -> Result<()> {
    if a.ctx().modulus() != b.ctx().modulus() || a.ctx().dim() != b.ctx().dim() {
        return Err(Error::Precondition("sets live in different groups".into()));
    }
    Ok(())
}

fn tiling_cert(a: &PointMultiset, b: &PointMultiset, method: Method, witness: Option<TilingWitness>) -> TilingCertificate {
    TilingCertificate {
        n: a.ctx().modulus(),
        d: a.ctx().dim(),
        a: a.to_vec(),
        b: b.to_vec(),
        method,
        verdict: witness.is_none(),
        witness,
    }
}

/// Counts `A + B` pointwise and reports the first element not hit exactly once.
pub fn verify_tiling_direct(a: &PointMultiset, b: &PointMultiset) -> Result<TilingCertificate> {
    require_set(a, "A")?;
    require_set(b, "B")?;
    require_same_group(a, b)?;
    let ctx = a.ctx();
    let size = ctx.size()?;
    let mut counts = vec![0u64; size];
    for x in a.support() {
        for y in b.support() {
            counts[ctx.index_of(&ctx.add(x, y))] += 1;
        }
    }
    // Report a gap before an overlap so the witness matches the usual reading of a failed cover.
    let witness = match counts.iter().position(|&c| c == 0) {
        Some(i) => Some(TilingWitness::Uncovered {
            point: ctx.element_at(i),
        }),
        None => counts.iter().position(|&c| c > 1).map(|i| TilingWitness::Overcovered {
            point: ctx.element_at(i),
            count: counts[i],
        }),
    };
    Ok(tiling_cert(a, b, Method::DirectCover, witness))
}

/// Fourier criterion: `|A|·|B| = n^d` and `ΔZ_n^d ⊆ Z(1̂_A) ∪ Z(1̂_B)`.
pub fn verify_tiling_fourier(a: &PointMultiset, b: &PointMultiset) -> Result<TilingCertificate> {
    require_set(a, "A")?;
    require_set(b, "B")?;
    require_same_group(a, b)?;
    let ctx = a.ctx();
    let product = a.total() * b.total();
    if BigUint::from(product) != ctx.group_order() {
        let witness = TilingWitness::SizeMismatch {
            product,
            group_order: ctx.group_order().to_string(),
        };
        return Ok(tiling_cert(a, b, Method::FourierCriterion, Some(witness)));
    }
    let witness = ctx
        .elements()?
        .skip(1)
        .find(|x| !ft_is_zero(a, x) && !ft_is_zero(b, x))
        .map(|frequency| TilingWitness::Unannihilated { frequency });
    Ok(tiling_cert(a, b, Method::FourierCriterion, witness))
}

/// Runs both criteria and insists they agree.
pub fn verify_tiling(a: &PointMultiset, b: &PointMultiset) -> Result<TilingCertificate> {
    let direct = verify_tiling_direct(a, b)?;
    let fourier = verify_tiling_fourier(a, b)?;
    if direct.verdict != fourier.verdict {
        return Err(Error::InternalInconsistency(format!(
            "direct cover says {} but the Fourier criterion says {}",
            direct.verdict, fourier.verdict
        )));
    }
    Ok(TilingCertificate {
        method: Method::Both,
        ..direct
    })
}

/// `|A| = |S|` and `ΔS ⊆ Z(1̂_A)`.
pub fn verify_spectral(a: &PointMultiset, s: &[GroupElement]) -> Result<SpectralCertificate> {
    require_set(a, "A")?;
    let ctx = a.ctx();
    let mut sorted = s.to_vec();
    sorted.sort();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Precondition("S must not repeat elements".into()));
    }
    if let Some(x) = sorted.iter().find(|x| !ctx.contains(x)) {
        return Err(Error::Precondition(format!("{x} is not an element of the group")));
    }
    let witness = if a.total() != sorted.len() as u64 {
        Some(SpectralWitness::SizeMismatch {
            a_size: a.total(),
            s_size: sorted.len() as u64,
        })
    } else {
        difference_set(ctx, &sorted)
            .into_iter()
            .find(|x| !ft_is_zero(a, x))
            .map(|difference| SpectralWitness::NotAnnihilated { difference })
    };
    Ok(SpectralCertificate {
        n: ctx.modulus(),
        d: ctx.dim(),
        a: a.to_vec(),
        s: sorted,
        verdict: witness.is_none(),
        witness,
    })
}

impl TilingCertificate {
    pub fn context(&self) -> Result<GroupContext> {
        GroupContext::new(self.n, self.d)
    }

    /// Recomputes the verdict from the embedded inputs with the recorded method.
    pub fn recheck(&self) -> Result<bool> {
        let ctx = self.context()?;
        let a = PointMultiset::from_set(&ctx, self.a.iter().cloned())?;
        let b = PointMultiset::from_set(&ctx, self.b.iter().cloned())?;
        let fresh = match self.method {
            Method::DirectCover => verify_tiling_direct(&a, &b)?,
            Method::FourierCriterion => verify_tiling_fourier(&a, &b)?,
            Method::Both => verify_tiling(&a, &b)?,
        };
        Ok(fresh.verdict == self.verdict && fresh.witness == self.witness)
    }
}

impl SpectralCertificate {
    pub fn recheck(&self) -> Result<bool> {
        let ctx = GroupContext::new(self.n, self.d)?;
        let a = PointMultiset::from_set(&ctx, self.a.iter().cloned())?;
        let fresh = verify_spectral(&a, &self.s)?;
        Ok(fresh.verdict == self.verdict && fresh.witness == self.witness)
    }
}
