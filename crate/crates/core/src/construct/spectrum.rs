//! Size-`p` spectra for prime-size tiles, read off an annihilated class of `p`-power order.

use serde::{Deserialize, Serialize};

use crate::arith::{is_power_of, is_prime};
use crate::error::{Error, Result};
use crate::fourier::{class_annihilated, PointMultiset};
use crate::group::{classes_where, derived_set, CyclicClass, GroupElement, PrimePowerSplit};
use crate::verify::{search_tiling_complement, verify_spectral, SearchOptions, SpectralCertificate};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumConstruction {
    pub chosen_class: CyclicClass,
    pub derived: Vec<GroupElement>,
    pub certificate: SpectralCertificate,
}

/// Builds a spectrum for a set of prime size `p` in `Z_n^d`.
///
/// Classes of order `p, p², …, p^k` are scanned in `(order, canonical)` order and
/// the first one annihilated by `1̂_A` yields the derived set `{0, h, …, (p−1)h}`.
/// When no class is annihilated the set is checked for tiling: a tile here
/// would contradict the theory and is reported as [`Error::TheoremViolation`].
pub fn prime_tile_spectrum(a: &PointMultiset, opts: &SearchOptions) -> Result<SpectrumConstruction> {
    if !a.is_set() {
        return Err(Error::Precondition("A must be a plain set".into()));
    }
    let p = a.total();
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let ctx = a.ctx();
    PrimePowerSplit::new(ctx.modulus(), p)?;

    let classes = classes_where(ctx, |order| is_power_of(order, p))?;
    for class in classes {
        if class_annihilated(a, &class, false)? {
            let derived = derived_set(ctx, &class, p)?;
            let certificate = verify_spectral(a, &derived)?;
            if !certificate.verdict {
                return Err(Error::InternalInconsistency(format!(
                    "derived set of annihilated class {} failed verification",
                    class.canonical
                )));
            }
            return Ok(SpectrumConstruction {
                chosen_class: class,
                derived,
                certificate,
            });
        }
    }

    match search_tiling_complement(a, opts) {
        Ok(Some(b)) => Err(Error::TheoremViolation(format!(
            "tile of prime size {p} with complement of size {} annihilates no p-power class",
            b.len()
        ))),
        Ok(None) => Err(Error::NotATile),
        Err(e) => Err(Error::NoAnnihilatedClass(e.to_string())),
    }
}
