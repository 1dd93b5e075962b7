//! Tutte and vertical connectivity by scanning all bipartitions.

use crate::element_set::ElementSet;
use crate::error::{MatroidError, Result};
use crate::matroid::Matroid;

pub const CONNECTIVITY_LIMIT: usize = 18;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Connectivity {
    /// Least `j` with a `j`-separation; `None` when there is none.
    pub lambda: Option<usize>,
    /// Least `j` with a vertical `j`-separation, capped at `r(M)`.
    pub kappa: usize,
    /// `E` is not the union of two proper flats.
    pub rounded: bool,
    /// A side realising `lambda`, if any.
    pub lambda_side: Option<ElementSet>,
    /// Two proper flats covering `E`, if not rounded.
    pub flat_cover: Option<(ElementSet, ElementSet)>,
}

pub fn connectivity(m: &Matroid) -> Result<Connectivity> {
    let n = m.ground_size();
    if n > CONNECTIVITY_LIMIT {
        return Err(MatroidError::ScanLimit { what: "connectivity", n, limit: CONNECTIVITY_LIMIT });
    }
    let r = m.rank();
    let g = m.ground();
    let mut lambda: Option<(usize, ElementSet)> = None;
    let mut kappa = r;
    let mut flat_cover = None;
    if n >= 2 {
        // sides containing element 0; the complement covers the rest
        let rest = g.without(0);
        for s in rest.subsets() {
            let a = s.with(0);
            let b = g.difference(a);
            if b.is_empty() {
                continue;
            }
            let (ra, rb) = (m.rank_of(a), m.rank_of(b));
            let j = ra + rb - r + 1;
            if j <= a.len().min(b.len()) && lambda.is_none_or(|(l, _)| j < l) {
                lambda = Some((j, a));
            }
            if ra >= j && rb >= j {
                kappa = kappa.min(j);
            }
            if flat_cover.is_none() {
                let (ca, cb) = (m.closure(a), m.closure(b));
                if ca != g && cb != g {
                    flat_cover = Some((ca, cb));
                }
            }
        }
    }
    Ok(Connectivity {
        lambda: lambda.map(|(j, _)| j),
        kappa,
        rounded: flat_cover.is_none(),
        lambda_side: lambda.map(|(_, a)| a),
        flat_cover,
    })
}
