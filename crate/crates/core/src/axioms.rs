//! Validation of ranked set families against the cyclic-flat axioms (Z0)-(Z3).

use crate::element_set::{ElementSet, MAX_ELEMENTS};
use crate::error::{AxiomViolation, LatticeBound, MatroidError, Result};
use crate::matroid::RankedFlat;

/// Index of the join and meet of every pair, computed from inclusion alone.
pub(crate) struct PosetLattice {
    pub join: Vec<Vec<usize>>,
    pub meet: Vec<Vec<usize>>,
    pub least: usize,
}

/// Build join/meet tables for a family closed under lattice operations,
/// or report the first pair without one.
pub(crate) fn poset_lattice(flats: &[RankedFlat]) -> std::result::Result<PosetLattice, AxiomViolation> {
    let m = flats.len();
    let sets: Vec<ElementSet> = flats.iter().map(|f| f.elements).collect();
    let least = (0..m).find(|&i| sets.iter().all(|s| sets[i].is_subset(*s)));
    let Some(least) = least else {
        let (x, y) = first_pair_without(&sets, |a, b| bound(&sets, a, b, false)).unwrap_or((sets[0], sets[0]));
        return Err(AxiomViolation::Z0 { x, y, missing: LatticeBound::Least });
    };
    let mut join = vec![vec![0usize; m]; m];
    let mut meet = vec![vec![0usize; m]; m];
    for i in 0..m {
        for j in i..m {
            let Some(jn) = bound(&sets, i, j, true) else {
                return Err(AxiomViolation::Z0 { x: sets[i], y: sets[j], missing: LatticeBound::Join });
            };
            let Some(mt) = bound(&sets, i, j, false) else {
                return Err(AxiomViolation::Z0 { x: sets[i], y: sets[j], missing: LatticeBound::Meet });
            };
            join[i][j] = jn;
            join[j][i] = jn;
            meet[i][j] = mt;
            meet[j][i] = mt;
        }
    }
    Ok(PosetLattice { join, meet, least })
}

fn first_pair_without(
    sets: &[ElementSet],
    f: impl Fn(usize, usize) -> Option<usize>,
) -> Option<(ElementSet, ElementSet)> {
    for i in 0..sets.len() {
        for j in i..sets.len() {
            if f(i, j).is_none() {
                return Some((sets[i], sets[j]));
            }
        }
    }
    None
}

/// Least upper bound (`upper = true`) or greatest lower bound of `sets[i]`, `sets[j]`.
fn bound(sets: &[ElementSet], i: usize, j: usize, upper: bool) -> Option<usize> {
    let (a, b) = (sets[i], sets[j]);
    let cands: Vec<usize> = (0..sets.len())
        .filter(|&c| {
            if upper {
                a.union(b).is_subset(sets[c])
            } else {
                sets[c].is_subset(a.intersection(b))
            }
        })
        .collect();
    cands.iter().copied().find(|&c| {
        cands.iter().all(|&d| {
            if upper {
                sets[c].is_subset(sets[d])
            } else {
                sets[d].is_subset(sets[c])
            }
        })
    })
}

/// Check that `flats` over a ground set of `n` elements are the cyclic flats of some matroid.
///
/// Structural errors (size limit, duplicates, oversize ranks) are reported as
/// their own variants; axiom failures come back as [`MatroidError::Axiom`].
pub fn validate_presentation(flats: &[RankedFlat], n: usize) -> Result<()> {
    if n > MAX_ELEMENTS {
        return Err(MatroidError::GroundTooLarge(n));
    }
    let ground = ElementSet::full(n);
    for (i, f) in flats.iter().enumerate() {
        if !f.elements.is_subset(ground) {
            return Err(MatroidError::FlatOutsideGround(f.elements));
        }
        if f.rank > f.elements.len() {
            return Err(MatroidError::RankExceedsSize { flat: f.elements, rank: f.rank });
        }
        if flats[..i].iter().any(|g| g.elements == f.elements) {
            return Err(MatroidError::DuplicateFlat(f.elements));
        }
    }
    if flats.is_empty() {
        return Err(MatroidError::Axiom(AxiomViolation::Z0 {
            x: ElementSet::EMPTY,
            y: ElementSet::EMPTY,
            missing: LatticeBound::Least,
        }));
    }
    check_axioms(flats).map_err(MatroidError::Axiom)
}

pub(crate) fn check_axioms(flats: &[RankedFlat]) -> std::result::Result<(), AxiomViolation> {
    let lat = poset_lattice(flats)?;
    let least = &flats[lat.least];
    if least.rank != 0 {
        return Err(AxiomViolation::Z1 { least: least.elements, rank: least.rank });
    }
    for x in flats {
        for y in flats {
            if x.elements.is_proper_subset(y.elements) {
                let gap = y.rank as i64 - x.rank as i64;
                let size_gap = y.elements.difference(x.elements).len() as i64;
                if !(0 < gap && gap < size_gap) {
                    return Err(AxiomViolation::Z2 { lower: x.elements, upper: y.elements });
                }
            }
        }
    }
    for i in 0..flats.len() {
        for j in i + 1..flats.len() {
            let (x, y) = (&flats[i], &flats[j]);
            if x.elements.is_subset(y.elements) || y.elements.is_subset(x.elements) {
                continue;
            }
            let jn = &flats[lat.join[i][j]];
            let mt = &flats[lat.meet[i][j]];
            let correction = x.elements.intersection(y.elements).difference(mt.elements).len();
            if x.rank + y.rank < jn.rank + mt.rank + correction {
                return Err(AxiomViolation::Z3 { x: x.elements, y: y.elements });
            }
        }
    }
    Ok(())
}
