//! Transversality via the Mason–Ingleton inequalities, with a brute-force
//! presentation search as an independent check at small sizes.

use crate::element_set::ElementSet;
use crate::error::{MatroidError, Result};
use crate::matroid::Matroid;

/// Largest number of cyclic flats for the antichain scan.
pub const MI_FLAT_LIMIT: usize = 24;
pub const ORACLE_GROUND_LIMIT: usize = 7;
pub const ORACLE_RANK_LIMIT: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MiViolation {
    /// Cyclic flats of the antichain, in canonical order.
    pub antichain: Vec<ElementSet>,
    /// Alternating sum of union ranks.
    pub lhs: i64,
    /// Rank of the intersection.
    pub rhs: i64,
}

impl MiViolation {
    pub fn deficit(&self) -> i64 {
        self.lhs - self.rhs
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MiVerdict {
    pub violation: Option<MiViolation>,
    pub antichains_checked: u64,
}

impl MiVerdict {
    pub fn transversal(&self) -> bool {
        self.violation.is_none()
    }
}

/// `Σ (-1)^{|F|+1} r(∪F)` over nonempty subfamilies `F`.
fn alternating_union_sum(m: &Matroid, family: &[ElementSet]) -> i64 {
    let k = family.len();
    let mut unions = vec![ElementSet::EMPTY; 1 << k];
    let mut total = 0i64;
    for mask in 1usize..(1 << k) {
        let low = mask.trailing_zeros() as usize;
        unions[mask] = unions[mask & (mask - 1)].union(family[low]);
        let r = m.rank_of(unions[mask]) as i64;
        total += if mask.count_ones() % 2 == 1 { r } else { -r };
    }
    total
}

/// Check every antichain of at least three cyclic flats; singletons give
/// equality and pairs reduce to submodularity.
pub fn is_transversal_mi(m: &Matroid) -> Result<MiVerdict> {
    let flats: Vec<ElementSet> = m.flats().iter().map(|f| f.elements).collect();
    if flats.len() > MI_FLAT_LIMIT {
        return Err(MatroidError::SearchLimit(format!(
            "antichain scan allows {MI_FLAT_LIMIT} cyclic flats, matroid has {}",
            flats.len()
        )));
    }
    let mut scan = AntichainScan { m, flats: &flats, stack: Vec::new(), checked: 0 };
    let violation = scan.extend(0);
    Ok(MiVerdict { violation, antichains_checked: scan.checked })
}

struct AntichainScan<'a> {
    m: &'a Matroid,
    flats: &'a [ElementSet],
    stack: Vec<ElementSet>,
    checked: u64,
}

impl AntichainScan<'_> {
    fn extend(&mut self, from: usize) -> Option<MiViolation> {
        for i in from..self.flats.len() {
            let f = self.flats[i];
            if self.stack.iter().any(|g| g.is_subset(f) || f.is_subset(*g)) {
                continue;
            }
            self.stack.push(f);
            if self.stack.len() >= 3 {
                self.checked += 1;
                let lhs = alternating_union_sum(self.m, &self.stack);
                let meet = self.stack.iter().fold(self.m.ground(), |s, g| s.intersection(*g));
                let rhs = self.m.rank_of(meet) as i64;
                if lhs < rhs {
                    return Some(MiViolation { antichain: self.stack.clone(), lhs, rhs });
                }
            }
            if let Some(v) = self.extend(i + 1) {
                return Some(v);
            }
            self.stack.pop();
        }
        None
    }
}

/// Whether the dual passes the antichain test.
pub fn is_cotransversal(m: &Matroid) -> Result<bool> {
    Ok(is_transversal_mi(&crate::constructions::dual(m))?.transversal())
}

/// Hall's condition for `set` against the family.
fn has_transversal(set: ElementSet, family: &[ElementSet]) -> bool {
    let elems = set.to_vec();
    (1usize..(1 << elems.len())).all(|mask| {
        let sub: ElementSet = elems.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
        family.iter().filter(|a| !a.intersection(sub).is_empty()).count() >= sub.len()
    })
}

/// The transversal matroid of `family` has the same bases as `m`.
pub fn presents(m: &Matroid, family: &[ElementSet]) -> bool {
    m.ground().k_subsets(m.rank()).all(|b| m.is_independent(b) == has_transversal(b, family))
}

/// Search for `r(M)` sets whose partial transversals are the independent sets of `m`.
///
/// Each set avoids the loops and contains a cocircuit, since the elements
/// outside it can only be matched into the other `r - 1` sets.
pub fn transversal_presentation_oracle(m: &Matroid) -> Result<Option<Vec<ElementSet>>> {
    let (n, r) = (m.ground_size(), m.rank());
    if n > ORACLE_GROUND_LIMIT || r > ORACLE_RANK_LIMIT {
        return Err(MatroidError::SearchLimit(format!(
            "presentation search allows {ORACLE_GROUND_LIMIT} elements and rank {ORACLE_RANK_LIMIT}"
        )));
    }
    if r == 0 {
        return Ok(Some(Vec::new()));
    }
    let loops = m.least_flat().elements;
    let hyperplanes = m.hyperplanes()?;
    let usable = m.ground().difference(loops);
    let mut cands: Vec<ElementSet> = usable
        .subsets()
        .filter(|a| hyperplanes.iter().any(|h| m.ground().difference(*h).is_subset(*a)))
        .collect();
    cands.sort_by(|a, b| b.len().cmp(&a.len()).then(a.lex_cmp(*b)));
    let mut idx = vec![0usize; r];
    loop {
        let family: Vec<ElementSet> = idx.iter().map(|&i| cands[i]).collect();
        if presents(m, &family) {
            return Ok(Some(family));
        }
        // next nondecreasing tuple
        let mut j = r;
        loop {
            if j == 0 {
                return Ok(None);
            }
            j -= 1;
            if idx[j] + 1 < cands.len() {
                idx[j] += 1;
                let v = idx[j];
                idx[j + 1..].iter_mut().for_each(|x| *x = v);
                break;
            }
        }
    }
}
