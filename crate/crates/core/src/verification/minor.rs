//! Minor containment, labelled and up to isomorphism.
//!
//! Every minor can be written `M \ X / Y` with `Y` independent and `X`
//! coindependent, so `|Y| = r(M) - r(N)` and `E - X` spans `M`. The search runs
//! over such `Y` in lexicographic order, then over `X`, and stops at the first
//! hit. The outer loop over `Y` runs in parallel but keeps the first hit in
//! order, so witnesses do not depend on scheduling.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use crate::constructions::minor;
use crate::element_set::{binomial, ElementSet};
use crate::error::{MatroidError, Result};
use crate::iso::is_isomorphic;
use crate::matroid::Matroid;

/// Largest host ground set for unlabelled search.
pub const UNLABELLED_GROUND_LIMIT: usize = 16;
/// Largest `|E(M)| - |E(N)|` for unlabelled search.
pub const UNLABELLED_DIFF_LIMIT: usize = 10;
/// Largest number of `Y` candidates for labelled search.
pub const LABELLED_CANDIDATE_LIMIT: u64 = 20_000_000;

/// `M \ deleted / contracted`, mapped onto the target by `iso`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorWitness {
    pub deleted: ElementSet,
    pub contracted: ElementSet,
    /// `iso[i]` is the target element matched with the `i`-th surviving element.
    pub iso: Vec<usize>,
}

impl MinorWitness {
    /// Recompute the minor and check that `iso` carries it onto `target`.
    pub fn replay(&self, host: &Matroid, target: &Matroid) -> Result<bool> {
        let m = minor(host, self.deleted, self.contracted)?;
        if m.ground_size() != target.ground_size() || self.iso.len() != m.ground_size() {
            return Ok(false);
        }
        let mut seen = ElementSet::EMPTY;
        for &j in &self.iso {
            if j >= target.ground_size() || seen.contains(j) {
                return Ok(false);
            }
            seen = seen.with(j);
        }
        let mut image: Vec<_> = m
            .flats()
            .iter()
            .map(|f| crate::RankedFlat::new(f.elements.permute(&self.iso), f.rank))
            .collect();
        image.sort();
        Ok(image == target.flats())
    }

    pub fn deleted_labels(&self, host: &Matroid) -> Vec<String> {
        host.labels_of(self.deleted)
    }

    pub fn contracted_labels(&self, host: &Matroid) -> Vec<String> {
        host.labels_of(self.contracted)
    }
}

/// Search-size counters.
#[derive(Debug, Default)]
pub struct MinorStats {
    pub y_candidates: AtomicU64,
    pub y_pruned_eta: AtomicU64,
    pub x_candidates: AtomicU64,
    pub x_pruned_spanning: AtomicU64,
    pub x_pruned_eta: AtomicU64,
    pub x_pruned_stats: AtomicU64,
    pub iso_calls: AtomicU64,
}

impl MinorStats {
    pub fn snapshot(&self) -> Vec<(&'static str, u64)> {
        let g = |a: &AtomicU64| a.load(Ordering::Relaxed);
        vec![
            ("y_candidates", g(&self.y_candidates)),
            ("y_pruned_eta", g(&self.y_pruned_eta)),
            ("x_candidates", g(&self.x_candidates)),
            ("x_pruned_spanning", g(&self.x_pruned_spanning)),
            ("x_pruned_eta", g(&self.x_pruned_eta)),
            ("x_pruned_stats", g(&self.x_pruned_stats)),
            ("iso_calls", g(&self.iso_calls)),
        ]
    }

    fn bump(a: &AtomicU64) {
        a.fetch_add(1, Ordering::Relaxed);
    }
}

/// Whether `m` has a minor equal to `n` (labelled) or isomorphic to it.
pub fn has_minor(m: &Matroid, n: &Matroid, labelled: bool) -> Result<Option<MinorWitness>> {
    find_minor(m, n, labelled, &MinorStats::default())
}

/// [`has_minor`] recording counters into `stats`.
pub fn find_minor(m: &Matroid, n: &Matroid, labelled: bool, stats: &MinorStats) -> Result<Option<MinorWitness>> {
    if labelled {
        labelled_search(m, n, stats)
    } else {
        unlabelled_search(m, n, stats)
    }
}

fn size_ok(m: &Matroid, n: &Matroid) -> bool {
    n.ground_size() <= m.ground_size() && n.rank() <= m.rank() && n.corank() <= m.corank()
}

fn labelled_search(m: &Matroid, n: &Matroid, stats: &MinorStats) -> Result<Option<MinorWitness>> {
    let keep = match m.set_of(n.labels()) {
        Ok(s) => s,
        Err(_) => return Ok(None),
    };
    if !size_ok(m, n) {
        return Ok(None);
    }
    let rest = m.ground().difference(keep);
    let d = m.rank() - n.rank();
    if binomial(rest.len(), d) > LABELLED_CANDIDATE_LIMIT {
        return Err(MatroidError::SearchLimit(format!(
            "labelled minor search over {} choices of {d} from {} elements",
            binomial(rest.len(), d),
            rest.len()
        )));
    }
    let ys: Vec<ElementSet> = rest.k_subsets(d).collect();
    let found = ys.par_iter().map(|&y| -> Result<Option<MinorWitness>> {
        MinorStats::bump(&stats.y_candidates);
        if !m.is_independent(y) {
            return Ok(None);
        }
        let x = rest.difference(y);
        MinorStats::bump(&stats.x_candidates);
        if m.rank_of(m.ground().difference(x)) < m.rank() {
            MinorStats::bump(&stats.x_pruned_spanning);
            return Ok(None);
        }
        let cand = minor(m, x, y)?;
        if !cand.labelled_eq(n) {
            return Ok(None);
        }
        let iso = cand.labels().iter().map(|l| n.index_of(l).expect("same labels")).collect();
        Ok(Some(MinorWitness { deleted: x, contracted: y, iso }))
    });
    first_hit(found)
}

fn first_hit(
    it: impl IndexedParallelIterator<Item = Result<Option<MinorWitness>>>,
) -> Result<Option<MinorWitness>> {
    match it.find_map_first(|r| match r {
        Ok(None) => None,
        other => Some(other),
    }) {
        None => Ok(None),
        Some(r) => r,
    }
}

fn unlabelled_search(m: &Matroid, n: &Matroid, stats: &MinorStats) -> Result<Option<MinorWitness>> {
    if m.ground_size() > UNLABELLED_GROUND_LIMIT {
        return Err(MatroidError::SearchLimit(format!(
            "unlabelled minor search needs at most {UNLABELLED_GROUND_LIMIT} host elements, got {}",
            m.ground_size()
        )));
    }
    if !size_ok(m, n) {
        return Ok(None);
    }
    let diff = m.ground_size() - n.ground_size();
    if diff > UNLABELLED_DIFF_LIMIT {
        return Err(MatroidError::SearchLimit(format!(
            "unlabelled minor search removes at most {UNLABELLED_DIFF_LIMIT} elements, asked for {diff}"
        )));
    }
    let target_eta = n.eta_zprime();
    if target_eta > m.eta_zprime() {
        return Ok(None);
    }
    let target_stats = n.flat_statistics();
    let d = m.rank() - n.rank();
    let xs = diff - d;
    let ys: Vec<ElementSet> = m.ground().k_subsets(d).filter(|&y| m.is_independent(y)).collect();
    let found = ys.par_iter().map(|&y| -> Result<Option<MinorWitness>> {
        MinorStats::bump(&stats.y_candidates);
        let my = minor(m, ElementSet::EMPTY, y)?;
        if my.eta_zprime() < target_eta {
            MinorStats::bump(&stats.y_pruned_eta);
            return Ok(None);
        }
        let rest = m.ground().difference(y);
        for x in rest.k_subsets(xs) {
            MinorStats::bump(&stats.x_candidates);
            if m.rank_of(m.ground().difference(x)) < m.rank() {
                MinorStats::bump(&stats.x_pruned_spanning);
                continue;
            }
            let cand = minor(m, x, y)?;
            if cand.eta_zprime() != target_eta {
                MinorStats::bump(&stats.x_pruned_eta);
                continue;
            }
            if cand.flat_statistics() != target_stats {
                MinorStats::bump(&stats.x_pruned_stats);
                continue;
            }
            MinorStats::bump(&stats.iso_calls);
            if let Some(iso) = is_isomorphic(&cand, n) {
                return Ok(Some(MinorWitness { deleted: x, contracted: y, iso }));
            }
        }
        Ok(None)
    });
    first_hit(found)
}

/// Prune-free reference: every disjoint `(X, Y)` removing the right number of elements.
pub fn has_minor_exhaustive(m: &Matroid, n: &Matroid) -> Result<bool> {
    if m.ground_size() > 10 {
        return Err(MatroidError::SearchLimit("reference minor search is limited to 10 elements".into()));
    }
    if n.ground_size() > m.ground_size() {
        return Ok(false);
    }
    let diff = m.ground_size() - n.ground_size();
    for removed in m.ground().k_subsets(diff) {
        for y in removed.subsets() {
            if is_isomorphic(&minor(m, removed.difference(y), y)?, n).is_some() {
                return Ok(true);
            }
        }
    }
    Ok(false)
}
