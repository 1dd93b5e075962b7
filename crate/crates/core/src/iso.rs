//! Isomorphism testing and canonical forms over cyclic-flat structure.
//!
//! Two matroids are isomorphic exactly when some bijection carries cyclic
//! flats onto cyclic flats with equal ranks, so everything here works on the
//! flat lists alone. Element colours come from iterated refinement on the
//! element/flat incidence structure; they only prune, never decide.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, HashMap};
use std::hash::{Hash, Hasher};

use crate::element_set::ElementSet;
use crate::error::{MatroidError, Result};
use crate::matroid::{default_labels, Matroid, RankedFlat};

/// Orderings tried by [`canonical_form`] before giving up.
pub const CANONICAL_SEARCH_LIMIT: u64 = 5_000_000;

fn hash_of<T: Hash>(t: &T) -> u64 {
    let mut h = DefaultHasher::new();
    t.hash(&mut h);
    h.finish()
}

/// Isomorphism-invariant colour per element.
pub fn element_colours(m: &Matroid) -> Vec<u64> {
    let n = m.ground_size();
    let flats = m.flats();
    let mut colour: Vec<u64> = (0..n)
        .map(|e| {
            let mut sig: Vec<(usize, usize)> = flats
                .iter()
                .filter(|f| f.elements.contains(e))
                .map(|f| (f.elements.len(), f.rank))
                .collect();
            sig.sort_unstable();
            hash_of(&sig)
        })
        .collect();
    let mut classes = distinct(&colour);
    for _ in 0..n {
        let flat_colour: Vec<u64> = flats
            .iter()
            .map(|f| {
                let mut inner: Vec<u64> = f.elements.iter().map(|e| colour[e]).collect();
                inner.sort_unstable();
                hash_of(&(f.elements.len(), f.rank, inner))
            })
            .collect();
        let next: Vec<u64> = (0..n)
            .map(|e| {
                let mut sig: Vec<u64> = flats
                    .iter()
                    .zip(&flat_colour)
                    .filter(|(f, _)| f.elements.contains(e))
                    .map(|(_, c)| *c)
                    .collect();
                sig.sort_unstable();
                hash_of(&(colour[e], sig))
            })
            .collect();
        let c = distinct(&next);
        colour = next;
        if c == classes {
            break;
        }
        classes = c;
    }
    colour
}

fn distinct(v: &[u64]) -> usize {
    let mut s = v.to_vec();
    s.sort_unstable();
    s.dedup();
    s.len()
}

fn sorted_colours(c: &[u64]) -> Vec<u64> {
    let mut s = c.to_vec();
    s.sort_unstable();
    s
}

/// Cheap invariants that must agree for isomorphic matroids.
pub fn invariants_match(a: &Matroid, b: &Matroid) -> bool {
    a.ground_size() == b.ground_size()
        && a.flats().len() == b.flats().len()
        && a.rank() == b.rank()
        && a.flat_statistics() == b.flat_statistics()
}

/// Find the lexicographically least bijection `map` (`a` index → `b` index)
/// carrying the flats of `a` onto those of `b`.
pub fn is_isomorphic(a: &Matroid, b: &Matroid) -> Option<Vec<usize>> {
    if !invariants_match(a, b) {
        return None;
    }
    let ca = element_colours(a);
    let cb = element_colours(b);
    if sorted_colours(&ca) != sorted_colours(&cb) {
        return None;
    }
    let mut by_shape: HashMap<(usize, usize), Vec<ElementSet>> = HashMap::new();
    for f in b.flats() {
        by_shape.entry((f.elements.len(), f.rank)).or_default().push(f.elements);
    }
    let mut search = IsoSearch {
        a,
        b,
        ca: &ca,
        cb: &cb,
        by_shape,
        map: vec![usize::MAX; a.ground_size()],
        used: ElementSet::EMPTY,
    };
    search.extend(0).then_some(search.map)
}

struct IsoSearch<'a> {
    a: &'a Matroid,
    b: &'a Matroid,
    ca: &'a [u64],
    cb: &'a [u64],
    by_shape: HashMap<(usize, usize), Vec<ElementSet>>,
    map: Vec<usize>,
    used: ElementSet,
}

impl IsoSearch<'_> {
    fn extend(&mut self, e: usize) -> bool {
        let n = self.a.ground_size();
        if e == n {
            return self.complete();
        }
        for f in 0..n {
            if self.used.contains(f) || self.cb[f] != self.ca[e] {
                continue;
            }
            self.map[e] = f;
            self.used = self.used.with(f);
            if self.consistent(e) && self.extend(e + 1) {
                return true;
            }
            self.used = self.used.without(f);
            self.map[e] = usize::MAX;
        }
        false
    }

    /// Every flat of `a`, cut down to the assigned prefix, must have an image
    /// flat of the same shape agreeing on the image of that prefix.
    fn consistent(&self, last: usize) -> bool {
        let prefix = ElementSet::full(last + 1);
        let image_prefix = self.used;
        self.a.flats().iter().all(|f| {
            let img = f.elements.intersection(prefix).permute(&self.map);
            self.by_shape[&(f.elements.len(), f.rank)]
                .iter()
                .any(|g| g.intersection(image_prefix) == img)
        })
    }

    fn complete(&self) -> bool {
        let mut mapped: Vec<RankedFlat> = self
            .a
            .flats()
            .iter()
            .map(|f| RankedFlat::new(f.elements.permute(&self.map), f.rank))
            .collect();
        mapped.sort();
        mapped == self.b.flats()
    }
}

/// A canonical representative together with where each position came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    /// Presentation on labels `e0..`, identical for all isomorphic inputs.
    pub matroid: Matroid,
    /// `relabeling[i]` is the input element placed at canonical position `i`.
    pub relabeling: Vec<usize>,
}

/// Canonical presentation: the least sorted flat list over all relabelings
/// compatible with the refined colours.
///
/// Elements lying in exactly the same cyclic flats are interchangeable, so the
/// search only permutes classes of such twins within each colour cell.
pub fn canonical_form(m: &Matroid) -> Result<CanonicalForm> {
    let n = m.ground_size();
    let colour = element_colours(m);
    let mut twins: BTreeMap<Vec<bool>, Vec<usize>> = BTreeMap::new();
    for e in 0..n {
        let sig: Vec<bool> = m.flats().iter().map(|f| f.elements.contains(e)).collect();
        twins.entry(sig).or_default().push(e);
    }
    let mut classes: Vec<(u64, Vec<usize>)> = twins.into_values().map(|v| (colour[v[0]], v)).collect();
    classes.sort_by_key(|(c, v)| (v.len(), *c));

    let mut cells: Vec<Vec<usize>> = Vec::new();
    for (i, (c, v)) in classes.iter().enumerate() {
        match cells.last_mut() {
            Some(cell) if {
                let (pc, pv) = &classes[cell[0]];
                (pv.len(), *pc) == (v.len(), *c)
            } =>
            {
                cell.push(i)
            }
            _ => cells.push(vec![i]),
        }
    }
    let total: u64 = cells
        .iter()
        .map(|c| (1..=c.len() as u64).product::<u64>())
        .try_fold(1u64, |acc, x| acc.checked_mul(x))
        .unwrap_or(u64::MAX);
    if total > CANONICAL_SEARCH_LIMIT {
        return Err(MatroidError::SearchLimit(format!(
            "canonical form would try {total} orderings"
        )));
    }

    let mut perms: Vec<Vec<usize>> = cells.clone();
    let mut best: Option<(Vec<RankedFlat>, Vec<usize>)> = None;
    loop {
        let order: Vec<usize> = perms
            .iter()
            .flat_map(|p| p.iter().flat_map(|&ci| classes[ci].1.iter().copied()))
            .collect();
        let mut map = vec![0usize; n];
        for (pos, &e) in order.iter().enumerate() {
            map[e] = pos;
        }
        let mut flats: Vec<RankedFlat> = m
            .flats()
            .iter()
            .map(|f| RankedFlat::new(f.elements.permute(&map), f.rank))
            .collect();
        flats.sort();
        if best.as_ref().is_none_or(|(b, _)| flats < *b) {
            best = Some((flats, order));
        }
        if !advance(&mut perms) {
            break;
        }
    }
    let (flats, relabeling) = best.expect("at least one ordering");
    Ok(CanonicalForm { matroid: Matroid::from_parts(default_labels("e", n), flats), relabeling })
}

/// Step an odometer of per-cell permutations; false when all have been visited.
fn advance(perms: &mut [Vec<usize>]) -> bool {
    for p in perms.iter_mut().rev() {
        if next_permutation(p) {
            return true;
        }
        p.sort_unstable();
    }
    false
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Apply a permutation of elements (`perm[old] = new`), moving labels along.
pub fn relabel(m: &Matroid, perm: &[usize]) -> Matroid {
    let mut labels = vec![String::new(); m.ground_size()];
    for (old, &new) in perm.iter().enumerate() {
        labels[new] = m.label(old).to_string();
    }
    m.permuted(perm, labels)
}
