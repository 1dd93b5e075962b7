//! Duals, direct sums, free (co)extensions, truncations, lifts and minors.

use std::collections::HashSet;

use crate::element_set::ElementSet;
use crate::error::{MatroidError, Result};
use crate::matroid::{check_labels, recompute_cyclic_flats, Matroid, MinorOracle, RankedFlat};

/// The dual: complements of the cyclic flats, with corank-adjusted ranks.
pub fn dual(m: &Matroid) -> Matroid {
    let n = m.ground_size();
    let r = m.rank();
    let flats = m
        .flats()
        .iter()
        .map(|f| {
            let c = f.elements.complement(n);
            RankedFlat::new(c, c.len() + f.rank - r)
        })
        .collect();
    Matroid::from_parts(m.labels().to_vec(), flats)
}

/// Direct sum on the concatenated label lists; labels must be disjoint.
pub fn direct_sum(a: &Matroid, b: &Matroid) -> Result<Matroid> {
    let mut labels = a.labels().to_vec();
    labels.extend_from_slice(b.labels());
    check_labels(&labels)?;
    let shift = a.ground_size();
    let mut flats = Vec::with_capacity(a.flats().len() * b.flats().len());
    for f in a.flats() {
        for g in b.flats() {
            let g_shifted = ElementSet::from_bits(g.elements.bits() << shift);
            flats.push(RankedFlat::new(f.elements.union(g_shifted), f.rank + g.rank));
        }
    }
    Ok(Matroid::from_parts(labels, flats))
}

fn extended_labels<S: AsRef<str>>(m: &Matroid, extra: &[S]) -> Result<Vec<String>> {
    if extra.is_empty() {
        return Err(MatroidError::OutOfRange("free (co)extension needs at least one new element".into()));
    }
    let mut labels = m.labels().to_vec();
    labels.extend(extra.iter().map(|s| s.as_ref().to_string()));
    check_labels(&labels)?;
    Ok(labels)
}

/// `M + X`: the proper cyclic flats of `M` keep their ranks, and `S ∪ X` has rank `r(M)`.
pub fn free_extension<S: AsRef<str>>(m: &Matroid, extra: &[S]) -> Result<Matroid> {
    let labels = extended_labels(m, extra)?;
    let ground = m.ground();
    let mut flats: Vec<RankedFlat> = m.flats().iter().filter(|f| f.elements != ground).copied().collect();
    flats.push(RankedFlat::new(ElementSet::full(labels.len()), m.rank()));
    Ok(Matroid::from_parts(labels, flats))
}

/// `M × X`: each nonempty cyclic flat `F` becomes `F ∪ X` of rank `r(F) + |X|`, plus the empty flat.
pub fn free_coextension<S: AsRef<str>>(m: &Matroid, extra: &[S]) -> Result<Matroid> {
    let labels = extended_labels(m, extra)?;
    let n = m.ground_size();
    let x = ElementSet::full(labels.len()).difference(ElementSet::full(n));
    let mut flats: Vec<RankedFlat> = m
        .flats()
        .iter()
        .filter(|f| !f.elements.is_empty())
        .map(|f| RankedFlat::new(f.elements.union(x), f.rank + x.len()))
        .collect();
    flats.push(RankedFlat::new(ElementSet::EMPTY, 0));
    Ok(Matroid::from_parts(labels, flats))
}

/// `count` labels of the form `~{stem}{i}` not already used in `m`.
pub(crate) fn fresh_labels(m: &Matroid, stem: &str, count: usize) -> Vec<String> {
    let used: HashSet<&str> = m.labels().iter().map(String::as_str).collect();
    let mut out = Vec::with_capacity(count);
    let mut i = 0;
    while out.len() < count {
        let cand = format!("~{stem}{i}");
        if !used.contains(cand.as_str()) {
            out.push(cand);
        }
        i += 1;
    }
    out
}

/// The `i`-fold truncation `(M + X) / X` with `|X| = i`.
pub fn truncate(m: &Matroid, i: usize) -> Result<Matroid> {
    if i > m.rank() {
        return Err(MatroidError::OutOfRange(format!("truncation by {i} exceeds rank {}", m.rank())));
    }
    if i == 0 {
        return Ok(m.clone());
    }
    let x = fresh_labels(m, "t", i);
    let ext = free_extension(m, &x)?;
    let xs = ext.set_of(&x)?;
    minor(&ext, ElementSet::EMPTY, xs)
}

/// The `i`-fold lift `(M × X) \ X` with `|X| = i`.
pub fn lift(m: &Matroid, i: usize) -> Result<Matroid> {
    if i == 0 {
        return Ok(m.clone());
    }
    let x = fresh_labels(m, "l", i);
    let co = free_coextension(m, &x)?;
    let xs = co.set_of(&x)?;
    minor(&co, xs, ElementSet::EMPTY)
}

fn check_minor_sets(m: &Matroid, deleted: ElementSet, contracted: ElementSet) -> Result<()> {
    let overlap = deleted.intersection(contracted);
    if !overlap.is_empty() {
        return Err(MatroidError::MinorOverlap(overlap));
    }
    for s in [deleted, contracted] {
        if !s.is_subset(m.ground()) {
            return Err(MatroidError::SetOutsideGround(s));
        }
    }
    Ok(())
}

/// `M \ X / Y`, with surviving labels kept in their original order.
///
/// Elements are removed one at a time. Every cyclic flat of a single-element
/// deletion or contraction is `Z - e` for a cyclic flat `Z` of the larger
/// matroid, so each step only tests those candidates against the minor's
/// rank function `r(A ∪ Y) - r(Y)`. No subset scan is needed.
pub fn minor(m: &Matroid, deleted: ElementSet, contracted: ElementSet) -> Result<Matroid> {
    check_minor_sets(m, deleted, contracted)?;
    let removed = deleted.union(contracted);
    if removed.is_empty() {
        return Ok(m.clone());
    }
    let mut flats: Vec<ElementSet> = m.flats().iter().map(|f| f.elements).collect();
    let mut live = m.ground();
    let mut con = ElementSet::EMPTY;
    let mut ranked = Vec::new();
    for e in removed.iter() {
        live = live.without(e);
        if contracted.contains(e) {
            con = con.with(e);
        }
        let base = m.rank_of(con);
        let rank = |a: ElementSet| m.rank_of(a.union(con)) - base;
        let mut cands: Vec<ElementSet> = flats.iter().map(|f| f.without(e)).collect();
        cands.sort_unstable();
        cands.dedup();
        ranked.clear();
        for a in cands {
            let r = rank(a);
            let closed = live.difference(a).iter().all(|x| rank(a.with(x)) > r);
            if closed && a.iter().all(|x| rank(a.without(x)) == r) {
                ranked.push(RankedFlat::new(a, r));
            }
        }
        flats = ranked.iter().map(|f| f.elements).collect();
    }
    Ok(compress(m, live, &ranked))
}

/// Reindex flats living on `live ⊆ E(m)` densely, keeping label order.
fn compress(m: &Matroid, live: ElementSet, flats: &[RankedFlat]) -> Matroid {
    let mut map = vec![usize::MAX; m.ground_size()];
    for (i, e) in live.iter().enumerate() {
        map[e] = i;
    }
    let labels = m.labels_of(live);
    let flats = flats
        .iter()
        .map(|f| RankedFlat::new(f.elements.permute(&map), f.rank))
        .collect();
    Matroid::from_parts(labels, flats)
}

/// `M \ X / Y` by a full rank scan of the minor. Limited to 20 surviving elements.
pub fn minor_by_recompute(m: &Matroid, deleted: ElementSet, contracted: ElementSet) -> Result<Matroid> {
    let oracle = MinorOracle::new(m, deleted, contracted)?;
    recompute_cyclic_flats(&oracle, oracle.labels())
}

pub fn restrict(m: &Matroid, keep: ElementSet) -> Result<Matroid> {
    minor(m, m.ground().difference(keep), ElementSet::EMPTY)
}

pub fn delete(m: &Matroid, e: usize) -> Result<Matroid> {
    minor(m, ElementSet::singleton(e), ElementSet::EMPTY)
}

pub fn contract(m: &Matroid, e: usize) -> Result<Matroid> {
    minor(m, ElementSet::EMPTY, ElementSet::singleton(e))
}

/// Whether `x` is free: `M = (M \ x) + x`.
pub fn is_free(m: &Matroid, x: usize) -> Result<bool> {
    let del = delete(m, x)?;
    let back = free_extension(&del, &[m.label(x)])?;
    Ok(back.labelled_eq(m))
}
