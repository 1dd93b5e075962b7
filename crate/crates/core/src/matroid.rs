//! Matroids stored as their lattice of cyclic flats together with ranks.

use std::cmp::Ordering;
use std::collections::HashMap;

use crate::axioms::{check_axioms, validate_presentation};
use crate::element_set::{ElementSet, MAX_ELEMENTS};
use crate::error::{MatroidError, Result};

/// Ground sets up to this size may be scanned over all `2^n` subsets.
pub const EXHAUSTIVE_LIMIT: usize = 20;

/// A cyclic flat together with its rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RankedFlat {
    pub elements: ElementSet,
    pub rank: usize,
}

impl RankedFlat {
    pub const fn new(elements: ElementSet, rank: usize) -> Self {
        RankedFlat { elements, rank }
    }

    pub fn nullity(&self) -> usize {
        self.elements.len() - self.rank
    }
}

impl PartialOrd for RankedFlat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RankedFlat {
    fn cmp(&self, other: &Self) -> Ordering {
        self.elements
            .canonical_cmp(other.elements)
            .then(self.rank.cmp(&other.rank))
    }
}

/// Anything that can report the rank of a subset of `{0, .., n-1}`.
pub trait RankOracle {
    fn ground_size(&self) -> usize;
    fn rank(&self, set: ElementSet) -> usize;
}

/// A matroid given by its cyclic flats and their ranks.
///
/// Flats are kept sorted by cardinality then mask. Element labels are carried
/// for display and for labelled comparisons; indices are dense in `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matroid {
    labels: Vec<String>,
    flats: Vec<RankedFlat>,
}

impl Matroid {
    /// Validate and build a presentation.
    pub fn new(labels: Vec<String>, mut flats: Vec<RankedFlat>) -> Result<Self> {
        check_labels(&labels)?;
        validate_presentation(&flats, labels.len())?;
        flats.sort();
        Ok(Matroid { labels, flats })
    }

    /// Build with default labels `e0, e1, ...`.
    pub fn with_default_labels(n: usize, flats: Vec<RankedFlat>) -> Result<Self> {
        Matroid::new(default_labels("e", n), flats)
    }

    /// Build from parts already known to satisfy the axioms. Checked in debug builds.
    pub(crate) fn from_parts(labels: Vec<String>, mut flats: Vec<RankedFlat>) -> Self {
        flats.sort();
        debug_assert!(check_labels(&labels).is_ok());
        debug_assert!(check_axioms(&flats).is_ok(), "invalid presentation {flats:?}");
        Matroid { labels, flats }
    }

    pub fn ground_size(&self) -> usize {
        self.labels.len()
    }

    pub fn ground(&self) -> ElementSet {
        ElementSet::full(self.labels.len())
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, e: usize) -> &str {
        &self.labels[e]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn flats(&self) -> &[RankedFlat] {
        &self.flats
    }

    /// Set of the given labels.
    pub fn set_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<ElementSet> {
        labels.iter().try_fold(ElementSet::EMPTY, |acc, l| {
            self.index_of(l.as_ref())
                .map(|e| acc.with(e))
                .ok_or_else(|| MatroidError::UnknownLabel(l.as_ref().to_string()))
        })
    }

    pub fn labels_of(&self, set: ElementSet) -> Vec<String> {
        set.iter().map(|e| self.labels[e].clone()).collect()
    }

    /// The least cyclic flat: the set of loops.
    pub fn least_flat(&self) -> &RankedFlat {
        self.flats
            .iter()
            .find(|f| self.flats.iter().all(|g| f.elements.is_subset(g.elements)))
            .expect("valid presentation has a least flat")
    }

    /// The greatest cyclic flat: the complement of the isthmuses.
    pub fn top_flat(&self) -> &RankedFlat {
        self.flats
            .iter()
            .find(|f| self.flats.iter().all(|g| g.elements.is_subset(f.elements)))
            .expect("valid presentation has a greatest flat")
    }

    /// `min { r(F) + |Y - F| : F cyclic flat }`.
    #[inline]
    pub fn rank_of(&self, set: ElementSet) -> usize {
        self.flats
            .iter()
            .map(|f| f.rank + set.difference(f.elements).len())
            .min()
            .expect("nonempty presentation")
    }

    /// Rank of the whole matroid.
    pub fn rank(&self) -> usize {
        self.rank_of(self.ground())
    }

    pub fn corank(&self) -> usize {
        self.ground_size() - self.rank()
    }

    pub fn is_independent(&self, set: ElementSet) -> bool {
        self.rank_of(set) == set.len()
    }

    pub fn nullity(&self, set: ElementSet) -> usize {
        set.len() - self.rank_of(set)
    }

    pub fn closure(&self, set: ElementSet) -> ElementSet {
        let r = self.rank_of(set);
        self.ground()
            .iter()
            .filter(|&e| set.contains(e) || self.rank_of(set.with(e)) == r)
            .collect()
    }

    pub fn is_flat(&self, set: ElementSet) -> bool {
        self.closure(set) == set
    }

    /// Union of the circuits contained in `set`.
    pub fn cyclic_part(&self, set: ElementSet) -> ElementSet {
        let r = self.rank_of(set);
        set.iter().filter(|&e| self.rank_of(set.without(e)) == r).collect()
    }

    pub fn is_cyclic(&self, set: ElementSet) -> bool {
        self.cyclic_part(set) == set
    }

    /// Nonempty proper cyclic flats.
    pub fn proper_nonempty_flats(&self) -> impl Iterator<Item = &RankedFlat> {
        let g = self.ground();
        self.flats
            .iter()
            .filter(move |f| !f.elements.is_empty() && f.elements != g)
    }

    /// Sum of nullities of the nonempty proper cyclic flats.
    pub fn eta_zprime(&self) -> usize {
        self.proper_nonempty_flats().map(RankedFlat::nullity).sum()
    }

    /// Uniform matroids are exactly those without nonempty proper cyclic flats.
    pub fn is_uniform(&self) -> bool {
        self.proper_nonempty_flats().next().is_none()
    }

    /// Elements in no proper cyclic flat: free elements and isthmuses.
    pub fn fi_set(&self) -> ElementSet {
        let g = self.ground();
        let covered = self
            .flats
            .iter()
            .filter(|f| f.elements != g)
            .fold(ElementSet::EMPTY, |s, f| s.union(f.elements));
        g.difference(covered)
    }

    /// Intersection of the nonempty cyclic flats: cofree elements and loops.
    pub fn fi_dual_set(&self) -> ElementSet {
        self.flats
            .iter()
            .filter(|f| !f.elements.is_empty())
            .fold(self.ground(), |s, f| s.intersection(f.elements))
    }

    fn scan_gate(&self, what: &'static str) -> Result<()> {
        if self.ground_size() > EXHAUSTIVE_LIMIT {
            return Err(MatroidError::ScanLimit { what, n: self.ground_size(), limit: EXHAUSTIVE_LIMIT });
        }
        Ok(())
    }

    /// All bases, sorted by mask.
    pub fn enumerate_bases(&self) -> Result<Vec<ElementSet>> {
        self.scan_gate("basis enumeration")?;
        let r = self.rank();
        let mut out: Vec<ElementSet> = self
            .ground()
            .k_subsets(r)
            .filter(|&b| self.rank_of(b) == r)
            .collect();
        out.sort_by(|a, b| a.canonical_cmp(*b));
        Ok(out)
    }

    /// All circuits, sorted by cardinality then mask.
    pub fn enumerate_circuits(&self) -> Result<Vec<ElementSet>> {
        self.scan_gate("circuit enumeration")?;
        let mut out = Vec::new();
        for c in self.ground().subsets().skip(1) {
            let k = c.len();
            if self.rank_of(c) == k - 1 && c.iter().all(|e| self.rank_of(c.without(e)) == k - 1) {
                out.push(c);
            }
        }
        out.sort_by(|a, b| a.canonical_cmp(*b));
        Ok(out)
    }

    /// All flats (closed sets), sorted by cardinality then mask.
    pub fn enumerate_flats(&self) -> Result<Vec<ElementSet>> {
        self.scan_gate("flat enumeration")?;
        let mut out: Vec<ElementSet> = self.ground().subsets().filter(|&s| self.is_flat(s)).collect();
        out.sort_by(|a, b| a.canonical_cmp(*b));
        Ok(out)
    }

    /// Flats of rank `r(M) - 1`.
    pub fn hyperplanes(&self) -> Result<Vec<ElementSet>> {
        let r = self.rank();
        if r == 0 {
            return Ok(Vec::new());
        }
        Ok(self
            .enumerate_flats()?
            .into_iter()
            .filter(|&f| self.rank_of(f) == r - 1)
            .collect())
    }

    /// Cyclic flats of rank `r(M) - 1` and nullity one: the circuit-hyperplanes.
    pub fn circuit_hyperplanes(&self) -> Vec<ElementSet> {
        let r = self.rank();
        self.flats
            .iter()
            .filter(|f| f.rank + 1 == r && f.nullity() == 1)
            .map(|f| f.elements)
            .collect()
    }

    /// The same matroid with elements laid out in the order of `labels`.
    pub fn reordered<S: AsRef<str>>(&self, labels: &[S]) -> Result<Matroid> {
        if labels.len() != self.ground_size() {
            return Err(MatroidError::OutOfRange(format!(
                "reorder expects {} labels, got {}",
                self.ground_size(),
                labels.len()
            )));
        }
        let pos: HashMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (l.as_ref(), i)).collect();
        let mut map = vec![0usize; self.ground_size()];
        for (old, l) in self.labels.iter().enumerate() {
            map[old] = *pos.get(l.as_str()).ok_or_else(|| MatroidError::UnknownLabel(l.clone()))?;
        }
        let labels: Vec<String> = labels.iter().map(|l| l.as_ref().to_string()).collect();
        check_labels(&labels)?;
        Ok(self.permuted(&map, labels))
    }

    /// Move element `e` to index `map[e]`, installing `labels` on the result.
    pub(crate) fn permuted(&self, map: &[usize], labels: Vec<String>) -> Matroid {
        let flats = self
            .flats
            .iter()
            .map(|f| RankedFlat::new(f.elements.permute(map), f.rank))
            .collect();
        Matroid::from_parts(labels, flats)
    }

    /// Equality as labelled matroids, independent of the index order.
    pub fn labelled_eq(&self, other: &Matroid) -> bool {
        if self.ground_size() != other.ground_size() || self.flats.len() != other.flats.len() {
            return false;
        }
        match other.reordered(&self.labels) {
            Ok(o) => o.flats == self.flats,
            Err(_) => false,
        }
    }

    /// Replace all labels.
    pub fn with_labels(&self, labels: Vec<String>) -> Result<Matroid> {
        if labels.len() != self.ground_size() {
            return Err(MatroidError::OutOfRange("label count mismatch".into()));
        }
        check_labels(&labels)?;
        Ok(Matroid { labels, flats: self.flats.clone() })
    }

    /// Labels `prefix0, prefix1, ...` in index order.
    pub fn with_label_prefix(&self, prefix: &str) -> Matroid {
        Matroid { labels: default_labels(prefix, self.ground_size()), flats: self.flats.clone() }
    }

    /// Per-flat rank and size statistics, sorted.
    pub fn flat_statistics(&self) -> Vec<(usize, usize)> {
        let mut v: Vec<_> = self.flats.iter().map(|f| (f.elements.len(), f.rank)).collect();
        v.sort_unstable();
        v
    }
}

impl RankOracle for Matroid {
    fn ground_size(&self) -> usize {
        self.labels.len()
    }
    fn rank(&self, set: ElementSet) -> usize {
        self.rank_of(set)
    }
}

pub(crate) fn check_labels(labels: &[String]) -> Result<()> {
    if labels.len() > MAX_ELEMENTS {
        return Err(MatroidError::GroundTooLarge(labels.len()));
    }
    let mut seen = std::collections::HashSet::new();
    for l in labels {
        if !seen.insert(l.as_str()) {
            return Err(MatroidError::DuplicateLabel(l.clone()));
        }
    }
    Ok(())
}

pub fn default_labels(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// Rank function of `M \ X / Y`, indexed over the surviving elements in order.
pub struct MinorOracle<'a> {
    matroid: &'a Matroid,
    contracted: ElementSet,
    contracted_rank: usize,
    survivors: Vec<usize>,
}

impl<'a> MinorOracle<'a> {
    pub fn new(matroid: &'a Matroid, deleted: ElementSet, contracted: ElementSet) -> Result<Self> {
        let overlap = deleted.intersection(contracted);
        if !overlap.is_empty() {
            return Err(MatroidError::MinorOverlap(overlap));
        }
        for s in [deleted, contracted] {
            if !s.is_subset(matroid.ground()) {
                return Err(MatroidError::SetOutsideGround(s));
            }
        }
        let survivors = matroid.ground().difference(deleted.union(contracted)).to_vec();
        Ok(MinorOracle {
            matroid,
            contracted,
            contracted_rank: matroid.rank_of(contracted),
            survivors,
        })
    }

    /// Labels of the surviving elements, in index order.
    pub fn labels(&self) -> Vec<String> {
        self.survivors.iter().map(|&e| self.matroid.labels[e].clone()).collect()
    }

    fn lift(&self, set: ElementSet) -> ElementSet {
        set.iter().map(|i| self.survivors[i]).collect()
    }
}

impl RankOracle for MinorOracle<'_> {
    fn ground_size(&self) -> usize {
        self.survivors.len()
    }
    fn rank(&self, set: ElementSet) -> usize {
        self.matroid.rank_of(self.lift(set).union(self.contracted)) - self.contracted_rank
    }
}

/// Precomputed rank of every subset.
pub struct RankTable {
    n: usize,
    ranks: Vec<u8>,
}

impl RankTable {
    pub fn from_oracle(oracle: &impl RankOracle) -> Result<Self> {
        let n = oracle.ground_size();
        if n > EXHAUSTIVE_LIMIT {
            return Err(MatroidError::ScanLimit { what: "rank table", n, limit: EXHAUSTIVE_LIMIT });
        }
        let ranks = (0..1u64 << n).map(|m| oracle.rank(ElementSet::from_bits(m)) as u8).collect();
        Ok(RankTable { n, ranks })
    }

    /// Ranks of the matroid whose bases are `bases`; independent sets are their subsets.
    pub fn from_bases(n: usize, bases: &[ElementSet]) -> Result<Self> {
        if n > EXHAUSTIVE_LIMIT {
            return Err(MatroidError::ScanLimit { what: "rank table", n, limit: EXHAUSTIVE_LIMIT });
        }
        let Some(first) = bases.first() else {
            return Err(MatroidError::BadOracle("no bases given".into()));
        };
        let r = first.len();
        if bases.iter().any(|b| b.len() != r || !b.is_subset(ElementSet::full(n))) {
            return Err(MatroidError::BadOracle("bases differ in size or leave the ground set".into()));
        }
        let size = 1usize << n;
        let mut indep = vec![false; size];
        for b in bases {
            indep[b.bits() as usize] = true;
        }
        for m in (0..size).rev() {
            if indep[m] {
                continue;
            }
            let set = ElementSet::from_bits(m as u64);
            indep[m] = set
                .complement(n)
                .iter()
                .any(|e| indep[set.with(e).bits() as usize]);
        }
        let mut ranks = vec![0u8; size];
        for m in 1..size {
            let set = ElementSet::from_bits(m as u64);
            ranks[m] = if indep[m] {
                set.len() as u8
            } else {
                set.iter().map(|e| ranks[set.without(e).bits() as usize]).max().unwrap_or(0)
            };
        }
        Ok(RankTable { n, ranks })
    }

    /// Check rank axioms: `r(∅)=0`, unit increase, and (up to 16 elements) local submodularity.
    pub fn check_matroid(&self) -> Result<()> {
        if self.ranks[0] != 0 {
            return Err(MatroidError::BadOracle("rank of the empty set is nonzero".into()));
        }
        let n = self.n;
        for m in 0..(1u64 << n) {
            let a = ElementSet::from_bits(m);
            let ra = self.get(a);
            let outside: Vec<usize> = a.complement(n).iter().collect();
            for &e in &outside {
                let re = self.get(a.with(e));
                if re < ra || re > ra + 1 {
                    return Err(MatroidError::BadOracle(format!("unit increase fails at {a:?} + {e}")));
                }
            }
            if n <= 16 {
                for (i, &e) in outside.iter().enumerate() {
                    for &f in &outside[i + 1..] {
                        if self.get(a.with(e)) + self.get(a.with(f)) < self.get(a.with(e).with(f)) + ra {
                            return Err(MatroidError::BadOracle(format!(
                                "submodularity fails at {a:?} with {e}, {f}"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn get(&self, set: ElementSet) -> usize {
        self.ranks[set.bits() as usize] as usize
    }
}

impl RankOracle for RankTable {
    fn ground_size(&self) -> usize {
        self.n
    }
    fn rank(&self, set: ElementSet) -> usize {
        self.get(set)
    }
}

/// Rebuild the cyclic-flat presentation of the matroid behind `oracle` by a full scan.
///
/// The oracle is checked for unit increase (and for local submodularity up to
/// 16 elements) on the way; failures are reported as [`MatroidError::BadOracle`].
pub fn recompute_cyclic_flats(oracle: &impl RankOracle, labels: Vec<String>) -> Result<Matroid> {
    let n = oracle.ground_size();
    if labels.len() != n {
        return Err(MatroidError::OutOfRange("label count mismatch".into()));
    }
    let table = RankTable::from_oracle(oracle)?;
    table.check_matroid()?;
    from_rank_table(&table, labels)
}

pub fn from_rank_table(table: &RankTable, labels: Vec<String>) -> Result<Matroid> {
    let n = table.n;
    let mut flats = Vec::new();
    for m in 0..(1u64 << n) {
        let a = ElementSet::from_bits(m);
        let r = table.get(a);
        let closed = a.complement(n).iter().all(|e| table.get(a.with(e)) > r);
        if closed && a.iter().all(|e| table.get(a.without(e)) == r) {
            flats.push(RankedFlat::new(a, r));
        }
    }
    Matroid::new(labels, flats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn rank_examples() {
        let u24 = fixtures::uniform(2, 4);
        assert_eq!(u24.rank_of(ElementSet::from_indices([0, 1, 2])), 2);
        let k4 = fixtures::mk4();
        assert_eq!(k4.rank_of(ElementSet::from_indices([0, 1, 3])), 2);
        assert_eq!(k4.rank_of(ElementSet::EMPTY), 0);
        assert_eq!(k4.rank(), 3);
    }

    #[test]
    fn independence_closure_nullity() {
        let u24 = fixtures::uniform(2, 4);
        let s = ElementSet::from_indices([0, 1]);
        assert!(u24.is_independent(s));
        // a pair spans U_{2,4}
        assert_eq!(u24.closure(s), u24.ground());
        assert_eq!(u24.nullity(s), 0);

        let k4 = fixtures::mk4();
        let tri = ElementSet::from_indices([0, 1, 3]);
        assert!(!k4.is_independent(tri));
        assert_eq!(k4.closure(tri), tri);
        assert_eq!(k4.nullity(tri), 1);
        assert!(k4.is_independent(s));
        assert_eq!(k4.closure(s), tri);
    }

    #[test]
    fn bases_and_circuits() {
        let u24 = fixtures::uniform(2, 4);
        assert_eq!(u24.enumerate_bases().unwrap().len(), 6);
        let circuits = u24.enumerate_circuits().unwrap();
        assert_eq!(circuits.len(), 4);
        assert!(circuits.iter().all(|c| c.len() == 3));
        assert_eq!(fixtures::mk4().enumerate_bases().unwrap().len(), 16);
        let ps = fixtures::pair_sum(2);
        let c = ps.enumerate_circuits().unwrap();
        assert_eq!(c, vec![ElementSet::from_indices([0, 1]), ElementSet::from_indices([2, 3])]);
    }

    #[test]
    fn eta_and_fi_sets() {
        assert_eq!(fixtures::uniform(2, 4).eta_zprime(), 0);
        assert_eq!(fixtures::mk4().eta_zprime(), 4);
        let ps = fixtures::pair_sum(2);
        assert_eq!(ps.eta_zprime(), 2);
        assert_eq!(fixtures::uniform(2, 4).fi_set(), ElementSet::full(4));
        assert_eq!(fixtures::mk4().fi_set(), ElementSet::EMPTY);
        assert_eq!(ps.fi_set(), ElementSet::EMPTY);
        assert_eq!(ps.fi_dual_set(), ElementSet::EMPTY);
    }

    #[test]
    fn recompute_examples() {
        let u24 = fixtures::uniform(2, 4);
        let back = recompute_cyclic_flats(&u24, u24.labels().to_vec()).unwrap();
        assert_eq!(back, u24);

        let k4 = fixtures::mk4();
        let oracle = MinorOracle::new(&k4, ElementSet::EMPTY, ElementSet::singleton(0)).unwrap();
        let m = recompute_cyclic_flats(&oracle, oracle.labels()).unwrap();
        let got: Vec<(Vec<usize>, usize)> = m.flats().iter().map(|f| (f.elements.to_vec(), f.rank)).collect();
        // survivors ac, ad, bc, bd, cd -> indices 0..5; parallel pairs {ac,bc}, {ad,bd}
        assert_eq!(got, vec![(vec![], 0), (vec![0, 2], 1), (vec![1, 3], 1), (vec![0, 1, 2, 3, 4], 2)]);

        let loops = Matroid::with_default_labels(3, vec![RankedFlat::new(ElementSet::full(3), 0)]).unwrap();
        let back = recompute_cyclic_flats(&loops, loops.labels().to_vec()).unwrap();
        assert_eq!(back.flats(), &[RankedFlat::new(ElementSet::full(3), 0)]);
    }

    struct Bogus;
    impl RankOracle for Bogus {
        fn ground_size(&self) -> usize {
            3
        }
        fn rank(&self, set: ElementSet) -> usize {
            if set.len() == 3 {
                3
            } else {
                set.len().min(1)
            }
        }
    }

    #[test]
    fn recompute_rejects_bad_oracle() {
        let err = recompute_cyclic_flats(&Bogus, default_labels("e", 3)).unwrap_err();
        assert!(matches!(err, MatroidError::BadOracle(_)));
    }

    #[test]
    fn bases_table_matches_rank() {
        let k4 = fixtures::mk4();
        let bases = k4.enumerate_bases().unwrap();
        let table = RankTable::from_bases(6, &bases).unwrap();
        table.check_matroid().unwrap();
        for s in k4.ground().subsets() {
            assert_eq!(table.get(s), k4.rank_of(s));
        }
    }

    #[test]
    fn labelled_equality_ignores_order() {
        let k4 = fixtures::mk4();
        let mut rev = k4.labels().to_vec();
        rev.reverse();
        let r = k4.reordered(&rev).unwrap();
        assert_ne!(r, k4);
        assert!(r.labelled_eq(&k4));
        assert!(!k4.labelled_eq(&k4.with_label_prefix("z")));
    }

    #[test]
    fn scan_gate() {
        let big = fixtures::uniform(3, 21);
        assert!(matches!(big.enumerate_bases(), Err(MatroidError::ScanLimit { .. })));
    }
}
