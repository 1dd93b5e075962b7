//! Amalgams of free coextensions: the rank-`k` intertwine construction and its variants.
//!
//! Given `M1` on `S1`, `M2` on `S2`, subsets `S1' ⊆ S1`, `S2' ⊆ S2`, an integer
//! `k >= r(M1) + η1(S1') + r(M2) + η2(S2')` and fresh blocks `T1`, `T2` with
//! `|T1| = k - r(M1) - |S2'|` and `|T2| = k - r(M2) - |S1'|`, the matroid on
//! `S1 ∪ S2 ∪ T1 ∪ T2` has cyclic flats
//!
//! * `F ∪ T1 ∪ S2'` of rank `r1(F) + |T1| + |S2'|` for nonempty proper cyclic flats `F` of `M1`,
//! * `F ∪ T2 ∪ S1'` of rank `r2(F) + |T2| + |S1'|` for nonempty proper cyclic flats `F` of `M2`,
//! * the empty set (rank 0) and the whole ground set (rank `k`).
//!
//! Elements are laid out as `S1, S2, T1, T2` in the constructed matroid.

use std::collections::BTreeMap;

use crate::constructions::{direct_sum, dual, free_coextension, free_extension, lift, restrict, truncate};
use crate::element_set::{Combinations, ElementSet};
use crate::error::{MatroidError, Result};
use crate::matroid::{check_labels, default_labels, Matroid, RankedFlat};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Labelled,
    Unlabelled,
}

/// Which optional hypotheses of the intertwine theorems a parameter set meets.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct HypothesisFlags {
    /// `FI(Mi) ⊆ Si' ⊆ Si - FI(Mi*)`.
    pub fi_sandwich: [bool; 2],
    /// `k >= 4 max(|S1|, |S2|)`.
    pub k_at_least_four_max: bool,
    pub nonuniform: [bool; 2],
    /// The nonempty proper cyclic flats of `Mi` are not exactly `{Si'}`.
    pub zprime_not_sprime: [bool; 2],
}

impl HypothesisFlags {
    /// Hypotheses for labelled intertwines (beyond the rank bound).
    pub fn labelled_theorem(&self) -> bool {
        self.nonuniform.iter().all(|&b| b) && self.zprime_not_sprime.iter().all(|&b| b)
    }

    /// Structural hypotheses for unlabelled intertwines, apart from non-obtainability.
    pub fn unlabelled_theorem(&self) -> bool {
        self.fi_sandwich.iter().all(|&b| b) && self.k_at_least_four_max
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntertwineParams {
    pub m1: Matroid,
    pub m2: Matroid,
    /// `S1'`, in `m1`'s indices.
    pub s1_prime: ElementSet,
    /// `S2'`, in `m2`'s indices.
    pub s2_prime: ElementSet,
    pub k: usize,
    pub t1: Vec<String>,
    pub t2: Vec<String>,
    pub mode: Mode,
    pub hypotheses: HypothesisFlags,
}

/// `r(M1) + η1(S1') + r(M2) + η2(S2')`, the least admissible `k`.
pub fn min_k(m1: &Matroid, s1p: ElementSet, m2: &Matroid, s2p: ElementSet) -> usize {
    m1.rank() + m1.nullity(s1p) + m2.rank() + m2.nullity(s2p)
}

/// Block sizes `(|T1|, |T2|)` for a given `k`, if both are positive.
pub fn block_sizes(m1: &Matroid, s1p: ElementSet, m2: &Matroid, s2p: ElementSet, k: usize) -> Option<(usize, usize)> {
    let t1 = k.checked_sub(m1.rank() + s2p.len())?;
    let t2 = k.checked_sub(m2.rank() + s1p.len())?;
    (t1 > 0 && t2 > 0).then_some((t1, t2))
}

/// Parameters with default block labels `t1_0, ..` and `t2_0, ..`.
pub fn derive_params(
    m1: &Matroid,
    s1p: ElementSet,
    m2: &Matroid,
    s2p: ElementSet,
    k: usize,
    mode: Mode,
) -> Result<IntertwineParams> {
    let (n1, n2) = block_sizes(m1, s1p, m2, s2p, k).unwrap_or((0, 0));
    derive_params_with_blocks(m1, s1p, m2, s2p, k, mode, default_labels("t1_", n1), default_labels("t2_", n2))
}

/// Parameters with caller-chosen block labels. The block sizes must match `k`.
#[allow(clippy::too_many_arguments)]
pub fn derive_params_with_blocks(
    m1: &Matroid,
    s1p: ElementSet,
    m2: &Matroid,
    s2p: ElementSet,
    k: usize,
    mode: Mode,
    t1: Vec<String>,
    t2: Vec<String>,
) -> Result<IntertwineParams> {
    let bad = |s: String| Err(MatroidError::Params(s));
    if m1.rank() == 0 || m2.rank() == 0 {
        return bad("both matroids need positive rank".into());
    }
    if !s1p.is_subset(m1.ground()) || !s2p.is_subset(m2.ground()) {
        return bad("S' sets must lie in their ground sets".into());
    }
    let need = min_k(m1, s1p, m2, s2p);
    if k < need {
        return bad(format!("k = {k} is below the rank bound {need}"));
    }
    let Some((n1, n2)) = block_sizes(m1, s1p, m2, s2p, k) else {
        return bad(format!("k = {k} leaves an empty T block"));
    };
    if t1.len() != n1 || t2.len() != n2 {
        return bad(format!("T blocks need sizes {n1} and {n2}, got {} and {}", t1.len(), t2.len()));
    }
    let mut all = m1.labels().to_vec();
    all.extend_from_slice(m2.labels());
    all.extend(t1.iter().cloned());
    all.extend(t2.iter().cloned());
    check_labels(&all).map_err(|e| MatroidError::Params(format!("ground sets must be disjoint: {e}")))?;

    let sandwich = |m: &Matroid, sp: ElementSet| m.fi_set().is_subset(sp) && sp.is_subset(m.ground().difference(m.fi_dual_set()));
    let zprime_not = |m: &Matroid, sp: ElementSet| {
        let z: Vec<ElementSet> = m.proper_nonempty_flats().map(|f| f.elements).collect();
        z != [sp]
    };
    let hypotheses = HypothesisFlags {
        fi_sandwich: [sandwich(m1, s1p), sandwich(m2, s2p)],
        k_at_least_four_max: k >= 4 * m1.ground_size().max(m2.ground_size()),
        nonuniform: [!m1.is_uniform(), !m2.is_uniform()],
        zprime_not_sprime: [zprime_not(m1, s1p), zprime_not(m2, s2p)],
    };
    if mode == Mode::Unlabelled && !hypotheses.fi_sandwich.iter().all(|&b| b) {
        return bad("S' must contain FI(M) and avoid FI(M*) for unlabelled intertwines".into());
    }
    Ok(IntertwineParams { m1: m1.clone(), m2: m2.clone(), s1_prime: s1p, s2_prime: s2p, k, t1, t2, mode, hypotheses })
}

impl IntertwineParams {
    fn n1(&self) -> usize {
        self.m1.ground_size()
    }
    fn n2(&self) -> usize {
        self.m2.ground_size()
    }

    pub fn ground_size(&self) -> usize {
        self.n1() + self.n2() + self.t1.len() + self.t2.len()
    }

    /// Labels of the constructed matroid: `S1, S2, T1, T2`.
    pub fn ground_labels(&self) -> Vec<String> {
        let mut v = self.m1.labels().to_vec();
        v.extend_from_slice(self.m2.labels());
        v.extend(self.t1.iter().cloned());
        v.extend(self.t2.iter().cloned());
        v
    }

    fn shift2(&self, s: ElementSet) -> ElementSet {
        ElementSet::from_bits(s.bits() << self.n1())
    }

    pub fn s1(&self) -> ElementSet {
        ElementSet::full(self.n1())
    }
    pub fn s2(&self) -> ElementSet {
        self.shift2(self.m2.ground())
    }
    pub fn s1_prime_set(&self) -> ElementSet {
        self.s1_prime
    }
    pub fn s2_prime_set(&self) -> ElementSet {
        self.shift2(self.s2_prime)
    }
    pub fn t1_set(&self) -> ElementSet {
        let base = self.n1() + self.n2();
        ElementSet::from_indices(base..base + self.t1.len())
    }
    pub fn t2_set(&self) -> ElementSet {
        let base = self.n1() + self.n2() + self.t1.len();
        ElementSet::from_indices(base..base + self.t2.len())
    }

    /// `M1 × (T1 ∪ S2')` on labels `S1, T1, S2'`.
    pub fn side_one(&self) -> Result<Matroid> {
        let mut x = self.t1.clone();
        x.extend(self.m2.labels_of(self.s2_prime));
        free_coextension(&self.m1, &x)
    }

    /// `M2 × (T2 ∪ S1')` on labels `S2, T2, S1'`.
    pub fn side_two(&self) -> Result<Matroid> {
        let mut x = self.t2.clone();
        x.extend(self.m1.labels_of(self.s1_prime));
        free_coextension(&self.m2, &x)
    }

    /// Ground set of `side_one` inside the constructed matroid.
    pub fn side_one_set(&self) -> ElementSet {
        self.s1().union(self.t1_set()).union(self.s2_prime_set())
    }

    pub fn side_two_set(&self) -> ElementSet {
        self.s2().union(self.t2_set()).union(self.s1_prime_set())
    }

    /// `|S1| + |S2| + |T1| + |T2| - k`.
    pub fn dual_k(&self) -> usize {
        self.ground_size() - self.k
    }

    /// Parameters of the dual instance: `(M1*, S1 - S1', T2; M2*, S2 - S2', T1)` at rank `dual_k`.
    pub fn dual_params(&self) -> Result<IntertwineParams> {
        derive_params_with_blocks(
            &dual(&self.m1),
            self.m1.ground().difference(self.s1_prime),
            &dual(&self.m2),
            self.m2.ground().difference(self.s2_prime),
            self.dual_k(),
            Mode::Labelled,
            self.t2.clone(),
            self.t1.clone(),
        )
    }
}

/// Build the rank-`k` amalgam described in the module docs.
pub fn construct_intertwine(p: &IntertwineParams) -> Result<Matroid> {
    let n = p.ground_size();
    let mut flats = vec![RankedFlat::new(ElementSet::EMPTY, 0), RankedFlat::new(ElementSet::full(n), p.k)];
    let over1 = p.t1_set().union(p.s2_prime_set());
    for f in p.m1.proper_nonempty_flats() {
        flats.push(RankedFlat::new(f.elements.union(over1), f.rank + over1.len()));
    }
    let over2 = p.t2_set().union(p.s1_prime_set());
    for f in p.m2.proper_nonempty_flats() {
        flats.push(RankedFlat::new(p.shift2(f.elements).union(over2), f.rank + over2.len()));
    }
    Matroid::new(p.ground_labels(), flats)
}

/// Restricting to `S1 ∪ T1 ∪ S2'` gives `M1 × (T1 ∪ S2')`, and symmetrically.
pub fn check_amalgam(p: &IntertwineParams, m: &Matroid) -> Result<bool> {
    let one = restrict(m, p.side_one_set())?.labelled_eq(&p.side_one()?);
    let two = restrict(m, p.side_two_set())?.labelled_eq(&p.side_two()?);
    Ok(one && two)
}

/// `η1(F) = η_M(F ∪ T1 ∪ S2')` for every nonempty proper cyclic flat `F` of `M1`, and symmetrically.
pub fn check_nullity_preservation(p: &IntertwineParams, m: &Matroid) -> bool {
    let over1 = p.t1_set().union(p.s2_prime_set());
    let over2 = p.t2_set().union(p.s1_prime_set());
    p.m1.proper_nonempty_flats().all(|f| m.nullity(f.elements.union(over1)) == f.nullity())
        && p.m2
            .proper_nonempty_flats()
            .all(|f| m.nullity(p.shift2(f.elements).union(over2)) == f.nullity())
}

/// A family of `k`-subsets of `T1 ∪ T2` meeting pairwise in at most `k - 2` elements.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ChFamily {
    sets: Vec<ElementSet>,
}

impl ChFamily {
    pub fn new(sets: Vec<ElementSet>, blocks: ElementSet, k: usize) -> Result<Self> {
        let bad = |s: String| Err(MatroidError::ChFamily(s));
        for (i, h) in sets.iter().enumerate() {
            if h.len() != k {
                return bad(format!("{h:?} does not have {k} elements"));
            }
            if !h.is_subset(blocks) {
                return bad(format!("{h:?} leaves T1 ∪ T2"));
            }
            for g in &sets[..i] {
                if g == h {
                    return bad(format!("{h:?} repeated"));
                }
                if g.intersection(*h).len() + 2 > k {
                    return bad(format!("{g:?} and {h:?} share more than k - 2 elements"));
                }
            }
        }
        Ok(ChFamily { sets })
    }

    pub fn empty() -> Self {
        ChFamily::default()
    }

    pub fn sets(&self) -> &[ElementSet] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Pair consecutive block elements and take every union of `k/2` pairs.
    pub fn pairing(blocks: ElementSet, k: usize) -> Result<Self> {
        if !k.is_multiple_of(2) {
            return Err(MatroidError::ChFamily(format!("pairing needs even k, got {k}")));
        }
        let elems = blocks.to_vec();
        let pairs: Vec<ElementSet> = elems
            .chunks_exact(2)
            .map(|c| ElementSet::from_indices(c.iter().copied()))
            .collect();
        let sets = Combinations::new(pairs.len(), k / 2)
            .map(|c| c.iter().fold(ElementSet::EMPTY, |s, &i| s.union(pairs[i])))
            .collect();
        ChFamily::new(sets, blocks, k)
    }

    /// The first `count` compatible `k`-subsets in lexicographic order.
    pub fn greedy(blocks: ElementSet, k: usize, count: usize) -> Result<Self> {
        let mut sets: Vec<ElementSet> = Vec::new();
        for h in blocks.k_subsets(k) {
            if sets.len() == count {
                break;
            }
            if sets.iter().all(|g| g.intersection(h).len() + 2 <= k) {
                sets.push(h);
            }
        }
        if sets.len() < count {
            return Err(MatroidError::ChFamily(format!("only {} compatible sets exist", sets.len())));
        }
        ChFamily::new(sets, blocks, k)
    }
}

/// Add the family's sets as cyclic flats of rank `k - 1`.
pub fn construct_ch_variant(m: &Matroid, p: &IntertwineParams, family: &ChFamily) -> Result<Matroid> {
    if !p.m1.circuit_hyperplanes().is_empty() || !p.m2.circuit_hyperplanes().is_empty() {
        return Err(MatroidError::ChFamily("inputs must have no circuit-hyperplanes".into()));
    }
    let blocks = p.t1_set().union(p.t2_set());
    let family = ChFamily::new(family.sets.clone(), blocks, p.k)?;
    if family.is_empty() {
        return Ok(m.clone());
    }
    let mut flats = m.flats().to_vec();
    flats.extend(family.sets.iter().map(|&h| RankedFlat::new(h, p.k - 1)));
    Matroid::new(m.labels().to_vec(), flats)
}

/// `M1'' = (M1 × (T1 ∪ S2')) + (T2 ∪ (S2 - S2'))` and its mirror, laid out like the construction.
pub fn vertigan_factors(p: &IntertwineParams) -> Result<(Matroid, Matroid)> {
    let labels = p.ground_labels();
    let mut ext1 = p.t2.clone();
    ext1.extend(p.m2.labels_of(p.m2.ground().difference(p.s2_prime)));
    let f1 = free_extension(&p.side_one()?, &ext1)?.reordered(&labels)?;
    let mut ext2 = p.t1.clone();
    ext2.extend(p.m1.labels_of(p.m1.ground().difference(p.s1_prime)));
    let f2 = free_extension(&p.side_two()?, &ext2)?.reordered(&labels)?;
    Ok((f1, f2))
}

/// Whether the bases of the construction are the common bases of the two factors.
pub fn vertigan_basis_equality(p: &IntertwineParams) -> Result<bool> {
    let m = construct_intertwine(p)?;
    let (f1, f2) = vertigan_factors(p)?;
    let b = m.enumerate_bases()?;
    let b1 = f1.enumerate_bases()?;
    let b2: std::collections::HashSet<ElementSet> = f2.enumerate_bases()?.into_iter().collect();
    let mut common: Vec<ElementSet> = b1.into_iter().filter(|x| b2.contains(x)).collect();
    common.sort_by(|a, b| a.canonical_cmp(*b));
    Ok(common == b)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpecialCase {
    /// `S1' = S2' = ∅`: a `k`-fold truncation of `(M1 × T1) ⊕ (M2 × T2)`.
    EmptySPrime,
    /// `Si' = Si`: a `j`-fold lift of `(M1 + T2) ⊕ (M2 + T1)`, `j = k - r(M1) - r(M2)`.
    FullSPrime,
}

#[derive(Clone, Debug)]
pub struct SpecialCaseVerdict {
    pub case: SpecialCase,
    pub holds: bool,
    pub construction: Matroid,
    pub formula: Matroid,
}

/// Build both sides of the truncation or lift identity and compare them.
pub fn special_case_identity(p: &IntertwineParams) -> Result<SpecialCaseVerdict> {
    let (r1, r2) = (p.m1.rank(), p.m2.rank());
    let (n1, n2) = (p.m1.ground_size(), p.m2.ground_size());
    let construction = construct_intertwine(p)?;
    let (case, formula) = if p.s1_prime.is_empty() && p.s2_prime.is_empty() {
        let sum = direct_sum(&free_coextension(&p.m1, &p.t1)?, &free_coextension(&p.m2, &p.t2)?)?;
        (SpecialCase::EmptySPrime, truncate(&sum, p.k)?)
    } else if p.s1_prime == p.m1.ground() && p.s2_prime == p.m2.ground() && p.k >= r1 + n1 + r2 + n2 {
        let sum = direct_sum(&free_extension(&p.m1, &p.t2)?, &free_extension(&p.m2, &p.t1)?)?;
        (SpecialCase::FullSPrime, lift(&sum, p.k - r1 - r2)?)
    } else {
        return Err(MatroidError::Params("parameters are outside both special cases".into()));
    };
    let holds = formula.labelled_eq(&construction);
    Ok(SpecialCaseVerdict { case, holds, construction, formula })
}

/// `(2k - r(M1) - r(M2), 2k + r(M1*) + r(M2*))`.
pub fn size_bounds(m1: &Matroid, m2: &Matroid, k: usize) -> (usize, usize) {
    ((2 * k).saturating_sub(m1.rank() + m2.rank()), 2 * k + m1.corank() + m2.corank())
}

/// Construct every admissible `(S1', S2')` at rank `k` and record the ground-set sizes,
/// each with the first selection (in mask order) producing it.
pub fn size_sweep(m1: &Matroid, m2: &Matroid, k: usize) -> Result<BTreeMap<usize, (ElementSet, ElementSet)>> {
    let mut out = BTreeMap::new();
    for s1p in m1.ground().subsets() {
        for s2p in m2.ground().subsets() {
            let Ok(p) = derive_params(m1, s1p, m2, s2p, k, Mode::Labelled) else {
                continue;
            };
            let m = construct_intertwine(&p)?;
            out.entry(m.ground_size()).or_insert((s1p, s2p));
        }
    }
    Ok(out)
}

/// Outcome of restricting the construction to `B1 ∪ B2 ∪ T1 ∪ T2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniformRestriction {
    pub kept: ElementSet,
    pub rank: usize,
    pub size: usize,
    /// `2k - |S1'| - |S2'|`.
    pub expected_size: usize,
    pub is_uniform: bool,
}

impl UniformRestriction {
    pub fn holds(&self, k: usize) -> bool {
        self.is_uniform && self.rank == k && self.size == self.expected_size
    }
}

fn greedy_basis(m: &Matroid) -> ElementSet {
    m.ground()
        .iter()
        .fold(ElementSet::EMPTY, |b, e| if m.is_independent(b.with(e)) { b.with(e) } else { b })
}

pub fn uniform_restriction_check(m: &Matroid, p: &IntertwineParams) -> Result<UniformRestriction> {
    let b1 = greedy_basis(&p.m1);
    let b2 = p.shift2(greedy_basis(&p.m2));
    let kept = b1.union(b2).union(p.t1_set()).union(p.t2_set());
    let r = restrict(m, kept)?;
    Ok(UniformRestriction {
        kept,
        rank: r.rank(),
        size: r.ground_size(),
        expected_size: 2 * p.k - p.s1_prime.len() - p.s2_prime.len(),
        is_uniform: r.is_uniform(),
    })
}
