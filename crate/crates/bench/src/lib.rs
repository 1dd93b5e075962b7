//! Workloads shared by the criterion benches.

use intertwine_core::element_set::ElementSet;
use intertwine_core::fixtures;
use intertwine_core::intertwine::{construct_intertwine, derive_params, IntertwineParams, Mode};
use intertwine_core::Matroid;

/// Sum of ranks over every subset of the ground set.
pub fn rank_scan(m: &Matroid) -> usize {
    m.ground().subsets().map(|s| m.rank_of(s)).sum()
}

/// The U-pair at `S' = ∅`, `k = 5`: the 14-element rank-5 instance.
pub fn flagship_params() -> IntertwineParams {
    let (m1, m2) = fixtures::u_pair();
    derive_params(&m1, ElementSet::EMPTY, &m2, ElementSet::EMPTY, 5, Mode::Labelled).expect("valid parameters")
}

pub fn flagship() -> (Matroid, Matroid, Matroid) {
    let p = flagship_params();
    let m = construct_intertwine(&p).expect("construction succeeds");
    (m, p.m1, p.m2)
}

/// Delete the first `d` elements and contract the next `c`.
pub fn prefix_split(d: usize, c: usize) -> (ElementSet, ElementSet) {
    (ElementSet::from_indices(0..d), ElementSet::from_indices(d..d + c))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn workloads_are_well_formed() {
        let (m, _, _) = flagship();
        assert_eq!((m.ground_size(), m.rank()), (14, 5));
        assert_eq!(rank_scan(&fixtures::uniform(1, 2)), 3);
        let (d, c) = prefix_split(4, 5);
        assert!(d.intersection(c).is_empty());
    }
}
