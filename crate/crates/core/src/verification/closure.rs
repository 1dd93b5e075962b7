//! Matroids reachable by free extensions, free coextensions and minors under a size cap.
//!
//! The search is a breadth-first fixed point over canonical forms. Anything it
//! reaches is reachable; it may miss matroids whose only derivations pass
//! through intermediates larger than the cap.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::constructions::{contract, delete, free_coextension, free_extension};
use crate::error::{MatroidError, Result};
use crate::iso::canonical_form;
use crate::matroid::Matroid;

pub const CLOSURE_CAP_LIMIT: usize = 12;

#[derive(Clone, Debug)]
pub struct ObtainabilityClosure {
    pub cap: usize,
    members: HashSet<Matroid>,
}

impl ObtainabilityClosure {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Whether some member is isomorphic to `m`.
    pub fn contains(&self, m: &Matroid) -> Result<bool> {
        Ok(m.ground_size() <= self.cap && self.members.contains(&canonical_form(m)?.matroid))
    }

    /// Members as canonical presentations, sorted by size then flats.
    pub fn members(&self) -> Vec<&Matroid> {
        let mut v: Vec<&Matroid> = self.members.iter().collect();
        v.sort_by(|a, b| (a.ground_size(), a.flats()).cmp(&(b.ground_size(), b.flats())));
        v
    }
}

fn successors(m: &Matroid, cap: usize) -> Result<Vec<Matroid>> {
    let n = m.ground_size();
    let mut out = Vec::with_capacity(2 * n + 2);
    if n < cap {
        let fresh = [format!("e{n}")];
        out.push(free_extension(m, &fresh)?);
        out.push(free_coextension(m, &fresh)?);
    }
    for e in 0..n {
        out.push(delete(m, e)?);
        out.push(contract(m, e)?);
    }
    out.into_iter().map(|x| canonical_form(&x).map(|c| c.matroid)).collect()
}

pub fn obtainability_closure(seed: &Matroid, cap: usize) -> Result<ObtainabilityClosure> {
    if cap > CLOSURE_CAP_LIMIT {
        return Err(MatroidError::OutOfRange(format!("closure cap is at most {CLOSURE_CAP_LIMIT}, got {cap}")));
    }
    if seed.ground_size() > cap {
        return Err(MatroidError::OutOfRange(format!(
            "seed has {} elements, more than the cap {cap}",
            seed.ground_size()
        )));
    }
    let start = canonical_form(seed)?.matroid;
    let mut members = HashSet::from([start.clone()]);
    let mut frontier = vec![start];
    while !frontier.is_empty() {
        let next: Vec<Vec<Matroid>> = frontier.par_iter().map(|m| successors(m, cap)).collect::<Result<_>>()?;
        frontier = Vec::new();
        for m in next.into_iter().flatten() {
            if !members.contains(&m) {
                members.insert(m.clone());
                frontier.push(m);
            }
        }
    }
    Ok(ObtainabilityClosure { cap, members })
}
