//! Deciding whether `M` is an intertwine of `M1` and `M2`.
//!
//! Having a given minor is inherited by every matroid that contains the
//! smaller one, so if some proper minor had both, a single-element deletion or
//! contraction above it would too. Only the `2|E|` single-element minors are
//! examined.

use std::time::Instant;

use rayon::prelude::*;

use super::minor::{find_minor, has_minor, MinorStats, MinorWitness};
use super::report::VerificationReport;
use crate::constructions::{contract, delete, minor, minor_by_recompute};
use crate::iso::is_isomorphic;
use crate::element_set::ElementSet;
use crate::error::{MatroidError, Result};
use crate::matroid::Matroid;

fn describe(host: &Matroid, w: &MinorWitness) -> String {
    format!(
        "delete {{{}}} contract {{{}}}",
        w.deleted_labels(host).join(","),
        w.contracted_labels(host).join(",")
    )
}

pub fn verify_intertwine(m: &Matroid, m1: &Matroid, m2: &Matroid, labelled: bool) -> Result<VerificationReport> {
    let start = Instant::now();
    if labelled {
        for (name, n) in [("M1", m1), ("M2", m2)] {
            if m.set_of(n.labels()).is_err() {
                return Err(MatroidError::Params(format!("labels of {name} are not all labels of M")));
            }
        }
    }
    let stats = MinorStats::default();
    let mut report = VerificationReport::default();
    let mut both = true;
    for (name, n) in [("M1", m1), ("M2", m2)] {
        let w = find_minor(m, n, labelled, &stats)?;
        let evidence = match &w {
            Some(w) => describe(m, w),
            None => format!("no minor among the normalised deletion/contraction pairs of the {} elements", m.ground_size()),
        };
        both &= w.is_some();
        report.push(format!("has {name}-minor"), w.is_some(), evidence, w);
    }

    let mut minimal = true;
    if both {
        let ops: Vec<(usize, bool)> = (0..m.ground_size()).flat_map(|e| [(e, false), (e, true)]).collect();
        let results: Vec<Option<(MinorWitness, MinorWitness)>> = ops
            .par_iter()
            .map(|&(e, con)| -> Result<_> {
                let small = if con { contract(m, e)? } else { delete(m, e)? };
                let Some(a) = find_minor(&small, m1, labelled, &stats)? else {
                    return Ok(None);
                };
                Ok(find_minor(&small, m2, labelled, &stats)?.map(|b| (a, b)))
            })
            .collect::<Result<_>>()?;
        let first = ops.iter().zip(&results).find(|(_, r)| r.is_some());
        match first {
            None => report.push(
                "no single-element minor has both",
                true,
                format!("all {} deletions and contractions checked", ops.len()),
                None,
            ),
            Some((&(e, con), r)) => {
                minimal = false;
                let (a, _) = r.as_ref().expect("found");
                let op = if con { "contraction" } else { "deletion" };
                report.push(
                    "no single-element minor has both",
                    false,
                    format!("{op} of {} has both; M1 via {}", m.label(e), describe(m, a)),
                    Some(a.clone()),
                );
            }
        }
    }
    report.verdict = both && minimal;
    for (name, v) in stats.snapshot() {
        report.add_counter(name, v);
    }
    report.elapsed = start.elapsed();
    Ok(report)
}

/// Reference check over every proper minor, for small matroids.
///
/// Each state assigns every element keep, delete or contract. A state has a
/// target minor if it is isomorphic to the target or some state removing one
/// more element has one; states are visited from most removed to least.
/// Minors are rebuilt by a full rank scan and no pruning is applied.
pub fn verify_intertwine_exhaustive(m: &Matroid, m1: &Matroid, m2: &Matroid) -> Result<bool> {
    let n = m.ground_size();
    if n > 8 {
        return Err(MatroidError::SearchLimit("reference intertwine check is limited to 8 elements".into()));
    }
    let pow: Vec<usize> = (0..=n).map(|i| 3usize.pow(i as u32)).collect();
    let states = pow[n];
    let mut has = [vec![false; states], vec![false; states]];
    for code in (0..states).rev() {
        let (mut del, mut con) = (ElementSet::EMPTY, ElementSet::EMPTY);
        for (e, p) in pow.iter().take(n).enumerate() {
            match code / p % 3 {
                1 => del = del.with(e),
                2 => con = con.with(e),
                _ => {}
            }
        }
        let left = n - del.len() - con.len();
        let mut here: Option<Matroid> = None;
        for (t, target) in [m1, m2].into_iter().enumerate() {
            let inherited = (0..n)
                .filter(|&e| (code / pow[e]).is_multiple_of(3))
                .any(|e| has[t][code + pow[e]] || has[t][code + 2 * pow[e]]);
            let direct = left == target.ground_size() && {
                if here.is_none() {
                    here = Some(minor_by_recompute(m, del, con)?);
                }
                is_isomorphic(here.as_ref().expect("built"), target).is_some()
            };
            has[t][code] = inherited || direct;
        }
    }
    let proper_with_both = (1..states).any(|c| has[0][c] && has[1][c]);
    Ok(has[0][0] && has[1][0] && !proper_with_both)
}

/// `M \ X / Y` equals `target` exactly, labels included.
pub fn labelled_witness_holds(m: &Matroid, target: &Matroid, deleted: ElementSet, contracted: ElementSet) -> Result<bool> {
    Ok(minor(m, deleted, contracted)?.labelled_eq(target))
}

/// Unlabelled convenience used by the CLI and tests.
pub fn has_both(m: &Matroid, m1: &Matroid, m2: &Matroid, labelled: bool) -> Result<bool> {
    Ok(has_minor(m, m1, labelled)?.is_some() && has_minor(m, m2, labelled)?.is_some())
}
