#![allow(dead_code)]

use intertwine_core::constructions::{contract, delete, free_coextension, free_extension};
use intertwine_core::fixtures;
use intertwine_core::Matroid;
use proptest::prelude::*;

/// Catalog fixtures with at most `n` elements.
pub fn small_fixtures(n: usize) -> Vec<(String, Matroid)> {
    fixtures::catalog().into_iter().filter(|(_, m)| m.ground_size() <= n).collect()
}

#[derive(Clone, Copy, Debug)]
pub enum Step {
    Extend,
    Coextend,
    Delete(usize),
    Contract(usize),
}

fn step() -> impl Strategy<Value = Step> {
    prop_oneof![
        Just(Step::Extend),
        Just(Step::Coextend),
        (0usize..16).prop_map(Step::Delete),
        (0usize..16).prop_map(Step::Contract),
    ]
}

/// Apply steps, skipping any that would leave `1..=cap` elements.
pub fn grow(seed: &Matroid, steps: &[Step], cap: usize) -> Matroid {
    let mut m = seed.clone();
    for (i, s) in steps.iter().enumerate() {
        let n = m.ground_size();
        let next = match *s {
            Step::Extend | Step::Coextend if n >= cap => continue,
            Step::Extend => free_extension(&m, &[format!("g{i}")]),
            Step::Coextend => free_coextension(&m, &[format!("g{i}")]),
            Step::Delete(_) | Step::Contract(_) if n <= 1 => continue,
            Step::Delete(e) => delete(&m, e % n),
            Step::Contract(e) => contract(&m, e % n),
        };
        m = next.expect("steps stay valid");
    }
    m
}

/// Matroids derived from small fixtures by a few random steps.
pub fn arb_matroid(max_seed: usize, cap: usize) -> impl Strategy<Value = Matroid> {
    let seeds = small_fixtures(max_seed);
    let count = seeds.len();
    (0..count, prop::collection::vec(step(), 0..4)).prop_map(move |(i, steps)| grow(&seeds[i].1, &steps, cap))
}
