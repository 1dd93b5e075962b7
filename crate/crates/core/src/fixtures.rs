//! Named matroid families used by tests, benches and the `catalog` command.

use std::fmt;
use std::str::FromStr;

use crate::constructions::direct_sum;
use crate::element_set::ElementSet;
use crate::error::{MatroidError, Result};
use crate::matroid::{default_labels, Matroid, RankedFlat};

/// `U_{k,n}` on labels `e0..`.
pub fn uniform(k: usize, n: usize) -> Matroid {
    assert!(k <= n, "U_{{{k},{n}}} needs k <= n");
    let flats = if k == 0 {
        vec![RankedFlat::new(ElementSet::full(n), 0)]
    } else if k == n {
        vec![RankedFlat::new(ElementSet::EMPTY, 0)]
    } else {
        vec![RankedFlat::new(ElementSet::EMPTY, 0), RankedFlat::new(ElementSet::full(n), k)]
    };
    Matroid::from_parts(default_labels("e", n), flats)
}

/// The cycle matroid of `K4`; elements are the edges `ab, ac, ad, bc, bd, cd`.
pub fn mk4() -> Matroid {
    let labels = ["ab", "ac", "ad", "bc", "bd", "cd"].map(String::from).to_vec();
    let tri = [[0, 1, 3], [0, 2, 4], [1, 2, 5], [3, 4, 5]];
    Matroid::from_parts(labels, with_bounds(6, 3, tri.iter().map(|t| (t.as_slice(), 2))))
}

/// The rank-3 whirl: three three-point lines in a triangle.
pub fn whirl3() -> Matroid {
    let tri = [[0, 1, 3], [1, 2, 4], [0, 2, 5]];
    Matroid::from_parts(default_labels("e", 6), with_bounds(6, 3, tri.iter().map(|t| (t.as_slice(), 2))))
}

fn with_bounds<'a>(n: usize, r: usize, mids: impl Iterator<Item = (&'a [usize], usize)>) -> Vec<RankedFlat> {
    let mut v = vec![RankedFlat::new(ElementSet::EMPTY, 0), RankedFlat::new(ElementSet::full(n), r)];
    v.extend(mids.map(|(s, r)| RankedFlat::new(ElementSet::from_indices(s.iter().copied()), r)));
    v
}

/// Direct sum of `m` copies of `U_{1,2}` on labels `a0..a{2m-1}`.
pub fn pair_sum(m: usize) -> Matroid {
    let mut flats = Vec::new();
    for choice in ElementSet::full(m).subsets() {
        let els: ElementSet = choice.iter().flat_map(|i| [2 * i, 2 * i + 1]).collect();
        flats.push(RankedFlat::new(els, choice.len()));
    }
    Matroid::from_parts(default_labels("a", 2 * m), flats)
}

fn spike_labels(n: usize) -> Vec<String> {
    (0..n).flat_map(|i| [format!("x{i}"), format!("y{i}")]).collect()
}

fn leg_union(legs: ElementSet) -> ElementSet {
    legs.iter().flat_map(|i| [2 * i, 2 * i + 1]).collect()
}

/// The rank-`n` free (tipless) spike on legs `{x_i, y_i}`.
///
/// Proper cyclic flats are the unions of `t` legs with `2 <= t <= n - 2`, of rank `t + 1`.
pub fn free_spike(n: usize) -> Result<Matroid> {
    if n < 4 {
        return Err(MatroidError::OutOfRange(format!("spikes need rank at least 4, got {n}")));
    }
    let mut flats = vec![
        RankedFlat::new(ElementSet::EMPTY, 0),
        RankedFlat::new(ElementSet::full(2 * n), n),
    ];
    for legs in ElementSet::full(n).subsets() {
        let t = legs.len();
        if (2..=n - 2).contains(&t) {
            flats.push(RankedFlat::new(leg_union(legs), t + 1));
        }
    }
    Ok(Matroid::from_parts(spike_labels(n), flats))
}

/// Which element of a leg a transversal uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    X,
    Y,
}

/// A free spike with chosen transversals installed as rank-`(n-1)` cyclic flats.
pub fn spike_ch(n: usize, transversals: &[Vec<Side>]) -> Result<Matroid> {
    let base = free_spike(n)?;
    let mut flats = base.flats().to_vec();
    for t in transversals {
        if t.len() != n {
            return Err(MatroidError::OutOfRange(format!(
                "transversal must pick one element from each of the {n} legs"
            )));
        }
        let set: ElementSet = t
            .iter()
            .enumerate()
            .map(|(i, s)| 2 * i + usize::from(*s == Side::Y))
            .collect();
        flats.push(RankedFlat::new(set, n - 1));
    }
    Matroid::new(base.labels().to_vec(), flats)
}

/// `U_{1,2} ⊕ U_{1,2}` on `a0..a3` and `U_{1,2} ⊕ U_{2,3}` on `b0..b4`.
pub fn u_pair() -> (Matroid, Matroid) {
    let m1 = pair_sum(2);
    let m2 = direct_sum(&uniform(1, 2).with_label_prefix("p"), &uniform(2, 3).with_label_prefix("q"))
        .expect("disjoint labels")
        .with_label_prefix("b");
    (m1, m2)
}

/// A parsed fixture name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FixtureId {
    Uniform { k: usize, n: usize },
    Mk4,
    Whirl3,
    PairSum(usize),
    FreeSpike(usize),
    SpikeCh { n: usize, transversals: Vec<Vec<Side>> },
    /// One side of [`u_pair`], 1 or 2.
    UPair(usize),
}

impl FixtureId {
    pub fn build(&self) -> Result<Matroid> {
        match self {
            FixtureId::Uniform { k, n } => {
                if k > n || *n > 64 {
                    return Err(MatroidError::OutOfRange(format!("uniform({k},{n})")));
                }
                Ok(uniform(*k, *n))
            }
            FixtureId::Mk4 => Ok(mk4()),
            FixtureId::Whirl3 => Ok(whirl3()),
            FixtureId::PairSum(m) => {
                if *m > 32 {
                    return Err(MatroidError::OutOfRange(format!("pairsum({m})")));
                }
                Ok(pair_sum(*m))
            }
            FixtureId::FreeSpike(n) => free_spike(*n),
            FixtureId::SpikeCh { n, transversals } => spike_ch(*n, transversals),
            FixtureId::UPair(1) => Ok(u_pair().0),
            FixtureId::UPair(2) => Ok(u_pair().1),
            FixtureId::UPair(i) => Err(MatroidError::OutOfRange(format!("upair({i})"))),
        }
    }
}

impl fmt::Display for FixtureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FixtureId::Uniform { k, n } => write!(f, "uniform({k},{n})"),
            FixtureId::Mk4 => write!(f, "mk4"),
            FixtureId::Whirl3 => write!(f, "whirl3"),
            FixtureId::PairSum(m) => write!(f, "pairsum({m})"),
            FixtureId::FreeSpike(n) => write!(f, "free_spike({n})"),
            FixtureId::SpikeCh { n, transversals } => {
                let ts: Vec<String> = transversals
                    .iter()
                    .map(|t| t.iter().map(|s| if *s == Side::X { 'x' } else { 'y' }).collect())
                    .collect();
                write!(f, "spike_ch({n},{})", ts.join(";"))
            }
            FixtureId::UPair(i) => write!(f, "upair({i})"),
        }
    }
}

impl FromStr for FixtureId {
    type Err = MatroidError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || MatroidError::Parse { line: 0, msg: format!("unknown fixture `{s}`") };
        let s = s.trim();
        let (head, args) = match s.find('(') {
            Some(i) if s.ends_with(')') => (&s[..i], Some(&s[i + 1..s.len() - 1])),
            Some(_) => return Err(bad()),
            None => (s, None),
        };
        let nums = |a: &str| -> Result<Vec<usize>> {
            a.split(',').map(|x| x.trim().parse::<usize>().map_err(|_| bad())).collect()
        };
        match (head, args) {
            ("mk4", None) => Ok(FixtureId::Mk4),
            ("whirl3", None) => Ok(FixtureId::Whirl3),
            ("uniform", Some(a)) => match nums(a)?.as_slice() {
                [k, n] => Ok(FixtureId::Uniform { k: *k, n: *n }),
                _ => Err(bad()),
            },
            ("pairsum", Some(a)) => match nums(a)?.as_slice() {
                [m] => Ok(FixtureId::PairSum(*m)),
                _ => Err(bad()),
            },
            ("upair", Some(a)) => match nums(a)?.as_slice() {
                [i] => Ok(FixtureId::UPair(*i)),
                _ => Err(bad()),
            },
            ("free_spike", Some(a)) => match nums(a)?.as_slice() {
                [n] => Ok(FixtureId::FreeSpike(*n)),
                _ => Err(bad()),
            },
            ("spike_ch", Some(a)) => {
                let (n, rest) = a.split_once(',').unwrap_or((a, ""));
                let n: usize = n.trim().parse().map_err(|_| bad())?;
                let transversals = rest
                    .split(';')
                    .map(str::trim)
                    .filter(|t| !t.is_empty())
                    .map(|t| {
                        t.chars()
                            .map(|c| match c {
                                'x' => Ok(Side::X),
                                'y' => Ok(Side::Y),
                                _ => Err(bad()),
                            })
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(FixtureId::SpikeCh { n, transversals })
            }
            _ => Err(bad()),
        }
    }
}

/// The default catalog: uniform matroids, `M(K4)`, the whirl, pair sums and rank-4/5 spikes.
pub fn catalog_ids() -> Vec<FixtureId> {
    let ids = [
        "uniform(1,2)",
        "uniform(2,3)",
        "uniform(2,4)",
        "uniform(3,4)",
        "uniform(2,5)",
        "uniform(3,6)",
        "mk4",
        "whirl3",
        "pairsum(2)",
        "pairsum(3)",
        "free_spike(4)",
        "free_spike(5)",
        "spike_ch(4,xxxx)",
        "spike_ch(4,xxxx;yyxx)",
    ];
    ids.iter().map(|s| s.parse().expect("catalog ids parse")).collect()
}

pub fn catalog() -> Vec<(String, Matroid)> {
    catalog_ids()
        .into_iter()
        .map(|id| (id.to_string(), id.build().expect("catalog fixtures are valid")))
        .collect()
}
