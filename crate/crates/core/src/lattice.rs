use crate::element_set::ElementSet;
use crate::error::{MatroidError, Result};
use crate::matroid::Matroid;

/// Join and meet tables over the cyclic flats of a matroid, indexed like [`Matroid::flats`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicFlatLattice {
    pub join: Vec<Vec<usize>>,
    pub meet: Vec<Vec<usize>>,
}

impl CyclicFlatLattice {
    pub fn join_of(&self, m: &Matroid, a: ElementSet, b: ElementSet) -> Option<ElementSet> {
        let i = position(m, a)?;
        let j = position(m, b)?;
        Some(m.flats()[self.join[i][j]].elements)
    }

    pub fn meet_of(&self, m: &Matroid, a: ElementSet, b: ElementSet) -> Option<ElementSet> {
        let i = position(m, a)?;
        let j = position(m, b)?;
        Some(m.flats()[self.meet[i][j]].elements)
    }
}

fn position(m: &Matroid, s: ElementSet) -> Option<usize> {
    m.flats().iter().position(|f| f.elements == s)
}

/// Join is `cl(F ∪ G)`, meet is the union of circuits inside `F ∩ G`.
pub fn cyclic_flat_lattice(m: &Matroid) -> Result<CyclicFlatLattice> {
    let flats = m.flats();
    let k = flats.len();
    let mut join = vec![vec![0; k]; k];
    let mut meet = vec![vec![0; k]; k];
    for i in 0..k {
        for j in i..k {
            let (a, b) = (flats[i].elements, flats[j].elements);
            let jn = m.closure(a.union(b));
            let mt = m.cyclic_part(a.intersection(b));
            let ji = position(m, jn).ok_or_else(|| not_member("join", jn))?;
            let mi = position(m, mt).ok_or_else(|| not_member("meet", mt))?;
            join[i][j] = ji;
            join[j][i] = ji;
            meet[i][j] = mi;
            meet[j][i] = mi;
        }
    }
    Ok(CyclicFlatLattice { join, meet })
}

fn not_member(op: &str, s: ElementSet) -> MatroidError {
    MatroidError::OutOfRange(format!("{op} {s:?} is not a cyclic flat"))
}
