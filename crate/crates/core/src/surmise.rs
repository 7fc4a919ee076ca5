use std::collections::{BTreeMap, HashSet};

use crate::endpoints::EndpointScanner;
use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::set::StateSet;

/// The surmise function of a base: for each element `x` of `∪B`, the atoms
/// at `x`, i.e. the minimal sets of `span(B)` containing `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurmiseFunction {
    atoms_at: BTreeMap<u32, Vec<StateSet>>,
}

impl SurmiseFunction {
    /// Atoms at `x`, in canonical order. Empty if `x ∉ ∪B`.
    pub fn atoms_at(&self, x: u32) -> &[StateSet] {
        self.atoms_at.get(&x).map_or(&[], Vec::as_slice)
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> + '_ {
        self.atoms_at.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &[StateSet])> + '_ {
        self.atoms_at.iter().map(|(&x, v)| (x, v.as_slice()))
    }
}

/// Computes the surmise function of a base.
///
/// `X ∈ σ(x)` exactly when `x` is an endpoint of `X` in `B`. Fails with a
/// domain error if `B` is not a base (some nonempty set has no endpoint).
pub fn surmise(b: &SetFamily) -> Result<SurmiseFunction> {
    let sorted = b.sorted();
    let mut scanner = EndpointScanner::new(b.ground().len());
    let mut atoms_at: BTreeMap<u32, Vec<StateSet>> = BTreeMap::new();
    for i in 0..sorted.len() {
        let x = sorted.get(i);
        if x.is_empty() {
            continue;
        }
        let ends = scanner.endpoints(&sorted, i);
        if ends.is_empty() {
            return Err(Error::Domain(format!(
                "not a base: {{{}}} is a union of other sets",
                b.display_set(x)
            )));
        }
        for e in ends {
            atoms_at.entry(e).or_default().push(x.clone());
        }
    }
    Ok(SurmiseFunction { atoms_at })
}

/// Whether no two distinct elements of `∪F` belong to exactly the same sets.
pub fn is_discriminative(f: &SetFamily) -> bool {
    let mut signatures: Vec<StateSet> = vec![StateSet::new(); f.ground().len()];
    for (i, members) in f.member_lists().enumerate() {
        for &e in members {
            signatures[e as usize].insert(i as u32);
        }
    }
    let support = f.support();
    let mut seen = HashSet::new();
    support
        .iter()
        .all(|e| seen.insert(std::mem::take(&mut signatures[e as usize])))
}
