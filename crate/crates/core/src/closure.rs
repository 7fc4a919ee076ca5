//! Union closure: span, closure test, atoms and base extraction.

use std::collections::HashSet;

use crate::endpoints::EndpointScanner;
use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::set::StateSet;

/// Default cap on the number of sets [`span`] may produce.
pub const DEFAULT_SPAN_LIMIT: usize = 1_000_000;

/// The span of `g`: every union of a nonempty subfamily of `g`.
///
/// `∅` is in the span only if it is in `g`. The result is sorted in
/// canonical order. Fails with [`Error::Capacity`] past
/// [`DEFAULT_SPAN_LIMIT`] sets.
pub fn span(g: &SetFamily) -> Result<SetFamily> {
    span_with_limit(g, DEFAULT_SPAN_LIMIT)
}

pub fn span_with_limit(g: &SetFamily, limit: usize) -> Result<SetFamily> {
    // Every union of sets of g is a union of base sets of g, so closing
    // under union with the (usually much smaller) base is enough.
    let generators = base_sets(g);
    let mut seen: HashSet<StateSet> = HashSet::with_capacity(g.len());
    let mut frontier: Vec<StateSet> = Vec::new();
    for s in g.iter() {
        if seen.insert(s.clone()) {
            frontier.push(s.clone());
        }
    }
    if seen.len() > limit {
        return Err(Error::capacity("span size", limit));
    }
    while let Some(current) = frontier.pop() {
        for gen in &generators {
            if gen.is_subset(&current) {
                continue;
            }
            let u = current.union(gen);
            if !seen.contains(&u) {
                if seen.len() >= limit {
                    return Err(Error::capacity("span size", limit));
                }
                seen.insert(u.clone());
                frontier.push(u);
            }
        }
    }
    let mut sets: Vec<StateSet> = seen.into_iter().collect();
    sets.sort();
    g.derive(sets)
}

/// Whether `X ∪ Y ∈ F` for all `X, Y ∈ F`.
///
/// Every member of `F` is a union of atoms of `F`, so it suffices to test
/// unions of members with atoms.
pub fn is_union_closed(f: &SetFamily) -> bool {
    let atoms = base_sets(f);
    f.iter()
        .all(|x| atoms.iter().all(|a| a.is_subset(x) || f.contains(&x.union(a))))
}

/// The atoms of a ∪-closed family, which form its base.
///
/// A set is an atom when it is empty or is not the union of the members of
/// `f` strictly contained in it.
pub fn atoms(f: &SetFamily) -> Result<SetFamily> {
    if !is_union_closed(f) {
        return Err(Error::Domain(
            "atoms are only defined for ∪-closed families; span the family first".into(),
        ));
    }
    Ok(base_of(f))
}

/// The base of `span(g)`, computed from `g` directly in `O(nm)`: the members
/// of `g` that are empty or have at least one endpoint in `g`.
pub fn base_of(g: &SetFamily) -> SetFamily {
    let mut sets = base_sets(g);
    sets.sort();
    g.derive(sets).expect("a subfamily of a valid family is valid")
}

fn base_sets(g: &SetFamily) -> Vec<StateSet> {
    let mut scanner = EndpointScanner::new(g.ground().len());
    (0..g.len())
        .filter(|&i| g.get(i).is_empty() || !scanner.endpoints(g, i).is_empty())
        .map(|i| g.get(i).clone())
        .collect()
}
