//! Brute-force reference implementations.
//!
//! Everything here works straight from the definitions (breadth-first
//! search over the distance-one graph, explicit spans, subfamily
//! enumeration) and shares no code with the polynomial algorithms. These are
//! meant to be obviously correct, not fast; each has an explicit size limit.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::ground::GroundSet;
use crate::path::TightPath;
use crate::set::StateSet;

/// Default cap on the number of sets the oracles will examine.
pub const DEFAULT_ORACLE_LIMIT: usize = 4096;

/// Largest ground set [`enumerate_families`] accepts.
pub const EXHAUSTIVE_GROUND_LIMIT: usize = 4;

/// The sets of a family as vertices, joined when at distance one.
#[derive(Debug, Clone)]
pub struct AdjacencyGraph {
    vertices: Vec<StateSet>,
    adjacency: Vec<Vec<usize>>,
}

impl AdjacencyGraph {
    pub fn new(f: &SetFamily) -> Self {
        let vertices = f.sets().to_vec();
        let adjacency = vertices
            .iter()
            .map(|v| {
                (0..f.ground().len() as u32)
                    .filter_map(|e| {
                        let mut w = v.clone();
                        if !w.remove(e) {
                            w.insert(e);
                        }
                        f.position(&w)
                    })
                    .collect()
            })
            .collect();
        AdjacencyGraph {
            vertices,
            adjacency,
        }
    }

    pub fn vertices(&self) -> &[StateSet] {
        &self.vertices
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    /// Hop counts from `source`; `None` for unreachable vertices.
    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertices.len()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            let d = dist[v].expect("queued vertices have a distance");
            for &w in &self.adjacency[v] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }
}

/// Closure of `g` under pairwise union, iterated to a fixpoint over all
/// members (not just generators).
pub fn oracle_span(g: &SetFamily, limit: usize) -> Result<SetFamily> {
    let mut sets: Vec<StateSet> = g.sets().to_vec();
    let mut seen: HashSet<StateSet> = sets.iter().cloned().collect();
    let mut changed = true;
    while changed {
        changed = false;
        let snapshot = sets.clone();
        for a in &snapshot {
            for b in &snapshot {
                let u = a.union(b);
                if seen.insert(u.clone()) {
                    if seen.len() > limit {
                        return Err(Error::capacity("oracle span size", limit));
                    }
                    sets.push(u);
                    changed = true;
                }
            }
        }
    }
    sets.sort();
    g.derive(sets)
}

fn check_limit(f: &SetFamily, limit: usize) -> Result<()> {
    if f.len() > limit {
        Err(Error::capacity("oracle family size", limit))
    } else {
        Ok(())
    }
}

/// Whether every two distinct sets of `f` are joined by a tight path.
///
/// A tight path between `X` and `Y` exists exactly when their hop distance
/// in the [`AdjacencyGraph`] equals `|X △ Y|`.
pub fn oracle_is_well_graded(f: &SetFamily) -> Result<bool> {
    oracle_is_well_graded_with_limit(f, DEFAULT_ORACLE_LIMIT)
}

pub fn oracle_is_well_graded_with_limit(f: &SetFamily, limit: usize) -> Result<bool> {
    check_limit(f, limit)?;
    let graph = AdjacencyGraph::new(f);
    for s in 0..f.len() {
        let dist = graph.distances_from(s);
        for t in 0..f.len() {
            if dist[t] != Some(f.get(s).distance(f.get(t))) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A tight path from `p` to `q` inside `f`, if one exists.
///
/// Breadth-first search that only moves to sets one step closer to `q`.
pub fn oracle_tight_path(f: &SetFamily, p: &StateSet, q: &StateSet) -> Result<Option<TightPath>> {
    for s in [p, q] {
        if !f.contains(s) {
            return Err(Error::Usage(format!(
                "{{{}}} is not in the family",
                f.display_set(s)
            )));
        }
    }
    let mut parent: HashMap<StateSet, StateSet> = HashMap::new();
    let mut layer = vec![p.clone()];
    let mut remaining = p.distance(q);
    while remaining > 0 {
        let mut next = Vec::new();
        for cur in &layer {
            let delta = cur.union(q).difference(&cur.intersection(q));
            for e in delta.iter() {
                let mut w = cur.clone();
                if !w.remove(e) {
                    w.insert(e);
                }
                if f.contains(&w) && !parent.contains_key(&w) {
                    parent.insert(w.clone(), cur.clone());
                    next.push(w);
                }
            }
        }
        if next.is_empty() {
            return Ok(None);
        }
        layer = next;
        remaining -= 1;
    }
    let mut steps = vec![q.clone()];
    while steps.last() != Some(p) {
        let prev = parent[steps.last().expect("nonempty")].clone();
        steps.push(prev);
    }
    steps.reverse();
    Ok(Some(TightPath::new(steps).expect("search only takes closer steps")))
}

/// Tight-path criterion on base pairs: for all `K, L ∈ B`, a tight path from
/// `K` to `K ∪ L` in `span(B)`.
pub fn oracle_wg_via_base_paths(b: &SetFamily) -> Result<bool> {
    let f = oracle_span(b, DEFAULT_ORACLE_LIMIT)?;
    for k in b.iter() {
        for l in b.iter() {
            if k != l && oracle_tight_path(&f, k, &k.union(l))?.is_none() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// For `∅ ∈ B`: a tight path from `∅` to every `K ∈ B` in `span(B)`.
pub fn oracle_empty_set_criterion(b: &SetFamily) -> Result<bool> {
    if !b.has_empty() {
        return Err(Error::Domain("the empty-set criterion needs ∅ ∈ B".into()));
    }
    let f = oracle_span(b, DEFAULT_ORACLE_LIMIT)?;
    let empty = StateSet::new();
    for k in b.iter() {
        if oracle_tight_path(&f, &empty, k)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether no set of `b` is a union of other sets of `b`, i.e.
/// `X ∉ span(B ∖ {X})` for every `X`.
pub fn oracle_is_base(b: &SetFamily) -> Result<bool> {
    for (i, x) in b.iter().enumerate() {
        let rest: Vec<StateSet> = b
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, s)| s.clone())
            .collect();
        if rest.is_empty() {
            continue;
        }
        let others = oracle_span(&b.derive(rest)?, DEFAULT_ORACLE_LIMIT)?;
        if others.contains(x) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Minimal sets of `f` containing each element of `∪f`.
pub fn oracle_surmise(f: &SetFamily) -> BTreeMap<u32, Vec<StateSet>> {
    let mut out = BTreeMap::new();
    for x in f.support().iter() {
        let containing: Vec<&StateSet> = f.iter().filter(|s| s.contains(x)).collect();
        let mut minimal: Vec<StateSet> = containing
            .iter()
            .filter(|s| !containing.iter().any(|t| t.is_proper_subset(s)))
            .map(|s| (*s).clone())
            .collect();
        minimal.sort();
        out.insert(x, minimal);
    }
    out
}

/// Atoms of a ∪-closed family by definition: `∅` if present, plus every
/// minimal set containing some element.
pub fn oracle_atoms(f: &SetFamily) -> Vec<StateSet> {
    let mut atoms: Vec<StateSet> = oracle_surmise(f).into_values().flatten().collect();
    if f.has_empty() {
        atoms.push(StateSet::new());
    }
    atoms.sort();
    atoms.dedup();
    atoms
}

/// Atom test by subfamily enumeration: a nonempty `X ∈ F` is an atom iff
/// every subfamily of `F` with union `X` contains `X`.
///
/// Only subfamilies of sets strictly inside `X` need enumerating; fails when
/// there are more than `max_candidates` of those.
pub fn oracle_is_atom_by_subfamilies(
    f: &SetFamily,
    x: &StateSet,
    max_candidates: usize,
) -> Result<bool> {
    if x.is_empty() {
        return Ok(true);
    }
    let inside: Vec<&StateSet> = f.iter().filter(|s| s.is_proper_subset(x)).collect();
    if inside.len() > max_candidates.min(30) {
        return Err(Error::capacity("subfamily enumeration", max_candidates.min(30)));
    }
    for mask in 1u64..(1u64 << inside.len()) {
        let mut u = StateSet::new();
        for (i, s) in inside.iter().enumerate() {
            if mask >> i & 1 == 1 {
                u.union_with(s);
            }
        }
        if &u == x {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every nonempty duplicate-free family over a declared ground set of
/// `ground_size` elements that satisfies `predicate`.
///
/// Families are produced in increasing order of their membership mask over
/// the power set, so the stream is deterministic.
pub fn enumerate_families<P>(
    ground_size: usize,
    mut predicate: P,
) -> Result<impl Iterator<Item = SetFamily>>
where
    P: FnMut(&SetFamily) -> bool,
{
    if ground_size > EXHAUSTIVE_GROUND_LIMIT {
        return Err(Error::capacity(
            "exhaustive enumeration ground size",
            EXHAUSTIVE_GROUND_LIMIT,
        ));
    }
    let ground = Arc::new(GroundSet::alphabetic(ground_size));
    let subsets = 1u64 << ground_size;
    let families = 1u64 << subsets;
    Ok((1..families).filter_map(move |mask| {
        let sets = (0..subsets)
            .filter(|s| mask >> s & 1 == 1)
            .map(StateSet::from_mask)
            .collect();
        let f = SetFamily::new(ground.clone(), sets).expect("distinct masks");
        predicate(&f).then_some(f)
    }))
}
