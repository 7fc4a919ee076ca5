//! Minimal well-graded extensions.
//!
//! [`minimal_wg_extension`] grows a family `B` to `B′` so that `span(B′)` is
//! well-graded and no ∪-closed well-graded family lies strictly between
//! `span(B)` and `span(B′)`. [`path_extension`] spans `B` together with the
//! sets of explicit tight paths, and [`verify_extension`] checks a claimed
//! minimal extension against brute force.

mod domination;
mod minimal;

use std::collections::BTreeMap;

pub use domination::BipartiteDominationInstance;
pub use minimal::{minimal_wg_extension, minimal_wg_extension_with, ExtensionOptions};

use crate::closure::{base_of, is_union_closed, span, span_with_limit};
use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::oracle::{oracle_tight_path, AdjacencyGraph, DEFAULT_ORACLE_LIMIT};
use crate::path::TightPath;
use crate::set::StateSet;
use crate::verify::{Reason, VerificationReport};

/// Default cap on the number of added base sets whose subsets
/// [`verify_extension`] enumerates.
pub const DEFAULT_ENUMERATION_LIMIT: usize = 12;

/// Tight paths indexed by ordered pairs `(k, l)` of positions in the input
/// family; the path for `(k, l)` runs from `B[k]` to `B[k] ∪ B[l]`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PathFamily {
    paths: BTreeMap<(usize, usize), TightPath>,
}

impl PathFamily {
    pub fn insert(&mut self, k: usize, l: usize, path: TightPath) {
        self.paths.insert((k, l), path);
    }

    pub fn get(&self, k: usize, l: usize) -> Option<&TightPath> {
        self.paths.get(&(k, l))
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), &TightPath)> + '_ {
        self.paths.iter().map(|(&key, p)| (key, p))
    }

    /// Every set on every path, in path order, duplicates removed.
    pub fn sets(&self) -> Vec<StateSet> {
        let mut seen = std::collections::HashSet::new();
        self.paths
            .values()
            .flat_map(|p| p.steps())
            .filter(|s| seen.insert((*s).clone()))
            .cloned()
            .collect()
    }
}

/// One round of the extension: sets of cardinality `cardinality` added.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionStep {
    pub cardinality: usize,
    pub added: Vec<StateSet>,
}

/// Result of [`minimal_wg_extension`].
#[derive(Debug, Clone)]
pub struct Extension {
    input: SetFamily,
    generators: SetFamily,
    added: Vec<StateSet>,
    steps: Vec<ExtensionStep>,
    paths: PathFamily,
}

impl Extension {
    pub fn input(&self) -> &SetFamily {
        &self.input
    }

    /// `B′`: the input sets in input order followed by the added sets.
    pub fn generators(&self) -> &SetFamily {
        &self.generators
    }

    pub fn added(&self) -> &[StateSet] {
        &self.added
    }

    /// Added sets grouped by round, with strictly increasing cardinality.
    pub fn steps(&self) -> &[ExtensionStep] {
        &self.steps
    }

    pub fn paths(&self) -> &PathFamily {
        &self.paths
    }

    /// The base of `span(B′)`.
    pub fn base(&self) -> SetFamily {
        base_of(&self.generators)
    }

    /// `span(B′)`, subject to the usual span limit.
    pub fn family(&self) -> Result<SetFamily> {
        span(&self.generators)
    }

    pub fn family_with_limit(&self, limit: usize) -> Result<SetFamily> {
        span_with_limit(&self.generators, limit)
    }
}

/// `span(B ∪ {sets on the paths})` for a path family covering every ordered
/// pair of distinct sets of `b`.
///
/// Fails with a validation error if a pair is missing or a path does not
/// run from `K` to `K ∪ L`.
pub fn path_extension(b: &SetFamily, paths: &PathFamily) -> Result<SetFamily> {
    path_extension_with_limit(b, paths, crate::closure::DEFAULT_SPAN_LIMIT)
}

pub fn path_extension_with_limit(b: &SetFamily, paths: &PathFamily, limit: usize) -> Result<SetFamily> {
    for (ki, k) in b.iter().enumerate() {
        for (li, l) in b.iter().enumerate() {
            if ki == li {
                continue;
            }
            let path = paths.get(ki, li).ok_or_else(|| {
                Error::Validation(format!("no path for pair ({ki}, {li})"))
            })?;
            if path.start() != k || path.end() != &k.union(l) {
                return Err(Error::Validation(format!(
                    "path for pair ({ki}, {li}) does not run from K to K ∪ L"
                )));
            }
        }
    }
    if let Some((key, _)) = paths.iter().find(|((k, l), _)| *k >= b.len() || *l >= b.len()) {
        return Err(Error::Validation(format!("path for unknown pair {key:?}")));
    }
    let mut sets = b.sets().to_vec();
    sets.extend(paths.sets());
    let generators = b.derive_dedup(sets)?;
    span_with_limit(&generators, limit)
}

/// Options for [`verify_extension_with`].
#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    /// Cap on the number of base sets of `F` outside `B` whose subsets are
    /// enumerated; beyond it verification fails with a capacity error.
    pub enumeration_limit: usize,
    /// Cap on `|F|` for the brute-force well-gradedness check.
    pub oracle_limit: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            enumeration_limit: DEFAULT_ENUMERATION_LIMIT,
            oracle_limit: DEFAULT_ORACLE_LIMIT,
        }
    }
}

/// Checks that `f` is a minimal well-graded ∪-closed extension of `b`.
///
/// Checks, in order: `f` is ∪-closed, well-graded (by brute force) and
/// contains `b`; then minimality twice. First, no atom `Z` of `f` outside
/// `b` can be dropped while keeping tight paths `K → K ∪ L` for all pairs
/// of `b`; this is exact, since a smaller extension would avoid some such
/// atom. Second, for every subset `A` of the base of `f` outside `b`,
/// `span(b ∪ A)` is either `f` or not well-graded.
pub fn verify_extension(b: &SetFamily, f: &SetFamily) -> Result<VerificationReport> {
    verify_extension_with(b, f, VerifyOptions::default())
}

pub fn verify_extension_with(
    b: &SetFamily,
    f: &SetFamily,
    options: VerifyOptions,
) -> Result<VerificationReport> {
    b.check_same_ground(f)?;
    if f.len() > options.oracle_limit {
        return Err(Error::capacity("family size for brute-force checks", options.oracle_limit));
    }
    let mut report = VerificationReport::pass();

    if !is_union_closed(f) {
        let (x, missing) = first_missing_union(f);
        report.push(x, Reason::NotUnionClosed { missing });
        return Ok(report);
    }
    if let Some((x, y)) = first_untight_pair(f) {
        report.push(x, Reason::NoTightPath { to: y });
    }
    for k in b.iter() {
        if !f.contains(k) {
            report.push(k.clone(), Reason::MissingInputSet);
        }
    }
    if !report.verdict() {
        return Ok(report);
    }

    let extra: Vec<StateSet> = base_of(f).iter().filter(|z| !b.contains(z)).cloned().collect();
    for z in &extra {
        if pairs_survive_without(b, f, z)? {
            report.push(z.clone(), Reason::NotMinimal);
        }
    }

    if extra.len() > options.enumeration_limit {
        return Err(Error::capacity(
            "base sets outside the input for subset enumeration",
            options.enumeration_limit,
        ));
    }
    for mask in 0u64..(1u64 << extra.len()) - 1 {
        let mut sets = b.sets().to_vec();
        sets.extend((0..extra.len()).filter(|&j| mask >> j & 1 == 1).map(|j| extra[j].clone()));
        let candidate = span(&b.derive_dedup(sets)?)?;
        if candidate.len() < f.len() && first_untight_pair(&candidate).is_none() {
            let avoided = extra
                .iter()
                .find(|z| !candidate.contains(z))
                .expect("a smaller span misses some base set")
                .clone();
            if !report.witnesses().iter().any(|w| w.set == avoided) {
                report.push(avoided, Reason::NotMinimal);
            }
        }
    }
    Ok(report)
}

fn first_missing_union(f: &SetFamily) -> (StateSet, StateSet) {
    for x in f.iter() {
        for y in f.iter() {
            let u = x.union(y);
            if !f.contains(&u) {
                return (x.clone(), u);
            }
        }
    }
    unreachable!("called on a family that is not ∪-closed")
}

fn first_untight_pair(f: &SetFamily) -> Option<(StateSet, StateSet)> {
    let graph = AdjacencyGraph::new(f);
    for s in 0..f.len() {
        let dist = graph.distances_from(s);
        for t in 0..f.len() {
            if dist[t] != Some(f.get(s).distance(f.get(t))) {
                return Some((f.get(s).clone(), f.get(t).clone()));
            }
        }
    }
    None
}

/// Whether every pair of `b` keeps a tight path `K → K ∪ L` in `f ∖ {z}`.
fn pairs_survive_without(b: &SetFamily, f: &SetFamily, z: &StateSet) -> Result<bool> {
    let rest = f.derive(f.iter().filter(|s| *s != z).cloned().collect())?;
    for k in b.iter() {
        for l in b.iter() {
            if k != l && oracle_tight_path(&rest, k, &k.union(l))?.is_none() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    use crate::fixtures;
    use crate::ground::GroundSet;
    use crate::oracle::oracle_is_well_graded;
    use crate::verify::is_wg_base;

    fn named(sets: &[&[&str]]) -> SetFamily {
        SetFamily::from_named(sets).unwrap()
    }

    #[test]
    fn two_sets_gain_a_singleton() {
        let b = named(&[&[][..], &["a", "b"]]);
        let ext = minimal_wg_extension(&b);
        assert_eq!(ext.added().len(), 1);
        assert_eq!(ext.added()[0].len(), 1);
        let f = ext.family().unwrap();
        assert_eq!(f.len(), 3);
        assert!(verify_extension(&b, &f).unwrap().verdict());
    }

    #[test]
    fn empty_singleton_and_pair() {
        let b = named(&[&[][..], &["a"], &["b", "c"]]);
        let ext = minimal_wg_extension(&b);
        let f = ext.family().unwrap();
        assert_eq!(f.len(), 6);
        assert!(oracle_is_well_graded(&f).unwrap());
        assert!(verify_extension(&b, &f).unwrap().verdict());
    }

    #[test]
    fn wg_base_is_a_fixpoint() {
        let b = fixtures::non_partition_wg_base();
        assert!(is_wg_base(&b).verdict());
        let ext = minimal_wg_extension(&b);
        assert!(ext.added().is_empty());
        assert_eq!(ext.base(), b);
    }

    #[test]
    fn extension_is_idempotent() {
        let b = named(&[&["a", "b", "c"][..], &["c", "d", "e"], &["a"]]);
        let ext = minimal_wg_extension(&b);
        let again = minimal_wg_extension(&ext.base());
        assert!(again.added().is_empty());
        assert_eq!(again.base(), ext.base());
    }

    #[test]
    fn steps_grow_in_cardinality() {
        let b = named(&[&[][..], &["a", "b", "c", "d"], &["c", "d", "e", "f"]]);
        let ext = minimal_wg_extension(&b);
        let cards: Vec<usize> = ext.steps().iter().map(|s| s.cardinality).collect();
        assert!(cards.windows(2).all(|w| w[0] < w[1]));
        for step in ext.steps() {
            assert!(step.added.iter().all(|z| z.len() == step.cardinality));
        }
        assert!(verify_extension(&b, &ext.family().unwrap()).unwrap().verdict());
    }

    #[test]
    fn path_family_reproduces_the_extension() {
        let b = named(&[&["a", "b"][..], &["b", "c", "d"], &["e"]]);
        let ext = minimal_wg_extension(&b);
        let via_paths = path_extension(&b, ext.paths()).unwrap();
        assert_eq!(via_paths, ext.family().unwrap());
    }

    #[test]
    fn path_extension_rejects_incomplete_families() {
        let b = named(&[&["a"][..], &["b"]]);
        assert!(matches!(
            path_extension(&b, &PathFamily::default()),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn verify_flags_non_minimal_extension() {
        let g = Arc::new(GroundSet::alphabetic(2));
        let b = fixtures::family_over(&g, &["", "a b"]);
        let f = fixtures::family_over(&g, &["", "a", "b", "a b"]);
        let report = verify_extension(&b, &f).unwrap();
        assert!(!report.verdict());
        assert!(report.witnesses().iter().all(|w| w.reason == Reason::NotMinimal));
    }

    #[test]
    fn verify_flags_non_closed_family() {
        let b = named(&[&["a"][..], &["b"]]);
        let report = verify_extension(&b, &b).unwrap();
        assert!(matches!(
            report.witnesses()[0].reason,
            Reason::NotUnionClosed { .. }
        ));
    }
}
