use std::collections::{HashMap, HashSet};

use super::domination::BipartiteDominationInstance;
use super::{Extension, ExtensionStep, PathFamily};
use crate::family::SetFamily;
use crate::path::TightPath;
use crate::set::StateSet;

/// Knobs for [`minimal_wg_extension_with`].
#[derive(Debug, Clone, Copy)]
pub struct ExtensionOptions {
    /// Recompute every `S(K, L)` from scratch after each round and assert it
    /// matches the incrementally maintained value. Quadratic extra work.
    pub verify_tables: bool,
    /// Build the path family witnessing well-gradedness.
    pub build_paths: bool,
}

impl Default for ExtensionOptions {
    fn default() -> Self {
        ExtensionOptions {
            verify_tables: cfg!(debug_assertions),
            build_paths: true,
        }
    }
}

/// A minimal well-graded extension of `span(B)`.
///
/// Returns `B′ ⊇ B` with `span(B′)` well-graded and no ∪-closed
/// well-graded family strictly between `span(B)` and `span(B′)`, together
/// with tight paths `K → K ∪ L` in `span(B′)` for all pairs of `B`.
pub fn minimal_wg_extension(b: &SetFamily) -> Extension {
    minimal_wg_extension_with(b, ExtensionOptions::default())
}

pub fn minimal_wg_extension_with(b: &SetFamily, options: ExtensionOptions) -> Extension {
    let mut state = State::new(b);
    let steps = state.run(options.verify_tables);
    let generators = b
        .derive(state.generators.clone())
        .expect("added sets are fresh and inside the ground set");
    let added = state.generators[b.len()..].to_vec();
    let paths = if options.build_paths {
        build_paths(b, &state.generators)
    } else {
        PathFamily::default()
    };
    Extension {
        input: b.clone(),
        generators,
        added,
        steps,
        paths,
    }
}

/// A pair `(K, L)` of distinct input sets with `L ⊄ K`, its target
/// `T = K ∪ L`, and `S = ∪{X ∈ B′ : X ⊆ T, X ∪ K ≠ T}`: the largest set
/// reachable towards `T` without closing the gap in one move.
struct Pair {
    k: StateSet,
    target: StateSet,
    target_len: usize,
    s: StateSet,
    s_len: usize,
}

impl Pair {
    fn absorb(&mut self, z: &StateSet) {
        if z.is_subset(&self.target) && !z.union_equals(&self.k, &self.target) && !z.is_subset(&self.s) {
            self.s.union_with(z);
            self.s_len = self.s.len();
        }
    }
}

struct State {
    generators: Vec<StateSet>,
    present: HashSet<StateSet>,
    pairs: Vec<Pair>,
}

impl State {
    fn new(b: &SetFamily) -> Self {
        let generators = b.sets().to_vec();
        let present = generators.iter().cloned().collect();
        let mut pairs = Vec::new();
        for k in b.iter() {
            for l in b.iter() {
                if k == l || l.is_subset(k) {
                    continue;
                }
                let target = k.union(l);
                let s = compute_s(k, &target, &generators);
                pairs.push(Pair {
                    k: k.clone(),
                    target_len: target.len(),
                    target,
                    s_len: s.len(),
                    s,
                });
            }
        }
        State {
            generators,
            present,
            pairs,
        }
    }

    fn run(&mut self, verify_tables: bool) -> Vec<ExtensionStep> {
        let max_target = self.pairs.iter().map(|p| p.target_len).max().unwrap_or(0);
        let mut steps = Vec::new();
        for i in 1..=max_target {
            // Pairs stuck at |S| = i - 1 whose target is still at least two
            // moves away, grouped by equal S (those share candidate sets).
            let mut class_of: HashMap<StateSet, usize> = HashMap::new();
            let mut classes: Vec<Vec<usize>> = Vec::new();
            for (idx, p) in self.pairs.iter().enumerate() {
                if p.s_len + 1 != i || p.target_len <= i {
                    continue;
                }
                let c = *class_of.entry(p.s.clone()).or_insert_with(|| {
                    classes.push(Vec::new());
                    classes.len() - 1
                });
                classes[c].push(idx);
            }

            let mut added = Vec::new();
            for class in classes {
                // Sets added for earlier classes may already have advanced
                // some members.
                let members: Vec<usize> = class
                    .into_iter()
                    .filter(|&idx| self.pairs[idx].s_len + 1 == i)
                    .collect();
                let Some(&first) = members.first() else {
                    continue;
                };
                let s = self.pairs[first].s.clone();
                let inst = BipartiteDominationInstance::new(
                    members
                        .iter()
                        .map(|&idx| {
                            let p = &self.pairs[idx];
                            (idx, p.target.difference(&s).iter().collect())
                        })
                        .collect(),
                );
                for x in inst.minimal_dominating_subset() {
                    let mut z = s.clone();
                    z.insert(x);
                    for p in &mut self.pairs {
                        p.absorb(&z);
                    }
                    if self.present.insert(z.clone()) {
                        self.generators.push(z.clone());
                        added.push(z);
                    }
                }
            }

            if verify_tables {
                for p in &self.pairs {
                    assert_eq!(
                        p.s,
                        compute_s(&p.k, &p.target, &self.generators),
                        "incremental S table diverged at cardinality {i}"
                    );
                }
            }
            if !added.is_empty() {
                steps.push(ExtensionStep {
                    cardinality: i,
                    added,
                });
            }
        }
        steps
    }
}

fn compute_s(k: &StateSet, target: &StateSet, generators: &[StateSet]) -> StateSet {
    let mut s = StateSet::new();
    for x in generators {
        if x.is_subset(target) && !x.union_equals(k, target) {
            s.union_with(x);
        }
    }
    s
}

/// Tight paths `K → K ∪ L` in `span(generators)` for all ordered pairs of
/// distinct input sets.
///
/// Walks up from `K`, each time joining a generator inside the target that
/// adds exactly one new element. In a well-graded span such a generator
/// always exists.
fn build_paths(b: &SetFamily, generators: &[StateSet]) -> PathFamily {
    let mut paths = PathFamily::default();
    for (ki, k) in b.iter().enumerate() {
        for (li, l) in b.iter().enumerate() {
            if ki == li {
                continue;
            }
            let target = k.union(l);
            let inside: Vec<&StateSet> = generators
                .iter()
                .filter(|x| x.is_subset(&target) && !x.is_subset(k))
                .collect();
            let mut steps = vec![k.clone()];
            let mut cur = k.clone();
            while cur != target {
                let x = inside
                    .iter()
                    .find(|x| x.difference_len(&cur) == 1)
                    .expect("span of the generators is well-graded");
                cur.union_with(x);
                steps.push(cur.clone());
            }
            let path = TightPath::new(steps).expect("each step adds one element of the target");
            paths.insert(ki, li, path);
        }
    }
    paths
}
