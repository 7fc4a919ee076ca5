//! The 3-SAT gadget behind the hardness of keeping every input set in the
//! base of a well-graded extension.
//!
//! [`reduce_3sat`] maps an instance to the family `{∅} ∪ {{v, v̄}} ∪
//! {{c}, {c, u, v, w}}`; [`witness_from_assignment`] turns a satisfying
//! assignment into a well-graded ∪-closed family keeping all of those sets
//! in its base; [`decide_subset_of_base`] decides the question directly by
//! exhaustive search, for desk-sized inputs.
//!
//! Ground elements are namespaced: `+v` and `-v` for the two terms of
//! variable `v`, `c:i` for the `i`-th clause (1-based).

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::closure::span;
use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::ground::GroundSet;
use crate::set::StateSet;

/// Default node budget for [`decide_subset_of_base`].
pub const DEFAULT_SEARCH_BUDGET: usize = 1_000_000;

/// A term: variable index and sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub var: usize,
    pub negated: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal { var, negated: false }
    }

    pub fn neg(var: usize) -> Self {
        Literal { var, negated: true }
    }
}

/// A 3-CNF formula. A clause may repeat a literal, in which case it stands
/// for the set of its distinct terms; it may not hold a variable together
/// with its complement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sat3Instance {
    variables: Vec<String>,
    clauses: Vec<[Literal; 3]>,
}

impl Sat3Instance {
    pub fn new(variables: Vec<String>, clauses: Vec<[Literal; 3]>) -> Result<Self> {
        let mut seen = HashSet::new();
        for v in &variables {
            if v.is_empty() || v.chars().any(char::is_whitespace) {
                return Err(Error::Validation(format!("invalid variable name {v:?}")));
            }
            if !seen.insert(v) {
                return Err(Error::Validation(format!("variable {v} declared twice")));
            }
        }
        for (i, clause) in clauses.iter().enumerate() {
            for lit in clause {
                if lit.var >= variables.len() {
                    return Err(Error::Validation(format!(
                        "clause {} uses undeclared variable #{}",
                        i + 1,
                        lit.var + 1
                    )));
                }
            }
            for a in clause {
                if clause.iter().any(|b| b.var == a.var && b.negated != a.negated) {
                    // {c, v, v̄, ...} would contain {v, v̄} and could never
                    // keep an endpoint.
                    return Err(Error::Validation(format!(
                        "clause {} contains {} and its complement",
                        i + 1,
                        variables[a.var]
                    )));
                }
            }
        }
        Ok(Sat3Instance { variables, clauses })
    }

    /// Variables named `x1, x2, …`.
    pub fn with_numbered_variables(num_vars: usize, clauses: Vec<[Literal; 3]>) -> Result<Self> {
        Sat3Instance::new((1..=num_vars).map(|i| format!("x{i}")).collect(), clauses)
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn clauses(&self) -> &[[Literal; 3]] {
        &self.clauses
    }

    /// Distinct terms of clause `i`, in declaration order.
    pub fn terms(&self, i: usize) -> Vec<Literal> {
        let mut out: Vec<Literal> = Vec::with_capacity(3);
        for &lit in &self.clauses[i] {
            if !out.contains(&lit) {
                out.push(lit);
            }
        }
        out
    }

    pub fn term_name(&self, lit: Literal) -> String {
        let sign = if lit.negated { '-' } else { '+' };
        format!("{sign}{}", self.variables[lit.var])
    }

    pub fn clause_name(i: usize) -> String {
        format!("c:{}", i + 1)
    }

    /// Some satisfying assignment, by enumeration. Exponential in the number
    /// of variables; meant for small instances.
    pub fn solve_by_enumeration(&self) -> Option<TruthAssignment> {
        let n = self.variables.len();
        assert!(n < 64, "enumeration is limited to 63 variables");
        (0u64..1 << n)
            .map(|bits| TruthAssignment::from_bits(bits, n))
            .find(|f| f.first_violated(self).is_none())
    }

    fn display_clause(&self, i: usize) -> String {
        let terms: Vec<String> = self.clauses[i]
            .iter()
            .map(|&l| {
                let name = &self.variables[l.var];
                if l.negated {
                    format!("¬{name}")
                } else {
                    name.clone()
                }
            })
            .collect();
        format!("{} ({})", Self::clause_name(i), terms.join(" ∨ "))
    }
}

/// Values for every variable of an instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruthAssignment {
    values: Vec<bool>,
}

impl TruthAssignment {
    pub fn new(values: Vec<bool>) -> Self {
        TruthAssignment { values }
    }

    /// Variable `i` takes bit `i` of `bits`.
    pub fn from_bits(bits: u64, num_vars: usize) -> Self {
        TruthAssignment {
            values: (0..num_vars).map(|i| bits >> i & 1 == 1).collect(),
        }
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    /// Value of a term, with `f(v̄) = 1 − f(v)`.
    pub fn eval(&self, lit: Literal) -> bool {
        self.values[lit.var] != lit.negated
    }

    /// Index of the first clause with no true term.
    pub fn first_violated(&self, inst: &Sat3Instance) -> Option<usize> {
        inst.clauses
            .iter()
            .position(|c| !c.iter().any(|&l| self.eval(l)))
    }
}

impl fmt::Display for TruthAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bits: String = self.values.iter().map(|&b| if b { '1' } else { '0' }).collect();
        f.write_str(&bits)
    }
}

/// Ground set `+v, -v` for each variable, then `c:i` for each clause.
fn reduction_ground(inst: &Sat3Instance) -> Arc<GroundSet> {
    let mut names = Vec::with_capacity(2 * inst.variables.len() + inst.clauses.len());
    for v in 0..inst.variables.len() {
        names.push(inst.term_name(Literal::pos(v)));
        names.push(inst.term_name(Literal::neg(v)));
    }
    names.extend((0..inst.clauses.len()).map(Sat3Instance::clause_name));
    Arc::new(GroundSet::from_names(names).expect("namespaced names are distinct"))
}

fn term_index(lit: Literal) -> u32 {
    (2 * lit.var + usize::from(lit.negated)) as u32
}

fn clause_index(inst: &Sat3Instance, i: usize) -> u32 {
    (2 * inst.variables.len() + i) as u32
}

/// `{∅} ∪ {{+v, -v}} ∪ {{c}, {c} ∪ terms(c)}` over the namespaced ground.
pub fn reduce_3sat(inst: &Sat3Instance) -> SetFamily {
    let ground = reduction_ground(inst);
    let mut sets = vec![StateSet::new()];
    for v in 0..inst.variables.len() {
        sets.push(StateSet::from_indices([term_index(Literal::pos(v)), term_index(Literal::neg(v))]));
    }
    for i in 0..inst.clauses.len() {
        let c = clause_index(inst, i);
        sets.push(StateSet::singleton(c));
        let mut full = StateSet::singleton(c);
        for lit in inst.terms(i) {
            full.insert(term_index(lit));
        }
        sets.push(full);
    }
    SetFamily::new(ground, sets).expect("reduction sets are distinct")
}

/// The generators `H ∪ B ∪ T₀ ∪ T₁` of the witness family for a satisfying
/// assignment `f`.
///
/// `H` holds `{x}` for every false term. For each clause, `t₂` is its first
/// true term and the others, in order, form the chain `{c, t₀}`,
/// `{c, t₀, t₁}` up to the full clause set.
pub fn witness_generators(inst: &Sat3Instance, f: &TruthAssignment) -> Result<SetFamily> {
    if f.values.len() != inst.variables.len() {
        return Err(Error::Usage(format!(
            "assignment has {} values for {} variables",
            f.values.len(),
            inst.variables.len()
        )));
    }
    if let Some(i) = f.first_violated(inst) {
        return Err(Error::Domain(format!(
            "assignment {f} does not satisfy clause {}",
            inst.display_clause(i)
        )));
    }
    let b = reduce_3sat(inst);
    let mut sets = b.sets().to_vec();
    for v in 0..inst.variables.len() {
        let false_term = if f.values[v] { Literal::neg(v) } else { Literal::pos(v) };
        sets.push(StateSet::singleton(term_index(false_term)));
    }
    for i in 0..inst.clauses.len() {
        let terms = inst.terms(i);
        let t2 = *terms.iter().find(|&&l| f.eval(l)).expect("clause is satisfied");
        let mut chain = StateSet::singleton(clause_index(inst, i));
        for lit in terms.into_iter().filter(|&l| l != t2) {
            chain.insert(term_index(lit));
            sets.push(chain.clone());
        }
    }
    b.derive_dedup(sets)
}

/// `span(H ∪ B ∪ T₀ ∪ T₁)`: a well-graded ∪-closed family whose base
/// contains every set of `reduce_3sat(inst)`.
pub fn witness_from_assignment(inst: &Sat3Instance, f: &TruthAssignment) -> Result<SetFamily> {
    span(&witness_generators(inst, f)?)
}

/// Whether some well-graded ∪-closed family has every set of `b` in its
/// base. See [`find_subset_of_base_extension`].
pub fn decide_subset_of_base(b: &SetFamily) -> Result<bool> {
    decide_subset_of_base_with_budget(b, DEFAULT_SEARCH_BUDGET)
}

pub fn decide_subset_of_base_with_budget(b: &SetFamily, budget: usize) -> Result<bool> {
    Ok(find_subset_of_base_extension(b, budget)?.is_some())
}

/// Generators `G ⊇ b` with `span(G)` well-graded and every set of `b`
/// keeping an endpoint, if they exist.
///
/// A minimal well-graded extension is a path extension, and shrinking a
/// family never removes endpoints, so it suffices to search path
/// extensions. The search handles the pairs `(K, L)` of `b` one at a time;
/// a pair whose target `K ∪ L` is already reachable by a tight path in
/// `span(G)` costs nothing, otherwise it branches on the next set of the
/// path, pruning as soon as a set of `b` loses its last endpoint. Failed
/// states are memoized. Fails with a capacity error after `budget` search
/// nodes.
pub fn find_subset_of_base_extension(b: &SetFamily, budget: usize) -> Result<Option<SetFamily>> {
    let generators: Vec<StateSet> = b.sets().to_vec();
    if generators
        .iter()
        .any(|x| !x.is_empty() && endpoint_set(x, &generators).is_empty())
    {
        return Ok(None);
    }
    let mut pairs: Vec<(StateSet, StateSet)> = Vec::new();
    for k in b.iter() {
        for l in b.iter() {
            if k != l && !l.is_subset(k) {
                pairs.push((k.clone(), k.union(l)));
            }
        }
    }
    // Pairs from ∅ first: they fix the cheapest choices.
    pairs.sort_by(|p, q| {
        (!p.0.is_empty(), p.1.len(), &p.1, &p.0).cmp(&(!q.0.is_empty(), q.1.len(), &q.1, &q.0))
    });
    let mut search = Search {
        input: b.sets().to_vec(),
        pairs,
        failed: HashSet::new(),
        nodes: 0,
        budget,
    };
    let mut g = generators;
    if search.dfs(&mut g, 0, None)? {
        Ok(Some(b.derive(g)?))
    } else {
        Ok(None)
    }
}

struct Search {
    input: Vec<StateSet>,
    pairs: Vec<(StateSet, StateSet)>,
    failed: HashSet<(usize, Option<StateSet>, Vec<StateSet>)>,
    nodes: usize,
    budget: usize,
}

impl Search {
    /// Continues from pair `idx`, currently at `pos` on its path (`None`
    /// when the pair has not been started).
    fn dfs(&mut self, g: &mut Vec<StateSet>, idx: usize, pos: Option<StateSet>) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::capacity("subset-of-base search nodes", self.budget));
        }
        let Some((k, target)) = self.pairs.get(idx).cloned() else {
            return Ok(true);
        };
        let start = pos.unwrap_or(k);
        // Free moves inside span(G) never hurt: see the exchange argument
        // in `climb`.
        let cur = climb(&start, &target, g);
        if cur == target {
            return self.dfs(g, idx + 1, None);
        }
        let mut key_sets = g.clone();
        key_sets.sort();
        let key = (idx, Some(cur.clone()), key_sets);
        if self.failed.contains(&key) {
            return Ok(false);
        }
        for x in target.difference(&cur).iter() {
            let mut next = cur.clone();
            next.insert(x);
            g.push(next.clone());
            if self.keeps_endpoints(g, &next) && self.dfs(g, idx, Some(next))? {
                return Ok(true);
            }
            g.pop();
        }
        self.failed.insert(key);
        Ok(false)
    }

    /// Whether every input superset of the newly added `z` still has an
    /// endpoint in `g`.
    fn keeps_endpoints(&self, g: &[StateSet], z: &StateSet) -> bool {
        self.input
            .iter()
            .filter(|x| z.is_proper_subset(x))
            .all(|x| !endpoint_set(x, g).is_empty())
    }
}

/// Follows single-element moves towards `target` through `span(g)` as far
/// as possible.
///
/// If `P ∪ {x}` is reachable from `P`, it stays reachable from every larger
/// `P′ ∌ x` on the way, so the greedy walk reaches `target` whenever any
/// tight path does.
fn climb(start: &StateSet, target: &StateSet, g: &[StateSet]) -> StateSet {
    let inside: Vec<&StateSet> = g.iter().filter(|x| x.is_subset(target)).collect();
    let mut cur = start.clone();
    loop {
        match inside.iter().find(|x| x.difference_len(&cur) == 1) {
            Some(x) => cur.union_with(x),
            None => return cur,
        }
    }
}

fn endpoint_set(x: &StateSet, g: &[StateSet]) -> StateSet {
    let mut covered = StateSet::new();
    for y in g {
        if y.is_proper_subset(x) {
            covered.union_with(y);
        }
    }
    x.difference(&covered)
}

/// Every instance over `1..=max_vars` variables with at most `max_clauses`
/// clauses, up to reordering: clauses are multisets of literals without
/// complementary pairs, and the clause list is a multiset of clauses.
pub fn small_instances(max_vars: usize, max_clauses: usize) -> Vec<Sat3Instance> {
    let mut out = Vec::new();
    for nv in 1..=max_vars {
        let lits: Vec<Literal> = (0..nv)
            .flat_map(|v| [Literal::pos(v), Literal::neg(v)])
            .collect();
        let mut clauses: Vec<[Literal; 3]> = Vec::new();
        for i in 0..lits.len() {
            for j in i..lits.len() {
                for k in j..lits.len() {
                    let c = [lits[i], lits[j], lits[k]];
                    let tautology = c
                        .iter()
                        .any(|a| c.iter().any(|b| a.var == b.var && a.negated != b.negated));
                    if !tautology {
                        clauses.push(c);
                    }
                }
            }
        }
        let mut lists: Vec<Vec<usize>> = vec![Vec::new()];
        let mut frontier = lists.clone();
        for _ in 0..max_clauses {
            let mut next = Vec::new();
            for list in &frontier {
                let from = list.last().copied().unwrap_or(0);
                for c in from..clauses.len() {
                    let mut l = list.clone();
                    l.push(c);
                    next.push(l);
                }
            }
            lists.extend(next.iter().cloned());
            frontier = next;
        }
        for list in lists {
            let cs = list.iter().map(|&c| clauses[c]).collect();
            out.push(Sat3Instance::with_numbered_variables(nv, cs).expect("generated clauses are valid"));
        }
    }
    out
}
