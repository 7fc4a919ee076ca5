//! Polynomial-time tests on a purported base `B`:
//!
//! * [`is_base`]: every nonempty set has an endpoint, `O(nm)`.
//! * [`is_learning_space_base`]: `∅ ∈ B` and every nonempty set has exactly
//!   one endpoint, `O(nm)`.
//! * [`is_wg_base`]: `B` is a base and, for every `X ∈ B`, the quotient
//!   `B/X` (reduced to its base, plus `∅`) is a learning-space base,
//!   `O(n²m)`.
//!
//! Each test returns a [`VerificationReport`] listing the offending sets.

use std::fmt;

use rayon::prelude::*;

use crate::endpoints::EndpointScanner;
use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::ground::GroundSet;
use crate::set::StateSet;

/// Why a set was flagged by a verification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reason {
    /// A nonempty set with no endpoint: it is a union of other sets.
    NoEndpoint,
    /// More than one endpoint where exactly one is required.
    MultipleEndpoints { endpoints: StateSet },
    /// `∅` is required but absent; the witness set is `∅`.
    MissingEmptySet,
    /// The reduced quotient by this set is not a learning-space base;
    /// `offending` is the set of the quotient that failed.
    QuotientNotLearningSpace { offending: StateSet },
    /// The family is not closed under union; `missing` is an absent union.
    NotUnionClosed { missing: StateSet },
    /// No tight path from the witness set to `to`.
    NoTightPath { to: StateSet },
    /// An input set is missing from the extension.
    MissingInputSet,
    /// A ∪-closed well-graded family strictly between the input and the
    /// extension exists that avoids the witness set.
    NotMinimal,
}

impl Reason {
    /// Human readable description with element names from `ground`.
    pub fn describe(&self, ground: &GroundSet) -> String {
        match self {
            Reason::NoEndpoint => "no endpoint (union of other sets)".into(),
            Reason::MultipleEndpoints { endpoints } => format!(
                "{} endpoints ({})",
                endpoints.len(),
                ground.display(endpoints)
            ),
            Reason::MissingEmptySet => "missing empty set".into(),
            Reason::QuotientNotLearningSpace { offending } => format!(
                "quotient is not a learning space (fails at {{{}}})",
                ground.display(offending)
            ),
            Reason::NotUnionClosed { missing } => {
                format!("not union-closed (missing {{{}}})", ground.display(missing))
            }
            Reason::NoTightPath { to } => {
                format!("no tight path to {{{}}}", ground.display(to))
            }
            Reason::MissingInputSet => "input set missing from family".into(),
            Reason::NotMinimal => "not minimal: a smaller well-graded extension avoids this set".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub set: StateSet,
    pub reason: Reason,
}

/// Outcome of a verification. The property holds iff there are no witnesses.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VerificationReport {
    witnesses: Vec<Witness>,
}

impl VerificationReport {
    pub fn pass() -> Self {
        Self::default()
    }

    pub fn verdict(&self) -> bool {
        self.witnesses.is_empty()
    }

    pub fn witnesses(&self) -> &[Witness] {
        &self.witnesses
    }

    pub fn push(&mut self, set: StateSet, reason: Reason) {
        self.witnesses.push(Witness { set, reason });
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.witnesses.extend(other.witnesses);
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", if self.verdict() { "holds" } else { "fails" })?;
        for w in &self.witnesses {
            write!(f, "; {:?}: {:?}", w.set, w.reason)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EndpointKind {
    /// The set is `∅` (an atom by convention).
    EmptyAtom,
    None,
    Single,
    Multiple,
}

/// Endpoint sets of every member of a family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndpointReport {
    pub entries: Vec<(StateSet, StateSet, EndpointKind)>,
}

impl EndpointReport {
    pub fn get(&self, set: &StateSet) -> Option<&StateSet> {
        self.entries
            .iter()
            .find(|(s, _, _)| s == set)
            .map(|(_, e, _)| e)
    }
}

pub fn endpoint_report(b: &SetFamily) -> EndpointReport {
    let mut scanner = EndpointScanner::new(b.ground().len());
    let entries = (0..b.len())
        .map(|i| {
            let x = b.get(i).clone();
            let ends = scanner.endpoints(b, i);
            let kind = match (x.is_empty(), ends.len()) {
                (true, _) => EndpointKind::EmptyAtom,
                (false, 0) => EndpointKind::None,
                (false, 1) => EndpointKind::Single,
                _ => EndpointKind::Multiple,
            };
            (x, StateSet::from_indices(ends), kind)
        })
        .collect();
    EndpointReport { entries }
}

/// `X ∖ ∪{Y ∈ B : Y ⊂ X}` in `O(m)`. `X` must belong to `B`.
pub fn endpoints(b: &SetFamily, x: &StateSet) -> Result<StateSet> {
    let i = b
        .position(x)
        .ok_or_else(|| Error::Usage(format!("{{{}}} is not in the family", b.display_set(x))))?;
    let mut scanner = EndpointScanner::new(b.ground().len());
    Ok(StateSet::from_indices(scanner.endpoints(b, i)))
}

/// Whether `B` is the base of a ∪-closed family.
pub fn is_base(b: &SetFamily) -> VerificationReport {
    let mut scanner = EndpointScanner::new(b.ground().len());
    is_base_with(b, &mut scanner)
}

fn is_base_with(b: &SetFamily, scanner: &mut EndpointScanner) -> VerificationReport {
    let mut report = VerificationReport::pass();
    for i in 0..b.len() {
        if !b.get(i).is_empty() && scanner.endpoints(b, i).is_empty() {
            report.push(b.get(i).clone(), Reason::NoEndpoint);
        }
    }
    report
}

/// Whether `B` is the base of a learning space (a well-graded ∪-closed
/// family containing `∅`).
pub fn is_learning_space_base(b: &SetFamily) -> VerificationReport {
    let mut scanner = EndpointScanner::new(b.ground().len());
    is_learning_space_base_with(b, &mut scanner)
}

fn is_learning_space_base_with(
    b: &SetFamily,
    scanner: &mut EndpointScanner,
) -> VerificationReport {
    let mut report = VerificationReport::pass();
    if !b.has_empty() {
        report.push(StateSet::new(), Reason::MissingEmptySet);
    }
    for i in 0..b.len() {
        if b.get(i).is_empty() {
            continue;
        }
        let ends = scanner.endpoints(b, i);
        match ends.len() {
            0 => report.push(b.get(i).clone(), Reason::NoEndpoint),
            1 => {}
            _ => report.push(
                b.get(i).clone(),
                Reason::MultipleEndpoints {
                    endpoints: StateSet::from_indices(ends),
                },
            ),
        }
    }
    report
}

/// Whether the surmise classes `σ(x)`, one per element `x ∈ ∪B`, partition
/// `B ∖ {∅}`: every nonempty set lies in the class of exactly one element.
///
/// `X ∈ σ(e)` exactly for the endpoints `e` of `X`, so this asks for one
/// endpoint per nonempty set. Classes are indexed by element: when two
/// elements share a class (the span is not discriminative), a set in that
/// class lies in two classes and the test fails. Reading the classes as an
/// unindexed collection would accept `{∅, {a, b}}`, whose span is not
/// well-graded.
pub fn surmise_is_partition(b: &SetFamily) -> Result<bool> {
    let mut scanner = EndpointScanner::new(b.ground().len());
    let mut partition = true;
    for i in 0..b.len() {
        if b.get(i).is_empty() {
            continue;
        }
        match scanner.endpoints(b, i).len() {
            0 => {
                return Err(Error::Domain(format!(
                    "not a base: {{{}}} is a union of other sets",
                    b.display_set(b.get(i))
                )))
            }
            1 => {}
            _ => partition = false,
        }
    }
    Ok(partition)
}

/// `B/X = {Y ∖ X : Y ∈ B}`, duplicates merged, over the same ground symbols.
pub fn quotient(b: &SetFamily, x: &StateSet) -> SetFamily {
    let sets = b.iter().map(|y| y.difference(x)).collect();
    b.derive_dedup(sets).expect("differences stay within the ground set")
}

/// The reduced quotient `B_X`: `∅` plus the sets of `B/X` with a nonempty
/// endpoint set relative to `B/X`.
pub fn reduced_quotient(b: &SetFamily, x: &StateSet) -> SetFamily {
    let mut scanner = EndpointScanner::new(b.ground().len());
    reduced_quotient_with(b, x, &mut scanner)
}

fn reduced_quotient_with(
    b: &SetFamily,
    x: &StateSet,
    scanner: &mut EndpointScanner,
) -> SetFamily {
    let q = quotient(b, x);
    let mut sets = vec![StateSet::new()];
    for i in 0..q.len() {
        if !q.get(i).is_empty() && !scanner.endpoints(&q, i).is_empty() {
            sets.push(q.get(i).clone());
        }
    }
    q.derive(sets).expect("∅ appears once and the rest are distinct")
}

/// Whether `B` is the base of a ∪-closed well-graded family.
pub fn is_wg_base(b: &SetFamily) -> VerificationReport {
    let mut scanner = EndpointScanner::new(b.ground().len());
    let report = is_base_with(b, &mut scanner);
    if !report.verdict() {
        return report;
    }
    let mut scratch = QuotientScratch::new(b.ground().len());
    let mut report = VerificationReport::pass();
    for x in b.iter() {
        if let Some(w) = quotient_witness(b, x, &mut scratch) {
            report.push(x.clone(), w);
        }
    }
    report
}

/// [`is_wg_base`] with the `n` quotient checks spread over the rayon pool.
/// Witnesses come out in family order regardless of scheduling.
pub fn is_wg_base_parallel(b: &SetFamily) -> VerificationReport {
    let report = is_base(b);
    if !report.verdict() {
        return report;
    }
    let found: Vec<Option<Reason>> = b
        .sets()
        .par_iter()
        .map_init(
            || QuotientScratch::new(b.ground().len()),
            |scratch, x| quotient_witness(b, x, scratch),
        )
        .collect();
    let mut report = VerificationReport::pass();
    for (x, w) in b.iter().zip(found) {
        if let Some(w) = w {
            report.push(x.clone(), w);
        }
    }
    report
}

/// Scratch for the quotient checks: `B/X` as one flat member buffer.
struct QuotientScratch {
    scanner: EndpointScanner,
    members: Vec<u32>,
    offsets: Vec<usize>,
}

impl QuotientScratch {
    fn new(ground_len: usize) -> Self {
        QuotientScratch {
            scanner: EndpointScanner::new(ground_len),
            members: Vec::new(),
            offsets: Vec::new(),
        }
    }
}

/// The first set of `B/X` that lands in `B_X` with more than one endpoint.
///
/// Endpoints relative to `B_X` equal endpoints relative to `B/X`: the sets
/// dropped from `B/X` are unions of smaller ones and duplicates are never
/// strict subsets of each other. So `B_X` is a learning-space base iff no
/// set of `B/X` has two or more endpoints there, and neither the quotient
/// nor `B_X` needs to be built.
fn quotient_witness(b: &SetFamily, x: &StateSet, scratch: &mut QuotientScratch) -> Option<Reason> {
    let QuotientScratch {
        scanner,
        members,
        offsets,
    } = scratch;
    members.clear();
    offsets.clear();
    offsets.push(0);
    for y in b.member_lists() {
        members.extend(y.iter().copied().filter(|&e| !x.contains(e)));
        offsets.push(members.len());
    }
    let n = offsets.len() - 1;
    let slice = |i: usize| &members[offsets[i]..offsets[i + 1]];
    (0..n).find_map(|i| {
        let w = slice(i);
        if w.len() < 2 {
            return None;
        }
        (scanner.count_endpoints_of(w, (0..n).map(slice)) >= 2).then(|| {
            Reason::QuotientNotLearningSpace {
                offending: StateSet::from_indices(w.iter().copied()),
            }
        })
    })
}
