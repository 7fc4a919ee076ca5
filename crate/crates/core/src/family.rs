use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ground::GroundSet;
use crate::set::StateSet;

/// A duplicate-free, ordered collection of [`StateSet`]s over a shared
/// [`GroundSet`].
///
/// Alongside the bit vectors the family keeps each set's sorted member list,
/// which the linear-time scans in [`crate::endpoints`] iterate over.
#[derive(Clone)]
pub struct SetFamily {
    ground: Arc<GroundSet>,
    sets: Vec<StateSet>,
    members: Vec<Vec<u32>>,
    index: HashMap<StateSet, usize>,
}

/// Size parameters of a family: `n` sets, the largest has `ell` elements,
/// and the cardinalities sum to `m`. Always `ell ≤ m ≤ n·ell`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SizeParams {
    pub n: usize,
    pub ell: usize,
    pub m: usize,
}

impl SetFamily {
    /// Builds a family, rejecting duplicate sets and out-of-range elements.
    pub fn new(ground: Arc<GroundSet>, sets: Vec<StateSet>) -> Result<Self> {
        Self::build(ground, sets, false)
    }

    /// Like [`new`](Self::new) but silently keeps only the first copy of
    /// each repeated set.
    pub fn new_dedup(ground: Arc<GroundSet>, sets: Vec<StateSet>) -> Result<Self> {
        Self::build(ground, sets, true)
    }

    /// Builds a family from element names, interning them in order of first
    /// appearance. Convenient for fixtures.
    pub fn from_named<S: AsRef<str>>(sets: &[&[S]]) -> Result<Self> {
        let mut ground = GroundSet::new();
        let mut out = Vec::with_capacity(sets.len());
        for names in sets {
            let mut s = StateSet::new();
            for name in names.iter() {
                s.insert(ground.intern(name.as_ref())?);
            }
            out.push(s);
        }
        Self::new(Arc::new(ground), out)
    }

    /// A family over the same ground set.
    pub fn derive(&self, sets: Vec<StateSet>) -> Result<Self> {
        Self::new(self.ground.clone(), sets)
    }

    pub fn derive_dedup(&self, sets: Vec<StateSet>) -> Result<Self> {
        Self::new_dedup(self.ground.clone(), sets)
    }

    fn build(ground: Arc<GroundSet>, sets: Vec<StateSet>, dedup: bool) -> Result<Self> {
        let mut index = HashMap::with_capacity(sets.len());
        let mut kept = Vec::with_capacity(sets.len());
        for set in sets {
            if !ground.contains_set(&set) {
                return Err(Error::Validation(format!(
                    "set {set:?} uses an element outside the ground set of size {}",
                    ground.len()
                )));
            }
            if index.contains_key(&set) {
                if dedup {
                    continue;
                }
                return Err(Error::Validation(format!(
                    "duplicate set {{{}}}",
                    ground.display(&set)
                )));
            }
            index.insert(set.clone(), kept.len());
            kept.push(set);
        }
        let members = kept.iter().map(|s| s.iter().collect()).collect();
        Ok(SetFamily {
            ground,
            sets: kept,
            members,
            index,
        })
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn ground_arc(&self) -> &Arc<GroundSet> {
        &self.ground
    }

    pub fn sets(&self) -> &[StateSet] {
        &self.sets
    }

    pub fn get(&self, i: usize) -> &StateSet {
        &self.sets[i]
    }

    /// Sorted member indices of the `i`-th set.
    pub fn members(&self, i: usize) -> &[u32] {
        &self.members[i]
    }

    pub fn member_lists(&self) -> impl ExactSizeIterator<Item = &[u32]> + '_ {
        self.members.iter().map(Vec::as_slice)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, StateSet> {
        self.sets.iter()
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn contains(&self, set: &StateSet) -> bool {
        self.index.contains_key(set)
    }

    pub fn position(&self, set: &StateSet) -> Option<usize> {
        self.index.get(set).copied()
    }

    pub fn has_empty(&self) -> bool {
        self.contains(&StateSet::new())
    }

    /// `∪F`.
    pub fn support(&self) -> StateSet {
        let mut u = StateSet::new();
        for s in &self.sets {
            u.union_with(s);
        }
        u
    }

    pub fn size_params(&self) -> SizeParams {
        SizeParams {
            n: self.len(),
            ell: self.members.iter().map(Vec::len).max().unwrap_or(0),
            m: self.members.iter().map(Vec::len).sum(),
        }
    }

    /// The same family in canonical order (cardinality, then lexicographic).
    pub fn sorted(&self) -> SetFamily {
        let mut sets = self.sets.clone();
        sets.sort();
        Self::new(self.ground.clone(), sets).expect("reordering keeps the family valid")
    }

    /// Whether every set of `self` belongs to `other`.
    pub fn is_subfamily_of(&self, other: &SetFamily) -> bool {
        self.sets.iter().all(|s| other.contains(s))
    }

    /// Checks that `other` can be combined with `self`.
    pub fn check_same_ground(&self, other: &SetFamily) -> Result<()> {
        if Arc::ptr_eq(&self.ground, &other.ground) || *self.ground == *other.ground {
            Ok(())
        } else {
            Err(Error::Usage("families are over different ground sets".into()))
        }
    }

    /// Checks that `set` only uses elements of this family's ground set.
    pub fn check_set(&self, set: &StateSet) -> Result<()> {
        if self.ground.contains_set(set) {
            Ok(())
        } else {
            Err(Error::Usage(format!(
                "set {set:?} is not over this ground set"
            )))
        }
    }

    /// `|X △ Y|` for two sets over this family's ground set.
    pub fn distance(&self, x: &StateSet, y: &StateSet) -> Result<usize> {
        self.check_set(x)?;
        self.check_set(y)?;
        Ok(x.distance(y))
    }

    pub fn display_set(&self, set: &StateSet) -> String {
        self.ground.display(set)
    }
}

/// Families compare as sets of sets over equal ground sets; order is ignored.
impl PartialEq for SetFamily {
    fn eq(&self, other: &Self) -> bool {
        self.check_same_ground(other).is_ok()
            && self.len() == other.len()
            && self.is_subfamily_of(other)
    }
}

impl Eq for SetFamily {}

impl fmt::Debug for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set()
            .entries(self.sets.iter().map(|s| DisplaySet(self.ground.display(s))))
            .finish()
    }
}

struct DisplaySet(String);

impl fmt::Debug for DisplaySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0)
    }
}

impl<'a> IntoIterator for &'a SetFamily {
    type Item = &'a StateSet;
    type IntoIter = std::slice::Iter<'a, StateSet>;

    fn into_iter(self) -> Self::IntoIter {
        self.sets.iter()
    }
}
