//! Linear-time endpoint computation.
//!
//! The endpoints of a set `X` in a family `B` are the elements of `X` that
//! lie in no set `Y ∈ B` with `Y ⊂ X`. The scan marks the members of `X`,
//! then marks every element covered by a strict subset, then collects the
//! unmarked members. Both passes touch each member of each set at most once,
//! so one call costs `O(m)` once the scratch arrays exist.

use crate::family::SetFamily;
use crate::set::StateSet;

/// Scratch space reused across endpoint computations over one ground set.
#[derive(Debug, Default, Clone)]
pub struct EndpointScanner {
    in_x: Vec<bool>,
    covered: Vec<bool>,
}

impl EndpointScanner {
    pub fn new(ground_len: usize) -> Self {
        EndpointScanner {
            in_x: vec![false; ground_len],
            covered: vec![false; ground_len],
        }
    }

    /// Endpoints of the `x`-th set of `family`, as sorted indices.
    pub fn endpoints(&mut self, family: &SetFamily, x: usize) -> Vec<u32> {
        self.endpoints_of(family.members(x), family.member_lists())
    }

    /// Endpoints of `x` with respect to the sets in `family` (which may
    /// include `x` itself; it is never a strict subset of itself).
    pub fn endpoints_of<'a, I>(&mut self, x: &[u32], family: I) -> Vec<u32>
    where
        I: IntoIterator<Item = &'a [u32]>,
    {
        self.mark(x, family);
        let out = x
            .iter()
            .copied()
            .filter(|&e| !self.covered[e as usize])
            .collect();
        self.clear(x);
        out
    }

    /// Like [`endpoints_of`](Self::endpoints_of), writing into `out`
    /// (cleared first) so repeated calls need not allocate.
    pub fn endpoints_into<'a, I>(&mut self, x: &[u32], family: I, out: &mut Vec<u32>)
    where
        I: IntoIterator<Item = &'a [u32]>,
    {
        self.mark(x, family);
        out.clear();
        out.extend(x.iter().copied().filter(|&e| !self.covered[e as usize]));
        self.clear(x);
    }

    /// Number of endpoints of `x`, without allocating.
    pub fn count_endpoints_of<'a, I>(&mut self, x: &[u32], family: I) -> usize
    where
        I: IntoIterator<Item = &'a [u32]>,
    {
        self.mark(x, family);
        let count = x.iter().filter(|&&e| !self.covered[e as usize]).count();
        self.clear(x);
        count
    }

    fn mark<'a, I>(&mut self, x: &[u32], family: I)
    where
        I: IntoIterator<Item = &'a [u32]>,
    {
        if let Some(&top) = x.last() {
            let need = top as usize + 1;
            if self.in_x.len() < need {
                self.in_x.resize(need, false);
                self.covered.resize(need, false);
            }
        }
        for &e in x {
            self.in_x[e as usize] = true;
        }
        for y in family {
            // Y ⊂ X strictly iff Y ⊆ X and |Y| < |X|.
            if y.len() < x.len() && y.iter().all(|&e| self.is_marked(e)) {
                for &e in y {
                    self.covered[e as usize] = true;
                }
            }
        }
    }

    fn clear(&mut self, x: &[u32]) {
        for &e in x {
            self.in_x[e as usize] = false;
            self.covered[e as usize] = false;
        }
    }

    fn is_marked(&self, e: u32) -> bool {
        self.in_x.get(e as usize).copied().unwrap_or(false)
    }

    /// Endpoint sets of every member of `family`, in family order.
    pub fn all_endpoints(&mut self, family: &SetFamily) -> Vec<StateSet> {
        (0..family.len())
            .map(|i| StateSet::from_indices(self.endpoints(family, i)))
            .collect()
    }
}
