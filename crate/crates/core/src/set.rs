use std::cmp::Ordering;
use std::fmt;

const BITS: u32 = 64;

/// A finite set of ground-element indices, stored as a bit vector.
///
/// The word vector never has trailing zero words, so the derived equality
/// and hash are value semantics. [`Ord`] is the canonical family order:
/// by cardinality first, then lexicographically by sorted member indices.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct StateSet {
    words: Vec<u64>,
}

impl StateSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(i: u32) -> Self {
        let mut s = Self::new();
        s.insert(i);
        s
    }

    pub fn from_indices<I: IntoIterator<Item = u32>>(iter: I) -> Self {
        iter.into_iter().collect()
    }

    /// Builds a set from a bit mask (bit `i` = element `i`).
    pub fn from_mask(mask: u64) -> Self {
        let mut s = StateSet { words: vec![mask] };
        s.trim();
        s
    }

    /// Inverse of [`from_mask`](Self::from_mask); `None` if an element is ≥ 64.
    pub fn to_mask(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    pub fn contains(&self, i: u32) -> bool {
        let (w, b) = split(i);
        self.words.get(w).is_some_and(|&x| x >> b & 1 == 1)
    }

    pub fn insert(&mut self, i: u32) -> bool {
        let (w, b) = split(i);
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        let fresh = self.words[w] >> b & 1 == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    pub fn remove(&mut self, i: u32) -> bool {
        let (w, b) = split(i);
        let Some(word) = self.words.get_mut(w) else {
            return false;
        };
        let present = *word >> b & 1 == 1;
        *word &= !(1 << b);
        self.trim();
        present
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn max_index(&self) -> Option<u32> {
        let last = *self.words.last()?;
        Some((self.words.len() as u32 - 1) * BITS + (BITS - 1 - last.leading_zeros()))
    }

    pub fn min_index(&self) -> Option<u32> {
        self.iter().next()
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            pos: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn union(&self, other: &StateSet) -> StateSet {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn union_with(&mut self, other: &StateSet) {
        if self.words.len() < other.words.len() {
            self.words.resize(other.words.len(), 0);
        }
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersection(&self, other: &StateSet) -> StateSet {
        let mut s = StateSet {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        };
        s.trim();
        s
    }

    /// `self ∖ other`.
    pub fn difference(&self, other: &StateSet) -> StateSet {
        let mut s = self.clone();
        s.difference_with(other);
        s
    }

    pub fn difference_with(&mut self, other: &StateSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
        self.trim();
    }

    pub fn is_subset(&self, other: &StateSet) -> bool {
        self.words.len() <= other.words.len()
            && self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    /// Strict inclusion `self ⊂ other`.
    pub fn is_proper_subset(&self, other: &StateSet) -> bool {
        self.is_subset(other) && self != other
    }

    pub fn is_disjoint(&self, other: &StateSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    /// `|self ∖ other|`.
    pub fn difference_len(&self, other: &StateSet) -> usize {
        self.words
            .iter()
            .enumerate()
            .map(|(i, a)| (a & !other.words.get(i).copied().unwrap_or(0)).count_ones() as usize)
            .sum()
    }

    /// Symmetric-difference distance `|self △ other|`.
    pub fn distance(&self, other: &StateSet) -> usize {
        let n = self.words.len().max(other.words.len());
        (0..n)
            .map(|i| {
                let a = self.words.get(i).copied().unwrap_or(0);
                let b = other.words.get(i).copied().unwrap_or(0);
                (a ^ b).count_ones() as usize
            })
            .sum()
    }

    /// Whether `self ∪ other == target`, without allocating.
    pub fn union_equals(&self, other: &StateSet, target: &StateSet) -> bool {
        let n = self.words.len().max(other.words.len()).max(target.words.len());
        (0..n).all(|i| {
            let a = self.words.get(i).copied().unwrap_or(0);
            let b = other.words.get(i).copied().unwrap_or(0);
            let t = target.words.get(i).copied().unwrap_or(0);
            a | b == t
        })
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }
}

fn split(i: u32) -> (usize, u32) {
    ((i / BITS) as usize, i % BITS)
}

impl Ord for StateSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            // The lowest differing element decides: whichever set holds it
            // has the smaller sorted member list at that position.
            let n = self.words.len().max(other.words.len());
            for i in 0..n {
                let a = self.words.get(i).copied().unwrap_or(0);
                let b = other.words.get(i).copied().unwrap_or(0);
                let x = a ^ b;
                if x != 0 {
                    let low = x & x.wrapping_neg();
                    return if a & low != 0 {
                        Ordering::Less
                    } else {
                        Ordering::Greater
                    };
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for StateSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FromIterator<u32> for StateSet {
    fn from_iter<I: IntoIterator<Item = u32>>(iter: I) -> Self {
        let mut s = StateSet::new();
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl fmt::Debug for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    pos: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        loop {
            if self.current != 0 {
                let b = self.current.trailing_zeros();
                self.current &= self.current - 1;
                return Some(self.pos as u32 * BITS + b);
            }
            self.pos += 1;
            self.current = *self.words.get(self.pos)?;
        }
    }
}
