//! Seeded random bases for tests and benchmarks.

use std::collections::HashSet;
use std::sync::Arc;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::endpoints::EndpointScanner;
use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::ground::GroundSet;
use crate::set::StateSet;

/// Shape of a random base.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenParams {
    /// Number of sets, counting `∅` when `with_empty` is set.
    pub n: usize,
    /// Largest set size; at least one set has exactly this size.
    pub ell: usize,
    /// Ground set size; `None` picks `4 · ell`, grown if too small to hold
    /// `n` sets.
    pub ground: Option<usize>,
    pub with_empty: bool,
    pub seed: u64,
}

impl GenParams {
    pub fn new(n: usize, ell: usize, seed: u64) -> Self {
        GenParams {
            n,
            ell,
            ground: None,
            with_empty: false,
            seed,
        }
    }
}

/// A random family with `n` sets, each of size at most `ell`, that is a
/// base: no set is a union of the others.
///
/// Sets are drawn with a uniform size in `1..=ell` and uniform elements,
/// and rejected when they repeat a set, are a union of sets already drawn,
/// or would make an earlier set such a union. Deterministic in `seed`.
pub fn random_base(params: GenParams) -> Result<SetFamily> {
    let GenParams {
        n,
        ell,
        ground,
        with_empty,
        seed,
    } = params;
    let nonempty = n.saturating_sub(usize::from(with_empty));
    if nonempty > 0 && ell == 0 {
        return Err(Error::Usage("ell must be positive for nonempty sets".into()));
    }
    let mut ground_len = ground.unwrap_or(4 * ell).max(ell).max(1);
    if ground.is_none() {
        while capacity(ground_len, ell) < nonempty {
            ground_len += 1;
        }
    } else if capacity(ground_len, ell) < nonempty {
        return Err(Error::Usage(format!(
            "a ground set of {ground_len} elements cannot hold {nonempty} sets of size at most {ell}"
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sets: Vec<StateSet> = Vec::with_capacity(n);
    let mut seen: HashSet<StateSet> = HashSet::new();
    let mut scanner = EndpointScanner::new(ground_len);
    let max_attempts = 1000 * nonempty.max(1) + 10_000;
    let mut attempts = 0;
    while sets.len() < nonempty {
        attempts += 1;
        if attempts > max_attempts {
            return Err(Error::capacity("random base attempts", max_attempts));
        }
        let k = if sets.is_empty() { ell } else { rng.gen_range(1..=ell) };
        let x: StateSet = sample(&mut rng, ground_len, k)
            .into_iter()
            .map(|e| e as u32)
            .collect();
        if seen.contains(&x) || !keeps_base(&mut scanner, &sets, &x) {
            continue;
        }
        seen.insert(x.clone());
        sets.push(x);
    }
    if with_empty {
        sets.insert(0, StateSet::new());
    }
    let ground = Arc::new(GroundSet::alphabetic(ground_len));
    SetFamily::new(ground, sets)
}

/// A random learning-space base with `n` sets (counting `∅`), each of size
/// at most `ell`. `with_empty` is ignored: `∅` is always present.
///
/// Grows the family one set at a time: `Z = S ∪ {x}` for a random member
/// `S` and element `x ∉ S`, kept when `x` becomes the single endpoint of
/// `Z` and no existing set loses its own endpoint. Every nonempty set then
/// has exactly one endpoint, so every verification on it runs to the end.
pub fn random_learning_space_base(params: GenParams) -> Result<SetFamily> {
    let GenParams {
        n, ell, ground, seed, ..
    } = params;
    if n > 1 && ell == 0 {
        return Err(Error::Usage("ell must be positive for nonempty sets".into()));
    }
    let ground_len = ground.unwrap_or(4 * ell).max(ell).max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sets = vec![StateSet::new()];
    let mut endpoint: Vec<Option<u32>> = vec![None];
    let mut seen: HashSet<StateSet> = sets.iter().cloned().collect();
    let max_attempts = 1000 * n.max(1) + 10_000;
    let mut attempts = 0;
    while sets.len() < n {
        attempts += 1;
        if attempts > max_attempts {
            return Err(Error::capacity("random base attempts", max_attempts));
        }
        let s = &sets[rng.gen_range(0..sets.len())];
        if s.len() >= ell || s.len() >= ground_len {
            continue;
        }
        let x = loop {
            let x = rng.gen_range(0..ground_len) as u32;
            if !s.contains(x) {
                break x;
            }
        };
        let mut z = s.clone();
        z.insert(x);
        if seen.contains(&z) {
            continue;
        }
        let x_covered = sets.iter().any(|y| y.contains(x) && y.is_proper_subset(&z));
        let steals = sets
            .iter()
            .zip(&endpoint)
            .any(|(w, e)| z.is_proper_subset(w) && e.is_some_and(|e| z.contains(e)));
        if x_covered || steals {
            continue;
        }
        seen.insert(z.clone());
        sets.push(z);
        endpoint.push(Some(x));
    }
    let ground = Arc::new(GroundSet::alphabetic(ground_len));
    SetFamily::new(ground, sets)
}

/// Whether `sets ∪ {x}` is still a base, given that `sets` is one.
fn keeps_base(scanner: &mut EndpointScanner, sets: &[StateSet], x: &StateSet) -> bool {
    let members: Vec<Vec<u32>> = sets.iter().map(|s| s.iter().collect()).collect();
    let xm: Vec<u32> = x.iter().collect();
    if scanner
        .endpoints_of(&xm, members.iter().map(Vec::as_slice))
        .is_empty()
    {
        return false;
    }
    // Only supersets of x can lose their last endpoint.
    for (i, y) in sets.iter().enumerate() {
        if x.is_proper_subset(y) {
            let others = members
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, m)| m.as_slice())
                .chain(std::iter::once(xm.as_slice()));
            if scanner.endpoints_of(&members[i], others).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Number of nonempty subsets of a `g`-set with at most `ell` elements,
/// saturating.
fn capacity(g: usize, ell: usize) -> usize {
    let mut total: usize = 0;
    let mut binom: usize = 1;
    for k in 1..=ell.min(g) {
        binom = binom.saturating_mul(g - k + 1) / k;
        total = total.saturating_add(binom);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::oracle_is_base;
    use crate::verify::is_base;

    #[test]
    fn shape_matches_parameters() {
        let b = random_base(GenParams::new(30, 4, 7)).unwrap();
        let p = b.size_params();
        assert_eq!(p.n, 30);
        assert_eq!(p.ell, 4);
        assert!(is_base(&b).verdict());
    }

    #[test]
    fn deterministic_in_seed() {
        let a = random_base(GenParams::new(20, 3, 1)).unwrap();
        let b = random_base(GenParams::new(20, 3, 1)).unwrap();
        let c = random_base(GenParams::new(20, 3, 2)).unwrap();
        assert_eq!(a.sets(), b.sets());
        assert_ne!(a.sets(), c.sets());
    }

    #[test]
    fn empty_set_counts_towards_n() {
        let b = random_base(GenParams {
            with_empty: true,
            ..GenParams::new(5, 2, 3)
        })
        .unwrap();
        assert_eq!(b.len(), 5);
        assert!(b.has_empty());
    }

    #[test]
    fn small_bases_agree_with_oracle() {
        for seed in 0..50 {
            let b = random_base(GenParams {
                ground: Some(5),
                ..GenParams::new(6, 3, seed)
            })
            .unwrap();
            assert!(oracle_is_base(&b).unwrap(), "seed {seed}");
        }
    }

    #[test]
    fn learning_space_bases_pass_the_checks() {
        use crate::oracle::oracle_is_well_graded;
        use crate::verify::{is_learning_space_base, is_wg_base};
        for seed in 0..30 {
            let b = random_learning_space_base(GenParams {
                ground: Some(8),
                ..GenParams::new(8, 3, seed)
            })
            .unwrap();
            assert_eq!(b.len(), 8);
            assert!(is_learning_space_base(&b).verdict(), "seed {seed}");
            assert!(is_wg_base(&b).verdict());
            assert!(oracle_is_well_graded(&crate::closure::span(&b).unwrap()).unwrap());
        }
        let big = random_learning_space_base(GenParams::new(400, 6, 1)).unwrap();
        assert_eq!(big.size_params().n, 400);
        assert!(is_learning_space_base(&big).verdict());
    }

    #[test]
    fn impossible_shapes_are_rejected() {
        let p = GenParams {
            ground: Some(2),
            ..GenParams::new(10, 2, 0)
        };
        assert!(matches!(random_base(p), Err(Error::Usage(_))));
    }

    #[test]
    fn capacity_counts_subsets() {
        assert_eq!(capacity(4, 2), 4 + 6);
        assert_eq!(capacity(3, 5), 7);
    }
}
