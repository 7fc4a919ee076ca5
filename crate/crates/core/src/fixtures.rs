//! Small families with known structure, used by tests, the acceptance
//! suite and documentation.
//!
//! Sets are written as space separated element names; `""` is the empty set.

use std::sync::Arc;

use crate::family::SetFamily;
use crate::ground::GroundSet;

/// Builds a family over `ground` from space separated set descriptions.
pub fn family_over(ground: &Arc<GroundSet>, sets: &[&str]) -> SetFamily {
    let sets = sets
        .iter()
        .map(|s| {
            let names: Vec<&str> = s.split_whitespace().collect();
            ground.set_of(&names).expect("fixture names are declared")
        })
        .collect();
    SetFamily::new(ground.clone(), sets).expect("fixture sets are distinct")
}

fn abcde() -> Arc<GroundSet> {
    Arc::new(GroundSet::alphabetic(5))
}

/// The 13-set ∪-closed well-graded family whose base is not well-graded.
pub fn example1_family() -> SetFamily {
    family_over(
        &abcde(),
        &[
            "", "a", "b", "c", "a b", "a c", "b c", "c d", "a b c", "a c d", "b c d", "a b c d",
            "a b c d e",
        ],
    )
}

pub fn example1_base() -> SetFamily {
    family_over(&abcde(), &["", "a", "b", "c", "c d", "a b c d e"])
}

/// The two minimal well-graded subfamilies of [`example1_family`] that
/// still span it.
pub fn example1_wg_subfamilies() -> [SetFamily; 2] {
    [
        family_over(
            &abcde(),
            &[
                "", "a", "b", "c", "a b", "a c", "c d", "a b c", "a c d", "a b c d", "a b c d e",
            ],
        ),
        family_over(
            &abcde(),
            &[
                "", "a", "b", "c", "a b", "b c", "c d", "a b c", "b c d", "a b c d", "a b c d e",
            ],
        ),
    ]
}

/// A family closed under both union and intersection whose base is not
/// well-graded.
pub fn example2_family() -> SetFamily {
    family_over(
        &abcde(),
        &[
            "", "a", "b", "d", "a b", "a d", "b d", "a b c", "a b d", "a b c d", "a b c d e",
        ],
    )
}

pub fn example2_base() -> SetFamily {
    family_over(&abcde(), &["", "a", "b", "d", "a b c", "a b c d e"])
}

/// Base of a discriminative well-graded family without `∅` whose surmise
/// function is not a partition.
pub fn non_partition_wg_base() -> SetFamily {
    let ground = Arc::new(GroundSet::from_names(["x", "y", "c", "d"]).expect("distinct"));
    family_over(&ground, &["x y c", "y d", "c d"])
}
