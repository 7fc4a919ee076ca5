use crate::error::{Error, Result};
use crate::set::StateSet;

/// A sequence of sets `P₀, …, Pₙ` with consecutive sets at distance one and
/// `d(P₀, Pₙ) = n`, so no element is added and later removed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TightPath {
    steps: Vec<StateSet>,
}

impl TightPath {
    pub fn new(steps: Vec<StateSet>) -> Result<Self> {
        let (Some(first), Some(last)) = (steps.first(), steps.last()) else {
            return Err(Error::Validation("a path needs at least one set".into()));
        };
        if let Some(i) = steps.windows(2).position(|w| w[0].distance(&w[1]) != 1) {
            return Err(Error::Validation(format!(
                "steps {i} and {} are not at distance 1",
                i + 1
            )));
        }
        if first.distance(last) != steps.len() - 1 {
            return Err(Error::Validation(format!(
                "path of length {} between sets at distance {}",
                steps.len() - 1,
                first.distance(last)
            )));
        }
        Ok(TightPath { steps })
    }

    /// The length-zero path at `p`.
    pub fn trivial(p: StateSet) -> Self {
        TightPath { steps: vec![p] }
    }

    pub fn steps(&self) -> &[StateSet] {
        &self.steps
    }

    pub fn start(&self) -> &StateSet {
        &self.steps[0]
    }

    pub fn end(&self) -> &StateSet {
        self.steps.last().expect("paths are nonempty")
    }

    /// Number of moves, `d(start, end)`.
    pub fn len(&self) -> usize {
        self.steps.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
