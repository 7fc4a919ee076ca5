use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::set::StateSet;

/// Symbol table mapping element names to dense indices `0..len`.
///
/// Names are non-empty and contain no whitespace. Indices are assigned in
/// interning order and never change, so every [`StateSet`] built against a
/// ground set stays valid as more names are added.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct GroundSet {
    names: Vec<String>,
    index: HashMap<String, u32>,
}

impl GroundSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a ground set from distinct names, in the given order.
    pub fn from_names<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut ground = GroundSet::new();
        for name in names {
            let name = name.as_ref();
            if ground.index_of(name).is_some() {
                return Err(Error::Validation(format!(
                    "element `{name}` declared twice"
                )));
            }
            ground.intern(name)?;
        }
        Ok(ground)
    }

    /// Ground set with `n` elements named `a`, `b`, ... (`e0`, `e1`, ...
    /// beyond 26).
    pub fn alphabetic(n: usize) -> Self {
        let names = (0..n).map(|i| {
            if n <= 26 {
                ((b'a' + i as u8) as char).to_string()
            } else {
                format!("e{i}")
            }
        });
        Self::from_names(names).expect("generated names are distinct")
    }

    /// Returns the index of `name`, adding it if it is new.
    pub fn intern(&mut self, name: &str) -> Result<u32> {
        if let Some(&i) = self.index.get(name) {
            return Ok(i);
        }
        validate_name(name)?;
        let i = u32::try_from(self.names.len())
            .map_err(|_| Error::capacity("ground set size", u32::MAX as usize))?;
        self.names.push(name.to_owned());
        self.index.insert(name.to_owned(), i);
        Ok(i)
    }

    pub fn index_of(&self, name: &str) -> Option<u32> {
        self.index.get(name).copied()
    }

    /// Name of element `i`. Panics if `i` is out of range.
    pub fn name(&self, i: u32) -> &str {
        &self.names[i as usize]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// The set of all declared elements.
    pub fn full(&self) -> StateSet {
        StateSet::from_indices(0..self.len() as u32)
    }

    /// Looks up every name; unknown names are a usage error.
    pub fn set_of<S: AsRef<str>>(&self, names: &[S]) -> Result<StateSet> {
        names
            .iter()
            .map(|n| {
                let n = n.as_ref();
                self.index_of(n)
                    .ok_or_else(|| Error::Usage(format!("unknown element `{n}`")))
            })
            .collect()
    }

    pub fn contains_set(&self, set: &StateSet) -> bool {
        !set.max_index().is_some_and(|i| i as usize >= self.len())
    }

    /// Element names of `set` in index order.
    pub fn names_of<'a>(&'a self, set: &'a StateSet) -> impl Iterator<Item = &'a str> + 'a {
        set.iter().map(move |i| self.name(i))
    }

    /// Space separated names, or `{}` for the empty set.
    pub fn display(&self, set: &StateSet) -> String {
        if set.is_empty() {
            return "{}".to_owned();
        }
        self.names_of(set).collect::<Vec<_>>().join(" ")
    }
}

impl fmt::Debug for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.names).finish()
    }
}

fn validate_name(name: &str) -> Result<()> {
    if name.is_empty() {
        return Err(Error::Validation("element names must be non-empty".into()));
    }
    if name.chars().any(char::is_whitespace) {
        return Err(Error::Validation(format!(
            "element name `{name}` contains whitespace"
        )));
    }
    Ok(())
}
