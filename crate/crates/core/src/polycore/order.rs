use std::collections::HashMap;

use serde::{Deserialize, Serialize};

/// Map between user variable names and internal indices. Internal index 0 is
/// the grevlex-smallest variable; `names[i]` is the user name of index `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VariableOrder {
    names: Vec<String>,
}

impl VariableOrder {
    /// `x1 ≺ x2 ≺ … ≺ xn`, named `x1..xn`.
    pub fn identity(n: usize) -> Self {
        VariableOrder { names: (1..=n).map(|i| format!("x{i}")).collect() }
    }

    /// Build from names listed smallest first. Fails on duplicates.
    pub fn from_ascending(names: Vec<String>) -> Result<Self, String> {
        let mut seen = HashMap::new();
        for (i, name) in names.iter().enumerate() {
            if seen.insert(name.clone(), i).is_some() {
                return Err(format!("variable '{name}' listed twice"));
            }
        }
        Ok(VariableOrder { names })
    }

    /// Build from names listed largest first (the `a > b > c` form).
    pub fn from_descending(mut names: Vec<String>) -> Result<Self, String> {
        names.reverse();
        Self::from_ascending(names)
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, internal: usize) -> &str {
        &self.names[internal]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}
