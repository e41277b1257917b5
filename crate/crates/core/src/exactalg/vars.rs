use std::collections::HashMap;
use std::sync::Arc;

use super::AlgError;

/// Ordered list of variable names. Index order is the canonical order used by
/// every matrix whose rows or columns are indexed by variables. Indices are
/// 0-based in the API and 1-based in serialized reports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarTable {
    names: Arc<Vec<String>>,
}

impl VarTable {
    pub fn new<I, S>(names: I) -> Result<Self, AlgError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut seen = HashMap::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            if seen.insert(n.as_str(), i).is_some() {
                return Err(AlgError::DuplicateVar(n.clone()));
            }
        }
        Ok(VarTable {
            names: Arc::new(names),
        })
    }

    /// `prefix1, …, prefixN`.
    pub fn numbered(prefix: &str, n: usize) -> Self {
        VarTable::new((1..=n).map(|i| format!("{prefix}{i}"))).expect("numbered names are unique")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Concatenation `self ++ other`; fails on a name collision.
    pub fn concat(&self, other: &VarTable) -> Result<VarTable, AlgError> {
        VarTable::new(self.names.iter().chain(other.names.iter()).cloned())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicate_names_rejected() {
        assert_eq!(
            VarTable::new(["a", "b", "a"]),
            Err(AlgError::DuplicateVar("a".into()))
        );
    }

    #[test]
    fn concat_and_lookup() {
        let a = VarTable::numbered("x", 2);
        let b = VarTable::numbered("d", 2);
        let c = a.concat(&b).unwrap();
        assert_eq!(c.names(), ["x1", "x2", "d1", "d2"]);
        assert_eq!(c.index_of("d1"), Some(2));
        assert!(a.concat(&a).is_err());
    }
}
