//! Ordered name → value records exchanged with the environment.

use indexmap::IndexMap;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Ordered mapping from dimension name to value. Names are unique and keep
/// their insertion order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct DataVector<S> {
    entries: IndexMap<String, S>,
}

impl<S: Scalar> DataVector<S> {
    pub fn new() -> Self {
        Self {
            entries: IndexMap::new(),
        }
    }

    pub fn from_pairs<K: Into<String>>(pairs: impl IntoIterator<Item = (K, S)>) -> Result<Self> {
        let mut vector = Self::new();
        for (key, value) in pairs {
            vector.push(key, value)?;
        }
        Ok(vector)
    }

    /// Appends a new dimension.
    pub fn push(&mut self, key: impl Into<String>, value: S) -> Result<()> {
        let key = key.into();
        if self.entries.contains_key(&key) {
            return Err(Error::DuplicateDimension(key));
        }
        self.entries.insert(key, value);
        Ok(())
    }

    pub fn keys(&self) -> impl ExactSizeIterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    pub fn value(&self, key: &str) -> Result<S> {
        self.entries
            .get(key)
            .copied()
            .ok_or_else(|| Error::UnknownDimension(key.to_owned()))
    }

    /// Overwrites an existing dimension.
    pub fn set_value(&mut self, key: &str, value: S) -> Result<()> {
        match self.entries.get_mut(key) {
            Some(slot) => {
                *slot = value;
                Ok(())
            }
            None => Err(Error::UnknownDimension(key.to_owned())),
        }
    }

    pub fn values(&self) -> Vec<S> {
        self.entries.values().copied().collect()
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = (&str, S)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn contains(&self, key: &str) -> bool {
        self.entries.contains_key(key)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Copies the named dimensions, in the given order, into a new vector.
    pub fn project(&self, keys: &[&str]) -> Result<Self> {
        Self::from_pairs(
            keys.iter()
                .map(|&k| self.value(k).map(|v| (k, v)))
                .collect::<Result<Vec<_>>>()?,
        )
    }
}
