use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::MAX_VARS;

/// Variable names of a polynomial ring over the rationals.
///
/// A ring may carry a block split: the first `n` variables are base
/// coordinates `x1..xn` and the last `n` their cotangent partners
/// `a1..an`, which is the commutative graded ring of the Weyl algebra.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    names: Vec<String>,
    split: Option<usize>,
}

impl Ring {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Arc<Ring>> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        Self::validate(&names)?;
        Ok(Arc::new(Ring { names, split: None }))
    }

    fn validate(names: &[String]) -> Result<()> {
        if names.len() > MAX_VARS {
            return Err(Error::TooManyVariables(names.len()));
        }
        let mut seen = HashSet::new();
        for n in names {
            if n.is_empty() || !is_identifier(n) {
                return Err(Error::InvalidRing(format!("`{n}` is not a valid variable name")));
            }
            if !seen.insert(n.as_str()) {
                return Err(Error::InvalidRing(format!("duplicate variable `{n}`")));
            }
        }
        Ok(())
    }

    /// The ring `R[a1..an]` over a base ring `R` without split.
    ///
    /// Cotangent names are `a1..an`, or `ai_` style variants when a base
    /// variable already uses that spelling.
    pub fn cotangent(base: &Ring) -> Result<Arc<Ring>> {
        if base.split.is_some() {
            return Err(Error::InvalidRing("ring is already split".into()));
        }
        let n = base.names.len();
        let taken: HashSet<&str> = base.names.iter().map(String::as_str).collect();
        let mut prefix = String::from("a");
        while (1..=n).any(|i| taken.contains(format!("{prefix}{i}").as_str())) {
            prefix.push('a');
        }
        let mut names = base.names.clone();
        names.extend((1..=n).map(|i| format!("{prefix}{i}")));
        Self::validate(&names)?;
        Ok(Arc::new(Ring {
            names,
            split: Some(n),
        }))
    }

    /// A split ring with explicitly named cotangent variables.
    pub fn split<S: AsRef<str>>(base: &[S], cotangent: &[S]) -> Result<Arc<Ring>> {
        if base.len() != cotangent.len() {
            return Err(Error::InvalidRing("blocks must have equal size".into()));
        }
        let mut names: Vec<String> = base.iter().map(|s| s.as_ref().to_string()).collect();
        names.extend(cotangent.iter().map(|s| s.as_ref().to_string()));
        Self::validate(&names)?;
        Ok(Arc::new(Ring {
            names,
            split: Some(base.len()),
        }))
    }

    /// This ring with extra variables appended (split information dropped).
    /// Fresh names are made unique against the existing ones.
    pub fn extend(&self, extra: &[&str]) -> Result<Arc<Ring>> {
        let mut names = self.names.clone();
        for e in extra {
            let mut name = e.to_string();
            while names.contains(&name) {
                name.push('_');
            }
            names.push(name);
        }
        Self::validate(&names)?;
        Ok(Arc::new(Ring { names, split: None }))
    }

    /// The base ring `R` of a split ring.
    pub fn base(&self) -> Result<Arc<Ring>> {
        let n = self.split.ok_or(Error::NotSplit)?;
        Ok(Arc::new(Ring {
            names: self.names[..n].to_vec(),
            split: None,
        }))
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
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

    /// Number of base variables when split.
    pub fn split_size(&self) -> Option<usize> {
        self.split
    }

    pub fn base_vars(&self) -> Result<std::ops::Range<usize>> {
        let n = self.split.ok_or(Error::NotSplit)?;
        Ok(0..n)
    }

    pub fn cotangent_vars(&self) -> Result<std::ops::Range<usize>> {
        let n = self.split.ok_or(Error::NotSplit)?;
        Ok(n..2 * n)
    }
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring[{}]", self.names.join(","))?;
        if let Some(n) = self.split {
            write!(f, "/split {n}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QQ[{}]", self.names.join(", "))
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Two ring handles describe the same ring.
pub(crate) fn same_ring(a: &Arc<Ring>, b: &Arc<Ring>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates_and_bad_names() {
        assert!(Ring::new(&["x", "x"]).is_err());
        assert!(Ring::new(&["1x"]).is_err());
        assert!(Ring::new(&["x", "y_2"]).is_ok());
    }

    #[test]
    fn cotangent_names_avoid_collisions() {
        let r = Ring::new(&["x", "y", "z"]).unwrap();
        let t = Ring::cotangent(&r).unwrap();
        assert_eq!(t.names(), &["x", "y", "z", "a1", "a2", "a3"]);
        assert_eq!(t.split_size(), Some(3));

        let r = Ring::new(&["a1", "b"]).unwrap();
        let t = Ring::cotangent(&r).unwrap();
        assert_eq!(&t.names()[2..], &["aa1", "aa2"]);
    }

    #[test]
    fn split_requires_equal_blocks() {
        assert!(Ring::split(&["x", "y"], &["a"]).is_err());
        let t = Ring::split(&["x"], &["a"]).unwrap();
        assert_eq!(t.base().unwrap().names(), &["x"]);
    }
}
