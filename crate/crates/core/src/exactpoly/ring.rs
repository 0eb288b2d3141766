use std::fmt;
use std::sync::Arc;

/// An ordered list of variable names. The order is the term order's
/// variable precedence: the first variable is the most significant.
#[derive(Clone, Eq)]
pub struct Ring(Arc<[String]>);

impl Ring {
    pub fn new<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        debug_assert!(
            names.iter().enumerate().all(|(i, n)| !names[..i].contains(n)),
            "duplicate variable in ring"
        );
        Ring(names.into())
    }

    pub fn vars(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|v| v == name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index_of(name).is_some()
    }

    /// `self` followed by the variables of `other` that `self` lacks.
    pub fn union(&self, other: &Ring) -> Ring {
        let mut names: Vec<String> = self.0.to_vec();
        for v in other.vars() {
            if !names.contains(v) {
                names.push(v.clone());
            }
        }
        Ring(names.into())
    }

    pub fn without(&self, name: &str) -> Ring {
        Ring(self.0.iter().filter(|v| *v != name).cloned().collect::<Vec<_>>().into())
    }

    pub fn with_appended(&self, name: &str) -> Ring {
        if self.contains(name) {
            return self.clone();
        }
        let mut names = self.0.to_vec();
        names.push(name.to_string());
        Ring(names.into())
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl std::hash::Hash for Ring {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.hash(state);
    }
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[{}]", self.0.join(","))
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Standard rings used throughout the crate.
pub mod rings {
    use super::Ring;

    pub fn t() -> Ring {
        Ring::new(["t1", "t2", "t3"])
    }

    pub fn t_affine() -> Ring {
        Ring::new(["t1", "t2"])
    }

    pub fn x() -> Ring {
        Ring::new(["X1", "X2", "X3", "X4"])
    }

    pub fn x_affine() -> Ring {
        Ring::new(["X1", "X2", "X3"])
    }

    /// Union ring for moving surfaces: `t1,t2,t3,X1,..,X4`.
    pub fn tx() -> Ring {
        t().union(&x())
    }

    pub fn curve_param() -> Ring {
        Ring::new(["t"])
    }

    pub fn curve_xy() -> Ring {
        Ring::new(["x", "y"])
    }
}
