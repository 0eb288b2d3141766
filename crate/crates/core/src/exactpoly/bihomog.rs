use super::poly::Polynomial;
use super::ring::Ring;
use crate::error::{Error, Result};

/// A polynomial over a union ring `t ∪ X` that is homogeneous of degree
/// `deg_t` in the parameter variables and `deg_x` in the target variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiHomogeneousPoly {
    poly: Polynomial,
    t_vars: Vec<usize>,
    x_vars: Vec<usize>,
    deg_t: u32,
    deg_x: u32,
}

impl BiHomogeneousPoly {
    /// Checks bi-homogeneity. `t` and `x` name disjoint subrings of the
    /// polynomial's ring.
    pub fn new(poly: Polynomial, t: &Ring, x: &Ring, deg_t: u32, deg_x: u32) -> Result<Self> {
        let ring = poly.ring().clone();
        let index = |r: &Ring| -> Result<Vec<usize>> {
            r.vars()
                .iter()
                .map(|v| ring.index_of(v).ok_or_else(|| Error::Ring(format!("{v} not in {ring}"))))
                .collect()
        };
        let t_vars = index(t)?;
        let x_vars = index(x)?;
        if t_vars.iter().any(|i| x_vars.contains(i)) {
            return Err(Error::Ring("parameter and target variables overlap".into()));
        }
        if t_vars.len() + x_vars.len() != ring.len() {
            return Err(Error::Ring(format!("{ring} has variables outside {t} and {x}")));
        }
        if !poly.is_homogeneous_in(&t_vars, deg_t) || !poly.is_homogeneous_in(&x_vars, deg_x) {
            return Err(Error::Degree(format!("not bi-homogeneous of bidegree ({deg_t}, {deg_x})")));
        }
        Ok(BiHomogeneousPoly { poly, t_vars, x_vars, deg_t, deg_x })
    }

    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    pub fn into_poly(self) -> Polynomial {
        self.poly
    }

    pub fn deg_t(&self) -> u32 {
        self.deg_t
    }

    pub fn deg_x(&self) -> u32 {
        self.deg_x
    }

    pub fn t_vars(&self) -> &[usize] {
        &self.t_vars
    }

    pub fn x_vars(&self) -> &[usize] {
        &self.x_vars
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }
}
