//! Exact multivariate polynomials over the rationals.

pub mod bihomog;
pub mod gcd;
pub mod monomial;
pub mod poly;
pub mod ring;
pub mod text;

pub use bihomog::BiHomogeneousPoly;
pub use gcd::{gcd, gcd_all, lcm};
pub use monomial::{binomial, monomials_of_degree, monomials_up_to_degree, Monomial};
pub use poly::{rat, ratio, Polynomial, Rational};
pub use ring::{rings, Ring};
pub use text::{parse, parse_at, print, ParseError};
