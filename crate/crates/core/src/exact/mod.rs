//! Exact scalars, Laurent monomials and polynomials over Z^n, integer
//! matrices and lattice normal forms. Substrate for everything else.

pub mod scalar;
pub mod monomial;
pub mod laurent;
pub mod intmat;
pub mod qmat;
