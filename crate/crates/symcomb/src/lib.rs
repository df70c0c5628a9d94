//! Exact combinatorial commutative algebra at desk scale: simplicial
//! complexes and matroids, symbolic powers of cover ideals, basic covers,
//! polarization, Betti numbers, algebras of minors and Gröbner deformations.

pub mod cli;
pub mod covers;
pub mod groebner;
pub mod homalg;
pub mod minors;
pub mod monomial;
pub mod polar;
pub mod simplicial;
