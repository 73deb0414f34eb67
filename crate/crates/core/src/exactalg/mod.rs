//! Exact algebra substrate: sparse integer Laurent polynomials, univariate
//! rational-function arithmetic, integer lattice membership, and strict
//! linear-inequality feasibility. No floating point anywhere.

mod feasibility;
mod lattice;
mod laurent;
mod ratfun;

pub use feasibility::{strict_feasibility, Feasibility};
pub use lattice::LatticeBasis;
pub use laurent::{dot, LaurentPolynomial};
pub use ratfun::RationalFunction;
