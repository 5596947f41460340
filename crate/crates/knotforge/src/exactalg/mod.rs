//! Exact commutative algebra: sparse multivariate polynomials over Q,
//! Laurent polynomials, gcds and resultants, factorization over Q in one
//! and two variables, Sturm chains, and exact integer linear algebra.

pub mod densepoly;
pub mod factor;
pub mod gcd;
pub mod laurent;
pub mod linalg;
pub mod modp;
pub mod multipoly;
pub mod sturm;

pub use factor::{factor_bivariate, factor_univariate, squarefree_decomposition, Factorization};
pub use gcd::{
    content_wrt, gcd_multi, primitive_part_wrt, pseudo_divrem, resultant, resultant_sylvester,
    squarefree_part_wrt,
};
pub use laurent::LaurentPoly;
pub use linalg::{nullity_mod_p, primitive_integer_vector, rational_nullspace};
pub use multipoly::{MultiPoly, Rational};
pub use sturm::{has_nonreal_root, real_root_count, real_root_count_poly};
