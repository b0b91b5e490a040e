//! Exact arithmetic: prime fields, bivariate polynomials, truncated series
//! and their two iterated-Laurent embeddings.

pub mod bipoly;
pub mod factored;
pub mod fp;
pub mod iterated;
pub mod parse;
pub mod qpoly;
pub mod series;

pub use bipoly::BiPoly;
pub use factored::{parse_factored, Factor, FactoredBi};
pub use fp::{check_prime, is_prime, Coeff, FqElem};
pub use iterated::{embed, embed_poly, valuation, IterView, Order};
pub use parse::parse_bipoly;
pub use qpoly::QPoly;
pub use series::{TruncSeries, Var, EXACT_PREC};
