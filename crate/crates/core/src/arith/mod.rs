//! Exact arithmetic: rationals, ℚ(√D), projective points, Laurent
//! polynomials and truncated series. All values are immutable and `Send + Sync`.

mod field;
mod laurent;
pub mod modp;
mod proj;
mod quad;
mod rat;
mod trunc;

pub use field::Field;
pub use laurent::{LaurentPoly, Monomial};
pub use proj::ProjPoint;
pub use quad::{quad_field_solve, QuadExt, QuadField};
pub use rat::Rat;
pub use trunc::{series_mul, SeriesJson, SeriesTerm, TruncSeries};
