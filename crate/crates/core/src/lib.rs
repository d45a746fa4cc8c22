//! Equivariant motivic zeta functions of invariant Nash germs.
//!
//! Given equivariant resolution data (divisors with their multiplicities,
//! a finite group permuting them, and the equivariant virtual Poincaré
//! series of the strata), [`zeta`] evaluates the naive and signed zeta
//! functions in closed form, expands them as power series in `T` and
//! compares them. [`arc_oracle`] recomputes the series of monomial germs
//! directly from truncated arc spaces, and [`cohomology`] rebuilds the
//! catalogued series of spheres and circles from group cohomology.

pub mod arc_oracle;
pub mod cohomology;
pub mod evps;
pub mod ratpoly;
pub mod resolution;
pub mod zeta;

pub use evps::{beta_eval, Atom, GSpaceExpr};
pub use ratpoly::{BiPolyUT, IntPolyU, RationalFunctionU, TSeriesU, ZetaRational};
pub use resolution::{catalog_get, ResolutionData};
pub use zeta::{dl_naive, dl_signed, zeta_eq, zeta_expand, ZetaVariant};
