//! Exact finite-field laboratory for degeneracy loci of two-term complexes.
//!
//! The crate is organised bottom-up:
//!
//! - [`exactlin`]: dense linear algebra over `F_p` and `Q`.
//! - [`complexkit`]: pointwise cohomology of two- and three-term complexes.
//! - [`determinantal`]: point counts of rank strata, Grassmannians and incidence
//!   varieties of the generic determinantal family, and dimension extraction by
//!   count-polynomial interpolation.
//! - [`adhm`]: framed ADHM data, stability, the universal complex, samplers and
//!   witness search.
//! - [`perverse`]: blow-up quiver data and the convention catalog.
//! - [`numerology`]: dimension formulas, non-emptiness criteria and blow-up
//!   class arithmetic.

pub mod adhm;
pub mod complexkit;
pub mod determinantal;
pub mod exactlin;
pub mod numerology;
pub mod perverse;
pub mod seed;
