//! Exact combinatorial Floer theory of curves on flat surfaces.
//!
//! Everything is computed over `BigRational`: intersection points, polygon areas, holonomies and
//! Novikov exponents. Series are truncated at an explicit cutoff `Λ`.

pub mod arrangement;
pub mod construct;
pub mod curve;
pub mod deck;
pub mod error;
pub mod faces;
pub mod fixtures;
pub mod floer;
pub mod geom;
pub mod novikov;
pub mod polygons;
pub mod rat;
pub mod scene;
pub mod surface;
pub mod twisted;
pub mod winding;

pub use error::{Error, Result};
pub use geom::Pt;
pub use novikov::{Cutoff, Novikov};
pub use rat::Q;
pub use surface::FlatSurface;
