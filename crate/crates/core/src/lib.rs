//! Exact polyhedral certificates for generic flexibility of affine cones
//! over (weak) del Pezzo surfaces.
//!
//! The crate is organized bottom-up:
//!
//! * [`picard`]: divisor classes, surface types, negative curves, contractions;
//! * [`cone`]: exact rational polyhedral cones;
//! * [`cylinder`]: cylinder constructions and their polarity cones;
//! * [`flex`]: collections, the subdivision cone catalog and the verdicts.

pub mod arith;
pub mod catalog;
pub mod cone;
pub mod cylinder;
pub mod error;
pub mod flex;
pub mod picard;

pub use cone::Cone;
pub use cylinder::{Construction, ConstructionKind, Cylinder, Transversality};
pub use error::{Error, Result};
pub use flex::{cone_representative, cone_types, ConeLabel, CylinderCollection};
pub use picard::{BubbleClass, Contraction, DegenerationData, DivisorClass, SurfaceFlags, SurfaceType};
