//! The Picard lattice of the plane blown up at up to eight points: divisor
//! classes, surface types with their negative curves, contractions to the
//! plane, and bubble classes.

mod bubble;
mod class;
mod contraction;
mod surface;

pub use bubble::BubbleClass;
pub use class::{exceptional_vectors, pairing, DivisorClass};
pub use contraction::{Contraction, DEFAULT_CONTRACTION_LIMIT};
pub use surface::{DegenerationData, SurfaceFlags, SurfaceType};

pub(crate) use surface::sorted_classes;
