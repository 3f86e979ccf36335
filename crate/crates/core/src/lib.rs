//! Computations with tame representations of continuous type-A quivers:
//! interval decomposition, projectives and injectives, minimal projective
//! presentations, Hom and Ext dimensions, and Auslander-Reiten sequences.

pub mod ar;
pub mod decompose;
pub mod error;
pub mod homological;
pub mod interval;
pub mod json;
pub mod linalg;
pub mod morphism;
pub mod number;
pub mod orientation;
pub mod tamerep;

pub use ar::{ar_ending_at, ar_starting_at, verify_almost_split, ARAnswer, ARSequence};
pub use decompose::{decompose, is_indecomposable, iso, multiplicity};
pub use error::{Error, Result};
pub use homological::{
    classify_injective, classify_projective, ext_dim, hom_dim, is_projective_rep, proj_presentation, Family, Form,
    Label, ProjPresentation,
};
pub use interval::{BarMultiset, Interval};
pub use linalg::{Field, Matrix, Scalar};
pub use morphism::{hom_basis, hom_space_dim, Morphism};
pub use number::{ExtReal, Rational};
pub use orientation::{Direction, Kind, Orientation, Segment};
pub use tamerep::{Junction, MapDir, TameRep};
