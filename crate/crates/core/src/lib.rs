//! Finite abstract polytopes: validation, flag graphs, automorphism and
//! orbit analysis, hereditary predicates, constructions, and a group
//! presentation pipeline.

pub mod catalog;
pub mod constructions;
pub mod error;
pub mod flag;
pub mod hereditary;
pub mod io;
pub mod limits;
pub mod poset;
pub mod presentation;
pub mod symmetry;
pub mod verify;

pub use error::{IoError, PolytopeError, PresentationError};
pub use flag::{Flag, FlagGraph};
pub use hereditary::{HereditaryReport, SectionContext};
pub use limits::Limits;
pub use poset::{DescribeMode, FacePoset, FaceRef, Section, SectionSpec, ValidationReport};
pub use presentation::{CosetTable, GroupPresentation, Kind, PermutationGroup};
pub use symmetry::{AutomorphismGroup, OrbitClassification, TransitivityMode, Verdict};
