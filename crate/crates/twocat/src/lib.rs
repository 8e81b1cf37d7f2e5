//! Toolkit for finite strict (2,1)-categories.
//!
//! The crate stores 2-categories as complete finite tables and works with
//! them by enumeration:
//!
//! * [`category`] defines the tabulated data model, strict 2-functors and
//!   the opposite-category involution;
//! * [`validate`] checks every law by brute force;
//! * [`slice`] builds slice 2-categories under an object through a functor;
//! * [`homotopy`] implements zig-zag paths, their elementary moves, the
//!   edge-path presentation of the fundamental group, a Smith-normal-form
//!   abelianization certificate, Tietze simplification, and a bounded
//!   rewrite-search oracle;
//! * [`finality`] decides the slice criterion for 2-finality three-valuedly;
//! * [`fincat`] and [`cones`] realize diagrams of finite 1-categories and
//!   the cone-transport constructions over them;
//! * [`gen`] produces seeded random categories;
//! * [`cli`] parses the text formats and drives the command-line interface.

pub mod category;
pub mod cli;
pub mod cones;
pub mod finality;
pub mod fincat;
pub mod fixtures;
pub mod gen;
pub mod homotopy;
pub mod slice;
pub mod validate;

pub use category::{CategoryData, FunctorData, ObjId, OneId, TwoCategory, TwoFunctor, TwoId};
pub use validate::{validate_two_category, validate_two_functor, ValidationReport, Violation};
