//! Affine characters of closed surface groups.
//!
//! The crate covers the genus-g surface group and its words, characters
//! `α: Γ → ℂ*`, twisted cocycles and their cohomology, the action of
//! separating Dehn twists on that cohomology, random-walk experiments on the
//! resulting groups, and Haupt's realizability test for period characters.

pub mod characters;
pub mod dehn_twist;
pub mod dynamics;
pub mod error;
pub mod haupt;
pub mod linalg;
pub mod rng;
pub mod surface_group;
pub mod twisted_cohomology;

pub use error::{Error, Result};
