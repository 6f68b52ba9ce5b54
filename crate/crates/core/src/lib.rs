//! Crystals of type D_n: Kashiwara–Nakashima tableaux, the spinor model,
//! separation into a parabolic Verma crystal, and Lusztig data.

pub mod cli;
pub mod crystal_core;
pub mod error;
pub mod foundations;
pub mod kn_model;
pub mod kn_spinor_iso;
pub mod lusztig;
pub mod oracle;
pub mod separation;
pub mod spinor_model;
pub mod verify;

pub use error::{CrystalError, Result};
