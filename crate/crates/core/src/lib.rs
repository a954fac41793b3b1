//! Finite groups with an involutory anti-automorphism `τ`: twisted
//! square-root counts, twisted Frobenius–Schur indicators, simple
//! reducibility tests and Gelfand-pair criteria.
//!
//! ```
//! use taumackey::characters::{compute_character_table, twisted_fs_indicators};
//! use taumackey::group::{construct_family, FamilySpec, DEFAULT_CAP};
//! use taumackey::morphisms::tau_inverse;
//! use taumackey::CharacterTable64;
//!
//! let g = construct_family(&FamilySpec::Quaternion8, DEFAULT_CAP)?;
//! let table: CharacterTable64 = compute_character_table(&g)?;
//! let c = twisted_fs_indicators(&table, &tau_inverse(&g))?;
//! assert_eq!(c.values, vec![1, 1, 1, 1, -1]);
//! # Ok::<(), taumackey::Error>(())
//! ```

pub mod error;
pub mod group;
pub mod characters;
pub mod conjugacy;
pub mod criteria;
pub mod gelfand;
pub mod morphisms;
pub mod scalar;

pub use error::{Error, Result};
pub use group::{ElementId, GroupTable};
pub use morphisms::{GroupMap, MapKind};
pub use scalar::Scalar;

pub type ClassFunction64 = characters::ClassFunction<f64>;
pub type ClassFunction32 = characters::ClassFunction<f32>;
pub type CharacterTable64 = characters::CharacterTable<f64>;
pub type CharacterTable32 = characters::CharacterTable<f32>;
pub type SphericalFunctions64 = gelfand::SphericalFunctions<f64>;
