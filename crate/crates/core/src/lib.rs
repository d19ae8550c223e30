//! Supercharacter theories for algebra group extensions `G = L ⋉ U` over
//! prime fields, with the parabolic-subgroup specialization.

pub mod actions;
pub mod algebra;
pub mod budget;
pub mod error;
pub mod export;
pub mod group;
pub mod linalg;
pub mod parabolic;
pub mod scalars;
pub mod supertheory;

pub use budget::Budget;
pub use error::{Error, Result};
