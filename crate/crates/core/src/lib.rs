//! Exact computations with twisted complexes over finite graded-category
//! presentations: ℙ-twists, spherical twists and categorical entropy.
//!
//! All linear algebra is exact over ℚ or a prime field. Entropy estimates
//! take logs of exactly computed dimensions.

pub mod cli;
pub mod complex;
pub mod entropy;
pub mod error;
pub mod exec;
pub mod linalg;
pub mod model;
pub mod presentation;
pub mod report;
pub mod sample;
pub mod twists;

pub use error::{Error, Result};
