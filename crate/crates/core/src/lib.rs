//! Coordinate tensor algebra: dense index objects with variance and weight,
//! Kronecker and Levi-Civita symbols, determinants, an Einstein-summation
//! expression engine, change-of-frame laws, metric operations and a small
//! Minkowski toolkit.
//!
//! ```
//! use tensorcalc::{einsum, TensorObject, Variance};
//! use std::collections::BTreeMap;
//!
//! let mut b = BTreeMap::new();
//! b.insert("a".to_string(), TensorObject::vector(Variance::Down, &[1.0, 2.0, 3.0]).unwrap());
//! b.insert("x".to_string(), TensorObject::vector(Variance::Up, &[1.0, 1.0, 1.0]).unwrap());
//! let s = einsum::evaluate("s = a_r x^r", &b, einsum::Mode::Strict).unwrap();
//! assert_eq!(s.components(), &[6.0]);
//! ```

#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod determinants;
pub mod document;
pub mod einsum;
pub mod error;
pub mod exercises;
pub mod frames;
pub mod metric;
pub mod minkowski;
pub mod random;
pub mod symbols;
pub mod tensor;

pub use error::{DocumentError, Error, Result, TensorError};
pub use frames::{frame_from_matrix, transform, Frame};
pub use metric::Metric;
pub use tensor::{Symmetry, TensorObject, Variance};
