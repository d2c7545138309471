// SPDX-License-Identifier: Apache-2.0
//! Level-1 perfect crystals, their path realizations and Young wall models for
//! six affine families, with an explicit isomorphism between the two models.

pub mod cartan;
pub mod correspondence;
pub mod crystal;
pub mod error;
pub mod path;
pub mod perfect;
pub mod wall;

pub use error::Error;
