// SPDX-License-Identifier: Apache-2.0
//! Error type shared by the library modules.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid affine type: {0}")]
    InvalidType(String),
    #[error("weight {weight} is not a level-1 dominant weight of {ty}")]
    NotLevelOne { ty: String, weight: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid wall: {0}")]
    InvalidWall(String),
    #[error("wall is not reduced: {0}")]
    NotReduced(String),
    #[error("graphs are not comparable: {0}")]
    Incomparable(String),
}
