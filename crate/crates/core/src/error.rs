use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("degenerate point at u = {u:?}: volume density {density:e}")]
    DegeneratePoint { u: [f64; 3], density: f64 },

    #[error("field degenerate at u = {u:?}: projected norm {norm:e}")]
    FieldDegenerate { u: [f64; 3], norm: f64 },

    #[error("finite-difference stencil leaves the parameter box along axis {axis} at u = {u:?}")]
    StencilOutOfDomain { u: [f64; 3], axis: usize },

    #[error("degree estimates disagree: integral formula gives {eta2}, Gauss-Kronecker gives {gauss_kronecker}")]
    DegreeMismatch { eta2: i64, gauss_kronecker: i64 },
}

pub type Result<T> = std::result::Result<T, Error>;
