//! The exponential Poisson-Lindley (EPL) lifetime distribution.
//!
//! `EPL(β, θ)` is the law of `X = min(Z_1, …, Z_N)` where the `Z_i` are
//! i.i.d. exponential with rate `β` and `N` follows a zero-truncated
//! Poisson-Lindley distribution with parameter `θ`. The crate provides
//!
//! * the distribution itself ([`dist`]): density, distribution and survival
//!   functions, hazard, quantile, sampling and mean residual life;
//! * moments, order statistics and extreme-value simulation ([`moments`]);
//! * Rényi entropy by series and by quadrature ([`entropy`]);
//! * log-likelihood, score, Fisher information and maximum-likelihood
//!   fitting ([`estimation`]);
//! * the competing lifetime families used for model comparison
//!   ([`competitors`]) and a Kolmogorov–Smirnov harness ([`gof`]).
//!
//! The crate is `no_std` and needs only `alloc`.
//!
//! ```
//! use epl_core::EplParams;
//!
//! let p = EplParams::new(1.0, 0.5).unwrap();
//! let x = p.quantile(0.5).unwrap();
//! assert!((p.cdf(x).unwrap() - 0.5).abs() < 1e-12);
//! ```
#![no_std]

extern crate alloc;

pub mod competitors;
pub mod datasets;
pub mod dist;
pub mod entropy;
mod error;
pub mod estimation;
pub mod gof;
pub mod linalg;
pub mod moments;
pub mod optim;
pub mod quadrature;
pub mod rng;
pub mod roots;
pub mod series;
pub mod special;

pub use dist::{DataSet, EplParams};
pub use error::{Error, Result};
pub use series::{SeriesConfig, Truncation};
