//! Exact computation of extended weight monoids of spherical homogeneous
//! spaces `G/P` from their homogeneous spherical data, together with
//! chi-well enumeration and an independent branching oracle.
//!
//! Everything is exact rational arithmetic. The crate is `no_std` and only
//! needs an allocator.
//!
//! ```
//! use ewm_core::rootlat::{RootSystem, Weight};
//!
//! let g2 = RootSystem::parse("G2").unwrap();
//! let w1 = Weight::fundamental_int(&[1, 0]);
//! assert_eq!(g2.weyl_dimension(&w1).unwrap(), 7u32.into());
//! ```
#![no_std]
#![warn(missing_docs)]

extern crate alloc;

use alloc::string::String;

pub mod cones;
pub mod ewm;
pub mod linalg;
pub mod lp;
pub mod morph;
pub mod oracle;
pub mod rootlat;
pub mod sphdata;
pub mod well;

pub use linalg::Q;

/// Errors raised by the library.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Unknown Dynkin type or invalid rank.
    #[error("invalid root system `{0}`")]
    InvalidRootSystem(String),
    /// A simple-root index is out of range.
    #[error("index {index} out of range for rank {rank}")]
    IndexOutOfRange {
        /// Offending index.
        index: usize,
        /// Rank of the root system.
        rank: usize,
    },
    /// Vectors or matrices of incompatible sizes.
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    /// A weight was required to be dominant integral.
    #[error("weight is not dominant integral")]
    NotDominantIntegral,
    /// A color id that is not part of the datum.
    #[error("unknown color `{0}`")]
    UnknownColor(String),
    /// The oracle refuses root systems above its rank cap.
    #[error("rank {rank} exceeds the oracle cap {cap}")]
    RankCap {
        /// Requested rank.
        rank: usize,
        /// Configured cap.
        cap: usize,
    },
    /// A documented precondition does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// `sigma = sum_D c(D, sigma) omega_D` fails.
    #[error("first-component identity fails for spherical root #{0}")]
    FirstComponent(usize),
    /// The Cartan pairing restricted to the parabolic subset has too small a rank.
    #[error("Cartan pairing on the parabolic subset has rank {rank}, expected {expected}")]
    RankDeficient {
        /// Computed rank.
        rank: usize,
        /// Size of the subset.
        expected: usize,
    },
    /// The linear system for the unknown characters has no solution.
    #[error("character system is inconsistent at spherical root #{0}")]
    Inconsistent(usize),
    /// A boundary color violates the single-root requirement.
    #[error("boundary color `{0}`: {1}")]
    Boundary(String, String),
    /// A weight multiplicity dropped below zero during branching.
    #[error("negative multiplicity while branching at {0}")]
    NegativeMultiplicity(String),
    /// The bottom criterion and the raw definition disagree.
    #[error("bottom criterion disagrees with the definition at {0}")]
    BottomDisagreement(String),
    /// A weight is not in the requested chi-well.
    #[error("weight is not in the well")]
    NotInWell,
}
