//! Free involutions, their quotients, twisted coefficients and the long
//! exact sequence of a double cover.

pub mod cover;
pub mod gysin;
pub mod local;
pub mod twisted;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use cover::{quotient_cover, FreeInvolutionComplex, QuotientCover, QuotientPair, TwistedIncidence};
pub use gysin::{
    cover_cochain_complex, cover_cohomology, gysin_sequence, pullback_check, splitting_check, verify_exactness, ExactnessReport, GroupComparison,
    GysinComplexes, GysinSegment,
};
pub use local::LocalSystem;
pub use twisted::{twisted_cochain_complex, twisted_cohomology, twisted_relative_cochain_complex, twisted_relative_cohomology};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CoefficientInvolution {
    PlusId,
    MinusId,
    Unknown,
}

/// The action of the antipodal map of `S^i` on `π_k(S^i)`, where known:
/// `+id` for odd `i`, `-id` for even `i` in the range `k ≤ 2i - 2`.
pub fn antipodal_coefficient_involution(i: u32, k: u32) -> Result<CoefficientInvolution> {
    if i == 0 {
        return Err(Error::InvalidArgument("sphere dimension must be positive".into()));
    }
    if k < i {
        return Err(Error::BelowSphereDimension { i, k });
    }
    Ok(if i % 2 == 1 {
        CoefficientInvolution::PlusId
    } else if k <= 2 * i - 2 {
        CoefficientInvolution::MinusId
    } else {
        CoefficientInvolution::Unknown
    })
}
