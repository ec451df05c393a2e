//! Error type shared by all modules.

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("cyclic order {0} is below 2")]
    InvalidOrder(u32),
    #[error("generating-box halfwidths must be positive")]
    InvalidHalfwidth,
    #[error("m = {0} must exceed 1")]
    InvalidM(u32),
    #[error("epsilon {0} out of range")]
    InvalidEpsilon(f64),
    #[error("delta {0} out of range")]
    InvalidDelta(f64),
    #[error("eps = {eps} not in (0, 1/{m})")]
    EpsilonOutOfRange { eps: f64, m: u32 },
    #[error("sample count {0} too small")]
    InvalidSampleCount(usize),
    #[error("window span must be at least 1")]
    InvalidSpan,
    #[error("grid step must be positive")]
    InvalidStep,
    #[error("weight rate must be positive")]
    InvalidRate,
    #[error("value table length does not match the declared extents")]
    ShapeMismatch,
    #[error("function support is empty")]
    EmptySupport,
    #[error("operands belong to different group specs")]
    SpecMismatch,
    #[error("grid steps differ between operands")]
    StepMismatch,
    #[error("translation is not a multiple of the grid step")]
    GridMisaligned,
    #[error("character parameter w must be nonzero")]
    ZeroWParameter,
    #[error("character is not in the requested neighborhood of the identity")]
    NotInTm,
    #[error("no escape within power cap at z = {0}")]
    NoEscapeWithinCap(Complex64),
    #[error("Dirac elements exist only on fully discrete groups")]
    DiracOnContinuousFactor,
    #[error("functional vanishes on the probe function")]
    ZeroDenominator,
    #[error("logarithm branch is ambiguous for the sampled ratio")]
    BranchAmbiguity,
    #[error("recovered character lacks the required unit-step samples")]
    MissingSamples,
    #[error("gelfand ball needs at least one probe function")]
    EmptyProbeSet,
    #[error("evaluation point lies outside the strip")]
    OutsideStrip,
    #[error("divergence witness requires a point outside the strip")]
    InsideStrip,
}
