//! Computable pieces of harmonic analysis on compactly generated LCA groups.
//!
//! Groups are modeled as ℝ^m × ℤ^n × K with K a finite product of cyclic
//! groups. On top of that sit generalized characters G → ℂ∖{0} with their
//! pointwise-product group law, the convolution algebra of compactly
//! supported grid functions with its Gel'fand transform, a constructive
//! power-escape bound with a brute-force annulus oracle, recovery of a
//! character from a multiplicative functional, and exponential Beurling
//! weights with their strip spectra.
//!
//! Haar measure convention throughout: Lebesgue on real factors (cell
//! weight = grid step), counting measure on ℤ factors and on K. This makes
//! δ₀ the convolution unit on discrete groups and keeps the algebraic
//! identities exact at the discrete level.
//!
//! The crate is `no_std` (with `alloc`); all values are immutable after
//! construction and every operation is pure.
//!
//! ```
//! use lcachar_core::{Complex64, EscapeCertificate, GenChar, GroupSpec};
//!
//! // escape bound for scale 1/2 at distance 0.4, checked against the oracle
//! let cert = EscapeCertificate::compute(2, 0.4)?;
//! assert_eq!(cert.bound(), 3);
//! assert!(cert.verify(90, 20)?.holds);
//!
//! // a character on Z x Z_4, evaluated at a point
//! let spec = GroupSpec::new(0, 1, vec![4])?;
//! let alpha = GenChar::new(spec.clone(), vec![], vec![Complex64::new(2.0, 0.0)], vec![1])?;
//! let t = spec.element(&[], &[3], &[1])?;
//! let v = alpha.evaluate(&t)?; // 2^3 * i
//! assert!((v - Complex64::new(0.0, 8.0)).norm() < 1e-12);
//! # Ok::<(), lcachar_core::Error>(())
//! ```

#![cfg_attr(not(test), no_std)]
// `!(x > 0.0)` guards reject NaN along with nonpositive values
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod beurling;
pub mod character;
pub mod convolution;
pub mod error;
pub mod escape;
pub mod group;
mod grid;
pub mod recovery;
pub mod sample;

pub use beurling::{ExpWeight, StripRegion};
pub use character::{GenChar, TmSpec, Window, WindowBox};
pub use convolution::CcFunction;
pub use error::Error;
pub use escape::EscapeCertificate;
pub use group::{GeneratingBox, GroupElement, GroupSpec};
pub use num_complex::Complex64;
pub use recovery::{CharacterFunctional, MultiplicativeFunctional, RecoveredCharacter};

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

#[cfg(test)]
mod thread_safety {
    use super::*;

    fn assert_send_sync<T: Send + Sync>() {}

    // every value is immutable after construction, so sweeps may share
    // them across threads
    #[test]
    fn core_types_are_send_and_sync() {
        assert_send_sync::<GroupSpec>();
        assert_send_sync::<GroupElement>();
        assert_send_sync::<GeneratingBox>();
        assert_send_sync::<GenChar>();
        assert_send_sync::<TmSpec>();
        assert_send_sync::<CcFunction>();
        assert_send_sync::<EscapeCertificate>();
        assert_send_sync::<RecoveredCharacter>();
        assert_send_sync::<ExpWeight>();
        assert_send_sync::<StripRegion>();
    }
}
