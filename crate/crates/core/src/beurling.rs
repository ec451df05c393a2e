//! Exponential Beurling weights and their strip spectra.
//!
//! The weight ω_r(s) = exp(r·Σ|x_j|) over the real coordinates (discrete
//! factors weigh 1) dominates |exp(z·x)| exactly when |Re z| ≤ r, so the
//! Gel'fand transform of f at such exponents is bounded by the weighted
//! norm ‖f‖_ω. Outside the strip the ratio |f̂(z)|/‖f‖_ω is unbounded,
//! which [`divergence_witness`] exhibits with translated bumps.

use alloc::vec::Vec;

use num_complex::Complex64;
// used by the no_std build; shadowed by std's inherent methods under test
#[allow(unused_imports)]
use num_traits::Float;

use crate::character::GenChar;
use crate::convolution::CcFunction;
use crate::error::Error;
use crate::group::GroupElement;
use crate::Result;

/// Slack added to the bound side of the strip inequalities so that sums
/// agreeing up to rounding still compare cleanly.
pub const STRIP_SLACK: f64 = 1e-12;

/// ω_r(s) = exp(r · Σ |real coordinates|).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpWeight {
    rate: f64,
}

impl ExpWeight {
    pub fn new(rate: f64) -> Result<Self> {
        if !(rate > 0.0) {
            return Err(Error::InvalidRate);
        }
        Ok(Self { rate })
    }

    pub fn rate(&self) -> f64 {
        self.rate
    }

    pub fn eval(&self, t: &GroupElement) -> f64 {
        let abs_sum: f64 = t.real_coords().iter().map(|x| x.abs()).sum();
        (self.rate * abs_sum).exp()
    }

    fn eval_reals(&self, reals: &[f64]) -> f64 {
        let abs_sum: f64 = reals.iter().map(|x| x.abs()).sum();
        (self.rate * abs_sum).exp()
    }
}

/// The closed vertical strip |Re z| ≤ r.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StripRegion {
    halfwidth: f64,
}

impl StripRegion {
    pub fn new(halfwidth: f64) -> Result<Self> {
        if !(halfwidth > 0.0) {
            return Err(Error::InvalidRate);
        }
        Ok(Self { halfwidth })
    }

    pub fn halfwidth(&self) -> f64 {
        self.halfwidth
    }

    pub fn contains(&self, z: Complex64) -> bool {
        z.re.abs() <= self.halfwidth
    }
}

/// Σ |f(s)| ω(s) · cell weight. Always at least the plain L¹ norm, with
/// equality when the support sits at real coordinate zero.
pub fn weighted_norm(f: &CcFunction, w: &ExpWeight) -> f64 {
    let mut sum = 0.0f64;
    for (el, v) in f.points() {
        sum += v.norm() * w.eval_reals(el.real_coords());
    }
    sum * f.cell_weight()
}

fn exp_character(f: &CcFunction, z: Complex64) -> Result<GenChar> {
    GenChar::exp_on_first_real(f.group().clone(), z)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StripBoundReport {
    pub transform_abs: f64,
    pub norm: f64,
    pub in_strip: bool,
    pub ok: bool,
}

/// Checks |f̂(z)| ≤ ‖f‖_ω for the exponent z on the first real factor.
/// Outside the strip the inequality is not claimed and `ok` stays true.
pub fn strip_bound_check(f: &CcFunction, z: Complex64, rate: f64) -> Result<StripBoundReport> {
    let strip = StripRegion::new(rate)?;
    let weight = ExpWeight::new(rate)?;
    let alpha = exp_character(f, z)?;
    let transform_abs = f.gelfand_transform(&alpha)?.norm();
    let norm = weighted_norm(f, &weight);
    let in_strip = strip.contains(z);
    Ok(StripBoundReport {
        transform_abs,
        norm,
        in_strip,
        ok: !in_strip || transform_abs <= norm + STRIP_SLACK,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApproxBoundReport {
    pub lhs: f64,
    pub rhs: f64,
    pub ok: bool,
}

/// The dense-approximation inequality |f̂(z) − ĝ(z)| ≤ ‖f − g‖_ω for z in
/// the strip. The left side uses two independent transform evaluations,
/// the right side the pointwise difference.
pub fn approx_transform_bound(
    f: &CcFunction,
    g: &CcFunction,
    z: Complex64,
    rate: f64,
) -> Result<ApproxBoundReport> {
    let strip = StripRegion::new(rate)?;
    if !strip.contains(z) {
        return Err(Error::OutsideStrip);
    }
    let weight = ExpWeight::new(rate)?;
    let alpha = exp_character(f, z)?;
    let fa = f.gelfand_transform(&alpha)?;
    let ga = g.gelfand_transform(&alpha)?;
    let lhs = (fa - ga).norm();
    let rhs = weighted_norm(&f.sub(g)?, &weight);
    Ok(ApproxBoundReport {
        lhs,
        rhs,
        ok: lhs <= rhs + STRIP_SLACK,
    })
}

/// One translated bump in a divergence witness.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WitnessStep {
    pub center: f64,
    pub transform_abs: f64,
    pub weighted_norm: f64,
    pub ratio: f64,
}

/// For |Re z| > r the transform-to-norm ratio is unbounded: translating a
/// fixed bump toward the growth direction multiplies the ratio by
/// exp((|Re z| − r)·shift) per step. Returns the per-bump records.
pub fn divergence_witness(
    z: Complex64,
    rate: f64,
    bumps: usize,
    step: f64,
    shift: f64,
) -> Result<Vec<WitnessStep>> {
    let strip = StripRegion::new(rate)?;
    if strip.contains(z) {
        return Err(Error::InsideStrip);
    }
    if bumps < 2 {
        return Err(Error::InvalidSampleCount(bumps));
    }
    if !(step > 0.0 && shift > 0.0) {
        return Err(Error::InvalidStep);
    }
    let weight = ExpWeight::new(rate)?;
    let bump = CcFunction::tent(step, 1.0)?;
    let alpha = exp_character(&bump, z)?;
    let direction = if z.re >= 0.0 { 1.0 } else { -1.0 };
    let shift_steps = (shift / step).round().max(1.0);

    let mut out = Vec::with_capacity(bumps);
    for k in 0..bumps {
        let center = direction * shift_steps * k as f64 * step;
        let t = bump.group().element(&[center], &[], &[])?;
        let moved = bump.translate(&t)?;
        let transform_abs = moved.gelfand_transform(&alpha)?.norm();
        let norm = weighted_norm(&moved, &weight);
        out.push(WitnessStep {
            center,
            transform_abs,
            weighted_norm: norm,
            ratio: transform_abs / norm,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;

    #[test]
    fn weight_is_one_at_zero() {
        let z = GroupSpec::new(0, 1, vec![]).unwrap();
        let w = ExpWeight::new(2.0).unwrap();
        let d0 = CcFunction::delta(&z, &z.zero()).unwrap();
        assert_eq!(weighted_norm(&d0, &w), 1.0);
    }

    #[test]
    fn weighted_norm_of_box_matches_integral() {
        // ∫_{-1}^{1} e^{|s|} ds = 2(e - 1)
        let bx = CcFunction::box_indicator(1e-3, -1.0, 1.0).unwrap();
        let w = ExpWeight::new(1.0).unwrap();
        let got = weighted_norm(&bx, &w);
        let want = 2.0 * (1.0f64.exp() - 1.0);
        assert!((got - want).abs() <= 1e-3, "{got} vs {want}");
        assert!(got >= bx.l1_norm());
    }

    #[test]
    fn weighted_norm_of_zero_function() {
        let f =
            CcFunction::from_real_samples(0.1, 0, vec![Complex64::new(0.0, 0.0); 5]).unwrap();
        let w = ExpWeight::new(1.0).unwrap();
        assert_eq!(weighted_norm(&f, &w), 0.0);
    }

    #[test]
    fn strip_membership_examples() {
        let strip = StripRegion::new(1.0).unwrap();
        assert!(strip.contains(Complex64::new(0.0, 10.0)));
        assert!(!strip.contains(Complex64::new(1.0001, 0.0)));
        assert!(strip.contains(Complex64::new(-1.0, 0.0)));
    }

    #[test]
    fn strip_bound_on_box() {
        let bx = CcFunction::box_indicator(1e-3, -1.0, 1.0).unwrap();
        let report = strip_bound_check(&bx, Complex64::new(1.0, 0.0), 1.0).unwrap();
        assert!(report.in_strip);
        assert!(report.ok);
        assert!((report.transform_abs - 2.0 * 1.0f64.sinh()).abs() <= 5e-3);
        assert!((report.norm - 2.0 * (1.0f64.exp() - 1.0)).abs() <= 1e-3);
    }

    #[test]
    fn strip_bound_at_fourier_point() {
        let bx = CcFunction::box_indicator(0.01, -1.0, 1.0).unwrap();
        let report = strip_bound_check(&bx, Complex64::new(0.0, 0.0), 1.0).unwrap();
        assert!(report.ok);
        assert!(report.transform_abs <= bx.l1_norm() + STRIP_SLACK);
    }

    #[test]
    fn strip_bound_makes_no_claim_outside() {
        let bx = CcFunction::box_indicator(0.01, -1.0, 1.0).unwrap();
        let report = strip_bound_check(&bx, Complex64::new(5.0, 0.0), 1.0).unwrap();
        assert!(!report.in_strip);
        assert!(report.ok);
    }

    #[test]
    fn approx_bound_examples() {
        let f = CcFunction::tent(0.01, 1.0).unwrap();
        let report =
            approx_transform_bound(&f, &f, Complex64::new(0.5, 0.0), 1.0).unwrap();
        assert_eq!(report.lhs, 0.0);
        assert!(report.ok);

        // g = f plus a small bump
        let bump = CcFunction::box_indicator(0.01, 0.2, 0.4).unwrap();
        let g = f.sub(&bump).unwrap();
        let report = approx_transform_bound(&f, &g, Complex64::new(0.5, 0.0), 1.0).unwrap();
        assert!(report.ok);
        assert!(report.lhs < report.rhs);

        // g = 2f at z = 0 reduces to |f̂(0)| ≤ ‖f‖_ω
        let doubled = CcFunction::from_real_samples(
            0.01,
            f.real_offset()[0],
            f.values().iter().map(|v| v * 2.0).collect(),
        )
        .unwrap();
        let report = approx_transform_bound(&f, &doubled, Complex64::new(0.0, 0.0), 1.0).unwrap();
        assert!(report.ok);

        assert_eq!(
            approx_transform_bound(&f, &f, Complex64::new(2.0, 0.0), 1.0).unwrap_err(),
            Error::OutsideStrip
        );
    }

    #[test]
    fn divergence_witness_grows() {
        let steps = divergence_witness(Complex64::new(1.5, 0.0), 1.0, 5, 0.01, 5.0).unwrap();
        assert_eq!(steps.len(), 5);
        for pair in steps.windows(2) {
            assert!(pair[1].ratio > 10.0 * pair[0].ratio);
        }
        assert_eq!(
            divergence_witness(Complex64::new(0.5, 0.0), 1.0, 5, 0.01, 5.0).unwrap_err(),
            Error::InsideStrip
        );
    }
}
