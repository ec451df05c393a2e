//! Generalized characters G → ℂ∖{0} and their neighbourhood geometry.
//!
//! A character is parametrized by one complex exponent per real factor
//! (value exp(z·x)), one nonzero complex base per ℤ factor (value w^k),
//! and one dual residue per cyclic factor (value a d-th root of unity).
//! The pointwise product of values corresponds to componentwise addition
//! of exponents, multiplication of bases, and addition of residues.

use alloc::vec;
use alloc::vec::Vec;

use core::f64::consts::TAU;
// used by the no_std build; shadowed by std's inherent methods under test
#[allow(unused_imports)]
use num_traits::Float;
use num_complex::Complex64;

use crate::error::Error;
use crate::escape::EscapeCertificate;
use crate::grid::{for_each_index, linspace};
use crate::group::{word_length, GeneratingBox, GroupElement, GroupSpec};
use crate::Result;

/// Default number of sample points per real axis when estimating the sup of
/// |α(s) − 1| over a generating box.
pub const DEFAULT_SUP_SAMPLES: usize = 1024;

/// A generalized character, stored through its parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct GenChar {
    spec: GroupSpec,
    z: Vec<Complex64>,
    w: Vec<Complex64>,
    dual_residues: Vec<u32>,
}

impl GenChar {
    /// Builds a character; parameter counts must match the spec, every w
    /// must be nonzero, and dual residues are reduced mod d_i.
    pub fn new(
        spec: GroupSpec,
        z: Vec<Complex64>,
        w: Vec<Complex64>,
        dual_residues: Vec<u32>,
    ) -> Result<Self> {
        if z.len() != spec.real_rank()
            || w.len() != spec.int_rank()
            || dual_residues.len() != spec.cyclic_orders().len()
        {
            return Err(Error::SpecMismatch);
        }
        if w.iter().any(|wj| wj.norm() == 0.0) {
            return Err(Error::ZeroWParameter);
        }
        let dual_residues = dual_residues
            .iter()
            .zip(spec.cyclic_orders())
            .map(|(&c, &d)| c % d)
            .collect();
        Ok(Self {
            spec,
            z,
            w,
            dual_residues,
        })
    }

    /// The trivial character (constant 1).
    pub fn identity(spec: GroupSpec) -> Self {
        let z = vec![Complex64::new(0.0, 0.0); spec.real_rank()];
        let w = vec![Complex64::new(1.0, 0.0); spec.int_rank()];
        let c = vec![0; spec.cyclic_orders().len()];
        Self {
            spec,
            z,
            w,
            dual_residues: c,
        }
    }

    /// exp(z·x₁) on the first real factor, trivial on every other factor.
    /// Used by transform and strip sweeps over an exponent rectangle.
    pub fn exp_on_first_real(spec: GroupSpec, z: Complex64) -> Result<Self> {
        if spec.real_rank() == 0 {
            return Err(Error::SpecMismatch);
        }
        let mut alpha = Self::identity(spec);
        alpha.z[0] = z;
        Ok(alpha)
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn z(&self) -> &[Complex64] {
        &self.z
    }

    pub fn w(&self) -> &[Complex64] {
        &self.w
    }

    pub fn dual_residues(&self) -> &[u32] {
        &self.dual_residues
    }

    pub(crate) fn evaluate_parts(
        &self,
        reals: &[f64],
        ints: &[i64],
        residues: &[u32],
    ) -> Complex64 {
        let mut acc = Complex64::new(1.0, 0.0);
        for (zj, &xj) in self.z.iter().zip(reals) {
            acc *= (zj * xj).exp();
        }
        for (wj, &kj) in self.w.iter().zip(ints) {
            acc *= powi64(*wj, kj);
        }
        for ((&cj, &rj), &dj) in self
            .dual_residues
            .iter()
            .zip(residues)
            .zip(self.spec.cyclic_orders())
        {
            let turn = (u64::from(cj) * u64::from(rj)) % u64::from(dj);
            acc *= Complex64::from_polar(1.0, TAU * turn as f64 / f64::from(dj));
        }
        acc
    }

    /// α(t) = exp(Σ z_j x_j) · ∏ w_j^{k_j} · ∏ exp(2πi c_i r_i / d_i).
    pub fn evaluate(&self, t: &GroupElement) -> Result<Complex64> {
        if *t.spec() != self.spec {
            return Err(Error::SpecMismatch);
        }
        Ok(self.evaluate_parts(t.real_coords(), t.int_coords(), t.residues()))
    }

    /// Pointwise product of characters: z + z′, w·w′, c + c′ mod d.
    pub fn combine(&self, other: &GenChar) -> Result<GenChar> {
        if self.spec != other.spec {
            return Err(Error::SpecMismatch);
        }
        let z = self.z.iter().zip(&other.z).map(|(a, b)| a + b).collect();
        let w = self.w.iter().zip(&other.w).map(|(a, b)| a * b).collect();
        let c = self
            .dual_residues
            .iter()
            .zip(&other.dual_residues)
            .zip(self.spec.cyclic_orders())
            .map(|((&a, &b), &d)| (a + b) % d)
            .collect();
        Ok(GenChar {
            spec: self.spec.clone(),
            z,
            w,
            dual_residues: c,
        })
    }

    /// Pointwise inverse: −z, 1/w, −c mod d.
    pub fn invert(&self) -> GenChar {
        let z = self.z.iter().map(|zj| -zj).collect();
        let w = self.w.iter().map(|wj| wj.inv()).collect();
        let c = self
            .dual_residues
            .iter()
            .zip(self.spec.cyclic_orders())
            .map(|(&cj, &d)| (d - cj) % d)
            .collect();
        GenChar {
            spec: self.spec.clone(),
            z,
            w,
            dual_residues: c,
        }
    }

    /// True when the character maps into the unit circle up to `tol`:
    /// every |Re z_j| ≤ tol and every ||w_j| − 1| ≤ tol. Cyclic factors
    /// always contribute unit-modulus values. Expects `tol ≥ 0`.
    pub fn is_unitary(&self, tol: f64) -> bool {
        self.z.iter().all(|zj| zj.re.abs() <= tol)
            && self.w.iter().all(|wj| (wj.norm() - 1.0).abs() <= tol)
    }
}

/// w^k by binary exponentiation, with negative exponents through inversion.
fn powi64(base: Complex64, exp: i64) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0);
    let mut sq = base;
    let mut e = exp.unsigned_abs();
    while e > 0 {
        if e & 1 == 1 {
            acc *= sq;
        }
        e >>= 1;
        if e > 0 {
            sq *= sq;
        }
    }
    if exp < 0 {
        acc.inv()
    } else {
        acc
    }
}

/// All characters of the finite group ∏ ℤ_{d_i}: one per dual-residue
/// tuple, listed row-major with the last factor fastest.
pub fn enumerate_characters(orders: &[u32]) -> Result<Vec<GenChar>> {
    let spec = GroupSpec::new(0, 0, orders.to_vec())?;
    let dims: Vec<usize> = orders.iter().map(|&d| d as usize).collect();
    let mut out = Vec::with_capacity(dims.iter().product());
    for_each_index(&dims, |idx| {
        let c = idx.iter().map(|&i| i as u32).collect();
        out.push(GenChar {
            spec: spec.clone(),
            z: Vec::new(),
            w: Vec::new(),
            dual_residues: c,
        });
    });
    Ok(out)
}

/// The neighbourhood of the trivial character at scale 1/m: characters
/// mapping the closed generating box into the open disk |z − 1| < 1/m.
///
/// The sup over the box is estimated by sampling: `sup_samples` points per
/// real axis (endpoints included), exact endpoints on ℤ factors, and the
/// whole compact part.
#[derive(Debug, Clone, PartialEq)]
pub struct TmSpec {
    m: u32,
    bx: GeneratingBox,
    sup_samples: usize,
}

impl TmSpec {
    pub fn new(m: u32, bx: GeneratingBox, sup_samples: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidM(m));
        }
        if sup_samples < 2 {
            return Err(Error::InvalidSampleCount(sup_samples));
        }
        Ok(Self {
            m,
            bx,
            sup_samples,
        })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn generating_box(&self) -> &GeneratingBox {
        &self.bx
    }

    pub fn sup_samples(&self) -> usize {
        self.sup_samples
    }

    /// Sampled sup of |α(s) − 1| over the closed generating box.
    pub fn sup_distance_from_one(&self, alpha: &GenChar) -> Result<f64> {
        let spec = alpha.spec();
        if self.bx.real_halfwidths().len() != spec.real_rank() {
            return Err(Error::SpecMismatch);
        }
        let m = spec.real_rank();
        let n = spec.int_rank();
        let orders = spec.cyclic_orders();

        let real_axes: Vec<Vec<f64>> = self
            .bx
            .real_halfwidths()
            .iter()
            .map(|&u| linspace(-u, u, self.sup_samples))
            .collect();
        let mut dims: Vec<usize> = vec![self.sup_samples; m];
        dims.extend(core::iter::repeat_n(3, n));
        dims.extend(orders.iter().map(|&d| d as usize));

        let mut reals = vec![0.0f64; m];
        let mut ints = vec![0i64; n];
        let mut residues = vec![0u32; orders.len()];
        let mut sup = 0.0f64;
        for_each_index(&dims, |idx| {
            for j in 0..m {
                reals[j] = real_axes[j][idx[j]];
            }
            for j in 0..n {
                ints[j] = idx[m + j] as i64 - 1;
            }
            for i in 0..orders.len() {
                residues[i] = idx[m + n + i] as u32;
            }
            let v = alpha.evaluate_parts(&reals, &ints, &residues);
            sup = sup.max((v - 1.0).norm());
        });
        Ok(sup)
    }

    /// Membership test, strict per the open target disk.
    pub fn contains(&self, alpha: &GenChar) -> Result<bool> {
        self.contains_with_margin(alpha, 0.0)
    }

    /// Membership with an extra safety margin subtracted from 1/m.
    pub fn contains_with_margin(&self, alpha: &GenChar, margin: f64) -> Result<bool> {
        let sup = self.sup_distance_from_one(alpha)?;
        Ok(sup < 1.0 / f64::from(self.m) - margin)
    }

    /// Word-length growth sandwich (1 − 1/m)^p ≤ |α(t)| ≤ (1 + 1/m)^p for
    /// members of the neighbourhood, with p the word length of t.
    pub fn growth_bounds(&self, alpha: &GenChar, t: &GroupElement) -> Result<GrowthBounds> {
        if !self.contains(alpha)? {
            return Err(Error::NotInTm);
        }
        let p = word_length(t, &self.bx)?;
        let inv_m = 1.0 / f64::from(self.m);
        Ok(GrowthBounds {
            lower: (1.0 - inv_m).powi(p as i32),
            upper: (1.0 + inv_m).powi(p as i32),
            value_abs: alpha.evaluate(t)?.norm(),
            word_len: p,
        })
    }

    /// A neighbourhood W of 0 on which every member of the neighbourhood
    /// stays ε-close to 1. For ε ≥ 1/m the generating box itself works;
    /// otherwise the box is shrunk by the escape bound N, and nonzero ℤ
    /// steps are excluded because a unit step cannot be subdivided. The
    /// compact part is kept whole: its multiples never leave the box.
    pub fn equicontinuity_window(&self, eps: f64) -> Result<Window> {
        if !(eps > 0.0) {
            return Err(Error::InvalidEpsilon(eps));
        }
        if eps >= 1.0 / f64::from(self.m) {
            return Ok(Window {
                real_halfwidths: self.bx.real_halfwidths().to_vec(),
                int_steps_allowed: true,
            });
        }
        let cert = EscapeCertificate::compute(self.m, eps)?;
        let n = cert.bound();
        let real_halfwidths = self
            .bx
            .real_halfwidths()
            .iter()
            .map(|&u| u / n as f64)
            .collect();
        Ok(Window {
            real_halfwidths,
            int_steps_allowed: n <= 1,
        })
    }
}

/// Result of a growth-sandwich evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthBounds {
    pub lower: f64,
    pub upper: f64,
    pub value_abs: f64,
    pub word_len: u64,
}

/// An equicontinuity window: a shrunken box on the real factors, the zero
/// step (or ±1 when allowed) on ℤ factors, and the whole compact part.
#[derive(Debug, Clone, PartialEq)]
pub struct Window {
    real_halfwidths: Vec<f64>,
    int_steps_allowed: bool,
}

impl Window {
    pub fn real_halfwidths(&self) -> &[f64] {
        &self.real_halfwidths
    }

    pub fn int_steps_allowed(&self) -> bool {
        self.int_steps_allowed
    }

    pub fn contains(&self, t: &GroupElement) -> bool {
        if t.real_coords().len() != self.real_halfwidths.len() {
            return false;
        }
        let reals_ok = t
            .real_coords()
            .iter()
            .zip(&self.real_halfwidths)
            .all(|(x, u)| x.abs() <= *u);
        let ints_ok = t.int_coords().iter().all(|&k| {
            if self.int_steps_allowed {
                k.unsigned_abs() <= 1
            } else {
                k == 0
            }
        });
        reals_ok && ints_ok
    }
}

/// Open rectangle in the exponent plane, |Re z| < re, |Im z| < im.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindowBox {
    pub re_halfwidth: f64,
    pub im_halfwidth: f64,
}

impl WindowBox {
    pub fn new(re_halfwidth: f64, im_halfwidth: f64) -> Result<Self> {
        if !(re_halfwidth > 0.0 && im_halfwidth > 0.0) {
            return Err(Error::InvalidHalfwidth);
        }
        Ok(Self {
            re_halfwidth,
            im_halfwidth,
        })
    }

    pub fn contains(&self, z: Complex64) -> bool {
        z.re.abs() < self.re_halfwidth && z.im.abs() < self.im_halfwidth
    }
}

/// Sampled membership in the window of exponents z whose character stays
/// ε-close to 1 on [−span, span]: max over a `samples`-point grid of
/// |exp(z·x) − 1| must stay below ε.
pub fn exp_window_member(z: Complex64, span: u32, eps: f64, samples: usize) -> Result<bool> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidEpsilon(eps));
    }
    if span < 1 {
        return Err(Error::InvalidSpan);
    }
    if samples < 3 {
        return Err(Error::InvalidSampleCount(samples));
    }
    let n = f64::from(span);
    let max = linspace(-n, n, samples)
        .into_iter()
        .map(|x| ((z * x).exp() - 1.0).norm())
        .fold(0.0f64, f64::max);
    Ok(max < eps)
}

/// Outer bound for the exponent window: |Re z| < log(1+ε)/span always, and
/// an imaginary bound that depends on |Re z| through [`Self::im_halfwidth_at`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpWindowOuter {
    pub span: u32,
    pub eps: f64,
    pub re_halfwidth: f64,
}

impl ExpWindowOuter {
    /// The |Re z|-dependent imaginary halfwidth, arccos(u)/span with
    /// u = (exp(−2|Re z|·span) + 1 − ε²) / (2·exp(|Re z|·span)).
    ///
    /// This is looser than the exact constraint from the window's endpoint
    /// evaluations, so it remains a valid outer bound; the sampling test
    /// [`exp_window_member`] stays authoritative where they disagree.
    pub fn im_halfwidth_at(&self, re_abs: f64) -> f64 {
        let n = f64::from(self.span);
        let u = ((-2.0 * re_abs * n).exp() + 1.0 - self.eps * self.eps)
            / (2.0 * (re_abs * n).exp());
        u.clamp(-1.0, 1.0).acos() / n
    }
}

/// The outer bound and the inner box (log(1+δ/2)/span, δ/2) of the
/// exponent window for the given span.
pub fn exp_window_boxes(span: u32, eps: f64, delta: f64) -> Result<(ExpWindowOuter, WindowBox)> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidEpsilon(eps));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidDelta(delta));
    }
    if span < 1 {
        return Err(Error::InvalidSpan);
    }
    let n = f64::from(span);
    let outer = ExpWindowOuter {
        span,
        eps,
        re_halfwidth: (1.0 + eps).ln() / n,
    };
    let inner = WindowBox::new((1.0 + delta / 2.0).ln() / n, delta / 2.0)?;
    Ok((outer, inner))
}
