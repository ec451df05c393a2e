//! Seeded samplers for characters, window points, and grid functions.
//!
//! Characters near the identity are drawn by rejection: real exponents
//! from a square of halfwidth log(1 + 1/m), integer bases from a disk of
//! radius 1/m around 1, and membership decided by the sampled sup test.
//! Everything is generic over the caller's RNG so sweeps stay reproducible.

use alloc::vec::Vec;

use num_complex::Complex64;
// used by the no_std build; shadowed by std's inherent methods under test
#[allow(unused_imports)]
use num_traits::Float;
use rand::Rng;

use crate::character::{GenChar, TmSpec, Window, WindowBox};
use crate::convolution::CcFunction;
use crate::group::{GroupElement, GroupSpec};

/// Rejection-samples a character in the identity neighbourhood; `None`
/// when `max_attempts` draws all miss.
pub fn tm_character<R: Rng + ?Sized>(
    rng: &mut R,
    tm: &TmSpec,
    group: &GroupSpec,
    max_attempts: usize,
) -> Option<GenChar> {
    let inv_m = 1.0 / f64::from(tm.m());
    let z_half = (1.0 + inv_m).ln();
    for _ in 0..max_attempts {
        let z = (0..group.real_rank())
            .map(|_| {
                Complex64::new(
                    rng.gen_range(-z_half..=z_half),
                    rng.gen_range(-z_half..=z_half),
                )
            })
            .collect();
        let w = (0..group.int_rank())
            .map(|_| {
                let rho = rng.gen_range(0.0..inv_m);
                let theta = rng.gen_range(0.0..core::f64::consts::TAU);
                Complex64::new(1.0 + rho * theta.cos(), rho * theta.sin())
            })
            .collect();
        let residues = alloc::vec![0u32; group.cyclic_orders().len()];
        let candidate = match GenChar::new(group.clone(), z, w, residues) {
            Ok(c) => c,
            Err(_) => continue,
        };
        if tm.contains(&candidate).unwrap_or(false) {
            return Some(candidate);
        }
    }
    None
}

/// Uniform point of an equicontinuity window: reals uniform in the box,
/// integer steps in {−1,0,1} only when the window allows them, residues
/// uniform over the whole compact part.
pub fn window_point<R: Rng + ?Sized>(
    rng: &mut R,
    window: &Window,
    group: &GroupSpec,
) -> GroupElement {
    let reals: Vec<f64> = window
        .real_halfwidths()
        .iter()
        .map(|&u| rng.gen_range(-u..=u))
        .collect();
    let ints: Vec<i64> = (0..group.int_rank())
        .map(|_| {
            if window.int_steps_allowed() {
                rng.gen_range(-1..=1)
            } else {
                0
            }
        })
        .collect();
    let residues: Vec<i64> = group
        .cyclic_orders()
        .iter()
        .map(|&d| rng.gen_range(0..i64::from(d)))
        .collect();
    group
        .element(&reals, &ints, &residues)
        .expect("sampled coordinates match the spec")
}

/// Uniform point of an open exponent rectangle.
pub fn box_point<R: Rng + ?Sized>(rng: &mut R, bx: &WindowBox) -> Complex64 {
    Complex64::new(
        rng.gen_range(-bx.re_halfwidth..bx.re_halfwidth),
        rng.gen_range(-bx.im_halfwidth..bx.im_halfwidth),
    )
}

/// Character with exponents in a |Re| × |Im| rectangle, bases with modulus
/// in the given range, and uniform dual residues.
pub fn bounded_character<R: Rng + ?Sized>(
    rng: &mut R,
    group: &GroupSpec,
    re_max: f64,
    im_max: f64,
    w_abs: (f64, f64),
) -> GenChar {
    let z = (0..group.real_rank())
        .map(|_| {
            Complex64::new(
                rng.gen_range(-re_max..=re_max),
                rng.gen_range(-im_max..=im_max),
            )
        })
        .collect();
    let w = (0..group.int_rank())
        .map(|_| {
            let abs = rng.gen_range(w_abs.0..=w_abs.1);
            let theta = rng.gen_range(0.0..core::f64::consts::TAU);
            Complex64::from_polar(abs, theta)
        })
        .collect();
    let residues = group
        .cyclic_orders()
        .iter()
        .map(|&d| rng.gen_range(0..d))
        .collect();
    GenChar::new(group.clone(), z, w, residues).expect("sampled parameters are valid")
}

fn complex_in_unit_square<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0))
}

/// Random function on ℤ with support length in 1..=max_len and offset in
/// the given range; values uniform in the complex unit square.
pub fn discrete_function<R: Rng + ?Sized>(
    rng: &mut R,
    max_len: usize,
    offsets: core::ops::RangeInclusive<i64>,
) -> CcFunction {
    let len = rng.gen_range(1..=max_len);
    let offset = rng.gen_range(offsets);
    let values = (0..len).map(|_| complex_in_unit_square(rng)).collect();
    CcFunction::new(
        GroupSpec::new(0, 1, alloc::vec![]).expect("valid spec"),
        alloc::vec![],
        alloc::vec![],
        alloc::vec![offset],
        alloc::vec![len],
        values,
    )
    .expect("sampled shape is consistent")
}

/// Random function on the ℝ grid with the given step, support length in
/// 2..=max_len, and offset in the given range.
pub fn real_grid_function<R: Rng + ?Sized>(
    rng: &mut R,
    step: f64,
    max_len: usize,
    offsets: core::ops::RangeInclusive<i64>,
) -> CcFunction {
    let len = rng.gen_range(2..=max_len);
    let offset = rng.gen_range(offsets);
    let values = (0..len).map(|_| complex_in_unit_square(rng)).collect();
    CcFunction::from_real_samples(step, offset, values).expect("sampled shape is consistent")
}
