//! Recovery of a generalized character from a multiplicative functional.
//!
//! Given φ with φ(f*g) = φ(f)φ(g) and a probe f with φ(f) ≠ 0, the ratio
//! φ(τ_s f)/φ(f) is a character value at s, independent of the probe. On
//! fully discrete groups the Dirac shortcut φ(δ_s) gives the same values
//! directly. Recovered samples can then be fitted back to parameters.
//!
//! Functionals are presented as an evaluation oracle so that callers can
//! wrap exact transforms, perturbed ones, or adversarial maps; the probe
//! pair check [`multiplicativity_defect`] is the testable rendering of the
//! multiplicativity assumption.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
// used by the no_std build; shadowed by std's inherent methods under test
#[allow(unused_imports)]
use num_traits::Float;

use crate::character::GenChar;
use crate::convolution::CcFunction;
use crate::error::Error;
use crate::group::{GroupElement, GroupSpec};
use crate::Result;

/// Default threshold below which a functional value counts as vanishing;
/// recovery refuses to divide by anything smaller.
pub const DEFAULT_DENOM_TOL: f64 = 1e-9;

/// Evaluation oracle for a multiplicative functional on the convolution
/// algebra. Implementations must be pure.
pub trait MultiplicativeFunctional {
    fn group(&self) -> &GroupSpec;
    fn eval(&self, f: &CcFunction) -> Result<Complex64>;
}

/// The functional f ↦ f̂(α) attached to a character.
#[derive(Debug, Clone, PartialEq)]
pub struct CharacterFunctional {
    alpha: GenChar,
}

impl CharacterFunctional {
    pub fn new(alpha: GenChar) -> Self {
        Self { alpha }
    }

    pub fn character(&self) -> &GenChar {
        &self.alpha
    }
}

impl MultiplicativeFunctional for CharacterFunctional {
    fn group(&self) -> &GroupSpec {
        self.alpha.spec()
    }

    fn eval(&self, f: &CcFunction) -> Result<Complex64> {
        f.gelfand_transform(&self.alpha)
    }
}

/// Max relative defect |φ(f*g) − φ(f)φ(g)| / (1 + |φ(f)||φ(g)|) over the
/// probe pairs.
pub fn multiplicativity_defect<F: MultiplicativeFunctional + ?Sized>(
    phi: &F,
    pairs: &[(CcFunction, CcFunction)],
) -> Result<f64> {
    let mut worst = 0.0f64;
    for (f, g) in pairs {
        let pf = phi.eval(f)?;
        let pg = phi.eval(g)?;
        let pfg = phi.eval(&f.convolve(g)?)?;
        let defect = (pfg - pf * pg).norm() / (1.0 + pf.norm() * pg.norm());
        worst = worst.max(defect);
    }
    Ok(worst)
}

/// Character samples recovered from a functional, with the worst
/// homomorphism defect over all sampled sums that stay inside the sample
/// set.
#[derive(Debug, Clone, PartialEq)]
pub struct RecoveredCharacter {
    points: Vec<GroupElement>,
    values: Vec<Complex64>,
    residual: f64,
}

impl RecoveredCharacter {
    pub fn points(&self) -> &[GroupElement] {
        &self.points
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn residual(&self) -> f64 {
        self.residual
    }
}

/// α(s) = φ(τ_s f)/φ(f) over the sample points. Refuses when |φ(f)| is at
/// or below `denom_tol`.
pub fn recover_character<F: MultiplicativeFunctional + ?Sized>(
    phi: &F,
    probe: &CcFunction,
    points: &[GroupElement],
    denom_tol: f64,
) -> Result<RecoveredCharacter> {
    let denom = phi.eval(probe)?;
    if denom.norm() <= denom_tol {
        return Err(Error::ZeroDenominator);
    }
    let mut values = Vec::with_capacity(points.len());
    for s in points {
        let shifted = probe.translate(s)?;
        values.push(phi.eval(&shifted)? / denom);
    }
    let residual = homomorphism_residual(points, &values, probe.real_step());
    Ok(RecoveredCharacter {
        points: points.to_vec(),
        values,
        residual,
    })
}

/// Max over the sample points of |φ(τ_s f)/φ(f) − φ(τ_s g)/φ(g)|.
pub fn independence_check<F: MultiplicativeFunctional + ?Sized>(
    phi: &F,
    f: &CcFunction,
    g: &CcFunction,
    points: &[GroupElement],
    denom_tol: f64,
) -> Result<f64> {
    let pf = phi.eval(f)?;
    let pg = phi.eval(g)?;
    if pf.norm() <= denom_tol || pg.norm() <= denom_tol {
        return Err(Error::ZeroDenominator);
    }
    let mut worst = 0.0f64;
    for s in points {
        let rf = phi.eval(&f.translate(s)?)? / pf;
        let rg = phi.eval(&g.translate(s)?)? / pg;
        worst = worst.max((rf - rg).norm());
    }
    Ok(worst)
}

/// Dirac shortcut on fully discrete groups: values are φ(δ_s) directly.
pub fn discrete_recover<F: MultiplicativeFunctional + ?Sized>(
    phi: &F,
    points: &[GroupElement],
) -> Result<RecoveredCharacter> {
    let group = phi.group().clone();
    if !group.is_discrete() {
        return Err(Error::DiracOnContinuousFactor);
    }
    let mut values = Vec::with_capacity(points.len());
    for s in points {
        let d = CcFunction::delta(&group, s)?;
        values.push(phi.eval(&d)?);
    }
    let residual = homomorphism_residual(points, &values, &[]);
    Ok(RecoveredCharacter {
        points: points.to_vec(),
        values,
        residual,
    })
}

/// Reads parameters back from recovered samples: the exponent per real
/// factor from the principal log of the one-grid-step ratio, the base per
/// ℤ factor from the unit-step value, and the dual residue per cyclic
/// factor from the nearest root of unity at the generator. `real_step`
/// fixes what one grid step is on each real axis.
pub fn fit_parametric(
    rc: &RecoveredCharacter,
    group: &GroupSpec,
    real_step: &[f64],
) -> Result<GenChar> {
    if real_step.len() != group.real_rank() {
        return Err(Error::SpecMismatch);
    }
    let m = group.real_rank();
    let n = group.int_rank();
    let k = group.cyclic_orders().len();

    let mut table: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
    for (i, p) in rc.points.iter().enumerate() {
        if let Some(key) = quantized_key(p, real_step) {
            table.insert(key, i);
        }
    }
    let value_of = |key: &[i64]| -> Result<Complex64> {
        table
            .get(key)
            .map(|&i| rc.values[i])
            .ok_or(Error::MissingSamples)
    };

    let zero_key = vec![0i64; m + n + k];
    let base = value_of(&zero_key)?;
    if base.norm() == 0.0 {
        return Err(Error::ZeroDenominator);
    }

    let ratio_at = |axis: usize| -> Result<Complex64> {
        let mut key = zero_key.clone();
        key[axis] = 1;
        let v = value_of(&key)?;
        let ratio = v / base;
        if ratio.norm() == 0.0 {
            return Err(Error::ZeroWParameter);
        }
        Ok(ratio)
    };

    let mut z = Vec::with_capacity(m);
    for (j, &h) in real_step.iter().enumerate() {
        let ratio = ratio_at(j)?;
        if ratio.re < 0.0 && ratio.im.abs() <= 1e-12 * ratio.norm() {
            return Err(Error::BranchAmbiguity);
        }
        z.push(ratio.ln() / h);
    }
    let mut w = Vec::with_capacity(n);
    for j in 0..n {
        w.push(ratio_at(m + j)?);
    }
    let mut residues = Vec::with_capacity(k);
    for (i, &d) in group.cyclic_orders().iter().enumerate() {
        let ratio = ratio_at(m + n + i)?;
        let turns = ratio.arg() / core::f64::consts::TAU * f64::from(d);
        let c = (turns.round() as i64).rem_euclid(i64::from(d)) as u32;
        residues.push(c);
    }
    GenChar::new(group.clone(), z, w, residues)
}

/// True when every probe transform of β lies within ε of the one of α.
pub fn gelfand_ball_member(
    beta: &GenChar,
    alpha: &GenChar,
    eps: f64,
    probes: &[CcFunction],
) -> Result<bool> {
    if probes.is_empty() {
        return Err(Error::EmptyProbeSet);
    }
    if !(eps > 0.0) {
        return Err(Error::InvalidEpsilon(eps));
    }
    for f in probes {
        let da = f.gelfand_transform(alpha)?;
        let db = f.gelfand_transform(beta)?;
        if (db - da).norm() >= eps {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Integer key of a grid point: real coordinates in units of the grid
/// step, then ℤ coordinates, then residues. `None` when a real coordinate
/// is off-grid.
fn quantized_key(p: &GroupElement, real_step: &[f64]) -> Option<Vec<i64>> {
    if p.real_coords().len() != real_step.len() {
        return None;
    }
    let mut key = Vec::with_capacity(
        p.real_coords().len() + p.int_coords().len() + p.residues().len(),
    );
    for (&x, &h) in p.real_coords().iter().zip(real_step) {
        let ratio = x / h;
        let grid = ratio.round();
        if (ratio - grid).abs() > 1e-9 {
            return None;
        }
        key.push(grid as i64);
    }
    key.extend_from_slice(p.int_coords());
    key.extend(p.residues().iter().map(|&r| i64::from(r)));
    Some(key)
}

/// Worst |v(s+t) − v(s)v(t)| over pairs whose sum is also a sample point.
fn homomorphism_residual(
    points: &[GroupElement],
    values: &[Complex64],
    real_step: &[f64],
) -> f64 {
    let mut table: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
    let mut keys: Vec<Option<Vec<i64>>> = Vec::with_capacity(points.len());
    for (i, p) in points.iter().enumerate() {
        let key = quantized_key(p, real_step);
        if let Some(k) = &key {
            table.insert(k.clone(), i);
        }
        keys.push(key);
    }
    let orders: Vec<i64> = points
        .first()
        .map(|p| p.spec().cyclic_orders().iter().map(|&d| i64::from(d)).collect())
        .unwrap_or_default();
    let split = points
        .first()
        .map(|p| p.real_coords().len() + p.int_coords().len())
        .unwrap_or(0);

    let mut worst = 0.0f64;
    let mut sum_key = Vec::new();
    for (i, ki) in keys.iter().enumerate() {
        let Some(ki) = ki else { continue };
        for (j, kj) in keys.iter().enumerate() {
            let Some(kj) = kj else { continue };
            sum_key.clear();
            sum_key.extend(ki.iter().zip(kj).map(|(a, b)| a + b));
            for (a, &d) in orders.iter().enumerate() {
                sum_key[split + a] = sum_key[split + a].rem_euclid(d);
            }
            if let Some(&idx) = table.get(&sum_key) {
                let defect = (values[idx] - values[i] * values[j]).norm();
                worst = worst.max(defect);
            }
        }
    }
    worst
}
