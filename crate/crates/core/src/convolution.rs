//! Compactly supported functions on the grid model of the group.
//!
//! Real factors carry a uniform grid with step h (grid point j sits at
//! (offset + j)·h); ℤ factors carry an integer offset; the compact part is
//! always stored in full. Values form a dense row-major table over
//! (real axes, ℤ axes, cyclic axes).
//!
//! Quadrature is the translation-invariant Riemann rule: every grid point
//! carries the cell weight ∏ h_j. Convolution, translation, and the
//! Gel'fand transform then satisfy their algebraic identities exactly at
//! the discrete level; only comparisons against continuum closed forms pick
//! up an O(h) error.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
// used by the no_std build; shadowed by std's inherent methods under test
#[allow(unused_imports)]
use num_traits::Float;

use crate::character::GenChar;
use crate::error::Error;
use crate::grid::{flat_index, for_each_index, strides};
use crate::group::{GroupElement, GroupSpec};
use crate::Result;

/// Tolerance on the step ratio when deciding whether a real shift or
/// sample point sits on the grid.
const GRID_ALIGN_TOL: f64 = 1e-9;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Clone, PartialEq)]
pub struct CcFunction {
    group: GroupSpec,
    real_step: Vec<f64>,
    real_offset: Vec<i64>,
    int_offset: Vec<i64>,
    dims: Vec<usize>,
    values: Vec<Complex64>,
}

impl CcFunction {
    /// Builds a function from raw parts. `support_dims` lists the table
    /// lengths of the real and ℤ axes; the cyclic axes are implied by the
    /// group and always full.
    pub fn new(
        group: GroupSpec,
        real_step: Vec<f64>,
        real_offset: Vec<i64>,
        int_offset: Vec<i64>,
        support_dims: Vec<usize>,
        values: Vec<Complex64>,
    ) -> Result<Self> {
        let m = group.real_rank();
        let n = group.int_rank();
        if real_step.len() != m
            || real_offset.len() != m
            || int_offset.len() != n
            || support_dims.len() != m + n
        {
            return Err(Error::ShapeMismatch);
        }
        if real_step.iter().any(|&h| !(h > 0.0)) {
            return Err(Error::InvalidStep);
        }
        if support_dims.contains(&0) {
            return Err(Error::EmptySupport);
        }
        let mut dims = support_dims;
        dims.extend(group.cyclic_orders().iter().map(|&d| d as usize));
        if values.len() != dims.iter().product::<usize>() {
            return Err(Error::ShapeMismatch);
        }
        Ok(Self {
            group,
            real_step,
            real_offset,
            int_offset,
            dims,
            values,
        })
    }

    /// Point mass at `t`. Only defined on fully discrete groups, where it
    /// is the convolution unit (at t = 0) under counting measure.
    pub fn delta(group: &GroupSpec, t: &GroupElement) -> Result<Self> {
        if !group.is_discrete() {
            return Err(Error::DiracOnContinuousFactor);
        }
        if t.spec() != group {
            return Err(Error::SpecMismatch);
        }
        let n = group.int_rank();
        let mut dims = vec![1usize; n];
        dims.extend(group.cyclic_orders().iter().map(|&d| d as usize));
        let mut values = vec![ZERO; dims.iter().product()];
        let st = strides(&dims);
        let mut idx = vec![0usize; dims.len()];
        for (i, &r) in t.residues().iter().enumerate() {
            idx[n + i] = r as usize;
        }
        values[flat_index(&idx, &st)] = Complex64::new(1.0, 0.0);
        Ok(Self {
            group: group.clone(),
            real_step: Vec::new(),
            real_offset: Vec::new(),
            int_offset: t.int_coords().to_vec(),
            dims,
            values,
        })
    }

    /// Samples of a function on ℝ with the given step: grid point j holds
    /// `values[j]` at coordinate (offset + j)·step.
    pub fn from_real_samples(step: f64, offset: i64, values: Vec<Complex64>) -> Result<Self> {
        let len = values.len();
        Self::new(
            GroupSpec::new(1, 0, vec![])?,
            vec![step],
            vec![offset],
            vec![],
            vec![len],
            values,
        )
    }

    /// Indicator of [a, b) on ℝ, sampled at the grid points inside the
    /// half-open interval (endpoints that fall on the grid are snapped).
    pub fn box_indicator(step: f64, a: f64, b: f64) -> Result<Self> {
        if !(step > 0.0) {
            return Err(Error::InvalidStep);
        }
        let start = snap_ceil(a / step);
        let end = snap_ceil(b / step);
        if end <= start {
            return Err(Error::EmptySupport);
        }
        let values = vec![Complex64::new(1.0, 0.0); (end - start) as usize];
        Self::from_real_samples(step, start, values)
    }

    /// Tent max(0, 1 − |x|/halfwidth) on ℝ, sampled at the interior grid
    /// points where it is nonzero.
    pub fn tent(step: f64, halfwidth: f64) -> Result<Self> {
        if !(step > 0.0) {
            return Err(Error::InvalidStep);
        }
        if !(halfwidth > 0.0) {
            return Err(Error::EmptySupport);
        }
        let edge = snap_ceil(halfwidth / step);
        if edge <= 0 {
            return Err(Error::EmptySupport);
        }
        let values = (-(edge - 1)..edge)
            .map(|j| Complex64::new(1.0 - (j as f64 * step).abs() / halfwidth, 0.0))
            .collect();
        Self::from_real_samples(step, -(edge - 1), values)
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn real_step(&self) -> &[f64] {
        &self.real_step
    }

    pub fn real_offset(&self) -> &[i64] {
        &self.real_offset
    }

    pub fn int_offset(&self) -> &[i64] {
        &self.int_offset
    }

    /// Table lengths of all axes: real, then ℤ, then cyclic.
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Table lengths of the real and ℤ axes only.
    pub fn support_dims(&self) -> &[usize] {
        &self.dims[..self.group.real_rank() + self.group.int_rank()]
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Haar weight of one grid cell: the product of the real steps.
    pub fn cell_weight(&self) -> f64 {
        self.real_step.iter().product()
    }

    fn for_each_point(&self, mut visit: impl FnMut(&[f64], &[i64], &[u32], Complex64)) {
        let m = self.group.real_rank();
        let n = self.group.int_rank();
        let k = self.group.cyclic_orders().len();
        let st = strides(&self.dims);
        let mut reals = vec![0.0f64; m];
        let mut ints = vec![0i64; n];
        let mut residues = vec![0u32; k];
        for_each_index(&self.dims, |idx| {
            for j in 0..m {
                reals[j] = (self.real_offset[j] + idx[j] as i64) as f64 * self.real_step[j];
            }
            for j in 0..n {
                ints[j] = self.int_offset[j] + idx[m + j] as i64;
            }
            for i in 0..k {
                residues[i] = idx[m + n + i] as u32;
            }
            visit(&reals, &ints, &residues, self.values[flat_index(idx, &st)]);
        });
    }

    /// Every grid point paired with its value.
    pub fn points(&self) -> Vec<(GroupElement, Complex64)> {
        let mut out = Vec::with_capacity(self.values.len());
        self.for_each_point(|reals, ints, residues, v| {
            let residues: Vec<i64> = residues.iter().map(|&r| i64::from(r)).collect();
            let el = self
                .group
                .element(reals, ints, &residues)
                .expect("grid point is a valid element");
            out.push((el, v));
        });
        out
    }

    /// (f*g)(t) = Σ_s f(s) g(t−s) · cell weight. Linear axes grow by
    /// extent addition; cyclic axes wrap.
    pub fn convolve(&self, other: &CcFunction) -> Result<CcFunction> {
        if self.group != other.group {
            return Err(Error::SpecMismatch);
        }
        if self.real_step != other.real_step {
            return Err(Error::StepMismatch);
        }
        let m = self.group.real_rank();
        let n = self.group.int_rank();
        let orders = self.group.cyclic_orders();
        let mn = m + n;

        let mut out_dims: Vec<usize> = (0..mn)
            .map(|a| self.dims[a] + other.dims[a] - 1)
            .collect();
        out_dims.extend(orders.iter().map(|&d| d as usize));
        let real_offset = self
            .real_offset
            .iter()
            .zip(&other.real_offset)
            .map(|(a, b)| a + b)
            .collect();
        let int_offset = self
            .int_offset
            .iter()
            .zip(&other.int_offset)
            .map(|(a, b)| a + b)
            .collect();

        let f_idx = crate::grid::decode_all(&self.dims);
        let g_idx = crate::grid::decode_all(&other.dims);
        let out_strides = strides(&out_dims);
        let mut values = vec![ZERO; out_dims.iter().product()];
        let mut combined = vec![0usize; out_dims.len()];
        for (fi, &fv) in self.values.iter().enumerate() {
            for (gi, &gv) in other.values.iter().enumerate() {
                for a in 0..mn {
                    combined[a] = f_idx[fi][a] + g_idx[gi][a];
                }
                for (a, &d) in orders.iter().enumerate() {
                    combined[mn + a] = (f_idx[fi][mn + a] + g_idx[gi][mn + a]) % d as usize;
                }
                values[flat_index(&combined, &out_strides)] += fv * gv;
            }
        }
        let cw = self.cell_weight();
        for v in &mut values {
            *v *= cw;
        }
        Ok(CcFunction {
            group: self.group.clone(),
            real_step: self.real_step.clone(),
            real_offset,
            int_offset,
            dims: out_dims,
            values,
        })
    }

    /// (τ_t f)(s) = f(s − t). Real shifts must be whole grid steps; values
    /// are untouched on linear axes and rotated on cyclic axes.
    pub fn translate(&self, t: &GroupElement) -> Result<CcFunction> {
        if *t.spec() != self.group {
            return Err(Error::SpecMismatch);
        }
        let mut real_offset = self.real_offset.clone();
        for (j, (&x, &h)) in t.real_coords().iter().zip(&self.real_step).enumerate() {
            let ratio = x / h;
            let steps = ratio.round();
            if (ratio - steps).abs() > GRID_ALIGN_TOL {
                return Err(Error::GridMisaligned);
            }
            real_offset[j] += steps as i64;
        }
        let int_offset = self
            .int_offset
            .iter()
            .zip(t.int_coords())
            .map(|(o, k)| o + k)
            .collect();

        let values = if t.residues().iter().all(|&r| r == 0) {
            self.values.clone()
        } else {
            let mn = self.group.real_rank() + self.group.int_rank();
            let orders = self.group.cyclic_orders();
            let st = strides(&self.dims);
            let mut rotated = vec![ZERO; self.values.len()];
            let mut shifted = vec![0usize; self.dims.len()];
            for_each_index(&self.dims, |idx| {
                shifted[..mn].copy_from_slice(&idx[..mn]);
                for (a, &d) in orders.iter().enumerate() {
                    shifted[mn + a] =
                        (idx[mn + a] + t.residues()[a] as usize) % d as usize;
                }
                rotated[flat_index(&shifted, &st)] = self.values[flat_index(idx, &st)];
            });
            rotated
        };
        Ok(CcFunction {
            group: self.group.clone(),
            real_step: self.real_step.clone(),
            real_offset,
            int_offset,
            dims: self.dims.clone(),
            values,
        })
    }

    /// f̂(α) = Σ_s f(s) α(s) · cell weight.
    pub fn gelfand_transform(&self, alpha: &GenChar) -> Result<Complex64> {
        if *alpha.spec() != self.group {
            return Err(Error::SpecMismatch);
        }
        let mut sum = ZERO;
        self.for_each_point(|reals, ints, residues, v| {
            if v != ZERO {
                sum += v * alpha.evaluate_parts(reals, ints, residues);
            }
        });
        Ok(sum * self.cell_weight())
    }

    /// Σ |f(s)| · cell weight.
    pub fn l1_norm(&self) -> f64 {
        let sum: f64 = self.values.iter().map(|v| v.norm()).sum();
        sum * self.cell_weight()
    }

    /// Value at a grid point; zero outside the support table. Real
    /// coordinates must sit on the grid.
    pub fn value_at(&self, t: &GroupElement) -> Result<Complex64> {
        if *t.spec() != self.group {
            return Err(Error::SpecMismatch);
        }
        let m = self.group.real_rank();
        let n = self.group.int_rank();
        let mut idx = vec![0usize; self.dims.len()];
        for (j, (&x, &h)) in t.real_coords().iter().zip(&self.real_step).enumerate() {
            let ratio = x / h;
            let grid = ratio.round();
            if (ratio - grid).abs() > GRID_ALIGN_TOL {
                return Err(Error::GridMisaligned);
            }
            let rel = grid as i64 - self.real_offset[j];
            if rel < 0 || rel as usize >= self.dims[j] {
                return Ok(ZERO);
            }
            idx[j] = rel as usize;
        }
        for j in 0..n {
            let rel = t.int_coords()[j] - self.int_offset[j];
            if rel < 0 || rel as usize >= self.dims[m + j] {
                return Ok(ZERO);
            }
            idx[m + j] = rel as usize;
        }
        for (i, &r) in t.residues().iter().enumerate() {
            idx[m + n + i] = r as usize;
        }
        Ok(self.values[flat_index(&idx, &strides(&self.dims))])
    }

    /// Pointwise difference on the union of the two supports.
    pub fn sub(&self, other: &CcFunction) -> Result<CcFunction> {
        if self.group != other.group {
            return Err(Error::SpecMismatch);
        }
        if self.real_step != other.real_step {
            return Err(Error::StepMismatch);
        }
        let m = self.group.real_rank();
        let n = self.group.int_rank();
        let mn = m + n;
        let offsets = |f: &CcFunction, a: usize| -> i64 {
            if a < m {
                f.real_offset[a]
            } else {
                f.int_offset[a - m]
            }
        };
        let mut out_off = vec![0i64; mn];
        let mut out_dims = vec![0usize; mn];
        for a in 0..mn {
            let lo = offsets(self, a).min(offsets(other, a));
            let hi = (offsets(self, a) + self.dims[a] as i64)
                .max(offsets(other, a) + other.dims[a] as i64);
            out_off[a] = lo;
            out_dims[a] = (hi - lo) as usize;
        }
        let mut dims = out_dims.clone();
        dims.extend(self.group.cyclic_orders().iter().map(|&d| d as usize));
        let out_strides = strides(&dims);
        let mut values = vec![ZERO; dims.iter().product()];
        let mut place = vec![0usize; dims.len()];
        let mut accumulate = |src: &CcFunction, sign: f64| {
            let st = strides(&src.dims);
            for_each_index(&src.dims, |idx| {
                for a in 0..mn {
                    place[a] = (offsets(src, a) + idx[a] as i64 - out_off[a]) as usize;
                }
                place[mn..].copy_from_slice(&idx[mn..]);
                values[flat_index(&place, &out_strides)] +=
                    src.values[flat_index(idx, &st)] * sign;
            });
        };
        accumulate(self, 1.0);
        accumulate(other, -1.0);
        Ok(CcFunction {
            group: self.group.clone(),
            real_step: self.real_step.clone(),
            real_offset: out_off[..m].to_vec(),
            int_offset: out_off[m..].to_vec(),
            dims,
            values,
        })
    }
}

/// Ceil that first snaps near-integers, so interval endpoints that are
/// grid points up to float noise land on the grid.
fn snap_ceil(x: f64) -> i64 {
    let r = x.round();
    if (x - r).abs() < GRID_ALIGN_TOL {
        r as i64
    } else {
        x.ceil() as i64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int_line() -> GroupSpec {
        GroupSpec::new(0, 1, vec![]).unwrap()
    }

    fn on_z(offset: i64, values: &[f64]) -> CcFunction {
        let values: Vec<Complex64> = values.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        let len = values.len();
        CcFunction::new(int_line(), vec![], vec![], vec![offset], vec![len], values).unwrap()
    }

    #[test]
    fn delta_is_convolution_unit_on_z() {
        let z = int_line();
        let unit = CcFunction::delta(&z, &z.zero()).unwrap();
        let f = on_z(-2, &[1.0, -3.0, 2.5]);
        let conv = f.convolve(&unit).unwrap();
        assert_eq!(conv.int_offset(), f.int_offset());
        for (a, b) in conv.values().iter().zip(f.values()) {
            assert_eq!(a, b);
        }
    }

    #[test]
    fn delta_residues_add_on_z3() {
        let z3 = GroupSpec::new(0, 0, vec![3]).unwrap();
        let d1 = CcFunction::delta(&z3, &z3.element(&[], &[], &[1]).unwrap()).unwrap();
        let d2 = CcFunction::delta(&z3, &z3.element(&[], &[], &[2]).unwrap()).unwrap();
        let d0 = CcFunction::delta(&z3, &z3.zero()).unwrap();
        let conv = d1.convolve(&d2).unwrap();
        assert_eq!(conv.values(), d0.values());
    }

    #[test]
    fn delta_rejects_continuous_groups() {
        let r = GroupSpec::new(1, 0, vec![]).unwrap();
        assert_eq!(
            CcFunction::delta(&r, &r.zero()).unwrap_err(),
            Error::DiracOnContinuousFactor
        );
    }

    #[test]
    fn convolve_binomial_on_z() {
        let f = on_z(0, &[1.0, 1.0]);
        let conv = f.convolve(&f).unwrap();
        assert_eq!(conv.int_offset(), &[0]);
        let got: Vec<f64> = conv.values().iter().map(|v| v.re).collect();
        assert_eq!(got, vec![1.0, 2.0, 1.0]);
    }

    #[test]
    fn convolve_boxes_gives_triangle() {
        let h = 0.01;
        let bx = CcFunction::box_indicator(h, -1.0, 1.0).unwrap();
        assert_eq!(bx.values().len(), 200);
        let tri = bx.convolve(&bx).unwrap();
        assert_eq!(tri.values().len(), 399);
        for (el, v) in tri.points() {
            let t = el.real_coords()[0];
            let want = (2.0 - t.abs()).max(0.0);
            assert!(
                (v.re - want).abs() <= h + 1e-12,
                "triangle mismatch at t={t}: {} vs {want}",
                v.re
            );
        }
    }

    #[test]
    fn convolve_rejects_mismatches() {
        let f = CcFunction::box_indicator(0.1, 0.0, 1.0).unwrap();
        let g = CcFunction::box_indicator(0.2, 0.0, 1.0).unwrap();
        assert_eq!(f.convolve(&g).unwrap_err(), Error::StepMismatch);
        let d = CcFunction::delta(&int_line(), &int_line().zero()).unwrap();
        assert_eq!(f.convolve(&d).unwrap_err(), Error::SpecMismatch);
    }

    #[test]
    fn support_extent_spans_add() {
        let f = on_z(0, &[1.0, 2.0, 3.0]);
        let g = on_z(5, &[1.0, 1.0]);
        let conv = f.convolve(&g).unwrap();
        assert_eq!(conv.support_dims()[0] - 1, (3 - 1) + (2 - 1));
        assert_eq!(conv.int_offset(), &[5]);
    }

    #[test]
    fn translate_identity_shift() {
        let f = CcFunction::tent(0.1, 1.0).unwrap();
        let g = f.translate(&f.group().zero()).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn translate_moves_delta() {
        let z = int_line();
        let d0 = CcFunction::delta(&z, &z.zero()).unwrap();
        let d5 = CcFunction::delta(&z, &z.element(&[], &[5], &[]).unwrap()).unwrap();
        let moved = d0.translate(&z.element(&[], &[5], &[]).unwrap()).unwrap();
        assert_eq!(moved, d5);
    }

    #[test]
    fn translate_rejects_off_grid_shift() {
        let f = CcFunction::box_indicator(0.5, -1.0, 1.0).unwrap();
        let t = f.group().element(&[0.3], &[], &[]).unwrap();
        assert_eq!(f.translate(&t).unwrap_err(), Error::GridMisaligned);
    }

    #[test]
    fn translate_rotates_cyclic_axes() {
        let z3 = GroupSpec::new(0, 0, vec![3]).unwrap();
        let d0 = CcFunction::delta(&z3, &z3.zero()).unwrap();
        let t = z3.element(&[], &[], &[2]).unwrap();
        let moved = d0.translate(&t).unwrap();
        let expect = CcFunction::delta(&z3, &t).unwrap();
        assert_eq!(moved.values(), expect.values());
    }

    #[test]
    fn gelfand_of_delta_is_character_value() {
        let z = int_line();
        let alpha = GenChar::new(
            z.clone(),
            vec![],
            vec![Complex64::new(0.7, 0.4)],
            vec![],
        )
        .unwrap();
        let d0 = CcFunction::delta(&z, &z.zero()).unwrap();
        assert_eq!(
            d0.gelfand_transform(&alpha).unwrap(),
            Complex64::new(1.0, 0.0)
        );
        let one = z.element(&[], &[1], &[]).unwrap();
        let d1 = CcFunction::delta(&z, &one).unwrap();
        let got = d1.gelfand_transform(&alpha).unwrap();
        assert!((got - Complex64::new(0.7, 0.4)).norm() < 1e-15);
    }

    #[test]
    fn gelfand_of_box_matches_sinh() {
        let h = 1e-3;
        let bx = CcFunction::box_indicator(h, -1.0, 1.0).unwrap();
        let alpha = GenChar::new(
            bx.group().clone(),
            vec![Complex64::new(1.0, 0.0)],
            vec![],
            vec![],
        )
        .unwrap();
        let got = bx.gelfand_transform(&alpha).unwrap();
        let want = 2.0 * 1.0f64.sinh();
        assert!((got.re - want).abs() <= 5e-3, "{} vs {}", got.re, want);
        assert!(got.im.abs() < 1e-12);
    }

    #[test]
    fn l1_norm_examples() {
        let z = int_line();
        let d0 = CcFunction::delta(&z, &z.zero()).unwrap();
        assert_eq!(d0.l1_norm(), 1.0);

        let h = 1e-3;
        let bx = CcFunction::box_indicator(h, -1.0, 1.0).unwrap();
        assert!((bx.l1_norm() - 2.0).abs() <= h);

        let zero = CcFunction::from_real_samples(0.5, 0, vec![ZERO; 4]).unwrap();
        assert_eq!(zero.l1_norm(), 0.0);
    }

    #[test]
    fn value_at_looks_up_grid_points() {
        let f = CcFunction::tent(0.25, 1.0).unwrap();
        let spec = f.group().clone();
        let at = |x: f64| f.value_at(&spec.element(&[x], &[], &[]).unwrap()).unwrap();
        assert!((at(0.0).re - 1.0).abs() < 1e-15);
        assert!((at(0.5).re - 0.5).abs() < 1e-15);
        assert_eq!(at(3.0), ZERO);
        assert_eq!(
            f.value_at(&spec.element(&[0.3], &[], &[]).unwrap())
                .unwrap_err(),
            Error::GridMisaligned
        );
    }

    #[test]
    fn sub_aligns_supports() {
        let f = on_z(0, &[1.0, 2.0]);
        let g = on_z(1, &[1.0, 1.0]);
        let d = f.sub(&g).unwrap();
        assert_eq!(d.int_offset(), &[0]);
        let got: Vec<f64> = d.values().iter().map(|v| v.re).collect();
        assert_eq!(got, vec![1.0, 1.0, -1.0]);
    }

    #[test]
    fn shape_validation() {
        assert_eq!(
            CcFunction::new(
                int_line(),
                vec![],
                vec![],
                vec![0],
                vec![3],
                vec![ZERO; 2]
            )
            .unwrap_err(),
            Error::ShapeMismatch
        );
        assert_eq!(
            CcFunction::box_indicator(0.1, 1.0, 1.0).unwrap_err(),
            Error::EmptySupport
        );
    }
}
