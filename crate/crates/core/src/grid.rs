//! Row-major multi-index helpers shared by the grid-based modules.

use alloc::vec;
use alloc::vec::Vec;

/// Uniform grid of `count` points on [a, b], endpoints included exactly.
pub(crate) fn linspace(a: f64, b: f64, count: usize) -> Vec<f64> {
    debug_assert!(count >= 2);
    let step = (b - a) / ((count - 1) as f64);
    (0..count)
        .map(|i| if i + 1 == count { b } else { a + step * i as f64 })
        .collect()
}

/// Row-major strides for the given axis lengths.
pub(crate) fn strides(dims: &[usize]) -> Vec<usize> {
    let mut out = vec![1usize; dims.len()];
    for axis in (0..dims.len().saturating_sub(1)).rev() {
        out[axis] = out[axis + 1] * dims[axis + 1];
    }
    out
}

pub(crate) fn flat_index(idx: &[usize], strides: &[usize]) -> usize {
    idx.iter().zip(strides).map(|(i, s)| i * s).sum()
}

/// Visits every multi-index of the box `dims` in row-major order (last axis
/// fastest). A zero-length `dims` visits the single empty index.
pub(crate) fn for_each_index(dims: &[usize], mut visit: impl FnMut(&[usize])) {
    if dims.contains(&0) {
        return;
    }
    let mut idx = vec![0usize; dims.len()];
    loop {
        visit(&idx);
        let mut axis = dims.len();
        loop {
            if axis == 0 {
                return;
            }
            axis -= 1;
            idx[axis] += 1;
            if idx[axis] < dims[axis] {
                break;
            }
            idx[axis] = 0;
        }
    }
}

/// All multi-indices of `dims` in row-major order.
pub(crate) fn decode_all(dims: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(dims.iter().product());
    for_each_index(dims, |idx| out.push(idx.to_vec()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linspace_hits_endpoints() {
        let xs = linspace(-1.0, 1.0, 5);
        assert_eq!(xs, vec![-1.0, -0.5, 0.0, 0.5, 1.0]);
    }

    #[test]
    fn row_major_order() {
        let mut seen = Vec::new();
        for_each_index(&[2, 3], |idx| seen.push((idx[0], idx[1])));
        assert_eq!(
            seen,
            vec![(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2)]
        );
        let s = strides(&[2, 3]);
        assert_eq!(s, vec![3, 1]);
        assert_eq!(flat_index(&[1, 2], &s), 5);
    }

    #[test]
    fn empty_dims_is_scalar() {
        let mut calls = 0;
        for_each_index(&[], |idx| {
            assert!(idx.is_empty());
            calls += 1;
        });
        assert_eq!(calls, 1);
    }
}
