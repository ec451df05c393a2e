//! The structure-theorem group ℝ^m × ℤ^n × K and its arithmetic.
//!
//! K is a finite product of cyclic groups ℤ_{d_i}, d_i ≥ 2, which covers
//! every finite abelian group. Haar measure is Lebesgue on the real
//! factors and counting on the discrete ones.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
// used by the no_std build; shadowed by std's inherent methods under test
#[allow(unused_imports)]
use num_traits::Float;
use crate::Result;

/// Slack factor applied before `ceil` so that float quotients that are an
/// integer up to rounding do not get bumped to the next step count.
const CEIL_SLACK: f64 = 1.0 - 1e-12;

/// Shape of a compactly generated LCA group: ℝ^m × ℤ^n × ∏ ℤ_{d_i}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSpec {
    real_rank: usize,
    int_rank: usize,
    cyclic_orders: Vec<u32>,
}

impl GroupSpec {
    /// Builds a validated spec; every cyclic order must be at least 2.
    pub fn new(real_rank: usize, int_rank: usize, cyclic_orders: Vec<u32>) -> Result<Self> {
        if let Some(&d) = cyclic_orders.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidOrder(d));
        }
        Ok(Self {
            real_rank,
            int_rank,
            cyclic_orders,
        })
    }

    pub fn real_rank(&self) -> usize {
        self.real_rank
    }

    pub fn int_rank(&self) -> usize {
        self.int_rank
    }

    pub fn cyclic_orders(&self) -> &[u32] {
        &self.cyclic_orders
    }

    /// True when the group has no real factor.
    pub fn is_discrete(&self) -> bool {
        self.real_rank == 0
    }

    /// The identity element.
    pub fn zero(&self) -> GroupElement {
        GroupElement {
            spec: self.clone(),
            real_coords: vec![0.0; self.real_rank],
            int_coords: vec![0; self.int_rank],
            residues: vec![0; self.cyclic_orders.len()],
        }
    }

    /// Builds an element, validating coordinate counts and reducing
    /// residues mod d_i (negative inputs wrap).
    pub fn element(
        &self,
        real_coords: &[f64],
        int_coords: &[i64],
        residues: &[i64],
    ) -> Result<GroupElement> {
        if real_coords.len() != self.real_rank
            || int_coords.len() != self.int_rank
            || residues.len() != self.cyclic_orders.len()
        {
            return Err(Error::SpecMismatch);
        }
        let residues = residues
            .iter()
            .zip(&self.cyclic_orders)
            .map(|(&r, &d)| r.rem_euclid(i64::from(d)) as u32)
            .collect();
        Ok(GroupElement {
            spec: self.clone(),
            real_coords: real_coords.to_vec(),
            int_coords: int_coords.to_vec(),
            residues,
        })
    }
}

/// A point of ℝ^m × ℤ^n × K. Residues are kept reduced mod d_i.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupElement {
    spec: GroupSpec,
    real_coords: Vec<f64>,
    int_coords: Vec<i64>,
    residues: Vec<u32>,
}

impl GroupElement {
    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn real_coords(&self) -> &[f64] {
        &self.real_coords
    }

    pub fn int_coords(&self) -> &[i64] {
        &self.int_coords
    }

    pub fn residues(&self) -> &[u32] {
        &self.residues
    }

    /// Componentwise sum; residues are reduced mod d_i.
    pub fn add(&self, other: &GroupElement) -> Result<GroupElement> {
        if self.spec != other.spec {
            return Err(Error::SpecMismatch);
        }
        let real_coords = self
            .real_coords
            .iter()
            .zip(&other.real_coords)
            .map(|(a, b)| a + b)
            .collect();
        let int_coords = self
            .int_coords
            .iter()
            .zip(&other.int_coords)
            .map(|(a, b)| a + b)
            .collect();
        let residues = self
            .residues
            .iter()
            .zip(&other.residues)
            .zip(&self.spec.cyclic_orders)
            .map(|((&a, &b), &d)| (a + b) % d)
            .collect();
        Ok(GroupElement {
            spec: self.spec.clone(),
            real_coords,
            int_coords,
            residues,
        })
    }

    /// Componentwise negation.
    pub fn neg(&self) -> GroupElement {
        let residues = self
            .residues
            .iter()
            .zip(&self.spec.cyclic_orders)
            .map(|(&r, &d)| (d - r) % d)
            .collect();
        GroupElement {
            spec: self.spec.clone(),
            real_coords: self.real_coords.iter().map(|x| -x).collect(),
            int_coords: self.int_coords.iter().map(|k| -k).collect(),
            residues,
        }
    }

    /// True when every coordinate is exactly zero.
    pub fn is_zero(&self) -> bool {
        self.real_coords.iter().all(|&x| x == 0.0)
            && self.int_coords.iter().all(|&k| k == 0)
            && self.residues.iter().all(|&r| r == 0)
    }

    /// Order of the element in the group, when finite: the lcm of the
    /// residue orders. `None` when a real or integer coordinate is nonzero.
    pub fn torsion_order(&self) -> Option<u64> {
        if self.real_coords.iter().any(|&x| x != 0.0) || self.int_coords.iter().any(|&k| k != 0) {
            return None;
        }
        let mut order = 1u64;
        for (&r, &d) in self.residues.iter().zip(&self.spec.cyclic_orders) {
            let d = u64::from(d);
            let factor = d / gcd(u64::from(r), d);
            order = order / gcd(order, factor) * factor;
        }
        Some(order)
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Axis-aligned generating neighbourhood [−u_j, u_j]^m × {−1,0,1}^n × K.
///
/// The integer steps and the whole compact part are implicit; only the
/// real halfwidths vary.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratingBox {
    real_halfwidths: Vec<f64>,
}

impl GeneratingBox {
    pub fn new(real_halfwidths: Vec<f64>) -> Result<Self> {
        if real_halfwidths.iter().any(|&u| !(u > 0.0)) {
            return Err(Error::InvalidHalfwidth);
        }
        Ok(Self { real_halfwidths })
    }

    pub fn real_halfwidths(&self) -> &[f64] {
        &self.real_halfwidths
    }
}

/// Minimal number p of box elements summing to `t`: the max over factors of
/// ceil(|x_j|/u_j) on real axes, |k_j| on integer axes, and 1 whenever a
/// residue is nonzero. Zero exactly for the identity.
pub fn word_length(t: &GroupElement, bx: &GeneratingBox) -> Result<u64> {
    if bx.real_halfwidths.len() != t.spec().real_rank() {
        return Err(Error::SpecMismatch);
    }
    let mut p = 0u64;
    for (&x, &u) in t.real_coords().iter().zip(&bx.real_halfwidths) {
        let steps = (x.abs() / u * CEIL_SLACK).ceil() as u64;
        p = p.max(steps);
    }
    for &k in t.int_coords() {
        p = p.max(k.unsigned_abs());
    }
    if t.residues().iter().any(|&r| r != 0) {
        p = p.max(1);
    }
    Ok(p)
}
