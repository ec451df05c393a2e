//! Constructive power-escape bound on the annulus ε ≤ |z − 1| ≤ 1/m.
//!
//! For every z in the annulus some power z^k with k ≤ N leaves the disk
//! |z − 1| ≤ 1/m. [`EscapeCertificate::compute`] produces N together with
//! the data backing it; [`annulus_max_escape`] is an independent
//! brute-force grid oracle and the acceptance authority for N.
//!
//! Construction of the certificate: a ray at angle δ = min(arcsin(ε)/2, π/6)
//! meets the circle |z − 1| = ε at radii r_{0,1} = cos δ ∓ sqrt(ε² − sin²δ);
//! n₁ is the least multiple of δ landing in the angle window where a ray
//! misses the disk (sin(n₁δ) > 1/m with n₁δ ≤ π/2), n₂ the least power
//! pulling r₀ below 1 − 1/m, n₃ the least power pushing r₁ past 1 + 1/m,
//! and N = max(n₁, n₂, n₃).

use core::f64::consts::{FRAC_PI_2, FRAC_PI_6};
use num_complex::Complex64;
// used by the no_std build; shadowed by std's inherent methods under test
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::Error;
use crate::Result;

/// Smallest k in 1..=k_max with |z^k − 1| > 1/m, or `None` when no power
/// escapes within the cap. Powers are accumulated by repeated
/// multiplication, which makes the scan exactly conjugation-symmetric.
pub fn escape_index(z: Complex64, m: u32, k_max: u64) -> Result<Option<u64>> {
    if m < 2 {
        return Err(Error::InvalidM(m));
    }
    let threshold = 1.0 / f64::from(m);
    let mut power = z;
    for k in 1..=k_max {
        if (power - 1.0).norm() > threshold {
            return Ok(Some(k));
        }
        power *= z;
    }
    Ok(None)
}

/// The constructive escape bound N with the data that certifies it.
#[derive(Debug, Clone, PartialEq)]
pub struct EscapeCertificate {
    m: u32,
    eps: f64,
    delta: f64,
    r0: f64,
    r1: f64,
    n1: u64,
    n2: u64,
    n3: u64,
    n: u64,
}

impl EscapeCertificate {
    /// Runs the fixed recipe for the given scale m ≥ 2 and 0 < ε < 1/m.
    pub fn compute(m: u32, eps: f64) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidM(m));
        }
        let inv_m = 1.0 / f64::from(m);
        if !(eps > 0.0 && eps < inv_m) {
            return Err(Error::EpsilonOutOfRange { eps, m });
        }

        let delta = (eps.asin() / 2.0).min(FRAC_PI_6);
        let disc = eps * eps - delta.sin() * delta.sin();
        let root = disc.sqrt();
        let r0 = delta.cos() - root;
        let r1 = delta.cos() + root;

        // least multiple of delta whose ray misses the disk around 1
        let escape_angle = inv_m.asin();
        let mut n1 = (escape_angle / delta).floor() as u64 + 1;
        while (n1 as f64 * delta).sin() <= inv_m {
            n1 += 1;
        }

        let n2 = least_power_below(r0, 1.0 - inv_m);
        let n3 = least_power_at_least(r1, 1.0 + inv_m);
        let cert = Self {
            m,
            eps,
            delta,
            r0,
            r1,
            n1,
            n2,
            n3,
            n: n1.max(n2).max(n3),
        };
        assert!(cert.invariants_hold(), "escape certificate self-check failed");
        Ok(cert)
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn r0(&self) -> f64 {
        self.r0
    }

    pub fn r1(&self) -> f64 {
        self.r1
    }

    pub fn n1(&self) -> u64 {
        self.n1
    }

    pub fn n2(&self) -> u64 {
        self.n2
    }

    pub fn n3(&self) -> u64 {
        self.n3
    }

    /// The escape bound N.
    pub fn bound(&self) -> u64 {
        self.n
    }

    /// Replaces the bound, keeping the rest of the data. Useful for
    /// experiments with deliberately broken certificates.
    pub fn with_bound(mut self, n: u64) -> Self {
        self.n = n;
        self
    }

    /// Numerical re-check of every certificate invariant.
    pub fn invariants_hold(&self) -> bool {
        let inv_m = 1.0 / f64::from(self.m);
        self.delta > 0.0
            && self.delta < FRAC_PI_2
            && self.delta.sin() < self.eps
            && self.r0 < 1.0
            && self.r1 > 1.0
            && self.r0 > 0.0
            && self.r0.powf(self.n2 as f64) < 1.0 - inv_m
            && self.r1.powf(self.n3 as f64) >= 1.0 + inv_m
            && (self.n1 as f64 * self.delta).sin() > inv_m
            && self.n1 as f64 * self.delta <= FRAC_PI_2
            && self.n >= self.n1.max(self.n2).max(self.n3)
    }

    /// Checks the bound against the brute-force oracle on an
    /// `n_angles × n_radii` annulus grid.
    pub fn verify(&self, n_angles: usize, n_radii: usize) -> Result<EscapeVerification> {
        let cap = self.n.saturating_mul(4).max(64);
        let scan = annulus_max_escape(self.m, self.eps, n_angles, n_radii, cap)?;
        Ok(EscapeVerification {
            holds: scan.max_k <= self.n,
            max_k: scan.max_k,
            witness: scan.witness,
        })
    }

    /// Doubles the bound until the oracle passes, returning the final
    /// certificate and how many doublings were needed (zero in practice;
    /// the fallback exists so that the oracle, not the recipe, has the
    /// last word).
    pub fn ensure_covers(self, n_angles: usize, n_radii: usize) -> Result<(Self, u32)> {
        let mut cert = self;
        let mut doublings = 0u32;
        loop {
            let report = cert.verify(n_angles, n_radii)?;
            if report.holds {
                return Ok((cert, doublings));
            }
            let n = cert.n.saturating_mul(2);
            cert = cert.with_bound(n);
            doublings += 1;
        }
    }
}

/// Oracle verdict for one certificate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EscapeVerification {
    pub holds: bool,
    pub max_k: u64,
    pub witness: Complex64,
}

/// Result of a brute-force annulus scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnnulusScan {
    pub max_k: u64,
    pub witness: Complex64,
}

/// Scans z = 1 + ρ·e^{iθ} over `n_radii` radii in [ε, 1/m] and `n_angles`
/// angles in [0, 2π), recording the worst escape index and a witness.
/// Errors with [`Error::NoEscapeWithinCap`] if any grid point fails to
/// escape within `k_cap` powers.
pub fn annulus_max_escape(
    m: u32,
    eps: f64,
    n_angles: usize,
    n_radii: usize,
    k_cap: u64,
) -> Result<AnnulusScan> {
    if m < 2 {
        return Err(Error::InvalidM(m));
    }
    let inv_m = 1.0 / f64::from(m);
    if !(eps > 0.0 && eps <= inv_m) {
        return Err(Error::EpsilonOutOfRange { eps, m });
    }
    if n_angles < 2 || n_radii < 2 {
        return Err(Error::InvalidSampleCount(n_angles.min(n_radii)));
    }

    let mut worst: Option<AnnulusScan> = None;
    for ai in 0..n_angles {
        let theta = core::f64::consts::TAU * ai as f64 / n_angles as f64;
        let (sin_t, cos_t) = theta.sin_cos();
        for ri in 0..n_radii {
            let rho = eps + (inv_m - eps) * ri as f64 / (n_radii - 1) as f64;
            let z = Complex64::new(1.0 + rho * cos_t, rho * sin_t);
            match escape_index(z, m, k_cap)? {
                Some(k) => {
                    let beats = worst.is_none_or(|w| k > w.max_k);
                    if beats {
                        worst = Some(AnnulusScan {
                            max_k: k,
                            witness: z,
                        });
                    }
                }
                None => return Err(Error::NoEscapeWithinCap(z)),
            }
        }
    }
    Ok(worst.expect("grid is nonempty"))
}

/// Least n ≥ 1 with base^n < target, for 0 < base < 1 and target < 1.
fn least_power_below(base: f64, target: f64) -> u64 {
    let mut n = ((target.ln() / base.ln()).floor() as u64).max(1);
    while n > 1 && base.powf((n - 1) as f64) < target {
        n -= 1;
    }
    while base.powf(n as f64) >= target {
        n += 1;
    }
    n
}

/// Least n ≥ 1 with base^n ≥ target, for base > 1 and target > 1.
fn least_power_at_least(base: f64, target: f64) -> u64 {
    let mut n = ((target.ln() / base.ln()).ceil() as u64).max(1);
    while n > 1 && base.powf((n - 1) as f64) >= target {
        n -= 1;
    }
    while base.powf(n as f64) < target {
        n += 1;
    }
    n
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn escape_index_fixed_point_never_escapes() {
        let z = Complex64::new(1.0, 0.0);
        assert_eq!(escape_index(z, 2, 100).unwrap(), None);
    }

    #[test]
    fn escape_index_real_growth() {
        let z = Complex64::new(1.4, 0.0);
        assert_eq!(escape_index(z, 2, 10).unwrap(), Some(2));
    }

    #[test]
    fn escape_index_rotation_chord() {
        // |z^k - 1| = 2 sin(k pi / 16) for z on the unit circle at pi/8
        let z = Complex64::from_polar(1.0, core::f64::consts::PI / 8.0);
        assert!(2.0 * (core::f64::consts::PI / 16.0).sin() < 0.5);
        assert!(2.0 * (core::f64::consts::PI / 8.0).sin() > 0.5);
        assert_eq!(escape_index(z, 2, 10).unwrap(), Some(2));
    }

    #[test]
    fn escape_index_rejects_small_m() {
        assert_eq!(
            escape_index(Complex64::new(1.4, 0.0), 1, 10).unwrap_err(),
            Error::InvalidM(1)
        );
    }

    #[test]
    fn certificate_for_m2_eps04() {
        let cert = EscapeCertificate::compute(2, 0.4).unwrap();
        assert_eq!((cert.n1(), cert.n2(), cert.n3(), cert.bound()), (3, 2, 2, 3));

        let delta = 0.4f64.asin() / 2.0;
        assert!((cert.delta() - delta).abs() < 1e-15);
        assert!((cert.delta() - 0.2058).abs() < 1e-4);
        let root = (0.4f64 * 0.4 - delta.sin() * delta.sin()).sqrt();
        assert!((cert.r0() - (delta.cos() - root)).abs() < 1e-15);
        assert!((cert.r1() - (delta.cos() + root)).abs() < 1e-15);
        assert!((cert.r0() - 0.6351).abs() < 5e-4);
        assert!((cert.r1() - 1.3227).abs() < 5e-4);
    }

    #[test]
    fn certificate_near_annulus_collapse() {
        let cert = EscapeCertificate::compute(2, 0.49999).unwrap();
        assert!(cert.invariants_hold());
        assert!(cert.bound() <= 4);
    }

    #[test]
    fn certificate_validates_inputs() {
        assert_eq!(
            EscapeCertificate::compute(2, 0.5).unwrap_err(),
            Error::EpsilonOutOfRange { eps: 0.5, m: 2 }
        );
        assert_eq!(
            EscapeCertificate::compute(1, 0.1).unwrap_err(),
            Error::InvalidM(1)
        );
        assert_eq!(
            EscapeCertificate::compute(2, 0.0).unwrap_err(),
            Error::EpsilonOutOfRange { eps: 0.0, m: 2 }
        );
    }

    #[test]
    fn brute_force_agrees_with_certificate() {
        let cert = EscapeCertificate::compute(2, 0.4).unwrap();
        let scan = annulus_max_escape(2, 0.4, 360, 50, 64).unwrap();
        assert!(scan.max_k <= cert.bound());
    }

    #[test]
    fn brute_force_degenerate_grid() {
        let scan = annulus_max_escape(2, 0.4, 2, 2, 64).unwrap();
        assert!(scan.max_k >= 1);
        let d = (scan.witness - 1.0).norm();
        assert!((d - 0.4).abs() < 1e-12 || (d - 0.5).abs() < 1e-12);
    }

    #[test]
    fn verify_accepts_good_and_rejects_tampered() {
        let cert = EscapeCertificate::compute(2, 0.4).unwrap();
        assert!(cert.clone().verify(360, 50).unwrap().holds);

        let tampered = cert.with_bound(1);
        let report = tampered.verify(360, 50).unwrap();
        assert!(!report.holds);
        assert!(report.max_k >= 2);

        let cert3 = EscapeCertificate::compute(3, 0.2).unwrap();
        assert!(cert3.verify(360, 50).unwrap().holds);
    }

    #[test]
    fn ensure_covers_restores_tampered_bound() {
        let cert = EscapeCertificate::compute(2, 0.4).unwrap().with_bound(1);
        let (fixed, doublings) = cert.ensure_covers(90, 20).unwrap();
        assert!(doublings >= 1);
        assert!(fixed.verify(90, 20).unwrap().holds);
    }

    #[test]
    fn conjugation_symmetry_is_exact() {
        let z = Complex64::new(1.21, 0.37);
        let k = escape_index(z, 3, 50).unwrap();
        let k_conj = escape_index(z.conj(), 3, 50).unwrap();
        assert_eq!(k, k_conj);
    }
}
