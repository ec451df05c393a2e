//! JSON schemas for groups, characters, functions, functionals, and escape
//! certificates, with conversions to and from the core types.
//!
//! Complex numbers are `[re, im]` pairs. Function value tables are
//! flattened row-major over (real axes, ℤ axes, cyclic axes); `extents`
//! lists the real and ℤ axis lengths, the cyclic axes are always full.

use serde::{Deserialize, Serialize};

use lcachar_core::escape::EscapeCertificate;
use lcachar_core::{CcFunction, Complex64, Error, GenChar, GroupElement, GroupSpec};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupSpecJson {
    pub real_rank: usize,
    pub int_rank: usize,
    #[serde(default)]
    pub cyclic_orders: Vec<u32>,
}

impl GroupSpecJson {
    pub fn to_core(&self) -> Result<GroupSpec, Error> {
        GroupSpec::new(self.real_rank, self.int_rank, self.cyclic_orders.clone())
    }

    pub fn from_core(spec: &GroupSpec) -> Self {
        Self {
            real_rank: spec.real_rank(),
            int_rank: spec.int_rank(),
            cyclic_orders: spec.cyclic_orders().to_vec(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GenCharJson {
    #[serde(default)]
    pub z: Vec<[f64; 2]>,
    #[serde(default)]
    pub w: Vec<[f64; 2]>,
    #[serde(default)]
    pub dual_residues: Vec<u32>,
}

impl GenCharJson {
    pub fn to_core(&self, spec: &GroupSpec) -> Result<GenChar, Error> {
        GenChar::new(
            spec.clone(),
            self.z.iter().map(|c| Complex64::new(c[0], c[1])).collect(),
            self.w.iter().map(|c| Complex64::new(c[0], c[1])).collect(),
            self.dual_residues.clone(),
        )
    }

    pub fn from_core(alpha: &GenChar) -> Self {
        Self {
            z: alpha.z().iter().map(|c| [c.re, c.im]).collect(),
            w: alpha.w().iter().map(|c| [c.re, c.im]).collect(),
            dual_residues: alpha.dual_residues().to_vec(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ElementJson {
    #[serde(default)]
    pub real_coords: Vec<f64>,
    #[serde(default)]
    pub int_coords: Vec<i64>,
    #[serde(default)]
    pub residues: Vec<i64>,
}

impl ElementJson {
    pub fn to_core(&self, spec: &GroupSpec) -> Result<GroupElement, Error> {
        spec.element(&self.real_coords, &self.int_coords, &self.residues)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FunctionJson {
    pub group: GroupSpecJson,
    #[serde(default)]
    pub real_step: Vec<f64>,
    #[serde(default)]
    pub real_offset: Vec<i64>,
    #[serde(default)]
    pub int_offset: Vec<i64>,
    pub extents: Vec<usize>,
    pub values: Vec<[f64; 2]>,
}

impl FunctionJson {
    pub fn to_core(&self) -> Result<CcFunction, Error> {
        CcFunction::new(
            self.group.to_core()?,
            self.real_step.clone(),
            self.real_offset.clone(),
            self.int_offset.clone(),
            self.extents.clone(),
            self.values
                .iter()
                .map(|c| Complex64::new(c[0], c[1]))
                .collect(),
        )
    }

    pub fn from_core(f: &CcFunction) -> Self {
        Self {
            group: GroupSpecJson::from_core(f.group()),
            real_step: f.real_step().to_vec(),
            real_offset: f.real_offset().to_vec(),
            int_offset: f.int_offset().to_vec(),
            extents: f.support_dims().to_vec(),
            values: f.values().iter().map(|c| [c.re, c.im]).collect(),
        }
    }
}

/// Description of a multiplicative functional. The only kind understood is
/// `gelfand`: integration against a character, useful as a test harness.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FunctionalJson {
    pub kind: String,
    #[serde(rename = "char")]
    pub character: GenCharJson,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertificateJson {
    pub m: u32,
    pub eps: f64,
    pub delta: f64,
    pub r0: f64,
    pub r1: f64,
    pub n1: u64,
    pub n2: u64,
    pub n3: u64,
    #[serde(rename = "N")]
    pub n: u64,
    pub verified: bool,
    pub grid_max_k: Option<u64>,
}

impl CertificateJson {
    pub fn new(cert: &EscapeCertificate, verified: bool, grid_max_k: Option<u64>) -> Self {
        Self {
            m: cert.m(),
            eps: cert.eps(),
            delta: cert.delta(),
            r0: cert.r0(),
            r1: cert.r1(),
            n1: cert.n1(),
            n2: cert.n2(),
            n3: cert.n3(),
            n: cert.bound(),
            verified,
            grid_max_k,
        }
    }
}
