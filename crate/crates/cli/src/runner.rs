//! Subcommand implementations. Each runner returns the full output
//! document as a string; the caller decides where it goes. All iteration
//! is row-major and all floats use shortest round-trip formatting, so
//! identical inputs give byte-identical outputs.

use std::path::Path;

use lcachar_core::escape::EscapeCertificate;
use lcachar_core::group::{word_length, GeneratingBox};
use lcachar_core::recovery::{self, recover_character, CharacterFunctional};
use lcachar_core::{beurling, character, CcFunction, Complex64, GenChar, GroupElement};

use crate::formats::{
    CertificateJson, ElementJson, FunctionJson, FunctionalJson, GenCharJson, GroupSpecJson,
};
use crate::output::{emit, fmt_f64, ordered_parallel, Csv};
use crate::CliError;

/// Rectangle of exponents: `re` sweeps the rows, `im` the columns.
#[derive(Debug, Clone, Copy)]
pub struct GridRect {
    pub re_min: f64,
    pub re_max: f64,
    pub re_count: usize,
    pub im_min: f64,
    pub im_max: f64,
    pub im_count: usize,
}

impl GridRect {
    /// Parses `re0:re1:nre:im0:im1:nim`.
    pub fn parse(s: &str) -> Result<Self, CliError> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 6 {
            return Err(CliError::Usage(format!(
                "grid must be re0:re1:nre:im0:im1:nim, got `{s}`"
            )));
        }
        let rect = GridRect {
            re_min: parse_num(parts[0], "grid")?,
            re_max: parse_num(parts[1], "grid")?,
            re_count: parse_count(parts[2])?,
            im_min: parse_num(parts[3], "grid")?,
            im_max: parse_num(parts[4], "grid")?,
            im_count: parse_count(parts[5])?,
        };
        Ok(rect)
    }

    fn point(&self, idx: usize) -> Complex64 {
        let (i, j) = (idx / self.im_count, idx % self.im_count);
        Complex64::new(
            lattice(self.re_min, self.re_max, self.re_count, i),
            lattice(self.im_min, self.im_max, self.im_count, j),
        )
    }

    fn len(&self) -> usize {
        self.re_count * self.im_count
    }
}

fn lattice(lo: f64, hi: f64, count: usize, i: usize) -> f64 {
    if count == 1 {
        return lo;
    }
    if i + 1 == count {
        return hi;
    }
    lo + (hi - lo) * i as f64 / (count - 1) as f64
}

fn parse_num(s: &str, what: &str) -> Result<f64, CliError> {
    s.parse()
        .map_err(|_| CliError::Usage(format!("{what}: `{s}` is not a number")))
}

fn parse_count(s: &str) -> Result<usize, CliError> {
    let n: usize = s
        .parse()
        .map_err(|_| CliError::Usage(format!("grid count `{s}` is not an integer")))?;
    if n < 2 {
        return Err(CliError::Usage("grid counts must be at least 2".into()));
    }
    Ok(n)
}

/// Parses `AxR` into (angles, radii).
pub fn parse_scan_dims(s: &str) -> Result<(usize, usize), CliError> {
    let (a, r) = s
        .split_once('x')
        .ok_or_else(|| CliError::Usage(format!("grid must be AxR, got `{s}`")))?;
    let a: usize = a
        .parse()
        .map_err(|_| CliError::Usage(format!("angle count `{a}` is not an integer")))?;
    let r: usize = r
        .parse()
        .map_err(|_| CliError::Usage(format!("radius count `{r}` is not an integer")))?;
    Ok((a, r))
}

/// Parses `lo:hi` (inclusive).
pub fn parse_range(s: &str) -> Result<(i64, i64), CliError> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| CliError::Usage(format!("range must be lo:hi, got `{s}`")))?;
    let lo: i64 = lo
        .parse()
        .map_err(|_| CliError::Usage(format!("range bound `{lo}` is not an integer")))?;
    let hi: i64 = hi
        .parse()
        .map_err(|_| CliError::Usage(format!("range bound `{hi}` is not an integer")))?;
    if hi < lo {
        return Err(CliError::Usage("range must have lo <= hi".into()));
    }
    Ok((lo, hi))
}

/// Parses `re,im`.
pub fn parse_complex(s: &str) -> Result<Complex64, CliError> {
    let (re, im) = s
        .split_once(',')
        .ok_or_else(|| CliError::Usage(format!("complex value must be re,im, got `{s}`")))?;
    Ok(Complex64::new(
        parse_num(re, "complex value")?,
        parse_num(im, "complex value")?,
    ))
}

fn load_function(path: &Path) -> Result<CcFunction, CliError> {
    let raw = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    let json: FunctionJson = serde_json::from_str(&raw)
        .map_err(|e| CliError::Usage(format!("invalid function file {}: {e}", path.display())))?;
    Ok(json.to_core()?)
}

pub fn run_lemma_n(
    m: u32,
    eps: f64,
    verify: bool,
    grid: (usize, usize),
    out: Option<&Path>,
) -> Result<(), CliError> {
    if m < 2 {
        return Err(CliError::Usage("m must exceed 1".into()));
    }
    if !(eps > 0.0) {
        return Err(CliError::Usage("eps must be positive".into()));
    }
    if eps >= 1.0 / f64::from(m) {
        return Err(CliError::Usage("eps must be < 1/m".into()));
    }
    let cert = EscapeCertificate::compute(m, eps)?;
    let doc = if verify {
        let report = cert.verify(grid.0, grid.1)?;
        log::info!(
            "verified N={} against a {}x{} annulus grid: max escape {}",
            cert.bound(),
            grid.0,
            grid.1,
            report.max_k
        );
        let mut json =
            serde_json::to_string(&CertificateJson::new(&cert, report.holds, Some(report.max_k)))
                .expect("certificate serializes");
        json.push('\n');
        if !report.holds {
            return Err(CliError::Verification(json));
        }
        json
    } else {
        let mut json = serde_json::to_string(&CertificateJson::new(&cert, false, None))
            .expect("certificate serializes");
        json.push('\n');
        json
    };
    emit(out, &doc)
}

pub fn run_transform(
    input: &Path,
    rect: GridRect,
    parallel: usize,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let f = load_function(input)?;
    if f.group().real_rank() == 0 {
        return Err(CliError::Usage(
            "transform sweeps need a group with a real factor".into(),
        ));
    }
    log::info!("transform sweep over {} exponents", rect.len());
    let rows = ordered_parallel(rect.len(), parallel, |idx| {
        let z = rect.point(idx);
        let alpha = GenChar::exp_on_first_real(f.group().clone(), z)
            .expect("real rank checked above");
        let v = f.gelfand_transform(&alpha).expect("spec matches");
        [fmt_f64(z.re), fmt_f64(z.im), fmt_f64(v.re), fmt_f64(v.im)]
    });
    let mut csv = Csv::new(&["re_z", "im_z", "re_val", "im_val"]);
    for row in rows {
        csv.row(&row);
    }
    emit(out, &csv.finish())
}

pub fn run_convolve(a: &Path, b: &Path, out: Option<&Path>) -> Result<(), CliError> {
    let f = load_function(a)?;
    let g = load_function(b)?;
    let conv = f.convolve(&g)?;
    let mut json =
        serde_json::to_string(&FunctionJson::from_core(&conv)).expect("function serializes");
    json.push('\n');
    emit(out, &json)
}

pub fn run_chars(orders: &[u32], out: Option<&Path>) -> Result<(), CliError> {
    let chars = character::enumerate_characters(orders)?;
    let k = orders.len();
    let mut header: Vec<String> = vec!["index".into()];
    header.extend((0..k).map(|i| format!("c{i}")));
    for i in 0..k {
        header.push(format!("re_g{i}"));
        header.push(format!("im_g{i}"));
    }
    let header_refs: Vec<&str> = header.iter().map(|s| s.as_str()).collect();
    let mut csv = Csv::new(&header_refs);

    let spec = chars
        .first()
        .map(|c| c.spec().clone())
        .expect("orders are validated nonempty by enumerate");
    let generators: Vec<GroupElement> = (0..k)
        .map(|i| {
            let mut residues = vec![0i64; k];
            residues[i] = 1;
            spec.element(&[], &[], &residues).expect("valid generator")
        })
        .collect();
    for (index, alpha) in chars.iter().enumerate() {
        let mut row: Vec<String> = vec![index.to_string()];
        row.extend(alpha.dual_residues().iter().map(|c| c.to_string()));
        for gen in &generators {
            let v = alpha.evaluate(gen).expect("spec matches");
            row.push(fmt_f64(v.re));
            row.push(fmt_f64(v.im));
        }
        csv.row(&row);
    }
    emit(out, &csv.finish())
}

/// All index tuples of the (real, int) axes over `lo..=hi`, with the
/// compact part enumerated in full.
fn recovery_points(
    f: &CcFunction,
    range: (i64, i64),
) -> Result<Vec<GroupElement>, CliError> {
    let spec = f.group();
    let m = spec.real_rank();
    let n = spec.int_rank();
    let span = (range.1 - range.0 + 1) as usize;
    let mut dims = vec![span; m + n];
    dims.extend(spec.cyclic_orders().iter().map(|&d| d as usize));

    let mut points = Vec::new();
    let mut odometer = vec![0usize; dims.len()];
    loop {
        let reals: Vec<f64> = (0..m)
            .map(|j| (range.0 + odometer[j] as i64) as f64 * f.real_step()[j])
            .collect();
        let ints: Vec<i64> = (0..n).map(|j| range.0 + odometer[m + j] as i64).collect();
        let residues: Vec<i64> = (0..dims.len() - m - n)
            .map(|i| odometer[m + n + i] as i64)
            .collect();
        points.push(spec.element(&reals, &ints, &residues)?);

        let mut axis = dims.len();
        loop {
            if axis == 0 {
                return Ok(points);
            }
            axis -= 1;
            odometer[axis] += 1;
            if odometer[axis] < dims[axis] {
                break;
            }
            odometer[axis] = 0;
        }
    }
}

pub fn run_recover(
    input: &Path,
    functional: Option<&str>,
    hidden: Option<&str>,
    range: (i64, i64),
    out: Option<&Path>,
) -> Result<(), CliError> {
    let f = load_function(input)?;
    let char_json = match (functional, hidden) {
        (Some(spec), None) => {
            let parsed: FunctionalJson = serde_json::from_str(spec)
                .map_err(|e| CliError::Usage(format!("invalid functional: {e}")))?;
            if parsed.kind != "gelfand" {
                return Err(CliError::Usage(format!(
                    "unknown functional kind `{}`",
                    parsed.kind
                )));
            }
            parsed.character
        }
        (None, Some(spec)) => serde_json::from_str::<GenCharJson>(spec)
            .map_err(|e| CliError::Usage(format!("invalid character: {e}")))?,
        _ => {
            return Err(CliError::Usage(
                "exactly one of --functional or --hidden is required".into(),
            ))
        }
    };
    let alpha = char_json.to_core(f.group())?;
    let phi = CharacterFunctional::new(alpha);
    let points = recovery_points(&f, range)?;
    log::info!("recovering over {} sample points", points.len());
    let rc = recover_character(&phi, &f, &points, recovery::DEFAULT_DENOM_TOL)?;

    let spec = f.group();
    let axes = spec.real_rank() + spec.int_rank() + spec.cyclic_orders().len();
    let mut header: Vec<String> = (0..axes).map(|i| format!("s{i}")).collect();
    header.push("re_alpha".into());
    header.push("im_alpha".into());
    let header_refs: Vec<&str> = header.iter().map(|s| s.as_str()).collect();
    let mut csv = Csv::new(&header_refs);
    for (p, v) in rc.points().iter().zip(rc.values()) {
        let mut row: Vec<String> = Vec::with_capacity(axes + 2);
        row.extend(p.real_coords().iter().map(|&x| fmt_f64(x)));
        row.extend(p.int_coords().iter().map(|k| k.to_string()));
        row.extend(p.residues().iter().map(|r| r.to_string()));
        row.push(fmt_f64(v.re));
        row.push(fmt_f64(v.im));
        csv.row(&row);
    }
    emit(out, &csv.finish())
}

pub fn run_strip_sweep(
    input: &Path,
    rate: f64,
    rect: GridRect,
    parallel: usize,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let f = load_function(input)?;
    if f.group().real_rank() == 0 {
        return Err(CliError::Usage(
            "strip sweeps need a group with a real factor".into(),
        ));
    }
    if !(rate > 0.0) {
        return Err(CliError::Usage("--r must be positive".into()));
    }
    log::info!("strip sweep over {} exponents at rate {rate}", rect.len());
    let rows = ordered_parallel(rect.len(), parallel, |idx| {
        let z = rect.point(idx);
        let report = beurling::strip_bound_check(&f, z, rate).expect("inputs checked above");
        [
            fmt_f64(z.re),
            fmt_f64(z.im),
            fmt_f64(report.transform_abs),
            fmt_f64(report.norm),
            report.in_strip.to_string(),
            report.ok.to_string(),
        ]
    });
    let mut csv = Csv::new(&[
        "re_z",
        "im_z",
        "abs_transform",
        "weighted_norm",
        "in_strip",
        "ok",
    ]);
    for row in rows {
        csv.row(&row);
    }
    emit(out, &csv.finish())
}

pub fn run_strip_witness(
    z: Complex64,
    rate: f64,
    bumps: usize,
    step: f64,
    shift: f64,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let steps = beurling::divergence_witness(z, rate, bumps, step, shift)?;
    let mut csv = Csv::new(&["bump", "center", "abs_transform", "weighted_norm", "ratio"]);
    for (i, s) in steps.iter().enumerate() {
        csv.row(&[
            i.to_string(),
            fmt_f64(s.center),
            fmt_f64(s.transform_abs),
            fmt_f64(s.weighted_norm),
            fmt_f64(s.ratio),
        ]);
    }
    emit(out, &csv.finish())
}

pub fn run_wordlen(
    group: &str,
    element: &str,
    halfwidths: Option<&str>,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let spec = serde_json::from_str::<GroupSpecJson>(group)
        .map_err(|e| CliError::Usage(format!("invalid group: {e}")))?
        .to_core()?;
    let el = serde_json::from_str::<ElementJson>(element)
        .map_err(|e| CliError::Usage(format!("invalid element: {e}")))?
        .to_core(&spec)?;
    let widths: Vec<f64> = match halfwidths {
        None => Vec::new(),
        Some(list) => list
            .split(',')
            .map(|s| parse_num(s.trim(), "halfwidth"))
            .collect::<Result<_, _>>()?,
    };
    let bx = GeneratingBox::new(widths)?;
    let p = word_length(&el, &bx)?;
    emit(out, &format!("{p}\n"))
}
