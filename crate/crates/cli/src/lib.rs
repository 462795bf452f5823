//! Command implementations behind the `wickforge` binary. Everything here
//! returns data; printing and exit codes live in `main.rs`.

pub mod json;
mod mesh;
mod target;

use std::collections::BTreeMap;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use wickforge_core::catalog::{Catalog, StoredMove};
use wickforge_core::grid::{Axis, Grid};
use wickforge_core::linalg::{classify_symmetric_2x2, Mat2, NormalForm2};
use wickforge_core::slice::{apply_wick_move, induced_signature, verify_in_slice, SignatureReport, SliceReport};
use wickforge_core::verify::{
    aggregate, curvature_verdict, evaluate_point, property_transfer_check, Ambient, PointRecord, Property,
    TransferReport, Verdict, DEFAULT_TOLERANCE,
};
use wickforge_core::{Error, Result, SliceSpec, SurfaceChart, WickMove};

pub use mesh::{mesh, MeshFormat};
pub use target::{load_catalog, resolve, Target, DATA_ENV};

/// Process exit status for an error: 1 for a failed geometric check, 2 for
/// anything that prevented the check from running.
pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::NotInSlice(_)
        | Error::TransferViolation { .. }
        | Error::SourceViolation { .. }
        | Error::TooManyDegenerate { .. }
        | Error::PointNotOnAmbient(_)
        | Error::DegeneratePoint { .. }
        | Error::DegeneratePlane => 1,
        _ => 2,
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub tolerance: f64,
    /// Replaces the real box of the entry's grid; imaginary offsets are kept.
    pub grid: Option<(Axis, Axis)>,
    pub jobs: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { tolerance: DEFAULT_TOLERANCE, grid: None, jobs: 1 }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(Error::Parse(format!("tolerance must be positive, got {}", self.tolerance)));
        }
        if self.jobs == 0 {
            return Err(Error::Parse("--jobs must be at least 1".into()));
        }
        Ok(())
    }

    pub fn grid_for(&self, default: &Grid) -> Grid {
        match self.grid {
            Some((u, v)) => Grid { u, v, ..*default },
            None => *default,
        }
    }
}

/// Evaluate every grid point on a pool of `jobs` threads; results come back
/// in grid order regardless of scheduling.
pub fn sweep(chart: &SurfaceChart, ambient: &Ambient, grid: &Grid, tol: f64, jobs: usize) -> Result<Vec<PointRecord>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Io(format!("thread pool: {e}")))?;
    pool.install(|| {
        (0..grid.len())
            .into_par_iter()
            .map(|k| {
                let (u, v) = grid.point(k);
                evaluate_point(chart, ambient, k, u, v, tol)
            })
            .collect()
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub property: Property,
    pub expected: bool,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CurvatureCheck {
    #[serde(rename = "K")]
    pub expected: Complex64,
    #[serde(flatten)]
    pub verdict: Verdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifySummary {
    pub verdicts: BTreeMap<Property, Verdict>,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub curvature: Option<CurvatureCheck>,
    pub degenerate_count: usize,
    pub total: usize,
    pub too_many_degenerate: bool,
    pub scale: f64,
    pub max_gauss_residual: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub entry: String,
    pub ambient: Ambient,
    pub grid: Grid,
    pub tolerance: f64,
    pub points: Vec<PointRecord>,
    pub summary: VerifySummary,
}

/// With `props`, every listed property must hold. Without, the entry's
/// annotations are checked both ways (including expected `false`), as is
/// its annotated curvature.
pub fn verify(target: &Target, props: Option<&[Property]>, cfg: &RunConfig) -> Result<VerifyReport> {
    cfg.validate()?;
    let grid = cfg.grid_for(&target.grid);
    let checks: Vec<(Property, bool)> = match props {
        Some(ps) => ps.iter().map(|&p| (p, true)).collect(),
        None => target.expected.properties(),
    };
    let mut evaluated: Vec<Property> = checks.iter().map(|c| c.0).collect();
    if props.is_none() {
        let supported = Property::ALL
            .into_iter()
            .filter(|p| !(matches!(target.ambient, Ambient::Sphere { .. }) && *p == Property::Parallel));
        evaluated.extend(supported);
    }
    evaluated.sort();
    evaluated.dedup();

    let points = sweep(&target.chart, &target.ambient, &grid, cfg.tolerance, cfg.jobs)?;
    let s = aggregate(&points, &target.ambient, &evaluated, cfg.tolerance)?;
    let checks: Vec<Check> = checks
        .into_iter()
        .map(|(p, expected)| Check { property: p, expected, holds: s.verdicts[&p].holds })
        .collect();
    let curvature = match (props, target.expected.k) {
        (None, Some(k)) => Some(CurvatureCheck { expected: k, verdict: curvature_verdict(&points, k, cfg.tolerance) }),
        _ => None,
    };
    let passed = !s.too_many_degenerate
        && checks.iter().all(|c| c.holds == c.expected)
        && curvature.as_ref().is_none_or(|c| c.verdict.holds);
    Ok(VerifyReport {
        entry: target.id.clone(),
        ambient: target.ambient,
        grid,
        tolerance: cfg.tolerance,
        points,
        summary: VerifySummary {
            verdicts: s.verdicts,
            checks,
            curvature,
            degenerate_count: s.degenerate_count,
            total: s.total,
            too_many_degenerate: s.too_many_degenerate,
            scale: s.scale,
            max_gauss_residual: s.max_gauss_residual,
            passed,
        },
    })
}

impl VerifyReport {
    /// One row per grid point.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::Io(e.to_string());
        w.write_record([
            "index", "u_re", "u_im", "v_re", "v_im", "excluded", "K_re", "K_im", "mean_curvature", "second_form",
            "nabla_h", "sectional_curvature", "gauss_residual",
        ])
        .map_err(io)?;
        let f = json::float;
        for p in &self.points {
            let [u, v] = p.params;
            let mut row = vec![p.index.to_string(), f(u.re), f(u.im), f(v.re), f(v.im)];
            match &p.curvature {
                Some(c) => {
                    let r = &c.residuals;
                    row.push("false".into());
                    row.extend([c.k.re, c.k.im, r.mean_curvature, r.second_form, r.nabla_h, r.sectional_curvature, c.gauss_residual].map(f));
                }
                None => {
                    row.push("true".into());
                    row.extend(std::iter::repeat_n(String::new(), 7));
                }
            }
            w.write_record(&row).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("CSV of ASCII fields"))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SliceOutcome {
    pub entry: String,
    pub slice: SliceSpec,
    pub in_slice: bool,
    pub membership: SliceReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub signature: Option<SignatureReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_signature: Option<usize>,
    pub passed: bool,
}

/// Membership and induced signature over the real part of the grid.
pub fn slice(target: &Target, spec: &SliceSpec, cfg: &RunConfig) -> Result<SliceOutcome> {
    cfg.validate()?;
    let grid = cfg.grid_for(&target.grid);
    let membership = verify_in_slice(&target.chart, spec, &grid)?;
    let in_slice = membership.in_slice();
    let signature = if in_slice { Some(induced_signature(&target.chart, spec, &grid)?) } else { None };
    // the expected signature refers to the entry's own slice
    let expected_signature = target.expected.signature.filter(|_| target.slice.as_ref() == Some(spec));
    let passed = in_slice
        && signature.as_ref().is_some_and(|s| s.signature.is_some())
        && expected_signature.is_none_or(|k| signature.as_ref().and_then(|s| s.signature) == Some(k));
    Ok(SliceOutcome { entry: target.id.clone(), slice: spec.clone(), in_slice, membership, signature, expected_signature, passed })
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassifyOutcome {
    pub input: Mat2,
    #[serde(flatten)]
    pub normal_form: NormalForm2,
    pub matrix: Mat2,
    pub reconstruction_error: f64,
    pub orthogonality_error: f64,
}

/// Normal form of a complex-symmetric 2x2 matrix given as
/// `[[[re,im],[re,im]],[[re,im],[re,im]]]`.
pub fn classify(text: &str) -> Result<ClassifyOutcome> {
    let input: Mat2 = serde_json::from_str(text)?;
    let nf = classify_symmetric_2x2(&input)?;
    Ok(ClassifyOutcome {
        input,
        matrix: nf.matrix(),
        reconstruction_error: nf.reconstruction_error(&input),
        orthogonality_error: nf.orthogonality_error(),
        normal_form: nf,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct WickOutcome {
    pub entry: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub to: Option<String>,
    #[serde(rename = "move")]
    pub atoms: WickMove,
    pub ambient: Ambient,
    pub chart: SurfaceChart,
    pub transfer: Vec<TransferReport>,
}

/// Resolve `--move`: a JSON file with an atom list, or the id of a stored
/// move's target.
pub fn find_move(target: &Target, arg: &str) -> Result<(WickMove, Option<String>)> {
    let path = std::path::Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path)?;
        return Ok((serde_json::from_str(&text)?, None));
    }
    let stored: Option<&StoredMove> = target.moves.iter().find(|m| m.to == arg);
    match stored {
        Some(m) => Ok((m.atoms.clone(), Some(m.to.clone()))),
        None => Err(Error::Parse(format!(
            "`{arg}` is neither a move file nor a stored move of `{}` (stored: {})",
            target.id,
            target.moves.iter().map(|m| m.to.as_str()).collect::<Vec<_>>().join(", ")
        ))),
    }
}

/// Apply a move and check that each property carries over. The moved chart
/// is sampled on the stored target's grid when there is one.
pub fn wick(
    catalog: &Catalog,
    target: &Target,
    mv: &WickMove,
    to: Option<&str>,
    props: &[Property],
    cfg: &RunConfig,
) -> Result<WickOutcome> {
    cfg.validate()?;
    let moved = apply_wick_move(&target.chart, mv)?;
    let ambient = target.ambient.moved(mv)?;
    let source_grid = cfg.grid_for(&target.grid);
    let target_grid = match to {
        Some(id) => cfg.grid_for(&catalog.get(id)?.default_grid()?),
        None => source_grid,
    };
    let transfer = props
        .iter()
        .map(|&p| property_transfer_check(&target.chart, &target.ambient, &source_grid, mv, &target_grid, p, cfg.tolerance))
        .collect::<Result<Vec<_>>>()?;
    Ok(WickOutcome { entry: target.id.clone(), to: to.map(str::to_string), atoms: mv.clone(), ambient, chart: moved, transfer })
}
