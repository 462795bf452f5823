//! Grid-level property verification and Wick transfer checks.
//!
//! Points are evaluated independently; aggregation is a pure function of
//! the index-ordered point records.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::ScalarField;
use crate::grid::Grid;
use crate::slice::{apply_wick_move, WickAtom, WickMove};
use crate::surface::{sphere_equation, CurvatureReport, PointGeometry, SurfaceChart};

type C = Complex64;

pub const DEFAULT_TOLERANCE: f64 = 1e-7;
/// A run fails when more than this fraction of grid points is degenerate.
pub const MAX_DEGENERATE_FRACTION: f64 = 0.2;

/// The space a surface is verified in. `n` is always the number of
/// coordinates of the flat space `C^n` the chart maps into; a sphere is
/// `z·z = radius^2` in that space.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Ambient {
    Flat { n: usize },
    Sphere { n: usize, radius: C },
}

impl Ambient {
    pub fn dim(&self) -> usize {
        match *self {
            Ambient::Flat { n } | Ambient::Sphere { n, .. } => n,
        }
    }

    pub fn fields(&self) -> Vec<ScalarField> {
        match *self {
            Ambient::Flat { .. } => Vec::new(),
            Ambient::Sphere { n, radius } => vec![ScalarField(sphere_equation(n, radius))],
        }
    }

    /// Image of the ambient under the similarity part of a move.
    pub fn moved(&self, mv: &WickMove) -> Result<Ambient> {
        let mut out = *self;
        for atom in mv.atoms() {
            atom.validate(self.dim())?;
            if let Ambient::Sphere { n, radius } = out {
                out = match atom {
                    WickAtom::Dilate { alpha } => Ambient::Sphere { n, radius: radius * alpha },
                    WickAtom::TranslateAmbient { w } if w.herm_norm() != 0.0 => {
                        return Err(Error::Unsupported("translate_ambient on a sphere".into()))
                    }
                    _ => out,
                };
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    Minimal,
    TotallyGeodesic,
    Parallel,
    Flat,
}

impl Property {
    pub const ALL: [Property; 4] = [Property::Minimal, Property::TotallyGeodesic, Property::Parallel, Property::Flat];

    pub fn name(&self) -> &'static str {
        match self {
            Property::Minimal => "minimal",
            Property::TotallyGeodesic => "totally_geodesic",
            Property::Parallel => "parallel",
            Property::Flat => "flat",
        }
    }

    /// Parse a comma-separated list such as `parallel,minimal`.
    pub fn parse_list(s: &str) -> Result<Vec<Property>> {
        let mut out: Vec<Property> = s.split(',').map(|p| p.trim().parse()).collect::<Result<_>>()?;
        out.sort();
        out.dedup();
        Ok(out)
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.replace('-', "_").as_str() {
            "minimal" => Ok(Property::Minimal),
            "totally_geodesic" | "tg" => Ok(Property::TotallyGeodesic),
            "parallel" => Ok(Property::Parallel),
            "flat" => Ok(Property::Flat),
            _ => Err(Error::Parse(format!(
                "unknown property `{s}` (expected minimal, totally_geodesic, parallel or flat)"
            ))),
        }
    }
}

/// Second form relative to a sphere ambient, summarized.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RelativeSummary {
    pub max_abs: f64,
    pub mean_curvature: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PointRecord {
    pub index: usize,
    pub params: [C; 2],
    /// Why the point was excluded, if it was.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub excluded: Option<String>,
    #[serde(flatten)]
    pub curvature: Option<CurvatureReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relative: Option<RelativeSummary>,
}

impl PointRecord {
    pub fn is_excluded(&self) -> bool {
        self.excluded.is_some()
    }

    fn residual(&self, prop: Property, ambient: &Ambient) -> Result<Option<f64>> {
        let Some(c) = &self.curvature else { return Ok(None) };
        let r = &c.residuals;
        Ok(Some(match (ambient, prop) {
            (_, Property::Flat) => r.sectional_curvature,
            (Ambient::Flat { .. }, Property::Minimal) => r.mean_curvature,
            (Ambient::Flat { .. }, Property::TotallyGeodesic) => r.second_form,
            (Ambient::Flat { .. }, Property::Parallel) => r.nabla_h,
            (Ambient::Sphere { .. }, Property::Minimal) => self.relative.expect("sphere ambient").mean_curvature,
            (Ambient::Sphere { .. }, Property::TotallyGeodesic) => self.relative.expect("sphere ambient").max_abs,
            (Ambient::Sphere { .. }, Property::Parallel) => {
                return Err(Error::Unsupported("parallel inside a sphere".into()))
            }
        }))
    }
}

/// Evaluate one grid point. Null tangent planes and singular evaluations
/// are recorded as excluded rather than failing the run.
pub fn evaluate_point(chart: &SurfaceChart, ambient: &Ambient, index: usize, u: C, v: C, tol: f64) -> Result<PointRecord> {
    if chart.ambient_dim() != ambient.dim() {
        return Err(Error::DimensionMismatch { expected: ambient.dim(), found: chart.ambient_dim() });
    }
    let excluded = |reason: String| PointRecord { index, params: [u, v], excluded: Some(reason), curvature: None, relative: None };
    let geom = match PointGeometry::compute(chart, u, v) {
        Ok(g) => g,
        Err(e @ (Error::DegeneratePoint { .. } | Error::DegeneratePlane | Error::SingularEvaluation { .. })) => {
            return Ok(excluded(e.to_string()))
        }
        Err(e) => return Err(e),
    };
    let relative = match ambient {
        Ambient::Flat { .. } => None,
        Ambient::Sphere { .. } => match geom.relative_to(&ambient.fields(), tol) {
            Ok(rel) => Some(RelativeSummary { max_abs: rel.max_abs, mean_curvature: rel.mean_curvature.herm_norm() }),
            Err(e @ Error::NullVectorEncountered { .. }) => return Ok(excluded(e.to_string())),
            Err(e) => return Err(e),
        },
    };
    Ok(PointRecord { index, params: [u, v], excluded: None, curvature: Some(geom.report(tol)), relative })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    pub max_residual: f64,
    pub threshold: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Summary {
    pub verdicts: BTreeMap<Property, Verdict>,
    pub degenerate_count: usize,
    pub total: usize,
    /// More than the allowed fraction of points was excluded; every verdict
    /// is then false.
    pub too_many_degenerate: bool,
    /// Largest `|h|` over regular points, the scale of the zero tests.
    pub scale: f64,
    pub max_gauss_residual: f64,
}

impl Summary {
    pub fn all_hold(&self) -> bool {
        self.verdicts.values().all(|v| v.holds)
    }
}

/// Aggregate residuals: a property holds when its largest residual over
/// the regular points is below `tol * (1 + max |h|)`.
pub fn aggregate(records: &[PointRecord], ambient: &Ambient, props: &[Property], tol: f64) -> Result<Summary> {
    let total = records.len();
    let degenerate_count = records.iter().filter(|r| r.is_excluded()).count();
    let too_many = degenerate_count as f64 > MAX_DEGENERATE_FRACTION * total as f64;
    let regular = records.iter().filter_map(|r| r.curvature.as_ref());
    let scale = regular.clone().map(|c| c.h_norm).fold(0.0, f64::max);
    let max_gauss_residual = regular.map(|c| c.gauss_residual).fold(0.0, f64::max);
    let threshold = tol * (1.0 + scale);
    let mut verdicts = BTreeMap::new();
    for &p in props {
        let mut worst = 0.0f64;
        for r in records {
            if let Some(x) = r.residual(p, ambient)? {
                worst = worst.max(x);
            }
        }
        verdicts.insert(p, Verdict { holds: !too_many && worst < threshold, max_residual: worst, threshold });
    }
    Ok(Summary { verdicts, degenerate_count, total, too_many_degenerate: too_many, scale, max_gauss_residual })
}

/// Constant-curvature check: `max |K - expected| < tol * (1 + |expected|)`.
pub fn curvature_verdict(records: &[PointRecord], expected: C, tol: f64) -> Verdict {
    let worst = records
        .iter()
        .filter_map(|r| r.curvature.as_ref())
        .map(|c| (c.k - expected).norm())
        .fold(0.0, f64::max);
    let threshold = tol * (1.0 + expected.norm());
    Verdict { holds: worst < threshold, max_residual: worst, threshold }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GridReport {
    pub points: Vec<PointRecord>,
    pub summary: Summary,
}

/// Sequential sweep over `grid`.
pub fn verify_grid(chart: &SurfaceChart, ambient: &Ambient, grid: &Grid, props: &[Property], tol: f64) -> Result<GridReport> {
    let points = grid
        .points()
        .enumerate()
        .map(|(k, (u, v))| evaluate_point(chart, ambient, k, u, v, tol))
        .collect::<Result<Vec<_>>>()?;
    let summary = aggregate(&points, ambient, props, tol)?;
    Ok(GridReport { points, summary })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TransferReport {
    pub property: Property,
    pub source: Verdict,
    pub target: Verdict,
}

/// Check that `property` survives `mv`: it must hold on the source grid,
/// and then is required to hold for the moved chart on `target_grid`.
pub fn property_transfer_check(
    source: &SurfaceChart,
    ambient: &Ambient,
    source_grid: &Grid,
    mv: &WickMove,
    target_grid: &Grid,
    property: Property,
    tol: f64,
) -> Result<TransferReport> {
    let before = verify_grid(source, ambient, source_grid, &[property], tol)?;
    let src = before.summary.verdicts[&property];
    if before.summary.too_many_degenerate {
        return Err(Error::TooManyDegenerate { degenerate: before.summary.degenerate_count, total: before.summary.total });
    }
    if !src.holds {
        return Err(Error::SourceViolation { property: property.to_string(), residual: src.max_residual });
    }
    let moved = apply_wick_move(source, mv)?;
    let after = verify_grid(&moved, &ambient.moved(mv)?, target_grid, &[property], tol)?;
    let tgt = after.summary.verdicts[&property];
    if !tgt.holds {
        return Err(Error::TransferViolation {
            property: property.to_string(),
            source_residual: src.max_residual,
            target_residual: tgt.max_residual,
        });
    }
    Ok(TransferReport { property, source: src, target: tgt })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{ChartProgram, Expr};
    use crate::scalar::{c64, I};

    fn sphere() -> SurfaceChart {
        let (u, v) = (Expr::u(), Expr::v());
        let out = vec![u.clone().cos() * v.clone().cos(), u.clone().cos() * v.sin(), u.sin()];
        SurfaceChart::new("s", ChartProgram::new(out).unwrap())
    }

    fn grid() -> Grid {
        Grid::real((-1.0, 1.0), (0.0, 3.0)).with_resolution(7, 7).unwrap().shifted(0.2, -0.1)
    }

    #[test]
    fn property_names() {
        assert_eq!(Property::parse_list("parallel, minimal,flat").unwrap(), vec![
            Property::Minimal,
            Property::Parallel,
            Property::Flat
        ]);
        assert_eq!("totally-geodesic".parse::<Property>().unwrap(), Property::TotallyGeodesic);
        assert!("round".parse::<Property>().is_err());
    }

    #[test]
    fn sphere_is_parallel_not_minimal() {
        let r = verify_grid(&sphere(), &Ambient::Flat { n: 3 }, &grid(), &Property::ALL, DEFAULT_TOLERANCE).unwrap();
        let v = &r.summary.verdicts;
        assert!(v[&Property::Parallel].holds);
        assert!(!v[&Property::Minimal].holds && !v[&Property::Flat].holds && !v[&Property::TotallyGeodesic].holds);
        assert!(curvature_verdict(&r.points, c64(1.0, 0.0), 1e-8).holds);
    }

    #[test]
    fn dilation_transfers_parallel_and_flips_curvature() {
        let mv = WickMove(vec![WickAtom::Dilate { alpha: I }]);
        let rep = property_transfer_check(&sphere(), &Ambient::Flat { n: 3 }, &grid(), &mv, &grid(), Property::Parallel, DEFAULT_TOLERANCE)
            .unwrap();
        assert!(rep.target.holds);
        let moved = apply_wick_move(&sphere(), &mv).unwrap();
        let r = verify_grid(&moved, &Ambient::Flat { n: 3 }, &grid(), &[], DEFAULT_TOLERANCE).unwrap();
        assert!(curvature_verdict(&r.points, c64(-1.0, 0.0), 1e-8).holds);
    }

    #[test]
    fn transfer_requires_source_property() {
        let mv = WickMove::identity();
        let err = property_transfer_check(&sphere(), &Ambient::Flat { n: 3 }, &grid(), &mv, &grid(), Property::Minimal, 1e-7);
        assert!(matches!(err, Err(Error::SourceViolation { .. })));
    }

    #[test]
    fn degenerate_points_are_counted() {
        // L_u = (1, i, 0) is null and orthogonal to L_v: det g vanishes everywhere.
        let (u, v) = (Expr::u(), Expr::v());
        let c = SurfaceChart::new("null", ChartProgram::new(vec![u.clone(), I * u, v.powi(2) / 2.0]).unwrap());
        let g = Grid::real((0.0, 1.0), (0.0, 1.0)).with_resolution(2, 2).unwrap();
        let r = verify_grid(&c, &Ambient::Flat { n: 3 }, &g, &[Property::Minimal], 1e-7).unwrap();
        assert_eq!(r.summary.degenerate_count, 4);
        assert!(r.summary.too_many_degenerate && !r.summary.all_hold());
    }

    #[test]
    fn parallel_in_sphere_is_unsupported() {
        let c = SurfaceChart::new(
            "s",
            ChartProgram::new(vec![Expr::u().cos() * Expr::v().cos(), Expr::u().cos() * Expr::v().sin(), Expr::u().sin(), Expr::real(0.0)])
                .unwrap(),
        );
        let amb = Ambient::Sphere { n: 4, radius: c64(1.0, 0.0) };
        assert!(matches!(verify_grid(&c, &amb, &grid(), &[Property::Parallel], 1e-7), Err(Error::Unsupported(_))));
        let r = verify_grid(&c, &amb, &grid(), &[Property::TotallyGeodesic, Property::Minimal], 1e-7).unwrap();
        assert!(r.summary.all_hold());
    }

    #[test]
    fn sphere_ambient_follows_dilation() {
        let amb = Ambient::Sphere { n: 4, radius: c64(1.0, 0.0) };
        let mv = WickMove(vec![WickAtom::Dilate { alpha: I }, WickAtom::PermuteCoords { sigma: vec![3, 0, 1, 2] }]);
        assert_eq!(amb.moved(&mv).unwrap(), Ambient::Sphere { n: 4, radius: I });
    }
}
