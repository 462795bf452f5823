//! Registry of the surfaces, spaces and slices the toolkit knows about.
//!
//! The built-in registry is defined here; `data/catalog/*.json` is the same
//! registry in the on-disk schema (checked by a test), so that a data
//! directory can extend or replace it.

use std::collections::BTreeSet;
use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::{ChartProgram, Expr, ScalarField};
use crate::grid::Grid;
use crate::linalg::CVec;
use crate::scalar::{c64, I};
use crate::slice::{Param, SliceSpec, WickAtom, WickMove};
use crate::surface::{implicit_residual, sphere_equation, SurfaceChart};
use crate::verify::{Ambient, Property};

type C = Complex64;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Expected {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub minimal: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub totally_geodesic: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parallel: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flat: Option<bool>,
    /// Constant sectional curvature.
    #[serde(rename = "K", default, skip_serializing_if = "Option::is_none")]
    pub k: Option<C>,
    /// Signature of the induced metric on the slice.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signature: Option<usize>,
}

impl Expected {
    pub fn get(&self, p: Property) -> Option<bool> {
        match p {
            Property::Minimal => self.minimal,
            Property::TotallyGeodesic => self.totally_geodesic,
            Property::Parallel => self.parallel,
            Property::Flat => self.flat,
        }
    }

    /// Annotated properties with their expected truth value.
    pub fn properties(&self) -> Vec<(Property, bool)> {
        Property::ALL.iter().filter_map(|&p| self.get(p).map(|b| (p, b))).collect()
    }
}

/// A move stored on an entry, leading to the entry `to`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StoredMove {
    pub to: String,
    #[serde(rename = "move")]
    pub atoms: WickMove,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub schema: u32,
    pub id: String,
    pub description: String,
    /// The mathematical statements the expected annotations encode.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub claims: Vec<String>,
    pub ambient: Ambient,
    /// Absent for entries that describe a space rather than a surface.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chart: Option<ChartProgram>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub implicit: Vec<ScalarField>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slice: Option<SliceSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<Grid>,
    #[serde(default)]
    pub expected: Expected,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub moves: Vec<StoredMove>,
}

impl CatalogEntry {
    pub fn surface(&self) -> Result<SurfaceChart> {
        let program = self.chart.clone().ok_or_else(|| Error::NotASurface(self.id.clone()))?;
        Ok(SurfaceChart::new(self.id.clone(), program).with_implicit(self.implicit.clone()))
    }

    pub fn default_grid(&self) -> Result<Grid> {
        self.grid.ok_or_else(|| Error::NotASurface(self.id.clone()))
    }

    pub fn is_complex(&self) -> bool {
        self.slice.is_none()
    }

    pub fn implicit_residual(&self, point: &[C]) -> Result<f64> {
        let n = self.ambient.dim();
        if point.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: point.len() });
        }
        implicit_residual(&self.implicit, point)
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Parse(format!("catalog entry `{}`: {m}", self.id)));
        if self.schema != SCHEMA_VERSION {
            return bad(format!("unsupported schema {}", self.schema));
        }
        let n = self.ambient.dim();
        if let Some(c) = &self.chart {
            if c.dim() != n {
                return bad(format!("chart has {} outputs, ambient has {n}", c.dim()));
            }
            if self.grid.is_none() {
                return bad("surface entry without a grid".into());
            }
        }
        if let Some(f) = self.implicit.iter().find(|f| f.max_coord() > n) {
            return bad(format!("implicit equation uses z{} in C^{n}", f.max_coord()));
        }
        if let Some(s) = &self.slice {
            if s.ambient_dim() != n {
                return bad(format!("slice of dimension {} in C^{n}", s.ambient_dim()));
            }
        }
        for m in &self.moves {
            for a in m.atoms.atoms() {
                a.validate(n).or_else(|e| bad(e.to_string()))?;
            }
        }
        Ok(())
    }
}

/// Filter for [`Catalog::list`]; unset fields match everything.
#[derive(Clone, Debug, Default)]
pub struct Filter {
    pub sphere_ambient: Option<bool>,
    /// Entries whose annotation says this property holds.
    pub property: Option<Property>,
    /// Signature of the entry's slice (not of the induced metric).
    pub signature: Option<usize>,
    pub surfaces_only: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
}

impl Catalog {
    pub fn new(entries: Vec<CatalogEntry>) -> Result<Self> {
        let mut ids = BTreeSet::new();
        for e in &entries {
            e.validate()?;
            if !ids.insert(e.id.clone()) {
                return Err(Error::Parse(format!("duplicate catalog id `{}`", e.id)));
            }
        }
        for e in &entries {
            if let Some(m) = e.moves.iter().find(|m| !ids.contains(&m.to)) {
                return Err(Error::Parse(format!("entry `{}` has a move to unknown `{}`", e.id, m.to)));
            }
        }
        Ok(Catalog { entries })
    }

    pub fn builtin() -> Self {
        Catalog::new(builtin_entries()).expect("built-in catalog is valid")
    }

    /// Load every `*.json` file in `dir`, in file-name order.
    pub fn load_dir(dir: impl AsRef<Path>) -> Result<Self> {
        let dir = dir.as_ref();
        let mut paths: Vec<_> = std::fs::read_dir(dir)
            .map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        paths.sort();
        let entries = paths
            .iter()
            .map(|p| {
                let text = std::fs::read_to_string(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
                serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))
            })
            .collect::<Result<Vec<CatalogEntry>>>()?;
        Catalog::new(entries)
    }

    /// Write one pretty-printed file per entry.
    pub fn write_dir(&self, dir: impl AsRef<Path>) -> Result<()> {
        std::fs::create_dir_all(dir.as_ref())?;
        for e in &self.entries {
            let text = serde_json::to_string_pretty(e)? + "\n";
            std::fs::write(dir.as_ref().join(format!("{}.json", e.id)), text)?;
        }
        Ok(())
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn get(&self, id: &str) -> Result<&CatalogEntry> {
        self.entries.iter().find(|e| e.id == id).ok_or_else(|| Error::UnknownEntry(id.to_string()))
    }

    pub fn list(&self, filter: &Filter) -> Vec<&CatalogEntry> {
        self.entries
            .iter()
            .filter(|e| filter.sphere_ambient.is_none_or(|s| s == matches!(e.ambient, Ambient::Sphere { .. })))
            .filter(|e| filter.property.is_none_or(|p| e.expected.get(p) == Some(true)))
            .filter(|e| filter.signature.is_none_or(|k| e.slice.as_ref().is_some_and(|s| s.signature() == k)))
            .filter(|e| !filter.surfaces_only || e.chart.is_some())
            .collect()
    }

    pub fn implicit_residual(&self, id: &str, point: &[C]) -> Result<f64> {
        self.get(id)?.implicit_residual(point)
    }
}

/// `alpha (cos u cos v, cos u sin v, sin u)`, on `z·z = alpha^2`.
pub fn complex_sphere(alpha: C) -> SurfaceChart {
    let (u, v) = (Expr::u(), Expr::v());
    let program = ChartProgram::new(vec![
        alpha * (u.clone().cos() * v.clone().cos()),
        alpha * (u.clone().cos() * v.sin()),
        alpha * u.sin(),
    ])
    .expect("valid chart");
    SurfaceChart::new(format!("CS2({alpha})"), program)
        .with_implicit(vec![ScalarField(sphere_equation(3, alpha))])
}

fn z(k: usize) -> Expr {
    Expr::z(k)
}

fn u() -> Expr {
    Expr::u()
}

fn v() -> Expr {
    Expr::v()
}

fn zero() -> Expr {
    Expr::real(0.0)
}

fn sq(e: Expr) -> Expr {
    e.powi(2)
}

fn cvec(xs: &[C]) -> CVec {
    CVec::new(xs.to_vec()).expect("finite")
}

fn grid(u: (f64, f64), v: (f64, f64)) -> Grid {
    Grid::real(u, v)
}

/// Imaginary offsets used for complex entries, away from the real axes.
const SHIFT: (f64, f64) = (0.3, -0.2);

fn complex_grid(u: (f64, f64), v: (f64, f64)) -> Grid {
    Grid::real(u, v).shifted(SHIFT.0, SHIFT.1)
}

struct Builder(CatalogEntry);

impl Builder {
    fn new(id: &str, description: &str, ambient: Ambient) -> Self {
        Builder(CatalogEntry {
            schema: SCHEMA_VERSION,
            id: id.into(),
            description: description.into(),
            claims: Vec::new(),
            ambient,
            chart: None,
            implicit: Vec::new(),
            slice: None,
            grid: None,
            expected: Expected::default(),
            moves: Vec::new(),
        })
    }

    fn flat(id: &str, description: &str, n: usize) -> Self {
        Builder::new(id, description, Ambient::Flat { n })
    }

    fn chart(mut self, outputs: Vec<Expr>, g: Grid) -> Self {
        self.0.chart = Some(ChartProgram::new(outputs).expect("valid chart"));
        self.0.grid = Some(g);
        self
    }

    fn implicit(mut self, eqs: Vec<Expr>) -> Self {
        self.0.implicit = eqs.into_iter().map(|e| ScalarField::new(e).expect("valid field")).collect();
        self
    }

    fn slice(mut self, s: SliceSpec, signature: usize) -> Self {
        self.0.slice = Some(s);
        self.0.expected.signature = Some(signature);
        self
    }

    fn claim(mut self, c: &str) -> Self {
        self.0.claims.push(c.into());
        self
    }

    fn props(mut self, minimal: bool, totally_geodesic: bool, parallel: Option<bool>, flat: bool) -> Self {
        let e = &mut self.0.expected;
        e.minimal = Some(minimal);
        e.totally_geodesic = Some(totally_geodesic);
        e.parallel = parallel;
        e.flat = Some(flat);
        self
    }

    fn curvature(mut self, k: f64) -> Self {
        self.0.expected.k = Some(c64(k, 0.0));
        self
    }

    fn to(mut self, target: &str, atoms: Vec<WickAtom>) -> Self {
        self.0.moves.push(StoredMove { to: target.into(), atoms: WickMove(atoms) });
        self
    }

    fn build(self) -> CatalogEntry {
        self.0
    }
}

fn rotate(which: Param, factor: C) -> WickAtom {
    WickAtom::RotateParam { which, factor }
}

fn shift(which: Param, offset: C) -> WickAtom {
    WickAtom::TranslateParam { which, offset }
}

fn permute(sigma: &[usize]) -> WickAtom {
    WickAtom::PermuteCoords { sigma: sigma.to_vec() }
}

fn dilate(alpha: C) -> WickAtom {
    WickAtom::Dilate { alpha }
}

fn translate3(w3: C) -> WickAtom {
    WickAtom::TranslateAmbient { w: cvec(&[c64(0.0, 0.0), c64(0.0, 0.0), w3]) }
}

fn sphere_chart(r: f64, last: Option<Expr>) -> Vec<Expr> {
    let mut out = vec![r * (u().cos() * v().cos()), r * (u().cos() * v().sin()), r * u().sin()];
    out.extend(last);
    out
}

fn catenoid_entries() -> Vec<CatalogEntry> {
    let cc = sq(z(1)) + sq(z(2)) - sq(z(3).cosh());
    let cc2 = sq(z(1)) + sq(z(2)) + sq(z(3).sinh());
    let cc3 = sq(z(2)) + sq(z(3)) - sq(z(1).cosh());
    let cc4 = sq(z(1)) + sq(z(2)) + sq(z(3).sin());
    let cc5 = sq(z(2)) + sq(z(3)) + sq(z(1).sin());
    let minimal = "minimal: the mean curvature vector vanishes";
    let r31 = || SliceSpec::standard(3, 1);
    let half_pi_i = c64(0.0, FRAC_PI_2);
    let unwrap_v = [shift(Param::V, half_pi_i), translate3(-half_pi_i)];
    vec![
        Builder::flat("CC", "complex catenoid z1^2+z2^2=cosh^2 z3", 3)
            .chart(vec![u().cos() * v().cosh(), u().sin() * v().cosh(), v()], complex_grid((0.0, TAU), (-1.0, 1.0)))
            .implicit(vec![cc.clone()])
            .claim(minimal)
            .claim("similar to each of the four other complex catenoid forms")
            .props(true, false, Some(false), false)
            .to("CC2", vec![translate3(half_pi_i)])
            .to("CC3", vec![permute(&[2, 1, 0])])
            .build(),
        Builder::flat("CC2", "complex catenoid z1^2+z2^2=-sinh^2 z3 (translate CC by i pi/2 along z3)", 3)
            .chart(
                vec![I * (u().cos() * v().sinh()), I * (u().sin() * v().sinh()), v()],
                complex_grid((0.0, TAU), (0.3, 1.3)),
            )
            .implicit(vec![cc2.clone()])
            .claim(minimal)
            .props(true, false, Some(false), false)
            .to("CC4", vec![dilate(I)])
            .build(),
        Builder::flat("CC3", "complex catenoid z2^2+z3^2=cosh^2 z1 (swap z1 and z3 in CC)", 3)
            .chart(vec![v(), u().sin() * v().cosh(), u().cos() * v().cosh()], complex_grid((0.0, TAU), (-1.0, 1.0)))
            .implicit(vec![cc3.clone()])
            .claim(minimal)
            .props(true, false, Some(false), false)
            .build(),
        Builder::flat("CC4", "complex catenoid z1^2+z2^2=-sin^2 z3 (dilate CC2 by i)", 3)
            .chart(vec![u().cos() * v().sinh(), u().sin() * v().sinh(), I * v()], complex_grid((0.0, TAU), (0.3, 1.3)))
            .implicit(vec![cc4.clone()])
            .claim(minimal)
            .props(true, false, Some(false), false)
            .to("CC5", vec![permute(&[2, 1, 0])])
            .build(),
        Builder::flat("CC5", "complex catenoid z2^2+z3^2=-sin^2 z1 (swap z1 and z3 in CC4)", 3)
            .chart(vec![I * v(), u().sin() * v().sinh(), u().cos() * v().sinh()], complex_grid((0.0, TAU), (0.3, 1.3)))
            .implicit(vec![cc5.clone()])
            .claim(minimal)
            .props(true, false, Some(false), false)
            .build(),
        Builder::flat("catenoid-R3", "classical catenoid x1^2+x2^2=cosh^2 x3", 3)
            .chart(vec![u().cos() * v().cosh(), u().sin() * v().cosh(), v()], grid((0.0, TAU), (-1.0, 1.0)))
            .implicit(vec![cc.clone()])
            .slice(SliceSpec::standard(3, 0), 0)
            .claim(minimal)
            .claim("not among the parallel surfaces of R^3")
            .props(true, false, Some(false), false)
            .to("catenoid-lorentz-hyp", vec![rotate(Param::U, I), permute(&[1, 0, 2])])
            .to(
                "catenoid-lorentz-hyp2",
                [unwrap_v.to_vec(), vec![rotate(Param::U, -I)]].concat(),
            )
            .to("catenoid-lorentz-elliptic", vec![rotate(Param::V, I), permute(&[2, 0, 1])])
            .to(
                "catenoid-spacelike-hyp",
                [unwrap_v.to_vec(), vec![rotate(Param::V, I), dilate(-I), rotate(Param::U, -I)]].concat(),
            )
            .to(
                "catenoid-spacelike-elliptic",
                [unwrap_v.to_vec(), vec![dilate(I), permute(&[2, 0, 1]), shift(Param::U, c64(PI, 0.0))]].concat(),
            )
            .build(),
        Builder::flat("catenoid-lorentz-hyp", "Lorentzian hyperbolic catenoid -y1^2+x2^2=cosh^2 x3", 3)
            .chart(vec![I * (u().sinh() * v().cosh()), u().cosh() * v().cosh(), v()], grid((-1.0, 1.0), (-1.0, 1.0)))
            .implicit(vec![cc.clone()])
            .slice(r31(), 1)
            .claim(minimal)
            .claim("Lorentzian")
            .props(true, false, None, false)
            .build(),
        Builder::flat("catenoid-lorentz-hyp2", "Lorentzian hyperbolic catenoid of the second kind y1^2-x2^2=sinh^2 x3", 3)
            .chart(vec![I * (u().cosh() * v().sinh()), u().sinh() * v().sinh(), v()], grid((-1.0, 1.0), (0.2, 1.2)))
            .implicit(vec![cc2])
            .slice(r31(), 1)
            .claim(minimal)
            .claim("Lorentzian")
            .props(true, false, None, false)
            .build(),
        Builder::flat("catenoid-lorentz-elliptic", "Lorentzian elliptic catenoid x2^2+x3^2=cos^2 y1", 3)
            .chart(vec![I * v(), u().cos() * v().cos(), u().sin() * v().cos()], grid((0.0, TAU), (-1.0, 1.0)))
            .implicit(vec![cc3])
            .slice(r31(), 1)
            .claim(minimal)
            .claim("Lorentzian")
            .props(true, false, None, false)
            .build(),
        Builder::flat("catenoid-spacelike-hyp", "spacelike hyperbolic catenoid y1^2-x2^2=sin^2 x3", 3)
            .chart(vec![I * (u().cosh() * v().sin()), u().sinh() * v().sin(), v()], grid((-1.0, 1.0), (0.2, 1.2)))
            .implicit(vec![cc4])
            .slice(r31(), 0)
            .claim(minimal)
            .claim("spacelike")
            .props(true, false, None, false)
            .build(),
        Builder::flat("catenoid-spacelike-elliptic", "spacelike elliptic catenoid x2^2+x3^2=sinh^2 y1", 3)
            .chart(vec![I * v(), u().cos() * v().sinh(), u().sin() * v().sinh()], grid((0.0, TAU), (0.2, 1.2)))
            .implicit(vec![cc5])
            .slice(r31(), 0)
            .claim(minimal)
            .claim("spacelike")
            .props(true, false, None, false)
            .build(),
    ]
}

fn complex_parallel_entries() -> Vec<CatalogEntry> {
    let w = u() + I * v();
    vec![
        Builder::flat("plane-C2", "complex plane z3 = 0", 3)
            .chart(vec![u(), v(), zero()], complex_grid((-1.0, 1.0), (-1.0, 1.0)))
            .implicit(vec![z(3)])
            .claim("parallel: totally geodesic plane")
            .props(true, true, Some(true), true)
            .curvature(0.0)
            .build(),
        Builder::flat("CS2", "complex sphere z1^2+z2^2+z3^2=1", 3)
            .chart(sphere_chart(1.0, None), complex_grid((-1.0, 1.0), (0.0, TAU)))
            .implicit(vec![sphere_equation(3, c64(1.0, 0.0))])
            .claim("parallel")
            .claim("constant sectional curvature 1/alpha^2 with alpha = 1")
            .props(false, false, Some(true), false)
            .curvature(1.0)
            .build(),
        Builder::flat("CS1xC", "complex cylinder z1^2+z2^2=1", 3)
            .chart(vec![u().cos(), u().sin(), v()], complex_grid((0.0, TAU), (-1.0, 1.0)))
            .implicit(vec![sq(z(1)) + sq(z(2)) - 1.0])
            .claim("parallel and flat")
            .props(false, false, Some(true), true)
            .curvature(0.0)
            .build(),
        Builder::flat("B", "flat minimal surface z3 = (z1 + i z2)^2", 3)
            .chart(vec![u(), v(), sq(w)], complex_grid((-1.0, 1.0), (-1.0, 1.0)))
            .implicit(vec![z(3) - sq(z(1) + I * z(2))])
            .claim("parallel, flat and minimal; shape operator undiagonalizable")
            .props(true, false, Some(true), true)
            .curvature(0.0)
            .build(),
    ]
}

fn sphere_entries() -> Vec<CatalogEntry> {
    let one = c64(1.0, 0.0);
    let cs3 = Ambient::Sphere { n: 4, radius: one };
    let tg = "totally geodesic in the ambient sphere";
    let to_h2 = vec![shift(Param::U, c64(FRAC_PI_2, 0.0)), rotate(Param::U, I), dilate(I), permute(&[2, 0, 1, 3])];
    let r = 0.75f64.sqrt();
    vec![
        Builder::flat("CS3", "complex 3-sphere z1^2+...+z4^2=1 (space, no chart)", 4)
            .implicit(vec![sphere_equation(4, one)])
            .claim("constant sectional curvature 1")
            .build(),
        Builder::flat("CS3-i", "complex 3-sphere z1^2+...+z4^2=-1, the image of CS3 under z -> iz (space, no chart)", 4)
            .implicit(vec![sphere_equation(4, I)])
            .claim("constant sectional curvature -1")
            .build(),
        Builder::new("CS2-in-CS3", "complex sphere z1^2+z2^2+z3^2=1, z4=0 inside CS3", cs3)
            .chart(sphere_chart(1.0, Some(zero())), complex_grid((-1.0, 1.0), (0.0, TAU)))
            .implicit(vec![sphere_equation(4, one), z(4)])
            .claim(tg)
            .props(true, true, None, false)
            .curvature(1.0)
            .to("S2-in-S3", vec![])
            .to("H2-in-H3", to_h2)
            .build(),
        Builder::new("S2-in-S3", "round sphere x1^2+x2^2+x3^2=1, x4=0 inside S^3", cs3)
            .chart(sphere_chart(1.0, Some(zero())), grid((-1.0, 1.0), (0.0, TAU)))
            .implicit(vec![sphere_equation(4, one), z(4)])
            .slice(SliceSpec::standard(4, 0), 0)
            .claim(tg)
            .props(true, true, None, false)
            .curvature(1.0)
            .build(),
        Builder::new("H2-in-H3", "hyperbolic plane y1^2-x2^2-x3^2=1, x4=0 inside H^3", Ambient::Sphere { n: 4, radius: I })
            .chart(vec![I * u().cosh(), u().sinh() * v().cos(), u().sinh() * v().sin(), zero()], grid((0.2, 1.2), (0.0, TAU)))
            .implicit(vec![sphere_equation(4, I), z(4)])
            .slice(SliceSpec::standard(4, 1), 0)
            .claim(tg)
            .claim("obtained from S^2 in S^3 through the dilation by i")
            .props(true, true, None, false)
            .curvature(-1.0)
            .build(),
        Builder::new("small-sphere-in-CS3", "non-great sphere z4 = 1/2 of CS3 (negative control)", cs3)
            .chart(sphere_chart(r, Some(Expr::real(0.5))), complex_grid((-1.0, 1.0), (0.0, TAU)))
            .implicit(vec![sphere_equation(4, one), z(4) - 0.5])
            .claim("umbilic but not totally geodesic")
            .props(false, false, None, false)
            .curvature(4.0 / 3.0)
            .build(),
    ]
}

fn euclidean_parallel_entries() -> Vec<CatalogEntry> {
    let r3 = || SliceSpec::standard(3, 0);
    vec![
        Builder::flat("plane-R2", "plane x3 = 0 in R^3", 3)
            .chart(vec![u(), v(), zero()], grid((-1.0, 1.0), (-1.0, 1.0)))
            .implicit(vec![z(3)])
            .slice(r3(), 0)
            .claim("parallel plane of R^3")
            .props(true, true, Some(true), true)
            .curvature(0.0)
            .build(),
        Builder::flat("S2", "round sphere x1^2+x2^2+x3^2=1 in R^3", 3)
            .chart(sphere_chart(1.0, None), grid((-1.0, 1.0), (0.0, TAU)))
            .implicit(vec![sphere_equation(3, c64(1.0, 0.0))])
            .slice(r3(), 0)
            .claim("parallel sphere of R^3")
            .props(false, false, Some(true), false)
            .curvature(1.0)
            .build(),
        Builder::flat("S1xR", "flat cylinder x1^2+x2^2=1 in R^3", 3)
            .chart(vec![u().cos(), u().sin(), v()], grid((0.0, TAU), (-1.0, 1.0)))
            .implicit(vec![sq(z(1)) + sq(z(2)) - 1.0])
            .slice(r3(), 0)
            .claim("parallel flat cylinder of R^3")
            .props(false, false, Some(true), true)
            .curvature(0.0)
            .build(),
    ]
}

fn lorentzian_parallel_entries() -> Vec<CatalogEntry> {
    let r31 = || SliceSpec::standard(3, 1);
    let par = "parallel surface of R^3_1";
    let e = |id: &str, desc: &str| Builder::flat(id, desc, 3).claim(par);
    vec![
        e("lorentz-par-1", "Euclidean plane y1 = 0")
            .chart(vec![zero(), u(), v()], grid((-1.0, 1.0), (-1.0, 1.0)))
            .implicit(vec![z(1)])
            .slice(r31(), 0)
            .props(true, true, Some(true), true)
            .curvature(0.0)
            .build(),
        e("lorentz-par-2", "Lorentzian plane x2 = 0")
            .chart(vec![I * u(), zero(), v()], grid((-1.0, 1.0), (-1.0, 1.0)))
            .implicit(vec![z(2)])
            .slice(r31(), 1)
            .props(true, true, Some(true), true)
            .curvature(0.0)
            .build(),
        e("lorentz-par-3", "hyperbolic plane H^2: y1^2-x2^2-x3^2=1")
            .chart(vec![I * u().cosh(), u().sinh() * v().cos(), u().sinh() * v().sin()], grid((0.2, 1.2), (0.0, TAU)))
            .implicit(vec![sphere_equation(3, I)])
            .slice(r31(), 0)
            .props(false, false, Some(true), false)
            .curvature(-1.0)
            .build(),
        e("lorentz-par-4", "indefinite sphere S^2_1: -y1^2+x2^2+x3^2=1")
            .chart(vec![I * u().sinh(), u().cosh() * v().cos(), u().cosh() * v().sin()], grid((-1.0, 1.0), (0.0, TAU)))
            .implicit(vec![sphere_equation(3, c64(1.0, 0.0))])
            .slice(r31(), 1)
            .props(false, false, Some(true), false)
            .curvature(1.0)
            .build(),
        e("lorentz-par-5", "flat cylinder H^1 x R: y1^2-x2^2=1")
            .chart(vec![I * u().cosh(), u().sinh(), v()], grid((-1.0, 1.0), (-1.0, 1.0)))
            .implicit(vec![sq(z(1)) + sq(z(2)) + 1.0])
            .slice(r31(), 0)
            .props(false, false, Some(true), true)
            .curvature(0.0)
            .build(),
        e("lorentz-par-6", "flat cylinder S^1 x R^1_1: x2^2+x3^2=1")
            .chart(vec![I * v(), u().cos(), u().sin()], grid((0.0, TAU), (-1.0, 1.0)))
            .implicit(vec![sq(z(2)) + sq(z(3)) - 1.0])
            .slice(r31(), 1)
            .props(false, false, Some(true), true)
            .curvature(0.0)
            .build(),
        e("lorentz-par-7", "flat cylinder S^1_1 x R: -y1^2+x2^2=1")
            .chart(vec![I * u().sinh(), u().cosh(), v()], grid((-1.0, 1.0), (-1.0, 1.0)))
            .implicit(vec![sq(z(1)) + sq(z(2)) - 1.0])
            .slice(r31(), 1)
            .props(false, false, Some(true), true)
            .curvature(0.0)
            .build(),
        e("lorentz-par-8", "flat minimal Lorentzian surface M^2_1: x3 = (y1 - x2)^2")
            .chart(vec![I * u(), v(), sq(v() - u())], grid((-1.0, 1.0), (-1.0, 1.0)))
            .implicit(vec![z(3) - sq(z(2) + I * z(1))])
            .slice(r31(), 1)
            .claim("flat and minimal")
            .props(true, false, Some(true), true)
            .curvature(0.0)
            .build(),
    ]
}

fn builtin_entries() -> Vec<CatalogEntry> {
    let mut out = complex_parallel_entries();
    out.extend(catenoid_entries());
    out.extend(sphere_entries());
    out.extend(euclidean_parallel_entries());
    out.extend(lorentzian_parallel_entries());
    out
}
