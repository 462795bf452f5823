//! Affine real slices of `C^n` and Wick moves between charts.
//!
//! A slice is stored in mask form: `z0 + sum_j y_j (i e_j) + sum_j x_j e_j`,
//! the imaginary directions being the masked coordinates.

use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::{ChartProgram, Expr, ScalarField, Var};
use crate::grid::Grid;
use crate::linalg::{signature_of, CVec, Similarity};
use crate::scalar::I;
use crate::surface::{Derivatives, SurfaceChart};

type C = Complex64;

/// Absolute tolerance for slice membership and for `Im g`.
pub const TOL_MEMBERSHIP: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSlice", into = "RawSlice")]
pub struct SliceSpec {
    n: usize,
    k: usize,
    mask: Vec<bool>,
    base: CVec,
}

#[derive(Serialize, Deserialize)]
struct RawSlice {
    n: usize,
    k: usize,
    mask: Vec<bool>,
    #[serde(default)]
    base: Option<CVec>,
}

impl TryFrom<RawSlice> for SliceSpec {
    type Error = Error;
    fn try_from(r: RawSlice) -> Result<Self> {
        let base = r.base.unwrap_or_else(|| CVec::zeros(r.n));
        SliceSpec::new(r.mask, base).and_then(|s| {
            if s.n != r.n || s.k != r.k {
                Err(Error::Parse(format!(
                    "slice header (n={}, k={}) disagrees with mask (n={}, k={})",
                    r.n, r.k, s.n, s.k
                )))
            } else {
                Ok(s)
            }
        })
    }
}

impl From<SliceSpec> for RawSlice {
    fn from(s: SliceSpec) -> Self {
        RawSlice { n: s.n, k: s.k, mask: s.mask, base: Some(s.base) }
    }
}

impl SliceSpec {
    pub fn new(mask: Vec<bool>, base: CVec) -> Result<Self> {
        if mask.is_empty() {
            return Err(Error::Parse("slice mask is empty".into()));
        }
        if base.dim() != mask.len() {
            return Err(Error::DimensionMismatch { expected: mask.len(), found: base.dim() });
        }
        let k = mask.iter().filter(|&&b| b).count();
        Ok(SliceSpec { n: mask.len(), k, mask, base })
    }

    /// `R^n_k` through the origin with the first `k` coordinates imaginary.
    pub fn standard(n: usize, k: usize) -> Self {
        SliceSpec::new((0..n).map(|j| j < k).collect(), CVec::zeros(n)).expect("valid slice")
    }

    /// Slice through the origin with the given 1-based coordinates imaginary.
    pub fn masked(n: usize, imaginary: &[usize]) -> Self {
        SliceSpec::new((1..=n).map(|j| imaginary.contains(&j)).collect(), CVec::zeros(n)).expect("valid slice")
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn signature(&self) -> usize {
        self.k
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn base(&self) -> &CVec {
        &self.base
    }

    /// Real direction vectors `i e_j` (masked) and `e_j` (unmasked).
    pub fn directions(&self) -> Vec<CVec> {
        (0..self.n)
            .map(|j| {
                let e = CVec::basis(self.n, j);
                if self.mask[j] { e.scaled(I) } else { e }
            })
            .collect()
    }

    /// Distance of each coordinate from its allowed real line.
    pub fn deviation(&self, z: &[C]) -> Result<Vec<f64>> {
        if z.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: z.len() });
        }
        Ok(z.iter()
            .zip(self.base.iter())
            .zip(&self.mask)
            .map(|((z, b), &m)| {
                let w = z - b;
                if m { w.re.abs() } else { w.im.abs() }
            })
            .collect())
    }

    /// Slice coordinates `(y_1.., x_..)` of a point on the slice.
    pub fn real_coords(&self, z: &[C]) -> Vec<f64> {
        z.iter()
            .zip(self.base.iter())
            .zip(&self.mask)
            .map(|((z, b), &m)| {
                let w = z - b;
                if m { w.im } else { w.re }
            })
            .collect()
    }
}

/// Accepts `R3`, `R3_1`, `R4_0`, ...
impl FromStr for SliceSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("slice name must look like R3 or R3_1, got `{s}`"));
        let rest = s.strip_prefix('R').ok_or_else(bad)?;
        let (n, k) = match rest.split_once('_') {
            Some((n, k)) => (n, k),
            None => (rest, "0"),
        };
        let n: usize = n.parse().map_err(|_| bad())?;
        let k: usize = k.parse().map_err(|_| bad())?;
        if n == 0 || k > n {
            return Err(bad());
        }
        Ok(SliceSpec::standard(n, k))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SliceReport {
    /// Largest coordinate deviation from the slice, per coordinate.
    pub coordinate_residuals: Vec<f64>,
    pub membership_residual: f64,
    /// `max |Im g(T_i, T_j)|`.
    pub metric_imaginary: f64,
    pub points: usize,
}

impl SliceReport {
    pub fn in_slice(&self) -> bool {
        self.membership_residual <= TOL_MEMBERSHIP && self.metric_imaginary <= TOL_MEMBERSHIP
    }

    pub fn worst(&self) -> f64 {
        self.membership_residual.max(self.metric_imaginary)
    }
}

fn metric_at(chart: &SurfaceChart, u: C, v: C) -> Result<[[C; 2]; 2]> {
    let d = Derivatives::compute(chart, u, v)?;
    Ok(std::array::from_fn(|i| std::array::from_fn(|j| d.first[i].dot0(&d.first[j]))))
}

/// Membership of the chart image over the real parts of `grid` in `slice`.
pub fn verify_in_slice(chart: &SurfaceChart, slice: &SliceSpec, grid: &Grid) -> Result<SliceReport> {
    if chart.ambient_dim() != slice.n {
        return Err(Error::DimensionMismatch { expected: slice.n, found: chart.ambient_dim() });
    }
    let grid = grid.real_part();
    let mut coords = vec![0.0f64; slice.n];
    let mut metric_imaginary = 0.0f64;
    for (u, v) in grid.points() {
        let p = chart.point(u, v)?;
        for (c, d) in coords.iter_mut().zip(slice.deviation(&p)?) {
            *c = c.max(d);
        }
        let g = metric_at(chart, u, v)?;
        metric_imaginary = g.iter().flatten().map(|z| z.im.abs()).fold(metric_imaginary, f64::max);
    }
    Ok(SliceReport {
        membership_residual: coords.iter().cloned().fold(0.0, f64::max),
        coordinate_residuals: coords,
        metric_imaginary,
        points: grid.len(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SignatureReport {
    /// The common signature when every regular point agrees.
    pub signature: Option<usize>,
    /// Per grid point; `None` where the induced metric is degenerate.
    pub per_point: Vec<Option<usize>>,
    pub degenerate_count: usize,
    pub changes_signature: bool,
}

/// Signature of the real induced metric over the real parts of `grid`.
pub fn induced_signature(chart: &SurfaceChart, slice: &SliceSpec, grid: &Grid) -> Result<SignatureReport> {
    let membership = verify_in_slice(chart, slice, grid)?;
    if !membership.in_slice() {
        return Err(Error::NotInSlice(membership.worst()));
    }
    let per_point = grid
        .real_part()
        .points()
        .map(|(u, v)| {
            let g = metric_at(chart, u, v)?;
            Ok(signature_of(&DMatrix::from_fn(2, 2, |i, j| g[i][j].re)))
        })
        .collect::<Result<Vec<_>>>()?;
    let degenerate_count = per_point.iter().filter(|s| s.is_none()).count();
    let mut seen: Vec<usize> = per_point.iter().flatten().cloned().collect();
    seen.sort_unstable();
    seen.dedup();
    Ok(SignatureReport {
        signature: if seen.len() == 1 { Some(seen[0]) } else { None },
        changes_signature: seen.len() > 1,
        per_point,
        degenerate_count,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Param {
    U,
    V,
}

/// One step of a Wick move. Parameter atoms precompose the chart,
/// `C'(u, v) = C(φ(u, v))`; ambient atoms postcompose it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WickAtom {
    /// Replace the parameter `p` by `factor * p`, with `factor = ±i`.
    RotateParam { which: Param, factor: C },
    /// Replace the parameter `p` by `p + offset`.
    TranslateParam { which: Param, offset: C },
    /// New coordinate `k` is old coordinate `sigma[k]` (0-based).
    PermuteCoords { sigma: Vec<usize> },
    /// `z -> alpha z`
    Dilate { alpha: C },
    /// `z -> z + w`
    TranslateAmbient { w: CVec },
}

impl WickAtom {
    pub fn validate(&self, n: usize) -> Result<()> {
        match self {
            WickAtom::RotateParam { factor, .. } => {
                if (factor - I).norm() > 1e-15 && (factor + I).norm() > 1e-15 {
                    return Err(Error::InvalidProgram(format!("rotation factor must be i or -i, got {factor}")));
                }
            }
            WickAtom::TranslateParam { offset, .. } => {
                if !offset.re.is_finite() || !offset.im.is_finite() {
                    return Err(Error::InvalidProgram("non-finite parameter offset".into()));
                }
            }
            WickAtom::PermuteCoords { sigma } => {
                let mut seen = vec![false; n];
                if sigma.len() != n {
                    return Err(Error::DimensionMismatch { expected: n, found: sigma.len() });
                }
                for &s in sigma {
                    if s >= n || seen[s] {
                        return Err(Error::InvalidProgram(format!("{sigma:?} is not a permutation of 0..{n}")));
                    }
                    seen[s] = true;
                }
            }
            WickAtom::Dilate { alpha } => {
                if alpha.norm() == 0.0 || !alpha.re.is_finite() || !alpha.im.is_finite() {
                    return Err(Error::ZeroDilation);
                }
            }
            WickAtom::TranslateAmbient { w } => {
                if w.dim() != n {
                    return Err(Error::DimensionMismatch { expected: n, found: w.dim() });
                }
            }
        }
        Ok(())
    }

    /// The ambient similarity of this atom, `None` for parameter atoms.
    pub fn similarity(&self, n: usize) -> Result<Option<Similarity>> {
        self.validate(n)?;
        Ok(match self {
            WickAtom::RotateParam { .. } | WickAtom::TranslateParam { .. } => None,
            WickAtom::PermuteCoords { sigma } => {
                let m = DMatrix::from_fn(n, n, |r, c| if sigma[r] == c { C::new(1.0, 0.0) } else { C::new(0.0, 0.0) });
                Some(Similarity::rotation(m)?)
            }
            WickAtom::Dilate { alpha } => Some(Similarity::dilation(*alpha)?),
            WickAtom::TranslateAmbient { w } => Some(Similarity::translation(w.clone())),
        })
    }

    fn apply_program(&self, p: &ChartProgram) -> ChartProgram {
        let param = |which: Param, e: Expr| match which {
            Param::U => p.substitute_params(&e, &Expr::v()),
            Param::V => p.substitute_params(&Expr::u(), &e),
        };
        let var = |which: Param| if which == Param::U { Expr::u() } else { Expr::v() };
        match self {
            WickAtom::RotateParam { which, factor } => param(*which, *factor * var(*which)),
            WickAtom::TranslateParam { which, offset } => param(*which, var(*which) + *offset),
            WickAtom::PermuteCoords { sigma } => p.map_outputs(|k, out| out[sigma[k]].clone()),
            WickAtom::Dilate { alpha } => p.map_outputs(|k, out| *alpha * out[k].clone()),
            WickAtom::TranslateAmbient { w } => p.map_outputs(|k, out| out[k].clone() + w[k]),
        }
    }

    /// Pull an implicit equation back through the inverse ambient map, so
    /// that it vanishes on the moved image.
    fn apply_field(&self, f: &ScalarField) -> ScalarField {
        let sub = |g: &dyn Fn(usize) -> Expr| {
            ScalarField(f.0.substitute(&|var| match var {
                Var::Z(k) => Some(g(k)),
                _ => None,
            }))
        };
        match self {
            WickAtom::RotateParam { .. } | WickAtom::TranslateParam { .. } => f.clone(),
            WickAtom::PermuteCoords { sigma } => {
                // old coordinate j sits at new position k with sigma[k] = j
                sub(&|j| Expr::z(sigma.iter().position(|&s| s == j - 1).expect("permutation") + 1))
            }
            WickAtom::Dilate { alpha } => sub(&|j| Expr::z(j) / *alpha),
            WickAtom::TranslateAmbient { w } => sub(&|j| Expr::z(j) - w[j - 1]),
        }
    }
}

/// An ordered list of atoms, applied first to last.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WickMove(pub Vec<WickAtom>);

impl WickMove {
    pub fn identity() -> Self {
        WickMove(Vec::new())
    }

    pub fn atoms(&self) -> &[WickAtom] {
        &self.0
    }

    pub fn then(mut self, other: &WickMove) -> WickMove {
        self.0.extend(other.0.iter().cloned());
        self
    }

    /// Composite ambient similarity; parameter atoms do not contribute.
    pub fn similarity(&self, n: usize) -> Result<Similarity> {
        let mut t = Similarity::identity();
        for a in &self.0 {
            if let Some(s) = a.similarity(n)? {
                t = t.then(&s);
            }
        }
        Ok(t)
    }
}

/// Rewrite the chart program atom by atom; implicit equations follow the
/// ambient part of the move.
pub fn apply_wick_move(chart: &SurfaceChart, mv: &WickMove) -> Result<SurfaceChart> {
    let n = chart.ambient_dim();
    let mut program = chart.program.clone();
    let mut implicit = chart.implicit.clone();
    for atom in mv.atoms() {
        atom.validate(n)?;
        program = atom.apply_program(&program);
        implicit = implicit.iter().map(|f| atom.apply_field(f)).collect();
    }
    Ok(SurfaceChart { name: chart.name.clone(), program, implicit })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{classify_subspace, BilinearForm, SubspaceKind};
    use crate::scalar::c64;

    fn chart(outputs: Vec<Expr>) -> SurfaceChart {
        SurfaceChart::new("t", ChartProgram::new(outputs).unwrap())
    }

    fn catenoid() -> SurfaceChart {
        let (u, v) = (Expr::u(), Expr::v());
        chart(vec![u.clone().cos() * v.clone().cosh(), u.sin() * v.clone().cosh(), v])
    }

    fn grid() -> Grid {
        Grid::real((0.0, 6.0), (-1.0, 1.0)).with_resolution(9, 9).unwrap()
    }

    fn same_values(a: &SurfaceChart, b: &SurfaceChart, g: &Grid) -> f64 {
        g.points()
            .map(|(u, v)| a.point(u, v).unwrap().sub(&b.point(u, v).unwrap()).herm_norm())
            .fold(0.0, f64::max)
    }

    #[test]
    fn slice_names() {
        let s: SliceSpec = "R3_1".parse().unwrap();
        assert_eq!((s.ambient_dim(), s.signature(), s.mask()), (3, 1, &[true, false, false][..]));
        let s: SliceSpec = "R4".parse().unwrap();
        assert_eq!(s.signature(), 0);
        assert!("R3_4".parse::<SliceSpec>().is_err());
        assert!("S3".parse::<SliceSpec>().is_err());
    }

    #[test]
    fn slice_json_round_trip() {
        let s = SliceSpec::masked(4, &[1]);
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"n":4,"k":1,"mask":[true,false,false,false],"base":[[0.0,0.0],[0.0,0.0],[0.0,0.0],[0.0,0.0]]}"#);
        assert_eq!(serde_json::from_str::<SliceSpec>(&json).unwrap(), s);
        assert!(serde_json::from_str::<SliceSpec>(r#"{"n":3,"k":2,"mask":[true,false,false]}"#).is_err());
    }

    #[test]
    fn slices_are_real_slices_of_their_signature() {
        for (n, k) in [(3, 0), (3, 1), (4, 2), (4, 4)] {
            let s = SliceSpec::standard(n, k);
            let sub = classify_subspace(&BilinearForm::standard(n), &s.directions()).unwrap();
            assert_eq!(sub.kind(), SubspaceKind::RealSlice { signature: k });
            assert!(sub.totally_real);
        }
    }

    #[test]
    fn membership_examples() {
        let (u, v) = (Expr::u(), Expr::v());
        let lorentz = chart(vec![I * (u.clone().sinh() * v.clone().cosh()), u.cosh() * v.clone().cosh(), v]);
        let r = verify_in_slice(&lorentz, &"R3_1".parse().unwrap(), &grid()).unwrap();
        assert!(r.in_slice() && r.membership_residual == 0.0, "{r:?}");
        let r = verify_in_slice(&catenoid(), &"R3".parse().unwrap(), &grid()).unwrap();
        assert!(r.in_slice());
        let r = verify_in_slice(&catenoid(), &"R3_1".parse().unwrap(), &grid()).unwrap();
        assert!(r.membership_residual >= 1.0);
        assert!(matches!(
            induced_signature(&catenoid(), &"R3_1".parse().unwrap(), &grid()),
            Err(Error::NotInSlice(_))
        ));
    }

    #[test]
    fn signature_examples() {
        let (u, v) = (Expr::u(), Expr::v());
        let lorentz = chart(vec![I * (u.clone().sinh() * v.clone().cosh()), u.clone().cosh() * v.clone().cosh(), v.clone()]);
        let s = induced_signature(&lorentz, &"R3_1".parse().unwrap(), &grid()).unwrap();
        assert_eq!(s.signature, Some(1));
        let spacelike = chart(vec![I * (u.clone().cosh() * v.clone().sin()), u.sinh() * v.clone().sin(), v]);
        let g = Grid::real((-1.0, 1.0), (0.2, 1.2));
        let s = induced_signature(&spacelike, &"R3_1".parse().unwrap(), &g).unwrap();
        assert_eq!((s.signature, s.degenerate_count), (Some(0), 0));
        let s = induced_signature(&catenoid(), &"R3".parse().unwrap(), &grid()).unwrap();
        assert_eq!(s.signature, Some(0));
    }

    #[test]
    fn identity_and_double_dilation() {
        let c = catenoid();
        let g = grid().shifted(0.1, -0.2);
        assert_eq!(same_values(&apply_wick_move(&c, &WickMove::identity()).unwrap(), &c, &g), 0.0);
        let twice = WickMove(vec![WickAtom::Dilate { alpha: I }, WickAtom::Dilate { alpha: I }]);
        let minus = WickMove(vec![WickAtom::Dilate { alpha: c64(-1.0, 0.0) }]);
        let d = same_values(&apply_wick_move(&c, &twice).unwrap(), &apply_wick_move(&c, &minus).unwrap(), &g);
        assert!(d < 1e-14);
    }

    #[test]
    fn u_rotation_and_permutation() {
        // (cos(iu) cosh v, sin(iu) cosh v, v) = (cosh u cosh v, i sinh u cosh v, v)
        let mv = WickMove(vec![
            WickAtom::RotateParam { which: Param::U, factor: I },
            WickAtom::PermuteCoords { sigma: vec![1, 0, 2] },
        ]);
        let moved = apply_wick_move(&catenoid(), &mv).unwrap();
        let (u, v) = (Expr::u(), Expr::v());
        let target = chart(vec![I * (u.clone().sinh() * v.clone().cosh()), u.cosh() * v.clone().cosh(), v]);
        assert!(same_values(&moved, &target, &grid()) < 1e-14);
    }

    #[test]
    fn moves_compose() {
        let m1 = WickMove(vec![
            WickAtom::TranslateParam { which: Param::V, offset: c64(0.0, 0.5) },
            WickAtom::Dilate { alpha: c64(1.0, 1.0) },
        ]);
        let m2 = WickMove(vec![
            WickAtom::PermuteCoords { sigma: vec![2, 0, 1] },
            WickAtom::RotateParam { which: Param::U, factor: -I },
            WickAtom::TranslateAmbient { w: CVec::new(vec![c64(1.0, 0.0), I, c64(0.0, -2.0)]).unwrap() },
        ]);
        let c = catenoid();
        let a = apply_wick_move(&apply_wick_move(&c, &m1).unwrap(), &m2).unwrap();
        let b = apply_wick_move(&c, &m1.clone().then(&m2)).unwrap();
        assert!(same_values(&a, &b, &grid()) < 1e-12);
    }

    #[test]
    fn implicit_equations_follow_the_move() {
        let cc = catenoid().with_implicit(vec![ScalarField::new(
            Expr::z(1).powi(2) + Expr::z(2).powi(2) - Expr::z(3).cosh().powi(2),
        )
        .unwrap()]);
        let mv = WickMove(vec![
            WickAtom::TranslateAmbient { w: CVec::new(vec![c64(0.0, 0.0), c64(0.0, 0.0), c64(0.0, 1.5)]).unwrap() },
            WickAtom::Dilate { alpha: c64(0.5, 2.0) },
            WickAtom::PermuteCoords { sigma: vec![2, 1, 0] },
            WickAtom::RotateParam { which: Param::V, factor: I },
        ]);
        let moved = apply_wick_move(&cc, &mv).unwrap();
        for (u, v) in grid().shifted(0.2, 0.1).points() {
            assert!(moved.implicit_residual(u, v).unwrap() < 1e-12);
        }
    }

    #[test]
    fn ambient_atoms_are_similarities() {
        let mv = WickMove(vec![
            WickAtom::PermuteCoords { sigma: vec![2, 0, 1] },
            WickAtom::Dilate { alpha: I },
            WickAtom::RotateParam { which: Param::U, factor: I },
        ]);
        let t = mv.similarity(3).unwrap();
        assert!((t.conformal_factor() - c64(-1.0, 0.0)).norm() < 1e-15);
        assert!(WickAtom::PermuteCoords { sigma: vec![0, 0, 1] }.validate(3).is_err());
        assert!(WickAtom::RotateParam { which: Param::U, factor: c64(2.0, 0.0) }.validate(3).is_err());
    }

    #[test]
    fn atom_json_shape() {
        let mv = WickMove(vec![
            WickAtom::RotateParam { which: Param::U, factor: I },
            WickAtom::PermuteCoords { sigma: vec![1, 0, 2] },
        ]);
        let s = serde_json::to_string(&mv).unwrap();
        assert_eq!(
            s,
            r#"[{"rotate_param":{"which":"u","factor":[0.0,1.0]}},{"permute_coords":{"sigma":[1,0,2]}}]"#
        );
        assert_eq!(serde_json::from_str::<WickMove>(&s).unwrap(), mv);
    }
}
