//! Pointwise extrinsic and intrinsic geometry of holomorphic surface charts.
//!
//! A chart `L(u, v)` into `C^n` is evaluated as third-order jets, which gives
//! exact partial derivatives `L_i`, `L_ij`, `L_ijk` at the sample point. From
//! those, everything is assembled in chart coordinates:
//!
//! - first form `g_ij = g0(L_i, L_j)` and Christoffel symbols (Koszul formula),
//! - second fundamental form `h(d_i, d_j) = (L_ij)^⊥`,
//! - shape operators `A_ξ X = -(D_X ξ)^⊤` from jets of the normal frame,
//! - mean curvature `H = 1/2 g^{ij} h_ij`,
//! - `∇h` using the coordinate connection (no frame derivatives),
//! - intrinsic curvature from derivatives of Christoffel symbols, which the
//!   Gauss equation must reconcile with `h`.

mod relative;

pub use relative::{nested_gauss_residual, relative_second_form, sphere_equation, RelativeSecondForm, TOL_ON_AMBIENT};

use crate::error::{Error, Result};
use crate::expr::{ChartProgram, ScalarField};
use crate::jet::Jet2;
use crate::linalg::{complete_basis_g0, orthonormalize_with, CVec, Mat2};
use crate::scalar::{dot0, HoloScalar};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

type C = Complex64;
const ZERO: C = C::new(0.0, 0.0);

/// Relative threshold on `|det g|` below which the tangent plane is null.
pub const TOL_DEGENERATE: f64 = 1e-9;

/// A named holomorphic immersion `C^2 -> C^n`, optionally with the implicit
/// equations its image is supposed to satisfy.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurfaceChart {
    pub name: String,
    pub program: ChartProgram,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub implicit: Vec<ScalarField>,
}

impl SurfaceChart {
    pub fn new(name: impl Into<String>, program: ChartProgram) -> Self {
        SurfaceChart { name: name.into(), program, implicit: Vec::new() }
    }

    pub fn with_implicit(mut self, implicit: Vec<ScalarField>) -> Self {
        self.implicit = implicit;
        self
    }

    pub fn ambient_dim(&self) -> usize {
        self.program.dim()
    }

    pub fn point(&self, u: C, v: C) -> Result<CVec> {
        self.program.eval(u, v)
    }

    /// `max_k |F_k(L(u,v))|` over the stored implicit equations.
    pub fn implicit_residual(&self, u: C, v: C) -> Result<f64> {
        let p = self.point(u, v)?;
        implicit_residual(&self.implicit, &p)
    }
}

/// Maximum modulus of a set of implicit equations at a point.
pub fn implicit_residual(fields: &[ScalarField], point: &[C]) -> Result<f64> {
    fields
        .iter()
        .map(|f| f.eval(point).map(|r| r.norm()))
        .try_fold(0.0f64, |acc, r| r.map(|r| acc.max(r)))
}

/// Exact partial derivatives of a chart at one point, up to order three.
#[derive(Clone, Debug)]
pub struct Derivatives {
    pub point: CVec,
    pub first: [CVec; 2],
    pub second: [[CVec; 2]; 2],
    pub third: [[[CVec; 2]; 2]; 2],
    jets: Vec<Jet2>,
}

impl Derivatives {
    pub fn compute(chart: &SurfaceChart, u: C, v: C) -> Result<Self> {
        let jets = chart.program.jets(u, v)?;
        let take = |p: usize, q: usize| -> Result<CVec> {
            CVec::new(jets.iter().map(|j| j.partial(p, q)).collect::<Result<Vec<_>>>()?)
        };
        // index 0 is d/du, 1 is d/dv
        let d = |idx: &[usize]| {
            let q = idx.iter().filter(|&&i| i == 1).count();
            take(idx.len() - q, q)
        };
        let first = [d(&[0])?, d(&[1])?];
        let second = [[d(&[0, 0])?, d(&[0, 1])?], [d(&[1, 0])?, d(&[1, 1])?]];
        let mut third: [[[CVec; 2]; 2]; 2] = Default::default();
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    third[i][j][k] = d(&[i, j, k])?;
                }
            }
        }
        Ok(Derivatives { point: take(0, 0)?, first, second, third, jets })
    }
}

/// Orthonormal frame adapted to the surface at a point.
#[derive(Clone, Debug, PartialEq)]
pub struct FrameData {
    pub point: CVec,
    pub raw_tangents: [CVec; 2],
    pub tangent_basis: [CVec; 2],
    pub normal_basis: Vec<CVec>,
}

impl FrameData {
    /// Components of `x` along the normal frame.
    pub fn normal_components(&self, x: &CVec) -> Vec<C> {
        self.normal_basis.iter().map(|xi| xi.dot0(x)).collect()
    }

    /// Orthogonal projection onto the normal space.
    pub fn normal_part(&self, x: &CVec) -> CVec {
        let mut out = CVec::zeros(x.dim());
        for xi in &self.normal_basis {
            out = out.add(&xi.scaled(xi.dot0(x)));
        }
        out
    }

    pub fn tangent_part(&self, x: &CVec) -> CVec {
        x.sub(&self.normal_part(x))
    }
}

/// Jet-valued orthonormal frame: values give the frame, first-order
/// coefficients give its parameter derivatives.
struct JetFrame {
    tangent: Vec<Vec<Jet2>>,
    normal: Vec<Vec<Jet2>>,
}

fn first_form_of(first: &[CVec; 2]) -> Mat2 {
    let mut g = [[ZERO; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            g[i][j] = first[i].dot0(&first[j]);
        }
    }
    g
}

fn det2(m: &Mat2) -> C {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

fn inv2(m: &Mat2) -> Mat2 {
    let d = det2(m);
    [[m[1][1] / d, -m[0][1] / d], [-m[1][0] / d, m[0][0] / d]]
}

fn check_regular(d: &Derivatives, u: C, v: C) -> Result<Mat2> {
    let g = first_form_of(&d.first);
    let scale = d.first[0].herm_norm().powi(2) * d.first[1].herm_norm().powi(2);
    if !(det2(&g).norm() > TOL_DEGENERATE * scale) {
        return Err(Error::DegeneratePoint { u, v });
    }
    Ok(g)
}

fn jet_frame(d: &Derivatives, g: &Mat2, u: C, v: C) -> Result<JetFrame> {
    let lu: Vec<Jet2> = d.jets.iter().map(|j| j.d_du()).collect();
    let lv: Vec<Jet2> = d.jets.iter().map(|j| j.d_dv()).collect();
    // Re-seed around null pivots: start from L_u, or else L_v, or else L_u + L_v,
    // taking the first that is not close to null relative to the others. On a
    // non-degenerate plane one of them is not null.
    let sum: Vec<Jet2> = lu.iter().zip(&lv).map(|(&a, &b)| a + b).collect();
    let norms = [g[0][0].norm(), g[1][1].norm(), (g[0][0] + 2.0 * g[0][1] + g[1][1]).norm()];
    let best = norms.iter().cloned().fold(0.0, f64::max);
    let pick = (0..3).find(|&k| norms[k] >= 1e-3 * best).unwrap_or(2);
    let seeds = match pick {
        0 => vec![lu, lv],
        1 => vec![lv, lu],
        _ => vec![sum, lu],
    };
    let scale = d.first[0].herm_norm().max(d.first[1].herm_norm()).powi(2);
    let tangent = orthonormalize_with(&seeds, dot0, scale)
        .map_err(|_| Error::DegeneratePoint { u, v })?;
    let normal = complete_basis_g0(&tangent, d.point.dim()).map_err(|_| Error::DegeneratePoint { u, v })?;
    Ok(JetFrame { tangent, normal })
}

fn values(v: &[Jet2]) -> CVec {
    CVec::new(v.iter().map(|j| j.value()).collect()).expect("finite jets")
}

fn frame_from(d: &Derivatives, jf: &JetFrame) -> FrameData {
    FrameData {
        point: d.point.clone(),
        raw_tangents: d.first.clone(),
        tangent_basis: [values(&jf.tangent[0]), values(&jf.tangent[1])],
        normal_basis: jf.normal.iter().map(|x| values(x)).collect(),
    }
}

/// Orthonormal tangent and normal frame at `L(u, v)`.
pub fn frame_at(chart: &SurfaceChart, u: C, v: C) -> Result<FrameData> {
    let d = Derivatives::compute(chart, u, v)?;
    let g = check_regular(&d, u, v)?;
    let jf = jet_frame(&d, &g, u, v)?;
    Ok(frame_from(&d, &jf))
}

/// Christoffel symbols stored as `gamma[k][i][j] = Γ^k_ij`.
pub type Christoffels = [[[C; 2]; 2]; 2];

#[derive(Clone, Debug)]
pub struct FundamentalForms {
    pub first: Mat2,
    pub first_inverse: Mat2,
    /// `h(d_i, d_j)` as vectors in `C^n`.
    pub second_vectors: [[CVec; 2]; 2],
    /// `second[a][i][j] = g0(h(d_i, d_j), ξ_a)`.
    pub second: Vec<Mat2>,
    /// `shape_ops[a][k][i]`: `A_{ξ_a} d_i = sum_k shape_ops[a][k][i] d_k`,
    /// obtained from `-(D ξ_a)^⊤`.
    pub shape_ops: Vec<Mat2>,
    pub mean_curvature: CVec,
    pub christoffels: Christoffels,
}

/// Everything computable at one regular point, computed once.
#[derive(Clone, Debug)]
pub struct PointGeometry {
    pub u: C,
    pub v: C,
    pub derivs: Derivatives,
    pub frame: FrameData,
    pub forms: FundamentalForms,
    /// `dg[m][i][j] = d_m g_ij`
    dg: [[[C; 2]; 2]; 2],
}

impl PointGeometry {
    pub fn compute(chart: &SurfaceChart, u: C, v: C) -> Result<Self> {
        let d = Derivatives::compute(chart, u, v)?;
        let g = check_regular(&d, u, v)?;
        let gi = inv2(&g);
        let jf = jet_frame(&d, &g, u, v)?;
        let frame = frame_from(&d, &jf);

        let mut dg = [[[ZERO; 2]; 2]; 2];
        for m in 0..2 {
            for i in 0..2 {
                for j in 0..2 {
                    dg[m][i][j] = d.second[i][m].dot0(&d.first[j]) + d.first[i].dot0(&d.second[j][m]);
                }
            }
        }
        let christoffels = christoffels_from(&gi, &dg);

        let second_vectors: [[CVec; 2]; 2] = std::array::from_fn(|i| {
            std::array::from_fn(|j| frame.normal_part(&d.second[i][j]))
        });
        let second: Vec<Mat2> = frame
            .normal_basis
            .iter()
            .map(|xi| std::array::from_fn(|i| std::array::from_fn(|j| xi.dot0(&d.second[i][j]))))
            .collect();

        // A_ξ d_i = -(d_i ξ)^⊤, expanded in the coordinate basis.
        let shape_ops: Vec<Mat2> = jf
            .normal
            .iter()
            .map(|xi| {
                let dxi = [
                    CVec::new(xi.iter().map(|j| j.partial(1, 0).unwrap()).collect()).unwrap(),
                    CVec::new(xi.iter().map(|j| j.partial(0, 1).unwrap()).collect()).unwrap(),
                ];
                let mut a = [[ZERO; 2]; 2];
                for i in 0..2 {
                    let proj = [dxi[i].dot0(&d.first[0]), dxi[i].dot0(&d.first[1])];
                    for k in 0..2 {
                        a[k][i] = -(gi[k][0] * proj[0] + gi[k][1] * proj[1]);
                    }
                }
                a
            })
            .collect();

        let n = d.point.dim();
        let mut mean = CVec::zeros(n);
        for i in 0..2 {
            for j in 0..2 {
                mean = mean.add(&second_vectors[i][j].scaled(gi[i][j] * 0.5));
            }
        }

        let forms = FundamentalForms {
            first: g,
            first_inverse: gi,
            second_vectors,
            second,
            shape_ops,
            mean_curvature: mean,
            christoffels,
        };
        Ok(PointGeometry { u, v, derivs: d, frame, forms, dg })
    }

    fn h(&self, i: usize, j: usize) -> &CVec {
        &self.forms.second_vectors[i][j]
    }

    /// `h(X, Y)` for `X = a^i d_i`, `Y = b^j d_j`.
    pub fn h_of(&self, a: [C; 2], b: [C; 2]) -> CVec {
        let mut out = CVec::zeros(self.derivs.point.dim());
        for i in 0..2 {
            for j in 0..2 {
                out = out.add(&self.h(i, j).scaled(a[i] * b[j]));
            }
        }
        out
    }

    fn g_of(&self, a: [C; 2], b: [C; 2]) -> C {
        let g = &self.forms.first;
        let mut acc = ZERO;
        for i in 0..2 {
            for j in 0..2 {
                acc += g[i][j] * a[i] * b[j];
            }
        }
        acc
    }

    /// Sectional curvature of the tangent plane, from the Gauss equation in
    /// flat ambient space: `(g(h11,h22) - g(h12,h12)) / det g`.
    pub fn sectional_curvature(&self) -> C {
        let num = self.h(0, 0).dot0(self.h(1, 1)) - self.h(0, 1).dot0(self.h(0, 1));
        num / det2(&self.forms.first)
    }

    /// Sectional curvature evaluated with an arbitrary tangent basis
    /// `X = a^i d_i`, `Y = b^j d_j`.
    pub fn sectional_curvature_for(&self, a: [C; 2], b: [C; 2]) -> Result<C> {
        let den = self.g_of(a, a) * self.g_of(b, b) - self.g_of(a, b).powi(2);
        let scale = self.g_of(a, a).norm() * self.g_of(b, b).norm() + self.g_of(a, b).norm_sqr();
        if !(den.norm() > TOL_DEGENERATE * scale) {
            return Err(Error::DegeneratePlane);
        }
        let num = self.h_of(a, a).dot0(&self.h_of(b, b)) - self.h_of(a, b).dot0(&self.h_of(a, b));
        Ok(num / den)
    }

    /// `d_m Γ^k_ij`, stored as `[m][k][i][j]`.
    fn christoffel_derivatives(&self) -> [Christoffels; 2] {
        let d = &self.derivs;
        let gi = &self.forms.first_inverse;
        // ddg[m][n][i][j] = d_n d_m g_ij
        let mut ddg = [[[[ZERO; 2]; 2]; 2]; 2];
        for m in 0..2 {
            for n in 0..2 {
                for i in 0..2 {
                    for j in 0..2 {
                        ddg[m][n][i][j] = d.third[i][m][n].dot0(&d.first[j])
                            + d.second[i][m].dot0(&d.second[j][n])
                            + d.second[i][n].dot0(&d.second[j][m])
                            + d.first[i].dot0(&d.third[j][m][n]);
                    }
                }
            }
        }
        let lower = |i: usize, j: usize, l: usize| 0.5 * (self.dg[i][j][l] + self.dg[j][i][l] - self.dg[l][i][j]);
        let mut out = [[[[ZERO; 2]; 2]; 2]; 2];
        for m in 0..2 {
            // d_m g^{kl} = -g^{ka} d_m g_ab g^{bl}
            let mut dgi = [[ZERO; 2]; 2];
            for k in 0..2 {
                for l in 0..2 {
                    let mut acc = ZERO;
                    for a in 0..2 {
                        for b in 0..2 {
                            acc += gi[k][a] * self.dg[m][a][b] * gi[b][l];
                        }
                    }
                    dgi[k][l] = -acc;
                }
            }
            for k in 0..2 {
                for i in 0..2 {
                    for j in 0..2 {
                        let mut acc = ZERO;
                        for l in 0..2 {
                            let d_lower = 0.5 * (ddg[i][m][j][l] + ddg[j][m][i][l] - ddg[l][m][i][j]);
                            acc += dgi[k][l] * lower(i, j, l) + gi[k][l] * d_lower;
                        }
                        out[m][k][i][j] = acc;
                    }
                }
            }
        }
        out
    }

    /// Intrinsic curvature `R_ijkl = g(R(d_i, d_j) d_k, d_l)` from the
    /// coordinate formula with `R(X,Y) = [∇_X, ∇_Y] - ∇_[X,Y]`.
    pub fn riemann(&self) -> [[[[C; 2]; 2]; 2]; 2] {
        let gam = &self.forms.christoffels;
        let dgam = self.christoffel_derivatives();
        let g = &self.forms.first;
        let mut upper = [[[[ZERO; 2]; 2]; 2]; 2]; // R^l_ijk as [l][i][j][k]
        for l in 0..2 {
            for i in 0..2 {
                for j in 0..2 {
                    for k in 0..2 {
                        let mut acc = dgam[i][l][j][k] - dgam[j][l][i][k];
                        for m in 0..2 {
                            acc += gam[l][i][m] * gam[m][j][k] - gam[l][j][m] * gam[m][i][k];
                        }
                        upper[l][i][j][k] = acc;
                    }
                }
            }
        }
        let mut out = [[[[ZERO; 2]; 2]; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        out[i][j][k][l] = (0..2).map(|m| g[l][m] * upper[m][i][j][k]).sum();
                    }
                }
            }
        }
        out
    }

    /// Intrinsic sectional curvature `R(d_u, d_v, d_v, d_u) / det g`.
    pub fn intrinsic_curvature(&self) -> C {
        self.riemann()[0][1][1][0] / det2(&self.forms.first)
    }

    /// Largest violation of the Gauss equation over all coordinate index
    /// combinations, with flat ambient curvature.
    pub fn gauss_residual(&self) -> f64 {
        let r = self.riemann();
        let mut worst = 0.0f64;
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        let res = -r[i][j][k][l] - self.h(j, l).dot0(self.h(i, k))
                            + self.h(i, l).dot0(self.h(j, k));
                        worst = worst.max(res.norm());
                    }
                }
            }
        }
        worst
    }

    pub fn nabla_h(&self) -> NablaH {
        let d = &self.derivs;
        let gam = &self.forms.christoffels;
        let mut tensor: [[[CVec; 2]; 2]; 2] = Default::default();
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    let mut x = self.frame.normal_part(&d.third[i][j][k]);
                    for m in 0..2 {
                        x = x
                            .sub(&self.h(m, i).scaled(gam[m][j][k]))
                            .sub(&self.h(m, k).scaled(gam[m][i][j]))
                            .sub(&self.h(j, m).scaled(gam[m][i][k]));
                    }
                    tensor[i][j][k] = x;
                }
            }
        }
        let norm = tensor
            .iter()
            .flatten()
            .flatten()
            .map(|x| x.herm_norm().powi(2))
            .sum::<f64>()
            .sqrt();
        let gi = &self.forms.first_inverse;
        let mut holo = ZERO;
        for (i, a) in (0..2).flat_map(|i| (0..2).map(move |a| (i, a))) {
            for (j, b) in (0..2).flat_map(|j| (0..2).map(move |b| (j, b))) {
                for (k, c) in (0..2).flat_map(|k| (0..2).map(move |c| (k, c))) {
                    holo += gi[i][a] * gi[j][b] * gi[k][c] * tensor[i][j][k].dot0(&tensor[a][b][c]);
                }
            }
        }
        NablaH { tensor, norm, holo_norm_sq: holo }
    }

    /// Hermitian size of `h` over the coordinate basis.
    pub fn h_norm(&self) -> f64 {
        self.forms
            .second_vectors
            .iter()
            .flatten()
            .map(|x| x.herm_norm().powi(2))
            .sum::<f64>()
            .sqrt()
    }

    /// Complex `g(H, H)`.
    pub fn mean_curvature_sq(&self) -> C {
        self.forms.mean_curvature.dot0(&self.forms.mean_curvature)
    }

    pub fn report(&self, tol: f64) -> CurvatureReport {
        let nabla = self.nabla_h();
        let residuals = Residuals {
            mean_curvature: self.forms.mean_curvature.herm_norm(),
            second_form: self.h_norm(),
            nabla_h: nabla.norm,
            sectional_curvature: self.sectional_curvature().norm(),
        };
        CurvatureReport {
            u: self.u,
            v: self.v,
            k: self.sectional_curvature(),
            mean_curvature_norm_sq: self.mean_curvature_sq(),
            h_norm: residuals.second_form,
            nabla_h_norm: nabla.norm,
            gauss_residual: self.gauss_residual(),
            flags: residuals.flags(tol, residuals.second_form),
            residuals,
        }
    }
}

fn christoffels_from(gi: &Mat2, dg: &[[[C; 2]; 2]; 2]) -> Christoffels {
    let mut out = [[[ZERO; 2]; 2]; 2];
    for k in 0..2 {
        for i in 0..2 {
            for j in 0..2 {
                out[k][i][j] = (0..2)
                    .map(|l| gi[k][l] * 0.5 * (dg[i][j][l] + dg[j][i][l] - dg[l][i][j]))
                    .sum();
            }
        }
    }
    out
}

/// `∇h` in coordinates, `tensor[i][j][k] = (∇_{d_i} h)(d_j, d_k)`.
#[derive(Clone, Debug)]
pub struct NablaH {
    pub tensor: [[[CVec; 2]; 2]; 2],
    /// Hermitian Frobenius norm of the coordinate components.
    pub norm: f64,
    /// Full holomorphic contraction `g^{..} g^{..} g^{..} g0(∇h, ∇h)`.
    pub holo_norm_sq: C,
}

/// Per-point zero tests, each a Hermitian magnitude.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Residuals {
    /// `|H|`
    pub mean_curvature: f64,
    /// `|h|`
    pub second_form: f64,
    /// `|∇h|`
    pub nabla_h: f64,
    /// `|K|`
    pub sectional_curvature: f64,
}

impl Residuals {
    /// Property flags: a residual counts as zero when it is below
    /// `tol * (1 + scale)`.
    pub fn flags(&self, tol: f64, scale: f64) -> Flags {
        let thr = tol * (1.0 + scale);
        Flags {
            minimal: self.mean_curvature < thr,
            totally_geodesic: self.second_form < thr,
            parallel: self.nabla_h < thr,
            flat: self.sectional_curvature < thr,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flags {
    pub minimal: bool,
    pub totally_geodesic: bool,
    pub parallel: bool,
    pub flat: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CurvatureReport {
    pub u: C,
    pub v: C,
    #[serde(rename = "K")]
    pub k: C,
    pub mean_curvature_norm_sq: C,
    pub h_norm: f64,
    pub nabla_h_norm: f64,
    pub gauss_residual: f64,
    pub residuals: Residuals,
    pub flags: Flags,
}

pub fn fundamental_forms(chart: &SurfaceChart, u: C, v: C) -> Result<FundamentalForms> {
    Ok(PointGeometry::compute(chart, u, v)?.forms)
}

pub fn sectional_curvature(chart: &SurfaceChart, u: C, v: C) -> Result<C> {
    let d = Derivatives::compute(chart, u, v)?;
    if check_regular(&d, u, v).is_err() {
        return Err(Error::DegeneratePlane);
    }
    Ok(PointGeometry::compute(chart, u, v)?.sectional_curvature())
}

pub fn nabla_h(chart: &SurfaceChart, u: C, v: C) -> Result<NablaH> {
    Ok(PointGeometry::compute(chart, u, v)?.nabla_h())
}

pub fn gauss_residual(chart: &SurfaceChart, u: C, v: C) -> Result<f64> {
    Ok(PointGeometry::compute(chart, u, v)?.gauss_residual())
}

pub fn curvature_report(chart: &SurfaceChart, u: C, v: C, tol: f64) -> Result<CurvatureReport> {
    Ok(PointGeometry::compute(chart, u, v)?.report(tol))
}

#[cfg(test)]
mod tests;
