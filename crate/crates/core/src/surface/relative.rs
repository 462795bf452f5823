//! Second fundamental form of a surface relative to an intermediate
//! submanifold `M` of `C^n` given by implicit equations.
//!
//! At a point, `C^n = T ⊕ (T_M ⊖ T) ⊕ N_M` orthogonally, where `N_M` is
//! spanned by the holomorphic gradients of the defining equations. The
//! relative form is the component of `D_X Y` along the middle summand.

use super::{PointGeometry, SurfaceChart};
use crate::error::{Error, Result};
use crate::expr::ScalarField;
use crate::linalg::{complete_basis_g0, orthonormalize_with, CVec, Mat2};
use crate::scalar::dot0;
use num_complex::Complex64;

type C = Complex64;
const ZERO: C = C::new(0.0, 0.0);

/// Tolerance on the implicit residual for a point to count as lying on the
/// intermediate submanifold.
pub const TOL_ON_AMBIENT: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct RelativeSecondForm {
    /// Orthonormal basis of `T_M ⊖ T`.
    pub relative_normals: Vec<CVec>,
    /// `components[r][i][j] = g0(D_{d_i} d_j, ν_r)`.
    pub components: Vec<Mat2>,
    /// Relative mean curvature `1/2 g^{ij} h_rel(d_i, d_j)` in `C^n`.
    pub mean_curvature: CVec,
    pub max_abs: f64,
    pub totally_geodesic: bool,
}

impl RelativeSecondForm {
    pub fn vector(&self, i: usize, j: usize) -> CVec {
        let n = self.relative_normals.first().map_or(0, |x| x.dim());
        self.relative_normals
            .iter()
            .zip(&self.components)
            .fold(CVec::zeros(n), |acc, (nu, c)| acc.add(&nu.scaled(c[i][j])))
    }
}

fn relative_from(geom: &PointGeometry, ambient: &[ScalarField], tol: f64) -> Result<RelativeSecondForm> {
    let p = &geom.derivs.point;
    let residual = super::implicit_residual(ambient, p)?;
    if residual > TOL_ON_AMBIENT * (1.0 + p.herm_norm().powi(2)) {
        return Err(Error::PointNotOnAmbient(residual));
    }
    let n = p.dim();
    let tangent: Vec<Vec<C>> = geom.frame.tangent_basis.iter().map(|x| x.to_vec()).collect();
    let grads = ambient
        .iter()
        .map(|f| f.gradient(p).map(|g| g.into_inner()))
        .collect::<Result<Vec<_>>>()?;
    let scale = grads.iter().map(|g| crate::scalar::herm_norm(g).powi(2)).fold(1.0, f64::max);
    let mut seeds = tangent.clone();
    seeds.extend(grads);
    let basis = orthonormalize_with(&seeds, dot0, scale)?;
    let relative: Vec<CVec> = complete_basis_g0(&basis, n)?
        .into_iter()
        .map(|x| CVec::new(x).expect("finite"))
        .collect();

    let second = &geom.derivs.second;
    let components: Vec<Mat2> = relative
        .iter()
        .map(|nu| std::array::from_fn(|i| std::array::from_fn(|j| nu.dot0(&second[i][j]))))
        .collect();
    let gi = &geom.forms.first_inverse;
    let mut mean = CVec::zeros(n);
    for (nu, c) in relative.iter().zip(&components) {
        let mut tr = ZERO;
        for i in 0..2 {
            for j in 0..2 {
                tr += gi[i][j] * c[i][j];
            }
        }
        mean = mean.add(&nu.scaled(tr * 0.5));
    }
    let max_abs = components.iter().flatten().flatten().map(|z| z.norm()).fold(0.0, f64::max);
    let scale = geom.h_norm();
    Ok(RelativeSecondForm {
        relative_normals: relative,
        components,
        mean_curvature: mean,
        max_abs,
        totally_geodesic: max_abs < tol * (1.0 + scale),
    })
}

/// Relative second fundamental form of `inner` inside the submanifold cut
/// out by `ambient`, at the chart point `(u, v)`.
pub fn relative_second_form(
    inner: &SurfaceChart,
    ambient: &[ScalarField],
    u: C,
    v: C,
    tol: f64,
) -> Result<RelativeSecondForm> {
    let geom = PointGeometry::compute(inner, u, v)?;
    relative_from(&geom, ambient, tol)
}

impl PointGeometry {
    pub fn relative_to(&self, ambient: &[ScalarField], tol: f64) -> Result<RelativeSecondForm> {
        relative_from(self, ambient, tol)
    }
}

/// Gauss equation for a surface inside the sphere `z·z = radius^2`, whose
/// curvature tensor is `(1/radius^2)(g(Y,Z)g(X,W) - g(X,Z)g(Y,W))`. Returns
/// the largest violation over coordinate indices, using the relative second
/// form and the intrinsic curvature of the chart.
pub fn nested_gauss_residual(inner: &SurfaceChart, radius: C, u: C, v: C) -> Result<f64> {
    let geom = PointGeometry::compute(inner, u, v)?;
    let n = inner.ambient_dim();
    let sphere = ScalarField::new(sphere_equation(n, radius))?;
    let rel = geom.relative_to(&[sphere], 1e-7)?;
    let r = geom.riemann();
    let g = &geom.forms.first;
    let kt = C::new(1.0, 0.0) / (radius * radius);
    let h: [[CVec; 2]; 2] = std::array::from_fn(|i| std::array::from_fn(|j| rel.vector(i, j)));
    let mut worst = 0.0f64;
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    let ambient = kt * (g[j][k] * g[i][l] - g[i][k] * g[j][l]);
                    let res = ambient - r[i][j][k][l] - h[j][l].dot0(&h[i][k]) + h[i][l].dot0(&h[j][k]);
                    worst = worst.max(res.norm());
                }
            }
        }
    }
    Ok(worst)
}

/// `z_1^2 + ... + z_n^2 - radius^2`.
pub fn sphere_equation(n: usize, radius: C) -> crate::expr::Expr {
    use crate::expr::Expr;
    let mut terms: Vec<Expr> = (1..=n).map(|k| Expr::z(k).powi(2)).collect();
    terms.push(Expr::Const(-(radius * radius)));
    Expr::sum(terms)
}
