use super::*;
use crate::expr::Expr;
use crate::scalar::{c64, I};

fn chart(outputs: Vec<Expr>) -> SurfaceChart {
    SurfaceChart::new("test", ChartProgram::new(outputs).unwrap())
}

fn catenoid() -> SurfaceChart {
    let (u, v) = (Expr::u(), Expr::v());
    chart(vec![u.clone().cos() * v.clone().cosh(), u.sin() * v.clone().cosh(), v])
}

fn plane() -> SurfaceChart {
    chart(vec![Expr::u(), Expr::v(), Expr::real(0.0)])
}

/// `alpha (cos u cos v, cos u sin v, sin u)` on `z·z = alpha^2`.
fn sphere(alpha: C) -> SurfaceChart {
    let (u, v) = (Expr::u(), Expr::v());
    chart(vec![
        alpha * (u.clone().cos() * v.clone().cos()),
        alpha * (u.clone().cos() * v.sin()),
        alpha * u.sin(),
    ])
}

fn close(a: C, b: C, tol: f64) -> bool {
    (a - b).norm() < tol
}

fn vclose(a: &CVec, b: &CVec, tol: f64) -> bool {
    a.iter().zip(b.iter()).all(|(x, y)| (x - y).norm() < tol)
}

#[test]
fn catenoid_frame_at_origin() {
    let f = frame_at(&catenoid(), ZERO, ZERO).unwrap();
    assert!(vclose(&f.tangent_basis[0], &CVec::basis(3, 1), 1e-14));
    assert!(vclose(&f.tangent_basis[1], &CVec::basis(3, 2), 1e-14));
    let n = &f.normal_basis[0];
    assert!(vclose(n, &CVec::basis(3, 0), 1e-14) || vclose(n, &CVec::basis(3, 0).scaled(c64(-1.0, 0.0)), 1e-14));
}

#[test]
fn plane_frame_is_standard() {
    let f = frame_at(&plane(), c64(0.3, 0.2), c64(-1.0, 0.5)).unwrap();
    assert!(vclose(&f.tangent_basis[0], &CVec::basis(3, 0), 1e-15));
    assert!(vclose(&f.tangent_basis[1], &CVec::basis(3, 1), 1e-15));
    assert!(vclose(&f.normal_basis[0], &CVec::basis(3, 2), 1e-15));
}

#[test]
fn null_tangent_plane_is_degenerate() {
    // L = (u, i u + v^2, v): at v = 0 the tangents are (1, i, 0) and (0, 0, 1),
    // and det g = g(L_u, L_u) g(L_v, L_v) = 0 because L_u is null.
    let (u, v) = (Expr::u(), Expr::v());
    let c = chart(vec![u.clone(), I * u + v.clone().powi(2), v]);
    assert!(matches!(frame_at(&c, c64(0.4, 0.0), ZERO), Err(Error::DegeneratePoint { .. })));
    // away from v = 0 the plane is non-degenerate
    let f = frame_at(&c, c64(0.4, 0.0), c64(0.5, 0.0)).unwrap();
    let all: Vec<&CVec> = f.tangent_basis.iter().chain(&f.normal_basis).collect();
    for (a, x) in all.iter().enumerate() {
        for (b, y) in all.iter().enumerate() {
            let want = if a == b { c64(1.0, 0.0) } else { ZERO };
            assert!(close(x.dot0(y), want, 1e-9));
        }
    }
}

#[test]
fn null_first_tangent_is_reseeded() {
    // L_u = (1, i, 0) is null at every point, yet g_uv != 0 keeps the plane
    // non-degenerate: L = (u + v, i u, v).
    let (u, v) = (Expr::u(), Expr::v());
    let c = chart(vec![u.clone() + v.clone(), I * u, v]);
    let f = frame_at(&c, ZERO, ZERO).unwrap();
    assert!(close(f.tangent_basis[0].dot0(&f.tangent_basis[0]), c64(1.0, 0.0), 1e-12));
    assert!(close(f.tangent_basis[0].dot0(&f.tangent_basis[1]), ZERO, 1e-12));
}

#[test]
fn fundamental_form_examples() {
    let ff = fundamental_forms(&plane(), c64(0.1, 0.2), c64(0.3, -0.4)).unwrap();
    assert!(ff.second.iter().flatten().flatten().all(|z| z.norm() == 0.0));
    assert!(ff.mean_curvature.herm_norm() == 0.0);

    let ff = fundamental_forms(&catenoid(), ZERO, ZERO).unwrap();
    assert!(close(ff.first[0][0], c64(1.0, 0.0), 1e-15));
    assert!(close(ff.first[1][1], c64(1.0, 0.0), 1e-15));
    assert!(close(ff.first[0][1], ZERO, 1e-15));

    // The unit sphere: h(X,Y) = -g(X,Y) L, so H = -L and g(H,H) = 1.
    let s = sphere(c64(1.0, 0.0));
    for &(u, v) in &[(0.1, 0.2), (-0.7, 2.0), (0.3, -1.0)] {
        let g = PointGeometry::compute(&s, c64(u, 0.1), c64(v, 0.0)).unwrap();
        assert!(close(g.mean_curvature_sq(), c64(1.0, 0.0), 1e-12));
    }
}

#[test]
fn curvature_examples() {
    let p = (c64(0.3, 0.1), c64(0.7, -0.2));
    assert!(close(sectional_curvature(&sphere(c64(1.0, 0.0)), p.0, p.1).unwrap(), c64(1.0, 0.0), 1e-12));
    assert!(close(sectional_curvature(&sphere(I), p.0, p.1).unwrap(), c64(-1.0, 0.0), 1e-12));
    let (u, v) = (Expr::u(), Expr::v());
    let cylinder = chart(vec![u.clone().cos(), u.sin(), v]);
    assert!(close(sectional_curvature(&cylinder, p.0, p.1).unwrap(), ZERO, 1e-14));
}

#[test]
fn nabla_h_examples() {
    let p = (c64(0.3, 0.1), c64(0.7, -0.2));
    assert!(nabla_h(&sphere(c64(1.0, 0.0)), p.0, p.1).unwrap().norm < 1e-9);

    // Flat minimal surface from the classification, in the frame of the
    // integrated structure equations.
    let w = Expr::u() + I * Expr::v();
    let b = chart(vec![
        Expr::u() - w.clone().powi(3) / 6.0,
        Expr::v() - I * w.clone().powi(3) / 6.0,
        w.powi(2) / 2.0,
    ]);
    for &(u, v) in &[(0.0, 0.0), (0.4, -0.3), (1.2, 0.5)] {
        let geom = PointGeometry::compute(&b, c64(u, 0.0), c64(v, 0.0)).unwrap();
        assert!(geom.nabla_h().norm < 1e-9);
        assert!(geom.sectional_curvature().norm() < 1e-12);
        assert!(geom.forms.mean_curvature.herm_norm() < 1e-12);
    }

    assert!(nabla_h(&catenoid(), ZERO, c64(1.0, 0.0)).unwrap().norm >= 1e-3);
}

#[test]
fn nabla_h_is_fully_symmetric() {
    let geom = PointGeometry::compute(&catenoid(), c64(0.2, 0.1), c64(0.9, -0.3)).unwrap();
    let t = geom.nabla_h().tensor;
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                assert!(vclose(&t[i][j][k], &t[i][k][j], 1e-12));
                assert!(vclose(&t[i][j][k], &t[j][i][k], 1e-12), "Codazzi");
            }
        }
    }
}

#[test]
fn gauss_residual_examples() {
    assert!(gauss_residual(&plane(), c64(0.5, 0.5), ZERO).unwrap() == 0.0);
    for c in [catenoid(), sphere(c64(1.0, 1.0))] {
        assert!(gauss_residual(&c, c64(0.4, 0.2), c64(0.3, 0.1)).unwrap() < 1e-8);
    }
}

#[test]
fn koszul_christoffels_match_tangential_projection() {
    let geom = PointGeometry::compute(&catenoid(), c64(0.4, 0.3), c64(-0.6, 0.2)).unwrap();
    let d = &geom.derivs;
    let gam = &geom.forms.christoffels;
    for i in 0..2 {
        for j in 0..2 {
            let mut alt = d.second[i][j].clone();
            for k in 0..2 {
                alt = alt.sub(&d.first[k].scaled(gam[k][i][j]));
            }
            assert!(vclose(&alt, &geom.forms.second_vectors[i][j], 1e-12));
        }
    }
}

#[test]
fn weingarten_duality() {
    let s = sphere(c64(1.3, -0.4));
    let geom = PointGeometry::compute(&s, c64(0.2, 0.3), c64(1.1, -0.2)).unwrap();
    let g = &geom.forms.first;
    for (a, (h, a_op)) in geom.forms.second.iter().zip(&geom.forms.shape_ops).enumerate() {
        for i in 0..2 {
            for j in 0..2 {
                // g(A d_i, d_j) = sum_k A[k][i] g_kj
                let lhs = a_op[0][i] * g[0][j] + a_op[1][i] * g[1][j];
                assert!(close(lhs, h[i][j], 1e-9), "normal {a}, ({i},{j})");
            }
        }
    }
}

#[test]
fn frame_independence_of_sectional_curvature() {
    let geom = PointGeometry::compute(&catenoid(), c64(0.5, 0.2), c64(0.3, 0.4)).unwrap();
    let k0 = geom.sectional_curvature();
    let k1 = geom
        .sectional_curvature_for([c64(2.0, 1.0), c64(0.5, 0.0)], [c64(-1.0, 0.3), c64(1.0, 2.0)])
        .unwrap();
    assert!((k0 - k1).norm() <= 1e-8 * k0.norm());
    assert!(matches!(
        geom.sectional_curvature_for([c64(1.0, 0.0), ZERO], [c64(2.0, 0.0), ZERO]),
        Err(Error::DegeneratePlane)
    ));
}

#[test]
fn second_form_matches_finite_differences() {
    let c = catenoid();
    let (u, v) = (c64(0.3, 0.1), c64(0.5, -0.2));
    let geom = PointGeometry::compute(&c, u, v).unwrap();
    let step = 1e-4;
    let at = |du: f64, dv: f64| c.point(u + du, v + dv).unwrap();
    let p0 = at(0.0, 0.0);
    let fd_uu = at(step, 0.0).add(&at(-step, 0.0)).sub(&p0.scaled(c64(2.0, 0.0))).scaled(c64(1.0 / (step * step), 0.0));
    let fd_uv = at(step, step)
        .sub(&at(step, -step))
        .sub(&at(-step, step))
        .add(&at(-step, -step))
        .scaled(c64(1.0 / (4.0 * step * step), 0.0));
    for (fd, exact) in [(fd_uu, &geom.forms.second_vectors[0][0]), (fd_uv, &geom.forms.second_vectors[0][1])] {
        let proj = geom.frame.normal_part(&fd);
        let err = proj.sub(exact).herm_norm();
        assert!(err <= 1e-5 * exact.herm_norm().max(1.0), "err {err}");
    }
}

#[test]
fn relative_second_form_examples() {
    let (u, v) = (Expr::u(), Expr::v());
    let cs2_in_cs3 = chart(vec![
        u.clone().cos() * v.clone().cos(),
        u.clone().cos() * v.clone().sin(),
        u.clone().sin(),
        Expr::real(0.0),
    ]);
    let cs3 = ScalarField::new(sphere_equation(4, c64(1.0, 0.0))).unwrap();
    let rel = relative_second_form(&cs2_in_cs3, std::slice::from_ref(&cs3), c64(0.3, 0.2), c64(0.1, -0.4), 1e-9).unwrap();
    assert!(rel.totally_geodesic && rel.max_abs < 1e-12);
    assert_eq!(rel.relative_normals.len(), 1);
    // real parameters: S^2 inside S^3
    let rel = relative_second_form(&cs2_in_cs3, std::slice::from_ref(&cs3), c64(0.3, 0.0), c64(1.4, 0.0), 1e-9).unwrap();
    assert!(rel.totally_geodesic);

    // a small sphere at z4 = 1/2 is umbilic but not totally geodesic
    let r = (0.75f64).sqrt();
    let small = chart(vec![
        r * (u.clone().cos() * v.clone().cos()),
        r * (u.clone().cos() * v.clone().sin()),
        r * u.sin(),
        Expr::real(0.5),
    ]);
    let rel = relative_second_form(&small, std::slice::from_ref(&cs3), c64(0.3, 0.0), c64(0.2, 0.0), 1e-9).unwrap();
    assert!(!rel.totally_geodesic && rel.max_abs > 0.1);

    // off the ambient sphere
    let off = chart(vec![Expr::u(), Expr::v(), Expr::real(3.0), Expr::real(0.0)]);
    assert!(matches!(
        relative_second_form(&off, &[cs3], ZERO, ZERO, 1e-9),
        Err(Error::PointNotOnAmbient(_))
    ));
}

#[test]
fn nested_gauss_equation_in_sphere() {
    let (u, v) = (Expr::u(), Expr::v());
    let r = (0.75f64).sqrt();
    let small = chart(vec![
        r * (u.clone().cos() * v.clone().cos()),
        r * (u.clone().cos() * v.clone().sin()),
        r * u.sin(),
        Expr::real(0.5),
    ]);
    let res = nested_gauss_residual(&small, c64(1.0, 0.0), c64(0.3, 0.1), c64(0.2, -0.1)).unwrap();
    assert!(res < 1e-10, "{res}");
}

#[test]
fn implicit_residual_of_chart() {
    let s = sphere(c64(1.0, 0.0)).with_implicit(vec![ScalarField::new(sphere_equation(3, c64(1.0, 0.0))).unwrap()]);
    assert!(s.implicit_residual(c64(0.3, 0.2), c64(-0.5, 1.0)).unwrap() < 1e-14);
}
