use num_complex::Complex64;
use proptest::prelude::*;

use wickforge_core::catalog::Catalog;
use wickforge_core::expr::{partial, ChartProgram, Expr};
use wickforge_core::jet::Jet2;
use wickforge_core::linalg::{classify_symmetric_2x2, gram_schmidt, holo_inner, BilinearForm, CVec};
use wickforge_core::slice::{apply_wick_move, WickAtom, WickMove};
use wickforge_core::surface::PointGeometry;
use wickforge_core::{c64, Error, I};

type C = Complex64;

fn cplx() -> impl Strategy<Value = C> {
    (-2.0..2.0f64, -2.0..2.0f64).prop_map(|(a, b)| c64(a, b))
}

fn cvec(n: usize) -> impl Strategy<Value = CVec> {
    prop::collection::vec(cplx(), n).prop_map(|v| CVec::new(v).unwrap())
}

fn jet() -> impl Strategy<Value = Jet2> {
    prop::array::uniform10(cplx()).prop_map(Jet2::from_coeffs)
}

fn jet_close(a: &Jet2, b: &Jet2, tol: f64) -> bool {
    a.coeffs().iter().zip(b.coeffs()).all(|(x, y)| (x - y).norm() <= tol)
}

proptest! {
    #[test]
    fn form_is_symmetric_and_bilinear(x in cvec(4), y in cvec(4), w in cvec(4), a in cplx()) {
        let g = BilinearForm::standard(4);
        let xy = holo_inner(&g, &x, &y).unwrap();
        prop_assert!((xy - holo_inner(&g, &y, &x).unwrap()).norm() < 1e-12);
        let lhs = holo_inner(&g, &x.scaled(a).add(&w), &y).unwrap();
        let rhs = a * xy + holo_inner(&g, &w, &y).unwrap();
        prop_assert!((lhs - rhs).norm() < 1e-10);
    }

    #[test]
    fn gram_schmidt_is_orthonormal(vs in prop::collection::vec(cvec(3), 3)) {
        let g = BilinearForm::standard(3);
        match gram_schmidt(&g, &vs) {
            Ok(es) => {
                for (i, a) in es.iter().enumerate() {
                    for (j, b) in es.iter().enumerate() {
                        let want = if i == j { c64(1.0, 0.0) } else { c64(0.0, 0.0) };
                        prop_assert!((a.dot0(b) - want).norm() < 1e-8);
                    }
                }
            }
            Err(Error::NullVectorEncountered { .. } | Error::DependentBasis) => {}
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn normal_form_reconstructs(a in cplx(), b in cplx(), d in cplx()) {
        let m = [[a, b], [b, d]];
        let nf = classify_symmetric_2x2(&m).unwrap();
        prop_assert!(nf.reconstruction_error(&m) < 1e-9 * (1.0 + a.norm() + b.norm() + d.norm()));
        prop_assert!(nf.orthogonality_error() < 1e-9);
    }

    #[test]
    fn jets_form_a_commutative_ring(a in jet(), b in jet(), c in jet()) {
        // coefficients are below 3 in modulus; products of three jets stay below ~1e4
        prop_assert!(jet_close(&((a * b) * c), &(a * (b * c)), 1e-10));
        prop_assert!(jet_close(&(a * (b + c)), &(a * b + a * c), 1e-10));
        prop_assert!(jet_close(&(a * b), &(b * a), 1e-12));
        prop_assert!(jet_close(&(a - a), &Jet2::constant(c64(0.0, 0.0)), 0.0));
    }

    #[test]
    fn holomorphic_in_w_satisfies_cauchy_riemann(u in -1.0..1.0f64, v in -1.0..1.0f64, k in cplx()) {
        // f(u + i v): d/dv = i d/du at every order
        let w = Expr::u() + I * Expr::v();
        let f = (w.clone() * k).sin() * w.clone().exp() + w.powi(3);
        let j = ChartProgram::new(vec![f]).unwrap().jets(c64(u, 0.0), c64(v, 0.0)).unwrap()[0];
        for (p, q) in [(1, 0), (2, 0), (1, 1), (2, 1)] {
            let lhs = partial(&j, p - 1, q + 1).unwrap();
            let rhs = I * partial(&j, p, q).unwrap();
            prop_assert!((lhs - rhs).norm() < 1e-9 * (1.0 + rhs.norm()));
        }
    }

    #[test]
    fn jets_match_finite_differences(u in -1.0..1.0f64, v in -1.0..1.0f64) {
        let f = (Expr::u() * Expr::v()).cosh() + Expr::u().sin() / (Expr::v().powi(2) + 2.0);
        let prog = ChartProgram::new(vec![f]).unwrap();
        let j = prog.jets(c64(u, 0.0), c64(v, 0.0)).unwrap()[0];
        let val = |du: f64, dv: f64| prog.eval(c64(u + du, 0.0), c64(v + dv, 0.0)).unwrap()[0];
        let h = 1e-4;
        let fd_uv = (val(h, h) - val(h, -h) - val(-h, h) + val(-h, -h)) / (4.0 * h * h);
        prop_assert!((fd_uv - partial(&j, 1, 1).unwrap()).norm() < 1e-5);
        let fd_uu = (val(h, 0.0) - 2.0 * val(0.0, 0.0) + val(-h, 0.0)) / (h * h);
        prop_assert!((fd_uu - partial(&j, 2, 0).unwrap()).norm() < 1e-5);
    }
}

#[test]
fn dilation_scales_first_form_and_curvature() {
    let cat = Catalog::builtin();
    for id in ["CC", "CS2", "B"] {
        let chart = cat.get(id).unwrap().surface().unwrap();
        for alpha in [c64(2.0, 0.0), I, c64(1.0, 1.0)] {
            let moved = apply_wick_move(&chart, &WickMove(vec![WickAtom::Dilate { alpha }])).unwrap();
            for (u, v) in [(c64(0.3, 0.2), c64(0.5, -0.1)), (c64(-0.4, 0.1), c64(0.9, 0.3))] {
                let a = PointGeometry::compute(&chart, u, v).unwrap();
                let b = PointGeometry::compute(&moved, u, v).unwrap();
                for i in 0..2 {
                    for j in 0..2 {
                        let want = alpha * alpha * a.forms.first[i][j];
                        assert!((b.forms.first[i][j] - want).norm() <= 1e-8 * (1.0 + want.norm()));
                    }
                }
                let (ka, kb) = (a.sectional_curvature(), b.sectional_curvature());
                assert!((kb - ka / (alpha * alpha)).norm() <= 1e-8 * (1.0 + ka.norm()), "{id} {alpha}");
                let (fa, fb) = (a.report(1e-7).flags, b.report(1e-7).flags);
                assert_eq!((fa.minimal, fa.parallel), (fb.minimal, fb.parallel), "{id} {alpha}");
            }
        }
    }
}
