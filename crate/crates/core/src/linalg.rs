//! Complex-bilinear inner-product algebra.
//!
//! Everything here works with the unconjugated form `g(X,Y) = X^T G Y`.
//! The standard form `g0` has `G = I`; note that `g0((1,i),(1,i)) = 0`, so
//! non-zero null vectors are routine and every orthonormalization has to be
//! prepared for them.

use crate::error::{Error, Result};
use crate::scalar::{dot0, herm_norm, HoloScalar, I};
use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::ops::{Deref, Index};

/// Relative threshold for null-vector detection in Gram–Schmidt.
pub const TOL_NULL: f64 = 1e-9;
/// Relative threshold for zero eigenvalues when counting a signature.
pub const TOL_SIGNATURE: f64 = 1e-9;
/// Relative threshold for snapping `a = ±bi` in the 2x2 normal form.
pub const TOL_BRANCH: f64 = 1e-9;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A vector in `C^n` with finite entries.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Complex64>", into = "Vec<Complex64>")]
pub struct CVec(Vec<Complex64>);

impl CVec {
    pub fn new(entries: Vec<Complex64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::DimensionMismatch { expected: 1, found: 0 });
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Parse("vector entries must be finite".into()));
        }
        Ok(CVec(entries))
    }

    pub fn zeros(n: usize) -> Self {
        CVec(vec![ZERO; n])
    }

    /// Standard basis vector `e_k` (zero based).
    pub fn basis(n: usize, k: usize) -> Self {
        let mut v = CVec::zeros(n);
        v.0[k] = ONE;
        v
    }

    pub fn from_real(xs: &[f64]) -> Self {
        CVec(xs.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<Complex64> {
        self.0
    }

    pub fn scaled(&self, c: Complex64) -> CVec {
        CVec(self.0.iter().map(|z| z * c).collect())
    }

    pub fn add(&self, other: &CVec) -> CVec {
        CVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &CVec) -> CVec {
        CVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// `g0(self, other)`.
    pub fn dot0(&self, other: &CVec) -> Complex64 {
        dot0(&self.0, &other.0)
    }

    /// Hermitian length, used for scale estimates only.
    pub fn herm_norm(&self) -> f64 {
        herm_norm(&self.0)
    }
}

impl Deref for CVec {
    type Target = [Complex64];
    fn deref(&self) -> &[Complex64] {
        &self.0
    }
}

impl Index<usize> for CVec {
    type Output = Complex64;
    fn index(&self, i: usize) -> &Complex64 {
        &self.0[i]
    }
}

impl TryFrom<Vec<Complex64>> for CVec {
    type Error = Error;
    fn try_from(v: Vec<Complex64>) -> Result<Self> {
        CVec::new(v)
    }
}

impl From<CVec> for Vec<Complex64> {
    fn from(v: CVec) -> Self {
        v.0
    }
}

/// Non-degenerate symmetric complex bilinear form given by its Gram matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct BilinearForm {
    gram: DMatrix<Complex64>,
}

impl BilinearForm {
    /// The standard holomorphic inner product `g0(X,Y) = sum X_k Y_k`.
    pub fn standard(n: usize) -> Self {
        BilinearForm { gram: DMatrix::identity(n, n) }
    }

    pub fn new(gram: DMatrix<Complex64>) -> Result<Self> {
        let n = gram.nrows();
        if n == 0 || gram.ncols() != n {
            return Err(Error::InvalidForm);
        }
        let scale = gram.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let asym = (&gram - gram.transpose()).iter().map(|z| z.norm()).fold(0.0, f64::max);
        if asym > 1e-12 * scale.max(1.0) {
            return Err(Error::InvalidForm);
        }
        if gram.determinant().norm() <= 1e-12 * scale.max(1.0).powi(n as i32) {
            return Err(Error::InvalidForm);
        }
        Ok(BilinearForm { gram })
    }

    pub fn dim(&self) -> usize {
        self.gram.nrows()
    }

    pub fn gram(&self) -> &DMatrix<Complex64> {
        &self.gram
    }

    fn apply(&self, x: &[Complex64], y: &[Complex64]) -> Complex64 {
        let n = self.dim();
        let mut acc = ZERO;
        for i in 0..n {
            for j in 0..n {
                let gij = self.gram[(i, j)];
                if gij != ZERO {
                    acc += gij * x[i] * y[j];
                }
            }
        }
        acc
    }
}

/// `g(X, Y) = sum G_ij X_i Y_j`, with no conjugation anywhere.
pub fn holo_inner(g: &BilinearForm, x: &CVec, y: &CVec) -> Result<Complex64> {
    for v in [x, y] {
        if v.dim() != g.dim() {
            return Err(Error::DimensionMismatch { expected: g.dim(), found: v.dim() });
        }
    }
    Ok(g.apply(x, y))
}

/// Gram–Schmidt with an arbitrary bilinear product, over any holomorphic
/// scalar type. Null pivots are detected on the value at the expansion
/// point, relative to `scale`.
pub(crate) fn orthonormalize_with<T, F>(vectors: &[Vec<T>], inner: F, scale: f64) -> Result<Vec<Vec<T>>>
where
    T: HoloScalar,
    F: Fn(&[T], &[T]) -> T,
{
    let mut out: Vec<Vec<T>> = Vec::with_capacity(vectors.len());
    for (index, v) in vectors.iter().enumerate() {
        let mut r = v.clone();
        for e in &out {
            let c = inner(e, &r);
            for (rk, &ek) in r.iter_mut().zip(e) {
                *rk = *rk - c * ek;
            }
        }
        let rr = inner(&r, &r);
        let magnitude = rr.value().norm();
        if magnitude < TOL_NULL * scale {
            return Err(Error::NullVectorEncountered { index, magnitude });
        }
        let inv = T::one() / rr.sqrt();
        out.push(r.into_iter().map(|x| x * inv).collect());
    }
    Ok(out)
}

/// Orthonormalize `vectors` with respect to `g`.
///
/// Normalization divides by the principal square root of `g(r,r)`. A
/// residual with `|g(r,r)|` below `TOL_NULL` times the input scale yields
/// [`Error::NullVectorEncountered`]; the caller is expected to re-seed.
pub fn gram_schmidt(g: &BilinearForm, vectors: &[CVec]) -> Result<Vec<CVec>> {
    for v in vectors {
        if v.dim() != g.dim() {
            return Err(Error::DimensionMismatch { expected: g.dim(), found: v.dim() });
        }
    }
    let scale = vectors
        .iter()
        .map(|v| v.herm_norm().powi(2))
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    let raw: Vec<Vec<Complex64>> = vectors.iter().map(|v| v.0.clone()).collect();
    let out = orthonormalize_with(&raw, |x, y| g.apply(x, y), scale)?;
    Ok(out.into_iter().map(CVec).collect())
}

/// Extend an orthonormal family to a full orthonormal basis of `C^n` under
/// `g0`, choosing at each step the standard basis vector whose residual is
/// farthest from null. Returns only the added vectors.
pub(crate) fn complete_basis_g0<T: HoloScalar>(family: &[Vec<T>], n: usize) -> Result<Vec<Vec<T>>> {
    let mut all: Vec<Vec<T>> = family.to_vec();
    let mut added = Vec::new();
    while all.len() < n {
        let mut best: Option<(f64, Vec<T>)> = None;
        for k in 0..n {
            let mut r: Vec<T> = (0..n)
                .map(|j| if j == k { T::one() } else { T::zero() })
                .collect();
            for e in &all {
                let c = dot0(e, &r);
                for (rj, &ej) in r.iter_mut().zip(e) {
                    *rj = *rj - c * ej;
                }
            }
            let m = dot0(&r, &r).value().norm();
            if best.as_ref().is_none_or(|(bm, _)| m > *bm) {
                best = Some((m, r));
            }
        }
        let (m, r) = best.expect("n > 0");
        if m < TOL_NULL {
            return Err(Error::NullVectorEncountered { index: all.len(), magnitude: m });
        }
        let inv = T::one() / dot0(&r, &r).sqrt();
        let e: Vec<T> = r.into_iter().map(|x| x * inv).collect();
        added.push(e.clone());
        all.push(e);
    }
    Ok(added)
}

/// Coarse type of a real-linear subspace of `C^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubspaceKind {
    RealSlice { signature: usize },
    TotallyReal,
    Generic,
    Degenerate,
}

/// A real-linear subspace together with its classification.
#[derive(Clone, Debug, PartialEq)]
pub struct RealSubspace {
    pub ambient_dim: usize,
    pub basis: Vec<CVec>,
    pub totally_real: bool,
    pub generic: bool,
    /// `Some(k)` when the form is real valued and non-degenerate on the
    /// subspace, with `k` negative directions.
    pub real_slice: Option<usize>,
}

impl RealSubspace {
    pub fn kind(&self) -> SubspaceKind {
        match (self.real_slice, self.totally_real, self.generic) {
            (Some(signature), _, _) => SubspaceKind::RealSlice { signature },
            (None, true, _) => SubspaceKind::TotallyReal,
            (None, false, true) => SubspaceKind::Generic,
            _ => SubspaceKind::Degenerate,
        }
    }
}

fn real_rank(columns: &[Vec<f64>], tol: f64) -> usize {
    if columns.is_empty() {
        return 0;
    }
    let rows = columns[0].len();
    let m = DMatrix::from_fn(rows, columns.len(), |i, j| columns[j][i]);
    let sv = m.singular_values();
    let top = sv.iter().cloned().fold(0.0, f64::max);
    sv.iter().filter(|&&s| s > tol * top.max(f64::MIN_POSITIVE)).count()
}

fn realify(v: &[Complex64]) -> Vec<f64> {
    v.iter().map(|z| z.re).chain(v.iter().map(|z| z.im)).collect()
}

/// Number of negative eigenvalues of a real symmetric matrix, or `None` if
/// it has an eigenvalue within `TOL_SIGNATURE` (relative) of zero.
pub fn signature_of(sym: &DMatrix<f64>) -> Option<usize> {
    let eig = SymmetricEigen::new(sym.clone());
    let scale = eig.eigenvalues.iter().map(|x| x.abs()).fold(0.0, f64::max);
    if scale == 0.0 {
        return None;
    }
    if eig.eigenvalues.iter().any(|x| x.abs() <= TOL_SIGNATURE * scale) {
        return None;
    }
    Some(eig.eigenvalues.iter().filter(|&&x| x < 0.0).count())
}

/// Classify the real span of `basis` as totally real, generic and/or a
/// real slice of signature `k`.
pub fn classify_subspace(g: &BilinearForm, basis: &[CVec]) -> Result<RealSubspace> {
    let n = g.dim();
    for b in basis {
        if b.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, found: b.dim() });
        }
    }
    let cols: Vec<Vec<f64>> = basis.iter().map(|b| realify(b)).collect();
    if basis.is_empty() || real_rank(&cols, 1e-10) != basis.len() {
        return Err(Error::DependentBasis);
    }

    // W ∩ iW = {0}  <=>  {b_j} ∪ {i b_j} is real-linearly independent.
    let mut doubled = cols.clone();
    doubled.extend(basis.iter().map(|b| realify(&b.scaled(I))));
    let totally_real = real_rank(&doubled, 1e-10) == 2 * basis.len();

    // W + iW = V  <=>  the complex span of the basis is all of C^n.
    let cm = DMatrix::from_fn(n, basis.len(), |i, j| basis[j][i]);
    let sv = cm.singular_values();
    let top = sv.iter().cloned().fold(0.0, f64::max);
    let generic = sv.iter().filter(|&&s| s > 1e-10 * top).count() == n;

    let m = basis.len();
    let gram = DMatrix::from_fn(m, m, |i, j| g.apply(&basis[i], &basis[j]));
    let scale = gram.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let real_valued = gram.iter().all(|z| z.im.abs() <= 1e-10 * scale.max(1.0));
    let real_slice = if real_valued {
        signature_of(&gram.map(|z| z.re))
    } else {
        None
    };

    Ok(RealSubspace {
        ambient_dim: n,
        basis: basis.to_vec(),
        totally_real,
        generic,
        real_slice,
    })
}

pub type Mat2 = [[Complex64; 2]; 2];

pub fn mat2_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[ZERO; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

pub fn mat2_transpose(a: &Mat2) -> Mat2 {
    [[a[0][0], a[1][0]], [a[0][1], a[1][1]]]
}

pub fn mat2_max_abs(a: &Mat2) -> f64 {
    a.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn mat2_sub(a: &Mat2, b: &Mat2) -> Mat2 {
    [
        [a[0][0] - b[0][0], a[0][1] - b[0][1]],
        [a[1][0] - b[1][0], a[1][1] - b[1][1]],
    ]
}

/// Normal form of a `g0`-symmetric operator on `C^2`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormalKind {
    /// `diag(alpha, beta)`
    Diagonal { alpha: Complex64, beta: Complex64 },
    /// `[[alpha + 1, i], [i, alpha - 1]]`, which has no eigenbasis.
    Undiagonalizable { alpha: Complex64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormalForm2 {
    pub kind: NormalKind,
    /// Columns are the orthonormal frame `e1, e2`; `Q^T Q = I`.
    pub frame: Mat2,
}

impl NormalForm2 {
    pub fn matrix(&self) -> Mat2 {
        match self.kind {
            NormalKind::Diagonal { alpha, beta } => [[alpha, ZERO], [ZERO, beta]],
            NormalKind::Undiagonalizable { alpha } => [[alpha + ONE, I], [I, alpha - ONE]],
        }
    }

    /// `max |A - Q F Q^T|`.
    pub fn reconstruction_error(&self, a: &Mat2) -> f64 {
        let q = self.frame;
        let rebuilt = mat2_mul(&mat2_mul(&q, &self.matrix()), &mat2_transpose(&q));
        mat2_max_abs(&mat2_sub(a, &rebuilt))
    }

    /// `max |Q^T Q - I|`.
    pub fn orthogonality_error(&self) -> f64 {
        let qtq = mat2_mul(&mat2_transpose(&self.frame), &self.frame);
        mat2_max_abs(&mat2_sub(&qtq, &[[ONE, ZERO], [ZERO, ONE]]))
    }
}

/// `cos t`, `sin t` from `cos 2t`, `sin 2t` (with `cos^2 2t + sin^2 2t = 1`),
/// picking whichever half-angle formula stays away from cancellation.
fn half_angle(cos2: Complex64, sin2: Complex64) -> (Complex64, Complex64) {
    let c = ((ONE + cos2) * 0.5).sqrt();
    let s = ((ONE - cos2) * 0.5).sqrt();
    if c.norm() >= s.norm() {
        (c, sin2 / (2.0 * c))
    } else {
        (sin2 / (2.0 * s), s)
    }
}

fn rotation(c: Complex64, s: Complex64) -> Mat2 {
    [[c, -s], [s, c]]
}

/// Bring a `g0`-symmetric 2x2 operator into one of its two normal forms by
/// a complex orthogonal change of frame.
///
/// Writing `A = [[m + a, b], [b, m - a]]`, the operator is diagonalizable
/// exactly when `b = 0` or `a != ±bi`. In the diagonal case the rotation
/// angle satisfies `cot 2t = a/b`; otherwise a rotation (composed with a
/// reflection when `a = bi`) makes the frame components `a' = 1, b' = i`.
pub fn classify_symmetric_2x2(a: &Mat2) -> Result<NormalForm2> {
    let scale = mat2_max_abs(a);
    let asym = (a[0][1] - a[1][0]).norm();
    if asym > 1e-10 * scale.max(1.0) {
        return Err(Error::NonSymmetric(asym));
    }
    let m = (a[0][0] + a[1][1]) * 0.5;
    let d = (a[0][0] - a[1][1]) * 0.5;
    let b = (a[0][1] + a[1][0]) * 0.5;
    let identity = [[ONE, ZERO], [ZERO, ONE]];

    if b.norm() <= 1e-15 * scale {
        return Ok(NormalForm2 {
            kind: NormalKind::Diagonal { alpha: m + d, beta: m - d },
            frame: identity,
        });
    }

    let branch = TOL_BRANCH * d.norm().max(b.norm());
    let plus = (d - b * I).norm() < branch; // a = bi
    let minus = (d + b * I).norm() < branch; // a = -bi

    if plus || minus {
        // In the a = -bi class a rotation by t acts as b' = b e^{2it}, a' = -i b'.
        // The a = bi class is moved into it by the reflection e2 -> -e2.
        let (reflect, b_eff) = if plus { ([[ONE, ZERO], [ZERO, -ONE]], -b) } else { (identity, b) };
        let w = I / b_eff; // e^{2it}
        let cos2 = (w + ONE / w) * 0.5;
        let sin2 = (w - ONE / w) / (2.0 * I);
        let (c, s) = half_angle(cos2, sin2);
        return Ok(NormalForm2 {
            kind: NormalKind::Undiagonalizable { alpha: m },
            frame: mat2_mul(&reflect, &rotation(c, s)),
        });
    }

    let r = (d * d + b * b).sqrt();
    let (c, s) = half_angle(d / r, b / r);
    Ok(NormalForm2 {
        kind: NormalKind::Diagonal { alpha: m + r, beta: m - r },
        frame: rotation(c, s),
    })
}

/// Affine similarity `X -> alpha * M X + w` of `C^n`, with `M` in `O(n, C)`
/// and `alpha != 0`. Its linear part has conformal factor `alpha^2`.
#[derive(Clone, Debug, PartialEq)]
pub struct Similarity {
    dilation: Complex64,
    rotation: Option<DMatrix<Complex64>>,
    translation: Option<CVec>,
}

impl Similarity {
    pub fn identity() -> Self {
        Similarity { dilation: ONE, rotation: None, translation: None }
    }

    /// The dilation `L_alpha: z -> alpha z`.
    pub fn dilation(alpha: Complex64) -> Result<Self> {
        if alpha == ZERO {
            return Err(Error::ZeroDilation);
        }
        Ok(Similarity { dilation: alpha, rotation: None, translation: None })
    }

    pub fn translation(w: CVec) -> Self {
        Similarity { dilation: ONE, rotation: None, translation: Some(w) }
    }

    pub fn rotation(m: DMatrix<Complex64>) -> Result<Self> {
        let n = m.nrows();
        if m.ncols() != n {
            return Err(Error::DimensionMismatch { expected: n, found: m.ncols() });
        }
        let err = (m.transpose() * &m - DMatrix::identity(n, n))
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        if err > 1e-10 {
            return Err(Error::NotOrthogonal(err));
        }
        Ok(Similarity { dilation: ONE, rotation: Some(m), translation: None })
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Similarity) -> Similarity {
        let rotation = match (&self.rotation, &other.rotation) {
            (None, None) => None,
            (Some(a), None) => Some(a.clone()),
            (None, Some(b)) => Some(b.clone()),
            (Some(a), Some(b)) => Some(b * a),
        };
        let translation = match &self.translation {
            None => other.translation.clone(),
            Some(w) => {
                let moved = other.apply_linear(w);
                Some(match &other.translation {
                    Some(w2) => moved.add(w2),
                    None => moved,
                })
            }
        };
        Similarity {
            dilation: self.dilation * other.dilation,
            rotation,
            translation,
        }
    }

    pub fn conformal_factor(&self) -> Complex64 {
        self.dilation * self.dilation
    }

    pub fn apply_linear(&self, x: &CVec) -> CVec {
        let rotated = match &self.rotation {
            Some(m) => {
                let v = nalgebra::DVector::from_column_slice(x);
                CVec((m * v).iter().cloned().collect())
            }
            None => x.clone(),
        };
        rotated.scaled(self.dilation)
    }
}

/// Apply an affine similarity to a point.
pub fn apply_similarity(t: &Similarity, x: &CVec) -> Result<CVec> {
    if let Some(m) = &t.rotation {
        if m.nrows() != x.dim() {
            return Err(Error::DimensionMismatch { expected: m.nrows(), found: x.dim() });
        }
    }
    let lin = t.apply_linear(x);
    match &t.translation {
        Some(w) if w.dim() != x.dim() => {
            Err(Error::DimensionMismatch { expected: w.dim(), found: x.dim() })
        }
        Some(w) => Ok(lin.add(w)),
        None => Ok(lin),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::c64;

    fn cv(xs: &[(f64, f64)]) -> CVec {
        CVec::new(xs.iter().map(|&(a, b)| c64(a, b)).collect()).unwrap()
    }

    #[test]
    fn inner_product_examples() {
        let g2 = BilinearForm::standard(2);
        let g3 = BilinearForm::standard(3);
        let null = cv(&[(1.0, 0.0), (0.0, 1.0)]);
        assert_eq!(holo_inner(&g2, &null, &null).unwrap(), ZERO);
        let ie1 = cv(&[(0.0, 1.0), (0.0, 0.0), (0.0, 0.0)]);
        assert_eq!(holo_inner(&g3, &ie1, &ie1).unwrap(), c64(-1.0, 0.0));
        let x = cv(&[(3.0, 0.0), (4.0, 0.0)]);
        let y = cv(&[(1.0, 0.0), (0.0, 0.0)]);
        assert_eq!(holo_inner(&g2, &x, &y).unwrap(), c64(3.0, 0.0));
        assert!(matches!(
            holo_inner(&g3, &x, &y),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn gram_schmidt_examples() {
        let g2 = BilinearForm::standard(2);
        let out = gram_schmidt(&g2, &[cv(&[(2.0, 0.0), (0.0, 0.0)]), cv(&[(1.0, 0.0), (1.0, 0.0)])]).unwrap();
        assert_eq!(out[0], cv(&[(1.0, 0.0), (0.0, 0.0)]));
        assert!((out[1][1] - ONE).norm() < 1e-15 && out[1][0].norm() < 1e-15);

        let err = gram_schmidt(&g2, &[cv(&[(1.0, 0.0), (0.0, 1.0)])]).unwrap_err();
        assert!(matches!(err, Error::NullVectorEncountered { index: 0, .. }));

        // (0,1,3i) minus its e2 component is 3i e3; g(3i e3, 3i e3) = -9 and
        // the principal root is 3i, so the normalized vector is exactly e3.
        let g3 = BilinearForm::standard(3);
        let out = gram_schmidt(
            &g3,
            &[cv(&[(0.0, 0.0), (2.0, 0.0), (0.0, 0.0)]), cv(&[(0.0, 0.0), (1.0, 0.0), (0.0, 3.0)])],
        )
        .unwrap();
        assert_eq!(out[0], CVec::basis(3, 1));
        for k in 0..3 {
            assert!((out[1][k] - CVec::basis(3, 2)[k]).norm() < 1e-15);
        }
    }

    #[test]
    fn classify_examples() {
        let g3 = BilinearForm::standard(3);
        let w = classify_subspace(
            &g3,
            &[cv(&[(0.0, 1.0), (0.0, 0.0), (0.0, 0.0)]), CVec::basis(3, 1), CVec::basis(3, 2)],
        )
        .unwrap();
        assert_eq!(w.kind(), SubspaceKind::RealSlice { signature: 1 });
        assert!(w.totally_real && w.generic);

        let g2 = BilinearForm::standard(2);
        let w = classify_subspace(&g2, &[CVec::basis(2, 0), cv(&[(0.0, 1.0), (0.0, 0.0)])]).unwrap();
        assert_eq!(w.kind(), SubspaceKind::Degenerate);
        assert!(!w.totally_real);

        let w = classify_subspace(&g2, &[cv(&[(1.0, 0.0), (0.0, 1.0)])]).unwrap();
        assert_eq!(w.kind(), SubspaceKind::TotallyReal);
        assert_eq!(w.real_slice, None);

        let dep = classify_subspace(&g2, &[CVec::basis(2, 0), CVec::basis(2, 0).scaled(c64(2.0, 0.0))]);
        assert_eq!(dep, Err(Error::DependentBasis));
    }

    #[test]
    fn normal_form_examples() {
        let id = [[ONE, ZERO], [ZERO, ONE]];
        let nf = classify_symmetric_2x2(&id).unwrap();
        assert_eq!(nf.kind, NormalKind::Diagonal { alpha: ONE, beta: ONE });
        assert_eq!(nf.frame, id);

        let und = [[ONE, I], [I, -ONE]];
        let nf = classify_symmetric_2x2(&und).unwrap();
        assert_eq!(nf.kind, NormalKind::Undiagonalizable { alpha: ZERO });
        assert!(nf.reconstruction_error(&und) < 1e-14);
        assert!(nf.orthogonality_error() < 1e-14);

        let swap = [[ZERO, ONE], [ONE, ZERO]];
        let nf = classify_symmetric_2x2(&swap).unwrap();
        match nf.kind {
            NormalKind::Diagonal { alpha, beta } => {
                assert!((alpha - ONE).norm() < 1e-14);
                assert!((beta + ONE).norm() < 1e-14);
            }
            other => panic!("unexpected {other:?}"),
        }
        // eigenvectors (1, ±1)/sqrt 2
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!((nf.frame[0][0].norm() - r).abs() < 1e-14);
        assert!((nf.frame[1][0].norm() - r).abs() < 1e-14);
        assert!(nf.reconstruction_error(&swap) < 1e-14);

        let nonsym = [[ONE, ONE], [ZERO, ONE]];
        assert!(matches!(classify_symmetric_2x2(&nonsym), Err(Error::NonSymmetric(_))));
    }

    #[test]
    fn similarity_examples() {
        let li = Similarity::dilation(I).unwrap();
        let x = CVec::basis(3, 0);
        assert_eq!(apply_similarity(&li, &x).unwrap(), x.scaled(I));
        assert_eq!(li.conformal_factor(), c64(-1.0, 0.0));
        assert_eq!(apply_similarity(&Similarity::identity(), &x).unwrap(), x);
        assert_eq!(Similarity::dilation(ZERO), Err(Error::ZeroDilation));

        let theta = c64(0.3, 0.7);
        let (c, s) = (theta.cos(), theta.sin());
        let m = DMatrix::from_row_slice(3, 3, &[c, -s, ZERO, s, c, ZERO, ZERO, ZERO, ONE]);
        let rot = Similarity::rotation(m).unwrap();
        let y = cv(&[(1.0, 2.0), (0.5, -1.0), (3.0, 0.0)]);
        let (ry, rx) = (apply_similarity(&rot, &y).unwrap(), apply_similarity(&rot, &x).unwrap());
        assert!((ry.dot0(&rx) - y.dot0(&x)).norm() < 1e-13);

        let bad = DMatrix::from_element(2, 2, ONE);
        assert!(matches!(Similarity::rotation(bad), Err(Error::NotOrthogonal(_))));
    }

    #[test]
    fn basis_completion_pivots_around_null_directions() {
        // tangent (1, i, 0)/? is null; start from a non-null unit vector in a
        // plane whose naive completion by e1 would hit a null residual.
        let t = vec![vec![c64(0.0, 0.0), c64(0.0, 0.0), c64(1.0, 0.0)]];
        let added = complete_basis_g0(&t, 3).unwrap();
        assert_eq!(added.len(), 2);
        let mut all = t.clone();
        all.extend(added);
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { ONE } else { ZERO };
                assert!((dot0(&all[i], &all[j]) - want).norm() < 1e-14);
            }
        }
    }
}
