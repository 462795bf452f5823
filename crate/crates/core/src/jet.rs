//! Truncated holomorphic Taylor jets in two complex parameters.
//!
//! A [`Jet2`] stores the coefficients `c[p,q]` of
//! `f(u0 + du, v0 + dv) = sum c[p,q] du^p dv^q` for all `p + q <= 3`.
//! Arithmetic truncates at total degree three, which is exactly enough to
//! recover third derivatives of an immersion.

use crate::error::{Error, Result};
use crate::scalar::HoloScalar;
use num_complex::Complex64;
use std::ops::{Add, Div, Mul, Neg, Sub};

pub const ORDER: usize = 3;
const LEN: usize = 10;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Exponent pairs in storage order, grouped by total degree.
const EXPONENTS: [(usize, usize); LEN] = [
    (0, 0),
    (1, 0),
    (0, 1),
    (2, 0),
    (1, 1),
    (0, 2),
    (3, 0),
    (2, 1),
    (1, 2),
    (0, 3),
];

#[inline]
const fn index(p: usize, q: usize) -> usize {
    let d = p + q;
    d * (d + 1) / 2 + q
}

/// Multiplication table: for every output slot, the (lhs, rhs) slot pairs
/// whose exponents add up to it.
fn product_pairs() -> &'static [Vec<(usize, usize)>; LEN] {
    use std::sync::OnceLock;
    static TABLE: OnceLock<[Vec<(usize, usize)>; LEN]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table: [Vec<(usize, usize)>; LEN] = Default::default();
        for (a, &(pa, qa)) in EXPONENTS.iter().enumerate() {
            for (b, &(pb, qb)) in EXPONENTS.iter().enumerate() {
                if pa + pb + qa + qb <= ORDER {
                    table[index(pa + pb, qa + qb)].push((a, b));
                }
            }
        }
        table
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet2 {
    coeffs: [Complex64; LEN],
}

impl Jet2 {
    pub fn constant(c: Complex64) -> Self {
        let mut coeffs = [ZERO; LEN];
        coeffs[0] = c;
        Jet2 { coeffs }
    }

    /// The first parameter `u` expanded at `u0`.
    pub fn var_u(u0: Complex64) -> Self {
        let mut j = Jet2::constant(u0);
        j.coeffs[index(1, 0)] = ONE;
        j
    }

    /// The second parameter `v` expanded at `v0`.
    pub fn var_v(v0: Complex64) -> Self {
        let mut j = Jet2::constant(v0);
        j.coeffs[index(0, 1)] = ONE;
        j
    }

    pub fn from_coeffs(coeffs: [Complex64; LEN]) -> Self {
        Jet2 { coeffs }
    }

    /// Taylor coefficient of `du^p dv^q`.
    pub fn coeff(&self, p: usize, q: usize) -> Complex64 {
        if p + q > ORDER {
            ZERO
        } else {
            self.coeffs[index(p, q)]
        }
    }

    pub fn coeffs(&self) -> &[Complex64; LEN] {
        &self.coeffs
    }

    /// `d^(p+q) f / du^p dv^q` at the expansion point, i.e. `p! q! c[p,q]`.
    pub fn partial(&self, p: usize, q: usize) -> Result<Complex64> {
        if p + q > ORDER {
            return Err(Error::DerivativeOrder { p, q });
        }
        Ok(self.coeffs[index(p, q)] * (factorial(p) * factorial(q)))
    }

    /// Derivative jet with respect to `u`. Coefficients of total degree 3
    /// are unknown after differentiation and set to zero, so the result is
    /// only exact through degree 2.
    pub fn d_du(&self) -> Self {
        let mut out = [ZERO; LEN];
        for &(p, q) in EXPONENTS.iter() {
            if p + q < ORDER {
                out[index(p, q)] = self.coeffs[index(p + 1, q)] * (p + 1) as f64;
            }
        }
        Jet2 { coeffs: out }
    }

    pub fn d_dv(&self) -> Self {
        let mut out = [ZERO; LEN];
        for &(p, q) in EXPONENTS.iter() {
            if p + q < ORDER {
                out[index(p, q)] = self.coeffs[index(p, q + 1)] * (q + 1) as f64;
            }
        }
        Jet2 { coeffs: out }
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    /// `g(f)` for a univariate function whose value and first three
    /// derivatives at `f(0)` are given.
    fn compose(&self, derivs: [Complex64; 4]) -> Self {
        let mut d = *self;
        d.coeffs[0] = ZERO;
        let d2 = d * d;
        let d3 = d2 * d;
        let mut out = [ZERO; LEN];
        out[0] = derivs[0];
        for k in 1..LEN {
            out[k] = derivs[1] * d.coeffs[k]
                + derivs[2] * 0.5 * d2.coeffs[k]
                + derivs[3] / 6.0 * d3.coeffs[k];
        }
        Jet2 { coeffs: out }
    }

    pub fn recip(self) -> Self {
        let x = self.coeffs[0];
        let r = ONE / x;
        self.compose([r, -r * r, 2.0 * r * r * r, -6.0 * r * r * r * r])
    }
}

fn factorial(n: usize) -> f64 {
    (1..=n).product::<usize>() as f64
}

impl Add for Jet2 {
    type Output = Jet2;
    fn add(mut self, rhs: Jet2) -> Jet2 {
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs) {
            *a += b;
        }
        self
    }
}

impl Sub for Jet2 {
    type Output = Jet2;
    fn sub(mut self, rhs: Jet2) -> Jet2 {
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs) {
            *a -= b;
        }
        self
    }
}

impl Neg for Jet2 {
    type Output = Jet2;
    fn neg(mut self) -> Jet2 {
        for a in self.coeffs.iter_mut() {
            *a = -*a;
        }
        self
    }
}

impl Mul for Jet2 {
    type Output = Jet2;
    fn mul(self, rhs: Jet2) -> Jet2 {
        let mut out = [ZERO; LEN];
        for (slot, pairs) in out.iter_mut().zip(product_pairs().iter()) {
            *slot = pairs
                .iter()
                .fold(ZERO, |acc, &(a, b)| acc + self.coeffs[a] * rhs.coeffs[b]);
        }
        Jet2 { coeffs: out }
    }
}

impl Div for Jet2 {
    type Output = Jet2;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Jet2) -> Jet2 {
        self * rhs.recip()
    }
}

impl HoloScalar for Jet2 {
    fn constant(c: Complex64) -> Self {
        Jet2::constant(c)
    }

    fn value(&self) -> Complex64 {
        self.coeffs[0]
    }

    fn scale(mut self, c: Complex64) -> Self {
        for a in self.coeffs.iter_mut() {
            *a *= c;
        }
        self
    }

    fn exp(self) -> Self {
        let e = self.coeffs[0].exp();
        self.compose([e, e, e, e])
    }

    fn ln(self) -> Self {
        let x = self.coeffs[0];
        let r = ONE / x;
        self.compose([x.ln(), r, -r * r, 2.0 * r * r * r])
    }

    fn sin(self) -> Self {
        let (s, c) = (self.coeffs[0].sin(), self.coeffs[0].cos());
        self.compose([s, c, -s, -c])
    }

    fn cos(self) -> Self {
        let (s, c) = (self.coeffs[0].sin(), self.coeffs[0].cos());
        self.compose([c, -s, -c, s])
    }

    fn sinh(self) -> Self {
        let (s, c) = (self.coeffs[0].sinh(), self.coeffs[0].cosh());
        self.compose([s, c, s, c])
    }

    fn cosh(self) -> Self {
        let (s, c) = (self.coeffs[0].sinh(), self.coeffs[0].cosh());
        self.compose([c, s, c, s])
    }

    fn sqrt(self) -> Self {
        let r = self.coeffs[0].sqrt();
        let inv = ONE / r;
        let inv3 = inv * inv * inv;
        self.compose([r, 0.5 * inv, -0.25 * inv3, 0.375 * inv3 * inv * inv])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::c64;

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-13
    }

    #[test]
    fn cosh_at_origin() {
        let f = Jet2::var_u(ZERO).cosh();
        assert!(close(f.coeff(0, 0), ONE));
        assert!(close(f.coeff(1, 0), ZERO));
        assert!(close(f.coeff(2, 0), c64(0.5, 0.0)));
        assert!(close(f.coeff(3, 0), ZERO));
    }

    #[test]
    fn product_of_parameters() {
        let f = Jet2::var_u(c64(2.0, 0.0)) * Jet2::var_v(c64(3.0, 0.0));
        let expected = [(0, 0, 6.0), (1, 0, 3.0), (0, 1, 2.0), (1, 1, 1.0)];
        for &(p, q) in EXPONENTS.iter() {
            let want = expected
                .iter()
                .find(|e| e.0 == p && e.1 == q)
                .map_or(0.0, |e| e.2);
            assert!(close(f.coeff(p, q), c64(want, 0.0)), "c[{p},{q}]");
        }
    }

    #[test]
    fn exp_of_sin() {
        // exp(sin u) = 1 + u + u^2/2 + 0 u^3 + ...
        let f = Jet2::var_u(ZERO).sin().exp();
        assert!(close(f.coeff(1, 0), ONE));
        assert!(close(f.coeff(2, 0), c64(0.5, 0.0)));
        assert!(close(f.coeff(3, 0), ZERO));
    }

    #[test]
    fn partials() {
        let sq = Jet2::var_u(ONE) * Jet2::var_u(ONE);
        assert!(close(sq.partial(2, 0).unwrap(), c64(2.0, 0.0)));
        let k = Jet2::constant(c64(5.0, 0.0));
        assert!(close(k.partial(1, 0).unwrap(), ZERO));
        let w = Jet2::var_u(ZERO) + Jet2::var_v(ZERO).scale(crate::scalar::I);
        assert!(close(w.sinh().partial(0, 1).unwrap(), crate::scalar::I));
        assert_eq!(
            k.partial(2, 2),
            Err(Error::DerivativeOrder { p: 2, q: 2 })
        );
    }

    #[test]
    fn reciprocal_series() {
        // 1/(1-u) = 1 + u + u^2 + u^3
        let f = (Jet2::constant(ONE) - Jet2::var_u(ZERO)).recip();
        for p in 0..=3 {
            assert!(close(f.coeff(p, 0), ONE));
        }
    }

    #[test]
    fn sqrt_squares_back() {
        let x = Jet2::var_u(c64(2.0, 1.0)) * Jet2::var_v(c64(0.5, -0.3)) + Jet2::constant(ONE);
        let r = x.sqrt();
        let back = r * r;
        for k in 0..LEN {
            assert!((back.coeffs[k] - x.coeffs[k]).norm() < 1e-12);
        }
    }

    #[test]
    fn derivative_jets() {
        // f = u^2 v; df/du = 2uv, df/dv = u^2
        let u = Jet2::var_u(c64(1.5, 0.0));
        let v = Jet2::var_v(c64(-2.0, 0.0));
        let f = u * u * v;
        let fu = f.d_du();
        assert!(close(fu.value(), c64(2.0 * 1.5 * -2.0, 0.0)));
        assert!(close(fu.coeff(1, 1), c64(2.0, 0.0)));
        let fv = f.d_dv();
        assert!(close(fv.value(), c64(2.25, 0.0)));
        assert!(close(fv.coeff(1, 0), c64(3.0, 0.0)));
    }
}
