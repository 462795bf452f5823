//! Rectangular parameter grids, possibly shifted into the complex domain.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Inclusive range `[start, end]` sampled at `count` points.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "(f64, f64, usize)", into = "(f64, f64, usize)")]
pub struct Axis {
    pub start: f64,
    pub end: f64,
    pub count: usize,
}

impl Axis {
    pub fn new(start: f64, end: f64, count: usize) -> Result<Self> {
        if count < 2 {
            return Err(Error::Parse(format!("grid resolution must be at least 2, got {count}")));
        }
        if !start.is_finite() || !end.is_finite() || start == end {
            return Err(Error::Parse(format!("invalid grid range [{start}, {end}]")));
        }
        Ok(Axis { start, end, count })
    }

    pub fn at(&self, i: usize) -> f64 {
        if i + 1 == self.count {
            return self.end;
        }
        self.start + (self.end - self.start) * i as f64 / (self.count - 1) as f64
    }
}

impl TryFrom<(f64, f64, usize)> for Axis {
    type Error = Error;
    fn try_from((a, b, n): (f64, f64, usize)) -> Result<Self> {
        Axis::new(a, b, n)
    }
}

impl From<Axis> for (f64, f64, usize) {
    fn from(a: Axis) -> Self {
        (a.start, a.end, a.count)
    }
}

/// `u = u_axis + i u_im`, `v = v_axis + i v_im`. Points are ordered with `v`
/// varying fastest.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub u: Axis,
    pub v: Axis,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub u_im: f64,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub v_im: f64,
}

fn is_zero(x: &f64) -> bool {
    *x == 0.0
}

pub const DEFAULT_RESOLUTION: usize = 21;

impl Grid {
    pub fn real(u: (f64, f64), v: (f64, f64)) -> Self {
        Grid {
            u: Axis::new(u.0, u.1, DEFAULT_RESOLUTION).expect("valid axis"),
            v: Axis::new(v.0, v.1, DEFAULT_RESOLUTION).expect("valid axis"),
            u_im: 0.0,
            v_im: 0.0,
        }
    }

    pub fn shifted(mut self, u_im: f64, v_im: f64) -> Self {
        self.u_im = u_im;
        self.v_im = v_im;
        self
    }

    pub fn with_resolution(mut self, nu: usize, nv: usize) -> Result<Self> {
        self.u = Axis::new(self.u.start, self.u.end, nu)?;
        self.v = Axis::new(self.v.start, self.v.end, nv)?;
        Ok(self)
    }

    pub fn is_real(&self) -> bool {
        self.u_im == 0.0 && self.v_im == 0.0
    }

    /// Same box without the imaginary offsets.
    pub fn real_part(&self) -> Self {
        self.shifted(0.0, 0.0)
    }

    pub fn len(&self) -> usize {
        self.u.count * self.v.count
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn point(&self, index: usize) -> (Complex64, Complex64) {
        let (i, j) = (index / self.v.count, index % self.v.count);
        (Complex64::new(self.u.at(i), self.u_im), Complex64::new(self.v.at(j), self.v_im))
    }

    pub fn points(&self) -> impl Iterator<Item = (Complex64, Complex64)> + '_ {
        (0..self.len()).map(|k| self.point(k))
    }

    /// Parse `u0,u1,nu,v0,v1,nv`.
    pub fn parse_box(s: &str) -> Result<(Axis, Axis)> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 6 {
            return Err(Error::Parse(format!("grid must be u0,u1,nu,v0,v1,nv; got `{s}`")));
        }
        let f = |k: usize| parts[k].parse::<f64>().map_err(|e| Error::Parse(format!("grid value `{}`: {e}", parts[k])));
        let n = |k: usize| parts[k].parse::<usize>().map_err(|e| Error::Parse(format!("grid count `{}`: {e}", parts[k])));
        Ok((Axis::new(f(0)?, f(1)?, n(2)?)?, Axis::new(f(3)?, f(4)?, n(5)?)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inclusive_endpoints_and_order() {
        let g = Grid::real((0.0, 1.0), (-1.0, 1.0)).with_resolution(3, 2).unwrap().shifted(0.0, 0.5);
        let pts: Vec<_> = g.points().collect();
        assert_eq!(pts.len(), 6);
        assert_eq!(pts[0], (Complex64::new(0.0, 0.0), Complex64::new(-1.0, 0.5)));
        assert_eq!(pts[1], (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.5)));
        assert_eq!(pts[5], (Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.5)));
    }

    #[test]
    fn parse_box() {
        let (u, v) = Grid::parse_box("0, 6.283, 5, -1, 1, 7").unwrap();
        assert_eq!((u.count, v.count), (5, 7));
        assert!(Grid::parse_box("0,1,1,0,1,4").is_err());
        assert!(Grid::parse_box("0,1,4").is_err());
        assert!(Grid::parse_box("0,x,4,0,1,4").is_err());
    }

    #[test]
    fn json_shape() {
        let g = Grid::real((0.0, 1.0), (2.0, 3.0)).shifted(0.3, 0.0);
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"u":[0.0,1.0,21],"v":[2.0,3.0,21],"u_im":0.3}"#);
        assert_eq!(serde_json::from_str::<Grid>(&s).unwrap(), g);
        assert!(serde_json::from_str::<Grid>(r#"{"u":[0,1,1],"v":[0,1,3]}"#).is_err());
    }
}
