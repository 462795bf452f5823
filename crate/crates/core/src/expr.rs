//! Holomorphic expression trees and chart programs.
//!
//! Programs are built from constants, the chart parameters `u`, `v` (or the
//! ambient coordinates `z1..zn` for implicit equations) and a fixed set of
//! holomorphic operations. They evaluate over any [`HoloScalar`], so the same
//! tree yields plain values or full third-order jets.
//!
//! JSON form: leaves are `{"const": [re, im]}` or `{"var": "u"}`; inner nodes
//! are `{"op": "mul", "args": [...]}`, with `{"op": "powi", "n": 3, ...}` for
//! integer powers. Conjugation and real/imaginary parts are not expressible.

use crate::error::{Error, Result};
use crate::jet::Jet2;
use crate::linalg::CVec;
use crate::scalar::{c64, HoloScalar};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Smallest divisor modulus accepted before reporting a singular evaluation.
pub const TOL_DIVISION: f64 = 1e-300;
/// Angular guard around the principal-branch cut of `sqrt` and `log`.
pub const TOL_BRANCH_CUT: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    U,
    V,
    /// Ambient coordinate `z_k`, one based.
    Z(usize),
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::U => write!(f, "u"),
            Var::V => write!(f, "v"),
            Var::Z(k) => write!(f, "z{k}"),
        }
    }
}

impl std::str::FromStr for Var {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "u" => Ok(Var::U),
            "v" => Ok(Var::V),
            _ => s
                .strip_prefix('z')
                .and_then(|k| k.parse::<usize>().ok())
                .filter(|&k| k >= 1)
                .map(Var::Z)
                .ok_or_else(|| Error::InvalidProgram(format!("unknown variable `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Powi(i32),
    Exp,
    Log,
    Sin,
    Cos,
    Sinh,
    Cosh,
    Sqrt,
}

impl Op {
    fn name(&self) -> &'static str {
        match self {
            Op::Add => "add",
            Op::Sub => "sub",
            Op::Mul => "mul",
            Op::Div => "div",
            Op::Neg => "neg",
            Op::Powi(_) => "powi",
            Op::Exp => "exp",
            Op::Log => "log",
            Op::Sin => "sin",
            Op::Cos => "cos",
            Op::Sinh => "sinh",
            Op::Cosh => "cosh",
            Op::Sqrt => "sqrt",
        }
    }

    fn parse(name: &str, n: Option<i32>) -> Result<Op> {
        let op = match name {
            "add" => Op::Add,
            "sub" => Op::Sub,
            "mul" => Op::Mul,
            "div" => Op::Div,
            "neg" => Op::Neg,
            "powi" => Op::Powi(n.ok_or_else(|| Error::InvalidProgram("powi requires integer field `n`".into()))?),
            "exp" => Op::Exp,
            "log" => Op::Log,
            "sin" => Op::Sin,
            "cos" => Op::Cos,
            "sinh" => Op::Sinh,
            "cosh" => Op::Cosh,
            "sqrt" => Op::Sqrt,
            "conj" | "re" | "im" | "abs" | "arg" => {
                return Err(Error::InvalidProgram(format!(
                    "op `{name}` is not holomorphic and cannot appear in a chart program"
                )))
            }
            _ => return Err(Error::InvalidProgram(format!("unknown op `{name}`"))),
        };
        if n.is_some() && !matches!(op, Op::Powi(_)) {
            return Err(Error::InvalidProgram(format!("field `n` is only valid for powi, not {name}")));
        }
        Ok(op)
    }

    fn arity_ok(&self, k: usize) -> bool {
        match self {
            Op::Add | Op::Mul => k >= 1,
            Op::Sub | Op::Div => k == 2,
            _ => k == 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawExpr", into = "RawExpr")]
pub enum Expr {
    Const(Complex64),
    Var(Var),
    Node(Op, Vec<Expr>),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawExpr {
    #[serde(rename = "const", skip_serializing_if = "Option::is_none", default)]
    constant: Option<Complex64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    var: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    op: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    n: Option<i32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    args: Option<Vec<RawExpr>>,
}

impl TryFrom<RawExpr> for Expr {
    type Error = Error;
    fn try_from(raw: RawExpr) -> Result<Expr> {
        match (raw.constant, raw.var, raw.op) {
            (Some(c), None, None) if raw.args.is_none() && raw.n.is_none() => {
                if c.re.is_finite() && c.im.is_finite() {
                    Ok(Expr::Const(c))
                } else {
                    Err(Error::InvalidProgram("non-finite constant".into()))
                }
            }
            (None, Some(name), None) if raw.args.is_none() && raw.n.is_none() => Ok(Expr::Var(name.parse()?)),
            (None, None, Some(name)) => {
                let op = Op::parse(&name, raw.n)?;
                let args = raw
                    .args
                    .unwrap_or_default()
                    .into_iter()
                    .map(Expr::try_from)
                    .collect::<Result<Vec<_>>>()?;
                if !op.arity_ok(args.len()) {
                    return Err(Error::InvalidProgram(format!("op `{name}` given {} arguments", args.len())));
                }
                Ok(Expr::Node(op, args))
            }
            _ => Err(Error::InvalidProgram(
                "node must have exactly one of `const`, `var` or `op`".into(),
            )),
        }
    }
}

impl From<Expr> for RawExpr {
    fn from(e: Expr) -> RawExpr {
        let mut raw = RawExpr { constant: None, var: None, op: None, n: None, args: None };
        match e {
            Expr::Const(c) => raw.constant = Some(c),
            Expr::Var(v) => raw.var = Some(v.to_string()),
            Expr::Node(op, args) => {
                raw.op = Some(op.name().to_string());
                if let Op::Powi(n) = op {
                    raw.n = Some(n);
                }
                raw.args = Some(args.into_iter().map(RawExpr::from).collect());
            }
        }
        raw
    }
}

fn singular(node: &Expr, reason: &str) -> Error {
    let mut text = node.to_string();
    if text.len() > 120 {
        text.truncate(117);
        text.push_str("...");
    }
    Error::SingularEvaluation { node: text, reason: reason.to_string() }
}

fn near_branch_cut(z: Complex64) -> bool {
    (z.arg().abs() - std::f64::consts::PI).abs() < TOL_BRANCH_CUT
}

impl Expr {
    pub fn u() -> Expr {
        Expr::Var(Var::U)
    }
    pub fn v() -> Expr {
        Expr::Var(Var::V)
    }
    pub fn z(k: usize) -> Expr {
        Expr::Var(Var::Z(k))
    }
    pub fn c(re: f64, im: f64) -> Expr {
        Expr::Const(c64(re, im))
    }
    pub fn real(x: f64) -> Expr {
        Expr::c(x, 0.0)
    }
    pub fn constant(z: Complex64) -> Expr {
        Expr::Const(z)
    }
    fn unary(self, op: Op) -> Expr {
        Expr::Node(op, vec![self])
    }
    pub fn exp(self) -> Expr {
        self.unary(Op::Exp)
    }
    pub fn ln(self) -> Expr {
        self.unary(Op::Log)
    }
    pub fn sin(self) -> Expr {
        self.unary(Op::Sin)
    }
    pub fn cos(self) -> Expr {
        self.unary(Op::Cos)
    }
    pub fn sinh(self) -> Expr {
        self.unary(Op::Sinh)
    }
    pub fn cosh(self) -> Expr {
        self.unary(Op::Cosh)
    }
    pub fn sqrt(self) -> Expr {
        self.unary(Op::Sqrt)
    }
    pub fn powi(self, n: i32) -> Expr {
        self.unary(Op::Powi(n))
    }

    pub fn sum(terms: Vec<Expr>) -> Expr {
        match terms.len() {
            0 => Expr::real(0.0),
            1 => terms.into_iter().next().unwrap(),
            _ => Expr::Node(Op::Add, terms),
        }
    }

    /// Variables referenced anywhere in the tree.
    pub fn vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<Var>) {
        match self {
            Expr::Const(_) => {}
            Expr::Var(v) => {
                out.insert(*v);
            }
            Expr::Node(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    /// Replace variables by expressions; variables mapped to `None` stay.
    pub fn substitute(&self, f: &impl Fn(Var) -> Option<Expr>) -> Expr {
        match self {
            Expr::Const(_) => self.clone(),
            Expr::Var(v) => f(*v).unwrap_or_else(|| self.clone()),
            Expr::Node(op, args) => Expr::Node(*op, args.iter().map(|a| a.substitute(f)).collect()),
        }
    }

    /// Evaluate with the given variable binding. Division by a value of
    /// modulus below [`TOL_DIVISION`], and `sqrt`/`log` at zero or on the
    /// negative real axis, are reported as singular.
    pub fn eval<T: HoloScalar>(&self, bind: &impl Fn(Var) -> Option<T>) -> Result<T> {
        match self {
            Expr::Const(c) => Ok(T::constant(*c)),
            Expr::Var(v) => bind(*v).ok_or_else(|| Error::InvalidProgram(format!("unbound variable `{v}`"))),
            Expr::Node(op, args) => {
                let vals = args.iter().map(|a| a.eval(bind)).collect::<Result<Vec<T>>>()?;
                let x = vals[0];
                let out = match op {
                    Op::Add => vals[1..].iter().fold(x, |acc, &y| acc + y),
                    Op::Mul => vals[1..].iter().fold(x, |acc, &y| acc * y),
                    Op::Sub => x - vals[1],
                    Op::Div => {
                        if vals[1].value().norm() < TOL_DIVISION {
                            return Err(singular(self, "division by zero"));
                        }
                        x / vals[1]
                    }
                    Op::Neg => -x,
                    Op::Powi(n) => {
                        if *n < 0 && x.value().norm() < TOL_DIVISION {
                            return Err(singular(self, "negative power of zero"));
                        }
                        x.powi(*n)
                    }
                    Op::Exp => x.exp(),
                    Op::Log | Op::Sqrt => {
                        let z = x.value();
                        if z.norm() < TOL_DIVISION {
                            return Err(singular(self, "branch point at zero"));
                        }
                        if near_branch_cut(z) {
                            return Err(singular(self, "argument on principal branch cut"));
                        }
                        if *op == Op::Log {
                            x.ln()
                        } else {
                            x.sqrt()
                        }
                    }
                    Op::Sin => x.sin(),
                    Op::Cos => x.cos(),
                    Op::Sinh => x.sinh(),
                    Op::Cosh => x.cosh(),
                };
                Ok(out)
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(c) if c.im == 0.0 => write!(f, "{}", c.re),
            Expr::Const(c) if c.re == 0.0 => write!(f, "{}i", c.im),
            Expr::Const(c) => write!(f, "({}{:+}i)", c.re, c.im),
            Expr::Var(v) => write!(f, "{v}"),
            Expr::Node(op, args) => {
                let join = |f: &mut fmt::Formatter<'_>, sep: &str| -> fmt::Result {
                    write!(f, "(")?;
                    for (k, a) in args.iter().enumerate() {
                        if k > 0 {
                            write!(f, "{sep}")?;
                        }
                        write!(f, "{a}")?;
                    }
                    write!(f, ")")
                };
                match op {
                    Op::Add => join(f, " + "),
                    Op::Sub => join(f, " - "),
                    Op::Mul => join(f, "*"),
                    Op::Div => join(f, "/"),
                    Op::Neg => write!(f, "-{}", args[0]),
                    Op::Powi(n) => write!(f, "{}^{n}", args[0]),
                    _ => write!(f, "{}({})", op.name(), args[0]),
                }
            }
        }
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:expr) => {
        impl $trait for Expr {
            type Output = Expr;
            fn $method(self, rhs: Expr) -> Expr {
                Expr::Node($op, vec![self, rhs])
            }
        }
        impl $trait<f64> for Expr {
            type Output = Expr;
            fn $method(self, rhs: f64) -> Expr {
                Expr::Node($op, vec![self, Expr::real(rhs)])
            }
        }
        impl $trait<Complex64> for Expr {
            type Output = Expr;
            fn $method(self, rhs: Complex64) -> Expr {
                Expr::Node($op, vec![self, Expr::Const(rhs)])
            }
        }
        impl $trait<Expr> for f64 {
            type Output = Expr;
            fn $method(self, rhs: Expr) -> Expr {
                Expr::Node($op, vec![Expr::real(self), rhs])
            }
        }
        impl $trait<Expr> for Complex64 {
            type Output = Expr;
            fn $method(self, rhs: Expr) -> Expr {
                Expr::Node($op, vec![Expr::Const(self), rhs])
            }
        }
    };
}

binop!(Add, add, Op::Add);
binop!(Sub, sub, Op::Sub);
binop!(Mul, mul, Op::Mul);
binop!(Div, div, Op::Div);

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::Node(Op::Neg, vec![self])
    }
}

/// A holomorphic map `C^2 -> C^n` in the parameters `u`, `v`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawProgram", into = "RawProgram")]
pub struct ChartProgram {
    outputs: Vec<Expr>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProgram {
    outputs: Vec<Expr>,
}

impl TryFrom<RawProgram> for ChartProgram {
    type Error = Error;
    fn try_from(raw: RawProgram) -> Result<Self> {
        ChartProgram::new(raw.outputs)
    }
}

impl From<ChartProgram> for RawProgram {
    fn from(p: ChartProgram) -> Self {
        RawProgram { outputs: p.outputs }
    }
}

impl ChartProgram {
    pub fn new(outputs: Vec<Expr>) -> Result<Self> {
        if outputs.is_empty() {
            return Err(Error::InvalidProgram("chart needs at least one output".into()));
        }
        for e in &outputs {
            if let Some(v) = e.vars().into_iter().find(|v| matches!(v, Var::Z(_))) {
                return Err(Error::InvalidProgram(format!("chart programs may only use u and v, found `{v}`")));
            }
        }
        Ok(ChartProgram { outputs })
    }

    pub fn outputs(&self) -> &[Expr] {
        &self.outputs
    }

    pub fn dim(&self) -> usize {
        self.outputs.len()
    }

    pub fn eval(&self, u: Complex64, v: Complex64) -> Result<CVec> {
        let bind = |var: Var| match var {
            Var::U => Some(u),
            Var::V => Some(v),
            Var::Z(_) => None,
        };
        let vals = self.outputs.iter().map(|e| e.eval(&bind)).collect::<Result<Vec<_>>>()?;
        finite(vals)
    }

    /// Third-order jets of every output at `(u0, v0)`.
    pub fn jets(&self, u0: Complex64, v0: Complex64) -> Result<Vec<Jet2>> {
        let (ju, jv) = (Jet2::var_u(u0), Jet2::var_v(v0));
        let bind = |var: Var| match var {
            Var::U => Some(ju),
            Var::V => Some(jv),
            Var::Z(_) => None,
        };
        let jets = self.outputs.iter().map(|e| e.eval(&bind)).collect::<Result<Vec<_>>>()?;
        if jets.iter().any(|j| !j.is_finite()) {
            return Err(Error::SingularEvaluation {
                node: "chart".into(),
                reason: "non-finite Taylor coefficient".into(),
            });
        }
        Ok(jets)
    }

    /// Rewrite every output by substituting for the parameters.
    pub fn substitute_params(&self, u: &Expr, v: &Expr) -> ChartProgram {
        let f = |var: Var| match var {
            Var::U => Some(u.clone()),
            Var::V => Some(v.clone()),
            Var::Z(_) => None,
        };
        ChartProgram { outputs: self.outputs.iter().map(|e| e.substitute(&f)).collect() }
    }

    pub fn map_outputs(&self, f: impl Fn(usize, &[Expr]) -> Expr) -> ChartProgram {
        ChartProgram { outputs: (0..self.outputs.len()).map(|k| f(k, &self.outputs)).collect() }
    }
}

fn finite(vals: Vec<Complex64>) -> Result<CVec> {
    if vals.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::SingularEvaluation { node: "chart".into(), reason: "non-finite value".into() });
    }
    CVec::new(vals)
}

/// Jets of all outputs of `program` at `(u0, v0)`.
pub fn jet_eval(program: &ChartProgram, u0: Complex64, v0: Complex64) -> Result<Vec<Jet2>> {
    program.jets(u0, v0)
}

/// `d^(p+q) f / du^p dv^q` from a jet.
pub fn partial(jet: &Jet2, p: usize, q: usize) -> Result<Complex64> {
    jet.partial(p, q)
}

/// A scalar holomorphic function of ambient coordinates `z1..zn`, used for
/// implicit surface equations `F(z) = 0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ScalarField(pub Expr);

impl ScalarField {
    pub fn new(expr: Expr) -> Result<Self> {
        if let Some(v) = expr.vars().into_iter().find(|v| !matches!(v, Var::Z(_))) {
            return Err(Error::InvalidProgram(format!("implicit equations may only use z1..zn, found `{v}`")));
        }
        Ok(ScalarField(expr))
    }

    /// Highest coordinate index referenced.
    pub fn max_coord(&self) -> usize {
        self.0
            .vars()
            .into_iter()
            .filter_map(|v| if let Var::Z(k) = v { Some(k) } else { None })
            .max()
            .unwrap_or(0)
    }

    pub fn eval(&self, z: &[Complex64]) -> Result<Complex64> {
        if self.max_coord() > z.len() {
            return Err(Error::DimensionMismatch { expected: self.max_coord(), found: z.len() });
        }
        self.0.eval(&|var| match var {
            Var::Z(k) => Some(z[k - 1]),
            _ => None,
        })
    }

    /// Holomorphic gradient `(dF/dz_1, ..., dF/dz_n)`; it is the `g0`-normal
    /// of the level set since `dF(X) = g0(grad F, X)`.
    pub fn gradient(&self, z: &[Complex64]) -> Result<CVec> {
        if self.max_coord() > z.len() {
            return Err(Error::DimensionMismatch { expected: self.max_coord(), found: z.len() });
        }
        let grad = (0..z.len())
            .map(|k| {
                let j = self.0.eval(&|var| match var {
                    Var::Z(m) if m - 1 == k => Some(Jet2::var_u(z[k])),
                    Var::Z(m) => Some(Jet2::constant(z[m - 1])),
                    _ => None,
                })?;
                j.partial(1, 0)
            })
            .collect::<Result<Vec<_>>>()?;
        CVec::new(grad)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::I;

    #[test]
    fn json_round_trip_and_format() {
        let e = Expr::u().cos() * Expr::v().cosh() + Expr::c(0.0, 1.0) * Expr::v().powi(3);
        let text = serde_json::to_string(&e).unwrap();
        assert!(text.contains(r#"{"op":"powi","n":3,"args":[{"var":"v"}]}"#));
        assert!(text.contains(r#"{"const":[0.0,1.0]}"#));
        let back: Expr = serde_json::from_str(&text).unwrap();
        assert_eq!(back, e);
    }

    #[test]
    fn rejects_non_holomorphic_ops() {
        let err = serde_json::from_str::<Expr>(r#"{"op":"conj","args":[{"var":"u"}]}"#).unwrap_err();
        assert!(err.to_string().contains("not holomorphic"));
        assert!(serde_json::from_str::<Expr>(r#"{"op":"sub","args":[{"var":"u"}]}"#).is_err());
        assert!(serde_json::from_str::<Expr>(r#"{"var":"w"}"#).is_err());
        assert!(serde_json::from_str::<ChartProgram>(r#"{"outputs":[{"var":"z1"}]}"#).is_err());
    }

    #[test]
    fn singular_division_reports_node() {
        let p = ChartProgram::new(vec![Expr::real(1.0) / Expr::u()]).unwrap();
        match p.jets(c64(0.0, 0.0), c64(1.0, 0.0)) {
            Err(Error::SingularEvaluation { node, .. }) => assert_eq!(node, "(1/u)"),
            other => panic!("{other:?}"),
        }
        let q = ChartProgram::new(vec![Expr::u().sqrt()]).unwrap();
        assert!(matches!(q.eval(c64(-1.0, 0.0), c64(0.0, 0.0)), Err(Error::SingularEvaluation { .. })));
        assert!(q.eval(c64(-1.0, 0.5), c64(0.0, 0.0)).is_ok());
    }

    #[test]
    fn gradient_of_sphere_equation() {
        let f = ScalarField::new(
            Expr::z(1).powi(2) + Expr::z(2).powi(2) + Expr::z(3).powi(2) - 1.0,
        )
        .unwrap();
        let z = [c64(0.5, 0.1), I, c64(2.0, 0.0)];
        let g = f.gradient(&z).unwrap();
        for k in 0..3 {
            assert!((g[k] - 2.0 * z[k]).norm() < 1e-14);
        }
        assert!(matches!(f.eval(&z[..2]), Err(Error::DimensionMismatch { .. })));
    }
}
