//! Expression trees for closed-form right-hand sides.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Complex, Float, Rational};

use crate::constants::{NamedConstant, named_value};
use crate::error::{Error, Result};
use crate::polylog::{CutSide, gpl::eval_word, li_value, mpl_to_gpl};
use crate::precision::{ApComplex, PrecisionCtx, is_finite};

#[derive(Clone, Debug, PartialEq)]
pub enum ConstantExpr {
    Rational(Rational),
    /// `√q` for positive rational `q`.
    Sqrt(Rational),
    ImagUnit,
    Named(NamedConstant),
    /// `e^{iπq}`.
    ExpIPi(Rational),
    Li {
        s: u32,
        point: Box<ConstantExpr>,
        side: CutSide,
    },
    Mpl {
        weights: Vec<u32>,
        args: Vec<ConstantExpr>,
    },
    Im(Box<ConstantExpr>),
    Re(Box<ConstantExpr>),
    Sum(Vec<ConstantExpr>),
    Product(Vec<ConstantExpr>),
    Pow(Box<ConstantExpr>, i32),
    Scale(Rational, Box<ConstantExpr>),
}

pub type Expr = ConstantExpr;

pub fn rat(n: i64, d: i64) -> Expr {
    Expr::Rational(Rational::from((n, d)))
}

pub fn int(n: i64) -> Expr {
    Expr::Rational(Rational::from(n))
}

pub fn sqrt(n: i64, d: i64) -> Expr {
    Expr::Sqrt(Rational::from((n, d)))
}

pub fn i() -> Expr {
    Expr::ImagUnit
}

pub fn named(c: NamedConstant) -> Expr {
    Expr::Named(c)
}

pub fn exp_i_pi(p: i64, q: i64) -> Expr {
    Expr::ExpIPi(Rational::from((p, q)))
}

pub fn li(s: u32, point: Expr) -> Expr {
    Expr::Li {
        s,
        point: Box::new(point),
        side: CutSide::Auto,
    }
}

pub fn mpl(weights: Vec<u32>, args: Vec<Expr>) -> Expr {
    Expr::Mpl { weights, args }
}

pub fn im(e: Expr) -> Expr {
    Expr::Im(Box::new(e))
}

pub fn re(e: Expr) -> Expr {
    Expr::Re(Box::new(e))
}

/// `(n/d) · e`.
pub fn sc(n: i64, d: i64, e: Expr) -> Expr {
    Expr::Scale(Rational::from((n, d)), Box::new(e))
}

impl ConstantExpr {
    pub fn pow(self, n: i32) -> Expr {
        Expr::Pow(Box::new(self), n)
    }

    /// Rational coefficients of the expression, in a fixed traversal order.
    /// Rationals inside polylogarithm arguments and radicands are structural
    /// and not listed.
    pub fn coefficients(&self) -> Vec<Rational> {
        let mut out = Vec::new();
        self.walk_coefficients(&mut |r| out.push(r.clone()));
        out
    }

    fn walk_coefficients(&self, f: &mut dyn FnMut(&Rational)) {
        match self {
            Expr::Rational(r) => f(r),
            Expr::Scale(r, e) => {
                f(r);
                e.walk_coefficients(f);
            }
            Expr::Im(e) | Expr::Re(e) | Expr::Pow(e, _) => e.walk_coefficients(f),
            Expr::Sum(v) | Expr::Product(v) => v.iter().for_each(|e| e.walk_coefficients(f)),
            _ => {}
        }
    }

    /// Copy with the `index`-th coefficient (see [`coefficients`](Self::coefficients)) replaced.
    pub fn with_coefficient(&self, index: usize, value: Rational) -> Option<Expr> {
        let mut counter = 0usize;
        let mut value = Some(value);
        let out = self.replace_coefficient(index, &mut counter, &mut value);
        value.is_none().then_some(out)
    }

    fn replace_coefficient(
        &self,
        index: usize,
        counter: &mut usize,
        value: &mut Option<Rational>,
    ) -> Expr {
        let mut take = |r: &Rational| {
            let hit = *counter == index;
            *counter += 1;
            if hit {
                value.take().unwrap_or_else(|| r.clone())
            } else {
                r.clone()
            }
        };
        match self {
            Expr::Rational(r) => Expr::Rational(take(r)),
            Expr::Scale(r, e) => {
                let r = take(r);
                Expr::Scale(r, Box::new(e.replace_coefficient(index, counter, value)))
            }
            Expr::Im(e) => Expr::Im(Box::new(e.replace_coefficient(index, counter, value))),
            Expr::Re(e) => Expr::Re(Box::new(e.replace_coefficient(index, counter, value))),
            Expr::Pow(e, n) => {
                Expr::Pow(Box::new(e.replace_coefficient(index, counter, value)), *n)
            }
            Expr::Sum(v) => Expr::Sum(
                v.iter()
                    .map(|e| e.replace_coefficient(index, counter, value))
                    .collect(),
            ),
            Expr::Product(v) => Expr::Product(
                v.iter()
                    .map(|e| e.replace_coefficient(index, counter, value))
                    .collect(),
            ),
            other => other.clone(),
        }
    }
}

impl Add for Expr {
    type Output = Expr;
    fn add(self, rhs: Expr) -> Expr {
        match self {
            Expr::Sum(mut v) => {
                v.push(rhs);
                Expr::Sum(v)
            }
            lhs => Expr::Sum(vec![lhs, rhs]),
        }
    }
}

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        match self {
            Expr::Rational(r) => Expr::Rational(-r),
            Expr::Scale(r, e) => Expr::Scale(-r, e),
            e => Expr::Scale(Rational::from(-1), Box::new(e)),
        }
    }
}

impl Sub for Expr {
    type Output = Expr;
    fn sub(self, rhs: Expr) -> Expr {
        self + (-rhs)
    }
}

impl Mul for Expr {
    type Output = Expr;
    fn mul(self, rhs: Expr) -> Expr {
        match (self, rhs) {
            (Expr::Rational(r), e) | (e, Expr::Rational(r)) => Expr::Scale(r, Box::new(e)),
            (Expr::Product(mut v), e) => {
                v.push(e);
                Expr::Product(v)
            }
            (a, b) => Expr::Product(vec![a, b]),
        }
    }
}

impl fmt::Display for ConstantExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Rational(r) => write!(f, "{r}"),
            Expr::Sqrt(r) => write!(f, "√({r})"),
            Expr::ImagUnit => f.write_str("i"),
            Expr::Named(c) => f.write_str(c.symbol()),
            Expr::ExpIPi(q) => write!(f, "e^(iπ·{q})"),
            Expr::Li { s, point, side } => match side {
                CutSide::Auto => write!(f, "Li{s}({point})"),
                CutSide::Upper => write!(f, "Li{s}({point}+i0)"),
                CutSide::Lower => write!(f, "Li{s}({point}-i0)"),
            },
            Expr::Mpl { weights, args } => {
                let w: Vec<String> = weights.iter().map(u32::to_string).collect();
                let a: Vec<String> = args.iter().map(Expr::to_string).collect();
                write!(f, "Li_{{{}}}({})", w.join(","), a.join(", "))
            }
            Expr::Im(e) => write!(f, "Im[{e}]"),
            Expr::Re(e) => write!(f, "Re[{e}]"),
            Expr::Sum(v) => {
                f.write_str("(")?;
                for (k, e) in v.iter().enumerate() {
                    if k > 0 {
                        f.write_str(" + ")?;
                    }
                    write!(f, "{e}")?;
                }
                f.write_str(")")
            }
            Expr::Product(v) => {
                let parts: Vec<String> = v.iter().map(Expr::to_string).collect();
                f.write_str(&parts.join("·"))
            }
            Expr::Pow(e, n) => write!(f, "({e})^{n}"),
            Expr::Scale(r, e) => write!(f, "{r}·{e}"),
        }
    }
}

/// Evaluates `e` at the precision of `ctx`.
pub fn eval_expr(e: &Expr, ctx: &PrecisionCtx) -> Result<ApComplex> {
    let v = eval_value(e, ctx)?;
    ApComplex::new(v, ctx.digits(), "eval_expr")
}

pub(crate) fn eval_value(e: &Expr, ctx: &PrecisionCtx) -> Result<Complex> {
    let bits = ctx.bits();
    let real = |x: Float| Complex::with_val(bits, (x, 0));
    let v = match e {
        Expr::Rational(r) => real(Float::with_val(bits, r)),
        Expr::Sqrt(r) => {
            if *r < 0 {
                return Err(Error::Domain(format!(
                    "square root of negative rational {r}"
                )));
            }
            real(Float::with_val(bits, r).sqrt())
        }
        Expr::ImagUnit => Complex::with_val(bits, (0, 1)),
        Expr::Named(c) => named_value(*c, ctx)?,
        Expr::ExpIPi(q) => {
            let theta = Float::with_val(bits, Constant::Pi) * Float::with_val(bits, q);
            let (s, c) = theta.sin_cos(Float::new(bits));
            Complex::with_val(bits, (c, s))
        }
        Expr::Li { s, point, side } => {
            let z = eval_value(point, ctx)?;
            li_value(*s, &z, *side, ctx)?
        }
        Expr::Mpl { weights, args } => {
            let args = args
                .iter()
                .map(|a| eval_value(a, ctx))
                .collect::<Result<Vec<_>>>()?;
            let letters = mpl_to_gpl(weights, &args, &ctx.one())?;
            let g = eval_word(&letters, &ctx.one(), ctx, 0)?;
            if weights.len() % 2 == 1 { -g } else { g }
        }
        Expr::Im(e) => real(eval_value(e, ctx)?.imag().clone()),
        Expr::Re(e) => real(eval_value(e, ctx)?.real().clone()),
        Expr::Sum(v) => {
            let mut acc = ctx.zero();
            for e in v {
                acc += eval_value(e, ctx)?;
            }
            acc
        }
        Expr::Product(v) => {
            let mut acc = ctx.one();
            for e in v {
                acc *= eval_value(e, ctx)?;
            }
            acc
        }
        Expr::Pow(e, n) => {
            let b = eval_value(e, ctx)?;
            if *n < 0 && b.real().is_zero() && b.imag().is_zero() {
                return Err(Error::DivisionByZero);
            }
            Complex::with_val(bits, b.pow(*n))
        }
        Expr::Scale(r, e) => eval_value(e, ctx)? * Float::with_val(bits, r),
    };
    if !is_finite(&v) {
        return Err(Error::NonFinite(format!("{e}")));
    }
    Ok(v)
}
