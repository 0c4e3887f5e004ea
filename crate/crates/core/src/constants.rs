//! Named constants: π, logarithms of algebraic units, ζ(3), Catalan-type
//! Dirichlet L-values (through the Hurwitz zeta function) and the weight-3
//! constant 𝒢 = ℑ Li₃((1+i)/2).

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Mutex;

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Complex, Float, Integer, Rational};

use crate::bernoulli;
use crate::error::{Error, Result};
use crate::polylog::{self, CutSide};
use crate::precision::{ApComplex, PrecisionCtx, log10_abs};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NamedConstant {
    Pi,
    CatalanG,
    Zeta3,
    Beta4,
    L823,
    L844,
    L324,
    L1243,
    MathcalG,
    /// λ = log 2
    Lam,
    /// Λ = log 3
    LamUpper,
    /// £ = log φ
    Pound,
    /// ℒ = log 5
    ScriptL,
    /// λ̃ = log(1+√2)
    LamTilde,
    /// Λ̃ = log(2+√3)
    LamUpperTilde,
    Phi,
}

impl NamedConstant {
    pub const ALL: [NamedConstant; 16] = [
        NamedConstant::Pi,
        NamedConstant::CatalanG,
        NamedConstant::Zeta3,
        NamedConstant::Beta4,
        NamedConstant::L823,
        NamedConstant::L844,
        NamedConstant::L324,
        NamedConstant::L1243,
        NamedConstant::MathcalG,
        NamedConstant::Lam,
        NamedConstant::LamUpper,
        NamedConstant::Pound,
        NamedConstant::ScriptL,
        NamedConstant::LamTilde,
        NamedConstant::LamUpperTilde,
        NamedConstant::Phi,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NamedConstant::Pi => "pi",
            NamedConstant::CatalanG => "catalan_G",
            NamedConstant::Zeta3 => "zeta3",
            NamedConstant::Beta4 => "beta4",
            NamedConstant::L823 => "L_8_2_3",
            NamedConstant::L844 => "L_8_4_4",
            NamedConstant::L324 => "L_3_2_4",
            NamedConstant::L1243 => "L_12_4_3",
            NamedConstant::MathcalG => "mathcal_G",
            NamedConstant::Lam => "lam",
            NamedConstant::LamUpper => "Lam",
            NamedConstant::Pound => "pound",
            NamedConstant::ScriptL => "scriptL",
            NamedConstant::LamTilde => "lam_tilde",
            NamedConstant::LamUpperTilde => "Lam_tilde",
            NamedConstant::Phi => "phi",
        }
    }

    /// Compact symbol used when printing expressions.
    pub fn symbol(self) -> &'static str {
        match self {
            NamedConstant::Pi => "π",
            NamedConstant::CatalanG => "G",
            NamedConstant::Zeta3 => "ζ(3)",
            NamedConstant::Beta4 => "β(4)",
            NamedConstant::L823 => "L₈,₂(3)",
            NamedConstant::L844 => "L₈,₄(4)",
            NamedConstant::L324 => "L₃,₂(4)",
            NamedConstant::L1243 => "L₁₂,₄(3)",
            NamedConstant::MathcalG => "𝒢",
            NamedConstant::Lam => "λ",
            NamedConstant::LamUpper => "Λ",
            NamedConstant::Pound => "£",
            NamedConstant::ScriptL => "ℒ",
            NamedConstant::LamTilde => "λ̃",
            NamedConstant::LamUpperTilde => "Λ̃",
            NamedConstant::Phi => "φ",
        }
    }
}

impl fmt::Display for NamedConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NamedConstant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        NamedConstant::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown constant `{s}`")))
    }
}

/// Euler–Maclaurin evaluation of ζ(s, a) = Σ_{n≥0} (n+a)^{-s}.
pub fn hurwitz_zeta(s: u32, a: &Rational, ctx: &PrecisionCtx) -> Result<ApComplex> {
    let v = hurwitz_float(s, a, ctx)?;
    ApComplex::new(
        Complex::with_val(ctx.bits(), (v, 0)),
        ctx.digits(),
        "hurwitz_zeta",
    )
}

pub(crate) fn hurwitz_float(s: u32, a: &Rational, ctx: &PrecisionCtx) -> Result<Float> {
    if s < 2 {
        return Err(Error::Domain(format!("hurwitz_zeta needs s >= 2, got {s}")));
    }
    if *a <= 0 || *a > 1 {
        return Err(Error::Domain(format!(
            "hurwitz_zeta needs 0 < a <= 1, got {a}"
        )));
    }
    let bits = ctx.bits();
    let cutoff = ctx.working_digits().max(10) as u64;
    let (p, q) = (a.numer().clone(), a.denom().clone());
    let si = s as i32;

    // direct part: q^s Σ_{n<M} (nq + p)^{-s}
    let mut head = Float::new(bits);
    for n in 0..cutoff {
        let d = Integer::from(&q * n) + &p;
        head += Float::with_val(bits, d).pow(-si);
    }
    head *= Float::with_val(bits, q.clone().pow(s));

    let x = Float::with_val(bits, Rational::from(a + cutoff));
    let x_pow = Float::with_val(bits, x.clone().pow(-si)); // x^-s
    let mut sum = head;
    sum += Float::with_val(bits, &x_pow * &x) / (s - 1); // x^{1-s}/(s-1)
    sum += Float::with_val(bits, &x_pow / 2u32);

    let eps_log = ctx.work_log10_eps() - 2.0;
    let inv_x2 = Float::with_val(bits, x.clone().pow(-2i32));
    // poch = s(s+1)...(s+2j-2); xp = x^{-s-2j+1}; fact = (2j)!
    let mut poch = Float::with_val(bits, s);
    let mut xp = Float::with_val(bits, &x_pow / &x);
    let mut fact = Float::with_val(bits, 2);
    let j_cap = (2.0 * std::f64::consts::PI * x.to_f64()) as usize + 4;
    bernoulli::ensure(2 * j_cap + 2);
    for j in 1..=j_cap {
        let b = bernoulli::bernoulli_float(2 * j, bits);
        let term = Float::with_val(bits, &b * &poch) * &xp / &fact;
        sum += &term;
        if log10_abs(&term) < eps_log + log10_abs(&sum).max(0.0) {
            return Ok(sum);
        }
        let jj = j as u32;
        poch *= (s + 2 * jj - 1) * (s + 2 * jj);
        xp *= &inv_x2;
        fact *= (2 * jj + 1) * (2 * jj + 2);
    }
    Err(Error::unreachable(
        "hurwitz_zeta Euler–Maclaurin tail",
        ctx.digits(),
    ))
}

/// ζ(s) for integer s ≥ 2, cached per precision.
pub(crate) fn zeta_int(s: u32, ctx: &PrecisionCtx) -> Result<Float> {
    static CACHE: Mutex<Vec<((u32, u32), Float)>> = Mutex::new(Vec::new());
    let key = (s, ctx.bits());
    if let Some((_, v)) = CACHE.lock().unwrap().iter().find(|(k, _)| *k == key) {
        return Ok(v.clone());
    }
    let v = hurwitz_float(s, &Rational::from(1), ctx)?;
    CACHE.lock().unwrap().push((key, v.clone()));
    Ok(v)
}

type ConstCache = Mutex<Option<HashMap<(NamedConstant, u32), Complex>>>;
static NAMED_CACHE: ConstCache = Mutex::new(None);

/// Value of a named constant at `ctx` precision.
pub fn named_constant(name: NamedConstant, ctx: &PrecisionCtx) -> Result<ApComplex> {
    let v = named_value(name, ctx)?;
    ApComplex::new(v, ctx.digits(), name.name())
}

pub(crate) fn named_value(name: NamedConstant, ctx: &PrecisionCtx) -> Result<Complex> {
    let key = (name, ctx.bits());
    if let Some(v) = NAMED_CACHE
        .lock()
        .unwrap()
        .as_ref()
        .and_then(|m| m.get(&key))
    {
        return Ok(v.clone());
    }
    let v = compute_named(name, ctx)?;
    NAMED_CACHE
        .lock()
        .unwrap()
        .get_or_insert_with(HashMap::new)
        .insert(key, v.clone());
    Ok(v)
}

fn real(bits: u32, x: Float) -> Complex {
    Complex::with_val(bits, (x, 0))
}

/// `den^{-s} Σ_r sign_r · ζ(s, r/den)` over the residues of a periodic pattern.
fn periodic_sum(s: u32, den: u32, pattern: &[(u32, i32)], ctx: &PrecisionCtx) -> Result<Float> {
    let bits = ctx.bits();
    let mut acc = Float::new(bits);
    for &(r, sign) in pattern {
        let z = hurwitz_float(s, &Rational::from((r, den)), ctx)?;
        if sign > 0 {
            acc += z;
        } else {
            acc -= z;
        }
    }
    Ok(acc / Float::with_val(bits, den).pow(s))
}

fn compute_named(name: NamedConstant, ctx: &PrecisionCtx) -> Result<Complex> {
    let bits = ctx.bits();
    let f = |v: f64| Float::with_val(bits, v);
    let sqrt = |n: u32| Float::with_val(bits, n).sqrt();
    let value = match name {
        NamedConstant::Pi => Float::with_val(bits, Constant::Pi),
        NamedConstant::CatalanG => periodic_sum(2, 4, &[(1, 1), (3, -1)], ctx)?,
        NamedConstant::Zeta3 => zeta_int(3, ctx)?,
        NamedConstant::Beta4 => periodic_sum(4, 4, &[(1, 1), (3, -1)], ctx)?,
        NamedConstant::L823 => periodic_sum(3, 8, &[(1, 1), (3, -1), (5, -1), (7, 1)], ctx)?,
        NamedConstant::L844 => periodic_sum(4, 8, &[(1, 1), (3, 1), (5, -1), (7, -1)], ctx)?,
        NamedConstant::L324 => periodic_sum(4, 3, &[(1, 1), (2, -1)], ctx)?,
        NamedConstant::L1243 => periodic_sum(3, 12, &[(1, 1), (5, -1), (7, -1), (11, 1)], ctx)?,
        NamedConstant::MathcalG => {
            let z = Complex::with_val(bits, (0.5, 0.5));
            let li3 = polylog::li_value(3, &z, CutSide::Auto, ctx)?;
            li3.imag().clone()
        }
        NamedConstant::Lam => f(2.0).ln(),
        NamedConstant::LamUpper => f(3.0).ln(),
        NamedConstant::Pound => ((sqrt(5) + 1u32) / 2u32).ln(),
        NamedConstant::ScriptL => f(5.0).ln(),
        NamedConstant::LamTilde => (sqrt(2) + 1u32).ln(),
        NamedConstant::LamUpperTilde => (sqrt(3) + 2u32).ln(),
        NamedConstant::Phi => (sqrt(5) + 1u32) / 2u32,
    };
    Ok(real(bits, value))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(d: u32) -> PrecisionCtx {
        PrecisionCtx::new(d).unwrap()
    }

    fn close(a: &Float, b: &Float, digits: i32) -> bool {
        let d = Float::with_val(a.prec(), a - b);
        log10_abs(&d) < -(digits as f64) + log10_abs(b).max(0.0)
    }

    #[test]
    fn zeta2_is_pi_squared_over_6() {
        let c = ctx(40);
        let z = hurwitz_float(2, &Rational::from(1), &c).unwrap();
        let pi = Float::with_val(c.bits(), Constant::Pi);
        let want = Float::with_val(c.bits(), &pi * &pi) / 6u32;
        assert!(close(&z, &want, 45));
    }

    #[test]
    fn zeta2_half_is_pi_squared_over_2() {
        let c = ctx(40);
        let z = hurwitz_float(2, &Rational::from((1, 2)), &c).unwrap();
        let pi = Float::with_val(c.bits(), Constant::Pi);
        let want = Float::with_val(c.bits(), &pi * &pi) / 2u32;
        assert!(close(&z, &want, 45));
    }

    #[test]
    fn matches_mpfr_zeta() {
        let c = ctx(50);
        for s in 2..=6u32 {
            let z = hurwitz_float(s, &Rational::from(1), &c).unwrap();
            let want = Float::with_val(c.bits(), s).zeta();
            assert!(close(&z, &want, 55), "s = {s}");
        }
    }

    #[test]
    fn catalan_matches_mpfr() {
        let c = ctx(40);
        let g = named_value(NamedConstant::CatalanG, &c).unwrap();
        let want = Float::with_val(c.bits(), Constant::Catalan);
        assert!(close(g.real(), &want, 45));
    }

    #[test]
    fn rejects_bad_arguments() {
        let c = ctx(20);
        assert!(hurwitz_float(1, &Rational::from(1), &c).is_err());
        assert!(hurwitz_float(2, &Rational::from(0), &c).is_err());
        assert!(hurwitz_float(2, &Rational::from((3, 2)), &c).is_err());
    }

    #[test]
    fn names_round_trip() {
        for c in NamedConstant::ALL {
            assert_eq!(c.name().parse::<NamedConstant>().unwrap(), c);
        }
        assert!("nope".parse::<NamedConstant>().is_err());
    }

    #[test]
    fn pound_value() {
        let c = ctx(20);
        let v = named_constant(NamedConstant::Pound, &c).unwrap();
        assert!(v.to_string_digits(10).starts_with("0.481211825"));
    }
}
