//! Classical, multiple and generalized polylogarithms.

pub(crate) mod gpl;
mod mpl;

pub use gpl::{GplWord, MplImage, gpl_eval, gpl_to_mpl, mpl_to_gpl};
pub use mpl::{MplSpec, mpl_direct};

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Complex, Float, Integer};

use crate::bernoulli;
use crate::constants::zeta_int;
use crate::error::{Error, Result};
use crate::precision::{ApComplex, PrecisionCtx, is_finite, log10_abs_c};

/// Which limit to take for real arguments on the cut `(1, ∞)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum CutSide {
    /// Same as `Upper`.
    #[default]
    Auto,
    Upper,
    Lower,
}

impl CutSide {
    fn upper(self) -> bool {
        !matches!(self, CutSide::Lower)
    }
}

pub const MAX_LI_WEIGHT: u32 = 12;

/// `Li_s(z)` on the principal branch, cut along `[1, ∞)`.
pub fn li(s: u32, z: &Complex, side: CutSide, ctx: &PrecisionCtx) -> Result<ApComplex> {
    let v = li_value(s, z, side, ctx)?;
    ApComplex::new(v, ctx.digits(), "li")
}

pub(crate) fn li_value(s: u32, z: &Complex, side: CutSide, ctx: &PrecisionCtx) -> Result<Complex> {
    if s == 0 || s > MAX_LI_WEIGHT {
        return Err(Error::Domain(format!(
            "li weight must be in 1..={MAX_LI_WEIGHT}, got {s}"
        )));
    }
    if !is_finite(z) {
        return Err(Error::NonFinite("li argument".into()));
    }
    let bits = ctx.bits();
    let z = Complex::with_val(bits, z);
    if z.real().is_zero() && z.imag().is_zero() {
        return Ok(ctx.zero());
    }
    let on_cut = z.imag().is_zero() && *z.real() > 1;
    if s == 1 {
        return li1(&z, on_cut, side, ctx);
    }
    if z.imag().is_zero() && *z.real() == 1 {
        return Ok(Complex::with_val(bits, (zeta_int(s, ctx)?, 0)));
    }
    let lg = log10_abs_c(&z);
    if on_cut || lg > 0.0 {
        return inversion(s, &z, on_cut, side, ctx);
    }
    if lg <= -std::f64::consts::LOG10_2 {
        Ok(power_series(s, &z, ctx))
    } else {
        log_series(s, &z, ctx)
    }
}

fn li1(z: &Complex, on_cut: bool, side: CutSide, ctx: &PrecisionCtx) -> Result<Complex> {
    let bits = ctx.bits();
    if z.imag().is_zero() && *z.real() == 1 {
        return Err(Error::Pole("Li_1 at z = 1".into()));
    }
    if on_cut {
        // -log(1 - ξ ∓ i0) = -log(ξ - 1) ± iπ
        let re = -Float::with_val(bits, z.real() - 1u32).ln();
        let mut im = Float::with_val(bits, Constant::Pi);
        if !side.upper() {
            im = -im;
        }
        return Ok(Complex::with_val(bits, (re, im)));
    }
    let one_minus = Complex::with_val(bits, 1 - z);
    Ok(-one_minus.ln())
}

/// Σ z^n / n^s for |z| ≤ 1/2.
fn power_series(s: u32, z: &Complex, ctx: &PrecisionCtx) -> Complex {
    let bits = ctx.bits();
    let r = 10f64.powf(log10_abs_c(z)).min(0.5);
    // r^{N+1}/(1-r) < eps
    let n_max = ((ctx.working_digits() as f64 + 2.0) / -r.log10()).ceil() as u32 + 2;
    let mut sum = ctx.zero();
    let mut pw = Complex::with_val(bits, z);
    for n in 1..=n_max {
        let d = Float::with_val(bits, n).pow(s);
        sum += Complex::with_val(bits, &pw / &d);
        pw *= z;
    }
    sum
}

/// Expansion in μ = log z, valid for |μ| < 2π:
/// `Li_s(e^μ) = Σ_{k≠s-1} ζ(s-k) μ^k/k! + μ^{s-1}/(s-1)! (H_{s-1} - log(-μ))`.
fn log_series(s: u32, z: &Complex, ctx: &PrecisionCtx) -> Result<Complex> {
    let bits = ctx.bits();
    let mu = Complex::with_val(bits, z.ln_ref());
    let two_pi = 2.0 * std::f64::consts::PI;
    let ratio = 10f64.powf(log10_abs_c(&mu)) / two_pi;
    if ratio >= 0.75 {
        return Err(Error::Domain("log-series argument outside its disk".into()));
    }
    let k_max =
        ((ctx.working_digits() as f64 + 4.0) / -ratio.log10()).ceil() as usize + s as usize + 4;
    bernoulli::ensure(k_max + 2);
    let s_us = s as usize;
    let mut sum = ctx.zero();
    let mut mu_pow = ctx.one(); // μ^k / k!
    for k in 0..=k_max {
        if k == s_us - 1 {
            let mut h = Float::new(bits);
            for j in 1..s {
                h += Float::with_val(bits, 1) / j;
            }
            let neg_mu = Complex::with_val(bits, -&mu);
            let bracket = Complex::with_val(bits, (h, 0)) - neg_mu.ln();
            sum += Complex::with_val(bits, &mu_pow * &bracket);
        } else {
            let zeta = zeta_at(s as i64 - k as i64, ctx)?;
            if !zeta.is_zero() {
                sum += Complex::with_val(bits, &mu_pow * &zeta);
            }
        }
        mu_pow *= &mu;
        mu_pow /= (k + 1) as u32;
    }
    Ok(sum)
}

/// ζ(n) for any integer n ≠ 1.
fn zeta_at(n: i64, ctx: &PrecisionCtx) -> Result<Float> {
    let bits = ctx.bits();
    if n >= 2 {
        return zeta_int(n as u32, ctx);
    }
    if n == 0 {
        return Ok(Float::with_val(bits, -0.5));
    }
    // ζ(-m) = -B_{m+1}/(m+1)
    let m = (-n) as usize;
    let b = bernoulli::bernoulli(m + 1);
    Ok(-Float::with_val(bits, b) / (m as u32 + 1))
}

/// `Li_s(z) = -(-1)^s Li_s(1/z) - (2πi)^s/s! · B_s(1/2 + log(-z)/(2πi))`.
fn inversion(
    s: u32,
    z: &Complex,
    on_cut: bool,
    side: CutSide,
    ctx: &PrecisionCtx,
) -> Result<Complex> {
    let bits = ctx.bits();
    let inv = Complex::with_val(bits, z.recip_ref());
    let inner = li_value(s, &inv, CutSide::Auto, ctx)?;
    let pi = Float::with_val(bits, Constant::Pi);
    let log_neg = if on_cut {
        // -(ξ ± i0) = -ξ ∓ i0
        let re = Float::with_val(bits, z.real().ln_ref());
        let im = if side.upper() {
            -pi.clone()
        } else {
            pi.clone()
        };
        Complex::with_val(bits, (re, im))
    } else {
        Complex::with_val(bits, -z).ln()
    };
    let two_pi_i = Complex::with_val(bits, (0, Float::with_val(bits, &pi * 2u32)));
    let x = Complex::with_val(bits, &log_neg / &two_pi_i) + Float::with_val(bits, 0.5);
    let bpoly = bernoulli_poly(s, &x, bits);
    let mut fact = Integer::from(1);
    for j in 2..=s {
        fact *= j;
    }
    let pref = Complex::with_val(bits, two_pi_i.pow(s)) / Float::with_val(bits, &fact);
    let mut out = -Complex::with_val(bits, &pref * &bpoly);
    if s.is_multiple_of(2) {
        out -= inner;
    } else {
        out += inner;
    }
    Ok(out)
}

fn bernoulli_poly(n: u32, x: &Complex, bits: u32) -> Complex {
    // Horner in x with coefficients C(n,j) B_{n-j}
    let mut acc = Complex::new(bits);
    for j in (0..=n).rev() {
        let c = Integer::from(Integer::binomial_u(n, j)) * bernoulli::bernoulli((n - j) as usize);
        acc *= x;
        acc += Float::with_val(bits, c);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precision::log10_abs;

    fn ctx() -> PrecisionCtx {
        PrecisionCtx::new(40).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex {
        Complex::with_val(ctx().bits(), (re, im))
    }

    fn agree(a: &Complex, b: &Complex) -> f64 {
        let d = Complex::with_val(a.prec().0, a - b);
        -log10_abs_c(&d)
    }

    #[test]
    fn li1_half_is_log2() {
        let v = li_value(1, &c(0.5, 0.0), CutSide::Auto, &ctx()).unwrap();
        let ln2 = Float::with_val(ctx().bits(), Constant::Log2);
        assert!(-log10_abs(&Float::with_val(ctx().bits(), v.real() - &ln2)) > 45.0);
    }

    #[test]
    fn li2_at_one_is_zeta2() {
        let v = li_value(2, &c(1.0, 0.0), CutSide::Auto, &ctx()).unwrap();
        let pi = Float::with_val(ctx().bits(), Constant::Pi);
        let want = Complex::with_val(ctx().bits(), (pi.square() / 6u32, 0));
        assert!(agree(&v, &want) > 45.0);
    }

    #[test]
    fn pole_at_one() {
        assert!(matches!(
            li_value(1, &c(1.0, 0.0), CutSide::Auto, &ctx()),
            Err(Error::Pole(_))
        ));
    }

    #[test]
    fn branches_agree_across_region_boundary() {
        // the same point reached through the power series and the log series
        for (re, im) in [(0.49, 0.0), (0.3, 0.39), (-0.4, 0.29)] {
            let z = c(re, im);
            let a = power_series(3, &z, &ctx());
            let b = log_series(3, &z, &ctx()).unwrap();
            assert!(agree(&a, &b) > 45.0, "{re} {im}");
        }
    }

    #[test]
    fn li2_two_upper() {
        let bits = ctx().bits();
        let v = li_value(2, &c(2.0, 0.0), CutSide::Upper, &ctx()).unwrap();
        let pi = Float::with_val(bits, Constant::Pi);
        let ln2 = Float::with_val(bits, Constant::Log2);
        let want = Complex::with_val(
            bits,
            (Float::with_val(bits, pi.square_ref()) / 4u32, pi * ln2),
        );
        assert!(agree(&v, &want) > 45.0);
    }

    #[test]
    fn inversion_is_continuous_off_axis() {
        // just inside and just outside the unit circle
        let a = li_value(4, &c(0.0, 0.999_999), CutSide::Auto, &ctx()).unwrap();
        let b = li_value(4, &c(0.0, 1.000_001), CutSide::Auto, &ctx()).unwrap();
        assert!(agree(&a, &b) > 5.0);
    }
}
