//! Inverse binomial series `S_k(z) = Σ_{n≥0} z^n / ((2n+1)^k C(2n,n))`, the
//! classical closed forms for `k ∈ {0, 1}` and the two sides of the
//! dilogarithm/trilogarithm identity parametrised by `w`.

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Complex, Float};

use crate::error::{Error, Result};
use crate::polylog::{CutSide, li_value};
use crate::precision::{ApComplex, PrecisionCtx, log10_abs_c};
use crate::quadrature::{Segment, genchen_contour, integrate_segment};

/// Largest `|z|` summed term by term.
pub const DIRECT_RADIUS: f64 = 3.5;

#[derive(Clone, Debug, PartialEq)]
pub struct SeriesSpec {
    pub k: u32,
    pub z: Complex,
}

impl SeriesSpec {
    pub fn new(k: u32, z: Complex) -> Self {
        Self { k, z }
    }
}

/// `S_k(z)` for `|z| ≤ 4` (`|z| < 4` when `k ≤ 1`).
///
/// Direct summation with a geometric tail bound up to `|z| = 3.5`; beyond
/// that, the beta-integral form `2 ∫_0^{1/2} F_{k-1}(z t(1-t)) dt` with
/// `F_j(y) = Σ y^n/(2n+1)^j`.
pub fn s_series(spec: &SeriesSpec, ctx: &PrecisionCtx) -> Result<ApComplex> {
    let v = s_value(spec.k, &spec.z, ctx)?;
    ApComplex::new(v, ctx.digits(), "s_series")
}

pub(crate) fn s_value(k: u32, z: &Complex, ctx: &PrecisionCtx) -> Result<Complex> {
    let lg = log10_abs_c(z);
    let modulus = 10f64.powf(lg);
    if modulus <= DIRECT_RADIUS {
        return Ok(direct_sum(k, z, ctx));
    }
    let four = Complex::with_val(ctx.bits(), z.abs_ref());
    let beyond = *four.real() > 4;
    if beyond || (*four.real() == 4 && k <= 1) {
        return Err(Error::Divergent(format!(
            "S_{k}(z) with |z| = {modulus:.6}"
        )));
    }
    if k <= 1 {
        return match k {
            1 => s1_value(z, ctx),
            _ => s0_value(z, ctx),
        };
    }
    beta_integral(k, z, ctx)
}

fn direct_sum(k: u32, z: &Complex, ctx: &PrecisionCtx) -> Complex {
    let bits = ctx.bits();
    let zabs = 10f64.powf(log10_abs_c(z));
    let target = ctx.work_log10_eps() - 2.0;
    let mut b = ctx.one(); // z^n / C(2n,n)
    let mut sum = ctx.one();
    let mut n: u64 = 0;
    loop {
        // b_{n+1} = b_n · z (n+1) / (2(2n+1))
        b *= z;
        b *= (n + 1) as u32;
        b /= (2 * (2 * n + 1)) as u32;
        n += 1;
        let odd = Float::with_val(bits, 2 * n + 1);
        let t = Complex::with_val(bits, &b / Float::with_val(bits, (&odd).pow(k)));
        sum += &t;
        let rho = zabs * (n + 1) as f64 / (2.0 * (2 * n + 1) as f64);
        if rho < 1.0 {
            let tail = log10_abs_c(&t) + rho.log10() - (1.0 - rho).log10();
            let scale = log10_abs_c(&sum).max(0.0);
            if tail < target + scale || log10_abs_c(&t) == f64::NEG_INFINITY {
                return sum;
            }
        }
    }
}

/// `F_j(y) = Σ y^n/(2n+1)^j = (Li_j(√y) - Li_j(-√y)) / (2√y)`; `one_minus_y`
/// is passed separately so `F_1` stays accurate where `y → 1`.
fn f_odd(j: u32, y: &Complex, one_minus_y: &Complex, ctx: &PrecisionCtx) -> Result<Complex> {
    let bits = ctx.bits();
    if log10_abs_c(y) < -0.3 {
        let mut sum = ctx.one();
        let mut p = ctx.one();
        let n_max = ((ctx.working_digits() as f64 + 2.0) / -log10_abs_c(y)).ceil() as u32 + 1;
        for n in 1..=n_max {
            p *= y;
            sum += Complex::with_val(bits, &p / Float::with_val(bits, 2 * n + 1).pow(j));
        }
        return Ok(sum);
    }
    let u = Complex::with_val(bits, y.sqrt_ref());
    if j == 1 {
        // artanh(u)/u with 1-u = (1-y)/(1+u)
        let one_plus = Complex::with_val(bits, &u + 1u32);
        let one_minus = Complex::with_val(bits, one_minus_y / &one_plus);
        let l = Complex::with_val(bits, &one_plus / &one_minus).ln();
        return Ok(l / Complex::with_val(bits, &u * 2u32));
    }
    let a = li_value(j, &u, CutSide::Auto, ctx)?;
    let b = li_value(j, &Complex::with_val(bits, -&u), CutSide::Auto, ctx)?;
    Ok(Complex::with_val(bits, &a - &b) / Complex::with_val(bits, &u * 2u32))
}

fn beta_integral(k: u32, z: &Complex, ctx: &PrecisionCtx) -> Result<Complex> {
    let bits = ctx.bits();
    let half = Complex::with_val(bits, (0.5, 0));
    let seg = Segment::new(ctx.zero(), half)?;
    let quarter_z = Complex::with_val(bits, z / 4u32);
    let base = Complex::with_val(bits, 1 - &quarter_z); // 1 - z/4
    let r = integrate_segment(
        |q| {
            // t(1-t) = 1/4 - δ²/4 with δ = 1 - 2t = 2·(1/2 - t)
            let delta = Complex::with_val(bits, &q.to_end * 2u32);
            let d2 = Complex::with_val(bits, delta.square_ref());
            let qd = Complex::with_val(bits, &quarter_z * &d2);
            let y = Complex::with_val(bits, &quarter_z - &qd);
            let one_minus_y = Complex::with_val(bits, &base + &qd);
            f_odd(k - 1, &y, &one_minus_y, ctx)
        },
        &seg,
        ctx,
    )?;
    Ok(Complex::with_val(bits, r.value.value() * 2u32))
}

fn asin_half_sqrt(z: &Complex, bits: u32) -> (Complex, Complex) {
    let sz = Complex::with_val(bits, z.sqrt_ref());
    let a = Complex::with_val(bits, &sz / 2u32).asin();
    (sz, a)
}

/// `S_1(z) = 4 arcsin(√z/2) / √(z(4-z))`.
pub fn s1_closed(z: &Complex, ctx: &PrecisionCtx) -> Result<ApComplex> {
    ApComplex::new(s1_value(z, ctx)?, ctx.digits(), "s1_closed")
}

fn s1_value(z: &Complex, ctx: &PrecisionCtx) -> Result<Complex> {
    let bits = ctx.bits();
    check_closed_domain(z)?;
    if z.real().is_zero() && z.imag().is_zero() {
        return Ok(ctx.one());
    }
    let (sz, a) = asin_half_sqrt(z, bits);
    let four_minus = Complex::with_val(bits, 4 - z);
    let den = Complex::with_val(bits, four_minus.sqrt_ref()) * &sz;
    Ok(Complex::with_val(bits, &a * 4u32) / den)
}

/// `S_0(z) = 4(√(4-z) + √z arcsin(√z/2)) / (4-z)^{3/2}`.
pub fn s0_closed(z: &Complex, ctx: &PrecisionCtx) -> Result<ApComplex> {
    ApComplex::new(s0_value(z, ctx)?, ctx.digits(), "s0_closed")
}

fn s0_value(z: &Complex, ctx: &PrecisionCtx) -> Result<Complex> {
    let bits = ctx.bits();
    check_closed_domain(z)?;
    let (sz, a) = asin_half_sqrt(z, bits);
    let four_minus = Complex::with_val(bits, 4 - z);
    let root = Complex::with_val(bits, four_minus.sqrt_ref());
    let num = Complex::with_val(bits, &sz * &a) + &root;
    let den = Complex::with_val(bits, &four_minus * &root);
    Ok(Complex::with_val(bits, &num * 4u32) / den)
}

fn check_closed_domain(z: &Complex) -> Result<()> {
    if z.imag().is_zero() && *z.real() >= 4 {
        if *z.real() == 4 {
            return Err(Error::Pole("closed form at z = 4".into()));
        }
        return Err(Error::Domain("closed form needs z outside [4, ∞)".into()));
    }
    Ok(())
}

/// The parameter `w` of the `Li_2`/`Li_3` identity.
#[derive(Clone, Debug, PartialEq)]
pub struct Theorem3Param {
    w: Complex,
}

impl Theorem3Param {
    /// Requires `|w| ≤ 1`, `Re w > 0`, `Im w ≥ 0` and `|1-w²| ≤ 2|w|`.
    pub fn new(w: Complex) -> Result<Self> {
        let bits = w.prec().0.max(64);
        let modw = Float::with_val(bits, w.abs_ref());
        let slack = Float::with_val(bits, 1) + (Float::with_val(bits, 1) >> (bits - 8));
        let one_minus = Complex::with_val(bits, 1 - Complex::with_val(bits, w.square_ref()));
        let lhs = Float::with_val(bits, one_minus.abs_ref());
        let rhs = Float::with_val(bits, &modw * 2u32) * &slack;
        if modw > slack || *w.real() <= 0 || *w.imag() < 0 || lhs > rhs {
            return Err(Error::Domain(format!(
                "w = {} outside the admissible region",
                w.to_string_radix(10, Some(12))
            )));
        }
        Ok(Self { w })
    }

    pub fn w(&self) -> &Complex {
        &self.w
    }

    /// `x = (1 - w²)/w`.
    pub fn x(&self, bits: u32) -> Complex {
        let w2 = Complex::with_val(bits, self.w.square_ref());
        Complex::with_val(bits, 1 - w2) / &self.w
    }
}

/// `Σ (-1)^n x^{2n+1} / ((2n+1)^3 C(2n,n)) = x · S_3(-x²)`.
pub fn theorem3_lhs(p: &Theorem3Param, ctx: &PrecisionCtx) -> Result<ApComplex> {
    let bits = ctx.bits();
    let x = p.x(bits);
    let z = -Complex::with_val(bits, x.square_ref());
    let v = if 10f64.powf(log10_abs_c(&z)) > DIRECT_RADIUS {
        genchen_contour(3, p.w(), ctx)?.into_value()
    } else {
        Complex::with_val(bits, &x * direct_sum(3, &z, ctx))
    };
    ApComplex::new(v, ctx.digits(), "theorem3_lhs")
}

/// `-2[Li_3(a⁺) - Li_3(a⁻) - Li_3(b⁺) + Li_3(b⁻)] + [Li_2(a⁺) - Li_2(a⁻) + Li_2(b⁺) - Li_2(b⁻)] log w
/// + πi log(a⁺) log(b⁺)` with `a^± = (1 ± w)/2`, `b^± = (1 ± 1/w)/2`.
///
/// For real `w` the arguments `b⁺ > 1` are taken as the limit `Im w → 0⁺`,
/// which approaches the cut from below.
pub fn theorem3_rhs(p: &Theorem3Param, ctx: &PrecisionCtx) -> Result<ApComplex> {
    let bits = ctx.bits();
    let w = Complex::with_val(bits, p.w());
    if w.real().is_zero() && w.imag().is_zero() {
        return Err(Error::DivisionByZero);
    }
    let inv = Complex::with_val(bits, w.recip_ref());
    let half = |x: Complex| x / 2u32;
    let ap = half(Complex::with_val(bits, &w + 1u32));
    let am = half(Complex::with_val(bits, 1 - &w));
    let bp = half(Complex::with_val(bits, &inv + 1u32));
    let bm = half(Complex::with_val(bits, 1 - &inv));
    let side = CutSide::Lower;
    let l = |s: u32, x: &Complex| li_value(s, x, side, ctx);
    let tri = Complex::with_val(bits, l(3, &ap)? - l(3, &am)?) - l(3, &bp)? + l(3, &bm)?;
    let di = Complex::with_val(bits, l(2, &ap)? - l(2, &am)?) + l(2, &bp)? - l(2, &bm)?;
    let log_w = Complex::with_val(bits, w.ln_ref());
    let pi_i = Complex::with_val(bits, (0, Float::with_val(bits, Constant::Pi)));
    let la = Complex::with_val(bits, ap.ln_ref());
    let lb = Complex::with_val(bits, bp.ln_ref());
    let mut v = Complex::with_val(bits, &tri * -2i32);
    v += Complex::with_val(bits, &di * &log_w);
    v += pi_i * la * lb;
    ApComplex::new(v, ctx.digits(), "theorem3_rhs")
}

/// Both sides of the `k = 2` reduction at real `0 < w < 1`:
/// `x·S_2(-x²)` and `-2[Li_2(w) - Li_2(-w)] - 2 log w log((1-w)/(1+w)) + π²/2`.
///
/// Past the disk of convergence (`x² > 4`) the left side is the contour integral.
pub fn k2_reduction(w: &Complex, ctx: &PrecisionCtx) -> Result<(ApComplex, ApComplex)> {
    let bits = ctx.bits();
    if !w.imag().is_zero() || *w.real() <= 0 || *w.real() >= 1 {
        return Err(Error::Domain("k = 2 reduction needs real 0 < w < 1".into()));
    }
    let w = Complex::with_val(bits, w);
    let x = Complex::with_val(bits, 1 - Complex::with_val(bits, w.square_ref())) / &w;
    let z = -Complex::with_val(bits, x.square_ref());
    let lhs = if 10f64.powf(log10_abs_c(&z)) > DIRECT_RADIUS {
        genchen_contour(2, &w, ctx)?.into_value()
    } else {
        Complex::with_val(bits, &x * direct_sum(2, &z, ctx))
    };
    let neg_w = Complex::with_val(bits, -&w);
    let d = Complex::with_val(
        bits,
        li_value(2, &w, CutSide::Auto, ctx)? - li_value(2, &neg_w, CutSide::Auto, ctx)?,
    );
    let ratio = Complex::with_val(bits, 1 - &w) / Complex::with_val(bits, &w + 1u32);
    let logs = Complex::with_val(bits, w.ln_ref()) * ratio.ln();
    let pi = Float::with_val(bits, Constant::Pi);
    let pi2_half = Float::with_val(bits, pi.square_ref()) / 2u32;
    let rhs =
        Complex::with_val(bits, &d * -2i32) - Complex::with_val(bits, &logs * 2u32) + pi2_half;
    Ok((
        ApComplex::new(lhs, ctx.digits(), "k2_reduction lhs")?,
        ApComplex::new(rhs, ctx.digits(), "k2_reduction rhs")?,
    ))
}

/// `Σ_{n≥1} 1 / (n³ C(3n,n) 2^n)`.
pub fn chudnovsky_sum(ctx: &PrecisionCtx) -> Result<ApComplex> {
    let bits = ctx.bits();
    let target = ctx.work_log10_eps() - 2.0;
    // c_n = 1/(C(3n,n) 2^n); c_1 = 1/6
    let mut c = Float::with_val(bits, 1) / 6u32;
    let mut sum = Float::new(bits);
    let mut n: u32 = 1;
    loop {
        let t = Float::with_val(bits, &c / Float::with_val(bits, n).pow(3u32));
        sum += &t;
        // every later term ratio is below 1/10
        let tail = crate::precision::log10_abs(&t) - 1.0 - 0.9f64.log10();
        if tail < target {
            break;
        }
        // C(3n+3,n+1)/C(3n,n) = 3(3n+2)(3n+1)/((2n+2)(2n+1))
        let n64 = n as u64;
        c *= Float::with_val(bits, (2 * n64 + 2) * (2 * n64 + 1));
        c /= Float::with_val(bits, 3 * (3 * n64 + 2) * (3 * n64 + 1) * 2);
        n += 1;
    }
    ApComplex::new(
        Complex::with_val(bits, (sum, 0)),
        ctx.digits(),
        "chudnovsky_sum",
    )
}

/// `f_k(x) = Σ x^{2n+1} / ((2n+1)^k C(2n,n))` in double precision, `|x| < 2`.
pub fn ladder_f64(k: i32, x: f64) -> f64 {
    let mut b = 1.0; // x^{2n}/C(2n,n)
    let mut sum = 0.0;
    let x2 = x * x;
    for n in 0..10_000u32 {
        let m = (2 * n + 1) as f64;
        let t = x * b / m.powi(k);
        sum += t;
        if t.abs() < 1e-18 * sum.abs() {
            break;
        }
        b *= x2 * (n + 1) as f64 / (2.0 * m);
    }
    sum
}

/// `(f_k(a) - f_k(b)) / (a - b)` in double precision without subtracting
/// nearby values: `(a^m - b^m)/(a - b) = Σ_{i<m} a^i b^{m-1-i}`.
pub fn ladder_divided_difference_f64(k: i32, a: f64, b: f64) -> f64 {
    let mut sum = 0.0;
    let mut coeff = 1.0; // 1/C(2n,n)
    // q_m = Σ_{i<m} a^i b^{m-1-i}, for odd m; q_{m+2} = a² q_m + (a+b) b^m
    let mut q = 1.0;
    let mut b_pow = b; // b^m
    for n in 0..10_000u32 {
        let m = (2 * n + 1) as f64;
        let t = coeff * q / m.powi(k);
        sum += t;
        if t.abs() < 1e-18 * sum.abs() {
            break;
        }
        q = a * a * q + (a + b) * b_pow;
        b_pow *= b * b;
        coeff *= (n + 1) as f64 / (2.0 * m);
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionCtx {
        PrecisionCtx::new(30).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex {
        Complex::with_val(ctx().bits(), (re, im))
    }

    fn agree(a: &Complex, b: &Complex) -> f64 {
        let d = Complex::with_val(a.prec().0, a - b);
        -log10_abs_c(&d)
    }

    #[test]
    fn zero_argument_gives_one() {
        for k in 0..5 {
            let v = s_series(&SeriesSpec::new(k, c(0.0, 0.0)), &ctx()).unwrap();
            assert!(agree(v.value(), &ctx().one()) > 35.0);
        }
    }

    #[test]
    fn s3_one_leading_digits() {
        let v = s_series(&SeriesSpec::new(3, c(1.0, 0.0)), &ctx()).unwrap();
        assert!(v.to_string_digits(8).starts_with("1.0200208"), "{v}");
    }

    #[test]
    fn s3_minus_one_leading_digits() {
        let v = s_series(&SeriesSpec::new(3, c(-1.0, 0.0)), &ctx()).unwrap();
        assert!(v.to_string_digits(8).starts_with("0.9826860"), "{v}");
    }

    #[test]
    fn s1_closed_at_one_and_two() {
        let bits = ctx().bits();
        let pi = Float::with_val(bits, Constant::Pi);
        let v = s1_closed(&c(1.0, 0.0), &ctx()).unwrap();
        let want = Float::with_val(bits, &pi * 2u32) / (Float::with_val(bits, 3).sqrt() * 3u32);
        assert!(agree(v.value(), &Complex::with_val(bits, (want, 0))) > 35.0);
        let v = s1_closed(&c(2.0, 0.0), &ctx()).unwrap();
        assert!(agree(v.value(), &Complex::with_val(bits, (pi / 2u32, 0))) > 35.0);
    }

    #[test]
    fn s0_closed_at_zero() {
        let v = s0_closed(&c(0.0, 0.0), &ctx()).unwrap();
        assert!(agree(v.value(), &ctx().one()) > 35.0);
        assert!(matches!(
            s0_closed(&c(4.0, 0.0), &ctx()),
            Err(Error::Pole(_))
        ));
    }

    #[test]
    fn divergence_outside_disk() {
        assert!(s_series(&SeriesSpec::new(3, c(4.5, 0.0)), &ctx()).is_err());
        assert!(s_series(&SeriesSpec::new(1, c(4.0, 0.0)), &ctx()).is_err());
    }

    #[test]
    fn beta_integral_matches_direct_sum() {
        let z = c(-3.0, 1.0);
        for k in 2..=4 {
            let a = direct_sum(k, &z, &ctx());
            let b = beta_integral(k, &z, &ctx()).unwrap();
            assert!(agree(&a, &b) > 33.0, "k = {k}");
        }
        // k = 2 exercises the artanh branch
        let z = c(2.0, 0.5);
        assert!(
            agree(
                &direct_sum(2, &z, &ctx()),
                &beta_integral(2, &z, &ctx()).unwrap()
            ) > 33.0
        );
    }

    #[test]
    fn theorem3_at_w_one_is_zero() {
        let p = Theorem3Param::new(c(1.0, 0.0)).unwrap();
        let l = theorem3_lhs(&p, &ctx()).unwrap();
        let r = theorem3_rhs(&p, &ctx()).unwrap();
        assert!(-log10_abs_c(l.value()) > 35.0);
        assert!(-log10_abs_c(r.value()) > 35.0);
    }

    #[test]
    fn theorem3_param_domain() {
        assert!(Theorem3Param::new(c(0.3, 0.0)).is_err()); // below √2 - 1
        assert!(Theorem3Param::new(c(-0.5, 0.5)).is_err());
        assert!(Theorem3Param::new(c(0.5, -0.1)).is_err());
        assert!(Theorem3Param::new(c(0.6, 0.0)).is_ok());
    }

    #[test]
    fn ladder_divided_difference_is_derivative() {
        let (x, h) = (0.9, 1e-8);
        let d = ladder_divided_difference_f64(2, x + h, x - h);
        let want = ladder_f64(1, x) / x;
        assert!(((d - want) / want).abs() < 1e-12);
    }
}
