#![allow(dead_code)]

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Complex, Float, Rational};

use invbinom::expr::eval_expr;
use invbinom::precision::log10_abs_c;
use invbinom::series::{ladder_divided_difference_f64, ladder_f64, s0_closed, s1_closed};
use invbinom::shuffle::{Word, shuffle};
use invbinom::verifier::{Identity, Lhs};
use invbinom::{
    CutSide, GaussRat, GplWord, Letter, NamedConstant, PrecisionCtx, SeriesSpec, genchen_contour,
    gpl_eval, gpl_to_mpl, li, mpl_to_gpl, named_constant, s_series,
};

pub fn ctx(digits: u32) -> PrecisionCtx {
    PrecisionCtx::new(digits).unwrap()
}

/// Matching digits of `a` against `b`, relative to `max(1, |b|)`.
pub fn agree(a: &Complex, b: &Complex) -> f64 {
    let bits = a.prec().0.max(b.prec().0);
    let d = Complex::with_val(bits, a - b);
    let v = -(log10_abs_c(&d) - log10_abs_c(b).max(0.0));
    if v.is_finite() { v } else { f64::INFINITY }
}

pub fn gauss(re: (i64, i64), im: (i64, i64)) -> GaussRat {
    GaussRat::new(Rational::from(re), Rational::from(im))
}

pub fn cplx(g: &GaussRat, ctx: &PrecisionCtx) -> Complex {
    g.to_complex(ctx.bits())
}

fn gpl(letters: &[GaussRat], z: &GaussRat, ctx: &PrecisionCtx) -> Complex {
    let word = GplWord::new(letters.iter().map(|a| cplx(a, ctx)).collect(), cplx(z, ctx));
    gpl_eval(&word, ctx).unwrap().into_value()
}

/// `G(u; z) G(v; z)` against the shuffle expansion, evaluated numerically.
pub fn shuffle_agreement(u: &[GaussRat], v: &[GaussRat], z: &GaussRat, ctx: &PrecisionCtx) -> f64 {
    let bits = ctx.bits();
    let lhs = Complex::with_val(bits, gpl(u, z, ctx) * gpl(v, z, ctx));
    let mut rhs = Complex::new(bits);
    for (w, power, c) in shuffle(&Word::new(u.to_vec()), &Word::new(v.to_vec())).iter() {
        assert_eq!(power, 0);
        rhs += gpl(w.letters(), z, ctx) * Float::with_val(bits, c);
    }
    agree(&lhs, &rhs)
}

/// `G(λa; λz) = G(a; z)` for words ending in a nonzero letter.
pub fn scaling_agreement(
    letters: &[GaussRat],
    z: &GaussRat,
    lambda: &GaussRat,
    ctx: &PrecisionCtx,
) -> f64 {
    let scaled: Vec<GaussRat> = letters.iter().map(|a| a.product(lambda)).collect();
    agree(
        &gpl(&scaled, &z.product(lambda), ctx),
        &gpl(letters, z, ctx),
    )
}

/// Exact `mpl → gpl → mpl` round trip.
pub fn round_trip_exact(weights: &[u32], args: &[GaussRat], z: &GaussRat) -> bool {
    let letters = mpl_to_gpl(weights, args, z).unwrap();
    let back = gpl_to_mpl(&letters, z).unwrap();
    let sign = if weights.len().is_multiple_of(2) {
        1
    } else {
        -1
    };
    back.weights == weights && back.args == args && back.sign == sign
}

/// `Li_s(z) + Li_s(-z) = 2^{1-s} Li_s(z²)`.
pub fn duplication_agreement(s: u32, z: &Complex, ctx: &PrecisionCtx) -> f64 {
    let bits = ctx.bits();
    let l = |x: &Complex| li(s, x, CutSide::Auto, ctx).unwrap().into_value();
    let neg = Complex::with_val(bits, -z);
    let sq = Complex::with_val(bits, z.square_ref());
    let lhs = Complex::with_val(bits, l(z) + l(&neg));
    let rhs = l(&sq) * Float::with_val(bits, Float::i_exp(1, 1 - s as i32));
    agree(&lhs, &rhs)
}

/// `Li_s(x+i0) - Li_s(x-i0) = 2πi log^{s-1}(x)/(s-1)!` for `x > 1`.
pub fn jump_agreement(s: u32, x: &Float, ctx: &PrecisionCtx) -> f64 {
    let bits = ctx.bits();
    let z = Complex::with_val(bits, (x, 0));
    let up = li(s, &z, CutSide::Upper, ctx).unwrap().into_value();
    let down = li(s, &z, CutSide::Lower, ctx).unwrap().into_value();
    let lhs = Complex::with_val(bits, up - down);
    let mut fact = Float::with_val(bits, 1);
    for j in 2..s {
        fact *= j;
    }
    let lg = Float::with_val(bits, x.ln_ref()).pow(s - 1);
    let two_pi = Float::with_val(bits, Constant::Pi) * 2u32;
    let rhs = Complex::with_val(bits, (0, lg * two_pi / fact));
    agree(&lhs, &rhs)
}

/// Residual of `x f_k'(x) = f_{k-1}(x)` with a central divided difference.
pub fn ladder_residual(k: i32, x: f64) -> f64 {
    let h = 1e-6;
    let d = ladder_divided_difference_f64(k, x + h, x - h);
    let want = ladder_f64(k - 1, x);
    (x * d - want).abs() / want.abs().max(1.0)
}

/// `s_series` against the closed forms for `k = 1` and `k = 0`.
pub fn closed_form_agreement(z: &Complex, ctx: &PrecisionCtx) -> (f64, f64) {
    let s1 = s_series(&SeriesSpec::new(1, z.clone()), ctx).unwrap();
    let s0 = s_series(&SeriesSpec::new(0, z.clone()), ctx).unwrap();
    let c1 = s1_closed(z, ctx).unwrap();
    let c0 = s0_closed(z, ctx).unwrap();
    (agree(s1.value(), c1.value()), agree(s0.value(), c0.value()))
}

/// `Σ_{k≥0} (-1)^k a_k` by the Cohen–Villegas–Zagier acceleration; valid for
/// moment sequences `a_k = ∫_0^1 t^k dμ`.
pub fn alternating_sum(a: impl Fn(u64) -> Float, ctx: &PrecisionCtx) -> Float {
    let bits = ctx.bits();
    let n = (ctx.working_digits() as f64 / 0.76).ceil() as u64 + 2; // 5.83^{-n} per term
    let mut d = (Float::with_val(bits, 8).sqrt() + 3u32).pow(n as u32);
    d = (Float::with_val(bits, d.recip_ref()) + &d) / 2u32;
    let mut b = Float::with_val(bits, -1);
    let mut c = Float::with_val(bits, -&d);
    let mut s = Float::new(bits);
    for k in 0..n {
        c = Float::with_val(bits, &b - &c);
        s += Float::with_val(bits, &c * a(k));
        let (kf, nf) = (k as f64, n as f64);
        let num = Float::with_val(bits, (kf + nf) * (kf - nf));
        let den = Float::with_val(bits, (kf + 0.5) * (kf + 1.0));
        b = b * num / den;
    }
    s / d
}

fn inv_pow(m: u64, e: u32, bits: u32) -> Float {
    Float::with_val(bits, m).pow(e).recip()
}

/// Independent values of the Dirichlet constants, paired with the built-in ones.
pub fn l_value_oracles(ctx: &PrecisionCtx) -> Vec<(&'static str, Complex, Complex)> {
    let bits = ctx.bits();
    let real = |x: Float| Complex::with_val(bits, (x, 0));
    let get = |c: NamedConstant| named_constant(c, ctx).unwrap().into_value();
    let g = alternating_sum(|k| inv_pow(2 * k + 1, 2, bits), ctx);
    let b4 = alternating_sum(|k| inv_pow(2 * k + 1, 4, bits), ctx);
    let l823 = alternating_sum(
        |k| inv_pow(4 * k + 1, 3, bits) - inv_pow(4 * k + 3, 3, bits),
        ctx,
    );
    let l844 = alternating_sum(
        |k| inv_pow(4 * k + 1, 4, bits) + inv_pow(4 * k + 3, 4, bits),
        ctx,
    );
    let l1243 = alternating_sum(
        |k| inv_pow(6 * k + 1, 3, bits) - inv_pow(6 * k + 5, 3, bits),
        ctx,
    );
    // Im Li_4(e^{2πi/3}) = (√3/2) L_{3,2}(4)
    let w = {
        let t = Float::with_val(bits, Constant::Pi) * 2u32 / 3u32;
        let (s, c) = t.sin_cos(Float::new(bits));
        Complex::with_val(bits, (c, s))
    };
    let im4 = li(4, &w, CutSide::Auto, ctx)
        .unwrap()
        .into_value()
        .imag()
        .clone();
    let l324 = im4 * 2u32 / Float::with_val(bits, 3).sqrt();
    vec![
        ("catalan_G", get(NamedConstant::CatalanG), real(g)),
        ("beta4", get(NamedConstant::Beta4), real(b4)),
        ("L_8_2_3", get(NamedConstant::L823), real(l823)),
        ("L_8_4_4", get(NamedConstant::L844), real(l844)),
        ("L_12_4_3", get(NamedConstant::L1243), real(l1243)),
        ("L_3_2_4", get(NamedConstant::L324), real(l324)),
    ]
}

/// For a catalog entry `factor·S_k(z)` with a contour parameter `w`, the three
/// values `x·S_k(z)` by series, by contour, and `(x/factor)·rhs`, where
/// `x = (1-w²)/w`. Also returns `|z + x²|`.
pub struct Triangle {
    pub series: Complex,
    pub contour: Complex,
    pub closed: Complex,
    pub argument_mismatch: f64,
}

pub fn triangle(id: &Identity, ctx: &PrecisionCtx) -> Option<Triangle> {
    let bits = ctx.bits();
    let Lhs::Series { k, z, factor } = &id.lhs else {
        return None;
    };
    let w = eval_expr(id.contour_w.as_ref()?, ctx).unwrap().into_value();
    let z = eval_expr(z, ctx).unwrap().into_value();
    let factor = eval_expr(factor, ctx).unwrap().into_value();
    let x = Complex::with_val(bits, 1 - Complex::with_val(bits, w.square_ref())) / &w;
    let mismatch = Complex::with_val(bits, &z + Complex::with_val(bits, x.square_ref()));
    let s = s_series(&SeriesSpec::new(*k, z.clone()), ctx)
        .unwrap()
        .into_value();
    let rhs = eval_expr(id.rhs_expr()?, ctx).unwrap().into_value();
    Some(Triangle {
        series: Complex::with_val(bits, &x * s),
        contour: genchen_contour(*k, &w, ctx).unwrap().into_value(),
        closed: Complex::with_val(bits, &x / factor) * rhs,
        argument_mismatch: 10f64.powf(log10_abs_c(&mismatch)),
    })
}
