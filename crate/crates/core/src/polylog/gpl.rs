use rug::{Complex, Float};

use super::mpl::{MplSpec, mpl_direct};
use super::{CutSide, li_value};
use crate::error::{Error, Result};
use crate::point::Letter;
use crate::precision::{ApComplex, PrecisionCtx, log10_abs_c};
use crate::shuffle::{Word, remove_trailing_zeros};

/// Largest `|z/α_min|` summed directly as an MPL series.
pub const SERIES_THRESHOLD: f64 = 0.9;
pub const MAX_WORD_LEN: usize = 8;
const MAX_HOLDER_DEPTH: u32 = 6;

/// `G(α_1, …, α_n; z)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GplWord {
    pub letters: Vec<Complex>,
    pub arg: Complex,
}

impl GplWord {
    pub fn new(letters: Vec<Complex>, arg: Complex) -> Self {
        Self { letters, arg }
    }

    pub fn weight(&self) -> usize {
        self.letters.len()
    }

    /// `α_1 ≠ z` and the last letter is nonzero.
    pub fn is_convergent(&self) -> bool {
        match (self.letters.first(), self.letters.last()) {
            (Some(first), Some(last)) => *first != self.arg && !Letter::is_zero(last),
            _ => true,
        }
    }
}

/// Image of a GPL word under `G(0^{a_1-1} α̃_1 … ; z) = (-1)^n Li_{a_1…}(z/α̃_1, α̃_1/α̃_2, …)`.
#[derive(Clone, Debug, PartialEq)]
pub struct MplImage<L> {
    pub sign: i32,
    pub weights: Vec<u32>,
    pub args: Vec<L>,
}

pub fn gpl_to_mpl<L: Letter>(letters: &[L], arg: &L) -> Result<MplImage<L>> {
    if letters.is_empty() || letters.iter().all(Letter::is_zero) {
        return Err(Error::InvalidWord(
            "all-zero or empty word has no MPL image".into(),
        ));
    }
    if letters.last().is_some_and(Letter::is_zero) {
        return Err(Error::InvalidWord("word ends in a zero letter".into()));
    }
    let mut weights = Vec::new();
    let mut args = Vec::new();
    let mut prev = arg.clone();
    let mut run = 1u32;
    for a in letters {
        if a.is_zero() {
            run += 1;
            continue;
        }
        weights.push(run);
        args.push(prev.ratio(a));
        prev = a.clone();
        run = 1;
    }
    let sign = if weights.len() % 2 == 0 { 1 } else { -1 };
    Ok(MplImage {
        sign,
        weights,
        args,
    })
}

/// Letters `(0^{s_1-1}, α̃_1, …)` with `α̃_1 = z/x_1`, `α̃_j = α̃_{j-1}/x_j`.
pub fn mpl_to_gpl<L: Letter>(weights: &[u32], args: &[L], z: &L) -> Result<Vec<L>> {
    if weights.is_empty() || weights.len() != args.len() || weights.contains(&0) {
        return Err(Error::Domain(
            "mpl_to_gpl needs matching positive weights".into(),
        ));
    }
    if args.iter().any(Letter::is_zero) {
        return Err(Error::DivisionByZero);
    }
    let mut letters = Vec::new();
    let mut prev = z.clone();
    for (s, x) in weights.iter().zip(args) {
        let a = prev.ratio(x);
        for _ in 1..*s {
            letters.push(L::zero());
        }
        letters.push(a.clone());
        prev = a;
    }
    Ok(letters)
}

/// Numeric value of `G(α; z)` along the straight path from 0 to z.
///
/// All-zero words give `log^n z / n!`; trailing zeros are removed through the
/// shuffle algebra; one nonzero letter reduces to `-Li_s(z/α)`; otherwise
/// the word is summed as an MPL when `|z/α_min| ≤ 0.9` and split at the
/// midpoint (Hölder convolution) when not.
pub fn gpl_eval(word: &GplWord, ctx: &PrecisionCtx) -> Result<ApComplex> {
    if word.letters.len() > MAX_WORD_LEN {
        return Err(Error::Domain(format!("GPL weight above {MAX_WORD_LEN}")));
    }
    let bits = ctx.bits();
    let letters: Vec<Complex> = word
        .letters
        .iter()
        .map(|a| Complex::with_val(bits, a))
        .collect();
    let z = Complex::with_val(bits, &word.arg);
    let v = eval_word(&letters, &z, ctx, 0)?;
    ApComplex::new(v, ctx.digits(), "gpl_eval")
}

fn is_zero(z: &Complex) -> bool {
    z.real().is_zero() && z.imag().is_zero()
}

fn nearly_equal(a: &Complex, b: &Complex, bits: u32) -> bool {
    let d = Complex::with_val(bits, a - b);
    if is_zero(&d) {
        return true;
    }
    let scale = log10_abs_c(a).max(log10_abs_c(b)).max(0.0);
    log10_abs_c(&d) < scale - 0.9 * bits as f64 * std::f64::consts::LOG10_2
}

pub(crate) fn eval_word(
    a: &[Complex],
    z: &Complex,
    ctx: &PrecisionCtx,
    depth: u32,
) -> Result<Complex> {
    let bits = ctx.bits();
    let n = a.len();
    if n == 0 {
        return Ok(ctx.one());
    }
    if a.iter().all(is_zero) {
        if is_zero(z) {
            return Err(Error::Pole("G(0,…,0; 0)".into()));
        }
        let mut v = Complex::with_val(bits, z.ln_ref());
        v = v.pow_ref_u(n as u32);
        let mut fact = Float::with_val(bits, 1);
        for j in 2..=n as u32 {
            fact *= j;
        }
        return Ok(v / fact);
    }
    if is_zero(z) {
        return Ok(ctx.zero());
    }
    if nearly_equal(&a[0], z, bits) {
        return Err(Error::Divergent(
            "GPL with first letter equal to its argument".into(),
        ));
    }
    if is_zero(&a[n - 1]) {
        return eval_trailing_zeros(a, z, ctx, depth);
    }
    let nonzero = a.iter().filter(|x| !is_zero(x)).count();
    if nonzero == 1 {
        // G(0^{s-1}, α; z) = -Li_s(z/α)
        let x = Complex::with_val(bits, z / &a[n - 1]);
        if x.imag().is_zero() && *x.real() >= 1 {
            return Err(Error::Divergent(
                "GPL letter lies on the integration path".into(),
            ));
        }
        return Ok(-li_value(n as u32, &x, CutSide::Auto, ctx)?);
    }
    let b: Vec<Complex> = a.iter().map(|x| Complex::with_val(bits, x / z)).collect();
    let min_log = b
        .iter()
        .filter(|x| !is_zero(x))
        .map(log10_abs_c)
        .fold(f64::INFINITY, f64::min);
    if -min_log <= SERIES_THRESHOLD.log10() {
        let one = ctx.one();
        let image = gpl_to_mpl(&b, &one)?;
        let spec = MplSpec::new(image.weights, image.args)?;
        let v = mpl_direct(&spec, ctx)?.into_value();
        return Ok(if image.sign < 0 { -v } else { v });
    }
    if depth >= MAX_HOLDER_DEPTH {
        return Err(Error::unreachable("Hölder recursion depth", ctx.digits()));
    }
    holder(&b, ctx, depth)
}

/// `G(b; 1) = Σ_j (-1)^j G(1-b_j, …, 1-b_1; 1/2) · G(b_{j+1}, …, b_n; 1/2)`.
fn holder(b: &[Complex], ctx: &PrecisionCtx, depth: u32) -> Result<Complex> {
    let bits = ctx.bits();
    let half = Complex::with_val(bits, (0.5, 0));
    let n = b.len();
    let mut sum = ctx.zero();
    for j in 0..=n {
        let reflected: Vec<Complex> = b[..j]
            .iter()
            .rev()
            .map(|x| Complex::with_val(bits, 1 - x))
            .collect();
        let left = eval_word(&reflected, &half, ctx, depth + 1)?;
        if is_zero(&left) {
            continue;
        }
        let right = eval_word(&b[j..], &half, ctx, depth + 1)?;
        let term = Complex::with_val(bits, &left * &right);
        if j % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    Ok(sum)
}

fn eval_trailing_zeros(
    a: &[Complex],
    z: &Complex,
    ctx: &PrecisionCtx,
    depth: u32,
) -> Result<Complex> {
    let bits = ctx.bits();
    // index alphabet: 0 is the zero letter, i ≥ 1 the i-th distinct nonzero letter
    let mut alphabet: Vec<Complex> = Vec::new();
    let mut idx = Vec::with_capacity(a.len());
    for x in a {
        if is_zero(x) {
            idx.push(0usize);
            continue;
        }
        let pos = match alphabet.iter().position(|y| y == x) {
            Some(p) => p,
            None => {
                alphabet.push(x.clone());
                alphabet.len() - 1
            }
        };
        idx.push(pos + 1);
    }
    let combo = remove_trailing_zeros(&Word::new(idx))?;
    let log_z = Complex::with_val(bits, z.ln_ref());
    let mut sum = ctx.zero();
    for (w, m, c) in combo.iter() {
        let letters: Vec<Complex> = w
            .letters()
            .iter()
            .map(|&i| {
                if i == 0 {
                    ctx.zero()
                } else {
                    alphabet[i - 1].clone()
                }
            })
            .collect();
        let g = eval_word(&letters, z, ctx, depth)?;
        let mut t = Complex::with_val(bits, &g * Float::with_val(bits, c));
        if m > 0 {
            t *= Complex::with_val(bits, log_z.pow_ref_u(m));
        }
        sum += t;
    }
    Ok(sum)
}

trait PowU {
    fn pow_ref_u(&self, m: u32) -> Complex;
}

impl PowU for Complex {
    fn pow_ref_u(&self, m: u32) -> Complex {
        use rug::ops::Pow;
        Complex::with_val(self.prec().0, Pow::pow(self, m))
    }
}
