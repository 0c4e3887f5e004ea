//! Working-precision context and the arbitrary-precision complex value type.

use std::fmt;

use rug::float::Round;
use rug::{Assign, Complex, Float};

use crate::error::{Error, Result};

pub const DEFAULT_GUARD: u32 = 10;
pub const MIN_DIGITS: u32 = 10;

const LOG2_10: f64 = std::f64::consts::LOG2_10;

/// Decimal precision requested by the caller plus guard digits carried internally.
///
/// All arithmetic runs at `digits + guard` decimal digits; results are
/// reported (and trusted) to `digits`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrecisionCtx {
    digits: u32,
    guard: u32,
}

impl PrecisionCtx {
    pub fn new(digits: u32) -> Result<Self> {
        Self::with_guard(digits, DEFAULT_GUARD)
    }

    pub fn with_guard(digits: u32, guard: u32) -> Result<Self> {
        if digits < MIN_DIGITS {
            return Err(Error::Domain(format!(
                "precision must be at least {MIN_DIGITS} digits, got {digits}"
            )));
        }
        Ok(Self { digits, guard })
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn guard(&self) -> u32 {
        self.guard
    }

    pub fn working_digits(&self) -> u32 {
        self.digits + self.guard
    }

    /// Binary precision used for every `Float`/`Complex` in this context.
    pub fn bits(&self) -> u32 {
        (self.working_digits() as f64 * LOG2_10).ceil() as u32 + 16
    }

    /// Same reported digits, guard doubled. Used on precision-unreachable retries.
    pub fn doubled_guard(&self) -> Self {
        Self {
            digits: self.digits,
            guard: (self.guard * 2).max(1),
        }
    }

    /// A context reporting `extra` more digits, same guard.
    pub fn raised(&self, extra: u32) -> Self {
        Self {
            digits: self.digits + extra,
            guard: self.guard,
        }
    }

    /// Relative tolerance `10^-(digits+guard)` as a base-10 exponent.
    pub(crate) fn work_log10_eps(&self) -> f64 {
        -(self.working_digits() as f64)
    }

    pub(crate) fn zero(&self) -> Complex {
        Complex::new(self.bits())
    }

    pub(crate) fn one(&self) -> Complex {
        Complex::with_val(self.bits(), 1)
    }
}

/// Runs `f`, doubling the guard digits on `PrecisionUnreachable` (at most two retries).
pub fn with_retry<T>(
    ctx: &PrecisionCtx,
    mut f: impl FnMut(&PrecisionCtx) -> Result<T>,
) -> Result<T> {
    let mut current = *ctx;
    let mut attempt = 0;
    loop {
        match f(&current) {
            Err(Error::PrecisionUnreachable { .. }) if attempt < 2 => {
                attempt += 1;
                current = current.doubled_guard();
            }
            other => return other,
        }
    }
}

/// An arbitrary-precision complex number together with the number of decimal
/// digits it is trusted to.
#[derive(Clone, Debug, PartialEq)]
pub struct ApComplex {
    value: Complex,
    digits: u32,
}

impl ApComplex {
    /// Wraps `value`; non-finite components are rejected.
    pub fn new(value: Complex, digits: u32, origin: &str) -> Result<Self> {
        if !is_finite(&value) {
            return Err(Error::NonFinite(origin.to_string()));
        }
        Ok(Self { value, digits })
    }

    pub fn value(&self) -> &Complex {
        &self.value
    }

    pub fn into_value(self) -> Complex {
        self.value
    }

    pub fn re(&self) -> &Float {
        self.value.real()
    }

    pub fn im(&self) -> &Float {
        self.value.imag()
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn with_digits(mut self, digits: u32) -> Self {
        self.digits = digits;
        self
    }

    pub fn to_c64(&self) -> (f64, f64) {
        (self.re().to_f64(), self.im().to_f64())
    }

    /// Decimal rendering with `sig` significant digits; the imaginary part is
    /// omitted when it is exactly zero.
    /// Zeroes a component smaller than `10^{-(digits+2)}·max(1, |z|)`.
    pub fn chopped(&self) -> ApComplex {
        let scale = log10_abs_c(&self.value).max(0.0);
        let tiny = -(self.digits as f64) - 2.0 + scale;
        let mut v = self.value.clone();
        if log10_abs(v.real()) < tiny {
            v.mut_real().assign(0);
        }
        if log10_abs(v.imag()) < tiny {
            v.mut_imag().assign(0);
        }
        ApComplex {
            value: v,
            digits: self.digits,
        }
    }

    pub fn to_string_digits(&self, sig: usize) -> String {
        let re = format_float(self.re(), sig);
        if self.im().is_zero() {
            return re;
        }
        let im = format_float(self.im(), sig);
        if self.re().is_zero() {
            return format!("{im}i");
        }
        if let Some(stripped) = im.strip_prefix('-') {
            format!("{re} - {stripped}i")
        } else {
            format!("{re} + {im}i")
        }
    }
}

impl fmt::Display for ApComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_digits(self.digits as usize))
    }
}

pub(crate) fn is_finite(z: &Complex) -> bool {
    z.real().is_finite() && z.imag().is_finite()
}

/// `log10 |x|`, valid far outside the `f64` exponent range. Zero maps to `-inf`.
pub fn log10_abs(x: &Float) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let (m, e) = x.to_f64_exp();
    m.abs().log10() + e as f64 * std::f64::consts::LOG10_2
}

/// `log10 |z|` for a complex value.
pub fn log10_abs_c(z: &Complex) -> f64 {
    let a = log10_abs(z.real());
    let b = log10_abs(z.imag());
    let hi = a.max(b);
    if hi == f64::NEG_INFINITY {
        return hi;
    }
    let lo = a.min(b);
    hi + 0.5 * (1.0 + 10f64.powf(2.0 * (lo - hi))).log10()
}

/// Fixed notation for moderate exponents, scientific otherwise.
pub fn format_float(x: &Float, sig: usize) -> String {
    let sig = sig.max(1);
    let (neg, digits, exp) = x.to_sign_string_exp_round(10, Some(sig), Round::Nearest);
    let sign = if neg { "-" } else { "" };
    let Some(exp) = exp else {
        return format!("{sign}{digits}");
    };
    let digits = digits.trim_end_matches('0');
    let digits = if digits.is_empty() { "0" } else { digits };
    // value = 0.DIGITS * 10^exp
    if (-5..=21).contains(&exp) {
        if exp <= 0 {
            let zeros = "0".repeat((-exp) as usize);
            format!("{sign}0.{zeros}{digits}")
        } else {
            let e = exp as usize;
            if digits.len() <= e {
                format!("{sign}{digits}{}", "0".repeat(e - digits.len()))
            } else {
                format!("{sign}{}.{}", &digits[..e], &digits[e..])
            }
        }
    } else {
        let (head, tail) = digits.split_at(1);
        let tail = if tail.is_empty() {
            String::new()
        } else {
            format!(".{tail}")
        };
        format!("{sign}{head}{tail}e{}", exp - 1)
    }
}
