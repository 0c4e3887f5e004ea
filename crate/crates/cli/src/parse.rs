//! Input grammar for complex points: `a/b`, `x+yi`, `x-yi`, `exp(i*pi*p/q)`.

use rug::float::Constant;
use rug::{Complex, Float, Rational};

fn real_part(s: &str, bits: u32) -> Result<Float, String> {
    if s.contains('/') {
        let q: Rational = s.parse().map_err(|_| format!("bad rational `{s}`"))?;
        return Ok(Float::with_val(bits, q));
    }
    let parsed = Float::parse(s).map_err(|_| format!("bad number `{s}`"))?;
    Ok(Float::with_val(bits, parsed))
}

/// Coefficient of `i`: empty or a lone sign stands for ±1.
fn imag_part(s: &str, bits: u32) -> Result<Float, String> {
    match s {
        "" | "+" => Ok(Float::with_val(bits, 1)),
        "-" => Ok(Float::with_val(bits, -1)),
        _ => real_part(s.trim_end_matches('*'), bits),
    }
}

pub fn parse_complex(input: &str, bits: u32) -> Result<Complex, String> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty number".into());
    }
    if let Some(inner) = s.strip_prefix("exp(").and_then(|r| r.strip_suffix(')')) {
        let q = inner
            .strip_prefix("i*pi")
            .ok_or_else(|| format!("expected exp(i*pi*p/q), got `{input}`"))?;
        let q = match q.strip_prefix('*') {
            Some(r) => r
                .parse::<Rational>()
                .map_err(|_| format!("bad rational in `{input}`"))?,
            None if q.is_empty() => Rational::from(1),
            None => return Err(format!("expected exp(i*pi*p/q), got `{input}`")),
        };
        let theta = Float::with_val(bits, Constant::Pi) * Float::with_val(bits, q);
        let (sin, cos) = theta.sin_cos(Float::new(bits));
        return Ok(Complex::with_val(bits, (cos, sin)));
    }
    let Some(body) = s.strip_suffix('i') else {
        return Ok(Complex::with_val(bits, (real_part(&s, bits)?, 0)));
    };
    // split before the last sign that is not an exponent sign
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (real_part(&body[..k], bits)?, imag_part(&body[k..], bits)?),
        None => (Float::new(bits), imag_part(body, bits)?),
    };
    Ok(Complex::with_val(bits, (re, im)))
}

pub fn parse_letters(input: &str, bits: u32) -> Result<Vec<Complex>, String> {
    if input.trim().is_empty() {
        return Ok(Vec::new());
    }
    input.split(',').map(|p| parse_complex(p, bits)).collect()
}
