//! Identity catalog and the engine that checks each identity numerically.

pub mod catalog;

use std::fmt;
use std::time::Instant;

use rayon::prelude::*;
use rug::{Complex, Float};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::expr::{Expr, eval_value};
use crate::precision::{ApComplex, PrecisionCtx, format_float, log10_abs_c};
use crate::series::{Theorem3Param, chudnovsky_sum, s_value, theorem3_lhs, theorem3_rhs};

pub use catalog::{THM3_SEED, builtin_catalog, thm3_samples};

/// Left side of an identity.
#[derive(Clone, Debug)]
pub enum Lhs {
    /// `factor · S_k(z)`.
    Series {
        k: u32,
        z: Expr,
        factor: Expr,
    },
    /// `Σ_{n≥1} 1/(n³ C(3n,n) 2ⁿ)`.
    Chudnovsky,
    Expr(Expr),
    /// The `Li_2`/`Li_3` evaluation at each sampled `w`.
    Theorem3Family(Vec<W3Sample>),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum W3Sample {
    Real(f64),
    /// `e^{iθ}`.
    Unimodular(f64),
    Interior(f64, f64),
}

impl W3Sample {
    pub fn to_complex(self, bits: u32) -> Complex {
        match self {
            W3Sample::Real(x) => Complex::with_val(bits, (x, 0)),
            W3Sample::Unimodular(theta) => {
                let (s, c) = Float::with_val(bits, theta).sin_cos(Float::new(bits));
                Complex::with_val(bits, (c, s))
            }
            W3Sample::Interior(a, b) => Complex::with_val(bits, (a, b)),
        }
    }
}

impl fmt::Display for W3Sample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            W3Sample::Real(x) => write!(f, "{x:e}"),
            W3Sample::Unimodular(t) => write!(f, "e^(i{t:e})"),
            W3Sample::Interior(a, b) => write!(f, "{a:e}{b:+e}i"),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Rhs {
    Closed(Expr),
    Theorem3Family,
}

#[derive(Clone, Debug)]
pub struct Identity {
    pub id: String,
    pub description: String,
    pub lhs: Lhs,
    pub rhs: Rhs,
    pub weight: u32,
    /// `None` for parametric families.
    pub level: Option<u32>,
    pub anchor: String,
    pub min_digits: u32,
    /// `w` for which the contour integral reproduces the left side, if any.
    pub contour_w: Option<Expr>,
}

impl Identity {
    pub fn rhs_expr(&self) -> Option<&Expr> {
        match &self.rhs {
            Rhs::Closed(e) => Some(e),
            Rhs::Theorem3Family => None,
        }
    }

    /// Copy with the `index`-th rational coefficient of the right side replaced.
    pub fn with_rhs_coefficient(&self, index: usize, value: rug::Rational) -> Option<Identity> {
        let e = self.rhs_expr()?.with_coefficient(index, value)?;
        Some(Identity {
            rhs: Rhs::Closed(e),
            ..self.clone()
        })
    }
}

impl fmt::Display for Lhs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Lhs::Series { k, z, factor } => write!(f, "{factor}·S{k}({z})"),
            Lhs::Chudnovsky => f.write_str("chudnovsky"),
            Lhs::Expr(e) => write!(f, "{e}"),
            Lhs::Theorem3Family(ws) => {
                let parts: Vec<String> = ws.iter().map(W3Sample::to_string).collect();
                write!(f, "thm3[{}]", parts.join(";"))
            }
        }
    }
}

impl fmt::Display for Rhs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rhs::Closed(e) => write!(f, "{e}"),
            Rhs::Theorem3Family => f.write_str("thm3"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub id: String,
    pub status: Status,
    pub digits_agreed: f64,
    pub abs_diff: String,
    pub lhs_value: String,
    pub rhs_value: String,
    pub precision_used: u32,
    #[serde(skip)]
    pub elapsed_ms: u64,
    pub anchor: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

struct Agreement {
    lhs: Complex,
    rhs: Complex,
    diff: Float,
    digits: f64,
}

/// `-log10(|lhs - rhs| / max(1, |rhs|))`, capped at the requested digits.
fn agreement(lhs: Complex, rhs: Complex, ctx: &PrecisionCtx) -> Agreement {
    let bits = ctx.bits();
    let d = Complex::with_val(bits, &lhs - &rhs);
    let diff = Float::with_val(bits, d.abs_ref());
    let rel = log10_abs_c(&d) - log10_abs_c(&rhs).max(0.0);
    let cap = ctx.digits() as f64;
    let digits = if rel.is_finite() {
        (-rel).min(cap)
    } else {
        cap
    };
    Agreement {
        lhs,
        rhs,
        diff,
        digits: (digits * 100.0).round() / 100.0,
    }
}

fn evaluate(id: &Identity, ctx: &PrecisionCtx) -> Result<Agreement> {
    let bits = ctx.bits();
    match (&id.lhs, &id.rhs) {
        (Lhs::Theorem3Family(ws), Rhs::Theorem3Family) => {
            let mut worst: Option<Agreement> = None;
            for w in ws {
                let p = Theorem3Param::new(w.to_complex(bits))?;
                let a = agreement(
                    theorem3_lhs(&p, ctx)?.into_value(),
                    theorem3_rhs(&p, ctx)?.into_value(),
                    ctx,
                );
                if worst.as_ref().is_none_or(|w| a.digits < w.digits) {
                    worst = Some(a);
                }
            }
            worst.ok_or_else(|| Error::Domain("empty parameter family".into()))
        }
        (Lhs::Theorem3Family(_), _) | (_, Rhs::Theorem3Family) => Err(Error::Domain(
            "parametric family sides must be paired".into(),
        )),
        (lhs, Rhs::Closed(rhs)) => {
            let l = match lhs {
                Lhs::Series { k, z, factor } => {
                    let z = eval_value(z, ctx)?;
                    eval_value(factor, ctx)? * s_value(*k, &z, ctx)?
                }
                Lhs::Chudnovsky => chudnovsky_sum(ctx)?.into_value(),
                Lhs::Expr(e) => eval_value(e, ctx)?,
                Lhs::Theorem3Family(_) => unreachable!(),
            };
            Ok(agreement(l, eval_value(rhs, ctx)?, ctx))
        }
    }
}

/// Evaluates both sides of `id` and compares them. Errors become `Status::Error`.
pub fn verify(id: &Identity, ctx: &PrecisionCtx) -> VerificationReport {
    let start = Instant::now();
    let out = evaluate(id, ctx);
    let elapsed_ms = start.elapsed().as_millis() as u64;
    let sig = ctx.digits() as usize;
    match out {
        Ok(a) => {
            let need = id.min_digits.min(ctx.digits()) as f64;
            VerificationReport {
                id: id.id.clone(),
                status: if a.digits >= need {
                    Status::Pass
                } else {
                    Status::Fail
                },
                digits_agreed: a.digits,
                abs_diff: format_float(&a.diff, 6),
                lhs_value: complex_string(&a.lhs, sig),
                rhs_value: complex_string(&a.rhs, sig),
                precision_used: ctx.digits(),
                elapsed_ms,
                anchor: id.anchor.clone(),
                error: None,
            }
        }
        Err(e) => VerificationReport {
            id: id.id.clone(),
            status: Status::Error,
            digits_agreed: 0.0,
            abs_diff: String::new(),
            lhs_value: String::new(),
            rhs_value: String::new(),
            precision_used: ctx.digits(),
            elapsed_ms,
            anchor: id.anchor.clone(),
            error: Some(e.to_string()),
        },
    }
}

fn complex_string(z: &Complex, sig: usize) -> String {
    match ApComplex::new(z.clone(), sig as u32, "report") {
        Ok(v) => v.chopped().to_string_digits(sig),
        Err(_) => z.to_string_radix(10, Some(sig)),
    }
}

/// Verifies `catalog` on a pool of `workers` threads; reports keep catalog order.
pub fn verify_catalog(
    catalog: &[Identity],
    ctx: &PrecisionCtx,
    workers: usize,
) -> Result<Vec<VerificationReport>> {
    if workers == 0 {
        return Err(Error::Domain("workers must be at least 1".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Domain(e.to_string()))?;
    Ok(pool.install(|| catalog.par_iter().map(|id| verify(id, ctx)).collect()))
}

pub fn verify_all(ctx: &PrecisionCtx, workers: usize) -> Result<Vec<VerificationReport>> {
    verify_catalog(&builtin_catalog(), ctx, workers)
}

/// SHA-256 over the textual form of every entry.
pub fn catalog_hash(catalog: &[Identity]) -> String {
    let mut h = Sha256::new();
    for id in catalog {
        let level = id.level.map_or_else(|| "-".to_string(), |l| l.to_string());
        h.update(format!(
            "{}|{}|{}|{}|{}|{}\n",
            id.id, id.lhs, id.rhs, id.weight, level, id.min_digits
        ));
    }
    hex::encode(h.finalize())
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportMetadata {
    pub tool_version: String,
    pub digits: u32,
    pub catalog_hash: String,
}

/// Serialized batch: values first, wall-clock timings in their own section.
#[derive(Clone, Debug, Serialize)]
pub struct ReportDocument {
    pub metadata: ReportMetadata,
    pub reports: Vec<VerificationReport>,
    pub timing: std::collections::BTreeMap<String, u64>,
}

impl ReportDocument {
    pub fn new(reports: Vec<VerificationReport>, digits: u32, catalog: &[Identity]) -> Self {
        let timing = reports
            .iter()
            .map(|r| (r.id.clone(), r.elapsed_ms))
            .collect();
        ReportDocument {
            metadata: ReportMetadata {
                tool_version: env!("CARGO_PKG_VERSION").into(),
                digits,
                catalog_hash: catalog_hash(catalog),
            },
            reports,
            timing,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionCtx {
        PrecisionCtx::new(30).unwrap()
    }

    fn find(id: &str) -> Identity {
        builtin_catalog().into_iter().find(|e| e.id == id).unwrap()
    }

    #[test]
    fn catalog_has_unique_ids() {
        let cat = builtin_catalog();
        assert_eq!(cat.len(), 21);
        let mut ids: Vec<&str> = cat.iter().map(|e| e.id.as_str()).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), 21);
    }

    #[test]
    fn s3_4_rhs_text() {
        assert_eq!(
            find("s3_4").rhs.to_string(),
            "(4·𝒢 + -1/8·π·(λ)^2 + -1/32·(π)^3)"
        );
    }

    #[test]
    fn s3_4_passes() {
        let r = verify(&find("s3_4"), &ctx());
        assert_eq!(r.status, Status::Pass, "{r:?}");
    }

    #[test]
    fn corrupted_chudnovsky_fails() {
        let id = find("chudnovsky");
        let k = id
            .rhs_expr()
            .unwrap()
            .coefficients()
            .iter()
            .position(|c| *c == rug::Rational::from((-33, 16)))
            .unwrap();
        let bad = id
            .with_rhs_coefficient(k, rug::Rational::from((-34, 16)))
            .unwrap();
        let r = verify(&bad, &ctx());
        assert_eq!(r.status, Status::Fail);
        assert!(r.digits_agreed <= 3.0);
    }

    #[test]
    fn error_status_on_bad_identity() {
        let id = Identity {
            rhs: Rhs::Closed(crate::expr::sqrt(-1, 1)),
            ..find("s3_4")
        };
        let r = verify(&id, &ctx());
        assert_eq!(r.status, Status::Error);
        assert!(r.error.is_some());
    }

    #[test]
    fn empty_catalog_gives_empty_report() {
        assert!(verify_catalog(&[], &ctx(), 2).unwrap().is_empty());
    }

    #[test]
    fn samples_are_admissible() {
        let ws = thm3_samples();
        assert_eq!(ws.len(), 20);
        assert!(ws[..3].iter().all(|w| matches!(w, W3Sample::Real(_))));
        assert!(
            ws[3..6]
                .iter()
                .all(|w| matches!(w, W3Sample::Unimodular(_)))
        );
        for w in &ws {
            assert!(Theorem3Param::new(w.to_complex(128)).is_ok(), "{w}");
        }
    }
}
