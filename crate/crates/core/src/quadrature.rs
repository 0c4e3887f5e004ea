//! Double-exponential (tanh-sinh) quadrature on straight complex segments and
//! the contour representations of `S_k` built on it.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use rug::float::Constant;
use rug::ops::Pow;
use rug::{Complex, Float};

use crate::error::{Error, Result};
use crate::polylog::{CutSide, li_value};
use crate::precision::{ApComplex, PrecisionCtx, log10_abs_c};

pub const MAX_LEVEL: u32 = 12;
const MIN_LEVEL: u32 = 3;
const MAX_BISECTIONS: u32 = 6;
const PHASE_JUMP: f64 = std::f64::consts::FRAC_PI_2;

#[derive(Clone, Debug, PartialEq)]
pub struct Segment {
    pub z0: Complex,
    pub z1: Complex,
}

impl Segment {
    pub fn new(z0: Complex, z1: Complex) -> Result<Self> {
        if z0 == z1 {
            return Err(Error::Domain("degenerate segment".into()));
        }
        Ok(Self { z0, z1 })
    }
}

/// A quadrature node together with its exact offsets from both endpoints of
/// the original segment, so integrands can resolve endpoint singularities.
#[derive(Clone, Debug)]
pub struct QuadPoint {
    pub z: Complex,
    pub from_start: Complex,
    pub to_end: Complex,
}

/// Integrand value plus the arguments of any logarithms it takes; those are
/// checked for continuity between neighbouring nodes.
#[derive(Clone, Debug)]
pub struct Sample {
    pub value: Complex,
    pub phases: Vec<f64>,
}

impl From<Complex> for Sample {
    fn from(value: Complex) -> Self {
        Sample {
            value,
            phases: Vec::new(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct QuadResult {
    pub value: ApComplex,
    /// Difference between the last two levels.
    pub error_estimate: Float,
    pub levels_used: u32,
}

/// Node index, the samples at `+t` and `-t`, and the weight.
type NodeEval = (u64, Option<Sample>, Option<Sample>, Float);

/// One abscissa of the half-line table: `t = k h` with `k ≥ 0`.
struct Node {
    /// `(1 - x)/2` for the node at `+t`; equals `(1 + x)/2` at `-t`.
    delta: Float,
    /// `(π/2) cosh t · (1 - x²)`.
    weight: Float,
}

type NodeTable = Arc<Vec<Node>>;
static NODES: Mutex<Option<HashMap<(u32, u32), NodeTable>>> = Mutex::new(None);

/// Nodes `t = k 2^{-level}` for odd `k` (all `k ≥ 0` at level 0).
fn level_nodes(level: u32, ctx: &PrecisionCtx) -> NodeTable {
    let key = (ctx.bits(), level);
    if let Some(t) = NODES.lock().unwrap().as_ref().and_then(|m| m.get(&key)) {
        return t.clone();
    }
    let bits = ctx.bits();
    let half_pi = Float::with_val(bits, Constant::Pi) / 2u32;
    let cutoff = -(ctx.working_digits() as f64) - 10.0;
    let h = Float::with_val(bits, 1) >> level;
    let (start, step) = if level == 0 { (0u64, 1u64) } else { (1, 2) };
    let mut out = Vec::new();
    let mut k = start;
    loop {
        let t = Float::with_val(bits, &h * k);
        let u = Float::with_val(bits, t.sinh_ref()) * &half_pi;
        let e = Float::with_val(bits, (u * 2u32).exp_ref());
        let delta = Float::with_val(bits, 1) / (e + 1u32);
        let one_minus_x2 =
            Float::with_val(bits, &delta * (Float::with_val(bits, 1) - &delta)) * 4u32;
        let weight = Float::with_val(bits, t.cosh_ref()) * &half_pi * one_minus_x2;
        let lw = crate::precision::log10_abs(&weight);
        if lw < cutoff || delta.is_zero() {
            break;
        }
        out.push(Node { delta, weight });
        k += step;
    }
    let table = Arc::new(out);
    NODES
        .lock()
        .unwrap()
        .get_or_insert_with(HashMap::new)
        .insert(key, table.clone());
    table
}

/// `∫ f(z) dz` along `seg`.
pub fn integrate_segment<F>(f: F, seg: &Segment, ctx: &PrecisionCtx) -> Result<QuadResult>
where
    F: Fn(&QuadPoint) -> Result<Complex> + Sync,
{
    integrate_tracked(|p| f(p).map(Sample::from), seg, ctx)
}

/// As [`integrate_segment`], with log-phase continuity enforced by bisection.
pub fn integrate_tracked<F>(f: F, seg: &Segment, ctx: &PrecisionCtx) -> Result<QuadResult>
where
    F: Fn(&QuadPoint) -> Result<Sample> + Sync,
{
    let bits = ctx.bits();
    let zero = ctx.zero();
    let total = Complex::with_val(bits, &seg.z1 - &seg.z0);
    let r = piece(&f, seg, &zero, &total, ctx, 0)?;
    let value = ApComplex::new(r.0, ctx.digits(), "integrate_segment")?;
    Ok(QuadResult {
        value,
        error_estimate: r.1,
        levels_used: r.2,
    })
}

/// Integrates the sub-segment `[z0 + a, z0 + b]` of `seg`, where `a`, `b` are
/// offsets from the original start and `total = z1 - z0`.
fn piece<F>(
    f: &F,
    seg: &Segment,
    a: &Complex,
    b: &Complex,
    ctx: &PrecisionCtx,
    depth: u32,
) -> Result<(Complex, Float, u32)>
where
    F: Fn(&QuadPoint) -> Result<Sample> + Sync,
{
    let bits = ctx.bits();
    let total = Complex::with_val(bits, &seg.z1 - &seg.z0);
    let len = Complex::with_val(bits, b - a);
    let point = |delta: &Float, from_low: bool| -> QuadPoint {
        // offset from the piece endpoint on the chosen side
        let off = Complex::with_val(bits, &len * delta);
        let (from_start, to_end) = if from_low {
            let rest = Complex::with_val(bits, &total - a);
            (Complex::with_val(bits, a + &off), rest - &off)
        } else {
            let rest = Complex::with_val(bits, &total - b);
            (Complex::with_val(bits, b - &off), rest + &off)
        };
        let z = if from_low {
            Complex::with_val(bits, &seg.z0 + &from_start)
        } else {
            Complex::with_val(bits, &seg.z1 - &to_end)
        };
        QuadPoint {
            z,
            from_start,
            to_end,
        }
    };

    let mut sum = ctx.zero(); // Σ w f over all nodes so far (unscaled by h)
    let mut prev: Option<Complex> = None;
    let mut samples: Vec<(Float, Sample)> = Vec::new(); // (signed t-order key, sample)
    let target = -(ctx.digits() as f64) - 2.0;
    for level in 0..=MAX_LEVEL {
        let nodes = level_nodes(level, ctx);
        let step = if level == 0 { 1u64 } else { 2 };
        let first = if level == 0 { 0u64 } else { 1 };
        let evals: Vec<Result<NodeEval>> = nodes
            .par_iter()
            .enumerate()
            .map(|(i, node)| {
                let k = first + step * i as u64;
                // node at +t sits near the high end; its mirror near the low end
                let hi = f(&point(&node.delta, false))?;
                let lo = if k == 0 {
                    None
                } else {
                    Some(f(&point(&node.delta, true))?)
                };
                Ok((k, Some(hi), lo, node.weight.clone()))
            })
            .collect();
        let h = Float::with_val(bits, 1) >> level;
        for e in evals {
            let (k, hi, lo, w) = e?;
            let t_key = Float::with_val(bits, &h * k);
            for (sgn, s) in [(1, hi), (-1, lo)] {
                let Some(s) = s else { continue };
                if !crate::precision::is_finite(&s.value) {
                    return Err(Error::NonFinite("quadrature integrand".into()));
                }
                sum += Complex::with_val(bits, &s.value * &w);
                let key = if sgn > 0 {
                    t_key.clone()
                } else {
                    -t_key.clone()
                };
                samples.push((key, s));
            }
        }
        // level estimate: h · Σ w f · (b - a)/2
        let est = Complex::with_val(bits, &sum * &h) * &len / 2u32;
        if level >= MIN_LEVEL && phase_violation(&mut samples) {
            if depth >= MAX_BISECTIONS {
                return Err(Error::BranchJump(format!(
                    "log phase jumps by more than π/2 after {MAX_BISECTIONS} bisections"
                )));
            }
            let mid = Complex::with_val(bits, a + b) / 2u32;
            let (l, r) = rayon::join(
                || piece(f, seg, a, &mid, ctx, depth + 1),
                || piece(f, seg, &mid, b, ctx, depth + 1),
            );
            let (l, r) = (l?, r?);
            let err = Float::with_val(bits, &l.1 + &r.1);
            return Ok((l.0 + r.0, err, l.2.max(r.2)));
        }
        if let Some(p) = prev.as_ref() {
            let diff = Complex::with_val(bits, &est - p);
            let scale = log10_abs_c(&est).max(0.0);
            if level >= MIN_LEVEL && log10_abs_c(&diff) - scale < target {
                let err = Float::with_val(bits, diff.abs_ref());
                return Ok((est, err, level));
            }
        }
        prev = Some(est);
    }
    Err(Error::NoConvergence(format!(
        "tanh-sinh level cap {MAX_LEVEL} reached"
    )))
}

/// Whether some pair of neighbouring nodes has tracked phases more than π/2 apart.
fn phase_violation(samples: &mut [(Float, Sample)]) -> bool {
    samples.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
    samples.windows(2).any(|w| {
        w[0].1
            .phases
            .iter()
            .zip(&w[1].1.phases)
            .any(|(p, q)| (p - q).abs() > PHASE_JUMP)
    })
}

fn log1p_c(x: &Complex, bits: u32) -> Complex {
    // log(1+x) without losing the small-|x| digits
    let lg = log10_abs_c(x);
    if lg < -1.0 {
        let mut sum = Complex::new(bits);
        let mut p = Complex::with_val(bits, x);
        let n_max = ((bits as f64 * std::f64::consts::LOG10_2 + 2.0) / -lg).ceil() as u32 + 1;
        for n in 1..=n_max {
            let term = Complex::with_val(bits, &p / n);
            if n % 2 == 1 {
                sum += term;
            } else {
                sum -= term;
            }
            p *= x;
        }
        return sum;
    }
    Complex::with_val(bits, x + 1u32).ln()
}

fn arg_f64(z: &Complex) -> f64 {
    let (re, im) = (z.real().to_f64(), z.imag().to_f64());
    if re.is_finite() && im.is_finite() && (re != 0.0 || im != 0.0) {
        im.atan2(re)
    } else {
        // outside f64 range: fall back to the exact argument
        Float::with_val(53, z.arg_ref()).to_f64()
    }
}

/// `(2i/(k-2)!) [∫_{iw}^{i} + ∫_{i}^{i/w}] log^{k-2}(±c z/(1+z²)) log(z/i)/(1+z²) dz`
/// with `c = (1-w²)/(iw)`; equals `Σ (-1)^n x^{2n+1}/((2n+1)^k C(2n,n))`,
/// `x = (1-w²)/w`.
pub fn genchen_contour(k: u32, w: &Complex, ctx: &PrecisionCtx) -> Result<ApComplex> {
    if !(2..=6).contains(&k) {
        return Err(Error::Domain(format!(
            "contour weight k must be in 2..=6, got {k}"
        )));
    }
    if *w.real() <= 0 {
        return Err(Error::Domain(
            "contour needs Im(iw) > 0 and Im(i/w) > 0".into(),
        ));
    }
    let bits = ctx.bits();
    let w = Complex::with_val(bits, w);
    let i = Complex::with_val(bits, (0, 1));
    let one_minus_w2 = Complex::with_val(bits, 1 - Complex::with_val(bits, w.square_ref()));
    if one_minus_w2.real().is_zero() && one_minus_w2.imag().is_zero() {
        return ApComplex::new(ctx.zero(), ctx.digits(), "genchen_contour");
    }
    let c = Complex::with_val(bits, &one_minus_w2 / Complex::with_val(bits, &i * &w));
    let iw = Complex::with_val(bits, &i * &w);
    let i_over_w = Complex::with_val(bits, &i / &w);
    let p = k - 2;

    let integrand = |scale: Complex, end_at_i: bool| {
        let i = i.clone();
        move |q: &QuadPoint| -> Result<Sample> {
            // z - i from the offset to keep the endpoint singularity resolved
            let zmi = if end_at_i {
                -Complex::with_val(bits, &q.to_end)
            } else {
                q.from_start.clone()
            };
            let zpi = Complex::with_val(bits, &q.z + &i);
            let one_plus_z2 = Complex::with_val(bits, &zmi * &zpi);
            let log_zi = log1p_c(&Complex::with_val(bits, &zmi / &i), bits);
            let mut value = Complex::with_val(bits, &log_zi / &one_plus_z2);
            let mut phases = vec![arg_f64(&Complex::with_val(bits, &q.z / &i))];
            if p > 0 {
                let arg = Complex::with_val(bits, &scale * &q.z) / &one_plus_z2;
                phases.push(arg_f64(&arg));
                let lg = arg.ln();
                value *= Complex::with_val(bits, lg.pow(p));
            }
            Ok(Sample { value, phases })
        }
    };

    let seg_a = Segment::new(iw, i.clone())?;
    let seg_b = Segment::new(i.clone(), i_over_w)?;
    let neg_c = Complex::with_val(bits, -&c);
    let (ra, rb) = rayon::join(
        || integrate_tracked(integrand(c.clone(), true), &seg_a, ctx),
        || integrate_tracked(integrand(neg_c.clone(), false), &seg_b, ctx),
    );
    let total = Complex::with_val(bits, ra?.value.value() + rb?.value.value());
    let mut fact = Float::with_val(bits, 1);
    for j in 2..=p {
        fact *= j;
    }
    let two_i = Complex::with_val(bits, (0, 2));
    let v = Complex::with_val(bits, &two_i * &total) / fact;
    ApComplex::new(v, ctx.digits(), "genchen_contour")
}

/// The golden-ratio instance of [`genchen_contour`] at `k = 3`: `w = 1/φ`,
/// where `c = -i`; equals `S_3(-1)`.
pub fn chen2_contour(ctx: &PrecisionCtx) -> Result<ApComplex> {
    let bits = ctx.bits();
    let sqrt5 = Float::with_val(bits, 5).sqrt();
    let w = Complex::with_val(bits, (Float::with_val(bits, &sqrt5 - 1u32) / 2u32, 0));
    genchen_contour(3, &w, ctx)
}

/// `2 ∫_0^1 [Li_2(x/(1+x²)) - Li_2(-x/(1+x²))] / (1+x²) dx`; equals `S_3(1)`.
pub fn chen1_integral(ctx: &PrecisionCtx) -> Result<ApComplex> {
    let bits = ctx.bits();
    let seg = Segment::new(ctx.zero(), ctx.one())?;
    let r = integrate_segment(|q| chen1_integrand(&q.z, ctx), &seg, ctx)?;
    let v = Complex::with_val(bits, r.value.value() * 2u32);
    ApComplex::new(v, ctx.digits(), "chen1_integral")
}

pub(crate) fn chen1_integrand(x: &Complex, ctx: &PrecisionCtx) -> Result<Complex> {
    let bits = ctx.bits();
    let den = Complex::with_val(bits, x.square_ref()) + 1u32;
    let u = Complex::with_val(bits, x / &den);
    let a = li_value(2, &u, CutSide::Auto, ctx)?;
    let b = li_value(2, &Complex::with_val(bits, -&u), CutSide::Auto, ctx)?;
    Ok(Complex::with_val(bits, &a - &b) / den)
}
