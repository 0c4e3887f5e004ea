use rug::ops::Pow;
use rug::{Complex, Float};

use crate::error::{Error, Result};
use crate::precision::{ApComplex, PrecisionCtx, log10_abs_c};

pub const MAX_DEPTH: usize = 4;
pub const MAX_WEIGHT: u32 = 6;

/// Lowest term count tried at unit modulus.
const UNIT_START: u64 = 1 << 10;
/// Hard cap on terms at unit modulus.
const UNIT_CAP: u64 = 1 << 22;
/// Below this many agreeing digits the unit-modulus sum is an error.
const UNIT_MIN_DIGITS: u32 = 3;

/// `Li_{s_1..s_m}(z_1..z_m) = Σ_{n_1>…>n_m≥1} Π z_j^{n_j} / n_j^{s_j}`.
#[derive(Clone, Debug, PartialEq)]
pub struct MplSpec {
    pub weights: Vec<u32>,
    pub args: Vec<Complex>,
}

impl MplSpec {
    pub fn new(weights: Vec<u32>, args: Vec<Complex>) -> Result<Self> {
        if weights.is_empty() || weights.len() != args.len() {
            return Err(Error::Domain(format!(
                "mpl needs matching nonempty weights/args, got {} and {}",
                weights.len(),
                args.len()
            )));
        }
        if weights.contains(&0) {
            return Err(Error::Domain("mpl weights must be positive".into()));
        }
        Ok(Self { weights, args })
    }

    pub fn depth(&self) -> usize {
        self.weights.len()
    }

    pub fn weight(&self) -> u32 {
        self.weights.iter().sum()
    }

    /// Partial products `z_1 ⋯ z_j`.
    pub fn products(&self) -> Vec<Complex> {
        let mut out: Vec<Complex> = Vec::with_capacity(self.args.len());
        for z in &self.args {
            let next = match out.last() {
                Some(p) => Complex::with_val(p.prec().0.max(z.prec().0), p * z),
                None => z.clone(),
            };
            out.push(next);
        }
        out
    }

    /// Every partial product lies in the closed unit disk and `(s_1, z_1) ≠ (1, 1)`.
    pub fn is_convergent(&self) -> bool {
        let y = self.products();
        if y.iter().any(|p| log10_abs_c(p) > 1e-12) {
            return false;
        }
        let lead_is_one = self.args[0].imag().is_zero() && *self.args[0].real() == 1;
        !(self.weights[0] == 1 && lead_is_one)
    }

    fn max_modulus_log10(&self) -> f64 {
        self.products()
            .iter()
            .map(log10_abs_c)
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Nested-sum evaluation of an MPL.
///
/// With every partial product strictly inside the unit disk the tail is
/// bounded geometrically. When the leading product has modulus one the sum is
/// repeated with doubled term counts and the reported digits are those on
/// which the last two passes agree.
pub fn mpl_direct(spec: &MplSpec, ctx: &PrecisionCtx) -> Result<ApComplex> {
    if spec.depth() > MAX_DEPTH || spec.weight() > MAX_WEIGHT + 2 {
        return Err(Error::Domain(format!(
            "mpl depth {} / weight {} beyond supported range",
            spec.depth(),
            spec.weight()
        )));
    }
    if !spec.is_convergent() {
        return Err(Error::Divergent(format!("mpl {:?}", spec.weights)));
    }
    let lr = spec.max_modulus_log10();
    if lr < -1e-9 {
        let r = 10f64.powf(lr);
        let n = geometric_cutoff(r, spec.depth(), ctx);
        let v = NestedSum::new(spec, ctx).advance_to(n).clone();
        return ApComplex::new(v, ctx.digits(), "mpl_direct");
    }
    let mut acc = NestedSum::new(spec, ctx);
    let mut n = UNIT_START;
    let mut prev = acc.advance_to(n).clone();
    loop {
        n *= 2;
        let cur = acc.advance_to(n).clone();
        let diff = Complex::with_val(ctx.bits(), &cur - &prev);
        let scale = log10_abs_c(&cur).max(0.0);
        let agreed = (scale - log10_abs_c(&diff)).floor();
        let agreed = if agreed.is_finite() {
            agreed.max(0.0) as u32
        } else {
            ctx.digits()
        };
        if agreed >= ctx.digits() || n >= UNIT_CAP {
            if agreed < UNIT_MIN_DIGITS {
                return Err(Error::unreachable(
                    "mpl_direct at unit modulus",
                    ctx.digits(),
                ));
            }
            return ApComplex::new(cur, agreed.min(ctx.digits()), "mpl_direct");
        }
        prev = cur;
    }
}

/// Smallest N with `r^{N+1} (N+1)^{max(m-2,0)} / (1-q) < eps`.
fn geometric_cutoff(r: f64, depth: usize, ctx: &PrecisionCtx) -> u64 {
    let target = ctx.work_log10_eps() - 2.0;
    let lr = r.log10();
    let p = depth.saturating_sub(2) as f64;
    let mut n: u64 = 8;
    loop {
        let n1 = (n + 1) as f64;
        let q = r * ((n1 + 1.0) / n1).powf(p);
        if q < 1.0 {
            let bound = n1 * lr + p * n1.log10() - (1.0 - q).log10();
            if bound < target {
                return n;
            }
        }
        n += (n / 8).max(1);
    }
}

/// Running state of the nested sum, resumable at larger cutoffs.
struct NestedSum<'a> {
    weights: &'a [u32],
    args: Vec<Complex>,
    pows: Vec<Complex>,
    // partial[j]: Σ over n_j ≤ n of the depth-j..m nested tail
    partial: Vec<Complex>,
    n: u64,
    bits: u32,
}

impl<'a> NestedSum<'a> {
    fn new(spec: &'a MplSpec, ctx: &PrecisionCtx) -> Self {
        let bits = ctx.bits();
        let m = spec.depth();
        let mut partial = vec![ctx.zero(); m + 1];
        partial[m] = ctx.one();
        Self {
            weights: &spec.weights,
            args: spec
                .args
                .iter()
                .map(|z| Complex::with_val(bits, z))
                .collect(),
            pows: vec![ctx.one(); m],
            partial,
            n: 0,
            bits,
        }
    }

    fn advance_to(&mut self, n_max: u64) -> &Complex {
        let bits = self.bits;
        while self.n < n_max {
            self.n += 1;
            let nf = Float::with_val(bits, self.n);
            for j in 0..self.weights.len() {
                self.pows[j] *= &self.args[j];
                let denom = Float::with_val(bits, (&nf).pow(self.weights[j]));
                let term = Complex::with_val(bits, &self.pows[j] / &denom);
                // partial[j+1] still holds its value at n-1 here
                let contrib = Complex::with_val(bits, &term * &self.partial[j + 1]);
                self.partial[j] += contrib;
            }
        }
        &self.partial[0]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polylog::{CutSide, li_value};

    fn ctx() -> PrecisionCtx {
        PrecisionCtx::new(30).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex {
        Complex::with_val(ctx().bits(), (re, im))
    }

    #[test]
    fn depth_one_matches_li() {
        let spec = MplSpec::new(vec![2], vec![c(0.5, 0.0)]).unwrap();
        let v = mpl_direct(&spec, &ctx()).unwrap();
        let want = li_value(2, &c(0.5, 0.0), CutSide::Auto, &ctx()).unwrap();
        let d = Complex::with_val(ctx().bits(), v.value() - &want);
        assert!(log10_abs_c(&d) < -35.0);
        assert!(v.to_string_digits(10).starts_with("0.5822405265"));
    }

    #[test]
    fn divergent_excluded() {
        let spec = MplSpec::new(vec![1], vec![c(1.0, 0.0)]).unwrap();
        assert!(matches!(
            mpl_direct(&spec, &ctx()),
            Err(Error::Divergent(_))
        ));
        let out = MplSpec::new(vec![2], vec![c(1.1, 0.0)]).unwrap();
        assert!(!out.is_convergent());
    }

    #[test]
    fn zeta_21_is_zeta_3() {
        // ζ(2,1) = ζ(3); unit modulus, so only a handful of digits
        let spec = MplSpec::new(vec![2, 1], vec![c(1.0, 0.0), c(1.0, 0.0)]).unwrap();
        let v = mpl_direct(&spec, &ctx()).unwrap();
        assert!(v.digits() >= 3 && v.digits() < 30);
        let z3 = Float::with_val(ctx().bits(), 3).zeta();
        let d = Float::with_val(ctx().bits(), v.re() - &z3);
        assert!(d.to_f64().abs() < 10f64.powi(-(v.digits() as i32) + 1));
    }

    #[test]
    fn stuffle_depth_two() {
        // Li_1(x) Li_1(y) = Li_{1,1}(x, y) + Li_{1,1}(y, x) + Li_2(xy)
        let (x, y) = (c(0.3, 0.1), c(-0.2, 0.4));
        let lx = li_value(1, &x, CutSide::Auto, &ctx()).unwrap();
        let ly = li_value(1, &y, CutSide::Auto, &ctx()).unwrap();
        let xy = Complex::with_val(ctx().bits(), &x * &y);
        let a = mpl_direct(
            &MplSpec::new(vec![1, 1], vec![x.clone(), y.clone()]).unwrap(),
            &ctx(),
        )
        .unwrap();
        let b = mpl_direct(&MplSpec::new(vec![1, 1], vec![y, x]).unwrap(), &ctx()).unwrap();
        let l2 = li_value(2, &xy, CutSide::Auto, &ctx()).unwrap();
        let lhs = Complex::with_val(ctx().bits(), &lx * &ly);
        let rhs = Complex::with_val(ctx().bits(), a.value() + b.value()) + l2;
        let d = Complex::with_val(ctx().bits(), &lhs - &rhs);
        assert!(log10_abs_c(&d) < -35.0);
    }
}
