//! Exact Bernoulli numbers, cached process-wide.
//!
//! Even-index values come from tangent numbers (Brent–Harvey recurrence), so
//! only integer arithmetic is needed to build the table.

use std::sync::RwLock;

use rug::{Float, Integer, Rational};

// B_0, B_2, B_4, ...
static EVEN: RwLock<Vec<Rational>> = RwLock::new(Vec::new());

/// Makes sure `B_n` for every `n <= max_index` is cached.
///
/// Call this before fanning out parallel work so workers only ever take the read lock.
pub fn ensure(max_index: usize) {
    let needed = max_index / 2 + 1;
    if EVEN.read().expect("bernoulli table poisoned").len() >= needed {
        return;
    }
    let mut table = EVEN.write().expect("bernoulli table poisoned");
    if table.len() >= needed {
        return;
    }
    let target = needed.max(2 * table.len()).max(64);
    *table = even_bernoulli(target);
}

/// `B_n` with the convention `B_1 = -1/2`.
pub fn bernoulli(n: usize) -> Rational {
    match n {
        0 => Rational::from(1),
        1 => Rational::from((-1, 2)),
        _ if n % 2 == 1 => Rational::new(),
        _ => {
            ensure(n);
            EVEN.read().expect("bernoulli table poisoned")[n / 2].clone()
        }
    }
}

pub fn bernoulli_float(n: usize, prec: u32) -> Float {
    Float::with_val(prec, bernoulli(n))
}

/// Number of cached even-index values.
pub fn cached_len() -> usize {
    EVEN.read().expect("bernoulli table poisoned").len()
}

fn even_bernoulli(count: usize) -> Vec<Rational> {
    let m = count.saturating_sub(1);
    let mut out = Vec::with_capacity(count);
    out.push(Rational::from(1));
    if m == 0 {
        return out;
    }
    // tangent numbers T_1..T_m (index 0 unused)
    let mut t = vec![Integer::new(); m + 1];
    t[1] = Integer::from(1);
    for k in 2..=m {
        t[k] = Integer::from(&t[k - 1] * (k as u64 - 1));
    }
    for k in 2..=m {
        for j in k..=m {
            let a = Integer::from(&t[j - 1] * (j - k) as u64);
            let b = Integer::from(&t[j] * (j - k + 2) as u64);
            t[j] = a + b;
        }
    }
    for (k, tk) in t.iter().enumerate().skip(1) {
        // B_{2k} = (-1)^{k-1} 2k T_k / (4^k (4^k - 1))
        let four_k = Integer::from(1) << (2 * k as u32);
        let den = &four_k * (four_k.clone() - 1u32);
        let num = Integer::from(tk * (2 * k as u64));
        let mut b = Rational::from((num, den));
        if k % 2 == 0 {
            b = -b;
        }
        out.push(b);
    }
    out
}
