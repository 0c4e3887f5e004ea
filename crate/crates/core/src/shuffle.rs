//! Exact shuffle algebra on letter sequences.
//!
//! Words are immutable values and all coefficients are exact rationals; the
//! numeric meaning of a word (a GPL) is attached by the evaluation layer.

use std::collections::BTreeMap;
use std::fmt;

use rug::Rational;

use crate::error::{Error, Result};

/// An alphabet whose zero letter has special meaning (the `dt/t` form).
pub trait ZeroAware: Clone + Ord + fmt::Debug {
    fn is_zero_letter(&self) -> bool;
    fn zero_letter() -> Self;
}

macro_rules! zero_aware_int {
    ($($t:ty),*) => {$(
        impl ZeroAware for $t {
            fn is_zero_letter(&self) -> bool { *self == 0 }
            fn zero_letter() -> Self { 0 }
        }
    )*};
}
zero_aware_int!(i8, i32, i64, u32, usize);

impl ZeroAware for crate::point::GaussRat {
    fn is_zero_letter(&self) -> bool {
        crate::point::Letter::is_zero(self)
    }
    fn zero_letter() -> Self {
        Self::default()
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word<L>(Vec<L>);

impl<L: ZeroAware> Word<L> {
    pub fn new(letters: Vec<L>) -> Self {
        Self(letters)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn letters(&self) -> &[L] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn trailing_zeros(&self) -> usize {
        self.0
            .iter()
            .rev()
            .take_while(|l| l.is_zero_letter())
            .count()
    }

    pub fn is_all_zero(&self) -> bool {
        self.0.iter().all(|l| l.is_zero_letter())
    }
}

impl<L: fmt::Debug> fmt::Debug for Word<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l:?}")?;
        }
        f.write_str(")")
    }
}

impl<L> From<Vec<L>> for Word<L> {
    fn from(v: Vec<L>) -> Self {
        Self(v)
    }
}

/// Finite ℚ-linear combination `Σ c · P^m · G(word)`.
///
/// `P` is a scalar prefactor whose meaning depends on the producer: `log z`
/// for trailing-zero removal, the constant letter `log(±c)` for integrand
/// expansions. The `u32` in each key is its power `m`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct WordCombination<L: Ord> {
    terms: BTreeMap<(Word<L>, u32), Rational>,
}

impl<L: ZeroAware> WordCombination<L> {
    pub fn new() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    pub fn single(word: Word<L>) -> Self {
        let mut c = Self::new();
        c.add_term(word, 0, Rational::from(1));
        c
    }

    /// The scalar prefactor `P` alone.
    pub fn prefactor() -> Self {
        let mut c = Self::new();
        c.add_term(Word::empty(), 1, Rational::from(1));
        c
    }

    pub fn add_term(&mut self, word: Word<L>, power: u32, coeff: Rational) {
        if coeff == 0 {
            return;
        }
        let key = (word, power);
        let entry = self.terms.entry(key.clone()).or_default();
        *entry += coeff;
        if *entry == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn add_scaled(&mut self, other: &Self, k: &Rational) {
        for ((w, m), c) in &other.terms {
            self.add_term(w.clone(), *m, Rational::from(c * k));
        }
    }

    pub fn scaled(&self, k: &Rational) -> Self {
        let mut out = Self::new();
        out.add_scaled(self, k);
        out
    }

    /// Multiplies every term by `P^shift`.
    pub fn shift_prefactor(&self, shift: u32) -> Self {
        let mut out = Self::new();
        for ((w, m), c) in &self.terms {
            out.add_term(w.clone(), m + shift, c.clone());
        }
        out
    }

    pub fn coefficient(&self, word: &Word<L>, power: u32) -> Rational {
        self.terms
            .get(&(word.clone(), power))
            .cloned()
            .unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word<L>, u32, &Rational)> {
        self.terms.iter().map(|((w, m), c)| (w, *m, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of all coefficients; for a shuffle product this is the number of
    /// interleavings counted with multiplicity.
    pub fn coefficient_sum(&self) -> Rational {
        self.terms.values().fold(Rational::new(), |acc, c| acc + c)
    }

    /// Bilinear extension of the shuffle product; prefactor powers add.
    pub fn shuffle_with(&self, other: &Self) -> Self {
        let mut out = Self::new();
        for ((u, m), a) in &self.terms {
            for ((v, n), b) in &other.terms {
                let ab = Rational::from(a * b);
                for (w, k) in shuffle(u, v).terms {
                    out.add_term(w.0, m + n + w.1, Rational::from(&ab * &k));
                }
            }
        }
        out
    }

    /// Evaluates `Σ c · P^m · g(word)` with a caller-supplied word valuation.
    pub fn evaluate<T, E>(
        &self,
        mut word_value: impl FnMut(&Word<L>) -> std::result::Result<T, E>,
        prefactor_pow: impl Fn(u32) -> T,
        from_rational: impl Fn(&Rational) -> T,
    ) -> std::result::Result<T, E>
    where
        T: std::ops::Add<Output = T> + std::ops::Mul<Output = T>,
    {
        let mut acc: Option<T> = None;
        for ((w, m), c) in &self.terms {
            let term = from_rational(c) * prefactor_pow(*m) * word_value(w)?;
            acc = Some(match acc {
                None => term,
                Some(a) => a + term,
            });
        }
        Ok(acc.unwrap_or_else(|| from_rational(&Rational::new())))
    }
}

impl<L: ZeroAware> fmt::Debug for WordCombination<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, ((w, m), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}")?;
            if *m > 0 {
                write!(f, "·P^{m}")?;
            }
            write!(f, "·G{w:?}")?;
        }
        Ok(())
    }
}

/// All order-preserving interleavings of `u` and `v`, with multiplicity.
pub fn shuffle<L: ZeroAware>(u: &Word<L>, v: &Word<L>) -> WordCombination<L> {
    let mut out = WordCombination::new();
    let mut buf = Vec::with_capacity(u.len() + v.len());
    interleave(&u.0, &v.0, &mut buf, &mut |w| {
        out.add_term(Word(w.to_vec()), 0, Rational::from(1))
    });
    out
}

fn interleave<L: Clone>(u: &[L], v: &[L], buf: &mut Vec<L>, emit: &mut impl FnMut(&[L])) {
    if u.is_empty() || v.is_empty() {
        let start = buf.len();
        buf.extend_from_slice(u);
        buf.extend_from_slice(v);
        emit(buf);
        buf.truncate(start);
        return;
    }
    buf.push(u[0].clone());
    interleave(&u[1..], v, buf, emit);
    buf.pop();
    buf.push(v[0].clone());
    interleave(u, &v[1..], buf, emit);
    buf.pop();
}

/// Rewrites `G(w; z)` for a word ending in zeros as `Σ c · log^m(z) · G(w'; z)`
/// where every `w'` ends in a nonzero letter.
///
/// Uses `G(0) · G(u 0^{r-1}) = r · G(u 0^r) + (insertions inside u)`, which
/// strictly lowers the trailing-zero count of every remaining word.
pub fn remove_trailing_zeros<L: ZeroAware>(w: &Word<L>) -> Result<WordCombination<L>> {
    if !w.is_empty() && w.is_all_zero() {
        return Err(Error::InvalidWord(
            "all-zero word has no trailing-zero-free form; use log^n(z)/n!".into(),
        ));
    }
    Ok(strip(w))
}

fn strip<L: ZeroAware>(w: &Word<L>) -> WordCombination<L> {
    let r = w.trailing_zeros();
    if r == 0 {
        return WordCombination::single(w.clone());
    }
    let v = Word(w.0[..w.len() - 1].to_vec());
    let head = w.len() - r; // length of u
    let mut acc = strip(&v).shift_prefactor(1);
    let minus_one = Rational::from(-1);
    for p in 0..head {
        let mut x = v.0.clone();
        x.insert(p, L::zero_letter());
        acc.add_scaled(&strip(&Word(x)), &minus_one);
    }
    acc.scaled(&Rational::from((1, r as u32)))
}

/// `log^{k-2}(±c · t/(1-t²)) · log t` expanded over the alphabet {-1, 0, 1}
/// in the variable `t`, with `P = log(±c)` kept as a symbolic scalar.
#[derive(Clone, Debug, PartialEq)]
pub struct IntegrandExpansion {
    pub k: u32,
    pub sign: i8,
    pub combination: WordCombination<i8>,
}

/// Expands the contour integrand into GPL words in `t = z/i`.
///
/// Uses `log(t/(1-t²)) = G(0;t) - G(1;t) - G(-1;t)`; the sign only changes
/// the meaning of the scalar prefactor. Valid wherever the principal logs
/// on both sides agree (true along the contour segments used).
pub fn integrand_word_expansion(k: u32, sign: i8) -> Result<IntegrandExpansion> {
    if !(2..=6).contains(&k) {
        return Err(Error::Domain(format!("k must lie in 2..=6, got {k}")));
    }
    if sign != 1 && sign != -1 {
        return Err(Error::Domain(format!("sign must be ±1, got {sign}")));
    }
    let mut base = WordCombination::prefactor();
    base.add_term(Word(vec![0]), 0, Rational::from(1));
    base.add_term(Word(vec![1]), 0, Rational::from(-1));
    base.add_term(Word(vec![-1]), 0, Rational::from(-1));
    let mut power = WordCombination::single(Word::empty());
    for _ in 0..k - 2 {
        power = power.shuffle_with(&base);
    }
    let combination = power.shuffle_with(&WordCombination::single(Word(vec![0])));
    Ok(IntegrandExpansion {
        k,
        sign,
        combination,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[i32]) -> Word<i32> {
        Word::new(v.to_vec())
    }

    fn one() -> Rational {
        Rational::from(1)
    }

    #[test]
    fn shuffle_of_two_letters() {
        let s = shuffle(&w(&[1]), &w(&[2]));
        assert_eq!(s.len(), 2);
        assert_eq!(s.coefficient(&w(&[1, 2]), 0), one());
        assert_eq!(s.coefficient(&w(&[2, 1]), 0), one());
    }

    #[test]
    fn empty_word_is_unit() {
        let s = shuffle(&w(&[7]), &w(&[]));
        assert_eq!(s, WordCombination::single(w(&[7])));
    }

    #[test]
    fn letter_into_pair() {
        let s = shuffle(&w(&[1]), &w(&[2, 3]));
        assert_eq!(s.len(), 3);
        for word in [[1, 2, 3], [2, 1, 3], [2, 3, 1]] {
            assert_eq!(s.coefficient(&w(&word), 0), one());
        }
    }

    #[test]
    fn repeated_letters_collect_multiplicity() {
        let s = shuffle(&w(&[0]), &w(&[0, 5]));
        assert_eq!(s.coefficient(&w(&[0, 0, 5]), 0), Rational::from(2));
        assert_eq!(s.coefficient(&w(&[0, 5, 0]), 0), one());
    }

    #[test]
    fn single_trailing_zero() {
        let c = remove_trailing_zeros(&w(&[4, 0])).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c.coefficient(&w(&[4]), 1), one());
        assert_eq!(c.coefficient(&w(&[0, 4]), 0), Rational::from(-1));
    }

    #[test]
    fn double_trailing_zero() {
        let c = remove_trailing_zeros(&w(&[4, 0, 0])).unwrap();
        assert_eq!(c.len(), 3);
        assert_eq!(c.coefficient(&w(&[4]), 2), Rational::from((1, 2)));
        assert_eq!(c.coefficient(&w(&[0, 4]), 1), Rational::from(-1));
        assert_eq!(c.coefficient(&w(&[0, 0, 4]), 0), one());
    }

    #[test]
    fn no_trailing_zero_is_identity() {
        let c = remove_trailing_zeros(&w(&[3, 0, 2])).unwrap();
        assert_eq!(c, WordCombination::single(w(&[3, 0, 2])));
    }

    #[test]
    fn all_zero_word_rejected() {
        assert!(remove_trailing_zeros(&w(&[0, 0])).is_err());
    }

    #[test]
    fn stripped_words_end_nonzero() {
        let c = remove_trailing_zeros(&w(&[1, 0, 2, 0, 0, 0])).unwrap();
        for (word, _, _) in c.iter() {
            assert_eq!(word.trailing_zeros(), 0, "{word:?}");
        }
    }

    #[test]
    fn integrand_k2_is_log_t() {
        let e = integrand_word_expansion(2, 1).unwrap();
        assert_eq!(e.combination, WordCombination::single(Word::new(vec![0i8])));
    }

    #[test]
    fn integrand_k3_words() {
        let e = integrand_word_expansion(3, 1).unwrap().combination;
        let ww = |v: &[i8]| Word::new(v.to_vec());
        assert_eq!(e.coefficient(&ww(&[0, 0]), 0), Rational::from(2));
        for word in [[-1, 0], [1, 0], [0, -1], [0, 1]] {
            assert_eq!(e.coefficient(&ww(&word), 0), Rational::from(-1));
        }
        assert_eq!(e.coefficient(&ww(&[0]), 1), one());
        assert_eq!(e.len(), 6);
    }

    #[test]
    fn integrand_range_checked() {
        assert!(integrand_word_expansion(1, 1).is_err());
        assert!(integrand_word_expansion(7, 1).is_err());
        assert!(integrand_word_expansion(3, 0).is_err());
    }

    #[test]
    fn integrand_word_lengths_fill_weight() {
        for k in 2..=6 {
            let e = integrand_word_expansion(k, -1).unwrap();
            for (word, m, _) in e.combination.iter() {
                assert_eq!(word.len() as u32 + m, k - 1);
            }
        }
    }
}
