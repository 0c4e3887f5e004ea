//! Letters for iterated integrals: exact Gaussian rationals and numeric points.

use std::cmp::Ordering;
use std::fmt;

use rug::{Complex, Rational};

/// A value usable as a polylogarithm argument or GPL letter.
///
/// `ratio`/`product` are exact for exact types, so structural conversions
/// between GPL words and MPL specs round-trip without error.
pub trait Letter: Clone + PartialEq + fmt::Debug {
    fn is_zero(&self) -> bool;
    /// `self / other`; `other` must be nonzero.
    fn ratio(&self, other: &Self) -> Self;
    fn product(&self, other: &Self) -> Self;
    fn one() -> Self;
    fn zero() -> Self;
    fn to_complex(&self, prec: u32) -> Complex;
}

/// Exact `re + im·i` with rational parts.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussRat {
    pub re: Rational,
    pub im: Rational,
}

impl GaussRat {
    pub fn new(re: impl Into<Rational>, im: impl Into<Rational>) -> Self {
        Self {
            re: re.into(),
            im: im.into(),
        }
    }

    pub fn real(re: impl Into<Rational>) -> Self {
        Self::new(re, 0)
    }

    pub fn i() -> Self {
        Self::new(0, 1)
    }

    pub fn norm(&self) -> Rational {
        Rational::from(&self.re * &self.re) + Rational::from(&self.im * &self.im)
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(
            Rational::from(&self.re + &other.re),
            Rational::from(&self.im + &other.im),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(
            Rational::from(&self.re - &other.re),
            Rational::from(&self.im - &other.im),
        )
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(Rational::from(&self.re * k), Rational::from(&self.im * k))
    }

    pub fn abs_f64(&self) -> f64 {
        self.norm().to_f64().sqrt()
    }
}

impl Ord for GaussRat {
    fn cmp(&self, other: &Self) -> Ordering {
        self.re.cmp(&other.re).then_with(|| self.im.cmp(&other.im))
    }
}

impl PartialOrd for GaussRat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.cmp0(), self.im.cmp0()) {
            (_, Ordering::Equal) => write!(f, "{}", self.re),
            (Ordering::Equal, _) => write!(f, "{}i", self.im),
            (_, Ordering::Less) => write!(f, "{}-{}i", self.re, Rational::from(-&self.im)),
            _ => write!(f, "{}+{}i", self.re, self.im),
        }
    }
}

impl Letter for GaussRat {
    fn is_zero(&self) -> bool {
        self.re.cmp0() == Ordering::Equal && self.im.cmp0() == Ordering::Equal
    }

    fn ratio(&self, other: &Self) -> Self {
        let n = other.norm();
        let num = self.product(&other.conj());
        Self::new(num.re / &n, num.im / &n)
    }

    fn product(&self, other: &Self) -> Self {
        let re = Rational::from(&self.re * &other.re) - Rational::from(&self.im * &other.im);
        let im = Rational::from(&self.re * &other.im) + Rational::from(&self.im * &other.re);
        Self::new(re, im)
    }

    fn one() -> Self {
        Self::real(1)
    }

    fn zero() -> Self {
        Self::default()
    }

    fn to_complex(&self, prec: u32) -> Complex {
        Complex::with_val(prec, (&self.re, &self.im))
    }
}

impl Letter for Complex {
    fn is_zero(&self) -> bool {
        self.real().is_zero() && self.imag().is_zero()
    }

    fn ratio(&self, other: &Self) -> Self {
        let prec = self.prec().0.max(other.prec().0);
        Complex::with_val(prec, self / other)
    }

    fn product(&self, other: &Self) -> Self {
        let prec = self.prec().0.max(other.prec().0);
        Complex::with_val(prec, self * other)
    }

    fn one() -> Self {
        Complex::with_val(64, 1)
    }

    fn zero() -> Self {
        Complex::new(64)
    }

    fn to_complex(&self, prec: u32) -> Complex {
        Complex::with_val(prec, self)
    }
}
