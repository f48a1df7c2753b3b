use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{rational_to_decimal, rational_to_string, Rational};
use crate::{Error, Result};

/// Exact real number `a + b·√r` with `r` a positive integer that is not a perfect square
/// (and has no small square factors), or `b = 0, r = 1`.
///
/// The CLT normalizations divide by square roots of rationals (`N^{m/2}`, variances), so
/// scaled moments live in this form rather than in plain rationals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadraticSurd {
    a: Rational,
    b: Rational,
    r: BigInt,
}

const SMALL_PRIMES_BOUND: u32 = 1000;

fn small_primes() -> impl Iterator<Item = u32> {
    (2..SMALL_PRIMES_BOUND).filter(|&n| (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

impl QuadraticSurd {
    pub fn rational(a: Rational) -> Self {
        QuadraticSurd {
            a,
            b: Rational::zero(),
            r: BigInt::one(),
        }
    }

    pub fn zero() -> Self {
        Self::rational(Rational::zero())
    }

    /// `a + b·√radicand` for a nonnegative rational radicand, brought to canonical form.
    pub fn new(a: Rational, b: Rational, radicand: Rational) -> Result<Self> {
        if radicand.is_negative() {
            return Err(Error::Domain("square root of a negative rational".into()));
        }
        if b.is_zero() || radicand.is_zero() {
            return Ok(Self::rational(a));
        }
        // sqrt(p/q) = sqrt(pq)/q
        let q = radicand.denom().clone();
        let mut r = radicand.numer() * &q;
        let mut b = b / Rational::from_integer(q);
        for p in small_primes() {
            let p = BigInt::from(p);
            let p2 = &p * &p;
            if p2 > r {
                break;
            }
            while (&r % &p2).is_zero() {
                r /= &p2;
                b *= Rational::from_integer(p.clone());
            }
        }
        let s = r.sqrt();
        if &s * &s == r {
            return Ok(Self::rational(a + b * Rational::from_integer(s)));
        }
        Ok(QuadraticSurd { a, b, r })
    }

    /// `s / √d` for rational `d > 0`.
    pub fn ratio_over_sqrt(s: &Rational, d: &Rational) -> Result<Self> {
        if !d.is_positive() {
            return Err(Error::Degenerate("normalizer must be positive".into()));
        }
        Self::new(Rational::zero(), s / d, d.clone())
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn surd_coeff(&self) -> &Rational {
        &self.b
    }

    pub fn radicand(&self) -> &BigInt {
        &self.r
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.b.is_zero().then_some(&self.a)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn neg(&self) -> Self {
        QuadraticSurd {
            a: -self.a.clone(),
            b: -self.b.clone(),
            r: self.r.clone(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        QuadraticSurd {
            a: &self.a * c,
            b: &self.b * c,
            r: self.r.clone(),
        }
    }

    fn compatible(&self, other: &Self) -> bool {
        self.b.is_zero() || other.b.is_zero() || self.r == other.r
    }

    /// Sum; fails when both operands carry different irrational parts.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if !self.compatible(other) {
            return Err(Error::Unsupported(format!(
                "cannot add surds with radicands {} and {}",
                self.r, other.r
            )));
        }
        let r = if self.b.is_zero() { &other.r } else { &self.r };
        let b = &self.b + &other.b;
        if b.is_zero() {
            return Ok(Self::rational(&self.a + &other.a));
        }
        Ok(QuadraticSurd {
            a: &self.a + &other.a,
            b,
            r: r.clone(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn add_rational(&self, c: &Rational) -> Self {
        QuadraticSurd {
            a: &self.a + c,
            b: self.b.clone(),
            r: self.r.clone(),
        }
    }

    /// Exact sign.
    pub fn signum(&self) -> Ordering {
        sign_single(&self.a, &self.b, &self.r)
    }

    pub fn abs(&self) -> Self {
        if self.signum() == Ordering::Less {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Exact comparison, also across different radicands.
    pub fn cmp_exact(&self, other: &Self) -> Ordering {
        if self.compatible(other) {
            return self.sub(other).expect("compatible surds").signum();
        }
        sign_double(
            &(&self.a - &other.a),
            &self.b,
            &self.r,
            &-other.b.clone(),
            &other.r,
        )
    }

    /// Rational `x̃` with `|x − x̃| < 10^{-digits}`.
    pub fn approx(&self, digits: u32) -> Rational {
        if self.b.is_zero() {
            return self.a.clone();
        }
        let scale = num_traits::pow(BigInt::from(10), digits as usize);
        // |b|√r·10^k = √(p² r 10^{2k}) / q
        let p = self.b.numer().abs();
        let q = self.b.denom();
        let m = &p * &p * &self.r * &scale * &scale;
        let floor = m.sqrt() / q;
        let mag = Rational::new(floor, scale);
        if self.b.is_negative() {
            &self.a - mag
        } else {
            &self.a + mag
        }
    }

    /// Scientific rendering with `sig` significant digits, derived from the exact value.
    pub fn to_decimal(&self, sig: usize) -> String {
        if let Some(a) = self.as_rational() {
            return rational_to_decimal(a, sig);
        }
        if self.signum() == Ordering::Equal {
            return "0".into();
        }
        let mut digits = 40 + sig as u32;
        loop {
            let v = self.approx(digits);
            // enough absolute precision once |v| is well above the error bound
            let bound = Rational::new(
                BigInt::one(),
                num_traits::pow(BigInt::from(10), (digits - sig as u32 - 20) as usize),
            );
            if v.abs() > bound || digits > 4000 {
                return rational_to_decimal(&v, sig);
            }
            digits *= 2;
        }
    }
}

fn sign_of(x: &Rational) -> Ordering {
    x.cmp(&Rational::zero())
}

/// sign(a + b√r)
fn sign_single(a: &Rational, b: &Rational, r: &BigInt) -> Ordering {
    let sa = sign_of(a);
    let sb = sign_of(b);
    if sb == Ordering::Equal {
        return sa;
    }
    if sa == Ordering::Equal || sa == sb {
        return sb;
    }
    let lhs = a * a;
    let rhs = b * b * Rational::from_integer(r.clone());
    match lhs.cmp(&rhs) {
        Ordering::Greater => sa,
        Ordering::Less => sb,
        Ordering::Equal => Ordering::Equal,
    }
}

/// sign(a + b1√r1 + b2√r2)
fn sign_double(a: &Rational, b1: &Rational, r1: &BigInt, b2: &Rational, r2: &BigInt) -> Ordering {
    let r1q = Rational::from_integer(r1.clone());
    let r2q = Rational::from_integer(r2.clone());
    let p2 = b1 * b1 * &r1q;
    let q2 = b2 * b2 * &r2q;
    // sign of b1√r1 + b2√r2
    let s_pq = match (sign_of(b1), sign_of(b2)) {
        (Ordering::Equal, s) | (s, Ordering::Equal) => s,
        (s1, s2) if s1 == s2 => s1,
        (s1, s2) => match p2.cmp(&q2) {
            Ordering::Greater => s1,
            Ordering::Less => s2,
            Ordering::Equal => Ordering::Equal,
        },
    };
    let sa = sign_of(a);
    if sa == Ordering::Equal {
        return s_pq;
    }
    if s_pq == Ordering::Equal || s_pq == sa {
        return sa;
    }
    // a² − (b1√r1 + b2√r2)² = (a² − p2 − q2) − 2 b1 b2 √(r1 r2)
    let diff = QuadraticSurd::new(
        a * a - &p2 - &q2,
        -(b1 * b2) * Rational::from_integer(2.into()),
        r1q * r2q,
    )
    .expect("nonnegative radicand");
    match diff.signum() {
        Ordering::Greater => sa,
        Ordering::Less => s_pq,
        Ordering::Equal => Ordering::Equal,
    }
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", rational_to_string(&self.a));
        }
        let surd = if self.b.is_one() {
            format!("sqrt({})", self.r)
        } else {
            format!("{}*sqrt({})", rational_to_string(&self.b), self.r)
        };
        if self.a.is_zero() {
            write!(f, "{surd}")
        } else if self.b.is_negative() {
            write!(f, "{}{}", rational_to_string(&self.a), surd)
        } else {
            write!(f, "{}+{}", rational_to_string(&self.a), surd)
        }
    }
}
