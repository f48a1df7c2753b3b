use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Arbitrary-precision rational; always reduced with a positive denominator.
pub type Rational = BigRational;

/// Rational with an adjoined imaginary unit.
pub type GaussianRational = Complex<Rational>;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `p/q` as a reduced rational. Panics on `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn gaussian(re: Rational, im: Rational) -> GaussianRational {
    Complex::new(re, im)
}

/// `base^exp` for any integer exponent; `base` must be nonzero when `exp < 0`.
pub fn rational_pow(base: &Rational, exp: i64) -> Rational {
    if exp >= 0 {
        num_traits::pow(base.clone(), exp as usize)
    } else {
        num_traits::pow(base.recip(), exp.unsigned_abs() as usize)
    }
}

/// Parses `"p/q"` or an integer string. Anything that looks like a float is rejected.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Input(format!("'{s}' is not an exact rational (expected p/q or integer)"));
    if s.is_empty() || s.contains(['.', 'e', 'E']) {
        return Err(bad());
    }
    let parse_int = |t: &str| -> Result<BigInt> {
        let t = t.trim();
        let digits = t.strip_prefix(['-', '+']).unwrap_or(t);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        t.parse::<BigInt>().map_err(|_| bad())
    };
    match s.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(s)?)),
        Some((p, q)) => {
            let q = parse_int(q)?;
            if q.is_zero() {
                return Err(Error::Input(format!("'{s}' has zero denominator")));
            }
            Ok(Rational::new(parse_int(p)?, q))
        }
    }
}

/// `"p/q"`, or just `"p"` for integers.
pub fn rational_to_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn gaussian_to_string(z: &GaussianRational) -> String {
    if z.im.is_zero() {
        return rational_to_string(&z.re);
    }
    let im = if z.im.is_negative() {
        format!("-{}i", rational_to_string(&-z.im.clone()))
    } else {
        format!("+{}i", rational_to_string(&z.im))
    };
    if z.re.is_zero() {
        im.trim_start_matches('+').to_string()
    } else {
        format!("{}{}", rational_to_string(&z.re), im)
    }
}

fn digit_len(n: &BigInt) -> i64 {
    n.magnitude().to_str_radix(10).len() as i64
}

fn pow10(k: u64) -> BigInt {
    num_traits::pow(BigInt::from(10), k as usize)
}

/// Scientific rendering with `sig` significant digits, rounding half away from zero.
/// Derived from the exact value; no floating point involved.
pub fn rational_to_decimal(r: &Rational, sig: usize) -> String {
    assert!(sig >= 1);
    if r.is_zero() {
        return "0".to_string();
    }
    let neg = r.is_negative();
    let x = r.abs();
    let num = x.numer();
    let den = x.denom();
    // 10^e <= x < 10^(e+1)
    let mut e = digit_len(num) - digit_len(den);
    let ten_pow = |k: i64| -> Rational {
        if k >= 0 {
            Rational::from_integer(pow10(k as u64))
        } else {
            Rational::new(BigInt::one(), pow10(k.unsigned_abs()))
        }
    };
    if x < ten_pow(e) {
        e -= 1;
    }
    let shift = sig as i64 - 1 - e;
    let scaled = &x * ten_pow(shift);
    let (q, rem) = scaled.numer().div_rem(scaled.denom());
    let mut m = q;
    if &rem * BigInt::from(2) >= *scaled.denom() {
        m += 1;
    }
    if m == pow10(sig as u64) {
        m = pow10(sig as u64 - 1);
        e += 1;
    }
    let digits = m.to_str_radix(10);
    let (head, tail) = digits.split_at(1);
    let sign = if neg { "-" } else { "" };
    if tail.is_empty() {
        format!("{sign}{head}e{e}")
    } else {
        format!("{sign}{head}.{tail}e{e}")
    }
}
