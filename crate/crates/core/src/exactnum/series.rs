use num_traits::{One, Zero};

use super::Rational;
use crate::{Error, Result};

/// Formal power series in `t` with exact coefficients, truncated modulo `t^(order+1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// `c0 + c1·t`.
    pub fn linear(c0: Rational, c1: Rational, order: usize) -> Self {
        let mut s = Self::constant(c0, order);
        if order >= 1 {
            s.coeffs[1] = c1;
        }
        s
    }

    /// Builds a series from leading coefficients; missing ones are zero and extra ones are
    /// dropped.
    pub fn from_coeffs(coeffs: impl IntoIterator<Item = Rational>, order: usize) -> Self {
        let mut s = Self::zero(order);
        for (slot, c) in s.coeffs.iter_mut().zip(coeffs) {
            *slot = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::Domain(format!(
                "series orders differ ({} vs {})",
                self.order(),
                other.order()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(TruncatedSeries {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(TruncatedSeries {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let k = self.order();
        let mut out = Self::zero(k);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=k - i].iter().enumerate() {
                out.coeffs[i + j] += a * b;
            }
        }
        Ok(out)
    }

    /// `self / den`; `den` must have a nonzero constant term.
    pub fn quotient(&self, den: &Self) -> Result<Self> {
        self.check_order(den)?;
        let d0 = &den.coeffs[0];
        if d0.is_zero() {
            return Err(Error::Domain(
                "divisor series has zero constant term".into(),
            ));
        }
        let mut q: Vec<Rational> = Vec::with_capacity(self.coeffs.len());
        for n in 0..self.coeffs.len() {
            let mut acc = self.coeffs[n].clone();
            for k in 1..=n {
                acc -= &den.coeffs[k] * &q[n - k];
            }
            q.push(acc / d0);
        }
        Ok(TruncatedSeries { coeffs: q })
    }

    /// `exp(self)`; the constant term must vanish so all coefficients stay rational.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Domain(
                "exp of a series with nonzero constant term is not rational".into(),
            ));
        }
        // E' = s'E  =>  n E_n = sum_{k=1}^n k s_k E_{n-k}
        let mut e: Vec<Rational> = Vec::with_capacity(self.coeffs.len());
        e.push(Rational::one());
        for n in 1..self.coeffs.len() {
            let mut acc = Rational::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * Rational::from_integer(k.into()) * &e[n - k];
                }
            }
            e.push(acc / Rational::from_integer(n.into()));
        }
        Ok(TruncatedSeries { coeffs: e })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};

    fn series(c: &[Rational]) -> TruncatedSeries {
        TruncatedSeries::from_coeffs(c.iter().cloned(), c.len() - 1)
    }

    #[test]
    fn exp_examples() {
        assert_eq!(TruncatedSeries::zero(4).exp().unwrap(), TruncatedSeries::one(4));
        let g = rat(2, 3);
        let s = TruncatedSeries::linear(int(0), g.clone(), 3).exp().unwrap();
        let expect = [
            int(1),
            g.clone(),
            &g * &g / int(2),
            &g * &g * &g / int(6),
        ];
        assert_eq!(s.coeffs(), &expect);
        let s = series(&[int(0), int(1), int(1)]).exp().unwrap();
        assert_eq!(s.coeffs(), &[int(1), int(1), rat(3, 2)]);
    }

    #[test]
    fn quotient_examples() {
        let one = TruncatedSeries::one(3);
        let den = TruncatedSeries::linear(int(1), int(-1), 3);
        assert_eq!(one.quotient(&den).unwrap().coeffs(), &[int(1), int(1), int(1), int(1)]);
        assert_eq!(den.quotient(&den).unwrap(), one);
        let num = series(&[int(1), int(1), int(0)]);
        let den = series(&[int(1), int(-1), int(0)]);
        assert_eq!(num.quotient(&den).unwrap().coeffs(), &[int(1), int(2), int(2)]);
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(TruncatedSeries::one(2).exp(), Err(Error::Domain(_))));
        let z = TruncatedSeries::linear(int(0), int(1), 2);
        assert!(matches!(TruncatedSeries::one(2).quotient(&z), Err(Error::Domain(_))));
        assert!(TruncatedSeries::one(2).mul(&TruncatedSeries::one(3)).is_err());
    }
}
