//! Point evaluations of ordinary, shifted, factorial and q-interpolation Schur polynomials.
//!
//! All evaluations are determinant ratios (or tableau sums) over exact scalars; nothing is
//! expanded symbolically.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::combinatorics::{IntegerPartition, Signature};
use crate::exactnum::matrix::det_rows;
use crate::exactnum::{int, rational_pow, GaussianRational, Rational};
use crate::{Error, Result};

/// Parameter sequence `a = (a_1, a_2, …)` of a factorial Schur polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParameterSequence {
    /// `a_j = 0`: ordinary Schur polynomials.
    AllZero,
    /// `a_j = −j + 1`: `(x|a)^k` is the falling factorial `x^{↓k}`.
    ShiftedConvention,
    /// `a_j = −base^{j + offset}`.
    GeometricQ { base: Rational, offset: i64 },
}

impl ParameterSequence {
    /// `a_j` for `j >= 1`.
    pub fn value(&self, j: usize) -> Rational {
        assert!(j >= 1, "parameter sequences are indexed from 1");
        match self {
            ParameterSequence::AllZero => Rational::zero(),
            ParameterSequence::ShiftedConvention => int(1 - j as i64),
            ParameterSequence::GeometricQ { base, offset } => {
                -rational_pow(base, j as i64 + offset)
            }
        }
    }

    /// `(x|a)^k = (x + a_1)⋯(x + a_k)`.
    pub fn generalized_power(&self, x: &Rational, k: usize) -> Rational {
        (1..=k).fold(Rational::one(), |acc, j| acc * (x + self.value(j)))
    }
}

fn ensure_fits(mu: &IntegerPartition, n: usize) -> Result<()> {
    if mu.len() > n {
        return Err(Error::Input(format!(
            "partition {mu} has more than N = {n} parts"
        )));
    }
    Ok(())
}

/// Bialternant-style ratio `det[f(x_i, μ_j + N − j)] / det[f(x_i, N − j)]`.
fn determinant_ratio<F>(mu: &IntegerPartition, x: &[Rational], f: F) -> Result<Rational>
where
    F: Fn(&Rational, usize) -> Rational,
{
    let n = x.len();
    ensure_fits(mu, n)?;
    let den = det_rows(
        x.iter()
            .map(|xi| (0..n).map(|j| f(xi, n - 1 - j)).collect())
            .collect(),
    );
    if den.is_zero() {
        return Err(Error::Degenerate(
            "denominator determinant vanishes (coincident evaluation points)".into(),
        ));
    }
    let num = det_rows(
        x.iter()
            .map(|xi| (0..n).map(|j| f(xi, mu.part(j) + n - 1 - j)).collect())
            .collect(),
    );
    Ok(num / den)
}

/// `s_λ(z_1..z_N)` as the bialternant ratio. Negative entries are handled by factoring out
/// `(z_1⋯z_N)^{λ_N}`.
pub fn schur_eval(lambda: &Signature, z: &[GaussianRational]) -> Result<GaussianRational> {
    let n = lambda.n();
    if z.len() != n {
        return Err(Error::Input(format!(
            "signature of length {n} evaluated at {} points",
            z.len()
        )));
    }
    let shift = lambda.entries()[n - 1];
    if shift < 0 && z.iter().any(|zi| zi.is_zero()) {
        return Err(Error::Domain("Laurent Schur polynomial at a zero point".into()));
    }
    let exps: Vec<usize> = lambda
        .entries()
        .iter()
        .map(|&l| (l - shift) as usize)
        .collect();
    let pow = |zi: &GaussianRational, k: usize| num_traits::pow(zi.clone(), k);
    let den = det_rows(
        z.iter()
            .map(|zi| (0..n).map(|j| pow(zi, n - 1 - j)).collect())
            .collect(),
    );
    if den.is_zero() {
        return Err(Error::Degenerate(
            "repeated evaluation points; use schur_dimension_un for s(1,...,1)".into(),
        ));
    }
    let num = det_rows(
        z.iter()
            .map(|zi| (0..n).map(|j| pow(zi, exps[j] + n - 1 - j)).collect())
            .collect(),
    );
    let prod: GaussianRational = z.iter().cloned().product();
    let factor = if shift >= 0 {
        num_traits::pow(prod, shift as usize)
    } else {
        num_traits::pow(prod.inv(), shift.unsigned_abs() as usize)
    };
    Ok(num / den * factor)
}

/// `s_λ(1,…,1)` by the Weyl dimension product.
pub fn schur_dimension_un(lambda: &Signature) -> Rational {
    let l = lambda.entries();
    let n = l.len();
    let mut out = Rational::one();
    for i in 0..n {
        for j in i + 1..n {
            out *= Rational::new(
                (l[i] - l[j] + (j - i) as i64).into(),
                ((j - i) as i64).into(),
            );
        }
    }
    out
}

/// Shifted Schur polynomial `s*_μ(x)`: the falling-factorial determinant ratio in the
/// shifted variables `x_i + N − i`.
pub fn shifted_schur_eval(mu: &IntegerPartition, x: &[Rational]) -> Result<Rational> {
    let y = shifted_points(x);
    determinant_ratio(mu, &y, |v, k| ParameterSequence::ShiftedConvention.generalized_power(v, k))
}

/// `x_i + N − i` (1-based `i`).
pub fn shifted_points(x: &[Rational]) -> Vec<Rational> {
    let n = x.len();
    x.iter()
        .enumerate()
        .map(|(i, xi)| xi + int((n - 1 - i) as i64))
        .collect()
}

/// Factorial Schur polynomial `s_μ(x | a)` as a determinant ratio.
pub fn factorial_schur_eval(
    mu: &IntegerPartition,
    x: &[Rational],
    a: &ParameterSequence,
) -> Result<Rational> {
    determinant_ratio(mu, x, |v, k| a.generalized_power(v, k))
}

/// Factorial Schur polynomial via the semistandard tableau sum
/// `Σ_T ∏_{α∈μ} (x_{T(α)} + a_{T(α)+c(α)})`, built one variable at a time by adding
/// horizontal strips. Polynomial in `N`; used for large `N` where the `N×N` determinants
/// would be prohibitive. Unlike [`factorial_schur_eval`] it never needs distinct points.
pub fn factorial_schur_tableau(
    mu: &IntegerPartition,
    x: &[Rational],
    a: &ParameterSequence,
) -> Result<Rational> {
    let n = x.len();
    ensure_fits(mu, n)?;
    let mut table: HashMap<Vec<usize>, Rational> = HashMap::new();
    table.insert(Vec::new(), Rational::one());
    let max_index = n + mu.part(0);
    let avals: Vec<Rational> = (1..=max_index).map(|j| a.value(j)).collect();
    for (k0, xk) in x.iter().enumerate() {
        let k = k0 + 1;
        let mut next: HashMap<Vec<usize>, Rational> = HashMap::new();
        for (inner, val) in &table {
            for outer in horizontal_strip_extensions(inner, mu, k) {
                let mut w = val.clone();
                for (i, (&lo, &hi)) in padded(inner, outer.len()).iter().zip(&outer).enumerate() {
                    for j in lo..hi {
                        // content (j − i) with 0-based row i and column j
                        let idx = (k as i64 + j as i64 - i as i64) as usize;
                        w *= xk + &avals[idx - 1];
                    }
                }
                *next.entry(outer).or_insert_with(Rational::zero) += w;
            }
        }
        table = next;
    }
    Ok(table
        .remove(mu.parts())
        .unwrap_or_else(Rational::zero))
}

fn padded(p: &[usize], len: usize) -> Vec<usize> {
    let mut v = p.to_vec();
    v.resize(len, 0);
    v
}

/// Shapes `outer ⊆ μ` with at most `max_len` rows such that `outer / inner` is a horizontal
/// strip.
fn horizontal_strip_extensions(
    inner: &[usize],
    mu: &IntegerPartition,
    max_len: usize,
) -> Vec<Vec<usize>> {
    let rows = mu.len().min(max_len);
    if inner.len() > rows {
        return Vec::new();
    }
    let inner = padded(inner, rows);
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(rows);
    fn rec(
        i: usize,
        inner: &[usize],
        mu: &IntegerPartition,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if i == inner.len() {
            let mut shape = cur.clone();
            while shape.last() == Some(&0) {
                shape.pop();
            }
            out.push(shape);
            return;
        }
        // inner_i <= outer_i <= min(μ_i, inner_{i-1}) for a horizontal strip
        let hi = if i == 0 {
            mu.part(0)
        } else {
            mu.part(i).min(inner[i - 1])
        };
        for v in inner[i]..=hi {
            cur.push(v);
            rec(i + 1, inner, mu, cur, out);
            cur.pop();
        }
    }
    rec(0, &inner, mu, &mut cur, &mut out);
    out
}

/// `s*_μ(x)` through the tableau sum in the shifted variables; agrees with
/// [`shifted_schur_eval`] and scales to `N` in the hundreds.
pub fn shifted_schur_tableau(mu: &IntegerPartition, x: &[Rational]) -> Result<Rational> {
    factorial_schur_tableau(mu, &shifted_points(x), &ParameterSequence::ShiftedConvention)
}

fn check_q2(q2: &Rational) -> Result<()> {
    if !(q2 > &Rational::zero() && q2 < &Rational::one()) {
        return Err(Error::Parameter(format!("q^2 = {q2} must lie in (0, 1)")));
    }
    Ok(())
}

/// q-interpolation Schur polynomial `s*_μ(x; q²) = s_μ(x | (−q^{2(j−N)})_j)`, addressed by
/// `q2 = q²` directly.
pub fn q_interp_schur_eval(mu: &IntegerPartition, x: &[Rational], q2: &Rational) -> Result<Rational> {
    check_q2(q2)?;
    factorial_schur_eval(mu, x, &q_parameters(q2, x.len()))
}

/// Tableau-sum evaluation of [`q_interp_schur_eval`].
pub fn q_interp_schur_tableau(
    mu: &IntegerPartition,
    x: &[Rational],
    q2: &Rational,
) -> Result<Rational> {
    check_q2(q2)?;
    factorial_schur_tableau(mu, x, &q_parameters(q2, x.len()))
}

pub fn q_parameters(q2: &Rational, n: usize) -> ParameterSequence {
    ParameterSequence::GeometricQ {
        base: q2.clone(),
        offset: -(n as i64),
    }
}

/// The points `q^{2(α_i)}` for an integer vector `α`.
pub fn q_points(q2: &Rational, exponents: &[i64]) -> Vec<Rational> {
    exponents.iter().map(|&e| rational_pow(q2, e)).collect()
}

/// Jacobi–Trudi determinant `det[h_{μ_i − i + j}]` with `h_k = 0` for `k < 0`.
pub fn jacobi_trudi_det(mu: &IntegerPartition, h: &[Rational]) -> Result<Rational> {
    let n = mu.len();
    if n == 0 {
        return Ok(Rational::one());
    }
    let needed = mu.part(0) + n - 1;
    if needed >= h.len() {
        return Err(Error::Bound(format!(
            "Jacobi-Trudi for {mu} needs h_0..h_{needed}, only {} given",
            h.len()
        )));
    }
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let k = mu.part(i) as i64 - i as i64 + j as i64;
                    if k < 0 {
                        Rational::zero()
                    } else {
                        h[k as usize].clone()
                    }
                })
                .collect()
        })
        .collect();
    Ok(det_rows(rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{gaussian, rat};

    fn p(parts: &[usize]) -> IntegerPartition {
        IntegerPartition::new(parts.to_vec()).unwrap()
    }

    fn g(n: i64) -> GaussianRational {
        gaussian(int(n), int(0))
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn schur_examples() {
        let s = Signature::new(vec![1, 0]).unwrap();
        assert_eq!(schur_eval(&s, &[g(2), g(5)]).unwrap(), g(7));
        let s = Signature::new(vec![1, 1]).unwrap();
        assert_eq!(schur_eval(&s, &[g(2), g(5)]).unwrap(), g(10));
        let s = Signature::new(vec![2, 0]).unwrap();
        assert_eq!(schur_eval(&s, &[g(2), g(3)]).unwrap(), g(19));
        assert!(matches!(schur_eval(&s, &[g(2), g(2)]), Err(Error::Degenerate(_))));
    }

    #[test]
    fn laurent_schur() {
        // s_{(0,-1)}(z1,z2) = 1/z1 + 1/z2
        let s = Signature::new(vec![0, -1]).unwrap();
        let v = schur_eval(&s, &[g(2), g(3)]).unwrap();
        assert_eq!(v, gaussian(rat(5, 6), int(0)));
    }

    #[test]
    fn weyl_dimension() {
        assert_eq!(schur_dimension_un(&Signature::zero(4)), int(1));
        for n in 1..6 {
            let mut e = vec![0; n];
            e[0] = 1;
            assert_eq!(schur_dimension_un(&Signature::new(e).unwrap()), int(n as i64));
        }
        assert_eq!(schur_dimension_un(&Signature::new(vec![2, 0]).unwrap()), int(3));
    }

    #[test]
    fn shifted_examples() {
        assert_eq!(shifted_schur_eval(&p(&[]), &ints(&[3, 1])).unwrap(), int(1));
        assert_eq!(shifted_schur_eval(&p(&[1]), &ints(&[3, 1])).unwrap(), int(4));
        assert_eq!(shifted_schur_eval(&p(&[2]), &ints(&[1, 0])).unwrap(), int(0));
        assert!(shifted_schur_eval(&p(&[1, 1, 1]), &ints(&[1, 0])).is_err());
    }

    #[test]
    fn factorial_examples() {
        let x = vec![rat(7, 3)];
        let a = ParameterSequence::GeometricQ {
            base: rat(1, 4),
            offset: -1,
        };
        assert_eq!(factorial_schur_eval(&p(&[1]), &x, &a).unwrap(), rat(4, 3));
        assert_eq!(q_interp_schur_eval(&p(&[1]), &x, &rat(1, 4)).unwrap(), rat(4, 3));
        assert_eq!(q_interp_schur_eval(&p(&[]), &x, &rat(1, 4)).unwrap(), int(1));
        assert!(q_interp_schur_eval(&p(&[1]), &x, &int(1)).is_err());
    }

    #[test]
    fn q_vanishing_direct() {
        // μ=(2) ⊄ λ=(1,0), N=2, q²=1/4: points q^{2(λ_i − i + 1)}
        let q2 = rat(1, 4);
        let x = q_points(&q2, &[1, -1]);
        assert_eq!(q_interp_schur_eval(&p(&[2]), &x, &q2).unwrap(), int(0));
        assert_eq!(q_interp_schur_tableau(&p(&[2]), &x, &q2).unwrap(), int(0));
    }

    #[test]
    fn jacobi_trudi_examples() {
        let h = vec![int(1), int(3), int(5), int(7)];
        assert_eq!(jacobi_trudi_det(&p(&[2]), &h).unwrap(), int(5));
        assert_eq!(jacobi_trudi_det(&p(&[1, 1]), &h).unwrap(), int(9 - 5));
        let ones = vec![int(1); 4];
        assert_eq!(jacobi_trudi_det(&p(&[2, 1]), &ones).unwrap(), int(0));
        assert_eq!(jacobi_trudi_det(&p(&[]), &[]).unwrap(), int(1));
        assert!(matches!(jacobi_trudi_det(&p(&[3, 1]), &h), Err(Error::Bound(_))));
    }

    #[test]
    fn tableau_matches_determinant_small() {
        let x = ints(&[5, 2, 2, -1]);
        for mu in [p(&[1]), p(&[2]), p(&[1, 1]), p(&[2, 1]), p(&[3, 1, 1])] {
            assert_eq!(
                shifted_schur_eval(&mu, &x).unwrap(),
                shifted_schur_tableau(&mu, &x).unwrap(),
                "mu = {mu}"
            );
        }
    }
}
