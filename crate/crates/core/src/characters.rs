//! Boundary-object evaluations: `h_k(ω)` and `s_μ(ω)` for the unitary boundary, Thoma
//! characters of `S(∞)`, Murnaghan–Nakayama characters of `S(N)`, and the q-boundary
//! series `h_k(ω_ν)`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::combinatorics::{standard_tableaux_count, IntegerPartition};
use crate::exactnum::{int, rational_pow, Rational, TruncatedSeries};
use crate::symfunc::jacobi_trudi_det;
use crate::{Error, Result};

fn check_sequence(name: &str, v: &[Rational]) -> Result<()> {
    if v.iter().any(|x| x.is_negative()) {
        return Err(Error::Parameter(format!("{name} has a negative entry")));
    }
    if v.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::Parameter(format!("{name} is not weakly decreasing")));
    }
    Ok(())
}

fn strip_zeros(mut v: Vec<Rational>) -> Vec<Rational> {
    while v.last().is_some_and(|x| x.is_zero()) {
        v.pop();
    }
    v
}

/// Finite-support point `ω = (α⁺, α⁻, β⁺, β⁻, γ⁺, γ⁻)` of the boundary of `U(∞)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OmegaParams {
    pub alpha_plus: Vec<Rational>,
    pub alpha_minus: Vec<Rational>,
    pub beta_plus: Vec<Rational>,
    pub beta_minus: Vec<Rational>,
    pub gamma_plus: Rational,
    pub gamma_minus: Rational,
}

impl OmegaParams {
    /// Validated constructor; trailing zero entries are dropped.
    pub fn new(
        alpha_plus: Vec<Rational>,
        alpha_minus: Vec<Rational>,
        beta_plus: Vec<Rational>,
        beta_minus: Vec<Rational>,
        gamma_plus: Rational,
        gamma_minus: Rational,
    ) -> Result<Self> {
        let w = OmegaParams {
            alpha_plus: strip_zeros(alpha_plus),
            alpha_minus: strip_zeros(alpha_minus),
            beta_plus: strip_zeros(beta_plus),
            beta_minus: strip_zeros(beta_minus),
            gamma_plus,
            gamma_minus,
        };
        w.validate()?;
        Ok(w)
    }

    pub fn validate(&self) -> Result<()> {
        check_sequence("alphaPlus", &self.alpha_plus)?;
        check_sequence("alphaMinus", &self.alpha_minus)?;
        check_sequence("betaPlus", &self.beta_plus)?;
        check_sequence("betaMinus", &self.beta_minus)?;
        if self.gamma_plus.is_negative() || self.gamma_minus.is_negative() {
            return Err(Error::Parameter("gamma must be nonnegative".into()));
        }
        let b1 = self.beta_plus.first().cloned().unwrap_or_default()
            + self.beta_minus.first().cloned().unwrap_or_default();
        if b1 > Rational::one() {
            return Err(Error::Parameter(format!(
                "betaPlus[0] + betaMinus[0] = {b1} exceeds 1"
            )));
        }
        Ok(())
    }
}

/// Point `(α, β)` of the Thoma simplex with finitely many nonzero coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ThomaParams {
    pub alpha: Vec<Rational>,
    pub beta: Vec<Rational>,
}

impl ThomaParams {
    pub fn new(alpha: Vec<Rational>, beta: Vec<Rational>) -> Result<Self> {
        let w = ThomaParams {
            alpha: strip_zeros(alpha),
            beta: strip_zeros(beta),
        };
        check_sequence("alpha", &w.alpha)?;
        check_sequence("beta", &w.beta)?;
        if w.alpha.iter().chain(&w.beta).any(|x| x > &Rational::one()) {
            return Err(Error::Parameter("Thoma coordinates must lie in [0, 1]".into()));
        }
        let total: Rational = w.alpha.iter().chain(&w.beta).sum();
        if total > Rational::one() {
            return Err(Error::Parameter(format!(
                "sum of Thoma coordinates {total} exceeds 1"
            )));
        }
        Ok(w)
    }
}

/// Eventually constant weakly increasing integer sequence `ν_1 ≤ ν_2 ≤ ⋯`; `ν_j = tail` for
/// `j > prefix.len()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NuSequence {
    prefix: Vec<i64>,
    tail: i64,
}

impl NuSequence {
    pub fn new(prefix: Vec<i64>, tail: i64) -> Result<Self> {
        if prefix.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Parameter(format!("nu prefix {prefix:?} is not weakly increasing")));
        }
        if prefix.last().is_some_and(|&l| l > tail) {
            return Err(Error::Parameter("nu tail is below the last prefix entry".into()));
        }
        Ok(NuSequence { prefix, tail })
    }

    pub fn constant(c: i64) -> Self {
        NuSequence {
            prefix: Vec::new(),
            tail: c,
        }
    }

    pub fn prefix(&self) -> &[i64] {
        &self.prefix
    }

    pub fn tail(&self) -> i64 {
        self.tail
    }

    /// `ν_j`, 1-based.
    pub fn value(&self, j: usize) -> i64 {
        assert!(j >= 1);
        self.prefix.get(j - 1).copied().unwrap_or(self.tail)
    }
}

/// Coefficients `h_0..h_K` of `Φ_ω(1+t)`.
pub fn phi_omega_h_series(omega: &OmegaParams, order: usize) -> Result<TruncatedSeries> {
    omega.validate()?;
    let one = TruncatedSeries::one(order);
    let t = TruncatedSeries::linear(Rational::zero(), Rational::one(), order);
    // u = (1+t)^{-1} − 1 = −t + t² − ⋯
    let u = one
        .quotient(&TruncatedSeries::linear(Rational::one(), Rational::one(), order))?
        .sub(&one)?;
    let exponent = t.scale(&omega.gamma_plus).add(&u.scale(&omega.gamma_minus))?;
    let mut out = exponent.exp()?;
    let mut factor = |var: &TruncatedSeries, beta: &[Rational], alpha: &[Rational]| -> Result<()> {
        for b in beta {
            out = out.mul(&one.add(&var.scale(b))?)?;
        }
        for a in alpha {
            out = out.quotient(&one.sub(&var.scale(a))?)?;
        }
        Ok(())
    };
    factor(&t, &omega.beta_plus, &omega.alpha_plus)?;
    factor(&u, &omega.beta_minus, &omega.alpha_minus)?;
    Ok(out)
}

/// `s_μ(ω)` through Jacobi–Trudi over `h_k(ω)`.
pub fn s_mu_omega(mu: &IntegerPartition, omega: &OmegaParams) -> Result<Rational> {
    let h = phi_omega_h_series(omega, mu.part(0) + mu.len())?;
    jacobi_trudi_det(mu, h.coeffs())
}

/// Extreme character `χ^ω_ρ` of `S(∞)` on the class `ρ ∈ 𝕐°` (no parts equal to 1).
pub fn thoma_character_value(omega: &ThomaParams, rho: &IntegerPartition) -> Result<Rational> {
    if rho.parts().contains(&1) {
        return Err(Error::Domain(format!(
            "cycle type {rho} has a part equal to 1"
        )));
    }
    let mut out = Rational::one();
    for &k in rho.parts() {
        let sign = if k % 2 == 1 { int(1) } else { int(-1) };
        let pa: Rational = omega.alpha.iter().map(|a| rational_pow(a, k as i64)).sum();
        let pb: Rational = omega.beta.iter().map(|b| rational_pow(b, k as i64)).sum();
        out *= pa + sign * pb;
    }
    Ok(out)
}

/// Murnaghan–Nakayama evaluator with a memo keyed by (remaining shape, remaining cycles).
///
/// Cycles are consumed longest-first. When only 1-cycles remain the value is the number of
/// standard tableaux of the remaining shape, which avoids recursing through fixed points.
#[derive(Debug, Default)]
pub struct MnEvaluator {
    memo: HashMap<(IntegerPartition, Vec<usize>), BigInt>,
    hook_shortcut: bool,
}

impl MnEvaluator {
    pub fn new() -> Self {
        MnEvaluator {
            memo: HashMap::new(),
            hook_shortcut: true,
        }
    }

    /// Plain border-strip recursion all the way down (used as a cross-check).
    pub fn without_shortcut() -> Self {
        MnEvaluator {
            memo: HashMap::new(),
            hook_shortcut: false,
        }
    }

    /// Integer character value `χ^λ_ρ`.
    pub fn character(&mut self, lambda: &IntegerPartition, rho: &IntegerPartition) -> Result<BigInt> {
        if lambda.weight() != rho.weight() {
            return Err(Error::Input(format!(
                "|λ| = {} but |ρ| = {}",
                lambda.weight(),
                rho.weight()
            )));
        }
        Ok(self.eval(lambda, rho.parts()))
    }

    fn eval(&mut self, lambda: &IntegerPartition, cycles: &[usize]) -> BigInt {
        let Some((&k, rest)) = cycles.split_first() else {
            return BigInt::one();
        };
        if self.hook_shortcut && k == 1 {
            return BigInt::from(standard_tableaux_count(lambda));
        }
        let key = (lambda.clone(), cycles.to_vec());
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let mut total = BigInt::zero();
        for (shape, negative) in remove_rim_hooks(lambda, k) {
            let v = self.eval(&shape, rest);
            if negative {
                total -= v;
            } else {
                total += v;
            }
        }
        self.memo.insert(key, total.clone());
        total
    }
}

/// All shapes obtained by removing a rim hook of size `k`, with the sign flag
/// `(−1)^{height} = −1`.
pub fn remove_rim_hooks(lambda: &IntegerPartition, k: usize) -> Vec<(IntegerPartition, bool)> {
    let len = lambda.len();
    // beta-set: λ_i + (len − 1 − i)
    let beads: Vec<usize> = (0..len).map(|i| lambda.part(i) + len - 1 - i).collect();
    let mut out = Vec::new();
    for (idx, &b) in beads.iter().enumerate() {
        if b < k || beads.contains(&(b - k)) {
            continue;
        }
        let target = b - k;
        let between = beads.iter().filter(|&&x| x > target && x < b).count();
        let mut next = beads.clone();
        next[idx] = target;
        next.sort_unstable_by(|x, y| y.cmp(x));
        let parts = next
            .iter()
            .enumerate()
            .map(|(i, &x)| x - (len - 1 - i))
            .collect();
        out.push((IntegerPartition::new(parts).expect("valid shape"), between % 2 == 1));
    }
    out
}

/// `χ^λ_ρ / dim λ`, the character normalized to 1 at the identity.
pub fn mn_normalized_character(lambda: &IntegerPartition, rho: &IntegerPartition) -> Result<Rational> {
    let chi = MnEvaluator::new().character(lambda, rho)?;
    let dim = BigInt::from(standard_tableaux_count(lambda));
    Ok(Rational::new(chi, dim))
}

/// `χ^λ_{ρ ∪ 1^{N−|ρ|}} / dim λ` with `N = |λ|`: strip the `ρ` cycles, then count standard
/// tableaux of each residual shape.
pub fn normalized_character_with_fixed_points(
    lambda: &IntegerPartition,
    rho: &IntegerPartition,
) -> Result<Rational> {
    let n = lambda.weight();
    if rho.weight() > n {
        return Err(Error::Input(format!("|ρ| = {} exceeds N = {n}", rho.weight())));
    }
    mn_normalized_character(lambda, &rho.with_ones(n - rho.weight()))
}

/// `Σ_k h_k(ω_ν) t^k = ∏_{j≥0}(1 − q^{2j}t) / ∏_{j≥1}(1 − q^{2(ν_j+j−1)}t)`, reduced to a
/// finite ratio by cancelling the two eventually geometric products.
pub fn q_boundary_h_series(nu: &NuSequence, q2: &Rational, order: usize) -> Result<TruncatedSeries> {
    if !(q2 > &Rational::zero() && q2 < &Rational::one()) {
        return Err(Error::Parameter(format!("q^2 = {q2} must lie in (0, 1)")));
    }
    let (numer, denom) = q_boundary_factors(nu)?;
    let one = TruncatedSeries::one(order);
    let mut out = one.clone();
    for (e, mult) in numer {
        let f = TruncatedSeries::linear(Rational::one(), -rational_pow(q2, e), order);
        for _ in 0..mult {
            out = out.mul(&f)?;
        }
    }
    for (e, mult) in denom {
        let f = TruncatedSeries::linear(Rational::one(), -rational_pow(q2, e), order);
        for _ in 0..mult {
            out = out.quotient(&f)?;
        }
    }
    Ok(out)
}

/// Exponent multisets `(A, B)` with `Σ h_k t^k = ∏_{a∈A}(1−q^{2a}t) / ∏_{b∈B}(1−q^{2b}t)`.
pub fn q_boundary_factors(
    nu: &NuSequence,
) -> Result<(BTreeMap<i64, usize>, BTreeMap<i64, usize>)> {
    let j_len = nu.prefix().len() as i64;
    // for j > J the denominator exponents ν_∞ + j − 1 sweep every integer >= ν_∞ + J
    let tail_start = nu
        .tail()
        .checked_add(j_len)
        .ok_or_else(|| Error::Unsupported("nu tail overflows".into()))?;
    let mut numer: BTreeMap<i64, usize> = BTreeMap::new();
    let mut denom: BTreeMap<i64, usize> = BTreeMap::new();
    // numerator exponents 0,1,2,… minus the tail ones
    for e in 0..tail_start.max(0) {
        *numer.entry(e).or_default() += 1;
    }
    // tail exponents below zero are not cancelled by the numerator
    for e in tail_start..0 {
        *denom.entry(e).or_default() += 1;
    }
    for (j, &v) in nu.prefix().iter().enumerate() {
        *denom.entry(v + j as i64).or_default() += 1;
    }
    let shared: Vec<i64> = numer.keys().filter(|e| denom.contains_key(e)).copied().collect();
    for e in shared {
        let c = numer[&e].min(denom[&e]);
        for map in [&mut numer, &mut denom] {
            let slot = map.get_mut(&e).expect("present");
            *slot -= c;
            if *slot == 0 {
                map.remove(&e);
            }
        }
    }
    Ok((numer, denom))
}

/// `s_μ(ω_ν)` through Jacobi–Trudi over the q-boundary series.
pub fn s_mu_omega_nu(mu: &IntegerPartition, nu: &NuSequence, q2: &Rational) -> Result<Rational> {
    let h = q_boundary_h_series(nu, q2, mu.part(0) + mu.len())?;
    jacobi_trudi_det(mu, h.coeffs())
}

/// Standard-tableau count as a rational (dimension of an `S(N)` irreducible).
pub fn dimension(lambda: &IntegerPartition) -> BigUint {
    standard_tableaux_count(lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn p(parts: &[usize]) -> IntegerPartition {
        IntegerPartition::new(parts.to_vec()).unwrap()
    }

    fn omega_alpha(a: Rational) -> OmegaParams {
        OmegaParams::new(vec![a], vec![], vec![], vec![], int(0), int(0)).unwrap()
    }

    fn omega_gamma(g: Rational) -> OmegaParams {
        OmegaParams::new(vec![], vec![], vec![], vec![], g, int(0)).unwrap()
    }

    #[test]
    fn phi_examples() {
        let h = phi_omega_h_series(&OmegaParams::default(), 4).unwrap();
        assert_eq!(h, TruncatedSeries::one(4));
        let g = rat(3, 2);
        let h = phi_omega_h_series(&omega_gamma(g.clone()), 4).unwrap();
        let mut fact = int(1);
        for k in 0..=4 {
            if k > 0 {
                fact *= int(k);
            }
            assert_eq!(h.coeff(k as usize), rational_pow(&g, k) / &fact);
        }
        let a = rat(2, 5);
        let h = phi_omega_h_series(&omega_alpha(a.clone()), 5).unwrap();
        for k in 0..=5 {
            assert_eq!(h.coeff(k), rational_pow(&a, k as i64));
        }
    }

    #[test]
    fn s_mu_omega_examples() {
        assert_eq!(s_mu_omega(&p(&[]), &omega_alpha(int(1))).unwrap(), int(1));
        assert_eq!(s_mu_omega(&p(&[1]), &omega_alpha(int(1))).unwrap(), int(1));
        let g = rat(5, 3);
        assert_eq!(s_mu_omega(&p(&[1, 1]), &omega_gamma(g.clone())).unwrap(), &g * &g / int(2));
    }

    #[test]
    fn omega_validation() {
        assert!(OmegaParams::new(vec![int(1), int(2)], vec![], vec![], vec![], int(0), int(0)).is_err());
        assert!(OmegaParams::new(vec![], vec![], vec![rat(2, 3)], vec![rat(1, 2)], int(0), int(0)).is_err());
        assert!(OmegaParams::new(vec![], vec![], vec![], vec![], int(-1), int(0)).is_err());
        assert!(ThomaParams::new(vec![rat(2, 3)], vec![rat(1, 2)]).is_err());
        assert!(NuSequence::new(vec![2, 1], 3).is_err());
        assert!(NuSequence::new(vec![0, 4], 3).is_err());
    }

    #[test]
    fn thoma_examples() {
        let w = ThomaParams::new(vec![rat(1, 2), rat(1, 2)], vec![]).unwrap();
        assert_eq!(thoma_character_value(&w, &p(&[])).unwrap(), int(1));
        assert_eq!(thoma_character_value(&w, &p(&[2])).unwrap(), rat(1, 2));
        let triv = ThomaParams::new(vec![int(1)], vec![]).unwrap();
        assert_eq!(thoma_character_value(&triv, &p(&[3, 2, 2])).unwrap(), int(1));
        assert!(matches!(thoma_character_value(&w, &p(&[2, 1])), Err(Error::Domain(_))));
        // sign character: β = (1) gives (−1)^{k−1} per cycle
        let sign = ThomaParams::new(vec![], vec![int(1)]).unwrap();
        assert_eq!(thoma_character_value(&sign, &p(&[2])).unwrap(), int(-1));
        assert_eq!(thoma_character_value(&sign, &p(&[3])).unwrap(), int(1));
    }

    #[test]
    fn mn_examples() {
        assert_eq!(mn_normalized_character(&p(&[4]), &p(&[2, 1, 1])).unwrap(), int(1));
        assert_eq!(mn_normalized_character(&p(&[1, 1]), &p(&[2])).unwrap(), int(-1));
        assert_eq!(mn_normalized_character(&p(&[2, 1]), &p(&[3])).unwrap(), rat(-1, 2));
        assert!(matches!(mn_normalized_character(&p(&[2, 1]), &p(&[2])), Err(Error::Input(_))));
    }

    #[test]
    fn fixed_point_characters() {
        // two rows of n: (n−2)/(2n−1) on a transposition
        for n in 2..8usize {
            let v = normalized_character_with_fixed_points(&p(&[n, n]), &p(&[2])).unwrap();
            assert_eq!(v, rat(n as i64 - 2, 2 * n as i64 - 1));
        }
    }

    #[test]
    fn q_boundary_examples() {
        let q2 = rat(1, 4);
        let h = q_boundary_h_series(&NuSequence::constant(0), &q2, 5).unwrap();
        assert_eq!(h, TruncatedSeries::one(5));
        let h = q_boundary_h_series(&NuSequence::constant(1), &q2, 5).unwrap();
        assert_eq!(h.coeffs(), &[int(1), int(-1), int(0), int(0), int(0), int(0)]);
        assert_eq!(s_mu_omega_nu(&p(&[]), &NuSequence::constant(1), &q2).unwrap(), int(1));
        assert_eq!(s_mu_omega_nu(&p(&[1]), &NuSequence::constant(1), &q2).unwrap(), int(-1));
        assert_eq!(s_mu_omega_nu(&p(&[2, 1]), &NuSequence::constant(0), &q2).unwrap(), int(0));
        assert!(q_boundary_h_series(&NuSequence::constant(0), &int(2), 3).is_err());
    }

    #[test]
    fn q_boundary_negative_exponents() {
        // ν ≡ −2: denominators (1 − q^{-4}t)(1 − q^{-2}t), numerator empty
        let (a, b) = q_boundary_factors(&NuSequence::constant(-2)).unwrap();
        assert!(a.is_empty());
        assert_eq!(b.keys().copied().collect::<Vec<_>>(), vec![-2, -1]);
        let q2 = rat(1, 2);
        let h = q_boundary_h_series(&NuSequence::constant(-2), &q2, 1).unwrap();
        assert_eq!(h.coeff(1), int(4) + int(2));
    }
}
