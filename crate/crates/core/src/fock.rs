//! Coherent-state moments of conservation-operator processes `Λ_t(H)` on the symmetric
//! Fock space over `L²(ℝ≥0; V)`.
//!
//! Only normalized moment functionals are modeled: every quantity is divided by
//! `⟨e(ψ_t), e(φ_t)⟩`, so the exponentials of inner products never appear and all values
//! stay in the Gaussian rationals.

use std::collections::HashMap;

use num_complex::Complex;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::combinatorics::{enumerate_set_partitions, stirling2_row};
use crate::exactnum::{ExactMatrix, GaussianRational, Rational};
use crate::{Error, Result};

/// The operator part `h` of a process `Λ_t(1 ⊗ h)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OperatorPart {
    /// `c · identity`.
    Scalar(GaussianRational),
    Matrix(ExactMatrix),
}

/// The process `Λ_t(1 ⊗ h) + drift · t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineProcessSpec {
    pub operator: OperatorPart,
    pub drift: GaussianRational,
}

impl AffineProcessSpec {
    pub fn scalar(c: GaussianRational) -> Self {
        AffineProcessSpec {
            operator: OperatorPart::Scalar(c),
            drift: GaussianRational::zero(),
        }
    }

    pub fn real_scalar(c: Rational) -> Self {
        Self::scalar(Complex::new(c, Rational::zero()))
    }

    pub fn matrix(m: ExactMatrix) -> Self {
        AffineProcessSpec {
            operator: OperatorPart::Matrix(m),
            drift: GaussianRational::zero(),
        }
    }

    pub fn with_drift(mut self, drift: GaussianRational) -> Self {
        self.drift = drift;
        self
    }

    fn apply(&self, v: &[GaussianRational]) -> Result<Vec<GaussianRational>> {
        match &self.operator {
            OperatorPart::Scalar(c) => Ok(v.iter().map(|x| x * c).collect()),
            OperatorPart::Matrix(m) => {
                if !m.is_square() {
                    return Err(Error::Shape("operator matrix must be square".into()));
                }
                m.apply(v)
            }
        }
    }
}

/// A vector `ψ ∈ V`; the coherent state is built from `𝟙_{[0,t)} ⊗ ψ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoherentState {
    vector: Vec<GaussianRational>,
    unit: bool,
}

impl CoherentState {
    pub fn new(vector: Vec<GaussianRational>) -> Result<Self> {
        if vector.is_empty() {
            return Err(Error::Input("coherent state vector must be nonempty".into()));
        }
        let unit = norm_sqr(&vector).is_one();
        Ok(CoherentState { vector, unit })
    }

    /// Requires `Σ|ψ_i|² = 1` exactly.
    pub fn unit(vector: Vec<GaussianRational>) -> Result<Self> {
        let s = Self::new(vector)?;
        if !s.unit {
            return Err(Error::Input("coherent state vector is not a unit vector".into()));
        }
        Ok(s)
    }

    /// The unit vector of `ℂ¹`.
    pub fn scalar_unit() -> Self {
        CoherentState {
            vector: vec![GaussianRational::one()],
            unit: true,
        }
    }

    pub fn vector(&self) -> &[GaussianRational] {
        &self.vector
    }

    pub fn dim(&self) -> usize {
        self.vector.len()
    }

    pub fn is_unit(&self) -> bool {
        self.unit
    }
}

/// `⟨v, w⟩`, linear in the first slot.
pub fn inner(v: &[GaussianRational], w: &[GaussianRational]) -> GaussianRational {
    v.iter().zip(w).map(|(a, b)| a * b.conj()).sum()
}

pub fn norm_sqr(v: &[GaussianRational]) -> Rational {
    v.iter().map(|a| a.norm_sqr()).sum()
}

fn check_dims(ops: &[AffineProcessSpec], psi: &CoherentState, phi: &CoherentState) -> Result<()> {
    if psi.dim() != phi.dim() {
        return Err(Error::Shape(format!(
            "psi has dimension {} but phi has {}",
            psi.dim(),
            phi.dim()
        )));
    }
    for (i, op) in ops.iter().enumerate() {
        if let OperatorPart::Matrix(m) = &op.operator {
            if !m.is_square() || m.rows() != psi.dim() {
                return Err(Error::Shape(format!(
                    "operator {i} is {}x{}, state dimension is {}",
                    m.rows(),
                    m.cols(),
                    psi.dim()
                )));
            }
        }
    }
    Ok(())
}

fn check_time(t: &Rational) -> Result<()> {
    if t.is_negative() {
        return Err(Error::Input(format!("time {t} is negative")));
    }
    Ok(())
}

/// `⟨H_{i1}⋯H_{ik} ψ, φ⟩` for the ascending index list of a block.
fn block_inner(
    ops: &[AffineProcessSpec],
    block: &[usize],
    psi: &CoherentState,
    phi: &CoherentState,
) -> Result<GaussianRational> {
    let mut v = psi.vector.clone();
    for &i in block.iter().rev() {
        v = ops[i].apply(&v)?;
    }
    Ok(inner(&v, &phi.vector))
}

/// Normalized joint moment `⟨Λ_t(H_1)⋯Λ_t(H_n) e(ψ_t), e(φ_t)⟩ / ⟨e(ψ_t), e(φ_t)⟩`, computed
/// as a sum over set partitions of `{1..n}` of `∏_blocks t⟨H_{i1}⋯H_{ik}ψ, φ⟩`.
pub fn joint_moment_coherent(
    ops: &[AffineProcessSpec],
    psi: &CoherentState,
    phi: &CoherentState,
    t: &Rational,
) -> Result<GaussianRational> {
    check_time(t)?;
    check_dims(ops, psi, phi)?;
    if ops.iter().any(|op| !op.drift.is_zero()) {
        return Err(Error::Input(
            "joint_moment_coherent takes pure conservation processes (drift 0)".into(),
        ));
    }
    let n = ops.len();
    if n == 0 {
        return Ok(GaussianRational::one());
    }
    let t = Complex::new(t.clone(), Rational::zero());
    // one inner product per nonempty subset
    let mut block_values: HashMap<u32, GaussianRational> = HashMap::new();
    for mask in 1u32..(1 << n) {
        let block: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        block_values.insert(mask, &t * block_inner(ops, &block, psi, phi)?);
    }
    let partitions = enumerate_set_partitions(n)?;
    let terms: Vec<GaussianRational> = partitions
        .par_iter()
        .map(|pi| {
            pi.blocks()
                .iter()
                .map(|b| {
                    let mask = b.iter().fold(0u32, |m, &i| m | (1 << (i - 1)));
                    block_values[&mask].clone()
                })
                .product()
        })
        .collect();
    Ok(terms.into_iter().sum())
}

pub const MAX_ORACLE_FACTORS: usize = 6;

/// Element of the algebra generated by commuting nilpotents `u_1..u_n` (`u_j² = 0`),
/// indexed by subsets.
struct Nilpotent(Vec<GaussianRational>);

impl Nilpotent {
    fn mul(&self, other: &Nilpotent) -> Nilpotent {
        let size = self.0.len();
        let mut out = vec![GaussianRational::zero(); size];
        for (s, slot) in out.iter_mut().enumerate() {
            // submasks a of s, b = s \ a
            let mut a = s;
            loop {
                let x = &self.0[a];
                let y = &other.0[s ^ a];
                if !x.is_zero() && !y.is_zero() {
                    *slot += x * y;
                }
                if a == 0 {
                    break;
                }
                a = (a - 1) & s;
            }
        }
        Nilpotent(out)
    }
}

/// Independent evaluation of the same normalized moment: expand
/// `g(u) = t⟨(I + iu_1H_1)⋯(I + iu_nH_n)ψ, φ⟩` over nilpotent variables, exponentiate
/// `g(u) − g(0)`, take the coefficient of `u_1⋯u_n`, multiply by `(−i)^n`.
pub fn joint_moment_oracle(
    ops: &[AffineProcessSpec],
    psi: &CoherentState,
    phi: &CoherentState,
    t: &Rational,
) -> Result<GaussianRational> {
    let n = ops.len();
    if n > MAX_ORACLE_FACTORS {
        return Err(Error::Bound(format!(
            "oracle supports at most {MAX_ORACLE_FACTORS} factors, got {n}"
        )));
    }
    check_time(t)?;
    check_dims(ops, psi, phi)?;
    if ops.iter().any(|op| !op.drift.is_zero()) {
        return Err(Error::Input("oracle takes pure conservation processes (drift 0)".into()));
    }
    let size = 1usize << n;
    let tc = Complex::new(t.clone(), Rational::zero());
    let i_unit = Complex::new(Rational::zero(), Rational::one());
    // (I + iu_1H_1)⋯(I + iu_nH_n)ψ: vector-valued nilpotent element, built right to left
    let mut vecs: Vec<Option<Vec<GaussianRational>>> = vec![None; size];
    vecs[0] = Some(psi.vector.clone());
    for j in (0..n).rev() {
        let bit = 1usize << j;
        for mask in 0..size {
            if mask & ((bit << 1) - 1) != 0 {
                continue;
            }
            if let Some(v) = vecs[mask].clone() {
                let hv = ops[j].apply(&v)?;
                vecs[mask | bit] = Some(hv.iter().map(|x| x * &i_unit).collect());
            }
        }
    }
    let mut g = Nilpotent(vec![GaussianRational::zero(); size]);
    for (mask, v) in vecs.iter().enumerate() {
        if mask == 0 {
            continue;
        }
        if let Some(v) = v {
            g.0[mask] = &tc * inner(v, &phi.vector);
        }
    }
    // exp(g) with g(0) removed
    let mut result = Nilpotent(vec![GaussianRational::zero(); size]);
    result.0[0] = GaussianRational::one();
    let mut power = Nilpotent(result.0.clone());
    let mut fact = Rational::one();
    for k in 1..=n {
        power = power.mul(&g);
        fact *= Rational::from_integer(k.into());
        let inv = Complex::new(fact.recip(), Rational::zero());
        for (r, p) in result.0.iter_mut().zip(&power.0) {
            *r += p * &inv;
        }
    }
    let minus_i_pow = num_traits::pow(-i_unit, n);
    Ok(&result.0[size - 1] * minus_i_pow)
}

/// Normalized joint moment of affine processes `Λ_t(H_i) + d_i t`, with the drifts expanded
/// multilinearly before dispatch to [`joint_moment_coherent`].
pub fn affine_joint_moment(
    specs: &[AffineProcessSpec],
    psi: &CoherentState,
    phi: &CoherentState,
    t: &Rational,
) -> Result<GaussianRational> {
    check_time(t)?;
    let n = specs.len();
    let tc = Complex::new(t.clone(), Rational::zero());
    let pure: Vec<AffineProcessSpec> = specs
        .iter()
        .map(|s| AffineProcessSpec {
            operator: s.operator.clone(),
            drift: GaussianRational::zero(),
        })
        .collect();
    let drifting: Vec<usize> = (0..n).filter(|&i| !specs[i].drift.is_zero()).collect();
    let mut total = GaussianRational::zero();
    // choose which drifting factors contribute their scalar term
    for choice in 0u32..(1 << drifting.len()) {
        let mut coeff = GaussianRational::one();
        let mut keep = vec![true; n];
        for (bit, &i) in drifting.iter().enumerate() {
            if choice & (1 << bit) != 0 {
                coeff *= &specs[i].drift * &tc;
                keep[i] = false;
            }
        }
        if coeff.is_zero() {
            continue;
        }
        let sub: Vec<AffineProcessSpec> = pure
            .iter()
            .zip(&keep)
            .filter(|(_, &k)| k)
            .map(|(s, _)| s.clone())
            .collect();
        total += coeff * joint_moment_coherent(&sub, psi, phi, t)?;
    }
    Ok(total)
}

/// Disjoint half-open intervals `[s_j, t_j)` and the ordered factors `(process, interval)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalAssignment {
    pub intervals: Vec<(Rational, Rational)>,
    pub factors: Vec<(usize, usize)>,
}

impl IntervalAssignment {
    pub fn validate(&self, num_specs: usize) -> Result<()> {
        for (j, (s, t)) in self.intervals.iter().enumerate() {
            if s.is_negative() || s >= t {
                return Err(Error::Input(format!("interval {j} = [{s}, {t}) is invalid")));
            }
            if j > 0 && &self.intervals[j - 1].1 > s {
                return Err(Error::Input(format!(
                    "intervals {} and {j} overlap or are out of order",
                    j - 1
                )));
            }
        }
        for &(p, i) in &self.factors {
            if p >= num_specs || i >= self.intervals.len() {
                return Err(Error::Input(format!("factor ({p}, {i}) references nothing")));
            }
        }
        Ok(())
    }
}

/// Joint moment of increments over disjoint intervals: the product over intervals of the
/// single-interval moment of that interval's factors (in their original order), each
/// evaluated at the interval's length.
pub fn interval_joint_moment(
    assignment: &IntervalAssignment,
    specs: &[AffineProcessSpec],
    psi: &CoherentState,
) -> Result<GaussianRational> {
    assignment.validate(specs.len())?;
    if !psi.is_unit() {
        return Err(Error::Input("interval moments need a unit coherent vector".into()));
    }
    let mut out = GaussianRational::one();
    for (j, (s, t)) in assignment.intervals.iter().enumerate() {
        let sub: Vec<AffineProcessSpec> = assignment
            .factors
            .iter()
            .filter(|&&(_, i)| i == j)
            .map(|&(p, _)| specs[p].clone())
            .collect();
        if sub.is_empty() {
            continue;
        }
        out *= affine_joint_moment(&sub, psi, psi, &(t - s))?;
    }
    Ok(out)
}

/// `(⟨X_t⟩, Var(X_t)) = (t⟨hψ, ψ⟩, t‖hψ‖²)` for a pure process and unit `ψ`.
pub fn mean_variance(
    spec: &AffineProcessSpec,
    psi: &CoherentState,
    t: &Rational,
) -> Result<(GaussianRational, Rational)> {
    check_time(t)?;
    if !psi.is_unit() {
        return Err(Error::Input("mean/variance need a unit coherent vector".into()));
    }
    if !spec.drift.is_zero() {
        return Err(Error::Input("mean_variance takes a pure process (drift 0)".into()));
    }
    check_dims(std::slice::from_ref(spec), psi, psi)?;
    let hpsi = spec.apply(&psi.vector)?;
    let tc = Complex::new(t.clone(), Rational::zero());
    Ok((tc * inner(&hpsi, &psi.vector), t * norm_sqr(&hpsi)))
}

/// `E[N_s^n]` for a Poisson variable of mean `s`: the Touchard polynomial `Σ_k S(n,k) s^k`.
pub fn poisson_raw_moment(n: usize, s: &Rational) -> Rational {
    stirling2_row(n)
        .iter()
        .enumerate()
        .map(|(k, c)| Rational::from_integer(c.clone().into()) * num_traits::pow(s.clone(), k))
        .sum()
}

/// `E[∏_k c_{p_k} N_{t_{g_k}}]` for a rate-one Poisson process `N` and factors `(p_k, g_k)`
/// (jump index, grid index). Computed by splitting into independent increments over the
/// grid.
pub fn compound_poisson_moments(
    jumps: &[GaussianRational],
    grid: &[Rational],
    factors: &[(usize, usize)],
) -> Result<GaussianRational> {
    if grid.first().is_some_and(|t| t.is_negative()) {
        return Err(Error::Input("time grid must be nonnegative".into()));
    }
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Input("time grid must be strictly increasing".into()));
    }
    for &(p, g) in factors {
        if p >= jumps.len() || g >= grid.len() {
            return Err(Error::Input(format!("factor ({p}, {g}) out of range")));
        }
    }
    let increments: Vec<Rational> = grid
        .iter()
        .enumerate()
        .map(|(h, t)| if h == 0 { t.clone() } else { t - &grid[h - 1] })
        .collect();
    let coeff: GaussianRational = factors.iter().map(|&(p, _)| jumps[p].clone()).product();
    // N_{t_g} = Σ_{h<=g} ΔN_h; expand the product over increment choices
    let mut counts = vec![0usize; grid.len()];
    let mut total = Rational::zero();
    fn rec(
        k: usize,
        factors: &[(usize, usize)],
        counts: &mut [usize],
        increments: &[Rational],
        total: &mut Rational,
    ) {
        if k == factors.len() {
            *total += counts
                .iter()
                .zip(increments)
                .map(|(&c, s)| poisson_raw_moment(c, s))
                .product::<Rational>();
            return;
        }
        for h in 0..=factors[k].1 {
            counts[h] += 1;
            rec(k + 1, factors, counts, increments, total);
            counts[h] -= 1;
        }
    }
    rec(0, factors, &mut counts, &increments, &mut total);
    Ok(coeff * Complex::new(total, Rational::zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{gaussian, int, rat};

    fn re(x: Rational) -> GaussianRational {
        gaussian(x, int(0))
    }

    fn ones(n: usize) -> Vec<AffineProcessSpec> {
        vec![AffineProcessSpec::real_scalar(int(1)); n]
    }

    #[test]
    fn poisson_moments_at_unit_time() {
        let psi = CoherentState::scalar_unit();
        let got: Vec<GaussianRational> = (1..=3)
            .map(|m| joint_moment_coherent(&ones(m), &psi, &psi, &int(1)).unwrap())
            .collect();
        assert_eq!(got, vec![re(int(1)), re(int(2)), re(int(5))]);
        assert_eq!(joint_moment_coherent(&[], &psi, &psi, &int(1)).unwrap(), re(int(1)));
    }

    #[test]
    fn single_factor_matches_inner_product() {
        let h = ExactMatrix::new(
            2,
            2,
            vec![re(int(1)), gaussian(int(0), int(2)), re(rat(1, 3)), re(int(-1))],
        )
        .unwrap();
        let psi = CoherentState::new(vec![re(int(1)), re(int(2))]).unwrap();
        let phi = CoherentState::new(vec![gaussian(int(1), int(1)), re(int(0))]).unwrap();
        let t = rat(3, 2);
        let spec = AffineProcessSpec::matrix(h.clone());
        let expect = re(t.clone()) * inner(&h.apply(psi.vector()).unwrap(), phi.vector());
        assert_eq!(joint_moment_coherent(std::slice::from_ref(&spec), &psi, &phi, &t).unwrap(), expect);
        assert_eq!(joint_moment_oracle(&[spec], &psi, &phi, &t).unwrap(), expect);
    }

    #[test]
    fn oracle_second_moment() {
        let psi = CoherentState::scalar_unit();
        assert_eq!(joint_moment_oracle(&ones(2), &psi, &psi, &int(1)).unwrap(), re(int(2)));
        assert!(matches!(
            joint_moment_oracle(&ones(7), &psi, &psi, &int(1)),
            Err(Error::Bound(_))
        ));
    }

    #[test]
    fn errors() {
        let psi = CoherentState::scalar_unit();
        assert!(joint_moment_coherent(&ones(1), &psi, &psi, &int(-1)).is_err());
        let m = ExactMatrix::identity(2);
        assert!(matches!(
            joint_moment_coherent(&[AffineProcessSpec::matrix(m)], &psi, &psi, &int(1)),
            Err(Error::Shape(_))
        ));
        assert!(CoherentState::unit(vec![re(int(2))]).is_err());
    }

    #[test]
    fn interval_examples() {
        let psi = CoherentState::scalar_unit();
        let specs = ones(1);
        let split = IntervalAssignment {
            intervals: vec![(int(0), int(1)), (int(1), int(2))],
            factors: vec![(0, 0), (0, 1)],
        };
        assert_eq!(interval_joint_moment(&split, &specs, &psi).unwrap(), re(int(1)));
        let same = IntervalAssignment {
            intervals: vec![(int(0), int(1))],
            factors: vec![(0, 0), (0, 0)],
        };
        assert_eq!(interval_joint_moment(&same, &specs, &psi).unwrap(), re(int(2)));
        let empty = IntervalAssignment {
            intervals: vec![(int(0), int(1))],
            factors: vec![],
        };
        assert_eq!(interval_joint_moment(&empty, &specs, &psi).unwrap(), re(int(1)));
        let overlap = IntervalAssignment {
            intervals: vec![(int(0), int(2)), (int(1), int(3))],
            factors: vec![(0, 0)],
        };
        assert!(matches!(interval_joint_moment(&overlap, &specs, &psi), Err(Error::Input(_))));
    }

    #[test]
    fn mean_variance_examples() {
        let psi = CoherentState::scalar_unit();
        let id = AffineProcessSpec::real_scalar(int(1));
        assert_eq!(mean_variance(&id, &psi, &int(0)).unwrap(), (re(int(0)), int(0)));
        assert_eq!(mean_variance(&id, &psi, &int(3)).unwrap(), (re(int(3)), int(3)));
        let c = gaussian(int(2), int(-1));
        let spec = AffineProcessSpec::scalar(c.clone());
        let t = rat(5, 2);
        assert_eq!(
            mean_variance(&spec, &psi, &t).unwrap(),
            (c.clone() * re(t.clone()), c.norm_sqr() * &t)
        );
        let not_unit = CoherentState::new(vec![re(int(2))]).unwrap();
        assert!(mean_variance(&id, &not_unit, &int(1)).is_err());
    }

    #[test]
    fn compound_poisson_examples() {
        let c = re(rat(3, 2));
        let t = rat(7, 3);
        let grid = vec![t.clone()];
        assert_eq!(
            compound_poisson_moments(std::slice::from_ref(&c), &grid, &[(0, 0)]).unwrap(),
            &c * re(t.clone())
        );
        assert_eq!(
            compound_poisson_moments(std::slice::from_ref(&c), &grid, &[(0, 0), (0, 0)]).unwrap(),
            &c * &c * re(&t * &t + &t)
        );
        let (t1, t2) = (rat(1, 2), int(3));
        assert_eq!(
            compound_poisson_moments(&[re(int(1))], &[t1.clone(), t2.clone()], &[(0, 0), (0, 1)])
                .unwrap(),
            re(&t1 * &t2 + &t1)
        );
        assert!(compound_poisson_moments(&[c], &[int(2), int(1)], &[]).is_err());
    }

    #[test]
    fn drift_expansion() {
        // centered Poisson second moment: Var = t
        let psi = CoherentState::scalar_unit();
        let centered = AffineProcessSpec::real_scalar(int(1)).with_drift(re(int(-1)));
        let t = rat(5, 3);
        let v = affine_joint_moment(&[centered.clone(), centered.clone()], &psi, &psi, &t).unwrap();
        assert_eq!(v, re(t.clone()));
        let v4 = affine_joint_moment(&vec![centered; 4], &psi, &psi, &t).unwrap();
        assert_eq!(v4, re(int(3) * &t * &t + &t));
    }
}
