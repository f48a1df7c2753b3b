use std::collections::HashMap;

use num_traits::{One, Signed, Zero};

use super::families::{family_eigenvalue, family_limit, family_normalizer, EigenvalueFamily};
use crate::combinatorics::{enumerate_pair_partitions, enumerate_set_partitions};
use crate::exactnum::{gaussian, QuadraticSurd, Rational};
use crate::fock::{affine_joint_moment, AffineProcessSpec, CoherentState};
use crate::{Error, Result};

pub const MAX_CLT_FACTORS: usize = 8;

/// How the centered processes are scaled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Normalization {
    /// Divide by `Var_{Lt}(X^{(i)})^{1/2}`.
    ByVariance,
    /// Divide by `L^{1/2}` times the family normalizer at `N`.
    ByPower,
}

impl Normalization {
    pub fn name(self) -> &'static str {
        match self {
            Normalization::ByVariance => "variance",
            Normalization::ByPower => "power",
        }
    }
}

fn check_factors(fam: &EigenvalueFamily, indices: &[usize]) -> Result<()> {
    if indices.is_empty() {
        return Err(Error::Input("at least one factor is required".into()));
    }
    if indices.len() > MAX_CLT_FACTORS {
        return Err(Error::Bound(format!(
            "at most {MAX_CLT_FACTORS} factors, got {}",
            indices.len()
        )));
    }
    if let Some(&i) = indices.iter().find(|&&i| i >= fam.len()) {
        return Err(Error::Input(format!("member {i} is not in the family")));
    }
    Ok(())
}

fn scalar_specs(values: &[Rational], centered: bool) -> Vec<AffineProcessSpec> {
    values
        .iter()
        .map(|f| {
            let spec = AffineProcessSpec::real_scalar(f.clone());
            if centered {
                spec.with_drift(gaussian(-f.clone(), Rational::zero()))
            } else {
                spec
            }
        })
        .collect()
}

fn real_part(z: crate::exactnum::GaussianRational) -> Result<Rational> {
    if !z.im.is_zero() {
        return Err(Error::Domain(format!("moment {} is not real", z.im)));
    }
    Ok(z.re)
}

/// `⟨X^{(i_1)}_{N,t}⋯X^{(i_k)}_{N,t}⟩` for the listed members, optionally centered, computed by
/// the coherent-state moment engine with the scalar operators `f_i(N)`.
pub fn family_block_moment(
    fam: &EigenvalueFamily,
    indices: &[usize],
    n: usize,
    t: &Rational,
    centered: bool,
) -> Result<Rational> {
    let values: Vec<Rational> = indices
        .iter()
        .map(|&i| family_eigenvalue(fam, i, n))
        .collect::<Result<_>>()?;
    let psi = CoherentState::scalar_unit();
    real_part(affine_joint_moment(&scalar_specs(&values, centered), &psi, &psi, t)?)
}

/// `⟨X̃^{(i_1)}_{N,Lt}⋯X̃^{(i_m)}_{N,Lt}⟩` in exact arithmetic.
///
/// The process at time `Lt` is a sum of `L` independent copies at time `t`, so the centered
/// moment is `Σ_π L(L−1)⋯(L−|π|+1) ∏_{B∈π} M_B(t)` over partitions without singletons. The
/// result is that sum divided by `√D`, with `D = L^m ∏ Var_t(i)` or `D = L^m ∏ P_i(N)²`.
pub fn scaled_clt_moment(
    fam: &EigenvalueFamily,
    indices: &[usize],
    n: usize,
    l: usize,
    t: &Rational,
    normalization: Normalization,
) -> Result<QuadraticSurd> {
    check_factors(fam, indices)?;
    if l == 0 || n == 0 {
        return Err(Error::Input("N and L must be positive".into()));
    }
    if !t.is_positive() {
        return Err(Error::Input(format!("time {t} must be positive")));
    }
    let m = indices.len();
    let values: Vec<Rational> = indices
        .iter()
        .map(|&i| family_eigenvalue(fam, i, n))
        .collect::<Result<_>>()?;
    let specs = scalar_specs(&values, true);
    let psi = CoherentState::scalar_unit();
    let lr = Rational::from_integer(l.into());

    let mut blocks: HashMap<Vec<usize>, Rational> = HashMap::new();
    let mut sum = Rational::zero();
    for pi in enumerate_set_partitions(m)? {
        if pi.has_singleton() || pi.num_blocks() > l {
            continue;
        }
        let mut term: Rational = (0..pi.num_blocks())
            .map(|k| &lr - Rational::from_integer(k.into()))
            .product();
        for block in pi.blocks() {
            let key: Vec<usize> = block.iter().map(|&b| b - 1).collect();
            let v = match blocks.get(&key) {
                Some(v) => v.clone(),
                None => {
                    let sub: Vec<AffineProcessSpec> = key.iter().map(|&k| specs[k].clone()).collect();
                    let v = real_part(affine_joint_moment(&sub, &psi, &psi, t)?)?;
                    blocks.insert(key, v.clone());
                    v
                }
            };
            term *= v;
            if term.is_zero() {
                break;
            }
        }
        sum += term;
    }

    let mut denom = num_traits::pow(lr, m);
    match normalization {
        Normalization::ByVariance => {
            for f in &values {
                denom *= f * f * t;
            }
        }
        Normalization::ByPower => {
            for &i in indices {
                let p = family_normalizer(fam, i, n)?;
                denom *= &p * &p;
            }
        }
    }
    if denom.is_zero() {
        return Err(Error::Degenerate("a factor has zero variance".into()));
    }
    QuadraticSurd::ratio_over_sqrt(&sum, &denom)
}

/// `Σ_{π ∈ P₂(m)} ∏_{{a<b}∈π} C_{a,b}`; 0 for odd `m`.
pub fn wick_limit(c: &[Vec<Rational>], m: usize) -> Result<Rational> {
    if m == 0 {
        return Ok(Rational::one());
    }
    if m % 2 == 1 {
        return Ok(Rational::zero());
    }
    if c.len() < m || c.iter().take(m).any(|row| row.len() < m) {
        return Err(Error::Shape(format!("covariance matrix smaller than {m}x{m}")));
    }
    Ok(enumerate_pair_partitions(m)?
        .iter()
        .map(|pi| {
            pi.blocks()
                .iter()
                .map(|b| c[b[0] - 1][b[1] - 1].clone())
                .product::<Rational>()
        })
        .sum())
}

/// Limit covariance of members `i`, `j`: `t ℓ_i ℓ_j` under [`Normalization::ByPower`], and the
/// correlation `ℓ_iℓ_j/(|ℓ_i||ℓ_j|)` under [`Normalization::ByVariance`].
pub fn limit_covariance(
    fam: &EigenvalueFamily,
    i: usize,
    j: usize,
    t: &Rational,
    normalization: Normalization,
) -> Result<Rational> {
    let li = family_limit(fam, i)?;
    let lj = family_limit(fam, j)?;
    match normalization {
        Normalization::ByPower => Ok(t * li * lj),
        Normalization::ByVariance => {
            if li.is_zero() || lj.is_zero() {
                return Err(Error::Degenerate(format!(
                    "member {} has limit 0; the variance normalization degenerates",
                    if li.is_zero() { i } else { j }
                )));
            }
            Ok((li * lj).signum())
        }
    }
}

/// Gaussian limit of [`scaled_clt_moment`]: the Wick sum of the limit covariances.
pub fn clt_limit(
    fam: &EigenvalueFamily,
    indices: &[usize],
    t: &Rational,
    normalization: Normalization,
) -> Result<Rational> {
    check_factors(fam, indices)?;
    let m = indices.len();
    let mut c = vec![vec![Rational::zero(); m]; m];
    for a in 0..m {
        for b in 0..m {
            c[a][b] = limit_covariance(fam, indices[a], indices[b], t, normalization)?;
        }
    }
    wick_limit(&c, m)
}
