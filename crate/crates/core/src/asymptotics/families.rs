use num_traits::One;

use super::sequences::{build_stabilizing_sequence, build_thoma_sequence, build_vk_sequence};
use crate::characters::{
    normalized_character_with_fixed_points, s_mu_omega, s_mu_omega_nu, thoma_character_value,
    NuSequence, OmegaParams, ThomaParams,
};
use crate::combinatorics::IntegerPartition;
use crate::exactnum::{rational_pow, Rational};
use crate::symfunc::{q_interp_schur_tableau, q_points, shifted_schur_tableau};
use crate::{Error, Result};

/// Largest `N` accepted by the symmetric-group family.
pub const MAX_SYMMETRIC_N: usize = 40;

/// A finite list of central elements evaluated along one sequence of representations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EigenvalueFamily {
    /// Quantum immanants `𝕊_{μ|N}` along the Vershik–Kerov sequence of `ω`.
    Unitary {
        mus: Vec<IntegerPartition>,
        omega: OmegaParams,
    },
    /// Conjugacy-class sums `A_{ρ|N}` along a Thoma sequence (`|λ(N)| = N`).
    Symmetric {
        rhos: Vec<IntegerPartition>,
        thoma: ThomaParams,
    },
    /// `Z^{(q)}_{μ|N}` along the sequence stabilizing to `ν`.
    Quantum {
        mus: Vec<IntegerPartition>,
        nu: NuSequence,
        q2: Rational,
    },
    /// Constant scalars `f_i(N) = c_i` with limits `c_i`.
    Custom { scalars: Vec<Rational> },
}

impl EigenvalueFamily {
    pub fn len(&self) -> usize {
        match self {
            EigenvalueFamily::Unitary { mus, .. } | EigenvalueFamily::Quantum { mus, .. } => {
                mus.len()
            }
            EigenvalueFamily::Symmetric { rhos, .. } => rhos.len(),
            EigenvalueFamily::Custom { scalars } => scalars.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn name(&self) -> &'static str {
        match self {
            EigenvalueFamily::Unitary { .. } => "unitary",
            EigenvalueFamily::Symmetric { .. } => "symmetric",
            EigenvalueFamily::Quantum { .. } => "quantum",
            EigenvalueFamily::Custom { .. } => "custom",
        }
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.len() {
            return Err(Error::Input(format!(
                "member {i} requested from a family of {}",
                self.len()
            )));
        }
        Ok(())
    }

    /// `|μ_i|` for the unitary and quantum families, 0 otherwise.
    fn degree(&self, i: usize) -> usize {
        match self {
            EigenvalueFamily::Unitary { mus, .. } | EigenvalueFamily::Quantum { mus, .. } => {
                mus[i].weight()
            }
            _ => 0,
        }
    }
}

/// `s*_μ(q^{2(μ−δ_n)}; q²) / s*_μ(q^{2μ}; q²)` with `n = ℓ(μ)`.
fn quantum_prefactor(mu: &IntegerPartition, q2: &Rational) -> Result<Rational> {
    let shifted: Vec<i64> = mu.parts().iter().enumerate().map(|(i, &m)| m as i64 - i as i64).collect();
    let plain: Vec<i64> = mu.parts().iter().map(|&m| m as i64).collect();
    let num = q_interp_schur_tableau(mu, &q_points(q2, &shifted), q2)?;
    let den = q_interp_schur_tableau(mu, &q_points(q2, &plain), q2)?;
    if den == Rational::from_integer(0.into()) {
        return Err(Error::Degenerate(format!("s*_{mu}(q^(2mu)) vanishes")));
    }
    Ok(num / den)
}

/// `f_i(N)`: the scalar by which member `i` acts on the `N`-th representation.
pub fn family_eigenvalue(fam: &EigenvalueFamily, i: usize, n: usize) -> Result<Rational> {
    fam.check_index(i)?;
    match fam {
        EigenvalueFamily::Unitary { mus, omega } => {
            let lambda = build_vk_sequence(omega, n)?;
            shifted_schur_tableau(&mus[i], &lambda.as_rationals())
        }
        EigenvalueFamily::Symmetric { rhos, thoma } => {
            if n > MAX_SYMMETRIC_N {
                return Err(Error::Bound(format!(
                    "symmetric family supports N <= {MAX_SYMMETRIC_N}, got {n}"
                )));
            }
            let lambda = build_thoma_sequence(thoma, n)?;
            normalized_character_with_fixed_points(&lambda, &rhos[i])
        }
        EigenvalueFamily::Quantum { mus, nu, q2 } => {
            let lambda = build_stabilizing_sequence(nu, n)?;
            let exps: Vec<i64> = lambda
                .entries()
                .iter()
                .enumerate()
                .map(|(k, &l)| l - k as i64)
                .collect();
            let value = q_interp_schur_tableau(&mus[i], &q_points(q2, &exps), q2)?;
            Ok(quantum_prefactor(&mus[i], q2)? * value)
        }
        EigenvalueFamily::Custom { scalars } => Ok(scalars[i].clone()),
    }
}

/// LLN normalizer: `N^{|μ|}` (unitary), 1 (symmetric, custom), `q^{−2(N−1)|μ|}` (quantum).
pub fn family_normalizer(fam: &EigenvalueFamily, i: usize, n: usize) -> Result<Rational> {
    fam.check_index(i)?;
    let d = fam.degree(i);
    Ok(match fam {
        EigenvalueFamily::Unitary { .. } => num_traits::pow(Rational::from_integer(n.into()), d),
        EigenvalueFamily::Quantum { q2, .. } => {
            rational_pow(q2, -((n as i64 - 1) * d as i64))
        }
        _ => Rational::one(),
    })
}

/// `ℓ_i`: `s_μ(ω)`, `χ^ω_ρ`, `s_μ(ω_ν)` or the custom scalar.
pub fn family_limit(fam: &EigenvalueFamily, i: usize) -> Result<Rational> {
    fam.check_index(i)?;
    match fam {
        EigenvalueFamily::Unitary { mus, omega } => s_mu_omega(&mus[i], omega),
        EigenvalueFamily::Symmetric { rhos, thoma } => thoma_character_value(thoma, &rhos[i]),
        EigenvalueFamily::Quantum { mus, nu, q2 } => s_mu_omega_nu(&mus[i], nu, q2),
        EigenvalueFamily::Custom { scalars } => Ok(scalars[i].clone()),
    }
}
