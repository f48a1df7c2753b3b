use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::characters::{NuSequence, OmegaParams, ThomaParams};
use crate::combinatorics::{IntegerPartition, Signature};
use crate::exactnum::Rational;
use crate::{Error, Result};

fn floor_usize(x: &Rational) -> Result<usize> {
    x.floor()
        .to_integer()
        .to_usize()
        .ok_or_else(|| Error::Construction(format!("{x} does not fit a row length")))
}

/// `⌊c·√N⌋` for `c ≥ 0`, as `isqrt(⌊c²N⌋)`.
fn floor_scaled_sqrt(c: &Rational, n: usize) -> Result<usize> {
    let sq: BigInt = (c * c * Rational::from_integer(n.into())).floor().to_integer();
    sq.sqrt()
        .to_usize()
        .ok_or_else(|| Error::Construction("gamma rectangle too large".into()))
}

/// Young diagram with rows `⌊α_i N⌋`, columns `⌊β_j N⌋`, and a `⌊√N⌋ × ⌊γ√N⌋` rectangle
/// whose top rows are shared with the α rows.
///
/// The first `p + g` rows (α rows, then the rectangle) all start with the `r` β columns, so
/// rows read `max(A_i, r + G)` and `r + G`, and column `j ≤ r` has length `max(B_j, p + g)`.
fn diagram(alpha: &[Rational], beta: &[Rational], gamma: &Rational, n: usize) -> Result<Vec<usize>> {
    let nr = Rational::from_integer(n.into());
    let rows: Vec<usize> = alpha.iter().map(|a| floor_usize(&(a * &nr))).collect::<Result<_>>()?;
    let cols: Vec<usize> = beta.iter().map(|b| floor_usize(&(b * &nr))).collect::<Result<_>>()?;
    let (g, big_g) = if gamma.is_zero() {
        (0, 0)
    } else {
        (floor_scaled_sqrt(&Rational::one(), n)?, floor_scaled_sqrt(gamma, n)?)
    };
    let (p, r) = (rows.len(), cols.len());
    // the padded alpha rows are the top of the gamma rectangle
    let g = g.saturating_sub(p);
    let mut shape: Vec<usize> = rows.iter().map(|&a| a.max(r + big_g)).collect();
    shape.extend(std::iter::repeat_n(r + big_g, g));
    let col_len: Vec<usize> = cols.iter().map(|&b| b.max(p + g)).collect();
    let depth = col_len.first().copied().unwrap_or(0);
    for k in (p + g)..depth {
        shape.push(col_len.iter().filter(|&&c| c > k).count());
    }
    while shape.last() == Some(&0) {
        shape.pop();
    }
    Ok(shape)
}

/// Vershik–Kerov sequence member `λ(N) ∈ Sign_N` for a finite-support `ω`: rows realize `α^±`,
/// columns realize `β^±`, and `γ^±` becomes a rectangle with `⌊√N⌋` rows.
pub fn build_vk_sequence(omega: &OmegaParams, n: usize) -> Result<Signature> {
    omega.validate()?;
    if n == 0 {
        return Err(Error::Input("N must be positive".into()));
    }
    let plus = diagram(&omega.alpha_plus, &omega.beta_plus, &omega.gamma_plus, n)?;
    let minus = diagram(&omega.alpha_minus, &omega.beta_minus, &omega.gamma_minus, n)?;
    if plus.len() + minus.len() > n {
        return Err(Error::Construction(format!(
            "N = {n}: positive part needs {} rows and negative part {} rows",
            plus.len(),
            minus.len()
        )));
    }
    let mut entries = vec![0i64; n];
    for (slot, &v) in entries.iter_mut().zip(&plus) {
        *slot = v as i64;
    }
    for (k, &v) in minus.iter().enumerate() {
        entries[n - 1 - k] = -(v as i64);
    }
    Signature::new(entries)
}

/// A partition of exactly `N` realizing the Thoma point `(α, β)`: the same row/column
/// construction with `γ = 1 − Σα − Σβ`, then the leftover boxes appended as short rows at the
/// bottom.
pub fn build_thoma_sequence(thoma: &ThomaParams, n: usize) -> Result<IntegerPartition> {
    let rest = Rational::one() - thoma.alpha.iter().chain(&thoma.beta).sum::<Rational>();
    if rest.is_negative() {
        return Err(Error::Parameter("Thoma coordinates sum above 1".into()));
    }
    let mut shape = diagram(&thoma.alpha, &thoma.beta, &rest, n)?;
    let area: usize = shape.iter().sum();
    if area > n {
        return Err(Error::Construction(format!(
            "N = {n} is too small: the row and column allocation already uses {area} boxes"
        )));
    }
    let mut deficit = n - area;
    while deficit > 0 {
        let cap = shape.last().copied().unwrap_or(deficit);
        let row = cap.min(deficit);
        shape.push(row);
        deficit -= row;
    }
    IntegerPartition::new(shape)
}

/// `λ(N)` with `λ(N)_{N+1−j} = ν_j` for every `j ≤ N`.
pub fn build_stabilizing_sequence(nu: &NuSequence, n: usize) -> Result<Signature> {
    if n == 0 {
        return Err(Error::Input("N must be positive".into()));
    }
    Signature::new((0..n).map(|i| nu.value(n - i)).collect())
}
