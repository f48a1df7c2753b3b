use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use super::clt::{clt_limit, scaled_clt_moment, Normalization};
use crate::fock::{joint_moment_coherent, AffineProcessSpec, CoherentState};
use super::families::{family_eigenvalue, family_limit, family_normalizer, EigenvalueFamily};
use crate::exactnum::{QuadraticSurd, Rational};
use crate::{Error, Result};

/// Caps the number of worker threads used for grid evaluation.
pub const THREADS_ENV: &str = "FOCK_ASYMPTOTICS_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportKind {
    Lln,
    Moments,
    Clt,
}

/// Exact values along a grid together with their distance to the limit.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub kind: ReportKind,
    pub normalization: Option<Normalization>,
    pub n_values: Vec<usize>,
    pub l_values: Vec<usize>,
    pub values: Vec<QuadraticSurd>,
    pub limit: Rational,
    pub abs_errors: Vec<QuadraticSurd>,
    /// `log(e_{k−1}/e_k) / log(g_k/g_{k−1})` for each grid point after the first.
    pub rate_estimates: Vec<Option<f64>>,
    /// Least-squares slope of `−log e` against `log g` over the nonzero errors.
    pub fitted_rate: Option<f64>,
    /// Errors never increase along the grid.
    pub passed: bool,
}

impl ConvergenceReport {
    /// The grid the report is indexed by (`N` for LLN reports, `L` for CLT reports).
    pub fn grid(&self) -> &[usize] {
        match self.kind {
            ReportKind::Lln | ReportKind::Moments => &self.n_values,
            ReportKind::Clt => &self.l_values,
        }
    }

    /// Exact check `lo ≤ e_{k}/e_{k+1} ≤ hi` for every consecutive pair.
    pub fn error_ratios_within(&self, lo: &Rational, hi: &Rational) -> bool {
        self.abs_errors.windows(2).all(|w| {
            !w[1].is_zero()
                && w[1].scale(lo).cmp_exact(&w[0]).is_le()
                && w[0].cmp_exact(&w[1].scale(hi)).is_le()
        })
    }

    fn new(
        kind: ReportKind,
        normalization: Option<Normalization>,
        n_values: Vec<usize>,
        l_values: Vec<usize>,
        values: Vec<QuadraticSurd>,
        limit: Rational,
    ) -> Self {
        let abs_errors: Vec<QuadraticSurd> =
            values.iter().map(|v| v.add_rational(&-limit.clone()).abs()).collect();
        let grid = match kind {
            ReportKind::Lln | ReportKind::Moments => &n_values,
            ReportKind::Clt => &l_values,
        };
        let logs: Vec<Option<f64>> = abs_errors.iter().map(log_abs).collect();
        let mut rate_estimates = vec![None];
        for k in 1..grid.len() {
            let est = match (logs[k - 1], logs[k]) {
                (Some(a), Some(b)) if grid[k] != grid[k - 1] => {
                    Some((a - b) / ((grid[k] as f64).ln() - (grid[k - 1] as f64).ln()))
                }
                _ => None,
            };
            rate_estimates.push(est);
        }
        let pts: Vec<(f64, f64)> = grid
            .iter()
            .zip(&logs)
            .filter_map(|(&g, e)| e.map(|e| ((g as f64).ln(), -e)))
            .collect();
        let fitted_rate = least_squares_slope(&pts);
        let passed = abs_errors.windows(2).all(|w| w[1].cmp_exact(&w[0]).is_le());
        ConvergenceReport {
            kind,
            normalization,
            n_values,
            l_values,
            values,
            limit,
            abs_errors,
            rate_estimates,
            fitted_rate,
            passed,
        }
    }
}

fn log_abs(e: &QuadraticSurd) -> Option<f64> {
    if e.is_zero() {
        return None;
    }
    let r = e.approx(40);
    if r.is_zero() {
        return None;
    }
    // ln(p/q) computed from the bit lengths to survive huge numerators
    let ln_big = |x: &num_bigint::BigInt| {
        let bits = x.bits();
        let shift = bits.saturating_sub(60);
        let top = (x.abs() >> shift).to_f64().unwrap_or(f64::NAN);
        top.ln() + shift as f64 * std::f64::consts::LN_2
    };
    Some(ln_big(r.numer()) - ln_big(r.denom()))
}

fn least_squares_slope(pts: &[(f64, f64)]) -> Option<f64> {
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    Some(sxy / sxx)
}

fn thread_cap() -> Result<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(k) if k > 0 => Ok(Some(k)),
            _ => Err(Error::Input(format!("{THREADS_ENV} must be a positive integer, got {s:?}"))),
        },
    }
}

/// Evaluate `f` on every grid point, in parallel, collecting results in grid order.
fn grid_map<T, R, F>(items: &[T], f: F) -> Result<Vec<R>>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Result<R> + Sync + Send,
{
    let run = || items.par_iter().map(&f).collect::<Result<Vec<R>>>();
    match thread_cap()? {
        None => run(),
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .map_err(|e| Error::Input(format!("cannot build thread pool: {e}")))?
            .install(run),
    }
}

fn check_grid(grid: &[usize]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::Input("grid is empty".into()));
    }
    if grid[0] == 0 || grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Input("grid must be positive and strictly increasing".into()));
    }
    Ok(())
}

/// `t f_i(N) / P_i(N)` against `t ℓ_i` along `grid_n`.
pub fn lln_report(
    fam: &EigenvalueFamily,
    i: usize,
    grid_n: &[usize],
    t: &Rational,
) -> Result<ConvergenceReport> {
    check_grid(grid_n)?;
    let limit = t * family_limit(fam, i)?;
    let values = grid_map(grid_n, |&n| {
        let v = family_eigenvalue(fam, i, n)? / family_normalizer(fam, i, n)?;
        Ok(QuadraticSurd::rational(t * v))
    })?;
    Ok(ConvergenceReport::new(
        ReportKind::Lln,
        None,
        grid_n.to_vec(),
        grid_n.to_vec(),
        values,
        limit,
    ))
}

fn scalar_moment(scalars: Vec<Rational>, t: &Rational) -> Result<Rational> {
    let ops: Vec<AffineProcessSpec> = scalars.into_iter().map(AffineProcessSpec::real_scalar).collect();
    let psi = CoherentState::scalar_unit();
    let z = joint_moment_coherent(&ops, &psi, &psi, t)?;
    if !z.im.is_zero() {
        return Err(Error::Domain("scalar moment is not real".into()));
    }
    Ok(z.re)
}

/// Raw joint moment `⟨Λ_t(f̃_{i_1}(N))⋯Λ_t(f̃_{i_m}(N))⟩` of the normalized scalars
/// `f̃_i = f_i/P_i` along `grid_n`, against the same moment of the limits `ℓ_i`.
pub fn moment_report(
    fam: &EigenvalueFamily,
    indices: &[usize],
    grid_n: &[usize],
    t: &Rational,
) -> Result<ConvergenceReport> {
    check_grid(grid_n)?;
    if indices.is_empty() {
        return Err(Error::Input("at least one factor is required".into()));
    }
    let limits = indices.iter().map(|&i| family_limit(fam, i)).collect::<Result<Vec<_>>>()?;
    let limit = scalar_moment(limits, t)?;
    let values = grid_map(grid_n, |&n| {
        let scaled = indices
            .iter()
            .map(|&i| Ok(family_eigenvalue(fam, i, n)? / family_normalizer(fam, i, n)?))
            .collect::<Result<Vec<_>>>()?;
        Ok(QuadraticSurd::rational(scalar_moment(scaled, t)?))
    })?;
    Ok(ConvergenceReport::new(
        ReportKind::Moments,
        None,
        grid_n.to_vec(),
        grid_n.to_vec(),
        values,
        limit,
    ))
}

/// [`scaled_clt_moment`] along `grid_l` with `N = L`, against the Wick limit.
pub fn clt_report(
    fam: &EigenvalueFamily,
    indices: &[usize],
    grid_l: &[usize],
    t: &Rational,
    normalization: Normalization,
) -> Result<ConvergenceReport> {
    let pairs: Vec<(usize, usize)> = grid_l.iter().map(|&l| (l, l)).collect();
    clt_report_with(fam, indices, &pairs, t, normalization)
}

/// [`clt_report`] with explicit `(N, L)` pairs; `L` must be strictly increasing.
pub fn clt_report_with(
    fam: &EigenvalueFamily,
    indices: &[usize],
    pairs: &[(usize, usize)],
    t: &Rational,
    normalization: Normalization,
) -> Result<ConvergenceReport> {
    let grid_l: Vec<usize> = pairs.iter().map(|p| p.1).collect();
    check_grid(&grid_l)?;
    let limit = clt_limit(fam, indices, t, normalization)?;
    let values = grid_map(pairs, |&(n, l)| {
        scaled_clt_moment(fam, indices, n, l, t, normalization)
    })?;
    Ok(ConvergenceReport::new(
        ReportKind::Clt,
        Some(normalization),
        pairs.iter().map(|p| p.0).collect(),
        grid_l,
        values,
        limit,
    ))
}
