//! `fock-asymptotics`: run exact moment, LLN, CLT, character and boundary experiments and
//! write CSV or JSON reports.
//!
//! Exit codes: 0 on success, 2 for invalid configurations, 3 when the computation hits a
//! degenerate case (zero variance, vanishing normalizer, impossible construction).

mod config;
mod output;

use std::ffi::OsString;
use std::io::Write;

pub use config::{parse_config, ExperimentConfig, FamilyTag, Kind, OutFormat};
pub use output::{render_boundary, render_report, BoundaryTable};

use fock_core::asymptotics::{
    clt_report, lln_report, moment_report, ConvergenceReport, EigenvalueFamily,
};
use fock_core::characters::{phi_omega_h_series, q_boundary_h_series, s_mu_omega, s_mu_omega_nu};
use fock_core::exactnum::Rational;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Clap(#[from] clap::Error),
    #[error("{0}")]
    Data(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Clap(e) => e.exit_code(),
            CliError::Data(_) => 3,
            CliError::Io(_) => 1,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) | CliError::Clap(_) => "usage",
            CliError::Data(_) => "data",
            CliError::Io(_) => "io",
        }
    }
}

impl From<fock_core::Error> for CliError {
    fn from(e: fock_core::Error) -> Self {
        if e.is_degeneracy() {
            CliError::Data(e.to_string())
        } else {
            CliError::Usage(e.to_string())
        }
    }
}

/// The family described by the configuration.
pub fn build_family(config: &ExperimentConfig) -> Result<EigenvalueFamily, CliError> {
    let missing = || CliError::Usage("family parameters are incomplete".into());
    Ok(match config.family.ok_or_else(missing)? {
        FamilyTag::Unitary => EigenvalueFamily::Unitary {
            mus: config.mu.clone(),
            omega: config.omega.clone().ok_or_else(missing)?,
        },
        FamilyTag::Symmetric => EigenvalueFamily::Symmetric {
            rhos: config.rho.clone(),
            thoma: config.thoma.clone().ok_or_else(missing)?,
        },
        FamilyTag::Quantum => EigenvalueFamily::Quantum {
            mus: config.mu.clone(),
            nu: config.nu.clone().ok_or_else(missing)?,
            q2: config.q2.clone().ok_or_else(missing)?,
        },
        FamilyTag::Custom => EigenvalueFamily::Custom {
            scalars: config.scalars.clone(),
        },
    })
}

/// Factor list: `--indices` if given, else `m` factors cycling through the members.
fn factor_indices(config: &ExperimentConfig, fam: &EigenvalueFamily, default_m: usize) -> Vec<usize> {
    match &config.indices {
        Some(ix) => ix.clone(),
        None => (0..config.m.unwrap_or(default_m)).map(|k| k % fam.len()).collect(),
    }
}

/// Either a convergence report or a boundary series table.
#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Report(ConvergenceReport),
    Boundary(BoundaryTable),
}

pub fn compute(config: &ExperimentConfig) -> Result<Outcome, CliError> {
    if config.kind == Kind::Boundary {
        return boundary(config).map(Outcome::Boundary);
    }
    let fam = build_family(config)?;
    let report = match config.kind {
        Kind::Moments => moment_report(&fam, &factor_indices(config, &fam, 1), &config.grid, &config.t)?,
        Kind::Lln => lln_report(&fam, config.index, &config.grid, &config.t)?,
        Kind::Characters => lln_report(&fam, config.index, &config.grid, &Rational::from_integer(1.into()))?,
        Kind::Clt => clt_report(
            &fam,
            &factor_indices(config, &fam, 2),
            &config.grid,
            &config.t,
            config.normalization,
        )?,
        Kind::Boundary => unreachable!(),
    };
    Ok(Outcome::Report(report))
}

fn boundary(config: &ExperimentConfig) -> Result<BoundaryTable, CliError> {
    let (h, s_mu) = match (&config.nu, &config.q2, &config.omega) {
        (Some(nu), Some(q2), _) => {
            let h = q_boundary_h_series(nu, q2, config.order)?;
            let s = config
                .mu
                .iter()
                .map(|mu| s_mu_omega_nu(mu, nu, q2))
                .collect::<fock_core::Result<Vec<_>>>()?;
            (h, s)
        }
        (_, _, Some(omega)) => {
            let h = phi_omega_h_series(omega, config.order)?;
            let s = config
                .mu
                .iter()
                .map(|mu| s_mu_omega(mu, omega))
                .collect::<fock_core::Result<Vec<_>>>()?;
            (h, s)
        }
        _ => return Err(CliError::Usage("boundary needs --nu with --q2, or --omega".into())),
    };
    Ok(BoundaryTable {
        h: h.coeffs().to_vec(),
        s_mu: config.mu.iter().cloned().zip(s_mu).collect(),
    })
}

/// Compute and render the report for `config`.
pub fn run(config: &ExperimentConfig) -> Result<String, CliError> {
    Ok(match compute(config)? {
        Outcome::Report(r) => render_report(config, &r),
        Outcome::Boundary(b) => render_boundary(config, &b),
    })
}

fn error_record(e: &CliError) -> String {
    let mut inner = serde_json::Map::new();
    inner.insert("kind".into(), e.kind().into());
    inner.insert("exitCode".into(), e.exit_code().into());
    inner.insert("message".into(), e.to_string().trim_end().into());
    let mut outer = serde_json::Map::new();
    outer.insert("error".into(), serde_json::Value::Object(inner));
    serde_json::Value::Object(outer).to_string()
}

/// Full command-line entry point; returns the process exit code.
pub fn execute<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let result = parse_config(args).and_then(|config| {
        let body = run(&config)?;
        match &config.output {
            Some(path) => std::fs::write(path, body)
                .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
            None => std::io::stdout()
                .write_all(body.as_bytes())
                .map_err(|e| CliError::Io(e.to_string())),
        }
    });
    match result {
        Ok(()) => 0,
        Err(CliError::Clap(e)) if e.exit_code() == 0 => {
            let _ = e.print();
            0
        }
        Err(e) => {
            eprintln!("{}", error_record(&e));
            e.exit_code()
        }
    }
}
