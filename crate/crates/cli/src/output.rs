//! CSV and JSON rendering. Every number appears as an exact string next to a 15-digit
//! decimal derived from it.

use fock_core::asymptotics::{ConvergenceReport, ReportKind};
use fock_core::combinatorics::IntegerPartition;
use fock_core::exactnum::{rational_to_decimal, rational_to_string, Rational};
use serde_json::{Map, Value};

use crate::config::{ExperimentConfig, OutFormat};

const DIGITS: usize = 15;

pub const CSV_HEADER: &str = "gridIndex,N,L,value_exact,value_decimal,limit_exact,abs_error_exact,abs_error_decimal,rate_estimate";

/// Coefficients `h_0..h_K` of a boundary generating function, plus optional `s_μ` values.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryTable {
    pub h: Vec<Rational>,
    pub s_mu: Vec<(IntegerPartition, Rational)>,
}

fn rate_cell(r: Option<f64>) -> String {
    r.map(|x| format!("{x:.6}")).unwrap_or_default()
}

struct Row {
    index: usize,
    n: usize,
    l: Option<usize>,
    value_exact: String,
    value_decimal: String,
    limit_exact: String,
    error_exact: String,
    error_decimal: String,
    rate: String,
}

fn rows(report: &ConvergenceReport) -> Vec<Row> {
    let limit = rational_to_string(&report.limit);
    (0..report.values.len())
        .map(|k| Row {
            index: k,
            n: report.n_values[k],
            l: (report.kind == ReportKind::Clt).then(|| report.l_values[k]),
            value_exact: report.values[k].to_string(),
            value_decimal: report.values[k].to_decimal(DIGITS),
            limit_exact: limit.clone(),
            error_exact: report.abs_errors[k].to_string(),
            error_decimal: report.abs_errors[k].to_decimal(DIGITS),
            rate: rate_cell(report.rate_estimates[k]),
        })
        .collect()
}

fn metadata(config: &ExperimentConfig) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("tool".into(), "fock-asymptotics".into());
    m.insert("version".into(), env!("CARGO_PKG_VERSION").into());
    m.insert("config".into(), Value::Object(config.echo()));
    m
}

fn to_json(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("serializable");
    s.push('\n');
    s
}

pub fn render_report(config: &ExperimentConfig, report: &ConvergenceReport) -> String {
    let rows = rows(report);
    match config.out {
        OutFormat::Csv => {
            let mut out = String::from(CSV_HEADER);
            out.push('\n');
            for r in &rows {
                let l = r.l.map(|l| l.to_string()).unwrap_or_default();
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{}\n",
                    r.index,
                    r.n,
                    l,
                    r.value_exact,
                    r.value_decimal,
                    r.limit_exact,
                    r.error_exact,
                    r.error_decimal,
                    r.rate
                ));
            }
            out
        }
        OutFormat::Json => {
            let mut meta = metadata(config);
            meta.insert("limit_exact".into(), rational_to_string(&report.limit).into());
            meta.insert(
                "limit_decimal".into(),
                rational_to_decimal(&report.limit, DIGITS).into(),
            );
            meta.insert(
                "fitted_rate".into(),
                report.fitted_rate.map(|r| Value::from(format!("{r:.6}"))).unwrap_or(Value::Null),
            );
            meta.insert("errors_monotone".into(), report.passed.into());
            let table: Vec<Value> = rows
                .into_iter()
                .map(|r| {
                    let mut o = Map::new();
                    o.insert("gridIndex".into(), r.index.into());
                    o.insert("N".into(), r.n.into());
                    o.insert("L".into(), r.l.map(Value::from).unwrap_or(Value::Null));
                    o.insert("value_exact".into(), r.value_exact.into());
                    o.insert("value_decimal".into(), r.value_decimal.into());
                    o.insert("limit_exact".into(), r.limit_exact.into());
                    o.insert("abs_error_exact".into(), r.error_exact.into());
                    o.insert("abs_error_decimal".into(), r.error_decimal.into());
                    o.insert(
                        "rate_estimate".into(),
                        if r.rate.is_empty() { Value::Null } else { r.rate.into() },
                    );
                    Value::Object(o)
                })
                .collect();
            let mut top = Map::new();
            top.insert("metadata".into(), Value::Object(meta));
            top.insert("rows".into(), Value::Array(table));
            to_json(Value::Object(top))
        }
    }
}

pub fn render_boundary(config: &ExperimentConfig, table: &BoundaryTable) -> String {
    match config.out {
        OutFormat::Csv => {
            let mut out = String::from("k,h_exact,h_decimal\n");
            for (k, h) in table.h.iter().enumerate() {
                out.push_str(&format!(
                    "{k},{},{}\n",
                    rational_to_string(h),
                    rational_to_decimal(h, DIGITS)
                ));
            }
            out
        }
        OutFormat::Json => {
            let mut top = Map::new();
            top.insert("metadata".into(), Value::Object(metadata(config)));
            top.insert(
                "h_exact".into(),
                table.h.iter().map(|h| Value::from(rational_to_string(h))).collect(),
            );
            top.insert(
                "h_decimal".into(),
                table
                    .h
                    .iter()
                    .map(|h| Value::from(rational_to_decimal(h, DIGITS)))
                    .collect(),
            );
            if !table.s_mu.is_empty() {
                let s: Vec<Value> = table
                    .s_mu
                    .iter()
                    .map(|(mu, v)| {
                        let mut o = Map::new();
                        o.insert(
                            "mu".into(),
                            mu.parts().iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",").into(),
                        );
                        o.insert("exact".into(), rational_to_string(v).into());
                        o.insert("decimal".into(), rational_to_decimal(v, DIGITS).into());
                        Value::Object(o)
                    })
                    .collect();
                top.insert("s_mu".into(), Value::Array(s));
            }
            to_json(Value::Object(top))
        }
    }
}
