//! Experiment configuration from flags and an optional JSON file; flags win.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use fock_core::asymptotics::Normalization;
use fock_core::characters::{NuSequence, OmegaParams, ThomaParams};
use fock_core::combinatorics::IntegerPartition;
use fock_core::exactnum::{parse_rational, rational_to_string, Rational};
use num_traits::{One, Signed, Zero};
use serde::Deserialize;
use serde_json::{Map, Value};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Moments,
    Lln,
    Clt,
    Characters,
    Boundary,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Moments => "moments",
            Kind::Lln => "lln",
            Kind::Clt => "clt",
            Kind::Characters => "characters",
            Kind::Boundary => "boundary",
        }
    }

    fn from_name(s: &str) -> Result<Self, CliError> {
        <Kind as ValueEnum>::from_str(s, false)
            .map_err(|_| CliError::Usage(format!("unknown experiment kind {s:?}")))
    }

    fn is_process(self) -> bool {
        matches!(self, Kind::Moments | Kind::Lln | Kind::Clt)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyTag {
    Unitary,
    Symmetric,
    Quantum,
    Custom,
}

impl FamilyTag {
    pub fn name(self) -> &'static str {
        match self {
            FamilyTag::Unitary => "unitary",
            FamilyTag::Symmetric => "symmetric",
            FamilyTag::Quantum => "quantum",
            FamilyTag::Custom => "custom",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutFormat {
    Csv,
    Json,
}

/// A fully validated experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub kind: Kind,
    pub family: Option<FamilyTag>,
    pub omega: Option<OmegaParams>,
    pub thoma: Option<ThomaParams>,
    pub nu: Option<NuSequence>,
    pub q2: Option<Rational>,
    pub mu: Vec<IntegerPartition>,
    pub rho: Vec<IntegerPartition>,
    pub scalars: Vec<Rational>,
    pub grid: Vec<usize>,
    pub t: Rational,
    pub normalization: Normalization,
    pub m: Option<usize>,
    pub indices: Option<Vec<usize>>,
    pub index: usize,
    pub order: usize,
    pub out: OutFormat,
    pub output: Option<PathBuf>,
}

#[derive(Debug, Parser)]
#[command(
    name = "fock-asymptotics",
    version,
    about = "Exact LLN/CLT convergence reports for conservation-operator processes"
)]
struct Flags {
    /// Experiment to run
    #[arg(value_enum)]
    kind: Option<Kind>,
    /// unitary | symmetric | quantum | custom
    #[arg(long)]
    family: Option<String>,
    /// Boundary point of U(∞), e.g. '{"alphaPlus":["1"]}'
    #[arg(long)]
    omega: Option<String>,
    /// Thoma point, e.g. '{"alpha":["1/2","1/2"]}'
    #[arg(long)]
    thoma: Option<String>,
    /// Stabilization target, '{"prefix":[0],"tail":1}' or 'prefix=[0];tail=1'
    #[arg(long)]
    nu: Option<String>,
    /// Partitions like "2,1"; separate several with ';' or repeat the flag
    #[arg(long)]
    mu: Vec<String>,
    /// Cycle types for the symmetric family, same syntax as --mu
    #[arg(long)]
    rho: Vec<String>,
    /// Comma-separated rationals for the custom family
    #[arg(long)]
    scalars: Option<String>,
    /// q² as p/q, strictly between 0 and 1
    #[arg(long)]
    q2: Option<String>,
    /// Grid of N (or L) values: "5,10,20" or "a:b:step"
    #[arg(long)]
    grid: Option<String>,
    /// Time parameter as p/q
    #[arg(long)]
    t: Option<String>,
    /// variance | power
    #[arg(long)]
    normalization: Option<String>,
    /// Number of factors for moments and clt
    #[arg(long)]
    m: Option<String>,
    /// Explicit family members, one per factor, e.g. "0,1,0,1"
    #[arg(long)]
    indices: Option<String>,
    /// Family member for lln and characters
    #[arg(long)]
    index: Option<String>,
    /// Series order for boundary
    #[arg(long = "K")]
    order: Option<String>,
    /// csv | json
    #[arg(long)]
    out: Option<String>,
    /// Report path (stdout when absent)
    #[arg(long)]
    output: Option<PathBuf>,
    /// JSON file with the same keys as the flags
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    kind: Option<Value>,
    family: Option<Value>,
    omega: Option<Value>,
    thoma: Option<Value>,
    nu: Option<Value>,
    mu: Option<Value>,
    rho: Option<Value>,
    scalars: Option<Value>,
    q2: Option<Value>,
    grid: Option<Value>,
    t: Option<Value>,
    normalization: Option<Value>,
    m: Option<Value>,
    indices: Option<Value>,
    index: Option<Value>,
    #[serde(rename = "K")]
    order: Option<Value>,
    out: Option<Value>,
    output: Option<Value>,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn text(key: &str, v: &Value) -> Result<String, CliError> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) if n.is_i64() || n.is_u64() => Ok(n.to_string()),
        Value::Number(n) => Err(usage(format!(
            "{key}: {n} is a floating-point literal; write rationals as p/q"
        ))),
        _ => Err(usage(format!("{key}: expected a string"))),
    }
}

fn rational(key: &str, v: &Value) -> Result<Rational, CliError> {
    let s = text(key, v)?;
    parse_rational(s.trim()).map_err(|e| usage(format!("{key}: {e}")))
}

fn count(key: &str, v: &Value) -> Result<usize, CliError> {
    let s = text(key, v)?;
    s.trim()
        .parse()
        .map_err(|_| usage(format!("{key}: {s:?} is not a nonnegative integer")))
}

fn rational_list(key: &str, v: &Value) -> Result<Vec<Rational>, CliError> {
    match v {
        Value::Array(items) => items.iter().map(|x| rational(key, x)).collect(),
        _ => {
            let s = text(key, v)?;
            s.split(',')
                .filter(|p| !p.trim().is_empty())
                .map(|p| parse_rational(p.trim()).map_err(|e| usage(format!("{key}: {e}"))))
                .collect()
        }
    }
}

fn index_list(key: &str, v: &Value) -> Result<Vec<usize>, CliError> {
    match v {
        Value::Array(items) => items.iter().map(|x| count(key, x)).collect(),
        _ => text(key, v)?
            .split(',')
            .map(|p| {
                p.trim()
                    .parse()
                    .map_err(|_| usage(format!("{key}: {p:?} is not an index")))
            })
            .collect(),
    }
}

fn partitions(key: &str, v: &Value) -> Result<Vec<IntegerPartition>, CliError> {
    let strings: Vec<String> = match v {
        Value::Array(items) => items.iter().map(|x| text(key, x)).collect::<Result<_, _>>()?,
        _ => vec![text(key, v)?],
    };
    strings
        .iter()
        .flat_map(|s| s.split(';').map(str::to_owned).collect::<Vec<_>>())
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            s.trim()
                .parse::<IntegerPartition>()
                .map_err(|e| usage(format!("{key}: {e}")))
        })
        .collect()
}

/// `"a:b:step"` (inclusive) or a comma list.
fn grid(v: &Value) -> Result<Vec<usize>, CliError> {
    let g = match v {
        Value::Array(_) => index_list("grid", v)?,
        _ => {
            let s = text("grid", v)?;
            let pieces: Vec<&str> = s.split(':').collect();
            match pieces.as_slice() {
                [a, b, step] => {
                    let p = |x: &str| {
                        x.trim()
                            .parse::<usize>()
                            .map_err(|_| usage(format!("grid: {x:?} is not an integer")))
                    };
                    let (a, b, step) = (p(a)?, p(b)?, p(step)?);
                    if step == 0 {
                        return Err(usage("grid: step must be positive"));
                    }
                    (a..=b).step_by(step).collect()
                }
                [_] => index_list("grid", v)?,
                _ => return Err(usage(format!("grid: cannot parse {s:?}"))),
            }
        }
    };
    if g.is_empty() || g[0] == 0 || g.windows(2).any(|w| w[0] >= w[1]) {
        return Err(usage("grid must be nonempty, positive and strictly increasing"));
    }
    Ok(g)
}

fn json_object(key: &str, v: &Value) -> Result<Map<String, Value>, CliError> {
    let parsed;
    let v = match v {
        Value::String(s) => {
            parsed = serde_json::from_str::<Value>(s)
                .map_err(|e| usage(format!("{key}: invalid JSON: {e}")))?;
            &parsed
        }
        other => other,
    };
    match v {
        Value::Object(m) => Ok(m.clone()),
        _ => Err(usage(format!("{key}: expected a JSON object"))),
    }
}

fn take_fields(
    key: &str,
    mut obj: Map<String, Value>,
    allowed: &[&str],
) -> Result<Vec<Option<Value>>, CliError> {
    let out = allowed.iter().map(|k| obj.remove(*k)).collect();
    if let Some(extra) = obj.keys().next() {
        return Err(usage(format!("{key}: unknown key {extra:?}")));
    }
    Ok(out)
}

fn omega(v: &Value) -> Result<OmegaParams, CliError> {
    let keys = ["alphaPlus", "alphaMinus", "betaPlus", "betaMinus", "gammaPlus", "gammaMinus"];
    let f = take_fields("omega", json_object("omega", v)?, &keys)?;
    let list = |i: usize| f[i].as_ref().map_or(Ok(Vec::new()), |x| rational_list(keys[i], x));
    let scalar = |i: usize| f[i].as_ref().map_or(Ok(Rational::zero()), |x| rational(keys[i], x));
    OmegaParams::new(list(0)?, list(1)?, list(2)?, list(3)?, scalar(4)?, scalar(5)?)
        .map_err(|e| usage(format!("omega: {e}")))
}

fn thoma(v: &Value) -> Result<ThomaParams, CliError> {
    let f = take_fields("thoma", json_object("thoma", v)?, &["alpha", "beta"])?;
    let list = |i: usize, k| f[i].as_ref().map_or(Ok(Vec::new()), |x| rational_list(k, x));
    ThomaParams::new(list(0, "alpha")?, list(1, "beta")?).map_err(|e| usage(format!("thoma: {e}")))
}

fn int_list(key: &str, v: &Value) -> Result<Vec<i64>, CliError> {
    let items: Vec<String> = match v {
        Value::Array(items) => items.iter().map(|x| text(key, x)).collect::<Result<_, _>>()?,
        _ => {
            let s = text(key, v)?;
            let s = s.trim().trim_start_matches('[').trim_end_matches(']').to_owned();
            s.split(',').filter(|p| !p.trim().is_empty()).map(str::to_owned).collect()
        }
    };
    items
        .iter()
        .map(|p| {
            p.trim()
                .parse::<i64>()
                .map_err(|_| usage(format!("{key}: {p:?} is not an integer")))
        })
        .collect()
}

/// `{"prefix":[…],"tail":c}` or `prefix=[…];tail=c`.
fn nu(v: &Value) -> Result<NuSequence, CliError> {
    let obj = match v {
        Value::String(s) if !s.trim_start().starts_with('{') => {
            let mut m = Map::new();
            for piece in s.split(';').filter(|p| !p.trim().is_empty()) {
                let (k, val) = piece
                    .split_once('=')
                    .ok_or_else(|| usage(format!("nu: expected key=value, got {piece:?}")))?;
                m.insert(k.trim().to_owned(), Value::String(val.trim().to_owned()));
            }
            m
        }
        _ => json_object("nu", v)?,
    };
    let f = take_fields("nu", obj, &["prefix", "tail"])?;
    let prefix = f[0].as_ref().map_or(Ok(Vec::new()), |x| int_list("nu.prefix", x))?;
    let tail = match &f[1] {
        Some(x) => {
            let s = text("nu.tail", x)?;
            s.trim()
                .parse::<i64>()
                .map_err(|_| usage(format!("nu.tail: {s:?} is not an integer")))?
        }
        None => return Err(usage("nu: tail is required")),
    };
    NuSequence::new(prefix, tail).map_err(|e| usage(format!("nu: {e}")))
}

fn family(v: &Value) -> Result<FamilyTag, CliError> {
    match text("family", v)?.as_str() {
        "unitary" => Ok(FamilyTag::Unitary),
        "symmetric" => Ok(FamilyTag::Symmetric),
        "quantum" => Ok(FamilyTag::Quantum),
        "custom" => Ok(FamilyTag::Custom),
        other => Err(usage(format!("unknown family {other:?}"))),
    }
}

fn normalization(v: &Value) -> Result<Normalization, CliError> {
    match text("normalization", v)?.as_str() {
        "variance" => Ok(Normalization::ByVariance),
        "power" => Ok(Normalization::ByPower),
        other => Err(usage(format!("unknown normalization {other:?}"))),
    }
}

fn out_format(v: &Value) -> Result<OutFormat, CliError> {
    match text("out", v)?.as_str() {
        "csv" => Ok(OutFormat::Csv),
        "json" => Ok(OutFormat::Json),
        other => Err(usage(format!("unknown output format {other:?}"))),
    }
}

fn string_value(s: Option<String>) -> Option<Value> {
    s.map(Value::String)
}

fn multi_value(v: Vec<String>) -> Option<Value> {
    if v.is_empty() {
        None
    } else {
        Some(Value::Array(v.into_iter().map(Value::String).collect()))
    }
}

/// Parse command-line arguments (program name first) and an optional `--config` file.
pub fn parse_config<I, T>(args: I) -> Result<ExperimentConfig, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let flags = Flags::try_parse_from(args).map_err(CliError::Clap)?;
    let file: FileConfig = match &flags.config {
        Some(path) => {
            let body = std::fs::read_to_string(path)
                .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
            serde_json::from_str(&body)
                .map_err(|e| usage(format!("{}: {e}", path.display())))?
        }
        None => FileConfig::default(),
    };
    let pick = |flag: Option<Value>, file: &Option<Value>| flag.or_else(|| file.clone());

    let kind = match (flags.kind, &file.kind) {
        (Some(k), _) => k,
        (None, Some(v)) => Kind::from_name(&text("kind", v)?)?,
        (None, None) => return Err(usage("experiment kind is required")),
    };
    let family = pick(string_value(flags.family), &file.family).map(|v| family(&v)).transpose()?;
    let omega = pick(string_value(flags.omega), &file.omega).map(|v| omega(&v)).transpose()?;
    let thoma = pick(string_value(flags.thoma), &file.thoma).map(|v| thoma(&v)).transpose()?;
    let nu = pick(string_value(flags.nu), &file.nu).map(|v| nu(&v)).transpose()?;
    let q2 = pick(string_value(flags.q2), &file.q2).map(|v| rational("q2", &v)).transpose()?;
    let mu = pick(multi_value(flags.mu), &file.mu)
        .map(|v| partitions("mu", &v))
        .transpose()?
        .unwrap_or_default();
    let rho = pick(multi_value(flags.rho), &file.rho)
        .map(|v| partitions("rho", &v))
        .transpose()?
        .unwrap_or_default();
    let scalars = pick(string_value(flags.scalars), &file.scalars)
        .map(|v| rational_list("scalars", &v))
        .transpose()?
        .unwrap_or_default();
    let grid_values = pick(string_value(flags.grid), &file.grid).map(|v| grid(&v)).transpose()?;
    let t = pick(string_value(flags.t), &file.t)
        .map(|v| rational("t", &v))
        .transpose()?
        .unwrap_or_else(Rational::one);
    let normalization = pick(string_value(flags.normalization), &file.normalization)
        .map(|v| normalization(&v))
        .transpose()?
        .unwrap_or(Normalization::ByVariance);
    let m = pick(string_value(flags.m), &file.m).map(|v| count("m", &v)).transpose()?;
    let indices = pick(string_value(flags.indices), &file.indices)
        .map(|v| index_list("indices", &v))
        .transpose()?;
    let index = pick(string_value(flags.index), &file.index)
        .map(|v| count("index", &v))
        .transpose()?
        .unwrap_or(0);
    let order = pick(string_value(flags.order), &file.order)
        .map(|v| count("K", &v))
        .transpose()?
        .unwrap_or(5);
    let default_out = if kind == Kind::Boundary { OutFormat::Json } else { OutFormat::Csv };
    let out = pick(string_value(flags.out), &file.out)
        .map(|v| out_format(&v))
        .transpose()?
        .unwrap_or(default_out);
    let output = match (flags.output, &file.output) {
        (Some(p), _) => Some(p),
        (None, Some(v)) => Some(PathBuf::from(text("output", v)?)),
        (None, None) => None,
    };

    let config = ExperimentConfig {
        kind,
        family,
        omega,
        thoma,
        nu,
        q2,
        mu,
        rho,
        scalars,
        grid: grid_values.unwrap_or_default(),
        t,
        normalization,
        m,
        indices,
        index,
        order,
        out,
        output,
    };
    config.validate()?;
    Ok(config)
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if let Some(q2) = &self.q2 {
            if !(q2.is_positive() && q2 < &Rational::one()) {
                return Err(usage(format!("q2 = {q2} must lie strictly between 0 and 1")));
            }
        }
        if self.kind == Kind::Boundary {
            if self.nu.is_none() && self.omega.is_none() {
                return Err(usage("boundary needs --nu (with --q2) or --omega"));
            }
            if self.nu.is_some() && self.q2.is_none() {
                return Err(usage("boundary with --nu needs --q2"));
            }
            return Ok(());
        }
        if self.grid.is_empty() {
            return Err(usage("--grid is required"));
        }
        if self.kind.is_process() && !self.t.is_positive() {
            return Err(usage("t must be positive"));
        }
        let fam = self.family.ok_or_else(|| usage("--family is required"))?;
        let missing = |what: &str| usage(format!("{} family needs {what}", fam.name()));
        match fam {
            FamilyTag::Unitary => {
                self.omega.as_ref().ok_or_else(|| missing("--omega"))?;
                if self.mu.is_empty() {
                    return Err(missing("--mu"));
                }
            }
            FamilyTag::Symmetric => {
                self.thoma.as_ref().ok_or_else(|| missing("--thoma"))?;
                if self.rho.is_empty() {
                    return Err(missing("--rho"));
                }
            }
            FamilyTag::Quantum => {
                self.nu.as_ref().ok_or_else(|| missing("--nu"))?;
                self.q2.as_ref().ok_or_else(|| missing("--q2"))?;
                if self.mu.is_empty() {
                    return Err(missing("--mu"));
                }
            }
            FamilyTag::Custom => {
                if self.scalars.is_empty() {
                    return Err(missing("--scalars"));
                }
            }
        }
        if self.m == Some(0) {
            return Err(usage("--m must be positive"));
        }
        Ok(())
    }

    /// Canonical string form of every set field, for report metadata.
    pub fn echo(&self) -> Map<String, Value> {
        let mut m = Map::new();
        let s = |x: String| Value::String(x);
        let list = |v: &[Rational]| {
            Value::Array(v.iter().map(|r| Value::String(rational_to_string(r))).collect())
        };
        m.insert("kind".into(), s(self.kind.name().into()));
        if let Some(f) = self.family {
            m.insert("family".into(), s(f.name().into()));
        }
        if let Some(w) = &self.omega {
            let mut o = Map::new();
            o.insert("alphaPlus".into(), list(&w.alpha_plus));
            o.insert("alphaMinus".into(), list(&w.alpha_minus));
            o.insert("betaPlus".into(), list(&w.beta_plus));
            o.insert("betaMinus".into(), list(&w.beta_minus));
            o.insert("gammaPlus".into(), s(rational_to_string(&w.gamma_plus)));
            o.insert("gammaMinus".into(), s(rational_to_string(&w.gamma_minus)));
            m.insert("omega".into(), Value::Object(o));
        }
        if let Some(w) = &self.thoma {
            let mut o = Map::new();
            o.insert("alpha".into(), list(&w.alpha));
            o.insert("beta".into(), list(&w.beta));
            m.insert("thoma".into(), Value::Object(o));
        }
        if let Some(nu) = &self.nu {
            let mut o = Map::new();
            o.insert("prefix".into(), Value::from(nu.prefix().to_vec()));
            o.insert("tail".into(), Value::from(nu.tail()));
            m.insert("nu".into(), Value::Object(o));
        }
        if let Some(q2) = &self.q2 {
            m.insert("q2".into(), s(rational_to_string(q2)));
        }
        let parts = |v: &[IntegerPartition]| {
            Value::Array(v.iter().map(|p| Value::String(p.parts().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))).collect())
        };
        if !self.mu.is_empty() {
            m.insert("mu".into(), parts(&self.mu));
        }
        if !self.rho.is_empty() {
            m.insert("rho".into(), parts(&self.rho));
        }
        if !self.scalars.is_empty() {
            m.insert("scalars".into(), list(&self.scalars));
        }
        if self.kind == Kind::Boundary {
            m.insert("K".into(), Value::from(self.order));
        } else {
            m.insert("grid".into(), Value::from(self.grid.clone()));
            m.insert("t".into(), s(rational_to_string(&self.t)));
        }
        if self.kind == Kind::Clt {
            m.insert("normalization".into(), s(self.normalization.name().into()));
        }
        if let Some(ix) = &self.indices {
            m.insert("indices".into(), Value::from(ix.clone()));
        } else if let Some(k) = self.m {
            m.insert("m".into(), Value::from(k));
        }
        if matches!(self.kind, Kind::Lln | Kind::Characters) {
            m.insert("index".into(), Value::from(self.index));
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn grid_forms() {
        assert_eq!(grid(&json!("10:40:10")).unwrap(), vec![10, 20, 30, 40]);
        assert_eq!(grid(&json!("5,10,20")).unwrap(), vec![5, 10, 20]);
        assert_eq!(grid(&json!(["3", 7])).unwrap(), vec![3, 7]);
        assert!(grid(&json!("10,5")).is_err());
        assert!(grid(&json!("0,5")).is_err());
        assert!(grid(&json!("1:5:0")).is_err());
    }

    #[test]
    fn nu_forms_agree() {
        let a = nu(&json!("prefix=[0,1];tail=2")).unwrap();
        let b = nu(&json!({"prefix": [0, 1], "tail": 2})).unwrap();
        assert_eq!(a, b);
        assert!(nu(&json!("prefix=[1]")).is_err());
        assert!(nu(&json!({"tail": 0, "head": 1})).is_err());
    }

    #[test]
    fn floats_refused() {
        assert!(rational("t", &json!(0.5)).is_err());
        assert!(rational("t", &json!("0.5")).is_err());
        assert_eq!(rational("t", &json!("3/6")).unwrap(), Rational::new(1.into(), 2.into()));
    }

    #[test]
    fn omega_rejects_unknown_keys() {
        assert!(omega(&json!({"alphaPlus": ["1/2"], "delta": "1"})).is_err());
        assert!(omega(&json!(r#"{"alphaPlus":["1/2"]}"#)).is_ok());
    }

    #[test]
    fn flags_parse() {
        let c = parse_config([
            "fa", "clt", "--family", "custom", "--scalars", "1,2", "--grid", "4,8", "--m", "3",
        ])
        .unwrap();
        assert_eq!(c.kind, Kind::Clt);
        assert_eq!(c.m, Some(3));
        assert_eq!(c.scalars.len(), 2);
        assert_eq!(c.out, OutFormat::Csv);
    }
}
