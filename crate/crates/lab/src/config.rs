use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use monogamy_core::measures::FOUR_LN_2;
use monogamy_core::monogamy::{check_exponent, tripartite_family, InequalityId, LemmaMode};
use monogamy_core::roof::RoofOptions;
use monogamy_core::states::StateSpec;

use crate::error::{LabError, Result};

/// An exponent written either as a number or as the token `"4ln2"`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Exponent {
    Value(f64),
    Named(NamedExponent),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NamedExponent {
    #[serde(rename = "4ln2")]
    FourLn2,
}

impl Exponent {
    pub fn value(self) -> f64 {
        match self {
            Exponent::Value(v) => v,
            Exponent::Named(NamedExponent::FourLn2) => FOUR_LN_2,
        }
    }
}

impl std::str::FromStr for Exponent {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim() {
            "4ln2" => Ok(Exponent::Named(NamedExponent::FourLn2)),
            other => other
                .parse::<f64>()
                .map(Exponent::Value)
                .map_err(|_| format!("`{other}` is neither a number nor 4ln2")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    Csv,
    Json,
    #[default]
    Both,
}

impl OutputFormat {
    pub fn csv(self) -> bool {
        matches!(self, OutputFormat::Csv | OutputFormat::Both)
    }

    pub fn json(self) -> bool {
        matches!(self, OutputFormat::Json | OutputFormat::Both)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteConfig {
    pub inequality_id: InequalityId,
    /// May be omitted for the squared inequalities, whose exponent is 2.
    #[serde(default)]
    pub exponents: Vec<Exponent>,
    pub state: StateSpec,
    pub sample_count: usize,
}

impl SuiteConfig {
    /// Exponent values, with the fixed exponent filled in when omitted.
    pub fn exponent_values(&self) -> Vec<f64> {
        if self.exponents.is_empty() && is_squared(self.inequality_id) {
            return vec![2.0];
        }
        self.exponents.iter().map(|e| e.value()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CampaignConfig {
    pub suites: Vec<SuiteConfig>,
    #[serde(default)]
    pub roof_options: RoofOptions,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
    #[serde(default)]
    pub format: OutputFormat,
}

fn default_output_dir() -> PathBuf {
    PathBuf::from("monogamy-lab-out")
}

fn is_squared(id: InequalityId) -> bool {
    matches!(
        id,
        InequalityId::Eq3NegativitySq
            | InequalityId::Eq8CrenSq
            | InequalityId::Eq9CrenoaSqPoly
            | InequalityId::Lemma2N223
            | InequalityId::Lemma2Cren223
    )
}

fn needs_pure(id: InequalityId) -> bool {
    !matches!(
        id,
        InequalityId::Eq8CrenSq | InequalityId::Thm1LcrenMixed | InequalityId::Thm2LcrenMixed
    )
}

fn is_tripartite(id: InequalityId) -> bool {
    matches!(
        id,
        InequalityId::Lemma2N223
            | InequalityId::Lemma2Cren223
            | InequalityId::Thm2LogNeg
            | InequalityId::Thm2Lcren
            | InequalityId::Thm2LcrenMixed
    )
}

fn check_suite(suite: &SuiteConfig) -> std::result::Result<(), (String, String)> {
    let id = suite.inequality_id;
    let err = |field: &str, msg: String| Err((field.to_string(), msg));
    if matches!(id, InequalityId::Lemma1Mono | InequalityId::Lemma1Poly) {
        return err("inequality_id", format!("{id} is a scalar inequality; use scan-lemma1"));
    }
    if suite.sample_count == 0 {
        return err("sample_count", "must be at least 1".into());
    }
    if suite.exponents.is_empty() && !is_squared(id) {
        return err("exponents", format!("{id} needs at least one exponent"));
    }
    for (k, e) in suite.exponents.iter().enumerate() {
        let v = e.value();
        let field = format!("exponents[{k}]");
        let bad = if is_squared(id) {
            (v != 2.0).then(|| format!("{id} has exponent fixed at 2, got {v}"))
        } else {
            let mode = if id == InequalityId::Thm1LcrenoaPoly {
                LemmaMode::Poly
            } else {
                LemmaMode::Mono
            };
            check_exponent(v, mode).err().map(|e| e.to_string())
        };
        if let Some(msg) = bad {
            return Err((field, msg));
        }
    }
    let spec = &suite.state;
    if let Err(e) = spec.validate() {
        return err("state", e.to_string());
    }
    if needs_pure(id) && spec.is_mixed() {
        return err("state", format!("{id} is stated for pure states"));
    }
    let dims = &spec.dims;
    if is_tripartite(id) {
        match tripartite_family(dims) {
            Err(e) => return err("state.dims", e.to_string()),
            Ok("2x2x3") if id == InequalityId::Thm2LcrenMixed => {
                return err("state.dims", format!("{id} needs dims [2, 2, 2^n]"));
            }
            Ok(_) => {}
        }
    } else if !dims.is_qubits() || dims.count() < 3 {
        return err("state.dims", format!("{id} needs at least three qubits"));
    }
    Ok(())
}

impl CampaignConfig {
    /// Parses and validates. Parse errors carry serde's line and column;
    /// validation errors name the offending field.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let cfg: CampaignConfig =
            serde_json::from_str(text).map_err(|e| LabError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| LabError::io(path, e))?;
        Self::from_json_str(&text).map_err(|e| match e {
            LabError::Config(msg) => LabError::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn validate(&self) -> Result<()> {
        if self.suites.is_empty() {
            return Err(LabError::Config("suites: at least one suite is required".into()));
        }
        self.roof_options
            .validate()
            .map_err(|e| LabError::Config(format!("roof_options: {e}")))?;
        for (i, suite) in self.suites.iter().enumerate() {
            check_suite(suite)
                .map_err(|(field, msg)| LabError::Config(format!("suites[{i}].{field}: {msg}")))?;
        }
        Ok(())
    }
}
