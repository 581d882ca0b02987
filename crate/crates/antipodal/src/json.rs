//! JSON documents for spaces, point sets, certificates, families, reports
//! and search results.

use antipodal_core::certify::{
    BsaCertificate, Functional, Inequality, MarginReport, PairCertificate, PointSet, Verdict, Violation,
};
use antipodal_core::construct::NamedFamily;
use antipodal_core::normed_space::validate_space;
use antipodal_core::search::SearchConfig;
use antipodal_core::{Exponent, NormSpec, Vector};
use serde::{Deserialize, Serialize};

use crate::{CliError, Result};

/// `p` is a number, or the string `"inf"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ExponentJson {
    Number(f64),
    Text(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum SpaceJson {
    Lp { p: ExponentJson, dim: usize },
    Polytope { vertices: Vec<Vec<f64>> },
}

impl SpaceJson {
    /// Parses and validates.
    pub fn to_space(&self) -> Result<NormSpec> {
        let spec = match self {
            SpaceJson::Lp { p: ExponentJson::Number(p), dim } => NormSpec::Lp { p: Exponent::Finite(*p), dim: *dim },
            SpaceJson::Lp { p: ExponentJson::Text(t), dim } if matches!(t.to_ascii_lowercase().as_str(), "inf" | "infinity") => {
                NormSpec::Lp { p: Exponent::Infinity, dim: *dim }
            }
            SpaceJson::Lp { p: ExponentJson::Text(t), .. } => {
                return Err(CliError::Input(format!("exponent must be a number or \"inf\", got {t:?}")))
            }
            SpaceJson::Polytope { vertices } => NormSpec::Polytope { vertices: vectors_in(vertices)? },
        };
        Ok(validate_space(spec)?)
    }
}

impl From<&NormSpec> for SpaceJson {
    fn from(space: &NormSpec) -> Self {
        match space {
            NormSpec::Lp { p: Exponent::Infinity, dim } => SpaceJson::Lp { p: ExponentJson::Text("inf".into()), dim: *dim },
            NormSpec::Lp { p: Exponent::Finite(p), dim } => SpaceJson::Lp { p: ExponentJson::Number(*p), dim: *dim },
            NormSpec::Polytope { vertices } => SpaceJson::Polytope { vertices: vectors_out(vertices) },
        }
    }
}

fn vectors_in(rows: &[Vec<f64>]) -> Result<Vec<Vector>> {
    rows.iter().map(|r| Vector::new(r.clone()).map_err(CliError::from)).collect()
}

fn vectors_out(rows: &[Vector]) -> Vec<Vec<f64>> {
    rows.iter().map(|v| v.coords().to_vec()).collect()
}

/// A bare point set. Certificate and family documents parse as sets too.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SetJson {
    pub space: SpaceJson,
    pub points: Vec<Vec<f64>>,
}

impl SetJson {
    pub fn to_set(&self) -> Result<PointSet> {
        Ok(PointSet::new(self.space.to_space()?, vectors_in(&self.points)?)?)
    }
}

impl From<&PointSet> for SetJson {
    fn from(set: &PointSet) -> Self {
        SetJson { space: set.space().into(), points: vectors_out(set.points()) }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairJson {
    pub upper: usize,
    pub lower: usize,
    pub f: Vec<f64>,
    pub margin: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub space: SpaceJson,
    pub points: Vec<Vec<f64>>,
    pub pairs: Vec<PairJson>,
    pub c1: f64,
    pub c2: f64,
    pub d: f64,
}

impl CertificateJson {
    /// Rebuilds the certificate. Recorded margins are kept as written so
    /// that a tampered value shows up in the verdict.
    pub fn to_certificate(&self) -> Result<BsaCertificate> {
        let set = SetJson { space: self.space.clone(), points: self.points.clone() }.to_set()?;
        let mut pairs = Vec::with_capacity(self.pairs.len());
        for p in &self.pairs {
            if p.upper >= set.len() || p.lower >= set.len() || p.upper == p.lower {
                return Err(CliError::Input(format!("bad pair ({}, {})", p.upper, p.lower)));
            }
            let functional = Functional::new(set.space(), Vector::new(p.f.clone())?)?;
            let mut pair = PairCertificate::new(&set, p.upper, p.lower, functional);
            pair.margin = p.margin;
            pairs.push(pair);
        }
        Ok(BsaCertificate::from_pairs(set, pairs, self.c1, self.c2, self.d))
    }
}

impl From<&BsaCertificate> for CertificateJson {
    fn from(cert: &BsaCertificate) -> Self {
        CertificateJson {
            space: cert.set.space().into(),
            points: vectors_out(cert.set.points()),
            pairs: cert
                .pairs
                .values()
                .map(|p| PairJson { upper: p.upper, lower: p.lower, f: p.functional.coeffs().to_vec(), margin: p.margin })
                .collect(),
            c1: cert.c1,
            c2: cert.c2,
            d: cert.d,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstantJson {
    pub pair: (usize, usize),
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyJson {
    #[serde(flatten)]
    pub certificate: CertificateJson,
    pub provenance: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub constants: Vec<ConstantJson>,
}

impl From<&NamedFamily> for FamilyJson {
    fn from(family: &NamedFamily) -> Self {
        FamilyJson {
            certificate: (&family.certificate()).into(),
            provenance: family.provenance.clone(),
            constants: family.pair_constants.iter().map(|(&pair, &value)| ConstantJson { pair, value }).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MarginJson {
    pub pair: (usize, usize),
    pub margin: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportJson {
    pub margins: Vec<MarginJson>,
    pub d: f64,
    pub separation: f64,
    pub c1: f64,
    pub ka_lower: f64,
    pub k_lower: f64,
}

impl From<&MarginReport> for ReportJson {
    fn from(r: &MarginReport) -> Self {
        ReportJson {
            margins: r.margins.iter().map(|(&pair, &margin)| MarginJson { pair, margin }).collect(),
            d: r.d,
            separation: r.separation,
            c1: r.c1,
            ka_lower: r.ka_lower,
            k_lower: r.k_lower,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ViolationJson {
    pub pair: Option<(usize, usize)>,
    pub inequality: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<usize>,
    pub slack: f64,
}

impl From<&Violation> for ViolationJson {
    fn from(v: &Violation) -> Self {
        let (inequality, point) = match v.inequality {
            Inequality::PointNorm { point } => ("point_norm", Some(point)),
            Inequality::DualNorm => ("dual_norm", None),
            Inequality::Margin => ("margin", None),
            Inequality::Lower { point } => ("lower", Some(point)),
            Inequality::Upper { point } => ("upper", Some(point)),
            Inequality::RecordedMargin => ("recorded_margin", None),
            Inequality::MissingPair => ("missing_pair", None),
            Inequality::NonPositiveConstant => ("non_positive_constant", None),
        };
        ViolationJson { pair: v.pair, inequality: inequality.into(), point, slack: v.slack }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerdictJson {
    pub valid: bool,
    pub violations: Vec<ViolationJson>,
}

impl From<&Verdict> for VerdictJson {
    fn from(v: &Verdict) -> Self {
        VerdictJson { valid: v.valid, violations: v.violations.iter().map(Into::into).collect() }
    }
}

/// Search configuration; omitted fields take the library defaults.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ConfigJson {
    pub seed: Option<u64>,
    pub restarts: usize,
    pub iterations: usize,
    pub initial_temperature: f64,
    pub decay: f64,
    pub decay_interval: usize,
    pub step_scale: f64,
    pub antipode_rate: f64,
    pub tolerance: f64,
    /// Cardinality for `antipodal` and `separated`, largest count for `ka`.
    pub count: usize,
    /// Candidate pool of the greedy `separated` mode.
    pub pool: usize,
}

impl Default for ConfigJson {
    fn default() -> Self {
        let c = SearchConfig::default();
        ConfigJson {
            seed: None,
            restarts: c.restarts,
            iterations: c.iterations,
            initial_temperature: c.initial_temperature,
            decay: c.decay,
            decay_interval: c.decay_interval,
            step_scale: c.step_scale,
            antipode_rate: c.antipode_rate,
            tolerance: c.tolerance,
            count: 4,
            pool: 1000,
        }
    }
}

impl ConfigJson {
    pub fn to_config(&self, seed: u64) -> SearchConfig {
        SearchConfig {
            seed,
            restarts: self.restarts,
            iterations: self.iterations,
            initial_temperature: self.initial_temperature,
            decay: self.decay,
            decay_interval: self.decay_interval,
            step_scale: self.step_scale,
            antipode_rate: self.antipode_rate,
            tolerance: self.tolerance,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertifyOutput {
    pub report: ReportJson,
    pub certificate: CertificateJson,
    /// Verdict on the certificate supplied as input, if there was one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input_verdict: Option<VerdictJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchOutput {
    pub mode: String,
    pub config: ConfigJson,
    pub found: bool,
    pub report: ReportJson,
    pub witness: CertificateJson,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub per_count: Vec<CountJson>,
    /// Seconds; present only with `--timing`, so that default output is
    /// reproducible byte for byte.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CountJson {
    pub count: usize,
    pub d: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleOutput {
    pub upper: usize,
    pub lower: usize,
    pub grid: usize,
    pub margin: f64,
}

/// An input document for `certify`: a bare set, a certificate, a family,
/// or a previous `certify` output.
pub enum SetInput {
    Set(PointSet),
    Certificate(BsaCertificate),
}

pub fn parse_set_input(text: &str) -> Result<SetInput> {
    let mut value: serde_json::Value = serde_json::from_str(text)?;
    if let Some(inner) = value.get_mut("certificate") {
        value = inner.take();
    }
    if value.get("pairs").is_some() {
        let cert: CertificateJson = serde_json::from_value(value)?;
        return Ok(SetInput::Certificate(cert.to_certificate()?));
    }
    let set: SetJson = serde_json::from_value(value)?;
    Ok(SetInput::Set(set.to_set()?))
}

impl SetInput {
    pub fn set(&self) -> &PointSet {
        match self {
            SetInput::Set(s) => s,
            SetInput::Certificate(c) => &c.set,
        }
    }
}

/// Biorthogonal system input for the `biorthogonal` family.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SystemJson {
    pub vectors: Vec<Vec<f64>>,
    pub functionals: Vec<Vec<f64>>,
}

impl SystemJson {
    pub fn parts(&self) -> Result<(Vec<Vector>, Vec<Vector>)> {
        Ok((vectors_in(&self.vectors)?, vectors_in(&self.functionals)?))
    }
}
