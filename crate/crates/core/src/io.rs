//! JSON documents: instances in, verdicts and reports out.
//!
//! Integers are JSON numbers when their magnitude is below 2^53 and decimal strings
//! otherwise, so nothing is lost in readers that parse numbers as doubles.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use malachite::Integer;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use sha2::{Digest, Sha256};

use crate::error::{invalid, Error, Result};
use crate::harness::{
    Bounds, CheckReport, HarnessReport, Instance, InstanceReport, NamedVerdict, QuestionEntry,
    QuestionReport, QuestionStatus,
};
use crate::ideal::{is_normal_ideal, MonomialIdeal};
use crate::lattice::{IntMatrix, IntVector};
use crate::monoid::{
    is_normal, is_prime, is_seminormal, is_weakly_normal, verify_certificate, AffineMonoid,
    Certificate, CertificateContext, Verdict,
};
use crate::rees::{gr_reduced, gr_seminormal, GradedModel};

pub const TOOL_VERSION: &str = concat!("rees-lab ", env!("CARGO_PKG_VERSION"));

const SAFE_MAGNITUDE: i64 = 1 << 53;

/// An arbitrary-precision integer in JSON.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct JsonInt(pub Integer);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match i64::try_from(&self.0) {
            Ok(x) if x.abs() < SAFE_MAGNITUDE => s.serialize_i64(x),
            _ => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = JsonInt;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a decimal integer string")
            }

            fn visit_i64<E: de::Error>(self, x: i64) -> std::result::Result<JsonInt, E> {
                Ok(JsonInt(Integer::from(x)))
            }

            fn visit_u64<E: de::Error>(self, x: u64) -> std::result::Result<JsonInt, E> {
                Ok(JsonInt(Integer::from(x)))
            }

            fn visit_str<E: de::Error>(self, s: &str) -> std::result::Result<JsonInt, E> {
                Integer::from_str(s)
                    .map(JsonInt)
                    .map_err(|_| E::custom(format!("not an integer: {s:?}")))
            }
        }
        d.deserialize_any(V)
    }
}

type JsonVector = Vec<JsonInt>;

fn to_json(v: &IntVector) -> JsonVector {
    v.coords().iter().cloned().map(JsonInt).collect()
}

fn from_json(v: &[JsonInt]) -> IntVector {
    IntVector::new(v.iter().map(|x| x.0.clone()).collect())
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundsDocument {
    #[serde(rename = "B", default, skip_serializing_if = "Option::is_none")]
    pub b: Option<u64>,
    #[serde(rename = "K", default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u64>,
    #[serde(rename = "N_power", default, skip_serializing_if = "Option::is_none")]
    pub n_power: Option<u64>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDocument {
    pub ambient_dim: usize,
    pub monoid_generators: Vec<JsonVector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ideal_generators: Option<Vec<JsonVector>>,
    #[serde(default)]
    pub characteristic: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<BoundsDocument>,
}

/// A parsed instance file.
#[derive(Clone, Debug)]
pub struct Model {
    pub monoid: AffineMonoid,
    pub ideal: Option<MonomialIdeal>,
    pub characteristic: u64,
    pub bounds: Bounds,
}

fn matrix(dim: usize, rows: &[JsonVector], what: &str) -> Result<IntMatrix> {
    if dim == 0 {
        return invalid("ambient_dim must be positive");
    }
    let rows: Vec<IntVector> = rows.iter().map(|r| from_json(r)).collect();
    if let Some(r) = rows.iter().find(|r| r.dim() != dim) {
        return invalid(format!("{what} row {r} does not have ambient_dim {dim} entries"));
    }
    IntMatrix::new(dim, rows)
}

impl InstanceDocument {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    /// SHA-256 of the compact JSON form.
    pub fn digest(&self) -> String {
        let hash = Sha256::digest(self.to_json().as_bytes());
        hash.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn from_instance(inst: &Instance) -> Self {
        InstanceDocument {
            ambient_dim: inst.monoid.ambient_dim(),
            monoid_generators: inst.monoid.generators().rows().iter().map(to_json).collect(),
            ideal_generators: Some(inst.ideal.generators().rows().iter().map(to_json).collect()),
            characteristic: inst.characteristic,
            bounds: Some(BoundsDocument {
                b: Some(inst.bounds.b),
                k: Some(inst.bounds.k),
                n_power: Some(inst.bounds.n_power),
            }),
        }
    }

    pub fn to_model(&self) -> Result<Model> {
        let d = self.ambient_dim;
        let monoid = AffineMonoid::new(matrix(d, &self.monoid_generators, "monoid generator")?)?;
        let ideal = match &self.ideal_generators {
            Some(rows) => Some(MonomialIdeal::new(monoid.clone(), matrix(d, rows, "ideal generator")?)?),
            None => None,
        };
        let characteristic = self.characteristic;
        if characteristic != 0 && !is_prime(characteristic) {
            return invalid(format!("characteristic {characteristic} is neither 0 nor prime"));
        }
        let defaults = Bounds::defaults_for(&monoid);
        let given = self.bounds.clone().unwrap_or(BoundsDocument {
            b: None,
            k: None,
            n_power: None,
        });
        let bounds = Bounds {
            b: given.b.unwrap_or(defaults.b),
            k: given.k.unwrap_or(defaults.k),
            n_power: given.n_power.unwrap_or(defaults.n_power),
        };
        if bounds.b == 0 || bounds.k == 0 || bounds.n_power == 0 {
            return invalid("bounds must be positive");
        }
        Ok(Model {
            monoid,
            ideal,
            characteristic,
            bounds,
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum WitnessDocument {
    NotNormal { v: JsonVector },
    NotSeminormal { v: JsonVector },
    NotWeaklyNormal { v: JsonVector, p: u64 },
    NotIntegrallyClosedPower { a: JsonVector, n: u64, k: u64 },
    GrNilpotent { a: JsonVector, k: u64 },
    GrNonAdditive { a: JsonVector, b: JsonVector },
}

impl From<&Certificate> for WitnessDocument {
    fn from(c: &Certificate) -> Self {
        match c {
            Certificate::NotNormal { v } => WitnessDocument::NotNormal { v: to_json(v) },
            Certificate::NotSeminormal { v } => WitnessDocument::NotSeminormal { v: to_json(v) },
            Certificate::NotWeaklyNormal { v, p } => WitnessDocument::NotWeaklyNormal {
                v: to_json(v),
                p: *p,
            },
            Certificate::NotIntegrallyClosedPower { a, n, k } => {
                WitnessDocument::NotIntegrallyClosedPower {
                    a: to_json(a),
                    n: *n,
                    k: *k,
                }
            }
            Certificate::GrNilpotent { a, k } => WitnessDocument::GrNilpotent { a: to_json(a), k: *k },
            Certificate::GrNonAdditive { a, b } => WitnessDocument::GrNonAdditive {
                a: to_json(a),
                b: to_json(b),
            },
        }
    }
}

impl From<&WitnessDocument> for Certificate {
    fn from(w: &WitnessDocument) -> Self {
        match w {
            WitnessDocument::NotNormal { v } => Certificate::NotNormal { v: from_json(v) },
            WitnessDocument::NotSeminormal { v } => Certificate::NotSeminormal { v: from_json(v) },
            WitnessDocument::NotWeaklyNormal { v, p } => Certificate::NotWeaklyNormal {
                v: from_json(v),
                p: *p,
            },
            WitnessDocument::NotIntegrallyClosedPower { a, n, k } => {
                Certificate::NotIntegrallyClosedPower {
                    a: from_json(a),
                    n: *n,
                    k: *k,
                }
            }
            WitnessDocument::GrNilpotent { a, k } => Certificate::GrNilpotent {
                a: from_json(a),
                k: *k,
            },
            WitnessDocument::GrNonAdditive { a, b } => Certificate::GrNonAdditive {
                a: from_json(a),
                b: from_json(b),
            },
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Property {
    Normal,
    Seminormal,
    WeaklyNormal,
    IdealNormal,
    GrReduced,
    GrSeminormal,
    ReesNormal,
}

impl Property {
    pub const ALL: [Property; 7] = [
        Property::Normal,
        Property::Seminormal,
        Property::WeaklyNormal,
        Property::IdealNormal,
        Property::GrReduced,
        Property::GrSeminormal,
        Property::ReesNormal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Normal => "normal",
            Property::Seminormal => "seminormal",
            Property::WeaklyNormal => "weaklynormal",
            Property::IdealNormal => "ideal-normal",
            Property::GrReduced => "gr-reduced",
            Property::GrSeminormal => "gr-seminormal",
            Property::ReesNormal => "rees-normal",
        }
    }

    fn needs_ideal(self) -> bool {
        !matches!(
            self,
            Property::Normal | Property::Seminormal | Property::WeaklyNormal
        )
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Property::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown property {s:?}")))
    }
}

fn require_ideal(model: &Model, property: Property) -> Result<&MonomialIdeal> {
    model.ideal.as_ref().ok_or_else(|| {
        Error::InvalidInput(format!("property {} needs ideal_generators", property.name()))
    })
}

/// Decides `property` on a parsed instance.
pub fn evaluate(model: &Model, property: Property) -> Result<Verdict> {
    let Bounds { b, k, n_power } = model.bounds;
    let s = &model.monoid;
    let p = model.characteristic;
    Ok(match property {
        Property::Normal => is_normal(s),
        Property::Seminormal => is_seminormal(s, b),
        Property::WeaklyNormal => is_weakly_normal(s, p, b)?,
        Property::IdealNormal => is_normal_ideal(require_ideal(model, property)?, n_power),
        Property::GrReduced => {
            let i = require_ideal(model, property)?;
            gr_reduced(&GradedModel::new(i).with_power_bound(n_power), b, k)
        }
        Property::GrSeminormal => {
            let i = require_ideal(model, property)?;
            gr_seminormal(&GradedModel::new(i).with_power_bound(n_power), p, b, k)?
        }
        Property::ReesNormal => is_normal(require_ideal(model, property)?.rees_plus()),
    })
}

/// Checks a witness against the object the property is about.
pub fn verify_for_property(model: &Model, property: Property, c: &Certificate) -> Result<bool> {
    if property.needs_ideal() {
        let i = require_ideal(model, property)?;
        let ctx = match property {
            Property::IdealNormal => CertificateContext::Ideal(i),
            Property::GrReduced | Property::GrSeminormal => CertificateContext::Graded(i),
            _ => CertificateContext::Monoid(i.rees_plus()),
        };
        verify_certificate(ctx, c)
    } else {
        verify_certificate(CertificateContext::Monoid(&model.monoid), c)
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Timings {
    pub elapsed_us: u64,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerdictDocument {
    pub property: String,
    /// `holds`, `fails`, `unknown` or `invalid`.
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
    pub tool_version: String,
    pub input_digest: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl VerdictDocument {
    pub fn new(property: &str, verdict: &Verdict, input_digest: String, timings: Option<Timings>) -> Self {
        let summary = VerdictSummary::from(verdict);
        VerdictDocument {
            property: property.to_string(),
            status: summary.status,
            witness: summary.witness,
            bound: summary.bound,
            timings,
            tool_version: TOOL_VERSION.to_string(),
            input_digest,
            error: None,
        }
    }

    pub fn invalid(property: &str, input_digest: String, error: &Error) -> Self {
        VerdictDocument {
            property: property.to_string(),
            status: "invalid".to_string(),
            witness: None,
            bound: None,
            timings: None,
            tool_version: TOOL_VERSION.to_string(),
            input_digest,
            error: Some(error.to_string()),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(e.to_string()))
    }

    /// Re-verifies the witness against the instance it claims to come from.
    pub fn replay(&self, instance: &InstanceDocument) -> Result<bool> {
        if instance.digest() != self.input_digest {
            return invalid("input digest does not match the instance");
        }
        let Some(w) = &self.witness else {
            return Ok(self.status != "fails");
        };
        let model = instance.to_model()?;
        verify_for_property(&model, self.property.parse()?, &Certificate::from(w))
    }
}

/// Status, witness and bound of a verdict.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerdictSummary {
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<u64>,
}

impl From<&Verdict> for VerdictSummary {
    fn from(v: &Verdict) -> Self {
        VerdictSummary {
            status: v.status().to_string(),
            witness: v.certificate().map(WitnessDocument::from),
            bound: match v {
                Verdict::Unknown(b) => Some(*b),
                _ => None,
            },
        }
    }
}

impl VerdictSummary {
    pub fn certificate(&self) -> Option<Certificate> {
        self.witness.as_ref().map(Certificate::from)
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedVerdictDocument {
    pub name: String,
    #[serde(flatten)]
    pub verdict: VerdictSummary,
}

impl From<&NamedVerdict> for NamedVerdictDocument {
    fn from(v: &NamedVerdict) -> Self {
        NamedVerdictDocument {
            name: v.name.clone(),
            verdict: VerdictSummary::from(&v.verdict),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckDocument {
    pub name: String,
    pub outcome: String,
    pub hypothesis: NamedVerdictDocument,
    pub conclusions: Vec<NamedVerdictDocument>,
    pub certificates_verified: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub escalation: Vec<String>,
}

impl From<&CheckReport> for CheckDocument {
    fn from(c: &CheckReport) -> Self {
        CheckDocument {
            name: c.name.to_string(),
            outcome: c.outcome.name().to_string(),
            hypothesis: NamedVerdictDocument::from(&c.hypothesis),
            conclusions: c.conclusions.iter().map(NamedVerdictDocument::from).collect(),
            certificates_verified: c.certificates_verified,
            escalation: c.escalation.clone(),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceReportDocument {
    pub seed: u64,
    pub instance: InstanceDocument,
    pub verdicts: Vec<NamedVerdictDocument>,
    pub checks: Vec<CheckDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

impl InstanceReportDocument {
    fn new(r: &InstanceReport, timings: bool) -> Self {
        InstanceReportDocument {
            seed: r.instance.seed,
            instance: InstanceDocument::from_instance(&r.instance),
            verdicts: r.verdicts.iter().map(NamedVerdictDocument::from).collect(),
            checks: r.checks.iter().map(CheckDocument::from).collect(),
            timings: timings.then_some(Timings {
                elapsed_us: r.elapsed_us,
            }),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HarnessReportDocument {
    pub tool_version: String,
    pub profile: String,
    pub seed_range: String,
    pub instances: usize,
    pub surviving_conflicts: usize,
    pub entries: Vec<InstanceReportDocument>,
}

impl HarnessReportDocument {
    pub fn new(report: &HarnessReport, seed_range: &str, timings: bool) -> Self {
        HarnessReportDocument {
            tool_version: TOOL_VERSION.to_string(),
            profile: report.profile.name().to_string(),
            seed_range: seed_range.to_string(),
            instances: report.entries.len(),
            surviving_conflicts: report.surviving_conflicts(),
            entries: report
                .entries
                .iter()
                .map(|e| InstanceReportDocument::new(e, timings))
                .collect(),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuestionEntryDocument {
    pub seed: u64,
    pub instance: InstanceDocument,
    /// `skipped-normal-base`, `skipped-ideal-not-normal` or `probed`.
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ideal: Option<VerdictSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extended: Option<VerdictSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate_verified: Option<bool>,
}

impl From<&QuestionEntry> for QuestionEntryDocument {
    fn from(e: &QuestionEntry) -> Self {
        let mut doc = QuestionEntryDocument {
            seed: e.instance.seed,
            instance: InstanceDocument::from_instance(&e.instance),
            status: String::new(),
            ideal: None,
            extended: None,
            certificate_verified: None,
        };
        match &e.status {
            QuestionStatus::SkippedNormalBase => doc.status = "skipped-normal-base".into(),
            QuestionStatus::SkippedIdealNotNormal(c) => {
                doc.status = "skipped-ideal-not-normal".into();
                doc.ideal = Some(VerdictSummary::from(&Verdict::Fails(c.clone())));
            }
            QuestionStatus::Probed {
                ideal,
                extended,
                certificate_verified,
            } => {
                doc.status = "probed".into();
                doc.ideal = Some(VerdictSummary::from(ideal));
                doc.extended = Some(VerdictSummary::from(extended));
                doc.certificate_verified = *certificate_verified;
            }
        }
        doc
    }
}

impl QuestionEntryDocument {
    /// Re-verifies every certificate in the entry against its own instance: the ideal witness
    /// in `K[S]`, the extension witness in `K[S][y]`.
    pub fn replay(&self) -> Result<bool> {
        let model = self.instance.to_model()?;
        let i = model
            .ideal
            .ok_or_else(|| Error::InvalidInput("entry has no ideal".into()))?;
        if let Some(c) = self.ideal.as_ref().and_then(VerdictSummary::certificate) {
            if !verify_certificate(CertificateContext::Ideal(&i), &c)? {
                return Ok(false);
            }
        }
        if let Some(c) = self.extended.as_ref().and_then(VerdictSummary::certificate) {
            let ixn = i.extended_to_free();
            if !verify_certificate(CertificateContext::Ideal(&ixn), &c)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuestionReportDocument {
    pub tool_version: String,
    pub profile: String,
    pub budget: u64,
    pub probed: usize,
    pub failures: usize,
    pub entries: Vec<QuestionEntryDocument>,
}

impl QuestionReportDocument {
    pub fn new(report: &QuestionReport, budget: u64) -> Self {
        let entries: Vec<QuestionEntryDocument> =
            report.entries.iter().map(QuestionEntryDocument::from).collect();
        let failures = entries
            .iter()
            .filter(|e| e.extended.as_ref().is_some_and(|v| v.status == "fails"))
            .count();
        QuestionReportDocument {
            tool_version: TOOL_VERSION.to_string(),
            profile: report.profile.name().to_string(),
            budget,
            probed: report.probed(),
            failures,
            entries,
        }
    }
}

/// Pretty JSON with a trailing newline.
pub fn render<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("serializable");
    s.push('\n');
    s
}

/// Writes through a temporary file in the target directory, then renames it into place.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    use std::io::Write;
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integers_switch_to_strings_past_53_bits() {
        let small = JsonInt(Integer::from(-7));
        assert_eq!(serde_json::to_string(&small).unwrap(), "-7");
        let big = JsonInt(Integer::from(1i64 << 53));
        assert_eq!(serde_json::to_string(&big).unwrap(), "\"9007199254740992\"");
        let huge: JsonInt = serde_json::from_str("\"123456789012345678901234567890\"").unwrap();
        assert_eq!(huge.0.to_string(), "123456789012345678901234567890");
        assert!(serde_json::from_str::<JsonInt>("1.5").is_err());
        assert!(serde_json::from_str::<JsonInt>("\"x\"").is_err());
    }

    #[test]
    fn instance_round_trip_and_validation() {
        let text = r#"{"ambient_dim":1,"monoid_generators":[[2],[3]],"ideal_generators":[[2]],"characteristic":2,"bounds":{"B":10}}"#;
        let doc = InstanceDocument::parse(text).unwrap();
        assert_eq!(doc.to_json(), text);
        let model = doc.to_model().unwrap();
        assert_eq!(model.bounds.b, 10);
        assert_eq!(model.bounds.k, 8);
        assert_eq!(model.bounds.n_power, 6);
        assert!(InstanceDocument::parse(r#"{"ambient_dim":1,"monoid_generators":[[1]],"extra":0}"#).is_err());
        let bad_dim = InstanceDocument::parse(r#"{"ambient_dim":2,"monoid_generators":[[1]]}"#).unwrap();
        assert!(bad_dim.to_model().is_err());
        let bad_char =
            InstanceDocument::parse(r#"{"ambient_dim":1,"monoid_generators":[[1]],"characteristic":4}"#).unwrap();
        assert!(bad_char.to_model().is_err());
    }

    #[test]
    fn verdict_documents_round_trip_and_replay() {
        let inst = InstanceDocument::parse(r#"{"ambient_dim":1,"monoid_generators":[[2],[3]]}"#).unwrap();
        let model = inst.to_model().unwrap();
        for property in [Property::Normal, Property::Seminormal] {
            let verdict = evaluate(&model, property).unwrap();
            let doc = VerdictDocument::new(property.name(), &verdict, inst.digest(), None);
            let text = render(&doc);
            let back = VerdictDocument::parse(&text).unwrap();
            assert_eq!(back, doc);
            assert!(back.replay(&inst).unwrap());
        }
        let other = InstanceDocument::parse(r#"{"ambient_dim":1,"monoid_generators":[[1]]}"#).unwrap();
        let doc = VerdictDocument::new("normal", &is_normal(&model.monoid), inst.digest(), None);
        assert!(doc.replay(&other).is_err());
    }

    #[test]
    fn properties_parse() {
        for p in Property::ALL {
            assert_eq!(p.name().parse::<Property>().unwrap(), p);
        }
        assert!("integral".parse::<Property>().is_err());
    }
}
