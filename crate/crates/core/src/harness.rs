//! Randomized instances and executable checks of the implications
//!
//! - T1: `G(I)` seminormal ⇒ `A`, `R₊(I)`, `R(I)` seminormal
//! - T2: the same for weak normality in the instance characteristic
//! - T3: `G(I)` reduced ⇒ `I` normal
//! - T4: `S` normal and `I` normal ⇒ `I · K[S][y]` normal
//! - T5: `K[S]` seminormal ⇒ `K[S][y]` seminormal
//! - T6: `K[S]` normal ⇒ `K[S][y]` normal
//!
//! where `y` is a fresh variable, so `K[S][y] / (y) = K[S]`. Bounded verdicts count as the
//! hypothesis holding; a conclusion witness then triggers escalation before a conflict is
//! reported.

use std::str::FromStr;
use std::time::Instant;

use malachite::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ideal::{is_normal_ideal, MonomialIdeal, DEFAULT_POWER_BOUND};
use crate::lattice::{IntMatrix, IntVector};
use crate::monoid::{
    is_normal, is_seminormal, is_weakly_normal, verify_certificate, AffineMonoid, Certificate,
    CertificateContext, Verdict,
};
use crate::rees::{
    gr_additive, gr_reduced, gr_seminormal, rees_monoid, scaled_bound, GradedModel, OrdFault,
    ReesVariant, DEFAULT_POWER_PROBE,
};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Profile {
    /// Ambient dimension at most 2.
    Tiny,
    /// Ambient dimension at most 3.
    Small,
}

impl Profile {
    pub fn name(self) -> &'static str {
        match self {
            Profile::Tiny => "tiny",
            Profile::Small => "small",
        }
    }

    fn max_dim(self) -> usize {
        match self {
            Profile::Tiny => 2,
            Profile::Small => 3,
        }
    }
}

impl FromStr for Profile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tiny" => Ok(Profile::Tiny),
            "small" => Ok(Profile::Small),
            other => Err(Error::InvalidInput(format!("unknown profile {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Bounds {
    /// Weight bound for witness searches.
    pub b: u64,
    /// Largest multiplier probed for nilpotency.
    pub k: u64,
    /// Largest power checked by bounded ideal normality.
    pub n_power: u64,
}

impl Bounds {
    pub fn defaults_for(s: &AffineMonoid) -> Self {
        Bounds {
            b: s.default_bound(),
            k: DEFAULT_POWER_PROBE,
            n_power: DEFAULT_POWER_BOUND,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub seed: u64,
    pub monoid: AffineMonoid,
    pub ideal: MonomialIdeal,
    pub characteristic: u64,
    pub bounds: Bounds,
}

const COORD_MIN: i64 = -1;
const COORD_MAX: i64 = 4;
const MAX_ATTEMPTS: usize = 1000;

/// Deterministic per seed: draws `S` until it is pointed, then `I` from sums of one or two
/// generators of `S`, which keeps it proper.
pub fn generate_instance(seed: u64, profile: Profile) -> Result<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_ATTEMPTS {
        let d = rng.gen_range(1..=profile.max_dim());
        let n = rng.gen_range(1..=5);
        let rows: Vec<IntVector> = (0..n)
            .map(|_| {
                let xs: Vec<i64> = (0..d).map(|_| rng.gen_range(COORD_MIN..=COORD_MAX)).collect();
                IntVector::from_i64s(&xs)
            })
            .collect();
        let Ok(monoid) = AffineMonoid::new(IntMatrix::new(d, rows)?) else {
            continue;
        };
        let gens = monoid.generators().rows();
        let m = rng.gen_range(1..=4);
        let ideal_rows: Vec<IntVector> = (0..m)
            .map(|_| {
                let parts = rng.gen_range(1..=2);
                let mut g = IntVector::zero(d);
                for _ in 0..parts {
                    g = &g + &gens[rng.gen_range(0..gens.len())];
                }
                g
            })
            .collect();
        let Ok(ideal) = MonomialIdeal::new(monoid.clone(), IntMatrix::new(d, ideal_rows)?) else {
            continue;
        };
        let characteristic = [0, 2, 3][rng.gen_range(0..3)];
        let bounds = Bounds::defaults_for(&monoid);
        return Ok(Instance {
            seed,
            monoid,
            ideal,
            characteristic,
            bounds,
        });
    }
    Err(Error::InvalidState(format!(
        "seed {seed}: no valid instance after {MAX_ATTEMPTS} draws"
    )))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct HarnessConfig {
    pub fault: Option<OrdFault>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Outcome {
    Vacuous,
    Confirmed,
    Conflict,
}

impl Outcome {
    pub fn name(self) -> &'static str {
        match self {
            Outcome::Vacuous => "VACUOUS",
            Outcome::Confirmed => "CONFIRMED",
            Outcome::Conflict => "CONFLICT",
        }
    }
}

#[derive(Clone, Debug)]
pub struct NamedVerdict {
    pub name: String,
    pub verdict: Verdict,
}

fn named(name: &str, verdict: Verdict) -> NamedVerdict {
    NamedVerdict {
        name: name.to_string(),
        verdict,
    }
}

#[derive(Clone, Debug)]
pub struct CheckReport {
    pub name: &'static str,
    pub outcome: Outcome,
    pub hypothesis: NamedVerdict,
    pub conclusions: Vec<NamedVerdict>,
    /// Whether every conclusion certificate re-verifies (only meaningful on conflict).
    pub certificates_verified: bool,
    pub escalation: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct InstanceReport {
    pub instance: Instance,
    pub verdicts: Vec<NamedVerdict>,
    pub checks: Vec<CheckReport>,
    pub elapsed_us: u64,
}

impl InstanceReport {
    pub fn check(&self, name: &str) -> Option<&CheckReport> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn verdict(&self, name: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.name == name).map(|v| &v.verdict)
    }

    pub fn conflicts(&self) -> usize {
        self.checks.iter().filter(|c| c.outcome == Outcome::Conflict).count()
    }
}

#[derive(Clone, Debug)]
pub struct HarnessReport {
    pub profile: Profile,
    pub entries: Vec<InstanceReport>,
}

impl HarnessReport {
    pub fn surviving_conflicts(&self) -> usize {
        self.entries.iter().map(|e| e.conflicts()).sum()
    }
}

/// Hypothesis strength a check requires.
#[derive(Clone, Copy)]
enum Needs {
    /// `Holds` or `Unknown`.
    Bounded,
    Exact,
}

fn hypothesis_holds(v: &Verdict, needs: Needs) -> bool {
    match needs {
        Needs::Bounded => !v.is_fails(),
        Needs::Exact => v.is_holds(),
    }
}

/// Everything the checks need about one instance.
struct Context<'a> {
    inst: &'a Instance,
    graded: GradedModel<'a>,
}

impl Context<'_> {
    fn graded_hypothesis(&self, characteristic: u64, bound: u64) -> Verdict {
        gr_seminormal(&self.graded, characteristic, bound, self.inst.bounds.k)
            .expect("characteristic validated at generation")
    }

    /// Candidate `G(I)` witnesses built from a conclusion witness, checked against the model.
    fn transport_to_graded(&self, c: &Certificate) -> Option<Certificate> {
        let d = self.inst.monoid.ambient_dim();
        let g = &self.graded;
        let base: IntVector = match c {
            Certificate::NotNormal { v }
            | Certificate::NotSeminormal { v }
            | Certificate::NotWeaklyNormal { v, .. } => {
                if v.dim() == d {
                    v.clone()
                } else {
                    v.truncated()
                }
            }
            Certificate::NotIntegrallyClosedPower { a, k, .. } => {
                let cand = Certificate::GrNilpotent { a: a.clone(), k: *k };
                return g.model_check(&cand).then_some(cand);
            }
            _ => return None,
        };
        let mut cands = Vec::new();
        let multiples: Vec<IntVector> = [1, 2, 3, 6]
            .into_iter()
            .chain((self.inst.characteristic > 0).then_some(self.inst.characteristic as i64))
            .map(|m| base.scale_i64(m))
            .collect();
        for m in [g.ord(&multiples[1]).map(|o| o / 2), g.ord(&multiples[2]).map(|o| o / 3), g.ord(&base)]
            .into_iter()
            .flatten()
        {
            cands.push(Certificate::NotSeminormal {
                v: base.extended(Integer::from(m)),
            });
        }
        for x in &multiples {
            for k in 2..=self.inst.bounds.k {
                cands.push(Certificate::GrNilpotent { a: x.clone(), k });
            }
        }
        cands.into_iter().find(|c| g.model_check(c))
    }
}

struct Check<'a> {
    name: &'static str,
    needs: Needs,
    hypothesis: NamedVerdict,
    conclusions: Vec<(NamedVerdict, CertificateContext<'a>)>,
}

/// Evaluates all six checks on one instance.
pub fn run_implications(inst: &Instance, config: &HarnessConfig) -> InstanceReport {
    let start = Instant::now();
    let s = &inst.monoid;
    let i = &inst.ideal;
    let p = inst.characteristic;
    let Bounds { b, k, n_power } = inst.bounds;
    let ctx = Context {
        inst,
        graded: GradedModel::new(i)
            .with_power_bound(n_power)
            .with_fault(config.fault),
    };
    let plus = rees_monoid(i, ReesVariant::Plus).expect("proper ideal").monoid;
    let ext = rees_monoid(i, ReesVariant::Extended).expect("proper ideal").monoid;
    let b_plus = scaled_bound(b, s, &plus);
    let b_ext = scaled_bound(b, s, &ext);
    let sxn = s.with_free_coordinate();
    let b_sxn = scaled_bound(b, s, &sxn);
    let ixn = i.extended_to_free();

    let wn = |m: &AffineMonoid, bound| is_weakly_normal(m, p, bound).expect("prime or zero");
    let s_normal = is_normal(s);
    let s_sn = is_seminormal(s, b);
    let s_wn = wn(s, b);
    let i_normal = is_normal_ideal(i, n_power);
    let g_reduced = gr_reduced(&ctx.graded, b, k);
    let g_additive = gr_additive(&ctx.graded, b);
    let g_sn = ctx.graded_hypothesis(0, b);
    let g_wn = ctx.graded_hypothesis(p, b);
    let plus_sn = is_seminormal(&plus, b_plus);
    let ext_sn = is_seminormal(&ext, b_ext);
    let plus_wn = wn(&plus, b_plus);
    let ext_wn = wn(&ext, b_ext);
    let sxn_sn = is_seminormal(&sxn, b_sxn);
    let sxn_normal = is_normal(&sxn);
    let t4_hyp = match (&s_normal, &i_normal) {
        (Verdict::Holds, Verdict::Holds) => Verdict::Holds,
        (Verdict::Fails(c), _) | (_, Verdict::Fails(c)) => Verdict::Fails(c.clone()),
        _ => i_normal.clone(),
    };
    let ixn_normal = if t4_hyp.is_holds() {
        Some(is_normal_ideal(&ixn, n_power))
    } else {
        None
    };

    let mut verdicts = vec![
        named("S.normal", s_normal.clone()),
        named("S.seminormal", s_sn.clone()),
        named("S.weakly_normal", s_wn.clone()),
        named("I.normal", i_normal.clone()),
        named("G.reduced", g_reduced.clone()),
        named("G.additive", g_additive),
        named("G.seminormal", g_sn.clone()),
        named("G.weakly_normal", g_wn.clone()),
        named("R+.seminormal", plus_sn.clone()),
        named("R+.weakly_normal", plus_wn.clone()),
        named("R.seminormal", ext_sn.clone()),
        named("R.weakly_normal", ext_wn.clone()),
        named("SxN.normal", sxn_normal.clone()),
        named("SxN.seminormal", sxn_sn.clone()),
    ];
    if let Some(v) = &ixn_normal {
        verdicts.push(named("IxN.normal", v.clone()));
    }

    let checks = vec![
        Check {
            name: "T1",
            needs: Needs::Bounded,
            hypothesis: named("G.seminormal", g_sn),
            conclusions: vec![
                (named("S.seminormal", s_sn.clone()), CertificateContext::Monoid(s)),
                (named("R+.seminormal", plus_sn), CertificateContext::Monoid(&plus)),
                (named("R.seminormal", ext_sn), CertificateContext::Monoid(&ext)),
            ],
        },
        Check {
            name: "T2",
            needs: Needs::Bounded,
            hypothesis: named("G.weakly_normal", g_wn),
            conclusions: vec![
                (named("S.weakly_normal", s_wn), CertificateContext::Monoid(s)),
                (named("R+.weakly_normal", plus_wn), CertificateContext::Monoid(&plus)),
                (named("R.weakly_normal", ext_wn), CertificateContext::Monoid(&ext)),
            ],
        },
        Check {
            name: "T3",
            needs: Needs::Bounded,
            hypothesis: named("G.reduced", g_reduced),
            conclusions: vec![(named("I.normal", i_normal), CertificateContext::Ideal(i))],
        },
        Check {
            name: "T4",
            needs: Needs::Exact,
            hypothesis: named("S.normal & I.normal", t4_hyp),
            conclusions: ixn_normal
                .map(|v| vec![(named("IxN.normal", v), CertificateContext::Ideal(&ixn))])
                .unwrap_or_default(),
        },
        Check {
            name: "T5",
            needs: Needs::Bounded,
            hypothesis: named("S.seminormal", s_sn),
            conclusions: vec![(named("SxN.seminormal", sxn_sn), CertificateContext::Monoid(&sxn))],
        },
        Check {
            name: "T6",
            needs: Needs::Exact,
            hypothesis: named("S.normal", s_normal),
            conclusions: vec![(named("SxN.normal", sxn_normal), CertificateContext::Monoid(&sxn))],
        },
    ];

    let checks = checks.into_iter().map(|c| evaluate(&ctx, c)).collect();
    InstanceReport {
        instance: inst.clone(),
        verdicts,
        checks,
        elapsed_us: u64::try_from(start.elapsed().as_micros()).unwrap_or(u64::MAX),
    }
}

fn evaluate(ctx: &Context, check: Check) -> CheckReport {
    let Check {
        name,
        needs,
        hypothesis,
        conclusions,
    } = check;
    let verified = conclusions.iter().all(|(v, cx)| match v.verdict.certificate() {
        Some(c) => verify_certificate(*cx, c).unwrap_or(false),
        None => true,
    });
    let failing: Vec<Certificate> = conclusions
        .iter()
        .filter_map(|(v, _)| v.verdict.certificate().cloned())
        .collect();
    let conclusions: Vec<NamedVerdict> = conclusions.into_iter().map(|(v, _)| v).collect();
    let mut report = CheckReport {
        name,
        outcome: Outcome::Confirmed,
        hypothesis,
        conclusions,
        certificates_verified: verified,
        escalation: Vec::new(),
    };
    if !hypothesis_holds(&report.hypothesis.verdict, needs) {
        report.outcome = Outcome::Vacuous;
        return report;
    }
    if failing.is_empty() {
        return report;
    }
    report.outcome = Outcome::Conflict;
    if escalate(ctx, name, needs, &failing, &mut report.escalation) {
        report.outcome = Outcome::Vacuous;
    }
    report
}

/// Transports conclusion witnesses back to hypothesis witnesses, then re-runs the hypothesis
/// at 2B and 4B. True when the hypothesis is refuted.
fn escalate(
    ctx: &Context,
    name: &str,
    needs: Needs,
    failing: &[Certificate],
    log: &mut Vec<String>,
) -> bool {
    let inst = ctx.inst;
    for c in failing {
        let refuted = match name {
            "T1" | "T2" | "T3" => ctx.transport_to_graded(c),
            "T5" => match c {
                Certificate::NotSeminormal { v } => {
                    let cand = Certificate::NotSeminormal { v: v.truncated() };
                    verify_certificate(CertificateContext::Monoid(&inst.monoid), &cand)
                        .unwrap_or(false)
                        .then_some(cand)
                }
                _ => None,
            },
            _ => None,
        };
        match refuted {
            Some(h) => {
                log.push(format!("transported {c:?} to hypothesis witness {h:?}"));
                return true;
            }
            None => log.push(format!("transport of {c:?} found no hypothesis witness")),
        }
    }
    if let Needs::Exact = needs {
        log.push("hypothesis is exact; nothing to escalate".to_string());
        return false;
    }
    for factor in [2, 4] {
        let bound = inst.bounds.b * factor;
        let v = match name {
            "T1" => ctx.graded_hypothesis(0, bound),
            "T2" => ctx.graded_hypothesis(inst.characteristic, bound),
            "T3" => gr_reduced(&ctx.graded, bound, inst.bounds.k),
            "T5" => is_seminormal(&inst.monoid, bound),
            _ => unreachable!("bounded checks only"),
        };
        log.push(format!("hypothesis at B={bound}: {}", v.status()));
        if v.is_fails() {
            return true;
        }
    }
    false
}

/// Runs every seed in `seeds` (in parallel) and sorts the entries by seed.
pub fn run_harness(
    seeds: impl IntoParallelIterator<Item = u64>,
    profile: Profile,
    config: &HarnessConfig,
) -> Result<HarnessReport> {
    let mut entries = seeds
        .into_par_iter()
        .map(|seed| generate_instance(seed, profile).map(|inst| run_implications(&inst, config)))
        .collect::<Result<Vec<_>>>()?;
    entries.sort_by_key(|e| e.instance.seed);
    Ok(HarnessReport { profile, entries })
}

/// A crafted instance on which the `BumpGenerators` fault must produce a T1 conflict:
/// `S = <(2,0), (3,0), (0,1)>`, `I = (y)`. The corrupted graph monoid is unimodular, so the
/// model `G(I)` looks normal while `S` keeps its cusp.
pub fn fault_probe_instance() -> Instance {
    let monoid = AffineMonoid::from_i64_rows(&[&[2, 0], &[3, 0], &[0, 1]]).expect("pointed");
    let ideal = MonomialIdeal::new(monoid.clone(), IntMatrix::from_i64_rows(&[&[0, 1]]).expect("rows"))
        .expect("proper");
    let bounds = Bounds::defaults_for(&monoid);
    Instance {
        seed: u64::MAX,
        monoid,
        ideal,
        characteristic: 0,
        bounds,
    }
}

#[derive(Clone, Debug)]
pub enum QuestionStatus {
    /// `S` is normal, so the quotient is integrally closed: not the Question's setting.
    SkippedNormalBase,
    /// `I` is not normal in `K[S]`.
    SkippedIdealNotNormal(Certificate),
    Probed {
        ideal: Verdict,
        extended: Verdict,
        /// For a failing extension, whether its certificate re-verifies.
        certificate_verified: Option<bool>,
    },
}

#[derive(Clone, Debug)]
pub struct QuestionEntry {
    pub instance: Instance,
    pub status: QuestionStatus,
}

#[derive(Clone, Debug)]
pub struct QuestionReport {
    pub profile: Profile,
    pub entries: Vec<QuestionEntry>,
}

impl QuestionReport {
    pub fn probed(&self) -> usize {
        self.entries
            .iter()
            .filter(|e| matches!(e.status, QuestionStatus::Probed { .. }))
            .count()
    }
}

/// Drops integral closedness of the quotient: for non-normal `S` and `I` normal (up to the
/// bound) in `K[S]`, asks whether `I · K[S][y]` is still normal.
pub fn search_question_counterexample(budget: u64, profile: Profile) -> Result<QuestionReport> {
    let mut entries = (0..budget)
        .into_par_iter()
        .map(|seed| {
            let instance = generate_instance(seed, profile)?;
            let status = question_status(&instance);
            Ok(QuestionEntry { instance, status })
        })
        .collect::<Result<Vec<_>>>()?;
    entries.sort_by_key(|e| e.instance.seed);
    Ok(QuestionReport { profile, entries })
}

fn question_status(inst: &Instance) -> QuestionStatus {
    if is_normal(&inst.monoid).is_holds() {
        return QuestionStatus::SkippedNormalBase;
    }
    let n_power = inst.bounds.n_power;
    let ideal = is_normal_ideal(&inst.ideal, n_power);
    if let Verdict::Fails(c) = ideal {
        return QuestionStatus::SkippedIdealNotNormal(c);
    }
    let ixn = inst.ideal.extended_to_free();
    let extended = is_normal_ideal(&ixn, n_power);
    let certificate_verified = extended
        .certificate()
        .map(|c| verify_certificate(CertificateContext::Ideal(&ixn), c).unwrap_or(false));
    QuestionStatus::Probed {
        ideal,
        extended,
        certificate_verified,
    }
}
