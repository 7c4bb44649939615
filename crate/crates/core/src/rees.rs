//! Rees monoids of `R₊(I) = A[It]` and `R(I) = A[It, t^-1]`, and a monomial model of the
//! associated graded ring `G(I)`.
//!
//! In `G(I)` the monomial `x^a` lives in degree `ord(a)`, and the product of the classes of
//! `x^a` and `x^b` is the class of `x^(a+b)` when `ord(a+b) = ord(a) + ord(b)` and zero
//! otherwise. So `x^a` is nilpotent iff `ord(k a) > k ord(a)` for some `k`, and `G(I)` is a
//! semigroup ring exactly when `ord` is additive on `S`.

use std::collections::BTreeSet;

use malachite::num::basic::traits::One;
use malachite::Integer;

use crate::error::{invalid, Error, Result};
use crate::ideal::{asymptotic_order, is_normal_ideal, MonomialIdeal, OrdTable, DEFAULT_POWER_BOUND};
use crate::lattice::{group_contains, hnf, rank, solve_rational, IntMatrix, IntVector};
use crate::monoid::{
    holes_up_to, is_prime, is_seminormal, is_weakly_normal, AffineMonoid, Certificate, Verdict,
};

pub const DEFAULT_POWER_PROBE: u64 = 8;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ReesVariant {
    Plus,
    Extended,
}

#[derive(Clone, Debug)]
pub struct ReesMonoid {
    pub variant: ReesVariant,
    pub monoid: AffineMonoid,
}

/// Generators `(s, 0)` and `(g, 1)`, plus `(0, -1)` for the extended variant.
pub fn rees_monoid(i: &MonomialIdeal, variant: ReesVariant) -> Result<ReesMonoid> {
    let monoid = match variant {
        ReesVariant::Plus => i.rees_plus().clone(),
        ReesVariant::Extended => {
            let d = i.ambient().ambient_dim() + 1;
            let mut rows = i.rees_plus().generators().rows().to_vec();
            rows.push(IntVector::zero(d - 1).extended(Integer::from(-1)));
            AffineMonoid::new(IntMatrix::new(d, rows)?)?
        }
    };
    Ok(ReesMonoid { variant, monoid })
}

/// Deliberate corruption of the model order function, for testing that the harness notices.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OrdFault {
    /// Adds 1 to the order of every monoid generator.
    BumpGenerators,
}

/// `G(I)` through its order function.
pub struct GradedModel<'a> {
    ideal: &'a MonomialIdeal,
    table: OrdTable<'a>,
    fault: Option<OrdFault>,
    power_bound: u64,
}

impl<'a> GradedModel<'a> {
    pub fn new(ideal: &'a MonomialIdeal) -> Self {
        GradedModel {
            ideal,
            table: OrdTable::new(ideal),
            fault: None,
            power_bound: DEFAULT_POWER_BOUND,
        }
    }

    pub fn with_power_bound(mut self, n_power: u64) -> Self {
        self.power_bound = n_power;
        self
    }

    pub fn with_fault(mut self, fault: Option<OrdFault>) -> Self {
        self.fault = fault;
        self
    }

    pub fn ideal(&self) -> &'a MonomialIdeal {
        self.ideal
    }

    pub fn base(&self) -> &'a AffineMonoid {
        self.ideal.ambient()
    }

    /// The model's grade of `x^a`; `None` when `a ∉ S`.
    pub fn ord(&self, a: &IntVector) -> Option<u64> {
        let m = self.table.ord(a)?;
        match self.fault {
            Some(OrdFault::BumpGenerators) if self.base().generators().rows().contains(a) => {
                Some(m + 1)
            }
            _ => Some(m),
        }
    }

    /// The uncorrupted order function.
    pub fn true_ord(&self, a: &IntVector) -> Option<u64> {
        self.table.ord(a)
    }

    /// Certificate check against the model order function, faults included.
    pub fn model_check(&self, c: &Certificate) -> bool {
        graded_check(self.base(), |a| self.ord(a), c).unwrap_or(false)
    }

    fn probes(&self, bound: u64) -> Vec<IntVector> {
        self.base().elements_up_to(&Integer::from(bound))
    }
}

/// Searches nilpotent classes `ord(k a) > k ord(a)` over probes of weight at most `bound` and
/// `k <= power_bound`, then converts any ideal-normality failure into a nilpotent class.
/// `Holds` needs an exact normal-ideal verdict and an integral asymptotic order on every
/// probe: together they give `ord = ν` there, which is what reducedness means.
pub fn gr_reduced(g: &GradedModel, bound: u64, power_bound: u64) -> Verdict {
    let probes = g.probes(bound);
    for a in &probes {
        let m = g.ord(a).expect("probe in S");
        for k in 2..=power_bound {
            let ka = a.scale(&Integer::from(k));
            if g.ord(&ka).expect("multiple in S") > k * m {
                return Verdict::Fails(Certificate::GrNilpotent { a: a.clone(), k });
            }
        }
    }
    match is_normal_ideal(g.ideal, g.power_bound) {
        Verdict::Fails(Certificate::NotIntegrallyClosedPower { a, k, .. }) => {
            // ord(k a) >= k n > k ord(a)
            Verdict::Fails(Certificate::GrNilpotent { a, k })
        }
        Verdict::Holds => {
            let integral = probes.iter().all(|a| {
                let nu = asymptotic_order(g.ideal, a).expect("probe in the cone");
                nu.finite().is_some_and(|q| *q.denominator_ref() == 1u32)
            });
            if integral {
                Verdict::Holds
            } else {
                Verdict::Unknown(bound)
            }
        }
        _ => Verdict::Unknown(bound),
    }
}

/// Searches pairs with `ord(a + b) > ord(a) + ord(b)` and `weight(a) + weight(b) <= bound`.
/// Without a failure the answer is `Holds` only for a principal ideal generated by a split
/// monoid generator, where `G(I)` is a polynomial ring over `K[S']`.
pub fn gr_additive(g: &GradedModel, bound: u64) -> Verdict {
    let s = g.base();
    let probes = g.probes(bound);
    let b = Integer::from(bound);
    for (i, x) in probes.iter().enumerate() {
        let wx = s.weight_of(x);
        let ox = g.ord(x).expect("probe in S");
        for y in &probes[i..] {
            if &wx + s.weight_of(y) > b {
                break;
            }
            let oy = g.ord(y).expect("probe in S");
            if g.ord(&(x + y)).expect("sum in S") > ox + oy {
                return Verdict::Fails(Certificate::GrNonAdditive {
                    a: x.clone(),
                    b: y.clone(),
                });
            }
        }
    }
    if split_principal_generator(g.ideal).is_some() {
        Verdict::Holds
    } else {
        Verdict::Unknown(bound)
    }
}

/// Index of the single ideal generator among the monoid generators, when the monoid splits
/// off the ray it spans.
fn split_principal_generator(i: &MonomialIdeal) -> Option<usize> {
    let [gen] = i.generators().rows() else {
        return None;
    };
    let gens = i.ambient().generators().rows();
    let idx = gens.iter().position(|s| s == gen)?;
    let others: Vec<IntVector> = (0..gens.len()).filter(|&j| j != idx).map(|j| gens[j].clone()).collect();
    (rank(&others) + 1 == rank(gens)).then_some(idx)
}

/// The rows `(s, ord(s))` for the monoid generators `s`.
pub fn graph_generators(g: &GradedModel) -> IntMatrix {
    let rows = g
        .base()
        .generators()
        .rows()
        .iter()
        .map(|s| s.extended(Integer::from(g.ord(s).expect("generator in S"))))
        .collect();
    IntMatrix::new(g.base().ambient_dim() + 1, rows).expect("same dimension")
}

/// The graph monoid `{(a, ord(a))}` presenting `G(I)` when `ord` is additive.
pub fn gr_as_monoid(g: &GradedModel, bound: u64) -> Result<AffineMonoid> {
    if let Verdict::Fails(c) = gr_additive(g, bound) {
        return Err(Error::InvalidState(format!(
            "G(I) is not a semigroup ring: {c:?}"
        )));
    }
    AffineMonoid::new(graph_generators(g))
}

/// Rescales a weight bound on one monoid to another by the ratio of largest generator
/// weights, so that default bounds map to default bounds.
pub fn scaled_bound(bound: u64, from: &AffineMonoid, to: &AffineMonoid) -> u64 {
    let num = Integer::from(bound) * to.max_generator_weight();
    let den = from.max_generator_weight();
    let q = (&num + &den - Integer::ONE) / den;
    u64::try_from(&q).expect("bound fits in u64").max(1)
}

/// Seminormality (or weak normality for a prime characteristic) of `G(I)`.
///
/// A non-reduced `G(I)` fails. An additive one is handled as the graph monoid. Otherwise
/// degree-`n` candidates `v` with `[x^(2v)]` in degree `2n`, `[x^(3v)]` in degree `3n` and no
/// `[x^v]` in degree `n` are searched; weak normality there only covers the seminormal part.
pub fn gr_seminormal(
    g: &GradedModel,
    characteristic: u64,
    bound: u64,
    power_bound: u64,
) -> Result<Verdict> {
    if characteristic != 0 && !is_prime(characteristic) {
        return invalid(format!("characteristic {characteristic} is not prime"));
    }
    if let Verdict::Fails(c) = gr_reduced(g, bound, power_bound) {
        return Ok(Verdict::Fails(c));
    }
    let additive = gr_additive(g, bound);
    if !additive.is_fails() {
        let sg = gr_as_monoid(g, bound)?;
        let bg = scaled_bound(bound, g.base(), &sg);
        let verdict = if characteristic == 0 {
            is_seminormal(&sg, bg)
        } else {
            is_weakly_normal(&sg, characteristic, bg)?
        };
        match verdict {
            Verdict::Holds if additive.is_holds() => return Ok(Verdict::Holds),
            Verdict::Fails(c) if graded_check(g.base(), |a| g.ord(a), &c)? => {
                return Ok(Verdict::Fails(c))
            }
            _ => {}
        }
    }
    if let Some(v) = graded_seminormal_candidates(g, bound, |a| g.ord(a)).into_iter().next() {
        return Ok(Verdict::Fails(Certificate::NotSeminormal { v }));
    }
    Ok(Verdict::Unknown(bound))
}

/// Points `(v, n)` violating seminormality of `G(I)`, for `v` in `group(S) ∩ cone(S)` of
/// weight at most `bound`, in witness order.
fn graded_seminormal_candidates(
    g: &GradedModel,
    bound: u64,
    ord: impl Fn(&IntVector) -> Option<u64>,
) -> Vec<IntVector> {
    let s = g.base();
    let b = Integer::from(bound);
    let mut pool: BTreeSet<(Integer, IntVector)> = BTreeSet::new();
    for v in holes_up_to(s, &b).into_iter().chain(s.elements_up_to(&b)) {
        pool.insert(s.order_key(&v));
    }
    let mut out = Vec::new();
    for (_, v) in pool {
        if let Some(n) = seminormal_degree(&v, &ord) {
            if ord(&v) != Some(n) {
                out.push(v.extended(Integer::from(n)));
            }
        }
    }
    out
}

/// The degree `n` with `[x^(2v)]`, `[x^(3v)]`, `[x^(6v)]` nonzero in degrees `2n`, `3n`, `6n`.
fn seminormal_degree(v: &IntVector, ord: impl Fn(&IntVector) -> Option<u64>) -> Option<u64> {
    let o2 = ord(&v.scale_i64(2))?;
    let o3 = ord(&v.scale_i64(3))?;
    let o6 = ord(&v.scale_i64(6))?;
    (o2 % 2 == 0 && o3 == 3 * (o2 / 2) && o6 == 3 * o2).then_some(o2 / 2)
}

/// Whether `(a, n)` is a nonzero homogeneous monomial of `G(I)` under `ord`.
fn in_graph(ord: &impl Fn(&IntVector) -> Option<u64>, v: &IntVector) -> bool {
    match (u64::try_from(v.last()), ord(&v.truncated())) {
        (Ok(n), Some(m)) => n == m,
        _ => false,
    }
}

pub(crate) fn graded_check(
    s: &AffineMonoid,
    ord: impl Fn(&IntVector) -> Option<u64>,
    c: &Certificate,
) -> Result<bool> {
    let d = s.ambient_dim();
    let need = |v: &IntVector, dim: usize| -> Result<()> {
        if v.dim() != dim {
            return invalid(format!("witness {v} does not live in Z^{dim}"));
        }
        Ok(())
    };
    match c {
        Certificate::GrNilpotent { a, k } => {
            need(a, d)?;
            let (Some(m), Some(mk)) = (ord(a), ord(&a.scale(&Integer::from(*k)))) else {
                return Ok(false);
            };
            Ok(mk > k * m)
        }
        Certificate::GrNonAdditive { a, b } => {
            need(a, d)?;
            need(b, d)?;
            let (Some(x), Some(y), Some(z)) = (ord(a), ord(b), ord(&(a + b))) else {
                return Ok(false);
            };
            Ok(z > x + y)
        }
        Certificate::NotSeminormal { v } => {
            need(v, d + 1)?;
            let n = u64::try_from(v.last()).ok();
            let a = v.truncated();
            Ok(n.is_some() && seminormal_degree(&a, &ord) == n && !in_graph(&ord, v))
        }
        Certificate::NotWeaklyNormal { v, p } => {
            need(v, d + 1)?;
            if !is_prime(*p) {
                return invalid(format!("{p} is not prime"));
            }
            let rows = s
                .generators()
                .rows()
                .iter()
                .map(|g| ord(g).map(|m| g.extended(Integer::from(m))))
                .collect::<Option<Vec<_>>>()
                .expect("generators in S");
            let group = hnf(&IntMatrix::new(d + 1, rows)?)?;
            Ok(group_contains(&group, v)?
                && in_graph(&ord, &v.scale(&Integer::from(*p)))
                && !in_graph(&ord, v))
        }
        other => invalid(format!(
            "{} certificates are not checked against G(I)",
            other.kind()
        )),
    }
}

/// Checks a `G(I)` certificate against the true order function.
pub(crate) fn verify_graded_certificate(i: &MonomialIdeal, c: &Certificate) -> Result<bool> {
    let table = OrdTable::new(i);
    graded_check(i.ambient(), |a| table.ord(a), c)
}

/// For the ideal generated by the monoid generator `y_index` (after canonical sorting): if
/// `S = S' + N y` splits, checks on probes that `ord(a)` is the `y`-coordinate of `a` and that
/// `ord` is additive, i.e. `G(yA) = K[S'][X]`.
pub fn principal_gr_iso_check(s: &AffineMonoid, y_index: usize) -> Result<bool> {
    let gens = s.generators().rows();
    let Some(y) = gens.get(y_index) else {
        return invalid(format!("no generator with index {y_index}"));
    };
    let others: Vec<IntVector> = (0..gens.len()).filter(|&j| j != y_index).map(|j| gens[j].clone()).collect();
    if rank(&others) + 1 != rank(gens) {
        return Err(Error::UnsupportedInput(format!(
            "generator {y} does not split off the monoid"
        )));
    }
    // basis of span(others) followed by y
    let mut basis: Vec<IntVector> = Vec::new();
    for o in &others {
        let mut trial = basis.clone();
        trial.push(o.clone());
        if rank(&trial) == trial.len() {
            basis = trial;
        }
    }
    basis.push(y.clone());
    let i = MonomialIdeal::new(s.clone(), IntMatrix::new(s.ambient_dim(), vec![y.clone()])?)?;
    let g = GradedModel::new(&i);
    let bound = s.default_bound();
    let probes = g.probes(bound);
    for a in &probes {
        let lambda = solve_rational(&basis, a).expect("probe in the span");
        let coord = lambda.last().expect("y coordinate");
        let ord = g.ord(a).expect("probe in S");
        if *coord != malachite::Rational::from(ord) {
            return Ok(false);
        }
    }
    Ok(!gr_additive(&g, bound).is_fails())
}
