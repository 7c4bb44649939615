//! Affine monoids `S` in `Z^d` standing for the semigroup ring `K[S]`, with exact
//! normality and bounded seminormality / weak normality checks that return monomial
//! witnesses.

use std::collections::{BTreeSet, HashMap, HashSet};

use malachite::num::basic::traits::Zero;
use malachite::Integer;

use crate::cone::{
    cone_contains, dualize, lattice_points_in_box, maximal_independent_subsets,
    parallelepiped_points, weight_box, RationalCone,
};
use crate::error::{invalid, Error, Result};
use crate::ideal::MonomialIdeal;
use crate::lattice::{group_contains, hnf, solve_nonneg_integer, IntMatrix, IntVector, LatticeGroup};

/// A pointed affine monoid given by generators. Generators are deduplicated, stripped of
/// zero rows and sorted lexicographically.
#[derive(Clone, Debug)]
pub struct AffineMonoid {
    generators: IntMatrix,
    group: LatticeGroup,
    cone: RationalCone,
    weight: IntVector,
}

impl PartialEq for AffineMonoid {
    fn eq(&self, other: &Self) -> bool {
        self.generators == other.generators
    }
}

impl Eq for AffineMonoid {}

impl AffineMonoid {
    pub fn new(generators: IntMatrix) -> Result<Self> {
        let d = generators.dim();
        let gens: BTreeSet<IntVector> = generators
            .into_rows()
            .into_iter()
            .filter(|g| !g.is_zero())
            .collect();
        if gens.is_empty() {
            return invalid("a monoid needs at least one nonzero generator");
        }
        let generators = IntMatrix::new(d, gens.into_iter().collect())?;
        let cone = dualize(&generators)?;
        if !cone.is_pointed() {
            return Err(Error::UnsupportedInput(format!(
                "monoid cone is not pointed (lineality dimension {})",
                cone.lineality_dim()
            )));
        }
        let group = hnf(&generators)?;
        // the sum of the normals is positive on every nonzero point of a pointed cone
        let mut weight = IntVector::zero(d);
        for n in cone.facet_normals().rows() {
            weight = &weight + n;
        }
        debug_assert!(generators.rows().iter().all(|g| weight.dot(g) > 0));
        Ok(AffineMonoid {
            generators,
            group,
            cone,
            weight,
        })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::new(IntMatrix::from_i64_rows(rows)?)
    }

    pub fn ambient_dim(&self) -> usize {
        self.generators.dim()
    }

    pub fn generators(&self) -> &IntMatrix {
        &self.generators
    }

    pub fn group(&self) -> &LatticeGroup {
        &self.group
    }

    pub fn cone(&self) -> &RationalCone {
        &self.cone
    }

    /// Strictly positive grading functional.
    pub fn weight(&self) -> &IntVector {
        &self.weight
    }

    pub fn weight_of(&self, v: &IntVector) -> Integer {
        self.weight.dot(v)
    }

    /// Sort key for witnesses: weight first, then lexicographic.
    pub fn order_key(&self, v: &IntVector) -> (Integer, IntVector) {
        (self.weight_of(v), v.clone())
    }

    pub fn max_generator_weight(&self) -> Integer {
        self.generators
            .rows()
            .iter()
            .map(|g| self.weight_of(g))
            .max()
            .expect("nonempty generators")
    }

    /// `4 * max generator weight`.
    pub fn default_bound(&self) -> u64 {
        u64::try_from(&(self.max_generator_weight() * Integer::from(4u32)))
            .expect("bound fits in u64")
    }

    /// Whether `v` lies in `group(S) ∩ cone(S)`.
    pub fn in_saturation(&self, v: &IntVector) -> bool {
        cone_contains(&self.cone, v)
            && group_contains(&self.group, v).expect("dimension checked by caller")
    }

    /// `S x N`: the monoid of `K[S][y]` with `y` a fresh variable in the last coordinate.
    pub fn with_free_coordinate(&self) -> AffineMonoid {
        let d = self.ambient_dim();
        let mut rows: Vec<IntVector> = self
            .generators
            .rows()
            .iter()
            .map(|g| g.extended(Integer::ZERO))
            .collect();
        rows.push(IntVector::unit(d + 1, d));
        AffineMonoid::new(IntMatrix::new(d + 1, rows).expect("same dimension"))
            .expect("product of pointed monoids is pointed")
    }

    /// All elements of `S` of weight at most `bound`, sorted by weight then lexicographically.
    pub fn elements_up_to(&self, bound: &Integer) -> Vec<IntVector> {
        let mut seen: HashSet<IntVector> = HashSet::new();
        let zero = IntVector::zero(self.ambient_dim());
        if *bound < 0 {
            return Vec::new();
        }
        let mut frontier = vec![zero.clone()];
        seen.insert(zero);
        while let Some(v) = frontier.pop() {
            for g in self.generators.rows() {
                let w = &v + g;
                if self.weight_of(&w) <= *bound && seen.insert(w.clone()) {
                    frontier.push(w);
                }
            }
        }
        let mut out: Vec<IntVector> = seen.into_iter().collect();
        out.sort_by_cached_key(|v| self.order_key(v));
        out
    }
}

/// `v ∈ S`, decided by a nonnegative integer solve against the generators.
pub fn monoid_contains(s: &AffineMonoid, v: &IntVector) -> bool {
    if v.dim() != s.ambient_dim() {
        return false;
    }
    if v.is_zero() {
        return true;
    }
    if !s.in_saturation(v) {
        return false;
    }
    solve_nonneg_integer(&s.generators, v, &s.weight)
        .expect("weight is positive on generators")
        .is_some()
}

/// Memoized membership for bulk queries: `v ∈ S` iff `v = 0` or `v - g ∈ S` for a generator
/// `g`, with every step pruned by the cone.
pub struct MembershipCache<'a> {
    monoid: &'a AffineMonoid,
    memo: HashMap<IntVector, bool>,
}

impl<'a> MembershipCache<'a> {
    pub fn new(monoid: &'a AffineMonoid) -> Self {
        MembershipCache {
            monoid,
            memo: HashMap::new(),
        }
    }

    pub fn contains(&mut self, v: &IntVector) -> bool {
        if v.is_zero() {
            return true;
        }
        if !cone_contains(&self.monoid.cone, v) {
            return false;
        }
        if let Some(&b) = self.memo.get(v) {
            return b;
        }
        let monoid = self.monoid;
        let found = monoid
            .generators
            .rows()
            .iter()
            .any(|g| self.contains(&(v - g)));
        self.memo.insert(v.clone(), found);
        found
    }
}

/// For each maximal independent generator subset, the points of `group(S)` in its half-open
/// parallelepiped that are not in `S`. Every hole of `S` is a nonnegative integer combination
/// of some subset plus one of that subset's parallelepiped holes.
fn parallelepiped_holes(
    s: &AffineMonoid,
    cache: &mut MembershipCache,
) -> Vec<(Vec<IntVector>, Vec<IntVector>)> {
    let gens = s.generators.rows();
    let mut out = Vec::new();
    for subset in maximal_independent_subsets(gens) {
        let basis: Vec<IntVector> = subset.iter().map(|&i| gens[i].clone()).collect();
        let points = parallelepiped_points(&basis, &s.group).expect("basis lies in the group");
        let holes: Vec<IntVector> = points.into_iter().filter(|p| !cache.contains(p)).collect();
        if !holes.is_empty() {
            out.push((basis, holes));
        }
    }
    out
}

/// All points of `group(S) ∩ cone(S) \ S` of weight at most `bound`, sorted by weight then
/// lexicographically.
pub fn holes_up_to(s: &AffineMonoid, bound: &Integer) -> Vec<IntVector> {
    let mut cache = MembershipCache::new(s);
    let mut found: BTreeSet<(Integer, IntVector)> = BTreeSet::new();
    for (basis, holes) in parallelepiped_holes(s, &mut cache) {
        let weights: Vec<Integer> = basis.iter().map(|b| s.weight_of(b)).collect();
        for p in holes {
            let wp = s.weight_of(&p);
            if wp > *bound {
                continue;
            }
            let budget = bound - &wp;
            walk_cone_points(&basis, &weights, 0, p, budget, &mut |x| {
                if !cache.contains(&x) {
                    found.insert((s.weight_of(&x), x));
                }
            });
        }
    }
    found.into_iter().map(|(_, v)| v).collect()
}

fn walk_cone_points(
    basis: &[IntVector],
    weights: &[Integer],
    i: usize,
    cur: IntVector,
    budget: Integer,
    visit: &mut impl FnMut(IntVector),
) {
    if i == basis.len() {
        visit(cur);
        return;
    }
    let mut cur = cur;
    let mut budget = budget;
    loop {
        walk_cone_points(basis, weights, i + 1, cur.clone(), budget.clone(), visit);
        if budget < weights[i] {
            break;
        }
        budget -= &weights[i];
        cur = &cur + &basis[i];
    }
}

/// Witness data for a failed property. Vectors live in the ambient lattice of the context the
/// certificate is checked against.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Certificate {
    /// `v ∈ group(S) ∩ cone(S)`, `v ∉ S`.
    NotNormal { v: IntVector },
    /// `2v, 3v ∈ S`, `v ∉ S`.
    NotSeminormal { v: IntVector },
    /// `v ∈ group(S)`, `p v ∈ S`, `v ∉ S`.
    NotWeaklyNormal { v: IntVector, p: u64 },
    /// `k a ∈ exp(I^{kn})` but `a ∉ exp(I^n)`, so `a` is integral over `I^n`.
    NotIntegrallyClosedPower { a: IntVector, n: u64, k: u64 },
    /// `ord(k a) > k ord(a)`: the class of `x^a` in `G(I)` is nilpotent.
    GrNilpotent { a: IntVector, k: u64 },
    /// `ord(a + b) > ord(a) + ord(b)`: the product of the two classes vanishes.
    GrNonAdditive { a: IntVector, b: IntVector },
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::NotNormal { .. } => "NotNormal",
            Certificate::NotSeminormal { .. } => "NotSeminormal",
            Certificate::NotWeaklyNormal { .. } => "NotWeaklyNormal",
            Certificate::NotIntegrallyClosedPower { .. } => "NotIntegrallyClosedPower",
            Certificate::GrNilpotent { .. } => "GrNilpotent",
            Certificate::GrNonAdditive { .. } => "GrNonAdditive",
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Verdict {
    Holds,
    Fails(Certificate),
    /// No witness of weight at most the bound.
    Unknown(u64),
}

impl Verdict {
    pub fn is_holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn is_fails(&self) -> bool {
        matches!(self, Verdict::Fails(_))
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Verdict::Fails(c) => Some(c),
            _ => None,
        }
    }

    pub fn status(&self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Fails(_) => "fails",
            Verdict::Unknown(_) => "unknown",
        }
    }
}

/// Exact: `S` is normal iff no parallelepiped of a maximal independent generator subset
/// contains a group point outside `S`. The witness is the smallest hole overall.
pub fn is_normal(s: &AffineMonoid) -> Verdict {
    let mut cache = MembershipCache::new(s);
    let least = parallelepiped_holes(s, &mut cache)
        .into_iter()
        .flat_map(|(_, holes)| holes)
        .map(|h| s.weight_of(&h))
        .min();
    match least {
        None => Verdict::Holds,
        Some(w) => {
            let v = holes_up_to(s, &w)
                .into_iter()
                .next()
                .expect("a hole of this weight exists");
            Verdict::Fails(Certificate::NotNormal { v })
        }
    }
}

/// Searches holes `v` of weight at most `bound` with `2v, 3v ∈ S`. Holds only when `S` is
/// normal.
pub fn is_seminormal(s: &AffineMonoid, bound: u64) -> Verdict {
    if is_normal(s).is_holds() {
        return Verdict::Holds;
    }
    let mut cache = MembershipCache::new(s);
    for v in holes_up_to(s, &Integer::from(bound)) {
        if cache.contains(&v.scale_i64(2)) && cache.contains(&v.scale_i64(3)) {
            return Verdict::Fails(Certificate::NotSeminormal { v });
        }
    }
    Verdict::Unknown(bound)
}

/// Characteristic 0 delegates to [`is_seminormal`]. For a prime `p`, holes with `p v ∈ S`
/// are searched first, then the seminormality verdict applies.
pub fn is_weakly_normal(s: &AffineMonoid, characteristic: u64, bound: u64) -> Result<Verdict> {
    if characteristic == 0 {
        return Ok(is_seminormal(s, bound));
    }
    if !is_prime(characteristic) {
        return invalid(format!("characteristic {characteristic} is not prime"));
    }
    if is_normal(s).is_holds() {
        return Ok(Verdict::Holds);
    }
    let mut cache = MembershipCache::new(s);
    let p = characteristic;
    for v in holes_up_to(s, &Integer::from(bound)) {
        if cache.contains(&v.scale(&Integer::from(p))) {
            return Ok(Verdict::Fails(Certificate::NotWeaklyNormal { v, p }));
        }
    }
    Ok(is_seminormal(s, bound))
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Rounds of the bounded seminormalization fixpoint.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct FixpointGap {
    pub rounds: Vec<Vec<IntVector>>,
}

impl FixpointGap {
    pub fn is_empty(&self) -> bool {
        self.rounds.is_empty()
    }

    /// Everything added, in round order.
    pub fn added(&self) -> Vec<IntVector> {
        self.rounds.iter().flatten().cloned().collect()
    }
}

/// Independent oracle: starting from `S`, repeatedly adds every point `v` of the bounded
/// region `group ∩ cone ∩ {weight <= bound}` with `2v` and `3v` in the current set, until
/// nothing changes. Uses box enumeration and direct integer solves only.
pub fn seminormal_fixpoint_oracle(s: &AffineMonoid, bound: u64) -> FixpointGap {
    let b = Integer::from(bound);
    let bounds = weight_box(s.generators.rows(), &s.weight, &b);
    let mut region = lattice_points_in_box(&bounds, |v| {
        s.weight_of(v) <= b && s.in_saturation(v)
    });
    region.sort_by_cached_key(|v| s.order_key(v));
    let mut in_s: HashMap<IntVector, bool> = HashMap::new();
    let mut member = |v: &IntVector| *in_s.entry(v.clone()).or_insert_with(|| monoid_contains(s, v));
    let mut added: HashSet<IntVector> = HashSet::new();
    let mut gap = FixpointGap::default();
    loop {
        let mut round = Vec::new();
        for v in &region {
            if added.contains(v) || member(v) {
                continue;
            }
            let two = v.scale_i64(2);
            let three = v.scale_i64(3);
            let ok2 = added.contains(&two) || member(&two);
            let ok3 = added.contains(&three) || member(&three);
            if ok2 && ok3 {
                round.push(v.clone());
            }
        }
        if round.is_empty() {
            return gap;
        }
        added.extend(round.iter().cloned());
        gap.rounds.push(round);
    }
}

/// What a certificate is checked against.
#[derive(Clone, Copy)]
pub enum CertificateContext<'a> {
    Monoid(&'a AffineMonoid),
    Ideal(&'a MonomialIdeal),
    /// The associated graded ring of the ideal; vectors carry the degree last.
    Graded(&'a MonomialIdeal),
}

/// Re-checks every claimed membership and non-membership with exact operations.
pub fn verify_certificate(ctx: CertificateContext, c: &Certificate) -> Result<bool> {
    match ctx {
        CertificateContext::Monoid(s) => verify_in_monoid(s, c),
        CertificateContext::Ideal(i) => crate::ideal::verify_ideal_certificate(i, c),
        CertificateContext::Graded(i) => crate::rees::verify_graded_certificate(i, c),
    }
}

fn check_dim(s: &AffineMonoid, v: &IntVector) -> Result<()> {
    if v.dim() != s.ambient_dim() {
        return invalid(format!(
            "witness {v} does not live in Z^{}",
            s.ambient_dim()
        ));
    }
    Ok(())
}

fn verify_in_monoid(s: &AffineMonoid, c: &Certificate) -> Result<bool> {
    match c {
        Certificate::NotNormal { v } => {
            check_dim(s, v)?;
            Ok(s.in_saturation(v) && !monoid_contains(s, v))
        }
        Certificate::NotSeminormal { v } => {
            check_dim(s, v)?;
            Ok(!monoid_contains(s, v)
                && monoid_contains(s, &v.scale_i64(2))
                && monoid_contains(s, &v.scale_i64(3)))
        }
        Certificate::NotWeaklyNormal { v, p } => {
            check_dim(s, v)?;
            if !is_prime(*p) {
                return invalid(format!("{p} is not prime"));
            }
            Ok(group_contains(&s.group, v)?
                && !monoid_contains(s, v)
                && monoid_contains(s, &v.scale(&Integer::from(*p))))
        }
        other => invalid(format!(
            "{} certificates are not checked against a monoid",
            other.kind()
        )),
    }
}
