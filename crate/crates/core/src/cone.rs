//! Exact rational polyhedral cones.
//!
//! A cone is kept in both descriptions: the generators it was built from and the primitive
//! inequality normals `n` (meaning `n . x >= 0`) produced by the double description method.
//! Equations of a lower-dimensional cone appear as a pair `n`, `-n`.

use std::collections::{BTreeMap, BTreeSet};

use malachite::num::arithmetic::traits::{DivMod, Floor, Lcm};
use malachite::num::basic::traits::{One, Zero};
use malachite::{Integer, Natural, Rational};

use crate::error::{invalid, Error, Result};
use crate::lattice::{hnf, rank, solve_rational, IntMatrix, IntVector, LatticeGroup};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalCone {
    ambient_dim: usize,
    ray_generators: IntMatrix,
    facet_normals: IntMatrix,
    lineality_dim: usize,
}

impl RationalCone {
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn ray_generators(&self) -> &IntMatrix {
        &self.ray_generators
    }

    pub fn facet_normals(&self) -> &IntMatrix {
        &self.facet_normals
    }

    pub fn lineality_dim(&self) -> usize {
        self.lineality_dim
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality_dim == 0
    }

    /// Dimension of the linear span of the cone.
    pub fn dim(&self) -> usize {
        rank(self.ray_generators.rows())
    }
}

/// Computes the inequality description of `cone(ray_generators)`.
pub fn dualize(ray_generators: &IntMatrix) -> Result<RationalCone> {
    if ray_generators.is_empty() {
        return invalid("dualize needs at least one generator");
    }
    let d = ray_generators.dim();
    if d == 0 {
        return invalid("dualize needs ambient dimension at least 1");
    }
    let (rays, lineality) = double_description(d, ray_generators.rows());
    let mut normals: BTreeSet<IntVector> = rays.iter().map(|r| r.primitive()).collect();
    for l in &lineality {
        let l = l.primitive();
        normals.insert(-&l);
        normals.insert(l);
    }
    let mut spanning = rays;
    spanning.extend(lineality);
    let lineality_dim = d - rank(&spanning);
    Ok(RationalCone {
        ambient_dim: d,
        ray_generators: ray_generators.clone(),
        facet_normals: IntMatrix::new(d, normals.into_iter().collect())?,
        lineality_dim,
    })
}

/// Bitset over constraint indices.
#[derive(Clone, PartialEq, Eq)]
struct ZeroSet(Vec<u64>);

impl ZeroSet {
    fn new(len: usize) -> Self {
        ZeroSet(vec![0; len.div_ceil(64).max(1)])
    }

    fn full_prefix(len: usize, upto: usize) -> Self {
        let mut z = Self::new(len);
        for i in 0..upto {
            z.insert(i);
        }
        z
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn intersect(&self, other: &ZeroSet) -> ZeroSet {
        ZeroSet(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn is_subset(&self, other: &ZeroSet) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
}

struct DdRay {
    v: IntVector,
    zeros: ZeroSet,
}

/// Incremental double description of `{x : c . x >= 0 for all constraints c}`.
/// Returns the extreme rays modulo the lineality space, and a lineality basis.
fn double_description(d: usize, constraints: &[IntVector]) -> (Vec<IntVector>, Vec<IntVector>) {
    let m = constraints.len();
    let mut lineality: Vec<IntVector> = (0..d).map(|i| IntVector::unit(d, i)).collect();
    let mut rays: Vec<DdRay> = Vec::new();
    for (j, a) in constraints.iter().enumerate() {
        if let Some(pos) = lineality.iter().position(|l| a.dot(l) != 0) {
            let mut l = lineality.remove(pos);
            let mut al = a.dot(&l);
            if al < 0 {
                l = -&l;
                al = -al;
            }
            for other in lineality.iter_mut() {
                let ao = a.dot(other);
                if ao != 0 {
                    *other = (&other.scale(&al) - &l.scale(&ao)).primitive();
                }
            }
            for ray in rays.iter_mut() {
                let ar = a.dot(&ray.v);
                if ar != 0 {
                    ray.v = (&ray.v.scale(&al) - &l.scale(&ar)).primitive();
                }
                ray.zeros.insert(j);
            }
            rays.push(DdRay {
                v: l.primitive(),
                zeros: ZeroSet::full_prefix(m, j),
            });
            continue;
        }
        let values: Vec<Integer> = rays.iter().map(|r| a.dot(&r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| values[i] > 0).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| values[i] < 0).collect();
        let mut next: Vec<DdRay> = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = rays[p].zeros.intersect(&rays[q].zeros);
                let adjacent = !(0..rays.len())
                    .any(|r| r != p && r != q && common.is_subset(&rays[r].zeros));
                if !adjacent {
                    continue;
                }
                let v = (&rays[q].v.scale(&values[p]) - &rays[p].v.scale(&values[q])).primitive();
                let mut zeros = common;
                zeros.insert(j);
                next.push(DdRay { v, zeros });
            }
        }
        let mut kept: Vec<DdRay> = Vec::new();
        for (i, mut ray) in rays.into_iter().enumerate() {
            if values[i] < 0 {
                continue;
            }
            if values[i] == 0 {
                ray.zeros.insert(j);
            }
            kept.push(ray);
        }
        kept.extend(next);
        rays = kept;
    }
    (rays.into_iter().map(|r| r.v).collect(), lineality)
}

pub fn cone_contains(c: &RationalCone, v: &IntVector) -> bool {
    debug_assert_eq!(v.dim(), c.ambient_dim);
    c.facet_normals.rows().iter().all(|n| n.dot(v) >= 0)
}

/// A face, identified by the set of facet normals vanishing on it.
#[derive(Clone, PartialEq, Eq, Debug, PartialOrd, Ord)]
pub struct Face {
    pub dim: usize,
    pub tight_normal_indices: BTreeSet<usize>,
}

/// The full face lattice of a pointed cone, including `{0}` and the cone itself, ordered by
/// dimension and then by tight set.
pub fn enumerate_faces(c: &RationalCone) -> Result<Vec<Face>> {
    if !c.is_pointed() {
        return Err(Error::UnsupportedInput(format!(
            "face enumeration needs a pointed cone (lineality dimension {})",
            c.lineality_dim
        )));
    }
    let normals = c.facet_normals.rows();
    let rays: Vec<IntVector> = c
        .ray_generators
        .rows()
        .iter()
        .filter(|r| !r.is_zero())
        .cloned()
        .collect();
    let tight = |rs: &[IntVector]| -> BTreeSet<usize> {
        (0..normals.len())
            .filter(|&j| rs.iter().all(|r| normals[j].dot(r) == 0))
            .collect()
    };
    let mut seen: BTreeMap<BTreeSet<usize>, Vec<IntVector>> = BTreeMap::new();
    let mut queue = vec![rays.clone()];
    seen.insert(tight(&rays), rays);
    while let Some(face_rays) = queue.pop() {
        let t = tight(&face_rays);
        for j in 0..normals.len() {
            if t.contains(&j) {
                continue;
            }
            let sub: Vec<IntVector> = face_rays
                .iter()
                .filter(|r| normals[j].dot(r) == 0)
                .cloned()
                .collect();
            let key = tight(&sub);
            if !seen.contains_key(&key) {
                seen.insert(key, sub.clone());
                queue.push(sub);
            }
        }
    }
    let mut faces: Vec<Face> = seen
        .into_iter()
        .map(|(t, rs)| Face {
            dim: rank(&rs),
            tight_normal_indices: t,
        })
        .collect();
    faces.sort();
    Ok(faces)
}

/// Whether `v` lies in the relative interior of the face `f` of `c`.
pub fn relint_contains(c: &RationalCone, f: &Face, v: &IntVector) -> bool {
    c.facet_normals
        .rows()
        .iter()
        .enumerate()
        .all(|(j, n)| {
            let x = n.dot(v);
            if f.tight_normal_indices.contains(&j) {
                x == 0
            } else {
                x > 0
            }
        })
}

/// All integer points of the box `bounds` accepted by `predicate`, in lexicographic order.
pub fn lattice_points_in_box(
    bounds: &[(Integer, Integer)],
    mut predicate: impl FnMut(&IntVector) -> bool,
) -> Vec<IntVector> {
    let mut out = Vec::new();
    if bounds.iter().any(|(lo, hi)| lo > hi) {
        return out;
    }
    let mut cur: Vec<Integer> = bounds.iter().map(|(lo, _)| lo.clone()).collect();
    loop {
        let v = IntVector::new(cur.clone());
        if predicate(&v) {
            out.push(v);
        }
        // odometer, last coordinate fastest
        let mut i = bounds.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < bounds[i].1 {
                cur[i] += Integer::ONE;
                break;
            }
            cur[i] = bounds[i].0.clone();
        }
    }
}

/// The supremum of `q` with `(a, q)` in a cone whose last coordinate is a degree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum AsymptoticValue {
    Finite(Rational),
    Unbounded,
}

impl AsymptoticValue {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            AsymptoticValue::Finite(q) => Some(q),
            AsymptoticValue::Unbounded => None,
        }
    }

    /// Whether the value is at least the integer `n`.
    pub fn at_least(&self, n: &Integer) -> bool {
        match self {
            AsymptoticValue::Finite(q) => *q >= Rational::from(n),
            AsymptoticValue::Unbounded => true,
        }
    }
}

/// `max { q : (a, q) in c_rees }`, computed as the minimum of `(c . a) / d` over the
/// inequalities `c . a - d q >= 0` with `d > 0`.
pub fn asymptotic_value(c_rees: &RationalCone, a: &IntVector) -> Result<AsymptoticValue> {
    if a.dim() + 1 != c_rees.ambient_dim {
        return invalid(format!(
            "vector {a} does not match a degree cone in dimension {}",
            c_rees.ambient_dim
        ));
    }
    if !cone_contains(c_rees, &a.extended(Integer::ZERO)) {
        return invalid(format!("{a} is outside the degree-0 slice of the cone"));
    }
    let mut best: Option<Rational> = None;
    for n in c_rees.facet_normals.rows() {
        let last = n.last();
        if *last >= 0 {
            continue;
        }
        let head = n.truncated();
        let q = Rational::from_integers(head.dot(a), -last);
        if best.as_ref().is_none_or(|b| q < *b) {
            best = Some(q);
        }
    }
    Ok(match best {
        Some(q) => AsymptoticValue::Finite(q),
        None => AsymptoticValue::Unbounded,
    })
}

/// All `k`-element index subsets of `0..n`, in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Index sets of the linearly independent generator subsets of maximal size.
pub(crate) fn maximal_independent_subsets(gens: &[IntVector]) -> Vec<Vec<usize>> {
    let r = rank(gens);
    if r == 0 {
        return Vec::new();
    }
    combinations(gens.len(), r)
        .into_iter()
        .filter(|s| {
            let rows: Vec<IntVector> = s.iter().map(|&i| gens[i].clone()).collect();
            rank(&rows) == r
        })
        .collect()
}

/// The points of `group` in the half-open parallelepiped `{sum l_i b_i : 0 <= l_i < 1}`
/// spanned by the independent vectors `basis`, which must lie in `group` and have the
/// group's rank. There are exactly `[group : <basis>]` of them.
pub fn parallelepiped_points(basis: &[IntVector], group: &LatticeGroup) -> Result<Vec<IntVector>> {
    let k = group.rank();
    if basis.len() != k {
        return invalid("parallelepiped basis must have the rank of the group");
    }
    if k == 0 {
        return Ok(vec![IntVector::zero(group.ambient_dim())]);
    }
    // basis in group coordinates
    let mut coords = Vec::with_capacity(k);
    for b in basis {
        let Some(c) = group.coordinates(b)? else {
            return invalid(format!("{b} is not in the group"));
        };
        coords.push(IntVector::new(c));
    }
    let sub = hnf(&IntMatrix::new(k, coords.clone())?)?;
    if sub.rank() != k {
        return invalid("parallelepiped basis is not independent");
    }
    let diag: Vec<Integer> = sub
        .basis()
        .rows()
        .iter()
        .zip(sub.pivots())
        .map(|(row, &p)| row[p].clone())
        .collect();
    let bounds: Vec<(Integer, Integer)> = diag
        .iter()
        .map(|h| (Integer::ZERO, h - Integer::ONE))
        .collect();
    let reps = lattice_points_in_box(&bounds, |_| true);
    let group_rows = group.basis().rows();
    let mut out = Vec::with_capacity(reps.len());
    for y in reps {
        let lambda = solve_rational(&coords, &y).expect("full-rank basis spans");
        let mut reduced = y.clone();
        for (l, c) in lambda.iter().zip(&coords) {
            let f = l.floor();
            if f != 0 {
                reduced = reduced.sub_scaled(&f, c);
            }
        }
        let mut ambient = IntVector::zero(group.ambient_dim());
        for (c, row) in reduced.coords().iter().zip(group_rows) {
            if *c != 0 {
                ambient = &ambient + &row.scale(c);
            }
        }
        out.push(ambient);
    }
    Ok(out)
}

/// A nonnegative rational combination of `gens` equal to `target`, supported on a linearly
/// independent subset, together with the least common denominator of its coefficients.
pub fn conic_combination(gens: &[IntVector], target: &IntVector) -> Option<(Vec<Rational>, Integer)> {
    if target.is_zero() {
        return Some((vec![Rational::ZERO; gens.len()], Integer::ONE));
    }
    for subset in maximal_independent_subsets(gens) {
        let rows: Vec<IntVector> = subset.iter().map(|&i| gens[i].clone()).collect();
        let Some(lambda) = solve_rational(&rows, target) else {
            // target outside the span of every maximal subset
            return None;
        };
        if lambda.iter().any(|l| *l < 0u32) {
            continue;
        }
        let mut full = vec![Rational::ZERO; gens.len()];
        let mut den = Natural::ONE;
        for (&i, l) in subset.iter().zip(lambda) {
            den = den.lcm(l.denominator_ref());
            full[i] = l;
        }
        return Some((full, Integer::from(den)));
    }
    None
}

/// Tight coordinate box around `{x in cone(rays) : weight . x <= w}`, whose vertices are
/// `0` and `w r / weight(r)` for the rays `r`.
pub(crate) fn weight_box(rays: &[IntVector], weight: &IntVector, w: &Integer) -> Vec<(Integer, Integer)> {
    let d = weight.dim();
    let mut bounds = vec![(Integer::ZERO, Integer::ZERO); d];
    for r in rays {
        let wr = weight.dot(r);
        if wr <= 0 {
            continue;
        }
        for (j, b) in bounds.iter_mut().enumerate() {
            let num = w * &r[j];
            let (q, rem) = num.div_mod(&wr);
            let lo = q.clone();
            let hi = if rem == 0 { q } else { q + Integer::ONE };
            if lo < b.0 {
                b.0 = lo;
            }
            if hi > b.1 {
                b.1 = hi;
            }
        }
    }
    bounds
}
