//! Monomial ideals `I ⊆ K[S]`: powers, the order function, integral closure of powers and
//! ideal normality, all read off the Rees monoid `{(s, 0)} ∪ {(g, 1)}`.

use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap};

use malachite::num::basic::traits::{One, Zero};
use malachite::Integer;

use crate::cone::{asymptotic_value, cone_contains, conic_combination, AsymptoticValue};
use crate::error::{invalid, Result};
use crate::lattice::{IntMatrix, IntVector};
use crate::monoid::{is_normal, monoid_contains, AffineMonoid, Certificate, Verdict};

pub const DEFAULT_POWER_BOUND: u64 = 6;

/// A proper monomial ideal, given by generators lying in the ambient monoid.
#[derive(Clone, Debug)]
pub struct MonomialIdeal {
    ambient: AffineMonoid,
    generators: IntMatrix,
    rees: AffineMonoid,
}

impl MonomialIdeal {
    pub fn new(ambient: AffineMonoid, generators: IntMatrix) -> Result<Self> {
        let d = ambient.ambient_dim();
        if generators.dim() != d {
            return invalid(format!(
                "ideal generators live in Z^{}, monoid in Z^{d}",
                generators.dim()
            ));
        }
        let gens: BTreeSet<IntVector> = generators.into_rows().into_iter().collect();
        if gens.is_empty() {
            return invalid("an ideal needs at least one generator");
        }
        for g in &gens {
            if g.is_zero() {
                return invalid("ideal contains 0: it is the unit ideal, not proper");
            }
            if !monoid_contains(&ambient, g) {
                return invalid(format!("ideal generator {g} is not in the monoid"));
            }
        }
        let generators = IntMatrix::new(d, gens.into_iter().collect())?;
        let mut rows: Vec<IntVector> = ambient
            .generators()
            .rows()
            .iter()
            .map(|s| s.extended(Integer::ZERO))
            .collect();
        rows.extend(generators.rows().iter().map(|g| g.extended(Integer::ONE)));
        let rees = AffineMonoid::new(IntMatrix::new(d + 1, rows)?)?;
        Ok(MonomialIdeal {
            ambient,
            generators,
            rees,
        })
    }

    pub fn ambient(&self) -> &AffineMonoid {
        &self.ambient
    }

    pub fn generators(&self) -> &IntMatrix {
        &self.generators
    }

    /// The monoid of `R₊(I) = A[It]`, degree last.
    pub fn rees_plus(&self) -> &AffineMonoid {
        &self.rees
    }

    pub fn max_generator_weight(&self) -> Integer {
        self.generators
            .rows()
            .iter()
            .map(|g| self.ambient.weight_of(g))
            .max()
            .expect("nonempty generators")
    }

    /// `I · K[S][y]` for a fresh variable `y`.
    pub fn extended_to_free(&self) -> MonomialIdeal {
        let rows = self
            .generators
            .rows()
            .iter()
            .map(|g| g.extended(Integer::ZERO))
            .collect();
        let d = self.ambient.ambient_dim() + 1;
        MonomialIdeal::new(
            self.ambient.with_free_coordinate(),
            IntMatrix::new(d, rows).expect("same dimension"),
        )
        .expect("generators stay in the product monoid")
    }
}

/// `a ∈ exp(I^n)`, i.e. `(a, n)` in the Rees monoid; `n = 0` is membership in `S`.
pub fn power_membership(i: &MonomialIdeal, a: &IntVector, n: u64) -> bool {
    if a.dim() != i.ambient.ambient_dim() {
        return false;
    }
    monoid_contains(&i.rees, &a.extended(Integer::from(n)))
}

/// The largest `n` with `a ∈ exp(I^n)`.
pub fn ord(i: &MonomialIdeal, a: &IntVector) -> Result<u64> {
    if !monoid_contains(&i.ambient, a) {
        return invalid(format!("{a} is not in the monoid"));
    }
    let mut n = 0;
    while power_membership(i, a, n + 1) {
        n += 1;
    }
    Ok(n)
}

/// Order function filled lazily by
/// `ord(a) = max(ord(a - g) + 1 over ideal generators g, ord(a - s) over monoid generators s)`,
/// which never touches the Rees monoid. `None` means `a ∉ S`.
pub struct OrdTable<'a> {
    ideal: &'a MonomialIdeal,
    memo: RefCell<HashMap<IntVector, Option<u64>>>,
}

impl<'a> OrdTable<'a> {
    pub fn new(ideal: &'a MonomialIdeal) -> Self {
        OrdTable {
            ideal,
            memo: RefCell::new(HashMap::new()),
        }
    }

    pub fn ideal(&self) -> &'a MonomialIdeal {
        self.ideal
    }

    pub fn ord(&self, a: &IntVector) -> Option<u64> {
        if a.is_zero() {
            return Some(0);
        }
        let s = &self.ideal.ambient;
        if a.dim() != s.ambient_dim() || !cone_contains(s.cone(), a) {
            return None;
        }
        if let Some(&known) = self.memo.borrow().get(a) {
            return known;
        }
        let mut best: Option<u64> = None;
        for g in self.ideal.generators.rows() {
            if let Some(m) = self.ord(&(a - g)) {
                best = best.max(Some(m + 1));
            }
        }
        for g in s.generators().rows() {
            if let Some(m) = self.ord(&(a - g)) {
                best = best.max(Some(m));
            }
        }
        self.memo.borrow_mut().insert(a.clone(), best);
        best
    }
}

/// `a ∈ closure(I^n)` iff `a ∈ S` and `(a, n)` lies in the Rees cone.
pub fn integral_closure_contains(i: &MonomialIdeal, a: &IntVector, n: u64) -> bool {
    monoid_contains(&i.ambient, a) && cone_contains(i.rees.cone(), &a.extended(Integer::from(n)))
}

/// `max { q : (a, q) in cone(R₊) }`.
pub fn asymptotic_order(i: &MonomialIdeal, a: &IntVector) -> Result<AsymptoticValue> {
    let v = asymptotic_value(i.rees.cone(), a)?;
    assert!(
        v.finite().is_some(),
        "asymptotic order is finite for proper ideals in pointed monoids"
    );
    Ok(v)
}

/// Least `k` with `k (a, n)` a nonnegative integer combination of Rees generators, taken from
/// a rational combination on linearly independent generators.
pub fn cone_multiplier(i: &MonomialIdeal, a: &IntVector, n: u64) -> Option<u64> {
    let target = a.extended(Integer::from(n));
    conic_combination(i.rees.generators().rows(), &target)
        .map(|(_, den)| u64::try_from(&den).expect("denominator fits in u64"))
}

/// Exact when `S` is normal: then `I` is normal iff the Rees monoid is normal, and a Rees hole
/// `(a, n)` is a closure/power gap. Otherwise checks `n <= n_power` on the elements of weight
/// at most `(n_power + 1) * max generator weight`.
pub fn is_normal_ideal(i: &MonomialIdeal, n_power: u64) -> Verdict {
    if is_normal(&i.ambient).is_holds() {
        return match is_normal(&i.rees) {
            Verdict::Holds => Verdict::Holds,
            Verdict::Fails(Certificate::NotNormal { v }) => {
                let n = u64::try_from(v.last()).expect("holes sit in positive degree");
                let a = v.truncated();
                let k = cone_multiplier(i, &a, n).expect("hole lies in the cone");
                Verdict::Fails(Certificate::NotIntegrallyClosedPower { a, n, k })
            }
            other => unreachable!("normality is exact: {other:?}"),
        };
    }
    let table = OrdTable::new(i);
    let bound = Integer::from(n_power + 1) * i.max_generator_weight();
    for a in i.ambient.elements_up_to(&bound) {
        let n = table.ord(&a).expect("element of S") + 1;
        if n <= n_power && integral_closure_contains(i, &a, n) {
            let k = cone_multiplier(i, &a, n).expect("in the cone");
            return Verdict::Fails(Certificate::NotIntegrallyClosedPower { a, n, k });
        }
    }
    Verdict::Unknown(n_power)
}

pub(crate) fn verify_ideal_certificate(i: &MonomialIdeal, c: &Certificate) -> Result<bool> {
    let Certificate::NotIntegrallyClosedPower { a, n, k } = c else {
        return invalid(format!(
            "{} certificates are not checked against an ideal",
            c.kind()
        ));
    };
    if a.dim() != i.ambient.ambient_dim() {
        return invalid(format!("witness {a} has the wrong dimension"));
    }
    if *n == 0 || *k == 0 {
        return invalid("power and multiplier must be positive");
    }
    let ka = a.scale(&Integer::from(*k));
    Ok(monoid_contains(&i.ambient, a)
        && power_membership(i, &ka, k * n)
        && !power_membership(i, a, *n))
}
