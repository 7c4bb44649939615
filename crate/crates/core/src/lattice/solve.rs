use std::collections::HashSet;

use malachite::num::arithmetic::traits::DivMod;
use malachite::num::basic::traits::{One, Zero};
use malachite::{Integer, Rational};

use super::{IntMatrix, IntVector};
use crate::error::{invalid, Result};

/// Finds nonnegative integers `a_i` with `sum a_i * gens_i = v`.
///
/// The search is exhaustive: `weight` is strictly positive on every generator, so
/// `a_i <= weight(v) / weight(g_i)`. Coefficients are tried in increasing order from the
/// first generator on, so the lexicographically smallest solution is the one returned.
pub fn solve_nonneg_integer(
    gens: &IntMatrix,
    v: &IntVector,
    weight: &IntVector,
) -> Result<Option<Vec<Integer>>> {
    let d = gens.dim();
    if v.dim() != d || weight.dim() != d {
        return invalid(format!(
            "target {v} / weight {weight} do not match generator dimension {d}"
        ));
    }
    let gen_weights: Vec<Integer> = gens.rows().iter().map(|g| weight.dot(g)).collect();
    if let Some(i) = gen_weights.iter().position(|w| *w <= 0) {
        return invalid(format!(
            "weight {weight} is not strictly positive on generator {}",
            gens.rows()[i]
        ));
    }
    if v.is_zero() {
        return Ok(Some(vec![Integer::ZERO; gens.len()]));
    }
    if gens.is_empty() {
        return Ok(None);
    }
    let mut search = NonnegSearch {
        gens: gens.rows(),
        gen_weights: &gen_weights,
        weight,
        dead: HashSet::new(),
        coeffs: vec![Integer::ZERO; gens.len()],
    };
    if !search.run(0, v.clone()) {
        return Ok(None);
    }
    let coeffs = search.coeffs;
    let mut check = IntVector::zero(d);
    for (c, g) in coeffs.iter().zip(gens.rows()) {
        check = &check + &g.scale(c);
    }
    assert_eq!(&check, v, "nonnegative solution failed re-verification");
    Ok(Some(coeffs))
}

struct NonnegSearch<'a> {
    gens: &'a [IntVector],
    gen_weights: &'a [Integer],
    weight: &'a IntVector,
    dead: HashSet<(usize, IntVector)>,
    coeffs: Vec<Integer>,
}

impl NonnegSearch<'_> {
    fn run(&mut self, idx: usize, residual: IntVector) -> bool {
        if residual.is_zero() {
            for c in &mut self.coeffs[idx..] {
                *c = Integer::ZERO;
            }
            return true;
        }
        let w = self.weight.dot(&residual);
        if w <= 0 || idx == self.gens.len() {
            return false;
        }
        let g = &self.gens[idx];
        if idx + 1 == self.gens.len() {
            // last generator: the residual must be an exact multiple
            let (q, r) = w.div_mod(&self.gen_weights[idx]);
            if r == 0 && g.scale(&q) == residual {
                self.coeffs[idx] = q;
                return true;
            }
            return false;
        }
        if self.dead.contains(&(idx, residual.clone())) {
            return false;
        }
        let (max, _) = w.div_mod(&self.gen_weights[idx]);
        let mut k = Integer::ZERO;
        let mut r = residual.clone();
        while k <= max {
            if self.run(idx + 1, r.clone()) {
                self.coeffs[idx] = k;
                return true;
            }
            k += Integer::ONE;
            r = &r - g;
        }
        self.dead.insert((idx, residual));
        false
    }
}

/// Solves `sum lambda_i * rows_i = target` over the rationals; `rows` must be linearly
/// independent. Returns `None` when `target` is outside their span.
pub fn solve_rational(rows: &[IntVector], target: &IntVector) -> Option<Vec<Rational>> {
    let k = rows.len();
    let d = target.dim();
    // augmented system: d equations in k unknowns, column j = rows[j]
    let mut a: Vec<Vec<Rational>> = (0..d)
        .map(|i| {
            let mut eq: Vec<Rational> = rows.iter().map(|r| Rational::from(&r[i])).collect();
            eq.push(Rational::from(&target[i]));
            eq
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for col in 0..k {
        let Some(p) = (r..d).find(|&i| a[i][col] != 0u32) else {
            continue;
        };
        a.swap(r, p);
        let inv = Rational::ONE / &a[r][col];
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..d {
            if i != r && a[i][col] != 0u32 {
                let f = a[i][col].clone();
                for j in col..=k {
                    let t = &f * &a[r][j];
                    a[i][j] -= t;
                }
            }
        }
        pivot_cols.push(col);
        r += 1;
    }
    if (r..d).any(|i| a[i][k] != 0u32) {
        return None;
    }
    let mut sol = vec![Rational::ZERO; k];
    for (i, &c) in pivot_cols.iter().enumerate() {
        sol[c] = a[i][k].clone();
    }
    Some(sol)
}
