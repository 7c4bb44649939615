use malachite::num::arithmetic::traits::DivMod;
use malachite::num::basic::traits::Zero;
use malachite::Integer;

use super::{IntMatrix, IntVector};
use crate::error::{invalid, Result};

/// A subgroup of `Z^d`, stored by its row Hermite normal form.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LatticeGroup {
    ambient_dim: usize,
    basis: IntMatrix,
    pivots: Vec<usize>,
}

impl LatticeGroup {
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Rows of the Hermite normal form.
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `v` with respect to the HNF basis, if `v` lies in the group.
    pub fn coordinates(&self, v: &IntVector) -> Result<Option<Vec<Integer>>> {
        if v.dim() != self.ambient_dim {
            return invalid(format!(
                "vector {v} has dimension {}, group lives in Z^{}",
                v.dim(),
                self.ambient_dim
            ));
        }
        let mut residual = v.clone();
        let mut coeffs = Vec::with_capacity(self.rank());
        for (row, &p) in self.basis.rows().iter().zip(&self.pivots) {
            let (q, r) = residual[p].clone().div_mod(&row[p]);
            if r != 0 {
                return Ok(None);
            }
            if q != 0 {
                residual = residual.sub_scaled(&q, row);
            }
            coeffs.push(q);
        }
        Ok(residual.is_zero().then_some(coeffs))
    }
}

/// Row Hermite normal form: nonnegative pivots strictly moving right, entries above each
/// pivot reduced into `[0, pivot)`, zero rows dropped.
pub fn hnf(rows: &IntMatrix) -> Result<LatticeGroup> {
    if rows.is_empty() {
        return invalid("hnf needs at least one row");
    }
    let d = rows.dim();
    if d == 0 {
        return invalid("hnf needs ambient dimension at least 1");
    }
    let mut a: Vec<IntVector> = rows.rows().to_vec();
    let m = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..d {
        if r == m {
            break;
        }
        loop {
            // smallest nonzero entry in this column becomes the pivot candidate
            let best = (r..m)
                .filter(|&i| a[i][col] != 0)
                .min_by(|&i, &j| abs_cmp(&a[i][col], &a[j][col]).then(i.cmp(&j)));
            let Some(best) = best else { break };
            a.swap(r, best);
            let mut done = true;
            for i in r + 1..m {
                if a[i][col] != 0 {
                    let (q, _) = a[i][col].clone().div_mod(&a[r][col]);
                    a[i] = a[i].sub_scaled(&q, &a[r]);
                    if a[i][col] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if r < m && a[r][col] != 0 {
            if a[r][col] < 0 {
                a[r] = -&a[r];
            }
            for i in 0..r {
                let (q, _) = a[i][col].clone().div_mod(&a[r][col]);
                if q != 0 {
                    a[i] = a[i].sub_scaled(&q, &a[r]);
                }
            }
            pivots.push(col);
            r += 1;
        }
    }
    a.truncate(r);
    Ok(LatticeGroup {
        ambient_dim: d,
        basis: IntMatrix::new(d, a)?,
        pivots,
    })
}

fn abs_cmp(a: &Integer, b: &Integer) -> std::cmp::Ordering {
    a.unsigned_abs_ref().cmp(&b.unsigned_abs_ref())
}

/// Whether `v` is an integer combination of the group's basis rows.
pub fn group_contains(g: &LatticeGroup, v: &IntVector) -> Result<bool> {
    Ok(g.coordinates(v)?.is_some())
}

/// Rank of a set of vectors (over `Q`); 0 for an empty set.
pub fn rank(rows: &[IntVector]) -> usize {
    if rows.is_empty() || rows[0].dim() == 0 {
        return 0;
    }
    let m = IntMatrix::from_rows(rows.to_vec()).expect("rows of equal dimension");
    hnf(&m).map(|g| g.rank()).unwrap_or(0)
}

/// Determinant of a square integer matrix (fraction-free Bareiss elimination).
pub fn determinant(rows: &[IntVector]) -> Integer {
    let n = rows.len();
    if n == 0 {
        return Integer::from(1);
    }
    let mut a: Vec<Vec<Integer>> = rows.iter().map(|r| r.coords().to_vec()).collect();
    let mut sign = 1i32;
    let mut prev = Integer::from(1);
    for k in 0..n {
        if a[k][k] == 0 {
            let Some(swap) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                return Integer::ZERO;
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}
