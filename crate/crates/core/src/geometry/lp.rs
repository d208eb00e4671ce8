//! Dense two-phase simplex for small equality-form programs
//! `max cᵀx  s.t.  A x = b,  x ≥ 0,  b ≥ 0`, with Bland's rule.
//!
//! Sized for a handful of rows and many columns, which is the shape of the
//! interior-certificate program in [`super::interior`].

const EPS: f64 = 1e-11;

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { value: f64, x: Vec<f64>, duals: Vec<f64> },
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: usize,
    /// structural + artificial + rhs
    width: usize,
    structural: usize,
    cells: Vec<f64>,
    objective: Vec<f64>,
    basis: Vec<usize>,
}

impl Tableau {
    fn at(&self, r: usize, c: usize) -> f64 {
        self.cells[r * self.width + c]
    }

    fn rhs(&self, r: usize) -> f64 {
        self.at(r, self.width - 1)
    }

    fn pivot(&mut self, r: usize, col: usize) {
        let w = self.width;
        let p = self.at(r, col);
        for c in 0..w {
            self.cells[r * w + c] /= p;
        }
        let pivot_row: Vec<f64> = self.cells[r * w..(r + 1) * w].to_vec();
        for i in 0..self.rows {
            if i == r {
                continue;
            }
            let f = self.cells[i * w + col];
            if f != 0.0 {
                for c in 0..w {
                    self.cells[i * w + c] -= f * pivot_row[c];
                }
            }
        }
        let f = self.objective[col];
        if f != 0.0 {
            for c in 0..w {
                self.objective[c] -= f * pivot_row[c];
            }
        }
        self.basis[r] = col;
    }

    /// Reduced costs z_j = c_j − c_Bᵀ B⁻¹ A_j; the rhs slot holds −c_Bᵀ B⁻¹ b.
    fn set_objective(&mut self, costs: &[f64]) {
        let w = self.width;
        let mut z = vec![0.0; w];
        z[..costs.len()].copy_from_slice(costs);
        for r in 0..self.rows {
            let cb = costs[self.basis[r]];
            if cb != 0.0 {
                for c in 0..w {
                    z[c] -= cb * self.at(r, c);
                }
            }
        }
        self.objective = z;
    }

    /// Runs to optimality over columns `< allowed`. Returns false if unbounded.
    fn optimize(&mut self, allowed: usize) -> bool {
        loop {
            let Some(col) = (0..allowed).find(|&j| self.objective[j] > EPS) else {
                return true;
            };
            let mut best: Option<(usize, f64)> = None;
            for r in 0..self.rows {
                let a = self.at(r, col);
                if a > EPS {
                    let ratio = self.rhs(r) / a;
                    best = match best {
                        None => Some((r, ratio)),
                        Some((br, bv)) => {
                            if ratio < bv - EPS || (ratio <= bv + EPS && self.basis[r] < self.basis[br]) {
                                Some((r, ratio))
                            } else {
                                Some((br, bv))
                            }
                        }
                    };
                }
            }
            let Some((r, _)) = best else {
                return false;
            };
            self.pivot(r, col);
        }
    }
}

/// `a` is row-major with `b.len()` rows and `c.len()` columns; `b` must be
/// non-negative. Duals `y` satisfy `c_j − yᵀA_j ≤ 0` at the optimum.
pub fn maximize(a: &[f64], b: &[f64], c: &[f64]) -> LpOutcome {
    let rows = b.len();
    let n = c.len();
    assert_eq!(a.len(), rows * n);
    assert!(b.iter().all(|&v| v >= 0.0));
    let width = n + rows + 1;
    let mut cells = vec![0.0; rows * width];
    for r in 0..rows {
        cells[r * width..r * width + n].copy_from_slice(&a[r * n..(r + 1) * n]);
        cells[r * width + n + r] = 1.0;
        cells[r * width + width - 1] = b[r];
    }
    let mut t = Tableau {
        rows,
        width,
        structural: n,
        cells,
        objective: vec![],
        basis: (n..n + rows).collect(),
    };

    let mut phase1 = vec![0.0; n + rows];
    phase1[n..].iter_mut().for_each(|v| *v = -1.0);
    t.set_objective(&phase1);
    t.optimize(n + rows);
    let infeasibility: f64 = (0..rows).filter(|&r| t.basis[r] >= n).map(|r| t.rhs(r)).sum();
    let scale = b.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    if infeasibility > 1e-9 * scale {
        return LpOutcome::Infeasible;
    }
    // Drive zero-level artificials out of the basis where possible.
    for r in 0..rows {
        if t.basis[r] >= n {
            if let Some(col) = (0..n).find(|&j| t.at(r, j).abs() > 1e-9) {
                t.pivot(r, col);
            }
        }
    }

    let mut phase2 = vec![0.0; n + rows];
    phase2[..n].copy_from_slice(c);
    t.set_objective(&phase2);
    if !t.optimize(t.structural) {
        return LpOutcome::Unbounded;
    }

    let mut x = vec![0.0; n];
    for r in 0..rows {
        if t.basis[r] < n {
            x[t.basis[r]] = t.rhs(r);
        }
    }
    let value = c.iter().zip(&x).map(|(ci, xi)| ci * xi).sum();
    // y = c_Bᵀ B⁻¹, and B⁻¹ sits in the artificial block.
    let duals = (0..rows)
        .map(|k| (0..rows).map(|r| phase2[t.basis[r]] * t.at(r, n + k)).sum())
        .collect();
    LpOutcome::Optimal { value, x, duals }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn textbook_program() {
        // max 3x + 5y, x + s1 = 4, 2y + s2 = 12, 3x + 2y + s3 = 18
        let a = [
            1.0, 0.0, 1.0, 0.0, 0.0, //
            0.0, 2.0, 0.0, 1.0, 0.0, //
            3.0, 2.0, 0.0, 0.0, 1.0,
        ];
        let LpOutcome::Optimal { value, x, duals } = maximize(&a, &[4.0, 12.0, 18.0], &[3.0, 5.0, 0.0, 0.0, 0.0])
        else {
            panic!("expected optimum")
        };
        assert!((value - 36.0).abs() < 1e-9);
        assert!((x[0] - 2.0).abs() < 1e-9 && (x[1] - 6.0).abs() < 1e-9);
        // dual objective equals primal
        let dual_value: f64 = duals.iter().zip([4.0, 12.0, 18.0]).map(|(y, b)| y * b).sum();
        assert!((dual_value - 36.0).abs() < 1e-9);
    }

    #[test]
    fn infeasible_and_unbounded() {
        // x1 + x2 = 1 and x1 + x2 = 2
        assert_eq!(maximize(&[1.0, 1.0, 1.0, 1.0], &[1.0, 2.0], &[0.0, 0.0]), LpOutcome::Infeasible);
        // x1 − x2 = 0, maximize x1
        assert_eq!(maximize(&[1.0, -1.0], &[0.0], &[1.0, 0.0]), LpOutcome::Unbounded);
    }
}
