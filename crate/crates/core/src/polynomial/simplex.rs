//! Textbook two-phase simplex over exact rationals.
//!
//! Bland's rule for both the entering and leaving choices guarantees
//! termination without cycling. The LPs solved in this crate stay below
//! ~130 constraints, so a dense exact tableau is the whole story.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rel {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<Rat>,
    pub rel: Rel,
    pub rhs: Rat,
}

impl Constraint {
    pub fn new(coeffs: Vec<Rat>, rel: Rel, rhs: Rat) -> Self {
        Constraint { coeffs, rel, rhs }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    /// Minimum found; `solution` holds the structural variables only.
    Optimal { objective: Rat, solution: Vec<Rat> },
    Infeasible,
    Unbounded,
}

struct Tableau {
    /// `rows x (cols + 1)`; the last entry of each row is the rhs.
    a: Vec<Vec<Rat>>,
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn rhs(&self, row: usize) -> &Rat {
        &self.a[row][self.cols]
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let pivot = self.a[row][col].clone();
        for entry in self.a[row].iter_mut() {
            *entry /= &pivot;
        }
        for r in 0..self.a.len() {
            if r == row || self.a[r][col].is_zero() {
                continue;
            }
            let factor = self.a[r][col].clone();
            for c in 0..=self.cols {
                let delta = &factor * &self.a[row][c];
                self.a[r][c] -= delta;
            }
        }
        self.basis[row] = col;
    }

    /// Minimize `cost . x` from the current basic feasible point.
    /// `allowed` masks the columns the entering rule may consider.
    /// Returns false on unboundedness.
    fn run(&mut self, cost: &[Rat], allowed: &[bool]) -> bool {
        let rows = self.a.len();
        // Reduced costs: z_j = c_j - sum_i c_{basis(i)} a_ij.
        let mut z: Vec<Rat> = cost.to_vec();
        for (i, &b) in self.basis.iter().enumerate() {
            if cost[b].is_zero() {
                continue;
            }
            let factor = cost[b].clone();
            for (zj, aij) in z.iter_mut().zip(&self.a[i]) {
                *zj -= &factor * aij;
            }
        }
        loop {
            // Bland: smallest-index improving column.
            let entering = (0..self.cols)
                .find(|&j| allowed[j] && z[j].is_negative() && !self.basis.contains(&j));
            let Some(col) = entering else {
                return true;
            };
            // Ratio test; ties resolved by smallest basis variable index.
            let mut best: Option<(usize, Rat)> = None;
            for i in 0..rows {
                if self.a[i][col].is_positive() {
                    let ratio = self.rhs(i) / &self.a[i][col];
                    let better = match &best {
                        None => true,
                        Some((bi, br)) => {
                            ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                        }
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            let Some((row, _)) = best else {
                return false;
            };
            self.pivot(row, col);
            // Refresh the reduced-cost row from the pivot row.
            let factor = z[col].clone();
            if !factor.is_zero() {
                for (zj, arj) in z.iter_mut().zip(&self.a[row]) {
                    *zj -= &factor * arj;
                }
            }
        }
    }
}

/// Minimize `objective . x` subject to the constraints and `x >= 0`.
pub fn minimize(objective: &[Rat], constraints: &[Constraint]) -> LpOutcome {
    let n = objective.len();
    let rows = constraints.len();

    // Normalize to nonnegative rhs, then count auxiliary columns.
    let mut normed: Vec<(Vec<Rat>, Rel, Rat)> = Vec::with_capacity(rows);
    for c in constraints {
        assert_eq!(c.coeffs.len(), n, "constraint width mismatch");
        if c.rhs.is_negative() {
            let coeffs = c.coeffs.iter().map(|v| -v).collect();
            let rel = match c.rel {
                Rel::Le => Rel::Ge,
                Rel::Ge => Rel::Le,
                Rel::Eq => Rel::Eq,
            };
            normed.push((coeffs, rel, -&c.rhs));
        } else {
            normed.push((c.coeffs.clone(), c.rel, c.rhs.clone()));
        }
    }
    let slacks = normed.iter().filter(|(_, r, _)| *r != Rel::Eq).count();
    let artificials = normed.iter().filter(|(_, r, _)| *r != Rel::Le).count();
    let cols = n + slacks + artificials;

    let mut a: Vec<Vec<Rat>> = Vec::with_capacity(rows);
    let mut basis = vec![0usize; rows];
    let mut slack_at = n;
    let mut art_at = n + slacks;
    let mut art_cols: Vec<usize> = Vec::new();
    for (i, (coeffs, rel, rhs)) in normed.iter().enumerate() {
        let mut row = vec![Rat::zero(); cols + 1];
        row[..n].clone_from_slice(coeffs);
        row[cols] = rhs.clone();
        match rel {
            Rel::Le => {
                row[slack_at] = Rat::one();
                basis[i] = slack_at;
                slack_at += 1;
            }
            Rel::Ge => {
                row[slack_at] = -Rat::one();
                slack_at += 1;
                row[art_at] = Rat::one();
                basis[i] = art_at;
                art_cols.push(art_at);
                art_at += 1;
            }
            Rel::Eq => {
                row[art_at] = Rat::one();
                basis[i] = art_at;
                art_cols.push(art_at);
                art_at += 1;
            }
        }
        a.push(row);
    }

    let mut t = Tableau { a, basis, cols };
    let mut allowed = vec![true; cols];

    // Phase 1: drive the artificial variables to zero.
    if !art_cols.is_empty() {
        let mut phase1 = vec![Rat::zero(); cols];
        for &j in &art_cols {
            phase1[j] = Rat::one();
        }
        if !t.run(&phase1, &allowed) {
            // Phase-1 objective is bounded below by zero.
            unreachable!("phase 1 cannot be unbounded");
        }
        let infeasibility: Rat = (0..rows)
            .filter(|&i| art_cols.contains(&t.basis[i]))
            .map(|i| t.rhs(i).clone())
            .sum();
        if !infeasibility.is_zero() {
            return LpOutcome::Infeasible;
        }
        // Pivot lingering zero-valued artificials out of the basis; a row
        // with no eligible column is redundant and can keep its artificial
        // at value zero as long as the column is barred from re-entering.
        for i in 0..rows {
            if art_cols.contains(&t.basis[i]) {
                if let Some(j) = (0..n + slacks).find(|&j| !t.a[i][j].is_zero()) {
                    t.pivot(i, j);
                }
            }
        }
        for &j in &art_cols {
            allowed[j] = false;
        }
    }

    // Phase 2: the real objective.
    let mut cost = vec![Rat::zero(); cols];
    cost[..n].clone_from_slice(objective);
    if !t.run(&cost, &allowed) {
        return LpOutcome::Unbounded;
    }

    let mut solution = vec![Rat::zero(); n];
    for (i, &b) in t.basis.iter().enumerate() {
        if b < n {
            solution[b] = t.rhs(i).clone();
        }
    }
    let objective_value: Rat = objective
        .iter()
        .zip(&solution)
        .map(|(c, x)| c * x)
        .sum();
    LpOutcome::Optimal {
        objective: objective_value,
        solution,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::rat;

    fn le(coeffs: Vec<Rat>, rhs: Rat) -> Constraint {
        Constraint::new(coeffs, Rel::Le, rhs)
    }

    fn ge(coeffs: Vec<Rat>, rhs: Rat) -> Constraint {
        Constraint::new(coeffs, Rel::Ge, rhs)
    }

    #[test]
    fn simple_minimum() {
        // min x + y  s.t.  x + y >= 2, x <= 3
        let out = minimize(
            &[rat(1, 1), rat(1, 1)],
            &[
                ge(vec![rat(1, 1), rat(1, 1)], rat(2, 1)),
                le(vec![rat(1, 1), rat(0, 1)], rat(3, 1)),
            ],
        );
        match out {
            LpOutcome::Optimal { objective, .. } => assert_eq!(objective, rat(2, 1)),
            other => panic!("unexpected outcome {other:?}"),
        }
    }

    #[test]
    fn detects_infeasible() {
        let out = minimize(
            &[rat(1, 1)],
            &[le(vec![rat(1, 1)], rat(1, 1)), ge(vec![rat(1, 1)], rat(2, 1))],
        );
        assert_eq!(out, LpOutcome::Infeasible);
    }

    #[test]
    fn detects_unbounded() {
        // min -x  s.t.  x >= 1
        let out = minimize(&[rat(-1, 1)], &[ge(vec![rat(1, 1)], rat(1, 1))]);
        assert_eq!(out, LpOutcome::Unbounded);
    }

    #[test]
    fn equality_constraints() {
        // min 2x + 3y  s.t.  x + y = 4, x - y <= 1
        let out = minimize(
            &[rat(2, 1), rat(3, 1)],
            &[
                Constraint::new(vec![rat(1, 1), rat(1, 1)], Rel::Eq, rat(4, 1)),
                le(vec![rat(1, 1), rat(-1, 1)], rat(1, 1)),
            ],
        );
        match out {
            LpOutcome::Optimal {
                objective,
                solution,
            } => {
                // x = 5/2, y = 3/2 is the corner with x - y = 1.
                assert_eq!(objective, rat(19, 2));
                assert_eq!(solution, vec![rat(5, 2), rat(3, 2)]);
            }
            other => panic!("unexpected outcome {other:?}"),
        }
    }

    #[test]
    fn negative_rhs_is_normalized() {
        // min x  s.t.  -x <= -3   (i.e. x >= 3)
        let out = minimize(&[rat(1, 1)], &[le(vec![rat(-1, 1)], rat(-3, 1))]);
        match out {
            LpOutcome::Optimal { objective, .. } => assert_eq!(objective, rat(3, 1)),
            other => panic!("unexpected outcome {other:?}"),
        }
    }

    #[test]
    fn degenerate_problem_terminates() {
        // A degenerate vertex: several constraints meet at the optimum.
        let out = minimize(
            &[rat(-3, 4), rat(150, 1), rat(-1, 50), rat(6, 1)],
            &[
                le(
                    vec![rat(1, 4), rat(-60, 1), rat(-1, 25), rat(9, 1)],
                    rat(0, 1),
                ),
                le(
                    vec![rat(1, 2), rat(-90, 1), rat(-1, 50), rat(3, 1)],
                    rat(0, 1),
                ),
                le(vec![rat(0, 1), rat(0, 1), rat(1, 1), rat(0, 1)], rat(1, 1)),
            ],
        );
        // The classic cycling example; Bland's rule must terminate at -1/20.
        match out {
            LpOutcome::Optimal { objective, .. } => assert_eq!(objective, rat(-1, 20)),
            other => panic!("unexpected outcome {other:?}"),
        }
    }
}
