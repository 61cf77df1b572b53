//! Exact two-phase simplex over the rationals.
//!
//! Problems are in equality standard form: optimize `c·x` subject to
//! `A x = b`, `x ≥ 0`. The solver is a revised simplex method with an
//! explicit basis inverse, which also yields the dual `y = c_B B⁻¹`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sense {
    Max,
    Min,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearProgram {
    pub sense: Sense,
    pub objective: Vec<Rational>,
    pub eq_matrix: Vec<Vec<Rational>>,
    pub eq_rhs: Vec<Rational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpSolution {
    pub status: Status,
    /// Optimal objective value; zero unless `status` is optimal.
    pub value: Rational,
    pub primal: Vec<Rational>,
    /// One multiplier per equality row.
    pub dual: Vec<Rational>,
}

/// Consecutive degenerate pivots tolerated under largest-coefficient
/// pricing before switching to Bland's rule.
const DEGENERATE_STREAK: usize = 32;

/// Revised simplex state: the basis inverse is kept explicitly, and the
/// structural columns are stored sparsely. Artificial column `n + i` is the
/// unit vector of row `i`.
struct Revised {
    columns: Vec<Vec<(usize, Rational)>>,
    /// Phase cost of each structural column; artificials are charged via `artificial_cost`.
    cost: Vec<Rational>,
    artificial_cost: Rational,
    binv: Vec<Vec<Rational>>,
    /// Values of the basic variables, `B⁻¹ b`.
    xb: Vec<Rational>,
    /// Simplex multipliers `c_B B⁻¹`.
    y: Vec<Rational>,
    value: Rational,
    basis: Vec<usize>,
}

impl Revised {
    fn n(&self) -> usize {
        self.columns.len()
    }

    fn column_cost(&self, j: usize) -> Rational {
        if j < self.n() {
            self.cost[j].clone()
        } else {
            self.artificial_cost.clone()
        }
    }

    /// `c_j − y·A_j`.
    fn reduced_cost(&self, j: usize) -> Rational {
        let mut d = self.cost[j].clone();
        for (i, a) in &self.columns[j] {
            let yi = &self.y[*i];
            if yi.is_zero() {
                continue;
            }
            if a.is_one() {
                d -= yi;
            } else {
                d -= yi * a;
            }
        }
        d
    }

    /// `B⁻¹ A_j`.
    fn ftran(&self, j: usize) -> Vec<Rational> {
        let m = self.binv.len();
        let mut alpha = vec![Rational::zero(); m];
        if j >= self.n() {
            let i = j - self.n();
            for (r, row) in self.binv.iter().enumerate() {
                alpha[r] = row[i].clone();
            }
            return alpha;
        }
        for (i, a) in &self.columns[j] {
            for (r, row) in self.binv.iter().enumerate() {
                let v = &row[*i];
                if v.is_zero() {
                    continue;
                }
                if a.is_one() {
                    alpha[r] += v;
                } else {
                    alpha[r] += v * a;
                }
            }
        }
        alpha
    }

    /// Recomputes `y = c_B B⁻¹` and the objective for the current costs.
    fn refresh_duals(&mut self) {
        let m = self.binv.len();
        let mut y = vec![Rational::zero(); m];
        let mut value = Rational::zero();
        for r in 0..m {
            let cb = self.column_cost(self.basis[r]);
            if cb.is_zero() {
                continue;
            }
            for (i, v) in self.binv[r].iter().enumerate() {
                if !v.is_zero() {
                    y[i] += &cb * v;
                }
            }
            value += &cb * &self.xb[r];
        }
        self.y = y;
        self.value = value;
    }

    /// Makes column `col` (with `alpha = B⁻¹ A_col` and reduced cost `d`)
    /// basic in row `row`.
    fn pivot(&mut self, row: usize, col: usize, alpha: &[Rational], d: &Rational) {
        let inv = alpha[row].recip();
        let mut prow = std::mem::take(&mut self.binv[row]);
        if !inv.is_one() {
            for v in prow.iter_mut() {
                if !v.is_zero() {
                    *v *= &inv;
                }
            }
            self.xb[row] *= &inv;
        }
        let nz: Vec<usize> = (0..prow.len()).filter(|&i| !prow[i].is_zero()).collect();
        let theta = self.xb[row].clone();
        for (r, other) in self.binv.iter_mut().enumerate() {
            let factor = &alpha[r];
            if r == row || factor.is_zero() {
                continue;
            }
            for &i in &nz {
                other[i] -= factor * &prow[i];
            }
            self.xb[r] -= factor * &theta;
        }
        if !d.is_zero() {
            for &i in &nz {
                self.y[i] += d * &prow[i];
            }
            self.value += d * &theta;
        }
        self.binv[row] = prow;
        self.basis[row] = col;
    }

    /// Maximizes the current phase objective over the structural columns.
    /// Returns `false` if unbounded.
    fn optimize(&mut self) -> bool {
        let n = self.n();
        let mut streak = 0;
        let mut in_basis = vec![false; n];
        for &b in &self.basis {
            if b < n {
                in_basis[b] = true;
            }
        }
        loop {
            let bland = streak >= DEGENERATE_STREAK;
            let mut entering: Option<(usize, Rational)> = None;
            for j in 0..n {
                if in_basis[j] {
                    continue;
                }
                let d = self.reduced_cost(j);
                if !d.is_positive() {
                    continue;
                }
                if bland {
                    entering = Some((j, d));
                    break;
                }
                if entering.as_ref().map_or(true, |(_, best)| d > *best) {
                    entering = Some((j, d));
                }
            }
            let Some((col, d)) = entering else { return true };
            let alpha = self.ftran(col);
            let mut leave: Option<(usize, Rational)> = None;
            for (r, a) in alpha.iter().enumerate() {
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.xb[r] / a;
                let better = match &leave {
                    None => true,
                    Some((lr, lratio)) => ratio < *lratio || (ratio == *lratio && self.basis[r] < self.basis[*lr]),
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
            let Some((row, ratio)) = leave else { return false };
            if ratio.is_zero() {
                streak += 1;
            } else {
                streak = 0;
            }
            let old = self.basis[row];
            if old < n {
                in_basis[old] = false;
            }
            in_basis[col] = true;
            self.pivot(row, col, &alpha, &d);
            if log::log_enabled!(log::Level::Trace) {
                self.dump(col, row);
            }
        }
    }

    fn dump(&self, col: usize, row: usize) {
        log::trace!("pivot col {col} row {row}; value {}", self.value);
        for (r, cells) in self.binv.iter().enumerate() {
            let cells: Vec<String> = cells.iter().map(|c| c.to_string()).collect();
            log::trace!("  [{}] {} | {}", self.basis[r], cells.join(" "), self.xb[r]);
        }
    }
}

impl LinearProgram {
    pub fn new(sense: Sense, objective: Vec<Rational>, eq_matrix: Vec<Vec<Rational>>, eq_rhs: Vec<Rational>) -> Self {
        LinearProgram { sense, objective, eq_matrix, eq_rhs }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    fn check_dims(&self) -> Result<()> {
        let n = self.objective.len();
        if self.eq_rhs.len() != self.eq_matrix.len() {
            return Err(Error::DimensionMismatch { expected: self.eq_matrix.len(), found: self.eq_rhs.len() });
        }
        for row in &self.eq_matrix {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: row.len() });
            }
        }
        Ok(())
    }
}

/// Solves `lp` exactly. Optimal solutions are checked for primal
/// feasibility, dual feasibility and equal objective values before return;
/// a failed check is reported as [`Error::Defect`].
pub fn solve(lp: &LinearProgram) -> Result<LpSolution> {
    lp.check_dims()?;
    let n = lp.num_vars();
    let m = lp.eq_matrix.len();
    let sign = match lp.sense {
        Sense::Max => Rational::one(),
        Sense::Min => -Rational::one(),
    };

    let flipped: Vec<bool> = lp.eq_rhs.iter().map(Rational::is_negative).collect();
    let mut columns: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); n];
    for (i, row) in lp.eq_matrix.iter().enumerate() {
        for (j, a) in row.iter().enumerate() {
            if !a.is_zero() {
                columns[j].push((i, if flipped[i] { -a } else { a.clone() }));
            }
        }
    }
    let xb: Vec<Rational> = lp.eq_rhs.iter().map(Rational::abs).collect();
    let binv: Vec<Vec<Rational>> = (0..m)
        .map(|r| (0..m).map(|i| if i == r { Rational::one() } else { Rational::zero() }).collect())
        .collect();

    // Phase one: maximize −Σ artificials.
    let mut t = Revised {
        columns,
        cost: vec![Rational::zero(); n],
        artificial_cost: -Rational::one(),
        binv,
        xb,
        y: Vec::new(),
        value: Rational::zero(),
        basis: (n..n + m).collect(),
    };
    t.refresh_duals();
    t.optimize();
    if !t.value.is_zero() {
        return Ok(LpSolution {
            status: Status::Infeasible,
            value: Rational::zero(),
            primal: Vec::new(),
            dual: Vec::new(),
        });
    }
    // Drive zero-level artificials out where a structural column allows it;
    // rows with no such column are redundant and keep their artificial.
    for r in 0..m {
        if t.basis[r] < n {
            continue;
        }
        let found = (0..n).filter(|j| !t.basis.contains(j)).find_map(|j| {
            let entry: Rational = t.columns[j]
                .iter()
                .filter(|(i, _)| !t.binv[r][*i].is_zero())
                .map(|(i, a)| &t.binv[r][*i] * a)
                .sum();
            (!entry.is_zero()).then_some(j)
        });
        if let Some(col) = found {
            let alpha = t.ftran(col);
            t.pivot(r, col, &alpha, &Rational::zero());
        }
    }

    // Phase two.
    t.cost = lp.objective.iter().map(|c| &sign * c).collect();
    t.artificial_cost = Rational::zero();
    t.refresh_duals();
    if !t.optimize() {
        return Ok(LpSolution {
            status: Status::Unbounded,
            value: Rational::zero(),
            primal: Vec::new(),
            dual: Vec::new(),
        });
    }

    let mut primal = vec![Rational::zero(); n];
    for r in 0..m {
        if t.basis[r] < n {
            primal[t.basis[r]] = t.xb[r].clone();
        }
    }
    let dual: Vec<Rational> = t
        .y
        .iter()
        .zip(&flipped)
        .map(|(y, &f)| if f { -(&sign * y) } else { &sign * y })
        .collect();
    let solution = LpSolution { status: Status::Optimal, value: &sign * &t.value, primal, dual };
    solution.verify(lp).map_err(Error::Defect)?;
    Ok(solution)
}

impl LpSolution {
    /// Exact optimality check: `A x = b`, `x ≥ 0`, dual feasibility
    /// (`Aᵀy ≥ c` for max, `≤` for min) and `c·x = b·y = value`.
    pub fn verify(&self, lp: &LinearProgram) -> std::result::Result<(), String> {
        if self.status != Status::Optimal {
            return Err(format!("status is {:?}", self.status));
        }
        let n = lp.num_vars();
        if self.primal.len() != n || self.dual.len() != lp.eq_matrix.len() {
            return Err("solution dimensions do not match the program".into());
        }
        if let Some(j) = self.primal.iter().position(|v| v.is_negative()) {
            return Err(format!("primal variable {j} is negative"));
        }
        for (i, (row, b)) in lp.eq_matrix.iter().zip(&lp.eq_rhs).enumerate() {
            let lhs: Rational = row
                .iter()
                .zip(&self.primal)
                .filter(|(a, x)| !a.is_zero() && !x.is_zero())
                .map(|(a, x)| a * x)
                .sum();
            if &lhs != b {
                return Err(format!("row {i}: residual {}", &lhs - b));
            }
        }
        for j in 0..n {
            let col: Rational = lp
                .eq_matrix
                .iter()
                .zip(&self.dual)
                .filter(|(row, y)| !row[j].is_zero() && !y.is_zero())
                .map(|(row, y)| &row[j] * y)
                .sum();
            let ok = match lp.sense {
                Sense::Max => col >= lp.objective[j],
                Sense::Min => col <= lp.objective[j],
            };
            if !ok {
                return Err(format!("dual constraint {j} violated"));
            }
        }
        let primal_value: Rational = lp.objective.iter().zip(&self.primal).map(|(c, x)| c * x).sum();
        let dual_value: Rational = lp.eq_rhs.iter().zip(&self.dual).map(|(b, y)| b * y).sum();
        if primal_value != self.value || dual_value != self.value {
            return Err(format!(
                "objective mismatch: primal {primal_value}, dual {dual_value}, reported {}",
                self.value
            ));
        }
        Ok(())
    }
}
