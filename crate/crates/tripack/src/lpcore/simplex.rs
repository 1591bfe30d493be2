//! Dense two-phase primal simplex over exact rationals.
//!
//! Bland's rule (smallest eligible index enters, smallest basic index
//! breaks ratio ties) guarantees termination without any tolerance. The
//! tableau is dense; the packing and cover LPs solved here stay small
//! enough that sparsity machinery would buy nothing.

use crate::rat::Rat;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Sense {
    Maximize,
    Minimize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Relation {
    Le,
    Ge,
}

#[derive(Debug, Clone)]
pub(crate) struct Constraint {
    /// Sparse (variable index, coefficient) pairs.
    pub coeffs: Vec<(usize, Rat)>,
    pub relation: Relation,
    pub rhs: Rat,
}

#[derive(Debug, Clone)]
pub(crate) struct LinearProgram {
    pub sense: Sense,
    pub objective: Vec<Rat>,
    pub constraints: Vec<Constraint>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum SimplexError {
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone)]
pub(crate) struct LpSolution {
    pub value: Rat,
    pub variables: Vec<Rat>,
}

struct Tableau {
    /// m rows of length `cols + 1`; the last entry is the rhs.
    rows: Vec<Vec<Rat>>,
    /// Column basic in each row.
    basis: Vec<usize>,
    cols: usize,
    /// Reduced costs per column (maximization).
    reduced: Vec<Rat>,
    value: Rat,
    /// Columns allowed to enter the basis (phase 2 bans artificials).
    enterable: Vec<bool>,
}

impl Tableau {
    fn rhs(&self, row: usize) -> &Rat {
        &self.rows[row][self.cols]
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.rows[row][col].clone();
        debug_assert!(!p.is_zero());
        for x in self.rows[row].iter_mut() {
            if !x.is_zero() {
                *x = &*x / &p;
            }
        }
        let pivot_row = self.rows[row].clone();
        for i in 0..self.rows.len() {
            if i == row {
                continue;
            }
            let f = self.rows[i][col].clone();
            if f.is_zero() {
                continue;
            }
            for (x, pr) in self.rows[i].iter_mut().zip(pivot_row.iter()) {
                if !pr.is_zero() {
                    *x = &*x - &(&f * pr);
                }
            }
        }
        let f = self.reduced[col].clone();
        if !f.is_zero() {
            self.value += &f * &pivot_row[self.cols];
            for (x, pr) in self.reduced.iter_mut().zip(pivot_row.iter()) {
                if !pr.is_zero() {
                    *x = &*x - &(&f * pr);
                }
            }
        }
        self.basis[row] = col;
    }

    /// One simplex run to optimality with Bland's rule.
    fn optimize(&mut self) -> Result<(), SimplexError> {
        loop {
            let entering = (0..self.cols)
                .find(|&j| self.enterable[j] && self.reduced[j].is_positive());
            let Some(col) = entering else {
                return Ok(());
            };
            let mut leave: Option<(usize, Rat)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][col];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &leave {
                    None => true,
                    Some((r, best)) => {
                        ratio < *best || (ratio == *best && self.basis[i] < self.basis[*r])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((row, _)) = leave else {
                return Err(SimplexError::Unbounded);
            };
            self.pivot(row, col);
        }
    }
}

pub(crate) fn solve(lp: &LinearProgram) -> Result<LpSolution, SimplexError> {
    let n = lp.objective.len();
    let m = lp.constraints.len();

    // Normalize every row to a nonnegative rhs; count auxiliary columns.
    let mut norm: Vec<(Vec<Rat>, Relation, Rat)> = Vec::with_capacity(m);
    for c in &lp.constraints {
        let mut dense = vec![Rat::zero(); n];
        for (j, v) in &c.coeffs {
            assert!(*j < n, "constraint references variable {j} of {n}");
            dense[*j] += v;
        }
        let mut rel = c.relation;
        let mut rhs = c.rhs.clone();
        if rhs.is_negative() {
            for x in dense.iter_mut() {
                *x = -&*x;
            }
            rhs = -rhs;
            rel = match rel {
                Relation::Le => Relation::Ge,
                Relation::Ge => Relation::Le,
            };
        }
        norm.push((dense, rel, rhs));
    }
    let slack_count = m;
    let artificial_count = norm
        .iter()
        .filter(|(_, rel, _)| *rel == Relation::Ge)
        .count();
    let cols = n + slack_count + artificial_count;

    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut next_artificial = n + slack_count;
    for (i, (dense, rel, rhs)) in norm.into_iter().enumerate() {
        let mut row = vec![Rat::zero(); cols + 1];
        row[..n].clone_from_slice(&dense);
        row[cols] = rhs;
        let slack = n + i;
        match rel {
            Relation::Le => {
                row[slack] = Rat::one();
                basis.push(slack);
            }
            Relation::Ge => {
                row[slack] = -Rat::one();
                row[next_artificial] = Rat::one();
                basis.push(next_artificial);
                next_artificial += 1;
            }
        }
        rows.push(row);
    }

    let mut t = Tableau {
        rows,
        basis,
        cols,
        reduced: vec![Rat::zero(); cols],
        value: Rat::zero(),
        enterable: vec![true; cols],
    };

    // Phase 1: drive the artificial variables to zero.
    if artificial_count > 0 {
        for j in (n + slack_count)..cols {
            t.reduced[j] = -Rat::one();
        }
        for i in 0..t.rows.len() {
            if t.basis[i] >= n + slack_count {
                let b = t.rhs(i).clone();
                t.value -= b;
                let row = t.rows[i].clone();
                for (x, r) in t.reduced.iter_mut().zip(row.iter()) {
                    *x = &*x + r;
                }
            }
        }
        t.optimize()?;
        if t.value.is_negative() {
            return Err(SimplexError::Infeasible);
        }
        // Pivot any artificial still basic (at value zero) out of the
        // basis; a row with no real pivot entry is redundant and dropped.
        let mut drop_rows = Vec::new();
        for i in 0..t.rows.len() {
            if t.basis[i] < n + slack_count {
                continue;
            }
            let col = (0..n + slack_count).find(|&j| !t.rows[i][j].is_zero());
            match col {
                Some(j) => t.pivot(i, j),
                None => drop_rows.push(i),
            }
        }
        for &i in drop_rows.iter().rev() {
            t.rows.remove(i);
            t.basis.remove(i);
        }
        for j in (n + slack_count)..cols {
            t.enterable[j] = false;
        }
    }

    // Phase 2: optimize the real objective (negated for minimization).
    let flip = lp.sense == Sense::Minimize;
    let cost = |j: usize| -> Rat {
        if j < n {
            if flip {
                -lp.objective[j].clone()
            } else {
                lp.objective[j].clone()
            }
        } else {
            Rat::zero()
        }
    };
    for j in 0..cols {
        t.reduced[j] = cost(j);
    }
    t.value = Rat::zero();
    for i in 0..t.rows.len() {
        let cb = cost(t.basis[i]);
        if cb.is_zero() {
            continue;
        }
        t.value += &cb * t.rhs(i);
        let row = t.rows[i].clone();
        for (x, r) in t.reduced.iter_mut().zip(row.iter()) {
            if !r.is_zero() {
                *x = &*x - &(&cb * r);
            }
        }
    }
    t.optimize()?;

    let mut variables = vec![Rat::zero(); n];
    for (i, &b) in t.basis.iter().enumerate() {
        if b < n {
            variables[b] = t.rhs(i).clone();
        }
    }
    let value = if flip { -t.value } else { t.value };
    Ok(LpSolution { value, variables })
}
