//! Exact linear feasibility with certificates.
//!
//! Two entry points share one dense two-phase simplex with Bland's rule:
//!
//! * [`lp_feasible`] decides systems of `<=`, `=` and `<` constraints over
//!   free variables. Strict rows get a shared margin variable `t >= 0`
//!   (`a.x + t <= b`) and the solver looks for `t > 0`. Free variables are
//!   split as `x = p - n` with `0 <= p, n <= BOX_BOUND`.
//! * [`nonneg_solution`] decides `A z = b, z >= 0` with no box at all; it is
//!   the natural form for positive combinations and convex-hull membership.


use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::scalar::Scalar;

/// Box bound on each free variable in [`lp_feasible`].
pub const BOX_BOUND: i64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    Le,
    Eq,
    Lt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinConstraint<T> {
    pub coeffs: Vector<T>,
    pub relation: Relation,
    pub rhs: T,
}

impl<T: Scalar> LinConstraint<T> {
    pub fn new(coeffs: Vector<T>, relation: Relation, rhs: T) -> Self {
        Self { coeffs, relation, rhs }
    }

    pub fn le(coeffs: Vector<T>, rhs: T) -> Self {
        Self::new(coeffs, Relation::Le, rhs)
    }

    pub fn lt(coeffs: Vector<T>, rhs: T) -> Self {
        Self::new(coeffs, Relation::Lt, rhs)
    }

    pub fn eq(coeffs: Vector<T>, rhs: T) -> Self {
        Self::new(coeffs, Relation::Eq, rhs)
    }

    /// `coeffs . x >= rhs`, stored as `-coeffs . x <= -rhs`.
    pub fn ge(coeffs: Vector<T>, rhs: T) -> Self {
        Self::le(coeffs.neg(), -rhs)
    }

    /// `coeffs . x > rhs`, stored as `-coeffs . x < -rhs`.
    pub fn gt(coeffs: Vector<T>, rhs: T) -> Self {
        Self::lt(coeffs.neg(), -rhs)
    }

    /// Exact check by substitution.
    pub fn is_satisfied_by(&self, x: &Vector<T>) -> bool {
        let lhs = self.coeffs.dot(x);
        match self.relation {
            Relation::Le => lhs <= self.rhs,
            Relation::Eq => lhs == self.rhs,
            Relation::Lt => lhs < self.rhs,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FeasibilityStatus {
    Feasible,
    Infeasible,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeasibilityResult<T> {
    pub status: FeasibilityStatus,
    /// Present iff feasible; satisfies every constraint exactly.
    pub witness: Option<Vector<T>>,
    /// Common slack of the strict rows at the witness (positive), present
    /// iff feasible and some strict constraint was given.
    pub margin: Option<T>,
}

impl<T> FeasibilityResult<T> {
    pub fn is_feasible(&self) -> bool {
        self.status == FeasibilityStatus::Feasible
    }

    fn infeasible() -> Self {
        Self { status: FeasibilityStatus::Infeasible, witness: None, margin: None }
    }
}

/// Decides the system `constraints` over `R^dim`.
pub fn lp_feasible<T: Scalar>(
    dim: usize,
    constraints: &[LinConstraint<T>],
) -> Result<FeasibilityResult<T>> {
    for c in constraints {
        if c.coeffs.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: c.coeffs.dim() });
        }
    }
    let strict = constraints.iter().any(|c| c.relation == Relation::Lt);
    // columns: p_0..p_{dim-1}, n_0..n_{dim-1}, [t]
    let nvars = 2 * dim + usize::from(strict);
    let mut rows = Vec::with_capacity(constraints.len() + 2 * dim);
    for c in constraints {
        let mut coeffs = Vec::with_capacity(nvars);
        coeffs.extend(c.coeffs.iter().cloned());
        coeffs.extend(c.coeffs.iter().map(|a| -a.clone()));
        let kind = match c.relation {
            Relation::Le => RowKind::Le,
            Relation::Eq => RowKind::Eq,
            Relation::Lt => RowKind::Le,
        };
        if strict {
            coeffs.push(if c.relation == Relation::Lt { T::one() } else { T::zero() });
        }
        rows.push(Row { coeffs, kind, rhs: c.rhs.clone() });
    }
    let bound = T::from_int(BOX_BOUND);
    for j in 0..2 * dim {
        let mut coeffs = vec![T::zero(); nvars];
        coeffs[j] = T::one();
        rows.push(Row { coeffs, kind: RowKind::Le, rhs: bound.clone() });
    }
    let objective = strict.then(|| {
        let mut c = vec![T::zero(); nvars];
        c[2 * dim] = T::one();
        c
    });
    let outcome = Simplex::solve(nvars, rows, objective.as_deref(), true);
    let point = match outcome {
        Outcome::Infeasible => return Ok(FeasibilityResult::infeasible()),
        Outcome::Unbounded => unreachable!("box-bounded program cannot be unbounded"),
        Outcome::Optimal(point) => point,
    };
    let witness: Vector<T> = (0..dim).map(|j| point[j].sub_ref(&point[dim + j])).collect();
    let margin = if strict {
        let t = point[2 * dim].clone();
        if !t.is_positive() {
            return Ok(FeasibilityResult::infeasible());
        }
        Some(t)
    } else {
        None
    };
    debug_assert!(constraints.iter().all(|c| c.is_satisfied_by(&witness)));
    Ok(FeasibilityResult { status: FeasibilityStatus::Feasible, witness: Some(witness), margin })
}

/// Some `z >= 0` with `a * z = b`, if one exists.
pub fn nonneg_solution<T: Scalar>(a: &Matrix<T>, b: &Vector<T>) -> Result<Option<Vector<T>>> {
    if b.dim() != a.nrows() {
        return Err(Error::DimensionMismatch { expected: a.nrows(), found: b.dim() });
    }
    let rows = (0..a.nrows())
        .map(|i| Row { coeffs: a.row_slice(i).to_vec(), kind: RowKind::Eq, rhs: b[i].clone() })
        .collect();
    match Simplex::solve(a.ncols(), rows, None, false) {
        Outcome::Optimal(z) => {
            let z = Vector::new(z);
            debug_assert!(a.mul_vec(&z).map(|v| &v == b).unwrap_or(false));
            Ok(Some(z))
        }
        _ => Ok(None),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum RowKind {
    Le,
    Ge,
    Eq,
}

struct Row<T> {
    coeffs: Vec<T>,
    kind: RowKind,
    rhs: T,
}

enum Outcome<T> {
    Infeasible,
    Unbounded,
    Optimal(Vec<T>),
}

/// Dense tableau over nonnegative variables.
struct Simplex<T> {
    rows: Vec<Vec<T>>,
    rhs: Vec<T>,
    basis: Vec<usize>,
    ncols: usize,
}

impl<T: Scalar> Simplex<T> {
    /// Maximizes `objective . z` (or just finds a feasible `z` when `None`)
    /// subject to `rows` and `z >= 0`. With `stop_positive` the search ends
    /// as soon as the objective value is strictly positive.
    fn solve(
        nvars: usize,
        rows: Vec<Row<T>>,
        objective: Option<&[T]>,
        stop_positive: bool,
    ) -> Outcome<T> {
        let mut rows = rows;
        for r in rows.iter_mut() {
            if r.rhs.is_negative() {
                for c in r.coeffs.iter_mut() {
                    *c = -c.clone();
                }
                r.rhs = -r.rhs.clone();
                r.kind = match r.kind {
                    RowKind::Le => RowKind::Ge,
                    RowKind::Ge => RowKind::Le,
                    RowKind::Eq => RowKind::Eq,
                };
            }
        }
        let n_slack = rows.iter().filter(|r| r.kind != RowKind::Eq).count();
        let n_art = rows.iter().filter(|r| r.kind != RowKind::Le).count();
        let first_art = nvars + n_slack;
        let ncols = first_art + n_art;

        let mut tab = Simplex {
            rows: Vec::with_capacity(rows.len()),
            rhs: Vec::with_capacity(rows.len()),
            basis: Vec::with_capacity(rows.len()),
            ncols,
        };
        let (mut slack, mut art) = (nvars, first_art);
        for r in rows {
            let mut coeffs = r.coeffs;
            coeffs.resize(ncols, T::zero());
            match r.kind {
                RowKind::Le => {
                    coeffs[slack] = T::one();
                    tab.basis.push(slack);
                    slack += 1;
                }
                RowKind::Ge => {
                    coeffs[slack] = -T::one();
                    slack += 1;
                    coeffs[art] = T::one();
                    tab.basis.push(art);
                    art += 1;
                }
                RowKind::Eq => {
                    coeffs[art] = T::one();
                    tab.basis.push(art);
                    art += 1;
                }
            }
            tab.rows.push(coeffs);
            tab.rhs.push(r.rhs);
        }

        if n_art > 0 {
            let mut phase1 = vec![T::zero(); ncols];
            for c in phase1.iter_mut().skip(first_art) {
                *c = -T::one();
            }
            tab.optimize(&phase1, ncols, false);
            if !tab.value(&phase1).is_zero() {
                return Outcome::Infeasible;
            }
            tab.expel_artificials(first_art);
            for r in tab.rows.iter_mut() {
                r.truncate(first_art);
            }
            tab.ncols = first_art;
        }

        if let Some(obj) = objective {
            let mut full = obj.to_vec();
            full.resize(tab.ncols, T::zero());
            if !tab.optimize(&full, tab.ncols, stop_positive) {
                return Outcome::Unbounded;
            }
        }
        let mut point = vec![T::zero(); nvars];
        for (i, &b) in tab.basis.iter().enumerate() {
            if b < nvars {
                point[b] = tab.rhs[i].clone();
            }
        }
        Outcome::Optimal(point)
    }

    fn value(&self, cost: &[T]) -> T {
        let mut v = T::zero();
        for (i, &b) in self.basis.iter().enumerate() {
            if !cost[b].is_zero() {
                v = v + cost[b].mul_ref(&self.rhs[i]);
            }
        }
        v
    }

    /// Largest reduced cost while the objective strictly improves, Bland's
    /// rule from the first degenerate pivot on, so no basis can repeat.
    /// Columns `>= allowed` never enter. Returns false if unbounded.
    fn optimize(&mut self, cost: &[T], allowed: usize, stop_positive: bool) -> bool {
        let mut reduced: Vec<T> = cost.to_vec();
        for (i, &b) in self.basis.iter().enumerate() {
            if cost[b].is_zero() {
                continue;
            }
            let cb = cost[b].clone();
            for (d, a) in reduced.iter_mut().zip(&self.rows[i]) {
                d.sub_mul_assign(&cb, a);
            }
        }
        let mut value = self.value(cost);
        let mut bland = false;
        loop {
            if stop_positive && value.is_positive() {
                return true;
            }
            let enter = if bland {
                (0..allowed).find(|&j| reduced[j].is_positive())
            } else {
                (0..allowed).filter(|&j| reduced[j].is_positive()).max_by(|&a, &b| reduced[a].cmp(&reduced[b]).then(b.cmp(&a)))
            };
            let Some(enter) = enter else {
                return true;
            };
            let mut leave: Option<(usize, T)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][enter];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs[i].div_ref(a);
                let better = match &leave {
                    None => true,
                    Some((k, best)) => {
                        ratio < *best || (ratio == *best && self.basis[i] < self.basis[*k])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((r, ratio)) = leave else {
                return false;
            };
            bland |= ratio.is_zero();
            self.pivot(r, enter);
            let d = reduced[enter].clone();
            value = value + d.mul_ref(&self.rhs[r]);
            for (dj, a) in reduced.iter_mut().zip(&self.rows[r]) {
                dj.sub_mul_assign(&d, a);
            }
        }
    }

    fn pivot(&mut self, r: usize, s: usize) {
        let inv = T::one().div_ref(&self.rows[r][s]);
        if !inv.is_one() {
            for v in self.rows[r].iter_mut() {
                if !v.is_zero() {
                    *v = v.mul_ref(&inv);
                }
            }
            self.rhs[r] = self.rhs[r].mul_ref(&inv);
        }
        let (pivot_row, pivot_rhs) = (self.rows[r].clone(), self.rhs[r].clone());
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][s].is_zero() {
                continue;
            }
            let f = self.rows[i][s].clone();
            for (v, p) in self.rows[i].iter_mut().zip(&pivot_row) {
                v.sub_mul_assign(&f, p);
            }
            self.rhs[i].sub_mul_assign(&f, &pivot_rhs);
        }
        self.basis[r] = s;
    }

    /// After a successful phase 1 every artificial is at level zero; pivot
    /// each one out of the basis, or drop its row when the row is redundant.
    fn expel_artificials(&mut self, first_art: usize) {
        let mut i = 0;
        while i < self.rows.len() {
            if self.basis[i] < first_art {
                i += 1;
                continue;
            }
            match (0..first_art).find(|&j| !self.rows[i][j].is_zero()) {
                Some(j) => {
                    self.pivot(i, j);
                    i += 1;
                }
                None => {
                    self.rows.remove(i);
                    self.rhs.remove(i);
                    self.basis.remove(i);
                }
            }
        }
    }
}
