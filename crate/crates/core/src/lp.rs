//! Exact linear programming over the rationals.
//!
//! The entry points are [`lex_min`] and [`lex_max`]: lexicographic
//! optimization of a sequence of linear objectives over a system of
//! inequality (`a·x >= b`) and equality (`c·x = d`) constraints. Every
//! outcome carries enough data to be checked independently —
//! infeasibility comes with exact Farkas multipliers, unboundedness with a
//! feasible point and an improving recession ray, and optimality claims
//! can be re-certified through [`verify_outcome`], which reconstructs
//! per-level dual multipliers from scratch.
//!
//! Internals: equalities are eliminated first by restricting to their
//! solution flat; the remaining inequality system is solved by a dense
//! tableau simplex in arbitrary-precision rational arithmetic using
//! Bland's rule (smallest-index entering and leaving choices), which
//! terminates on every input including fully degenerate ones. A caller
//! who already knows a feasible point can pass it as a hint; the solver
//! then starts from an all-slack basis and skips Phase I entirely.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::linalg::{solve_system, solve_system_certified, Flat, QMatrix, QVector, Rational};

/// A linear program's feasible region: the intersection of halfspaces
/// `a·x >= b` and hyperplanes `c·x = d` in `n_vars` variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpInstance {
    pub n_vars: usize,
    /// Halfspace constraints `(a, b)` meaning `a·x >= b`.
    pub inequalities: Vec<(QVector, Rational)>,
    /// Hyperplane constraints `(c, d)` meaning `c·x = d`.
    pub equalities: Vec<(QVector, Rational)>,
}

impl LpInstance {
    pub fn new(
        n_vars: usize,
        inequalities: Vec<(QVector, Rational)>,
        equalities: Vec<(QVector, Rational)>,
    ) -> Self {
        for (a, _) in &inequalities {
            assert_eq!(a.dim(), n_vars, "inequality normal dimension mismatch");
        }
        for (c, _) in &equalities {
            assert_eq!(c.dim(), n_vars, "equality normal dimension mismatch");
        }
        LpInstance {
            n_vars,
            inequalities,
            equalities,
        }
    }

    /// Whether `x` satisfies every constraint.
    pub fn is_feasible_point(&self, x: &QVector) -> bool {
        self.inequalities.iter().all(|(a, b)| a.dot(x) >= *b)
            && self.equalities.iter().all(|(c, d)| a_eq(c, x, d))
    }

    /// Indices of the inequalities satisfied with equality at `x`
    /// (the closed active set of `x`), in increasing order.
    pub fn tight_set(&self, x: &QVector) -> Vec<usize> {
        self.inequalities
            .iter()
            .enumerate()
            .filter(|(_, (a, b))| a.dot(x) == *b)
            .map(|(i, _)| i)
            .collect()
    }
}

fn a_eq(c: &QVector, x: &QVector, d: &Rational) -> bool {
    c.dot(x) == *d
}

/// Exact proof that a constraint system has no solution: multipliers with
/// `ineq_mults >= 0`, `sum(ineq_mults·a) + sum(eq_mults·c) = 0` and
/// `sum(ineq_mults·b) + sum(eq_mults·d) > 0`, exhibiting the impossible
/// consequence `0 >= positive`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FarkasCertificate {
    pub ineq_mults: Vec<Rational>,
    pub eq_mults: Vec<Rational>,
}

impl FarkasCertificate {
    /// Checks the certificate against an instance by direct arithmetic.
    pub fn verify(&self, inst: &LpInstance) -> bool {
        if self.ineq_mults.len() != inst.inequalities.len()
            || self.eq_mults.len() != inst.equalities.len()
        {
            return false;
        }
        if self.ineq_mults.iter().any(|l| l.is_negative()) {
            return false;
        }
        let mut combo = QVector::zeros(inst.n_vars);
        let mut rhs = Rational::zero();
        for (l, (a, b)) in self.ineq_mults.iter().zip(&inst.inequalities) {
            if !l.is_zero() {
                combo = combo.add(&a.scale(l));
                rhs += l * b;
            }
        }
        for (m, (c, d)) in self.eq_mults.iter().zip(&inst.equalities) {
            if !m.is_zero() {
                combo = combo.add(&c.scale(m));
                rhs += m * d;
            }
        }
        combo.is_zero() && rhs.is_positive()
    }
}

/// Result of a lexicographic optimization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    /// The constraint system has no solution; the certificate proves it.
    Infeasible(FarkasCertificate),
    /// The objective sequence is unbounded: from the feasible `point`,
    /// moving along `ray` stays feasible forever and strictly improves
    /// the first objective level that is not constant along the ray.
    Unbounded { point: QVector, ray: QVector },
    /// The unique lexicographic optimum (unique whenever the objective
    /// sequence pins every coordinate); `values[j]` is the value of
    /// objective `j` at `point`.
    Optimal { point: QVector, values: Vec<Rational> },
}

/// Which way [`verify_outcome`] should read the objectives.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

/// Lexicographically minimizes `objectives` (first entry most
/// significant) over the instance. `hint` may carry a point known to be
/// feasible; it is checked and, when valid, used to warm-start the solver
/// (invalid hints are simply ignored).
pub fn lex_min(inst: &LpInstance, objectives: &[QVector], hint: Option<&QVector>) -> LpOutcome {
    let mut work = inst.clone();
    let mut cur_hint = hint.cloned();
    let mut point = match single_min(&work, None, cur_hint.as_ref()) {
        SingleOutcome::Infeasible(cert) => return LpOutcome::Infeasible(cert),
        SingleOutcome::Optimal { point } => point,
        SingleOutcome::Unbounded { .. } => unreachable!("feasibility run has no objective"),
    };
    for obj in objectives {
        cur_hint = Some(point.clone());
        match single_min(&work, Some(obj), cur_hint.as_ref()) {
            SingleOutcome::Infeasible(_) => {
                unreachable!("level with a known feasible point cannot be infeasible")
            }
            SingleOutcome::Unbounded { point, ray } => {
                return LpOutcome::Unbounded { point, ray };
            }
            SingleOutcome::Optimal { point: p } => {
                let v = obj.dot(&p);
                work.equalities.push((obj.clone(), v));
                point = p;
            }
        }
    }
    let values = objectives.iter().map(|o| o.dot(&point)).collect();
    LpOutcome::Optimal { point, values }
}

/// Lexicographically maximizes `objectives`. Outcomes are reported in the
/// original orientation: `values` are true objective values, and an
/// unbounded ray strictly increases the first objective level that is not
/// constant along it.
pub fn lex_max(inst: &LpInstance, objectives: &[QVector], hint: Option<&QVector>) -> LpOutcome {
    let negated: Vec<QVector> = objectives.iter().map(|o| o.neg()).collect();
    match lex_min(inst, &negated, hint) {
        LpOutcome::Optimal { point, .. } => {
            let values = objectives.iter().map(|o| o.dot(&point)).collect();
            LpOutcome::Optimal { point, values }
        }
        other => other,
    }
}

/// Re-certifies an outcome against the instance it allegedly solves.
///
/// * `Infeasible`: the Farkas multipliers are checked arithmetically.
/// * `Unbounded`: the point must be feasible and the ray must be a
///   recession direction whose first non-constant objective level moves
///   in the improving direction for `sense`.
/// * `Optimal`: the point must be feasible with matching objective
///   values, and for every level `t` fresh dual multipliers are found
///   (by an independent feasibility solve) expressing objective `t` as a
///   nonnegative combination of the constraints tight at the point, plus
///   free combinations of equalities and earlier objectives — the exact
///   condition for level-by-level optimality.
pub fn verify_outcome(
    inst: &LpInstance,
    objectives: &[QVector],
    outcome: &LpOutcome,
    sense: Sense,
) -> Result<(), String> {
    match sense {
        Sense::Minimize => verify_min(inst, objectives, outcome),
        Sense::Maximize => {
            let negated: Vec<QVector> = objectives.iter().map(|o| o.neg()).collect();
            let flipped = match outcome {
                LpOutcome::Optimal { point, values } => LpOutcome::Optimal {
                    point: point.clone(),
                    values: values.iter().map(|v| -v).collect(),
                },
                other => other.clone(),
            };
            verify_min(inst, &negated, &flipped)
        }
    }
}

fn verify_min(inst: &LpInstance, objectives: &[QVector], outcome: &LpOutcome) -> Result<(), String> {
    match outcome {
        LpOutcome::Infeasible(cert) => {
            if cert.verify(inst) {
                Ok(())
            } else {
                Err("infeasibility certificate does not check out".into())
            }
        }
        LpOutcome::Unbounded { point, ray } => {
            if !inst.is_feasible_point(point) {
                return Err("unboundedness witness point is not feasible".into());
            }
            for (i, (a, _)) in inst.inequalities.iter().enumerate() {
                if a.dot(ray).is_negative() {
                    return Err(format!("ray leaves inequality {} eventually", i));
                }
            }
            for (j, (c, _)) in inst.equalities.iter().enumerate() {
                if !c.dot(ray).is_zero() {
                    return Err(format!("ray leaves equality {}", j));
                }
            }
            match objectives.iter().map(|o| o.dot(ray)).find(|v| !v.is_zero()) {
                Some(v) if v.is_negative() => Ok(()),
                Some(_) => Err("ray worsens the first non-constant objective level".into()),
                None => Err("ray does not move any objective level".into()),
            }
        }
        LpOutcome::Optimal { point, values } => {
            if !inst.is_feasible_point(point) {
                return Err("claimed optimum is not feasible".into());
            }
            if values.len() != objectives.len() {
                return Err("objective value count mismatch".into());
            }
            for (j, (o, v)) in objectives.iter().zip(values).enumerate() {
                if o.dot(point) != *v {
                    return Err(format!("objective {} value does not match the point", j));
                }
            }
            let tight = inst.tight_set(point);
            for t in 0..objectives.len() {
                if !dual_multipliers_exist(inst, objectives, &tight, t) {
                    return Err(format!("no dual certificate for objective level {}", t));
                }
            }
            Ok(())
        }
    }
}

/// Searches for multipliers `lam >= 0` (over `tight` inequality indices),
/// `mu` (over equalities) and `nu` (over objectives before level `t`)
/// with `sum(lam·a) + sum(mu·c) + sum(nu·obj) = objectives[t]`; such
/// multipliers certify level-`t` optimality. The search is itself a
/// feasibility solve of a fresh, independent instance.
fn dual_multipliers_exist(
    inst: &LpInstance,
    objectives: &[QVector],
    tight: &[usize],
    t: usize,
) -> bool {
    let cols: Vec<&QVector> = tight
        .iter()
        .map(|&i| &inst.inequalities[i].0)
        .chain(inst.equalities.iter().map(|(c, _)| c))
        .chain(objectives[..t].iter())
        .collect();
    let n_mults = cols.len();
    let target = &objectives[t];
    let mut equalities = Vec::with_capacity(inst.n_vars);
    for r in 0..inst.n_vars {
        let row = QVector::new(cols.iter().map(|c| c.coord(r).clone()).collect());
        equalities.push((row, target.coord(r).clone()));
    }
    let inequalities = (0..tight.len())
        .map(|k| (QVector::unit(n_mults, k), Rational::zero()))
        .collect();
    let search = LpInstance::new(n_mults, inequalities, equalities);
    matches!(lex_min(&search, &[], None), LpOutcome::Optimal { .. })
}

// ---------------------------------------------------------------------------
// single-objective solver
// ---------------------------------------------------------------------------

enum SingleOutcome {
    Infeasible(FarkasCertificate),
    Unbounded { point: QVector, ray: QVector },
    Optimal { point: QVector },
}

/// Minimizes one objective (or just finds a feasible point when
/// `objective` is `None`) over the instance.
fn single_min(inst: &LpInstance, objective: Option<&QVector>, hint: Option<&QVector>) -> SingleOutcome {
    let n_ineq = inst.inequalities.len();
    // eliminate equalities: restrict to their solution flat
    let eq_m = QMatrix::new(
        inst.equalities.iter().map(|(c, _)| c.clone()).collect(),
        inst.n_vars,
    );
    let eq_rhs = QVector::new(inst.equalities.iter().map(|(_, d)| d.clone()).collect());
    let flat = match solve_system_certified(&eq_m, &eq_rhs) {
        Ok(f) => f,
        Err(mu) => {
            return SingleOutcome::Infeasible(FarkasCertificate {
                ineq_mults: vec![Rational::zero(); n_ineq],
                eq_mults: mu.coords().to_vec(),
            });
        }
    };
    let m = flat.dim();
    let reduced: Vec<(QVector, Rational)> = inst
        .inequalities
        .iter()
        .map(|(a, b)| {
            let a_red = QVector::new(flat.directions().iter().map(|u| a.dot(u)).collect());
            let b_red = b - a.dot(flat.basepoint());
            (a_red, b_red)
        })
        .collect();
    let obj_red = match objective {
        Some(o) => QVector::new(flat.directions().iter().map(|u| o.dot(u)).collect()),
        None => QVector::zeros(m),
    };
    // a valid hint turns into a feasible start in flat coordinates
    let y0 = hint
        .filter(|h| inst.is_feasible_point(h))
        .and_then(|h| flat.coordinates(h))
        .unwrap_or_else(|| QVector::zeros(m));
    // translate so the start point is the origin: a·dy >= b''
    let shifted: Vec<(QVector, Rational)> = reduced
        .iter()
        .map(|(a, b)| (a.clone(), b - a.dot(&y0)))
        .collect();

    match simplex_min(&shifted, m, &obj_red) {
        ReducedOutcome::Infeasible(lam) => {
            SingleOutcome::Infeasible(lift_certificate(inst, &eq_m, lam))
        }
        ReducedOutcome::Unbounded { y, ray } => SingleOutcome::Unbounded {
            point: flat.embed(&y0.add(&y)),
            ray: embed_direction(&flat, &ray),
        },
        ReducedOutcome::Optimal { y } => SingleOutcome::Optimal {
            point: flat.embed(&y0.add(&y)),
        },
    }
}

/// Maps a direction in flat coordinates to ambient space (no basepoint).
fn embed_direction(flat: &Flat, d: &QVector) -> QVector {
    let mut v = QVector::zeros(flat.ambient_dim());
    for (c, u) in d.iter().zip(flat.directions()) {
        if !c.is_zero() {
            v = v.add(&u.scale(c));
        }
    }
    v
}

/// Turns Farkas multipliers for the reduced inequality system into a
/// certificate for the original instance: the inequality combination's
/// residual normal lies in the row space of the equality normals, and the
/// equality multipliers cancel it.
fn lift_certificate(inst: &LpInstance, eq_m: &QMatrix, lam: Vec<Rational>) -> FarkasCertificate {
    let mut residual = QVector::zeros(inst.n_vars);
    for (l, (a, _)) in lam.iter().zip(&inst.inequalities) {
        if !l.is_zero() {
            residual = residual.add(&a.scale(l));
        }
    }
    let alpha = solve_system(&eq_m.transpose(), &residual)
        .expect("inequality combination must lie in the equality row space")
        .basepoint()
        .clone();
    FarkasCertificate {
        ineq_mults: lam,
        eq_mults: alpha.iter().map(|a| -a).collect(),
    }
}

// ---------------------------------------------------------------------------
// tableau simplex on `a·y >= b` systems
// ---------------------------------------------------------------------------

enum ReducedOutcome {
    /// Multipliers `lam >= 0` with `lam^T A = 0`, `lam·b > 0`.
    Infeasible(Vec<Rational>),
    Unbounded { y: QVector, ray: QVector },
    Optimal { y: QVector },
}

/// Minimizes `objective·y` subject to `a·y >= b` rows over free `y`.
/// The caller has translated the system so that if the origin is
/// feasible (all `b <= 0`) the solver starts from it directly.
fn simplex_min(rows: &[(QVector, Rational)], m: usize, objective: &QVector) -> ReducedOutcome {
    let n = rows.len();
    // column layout: m plus-parts, m minus-parts, n slacks [, n artificials]
    let n_real = 2 * m + n;
    let need_phase1 = rows.iter().any(|(_, b)| b.is_positive());
    let n_cols = if need_phase1 { n_real + n } else { n_real };
    let mut tab: Vec<Vec<Rational>> = Vec::with_capacity(n);
    let mut rhs: Vec<Rational> = Vec::with_capacity(n);
    let mut basis: Vec<usize> = Vec::with_capacity(n);
    for (i, (a, b)) in rows.iter().enumerate() {
        // flip rows with positive right-hand side so rhs >= 0 throughout;
        // unflipped rows have slack coefficient +1 and start basic
        let flip = b.is_positive();
        let sigma = if flip { Rational::one() } else { -Rational::one() };
        let mut row = vec![Rational::zero(); n_cols];
        for k in 0..m {
            let v = &sigma * a.coord(k);
            row[m + k] = -v.clone();
            row[k] = v;
        }
        row[2 * m + i] = -sigma.clone();
        if need_phase1 {
            row[n_real + i] = Rational::one();
        }
        rhs.push(&sigma * b);
        basis.push(if flip { n_real + i } else { 2 * m + i });
        tab.push(row);
    }
    let mut s = Simplex {
        tab,
        rhs,
        basis,
        cost: vec![Rational::zero(); n_cols],
        bar_from: n_cols,
    };

    if need_phase1 {
        let mut phase1 = vec![Rational::zero(); n_cols];
        for c in phase1.iter_mut().skip(n_real) {
            *c = Rational::one();
        }
        s.set_costs(&phase1);
        s.run();
        let w: Rational = s
            .basis
            .iter()
            .zip(&s.rhs)
            .filter(|(b, _)| **b >= n_real)
            .map(|(_, v)| v.clone())
            .sum();
        if w.is_positive() {
            // infeasible: the slack columns' reduced costs are exactly the
            // Farkas multipliers of the (flipped) rows
            let lam: Vec<Rational> = (0..n).map(|i| s.cost[2 * m + i].clone()).collect();
            debug_assert!(lam.iter().all(|l| !l.is_negative()));
            return ReducedOutcome::Infeasible(lam);
        }
        // drive leftover artificials out of the basis, dropping rows that
        // turn out to be redundant
        let mut r = 0;
        while r < s.tab.len() {
            if s.basis[r] >= n_real {
                match (0..n_real).find(|&j| !s.tab[r][j].is_zero()) {
                    Some(j) => s.pivot(r, j),
                    None => {
                        s.tab.remove(r);
                        s.rhs.remove(r);
                        s.basis.remove(r);
                        continue;
                    }
                }
            }
            r += 1;
        }
        // retire the artificial columns
        for row in &mut s.tab {
            row.truncate(n_real);
        }
        s.cost.truncate(n_real);
        s.bar_from = n_real;
    }

    // phase II
    let mut c2 = vec![Rational::zero(); s.cost.len()];
    for k in 0..m {
        c2[k] = objective.coord(k).clone();
        c2[m + k] = -objective.coord(k).clone();
    }
    s.set_costs(&c2);
    match s.run() {
        RunEnd::Optimal => ReducedOutcome::Optimal { y: s.extract_y(m) },
        RunEnd::Unbounded(j) => {
            let mut d = vec![Rational::zero(); s.cost.len()];
            d[j] = Rational::one();
            for (r, &b) in s.basis.iter().enumerate() {
                d[b] = -s.tab[r][j].clone();
            }
            let ray = QVector::new((0..m).map(|k| &d[k] - &d[m + k]).collect());
            ReducedOutcome::Unbounded {
                y: s.extract_y(m),
                ray,
            }
        }
    }
}

enum RunEnd {
    Optimal,
    Unbounded(usize),
}

struct Simplex {
    tab: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    /// Reduced cost row, maintained through pivots.
    cost: Vec<Rational>,
    /// Columns at or beyond this index never enter the basis.
    bar_from: usize,
}

impl Simplex {
    /// Installs a fresh objective: reduced costs against the current basis.
    fn set_costs(&mut self, c: &[Rational]) {
        self.cost = c.to_vec();
        for (r, &b) in self.basis.iter().enumerate() {
            let f = c[b].clone();
            if f.is_zero() {
                continue;
            }
            for (j, x) in self.cost.iter_mut().enumerate() {
                if !self.tab[r][j].is_zero() {
                    *x -= &f * &self.tab[r][j];
                }
            }
        }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.tab[r][c].clone();
        debug_assert!(!p.is_zero());
        let inv = Rational::one() / p;
        for x in self.tab[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        self.rhs[r] *= &inv;
        let prow = self.tab[r].clone();
        let prhs = self.rhs[r].clone();
        for rr in 0..self.tab.len() {
            if rr == r || self.tab[rr][c].is_zero() {
                continue;
            }
            let f = self.tab[rr][c].clone();
            for (x, p) in self.tab[rr].iter_mut().zip(prow.iter()) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
            self.rhs[rr] -= &f * &prhs;
        }
        if !self.cost[c].is_zero() {
            let f = self.cost[c].clone();
            for (x, p) in self.cost.iter_mut().zip(prow.iter()) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Bland's rule simplex loop from a feasible basis.
    fn run(&mut self) -> RunEnd {
        loop {
            let Some(j) = (0..self.bar_from).find(|&j| self.cost[j].is_negative()) else {
                return RunEnd::Optimal;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for r in 0..self.tab.len() {
                if !self.tab[r][j].is_positive() {
                    continue;
                }
                let ratio = &self.rhs[r] / &self.tab[r][j];
                let better = match &leave {
                    None => true,
                    Some((lr, lratio)) => {
                        ratio < *lratio || (ratio == *lratio && self.basis[r] < self.basis[*lr])
                    }
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
            match leave {
                None => return RunEnd::Unbounded(j),
                Some((r, _)) => self.pivot(r, j),
            }
        }
    }

    /// Reads the current basic solution and folds the split variable
    /// pairs back into the `m` free coordinates.
    fn extract_y(&self, m: usize) -> QVector {
        let mut z = vec![Rational::zero(); self.cost.len()];
        for (r, &b) in self.basis.iter().enumerate() {
            z[b] = self.rhs[r].clone();
        }
        QVector::new((0..m).map(|k| &z[k] - &z[m + k]).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn qv(vals: &[i64]) -> QVector {
        QVector::from_ints(vals)
    }

    fn ineq(a: &[i64], b: i64) -> (QVector, Rational) {
        (qv(a), rat(b, 1))
    }

    /// The unit square `0 <= x, y <= 1` as four halfspaces.
    fn square() -> LpInstance {
        LpInstance::new(
            2,
            vec![
                ineq(&[1, 0], 0),
                ineq(&[0, 1], 0),
                ineq(&[-1, 0], -1),
                ineq(&[0, -1], -1),
            ],
            vec![],
        )
    }

    fn check(inst: &LpInstance, objs: &[QVector], out: &LpOutcome, sense: Sense) {
        if let Err(e) = verify_outcome(inst, objs, out, sense) {
            panic!("outcome failed verification: {} ({:?})", e, out);
        }
    }

    #[test]
    fn min_on_a_ray() {
        let inst = LpInstance::new(1, vec![ineq(&[1], 1)], vec![]);
        let objs = [qv(&[1])];
        let out = lex_min(&inst, &objs, None);
        check(&inst, &objs, &out, Sense::Minimize);
        match &out {
            LpOutcome::Optimal { point, values } => {
                assert_eq!(point, &qv(&[1]));
                assert_eq!(values, &[rat(1, 1)]);
            }
            other => panic!("expected optimum, got {:?}", other),
        }
    }

    #[test]
    fn detects_infeasibility_with_certificate() {
        // x >= 1 and x <= 0
        let inst = LpInstance::new(1, vec![ineq(&[1], 1), ineq(&[-1], 0)], vec![]);
        let out = lex_min(&inst, &[qv(&[1])], None);
        match &out {
            LpOutcome::Infeasible(cert) => assert!(cert.verify(&inst)),
            other => panic!("expected infeasible, got {:?}", other),
        }
        check(&inst, &[qv(&[1])], &out, Sense::Minimize);
    }

    #[test]
    fn detects_unboundedness_with_ray() {
        // x <= 5, minimize x
        let inst = LpInstance::new(1, vec![ineq(&[-1], -5)], vec![]);
        let objs = [qv(&[1])];
        let out = lex_min(&inst, &objs, None);
        check(&inst, &objs, &out, Sense::Minimize);
        match &out {
            LpOutcome::Unbounded { point, ray } => {
                assert!(inst.is_feasible_point(point));
                assert!(qv(&[1]).dot(ray).is_negative());
            }
            other => panic!("expected unbounded, got {:?}", other),
        }
    }

    #[test]
    fn square_corner_via_single_objective() {
        let inst = square();
        let objs = [qv(&[-1, -1])];
        let out = lex_min(&inst, &objs, None);
        check(&inst, &objs, &out, Sense::Minimize);
        match &out {
            LpOutcome::Optimal { point, values } => {
                assert_eq!(point, &qv(&[1, 1]));
                assert_eq!(values, &[rat(-2, 1)]);
            }
            other => panic!("expected optimum, got {:?}", other),
        }
    }

    #[test]
    fn lexicographic_order_matters() {
        let inst = square();
        // most significant: minimize y; then minimize x
        let objs = [qv(&[0, 1]), qv(&[1, 0])];
        match lex_min(&inst, &objs, None) {
            LpOutcome::Optimal { point, .. } => assert_eq!(point, qv(&[0, 0])),
            other => panic!("expected optimum, got {:?}", other),
        }
        // maximize lexicographically: x first, then y
        let objs = [qv(&[1, 0]), qv(&[0, 1])];
        let out = lex_max(&inst, &objs, None);
        check(&inst, &objs, &out, Sense::Maximize);
        match out {
            LpOutcome::Optimal { point, values } => {
                assert_eq!(point, qv(&[1, 1]));
                assert_eq!(values, vec![rat(1, 1), rat(1, 1)]);
            }
            other => panic!("expected optimum, got {:?}", other),
        }
    }

    #[test]
    fn equalities_are_eliminated_exactly() {
        // x + y = 1, x >= 0, y >= 0: minimize x
        let inst = LpInstance::new(
            2,
            vec![ineq(&[1, 0], 0), ineq(&[0, 1], 0)],
            vec![(qv(&[1, 1]), rat(1, 1))],
        );
        let objs = [qv(&[1, 0])];
        let out = lex_min(&inst, &objs, None);
        check(&inst, &objs, &out, Sense::Minimize);
        match out {
            LpOutcome::Optimal { point, .. } => assert_eq!(point, qv(&[0, 1])),
            other => panic!("expected optimum, got {:?}", other),
        }
    }

    #[test]
    fn contradictory_equalities_certified() {
        let inst = LpInstance::new(
            1,
            vec![],
            vec![(qv(&[1]), rat(1, 1)), (qv(&[1]), rat(2, 1))],
        );
        let out = lex_min(&inst, &[], None);
        match &out {
            LpOutcome::Infeasible(cert) => assert!(cert.verify(&inst)),
            other => panic!("expected infeasible, got {:?}", other),
        }
    }

    #[test]
    fn zero_row_inequalities() {
        // 0·x >= -1 is vacuous; 0·x >= 1 is absurd
        let vacuous = LpInstance::new(1, vec![ineq(&[0], -1)], vec![]);
        match lex_min(&vacuous, &[], None) {
            LpOutcome::Optimal { .. } => {}
            other => panic!("expected feasible, got {:?}", other),
        }
        let absurd = LpInstance::new(1, vec![ineq(&[0], 1)], vec![]);
        match lex_min(&absurd, &[], None) {
            LpOutcome::Infeasible(cert) => assert!(cert.verify(&absurd)),
            other => panic!("expected infeasible, got {:?}", other),
        }
    }

    #[test]
    fn unbounded_at_second_level() {
        // halfplane y >= 0: level one pins y = 0, level two runs off to -inf
        let inst = LpInstance::new(2, vec![ineq(&[0, 1], 0)], vec![]);
        let objs = [qv(&[0, 1]), qv(&[1, 0])];
        let out = lex_min(&inst, &objs, None);
        check(&inst, &objs, &out, Sense::Minimize);
        match &out {
            LpOutcome::Unbounded { ray, .. } => {
                assert!(qv(&[0, 1]).dot(ray).is_zero());
                assert!(qv(&[1, 0]).dot(ray).is_negative());
            }
            other => panic!("expected unbounded, got {:?}", other),
        }
    }

    #[test]
    fn unbounded_along_equality_line() {
        // x - y = 0, minimize x: slides down the diagonal
        let inst = LpInstance::new(2, vec![], vec![(qv(&[1, -1]), rat(0, 1))]);
        let objs = [qv(&[1, 0])];
        let out = lex_min(&inst, &objs, None);
        check(&inst, &objs, &out, Sense::Minimize);
        assert!(matches!(out, LpOutcome::Unbounded { .. }));
    }

    #[test]
    fn hint_changes_nothing_about_the_answer() {
        let inst = square();
        let objs = [qv(&[-1, -1]), qv(&[1, 0]), qv(&[0, 1])];
        let cold = lex_min(&inst, &objs, None);
        let hint = qv(&[1, 0]); // a feasible corner
        let warm = lex_min(&inst, &objs, Some(&hint));
        assert_eq!(cold, warm);
        // invalid hints are ignored, not trusted
        let bogus = qv(&[7, 7]);
        assert_eq!(lex_min(&inst, &objs, Some(&bogus)), cold);
    }

    #[test]
    fn verification_rejects_tampered_outcomes() {
        let inst = square();
        let objs = [qv(&[-1, -1])];
        // claim a non-optimal corner
        let fake = LpOutcome::Optimal {
            point: qv(&[0, 0]),
            values: vec![rat(0, 1)],
        };
        assert!(verify_outcome(&inst, &objs, &fake, Sense::Minimize).is_err());
        // claim an infeasible point
        let fake = LpOutcome::Optimal {
            point: qv(&[2, 2]),
            values: vec![rat(-4, 1)],
        };
        assert!(verify_outcome(&inst, &objs, &fake, Sense::Minimize).is_err());
        // claim unboundedness of a bounded problem with a bogus ray
        let fake = LpOutcome::Unbounded {
            point: qv(&[0, 0]),
            ray: qv(&[-1, 0]),
        };
        assert!(verify_outcome(&inst, &objs, &fake, Sense::Minimize).is_err());
        // forge an infeasibility certificate
        let fake = LpOutcome::Infeasible(FarkasCertificate {
            ineq_mults: vec![rat(1, 1); 4],
            eq_mults: vec![],
        });
        assert!(verify_outcome(&inst, &objs, &fake, Sense::Minimize).is_err());
    }

    #[test]
    fn degenerate_vertex_terminates() {
        // three constraints meeting at the origin in the plane; Bland's
        // rule must not cycle on the degenerate corner
        let inst = LpInstance::new(
            2,
            vec![
                ineq(&[1, 0], 0),
                ineq(&[0, 1], 0),
                ineq(&[1, 1], 0),
                ineq(&[-1, -1], -2),
            ],
            vec![],
        );
        let objs = [qv(&[1, 1]), qv(&[1, 0]), qv(&[0, 1])];
        let out = lex_min(&inst, &objs, None);
        check(&inst, &objs, &out, Sense::Minimize);
        match out {
            LpOutcome::Optimal { point, .. } => assert_eq!(point, qv(&[0, 0])),
            other => panic!("expected optimum, got {:?}", other),
        }
    }

    mod random {
        use super::*;
        use proptest::prelude::*;

        fn small_rational() -> impl Strategy<Value = Rational> {
            (-3i64..=3, 1i64..=2).prop_map(|(n, d)| rat(n, d))
        }

        fn small_vector(dim: usize) -> impl Strategy<Value = QVector> {
            proptest::collection::vec(small_rational(), dim).prop_map(QVector::new)
        }

        fn small_instance() -> impl Strategy<Value = LpInstance> {
            (1usize..=3).prop_flat_map(|dim| {
                let ineqs = proptest::collection::vec(
                    (small_vector(dim), small_rational()),
                    0..=5,
                );
                let eqs = proptest::collection::vec(
                    (small_vector(dim), small_rational()),
                    0..=2,
                );
                (Just(dim), ineqs, eqs).prop_map(|(dim, inequalities, equalities)| {
                    LpInstance::new(dim, inequalities, equalities)
                })
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn every_outcome_verifies_and_is_deterministic(inst in small_instance()) {
                let dim = inst.n_vars;
                let mut objs = vec![QVector::from_ints(&vec![1; dim])];
                for i in 0..dim {
                    objs.push(QVector::unit(dim, i));
                }
                let out = lex_min(&inst, &objs, None);
                prop_assert!(verify_outcome(&inst, &objs, &out, Sense::Minimize).is_ok(),
                    "unverifiable outcome {:?}", out);
                prop_assert_eq!(lex_min(&inst, &objs, None), out.clone());
                // a lex optimum over a full coordinate tie-break is unique,
                // so warm starts must reproduce it exactly
                if let LpOutcome::Optimal { point, .. } = &out {
                    let warm = lex_min(&inst, &objs, Some(point));
                    prop_assert_eq!(warm, out.clone());
                }
            }
        }
    }
}
