//! Slow, independent reference implementations.
//!
//! Everything in this module recomputes answers from first principles so
//! that the main enumeration path can be tested against it. The overlap
//! between the two is kept as small as possible: the oracle never touches
//! the simplex solver. Feasibility, boundedness and unboundedness
//! questions are answered by Fourier–Motzkin elimination; vertex
//! candidates come from solving square linear systems; faces are closed
//! over by averaging vertices (a pure-arithmetic operation). The price is
//! exponential blow-up, so every entry point takes a `guard` — an upper
//! bound on the amount of work it may attempt before giving up with
//! [`OracleError::TooLarge`].
//!
//! Conventions match the main path: a face is named by its closed active
//! set (every constraint tight on the whole face); the subcomplex keeps
//! the bounded faces whose objective maximum clears the threshold, plus
//! the empty face, which is always a member; a polyhedron that is not
//! pointed, or on which the objective is unbounded below, has the trivial
//! subcomplex consisting of the empty face alone. Results come back in
//! the same [`VertexSet`] and [`Complex`] shapes the main path produces,
//! so [`diff_complexes`] can compare the two field by field. The oracle
//! works in ambient coordinates throughout: its vertex records carry the
//! ambient point in both the `point` and `reduced` slots.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::builder::{Complex, Face, TrivialReason};
use crate::combi::{binomial_u64, k_subsets, subsets_up_to};
use crate::geometry::{PolyhedronSpec, Threshold};
use crate::linalg::{solve_system, QMatrix, QVector, Rational};
use crate::vertices::{VertexRec, VertexSet};

/// Default work bound for oracle computations.
pub const DEFAULT_GUARD: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleError {
    /// The instance is too big for brute force under the given guard.
    TooLarge { required: u64, guard: u64 },
    /// The halfspaces have empty intersection.
    EmptyPolyhedron,
}

impl core::fmt::Display for OracleError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            OracleError::TooLarge { required, guard } => write!(
                f,
                "brute force would need {} units of work, above the guard of {}",
                required, guard
            ),
            OracleError::EmptyPolyhedron => write!(f, "the polyhedron is empty"),
        }
    }
}

impl core::error::Error for OracleError {}

fn tight_at(spec: &PolyhedronSpec, x: &QVector) -> Vec<usize> {
    spec.halfspaces
        .iter()
        .enumerate()
        .filter(|(_, h)| h.normal.dot(x) == h.rhs)
        .map(|(i, _)| i)
        .collect()
}

fn is_feasible(spec: &PolyhedronSpec, x: &QVector) -> bool {
    spec.halfspaces.iter().all(|h| h.normal.dot(x) >= h.rhs)
}

fn admits(threshold: &Threshold, ell: &Rational) -> bool {
    match threshold {
        Threshold::Finite(b) => ell < b,
        Threshold::Infinite => true,
    }
}

/// Every vertex of the polyhedron, by solving all square subsystems:
/// a point of `P` is a vertex exactly when its tight normals span the
/// ambient space, so some `dim`-subset of constraints pins it down. The
/// pinning subset is recorded as the vertex's witness. No threshold
/// filtering happens here.
pub fn brute_force_vertices(spec: &PolyhedronSpec, guard: u64) -> Result<VertexSet, OracleError> {
    let n = spec.halfspaces.len();
    let d = spec.dim;
    let required = binomial_u64(n, d);
    if required > guard {
        return Err(OracleError::TooLarge { required, guard });
    }
    let mut pairs: Vec<(VertexRec, Vec<usize>)> = Vec::new();
    for subset in k_subsets(n, d) {
        let rows: Vec<QVector> = subset
            .iter()
            .map(|&i| spec.halfspaces[i].normal.clone())
            .collect();
        let rhs = QVector::new(subset.iter().map(|&i| spec.halfspaces[i].rhs.clone()).collect());
        let Some(flat) = solve_system(&QMatrix::new(rows, d), &rhs) else {
            continue;
        };
        if flat.dim() != 0 {
            continue;
        }
        let x = flat.basepoint().clone();
        if !is_feasible(spec, &x) {
            continue;
        }
        let active = tight_at(spec, &x);
        let ell = spec.objective.dot(&x);
        let rec = VertexRec { point: x.clone(), reduced: x, active, ell };
        pairs.push((rec, subset));
    }
    Ok(VertexSet::from_records(pairs))
}

/// Brute-forces the subcomplex: all vertices, then all faces spanned by
/// them (closing intersections of vertex active sets by averaging), then
/// the bounded-and-below-threshold filter. The result's vertex table
/// holds only the vertices that are themselves complex members.
pub fn brute_force_complex(spec: &PolyhedronSpec, guard: u64) -> Result<Complex, OracleError> {
    let d = spec.dim;
    let all_rows: Vec<(QVector, Rational)> = spec
        .halfspaces
        .iter()
        .map(|h| (h.normal.clone(), h.rhs.clone()))
        .collect();
    if fm_solve(&all_rows, d, guard)?.is_none() {
        return Err(OracleError::EmptyPolyhedron);
    }
    let normals: Vec<QVector> = spec.halfspaces.iter().map(|h| h.normal.clone()).collect();
    if QMatrix::new(normals, d).rank() != d {
        return Ok(Complex::trivial(TrivialReason::NotPointed));
    }
    if ell_unbounded_below(spec, guard)? {
        return Ok(Complex::trivial(TrivialReason::ObjectiveUnboundedBelow));
    }
    let all = brute_force_vertices(spec, guard)?;

    // close the vertex active sets under intersection-then-closure; the
    // closure of a set is the full tight set of the average of the
    // vertices that contain it (tightness at an average of feasible
    // points is tightness at every one of them)
    let vertex_sets: Vec<BTreeSet<usize>> = all
        .iter()
        .map(|v| v.active.iter().copied().collect())
        .collect();
    let closure = |t: &BTreeSet<usize>| -> Vec<usize> {
        let members: Vec<&VertexRec> = all
            .iter()
            .zip(&vertex_sets)
            .filter(|(_, s)| t.is_subset(s))
            .map(|(v, _)| v)
            .collect();
        let mut sum = QVector::zeros(d);
        for v in &members {
            sum = sum.add(&v.point);
        }
        let k = Rational::new((members.len() as i64).into(), 1.into());
        let avg = sum.scale(&(Rational::one() / k));
        tight_at(spec, &avg)
    };
    let mut face_sets: BTreeSet<Vec<usize>> = all.iter().map(|v| v.active.clone()).collect();
    let mut closed_memo: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    loop {
        let snapshot: Vec<Vec<usize>> = face_sets.iter().cloned().collect();
        let mut grew = false;
        for i in 0..snapshot.len() {
            let a: BTreeSet<usize> = snapshot[i].iter().copied().collect();
            for sj in snapshot.iter().skip(i + 1) {
                let b: BTreeSet<usize> = sj.iter().copied().collect();
                let t: BTreeSet<usize> = a.intersection(&b).copied().collect();
                let key: Vec<usize> = t.iter().copied().collect();
                let closed = closed_memo
                    .entry(key)
                    .or_insert_with(|| closure(&t))
                    .clone();
                grew |= face_sets.insert(closed);
            }
        }
        if !grew {
            break;
        }
    }

    // the complex's own vertices: the threshold must admit their value
    let kept: Vec<(VertexRec, Vec<usize>)> = all
        .iter()
        .enumerate()
        .filter(|(_, v)| admits(&spec.threshold, &v.ell))
        .map(|(id, v)| (v.clone(), all.witness(id).to_vec()))
        .collect();
    let vertices = VertexSet::from_records(kept);

    let mut faces: BTreeMap<Vec<usize>, Face> = BTreeMap::new();
    for active in &face_sets {
        if !face_is_bounded(spec, active, guard)? {
            continue;
        }
        let members: Vec<&VertexRec> = all
            .iter()
            .filter(|v| active.iter().all(|i| v.active.contains(i)))
            .collect();
        let ell_max = members
            .iter()
            .map(|v| v.ell.clone())
            .max()
            .expect("a bounded face of a pointed polyhedron has vertices");
        if !admits(&spec.threshold, &ell_max) {
            continue;
        }
        // every vertex of an admitted face is admitted, so each member
        // appears in the filtered table
        let vertex_ids: Vec<usize> = members
            .iter()
            .map(|v| {
                vertices
                    .id_by_reduced(&v.point)
                    .expect("members of admitted faces are admitted")
            })
            .collect();
        let rows: Vec<QVector> = active
            .iter()
            .map(|&i| spec.halfspaces[i].normal.clone())
            .collect();
        let dim = d - QMatrix::new(rows, d).rank();
        faces.insert(
            active.clone(),
            Face {
                active: active.clone(),
                dim,
                vertex_ids,
                bounded: true,
                ell_max: Some(ell_max),
            },
        );
    }
    Ok(Complex { vertices, faces, has_empty_face: true, trivial: None })
}

/// Active sets of all nonempty faces of the polyhedron, found by forcing
/// every subset of constraints to equality and reading the tight set of a
/// relative-interior point of whatever survives. The empty face is not
/// listed. Work is `2^n` elimination runs, all guarded.
pub fn brute_force_face_lattice(
    spec: &PolyhedronSpec,
    guard: u64,
) -> Result<Vec<Vec<usize>>, OracleError> {
    let n = spec.halfspaces.len();
    let d = spec.dim;
    let required = 1u64.checked_shl(n as u32).unwrap_or(u64::MAX);
    if required > guard {
        return Err(OracleError::TooLarge { required, guard });
    }
    let base_rows: Vec<(QVector, Rational)> = spec
        .halfspaces
        .iter()
        .map(|h| (h.normal.clone(), h.rhs.clone()))
        .collect();
    if fm_solve(&base_rows, d, guard)?.is_none() {
        return Err(OracleError::EmptyPolyhedron);
    }
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    for subset in subsets_up_to(n, n) {
        let mut rows = base_rows.clone();
        for &i in &subset {
            let h = &spec.halfspaces[i];
            rows.push((h.normal.neg(), -h.rhs.clone()));
        }
        if let Some(q) = fm_solve(&rows, d, guard)? {
            seen.insert(tight_at(spec, &q));
        }
    }
    Ok(seen.into_iter().collect())
}

/// One disagreement between two complexes; see [`diff_complexes`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Discrepancy {
    TrivialMismatch { left: Option<TrivialReason>, right: Option<TrivialReason> },
    EmptyFaceMismatch { left: bool, right: bool },
    VertexOnlyInLeft { point: QVector },
    VertexOnlyInRight { point: QVector },
    VertexDataDiffers { point: QVector, field: &'static str },
    FaceOnlyInLeft { active: Vec<usize> },
    FaceOnlyInRight { active: Vec<usize> },
    FaceDataDiffers { active: Vec<usize>, field: &'static str },
}

impl core::fmt::Display for Discrepancy {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        fn point_str(p: &QVector) -> String {
            use core::fmt::Write;
            let mut s = String::from("(");
            for (i, c) in p.iter().enumerate() {
                if i > 0 {
                    s.push_str(", ");
                }
                let _ = write!(s, "{}", c);
            }
            s.push(')');
            s
        }
        match self {
            Discrepancy::TrivialMismatch { left, right } => {
                write!(f, "trivial-complex markers differ: {:?} vs {:?}", left, right)
            }
            Discrepancy::EmptyFaceMismatch { left, right } => {
                write!(f, "empty-face membership differs: {} vs {}", left, right)
            }
            Discrepancy::VertexOnlyInLeft { point } => {
                write!(f, "vertex {} only on the left", point_str(point))
            }
            Discrepancy::VertexOnlyInRight { point } => {
                write!(f, "vertex {} only on the right", point_str(point))
            }
            Discrepancy::VertexDataDiffers { point, field } => {
                write!(f, "vertex {} differs in {}", point_str(point), field)
            }
            Discrepancy::FaceOnlyInLeft { active } => {
                write!(f, "face {:?} only on the left", active)
            }
            Discrepancy::FaceOnlyInRight { active } => {
                write!(f, "face {:?} only on the right", active)
            }
            Discrepancy::FaceDataDiffers { active, field } => {
                write!(f, "face {:?} differs in {}", active, field)
            }
        }
    }
}

/// Field-by-field comparison of two complexes. Vertices are matched by
/// ambient point, faces by active set; matched faces must agree on
/// dimension, objective maximum, and the point sets of their vertices.
/// An empty result means the complexes are identical.
pub fn diff_complexes(left: &Complex, right: &Complex) -> Vec<Discrepancy> {
    let mut out = Vec::new();
    if left.trivial != right.trivial {
        out.push(Discrepancy::TrivialMismatch { left: left.trivial, right: right.trivial });
    }
    if left.has_empty_face != right.has_empty_face {
        out.push(Discrepancy::EmptyFaceMismatch {
            left: left.has_empty_face,
            right: right.has_empty_face,
        });
    }
    let lverts: BTreeMap<&QVector, &VertexRec> =
        left.vertices.iter().map(|r| (&r.point, r)).collect();
    let rverts: BTreeMap<&QVector, &VertexRec> =
        right.vertices.iter().map(|r| (&r.point, r)).collect();
    for (point, lrec) in &lverts {
        match rverts.get(point) {
            None => out.push(Discrepancy::VertexOnlyInLeft { point: (*point).clone() }),
            Some(rrec) => {
                if lrec.active != rrec.active {
                    out.push(Discrepancy::VertexDataDiffers {
                        point: (*point).clone(),
                        field: "active set",
                    });
                } else if lrec.ell != rrec.ell {
                    out.push(Discrepancy::VertexDataDiffers {
                        point: (*point).clone(),
                        field: "objective value",
                    });
                }
            }
        }
    }
    for point in rverts.keys() {
        if !lverts.contains_key(point) {
            out.push(Discrepancy::VertexOnlyInRight { point: (*point).clone() });
        }
    }
    for (key, lf) in &left.faces {
        match right.faces.get(key) {
            None => out.push(Discrepancy::FaceOnlyInLeft { active: key.clone() }),
            Some(rf) => {
                if lf.dim != rf.dim {
                    out.push(Discrepancy::FaceDataDiffers {
                        active: key.clone(),
                        field: "dimension",
                    });
                } else if lf.ell_max != rf.ell_max {
                    out.push(Discrepancy::FaceDataDiffers {
                        active: key.clone(),
                        field: "objective maximum",
                    });
                } else {
                    let lpts: BTreeSet<&QVector> = lf
                        .vertex_ids
                        .iter()
                        .map(|&id| &left.vertices.get(id).point)
                        .collect();
                    let rpts: BTreeSet<&QVector> = rf
                        .vertex_ids
                        .iter()
                        .map(|&id| &right.vertices.get(id).point)
                        .collect();
                    if lpts != rpts {
                        out.push(Discrepancy::FaceDataDiffers {
                            active: key.clone(),
                            field: "vertices",
                        });
                    }
                }
            }
        }
    }
    for key in right.faces.keys() {
        if !left.faces.contains_key(key) {
            out.push(Discrepancy::FaceOnlyInRight { active: key.clone() });
        }
    }
    out
}

/// Whether the face named by `active` has trivial recession cone. The
/// cone is `{ dir : a_i·dir = 0 on the active set, a_j·dir >= 0 for all j }`;
/// it is nontrivial exactly when it contains a direction with some
/// coordinate pinned to +1 or -1.
fn face_is_bounded(
    spec: &PolyhedronSpec,
    active: &[usize],
    guard: u64,
) -> Result<bool, OracleError> {
    let d = spec.dim;
    let mut rows: Vec<(QVector, Rational)> = Vec::new();
    for h in &spec.halfspaces {
        rows.push((h.normal.clone(), Rational::zero()));
    }
    for &i in active {
        rows.push((spec.halfspaces[i].normal.neg(), Rational::zero()));
    }
    for k in 0..d {
        for sign in [1i64, -1] {
            let mut probe = rows.clone();
            let target = Rational::new(sign.into(), 1.into());
            probe.push((QVector::unit(d, k), target.clone()));
            probe.push((QVector::unit(d, k).neg(), -target));
            if fm_solve(&probe, d, guard)?.is_some() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Whether the objective can decrease without bound over the polyhedron,
/// decided by projecting the system onto the objective's value axis.
fn ell_unbounded_below(spec: &PolyhedronSpec, guard: u64) -> Result<bool, OracleError> {
    let d = spec.dim;
    // variables (t, x): t tracks the objective value, x is eliminated
    let mut rows: Vec<(QVector, Rational)> = Vec::new();
    for h in &spec.halfspaces {
        let mut a = vec![Rational::zero()];
        a.extend(h.normal.coords().iter().cloned());
        rows.push((QVector::new(a), h.rhs.clone()));
    }
    let mut up = vec![Rational::one()];
    up.extend(spec.objective.coords().iter().map(|c| -c));
    let mut down = vec![-Rational::one()];
    down.extend(spec.objective.coords().iter().cloned());
    rows.push((QVector::new(up), Rational::zero()));
    rows.push((QVector::new(down), Rational::zero()));
    let projected = fm_project(&rows, d + 1, 1, guard)?;
    // a lower bound on t survives as a row with positive t coefficient
    Ok(!projected.iter().any(|(a, _)| a.coord(0).is_positive()))
}

// ---------------------------------------------------------------------------
// Fourier–Motzkin elimination
// ---------------------------------------------------------------------------

type FmRow = (QVector, Rational);

/// Scales a row to a canonical form for deduplication (first nonzero
/// coefficient becomes ±1; positive scaling preserves the inequality).
/// Vacuous rows (`0·x >= nonpositive`) are dropped; absurd rows
/// (`0·x >= positive`) collapse to a single marker.
fn normalize_row(a: QVector, b: Rational) -> Option<FmRow> {
    match a.iter().position(|c| !c.is_zero()) {
        None => {
            if b.is_positive() {
                Some((a, Rational::one()))
            } else {
                None
            }
        }
        Some(i) => {
            let scale = Rational::one() / a.coord(i).clone().abs();
            Some((a.scale(&scale), b * scale))
        }
    }
}

fn normalize_all(rows: &[FmRow]) -> BTreeSet<FmRow> {
    rows.iter()
        .filter_map(|(a, b)| normalize_row(a.clone(), b.clone()))
        .collect()
}

/// Eliminates the last of `k` variables from the system.
fn fm_eliminate_last(
    rows: &BTreeSet<FmRow>,
    k: usize,
    guard: u64,
) -> Result<BTreeSet<FmRow>, OracleError> {
    let v = k - 1;
    let mut out: BTreeSet<FmRow> = BTreeSet::new();
    let mut lowers: Vec<FmRow> = Vec::new(); // x_v >= b - a·x'
    let mut uppers: Vec<FmRow> = Vec::new(); // x_v <= a·x' - b
    for (a, b) in rows {
        let c = a.coord(v);
        let truncated = QVector::new(a.coords()[..v].to_vec());
        if c.is_zero() {
            if let Some(row) = normalize_row(truncated, b.clone()) {
                out.insert(row);
            }
        } else {
            let scale = Rational::one() / c.clone().abs();
            let row = (truncated.scale(&scale), b * &scale);
            if c.is_positive() {
                lowers.push(row);
            } else {
                uppers.push(row);
            }
        }
    }
    for (la, lb) in &lowers {
        for (ua, ub) in &uppers {
            // lb - la·x' <= x_v <= ua·x' - ub  =>  (la + ua)·x' >= lb + ub
            if let Some(row) = normalize_row(la.add(ua), lb + ub) {
                out.insert(row);
            }
            if out.len() as u64 > guard {
                return Err(OracleError::TooLarge {
                    required: out.len() as u64,
                    guard,
                });
            }
        }
    }
    Ok(out)
}

/// Projects the system onto its first `keep` variables.
fn fm_project(
    rows: &[FmRow],
    n_vars: usize,
    keep: usize,
    guard: u64,
) -> Result<BTreeSet<FmRow>, OracleError> {
    let mut cur = normalize_all(rows);
    for k in ((keep + 1)..=n_vars).rev() {
        cur = fm_eliminate_last(&cur, k, guard)?;
    }
    Ok(cur)
}

/// Decides feasibility of `rows` over `n_vars` variables; a feasible
/// system yields a point in the relative interior of the solution set
/// (each coordinate is back-substituted to the middle of its interval).
fn fm_solve(rows: &[FmRow], n_vars: usize, guard: u64) -> Result<Option<QVector>, OracleError> {
    let mut systems: Vec<BTreeSet<FmRow>> = vec![BTreeSet::new(); n_vars + 1];
    systems[n_vars] = normalize_all(rows);
    for k in (1..=n_vars).rev() {
        systems[k - 1] = fm_eliminate_last(&systems[k], k, guard)?;
    }
    // after normalization only absurd zero-variable rows survive
    if !systems[0].is_empty() {
        return Ok(None);
    }
    let mut x: Vec<Rational> = Vec::with_capacity(n_vars);
    for v in 0..n_vars {
        let mut lo: Option<Rational> = None;
        let mut hi: Option<Rational> = None;
        for (a, b) in &systems[v + 1] {
            let c = a.coord(v);
            if c.is_zero() {
                continue;
            }
            let mut residual = b.clone();
            for (j, xj) in x.iter().enumerate() {
                let aj = a.coord(j);
                if !aj.is_zero() {
                    residual -= aj * xj;
                }
            }
            let bound = residual / c;
            if c.is_positive() {
                if lo.as_ref().is_none_or(|l| bound > *l) {
                    lo = Some(bound);
                }
            } else if hi.as_ref().is_none_or(|h| bound < *h) {
                hi = Some(bound);
            }
        }
        let val = match (lo, hi) {
            (Some(l), Some(h)) => {
                debug_assert!(l <= h, "projection left an empty interval");
                if l == h {
                    l
                } else {
                    (l + h) / Rational::new(2.into(), 1.into())
                }
            }
            (Some(l), None) => l + Rational::one(),
            (None, Some(h)) => h - Rational::one(),
            (None, None) => Rational::zero(),
        };
        x.push(val);
    }
    Ok(Some(QVector::new(x)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builder::{build_unknown_d, euler_characteristic};
    use crate::exec::Seq;
    use crate::geometry::{preprocess, Halfspace};
    use crate::linalg::rat;

    fn qv(vals: &[i64]) -> QVector {
        QVector::from_ints(vals)
    }

    fn hs(a: &[i64], b: i64) -> Halfspace {
        Halfspace::new(qv(a), rat(b, 1))
    }

    fn square(objective: &[i64], threshold: Threshold) -> PolyhedronSpec {
        PolyhedronSpec::new(
            2,
            vec![hs(&[1, 0], 0), hs(&[0, 1], 0), hs(&[-1, 0], -1), hs(&[0, -1], -1)],
            qv(objective),
            threshold,
        )
    }

    fn cone_over_square() -> PolyhedronSpec {
        PolyhedronSpec::new(
            3,
            vec![
                hs(&[1, 0, -1], 0),
                hs(&[-1, 0, 2], 0),
                hs(&[0, 1, -1], 0),
                hs(&[0, -1, 2], 0),
            ],
            qv(&[0, 0, 1]),
            Threshold::Infinite,
        )
    }

    fn prism() -> PolyhedronSpec {
        PolyhedronSpec::new(
            3,
            vec![
                hs(&[1, 0, 0], 0),
                hs(&[0, 1, 0], 0),
                hs(&[-1, 0, 0], -1),
                hs(&[0, -1, 0], -1),
                hs(&[0, 0, 1], 0),
            ],
            qv(&[0, 0, 1]),
            Threshold::Infinite,
        )
    }

    #[test]
    fn square_vertices_and_full_complex() {
        let spec = square(&[-1, -1], Threshold::Infinite);
        let verts = brute_force_vertices(&spec, DEFAULT_GUARD).unwrap();
        let points: Vec<QVector> = verts.iter().map(|v| v.point.clone()).collect();
        assert_eq!(
            points,
            vec![qv(&[0, 0]), qv(&[0, 1]), qv(&[1, 0]), qv(&[1, 1])]
        );
        assert_eq!(verts.get(0).active, vec![0, 1]);
        assert_eq!(verts.get(0).ell, rat(0, 1));
        let cx = brute_force_complex(&spec, DEFAULT_GUARD).unwrap();
        assert_eq!(cx.trivial, None);
        assert_eq!(cx.vertices.len(), 4);
        // 4 vertices, 4 edges, 1 two-dimensional face
        assert_eq!(cx.face_count(), 9);
        assert_eq!(euler_characteristic(&cx), 0);
        assert_eq!(
            (cx.faces_of_dim(0), cx.faces_of_dim(1), cx.faces_of_dim(2)),
            (4, 4, 1)
        );
        // the square itself has the empty active set and objective max 0
        let top = &cx.faces[&Vec::<usize>::new()];
        assert_eq!(top.ell_max, Some(rat(0, 1)));
        assert_eq!(top.vertex_ids, vec![0, 1, 2, 3]);
    }

    #[test]
    fn thresholded_square_drops_the_hot_corner() {
        // objective -x-y with strict bound 0: the origin (value 0), both
        // edges through it (max 0) and the square itself (max 0) fall out,
        // and the origin leaves the vertex table too
        let spec = square(&[-1, -1], Threshold::Finite(rat(0, 1)));
        let cx = brute_force_complex(&spec, DEFAULT_GUARD).unwrap();
        assert_eq!(cx.trivial, None);
        let points: Vec<QVector> = cx.vertices.iter().map(|v| v.point.clone()).collect();
        assert_eq!(points, vec![qv(&[0, 1]), qv(&[1, 0]), qv(&[1, 1])]);
        let actives: Vec<Vec<usize>> = cx.faces.keys().cloned().collect();
        assert_eq!(
            actives,
            vec![vec![0, 3], vec![1, 2], vec![2], vec![2, 3], vec![3]]
        );
        let edge_vertices: Vec<Vec<usize>> = cx
            .faces
            .values()
            .filter(|f| f.dim == 1)
            .map(|f| f.vertex_ids.clone())
            .collect();
        // ids index the filtered table: x = 1 holds (1,0) & (1,1);
        // y = 1 holds (0,1) & (1,1)
        assert_eq!(edge_vertices, vec![vec![1, 2], vec![0, 2]]);
        assert_eq!(euler_characteristic(&cx), -1 + 3 - 2);
        // the full vertex set still has all four corners
        assert_eq!(brute_force_vertices(&spec, DEFAULT_GUARD).unwrap().len(), 4);
    }

    #[test]
    fn cone_over_a_square_keeps_only_the_apex() {
        let spec = cone_over_square();
        let verts = brute_force_vertices(&spec, DEFAULT_GUARD).unwrap();
        assert_eq!(verts.len(), 1);
        assert_eq!(verts.get(0).point, qv(&[0, 0, 0]));
        assert_eq!(verts.get(0).active, vec![0, 1, 2, 3]);
        let cx = brute_force_complex(&spec, DEFAULT_GUARD).unwrap();
        assert_eq!(cx.trivial, None);
        assert_eq!(cx.face_count(), 1);
        assert_eq!(cx.faces[&vec![0usize, 1, 2, 3]].dim, 0);
        assert_eq!(euler_characteristic(&cx), 0);
        // the face lattice: empty face (not listed), apex, 4 extreme rays,
        // 4 wedges, and the cone itself — 10 nonempty faces
        let lattice = brute_force_face_lattice(&spec, DEFAULT_GUARD).unwrap();
        assert_eq!(lattice.len(), 10);
        assert!(lattice.contains(&vec![])); // the cone: nothing tight everywhere
        assert!(lattice.contains(&vec![0, 1, 2, 3])); // the apex
        assert!(lattice.contains(&vec![0])); // a wedge
        assert!(lattice.contains(&vec![0, 2])); // an extreme ray
        assert_eq!(lattice.iter().filter(|s| s.len() == 1).count(), 4);
        assert_eq!(lattice.iter().filter(|s| s.len() == 2).count(), 4);
    }

    #[test]
    fn prism_keeps_its_bottom_square() {
        // unit square extruded along the positive z axis; height as the
        // objective, no threshold: only the bottom square survives
        let cx = brute_force_complex(&prism(), DEFAULT_GUARD).unwrap();
        assert_eq!(cx.vertices.len(), 4);
        // bottom square: 4 vertices + 4 edges + 1 face; vertical faces are
        // unbounded and excluded
        assert_eq!(cx.face_count(), 9);
        assert!(cx.faces.keys().all(|k| k.contains(&4)));
        assert_eq!(euler_characteristic(&cx), 0);
    }

    #[test]
    fn objective_unbounded_below_gives_trivial_complex() {
        let spec = PolyhedronSpec::new(
            2,
            vec![hs(&[1, 0], 0), hs(&[0, 1], 0)],
            qv(&[-1, 0]),
            Threshold::Infinite,
        );
        let cx = brute_force_complex(&spec, DEFAULT_GUARD).unwrap();
        assert_eq!(cx.trivial, Some(TrivialReason::ObjectiveUnboundedBelow));
        assert!(cx.faces.is_empty());
        assert!(cx.vertices.is_empty());
        // the polyhedron itself still has a vertex
        let verts = brute_force_vertices(&spec, DEFAULT_GUARD).unwrap();
        assert_eq!(verts.len(), 1);
        assert_eq!(verts.get(0).point, qv(&[0, 0]));
    }

    #[test]
    fn unpointed_polyhedron_gives_trivial_complex() {
        let spec = PolyhedronSpec::new(
            2,
            vec![hs(&[0, 1], 0)],
            qv(&[0, 1]),
            Threshold::Infinite,
        );
        let cx = brute_force_complex(&spec, DEFAULT_GUARD).unwrap();
        assert_eq!(cx.trivial, Some(TrivialReason::NotPointed));
        assert!(cx.vertices.is_empty());
        assert!(cx.faces.is_empty());
    }

    #[test]
    fn empty_polyhedron_is_reported() {
        let spec = PolyhedronSpec::new(
            1,
            vec![hs(&[1], 1), hs(&[-1], 0)],
            qv(&[1]),
            Threshold::Infinite,
        );
        assert!(matches!(
            brute_force_complex(&spec, DEFAULT_GUARD),
            Err(OracleError::EmptyPolyhedron)
        ));
        assert!(matches!(
            brute_force_face_lattice(&spec, DEFAULT_GUARD),
            Err(OracleError::EmptyPolyhedron)
        ));
        assert!(brute_force_vertices(&spec, DEFAULT_GUARD).unwrap().is_empty());
    }

    #[test]
    fn guard_stops_oversized_instances() {
        let spec = square(&[-1, -1], Threshold::Infinite);
        assert!(matches!(
            brute_force_vertices(&spec, 1),
            Err(OracleError::TooLarge { .. })
        ));
        assert!(matches!(
            brute_force_face_lattice(&spec, 3),
            Err(OracleError::TooLarge { .. })
        ));
    }

    #[test]
    fn lattice_of_the_square_has_nine_nonempty_faces() {
        let spec = square(&[-1, -1], Threshold::Infinite);
        let lattice = brute_force_face_lattice(&spec, DEFAULT_GUARD).unwrap();
        assert_eq!(lattice.len(), 9);
    }

    #[test]
    fn oracle_agrees_with_the_main_path() {
        let quadrant = PolyhedronSpec::new(
            2,
            vec![hs(&[1, 0], 0), hs(&[0, 1], 0)],
            qv(&[1, 1]),
            Threshold::Infinite,
        );
        let specs = vec![
            square(&[-1, -1], Threshold::Infinite),
            square(&[-1, -1], Threshold::Finite(rat(0, 1))),
            square(&[-1, -1], Threshold::Finite(rat(-1, 2))),
            cone_over_square(),
            prism(),
            quadrant,
        ];
        for spec in specs {
            let by_oracle = brute_force_complex(&spec, DEFAULT_GUARD).unwrap();
            let norm = preprocess(&spec).unwrap();
            let (_, by_main) = build_unknown_d(&norm, &Seq);
            let diffs = diff_complexes(&by_main, &by_oracle);
            assert!(
                diffs.is_empty(),
                "disagreement on {:?}: {:?}",
                spec.halfspaces.len(),
                diffs
            );
        }
    }

    #[test]
    fn diff_reports_each_kind_of_mismatch() {
        let spec = square(&[-1, -1], Threshold::Finite(rat(0, 1)));
        let cx = brute_force_complex(&spec, DEFAULT_GUARD).unwrap();
        assert!(diff_complexes(&cx, &cx).is_empty());

        // a missing face shows up from both sides
        let mut chopped = cx.clone();
        let key = chopped.faces.keys().next().unwrap().clone();
        chopped.faces.remove(&key);
        assert_eq!(
            diff_complexes(&cx, &chopped),
            vec![Discrepancy::FaceOnlyInLeft { active: key.clone() }]
        );
        assert_eq!(
            diff_complexes(&chopped, &cx),
            vec![Discrepancy::FaceOnlyInRight { active: key.clone() }]
        );

        // tampered face data is called out by field
        let mut bent = cx.clone();
        bent.faces.get_mut(&key).unwrap().dim += 1;
        assert_eq!(
            diff_complexes(&cx, &bent),
            vec![Discrepancy::FaceDataDiffers { active: key.clone(), field: "dimension" }]
        );
        let mut hot = cx.clone();
        hot.faces.get_mut(&key).unwrap().ell_max = Some(rat(99, 1));
        assert_eq!(
            diff_complexes(&cx, &hot),
            vec![Discrepancy::FaceDataDiffers { active: key, field: "objective maximum" }]
        );

        // trivial markers and the empty face are compared too
        let trivial = Complex::trivial(TrivialReason::NotPointed);
        let diffs = diff_complexes(&cx, &trivial);
        assert!(diffs.contains(&Discrepancy::TrivialMismatch {
            left: None,
            right: Some(TrivialReason::NotPointed)
        }));
        let mut no_empty = cx.clone();
        no_empty.has_empty_face = false;
        assert!(diff_complexes(&cx, &no_empty)
            .contains(&Discrepancy::EmptyFaceMismatch { left: true, right: false }));
    }

    mod random {
        use super::*;
        use crate::lp::{lex_min, LpInstance, LpOutcome};
        use proptest::prelude::*;

        fn small_rational() -> impl Strategy<Value = Rational> {
            (-3i64..=3, 1i64..=2).prop_map(|(n, d)| rat(n, d))
        }

        fn small_spec() -> impl Strategy<Value = PolyhedronSpec> {
            (1usize..=3).prop_flat_map(|dim| {
                let halfspaces = proptest::collection::vec(
                    (proptest::collection::vec(small_rational(), dim), small_rational())
                        .prop_map(|(a, b)| Halfspace::new(QVector::new(a), b)),
                    0..=6,
                );
                let objective = proptest::collection::vec(small_rational(), dim)
                    .prop_map(QVector::new);
                (Just(dim), halfspaces, objective).prop_map(|(dim, hs, obj)| {
                    PolyhedronSpec::new(dim, hs, obj, Threshold::Infinite)
                })
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn vertices_are_feasible_with_spanning_tight_sets(spec in small_spec()) {
                let verts = brute_force_vertices(&spec, DEFAULT_GUARD).unwrap();
                for v in verts.iter() {
                    prop_assert!(is_feasible(&spec, &v.point));
                    prop_assert_eq!(&tight_at(&spec, &v.point), &v.active);
                    prop_assert_eq!(spec.objective.dot(&v.point), v.ell.clone());
                    let rows: Vec<QVector> = v.active.iter()
                        .map(|&i| spec.halfspaces[i].normal.clone()).collect();
                    prop_assert_eq!(QMatrix::new(rows, spec.dim).rank(), spec.dim);
                }
                // sorted and deduplicated
                for w in verts.records().windows(2) {
                    prop_assert!(w[0].point < w[1].point);
                }
            }

            #[test]
            fn elimination_agrees_with_the_simplex_on_feasibility(spec in small_spec()) {
                let rows: Vec<FmRow> = spec.halfspaces.iter()
                    .map(|h| (h.normal.clone(), h.rhs.clone())).collect();
                let by_fm = fm_solve(&rows, spec.dim, DEFAULT_GUARD).unwrap();
                let inst = LpInstance::new(
                    spec.dim,
                    spec.halfspaces.iter().map(|h| (h.normal.clone(), h.rhs.clone())).collect(),
                    vec![],
                );
                let by_lp = lex_min(&inst, &[], None);
                match (by_fm, by_lp) {
                    (Some(p), LpOutcome::Optimal { .. }) => {
                        prop_assert!(is_feasible(&spec, &p), "elimination point must be feasible");
                    }
                    (None, LpOutcome::Infeasible(_)) => {}
                    (fm, lp) => prop_assert!(false, "disagreement: fm={:?} lp={:?}", fm.is_some(), lp),
                }
            }
        }
    }
}
