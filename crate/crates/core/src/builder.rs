//! Construction and certification of the bounded threshold subcomplex.
//!
//! The complex is grown from its vertices: for every known face `f` and
//! vertex `v` off `f`, the smallest face containing `f ∪ {v}` is a
//! candidate member, discovered arithmetically — the tight set at a
//! relative-interior point of the candidate (an average of known vertex
//! points) is its closed active set, no solver involved. Candidates pay
//! for LP work only once, when their boundedness and threshold predicates
//! are first evaluated.
//!
//! Completeness at a dimension budget `d` is certified (not assumed) by
//! [`verify_nogap`]: (1) every lexicographic minimum over at most `d+1`
//! tight constraints is an already-known vertex, unless the threshold
//! rejects it; (2) no face exceeds dimension `d`; (3) for every
//! (face, vertex) pair, the smallest face containing both is either
//! strictly larger than their affine hull, already a member, or not a
//! member of the complex at all. The outer driver [`build_unknown_d`]
//! raises `d` until the certificate passes; the certificate's subset
//! minima are shared with vertex enumeration through one cache.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::combi::binomial;
use crate::exec::Exec;
use crate::geometry::{face_passes_threshold, is_bounded_face, EllMin, NormalizedSpec};
use crate::linalg::{affine_hull, QVector, Rational};
use crate::lp::LpOutcome;
use crate::vertices::{vertices_from_cache, SubsetMinCache, VertexSet};

/// Why a complex is `{empty face}` by convention rather than computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrivialReason {
    /// The polyhedron has no vertices.
    NotPointed,
    /// The objective is unbounded below on the polyhedron.
    ObjectiveUnboundedBelow,
}

/// One nonempty face of the complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    /// The closed active set: every constraint tight on the whole face,
    /// by original index.
    pub active: Vec<usize>,
    /// Dimension of the face.
    pub dim: usize,
    /// Ids (into the owning complex's vertex set) of the vertices lying
    /// on the face.
    pub vertex_ids: Vec<usize>,
    /// Whether the face is bounded — always true for complex members.
    pub bounded: bool,
    /// Maximum of the objective over the face; `None` marks "not
    /// attained", which cannot occur for complex members.
    pub ell_max: Option<Rational>,
}

/// The bounded threshold subcomplex: the empty face plus every bounded
/// face whose objective maximum the threshold admits, keyed by closed
/// active set.
#[derive(Clone, Debug, Default)]
pub struct Complex {
    /// The complex's vertices — its dimension-0 faces' points, sorted.
    pub vertices: VertexSet,
    /// Nonempty faces by active set. Dimension-0 members mirror
    /// `vertices` one-to-one.
    pub faces: BTreeMap<Vec<usize>, Face>,
    /// The empty face (dimension −1) is a member of every genuine
    /// complex; mutation tests may clear this.
    pub has_empty_face: bool,
    /// Set when the complex is `{empty face}` by convention.
    pub trivial: Option<TrivialReason>,
}

impl Complex {
    /// The `{empty face}` complex mandated for the given degenerate case.
    pub fn trivial(reason: TrivialReason) -> Self {
        Complex {
            vertices: VertexSet::default(),
            faces: BTreeMap::new(),
            has_empty_face: true,
            trivial: Some(reason),
        }
    }

    /// Largest face dimension; −1 when only the empty face is present.
    pub fn dim(&self) -> i64 {
        self.faces.values().map(|f| f.dim as i64).max().unwrap_or(-1)
    }

    /// Number of nonempty faces.
    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// Number of faces of dimension `d`.
    pub fn faces_of_dim(&self, d: usize) -> usize {
        self.faces.values().filter(|f| f.dim == d).count()
    }
}

/// Alternating sum `Σ (−1)^{dim f}` over every face of the complex,
/// including the empty face's `(−1)^{−1} = −1` term. Zero for every
/// genuine complex with at least one vertex; −1 for `{empty face}`.
pub fn euler_characteristic(complex: &Complex) -> i64 {
    let mut chi: i64 = if complex.has_empty_face { -1 } else { 0 };
    for f in complex.faces.values() {
        chi += if f.dim % 2 == 0 { 1 } else { -1 };
    }
    chi
}

/// Growth failure: a face passing the membership predicate exceeds the
/// dimension budget, so the budget undershoots the complex dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BuildError {
    DimensionExceeded { active: Vec<usize>, dim: usize, budget: usize },
}

impl core::fmt::Display for BuildError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            BuildError::DimensionExceeded { active, dim, budget } => write!(
                f,
                "face {:?} has dimension {} above the budget {}; retry with a larger budget",
                active, dim, budget
            ),
        }
    }
}

impl core::error::Error for BuildError {}

/// Memoized face-membership verdicts keyed by closed active set:
/// `Some((dim, ell_max))` for faces that are bounded and admitted by the
/// threshold, `None` for the rest. Verdicts do not depend on the budget,
/// so one cache serves every level of the unknown-dimension driver.
#[derive(Clone, Debug, Default)]
pub struct FacePredicateCache {
    map: BTreeMap<Vec<usize>, Option<(usize, Rational)>>,
}

impl FacePredicateCache {
    fn evaluate(
        &mut self,
        norm: &NormalizedSpec,
        active: &[usize],
        hint: Option<&QVector>,
    ) -> Option<(usize, Rational)> {
        if let Some(v) = self.map.get(active) {
            return v.clone();
        }
        let verdict = evaluate_membership(norm, active, hint);
        self.map.insert(active.to_vec(), verdict.clone());
        verdict
    }
}

/// The raw membership predicate: bounded and threshold-admitted, with
/// dimension and objective maximum on success. A zero-dimensional face is
/// a single point, so its boundedness needs no solver.
fn evaluate_membership(
    norm: &NormalizedSpec,
    active: &[usize],
    hint: Option<&QVector>,
) -> Option<(usize, Rational)> {
    let dim = norm.face_dim(active);
    if dim > 0 && !is_bounded_face(norm, active) {
        return None;
    }
    let (pass, ell_max) = face_passes_threshold(norm, active, hint);
    if pass {
        Some((dim, ell_max.expect("a passing face attains its maximum")))
    } else {
        None
    }
}

/// `small ⊆ big` for sorted index slices.
fn contains_sorted(big: &[usize], small: &[usize]) -> bool {
    let mut it = big.iter();
    'outer: for s in small {
        for b in it.by_ref() {
            match b.cmp(s) {
                core::cmp::Ordering::Less => continue,
                core::cmp::Ordering::Equal => continue 'outer,
                core::cmp::Ordering::Greater => return false,
            }
        }
        return false;
    }
    true
}

/// Ids of the vertices lying on the face with the given active set.
fn vertex_ids_on(vertices: &VertexSet, active: &[usize]) -> Vec<usize> {
    vertices
        .iter()
        .enumerate()
        .filter(|(_, r)| contains_sorted(&r.active, active))
        .map(|(id, _)| id)
        .collect()
}

/// Average of the listed vertices' reduced points, optionally with one
/// extra point mixed in — a relative-interior point of the convex hull.
fn average_point(vertices: &VertexSet, ids: &[usize], extra: Option<&QVector>) -> QVector {
    let dim = extra
        .map(|p| p.dim())
        .unwrap_or_else(|| vertices.get(ids[0]).reduced.dim());
    let mut sum = QVector::zeros(dim);
    let mut count = 0i64;
    for &id in ids {
        sum = sum.add(&vertices.get(id).reduced);
        count += 1;
    }
    if let Some(p) = extra {
        sum = sum.add(p);
        count += 1;
    }
    sum.scale(&Rational::new(1.into(), count.into()))
}

/// Grows the complex over the given vertices at a dimension budget.
fn grow_complex(
    norm: &NormalizedSpec,
    exec: &impl Exec,
    budget: usize,
    vertices: VertexSet,
    pred: &mut FacePredicateCache,
) -> Result<Complex, BuildError> {
    let inst = norm.instance();
    let mut faces: BTreeMap<Vec<usize>, Face> = BTreeMap::new();
    for (id, rec) in vertices.iter().enumerate() {
        faces.insert(
            rec.active.clone(),
            Face {
                active: rec.active.clone(),
                dim: 0,
                vertex_ids: alloc::vec![id],
                bounded: true,
                ell_max: Some(rec.ell.clone()),
            },
        );
    }
    let mut rejected: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut frontier: Vec<Vec<usize>> = faces.keys().cloned().collect();
    while !frontier.is_empty() {
        // candidate active sets from (frontier face, off-face vertex) pairs
        let mut candidates: BTreeMap<Vec<usize>, QVector> = BTreeMap::new();
        for fkey in &frontier {
            let f = &faces[fkey];
            for (vid, v) in vertices.iter().enumerate() {
                if f.vertex_ids.binary_search(&vid).is_ok() {
                    continue;
                }
                let q = average_point(&vertices, &f.vertex_ids, Some(&v.reduced));
                let tight = inst.tight_set(&q);
                if faces.contains_key(&tight)
                    || rejected.contains(&tight)
                    || candidates.contains_key(&tight)
                {
                    continue;
                }
                candidates.insert(tight, q);
            }
        }
        // evaluate the membership predicate, reusing cached verdicts
        let mut to_eval: Vec<(Vec<usize>, QVector)> = Vec::new();
        let mut verdicts: Vec<(Vec<usize>, Option<(usize, Rational)>)> = Vec::new();
        for (active, q) in candidates {
            match pred.map.get(&active) {
                Some(v) => verdicts.push((active, v.clone())),
                None => to_eval.push((active, q)),
            }
        }
        let fresh = exec.map(to_eval, |(active, q)| {
            let verdict = evaluate_membership(norm, &active, Some(&q));
            (active, verdict)
        });
        for (active, verdict) in fresh {
            pred.map.insert(active.clone(), verdict.clone());
            verdicts.push((active, verdict));
        }
        verdicts.sort_by(|a, b| a.0.cmp(&b.0));

        let mut next = Vec::new();
        for (active, verdict) in verdicts {
            match verdict {
                None => {
                    rejected.insert(active);
                }
                Some((dim, ell_max)) => {
                    if dim > budget {
                        return Err(BuildError::DimensionExceeded { active, dim, budget });
                    }
                    let vertex_ids = vertex_ids_on(&vertices, &active);
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
                    next.push(active);
                }
            }
        }
        frontier = next;
    }
    Ok(Complex { vertices, faces, has_empty_face: true, trivial: None })
}

/// Closure sweep: intersect every face with every constraint boundary
/// missing from its active set and insert any resulting subface that is
/// not yet present. Subfaces of members are members (bounded, objective
/// maximum no larger), so no solver is needed; their data comes from the
/// vertices they contain. Runs to a fixpoint.
fn closure_sweep(norm: &NormalizedSpec, complex: &mut Complex) {
    let inst = norm.instance();
    loop {
        let mut added = false;
        let keys: Vec<Vec<usize>> = complex.faces.keys().cloned().collect();
        for key in keys {
            let f = complex.faces[&key].clone();
            for i in 0..norm.n_constraints {
                if f.active.binary_search(&i).is_ok() {
                    continue;
                }
                let on_boundary: Vec<usize> = f
                    .vertex_ids
                    .iter()
                    .copied()
                    .filter(|&vid| complex.vertices.get(vid).active.binary_search(&i).is_ok())
                    .collect();
                if on_boundary.is_empty() {
                    continue;
                }
                let q = average_point(&complex.vertices, &on_boundary, None);
                let tight = inst.tight_set(&q);
                if complex.faces.contains_key(&tight) {
                    continue;
                }
                let ell_max = on_boundary
                    .iter()
                    .map(|&vid| complex.vertices.get(vid).ell.clone())
                    .max()
                    .expect("nonempty vertex list");
                let face = Face {
                    active: tight.clone(),
                    dim: norm.face_dim(&tight),
                    vertex_ids: vertex_ids_on(&complex.vertices, &tight),
                    bounded: true,
                    ell_max: Some(ell_max),
                };
                complex.faces.insert(tight, face);
                added = true;
            }
        }
        if !added {
            return;
        }
    }
}

/// Builds the complex at a known dimension budget: enumerate vertices
/// through subsets of at most `d` constraints, grow faces to a fixpoint,
/// then run the closure sweep. Errors when a face passing the membership
/// predicate exceeds the budget. A non-pointed polyhedron or an objective
/// unbounded below yields the trivial complex.
pub fn build_known_d(
    norm: &NormalizedSpec,
    exec: &impl Exec,
    d: usize,
) -> Result<Complex, BuildError> {
    if !norm.pointed {
        return Ok(Complex::trivial(TrivialReason::NotPointed));
    }
    if norm.ell_min == EllMin::UnboundedBelow {
        return Ok(Complex::trivial(TrivialReason::ObjectiveUnboundedBelow));
    }
    let mut cache = SubsetMinCache::new();
    let mut pred = FacePredicateCache::default();
    let vertices = vertices_from_cache(norm, exec, &mut cache, d);
    let mut complex = grow_complex(norm, exec, d, vertices, &mut pred)?;
    closure_sweep(norm, &mut complex);
    Ok(complex)
}

/// Outcome of the completeness certificate at some budget `d`.
#[derive(Clone, Debug)]
pub struct NogapReport {
    /// The empty face is present (a member of every genuine complex).
    pub empty_face_ok: bool,
    /// Every lexicographic minimum over at most `d+1` tight constraints
    /// is a known vertex or rejected by the threshold.
    pub condition1_ok: bool,
    /// No face exceeds dimension `d`.
    pub condition2_ok: bool,
    /// Every (face, vertex) pair generates a face that is larger than
    /// their affine hull, already present, or not a complex member.
    pub condition3_ok: bool,
    /// Description of the first failure, if any.
    pub first_violation: Option<String>,
}

impl NogapReport {
    /// True when every check passed: the complex is certified complete.
    pub fn certified(&self) -> bool {
        self.empty_face_ok && self.condition1_ok && self.condition2_ok && self.condition3_ok
    }
}

fn nogap_with_caches(
    norm: &NormalizedSpec,
    exec: &impl Exec,
    d: usize,
    complex: &Complex,
    cache: &mut SubsetMinCache,
    pred: &mut FacePredicateCache,
) -> NogapReport {
    let mut report = NogapReport {
        empty_face_ok: complex.has_empty_face,
        condition1_ok: true,
        condition2_ok: true,
        condition3_ok: true,
        first_violation: None,
    };
    if !report.empty_face_ok {
        report.first_violation = Some("the empty face is missing".into());
    }
    let note = |slot: &mut bool, msg: String, first: &mut Option<String>| {
        *slot = false;
        if first.is_none() {
            *first = Some(msg);
        }
    };

    // condition 1: subset minima up to size d+1 are known or rejected
    cache.ensure(norm, exec, d + 1);
    'cond1: for (sub, out) in cache.iter_up_to(d + 1) {
        if let LpOutcome::Optimal { point, values } = out {
            let ell = &values[0] + &norm.objective_constant;
            if norm.threshold.admits(&ell) && !complex.vertices.contains_reduced(point) {
                note(
                    &mut report.condition1_ok,
                    format!("subset {:?} minimizes to an unknown vertex", sub),
                    &mut report.first_violation,
                );
                break 'cond1;
            }
        }
    }

    // condition 2: the dimension budget is honest
    for f in complex.faces.values() {
        if f.dim > d {
            note(
                &mut report.condition2_ok,
                format!("face {:?} has dimension {} > {}", f.active, f.dim, d),
                &mut report.first_violation,
            );
            break;
        }
    }

    // condition 3: (face, vertex) pairs generate nothing new.
    // For each pair, a relative-interior point of the generated face is
    // the average of the face's vertices and the extra vertex; its tight
    // set identifies the generated face exactly.
    let inst = norm.instance();
    // pairs with the empty face generate the vertex faces themselves
    for (vid, v) in complex.vertices.iter().enumerate() {
        if !complex.faces.contains_key(&v.active) {
            note(
                &mut report.condition3_ok,
                format!("vertex {} has no dimension-0 face", vid),
                &mut report.first_violation,
            );
            break;
        }
    }
    if report.condition3_ok {
        let pairs: Vec<(Vec<usize>, usize)> = complex
            .faces
            .keys()
            .flat_map(|k| (0..complex.vertices.len()).map(move |vid| (k.clone(), vid)))
            .collect();
        // arithmetic part in parallel: the generated face's active set
        // and the pair's affine hull dimension
        let probes = exec.map(pairs, |(fkey, vid)| {
            let f = &complex.faces[&fkey];
            let v = complex.vertices.get(vid);
            let q = average_point(&complex.vertices, &f.vertex_ids, Some(&v.reduced));
            let tight = inst.tight_set(&q);
            let mut pts: Vec<QVector> = f
                .vertex_ids
                .iter()
                .map(|&id| complex.vertices.get(id).reduced.clone())
                .collect();
            pts.push(v.reduced.clone());
            let hull_dim = affine_hull(&pts).expect("at least one point").dim();
            (fkey, vid, tight, hull_dim, q)
        });
        for (fkey, vid, tight, hull_dim, q) in probes {
            let gen_dim = match complex.faces.get(&tight) {
                Some(g) => g.dim,
                None => norm.face_dim(&tight),
            };
            debug_assert!(gen_dim >= hull_dim, "generated face contains the hull");
            if gen_dim > hull_dim || complex.faces.contains_key(&tight) {
                continue;
            }
            // the generated face matches the hull and is absent: a
            // violation unless it is not a complex member at all
            if pred.evaluate(norm, &tight, Some(&q)).is_some() {
                note(
                    &mut report.condition3_ok,
                    format!(
                        "pair (face {:?}, vertex {}) generates the missing face {:?}",
                        fkey, vid, tight
                    ),
                    &mut report.first_violation,
                );
                break;
            }
        }
    }
    report
}

/// Certifies a candidate complex at budget `d`; see [`NogapReport`].
pub fn verify_nogap(
    norm: &NormalizedSpec,
    exec: &impl Exec,
    d: usize,
    complex: &Complex,
) -> NogapReport {
    let mut cache = SubsetMinCache::new();
    let mut pred = FacePredicateCache::default();
    nogap_with_caches(norm, exec, d, complex, &mut cache, &mut pred)
}

/// Builds the complex without knowing its dimension: runs the known-`d`
/// builder for `d = 0, 1, 2, …` until the completeness certificate
/// passes, sharing the subset-minimum and face-predicate caches across
/// levels. Returns the first certified `(d, complex)`; the loop always
/// terminates by `d = D'`.
pub fn build_unknown_d(norm: &NormalizedSpec, exec: &impl Exec) -> (usize, Complex) {
    if !norm.pointed {
        return (0, Complex::trivial(TrivialReason::NotPointed));
    }
    if norm.ell_min == EllMin::UnboundedBelow {
        return (0, Complex::trivial(TrivialReason::ObjectiveUnboundedBelow));
    }
    let mut cache = SubsetMinCache::new();
    let mut pred = FacePredicateCache::default();
    for d in 0..=norm.reduced_dim {
        let vertices = vertices_from_cache(norm, exec, &mut cache, d);
        let complex = match grow_complex(norm, exec, d, vertices, &mut pred) {
            Ok(c) => c,
            Err(BuildError::DimensionExceeded { .. }) => continue,
        };
        let report = nogap_with_caches(norm, exec, d, &complex, &mut cache, &mut pred);
        if report.certified() {
            return (d, complex);
        }
    }
    unreachable!("the certificate passes at the full reduced dimension")
}

/// Face-count validation report; see [`check_face_bounds`].
#[derive(Clone, Debug)]
pub struct FaceBoundReport {
    /// Every vertex has exactly `D'` tight constraints, which is the
    /// hypothesis of the per-dimension bounds.
    pub general_position: bool,
    /// Complex dimension used by the bounds (0 for a trivial complex).
    pub d: usize,
    /// Per dimension `i`: the face count and the bound `N·C(d, i)`.
    pub per_dim: Vec<(usize, usize, BigInt)>,
    /// Number of nonempty faces.
    pub total: usize,
    /// The overall bound `C(n, d)·2^d`.
    pub total_bound: BigInt,
    /// No asserted bound is violated (bounds are only asserted under
    /// general position).
    pub ok: bool,
}

/// Checks the face-count bounds: in general position a `d`-dimensional
/// complex with `N` vertices has at most `N·C(d, i)` faces of dimension
/// `i` and at most `C(n, d)·2^d` nonempty faces in total. Off general
/// position the counts are reported but not asserted.
pub fn check_face_bounds(norm: &NormalizedSpec, complex: &Complex) -> FaceBoundReport {
    let n = norm.n_constraints;
    let general_position =
        complex.vertices.iter().all(|r| r.active.len() == norm.reduced_dim);
    let d = complex.dim().max(0) as usize;
    let n_verts = BigInt::from(complex.vertices.len());
    let mut per_dim = Vec::new();
    let mut ok = true;
    for i in 0..=d {
        let count = complex.faces_of_dim(i);
        let bound = &n_verts * binomial(d, i);
        if general_position && BigInt::from(count) > bound {
            ok = false;
        }
        per_dim.push((i, count, bound));
    }
    let total = complex.face_count();
    let total_bound = binomial(n, d) << d;
    if general_position && BigInt::from(total) > total_bound {
        ok = false;
    }
    FaceBoundReport { general_position, d, per_dim, total, total_bound, ok }
}
