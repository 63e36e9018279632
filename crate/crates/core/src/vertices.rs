//! Vertex enumeration by lexicographic programming over constraint
//! subsets.
//!
//! Every vertex of the thresholded complex is the lexicographic minimum
//! of the objective over `P ∩ A_S` for some set `S` of at most `d`
//! constraints, where `A_S` is the intersection of their boundary
//! hyperplanes and `d` is the complex dimension. Enumerating all subsets
//! up to a size budget therefore finds every vertex once the budget
//! reaches `d` — without knowing the vertices in advance. The same
//! per-subset outcomes also drive the completeness certificate, so they
//! are solved once into a shared [`SubsetMinCache`] and reused across
//! budgets.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::combi::{binomial, k_subsets};
use crate::exec::Exec;
use crate::geometry::{EllMin, NormalizedSpec};
use crate::linalg::{QVector, Rational};
use crate::lp::{lex_min, LpOutcome};

/// One vertex: ambient and reduced coordinates, the full closed active
/// set, and the objective value there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexRec {
    /// Ambient-space coordinates — the canonical identity and sort key.
    pub point: QVector,
    /// The same point in the reduced coordinates of the normalized spec.
    pub reduced: QVector,
    /// Every constraint tight at the vertex, by original index.
    pub active: Vec<usize>,
    /// Objective value at the vertex.
    pub ell: Rational,
}

/// Deduplicated vertices sorted by ambient point; a vertex's id is its
/// position. Each vertex carries one witnessing subset whose
/// lexicographic minimum produced it.
#[derive(Clone, Debug, Default)]
pub struct VertexSet {
    recs: Vec<VertexRec>,
    witnesses: Vec<Vec<usize>>,
    by_reduced: BTreeMap<QVector, usize>,
}

impl VertexSet {
    /// Builds the set from (record, witness) pairs: sorts by ambient
    /// point and deduplicates by exact point equality, keeping the first
    /// witness seen for each point.
    pub fn from_records(pairs: Vec<(VertexRec, Vec<usize>)>) -> Self {
        let mut by_point: BTreeMap<QVector, (VertexRec, Vec<usize>)> = BTreeMap::new();
        for (rec, wit) in pairs {
            by_point.entry(rec.point.clone()).or_insert((rec, wit));
        }
        let mut recs = Vec::with_capacity(by_point.len());
        let mut witnesses = Vec::with_capacity(by_point.len());
        let mut by_reduced = BTreeMap::new();
        for (id, (_, (rec, wit))) in by_point.into_iter().enumerate() {
            by_reduced.insert(rec.reduced.clone(), id);
            recs.push(rec);
            witnesses.push(wit);
        }
        VertexSet { recs, witnesses, by_reduced }
    }

    pub fn len(&self) -> usize {
        self.recs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.recs.is_empty()
    }

    pub fn get(&self, id: usize) -> &VertexRec {
        &self.recs[id]
    }

    pub fn records(&self) -> &[VertexRec] {
        &self.recs
    }

    pub fn iter(&self) -> core::slice::Iter<'_, VertexRec> {
        self.recs.iter()
    }

    /// The witnessing subset recorded for vertex `id`.
    pub fn witness(&self, id: usize) -> &[usize] {
        &self.witnesses[id]
    }

    /// Looks a vertex up by its reduced coordinates.
    pub fn id_by_reduced(&self, reduced: &QVector) -> Option<usize> {
        self.by_reduced.get(reduced).copied()
    }

    pub fn contains_reduced(&self, reduced: &QVector) -> bool {
        self.by_reduced.contains_key(reduced)
    }
}

/// The lexicographically completed objective: the objective itself
/// followed by every reduced coordinate functional. Minima under this
/// ordering are unique points whenever they are attained, which makes
/// every attained subset minimum a vertex.
pub fn lex_objectives(norm: &NormalizedSpec) -> Vec<QVector> {
    let mut objs = Vec::with_capacity(norm.reduced_dim + 1);
    objs.push(norm.objective.clone());
    for k in 0..norm.reduced_dim {
        objs.push(QVector::unit(norm.reduced_dim, k));
    }
    objs
}

/// Lexicographic minimum of the completed objective over `P ∩ A_S`.
fn subset_min(norm: &NormalizedSpec, subset: &[usize]) -> LpOutcome {
    let hint = if subset.is_empty() { Some(&norm.feasible) } else { None };
    lex_min(&norm.face_instance(subset), &lex_objectives(norm), hint)
}

/// Cache of [`subset_min`] outcomes keyed by the sorted subset. Whole
/// size levels are filled at once (in parallel under the given
/// executor), so one cache serves vertex enumeration at growing budgets
/// and the completeness certificate's larger scan without re-solving.
#[derive(Clone, Debug, Default)]
pub struct SubsetMinCache {
    map: BTreeMap<Vec<usize>, LpOutcome>,
    covered: Option<usize>,
}

impl SubsetMinCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// Largest size level filled so far (all smaller levels included).
    pub fn covered_size(&self) -> Option<usize> {
        self.covered
    }

    /// Fills every missing level up to `size`.
    pub fn ensure(&mut self, norm: &NormalizedSpec, exec: &impl Exec, size: usize) {
        let n = norm.n_constraints;
        let start = match self.covered {
            Some(c) if c >= size => return,
            Some(c) => c + 1,
            None => 0,
        };
        for s in start..=size {
            if s > n {
                break;
            }
            let outcomes = exec.map(k_subsets(n, s), |sub| {
                let out = subset_min(norm, &sub);
                (sub, out)
            });
            for (sub, out) in outcomes {
                self.map.insert(sub, out);
            }
        }
        self.covered = Some(size);
    }

    pub fn get(&self, subset: &[usize]) -> Option<&LpOutcome> {
        self.map.get(subset)
    }

    /// All cached entries with `|S| <= size`, in subset order.
    pub fn iter_up_to(&self, size: usize) -> impl Iterator<Item = (&Vec<usize>, &LpOutcome)> {
        self.map.iter().filter(move |(k, _)| k.len() <= size)
    }
}

/// Enumerates the vertices of the thresholded complex through subsets of
/// at most `max_subset` constraints, reusing (and extending) a shared
/// outcome cache.
///
/// Every attained subset minimum is a vertex of `P`; it is kept when the
/// threshold admits its objective value. Returns all complex vertices
/// whenever `max_subset` is at least the complex dimension. A non-pointed
/// polyhedron or an objective unbounded below yields no vertices.
pub fn vertices_from_cache(
    norm: &NormalizedSpec,
    exec: &impl Exec,
    cache: &mut SubsetMinCache,
    max_subset: usize,
) -> VertexSet {
    if !norm.pointed || norm.ell_min == EllMin::UnboundedBelow {
        return VertexSet::default();
    }
    cache.ensure(norm, exec, max_subset);
    let inst = norm.instance();
    let mut seen: BTreeMap<QVector, ()> = BTreeMap::new();
    let mut pairs: Vec<(VertexRec, Vec<usize>)> = Vec::new();
    // walk levels smallest-first so each vertex records a smallest witness
    for s in 0..=max_subset.min(norm.n_constraints) {
        for sub in k_subsets(norm.n_constraints, s) {
            let out = cache.get(&sub).expect("level was just ensured");
            if let LpOutcome::Optimal { point, values } = out {
                let ell = &values[0] + &norm.objective_constant;
                if !norm.threshold.admits(&ell) {
                    continue;
                }
                if seen.contains_key(point) {
                    continue;
                }
                seen.insert(point.clone(), ());
                let active = inst.tight_set(point);
                debug_assert_eq!(norm.face_dim(&active), 0, "subset minima are vertices");
                pairs.push((
                    VertexRec {
                        point: norm.embed(point),
                        reduced: point.clone(),
                        active,
                        ell,
                    },
                    sub.clone(),
                ));
            }
        }
    }
    VertexSet::from_records(pairs)
}

/// [`vertices_from_cache`] with a private cache.
pub fn enumerate_vertices(norm: &NormalizedSpec, exec: &impl Exec, max_subset: usize) -> VertexSet {
    let mut cache = SubsetMinCache::new();
    vertices_from_cache(norm, exec, &mut cache, max_subset)
}

/// The counting bound on vertices of a `d`-dimensional thresholded
/// complex over `n` constraints in a `big_d`-dimensional pointed
/// polyhedron: `count <= C(n, d) - C(big_d, d) + 1`. The bound's
/// hypotheses — `d < big_d`, pointedness, threshold above the objective
/// minimum — are the caller's to check.
pub fn check_vertex_bound(n: usize, big_d: usize, d: usize, count: usize) -> bool {
    let bound = binomial(n, d) - binomial(big_d, d) + 1;
    BigInt::from(count) <= bound
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exec::Seq;
    use crate::geometry::{preprocess, Halfspace, PolyhedronSpec, Threshold};
    use crate::linalg::rat;
    use crate::lp::{verify_outcome, Sense};

    fn qv(vals: &[i64]) -> QVector {
        QVector::from_ints(vals)
    }

    fn hs(a: &[i64], b: i64) -> Halfspace {
        Halfspace::new(qv(a), rat(b, 1))
    }

    /// Unit square, objective -(x+y), threshold -1/2: only the three
    /// corners with coordinate sum above 1/2 stay.
    fn thresholded_square() -> PolyhedronSpec {
        PolyhedronSpec::new(
            2,
            vec![hs(&[1, 0], 0), hs(&[0, 1], 0), hs(&[-1, 0], -1), hs(&[0, -1], -1)],
            qv(&[-1, -1]),
            Threshold::Finite(rat(-1, 2)),
        )
    }

    #[test]
    fn thresholded_square_has_three_vertices() {
        let norm = preprocess(&thresholded_square()).unwrap();
        let vs = enumerate_vertices(&norm, &Seq, 1);
        let points: Vec<QVector> = vs.iter().map(|r| r.point.clone()).collect();
        assert_eq!(points, vec![qv(&[0, 1]), qv(&[1, 0]), qv(&[1, 1])]);
        let actives: Vec<Vec<usize>> = vs.iter().map(|r| r.active.clone()).collect();
        assert_eq!(actives, vec![vec![0, 3], vec![1, 2], vec![2, 3]]);
        let ells: Vec<Rational> = vs.iter().map(|r| r.ell.clone()).collect();
        assert_eq!(ells, vec![rat(-1, 1), rat(-1, 1), rat(-2, 1)]);
    }

    #[test]
    fn budget_zero_finds_the_global_minimum_only() {
        let norm = preprocess(&thresholded_square()).unwrap();
        let vs = enumerate_vertices(&norm, &Seq, 0);
        assert_eq!(vs.len(), 1);
        assert_eq!(vs.get(0).point, qv(&[1, 1]));
        assert_eq!(vs.witness(0), &[] as &[usize]);
    }

    #[test]
    fn budgets_grow_monotonically() {
        // same square without a threshold: budget 1 misses the corner
        // (0,0) (it needs two tight constraints), budget 2 finds it
        let mut spec = thresholded_square();
        spec.threshold = Threshold::Infinite;
        let norm = preprocess(&spec).unwrap();
        let mut cache = SubsetMinCache::new();
        let small = vertices_from_cache(&norm, &Seq, &mut cache, 1);
        let large = vertices_from_cache(&norm, &Seq, &mut cache, 2);
        assert_eq!(small.len(), 3);
        assert_eq!(large.len(), 4);
        for rec in small.iter() {
            assert!(large.contains_reduced(&rec.reduced));
        }
        assert!(large.contains_reduced(&qv(&[0, 0])));
    }

    #[test]
    fn fan_of_tangent_lines_has_consecutive_intersections() {
        // y >= s*x - s^2 for s in {0, 1, 2}: vertices at x = 1 and x = 3
        let spec = PolyhedronSpec::new(
            2,
            vec![hs(&[0, 1], 0), hs(&[-1, 1], -1), hs(&[-2, 1], -4)],
            qv(&[0, 1]),
            Threshold::Infinite,
        );
        let norm = preprocess(&spec).unwrap();
        let vs = enumerate_vertices(&norm, &Seq, 1);
        let points: Vec<QVector> = vs.iter().map(|r| r.point.clone()).collect();
        assert_eq!(points, vec![qv(&[1, 0]), qv(&[3, 2])]);
    }

    #[test]
    fn degenerate_inputs_have_no_vertices() {
        // half-plane: not pointed
        let spec = PolyhedronSpec::new(2, vec![hs(&[1, 0], 0)], qv(&[1, 0]), Threshold::Infinite);
        let norm = preprocess(&spec).unwrap();
        assert!(!norm.pointed);
        assert!(enumerate_vertices(&norm, &Seq, 2).is_empty());
        // quadrant with an objective unbounded below on it
        let spec = PolyhedronSpec::new(
            2,
            vec![hs(&[1, 0], 0), hs(&[0, 1], 0)],
            qv(&[-1, 0]),
            Threshold::Infinite,
        );
        let norm = preprocess(&spec).unwrap();
        assert!(norm.pointed);
        assert_eq!(norm.ell_min, EllMin::UnboundedBelow);
        assert!(enumerate_vertices(&norm, &Seq, 2).is_empty());
    }

    #[test]
    fn witnesses_reproduce_their_vertices() {
        let norm = preprocess(&thresholded_square()).unwrap();
        let vs = enumerate_vertices(&norm, &Seq, 1);
        let objs = lex_objectives(&norm);
        for (id, rec) in vs.iter().enumerate() {
            let inst = norm.face_instance(vs.witness(id));
            let out = lex_min(&inst, &objs, None);
            match &out {
                LpOutcome::Optimal { point, .. } => assert_eq!(point, &rec.reduced),
                other => panic!("witness no longer optimal: {:?}", other),
            }
            verify_outcome(&inst, &objs, &out, Sense::Minimize).unwrap();
        }
    }

    #[test]
    fn vertex_bound_formula() {
        // tight on the thresholded square: 3 <= C(4,1) - C(2,1) + 1 = 3
        assert!(check_vertex_bound(4, 2, 1, 3));
        assert!(!check_vertex_bound(4, 2, 1, 4));
        // budget zero always allows exactly one vertex
        assert!(check_vertex_bound(9, 5, 0, 1));
        assert!(!check_vertex_bound(9, 5, 0, 2));
        // the fan family meets the bound with equality: n-1 = C(n,1)-C(2,1)+1
        for n in 2..=10 {
            assert!(check_vertex_bound(n, 2, 1, n - 1));
            assert!(!check_vertex_bound(n, 2, 1, n));
        }
    }

    #[test]
    fn cache_levels_fill_incrementally() {
        let norm = preprocess(&thresholded_square()).unwrap();
        let mut cache = SubsetMinCache::new();
        assert_eq!(cache.covered_size(), None);
        cache.ensure(&norm, &Seq, 1);
        assert_eq!(cache.covered_size(), Some(1));
        assert_eq!(cache.iter_up_to(1).count(), 5); // {} and four singletons
        cache.ensure(&norm, &Seq, 2);
        assert_eq!(cache.iter_up_to(2).count(), 11); // plus C(4,2) pairs
        // budgets beyond n are harmless
        cache.ensure(&norm, &Seq, 9);
        assert_eq!(cache.covered_size(), Some(9));
        assert_eq!(cache.iter_up_to(9).count(), 16); // the full power set
    }
}
