//! The polyhedron model and its normal form.
//!
//! A problem arrives as a [`PolyhedronSpec`]: `n` halfspaces `a·x >= b` in
//! `D` variables, a linear objective, and an upper threshold. Before any
//! enumeration runs, [`preprocess`] puts the polyhedron `P` into a normal
//! form that the rest of the crate works with:
//!
//! * emptiness is detected (with a Farkas certificate) and reported as an
//!   error;
//! * constraints that hold with equality everywhere on `P` (implicit
//!   equalities) are found — they belong to *every* active set;
//! * `P` is restricted to its affine hull, so downstream code always sees
//!   a full-dimensional polyhedron in `D' = dim(P)` reduced coordinates;
//! * constraints whose normal vanishes on the affine hull but that are
//!   strictly slack (dropped constraints) are flagged — they belong to
//!   *no* active set;
//! * pointedness (existence of vertices) and the exact minimum of the
//!   objective are computed once and recorded.
//!
//! The reduced constraint list stays index-aligned with the input, so an
//! active set in reduced coordinates *is* an active set of the original
//! system: implicit equalities reduce to the vacuous-but-always-tight row
//! `0·y >= 0`, dropped constraints to the never-tight row `0·y >= negative`.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::linalg::{solve_system, Flat, QMatrix, QVector, Rational};
use crate::lp::{lex_max, lex_min, FarkasCertificate, LpInstance, LpOutcome};

/// One closed halfspace `normal·x >= rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Halfspace {
    pub normal: QVector,
    pub rhs: Rational,
}

impl Halfspace {
    pub fn new(normal: QVector, rhs: Rational) -> Self {
        Halfspace { normal, rhs }
    }
}

/// The strict upper bound the objective is compared against.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Threshold {
    Finite(Rational),
    Infinite,
}

impl Threshold {
    /// Whether `value` lies strictly below the threshold.
    pub fn admits(&self, value: &Rational) -> bool {
        match self {
            Threshold::Finite(b) => value < b,
            Threshold::Infinite => true,
        }
    }
}

/// Exact minimum of the objective over the polyhedron.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EllMin {
    Finite(Rational),
    UnboundedBelow,
}

/// A polyhedron `P = { x : a_i·x >= b_i }` with a linear objective and a
/// threshold, exactly as the caller posed it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyhedronSpec {
    /// Number of ambient variables `D`.
    pub dim: usize,
    /// The halfspaces, in input order; indices into this list are the
    /// constraint names used everywhere else.
    pub halfspaces: Vec<Halfspace>,
    /// Coefficients of the objective `l(x) = objective·x`.
    pub objective: QVector,
    /// Strict upper bound `B` for the objective on reported faces.
    pub threshold: Threshold,
}

impl PolyhedronSpec {
    pub fn new(
        dim: usize,
        halfspaces: Vec<Halfspace>,
        objective: QVector,
        threshold: Threshold,
    ) -> Self {
        PolyhedronSpec {
            dim,
            halfspaces,
            objective,
            threshold,
        }
    }

    fn check_dims(&self) -> Result<(), PreprocessError> {
        if self.objective.dim() != self.dim {
            return Err(PreprocessError::DimensionMismatch {
                expected: self.dim,
                found: self.objective.dim(),
            });
        }
        for h in &self.halfspaces {
            if h.normal.dim() != self.dim {
                return Err(PreprocessError::DimensionMismatch {
                    expected: self.dim,
                    found: h.normal.dim(),
                });
            }
        }
        Ok(())
    }

    /// The constraint system as an LP instance in ambient coordinates.
    pub fn instance(&self) -> LpInstance {
        LpInstance::new(
            self.dim,
            self.halfspaces
                .iter()
                .map(|h| (h.normal.clone(), h.rhs.clone()))
                .collect(),
            Vec::new(),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PreprocessError {
    /// The halfspaces have empty intersection; the certificate proves it.
    EmptyPolyhedron(FarkasCertificate),
    /// An objective or normal vector has the wrong number of entries.
    DimensionMismatch { expected: usize, found: usize },
}

impl core::fmt::Display for PreprocessError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            PreprocessError::EmptyPolyhedron(_) => {
                write!(f, "the polyhedron is empty (certified by Farkas multipliers)")
            }
            PreprocessError::DimensionMismatch { expected, found } => write!(
                f,
                "dimension mismatch: expected vectors of length {}, found {}",
                expected, found
            ),
        }
    }
}

impl core::error::Error for PreprocessError {}

/// The normal form of a nonempty polyhedron: restricted to its affine
/// hull, with every constraint classified and rewritten in the reduced
/// coordinates. See the module documentation for the index-alignment
/// convention.
#[derive(Clone, Debug)]
pub struct NormalizedSpec {
    /// Ambient dimension `D` of the input.
    pub ambient_dim: usize,
    /// Number of input constraints.
    pub n_constraints: usize,
    /// The affine hull of `P` inside ambient space; reduced coordinates
    /// are coordinates along this flat's direction basis.
    pub flat: Flat,
    /// `D' = dim aff(P)`.
    pub reduced_dim: usize,
    /// Constraints tight at every point of `P` (sorted); members of every
    /// active set.
    pub implicit_equalities: Vec<usize>,
    /// Constraints strictly slack at every point of `P` whose normal
    /// vanishes on the affine hull (sorted); members of no active set.
    pub dropped: Vec<usize>,
    /// All `n` constraints rewritten in reduced coordinates, index-aligned
    /// with the input.
    pub reduced: Vec<Halfspace>,
    /// The objective's linear part in reduced coordinates.
    pub objective: QVector,
    /// The objective's value at the flat's basepoint, so that
    /// `l(x) = objective·y + objective_constant` for `x = embed(y)`.
    pub objective_constant: Rational,
    pub threshold: Threshold,
    /// A feasible point in reduced coordinates.
    pub feasible: QVector,
    /// Whether `P` has vertices (no line fits inside `P`).
    pub pointed: bool,
    /// Exact minimum of the objective over all of `P`.
    pub ell_min: EllMin,
}

impl NormalizedSpec {
    /// The reduced constraint system; tight sets computed on it use
    /// original constraint indices directly.
    pub fn instance(&self) -> LpInstance {
        LpInstance::new(
            self.reduced_dim,
            self.reduced
                .iter()
                .map(|h| (h.normal.clone(), h.rhs.clone()))
                .collect(),
            Vec::new(),
        )
    }

    /// The reduced system with the constraints in `active` forced to
    /// equality — the face selected by that active set (infeasible when
    /// no point of `P` has them all tight).
    pub fn face_instance(&self, active: &[usize]) -> LpInstance {
        let mut inst = self.instance();
        inst.equalities = active
            .iter()
            .map(|&i| {
                let h = &self.reduced[i];
                (h.normal.clone(), h.rhs.clone())
            })
            .collect();
        inst
    }

    /// Maps reduced coordinates back to an ambient point.
    pub fn embed(&self, y: &QVector) -> QVector {
        self.flat.embed(y)
    }

    /// Objective value at the reduced point `y`.
    pub fn ell_at(&self, y: &QVector) -> Rational {
        self.objective.dot(y) + &self.objective_constant
    }

    /// Dimension of the face with the given active set: `D'` minus the
    /// rank of the active reduced normals.
    pub fn face_dim(&self, active: &[usize]) -> usize {
        let rows: Vec<QVector> = active
            .iter()
            .map(|&i| self.reduced[i].normal.clone())
            .collect();
        self.reduced_dim - QMatrix::new(rows, self.reduced_dim).rank()
    }
}

/// Normalizes a polyhedron spec; see the module documentation for the
/// steps. Errors on malformed dimensions or an empty polyhedron.
pub fn preprocess(spec: &PolyhedronSpec) -> Result<NormalizedSpec, PreprocessError> {
    spec.check_dims()?;
    let d = spec.dim;
    let n = spec.halfspaces.len();
    let ambient = spec.instance();

    // feasibility
    let x_feas = match lex_min(&ambient, &[], None) {
        LpOutcome::Infeasible(cert) => return Err(PreprocessError::EmptyPolyhedron(cert)),
        LpOutcome::Optimal { point, .. } => point,
        LpOutcome::Unbounded { .. } => unreachable!("feasibility run has no objective"),
    };

    // implicit equalities: maximize a uniform slack margin t over
    // (x, t) with a_i·x - t >= b_i; a positive or unbounded margin means
    // P has a point where every constraint is strictly slack
    let margin_inst = LpInstance::new(
        d + 1,
        spec.halfspaces
            .iter()
            .map(|h| {
                let mut row: Vec<Rational> = h.normal.coords().to_vec();
                row.push(-Rational::one());
                (QVector::new(row), h.rhs.clone())
            })
            .collect(),
        Vec::new(),
    );
    let margin_obj = QVector::unit(d + 1, d);
    let margin_hint = {
        let mut c: Vec<Rational> = x_feas.coords().to_vec();
        c.push(Rational::zero());
        QVector::new(c)
    };
    let implicit: Vec<usize> = match lex_max(&margin_inst, &[margin_obj], Some(&margin_hint)) {
        LpOutcome::Unbounded { .. } => Vec::new(),
        LpOutcome::Optimal { point, values } => {
            if values[0].is_zero() {
                // no strictly interior point; test each constraint that is
                // tight at the margin optimum individually
                let x_star = QVector::new(point.coords()[..d].to_vec());
                let mut found = Vec::new();
                for (i, h) in spec.halfspaces.iter().enumerate() {
                    if h.normal.dot(&x_star) != h.rhs {
                        continue;
                    }
                    match lex_max(&ambient, &[h.normal.clone()], Some(&x_star)) {
                        LpOutcome::Optimal { values, .. } if values[0] == h.rhs => {
                            found.push(i);
                        }
                        _ => {}
                    }
                }
                found
            } else {
                Vec::new()
            }
        }
        LpOutcome::Infeasible(_) => unreachable!("margin system contains a feasible point"),
    };

    // affine hull: the implicit equalities cut it out of ambient space
    let eq_rows: Vec<QVector> = implicit
        .iter()
        .map(|&i| spec.halfspaces[i].normal.clone())
        .collect();
    let eq_rhs = QVector::new(implicit.iter().map(|&i| spec.halfspaces[i].rhs.clone()).collect());
    let flat = solve_system(&QMatrix::new(eq_rows, d), &eq_rhs)
        .expect("implicit equalities hold on a nonempty set");
    let reduced_dim = flat.dim();

    // rewrite every constraint in reduced coordinates (index-aligned)
    let reduced: Vec<Halfspace> = spec
        .halfspaces
        .iter()
        .map(|h| {
            let normal = QVector::new(flat.directions().iter().map(|u| h.normal.dot(u)).collect());
            let rhs = &h.rhs - h.normal.dot(flat.basepoint());
            Halfspace { normal, rhs }
        })
        .collect();
    let dropped: Vec<usize> = reduced
        .iter()
        .enumerate()
        .filter(|(_, h)| h.normal.is_zero() && !h.rhs.is_zero())
        .map(|(i, _)| i)
        .collect();

    let objective = QVector::new(
        flat.directions().iter().map(|u| spec.objective.dot(u)).collect(),
    );
    let objective_constant = spec.objective.dot(flat.basepoint());

    let feasible = flat
        .coordinates(&x_feas)
        .expect("feasible point lies on the affine hull");

    let pointed = {
        let rows: Vec<QVector> = reduced.iter().map(|h| h.normal.clone()).collect();
        QMatrix::new(rows, reduced_dim).rank() == reduced_dim
    };

    let mut norm = NormalizedSpec {
        ambient_dim: d,
        n_constraints: n,
        flat,
        reduced_dim,
        implicit_equalities: implicit,
        dropped,
        reduced,
        objective,
        objective_constant,
        threshold: spec.threshold.clone(),
        feasible,
        pointed,
        ell_min: EllMin::UnboundedBelow,
    };
    norm.ell_min = match lex_min(&norm.instance(), &[norm.objective.clone()], Some(&norm.feasible))
    {
        LpOutcome::Optimal { values, .. } => {
            EllMin::Finite(values.into_iter().next().unwrap() + &norm.objective_constant)
        }
        LpOutcome::Unbounded { .. } => EllMin::UnboundedBelow,
        LpOutcome::Infeasible(_) => unreachable!("polyhedron already known nonempty"),
    };
    Ok(norm)
}

/// The closed active set of the smallest face of `P` containing
/// `P ∩ seed`: exactly the constraints tight on every point of that
/// intersection. Returns `None` when the intersection is empty. `seed`
/// lives in reduced coordinates.
///
/// A constraint that is slack at any single point of `P ∩ seed` is not
/// tight on the whole set, so each candidate needs at most one LP: is the
/// constraint's maximum over `P ∩ seed` still at its bound?
pub fn minimal_face(norm: &NormalizedSpec, seed: &Flat) -> Option<Vec<usize>> {
    let mut inst = norm.instance();
    for nrm in seed.normal_basis() {
        let rhs = nrm.dot(seed.basepoint());
        inst.equalities.push((nrm, rhs));
    }
    let witness = match lex_min(&inst, &[], None) {
        LpOutcome::Infeasible(_) => return None,
        LpOutcome::Optimal { point, .. } => point,
        LpOutcome::Unbounded { .. } => unreachable!("feasibility run has no objective"),
    };
    let mut active = Vec::new();
    for (i, h) in norm.reduced.iter().enumerate() {
        if h.normal.dot(&witness) != h.rhs {
            continue;
        }
        // Tight at the witness. Constant along the seed directions means
        // tight on all of P ∩ seed without solving anything.
        if seed.directions().iter().all(|u| h.normal.dot(u).is_zero()) {
            active.push(i);
            continue;
        }
        match lex_max(&inst, &[h.normal.clone()], Some(&witness)) {
            LpOutcome::Optimal { values, .. } if values[0] == h.rhs => active.push(i),
            _ => {}
        }
    }
    Some(active)
}

/// True when the face selected by `active` is bounded: its recession cone
/// `{y : a_i·y = 0 (i ∈ active), a_j·y >= 0 (otherwise)}` contains only
/// the origin, tested by maximizing and minimizing each coordinate over
/// the cone. Any nonzero recession direction makes some coordinate LP
/// unbounded, so the test short-circuits on the first such outcome.
pub fn is_bounded_face(norm: &NormalizedSpec, active: &[usize]) -> bool {
    let active_set: BTreeSet<usize> = active.iter().copied().collect();
    let mut ineqs = Vec::new();
    let mut eqs = Vec::new();
    for (i, h) in norm.reduced.iter().enumerate() {
        if active_set.contains(&i) {
            eqs.push((h.normal.clone(), Rational::zero()));
        } else {
            ineqs.push((h.normal.clone(), Rational::zero()));
        }
    }
    let cone = LpInstance::new(norm.reduced_dim, ineqs, eqs);
    let origin = QVector::zeros(norm.reduced_dim);
    for k in 0..norm.reduced_dim {
        let obj = [QVector::unit(norm.reduced_dim, k)];
        for maximize in [true, false] {
            let out = if maximize {
                lex_max(&cone, &obj, Some(&origin))
            } else {
                lex_min(&cone, &obj, Some(&origin))
            };
            match out {
                LpOutcome::Unbounded { .. } => return false,
                LpOutcome::Optimal { values, .. } => {
                    // a cone optimum away from zero would scale to
                    // unboundedness, so this cannot fire; stay honest
                    if !values[0].is_zero() {
                        return false;
                    }
                }
                LpOutcome::Infeasible(_) => {
                    unreachable!("the origin lies in every recession cone")
                }
            }
        }
    }
    true
}

/// Threshold membership for the nonempty face selected by `active`,
/// together with the attained objective maximum when there is one.
///
/// The objective must attain its minimum on the face, and its maximum
/// must be attained and admitted by the threshold (a finite threshold
/// admits strictly smaller values; an infinite one admits any attained
/// maximum). `hint` is an optional feasible warm start for the face.
pub fn face_passes_threshold(
    norm: &NormalizedSpec,
    active: &[usize],
    hint: Option<&QVector>,
) -> (bool, Option<Rational>) {
    let inst = norm.face_instance(active);
    let obj = [norm.objective.clone()];
    let ell_max = match lex_max(&inst, &obj, hint) {
        LpOutcome::Optimal { values, .. } => {
            values.into_iter().next().unwrap() + &norm.objective_constant
        }
        _ => return (false, None),
    };
    let min_attained = matches!(lex_min(&inst, &obj, hint), LpOutcome::Optimal { .. });
    (min_attained && norm.threshold.admits(&ell_max), Some(ell_max))
}
