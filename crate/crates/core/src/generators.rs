//! Instance generators for the standard test families.
//!
//! Each generator produces a plain [`PolyhedronSpec`] in a frozen
//! constraint order, so vertex and face counts (and full outputs) are
//! reproducible byte for byte.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::geometry::{is_bounded_face, preprocess, Halfspace, PolyhedronSpec, Threshold};
use crate::linalg::{QVector, Rational};

/// Unit hypercube `[0, 1]^D` with the objective "minus the coordinate
/// sum" and the threshold placed so that exactly the vertices with more
/// than `D - d` ones survive — that is, `sum C(D, i)` for `i = 0..=d` of
/// them, forming a complex of dimension `min(d, D)`.
///
/// Constraint order: `x_i >= 0` for `i = 0..D`, then `-x_i >= -1` in the
/// same coordinate order.
pub fn gen_hypercube(dim: usize, d: usize) -> PolyhedronSpec {
    let mut halfspaces = Vec::with_capacity(2 * dim);
    for k in 0..dim {
        halfspaces.push(Halfspace::new(QVector::unit(dim, k), Rational::zero()));
    }
    for k in 0..dim {
        halfspaces.push(Halfspace::new(
            QVector::unit(dim, k).neg(),
            -Rational::one(),
        ));
    }
    let objective = QVector::new(vec![-Rational::one(); dim]);
    // a vertex with k ones has objective value -k; keep -k < 1/2 - (D - d),
    // i.e. k >= D - d
    let bound = Rational::new(1.into(), 2.into()) - Rational::from_integer((dim - d.min(dim)).into());
    PolyhedronSpec::new(dim, halfspaces, objective, Threshold::Finite(bound))
}

/// Why a polytope cannot serve as the base of [`gen_cone`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConeError {
    /// The base has empty intersection.
    BaseEmpty,
    /// The base is unbounded, so the lift is not a pointed cone.
    BaseUnbounded,
    /// The base satisfies an implicit equality; the lift would contain a
    /// line through the would-be apex.
    BaseNotFullDimensional,
}

impl core::fmt::Display for ConeError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            ConeError::BaseEmpty => write!(f, "the cone base is empty"),
            ConeError::BaseUnbounded => write!(f, "the cone base is unbounded"),
            ConeError::BaseNotFullDimensional => {
                write!(f, "the cone base is not full-dimensional")
            }
        }
    }
}

impl core::error::Error for ConeError {}

/// Homogenization: lifts a full-dimensional polytope `{x : a_i·x >= b_i}`
/// in `D` variables to the cone `{(x, y) : a_i·x - b_i·y >= 0}` in `D+1`
/// variables, whose slice at `y = 1` is the base. The objective is the
/// lift coordinate `y` and there is no threshold, so the subcomplex of
/// the result is the apex alone (every other face is unbounded).
///
/// Constraint `i` of the result lifts constraint `i` of the base.
pub fn gen_cone(base: &PolyhedronSpec) -> Result<PolyhedronSpec, ConeError> {
    let norm = preprocess(base).map_err(|_| ConeError::BaseEmpty)?;
    if norm.reduced_dim < base.dim {
        return Err(ConeError::BaseNotFullDimensional);
    }
    if !is_bounded_face(&norm, &[]) {
        return Err(ConeError::BaseUnbounded);
    }
    let dim = base.dim + 1;
    let halfspaces = base
        .halfspaces
        .iter()
        .map(|h| {
            let mut coords = h.normal.coords().to_vec();
            coords.push(-h.rhs.clone());
            Halfspace::new(QVector::new(coords), Rational::zero())
        })
        .collect();
    let objective = QVector::unit(dim, dim - 1);
    Ok(PolyhedronSpec::new(dim, halfspaces, objective, Threshold::Infinite))
}

/// The region above a fan of lines tangent to a parabola: constraint `i`
/// is `y >= s_i·x - s_i^2` (the tangent to `y = x^2/4` with slope `s_i`),
/// the objective is the height `y`, and there is no threshold. Distinct
/// slopes, one of them nonpositive and one nonnegative, give a polyhedron
/// whose `n - 1` vertices are the consecutive tangent crossings
/// `(s_i + s_j, s_i·s_j)` of the sorted slopes.
pub fn gen_fan2d(slopes: &[Rational]) -> PolyhedronSpec {
    let halfspaces = slopes
        .iter()
        .map(|s| {
            Halfspace::new(
                QVector::new(vec![-s.clone(), Rational::one()]),
                -(s * s),
            )
        })
        .collect();
    let objective = QVector::new(vec![Rational::zero(), Rational::one()]);
    PolyhedronSpec::new(2, halfspaces, objective, Threshold::Infinite)
}

/// A validated finite metric: a symmetric matrix of rationals with zero
/// diagonal and nonnegative entries. Triangle-inequality violations are
/// not errors — they are reported by [`MetricInput::triangle_violations`]
/// so callers can warn.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricInput {
    n: usize,
    dist: Vec<Vec<Rational>>,
}

/// Hard validation failures for [`MetricInput::new`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MetricError {
    /// Row `row` has `len` entries instead of `n`.
    NotSquare { row: usize, len: usize, n: usize },
    /// Entries `(i, j)` and `(j, i)` differ.
    NotSymmetric { i: usize, j: usize },
    /// Entry `(i, i)` is nonzero.
    NonzeroDiagonal { i: usize },
    /// Entry `(i, j)` is negative.
    Negative { i: usize, j: usize },
}

impl core::fmt::Display for MetricError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            MetricError::NotSquare { row, len, n } => {
                write!(f, "row {} has {} entries, expected {}", row, len, n)
            }
            MetricError::NotSymmetric { i, j } => {
                write!(f, "entries ({}, {}) and ({}, {}) differ", i, j, j, i)
            }
            MetricError::NonzeroDiagonal { i } => write!(f, "entry ({}, {}) is nonzero", i, i),
            MetricError::Negative { i, j } => write!(f, "entry ({}, {}) is negative", i, j),
        }
    }
}

impl core::error::Error for MetricError {}

impl MetricInput {
    pub fn new(dist: Vec<Vec<Rational>>) -> Result<Self, MetricError> {
        let n = dist.len();
        for (row, r) in dist.iter().enumerate() {
            if r.len() != n {
                return Err(MetricError::NotSquare { row, len: r.len(), n });
            }
        }
        for i in 0..n {
            if !dist[i][i].is_zero() {
                return Err(MetricError::NonzeroDiagonal { i });
            }
            for j in (i + 1)..n {
                if dist[i][j] != dist[j][i] {
                    return Err(MetricError::NotSymmetric { i, j });
                }
                if dist[i][j] < Rational::zero() {
                    return Err(MetricError::Negative { i, j });
                }
            }
        }
        Ok(MetricInput { n, dist })
    }

    pub fn n_points(&self) -> usize {
        self.n
    }

    pub fn dist(&self, i: usize, j: usize) -> &Rational {
        &self.dist[i][j]
    }

    /// Triples `(i, j, k)` with `dist(i, k) > dist(i, j) + dist(j, k)`.
    pub fn triangle_violations(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                for k in 0..self.n {
                    if i != j && j != k && i != k {
                        let via = &self.dist[i][j] + &self.dist[j][k];
                        if self.dist[i][k] > via {
                            out.push((i, j, k));
                        }
                    }
                }
            }
        }
        out
    }
}

/// The tight-span polyhedron of a finite metric: one variable per point,
/// the pair constraints `x_i + x_j >= dist(i, j)` for `i < j` in
/// row-major order — `(0,1), (0,2), …, (0,n-1), (1,2), …` — optionally
/// followed by the nonnegativity cuts `x_i >= 0`, with the coordinate sum
/// as the objective and no threshold.
pub fn gen_tight_span(metric: &MetricInput, include_nonneg: bool) -> PolyhedronSpec {
    let n = metric.n_points();
    let mut halfspaces = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let normal = QVector::unit(n, i).add(&QVector::unit(n, j));
            halfspaces.push(Halfspace::new(normal, metric.dist(i, j).clone()));
        }
    }
    if include_nonneg {
        for i in 0..n {
            halfspaces.push(Halfspace::new(QVector::unit(n, i), Rational::zero()));
        }
    }
    let objective = QVector::new(vec![Rational::one(); n]);
    PolyhedronSpec::new(n, halfspaces, objective, Threshold::Infinite)
}

/// The lifted Voronoi polyhedron of points on the moment curve
/// `t -> (t, t^2, t^3)`: variables `(x_1, x_2, x_3, w)`, one constraint
/// `w - 2·p_k·x >= -|p_k|^2` per parameter (in input order), objective
/// `w`, no threshold. For `n >= 4` distinct parameters the polyhedron
/// has `C(n-2, 2)` vertices — the Voronoi vertices of the point set.
pub fn gen_moment_voronoi(ts: &[Rational]) -> PolyhedronSpec {
    let two = Rational::from_integer(2.into());
    let halfspaces = ts
        .iter()
        .map(|t| {
            let t2 = t * t;
            let t3 = &t2 * t;
            let normal = QVector::new(vec![
                -(&two * t),
                -(&two * &t2),
                -(&two * &t3),
                Rational::one(),
            ]);
            let rhs = -(&t2 + &t2 * &t2 + &t3 * &t3);
            Halfspace::new(normal, rhs)
        })
        .collect();
    let objective = QVector::unit(4, 3);
    PolyhedronSpec::new(4, halfspaces, objective, Threshold::Infinite)
}
