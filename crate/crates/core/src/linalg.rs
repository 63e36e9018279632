//! Exact rational vectors, matrices, Gaussian elimination and affine flats.
//!
//! All arithmetic is arbitrary-precision `BigRational`; elimination uses
//! first-nonzero pivot selection, which keeps every computation exact and
//! deterministic (no magnitude-based pivoting, no floating point anywhere).

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational scalar, always in lowest terms with a
/// positive denominator (maintained by the underlying type).
pub type Rational = num_rational::BigRational;

/// Convenience constructor: the rational `n/d`. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    assert!(d != 0, "rational with zero denominator");
    Rational::new(n.into(), d.into())
}

fn rzero() -> Rational {
    Rational::zero()
}

/// Dense vector of rationals. Comparison is lexicographic by coordinates,
/// which is what canonical vertex ordering relies on.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct QVector {
    coords: Vec<Rational>,
}

impl QVector {
    pub fn new(coords: Vec<Rational>) -> Self {
        QVector { coords }
    }

    pub fn zeros(dim: usize) -> Self {
        QVector {
            coords: vec![rzero(); dim],
        }
    }

    pub fn from_ints(vals: &[i64]) -> Self {
        QVector {
            coords: vals.iter().map(|&v| rat(v, 1)).collect(),
        }
    }

    /// Standard basis vector `e_i` in `dim` dimensions.
    pub fn unit(dim: usize, i: usize) -> Self {
        assert!(i < dim);
        let mut v = Self::zeros(dim);
        v.coords[i] = Rational::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coord(&self, i: usize) -> &Rational {
        &self.coords[i]
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Rational> {
        self.coords.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn dot(&self, other: &QVector) -> Rational {
        assert_eq!(self.dim(), other.dim(), "dot of mismatched dimensions");
        let mut acc = rzero();
        for (a, b) in self.coords.iter().zip(other.coords.iter()) {
            if !a.is_zero() && !b.is_zero() {
                acc += a * b;
            }
        }
        acc
    }

    pub fn add(&self, other: &QVector) -> QVector {
        assert_eq!(self.dim(), other.dim());
        QVector {
            coords: self
                .coords
                .iter()
                .zip(other.coords.iter())
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &QVector) -> QVector {
        assert_eq!(self.dim(), other.dim());
        QVector {
            coords: self
                .coords
                .iter()
                .zip(other.coords.iter())
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, k: &Rational) -> QVector {
        QVector {
            coords: self.coords.iter().map(|a| a * k).collect(),
        }
    }

    pub fn neg(&self) -> QVector {
        QVector {
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }
}

impl fmt::Display for QVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for QVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Dense rectangular matrix of rationals, stored row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QMatrix {
    rows: Vec<QVector>,
    n_cols: usize,
}

impl QMatrix {
    /// Builds a matrix from rows; all rows must have equal length.
    /// `n_cols` disambiguates the zero-row case.
    pub fn new(rows: Vec<QVector>, n_cols: usize) -> Self {
        for r in &rows {
            assert_eq!(r.dim(), n_cols, "ragged matrix rows");
        }
        QMatrix { rows, n_cols }
    }

    pub fn identity(n: usize) -> Self {
        QMatrix {
            rows: (0..n).map(|i| QVector::unit(n, i)).collect(),
            n_cols: n,
        }
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn row(&self, i: usize) -> &QVector {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[QVector] {
        &self.rows
    }

    pub fn transpose(&self) -> QMatrix {
        let mut rows = Vec::with_capacity(self.n_cols);
        for j in 0..self.n_cols {
            rows.push(QVector::new(
                self.rows.iter().map(|r| r.coord(j).clone()).collect(),
            ));
        }
        QMatrix {
            rows,
            n_cols: self.n_rows(),
        }
    }

    /// Matrix rank via exact elimination.
    pub fn rank(&self) -> usize {
        let mut work: Vec<Vec<Rational>> =
            self.rows.iter().map(|r| r.coords().to_vec()).collect();
        rref_in_place(&mut work, self.n_cols).len()
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &QVector) -> QVector {
        QVector::new(self.rows.iter().map(|r| r.dot(v)).collect())
    }
}

/// In-place reduced row echelon form over columns `0..width` (columns at
/// `width` and beyond ride along as an augmented part and are never pivoted
/// on). Pivot selection: columns left to right, first row with a nonzero
/// entry. Returns the pivot column of each pivot row; pivot rows are moved
/// to the top in order.
fn rref_in_place(rows: &mut [Vec<Rational>], width: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut next_row = 0usize;
    for col in 0..width {
        if next_row == rows.len() {
            break;
        }
        let Some(pr) = (next_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(next_row, pr);
        // normalize the pivot row
        let inv = {
            let p = &rows[next_row][col];
            Rational::one() / p.clone()
        };
        for x in rows[next_row].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        // eliminate the pivot column from every other row
        for r in 0..rows.len() {
            if r == next_row || rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col].clone();
            // split borrow: clone the pivot row's relevant entries lazily
            let pivot_row = rows[next_row].clone();
            let target = &mut rows[r];
            for (x, p) in target.iter_mut().zip(pivot_row.iter()) {
                if !p.is_zero() {
                    *x -= &factor * p;
                }
            }
        }
        pivots.push(col);
        next_row += 1;
    }
    pivots
}

/// An affine flat `{ basepoint + span(directions) }` in R^dim.
///
/// Directions are kept as a canonical reduced-row-echelon basis, so two
/// equal flats have identical direction matrices. The empty set is not a
/// `Flat`; operations that can produce an empty intersection return
/// `Option<Flat>` with `None` as the distinguished empty outcome.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Flat {
    basepoint: QVector,
    directions: Vec<QVector>, // RREF rows, linearly independent
    pivot_cols: Vec<usize>,
}

impl Flat {
    /// Builds a flat through `basepoint` spanned by `directions`
    /// (dependent or zero directions are reduced away).
    pub fn new(basepoint: QVector, directions: Vec<QVector>) -> Self {
        let dim = basepoint.dim();
        let mut work: Vec<Vec<Rational>> = directions
            .into_iter()
            .map(|d| {
                assert_eq!(d.dim(), dim, "direction dimension mismatch");
                d.coords().to_vec()
            })
            .collect();
        let pivot_cols = rref_in_place(&mut work, dim);
        let directions = work
            .into_iter()
            .take(pivot_cols.len())
            .map(QVector::new)
            .collect();
        Flat {
            basepoint,
            directions,
            pivot_cols,
        }
    }

    /// The flat consisting of a single point.
    pub fn point(p: QVector) -> Self {
        Flat {
            basepoint: p,
            directions: Vec::new(),
            pivot_cols: Vec::new(),
        }
    }

    /// The whole ambient space R^dim.
    pub fn full_space(dim: usize) -> Self {
        Flat::new(QVector::zeros(dim), (0..dim).map(|i| QVector::unit(dim, i)).collect())
    }

    pub fn dim(&self) -> usize {
        self.directions.len()
    }

    /// Dimension of the ambient space the flat lives in.
    pub fn ambient_dim(&self) -> usize {
        self.basepoint.dim()
    }

    pub fn basepoint(&self) -> &QVector {
        &self.basepoint
    }

    pub fn directions(&self) -> &[QVector] {
        &self.directions
    }

    /// Reduces `v` against the direction basis; returns the remainder.
    /// The remainder is zero exactly when `v` lies in the span.
    fn reduce_vector(&self, v: &QVector) -> QVector {
        let mut rem = v.clone();
        for (row, &pc) in self.directions.iter().zip(self.pivot_cols.iter()) {
            let c = rem.coord(pc).clone();
            if !c.is_zero() {
                rem = rem.sub(&row.scale(&c));
            }
        }
        rem
    }

    pub fn contains_point(&self, p: &QVector) -> bool {
        self.reduce_vector(&p.sub(&self.basepoint)).is_zero()
    }

    pub fn contains_direction(&self, v: &QVector) -> bool {
        self.reduce_vector(v).is_zero()
    }

    /// Whether the two flats are the same set of points.
    pub fn same_flat(&self, other: &Flat) -> bool {
        self.directions == other.directions
            && self.contains_point(&other.basepoint)
    }

    /// The smallest flat containing `self` and `p`. The boolean reports
    /// whether the dimension grew (false means `p` was already inside).
    pub fn with_point(&self, p: &QVector) -> (Flat, bool) {
        let rem = self.reduce_vector(&p.sub(&self.basepoint));
        match rem.iter().position(|c| !c.is_zero()) {
            None => (self.clone(), false),
            Some(col) => {
                let lead = rem.coord(col).clone();
                let new_row = rem.scale(&(Rational::one() / lead));
                // keep the basis in reduced echelon form: clear `col` from
                // existing rows, then insert the new row in pivot order
                let mut directions: Vec<QVector> = self
                    .directions
                    .iter()
                    .map(|row| {
                        let c = row.coord(col).clone();
                        if c.is_zero() {
                            row.clone()
                        } else {
                            row.sub(&new_row.scale(&c))
                        }
                    })
                    .collect();
                let mut pivot_cols = self.pivot_cols.clone();
                let at = pivot_cols
                    .iter()
                    .position(|&pc| pc > col)
                    .unwrap_or(pivot_cols.len());
                directions.insert(at, new_row);
                pivot_cols.insert(at, col);
                (
                    Flat {
                        basepoint: self.basepoint.clone(),
                        directions,
                        pivot_cols,
                    },
                    true,
                )
            }
        }
    }

    /// Inverse of [`Flat::embed`]: the reduced coordinates of `p`, or
    /// `None` when `p` does not lie on the flat. Because the direction
    /// basis is in reduced echelon form, the coordinate of direction `k`
    /// is simply the entry of `p - basepoint` at that direction's pivot
    /// column.
    pub fn coordinates(&self, p: &QVector) -> Option<QVector> {
        let d = p.sub(&self.basepoint);
        let y = QVector::new(
            self.pivot_cols
                .iter()
                .map(|&pc| d.coord(pc).clone())
                .collect(),
        );
        if self.embed(&y) == *p {
            Some(y)
        } else {
            None
        }
    }

    /// Maps reduced coordinates `y` to the ambient point
    /// `basepoint + sum(y_i * direction_i)`.
    pub fn embed(&self, y: &QVector) -> QVector {
        assert_eq!(y.dim(), self.dim());
        let mut p = self.basepoint.clone();
        for (c, d) in y.iter().zip(self.directions.iter()) {
            if !c.is_zero() {
                p = p.add(&d.scale(c));
            }
        }
        p
    }

    /// A basis of the linear space orthogonal to the flat's directions;
    /// the flat equals `{ x : n·x = n·basepoint for every returned n }`.
    pub fn normal_basis(&self) -> Vec<QVector> {
        let m = QMatrix::new(self.directions.clone(), self.ambient_dim());
        nullspace(&m)
    }
}

/// Solves `m x = rhs` exactly. Returns the full solution flat, or `None`
/// when the system is inconsistent.
pub fn solve_system(m: &QMatrix, rhs: &QVector) -> Option<Flat> {
    solve_system_certified(m, rhs).ok()
}

/// Like [`solve_system`], but an inconsistent system returns a certificate:
/// row multipliers `lam` with `lam^T m = 0` and `lam · rhs = 1`.
pub fn solve_system_certified(m: &QMatrix, rhs: &QVector) -> Result<Flat, QVector> {
    assert_eq!(m.n_rows(), rhs.dim(), "rhs length mismatch");
    let n = m.n_cols();
    let rows_n = m.n_rows();
    // augmented layout: [ system | rhs | row-op tracker (identity) ]
    let mut work: Vec<Vec<Rational>> = Vec::with_capacity(rows_n);
    for (i, row) in m.rows().iter().enumerate() {
        let mut w = Vec::with_capacity(n + 1 + rows_n);
        w.extend(row.coords().iter().cloned());
        w.push(rhs.coord(i).clone());
        for j in 0..rows_n {
            w.push(if i == j { Rational::one() } else { rzero() });
        }
        work.push(w);
    }
    let pivots = rref_in_place(&mut work, n);
    // inconsistency: a row with zero system part but nonzero rhs
    for row in work.iter().skip(pivots.len()) {
        if !row[n].is_zero() {
            let scale = Rational::one() / row[n].clone();
            let lam = QVector::new(
                (0..rows_n).map(|j| &row[n + 1 + j] * &scale).collect(),
            );
            return Err(lam);
        }
    }
    // particular solution: free coordinates zero, pivot coordinates from rhs
    let mut base = QVector::zeros(n);
    for (r, &pc) in pivots.iter().enumerate() {
        base = {
            let mut c = base.coords().to_vec();
            c[pc] = work[r][n].clone();
            QVector::new(c)
        };
    }
    // nullspace basis: one vector per free column
    let mut directions = Vec::new();
    for free in 0..n {
        if pivots.contains(&free) {
            continue;
        }
        let mut d = vec![rzero(); n];
        d[free] = Rational::one();
        for (r, &pc) in pivots.iter().enumerate() {
            d[pc] = -work[r][free].clone();
        }
        directions.push(QVector::new(d));
    }
    Ok(Flat::new(base, directions))
}

/// Basis of the nullspace `{ x : m x = 0 }`.
pub fn nullspace(m: &QMatrix) -> Vec<QVector> {
    let flat = solve_system(m, &QVector::zeros(m.n_rows()))
        .expect("homogeneous system is always consistent");
    flat.directions().to_vec()
}

/// The affine hull of a set of points: the smallest flat containing all of
/// them. Returns `None` for the empty input (the empty set has no flat).
pub fn affine_hull(points: &[QVector]) -> Option<Flat> {
    let (first, rest) = points.split_first()?;
    let mut flat = Flat::point(first.clone());
    for p in rest {
        flat = flat.with_point(p).0;
    }
    Some(flat)
}

/// The intersection of two flats; `None` when they are disjoint.
pub fn flat_intersection(f1: &Flat, f2: &Flat) -> Option<Flat> {
    assert_eq!(f1.ambient_dim(), f2.ambient_dim());
    let dim = f1.ambient_dim();
    let k1 = f1.dim();
    // solve p1 + U s = p2 + V t as D equations in the unknowns (s, t)
    let mut rows = Vec::with_capacity(dim);
    for r in 0..dim {
        let mut row = Vec::with_capacity(k1 + f2.dim());
        for u in f1.directions() {
            row.push(u.coord(r).clone());
        }
        for v in f2.directions() {
            row.push(-v.coord(r).clone());
        }
        rows.push(QVector::new(row));
    }
    let m = QMatrix::new(rows, k1 + f2.dim());
    let rhs = f2.basepoint().sub(f1.basepoint());
    let sol = solve_system(&m, &rhs)?;
    let s0 = QVector::new(sol.basepoint().coords()[..k1].to_vec());
    let mut basepoint = f1.basepoint().clone();
    for (c, u) in s0.iter().zip(f1.directions()) {
        if !c.is_zero() {
            basepoint = basepoint.add(&u.scale(c));
        }
    }
    let directions = sol
        .directions()
        .iter()
        .map(|d| {
            let mut v = QVector::zeros(dim);
            for (c, u) in d.coords()[..k1].iter().zip(f1.directions()) {
                if !c.is_zero() {
                    v = v.add(&u.scale(c));
                }
            }
            v
        })
        .collect();
    Some(Flat::new(basepoint, directions))
}

/// Exact sign test helpers used throughout the crate.
pub fn is_negative(r: &Rational) -> bool {
    r.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qv(vals: &[i64]) -> QVector {
        QVector::from_ints(vals)
    }

    #[test]
    fn solve_identity_system() {
        let m = QMatrix::identity(2);
        let f = solve_system(&m, &qv(&[3, 4])).unwrap();
        assert_eq!(f.dim(), 0);
        assert_eq!(f.basepoint(), &qv(&[3, 4]));
    }

    #[test]
    fn solve_underdetermined_line() {
        // x + y = 1 in two unknowns: a 1-flat
        let m = QMatrix::new(vec![qv(&[1, 1])], 2);
        let f = solve_system(&m, &qv(&[1])).unwrap();
        assert_eq!(f.dim(), 1);
        assert!(f.contains_point(&qv(&[1, 0])));
        assert!(f.contains_point(&qv(&[0, 1])));
        assert!(!f.contains_point(&qv(&[1, 1])));
    }

    #[test]
    fn solve_inconsistent_with_certificate() {
        let m = QMatrix::new(vec![qv(&[1, 1]), qv(&[1, 1])], 2);
        let rhs = qv(&[1, 2]);
        assert!(solve_system(&m, &rhs).is_none());
        let lam = solve_system_certified(&m, &rhs).unwrap_err();
        // lam^T M = 0 and lam . rhs = 1
        for j in 0..2 {
            let mut acc = Rational::zero();
            for i in 0..2 {
                acc += lam.coord(i) * m.row(i).coord(j);
            }
            assert!(acc.is_zero());
        }
        assert!((lam.dot(&rhs)).is_one());
    }

    #[test]
    fn solve_zero_rows_gives_full_space() {
        let m = QMatrix::new(vec![], 3);
        let f = solve_system(&m, &QVector::zeros(0)).unwrap();
        assert_eq!(f.dim(), 3);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(QMatrix::new(vec![qv(&[1, 2]), qv(&[2, 4])], 2).rank(), 1);
        assert_eq!(QMatrix::identity(3).rank(), 3);
        assert_eq!(QMatrix::new(vec![qv(&[0, 0])], 2).rank(), 0);
        let m = QMatrix::new(vec![qv(&[1, 2, 3]), qv(&[4, 5, 6]), qv(&[5, 7, 9])], 3);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn affine_hull_examples() {
        assert!(affine_hull(&[]).is_none());
        let f = affine_hull(&[qv(&[2, 2])]).unwrap();
        assert_eq!(f.dim(), 0);
        let f = affine_hull(&[qv(&[0, 0]), qv(&[1, 1]), qv(&[2, 2])]).unwrap();
        assert_eq!(f.dim(), 1);
        assert!(f.contains_point(&qv(&[3, 3])));
        let f = affine_hull(&[qv(&[0, 0]), qv(&[1, 0]), qv(&[0, 1])]).unwrap();
        assert_eq!(f.dim(), 2);
    }

    #[test]
    fn flat_intersection_examples() {
        // two crossing lines in the plane meet in a point
        let l1 = Flat::new(qv(&[0, 0]), vec![qv(&[1, 1])]);
        let l2 = Flat::new(qv(&[2, 0]), vec![qv(&[0, 1])]);
        let p = flat_intersection(&l1, &l2).unwrap();
        assert_eq!(p.dim(), 0);
        assert_eq!(p.basepoint(), &qv(&[2, 2]));
        // parallel distinct lines are disjoint
        let l3 = Flat::new(qv(&[0, 1]), vec![qv(&[1, 1])]);
        assert!(flat_intersection(&l1, &l3).is_none());
        // a line intersected with the whole plane is itself
        let all = Flat::full_space(2);
        let same = flat_intersection(&l1, &all).unwrap();
        assert!(same.same_flat(&l1));
        // identical lines intersect in themselves
        let l4 = Flat::new(qv(&[5, 5]), vec![qv(&[2, 2])]);
        assert!(flat_intersection(&l1, &l4).unwrap().same_flat(&l1));
    }

    #[test]
    fn with_point_extends_and_detects_containment() {
        let f = Flat::point(qv(&[1, 0, 0]));
        let (f2, grew) = f.with_point(&qv(&[1, 0, 0]));
        assert!(!grew);
        assert_eq!(f2.dim(), 0);
        let (f3, grew) = f.with_point(&qv(&[1, 2, 0]));
        assert!(grew);
        assert_eq!(f3.dim(), 1);
        let (f4, grew) = f3.with_point(&qv(&[1, 7, 0]));
        assert!(!grew);
        assert_eq!(f4.dim(), 1);
    }

    #[test]
    fn coordinates_round_trip() {
        let f = Flat::new(qv(&[1, 0, 2]), vec![qv(&[0, 1, 0]), qv(&[0, 0, 3])]);
        let p = qv(&[1, 5, 8]);
        let y = f.coordinates(&p).unwrap();
        assert_eq!(f.embed(&y), p);
        assert!(f.coordinates(&qv(&[0, 5, 8])).is_none());
    }

    #[test]
    fn normal_basis_recovers_flat_equations() {
        let f = Flat::new(qv(&[1, 0, 0]), vec![qv(&[0, 1, 0])]);
        let normals = f.normal_basis();
        assert_eq!(normals.len(), 2);
        for n in &normals {
            assert_eq!(n.dot(&qv(&[1, 5, 0])), n.dot(f.basepoint()));
        }
    }

    #[test]
    fn rationals_stay_reduced() {
        let a = rat(2, 4);
        assert_eq!(a, rat(1, 2));
        let b = rat(1, 3) + rat(1, 6);
        assert_eq!(b, rat(1, 2));
        assert!(rat(-1, 2) < rat(1, 3));
    }
}
