//! Dense exact linear algebra over the rationals.
//!
//! Everything here works in reduced row-echelon form so that two equal
//! subspaces always have identical representations.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar.
pub type Rational = BigRational;

/// Shorthand for an integer-valued rational.
pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for the rational `num / den`.
///
/// Panics if `den == 0`.
pub fn qr(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn zeros(n: usize) -> Vec<Rational> {
    vec![Rational::zero(); n]
}

pub fn unit_vector(n: usize, i: usize) -> Vec<Rational> {
    let mut v = zeros(n);
    v[i] = Rational::one();
    v
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// `y += s * x`
pub fn axpy(y: &mut [Rational], s: &Rational, x: &[Rational]) {
    if s.is_zero() {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi += s * xi;
        }
    }
}

pub fn add_vec(x: &[Rational], y: &[Rational]) -> Vec<Rational> {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

pub fn sub_vec(x: &[Rational], y: &[Rational]) -> Vec<Rational> {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

pub fn scale_vec(s: &Rational, x: &[Rational]) -> Vec<Rational> {
    x.iter().map(|a| s * a).collect()
}

/// Coordinate ℓ¹ norm.
pub fn l1_norm(x: &[Rational]) -> Rational {
    x.iter().map(|a| a.abs()).fold(Rational::zero(), |acc, a| acc + a)
}

/// Dense row-major rational matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: zeros(rows * cols),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from a flat row-major vector.
    pub fn from_row_major(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries cannot fill a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Builds a matrix from explicit rows. All rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Shape(format!(
                    "row {i} has length {}, expected {cols}",
                    row.len()
                )));
            }
            data.extend(row);
        }
        Ok(Matrix {
            rows: n,
            cols,
            data,
        })
    }

    /// Builds a matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Result<Self> {
        if let Some(bad) = columns.iter().position(|c| c.len() != rows) {
            return Err(Error::Shape(format!(
                "column {bad} has length {}, expected {rows}",
                columns[bad].len()
            )));
        }
        Ok(Matrix::from_fn(rows, columns.len(), |r, c| {
            columns[c][r].clone()
        }))
    }

    /// Integer convenience constructor, mostly for tests and fixtures.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), cols, "ragged integer matrix");
                r.iter().map(|&x| q(x))
            })
            .collect();
        Matrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Rational>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    /// Entries in row-major order.
    pub fn as_row_major(&self) -> &[Rational] {
        &self.data
    }

    pub fn into_row_major(self) -> Vec<Rational> {
        self.data
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.data)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Vec<Rational> {
        assert_eq!(x.len(), self.cols, "matrix-vector shape mismatch");
        let mut out = zeros(self.rows);
        for (c, xc) in x.iter().enumerate() {
            if xc.is_zero() {
                continue;
            }
            for (r, o) in out.iter_mut().enumerate() {
                let a = &self.data[r * self.cols + c];
                if !a.is_zero() {
                    *o += a * xc;
                }
            }
        }
        out
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if !b.is_zero() {
                        out.data[r * other.cols + c] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: add_vec(&self.data, &other.data),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: sub_vec(&self.data, &other.data),
        }
    }

    pub fn scale(&self, s: &Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: scale_vec(s, &self.data),
        }
    }

    /// Copies the `rows × cols` block starting at `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols);
        Matrix::from_fn(rows, cols, |r, c| self[(r0 + r, c0 + c)].clone())
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for r in 0..block.rows {
            for c in 0..block.cols {
                self[(r0 + r, c0 + c)] = block[(r, c)].clone();
            }
        }
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols))
            .map(|i| self[(i, i)].clone())
            .fold(Rational::zero(), |a, b| a + b)
    }

    pub fn rank(&self) -> usize {
        rref(self).rank()
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Rational;

    fn index(&self, (r, c): (usize, usize)) -> &Rational {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of range");
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rational {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of range");
        &mut self.data[r * self.cols + c]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            write!(f, "[{}]", row.join(", "))?;
            if r + 1 < self.rows {
                write!(f, ", ")?;
            }
        }
        write!(f, "]")
    }
}

/// Incrementally maintained reduced echelon basis of a row space.
///
/// Rows are kept fully reduced: every stored row has a leading one at its
/// pivot and zeros at every other stored pivot column. Feeding rows one at a
/// time keeps memory bounded by the number of columns, which matters for the
/// tall Leibniz systems.
#[derive(Clone, Debug)]
pub struct Echelon {
    cols: usize,
    rows: BTreeMap<usize, Vec<Rational>>,
}

impl Echelon {
    pub fn new(cols: usize) -> Self {
        Echelon {
            cols,
            rows: BTreeMap::new(),
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.cols
    }

    /// Reduces `v` against the stored rows in place.
    pub fn reduce(&self, v: &mut [Rational]) {
        for (&p, row) in &self.rows {
            if !v[p].is_zero() {
                let s = -v[p].clone();
                axpy(v, &s, row);
            }
        }
    }

    /// Adds a row; returns `true` when it enlarged the row space.
    pub fn insert(&mut self, mut v: Vec<Rational>) -> bool {
        assert_eq!(v.len(), self.cols, "echelon row length mismatch");
        if self.is_full() {
            return false;
        }
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        for row in self.rows.values_mut() {
            if !row[p].is_zero() {
                let s = -row[p].clone();
                axpy(row, &s, &v);
            }
        }
        self.rows.insert(p, v);
        true
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.keys().copied().collect()
    }

    /// Stored rows ordered by pivot column, i.e. the nonzero rows of the RREF.
    pub fn rows(&self) -> impl Iterator<Item = (&usize, &Vec<Rational>)> {
        self.rows.iter()
    }

    pub fn into_rows(self) -> Vec<Vec<Rational>> {
        self.rows.into_values().collect()
    }

    /// Basis of `{x : r·x = 0 for every stored row r}`.
    pub fn kernel_vectors(&self) -> Vec<Vec<Rational>> {
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|c| !self.rows.contains_key(c)) {
            let mut x = unit_vector(self.cols, free);
            for (&p, row) in &self.rows {
                x[p] = -row[free].clone();
            }
            out.push(x);
        }
        out
    }
}

/// Reduced row-echelon form together with pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

pub fn rref(m: &Matrix) -> Rref {
    let mut ech = Echelon::new(m.cols());
    for r in 0..m.rows() {
        if ech.is_full() {
            break;
        }
        ech.insert(m.row(r).to_vec());
    }
    let pivots = ech.pivots();
    let mut data: Vec<Rational> = ech.into_rows().into_iter().flatten().collect();
    data.resize(m.rows() * m.cols(), Rational::zero());
    Rref {
        reduced: Matrix {
            rows: m.rows(),
            cols: m.cols(),
            data,
        },
        pivots,
    }
}

/// Kernel of `m` as a canonical subspace of ℚ^cols.
pub fn nullspace(m: &Matrix) -> Subspace {
    nullspace_of_rows(m.cols(), (0..m.rows()).map(|r| m.row(r).to_vec()))
}

/// Kernel of the system whose rows are streamed from `rows`.
pub fn nullspace_of_rows(cols: usize, rows: impl IntoIterator<Item = Vec<Rational>>) -> Subspace {
    let mut ech = Echelon::new(cols);
    for row in rows {
        if ech.is_full() {
            break;
        }
        ech.insert(row);
    }
    Subspace::span(cols, ech.kernel_vectors())
}

/// Some `x` with `m·x = b`, free variables set to zero, or `None` if inconsistent.
pub fn solve(m: &Matrix, b: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(b.len(), m.rows(), "right-hand side length mismatch");
    let n = m.cols();
    let mut ech = Echelon::new(n + 1);
    for r in 0..m.rows() {
        let mut row = m.row(r).to_vec();
        row.push(b[r].clone());
        ech.insert(row);
    }
    let mut x = zeros(n);
    for (&p, row) in ech.rows() {
        if p == n {
            return None;
        }
        x[p] = row[n].clone();
    }
    Some(x)
}

/// A linear subspace of ℚ^ambient, stored by its reduced echelon basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    pivots: Vec<usize>,
    basis: Vec<Vec<Rational>>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            pivots: Vec::new(),
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            pivots: (0..ambient).collect(),
            basis: (0..ambient).map(|i| unit_vector(ambient, i)).collect(),
        }
    }

    /// Span of arbitrary (possibly dependent) vectors.
    pub fn span(ambient: usize, vectors: impl IntoIterator<Item = Vec<Rational>>) -> Self {
        let mut ech = Echelon::new(ambient);
        for v in vectors {
            assert_eq!(v.len(), ambient, "spanning vector has wrong length");
            if ech.is_full() {
                break;
            }
            ech.insert(v);
        }
        Subspace::from_echelon(ech)
    }

    pub fn from_echelon(ech: Echelon) -> Self {
        let ambient = ech.cols();
        let pivots = ech.pivots();
        Subspace {
            ambient,
            pivots,
            basis: ech.into_rows(),
        }
    }

    /// Column space of `m`.
    pub fn column_space(m: &Matrix) -> Self {
        Subspace::span(m.rows(), m.columns())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Basis vectors as the columns of an `ambient × dim` matrix.
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_fn(self.ambient, self.dim(), |r, c| self.basis[c][r].clone())
    }

    fn echelon(&self) -> Echelon {
        let mut ech = Echelon::new(self.ambient);
        for (p, row) in self.pivots.iter().zip(&self.basis) {
            ech.rows.insert(*p, row.clone());
        }
        ech
    }

    /// Coordinates of `v` in the echelon basis, or `None` when `v` is outside.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(v.len(), self.ambient, "vector has wrong length");
        let coords: Vec<Rational> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut residual = v.to_vec();
        for (c, row) in coords.iter().zip(&self.basis) {
            let s = -c.clone();
            axpy(&mut residual, &s, row);
        }
        is_zero_vec(&residual).then_some(coords)
    }

    /// The unique vector of the subspace agreeing with `v` on the pivot
    /// coordinates. Equals `v` iff `v` lies in the subspace.
    pub fn pivot_projection(&self, v: &[Rational]) -> Vec<Rational> {
        let mut out = zeros(self.ambient);
        for (p, b) in self.pivots.iter().zip(&self.basis) {
            axpy(&mut out, &v[*p], b);
        }
        out
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && other.basis.iter().all(|v| self.contains(v))
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::Shape(format!(
                "subspaces of ℚ^{} and ℚ^{} cannot be combined",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let mut ech = self.echelon();
        for v in &other.basis {
            ech.insert(v.clone());
        }
        Ok(Subspace::from_echelon(ech))
    }

    /// Intersection via the kernel of `[A | -B]` on stacked basis columns.
    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let (da, db) = (self.dim(), other.dim());
        let system = Matrix::from_fn(self.ambient, da + db, |r, c| {
            if c < da {
                self.basis[c][r].clone()
            } else {
                -other.basis[c - da][r].clone()
            }
        });
        let kernel = nullspace(&system);
        let vectors = kernel.basis.iter().map(|k| {
            let mut v = zeros(self.ambient);
            for (coef, b) in k[..da].iter().zip(&self.basis) {
                axpy(&mut v, coef, b);
            }
            v
        });
        Ok(Subspace::span(self.ambient, vectors.collect::<Vec<_>>()))
    }

    pub fn compare(&self, other: &Subspace) -> Result<SubspaceRelations> {
        let sum = self.sum(other)?;
        let intersection = self.intersection(other)?;
        Ok(SubspaceRelations {
            contains: self.contains_subspace(other),
            equal: self == other,
            sum,
            intersection,
        })
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in ℚ^{}) ", self.dim(), self.ambient)?;
        f.debug_list()
            .entries(
                self.basis
                    .iter()
                    .map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
            )
            .finish()
    }
}

/// Sum, intersection and ordering of two subspaces.
#[derive(Clone, Debug)]
pub struct SubspaceRelations {
    pub sum: Subspace,
    pub intersection: Subspace,
    /// Whether the first subspace contains the second.
    pub contains: bool,
    pub equal: bool,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn det2(m: &Matrix) -> Rational {
        &m[(0, 0)] * &m[(1, 1)] - &m[(0, 1)] * &m[(1, 0)]
    }

    #[test]
    fn rref_identity_and_zero() {
        let id = Matrix::identity(2);
        let r = rref(&id);
        assert_eq!(r.reduced, id);
        assert_eq!(r.pivots, vec![0, 1]);
        assert_eq!(r.rank(), 2);

        let z = Matrix::zeros(3, 3);
        let r = rref(&z);
        assert_eq!(r.reduced, z);
        assert!(r.pivots.is_empty());
    }

    #[test]
    fn rref_rank_one() {
        let m = Matrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert!(det2(&m).is_zero());
        let r = rref(&m);
        assert_eq!(r.reduced, Matrix::from_i64(&[&[1, 2], &[0, 0]]));
        assert_eq!(r.rank(), 1);
    }

    #[test]
    fn rref_normalizes_and_clears_above() {
        let m = Matrix::from_i64(&[&[0, 2, 4], &[3, 0, 3], &[3, 2, 7]]);
        let r = rref(&m);
        assert_eq!(r.reduced, Matrix::from_i64(&[&[1, 0, 1], &[0, 1, 2], &[0, 0, 0]]));
        assert_eq!(r.pivots, vec![0, 1]);
    }

    #[test]
    fn nullspace_examples() {
        assert!(nullspace(&Matrix::identity(3)).is_zero());
        assert_eq!(nullspace(&Matrix::zeros(3, 3)).dim(), 3);

        let m = Matrix::from_i64(&[&[1, 1]]);
        let ns = nullspace(&m);
        assert_eq!(ns.dim(), 1);
        let v = &ns.basis()[0];
        assert!(is_zero_vec(&m.mul_vec(v)));
        assert_eq!(ns, Subspace::span(2, vec![vec![q(1), q(-1)]]));
    }

    #[test]
    fn solve_examples() {
        let b = vec![q(3), qr(-1, 2)];
        assert_eq!(solve(&Matrix::identity(2), &b), Some(b.clone()));

        let m = Matrix::from_i64(&[&[1, 1]]);
        assert_eq!(solve(&m, &[q(2)]), Some(vec![q(2), q(0)]));

        assert_eq!(solve(&Matrix::from_i64(&[&[0]]), &[q(1)]), None);
    }

    #[test]
    fn subspace_relations() {
        let e1 = Subspace::span(2, vec![unit_vector(2, 0)]);
        let e2 = Subspace::span(2, vec![unit_vector(2, 1)]);
        let same = e1.compare(&e1).unwrap();
        assert!(same.equal && same.contains);
        assert_eq!(same.sum, e1);
        assert_eq!(same.intersection, e1);

        let rel = e1.compare(&e2).unwrap();
        assert!(rel.sum.is_full());
        assert!(rel.intersection.is_zero());
        assert!(!rel.contains);

        let diag = Subspace::span(2, vec![vec![q(1), q(1)]]);
        let rel = diag.compare(&e1).unwrap();
        assert_eq!(rel.sum.dim(), 2);
        assert_eq!(rel.intersection.dim(), 0);
        assert_eq!(rel.sum.dim() + rel.intersection.dim(), diag.dim() + e1.dim());
    }

    #[test]
    fn ambient_mismatch_is_rejected() {
        let a = Subspace::full(2);
        let b = Subspace::full(3);
        assert!(matches!(a.sum(&b), Err(Error::Shape(_))));
        assert!(a.intersection(&b).is_err());
    }

    #[test]
    fn coordinates_in_echelon_basis() {
        let s = Subspace::span(3, vec![vec![q(2), q(4), q(0)], vec![q(0), q(0), q(1)]]);
        let v = vec![q(1), q(2), q(5)];
        assert_eq!(s.coordinates(&v), Some(vec![q(1), q(5)]));
        assert_eq!(s.coordinates(&[q(1), q(0), q(0)]), None);
    }
}
