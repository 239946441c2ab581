//! Finite-dimensional associative algebras and bimodules given by structure
//! constants, together with module homomorphisms and annihilators.
//!
//! Elements are plain coordinate slices. Every function that mixes carriers
//! checks the dimensions and returns [`Error::Shape`] on mismatch.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{axpy, nullspace_of_rows, solve, unit_vector, zeros, Matrix, Rational, Subspace};
use crate::report::{Check, ConditionReport};

pub(crate) fn check_len(what: &str, v: &[Rational], dim: usize) -> Result<()> {
    if v.len() != dim {
        return Err(Error::Shape(format!(
            "{what} has {} coordinates, carrier has dimension {dim}",
            v.len()
        )));
    }
    Ok(())
}

pub(crate) fn check_shape(what: &str, m: &Matrix, rows: usize, cols: usize) -> Result<()> {
    if m.rows() != rows || m.cols() != cols {
        return Err(Error::Shape(format!(
            "{what} is {}x{}, expected {rows}x{cols}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(())
}

fn default_names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// Contracts `Σ x_i y_j t[i][j][·]` for a tensor with shape `dx × dy × dz`.
fn contract(t: &[Rational], dy: usize, dz: usize, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
    let mut out = zeros(dz);
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if yj.is_zero() {
                continue;
            }
            let s = xi * yj;
            let base = (i * dy + j) * dz;
            axpy(&mut out, &s, &t[base..base + dz]);
        }
    }
    out
}

/// An associative algebra: `e_i · e_j = Σ_k c[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    dim: usize,
    basis_names: Vec<String>,
    mul: Vec<Rational>,
}

impl Algebra {
    /// Validates associativity on every basis triple and builds the algebra.
    pub fn new(basis_names: Vec<String>, mul: Vec<Rational>) -> Result<Self> {
        let dim = basis_names.len();
        if mul.len() != dim * dim * dim {
            return Err(Error::Shape(format!(
                "{} structure constants for a {dim}-dimensional algebra, expected {}",
                mul.len(),
                dim * dim * dim
            )));
        }
        let a = Algebra {
            dim,
            basis_names,
            mul,
        };
        let check = a.associativity_check();
        match check.witness {
            Some(w) => Err(Error::Axiom(w)),
            None => Ok(a),
        }
    }

    /// Builds an algebra from a product table `f(i, j) = e_i e_j`.
    pub fn from_table(
        basis_names: Vec<String>,
        mut f: impl FnMut(usize, usize) -> Vec<Rational>,
    ) -> Result<Self> {
        let dim = basis_names.len();
        let mut mul = Vec::with_capacity(dim * dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let v = f(i, j);
                check_len("table entry", &v, dim)?;
                mul.extend(v);
            }
        }
        Algebra::new(basis_names, mul)
    }

    /// Skips the associativity check, so that a candidate table can be
    /// diagnosed with [`Algebra::associativity_check`]. Panics on a shape mismatch.
    pub fn new_unchecked(basis_names: Vec<String>, mul: Vec<Rational>) -> Self {
        let n = basis_names.len();
        assert_eq!(mul.len(), n * n * n, "structure constants need dim³ entries");
        Algebra {
            dim: basis_names.len(),
            basis_names,
            mul,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    /// Flat structure-constant tensor, index `(i * dim + j) * dim + k`.
    pub fn structure_constants(&self) -> &[Rational] {
        &self.mul
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.mul[(i * self.dim + j) * self.dim + k]
    }

    /// Coordinates of `e_i e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[Rational] {
        let base = (i * self.dim + j) * self.dim;
        &self.mul[base..base + self.dim]
    }

    pub fn basis_element(&self, i: usize) -> Vec<Rational> {
        unit_vector(self.dim, i)
    }

    pub fn zero_element(&self) -> Vec<Rational> {
        zeros(self.dim)
    }

    pub fn mul(&self, x: &[Rational], y: &[Rational]) -> Result<Vec<Rational>> {
        check_len("left factor", x, self.dim)?;
        check_len("right factor", y, self.dim)?;
        Ok(self.mul_unchecked(x, y))
    }

    pub(crate) fn mul_unchecked(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        contract(&self.mul, self.dim, self.dim, x, y)
    }

    /// Matrix of `y ↦ x y`.
    pub fn left_mul_matrix(&self, x: &[Rational]) -> Matrix {
        let cols: Vec<Vec<Rational>> = (0..self.dim)
            .map(|j| self.mul_unchecked(x, &unit_vector(self.dim, j)))
            .collect();
        Matrix::from_columns(self.dim, &cols).expect("square by construction")
    }

    /// Matrix of `y ↦ y x`.
    pub fn right_mul_matrix(&self, x: &[Rational]) -> Matrix {
        let cols: Vec<Vec<Rational>> = (0..self.dim)
            .map(|j| self.mul_unchecked(&unit_vector(self.dim, j), x))
            .collect();
        Matrix::from_columns(self.dim, &cols).expect("square by construction")
    }

    /// `(e_i e_j) e_k = e_i (e_j e_k)` on all `dim³` triples.
    pub fn associativity_check(&self) -> Check {
        let n = self.dim;
        let cases = (0..n).flat_map(move |i| {
            (0..n).flat_map(move |j| {
                (0..n).map(move |k| {
                    let ek = unit_vector(n, k);
                    let ei = unit_vector(n, i);
                    let lhs = self.mul_unchecked(self.basis_product(i, j), &ek);
                    let rhs = self.mul_unchecked(&ei, self.basis_product(j, k));
                    (vec![i, j, k], lhs, rhs)
                })
            })
        });
        Check::evaluate("associativity", "(e_i e_j) e_k = e_i (e_j e_k)", cases)
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| self.basis_product(i, j) == self.basis_product(j, i)))
    }

    /// The two-sided unit, if one exists.
    ///
    /// Solves `e·e_i = e_i = e_i·e` for every basis index; a unit is unique.
    pub fn unit_element(&self) -> Option<Vec<Rational>> {
        let n = self.dim;
        // unknown e = Σ_p x_p e_p; equations for each (side, i, k)
        let mut rows = Vec::with_capacity(2 * n * n);
        let mut rhs = Vec::with_capacity(2 * n * n);
        for i in 0..n {
            for k in 0..n {
                let target = if i == k { Rational::one() } else { Rational::zero() };
                rows.push((0..n).map(|p| self.constant(p, i, k).clone()).collect::<Vec<_>>());
                rhs.push(target.clone());
                rows.push((0..n).map(|p| self.constant(i, p, k).clone()).collect::<Vec<_>>());
                rhs.push(target);
            }
        }
        let m = Matrix::from_rows(n, rows).expect("rows have length n");
        solve(&m, &rhs)
    }

    pub fn is_unital(&self) -> bool {
        self.unit_element().is_some()
    }
}

/// A bimodule `U` over an algebra: `e_i·u_j = Σ l[i][j][k] u_k`,
/// `u_j·e_i = Σ r[j][i][k] u_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule {
    algebra_dim: usize,
    dim: usize,
    basis_names: Vec<String>,
    left: Vec<Rational>,
    right: Vec<Rational>,
}

impl Bimodule {
    /// Checks the three compatibility axioms on all basis triples.
    ///
    /// The unit axiom `e·u = u·e = u` is not enforced: modules with a zero
    /// side action over a unital algebra are needed for corner modules.
    /// Use [`Bimodule::is_unital_over`] to query it.
    pub fn new(
        algebra: &Algebra,
        basis_names: Vec<String>,
        left: Vec<Rational>,
        right: Vec<Rational>,
    ) -> Result<Self> {
        let m = algebra.dim();
        let n = basis_names.len();
        if left.len() != m * n * n || right.len() != m * n * n {
            return Err(Error::Shape(format!(
                "action tensors have {} and {} entries, expected {} each",
                left.len(),
                right.len(),
                m * n * n
            )));
        }
        let u = Bimodule {
            algebra_dim: m,
            dim: n,
            basis_names,
            left,
            right,
        };
        let report = u.axiom_report(algebra)?;
        match report.first_failure() {
            Some(c) => Err(Error::Axiom(c.witness.clone().expect("failed check has witness"))),
            None => Ok(u),
        }
    }

    /// Skips the axiom checks, so that candidate tables can be diagnosed with
    /// [`Bimodule::axiom_report`]. Panics on a shape mismatch.
    pub fn new_unchecked(
        algebra_dim: usize,
        basis_names: Vec<String>,
        left: Vec<Rational>,
        right: Vec<Rational>,
    ) -> Self {
        let n = basis_names.len();
        assert_eq!(left.len(), algebra_dim * n * n, "left action shape");
        assert_eq!(right.len(), algebra_dim * n * n, "right action shape");
        Bimodule {
            algebra_dim,
            dim: n,
            basis_names,
            left,
            right,
        }
    }

    /// Builds a bimodule from action tables `left(i, j) = e_i·u_j`,
    /// `right(j, i) = u_j·e_i`.
    pub fn from_tables(
        algebra: &Algebra,
        basis_names: Vec<String>,
        mut left: impl FnMut(usize, usize) -> Vec<Rational>,
        mut right: impl FnMut(usize, usize) -> Vec<Rational>,
    ) -> Result<Self> {
        let m = algebra.dim();
        let n = basis_names.len();
        let mut l = Vec::with_capacity(m * n * n);
        for i in 0..m {
            for j in 0..n {
                let v = left(i, j);
                check_len("left action entry", &v, n)?;
                l.extend(v);
            }
        }
        let mut r = Vec::with_capacity(m * n * n);
        for j in 0..n {
            for i in 0..m {
                let v = right(j, i);
                check_len("right action entry", &v, n)?;
                r.extend(v);
            }
        }
        Bimodule::new(algebra, basis_names, l, r)
    }

    /// `A` acting on itself by multiplication on both sides.
    pub fn regular(algebra: &Algebra) -> Self {
        let m = algebra.dim();
        let mut right = Vec::with_capacity(m * m * m);
        for j in 0..m {
            for i in 0..m {
                right.extend_from_slice(algebra.basis_product(j, i));
            }
        }
        Bimodule {
            algebra_dim: m,
            dim: m,
            basis_names: algebra.basis_names().to_vec(),
            left: algebra.structure_constants().to_vec(),
            right,
        }
    }

    /// A `dim`-dimensional module on which both actions vanish.
    pub fn zero_action(algebra: &Algebra, dim: usize) -> Self {
        let m = algebra.dim();
        Bimodule {
            algebra_dim: m,
            dim,
            basis_names: default_names("u", dim),
            left: zeros(m * dim * dim),
            right: zeros(m * dim * dim),
        }
    }

    pub fn algebra_dim(&self) -> usize {
        self.algebra_dim
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn left_tensor(&self) -> &[Rational] {
        &self.left
    }

    pub fn right_tensor(&self) -> &[Rational] {
        &self.right
    }

    /// Coordinates of `e_i · u_j`.
    pub fn left_basis_action(&self, i: usize, j: usize) -> &[Rational] {
        let base = (i * self.dim + j) * self.dim;
        &self.left[base..base + self.dim]
    }

    /// Coordinates of `u_j · e_i`.
    pub fn right_basis_action(&self, j: usize, i: usize) -> &[Rational] {
        let base = (j * self.algebra_dim + i) * self.dim;
        &self.right[base..base + self.dim]
    }

    pub fn check_algebra(&self, algebra: &Algebra) -> Result<()> {
        if algebra.dim() != self.algebra_dim {
            return Err(Error::Shape(format!(
                "bimodule is over a {}-dimensional algebra, got one of dimension {}",
                self.algebra_dim,
                algebra.dim()
            )));
        }
        Ok(())
    }

    pub fn act_left(&self, a: &[Rational], u: &[Rational]) -> Result<Vec<Rational>> {
        check_len("algebra element", a, self.algebra_dim)?;
        check_len("module element", u, self.dim)?;
        Ok(self.act_left_unchecked(a, u))
    }

    pub fn act_right(&self, u: &[Rational], a: &[Rational]) -> Result<Vec<Rational>> {
        check_len("module element", u, self.dim)?;
        check_len("algebra element", a, self.algebra_dim)?;
        Ok(self.act_right_unchecked(u, a))
    }

    pub(crate) fn act_left_unchecked(&self, a: &[Rational], u: &[Rational]) -> Vec<Rational> {
        contract(&self.left, self.dim, self.dim, a, u)
    }

    pub(crate) fn act_right_unchecked(&self, u: &[Rational], a: &[Rational]) -> Vec<Rational> {
        contract(&self.right, self.algebra_dim, self.dim, u, a)
    }

    /// Matrix of `u ↦ a·u`.
    pub fn left_action_matrix(&self, a: &[Rational]) -> Matrix {
        let cols: Vec<_> = (0..self.dim)
            .map(|j| self.act_left_unchecked(a, &unit_vector(self.dim, j)))
            .collect();
        Matrix::from_columns(self.dim, &cols).expect("square by construction")
    }

    /// Matrix of `u ↦ u·a`.
    pub fn right_action_matrix(&self, a: &[Rational]) -> Matrix {
        let cols: Vec<_> = (0..self.dim)
            .map(|j| self.act_right_unchecked(&unit_vector(self.dim, j), a))
            .collect();
        Matrix::from_columns(self.dim, &cols).expect("square by construction")
    }

    /// The three compatibility axioms, one named check each.
    pub fn axiom_report(&self, algebra: &Algebra) -> Result<ConditionReport> {
        self.check_algebra(algebra)?;
        let (m, n) = (self.algebra_dim, self.dim);
        let ea = |i: usize| unit_vector(m, i);
        let eu = |j: usize| unit_vector(n, j);
        let triples = || {
            (0..m).flat_map(move |i| (0..m).flat_map(move |i2| (0..n).map(move |j| (i, i2, j))))
        };

        let mut report = ConditionReport::new();
        report.push(Check::evaluate(
            "left-associativity",
            "(ab)u = a(bu)",
            triples().map(|(i, i2, j)| {
                let lhs = self.act_left_unchecked(algebra.basis_product(i, i2), &eu(j));
                let rhs = self.act_left_unchecked(&ea(i), self.left_basis_action(i2, j));
                (vec![i, i2, j], lhs, rhs)
            }),
        ));
        report.push(Check::evaluate(
            "right-associativity",
            "u(ab) = (ua)b",
            triples().map(|(i, i2, j)| {
                let lhs = self.act_right_unchecked(&eu(j), algebra.basis_product(i, i2));
                let rhs = self.act_right_unchecked(self.right_basis_action(j, i), &ea(i2));
                (vec![i, i2, j], lhs, rhs)
            }),
        ));
        report.push(Check::evaluate(
            "middle-associativity",
            "(au)b = a(ub)",
            triples().map(|(i, i2, j)| {
                let lhs = self.act_right_unchecked(self.left_basis_action(i, j), &ea(i2));
                let rhs = self.act_left_unchecked(&ea(i), self.right_basis_action(j, i2));
                (vec![i, i2, j], lhs, rhs)
            }),
        ));
        Ok(report)
    }

    /// `Some(true)` if the algebra has a unit acting as the identity on both
    /// sides, `Some(false)` if it has a unit that does not, `None` if the
    /// algebra has no unit.
    pub fn is_unital_over(&self, algebra: &Algebra) -> Result<Option<bool>> {
        self.check_algebra(algebra)?;
        Ok(algebra.unit_element().map(|e| {
            let id = Matrix::identity(self.dim);
            self.left_action_matrix(&e) == id && self.right_action_matrix(&e) == id
        }))
    }
}

/// Which actions a module homomorphism must commute with.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
    Both,
}

/// Checks `f(a·u) = a·f(u)` and/or `f(u·a) = f(u)·a` on all basis pairs.
///
/// `f` is a `target.dim() × source.dim()` matrix.
pub fn is_module_hom(
    algebra: &Algebra,
    source: &Bimodule,
    target: &Bimodule,
    f: &Matrix,
    side: Side,
) -> Result<ConditionReport> {
    source.check_algebra(algebra)?;
    target.check_algebra(algebra)?;
    check_shape("module homomorphism", f, target.dim(), source.dim())?;
    let (m, n) = (algebra.dim(), source.dim());
    let pairs = || (0..m).flat_map(move |i| (0..n).map(move |j| (i, j)));
    let mut report = ConditionReport::new();
    if matches!(side, Side::Left | Side::Both) {
        report.push(Check::evaluate(
            "left-linear",
            "f(a·u) = a·f(u)",
            pairs().map(|(i, j)| {
                let lhs = f.mul_vec(source.left_basis_action(i, j));
                let rhs = target.act_left_unchecked(&unit_vector(m, i), &f.column(j));
                (vec![i, j], lhs, rhs)
            }),
        ));
    }
    if matches!(side, Side::Right | Side::Both) {
        report.push(Check::evaluate(
            "right-linear",
            "f(u·a) = f(u)·a",
            pairs().map(|(i, j)| {
                let lhs = f.mul_vec(source.right_basis_action(j, i));
                let rhs = target.act_right_unchecked(&f.column(j), &unit_vector(m, i));
                (vec![i, j], lhs, rhs)
            }),
        ));
    }
    Ok(report)
}

/// `ann_A U = {a ∈ A : aU = Ua = 0}`.
pub fn annihilator(algebra: &Algebra, module: &Bimodule) -> Result<Subspace> {
    module.check_algebra(algebra)?;
    let (m, n) = (algebra.dim(), module.dim());
    // x ↦ (x·u_j)_k and x ↦ (u_j·x)_k, one linear functional each
    let mut rows = Vec::with_capacity(2 * n * n);
    for j in 0..n {
        for k in 0..n {
            rows.push((0..m).map(|i| module.left_basis_action(i, j)[k].clone()).collect::<Vec<_>>());
            rows.push((0..m).map(|i| module.right_basis_action(j, i)[k].clone()).collect::<Vec<_>>());
        }
    }
    Ok(nullspace_of_rows(m, rows))
}
