//! Derivations `D : A → U` as the kernel of the Leibniz linear system, inner
//! derivations `a ↦ au − ua`, and the first cohomology dimension.
//!
//! A linear map `A → U` is an `n × m` matrix whose column `p` is the image of
//! `e_p`. When a map is treated as a vector it is flattened row-major, so the
//! unknown for entry `(k, p)` sits at index `k·m + p`.

use num_traits::Zero;

use crate::algebra::{check_shape, Algebra, Bimodule};
use crate::error::{Error, Result};
use crate::linalg::{nullspace_of_rows, sub_vec, unit_vector, zeros, Matrix, Rational, Subspace};
use crate::report::{Check, ConditionReport};

/// One row per `(i, j, k)`: the `k`-th coordinate of
/// `D(e_i e_j) − e_i D(e_j) − D(e_i) e_j` as a functional of `D`'s entries.
fn leibniz_row(a: &Algebra, u: &Bimodule, i: usize, j: usize, k: usize) -> Vec<Rational> {
    let (m, n) = (a.dim(), u.dim());
    let mut row = zeros(n * m);
    // D(e_i e_j)_k = Σ_p c[i][j][p] d[k][p]
    for (p, c) in a.basis_product(i, j).iter().enumerate() {
        if !c.is_zero() {
            row[k * m + p] += c;
        }
    }
    // (e_i D(e_j))_k = Σ_q d[q][j] l[i][q][k]
    for q in 0..n {
        let l = &u.left_basis_action(i, q)[k];
        if !l.is_zero() {
            row[q * m + j] -= l;
        }
    }
    // (D(e_i) e_j)_k = Σ_q d[q][i] r[q][j][k]
    for q in 0..n {
        let r = &u.right_basis_action(q, j)[k];
        if !r.is_zero() {
            row[q * m + i] -= r;
        }
    }
    row
}

fn leibniz_rows<'a>(a: &'a Algebra, u: &'a Bimodule) -> impl Iterator<Item = Vec<Rational>> + 'a {
    let (m, n) = (a.dim(), u.dim());
    (0..m).flat_map(move |i| {
        (0..m).flat_map(move |j| (0..n).map(move |k| leibniz_row(a, u, i, j, k)))
    })
}

/// The full Leibniz system: `m²·n` rows, `m·n` columns, rows ordered by `(i, j, k)`.
pub fn leibniz_system(a: &Algebra, u: &Bimodule) -> Result<Matrix> {
    u.check_algebra(a)?;
    Matrix::from_rows(a.dim() * u.dim(), leibniz_rows(a, u).collect())
}

/// Checks `D(e_i e_j) = e_i D(e_j) + D(e_i) e_j` on all basis pairs.
pub fn is_derivation(a: &Algebra, u: &Bimodule, f: &Matrix) -> Result<ConditionReport> {
    u.check_algebra(a)?;
    check_shape("derivation candidate", f, u.dim(), a.dim())?;
    let m = a.dim();
    let cases = (0..m).flat_map(|i| {
        (0..m).map(move |j| {
            let lhs = f.mul_vec(a.basis_product(i, j));
            let mut rhs = u.act_left_unchecked(&unit_vector(m, i), &f.column(j));
            let tail = u.act_right_unchecked(&f.column(i), &unit_vector(m, j));
            for (x, y) in rhs.iter_mut().zip(tail) {
                *x += y;
            }
            (vec![i, j], lhs, rhs)
        })
    });
    let mut report = ConditionReport::new();
    report.push(Check::evaluate("leibniz", "D(ab) = aD(b) + D(a)b", cases));
    Ok(report)
}

/// `Der(A, U)` as a canonical subspace of flattened `n × m` matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationSpace {
    source_dim: usize,
    target_dim: usize,
    space: Subspace,
}

impl DerivationSpace {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn subspace(&self) -> &Subspace {
        &self.space
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    /// Canonical basis, reshaped to `target × source` matrices.
    pub fn basis(&self) -> Vec<Matrix> {
        self.space
            .basis()
            .iter()
            .map(|v| unflatten(self.target_dim, self.source_dim, v))
            .collect()
    }

    pub fn contains(&self, f: &Matrix) -> bool {
        f.rows() == self.target_dim && f.cols() == self.source_dim && self.space.contains(f.as_row_major())
    }
}

pub(crate) fn unflatten(rows: usize, cols: usize, v: &[Rational]) -> Matrix {
    Matrix::from_row_major(rows, cols, v.to_vec()).expect("flattened map has matching length")
}

pub fn derivation_space(a: &Algebra, u: &Bimodule) -> Result<DerivationSpace> {
    u.check_algebra(a)?;
    let space = nullspace_of_rows(a.dim() * u.dim(), leibniz_rows(a, u));
    let out = DerivationSpace {
        source_dim: a.dim(),
        target_dim: u.dim(),
        space,
    };
    for d in out.basis() {
        if !is_derivation(a, u, &d)?.passed() {
            return Err(Error::Internal("Leibniz kernel vector is not a derivation".into()));
        }
    }
    Ok(out)
}

/// The inner derivation `a ↦ a·x − x·a`.
pub fn inner_derivation(a: &Algebra, u: &Bimodule, x: &[Rational]) -> Result<Matrix> {
    u.check_algebra(a)?;
    crate::algebra::check_len("module element", x, u.dim())?;
    let m = a.dim();
    let cols: Vec<Vec<Rational>> = (0..m)
        .map(|p| {
            let ep = unit_vector(m, p);
            sub_vec(&u.act_left_unchecked(&ep, x), &u.act_right_unchecked(x, &ep))
        })
        .collect();
    Matrix::from_columns(u.dim(), &cols)
}

/// Image of `x ↦ ad_x` in flattened `n × m` matrix space.
pub fn inner_space(a: &Algebra, u: &Bimodule) -> Result<Subspace> {
    u.check_algebra(a)?;
    let n = u.dim();
    let mut generators = Vec::with_capacity(n);
    for j in 0..n {
        generators.push(inner_derivation(a, u, &unit_vector(n, j))?.into_row_major());
    }
    Ok(Subspace::span(a.dim() * n, generators))
}

/// `dim Der(A,U) − dim Inn(A,U)`, after asserting `Inn ⊆ Der`.
pub fn h1_dimension(a: &Algebra, u: &Bimodule) -> Result<usize> {
    let der = derivation_space(a, u)?;
    let inn = inner_space(a, u)?;
    if !der.subspace().contains_subspace(&inn) {
        return Err(Error::Internal("inner derivations escape the derivation space".into()));
    }
    Ok(der.dim() - inn.dim())
}

/// Dimension summary for reporting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologySummary {
    pub der_dim: usize,
    pub inner_dim: usize,
    pub h1_dim: usize,
}

pub fn cohomology_summary(a: &Algebra, u: &Bimodule) -> Result<CohomologySummary> {
    let der = derivation_space(a, u)?;
    let inn = inner_space(a, u)?;
    if !der.subspace().contains_subspace(&inn) {
        return Err(Error::Internal("inner derivations escape the derivation space".into()));
    }
    Ok(CohomologySummary {
        der_dim: der.dim(),
        inner_dim: inn.dim(),
        h1_dim: der.dim() - inn.dim(),
    })
}
