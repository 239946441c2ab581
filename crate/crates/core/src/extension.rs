//! Module extensions `T(A,U) = A ⊕ U` with product `(a,u)(b,v) = (ab, av+ub)`,
//! their ℓ¹ norm data, and quotients by ideals.

use num_traits::{Signed, Zero};

use crate::algebra::{is_module_hom, Algebra, Bimodule, Side};
use crate::error::{Error, Result};
use crate::linalg::{unit_vector, zeros, Matrix, Rational, Subspace};
use crate::report::{Check, ConditionReport};

/// `T(A,U)`: coordinates `0..m` are the `A` part, `m..m+n` the `U` part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleExtension {
    base: Algebra,
    module: Bimodule,
    total: Algebra,
}

impl ModuleExtension {
    pub fn base(&self) -> &Algebra {
        &self.base
    }

    pub fn module(&self) -> &Bimodule {
        &self.module
    }

    pub fn total(&self) -> &Algebra {
        &self.total
    }

    /// `dim A`
    pub fn base_dim(&self) -> usize {
        self.base.dim()
    }

    /// `dim U`
    pub fn module_dim(&self) -> usize {
        self.module.dim()
    }

    pub fn dim(&self) -> usize {
        self.total.dim()
    }

    pub fn embed_a(&self) -> Matrix {
        let (m, d) = (self.base_dim(), self.dim());
        Matrix::from_fn(d, m, |r, c| if r == c { one() } else { Rational::zero() })
    }

    pub fn embed_u(&self) -> Matrix {
        let (m, n, d) = (self.base_dim(), self.module_dim(), self.dim());
        Matrix::from_fn(d, n, |r, c| if r == m + c { one() } else { Rational::zero() })
    }

    pub fn project_a(&self) -> Matrix {
        self.embed_a().transpose()
    }

    pub fn project_u(&self) -> Matrix {
        self.embed_u().transpose()
    }

    /// Coordinates of `(a, u)` in `T(A,U)`.
    pub fn pair(&self, a: &[Rational], u: &[Rational]) -> Result<Vec<Rational>> {
        crate::algebra::check_len("A component", a, self.base_dim())?;
        crate::algebra::check_len("U component", u, self.module_dim())?;
        Ok(a.iter().chain(u).cloned().collect())
    }

    /// Splits total coordinates into `(a, u)`.
    pub fn split<'a>(&self, x: &'a [Rational]) -> (&'a [Rational], &'a [Rational]) {
        x.split_at(self.base_dim())
    }
}

fn one() -> Rational {
    num_traits::One::one()
}

/// Builds `T(A,U)` and re-verifies associativity of the total product.
pub fn trivial_extension(base: &Algebra, module: &Bimodule) -> Result<ModuleExtension> {
    module.check_algebra(base)?;
    let (m, n) = (base.dim(), module.dim());
    let d = m + n;
    let mut names: Vec<String> = base.basis_names().iter().map(|s| format!("({s},0)")).collect();
    names.extend(module.basis_names().iter().map(|s| format!("(0,{s})")));

    let mut mul = zeros(d * d * d);
    let mut put = |i: usize, j: usize, off: usize, v: &[Rational]| {
        let base_idx = (i * d + j) * d + off;
        mul[base_idx..base_idx + v.len()].clone_from_slice(v);
    };
    for i in 0..m {
        for j in 0..m {
            put(i, j, 0, base.basis_product(i, j));
        }
        for j in 0..n {
            // (e_i, 0)(0, u_j) = (0, e_i u_j)
            put(i, m + j, m, module.left_basis_action(i, j));
            // (0, u_j)(e_i, 0) = (0, u_j e_i)
            put(m + j, i, m, module.right_basis_action(j, i));
        }
    }
    let total = Algebra::new_unchecked(names, mul);
    let assoc = total.associativity_check();
    if let Some(w) = assoc.witness {
        return Err(Error::Internal(format!("T(A,U) is not associative: {w}")));
    }
    Ok(ModuleExtension {
        base: base.clone(),
        module: module.clone(),
        total,
    })
}

/// Least `C` with `‖xy‖₁ ≤ C‖x‖₁‖y‖₁` for coordinate ℓ¹ norms:
/// the largest ℓ¹ norm of a product of two basis vectors.
pub fn submultiplicativity_constant(a: &Algebra) -> Rational {
    let n = a.dim();
    (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| {
            a.basis_product(i, j)
                .iter()
                .map(Signed::abs)
                .fold(Rational::zero(), |acc, x| acc + x)
        })
        .max()
        .unwrap_or_else(Rational::zero)
}

/// A basis pair attaining [`submultiplicativity_constant`].
pub fn submultiplicativity_witness(a: &Algebra) -> Option<(usize, usize)> {
    let c = submultiplicativity_constant(a);
    let n = a.dim();
    (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .find(|&(i, j)| crate::linalg::l1_norm(a.basis_product(i, j)) == c)
}

/// `A·S ⊆ S` and `S·A ⊆ S`, checked on basis generators.
pub fn ideal_check(a: &Algebra, s: &Subspace) -> Result<ConditionReport> {
    if s.ambient_dim() != a.dim() {
        return Err(Error::Shape(format!(
            "subspace of ℚ^{} in an algebra of dimension {}",
            s.ambient_dim(),
            a.dim()
        )));
    }
    let n = a.dim();
    let mut report = ConditionReport::new();
    for (name, desc, left) in [
        ("left-absorbing", "e_i·s ∈ S", true),
        ("right-absorbing", "s·e_i ∈ S", false),
    ] {
        let cases = (0..n).flat_map(|i| {
            s.basis().iter().enumerate().map(move |(b, v)| {
                let ei = unit_vector(n, i);
                let p = if left {
                    a.mul_unchecked(&ei, v)
                } else {
                    a.mul_unchecked(v, &ei)
                };
                // lhs: the product; rhs: its projection onto S (equal iff p ∈ S)
                let proj = s.pivot_projection(&p);
                (vec![i, b], p, proj)
            })
        });
        report.push(Check::evaluate(name, desc, cases));
    }
    Ok(report)
}

/// `A/I` as an `A`-bimodule with its canonical projection.
///
/// Coordinates of `A/I` are the cosets of `e_c` for the non-pivot columns `c`
/// of the echelon basis of `I`, in increasing order.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub ideal: Subspace,
    pub bimodule: Bimodule,
    /// `π : A → A/I`, a `(dim A − dim I) × dim A` matrix.
    pub projection: Matrix,
    /// Section `A/I → A` sending each coset coordinate to its standard representative.
    pub section: Matrix,
}

impl Quotient {
    pub fn dim(&self) -> usize {
        self.bimodule.dim()
    }
}

fn quotient_maps(a: &Algebra, ideal: &Subspace) -> (Vec<usize>, Matrix, Matrix) {
    let m = a.dim();
    let free: Vec<usize> = (0..m).filter(|c| !ideal.pivots().contains(c)).collect();
    let k = free.len();
    // reducing e_p modulo I: pivot columns p map to −(row restricted to free columns)
    let mut projection = Matrix::zeros(k, m);
    for (qi, &c) in free.iter().enumerate() {
        projection[(qi, c)] = one();
    }
    for (p, row) in ideal.pivots().iter().zip(ideal.basis()) {
        for (qi, &c) in free.iter().enumerate() {
            projection[(qi, *p)] = -row[c].clone();
        }
    }
    let section = Matrix::from_fn(m, k, |r, c| if r == free[c] { one() } else { Rational::zero() });
    (free, projection, section)
}

pub fn quotient_bimodule(a: &Algebra, ideal: &Subspace) -> Result<Quotient> {
    let report = ideal_check(a, ideal)?;
    if let Some(c) = report.first_failure() {
        return Err(Error::hypothesis_with(
            "ideal",
            c.witness.clone().expect("failed check has witness"),
        ));
    }
    let m = a.dim();
    let (free, projection, section) = quotient_maps(a, ideal);
    let names: Vec<String> = free
        .iter()
        .map(|&c| format!("[{}]", a.basis_names()[c]))
        .collect();
    let bimodule = Bimodule::from_tables(
        a,
        names,
        |i, j| projection.mul_vec(&a.mul_unchecked(&unit_vector(m, i), &unit_vector(m, free[j]))),
        |j, i| projection.mul_vec(&a.mul_unchecked(&unit_vector(m, free[j]), &unit_vector(m, i))),
    )
    .map_err(|e| Error::Internal(format!("quotient bimodule axioms: {e}")))?;

    let regular = Bimodule::regular(a);
    let hom = is_module_hom(a, &regular, &bimodule, &projection, Side::Both)?;
    if !hom.passed() || projection.rank() != bimodule.dim() {
        return Err(Error::Internal(
            "quotient projection is not a surjective bimodule map".into(),
        ));
    }
    Ok(Quotient {
        ideal: ideal.clone(),
        bimodule,
        projection,
        section,
    })
}

/// The quotient algebra `A/I` on the same coordinates as [`quotient_bimodule`].
pub fn quotient_algebra(a: &Algebra, ideal: &Subspace) -> Result<Algebra> {
    let report = ideal_check(a, ideal)?;
    if let Some(c) = report.first_failure() {
        return Err(Error::hypothesis_with(
            "ideal",
            c.witness.clone().expect("failed check has witness"),
        ));
    }
    let m = a.dim();
    let (free, projection, _) = quotient_maps(a, ideal);
    let names = free
        .iter()
        .map(|&c| format!("[{}]", a.basis_names()[c]))
        .collect();
    Algebra::from_table(names, |i, j| {
        projection.mul_vec(&a.mul_unchecked(&unit_vector(m, free[i]), &unit_vector(m, free[j])))
    })
    .map_err(|e| Error::Internal(format!("quotient algebra: {e}")))
}
