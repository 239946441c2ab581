//! Block structure of linear maps on `T(A,U)`.
//!
//! A linear map `D` on `T(A,U)` splits as
//!
//! ```text
//! D(a, u) = (δ₁(a) + τ₁(u), δ₂(a) + τ₂(u))
//! ```
//!
//! with `δ₁ : A → A`, `τ₁ : U → A`, `δ₂ : A → U`, `τ₂ : U → U`. `D` is a
//! derivation exactly when
//!
//! - C1: `δ₁` is a derivation of `A`,
//! - C2: `δ₂` is a derivation `A → U`,
//! - C3: `τ₂(au) = aτ₂(u) + δ₁(a)u`,
//! - C4: `τ₂(ua) = τ₂(u)a + uδ₁(a)`,
//! - C5: `τ₁` is an `A`-bimodule map,
//! - C6: `uτ₁(v) + τ₁(u)v = 0`.
//!
//! C3 and C4 couple `τ₂` to `δ₁`; this is what expanding the Leibniz rule
//! against `(a,u)(b,v) = (ab, av+ub)` produces. A variant with `δ₂` in place
//! of `δ₁` is also reported, as an informational check, whenever it can be
//! evaluated (it needs a product of two elements of `U`, so only when `U` is
//! the regular bimodule).

use crate::algebra::{check_shape, is_module_hom, Algebra, Bimodule, Side};
use crate::derivations::{inner_derivation, inner_space, is_derivation};
use crate::error::{Error, Result};
use crate::extension::ModuleExtension;
use crate::linalg::{add_vec, solve, unit_vector, zeros, Matrix, Rational};
use crate::report::{Check, ConditionReport};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDecomposition {
    /// `A → A`
    pub delta1: Matrix,
    /// `U → A`
    pub tau1: Matrix,
    /// `A → U`
    pub delta2: Matrix,
    /// `U → U`
    pub tau2: Matrix,
}

impl BlockDecomposition {
    pub fn zero(t: &ModuleExtension) -> Self {
        let (m, n) = (t.base_dim(), t.module_dim());
        BlockDecomposition {
            delta1: Matrix::zeros(m, m),
            tau1: Matrix::zeros(m, n),
            delta2: Matrix::zeros(n, m),
            tau2: Matrix::zeros(n, n),
        }
    }

    fn check_shapes(&self, t: &ModuleExtension) -> Result<()> {
        let (m, n) = (t.base_dim(), t.module_dim());
        check_shape("δ₁", &self.delta1, m, m)?;
        check_shape("τ₁", &self.tau1, m, n)?;
        check_shape("δ₂", &self.delta2, n, m)?;
        check_shape("τ₂", &self.tau2, n, n)
    }
}

fn check_square(t: &ModuleExtension, d: &Matrix) -> Result<()> {
    check_shape("map on T(A,U)", d, t.dim(), t.dim())
}

pub fn blocks_of(t: &ModuleExtension, d: &Matrix) -> Result<BlockDecomposition> {
    check_square(t, d)?;
    let (m, n) = (t.base_dim(), t.module_dim());
    Ok(BlockDecomposition {
        delta1: d.block(0, 0, m, m),
        tau1: d.block(0, m, m, n),
        delta2: d.block(m, 0, n, m),
        tau2: d.block(m, m, n, n),
    })
}

/// The block matrix `[[δ₁, τ₁], [δ₂, τ₂]]`.
pub fn assemble(t: &ModuleExtension, b: &BlockDecomposition) -> Result<Matrix> {
    b.check_shapes(t)?;
    let m = t.base_dim();
    let mut d = Matrix::zeros(t.dim(), t.dim());
    d.set_block(0, 0, &b.delta1);
    d.set_block(0, m, &b.tau1);
    d.set_block(m, 0, &b.delta2);
    d.set_block(m, m, &b.tau2);
    Ok(d)
}

fn is_regular(a: &Algebra, u: &Bimodule) -> bool {
    let reg = Bimodule::regular(a);
    u.left_tensor() == reg.left_tensor() && u.right_tensor() == reg.right_tensor()
}

fn rename(mut c: Check, name: &str) -> Check {
    c.name = name.to_string();
    c
}

/// Evaluates C1–C6 and, where computable, the informational `δ₂`-coupled
/// variants of C3/C4.
pub fn check_block_conditions(t: &ModuleExtension, b: &BlockDecomposition) -> Result<ConditionReport> {
    b.check_shapes(t)?;
    let a = t.base();
    let u = t.module();
    let (m, n) = (a.dim(), u.dim());
    let regular = Bimodule::regular(a);
    let ea = |i: usize| unit_vector(m, i);
    let eu = |j: usize| unit_vector(n, j);
    let pairs = || (0..m).flat_map(move |i| (0..n).map(move |j| (i, j)));

    let mut report = ConditionReport::new();

    let mut c1 = is_derivation(a, &regular, &b.delta1)?.checks.remove(0);
    c1.description = "δ₁(ab) = aδ₁(b) + δ₁(a)b".into();
    report.push(rename(c1, "C1"));

    let mut c2 = is_derivation(a, u, &b.delta2)?.checks.remove(0);
    c2.description = "δ₂(ab) = aδ₂(b) + δ₂(a)b".into();
    report.push(rename(c2, "C2"));

    report.push(Check::evaluate(
        "C3",
        "τ₂(au) = aτ₂(u) + δ₁(a)u",
        pairs().map(|(i, j)| {
            let lhs = b.tau2.mul_vec(u.left_basis_action(i, j));
            let rhs = add_vec(
                &u.act_left_unchecked(&ea(i), &b.tau2.column(j)),
                &u.act_left_unchecked(&b.delta1.column(i), &eu(j)),
            );
            (vec![i, j], lhs, rhs)
        }),
    ));
    report.push(Check::evaluate(
        "C4",
        "τ₂(ua) = τ₂(u)a + uδ₁(a)",
        pairs().map(|(i, j)| {
            let lhs = b.tau2.mul_vec(u.right_basis_action(j, i));
            let rhs = add_vec(
                &u.act_right_unchecked(&b.tau2.column(j), &ea(i)),
                &u.act_right_unchecked(&eu(j), &b.delta1.column(i)),
            );
            (vec![i, j], lhs, rhs)
        }),
    ));

    let hom = is_module_hom(a, u, &regular, &b.tau1, Side::Both)?;
    let mut c5 = Check::evaluate("C5", "τ₁ is an A-bimodule map", std::iter::empty());
    for c in hom.checks {
        c5.checked += c.checked;
        c5.failures += c.failures;
        if c5.witness.is_none() {
            c5.witness = c.witness;
        }
    }
    report.push(c5);

    report.push(Check::evaluate(
        "C6",
        "uτ₁(v) + τ₁(u)v = 0",
        (0..n).flat_map(|j| (0..n).map(move |k| (j, k))).map(|(j, k)| {
            let lhs = add_vec(
                &u.act_right_unchecked(&eu(j), &b.tau1.column(k)),
                &u.act_left_unchecked(&b.tau1.column(j), &eu(k)),
            );
            (vec![j, k], lhs, zeros(n))
        }),
    ));

    // δ₂-coupled variants: δ₂(a)u multiplies two elements of U
    if is_regular(a, u) {
        report.push(
            Check::evaluate(
                "C3-δ₂",
                "τ₂(au) = aτ₂(u) + δ₂(a)u",
                pairs().map(|(i, j)| {
                    let lhs = b.tau2.mul_vec(u.left_basis_action(i, j));
                    let rhs = add_vec(
                        &u.act_left_unchecked(&ea(i), &b.tau2.column(j)),
                        &a.mul_unchecked(&b.delta2.column(i), &eu(j)),
                    );
                    (vec![i, j], lhs, rhs)
                }),
            )
            .informational(),
        );
        report.push(
            Check::evaluate(
                "C4-δ₂",
                "τ₂(ua) = τ₂(u)a + uδ₂(a)",
                pairs().map(|(i, j)| {
                    let lhs = b.tau2.mul_vec(u.right_basis_action(j, i));
                    let rhs = add_vec(
                        &u.act_right_unchecked(&b.tau2.column(j), &ea(i)),
                        &a.mul_unchecked(&eu(j), &b.delta2.column(i)),
                    );
                    (vec![i, j], lhs, rhs)
                }),
            )
            .informational(),
        );
    } else {
        let why = "needs a product on U; only defined when U is the regular bimodule";
        report.push(Check::skipped("C3-δ₂", "τ₂(au) = aτ₂(u) + δ₂(a)u", why));
        report.push(Check::skipped("C4-δ₂", "τ₂(ua) = τ₂(u)a + uδ₂(a)", why));
    }
    Ok(report)
}

fn require_derivation(t: &ModuleExtension, d: &Matrix) -> Result<()> {
    check_square(t, d)?;
    let report = is_derivation(t.total(), &Bimodule::regular(t.total()), d)?;
    match report.first_failure() {
        None => Ok(()),
        Some(c) => Err(Error::hypothesis_with(
            "derivation on T(A,U)",
            c.witness.clone().expect("failed check has witness"),
        )),
    }
}

/// `D = D₁ + D₂` with `D₂(a,u) = (0, δ₂(a))`.
pub fn split_d1_d2(t: &ModuleExtension, d: &Matrix) -> Result<(Matrix, Matrix)> {
    require_derivation(t, d)?;
    let b = blocks_of(t, d)?;
    let d2 = assemble(
        t,
        &BlockDecomposition {
            delta2: b.delta2.clone(),
            ..BlockDecomposition::zero(t)
        },
    )?;
    let d1 = d.sub(&d2);
    let reg = Bimodule::regular(t.total());
    for (name, part) in [("D₁", &d1), ("D₂", &d2)] {
        if !is_derivation(t.total(), &reg, part)?.passed() {
            return Err(Error::Internal(format!("{name} is not a derivation")));
        }
    }
    Ok((d1, d2))
}

/// An element `(b, v)` of `T(A,U)` with `D = ad_(b,v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InnerWitness {
    pub b: Vec<Rational>,
    pub v: Vec<Rational>,
}

/// Solves `D = ad_(b,v)` jointly for `(b, v)`; `ad_x(y) = yx − xy`.
///
/// The answer is cross-checked against membership of `D` in the inner
/// derivation space of `T(A,U)`.
pub fn inner_witness(t: &ModuleExtension, d: &Matrix) -> Result<Option<InnerWitness>> {
    require_derivation(t, d)?;
    let total = t.total();
    let reg = Bimodule::regular(total);
    let dim = t.dim();
    let mut columns = Vec::with_capacity(dim);
    for s in 0..dim {
        columns.push(inner_derivation(total, &reg, &unit_vector(dim, s))?.into_row_major());
    }
    let system = Matrix::from_columns(dim * dim, &columns)?;
    let solution = solve(&system, d.as_row_major());
    let member = inner_space(total, &reg)?.contains(d.as_row_major());
    if solution.is_some() != member {
        return Err(Error::Internal(
            "inner witness disagrees with inner-space membership".into(),
        ));
    }
    Ok(solution.map(|x| {
        let (b, v) = t.split(&x);
        InnerWitness {
            b: b.to_vec(),
            v: v.to_vec(),
        }
    }))
}

/// `ad_(b,v)` on `T(A,U)`.
pub fn inner_on_extension(t: &ModuleExtension, b: &[Rational], v: &[Rational]) -> Result<Matrix> {
    let x = t.pair(b, v)?;
    inner_derivation(t.total(), &Bimodule::regular(t.total()), &x)
}
