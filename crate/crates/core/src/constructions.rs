//! Recipes that build derivations on a module extension from simpler data.
//!
//! Every recipe audits its hypotheses first and rejects with the name of the
//! failing hypothesis and a witness. Every emitted derivation is verified on
//! its extension before it is returned.

use std::fmt;

use num_traits::Zero;

use crate::algebra::{check_shape, is_module_hom, Algebra, Bimodule, Side};
use crate::blocks::{assemble, check_block_conditions, BlockDecomposition};
use crate::derivations::is_derivation;
use crate::error::{Error, Result, Violation};
use crate::extension::{quotient_bimodule, trivial_extension, ModuleExtension, Quotient};
use crate::linalg::{add_vec, unit_vector, Matrix, Subspace};
use crate::report::{Check, ConditionReport};
use crate::structure::is_idempotent;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Recipe {
    /// `D(a,u) = (0, δ(a))` for a derivation `δ : A → U`.
    Lift,
    /// `D(a,x) = (δ(a), φδψ(x))` along bimodule maps with `φψ = I_U`.
    Transport,
    /// `D(a,u) = (δ(a), δ(u) + I)` on `T(A, A/I)`.
    Quotient,
    /// `D(a,x) = (δ(a), δ(x)p)` on `T(A, Ap)`.
    Corner,
}

impl Recipe {
    pub fn name(self) -> &'static str {
        match self {
            Recipe::Lift => "lift",
            Recipe::Transport => "transport",
            Recipe::Quotient => "quotient",
            Recipe::Corner => "corner",
        }
    }
}

impl fmt::Display for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug)]
pub struct ConstructionResult {
    pub recipe: Recipe,
    pub extension: ModuleExtension,
    pub derivation: Matrix,
    pub blocks: BlockDecomposition,
    pub verification: ConditionReport,
}

fn require(report: ConditionReport, hypothesis: &str) -> Result<()> {
    match report.first_failure() {
        None => Ok(()),
        Some(c) => Err(match &c.witness {
            Some(w) => Error::hypothesis_with(hypothesis, w.clone()),
            None => Error::hypothesis(hypothesis, c.to_string()),
        }),
    }
}

fn require_derivation_of(a: &Algebra, delta: &Matrix) -> Result<()> {
    check_shape("δ", delta, a.dim(), a.dim())?;
    require(
        is_derivation(a, &Bimodule::regular(a), delta)?,
        "δ is a derivation of A",
    )
}

/// Assembles `D` from its blocks and verifies it on `T`, together with any
/// recipe-specific checks.
fn finish(
    recipe: Recipe,
    t: ModuleExtension,
    blocks: BlockDecomposition,
    extra: Vec<Check>,
) -> Result<ConstructionResult> {
    let derivation = assemble(&t, &blocks)?;
    let mut verification = ConditionReport::new();
    for c in extra {
        verification.push(c);
    }
    let mut on_t = is_derivation(t.total(), &Bimodule::regular(t.total()), &derivation)?;
    on_t.checks[0].name = "derivation-on-T".into();
    verification.extend(on_t);
    verification.extend(check_block_conditions(&t, &blocks)?);
    if !verification.passed() {
        let failed = verification.first_failure().map(|c| c.to_string()).unwrap_or_default();
        return Err(Error::Internal(format!("{recipe} produced an invalid derivation: {failed}")));
    }
    Ok(ConstructionResult {
        recipe,
        extension: t,
        derivation,
        blocks,
        verification,
    })
}

/// `τ(ax) = aτ(x) + δ(a)x` and `τ(xa) = τ(x)a + xδ(a)` on basis pairs.
fn tau_identities(a: &Algebra, u: &Bimodule, delta: &Matrix, tau: &Matrix) -> Vec<Check> {
    let (m, n) = (a.dim(), u.dim());
    let pairs = || (0..m).flat_map(move |i| (0..n).map(move |j| (i, j)));
    let left = Check::evaluate(
        "tau-left",
        "τ(ax) = aτ(x) + δ(a)x",
        pairs().map(|(i, j)| {
            let lhs = tau.mul_vec(u.left_basis_action(i, j));
            let rhs = add_vec(
                &u.act_left_unchecked(&unit_vector(m, i), &tau.column(j)),
                &u.act_left_unchecked(&delta.column(i), &unit_vector(n, j)),
            );
            (vec![i, j], lhs, rhs)
        }),
    );
    let right = Check::evaluate(
        "tau-right",
        "τ(xa) = τ(x)a + xδ(a)",
        pairs().map(|(i, j)| {
            let lhs = tau.mul_vec(u.right_basis_action(j, i));
            let rhs = add_vec(
                &u.act_right_unchecked(&tau.column(j), &unit_vector(m, i)),
                &u.act_right_unchecked(&unit_vector(n, j), &delta.column(i)),
            );
            (vec![i, j], lhs, rhs)
        }),
    );
    vec![left, right]
}

/// `D(a,u) = (0, δ(a))`. Rejects when `δ : A → U` is not a derivation.
pub fn lift(t: &ModuleExtension, delta: &Matrix) -> Result<ConstructionResult> {
    let (a, u) = (t.base(), t.module());
    check_shape("δ", delta, u.dim(), a.dim())?;
    require(is_derivation(a, u, delta)?, "δ is a derivation A → U")?;
    let blocks = BlockDecomposition {
        delta2: delta.clone(),
        ..BlockDecomposition::zero(t)
    };
    finish(Recipe::Lift, t.clone(), blocks, Vec::new())
}

/// `D(a,x) = (δ(a), τ(x))` with `τ = φ∘δ∘ψ`, for bimodule maps
/// `φ : A → U`, `ψ : U → A` with `φ∘ψ = I_U`.
pub fn transport(
    t: &ModuleExtension,
    delta: &Matrix,
    phi: &Matrix,
    psi: &Matrix,
) -> Result<ConstructionResult> {
    let (a, u) = (t.base(), t.module());
    let (m, n) = (a.dim(), u.dim());
    check_shape("φ", phi, n, m)?;
    check_shape("ψ", psi, m, n)?;
    require_derivation_of(a, delta)?;
    let reg = Bimodule::regular(a);
    require(
        is_module_hom(a, &reg, u, phi, Side::Both)?,
        "φ is an A-bimodule map",
    )?;
    require(
        is_module_hom(a, u, &reg, psi, Side::Both)?,
        "ψ is an A-bimodule map",
    )?;
    let phi_psi = phi.mul(psi);
    require(
        ConditionReport {
            checks: vec![Check::evaluate(
                "retraction",
                "φ(ψ(u)) = u",
                (0..n).map(|j| (vec![j], phi_psi.column(j), unit_vector(n, j))),
            )],
        },
        "φ∘ψ = I_U",
    )?;

    let tau = phi.mul(delta).mul(psi);
    let extra = tau_identities(a, u, delta, &tau);
    let blocks = BlockDecomposition {
        delta1: delta.clone(),
        tau2: tau,
        ..BlockDecomposition::zero(t)
    };
    finish(Recipe::Transport, t.clone(), blocks, extra)
}

/// On `T(A, A/I)`: `D(a, u) = (δ(a), τ(u))` with `τ(a + I) = δ(a) + I`.
///
/// Returns the quotient data alongside the construction.
pub fn quotient_derivation(
    a: &Algebra,
    ideal: &Subspace,
    delta: &Matrix,
) -> Result<(ConstructionResult, Quotient)> {
    let quotient = quotient_bimodule(a, ideal)?;
    require_derivation_of(a, delta)?;
    for (b, v) in ideal.basis().iter().enumerate() {
        let image = delta.mul_vec(v);
        if !ideal.contains(&image) {
            return Err(Error::hypothesis_with(
                "δ(I) ⊆ I",
                Violation {
                    identity: "δ(s) ∈ I".into(),
                    indices: vec![b],
                    rhs: ideal.pivot_projection(&image),
                    lhs: image,
                },
            ));
        }
    }
    let pi = &quotient.projection;
    let tau = pi.mul(delta).mul(&quotient.section);
    let lhs = pi.mul(delta);
    let rhs = tau.mul(pi);
    let square = Check::evaluate(
        "commuting-square",
        "π(δ(a)) = τ(π(a))",
        (0..a.dim()).map(|p| (vec![p], lhs.column(p), rhs.column(p))),
    );
    let t = trivial_extension(a, &quotient.bimodule)?;
    let mut extra = vec![square];
    extra.extend(tau_identities(a, &quotient.bimodule, delta, &tau));
    let blocks = BlockDecomposition {
        delta1: delta.clone(),
        tau2: tau,
        ..BlockDecomposition::zero(&t)
    };
    Ok((finish(Recipe::Quotient, t, blocks, extra)?, quotient))
}

/// The left ideal `Ap` with the inherited left action and zero right action.
#[derive(Clone, Debug)]
pub struct CornerModule {
    pub bimodule: Bimodule,
    /// `Ap` inside `A`, in echelon form; module coordinates are echelon coordinates.
    pub subspace: Subspace,
    /// `dim A × dim Ap`, columns are the basis of `Ap`.
    pub inclusion: Matrix,
}

fn require_nontrivial_idempotent(a: &Algebra, p: &[crate::linalg::Rational]) -> Result<()> {
    crate::algebra::check_len("p", p, a.dim())?;
    let status = is_idempotent(a, p)?;
    if !status.nontrivial {
        return Err(Error::hypothesis("p ≠ 0", "p is the zero element"));
    }
    if !status.idempotent {
        return Err(Error::hypothesis_with(
            "p² = p",
            Violation {
                identity: "p·p = p".into(),
                indices: Vec::new(),
                lhs: a.mul_unchecked(p, p),
                rhs: p.to_vec(),
            },
        ));
    }
    Ok(())
}

pub fn corner_module(a: &Algebra, p: &[crate::linalg::Rational]) -> Result<CornerModule> {
    require_nontrivial_idempotent(a, p)?;
    let m = a.dim();
    let subspace = Subspace::column_space(&a.right_mul_matrix(p));
    let basis = subspace.basis().to_vec();
    let names: Vec<String> = basis
        .iter()
        .enumerate()
        .map(|(j, b)| {
            let nonzero: Vec<usize> = (0..m).filter(|&i| !b[i].is_zero()).collect();
            match nonzero.as_slice() {
                [i] if b[*i] == num_traits::One::one() => a.basis_names()[*i].clone(),
                _ => format!("x{}", j + 1),
            }
        })
        .collect();
    let n = basis.len();
    let mut coords_err = None;
    let bimodule = Bimodule::from_tables(
        a,
        names,
        |i, j| {
            let prod = a.mul_unchecked(&unit_vector(m, i), &basis[j]);
            subspace.coordinates(&prod).unwrap_or_else(|| {
                coords_err = Some(format!("e_{i}·x_{j} leaves Ap"));
                crate::linalg::zeros(n)
            })
        },
        |_, _| crate::linalg::zeros(n),
    )
    .map_err(|e| Error::Internal(format!("corner module axioms: {e}")))?;
    if let Some(e) = coords_err {
        return Err(Error::Internal(e));
    }
    let inclusion = subspace.basis_matrix();
    Ok(CornerModule {
        bimodule,
        subspace,
        inclusion,
    })
}

/// On `T(A, Ap)`: `D(a, x) = (δ(a), δ(x)p)`.
pub fn corner_tau(
    a: &Algebra,
    p: &[crate::linalg::Rational],
    delta: &Matrix,
) -> Result<(ConstructionResult, CornerModule)> {
    let corner = corner_module(a, p)?;
    require_derivation_of(a, delta)?;
    let mut columns = Vec::with_capacity(corner.subspace.dim());
    for x in corner.subspace.basis() {
        let image = a.mul_unchecked(&delta.mul_vec(x), p);
        let coords = corner
            .subspace
            .coordinates(&image)
            .ok_or_else(|| Error::Internal("δ(x)p escaped Ap".into()))?;
        columns.push(coords);
    }
    let n = corner.subspace.dim();
    let tau = Matrix::from_columns(n, &columns)?;
    let t = trivial_extension(a, &corner.bimodule)?;
    let extra = tau_identities(a, &corner.bimodule, delta, &tau);
    let blocks = BlockDecomposition {
        delta1: delta.clone(),
        tau2: tau,
        ..BlockDecomposition::zero(&t)
    };
    Ok((finish(Recipe::Corner, t, blocks, extra)?, corner))
}
