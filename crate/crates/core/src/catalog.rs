//! Standard small algebras and bimodules used by tests, benches and the CLI
//! example files.

use num_traits::{One, Zero};

use crate::algebra::{Algebra, Bimodule};
use crate::constructions::corner_module;
use crate::extension::quotient_bimodule;
use crate::error::Result;
use crate::linalg::{q, unit_vector, zeros, Rational, Subspace};

fn names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{}", i + 1)).collect()
}

/// The rationals as a 1-dimensional algebra.
pub fn field() -> Algebra {
    Algebra::new(vec!["1".into()], vec![q(1)]).expect("ℚ is associative")
}

/// `n`-dimensional algebra in which every product vanishes.
pub fn zero_product(n: usize) -> Algebra {
    Algebra::new(names("z", n), zeros(n * n * n)).expect("zero product is associative")
}

/// `ℚ[ε]/(ε²)` on the basis `1, ε`.
pub fn dual_numbers() -> Algebra {
    truncated_polynomial_named(2, vec!["1".into(), "ε".into()])
}

/// `ℚ[x]/(xⁿ)` on the basis `1, x, …, x^{n-1}`.
pub fn truncated_polynomial(n: usize) -> Algebra {
    let names = (0..n)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        })
        .collect();
    truncated_polynomial_named(n, names)
}

fn truncated_polynomial_named(n: usize, names: Vec<String>) -> Algebra {
    Algebra::from_table(names, |i, j| {
        if i + j < n {
            unit_vector(n, i + j)
        } else {
            zeros(n)
        }
    })
    .expect("truncated polynomial ring is associative")
}

/// `M_n(ℚ)` on the matrix units `E_ij`, ordered row-major.
pub fn matrix_algebra(n: usize) -> Algebra {
    let names = (0..n)
        .flat_map(|i| (0..n).map(move |j| format!("E{}{}", i + 1, j + 1)))
        .collect();
    let d = n * n;
    Algebra::from_table(names, |a, b| {
        let (i, j) = (a / n, a % n);
        let (k, l) = (b / n, b % n);
        if j == k {
            unit_vector(d, i * n + l)
        } else {
            zeros(d)
        }
    })
    .expect("matrix units are associative")
}

/// Upper-triangular 2×2 matrices on the basis `E11, E12, E22`.
pub fn upper_triangular() -> Algebra {
    // (row, col) of each basis element
    const UNITS: [(usize, usize); 3] = [(0, 0), (0, 1), (1, 1)];
    Algebra::from_table(vec!["E11".into(), "E12".into(), "E22".into()], |a, b| {
        let (i, j) = UNITS[a];
        let (k, l) = UNITS[b];
        if j != k {
            return zeros(3);
        }
        let idx = UNITS.iter().position(|&u| u == (i, l)).expect("upper triangular");
        unit_vector(3, idx)
    })
    .expect("upper triangular matrices are associative")
}

/// `ℚⁿ` with coordinatewise product.
pub fn diagonal(n: usize) -> Algebra {
    Algebra::from_table(names("d", n), |i, j| {
        if i == j {
            unit_vector(n, i)
        } else {
            zeros(n)
        }
    })
    .expect("coordinatewise product is associative")
}

/// `ℚ(i)` on the basis `1, i`.
pub fn gaussian_rationals() -> Algebra {
    Algebra::from_table(vec!["1".into(), "i".into()], |a, b| match (a, b) {
        (0, k) | (k, 0) => unit_vector(2, k),
        _ => vec![q(-1), q(0)],
    })
    .expect("ℚ(i) is associative")
}

/// Block-diagonal product `A ⊕ B`.
pub fn direct_sum(a: &Algebra, b: &Algebra) -> Algebra {
    let (m, n) = (a.dim(), b.dim());
    let d = m + n;
    let mut basis: Vec<String> = a.basis_names().iter().map(|s| format!("{s}.1")).collect();
    basis.extend(b.basis_names().iter().map(|s| format!("{s}.2")));
    Algebra::from_table(basis, |i, j| {
        let mut out = zeros(d);
        if i < m && j < m {
            out[..m].clone_from_slice(a.basis_product(i, j));
        } else if i >= m && j >= m {
            out[m..].clone_from_slice(b.basis_product(i - m, j - m));
        }
        out
    })
    .expect("direct sum of associative algebras is associative")
}

/// `ℚⁿ` as column vectors over `M_n(ℚ)`, with the zero right action.
pub fn column_module(n: usize) -> Bimodule {
    let a = matrix_algebra(n);
    Bimodule::from_tables(
        &a,
        names("c", n),
        |e, k| {
            let (i, j) = (e / n, e % n);
            if j == k {
                unit_vector(n, i)
            } else {
                zeros(n)
            }
        },
        |_, _| zeros(n),
    )
    .expect("column module axioms hold")
}

/// One-dimensional bimodule `a·u = χ_L(a) u`, `u·a = χ_R(a) u`.
///
/// Valid exactly when both functionals are multiplicative.
pub fn character_bimodule(a: &Algebra, left: &[Rational], right: &[Rational]) -> Result<Bimodule> {
    Bimodule::from_tables(
        a,
        vec!["u".into()],
        |i, _| vec![left[i].clone()],
        |_, i| vec![right[i].clone()],
    )
}

/// Over `A ⊕ B`, the regular `A`-bimodule with both actions factoring
/// through the projection onto the first summand.
pub fn first_summand_module(a: &Algebra, b: &Algebra) -> Bimodule {
    let sum = direct_sum(a, b);
    let m = a.dim();
    Bimodule::from_tables(
        &sum,
        a.basis_names().to_vec(),
        |i, j| {
            if i < m {
                a.basis_product(i, j).to_vec()
            } else {
                zeros(m)
            }
        },
        |j, i| {
            if i < m {
                a.basis_product(j, i).to_vec()
            } else {
                zeros(m)
            }
        },
    )
    .expect("pullback of the regular bimodule is a bimodule")
}

/// The functional picking out the `i`-th coordinate.
pub fn coordinate_functional(dim: usize, i: usize) -> Vec<Rational> {
    (0..dim)
        .map(|k| if k == i { Rational::one() } else { Rational::zero() })
        .collect()
}

/// A named `(A, U)` pair.
#[derive(Clone, Debug)]
pub struct Example {
    pub name: String,
    pub algebra: Algebra,
    pub module: Bimodule,
}

fn example(name: &str, algebra: &Algebra, module: Bimodule) -> Example {
    Example {
        name: name.to_string(),
        algebra: algebra.clone(),
        module,
    }
}

/// Small pairs with `dim A, dim U ≤ 4`: regular, zero-action, character,
/// column, corner and quotient modules.
pub fn corpus() -> Vec<Example> {
    let qf = field();
    let dual = dual_numbers();
    let m2 = matrix_algebra(2);
    let ut = upper_triangular();
    let diag2 = diagonal(2);
    let gauss = gaussian_rationals();
    let z2 = zero_product(2);
    let t3 = truncated_polynomial(3);
    let span = |n: usize, idx: &[usize]| Subspace::span(n, idx.iter().map(|&i| unit_vector(n, i)));
    let quotient = |a: &Algebra, idx: &[usize]| {
        quotient_bimodule(a, &span(a.dim(), idx))
            .expect("corpus ideals are ideals")
            .bimodule
    };
    let corner = |a: &Algebra, p: usize| {
        corner_module(a, &a.basis_element(p))
            .expect("corpus idempotents are idempotent")
            .bimodule
    };
    let character = |a: &Algebra, l: &[Rational], r: &[Rational]| {
        character_bimodule(a, l, r).expect("corpus characters are multiplicative")
    };
    let dual_chi = vec![q(1), q(0)];
    vec![
        example("Q/regular", &qf, Bimodule::regular(&qf)),
        example("Q/zero-1", &qf, Bimodule::zero_action(&qf, 1)),
        example("Q/zero-2", &qf, Bimodule::zero_action(&qf, 2)),
        example("dual/regular", &dual, Bimodule::regular(&dual)),
        example("dual/zero-1", &dual, Bimodule::zero_action(&dual, 1)),
        example("dual/character", &dual, character(&dual, &dual_chi, &dual_chi)),
        example("dual/left-character", &dual, character(&dual, &dual_chi, &zeros(2))),
        example("dual/quotient-ε", &dual, quotient(&dual, &[1])),
        example("M2/regular", &m2, Bimodule::regular(&m2)),
        example("M2/corner-E11", &m2, corner(&m2, 0)),
        example("M2/column", &m2, column_module(2)),
        example("M2/zero-1", &m2, Bimodule::zero_action(&m2, 1)),
        example("UT/regular", &ut, Bimodule::regular(&ut)),
        example(
            "UT/character-11-22",
            &ut,
            character(&ut, &coordinate_functional(3, 0), &coordinate_functional(3, 2)),
        ),
        example("UT/quotient-E12", &ut, quotient(&ut, &[1])),
        example("UT/quotient-E12-E22", &ut, quotient(&ut, &[1, 2])),
        example("UT/corner-E11", &ut, corner(&ut, 0)),
        example("QxQ/regular", &diag2, Bimodule::regular(&diag2)),
        example(
            "QxQ/character-1-2",
            &diag2,
            character(&diag2, &coordinate_functional(2, 0), &coordinate_functional(2, 1)),
        ),
        example("QxQ/first-summand", &diag2, first_summand_module(&qf, &qf)),
        example("Q(i)/regular", &gauss, Bimodule::regular(&gauss)),
        example("zero2/regular", &z2, Bimodule::regular(&z2)),
        example("zero2/zero-1", &z2, Bimodule::zero_action(&z2, 1)),
        example("Q[x]/x3/regular", &t3, Bimodule::regular(&t3)),
        example("Q[x]/x3/quotient-x2", &t3, quotient(&t3, &[2])),
    ]
}
