//! Fixtures shared by the criterion benches.

use modext_core::catalog;
use modext_core::{trivial_extension, Algebra, Bimodule, ModuleExtension};

/// `(label, A)` pairs of increasing size.
pub fn algebras() -> Vec<(&'static str, Algebra)> {
    vec![
        ("dual", catalog::dual_numbers()),
        ("UT", catalog::upper_triangular()),
        ("M2", catalog::matrix_algebra(2)),
        ("Q[x]/x4", catalog::truncated_polynomial(4)),
        ("M2+M2", catalog::direct_sum(&catalog::matrix_algebra(2), &catalog::matrix_algebra(2))),
        ("M3", catalog::matrix_algebra(3)),
    ]
}

/// `T(A, A)` for each fixture algebra.
pub fn self_extensions() -> Vec<(&'static str, ModuleExtension)> {
    algebras()
        .into_iter()
        .filter(|(_, a)| a.dim() <= 4)
        .map(|(name, a)| {
            let t = trivial_extension(&a, &Bimodule::regular(&a)).expect("regular bimodule");
            (name, t)
        })
        .collect()
}
