//! Structural predicates: center, radical, minimal polynomials, simplicity,
//! idempotents and surjective left module maps.

use std::fmt;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{check_len, is_module_hom, Algebra, Bimodule, Side};
use crate::error::{Error, Result};
use crate::factor::{factor, Factorization};
use crate::linalg::{nullspace_of_rows, solve, unit_vector, Echelon, Matrix, Rational, Subspace};
use crate::poly::Polynomial;

/// Seed used when the caller does not supply one.
pub const DEFAULT_SEED: u64 = 0x6d6f_6465_7874;

/// Number of random central elements tried before giving up.
pub const DEFAULT_RETRIES: usize = 8;

/// `A⁺ = ℚ·1 ⊕ A`; the adjoined unit is basis index 0.
pub fn unitization(a: &Algebra) -> Algebra {
    let m = a.dim();
    let n = m + 1;
    let mut names = vec!["1⁺".to_string()];
    names.extend(a.basis_names().iter().cloned());
    let mut mul = vec![Rational::zero(); n * n * n];
    for i in 0..n {
        for j in 0..n {
            let out = &mut mul[(i * n + j) * n..(i * n + j + 1) * n];
            match (i, j) {
                (0, 0) => out[0] = Rational::one(),
                (0, j) => out[j] = Rational::one(),
                (i, 0) => out[i] = Rational::one(),
                (i, j) => {
                    for (k, c) in a.basis_product(i - 1, j - 1).iter().enumerate() {
                        out[k + 1] = c.clone();
                    }
                }
            }
        }
    }
    Algebra::new_unchecked(names, mul)
}

pub fn center(a: &Algebra) -> Subspace {
    let m = a.dim();
    let rows = (0..m).flat_map(|i| {
        (0..m).map(move |k| {
            (0..m)
                .map(|p| a.constant(p, i, k) - a.constant(i, p, k))
                .collect::<Vec<_>>()
        })
    });
    nullspace_of_rows(m, rows)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalReport {
    pub radical: Subspace,
    pub is_semisimple: bool,
    /// Smallest `k` with `R^k = 0`, checked up to `dim + 1`.
    pub nilpotency_index: Option<usize>,
    pub method: &'static str,
}

/// Trace-form radical: `{x : tr(L_{xy}) = 0 ∀y}`, over the unitization when `A` has no unit.
pub fn radical(a: &Algebra) -> RadicalReport {
    let m = a.dim();
    let (radical, method) = if a.is_unital() || m == 0 {
        (trace_radical(a), "trace form tr(L_{xy}) on A (unital)")
    } else {
        let plus = unitization(a);
        let r = trace_radical(&plus);
        debug_assert!(r.basis().iter().all(|v| v[0].is_zero()));
        let inside = Subspace::span(m, r.basis().iter().map(|v| v[1..].to_vec()));
        (inside, "trace form tr(L_{xy}) on the unitization A⁺")
    };
    let nilpotency_index = nilpotency_index(a, &radical);
    RadicalReport {
        is_semisimple: radical.is_zero(),
        radical,
        nilpotency_index,
        method,
    }
}

fn trace_radical(a: &Algebra) -> Subspace {
    let m = a.dim();
    // t_k = tr(L_{e_k})
    let t: Vec<Rational> = (0..m)
        .map(|k| (0..m).map(|i| a.constant(k, i, i).clone()).sum())
        .collect();
    let rows = (0..m).map(|j| {
        (0..m)
            .map(|p| {
                a.basis_product(p, j)
                    .iter()
                    .zip(&t)
                    .map(|(c, tk)| c * tk)
                    .sum::<Rational>()
            })
            .collect::<Vec<_>>()
    });
    nullspace_of_rows(m, rows)
}

/// Smallest `k ≤ dim + 1` with `S^k = 0`, where `S^{k+1} = span(S^k · S)`.
pub fn nilpotency_index(a: &Algebra, s: &Subspace) -> Option<usize> {
    let m = a.dim();
    let mut power = s.clone();
    for k in 1..=m + 1 {
        if power.is_zero() {
            return Some(k);
        }
        let products: Vec<Vec<Rational>> = power
            .basis()
            .iter()
            .flat_map(|x| s.basis().iter().map(move |y| a.mul_unchecked(x, y)))
            .collect();
        power = Subspace::span(m, products);
    }
    None
}

/// Monic minimal polynomial of `x`, in `A` when unital and in `A⁺` otherwise.
pub fn min_poly(a: &Algebra, x: &[Rational]) -> Result<Polynomial> {
    check_len("element", x, a.dim())?;
    let (alg, unit, x) = match a.unit_element() {
        Some(e) => (a.clone(), e, x.to_vec()),
        None => {
            let plus = unitization(a);
            let mut y = vec![Rational::zero()];
            y.extend_from_slice(x);
            (plus.clone(), unit_vector(plus.dim(), 0), y)
        }
    };
    let n = alg.dim();
    let mut powers = vec![unit];
    let mut ech = Echelon::new(n);
    ech.insert(powers[0].clone());
    loop {
        let next = alg.mul_unchecked(powers.last().unwrap(), &x);
        if ech.insert(next.clone()) {
            powers.push(next);
            continue;
        }
        let basis = Matrix::from_columns(n, &powers)?;
        let c = solve(&basis, &next)
            .ok_or_else(|| Error::Internal("dependent power not in span".into()))?;
        let mut coeffs: Vec<Rational> = c.into_iter().map(|v| -v).collect();
        coeffs.push(Rational::one());
        return Ok(Polynomial::new(coeffs));
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Yes,
    No,
    Indeterminate,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
            Verdict::Indeterminate => "indeterminate",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicityReport {
    pub simple: Verdict,
    /// Same as `simple`: a finite-dimensional algebra is prime iff it is simple.
    pub prime: Verdict,
    pub radical_dim: usize,
    pub center_dim: usize,
    pub central_element: Option<Vec<Rational>>,
    pub min_poly: Option<Polynomial>,
    pub factorization: Option<Factorization>,
    pub attempts: usize,
    pub reason: String,
}

/// Decides simplicity (hence primeness) with the default retry budget.
pub fn is_simple_prime(a: &Algebra, seed: u64) -> SimplicityReport {
    is_simple_prime_with(a, seed, DEFAULT_RETRIES)
}

pub fn is_simple_prime_with(a: &Algebra, seed: u64, retries: usize) -> SimplicityReport {
    let rad = radical(a);
    let z = center(a);
    let mut report = SimplicityReport {
        simple: Verdict::No,
        prime: Verdict::No,
        radical_dim: rad.radical.dim(),
        center_dim: z.dim(),
        central_element: None,
        min_poly: None,
        factorization: None,
        attempts: 0,
        reason: String::new(),
    };
    if a.dim() == 0 {
        report.reason = "the zero algebra is not simple".into();
        return report;
    }
    if !rad.is_semisimple {
        report.reason = format!("radical has dimension {}", report.radical_dim);
        return report;
    }
    let d = z.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 1..=retries {
        report.attempts = attempt;
        let bound = 10 * attempt as i64;
        let mut x = vec![Rational::zero(); a.dim()];
        for b in z.basis() {
            let c = Rational::from_integer(rng.random_range(-bound..=bound).into());
            crate::linalg::axpy(&mut x, &c, b);
        }
        let mp = min_poly(a, &x).expect("element has the algebra's dimension");
        let fac = factor(&mp);
        let reducible = !fac.is_irreducible();
        let generic = mp.degree() == Some(d);
        if reducible || generic {
            report.simple = Verdict::from_bool(!reducible);
            report.reason = if reducible {
                "a central element has a reducible minimal polynomial, so the center has a nontrivial idempotent".into()
            } else {
                format!("the center is a field of degree {d}")
            };
            report.central_element = Some(x);
            report.min_poly = Some(mp);
            report.factorization = Some(fac);
            report.prime = report.simple;
            return report;
        }
        report.central_element = Some(x);
        report.min_poly = Some(mp);
        report.factorization = Some(fac);
    }
    report.simple = Verdict::Indeterminate;
    report.prime = Verdict::Indeterminate;
    report.reason = format!("no generic central element found in {retries} attempts");
    report
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IdempotentStatus {
    pub idempotent: bool,
    pub nontrivial: bool,
}

pub fn is_idempotent(a: &Algebra, p: &[Rational]) -> Result<IdempotentStatus> {
    check_len("element", p, a.dim())?;
    Ok(IdempotentStatus {
        idempotent: a.mul_unchecked(p, p) == p,
        nontrivial: p.iter().any(|c| !c.is_zero()),
    })
}

/// All left `A`-module maps `A → U`, as flattened `dim U × dim A` row-major matrices.
pub fn left_hom_space(a: &Algebra, u: &Bimodule) -> Result<Subspace> {
    u.check_algebra(a)?;
    let m = a.dim();
    let n = u.dim();
    // φ(e_i e_j) = e_i·φ(e_j), coordinate k; unknown φ[k][p] at k*m + p
    let mut rows = Vec::with_capacity(m * m * n);
    for i in 0..m {
        for j in 0..m {
            for k in 0..n {
                let mut row = vec![Rational::zero(); n * m];
                for (p, c) in a.basis_product(i, j).iter().enumerate() {
                    row[k * m + p] += c;
                }
                for l in 0..n {
                    row[l * m + j] -= &u.left_basis_action(i, l)[k];
                }
                rows.push(row);
            }
        }
    }
    Ok(nullspace_of_rows(n * m, rows))
}

/// Searches the left-hom space for a surjective member.
///
/// Tries `Σ (s+1)·B_s`, then `Σ (j+1)^s·B_s` for `j = 1..=max(r, dim A)`,
/// where `B_0..B_{r-1}` is the canonical basis. `None` means none was found on
/// this schedule, not that none exists.
pub fn find_surjective_left_hom(a: &Algebra, u: &Bimodule) -> Result<Option<Matrix>> {
    let m = a.dim();
    let n = u.dim();
    if n == 0 {
        return Ok(Some(Matrix::zeros(0, m)));
    }
    if n > m {
        return Ok(None);
    }
    let space = left_hom_space(a, u)?;
    let r = space.dim();
    if r == 0 {
        return Ok(None);
    }
    let combine = |coeff: &dyn Fn(usize) -> Rational| -> Matrix {
        let mut v = vec![Rational::zero(); n * m];
        for (s, b) in space.basis().iter().enumerate() {
            crate::linalg::axpy(&mut v, &coeff(s), b);
        }
        Matrix::from_row_major(n, m, v).expect("flattened n×m")
    };
    let mut candidates = vec![combine(&|s| Rational::from_integer((s as i64 + 1).into()))];
    for j in 1..=r.max(m) {
        let base = Rational::from_integer((j as i64 + 1).into());
        candidates.push(combine(&|s| num_traits::pow(base.clone(), s)));
    }
    let regular = Bimodule::regular(a);
    for phi in candidates {
        if phi.rank() == n {
            if !is_module_hom(a, &regular, u, &phi, Side::Left)?.passed() {
                return Err(Error::Internal("left-hom solution fails linearity".into()));
            }
            return Ok(Some(phi));
        }
    }
    Ok(None)
}
