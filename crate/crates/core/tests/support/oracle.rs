//! Naive reference implementations used to cross-check the library.
//!
//! Everything here works directly on raw structure-constant tensors with its
//! own fraction-arithmetic Gaussian elimination; nothing calls into the
//! library's linear algebra, Leibniz system or radical code.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Rank by plain row reduction over a copy of the rows.
pub fn rank(rows: &[Vec<Q>]) -> usize {
    let mut m: Vec<Vec<Q>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] / &pivot;
                for k in c..cols {
                    let delta = &f * &m[r][k];
                    m[i][k] -= delta;
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Raw tensor data for an algebra and a bimodule over it.
#[derive(Clone)]
pub struct Raw {
    pub m: usize,
    pub c: Vec<Q>,
    pub n: usize,
    pub left: Vec<Q>,
    pub right: Vec<Q>,
}

impl Raw {
    pub fn new(a: &modext_core::Algebra, u: &modext_core::Bimodule) -> Self {
        Raw {
            m: a.dim(),
            c: a.structure_constants().to_vec(),
            n: u.dim(),
            left: u.left_tensor().to_vec(),
            right: u.right_tensor().to_vec(),
        }
    }

    pub fn mul(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        product(&self.c, self.m, x, y)
    }

    /// `a · u`
    pub fn act_left(&self, a: &[Q], u: &[Q]) -> Vec<Q> {
        let (m, n) = (self.m, self.n);
        let mut out = vec![Q::zero(); n];
        for i in 0..m {
            for j in 0..n {
                if a[i].is_zero() || u[j].is_zero() {
                    continue;
                }
                for k in 0..n {
                    out[k] += &a[i] * &u[j] * &self.left[(i * n + j) * n + k];
                }
            }
        }
        out
    }

    /// `u · a`
    pub fn act_right(&self, u: &[Q], a: &[Q]) -> Vec<Q> {
        let (m, n) = (self.m, self.n);
        let mut out = vec![Q::zero(); n];
        for j in 0..n {
            for i in 0..m {
                if a[i].is_zero() || u[j].is_zero() {
                    continue;
                }
                for k in 0..n {
                    out[k] += &u[j] * &a[i] * &self.right[(j * m + i) * n + k];
                }
            }
        }
        out
    }
}

pub fn product(c: &[Q], dim: usize, x: &[Q], y: &[Q]) -> Vec<Q> {
    let mut out = vec![Q::zero(); dim];
    for i in 0..dim {
        for j in 0..dim {
            if x[i].is_zero() || y[j].is_zero() {
                continue;
            }
            let s = &x[i] * &y[j];
            for k in 0..dim {
                out[k] += &s * &c[(i * dim + j) * dim + k];
            }
        }
    }
    out
}

pub fn basis(n: usize, i: usize) -> Vec<Q> {
    (0..n).map(|k| if k == i { Q::one() } else { Q::zero() }).collect()
}

fn apply(d: &[Vec<Q>], x: &[Q]) -> Vec<Q> {
    // d is given column by column
    let n = d.first().map_or(0, Vec::len);
    let mut out = vec![Q::zero(); n];
    for (p, col) in d.iter().enumerate() {
        for k in 0..n {
            out[k] += &x[p] * &col[k];
        }
    }
    out
}

/// Leibniz residuals of a map `A → U` given by its columns, over all basis pairs.
pub fn leibniz_residual(raw: &Raw, cols: &[Vec<Q>]) -> Vec<Q> {
    let m = raw.m;
    let mut out = Vec::with_capacity(m * m * raw.n);
    for i in 0..m {
        for j in 0..m {
            let ei = basis(m, i);
            let ej = basis(m, j);
            let lhs = apply(cols, &raw.mul(&ei, &ej));
            let t1 = raw.act_left(&ei, &apply(cols, &ej));
            let t2 = raw.act_right(&apply(cols, &ei), &ej);
            for k in 0..raw.n {
                out.push(&lhs[k] - &t1[k] - &t2[k]);
            }
        }
    }
    out
}

/// `dim Der(A, U)` by brute force: the residual map evaluated on every elementary matrix.
pub fn der_dim(raw: &Raw) -> usize {
    let (m, n) = (raw.m, raw.n);
    let mut images = Vec::with_capacity(m * n);
    for k in 0..n {
        for p in 0..m {
            let cols: Vec<Vec<Q>> = (0..m)
                .map(|c| if c == p { basis(n, k) } else { vec![Q::zero(); n] })
                .collect();
            images.push(leibniz_residual(raw, &cols));
        }
    }
    m * n - rank(&images)
}

/// `dim Inn(A, U)`: rank of `u ↦ (a ↦ au − ua)` over a basis of `U`.
pub fn inner_dim(raw: &Raw) -> usize {
    let (m, n) = (raw.m, raw.n);
    let maps: Vec<Vec<Q>> = (0..n)
        .map(|s| {
            let u = basis(n, s);
            (0..m)
                .flat_map(|p| {
                    let a = basis(m, p);
                    let l = raw.act_left(&a, &u);
                    let r = raw.act_right(&u, &a);
                    l.into_iter().zip(r).map(|(x, y)| x - y).collect::<Vec<_>>()
                })
                .collect()
        })
        .collect();
    rank(&maps)
}

pub fn is_associative(c: &[Q], dim: usize) -> bool {
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                let (ei, ej, ek) = (basis(dim, i), basis(dim, j), basis(dim, k));
                let l = product(c, dim, &product(c, dim, &ei, &ej), &ek);
                let r = product(c, dim, &ei, &product(c, dim, &ej, &ek));
                if l != r {
                    return false;
                }
            }
        }
    }
    true
}

/// Reduced row echelon basis of a span, for comparing subspaces.
pub fn echelon(vectors: &[Vec<Q>], dim: usize) -> Vec<Vec<Q>> {
    let mut m: Vec<Vec<Q>> = vectors.to_vec();
    let mut r = 0;
    for c in 0..dim {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for k in 0..dim {
            m[r][k] = &m[r][k] * &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in 0..dim {
                    let delta = &f * &m[r][k];
                    m[i][k] -= delta;
                }
            }
        }
        r += 1;
    }
    m.truncate(r);
    m
}

/// Two-sided ideal generated by `gens` (no unit assumed).
fn ideal_closure(c: &[Q], dim: usize, gens: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let mut span = echelon(gens, dim);
    loop {
        let mut more = span.clone();
        for x in &span {
            for i in 0..dim {
                let e = basis(dim, i);
                more.push(product(c, dim, &e, x));
                more.push(product(c, dim, x, &e));
            }
        }
        let next = echelon(&more, dim);
        if next.len() == span.len() {
            return span;
        }
        span = next;
    }
}

fn is_nilpotent(c: &[Q], dim: usize, ideal: &[Vec<Q>]) -> bool {
    let mut power = ideal.to_vec();
    for _ in 0..=dim {
        if power.is_empty() {
            return true;
        }
        let products: Vec<Vec<Q>> = power
            .iter()
            .flat_map(|x| ideal.iter().map(move |y| product(c, dim, x, y)))
            .collect();
        power = echelon(&products, dim);
    }
    power.is_empty()
}

/// Sum of all nilpotent ideals generated by vectors supported on at most two
/// basis elements with coefficients in {−1, 0, 1}.
pub fn nilpotent_radical(c: &[Q], dim: usize) -> Vec<Vec<Q>> {
    let mut gens = Vec::new();
    for i in 0..dim {
        gens.push(basis(dim, i));
        for j in i + 1..dim {
            for s in [-1, 1] {
                let mut v = basis(dim, i);
                v[j] = qi(s);
                gens.push(v);
            }
        }
    }
    let mut found: Vec<Vec<Q>> = Vec::new();
    for g in gens {
        let ideal = ideal_closure(c, dim, &[g]);
        if is_nilpotent(c, dim, &ideal) {
            found.extend(ideal);
        }
    }
    echelon(&found, dim)
}

/// Structure constants after the change of basis whose new basis vectors are the columns of `p`.
pub fn change_basis(c: &[Q], dim: usize, p: &[Vec<Q>]) -> Option<Vec<Q>> {
    // solve P y = v by reducing [P | v]
    let solve = |v: &[Q]| -> Option<Vec<Q>> {
        let mut aug: Vec<Vec<Q>> = (0..dim)
            .map(|r| {
                let mut row: Vec<Q> = (0..dim).map(|col| p[col][r].clone()).collect();
                row.push(v[r].clone());
                row
            })
            .collect();
        let ech = echelon(&aug.drain(..).collect::<Vec<_>>(), dim + 1);
        if ech.len() != dim || (0..dim).any(|i| ech[i][i].is_zero()) {
            return None;
        }
        Some(ech.iter().map(|row| row[dim].clone()).collect())
    };
    let mut out = Vec::with_capacity(dim * dim * dim);
    for i in 0..dim {
        for j in 0..dim {
            out.extend(solve(&product(c, dim, &p[i], &p[j]))?);
        }
    }
    Some(out)
}
