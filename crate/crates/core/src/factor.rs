//! Factorization of rational polynomials into monic irreducibles.
//!
//! Square-free decomposition over ℚ, then for each square-free part the
//! Zassenhaus method: factor modulo a small prime (distinct-degree plus
//! Cantor–Zassenhaus equal-degree splitting), Hensel-lift to a power of the
//! prime above the coefficient bound, and recombine lifted factors by trial
//! division over ℤ.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::Rational;
use crate::poly::Polynomial;

/// `unit · Π fᵢ^eᵢ` with monic irreducible `fᵢ`, sorted by degree then coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Rational,
    pub factors: Vec<(Polynomial, usize)>,
}

impl Factorization {
    pub fn is_irreducible(&self) -> bool {
        matches!(self.factors.as_slice(), [(_, 1)])
    }

    pub fn expand(&self) -> Polynomial {
        self.factors
            .iter()
            .fold(Polynomial::constant(self.unit.clone()), |acc, (f, e)| acc.mul(&f.pow(*e)))
    }

    /// Number of irreducible factors counted with multiplicity.
    pub fn count(&self) -> usize {
        self.factors.iter().map(|(_, e)| e).sum()
    }
}

impl std::fmt::Display for Factorization {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "{}", self.unit);
        }
        if !self.unit.is_one() {
            write!(f, "{} · ", self.unit)?;
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(p, e)| {
                let base = if self.factors.len() == 1 && *e == 1 {
                    p.to_string()
                } else {
                    format!("({p})")
                };
                if *e == 1 {
                    base
                } else {
                    format!("{base}^{e}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" · "))
    }
}

pub fn factor(p: &Polynomial) -> Factorization {
    if p.degree().unwrap_or(0) == 0 {
        return Factorization {
            unit: p.leading(),
            factors: Vec::new(),
        };
    }
    let unit = p.leading();
    let mut factors = Vec::new();
    for (part, mult) in squarefree_decomposition(&p.monic()) {
        for f in factor_squarefree(&part) {
            factors.push((f, mult));
        }
    }
    factors.sort_by(|(a, ea), (b, eb)| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.coeffs().cmp(b.coeffs()))
            .then(ea.cmp(eb))
    });
    Factorization { unit, factors }
}

/// Yun's algorithm on a monic polynomial: returns `(aᵢ, i)` with `f = Π aᵢ^i`.
pub fn squarefree_decomposition(f: &Polynomial) -> Vec<(Polynomial, usize)> {
    let mut out = Vec::new();
    let df = f.derivative();
    let b = f.gcd(&df);
    let mut c = f.div_rem(&b).0;
    let mut d = df.div_rem(&b).0.sub(&c.derivative());
    let mut i = 1;
    while c.degree().unwrap_or(0) > 0 {
        let a = c.gcd(&d);
        c = c.div_rem(&a).0;
        d = d.div_rem(&a).0.sub(&c.derivative());
        if a.degree().unwrap_or(0) > 0 {
            out.push((a.monic(), i));
        }
        i += 1;
    }
    out
}

// ---------------------------------------------------------------------------
// integer polynomials, lowest degree first, trimmed

type ZPoly = Vec<BigInt>;

fn ztrim(mut p: ZPoly) -> ZPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn zdeg(p: &ZPoly) -> usize {
    p.len().saturating_sub(1)
}

fn zmul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    ztrim(out)
}

fn zsub(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    ztrim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero))
            .collect(),
    )
}

fn content(p: &ZPoly) -> BigInt {
    p.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Divides by the content and makes the leading coefficient positive.
fn primitive_part(p: &ZPoly) -> ZPoly {
    let mut c = content(p);
    if c.is_zero() {
        return Vec::new();
    }
    if p.last().is_some_and(Signed::is_negative) {
        c = -c;
    }
    p.iter().map(|x| x / &c).collect()
}

/// `a / b` when `b` divides `a` exactly over ℤ.
fn zdiv_exact(a: &ZPoly, b: &ZPoly) -> Option<ZPoly> {
    let db = zdeg(b);
    if a.len() < b.len() {
        return a.is_empty().then(Vec::new);
    }
    let lb = b.last()?;
    let mut rem = a.clone();
    let mut quot = vec![BigInt::zero(); a.len() - db];
    for k in (0..quot.len()).rev() {
        let top = &rem[k + db];
        if top.is_zero() {
            continue;
        }
        let (qk, r) = top.div_rem(lb);
        if !r.is_zero() {
            return None;
        }
        for (j, c) in b.iter().enumerate() {
            rem[k + j] -= &qk * c;
        }
        quot[k] = qk;
    }
    rem.iter().all(Zero::is_zero).then(|| ztrim(quot))
}

fn to_primitive_integer(f: &Polynomial) -> ZPoly {
    let den = f
        .coeffs()
        .iter()
        .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let ints: ZPoly = f
        .coeffs()
        .iter()
        .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
        .collect();
    primitive_part(&ints)
}

fn to_monic_rational(p: &ZPoly) -> Polynomial {
    Polynomial::new(p.iter().map(|c| Rational::from_integer(c.clone())).collect()).monic()
}

fn mod_pos(a: &BigInt, m: &BigInt) -> BigInt {
    let r = a % m;
    if r.is_negative() {
        r + m
    } else {
        r
    }
}

fn mod_symmetric(a: &BigInt, m: &BigInt) -> BigInt {
    let r = mod_pos(a, m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = mod_pos(a, m).extended_gcd(m);
    assert!(e.gcd.is_one(), "not invertible");
    mod_pos(&e.x, m)
}

// ---------------------------------------------------------------------------
// polynomials over F_p, p < 2^31, lowest degree first, trimmed

type FpPoly = Vec<u64>;

fn ftrim(mut p: FpPoly) -> FpPoly {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn fpow_scalar(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn finv(a: u64, p: u64) -> u64 {
    fpow_scalar(a, p - 2, p)
}

fn fadd(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    let n = a.len().max(b.len());
    ftrim(
        (0..n)
            .map(|i| (a.get(i).unwrap_or(&0) + b.get(i).unwrap_or(&0)) % p)
            .collect(),
    )
}

fn fsub(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    let n = a.len().max(b.len());
    ftrim(
        (0..n)
            .map(|i| (a.get(i).unwrap_or(&0) + p - b.get(i).unwrap_or(&0)) % p)
            .collect(),
    )
}

fn fmul(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    ftrim(out)
}

fn fscale(a: &FpPoly, s: u64, p: u64) -> FpPoly {
    ftrim(a.iter().map(|&x| x * s % p).collect())
}

fn fdivrem(a: &FpPoly, b: &FpPoly, p: u64) -> (FpPoly, FpPoly) {
    assert!(!b.is_empty(), "division by zero polynomial mod p");
    if a.len() < b.len() {
        return (Vec::new(), a.clone());
    }
    let db = b.len() - 1;
    let inv = finv(*b.last().unwrap(), p);
    let mut rem = a.clone();
    let mut quot = vec![0u64; a.len() - db];
    for k in (0..quot.len()).rev() {
        let c = rem[k + db] * inv % p;
        if c == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            rem[k + j] = (rem[k + j] + p - c * y % p) % p;
        }
        quot[k] = c;
    }
    rem.truncate(db);
    (ftrim(quot), ftrim(rem))
}

fn fmonic(a: &FpPoly, p: u64) -> FpPoly {
    match a.last() {
        None => Vec::new(),
        Some(&l) => fscale(a, finv(l, p), p),
    }
}

fn fgcd(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = fdivrem(&a, &b, p).1;
        a = b;
        b = r;
    }
    fmonic(&a, p)
}

/// `(s, t)` with `s·a + t·b = 1`, assuming `gcd(a, b) = 1`.
fn fext_gcd(a: &FpPoly, b: &FpPoly, p: u64) -> (FpPoly, FpPoly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1): (FpPoly, FpPoly) = (vec![1], Vec::new());
    let (mut t0, mut t1): (FpPoly, FpPoly) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (qt, r) = fdivrem(&r0, &r1, p);
        let s = fsub(&s0, &fmul(&qt, &s1, p), p);
        let t = fsub(&t0, &fmul(&qt, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    assert_eq!(r0.len(), 1, "factors are not coprime mod p");
    let inv = finv(r0[0], p);
    (fscale(&s0, inv, p), fscale(&t0, inv, p))
}

fn fpowmod(base: &FpPoly, exp: &BigUint, modulus: &FpPoly, p: u64) -> FpPoly {
    let mut result: FpPoly = fdivrem(&vec![1], modulus, p).1;
    let b = fdivrem(base, modulus, p).1;
    for i in (0..exp.bits()).rev() {
        result = fdivrem(&fmul(&result, &result, p), modulus, p).1;
        if exp.bit(i) {
            result = fdivrem(&fmul(&result, &b, p), modulus, p).1;
        }
    }
    result
}

fn fderivative(a: &FpPoly, p: u64) -> FpPoly {
    ftrim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| (i as u64 % p) * c % p)
            .collect(),
    )
}

fn reduce_mod_p(f: &ZPoly, p: u64) -> FpPoly {
    let pb = BigInt::from(p);
    ftrim(
        f.iter()
            .map(|c| mod_pos(c, &pb).to_u64().expect("reduced below p"))
            .collect(),
    )
}

/// Distinct-degree factorization of a monic square-free polynomial.
fn distinct_degree(f: &FpPoly, p: u64) -> Vec<(FpPoly, usize)> {
    let mut out = Vec::new();
    let mut f = f.clone();
    let x: FpPoly = vec![0, 1];
    let mut h = fdivrem(&x, &f, p).1;
    let pexp = BigUint::from(p);
    let mut d = 1;
    while f.len() > 2 * d {
        h = fpowmod(&h, &pexp, &f, p);
        let g = fgcd(&fsub(&h, &x, p), &f, p);
        if g.len() > 1 {
            f = fdivrem(&f, &g, p).0;
            h = fdivrem(&h, &f, p).1;
            out.push((g, d));
        }
        d += 1;
    }
    if f.len() > 1 {
        let deg = f.len() - 1;
        out.push((f, deg));
    }
    out
}

/// Cantor–Zassenhaus splitting of a product of degree-`d` irreducibles.
fn equal_degree(g: &FpPoly, d: usize, p: u64, rng: &mut ChaCha8Rng) -> Vec<FpPoly> {
    let n = g.len() - 1;
    if n == d {
        return vec![g.clone()];
    }
    let exp = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
    loop {
        let a: FpPoly = ftrim((0..n).map(|_| rng.random_range(0..p)).collect());
        if a.len() < 2 {
            continue;
        }
        let b = fsub(&fpowmod(&a, &exp, g, p), &vec![1], p);
        let h = fgcd(&b, g, p);
        if h.len() > 1 && h.len() < g.len() {
            let other = fdivrem(g, &h, p).0;
            let mut out = equal_degree(&h, d, p, rng);
            out.extend(equal_degree(&fmonic(&other, p), d, p, rng));
            return out;
        }
    }
}

fn factor_mod_p(f: &FpPoly, p: u64) -> Vec<FpPoly> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ p);
    let mut out = Vec::new();
    for (g, d) in distinct_degree(f, p) {
        out.extend(equal_degree(&g, d, p, &mut rng));
    }
    out.sort();
    out
}

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..).step_by(2).filter(|&n| (3..).step_by(2).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

/// Lifts `f ≡ g·h (mod p)` to `f ≡ G·H (mod p^k)` with `G` monic and `lc(H) = lc(f)`.
fn hensel_two(f: &ZPoly, g: &FpPoly, h: &FpPoly, p: u64, k: u32) -> (ZPoly, ZPoly) {
    let (s, t) = fext_gcd(g, h, p);
    let pb = BigInt::from(p);
    let to_z = |a: &FpPoly| -> ZPoly { a.iter().map(|&c| BigInt::from(c)).collect() };
    let mut big_g = to_z(g);
    let mut big_h = to_z(h);
    *big_h.last_mut().expect("h is nonzero") = f.last().expect("f is nonzero").clone();
    let mut modulus = pb.clone();
    for _ in 1..k {
        let err = zsub(f, &zmul(&big_g, &big_h));
        let e: ZPoly = err
            .iter()
            .map(|c| {
                debug_assert!((c % &modulus).is_zero());
                c / &modulus
            })
            .collect();
        let e = reduce_mod_p(&e, p);
        let (qt, dg) = fdivrem(&fmul(&t, &e, p), g, p);
        let dh = fadd(&fmul(&s, &e, p), &fmul(&qt, h, p), p);
        for (i, c) in dg.iter().enumerate() {
            big_g[i] += &modulus * BigInt::from(*c);
        }
        for (i, c) in dh.iter().enumerate() {
            big_h[i] += &modulus * BigInt::from(*c);
        }
        modulus *= &pb;
    }
    (ztrim(big_g), ztrim(big_h))
}

fn hensel_multi(f: &ZPoly, factors: &[FpPoly], p: u64, k: u32, pk: &BigInt) -> Vec<ZPoly> {
    let lc = f.last().expect("f is nonzero");
    if factors.len() == 1 {
        let inv = mod_inverse(lc, pk);
        return vec![f.iter().map(|c| mod_pos(&(c * &inv), pk)).collect()];
    }
    let lc_p = mod_pos(lc, &BigInt::from(p)).to_u64().expect("reduced below p");
    let rest = factors[1..]
        .iter()
        .fold(vec![lc_p], |acc, g| fmul(&acc, g, p));
    let (g, h) = hensel_two(f, &factors[0], &rest, p, k);
    let mut out = vec![g.iter().map(|c| mod_pos(c, pk)).collect()];
    out.extend(hensel_multi(&h, &factors[1..], p, k, pk));
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn zassenhaus(f: &ZPoly) -> Vec<ZPoly> {
    let n = zdeg(f);
    if n <= 1 {
        return vec![f.clone()];
    }
    let lc = f.last().unwrap().clone();

    // among the first few good primes, keep the one with the fewest modular factors
    let mut best: Option<(u64, Vec<FpPoly>)> = None;
    for p in small_primes().filter(|p| !(&lc % BigInt::from(*p)).is_zero()).take(64) {
        let fp = fmonic(&reduce_mod_p(f, p), p);
        if fp.len() != n + 1 || fgcd(&fp, &fderivative(&fp, p), p).len() != 1 {
            continue;
        }
        let fs = factor_mod_p(&fp, p);
        if best.as_ref().is_none_or(|(_, b)| fs.len() < b.len()) {
            best = Some((p, fs));
        }
        if best.as_ref().is_some_and(|(_, b)| b.len() == 1) {
            break;
        }
        if best.is_some() && p > 40 {
            break;
        }
    }
    let (p, modular) = best.expect("a square-free polynomial has a good prime");
    if modular.len() == 1 {
        return vec![f.clone()];
    }

    let max = f.iter().map(|c| c.abs()).max().unwrap();
    let bound = BigInt::from(2u32).pow(n as u32) * BigInt::from(n + 1) * max * lc.abs();
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut pk = pb.clone();
    while pk <= &bound * 2 {
        pk *= &pb;
        k += 1;
    }
    let mut remaining = hensel_multi(f, &modular, p, k, &pk);

    let mut fcur = f.clone();
    let mut found = Vec::new();
    let mut s = 1;
    while 2 * s <= remaining.len() {
        let lc_cur = fcur.last().unwrap().clone();
        let mut hit = None;
        for subset in combinations(remaining.len(), s) {
            let prod = subset
                .iter()
                .fold(vec![lc_cur.clone()], |acc, &i| {
                    zmul(&acc, &remaining[i]).iter().map(|c| mod_pos(c, &pk)).collect()
                });
            let cand = primitive_part(&ztrim(prod.iter().map(|c| mod_symmetric(c, &pk)).collect()));
            if let Some(quot) = zdiv_exact(&fcur, &cand) {
                hit = Some((subset, cand, quot));
                break;
            }
        }
        match hit {
            Some((subset, cand, quot)) => {
                found.push(cand);
                fcur = quot;
                remaining = remaining
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, g)| g)
                    .collect();
            }
            None => s += 1,
        }
    }
    if zdeg(&fcur) > 0 {
        found.push(primitive_part(&fcur));
    }
    found
}

/// Monic irreducible factors of a monic square-free rational polynomial.
fn factor_squarefree(f: &Polynomial) -> Vec<Polynomial> {
    if f.degree() == Some(1) {
        return vec![f.clone()];
    }
    zassenhaus(&to_primitive_integer(f))
        .iter()
        .map(to_monic_rational)
        .collect()
}
