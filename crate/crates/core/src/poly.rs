//! Univariate polynomials over ℚ.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::linalg::Rational;

/// Coefficients lowest degree first; never has a trailing zero coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Polynomial::new(coeffs.iter().map(|&c| crate::linalg::q(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Polynomial::new(vec![c])
    }

    /// The monomial `t`.
    pub fn t() -> Self {
        Polynomial::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn monic(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.leading().recip();
        Polynomial::new(self.coeffs.iter().map(|c| c * &inv).collect())
    }

    pub fn scale(&self, s: &Rational) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |p: &Polynomial, i: usize| p.coeffs.get(i).cloned().unwrap_or_else(Rational::zero);
        Polynomial::new((0..n).map(|i| get(self, i) + get(other, i)).collect())
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }

    pub fn pow(&self, e: usize) -> Polynomial {
        (0..e).fold(Polynomial::one(), |acc, _| acc.mul(self))
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Polynomial) -> (Polynomial, Polynomial) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = divisor.leading().recip();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return (Polynomial::zero(), Polynomial::zero());
        };
        if nd < dd {
            return (Polynomial::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * d;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Polynomial::new(quot), Polynomial::new(rem))
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Polynomial {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(i.into()))
                .collect(),
        )
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = i == 0 || !abs.is_one();
            if show_coeff {
                if abs.is_integer() {
                    write!(f, "{abs}")?;
                } else {
                    write!(f, "({abs})")?;
                }
            }
            match i {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{q, qr};

    #[test]
    fn arithmetic_and_display() {
        let p = Polynomial::from_i64(&[0, -1, 1]);
        assert_eq!(p.to_string(), "t^2 - t");
        assert_eq!(Polynomial::t().to_string(), "t");
        assert_eq!(Polynomial::from_i64(&[-1, 1]).to_string(), "t - 1");
        let r = Polynomial::new(vec![qr(1, 2), q(0), q(3)]);
        assert_eq!(r.to_string(), "3t^2 + (1/2)");
        assert_eq!(p.eval(&q(3)), q(6));
        assert_eq!(p.derivative(), Polynomial::from_i64(&[-1, 2]));
    }

    #[test]
    fn division_and_gcd() {
        let a = Polynomial::from_i64(&[-1, 0, 1]); // t² − 1
        let b = Polynomial::from_i64(&[1, 1]); // t + 1
        let (qt, r) = a.div_rem(&b);
        assert_eq!(qt, Polynomial::from_i64(&[-1, 1]));
        assert!(r.is_zero());
        let c = Polynomial::from_i64(&[1, 2, 1]); // (t + 1)²
        assert_eq!(a.gcd(&c), b);
        let (qt, r) = Polynomial::from_i64(&[1, 0, 0, 2]).div_rem(&Polynomial::from_i64(&[0, 2]));
        assert_eq!(qt.mul(&Polynomial::from_i64(&[0, 2])).add(&r), Polynomial::from_i64(&[1, 0, 0, 2]));
    }
}
