use num_bigint::BigInt;
use num_traits::One;

use super::monomial::{Monomial, Var};
use super::poly::MPoly;
use crate::error::{Error, Result};

/// Power series in `x` truncated jointly: exact modulo the ideal
/// `(x^(xcap+1), q^(qcap+1))`.
///
/// `coeffs[n]` is the coefficient of `x^n`, a polynomial in the remaining
/// variables with `q`-degree at most `qcap`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    xcap: usize,
    qcap: u32,
    coeffs: Vec<MPoly>,
}

impl TruncSeries {
    pub fn zero(xcap: usize, qcap: u32) -> Self {
        TruncSeries {
            xcap,
            qcap,
            coeffs: vec![MPoly::zero(); xcap + 1],
        }
    }

    pub fn one(xcap: usize, qcap: u32) -> Self {
        Self::from_poly(&MPoly::one(), xcap, qcap)
    }

    /// Reduces `p` modulo `(x^(xcap+1), q^(qcap+1))`.
    pub fn from_poly(p: &MPoly, xcap: usize, qcap: u32) -> Self {
        let mut out = Self::zero(xcap, qcap);
        for (m, c) in p.terms() {
            let (e, rest) = m.split(Var::X);
            if e as usize <= xcap && rest.exponent(Var::Q) <= qcap {
                out.coeffs[e as usize].add_term(rest, c.clone());
            }
        }
        out
    }

    /// Series with the given `x` coefficients, each reduced modulo `q^(qcap+1)`.
    pub fn from_coeffs(coeffs: Vec<MPoly>, xcap: usize, qcap: u32) -> Self {
        let mut out = Self::zero(xcap, qcap);
        for (n, c) in coeffs.into_iter().enumerate().take(xcap + 1) {
            out.coeffs[n] = c.truncate(Var::Q, qcap);
        }
        out
    }

    pub fn xcap(&self) -> usize {
        self.xcap
    }

    pub fn qcap(&self) -> u32 {
        self.qcap
    }

    /// Coefficient of `x^n`; zero beyond the cap.
    pub fn coeff(&self, n: usize) -> &MPoly {
        static ZERO: std::sync::OnceLock<MPoly> = std::sync::OnceLock::new();
        self.coeffs
            .get(n)
            .unwrap_or_else(|| ZERO.get_or_init(MPoly::zero))
    }

    pub fn coeffs(&self) -> &[MPoly] {
        &self.coeffs
    }

    pub fn to_poly(&self) -> MPoly {
        let mut out = MPoly::zero();
        for (n, c) in self.coeffs.iter().enumerate() {
            out += &c.mul_monomial(&Monomial::var(Var::X, n as u32));
        }
        out
    }

    fn check_caps(&self, other: &TruncSeries) -> Result<()> {
        if self.xcap != other.xcap || self.qcap != other.qcap {
            return Err(Error::CapMismatch(
                self.xcap, self.qcap, other.xcap, other.qcap,
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &TruncSeries) -> Result<TruncSeries> {
        self.check_caps(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(TruncSeries { coeffs, ..*self })
    }

    pub fn sub(&self, other: &TruncSeries) -> Result<TruncSeries> {
        self.check_caps(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(TruncSeries { coeffs, ..*self })
    }

    pub fn mul(&self, other: &TruncSeries) -> Result<TruncSeries> {
        self.check_caps(other)?;
        let mut out = Self::zero(self.xcap, self.qcap);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(self.xcap + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                let prod = a.mul_truncated(b, Var::Q, self.qcap);
                out.coeffs[i + j] += &prod;
            }
        }
        Ok(out)
    }

    /// Multiplicative inverse. The part of the constant coefficient free of
    /// `q` must be exactly `1` or `-1`.
    pub fn inverse(&self) -> Result<TruncSeries> {
        let a0 = &self.coeffs[0];
        let sign = a0.coefficient_of(Var::Q, 0).as_constant();
        let sign = match sign {
            Some(s) if s.is_one() => BigInt::one(),
            Some(s) if s == -BigInt::one() => -BigInt::one(),
            _ => return Err(Error::NotAUnit),
        };
        // a0 = sign * (1 - h) with h divisible by q, so 1/a0 = sign * sum h^k
        let h = &MPoly::one() - &a0.scale(&sign);
        let mut inv0 = MPoly::one();
        let mut power = MPoly::one();
        for _ in 0..self.qcap {
            power = power.mul_truncated(&h, Var::Q, self.qcap);
            if power.is_zero() {
                break;
            }
            inv0 += &power;
        }
        let inv0 = inv0.scale(&sign);

        let mut b: Vec<MPoly> = Vec::with_capacity(self.xcap + 1);
        b.push(inv0.clone());
        for n in 1..=self.xcap {
            let mut acc = MPoly::zero();
            for j in 1..=n {
                if self.coeffs[j].is_zero() || b[n - j].is_zero() {
                    continue;
                }
                acc += &self.coeffs[j].mul_truncated(&b[n - j], Var::Q, self.qcap);
            }
            let bn = -acc.mul_truncated(&inv0, Var::Q, self.qcap);
            b.push(bn);
        }
        Ok(TruncSeries {
            coeffs: b,
            ..*self
        })
    }

    /// Substitutes `x -> x*q`: the coefficient of `x^n` gains a factor `q^n`.
    pub fn shift_q(&self) -> TruncSeries {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| {
                c.mul_monomial(&Monomial::var(Var::Q, n as u32))
                    .truncate(Var::Q, self.qcap)
            })
            .collect();
        TruncSeries {
            coeffs,
            ..*self
        }
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(MPoly::is_zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(MPoly::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str) -> MPoly {
        s.parse().unwrap()
    }

    #[test]
    fn truncation_on_construction() {
        let s = TruncSeries::from_poly(&poly("1 - x*q^3"), 2, 2);
        assert!(s.is_one());
        assert!(TruncSeries::from_poly(&poly("1 + x"), 0, 5).is_one());
        let s = TruncSeries::from_poly(&poly("x^2"), 2, 0);
        assert_eq!(s.to_poly(), poly("x^2"));
    }

    #[test]
    fn multiplication_truncates_both_ways() {
        let a = TruncSeries::from_poly(&poly("1 + x"), 1, 3);
        let b = TruncSeries::from_poly(&poly("1 - x"), 1, 3);
        assert!(a.mul(&b).unwrap().is_one());
        assert_eq!(a.mul(&TruncSeries::one(1, 3)).unwrap(), a);
        let c = TruncSeries::from_poly(&poly("1 + x*q"), 2, 1);
        assert_eq!(c.mul(&c).unwrap().to_poly(), poly("1 + 2*x*q"));
        let d = TruncSeries::one(2, 3);
        assert_eq!(a.mul(&d), Err(Error::CapMismatch(1, 3, 2, 3)));
    }

    #[test]
    fn inverses() {
        let a = TruncSeries::from_poly(&poly("1 - x"), 3, 4);
        assert_eq!(a.inverse().unwrap().to_poly(), poly("1 + x + x^2 + x^3"));
        assert!(TruncSeries::one(3, 3).inverse().unwrap().is_one());
        let b = TruncSeries::from_poly(&poly("1 - x*q"), 2, 2);
        assert_eq!(b.inverse().unwrap().to_poly(), poly("1 + x*q + x^2*q^2"));
        let c = TruncSeries::from_poly(&poly("2 + x"), 2, 2);
        assert_eq!(c.inverse(), Err(Error::NotAUnit));
        let d = TruncSeries::from_poly(&poly("1 + t1"), 2, 2);
        assert_eq!(d.inverse(), Err(Error::NotAUnit));
    }

    #[test]
    fn inverse_with_q_dependent_constant() {
        let a = TruncSeries::from_poly(&poly("-1 + q + x"), 3, 5);
        let prod = a.mul(&a.inverse().unwrap()).unwrap();
        assert!(prod.is_one());
    }

    #[test]
    fn shift() {
        let a = TruncSeries::from_poly(&poly("1 + x"), 2, 2);
        assert_eq!(a.shift_q().to_poly(), poly("1 + x*q"));
        assert!(TruncSeries::one(2, 2).shift_q().is_one());
        let b = TruncSeries::from_poly(&poly("x^2"), 2, 1);
        assert!(b.shift_q().is_zero());
    }
}
