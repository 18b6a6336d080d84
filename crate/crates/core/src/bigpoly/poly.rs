use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::monomial::{Monomial, Var};
use crate::error::{Error, Result};

/// Sparse multivariate polynomial with arbitrary-precision integer
/// coefficients. No stored coefficient is zero, so structural equality is
/// polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::default()
    }

    pub fn one() -> Self {
        MPoly::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        MPoly::term(c, Monomial::one())
    }

    pub fn var(v: Var) -> Self {
        MPoly::term(1, Monomial::var(v, 1))
    }

    pub fn q() -> Self {
        MPoly::var(Var::Q)
    }

    pub fn x() -> Self {
        MPoly::var(Var::X)
    }

    pub fn u() -> Self {
        MPoly::var(Var::U)
    }

    pub fn t(i: usize) -> Self {
        MPoly::var(Var::t(i))
    }

    /// `v^e`
    pub fn var_pow(v: Var, e: u32) -> Self {
        MPoly::term(1, Monomial::var(v, e))
    }

    pub fn term(c: impl Into<BigInt>, m: Monomial) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MPoly { terms }
    }

    /// Builds a polynomial from possibly repeated, possibly zero terms.
    pub fn from_terms<I>(iter: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, BigInt)>,
    {
        let mut p = MPoly::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    /// Univariate polynomial in `q` from coefficients of `1, q, q^2, ...`.
    pub fn from_q_coeffs<I, C>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = C>,
        C: Into<BigInt>,
    {
        MPoly::from_terms(
            coeffs
                .into_iter()
                .enumerate()
                .map(|(i, c)| (Monomial::var(Var::Q, i as u32), c.into())),
        )
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, BigInt)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// Degree in `v`; the zero polynomial reports `-1`.
    pub fn degree(&self, v: Var) -> i64 {
        self.terms
            .keys()
            .map(|m| m.exponent(v) as i64)
            .max()
            .unwrap_or(-1)
    }

    /// Total degree; the zero polynomial reports `-1`.
    pub fn total_degree(&self) -> i64 {
        self.terms
            .keys()
            .map(|m| m.total_degree() as i64)
            .max()
            .unwrap_or(-1)
    }

    /// Largest total degree over the given variables only; `-1` for zero.
    pub fn degree_in(&self, vars: &[Var]) -> i64 {
        self.terms
            .keys()
            .map(|m| vars.iter().map(|&v| m.exponent(v) as i64).sum::<i64>())
            .max()
            .unwrap_or(-1)
    }

    /// Variables that occur with a positive exponent somewhere.
    pub fn variables(&self) -> Vec<Var> {
        let mut len = 0;
        for m in self.terms.keys() {
            len = len.max(m.exponents().len());
        }
        (0..len)
            .map(Var::from_index)
            .filter(|&v| self.terms.keys().any(|m| m.exponent(v) > 0))
            .collect()
    }

    /// Constant term when the polynomial is a constant.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Dense coefficients in `q`, for a polynomial in `q` alone.
    pub fn q_coeffs(&self) -> Option<Vec<BigInt>> {
        let deg = self.degree(Var::Q);
        let mut out = vec![BigInt::zero(); (deg + 1).max(0) as usize];
        for (m, c) in &self.terms {
            let (e, rest) = m.split(Var::Q);
            if !rest.is_one() {
                return None;
            }
            out[e as usize] = c.clone();
        }
        Some(out)
    }

    pub fn scale(&self, c: &BigInt) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> MPoly {
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.mul(mono), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> MPoly {
        let mut base = self.clone();
        let mut acc = MPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Product that drops every term whose `v`-degree exceeds `cap`.
    pub fn mul_truncated(&self, other: &MPoly, v: Var, cap: u32) -> MPoly {
        let mut out = MPoly::zero();
        for (ma, ca) in &self.terms {
            let ea = ma.exponent(v);
            if ea > cap {
                continue;
            }
            for (mb, cb) in &other.terms {
                if ea + mb.exponent(v) > cap {
                    continue;
                }
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    /// Drops every term whose `v`-degree exceeds `cap`.
    pub fn truncate(&self, v: Var, cap: u32) -> MPoly {
        MPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.exponent(v) <= cap)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Coefficient of `v^e`, as a polynomial in the remaining variables.
    pub fn coefficient_of(&self, v: Var, e: u32) -> MPoly {
        MPoly::from_terms(self.terms.iter().filter_map(|(m, c)| {
            let (k, rest) = m.split(v);
            (k == e).then(|| (rest, c.clone()))
        }))
    }

    /// Exact quotient `self / divisor` in the integer polynomial ring.
    ///
    /// Runs leading-term division and fails with [`Error::NotDivisible`] as soon
    /// as a leading monomial or coefficient does not divide.
    pub fn divide_exact(&self, divisor: &MPoly) -> Result<MPoly> {
        let (lm, lc) = match divisor.leading_term() {
            Some((m, c)) => (m.clone(), c.clone()),
            None => return Err(Error::DivisionByZero),
        };
        let mut rem = self.clone();
        let mut quot = MPoly::zero();
        while let Some((m, c)) = rem.leading_term() {
            let mono = m.div(&lm).ok_or(Error::NotDivisible)?;
            let (k, r) = c.div_rem(&lc);
            if !r.is_zero() {
                return Err(Error::NotDivisible);
            }
            let step = divisor.mul_monomial(&mono).scale(&k);
            rem -= &step;
            quot.add_term(mono, k);
        }
        Ok(quot)
    }

    /// Replaces every occurrence of `v` by `r` and expands.
    pub fn substitute(&self, v: Var, r: &MPoly) -> MPoly {
        let mut powers: Vec<MPoly> = vec![MPoly::one()];
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let (e, rest) = m.split(v);
            while powers.len() <= e as usize {
                let next = powers.last().unwrap() * r;
                powers.push(next);
            }
            let piece = powers[e as usize].mul_monomial(&rest).scale(c);
            out += &piece;
        }
        out
    }

    /// Applies several substitutions simultaneously. Variables not listed are
    /// kept as they are.
    pub fn substitute_many(&self, subs: &[(Var, MPoly)]) -> MPoly {
        let mut cache: BTreeMap<(usize, u32), MPoly> = BTreeMap::new();
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let mut piece = MPoly::constant(c.clone());
            let mut kept = Monomial::one();
            for (v, e) in m.factors() {
                match subs.iter().position(|(w, _)| *w == v) {
                    Some(idx) => {
                        let p = cache
                            .entry((idx, e))
                            .or_insert_with(|| subs[idx].1.pow(e));
                        piece = &piece * &*p;
                    }
                    None => kept = kept.mul(&Monomial::var(v, e)),
                }
            }
            out += &piece.mul_monomial(&kept);
        }
        out
    }

    /// Integer value under a full assignment.
    pub fn eval_int(&self, assignment: &BTreeMap<Var, BigInt>) -> Result<BigInt> {
        let mut total = BigInt::zero();
        for (m, c) in &self.terms {
            let mut value = c.clone();
            for (v, e) in m.factors() {
                let x = assignment.get(&v).ok_or(Error::MissingVariable(v))?;
                value *= num_traits::pow(x.clone(), e as usize);
            }
            total += value;
        }
        Ok(total)
    }

    /// Value at `q = value` for a polynomial in `q` alone.
    pub fn eval_q(&self, value: i64) -> Result<BigInt> {
        let assignment = BTreeMap::from([(Var::Q, BigInt::from(value))]);
        self.eval_int(&assignment)
    }

    /// True when every coefficient is nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }
}

/// `e_i(values)`, the `i`-th elementary symmetric polynomial evaluated at the
/// given polynomials. `e_0 = 1`.
pub fn elementary_symmetric(i: usize, values: &[MPoly]) -> Result<MPoly> {
    if i > values.len() {
        return Err(Error::IndexOutOfRange {
            index: i,
            len: values.len(),
        });
    }
    // e[j] after processing a prefix of values
    let mut e = vec![MPoly::zero(); i + 1];
    e[0] = MPoly::one();
    for v in values {
        for j in (1..=i).rev() {
            let add = &e[j - 1] * v;
            e[j] += &add;
        }
    }
    Ok(e.swap_remove(i))
}

impl AddAssign<&MPoly> for MPoly {
    fn add_assign(&mut self, rhs: &MPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&MPoly> for MPoly {
    fn sub_assign(&mut self, rhs: &MPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for MPoly {
    type Output = MPoly;
    fn add(mut self, rhs: MPoly) -> MPoly {
        self += &rhs;
        self
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for MPoly {
    type Output = MPoly;
    fn sub(mut self, rhs: MPoly) -> MPoly {
        self -= &rhs;
        self
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        let (a, b) = if self.len() >= rhs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = MPoly::zero();
        for (mb, cb) in &b.terms {
            for (ma, ca) in &a.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Mul for MPoly {
    type Output = MPoly;
    fn mul(self, rhs: MPoly) -> MPoly {
        &self * &rhs
    }
}

impl From<i64> for MPoly {
    fn from(c: i64) -> Self {
        MPoly::constant(c)
    }
}

impl From<Var> for MPoly {
    fn from(v: Var) -> Self {
        MPoly::var(v)
    }
}
