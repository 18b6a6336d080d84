//! Exact arithmetic in `Z[w]`, `w` a primitive `m`-th root of unity, and
//! evaluation of Rogers-Szegő polynomials at roots of unity.
//!
//! `Z[w]` is realized as `Z[x] / Phi_m(x)`. An element is stored as its
//! remainder modulo `Phi_m`, a coordinate vector of length `deg Phi_m` in the
//! basis `1, w, ..., w^(d-1)`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::bigpoly::{MPoly, Monomial, Var};
use crate::error::{invalid, Result};
use crate::qkernel::{qfalling, SubsetIndicator};
use crate::rogers_szego::rs;

fn dense_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
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
    out
}

fn trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

/// Exact quotient of dense integer polynomials by a monic divisor.
fn dense_div_monic(num: &[BigInt], den: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
    let d = den.len() - 1;
    debug_assert!(den[d].is_one());
    let mut rem = num.to_vec();
    if rem.len() <= d {
        return (Vec::new(), trim(rem));
    }
    let mut quot = vec![BigInt::zero(); rem.len() - d];
    for i in (d..rem.len()).rev() {
        let c = rem[i].clone();
        if c.is_zero() {
            continue;
        }
        quot[i - d] = c.clone();
        for (j, dj) in den.iter().enumerate() {
            rem[i - d + j] -= &c * dj;
        }
    }
    rem.truncate(d);
    (trim(quot), trim(rem))
}

static PHI_CACHE: RwLock<BTreeMap<usize, Arc<Vec<BigInt>>>> = RwLock::new(BTreeMap::new());

/// Dense coefficients of `Phi_m`, constant term first.
fn phi_dense(m: usize) -> Arc<Vec<BigInt>> {
    assert!(m >= 1, "cyclotomic conductor must be positive");
    if let Some(p) = PHI_CACHE.read().unwrap().get(&m) {
        return p.clone();
    }
    // x^m - 1 divided by Phi_d for every proper divisor d
    let mut num = vec![BigInt::zero(); m + 1];
    num[0] = -BigInt::one();
    num[m] = BigInt::one();
    for d in (1..m).filter(|&d| m.is_multiple_of(d)) {
        let (quot, rem) = dense_div_monic(&num, &phi_dense(d));
        assert!(rem.is_empty(), "Phi_{d} does not divide x^{m} - 1");
        num = quot;
    }
    let phi = Arc::new(num);
    PHI_CACHE.write().unwrap().insert(m, phi.clone());
    phi
}

/// The cyclotomic polynomial `Phi_m(x)`.
pub fn cyclotomic_polynomial(m: usize) -> MPoly {
    MPoly::from_terms(
        phi_dense(m)
            .iter()
            .enumerate()
            .map(|(i, c)| (Monomial::var(Var::X, i as u32), c.clone())),
    )
}

/// `deg Phi_m`, Euler's totient of `m`.
pub fn cyclotomic_degree(m: usize) -> usize {
    phi_dense(m).len() - 1
}

/// Element of `Z[w_m]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycInt {
    m: usize,
    coords: Vec<BigInt>,
}

impl CycInt {
    pub fn zero(m: usize) -> Self {
        CycInt {
            m,
            coords: vec![BigInt::zero(); cyclotomic_degree(m)],
        }
    }

    pub fn from_int(m: usize, c: impl Into<BigInt>) -> Self {
        let mut out = Self::zero(m);
        out.coords[0] = c.into();
        out
    }

    pub fn one(m: usize) -> Self {
        Self::from_int(m, 1)
    }

    /// `w^k`
    pub fn omega_pow(m: usize, k: usize) -> Self {
        let mut p = vec![BigInt::zero(); k % m + 1];
        p[k % m] = BigInt::one();
        cyc_reduce(&p, m)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// True when every coordinate past the first vanishes.
    pub fn is_rational(&self) -> bool {
        self.coords.iter().skip(1).all(Zero::is_zero)
    }

    pub fn rational_part(&self) -> &BigInt {
        &self.coords[0]
    }

    pub fn add(&self, other: &CycInt) -> CycInt {
        assert_eq!(self.m, other.m, "conductors differ");
        CycInt {
            m: self.m,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn neg(&self) -> CycInt {
        CycInt {
            m: self.m,
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &CycInt) -> CycInt {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &CycInt) -> CycInt {
        assert_eq!(self.m, other.m, "conductors differ");
        cyc_reduce(&dense_mul(&self.coords, &other.coords), self.m)
    }

    pub fn scale(&self, c: &BigInt) -> CycInt {
        CycInt {
            m: self.m,
            coords: self.coords.iter().map(|x| x * c).collect(),
        }
    }
}

/// Reduces a polynomial in `w` (dense, constant first) modulo `Phi_m`.
pub fn cyc_reduce(p: &[BigInt], m: usize) -> CycInt {
    let phi = phi_dense(m);
    let d = phi.len() - 1;
    let (_, rem) = dense_div_monic(p, &phi);
    let mut coords = rem;
    coords.resize(d, BigInt::zero());
    CycInt { m, coords }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "w".to_string(),
                _ => format!("w^{i}"),
            };
            let neg = c.is_negative();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let abs = c.abs();
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycInt[m={}]({self})", self.m)
    }
}

/// Polynomial in `q` with coefficients in `Z[w_m]`.
#[derive(Clone, PartialEq, Eq)]
pub struct CycPoly {
    m: usize,
    coeffs: BTreeMap<u32, CycInt>,
}

impl CycPoly {
    pub fn zero(m: usize) -> Self {
        CycPoly {
            m,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(m: usize) -> Self {
        Self::constant(CycInt::one(m))
    }

    pub fn constant(c: CycInt) -> Self {
        let mut out = Self::zero(c.m);
        out.add_term(0, c);
        out
    }

    /// Embeds a polynomial in `q` with integer coefficients.
    pub fn from_qpoly(p: &MPoly, m: usize) -> Result<Self> {
        let coeffs = p
            .q_coeffs()
            .ok_or_else(|| invalid(format!("{p} is not a polynomial in q alone")))?;
        let mut out = Self::zero(m);
        for (e, c) in coeffs.into_iter().enumerate() {
            out.add_term(e as u32, CycInt::from_int(m, c));
        }
        Ok(out)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn add_term(&mut self, e: u32, c: CycInt) {
        assert_eq!(self.m, c.m, "conductors differ");
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(e).or_insert_with(|| CycInt::zero(c.m));
        *slot = slot.add(&c);
        if slot.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (u32, &CycInt)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_rational_integral(&self) -> bool {
        self.coeffs.values().all(CycInt::is_rational)
    }

    /// The integer polynomial in `q`, when every coefficient is rational.
    pub fn to_qpoly(&self) -> Option<MPoly> {
        if !self.is_rational_integral() {
            return None;
        }
        Some(MPoly::from_terms(self.coeffs.iter().map(|(e, c)| {
            (Monomial::var(Var::Q, *e), c.rational_part().clone())
        })))
    }

    pub fn add(&self, other: &CycPoly) -> CycPoly {
        let mut out = self.clone();
        for (e, c) in &other.coeffs {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &CycPoly) -> CycPoly {
        let mut out = self.clone();
        for (e, c) in &other.coeffs {
            out.add_term(*e, c.neg());
        }
        out
    }

    pub fn mul(&self, other: &CycPoly) -> CycPoly {
        let mut out = CycPoly::zero(self.m);
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &other.coeffs {
                out.add_term(ea + eb, ca.mul(cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &CycInt) -> CycPoly {
        let mut out = CycPoly::zero(self.m);
        for (e, k) in &self.coeffs {
            out.add_term(*e, k.mul(c));
        }
        out
    }
}

/// Terms in ascending `q`-degree, each as `(c_0 + c_1*w + ...)*q^k`.
impl fmt::Display for CycPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in &self.coeffs {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*q")?,
                _ => write!(f, "({c})*q^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycPoly[m={}]({self})", self.m)
    }
}

/// Evaluates `H_n` at `t_i = w^i q^(shift_i)`, where `shift_i` is 1 for the
/// indices marked in `shifted` (a subset of `1..=m-1`) and 0 otherwise.
pub fn rs_eval_point(n: usize, m: usize, shifted: &SubsetIndicator) -> Result<CycPoly> {
    if m < 2 {
        return Err(invalid(format!("need m >= 2, got {m}")));
    }
    if shifted.m() != m - 1 {
        return Err(invalid("shift set must be a subset of 1..=m-1"));
    }
    let h = rs(n, m)?;
    // bucket by (q exponent, power of w mod m), then reduce each bucket once
    let mut buckets: BTreeMap<u32, Vec<BigInt>> = BTreeMap::new();
    for (mono, c) in h.value().terms() {
        let mut qexp = mono.exponent(Var::Q);
        let mut wexp = 0usize;
        for i in 1..m {
            let e = mono.exponent(Var::t(i));
            wexp += i * e as usize;
            if shifted.contains(i) {
                qexp += e;
            }
        }
        let slot = buckets
            .entry(qexp)
            .or_insert_with(|| vec![BigInt::zero(); m]);
        slot[wexp % m] += c;
    }
    let mut out = CycPoly::zero(m);
    for (e, ws) in buckets {
        out.add_term(e, cyc_reduce(&ws, m));
    }
    Ok(out)
}

/// `H_n(w, ..., w^(m-1))`, or `H_n(wq, ..., w^(m-1) q)` when `scaled`.
pub fn rs_eval_roots(n: usize, m: usize, scaled: bool) -> Result<CycPoly> {
    if m < 2 {
        return Err(invalid(format!("need m >= 2, got {m}")));
    }
    let bits = if scaled { (1u64 << (m - 1)) - 1 } else { 0 };
    rs_eval_point(n, m, &SubsetIndicator::from_bits(m - 1, bits))
}

/// `prod_(j < n, m does not divide j)(1 - q^j)` when `m | n`, else `0`.
pub fn special1_formula(n: usize, m: usize) -> MPoly {
    if m == 0 || !n.is_multiple_of(m) {
        return MPoly::zero();
    }
    prod_one_minus_q((1..n).filter(|j| j % m != 0))
}

/// `prod_(j <= n, m does not divide j)(1 - q^j)`.
pub fn special3_formula(n: usize, m: usize) -> MPoly {
    prod_one_minus_q((1..=n).filter(|j| j % m != 0))
}

fn prod_one_minus_q(js: impl Iterator<Item = usize>) -> MPoly {
    js.fold(MPoly::one(), |acc, j| {
        &acc * &(&MPoly::one() - &MPoly::var_pow(Var::Q, j as u32))
    })
}

/// Checks `H_n(q^(1/m), ..., q^((m-1)/m)) = prod_(j=1)^n (1 + q^(j/m) + ... + q^(j(m-1)/m))`
/// after the base change `q = u^m`, which makes both sides polynomials in `u`.
pub fn special2_check(n: usize, m: usize) -> Result<bool> {
    if m < 2 {
        return Err(invalid(format!("need m >= 2, got {m}")));
    }
    let mut subs = vec![(Var::Q, MPoly::var_pow(Var::U, m as u32))];
    for i in 1..m {
        subs.push((Var::t(i), MPoly::var_pow(Var::U, i as u32)));
    }
    let lhs = rs(n, m)?.value().substitute_many(&subs);
    let mut rhs = MPoly::one();
    for j in 1..=n {
        let mut factor = MPoly::zero();
        for l in 0..m {
            factor += &MPoly::var_pow(Var::U, (j * l) as u32);
        }
        rhs = &rhs * &factor;
    }
    Ok(lhs == rhs)
}

/// `e_i` of the given ring elements.
pub fn cyc_elementary_symmetric(i: usize, values: &[CycInt], m: usize) -> CycInt {
    let mut e = vec![CycInt::zero(m); i + 1];
    e[0] = CycInt::one(m);
    for v in values {
        for j in (1..=i).rev() {
            let add = e[j - 1].mul(v);
            e[j] = e[j].add(&add);
        }
    }
    e.swap_remove(i)
}

/// `w, w^2, ..., w^(m-1)`, optionally followed by `1`.
pub fn root_values(m: usize, with_one: bool) -> Vec<CycInt> {
    let mut vals: Vec<CycInt> = (1..m).map(|i| CycInt::omega_pow(m, i)).collect();
    if with_one {
        vals.push(CycInt::one(m));
    }
    vals
}

/// `H_n(wq, ..., w^(m-1) q)` from the q-shift equation with `J = {1..m-1}`
/// and `t_i = w^i`, using the unscaled values `H_k(w, ..., w^(m-1))` from
/// [`special1_formula`]:
/// `sum_(i=0)^(m-1) e_i(w, ..., w^(m-1)) (-1)^i (q)_n/(q)_(n-i) H_(n-i)(w, ...)`.
pub fn special3_via_qshift(n: usize, m: usize) -> Result<CycPoly> {
    if m < 2 {
        return Err(invalid(format!("need m >= 2, got {m}")));
    }
    if n < m {
        return Err(invalid(format!("needs n >= m, got n={n}, m={m}")));
    }
    let roots = root_values(m, false);
    let mut out = CycPoly::zero(m);
    for i in 0..m {
        let mut e = cyc_elementary_symmetric(i, &roots, m);
        if i % 2 == 1 {
            e = e.neg();
        }
        let ratio = CycPoly::from_qpoly(&qfalling(n, i), m)?;
        let unscaled = CycPoly::from_qpoly(&special1_formula(n - i, m), m)?;
        out = out.add(&ratio.mul(&unscaled).scale(&e));
    }
    Ok(out)
}

/// Checks [`special3_via_qshift`] against [`special3_formula`].
pub fn special3_via_qshift_check(n: usize, m: usize) -> Result<bool> {
    let derived = special3_via_qshift(n, m)?;
    Ok(derived == CycPoly::from_qpoly(&special3_formula(n, m), m)?)
}

/// The chain `H_1(w, ..., w^(m-1)) -> H_1(wq, w^2, ...) -> ... ->
/// H_1(wq, ..., w^(m-1) q)`, shifting one more variable per step with the
/// single-element q-shift equation `H_1(.., t_j q, ..) = H_1(t) - t_j (1 - q) H_0`.
/// The start is the unscaled value from [`special1_formula`].
pub fn h1_shift_chain(m: usize) -> Result<Vec<CycPoly>> {
    if m < 2 {
        return Err(invalid(format!("need m >= 2, got {m}")));
    }
    let one_minus_q = CycPoly::from_qpoly(&MPoly::from_q_coeffs([1, -1]), m)?;
    let mut current = CycPoly::from_qpoly(&special1_formula(1, m), m)?;
    let mut chain = vec![current.clone()];
    for j in 1..m {
        // t_j is still w^j at this step
        let step = one_minus_q.scale(&CycInt::omega_pow(m, j));
        current = current.sub(&step);
        chain.push(current.clone());
    }
    Ok(chain)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    fn qp(coeffs: &[i64]) -> MPoly {
        MPoly::from_q_coeffs(coeffs.iter().copied())
    }

    #[test]
    fn cyclotomic_examples() {
        assert_eq!(cyclotomic_polynomial(1).to_string(), "-1 + x");
        assert_eq!(cyclotomic_polynomial(2).to_string(), "1 + x");
        assert_eq!(cyclotomic_polynomial(4).to_string(), "1 + x^2");
        assert_eq!(cyclotomic_polynomial(6).to_string(), "1 - x + x^2");
        assert_eq!(cyclotomic_degree(12), 4);
    }

    #[test]
    fn reduction_examples() {
        assert_eq!(cyc_reduce(&big(&[0, 0, 1]), 2), CycInt::one(2));
        assert!(cyc_reduce(&big(&[1, 1, 1]), 3).is_zero());
        assert_eq!(cyc_reduce(&big(&[0, 0, 0, 1]), 4), CycInt::omega_pow(4, 1).neg());
    }

    #[test]
    fn ring_basics() {
        let w = CycInt::omega_pow(5, 1);
        let mut p = CycInt::one(5);
        for _ in 0..5 {
            p = p.mul(&w);
        }
        assert_eq!(p, CycInt::one(5));
        assert_eq!(CycInt::omega_pow(6, 3), CycInt::from_int(6, -1));
        assert_eq!(CycInt::omega_pow(3, 1).to_string(), "w");
        assert_eq!(CycInt::omega_pow(3, 2).to_string(), "-1 - w");
    }

    #[test]
    fn eval_examples() {
        let v = rs_eval_roots(2, 2, false).unwrap();
        assert_eq!(v.to_qpoly().unwrap(), qp(&[1, -1]));
        assert!(rs_eval_roots(1, 3, false).unwrap().is_zero());
        let v = rs_eval_roots(2, 2, true).unwrap();
        assert_eq!(v.to_qpoly().unwrap(), qp(&[1, -1]));
    }

    #[test]
    fn formula_examples() {
        for m in 2..5 {
            assert_eq!(special1_formula(0, m), MPoly::one());
            assert_eq!(special3_formula(0, m), MPoly::one());
        }
        assert_eq!(special1_formula(2, 2), qp(&[1, -1]));
        assert_eq!(special1_formula(3, 3), qp(&[1, -1, -1, 1]));
        assert_eq!(special1_formula(4, 3), MPoly::zero());
        assert_eq!(special3_formula(1, 2), qp(&[1, -1]));
        assert_eq!(special3_formula(3, 2), qp(&[1, -1, 0, -1, 1]));
    }

    #[test]
    fn special2_examples() {
        assert!(special2_check(1, 2).unwrap());
        assert!(special2_check(2, 3).unwrap());
        for m in 2..5 {
            assert!(special2_check(0, m).unwrap());
        }
    }

    #[test]
    fn special3_via_qshift_examples() {
        assert!(special3_via_qshift_check(2, 2).unwrap());
        assert_eq!(special3_via_qshift(2, 2).unwrap().to_qpoly().unwrap(), qp(&[1, -1]));
        assert!(special3_via_qshift_check(4, 3).unwrap());
        assert!(special3_via_qshift_check(3, 3).unwrap());
        assert!(special3_via_qshift_check(2, 3).is_err());
    }

    #[test]
    fn h1_chain_first_step_and_end() {
        let m = 5;
        let chain = h1_shift_chain(m).unwrap();
        // H_1(wq, w^2, ...) = w (q - 1)
        let w = CycInt::omega_pow(m, 1);
        let expect = CycPoly::from_qpoly(&qp(&[-1, 1]), m).unwrap().scale(&w);
        assert_eq!(chain[1], expect);
        assert_eq!(chain.last().unwrap().to_qpoly().unwrap(), qp(&[1, -1]));
    }

    #[test]
    fn elementary_symmetric_at_roots() {
        for m in 2..8 {
            let with_one = root_values(m, true);
            for i in 1..m {
                assert!(cyc_elementary_symmetric(i, &with_one, m).is_zero());
            }
            let sign = if m % 2 == 1 { 1 } else { -1 };
            assert_eq!(cyc_elementary_symmetric(m, &with_one, m), CycInt::from_int(m, sign));
        }
    }
}
