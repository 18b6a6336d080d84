//! Multivariate Rogers-Szegő polynomials.
//!
//! Values are always built from the defining sum over compositions. The
//! recursions, the q-shift functional equation and the generating function
//! are checked against those values; they never construct them.

use crate::bigpoly::{elementary_symmetric, MPoly, Monomial, TruncSeries, Var};
use crate::error::{invalid, Result};
use crate::qkernel::{qfactorial, qmultinomial, signed_qfalling, Composition, SubsetIndicator};

/// `H_n(t_1, ..., t_(m-1))`, a polynomial in `q, t_1, ..., t_(m-1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RSPoly {
    n: usize,
    m: usize,
    value: MPoly,
}

/// The homogeneous form `H~_n(t_1, ..., t_m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RSHomogeneous {
    n: usize,
    m: usize,
    value: MPoly,
}

impl RSPoly {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn value(&self) -> &MPoly {
        &self.value
    }

    pub fn into_value(self) -> MPoly {
        self.value
    }
}

impl RSHomogeneous {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn value(&self) -> &MPoly {
        &self.value
    }

    /// Sets `t_m = 1`.
    pub fn dehomogenize(&self) -> RSPoly {
        RSPoly {
            n: self.n,
            m: self.m,
            value: self.value.substitute(Var::t(self.m), &MPoly::one()),
        }
    }
}

fn check_m(m: usize) -> Result<()> {
    if m < 2 {
        return Err(invalid(format!("Rogers-Szegő polynomials need m >= 2, got {m}")));
    }
    Ok(())
}

fn t_monomial(parts: &[usize]) -> Monomial {
    let pairs: Vec<(Var, u32)> = parts
        .iter()
        .enumerate()
        .map(|(i, &k)| (Var::t(i + 1), k as u32))
        .collect();
    Monomial::from_pairs(&pairs)
}

/// `sum over k_1 + ... + k_m = n of [n; k]_q t_1^k_1 ... t_m^k_m`.
pub fn rs_homogeneous(n: usize, m: usize) -> Result<RSHomogeneous> {
    check_m(m)?;
    let mut value = MPoly::zero();
    for c in Composition::all(n, m) {
        value += &qmultinomial(&c).mul_monomial(&t_monomial(c.parts()));
    }
    Ok(RSHomogeneous { n, m, value })
}

/// `H_n(t_1, ..., t_(m-1)) = H~_n(t_1, ..., t_(m-1), 1)`.
pub fn rs(n: usize, m: usize) -> Result<RSPoly> {
    Ok(rs_homogeneous(n, m)?.dehomogenize())
}

/// `t_1, ..., t_(m-1), 1`
fn t_values_with_one(m: usize) -> Vec<MPoly> {
    let mut vals: Vec<MPoly> = (1..m).map(MPoly::t).collect();
    vals.push(MPoly::one());
    vals
}

/// Checks `H_(n+1)(t) = (1 + t) H_n(t) + t (q^n - 1) H_(n-1)(t)` for one
/// variable.
pub fn rs_single_recursion_check(n: usize) -> Result<bool> {
    if n < 1 {
        return Err(invalid("the single-variable recursion needs n >= 1"));
    }
    let t = MPoly::t(1);
    let rhs = &(&(&MPoly::one() + &t) * rs(n, 2)?.value())
        + &(&(&t * &signed_qfalling(n, 1)) * rs(n - 1, 2)?.value());
    Ok(rhs == rs(n + 1, 2)?.value)
}

/// `sum_(i=0)^(m-1) e_(i+1)(t_1, ..., t_(m-1), 1) (q^n - 1)...(q^(n-i+1) - 1) H_(n-i)`.
/// Equals `rs(n + 1, m)`.
pub fn rs_recursion_rhs(n: usize, m: usize) -> Result<RSPoly> {
    check_m(m)?;
    if n + 1 < m {
        return Err(invalid(format!(
            "the recursion needs n >= m - 1, got n={n}, m={m}"
        )));
    }
    let vals = t_values_with_one(m);
    let mut value = MPoly::zero();
    for i in 0..m {
        let coeff = &elementary_symmetric(i + 1, &vals)? * &signed_qfalling(n, i);
        value += &(&coeff * rs(n - i, m)?.value());
    }
    Ok(RSPoly { n: n + 1, m, value })
}

/// The two-variable recursion written out term by term:
/// `(1 + t1 + t2) H_n + (t1 t2 + t1 + t2)(q^n - 1) H_(n-1)
///  + t1 t2 (q^n - 1)(q^(n-1) - 1) H_(n-2)`.
pub fn two_variable_recursion_rhs(n: usize) -> Result<MPoly> {
    if n < 2 {
        return Err(invalid("the two-variable recursion needs n >= 2"));
    }
    let (t1, t2) = (MPoly::t(1), MPoly::t(2));
    let qn = &MPoly::var_pow(Var::Q, n as u32) - &MPoly::one();
    let qn1 = &MPoly::var_pow(Var::Q, n as u32 - 1) - &MPoly::one();
    let t1t2 = &t1 * &t2;
    let a = &(&MPoly::one() + &t1) + &t2;
    let b = &(&t1t2 + &t1) + &t2;
    let mut out = &a * rs(n, 3)?.value();
    out += &(&(&b * &qn) * rs(n - 1, 3)?.value());
    out += &(&(&(&t1t2 * &qn) * &qn1) * rs(n - 2, 3)?.value());
    Ok(out)
}

fn check_shift_set(m: usize, j: &SubsetIndicator) -> Result<()> {
    check_m(m)?;
    if j.m() != m - 1 {
        return Err(invalid(format!(
            "J must be a subset of 1..={}, got ambient length {}",
            m - 1,
            j.m()
        )));
    }
    if j.is_empty() {
        return Err(invalid("J must be nonempty"));
    }
    Ok(())
}

/// `H_n(s_1, ..., s_(m-1))` with `s_j = t_j q` for `j` in `J`, by substitution.
pub fn rs_qshift_lhs(n: usize, m: usize, j: &SubsetIndicator) -> Result<MPoly> {
    check_shift_set(m, j)?;
    let subs: Vec<(Var, MPoly)> = j
        .elements()
        .map(|i| (Var::t(i), &MPoly::t(i) * &MPoly::q()))
        .collect();
    Ok(rs(n, m)?.value.substitute_many(&subs))
}

/// `sum_(i=0)^|J| e_i(t_J) (-1)^i (q)_n / (q)_(n-i) H_(n-i)`, with each signed
/// ratio expanded as `(q^n - 1)...(q^(n-i+1) - 1)`.
pub fn rs_qshift_rhs(n: usize, m: usize, j: &SubsetIndicator) -> Result<MPoly> {
    check_shift_set(m, j)?;
    if n < j.len() {
        return Err(invalid(format!("the q-shift equation needs n >= |J|, got n={n}, |J|={}", j.len())));
    }
    let tj: Vec<MPoly> = j.elements().map(MPoly::t).collect();
    let mut out = MPoly::zero();
    for i in 0..=j.len() {
        let coeff = &elementary_symmetric(i, &tj)? * &signed_qfalling(n, i);
        out += &(&coeff * rs(n - i, m)?.value());
    }
    Ok(out)
}

/// The one-variable shift written out: `H_n(t) - t (1 - q^n) H_(n-1)(t)`.
pub fn single_qshift_rhs(n: usize) -> Result<MPoly> {
    if n < 1 {
        return Err(invalid("the single-variable shift needs n >= 1"));
    }
    let t = MPoly::t(1);
    let one_minus = &MPoly::one() - &MPoly::var_pow(Var::Q, n as u32);
    Ok(rs(n, 2)?.value() - &(&(&t * &one_minus) * rs(n - 1, 2)?.value()))
}

/// `prod_(i=0)^qcap (1 - a x q^i)`, the truncation of `(a x; q)_inf`.
pub fn truncated_qproduct(a: &MPoly, xcap: usize, qcap: u32) -> TruncSeries {
    let mut out = TruncSeries::one(xcap, qcap);
    for i in 0..=qcap {
        let factor = &MPoly::one()
            - &a.mul_monomial(&Monomial::from_pairs(&[(Var::X, 1), (Var::Q, i)]));
        let factor = TruncSeries::from_poly(&factor, xcap, qcap);
        out = out.mul(&factor).expect("same caps");
    }
    out
}

/// Truncation of `(t_1 x)_inf^-1 ... (t_(m-1) x)_inf^-1 (x)_inf^-1`.
pub fn generating_function(m: usize, xcap: usize, qcap: u32) -> Result<TruncSeries> {
    check_m(m)?;
    let mut out = truncated_qproduct(&MPoly::one(), xcap, qcap).inverse()?;
    for k in 1..m {
        let inv = truncated_qproduct(&MPoly::t(k), xcap, qcap).inverse()?;
        out = out.mul(&inv)?;
    }
    Ok(out)
}

fn check_caps(xcap: usize, qcap: u32) -> Result<()> {
    if (qcap as usize) < xcap {
        return Err(invalid(format!("need qcap >= xcap, got xcap={xcap}, qcap={qcap}")));
    }
    Ok(())
}

/// Checks `(q)_n [x^n] F = H_n` modulo `q^(qcap+1)` for every `n <= xcap`.
pub fn rs_generating_check(m: usize, xcap: usize, qcap: u32) -> Result<bool> {
    check_caps(xcap, qcap)?;
    let f = generating_function(m, xcap, qcap)?;
    for n in 0..=xcap {
        let lhs = qfactorial(n).mul_truncated(f.coeff(n), Var::Q, qcap);
        let rhs = rs(n, m)?.value.truncate(Var::Q, qcap);
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks `(1 - t_1 x)...(1 - t_(m-1) x)(1 - x) F(x) = F(xq)` on truncations.
pub fn rs_functional_series_check(m: usize, xcap: usize, qcap: u32) -> Result<bool> {
    check_caps(xcap, qcap)?;
    let f = generating_function(m, xcap, qcap)?;
    let mut factor = &MPoly::one() - &MPoly::x();
    for k in 1..m {
        factor = &factor * &(&MPoly::one() - &(&MPoly::t(k) * &MPoly::x()));
    }
    let lhs = TruncSeries::from_poly(&factor, xcap, qcap).mul(&f)?;
    Ok(lhs == f.shift_q())
}

/// Euler's identity `sum x^n / (q)_n = (x; q)_inf^-1` with denominators
/// cleared: `sum_n x^n prod_(j != n) (q)_j * prod_(i <= qcap)(1 - x q^i)`
/// must equal `prod_j (q)_j` modulo `(x^(xcap+1), q^(qcap+1))`.
pub fn euler_check(xcap: usize, qcap: u32) -> Result<bool> {
    let facts: Vec<MPoly> = (0..=xcap).map(qfactorial).collect();
    let mut lhs_poly = MPoly::zero();
    for n in 0..=xcap {
        let mut prod = MPoly::one();
        for (j, f) in facts.iter().enumerate() {
            if j != n {
                prod = prod.mul_truncated(f, Var::Q, qcap);
            }
        }
        lhs_poly += &prod.mul_monomial(&Monomial::var(Var::X, n as u32));
    }
    let lhs = TruncSeries::from_poly(&lhs_poly, xcap, qcap)
        .mul(&truncated_qproduct(&MPoly::one(), xcap, qcap))?;
    let total = facts
        .iter()
        .fold(MPoly::one(), |acc, f| acc.mul_truncated(f, Var::Q, qcap));
    Ok(lhs == TruncSeries::from_poly(&total, xcap, qcap))
}

/// Euler's identity through the series inverse: the coefficients `c_n` of
/// `(x; q)_inf^-1` satisfy `(q)_n c_n = 1` modulo `q^(qcap+1)`.
pub fn euler_inverse_check(xcap: usize, qcap: u32) -> Result<bool> {
    let inv = truncated_qproduct(&MPoly::one(), xcap, qcap).inverse()?;
    Ok((0..=xcap).all(|n| qfactorial(n).mul_truncated(inv.coeff(n), Var::Q, qcap).is_one()))
}
