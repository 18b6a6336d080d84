//! q-analog building blocks: q-Pochhammer symbols, Gaussian binomials,
//! q-multinomials, Galois numbers and their flag-counting generalization.
//!
//! Every quantity is a polynomial in `q` with integer coefficients. Ratios of
//! the form `(-1)^i (q)_n / (q)_{n-i}` are always built as the product
//! `(q^n - 1)(q^(n-1) - 1)...(q^(n-i+1) - 1)`, so nothing here divides.

use std::fmt;
use std::sync::RwLock;

use num_bigint::BigInt;

use crate::bigpoly::{MPoly, Monomial, Var};
use crate::error::{invalid, Result};

/// Ordered tuple of nonnegative parts `(k_1, ..., k_m)` with `m >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(invalid("a composition needs at least one part"));
        }
        Ok(Composition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Sum of the parts.
    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts.
    pub fn m(&self) -> usize {
        self.parts.len()
    }

    pub fn all_positive(&self) -> bool {
        self.parts.iter().all(|&k| k > 0)
    }

    /// `k - e_J`, or `None` when some part in `J` is already zero.
    pub fn minus(&self, j: &SubsetIndicator) -> Option<Composition> {
        assert_eq!(j.m(), self.m(), "subset and composition lengths differ");
        let mut parts = self.parts.clone();
        for i in j.elements() {
            parts[i - 1] = parts[i - 1].checked_sub(1)?;
        }
        Some(Composition { parts })
    }

    /// All compositions of `n` into `m` parts in lexicographic order.
    pub fn all(n: usize, m: usize) -> Compositions {
        Compositions::new(n, m)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|k| k.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl std::str::FromStr for Composition {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .trim_matches(|c| c == '(' || c == ')')
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| crate::Error::Parse(format!("bad composition part {p:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Composition::new(parts)
    }
}

/// Lexicographic iterator over compositions of `n` into `m` parts.
pub struct Compositions {
    n: usize,
    next: Option<Vec<usize>>,
}

impl Compositions {
    fn new(n: usize, m: usize) -> Self {
        let next = (m > 0).then(|| {
            let mut first = vec![0; m];
            first[m - 1] = n;
            first
        });
        Compositions { n, next }
    }
}

impl Iterator for Compositions {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        let current = self.next.take()?;
        let m = current.len();
        // successor: bump the rightmost position (before the last) that can
        // grow, zero everything after it, and put the remainder last
        let mut succ = current.clone();
        let mut found = false;
        for i in (0..m.saturating_sub(1)).rev() {
            let prefix: usize = succ[..=i].iter().sum();
            if prefix < self.n {
                succ[i] += 1;
                for slot in succ.iter_mut().skip(i + 1) {
                    *slot = 0;
                }
                let used: usize = succ[..m - 1].iter().sum();
                succ[m - 1] = self.n - used;
                found = true;
                break;
            }
        }
        if found {
            self.next = Some(succ);
        }
        Some(Composition { parts: current })
    }
}

/// A subset `J` of `{1, ..., m}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubsetIndicator {
    m: usize,
    bits: u64,
}

impl SubsetIndicator {
    pub fn new(m: usize, members: &[usize]) -> Result<Self> {
        if m > 63 {
            return Err(invalid("subset ambient length above 63"));
        }
        let mut bits = 0u64;
        for &i in members {
            if i == 0 || i > m {
                return Err(invalid(format!("{i} is not in 1..={m}")));
            }
            bits |= 1 << (i - 1);
        }
        Ok(SubsetIndicator { m, bits })
    }

    pub fn from_bits(m: usize, bits: u64) -> Self {
        assert!(m <= 63 && bits >> m == 0);
        SubsetIndicator { m, bits }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, i: usize) -> bool {
        i >= 1 && i <= self.m && self.bits & (1 << (i - 1)) != 0
    }

    /// Members in increasing order, 1-based.
    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        (1..=self.m).filter(|&i| self.contains(i))
    }

    pub fn largest(&self) -> Option<usize> {
        self.elements().last()
    }

    /// The 0/1 tuple `e_J`.
    pub fn indicator(&self) -> Vec<usize> {
        (1..=self.m).map(|i| self.contains(i) as usize).collect()
    }

    /// Every nonempty subset of `{1, ..., m}`, ordered by bitmask.
    pub fn nonempty(m: usize) -> impl Iterator<Item = SubsetIndicator> {
        (1u64..(1u64 << m)).map(move |bits| SubsetIndicator { m, bits })
    }
}

impl fmt::Display for SubsetIndicator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// `(a; r)_n = (1 - a)(1 - a r)...(1 - a r^(n-1))`, with `(a; r)_0 = 1`.
pub fn pochhammer(a: &MPoly, r: &MPoly, n: usize) -> MPoly {
    let mut out = MPoly::one();
    let mut ar = a.clone();
    for i in 0..n {
        out = &out * &(&MPoly::one() - &ar);
        if i + 1 < n {
            ar = &ar * r;
        }
    }
    out
}

/// `(q)_n = (q; q)_n`
pub fn qfactorial(n: usize) -> MPoly {
    pochhammer(&MPoly::q(), &MPoly::q(), n)
}

/// `q^e - 1`
fn qpow_minus_one(e: usize) -> MPoly {
    &MPoly::var_pow(Var::Q, e as u32) - &MPoly::one()
}

/// `(q^n - 1)(q^(n-1) - 1)...(q^(n-i+1) - 1)`, which equals
/// `(-1)^i (q)_n / (q)_{n-i}`. Empty product for `i = 0`.
pub fn signed_qfalling(n: usize, i: usize) -> MPoly {
    assert!(i <= n, "falling product longer than its base");
    (0..i).fold(MPoly::one(), |acc, j| &acc * &qpow_minus_one(n - j))
}

/// `(q)_n / (q)_{n-i} = (1 - q^n)...(1 - q^(n-i+1))`.
pub fn qfalling(n: usize, i: usize) -> MPoly {
    assert!(i <= n, "falling product longer than its base");
    (0..i).fold(MPoly::one(), |acc, j| {
        &acc * &(&MPoly::one() - &MPoly::var_pow(Var::Q, (n - j) as u32))
    })
}

/// Pascal rows of Gaussian binomials, grown on demand and shared.
static QBINOM_ROWS: RwLock<Vec<Vec<MPoly>>> = RwLock::new(Vec::new());

fn qbinomial_cached(n: usize, k: usize) -> MPoly {
    if let Some(row) = QBINOM_ROWS.read().unwrap().get(n) {
        return row[k].clone();
    }
    let mut rows = QBINOM_ROWS.write().unwrap();
    if rows.is_empty() {
        rows.push(vec![MPoly::one()]);
    }
    while rows.len() <= n {
        let prev = rows.last().unwrap();
        let len = prev.len() + 1;
        let mut row = Vec::with_capacity(len);
        for k in 0..len {
            // [n,k] = [n-1,k-1] + q^k [n-1,k]
            let mut val = if k > 0 { prev[k - 1].clone() } else { MPoly::zero() };
            if k < prev.len() {
                val += &prev[k].mul_monomial(&Monomial::var(Var::Q, k as u32));
            }
            row.push(val);
        }
        rows.push(row);
    }
    rows[n][k].clone()
}

/// Gaussian binomial `[n choose k]_q`, via the q-Pascal recursion.
pub fn qbinomial(n: usize, k: usize) -> Result<MPoly> {
    if k > n {
        return Err(invalid(format!("q-binomial needs k <= n, got n={n}, k={k}")));
    }
    if k == 0 || k == n {
        return Ok(MPoly::one());
    }
    Ok(qbinomial_cached(n, k))
}

/// Gaussian binomial, zero outside `0 <= k <= n`.
pub fn qbinomial_or_zero(n: isize, k: isize) -> MPoly {
    if n < 0 || k < 0 || k > n {
        MPoly::zero()
    } else {
        qbinomial(n as usize, k as usize).expect("range checked")
    }
}

/// Gaussian binomial as the exact quotient `(q)_n / ((q)_k (q)_{n-k})`.
/// Independent of [`qbinomial`]; used as its oracle.
pub fn qbinomial_by_division(n: usize, k: usize) -> Result<MPoly> {
    if k > n {
        return Err(invalid(format!("q-binomial needs k <= n, got n={n}, k={k}")));
    }
    let den = &qfactorial(k) * &qfactorial(n - k);
    qfactorial(n).divide_exact(&den)
}

/// q-multinomial coefficient, as the telescoping product
/// `[n, k_1] [n - k_1, k_2] ... [n - k_1 - ... - k_(m-2), k_(m-1)]`.
pub fn qmultinomial(c: &Composition) -> MPoly {
    let mut rest = c.n();
    let mut out = MPoly::one();
    for &k in &c.parts[..c.m() - 1] {
        if k > 0 && k < rest {
            out = &out * &qbinomial(rest, k).expect("parts fit");
        }
        rest -= k;
    }
    out
}

/// q-multinomial as `(q)_n / prod (q)_(k_i)` by exact division.
pub fn qmultinomial_by_division(c: &Composition) -> Result<MPoly> {
    let den = c
        .parts
        .iter()
        .fold(MPoly::one(), |acc, &k| &acc * &qfactorial(k));
    qfactorial(c.n()).divide_exact(&den)
}

/// Ordinary binomial coefficient by integer Pascal recursion.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let mut row = vec![BigInt::from(1)];
    for _ in 0..n {
        let mut next = vec![BigInt::from(1); row.len() + 1];
        for j in 1..row.len() {
            next[j] = &row[j - 1] + &row[j];
        }
        row = next;
    }
    row.swap_remove(k)
}

/// Ordinary multinomial coefficient `n! / prod k_i!`.
pub fn multinomial(c: &Composition) -> BigInt {
    let mut rest = c.n();
    let mut out = BigInt::from(1);
    for &k in c.parts() {
        out *= binomial(rest, k);
        rest -= k;
    }
    out
}

/// Galois number `G_n`: the sum of `[n choose k]_q` over `k`.
pub fn galois(n: usize) -> MPoly {
    let mut out = MPoly::zero();
    for k in 0..=n {
        out += &qbinomial(n, k).expect("k <= n");
    }
    out
}

/// Generalized Galois number `G_n^(m)`: the sum of all q-multinomials of
/// degree `n` and length `m`.
pub fn galois_general(n: usize, m: usize) -> Result<MPoly> {
    if m < 2 {
        return Err(invalid(format!("generalized Galois numbers need m >= 2, got {m}")));
    }
    let mut out = MPoly::zero();
    for c in Composition::all(n, m) {
        out += &qmultinomial(&c);
    }
    Ok(out)
}

/// Right side of the `G^(m)` recursion,
/// `sum_i C(m, i+1) (q^n - 1)...(q^(n-i+1) - 1) G_(n-i)^(m)`, for `n >= m - 1`.
pub fn gengal_recursion_rhs(n: usize, m: usize) -> Result<MPoly> {
    if m < 2 {
        return Err(invalid(format!("recursion needs m >= 2, got {m}")));
    }
    if n + 1 < m {
        return Err(invalid(format!("recursion needs n >= m - 1, got n={n}, m={m}")));
    }
    let mut out = MPoly::zero();
    for i in 0..m {
        let term = &signed_qfalling(n, i) * &galois_general(n - i, m)?;
        out += &term.scale(&binomial(m, i + 1));
    }
    Ok(out)
}

/// Checks `G_(n+1)^(m)` against [`gengal_recursion_rhs`].
pub fn gengal_recursion_check(n: usize, m: usize) -> Result<bool> {
    let rhs = gengal_recursion_rhs(n, m)?;
    Ok(rhs == galois_general(n + 1, m)?)
}

/// The `J` term of the q-multinomial recursion for a composition of `n + 1`:
/// `(q^n - 1)...(q^(n-|J|+2) - 1) * [n + 1 - |J|; k - e_J]_q`.
/// Zero when `k - e_J` has a negative part.
pub fn lemma_term(c: &Composition, j: &SubsetIndicator) -> MPoly {
    assert!(!j.is_empty(), "J must be nonempty");
    let n = c.n() - 1;
    match c.minus(j) {
        Some(reduced) => &signed_qfalling(n, j.len() - 1) * &qmultinomial(&reduced),
        None => MPoly::zero(),
    }
}

fn lemma_sum(c: &Composition) -> MPoly {
    let mut out = MPoly::zero();
    for j in SubsetIndicator::nonempty(c.m()) {
        out += &lemma_term(c, &j);
    }
    out
}

/// Sum over nonempty `J` of [`lemma_term`], for a composition with all parts
/// positive and at least two parts. Equals `qmultinomial(c)`.
pub fn gengal_lemma_rhs(c: &Composition) -> Result<MPoly> {
    if c.m() < 2 {
        return Err(invalid("the q-multinomial recursion needs m >= 2"));
    }
    if !c.all_positive() {
        return Err(invalid(format!(
            "{c} has a zero part; use the zero-extension form"
        )));
    }
    Ok(lemma_sum(c))
}

/// The recursion for compositions that may contain zero parts: the zero
/// parts are removed, the recursion is applied to what remains, and zeros are
/// put back into every index tuple. Inserting zeros leaves each q-multinomial
/// unchanged, so the value is computed on the reduced composition.
pub fn gengal_lemma_zero_extension(c: &Composition) -> Result<MPoly> {
    let positive: Vec<usize> = c.parts().iter().copied().filter(|&k| k > 0).collect();
    if positive.is_empty() {
        return Err(invalid("every part is zero"));
    }
    let reduced = Composition::new(positive)?;
    // a single positive part is the one-term case J = {1}
    Ok(lemma_sum(&reduced))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn comp(parts: &[usize]) -> Composition {
        Composition::new(parts.to_vec()).unwrap()
    }

    fn qp(coeffs: &[i64]) -> MPoly {
        MPoly::from_q_coeffs(coeffs.iter().copied())
    }

    #[test]
    fn pochhammer_examples() {
        let q = MPoly::q();
        assert_eq!(pochhammer(&q, &q, 2), qp(&[1, -1, -1, 1]));
        assert_eq!(pochhammer(&MPoly::t(1), &MPoly::x(), 0), MPoly::one());
        let q2 = q.pow(2);
        assert_eq!(pochhammer(&q2, &q2, 1), qp(&[1, 0, -1]));
    }

    #[test]
    fn qbinomial_examples() {
        for n in 0..6 {
            assert_eq!(qbinomial(n, 0).unwrap(), MPoly::one());
        }
        assert_eq!(qbinomial(2, 1).unwrap(), qp(&[1, 1]));
        assert_eq!(qbinomial(4, 2).unwrap(), qp(&[1, 1, 2, 1, 1]));
        assert_eq!(qbinomial_by_division(4, 2).unwrap(), qp(&[1, 1, 2, 1, 1]));
        assert!(qbinomial(2, 3).is_err());
        assert_eq!(qbinomial_or_zero(1, 2), MPoly::zero());
        assert_eq!(qbinomial_or_zero(0, -1), MPoly::zero());
    }

    #[test]
    fn qmultinomial_examples() {
        for n in 0..6 {
            for k in 0..=n {
                assert_eq!(qmultinomial(&comp(&[k, n - k])), qbinomial(n, k).unwrap());
            }
            assert_eq!(qmultinomial(&comp(&[n])), MPoly::one());
        }
        let expect = qp(&[1, 2, 2, 1]);
        assert_eq!(qmultinomial(&comp(&[1, 1, 1])), expect);
        assert_eq!(qmultinomial_by_division(&comp(&[1, 1, 1])).unwrap(), expect);
    }

    #[test]
    fn galois_examples() {
        assert_eq!(galois(0), MPoly::one());
        assert_eq!(galois(1), MPoly::from(2));
        assert_eq!(galois(2), qp(&[3, 1]));
        assert_eq!(galois(2).eval_q(2).unwrap(), BigInt::from(5));
        for n in 0..6 {
            assert_eq!(galois_general(n, 2).unwrap(), galois(n));
        }
        assert_eq!(galois_general(2, 3).unwrap(), qp(&[6, 3]));
        assert_eq!(galois_general(2, 3).unwrap().eval_q(2).unwrap(), BigInt::from(12));
        assert!(galois_general(2, 1).is_err());
    }

    #[test]
    fn gengal_recursion_examples() {
        assert!(gengal_recursion_check(1, 2).unwrap());
        // G_2 = 2 G_1 + (q - 1) G_0
        assert_eq!(gengal_recursion_rhs(1, 2).unwrap(), qp(&[3, 1]));
        assert!(gengal_recursion_check(2, 3).unwrap());
        assert!(gengal_recursion_check(8, 4).unwrap());
        assert!(gengal_recursion_check(1, 3).is_err());
    }

    #[test]
    fn lemma_examples() {
        assert_eq!(gengal_lemma_rhs(&comp(&[1, 2])).unwrap(), qp(&[1, 1, 1]));
        assert_eq!(gengal_lemma_rhs(&comp(&[1, 1, 1])).unwrap(), qp(&[1, 2, 2, 1]));
        assert!(gengal_lemma_rhs(&comp(&[3])).is_err());
        assert!(gengal_lemma_rhs(&comp(&[1, 0, 2])).is_err());
    }

    #[test]
    fn lemma_terms_for_one_two() {
        // J={1}: [2;0,2] = 1, J={2}: [2;1,1] = 1+q, J={1,2}: (q^2-1)[1;0,1]
        let c = comp(&[1, 2]);
        let t = |members: &[usize]| lemma_term(&c, &SubsetIndicator::new(2, members).unwrap());
        assert_eq!(t(&[1]), MPoly::one());
        assert_eq!(t(&[2]), qp(&[1, 1]));
        assert_eq!(t(&[1, 2]), qp(&[-1, 0, 1]));
    }

    #[test]
    fn zero_extension_examples() {
        assert_eq!(gengal_lemma_zero_extension(&comp(&[2, 0])).unwrap(), MPoly::one());
        assert_eq!(
            gengal_lemma_zero_extension(&comp(&[1, 0, 1])).unwrap(),
            gengal_lemma_rhs(&comp(&[1, 1])).unwrap()
        );
        assert_eq!(gengal_lemma_zero_extension(&comp(&[1, 0, 1])).unwrap(), qp(&[1, 1]));
        assert_eq!(gengal_lemma_zero_extension(&comp(&[0, 3])).unwrap(), MPoly::one());
        assert!(gengal_lemma_zero_extension(&comp(&[0, 0])).is_err());
    }

    #[test]
    fn compositions_are_lexicographic() {
        let all: Vec<Vec<usize>> = Composition::all(2, 3).map(|c| c.parts().to_vec()).collect();
        assert_eq!(
            all,
            vec![
                vec![0, 0, 2],
                vec![0, 1, 1],
                vec![0, 2, 0],
                vec![1, 0, 1],
                vec![1, 1, 0],
                vec![2, 0, 0]
            ]
        );
        assert_eq!(Composition::all(0, 1).count(), 1);
        assert_eq!(Composition::all(5, 1).count(), 1);
        assert_eq!(Composition::all(4, 4).count(), 35);
        assert!(Composition::new(vec![]).is_err());
    }

    #[test]
    fn subsets() {
        let j = SubsetIndicator::new(3, &[1, 3]).unwrap();
        assert_eq!(j.indicator(), vec![1, 0, 1]);
        assert_eq!(j.len(), 2);
        assert_eq!(j.largest(), Some(3));
        assert_eq!(j.to_string(), "{1,3}");
        assert_eq!(comp(&[2, 2, 1]).minus(&j), Some(comp(&[1, 2, 0])));
        assert_eq!(comp(&[0, 2, 1]).minus(&j), None);
        assert_eq!(SubsetIndicator::nonempty(3).count(), 7);
        assert!(SubsetIndicator::new(3, &[4]).is_err());
    }

    #[test]
    fn ordinary_binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(3, 4), BigInt::from(0));
        assert_eq!(multinomial(&comp(&[1, 1, 1])), BigInt::from(6));
    }

    #[test]
    fn falling_products() {
        assert_eq!(signed_qfalling(3, 0), MPoly::one());
        assert_eq!(signed_qfalling(2, 1), qp(&[-1, 0, 1]));
        // (-1)^i (q)_n / (q)_(n-i)
        let lhs = qfactorial(4).divide_exact(&qfactorial(2)).unwrap();
        assert_eq!(signed_qfalling(4, 2), lhs);
        assert_eq!(qfalling(4, 2), lhs);
        assert_eq!(qfalling(3, 1), -signed_qfalling(3, 1));
    }
}
