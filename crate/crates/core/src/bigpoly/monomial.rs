use std::cmp::Ordering;
use std::fmt;

/// A polynomial variable.
///
/// The derived ordering is the fixed variable order `q < x < u < t1 < t2 < ...`,
/// which is also the slot order inside a [`Monomial`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    Q,
    X,
    U,
    /// `T(i)` is `t_i`, with `i >= 1`.
    T(u16),
}

impl Var {
    pub fn index(self) -> usize {
        match self {
            Var::Q => 0,
            Var::X => 1,
            Var::U => 2,
            Var::T(i) => {
                assert!(i >= 1, "t variables are numbered from 1");
                2 + i as usize
            }
        }
    }

    pub fn from_index(index: usize) -> Var {
        match index {
            0 => Var::Q,
            1 => Var::X,
            2 => Var::U,
            i => Var::T((i - 2) as u16),
        }
    }

    pub fn t(i: usize) -> Var {
        Var::T(i as u16)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Q => f.write_str("q"),
            Var::X => f.write_str("x"),
            Var::U => f.write_str("u"),
            Var::T(i) => write!(f, "t{i}"),
        }
    }
}

/// Exponent vector indexed by [`Var::index`], with trailing zeros trimmed so
/// that equal monomials have identical storage.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn from_exponents(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial(exps)
    }

    pub fn var(v: Var, e: u32) -> Self {
        let mut exps = vec![0; v.index() + 1];
        exps[v.index()] = e;
        Self::from_exponents(exps)
    }

    pub fn from_pairs(pairs: &[(Var, u32)]) -> Self {
        let len = pairs.iter().map(|(v, _)| v.index() + 1).max().unwrap_or(0);
        let mut exps = vec![0; len];
        for &(v, e) in pairs {
            exps[v.index()] += e;
        }
        Self::from_exponents(exps)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0.get(v.index()).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Nonzero `(variable, exponent)` pairs in variable order.
    pub fn factors(&self) -> impl Iterator<Item = (Var, u32)> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (Var::from_index(i), e))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (long, short) = if self.0.len() >= other.0.len() {
            (&self.0, &other.0)
        } else {
            (&other.0, &self.0)
        };
        let mut exps = long.clone();
        for (slot, e) in exps.iter_mut().zip(short.iter()) {
            *slot += e;
        }
        Monomial(exps)
    }

    /// `self / other`, if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if other.0.len() > self.0.len() {
            return None;
        }
        let mut exps = self.0.clone();
        for (slot, &e) in exps.iter_mut().zip(other.0.iter()) {
            if *slot < e {
                return None;
            }
            *slot -= e;
        }
        Some(Monomial::from_exponents(exps))
    }

    /// Splits off the power of `v`, returning `(e, rest)` with `self = v^e * rest`.
    pub fn split(&self, v: Var) -> (u32, Monomial) {
        let e = self.exponent(v);
        if e == 0 {
            return (0, self.clone());
        }
        let mut exps = self.0.clone();
        exps[v.index()] = 0;
        (e, Monomial::from_exponents(exps))
    }

    pub fn with_exponent(&self, v: Var, e: u32) -> Monomial {
        let mut exps = self.0.clone();
        if exps.len() <= v.index() {
            exps.resize(v.index() + 1, 0);
        }
        exps[v.index()] = e;
        Monomial::from_exponents(exps)
    }
}

/// Graded order: total degree first, then a lexicographic tie-break in which
/// a larger exponent on an earlier variable ranks lower. Listing monomials in
/// ascending order therefore reads `1, q, x, u, t1, ..., q^2, q*t1, t1^2, ...`.
/// This is a monomial order, so leading terms are well defined for division.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| {
                let len = self.0.len().max(other.0.len());
                for i in 0..len {
                    let a = self.0.get(i).copied().unwrap_or(0);
                    let b = other.0.get(i).copied().unwrap_or(0);
                    if a != b {
                        return b.cmp(&a);
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (v, e) in self.factors() {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ascending_order_follows_variable_order() {
        let mut monos = [
            Monomial::var(Var::t(2), 1),
            Monomial::var(Var::Q, 2),
            Monomial::one(),
            Monomial::var(Var::t(1), 1),
            Monomial::var(Var::Q, 1),
            Monomial::var(Var::X, 1),
        ];
        monos.sort();
        let shown: Vec<String> = monos.iter().map(|m| m.to_string()).collect();
        assert_eq!(shown, ["1", "q", "x", "t1", "t2", "q^2"]);
    }

    #[test]
    fn trailing_zeros_do_not_affect_equality() {
        let a = Monomial::from_exponents(vec![1, 0, 0, 0]);
        assert_eq!(a, Monomial::var(Var::Q, 1));
        assert_eq!(a.split(Var::Q), (1, Monomial::one()));
    }

    #[test]
    fn division_of_monomials() {
        let a = Monomial::from_pairs(&[(Var::Q, 3), (Var::t(1), 1)]);
        let b = Monomial::var(Var::Q, 2);
        assert_eq!(a.div(&b), Some(Monomial::from_pairs(&[(Var::Q, 1), (Var::t(1), 1)])));
        assert_eq!(b.div(&a), None);
    }
}
