use std::fmt;

use crate::error::{Error, Result};

/// Largest field order with precomputed tables.
pub const MAX_FIELD_ORDER: u64 = 1024;

/// Element of a finite field, identified by its index: the base-`p` number
/// whose digits are the coefficients of its polynomial representative,
/// constant term first. Index 0 is zero and index 1 is one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FqElem(pub u16);

impl FqElem {
    pub const ZERO: FqElem = FqElem(0);
    pub const ONE: FqElem = FqElem(1);

    pub fn index(self) -> u32 {
        self.0 as u32
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The field `F_q`, `q = p^e`, realized as `F_p[x] / (modulus)` with full
/// addition and multiplication tables.
#[derive(Clone)]
pub struct FieldSpec {
    p: u32,
    e: u32,
    q: u32,
    /// Monic modulus, constant term first, length `e + 1`.
    modulus: Vec<u32>,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{} (p={}, modulus {})", self.q, self.p, self.modulus_string())
    }
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn digits(mut index: u32, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(index % p);
        index /= p;
    }
    out
}

fn undigits(ds: &[u32], p: u32) -> u32 {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

fn poly_trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

/// Remainder of `a` modulo the monic `b` over `F_p`.
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = poly_trim(a.to_vec());
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        for (j, &bj) in b.iter().enumerate() {
            r[shift + j] = (r[shift + j] + p - (lead * bj) % p) % p;
        }
        r = poly_trim(r);
    }
    r
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
pub fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        for low in 0..p.pow(d as u32) {
            let mut g = digits(low, p, d);
            g.push(1);
            if poly_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl FieldSpec {
    /// `F_(p^e)` with the smallest monic irreducible modulus of degree `e`,
    /// where polynomials are ordered by the base-`p` index of their
    /// lower coefficients. For `e = 1` the modulus is `x`.
    pub fn new(p: u32, e: u32) -> Result<FieldSpec> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 {
            return Err(Error::InvalidArguments("extension degree must be >= 1".into()));
        }
        let q = (p as u64).checked_pow(e).unwrap_or(u64::MAX);
        if q > MAX_FIELD_ORDER {
            return Err(Error::FieldTooLarge(q));
        }
        let q = q as u32;
        let modulus = (0..q)
            .map(|low| {
                let mut f = digits(low, p, e as usize);
                f.push(1);
                f
            })
            .find(|f| is_irreducible(f, p))
            .expect("irreducible polynomials exist in every degree");
        Ok(Self::with_modulus(p, e, modulus))
    }

    fn with_modulus(p: u32, e: u32, modulus: Vec<u32>) -> FieldSpec {
        let q = p.pow(e);
        let size = (q * q) as usize;
        let mut add = vec![0u16; size];
        let mut mul = vec![0u16; size];
        let reps: Vec<Vec<u32>> = (0..q).map(|i| digits(i, p, e as usize)).collect();
        for a in 0..q {
            for b in 0..q {
                let s: Vec<u32> = reps[a as usize]
                    .iter()
                    .zip(&reps[b as usize])
                    .map(|(x, y)| (x + y) % p)
                    .collect();
                add[(a * q + b) as usize] = undigits(&s, p) as u16;
                let prod = poly_rem(
                    &poly_mul(&poly_trim(reps[a as usize].clone()), &poly_trim(reps[b as usize].clone()), p),
                    &modulus,
                    p,
                );
                mul[(a * q + b) as usize] = undigits(&prod, p) as u16;
            }
        }
        let mut neg = vec![0u16; q as usize];
        let mut inv = vec![0u16; q as usize];
        for a in 0..q {
            for b in 0..q {
                if add[(a * q + b) as usize] == 0 {
                    neg[a as usize] = b as u16;
                }
                if mul[(a * q + b) as usize] == 1 {
                    inv[a as usize] = b as u16;
                }
            }
        }
        FieldSpec {
            p,
            e,
            q,
            modulus,
            add,
            mul,
            neg,
            inv,
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Modulus coefficients, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn modulus_string(&self) -> String {
        let mut terms = Vec::new();
        for (i, &c) in self.modulus.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            terms.push(match (c, mono.is_empty()) {
                (_, true) => c.to_string(),
                (1, false) => mono,
                (_, false) => format!("{c}*{mono}"),
            });
        }
        terms.join(" + ")
    }

    pub fn elements(&self) -> impl Iterator<Item = FqElem> {
        (0..self.q as u16).map(FqElem)
    }

    /// Coefficients of the polynomial representative, constant term first.
    pub fn representative(&self, a: FqElem) -> Vec<u32> {
        digits(a.index(), self.p, self.e as usize)
    }

    #[inline]
    pub fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        FqElem(self.add[a.0 as usize * self.q as usize + b.0 as usize])
    }

    #[inline]
    pub fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        FqElem(self.mul[a.0 as usize * self.q as usize + b.0 as usize])
    }

    #[inline]
    pub fn neg(&self, a: FqElem) -> FqElem {
        FqElem(self.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: FqElem, b: FqElem) -> FqElem {
        self.add(a, self.neg(b))
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: FqElem) -> Option<FqElem> {
        (!a.is_zero()).then(|| FqElem(self.inv[a.0 as usize]))
    }
}

/// `F_(p^e)`; see [`FieldSpec::new`].
pub fn build_field(p: u32, e: u32) -> Result<FieldSpec> {
    FieldSpec::new(p, e)
}
