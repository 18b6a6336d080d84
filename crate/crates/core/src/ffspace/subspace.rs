use std::fmt;

use super::field::{FieldSpec, FqElem};
use crate::error::{invalid, Result};

/// A subspace of `F_q^n`, stored as its reduced row echelon basis.
///
/// Since the RREF basis is unique, two subspaces are equal exactly when
/// their matrices are.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    n: usize,
    rows: Vec<Vec<FqElem>>,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(n={}, {:?})", self.n, self.index_matrix())
    }
}

/// Reduces `rows` to RREF in place, dropping zero rows. Returns the pivot
/// columns.
fn rref(field: &FieldSpec, rows: &mut Vec<Vec<FqElem>>, n: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(found) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, found);
        let inv = field.inv(rows[r][col]).expect("nonzero pivot");
        for x in rows[r].iter_mut() {
            *x = field.mul(*x, inv);
        }
        for i in 0..rows.len() {
            if i == r || rows[i][col].is_zero() {
                continue;
            }
            let factor = rows[i][col];
            let pivot_row = rows[r].clone();
            for (x, &y) in rows[i].iter_mut().zip(&pivot_row) {
                *x = field.sub(*x, field.mul(factor, y));
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

impl Subspace {
    /// The span of `vectors` in `F_q^n`.
    pub fn span(field: &FieldSpec, n: usize, vectors: &[Vec<FqElem>]) -> Result<Subspace> {
        if vectors.iter().any(|v| v.len() != n) {
            return Err(invalid("vector length differs from ambient dimension"));
        }
        if vectors.iter().flatten().any(|x| x.index() >= field.q()) {
            return Err(invalid("entry is not a field element"));
        }
        let mut rows = vectors.to_vec();
        let pivots = rref(field, &mut rows, n);
        Ok(Subspace { n, rows, pivots })
    }

    pub fn zero(n: usize) -> Subspace {
        Subspace {
            n,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    /// All of `F_q^n`, with the identity as basis.
    pub fn full(n: usize) -> Subspace {
        let rows = (0..n)
            .map(|i| {
                let mut row = vec![FqElem::ZERO; n];
                row[i] = FqElem::ONE;
                row
            })
            .collect();
        Subspace {
            n,
            rows,
            pivots: (0..n).collect(),
        }
    }

    /// Ambient dimension.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<FqElem>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Row-major matrix of element indices.
    pub fn index_matrix(&self) -> Vec<Vec<u32>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|x| x.index()).collect())
            .collect()
    }

    /// Membership test by reduction against the RREF rows.
    pub fn contains(&self, field: &FieldSpec, v: &[FqElem]) -> bool {
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = w[p];
            if c.is_zero() {
                continue;
            }
            for j in 0..self.n {
                w[j] = field.sub(w[j], field.mul(c, row[j]));
            }
        }
        w.iter().all(|x| x.is_zero())
    }

    pub fn is_subspace_of(&self, field: &FieldSpec, other: &Subspace) -> bool {
        self.n == other.n && self.rows.iter().all(|r| other.contains(field, r))
    }

    /// The image of a subspace of `F_q^dim` under coordinates in this basis.
    fn embed(&self, field: &FieldSpec, coords: &[Vec<FqElem>]) -> Subspace {
        let mut rows: Vec<Vec<FqElem>> = coords
            .iter()
            .map(|c| {
                let mut v = vec![FqElem::ZERO; self.n];
                for (ci, row) in c.iter().zip(&self.rows) {
                    if ci.is_zero() {
                        continue;
                    }
                    for j in 0..self.n {
                        v[j] = field.add(v[j], field.mul(*ci, row[j]));
                    }
                }
                v
            })
            .collect();
        let pivots = rref(field, &mut rows, self.n);
        Subspace {
            n: self.n,
            rows,
            pivots,
        }
    }

    /// Streams the `k`-dimensional subspaces contained in this one.
    pub fn subspaces<'a>(&'a self, field: &'a FieldSpec, k: usize) -> impl Iterator<Item = Subspace> + 'a {
        let identity = self.pivots.iter().copied().eq(0..self.n) && self.dim() == self.n;
        SubspaceIter::new(field, self.dim(), k).map(move |s| {
            if identity {
                Subspace { n: self.n, ..s }
            } else {
                self.embed(field, &s.rows)
            }
        })
    }
}

/// Streaming enumeration of `k`-subspaces of `F_q^n`: pivot patterns in
/// lexicographic order, then free entries as an odometer.
pub struct SubspaceIter<'a> {
    field: &'a FieldSpec,
    n: usize,
    k: usize,
    pivots: Option<Vec<usize>>,
    /// (row, column) positions that are free for the current pivots.
    free: Vec<(usize, usize)>,
    odometer: Vec<u16>,
    fresh: bool,
    single_pattern: bool,
}

fn free_positions(n: usize, pivots: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (r, &p) in pivots.iter().enumerate() {
        for c in p + 1..n {
            if !pivots.contains(&c) {
                out.push((r, c));
            }
        }
    }
    out
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

impl<'a> SubspaceIter<'a> {
    pub fn new(field: &'a FieldSpec, n: usize, k: usize) -> Self {
        let pivots = (k <= n).then(|| (0..k).collect::<Vec<_>>());
        let free = pivots.as_deref().map(|p| free_positions(n, p)).unwrap_or_default();
        SubspaceIter {
            field,
            n,
            k,
            odometer: vec![0; free.len()],
            free,
            pivots,
            fresh: true,
            single_pattern: false,
        }
    }

    /// Restricts to a single pivot pattern, for partitioning work.
    pub fn with_pivots(field: &'a FieldSpec, n: usize, pivots: Vec<usize>) -> Self {
        let free = free_positions(n, &pivots);
        SubspaceIter {
            field,
            n,
            k: pivots.len(),
            odometer: vec![0; free.len()],
            free,
            pivots: Some(pivots),
            fresh: true,
            single_pattern: true,
        }
    }

    fn advance(&mut self) -> bool {
        let q = self.field.q() as u16;
        for d in self.odometer.iter_mut() {
            *d += 1;
            if *d < q {
                return true;
            }
            *d = 0;
        }
        false
    }

    fn current(&self) -> Subspace {
        let pivots = self.pivots.clone().unwrap();
        let mut rows = vec![vec![FqElem::ZERO; self.n]; self.k];
        for (r, &p) in pivots.iter().enumerate() {
            rows[r][p] = FqElem::ONE;
        }
        for (&(r, c), &d) in self.free.iter().zip(&self.odometer) {
            rows[r][c] = FqElem(d);
        }
        Subspace {
            n: self.n,
            rows,
            pivots,
        }
    }
}

impl Iterator for SubspaceIter<'_> {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        self.pivots.as_ref()?;
        if self.fresh {
            self.fresh = false;
            return Some(self.current());
        }
        if self.advance() {
            return Some(self.current());
        }
        let pivots = self.pivots.as_mut().unwrap();
        if self.single_pattern || !next_combination(pivots, self.n) {
            self.pivots = None;
            return None;
        }
        self.free = free_positions(self.n, pivots);
        self.odometer = vec![0; self.free.len()];
        Some(self.current())
    }
}

/// Every `k`-dimensional subspace of `F_q^n`, each exactly once.
pub fn enumerate_subspaces(field: &FieldSpec, n: usize, k: usize) -> SubspaceIter<'_> {
    SubspaceIter::new(field, n, k)
}

/// All pivot patterns for `k`-subspaces of `F_q^n`, in lexicographic order.
pub fn pivot_patterns(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k > n {
        return Vec::new();
    }
    let mut c: Vec<usize> = (0..k).collect();
    let mut out = vec![c.clone()];
    while next_combination(&mut c, n) {
        out.push(c.clone());
    }
    out
}

/// Number of `k`-subspaces of `F_q^n` without enumerating free entries:
/// each pivot pattern contributes `q^(free positions)`.
pub fn count_subspaces(q: u64, n: usize, k: usize) -> u128 {
    pivot_patterns(n, k)
        .iter()
        .map(|p| (q as u128).pow(free_positions(n, p).len() as u32))
        .sum()
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;
    use crate::ffspace::build_field;

    #[test]
    fn lines_of_small_planes() {
        let f2 = build_field(2, 1).unwrap();
        assert_eq!(enumerate_subspaces(&f2, 2, 1).count(), 3);
        let f4 = build_field(2, 2).unwrap();
        assert_eq!(enumerate_subspaces(&f4, 2, 1).count(), 5);
        let zero: Vec<_> = enumerate_subspaces(&f4, 3, 0).collect();
        assert_eq!(zero, vec![Subspace::zero(3)]);
        assert_eq!(enumerate_subspaces(&f2, 2, 3).count(), 0);
    }

    #[test]
    fn enumeration_is_canonical_and_distinct() {
        let f3 = build_field(3, 1).unwrap();
        for k in 0..=4 {
            let all: Vec<_> = enumerate_subspaces(&f3, 4, k).collect();
            let set: BTreeSet<_> = all.iter().cloned().collect();
            assert_eq!(set.len(), all.len());
            assert_eq!(all.len() as u128, count_subspaces(3, 4, k));
            for s in &all {
                let again = Subspace::span(&f3, 4, s.rows()).unwrap();
                assert_eq!(&again, s);
            }
        }
    }

    #[test]
    fn span_and_membership() {
        let f2 = build_field(2, 1).unwrap();
        let e = |v: &[u16]| v.iter().map(|&x| FqElem(x)).collect::<Vec<_>>();
        let s = Subspace::span(&f2, 3, &[e(&[1, 1, 0]), e(&[0, 1, 1]), e(&[1, 0, 1])]).unwrap();
        assert_eq!(s.dim(), 2);
        assert_eq!(s.index_matrix(), vec![vec![1, 0, 1], vec![0, 1, 1]]);
        assert!(s.contains(&f2, &e(&[1, 1, 0])));
        assert!(!s.contains(&f2, &e(&[1, 0, 0])));
        assert!(Subspace::span(&f2, 2, &[e(&[1, 0, 0])]).is_err());
    }

    #[test]
    fn subspaces_of_a_subspace() {
        let f2 = build_field(2, 1).unwrap();
        for plane in enumerate_subspaces(&f2, 3, 2) {
            let lines: Vec<_> = plane.subspaces(&f2, 1).collect();
            assert_eq!(lines.len(), 3);
            assert!(lines.iter().all(|l| l.is_subspace_of(&f2, &plane)));
        }
    }
}
