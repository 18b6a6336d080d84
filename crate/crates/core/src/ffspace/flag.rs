use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use super::field::FieldSpec;
use super::subspace::{count_subspaces, pivot_patterns, Subspace, SubspaceIter};
use crate::error::{invalid, Error, Result};
use crate::qkernel::{Composition, SubsetIndicator};

/// A chain `W_(m-1) ⊆ ... ⊆ W_1` in `F_q^n` whose dimensions drop by the
/// parts of a composition: `dim W_i = n - (k_1 + ... + k_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagChain {
    comp: Composition,
    chain: Vec<Subspace>,
}

/// Dimensions `dim W_1, ..., dim W_(m-1)` prescribed by `comp`.
pub fn flag_dims(comp: &Composition) -> Vec<usize> {
    let n = comp.n();
    let mut acc = 0;
    comp.parts()[..comp.m() - 1]
        .iter()
        .map(|&k| {
            acc += k;
            n - acc
        })
        .collect()
}

impl FlagChain {
    /// Checks dimensions and nesting (every basis row of `W_i` lies in
    /// `W_(i-1)`).
    pub fn new(field: &FieldSpec, comp: Composition, chain: Vec<Subspace>) -> Result<FlagChain> {
        let dims = flag_dims(&comp);
        if chain.len() != dims.len() {
            return Err(invalid(format!(
                "composition {comp} needs {} subspaces, got {}",
                dims.len(),
                chain.len()
            )));
        }
        let mut outer = Subspace::full(comp.n());
        for (i, (w, &d)) in chain.iter().zip(&dims).enumerate() {
            if w.n() != comp.n() || w.dim() != d {
                return Err(invalid(format!("W_{} should have dimension {d}", i + 1)));
            }
            if !w.is_subspace_of(field, &outer) {
                return Err(invalid(format!("W_{} is not contained in W_{}", i + 1, i)));
            }
            outer = w.clone();
        }
        Ok(FlagChain { comp, chain })
    }

    pub fn comp(&self) -> &Composition {
        &self.comp
    }

    pub fn n(&self) -> usize {
        self.comp.n()
    }

    pub fn chain(&self) -> &[Subspace] {
        &self.chain
    }

    pub fn to_record(&self) -> FlagRecord {
        FlagRecord {
            comp: self.comp.parts().to_vec(),
            subspaces: self.chain.iter().map(Subspace::index_matrix).collect(),
        }
    }
}

/// Serialized flag: the composition and each subspace as a row-major matrix
/// of element indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlagRecord {
    pub comp: Vec<usize>,
    pub subspaces: Vec<Vec<Vec<u32>>>,
}

fn walk<F: FnMut(&[Subspace])>(
    field: &FieldSpec,
    outer: &Subspace,
    dims: &[usize],
    chain: &mut Vec<Subspace>,
    visit: &mut F,
) {
    let Some((&d, rest)) = dims.split_first() else {
        visit(chain);
        return;
    };
    for w in outer.subspaces(field, d) {
        chain.push(w);
        let w = chain.last().unwrap().clone();
        walk(field, &w, rest, chain, visit);
        chain.pop();
    }
}

/// Calls `visit` on every flag of type `comp`, depth first, without
/// materializing the full list.
pub fn visit_flags<F: FnMut(&[Subspace])>(field: &FieldSpec, comp: &Composition, mut visit: F) {
    let dims = flag_dims(comp);
    let mut chain = Vec::with_capacity(dims.len());
    walk(field, &Subspace::full(comp.n()), &dims, &mut chain, &mut visit);
}

/// Number of flags of type `comp` by nested enumeration. Work is split across
/// threads by the pivot pattern of `W_1`.
pub fn count_flags(field: &FieldSpec, comp: &Composition) -> u64 {
    let n = comp.n();
    let dims = flag_dims(comp);
    let Some((&d1, rest)) = dims.split_first() else {
        return 1;
    };
    pivot_patterns(n, d1)
        .into_par_iter()
        .map(|pivots| {
            let mut count = 0u64;
            let mut chain = Vec::with_capacity(rest.len());
            for w1 in SubspaceIter::with_pivots(field, n, pivots) {
                walk(field, &w1, rest, &mut chain, &mut |_| count += 1);
            }
            count
        })
        .sum()
}

/// Like [`count_flags`], but the innermost level is counted from pivot
/// patterns instead of enumerated.
pub fn count_flags_fast(field: &FieldSpec, comp: &Composition) -> u64 {
    let dims = flag_dims(comp);
    let Some((&last, init)) = dims.split_last() else {
        return 1;
    };
    let q = field.q() as u64;
    let outer_dim = init.last().copied().unwrap_or(comp.n());
    let inner = count_subspaces(q, outer_dim, last) as u64;
    let mut count = 0u64;
    let mut chain = Vec::new();
    walk(field, &Subspace::full(comp.n()), init, &mut chain, &mut |_| count += inner);
    count
}

/// Every flag of length `m - 1` in `F_q^n`, over all compositions of `n`
/// into `m` parts.
pub fn total_flags(field: &FieldSpec, n: usize, m: usize) -> Result<u64> {
    if m < 2 {
        return Err(invalid("flags need m >= 2"));
    }
    Ok(Composition::all(n, m).map(|c| count_flags(field, &c)).sum())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum TypeLabel {
    Type1,
    Type2,
    Type3,
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TypeLabel::Type1 => "Type1",
            TypeLabel::Type2 => "Type2",
            TypeLabel::Type3 => "Type3",
        };
        f.write_str(s)
    }
}

/// Type of `w` relative to the RREF basis `v_1..v_d` of `ambient`:
/// `Type1` if `w` lies in the span of `v_1..v_(d-1)`, otherwise `Type2` if
/// `v_d ∈ w`, otherwise `Type3`.
pub fn classify_subspace(field: &FieldSpec, w: &Subspace, ambient: &Subspace) -> Result<TypeLabel> {
    if w.dim() == 0 {
        return Err(Error::ZeroDimensional);
    }
    if !w.is_subspace_of(field, ambient) {
        return Err(invalid("subspace is not contained in the ambient space"));
    }
    let d = ambient.dim();
    let hyperplane = Subspace::span(field, ambient.n(), &ambient.rows()[..d - 1])?;
    if w.is_subspace_of(field, &hyperplane) {
        Ok(TypeLabel::Type1)
    } else if w.contains(field, &ambient.rows()[d - 1]) {
        Ok(TypeLabel::Type2)
    } else {
        Ok(TypeLabel::Type3)
    }
}

/// Counts of Type1, Type2 and Type3 among the `k`-subspaces of
/// `F_q^(n_plus_1)`, relative to the standard basis.
pub fn type_census(field: &FieldSpec, n_plus_1: usize, k: usize) -> Result<[u64; 3]> {
    if k == 0 || k > n_plus_1 {
        return Err(invalid(format!("need 1 <= k <= {n_plus_1}, got k = {k}")));
    }
    let full = Subspace::full(n_plus_1);
    let mut counts = [0u64; 3];
    for w in super::enumerate_subspaces(field, n_plus_1, k) {
        counts[classify_subspace(field, &w, &full)? as usize] += 1;
    }
    Ok(counts)
}

/// The subset `J ⊆ {1..m}` a flag belongs to. Scanning `W_1, W_2, ...`, each
/// classified inside its predecessor: Type3 steps join `J`, Type2 steps do
/// not, and the first Type1 step at `i` ends the scan with `i ∈ J`. With no
/// Type1 step, `m ∈ J`.
pub fn flag_type_pattern(field: &FieldSpec, chain: &[Subspace], n: usize) -> Result<SubsetIndicator> {
    let m = chain.len() + 1;
    let mut members = Vec::new();
    let mut outer = Subspace::full(n);
    for (idx, w) in chain.iter().enumerate() {
        let i = idx + 1;
        match classify_subspace(field, w, &outer)? {
            TypeLabel::Type1 => {
                members.push(i);
                return SubsetIndicator::new(m, &members);
            }
            TypeLabel::Type2 => {}
            TypeLabel::Type3 => members.push(i),
        }
        outer = w.clone();
    }
    members.push(m);
    SubsetIndicator::new(m, &members)
}

fn check_pattern_args(comp: &Composition) -> Result<()> {
    if comp.m() < 2 || !comp.all_positive() {
        return Err(invalid(format!(
            "type patterns need at least two parts, all positive; got {comp}"
        )));
    }
    Ok(())
}

/// Number of flags of type `comp` for each type pattern `J`.
pub fn type_pattern_census(
    field: &FieldSpec,
    comp: &Composition,
) -> Result<BTreeMap<SubsetIndicator, u64>> {
    check_pattern_args(comp)?;
    let mut out = BTreeMap::new();
    let mut err = None;
    visit_flags(field, comp, |chain| {
        if err.is_some() {
            return;
        }
        match flag_type_pattern(field, chain, comp.n()) {
            Ok(j) => *out.entry(j).or_insert(0) += 1,
            Err(e) => err = Some(e),
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// Number of flags of type `comp` whose type pattern is `j`.
pub fn flag_type_pattern_count(field: &FieldSpec, comp: &Composition, j: &SubsetIndicator) -> Result<u64> {
    check_pattern_args(comp)?;
    if j.is_empty() || j.m() != comp.m() {
        return Err(invalid(format!("J = {j} must be a nonempty subset of 1..={}", comp.m())));
    }
    Ok(type_pattern_census(field, comp)?.get(j).copied().unwrap_or(0))
}
