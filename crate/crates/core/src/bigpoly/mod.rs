//! Exact multivariate polynomials over the integers and bi-truncated power
//! series in `x` and `q`.

mod monomial;
mod poly;
mod series;
mod text;

pub use monomial::{Monomial, Var};
pub use poly::{elementary_symmetric, MPoly};
pub use series::TruncSeries;

/// `a + b`
pub fn poly_add(a: &MPoly, b: &MPoly) -> MPoly {
    a + b
}

/// `a * b`
pub fn poly_mul(a: &MPoly, b: &MPoly) -> MPoly {
    a * b
}

pub fn poly_divide_exact(a: &MPoly, b: &MPoly) -> crate::Result<MPoly> {
    a.divide_exact(b)
}

pub fn poly_substitute(p: &MPoly, v: Var, r: &MPoly) -> MPoly {
    p.substitute(v, r)
}

pub fn poly_eval_int(
    p: &MPoly,
    assignment: &std::collections::BTreeMap<Var, num_bigint::BigInt>,
) -> crate::Result<num_bigint::BigInt> {
    p.eval_int(assignment)
}

pub fn series_from_poly(p: &MPoly, xcap: usize, qcap: u32) -> TruncSeries {
    TruncSeries::from_poly(p, xcap, qcap)
}

pub fn series_mul(a: &TruncSeries, b: &TruncSeries) -> crate::Result<TruncSeries> {
    a.mul(b)
}

pub fn series_inverse(a: &TruncSeries) -> crate::Result<TruncSeries> {
    a.inverse()
}

pub fn series_shift_q(a: &TruncSeries) -> TruncSeries {
    a.shift_q()
}
