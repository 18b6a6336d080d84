//! Verification suites: every identity the library implements, checked case
//! by case against an independent computation.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use clap::ValueEnum;
use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::record::{inputs, OutputRecord};
use crate::bigpoly::{MPoly, Var};
use crate::cyclotomic::{
    h1_shift_chain, rs_eval_roots, special1_formula, special2_check, special3_formula,
    special3_via_qshift_check, CycPoly,
};
use crate::error::{invalid, Error, Result};
use crate::ffspace::{
    build_field, count_flags, count_flags_fast, enumerate_subspaces, total_flags, type_census,
    type_pattern_census, FieldSpec,
};
use crate::qkernel::{
    galois, galois_general, gengal_lemma_rhs, gengal_lemma_zero_extension, gengal_recursion_check,
    lemma_term, qbinomial, qbinomial_by_division, qmultinomial_by_division, signed_qfalling,
    Composition, SubsetIndicator,
};
use crate::rogers_szego::{
    euler_check, euler_inverse_check, rs, rs_functional_series_check, rs_generating_check,
    rs_qshift_lhs, rs_qshift_rhs, rs_recursion_rhs, rs_single_recursion_check,
    single_qshift_rhs, two_variable_recursion_rhs,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Suite {
    Euler,
    Genfn,
    ThmRecursion,
    Qshift,
    SpecialValues,
    Galois,
    GengalLemma,
    FlagOracle,
    TypeCensus,
    All,
}

impl Suite {
    pub const CONCRETE: [Suite; 9] = [
        Suite::Euler,
        Suite::Genfn,
        Suite::ThmRecursion,
        Suite::Qshift,
        Suite::SpecialValues,
        Suite::Galois,
        Suite::GengalLemma,
        Suite::FlagOracle,
        Suite::TypeCensus,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Euler => "euler",
            Suite::Genfn => "genfn",
            Suite::ThmRecursion => "thm-recursion",
            Suite::Qshift => "qshift",
            Suite::SpecialValues => "special-values",
            Suite::Galois => "galois",
            Suite::GengalLemma => "gengal-lemma",
            Suite::FlagOracle => "flag-oracle",
            Suite::TypeCensus => "type-census",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Size caps given on the command line; unset fields take suite defaults.
#[derive(Clone, Debug, Default)]
pub struct Caps {
    pub max_n: Option<usize>,
    pub max_m: Option<usize>,
    pub p: Option<u32>,
    pub e: Option<u32>,
    pub xcap: Option<usize>,
    pub qcap: Option<u32>,
}

/// A deliberate corruption of one q-binomial coefficient, used to test that
/// the suites notice. Written `qbinom:n,k,exp,delta`: the coefficient of
/// `q^exp` in `[n choose k]_q` is shifted by `delta`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fault {
    pub n: usize,
    pub k: usize,
    pub exp: u32,
    pub delta: i64,
}

impl FromStr for Fault {
    type Err = Error;

    fn from_str(s: &str) -> Result<Fault> {
        let bad = || invalid(format!("fault must look like qbinom:n,k,exp,delta, got {s:?}"));
        let rest = s.strip_prefix("qbinom:").ok_or_else(bad)?;
        let parts: Vec<&str> = rest.split(',').map(str::trim).collect();
        if parts.len() != 4 {
            return Err(bad());
        }
        let n = parts[0].parse().map_err(|_| bad())?;
        let k = parts[1].parse().map_err(|_| bad())?;
        let exp = parts[2].parse().map_err(|_| bad())?;
        let delta: i64 = parts[3].parse().map_err(|_| bad())?;
        if k > n {
            return Err(invalid("fault needs k <= n"));
        }
        if delta == 0 {
            return Err(invalid("fault delta must be nonzero"));
        }
        Ok(Fault { n, k, exp, delta })
    }
}

/// The q-binomial source the suites check against, possibly faulted.
#[derive(Clone, Debug, Default)]
pub struct Kernel {
    fault: Option<Fault>,
}

impl Kernel {
    pub fn new(fault: Option<Fault>) -> Self {
        Kernel { fault }
    }

    pub fn qbinom(&self, n: usize, k: usize) -> MPoly {
        let mut out = qbinomial(n, k).expect("k <= n");
        if let Some(f) = self.fault {
            if f.n == n && f.k == k {
                out.add_term(
                    crate::bigpoly::Monomial::var(Var::Q, f.exp),
                    BigInt::from(f.delta),
                );
            }
        }
        out
    }

    /// `[n choose k]_q`, zero outside `0 <= k <= n`.
    pub fn qbinom_or_zero(&self, n: isize, k: isize) -> MPoly {
        if n < 0 || k < 0 || k > n {
            MPoly::zero()
        } else {
            self.qbinom(n as usize, k as usize)
        }
    }

    /// Telescoping product of q-binomials.
    pub fn qmultinom(&self, c: &Composition) -> MPoly {
        let mut rest = c.n();
        let mut out = MPoly::one();
        for &k in &c.parts()[..c.m() - 1] {
            out = &out * &self.qbinom(rest, k);
            rest -= k;
        }
        out
    }
}

type CaseFn = Box<dyn Fn(&Kernel) -> Result<bool> + Send + Sync>;

struct Case {
    params: Vec<(&'static str, Value)>,
    run: CaseFn,
}

struct Check {
    suite: Suite,
    name: &'static str,
    cases: Vec<Case>,
}

impl Check {
    fn new(suite: Suite, name: &'static str) -> Self {
        Check {
            suite,
            name,
            cases: Vec::new(),
        }
    }

    /// Cases must be pushed smallest first: the first failure is reported.
    fn case<F>(&mut self, params: Vec<(&'static str, Value)>, run: F)
    where
        F: Fn(&Kernel) -> Result<bool> + Send + Sync + 'static,
    {
        self.cases.push(Case {
            params,
            run: Box::new(run),
        });
    }
}

/// Suite defaults and the hard limits beyond which the command refuses to run.
struct Limits {
    max_n: (usize, usize),
    max_m: (usize, usize),
    xcap: (usize, usize),
    qcap: (u32, u32),
    max_q: u32,
}

fn limits(suite: Suite) -> Limits {
    let base = Limits {
        max_n: (0, 0),
        max_m: (0, 0),
        xcap: (0, 0),
        qcap: (0, 0),
        max_q: 0,
    };
    match suite {
        Suite::Euler => Limits { xcap: (8, 16), qcap: (12, 32), ..base },
        Suite::Genfn => Limits { max_m: (4, 5), xcap: (8, 10), qcap: (12, 16), ..base },
        Suite::ThmRecursion => Limits { max_n: (10, 14), max_m: (5, 6), ..base },
        Suite::Qshift => Limits { max_n: (8, 10), max_m: (4, 5), ..base },
        Suite::SpecialValues => Limits { max_n: (12, 16), max_m: (6, 8), ..base },
        Suite::Galois => Limits { max_n: (12, 30), ..base },
        Suite::GengalLemma => Limits { max_n: (10, 12), max_m: (5, 6), ..base },
        Suite::FlagOracle => Limits { max_n: (4, 5), max_m: (4, 5), max_q: 9, ..base },
        Suite::TypeCensus => Limits { max_n: (3, 4), max_m: (3, 4), max_q: 9, ..base },
        Suite::All => base,
    }
}

/// Caps resolved for one suite.
#[derive(Clone, Debug)]
struct Resolved {
    max_n: usize,
    max_m: usize,
    xcap: usize,
    qcap: u32,
    field: Option<(u32, u32)>,
}

fn resolve(suite: Suite, caps: &Caps) -> Result<Resolved> {
    let l = limits(suite);
    let pick = |given: Option<usize>, (def, hard): (usize, usize), what: &str| -> Result<usize> {
        if hard == 0 {
            // the suite has no such parameter
            return Ok(0);
        }
        let v = given.unwrap_or(def);
        if v > hard {
            return Err(invalid(format!("{suite}: {what} = {v} exceeds the cap {hard}")));
        }
        Ok(v)
    };
    let max_n = pick(caps.max_n, l.max_n, "max-n")?;
    let max_m = pick(caps.max_m, l.max_m, "max-m")?;
    let xcap = pick(caps.xcap, l.xcap, "xcap")?;
    let qcap = pick(caps.qcap.map(|q| q as usize), (l.qcap.0 as usize, l.qcap.1 as usize), "qcap")? as u32;
    if suite == Suite::Genfn && (qcap as usize) < xcap {
        return Err(invalid(format!("genfn needs qcap >= xcap, got xcap={xcap}, qcap={qcap}")));
    }
    let field = match (caps.p, caps.e) {
        (None, None) => None,
        (p, e) => Some((p.unwrap_or(2), e.unwrap_or(1))),
    };
    if let Some((p, e)) = field {
        if l.max_q > 0 {
            let f = build_field(p, e)?;
            if f.q() > l.max_q {
                return Err(invalid(format!("{suite}: field order {} exceeds the cap {}", f.q(), l.max_q)));
            }
        }
    }
    Ok(Resolved {
        max_n,
        max_m,
        xcap,
        qcap,
        field,
    })
}

fn comp_json(c: &Composition) -> Value {
    json!(c.to_string())
}

fn eval(p: &MPoly, q: u32) -> Result<BigInt> {
    p.eval_q(q as i64)
}

fn field_label(f: &FieldSpec) -> Value {
    json!(format!("F_{}", f.q()))
}

fn fields(list: &[(u32, u32)]) -> Vec<FieldSpec> {
    list.iter().map(|&(p, e)| build_field(p, e).expect("built-in fields")).collect()
}

fn euler_suite(r: &Resolved) -> Vec<Check> {
    let s = Suite::Euler;
    let qcap = r.qcap;
    let mut cleared = Check::new(s, "cleared-denominators");
    let mut inverse = Check::new(s, "series-inverse");
    for n in 0..=r.xcap {
        let params = vec![("xcap", json!(n)), ("qcap", json!(qcap))];
        cleared.case(params.clone(), move |_| euler_check(n, qcap));
        inverse.case(params, move |_| euler_inverse_check(n, qcap));
    }
    vec![cleared, inverse]
}

fn genfn_suite(r: &Resolved) -> Vec<Check> {
    let s = Suite::Genfn;
    let (xcap, qcap) = (r.xcap, r.qcap);
    let mut coeffs = Check::new(s, "generating-function");
    let mut functional = Check::new(s, "functional-equation");
    for m in 2..=r.max_m {
        let params = vec![("m", json!(m)), ("xcap", json!(xcap)), ("qcap", json!(qcap))];
        coeffs.case(params.clone(), move |_| rs_generating_check(m, xcap, qcap));
        functional.case(params, move |_| rs_functional_series_check(m, xcap, qcap));
    }
    vec![coeffs, functional]
}

fn recursion_suite(r: &Resolved) -> Vec<Check> {
    let s = Suite::ThmRecursion;
    let mut general = Check::new(s, "recursion");
    for n in 1..=r.max_n {
        for m in 2..=r.max_m.min(n + 1) {
            general.case(vec![("n", json!(n)), ("m", json!(m))], move |_| {
                Ok(rs_recursion_rhs(n, m)?.value() == rs(n + 1, m)?.value())
            });
        }
    }
    let mut single = Check::new(s, "single-variable");
    let mut two = Check::new(s, "two-variable-expanded");
    for n in 1..=r.max_n {
        single.case(vec![("n", json!(n))], move |_| rs_single_recursion_check(n));
        if n >= 2 && r.max_m >= 3 {
            two.case(vec![("n", json!(n))], move |_| {
                Ok(two_variable_recursion_rhs(n)? == *rs(n + 1, 3)?.value())
            });
        }
    }
    vec![general, single, two]
}

fn qshift_suite(r: &Resolved) -> Vec<Check> {
    let s = Suite::Qshift;
    let mut shift = Check::new(s, "qshift");
    for n in 1..=r.max_n {
        for m in 2..=r.max_m {
            for j in SubsetIndicator::nonempty(m - 1) {
                if j.len() > n {
                    continue;
                }
                let params = vec![("n", json!(n)), ("m", json!(m)), ("J", json!(j.to_string()))];
                shift.case(params, move |_| Ok(rs_qshift_lhs(n, m, &j)? == rs_qshift_rhs(n, m, &j)?));
            }
        }
    }
    let mut single = Check::new(s, "single-variable");
    for n in 1..=r.max_n {
        single.case(vec![("n", json!(n))], move |_| {
            let j = SubsetIndicator::new(1, &[1])?;
            Ok(rs_qshift_lhs(n, 2, &j)? == single_qshift_rhs(n)?)
        });
    }
    let mut chain = Check::new(s, "h1-two-stage");
    for m in 2..=r.max_m {
        chain.case(vec![("m", json!(m))], move |_| {
            let steps = h1_shift_chain(m)?;
            let one_minus_q = CycPoly::from_qpoly(&MPoly::from_q_coeffs([1, -1]), m)?;
            Ok(steps.last() == Some(&one_minus_q) && rs_eval_roots(1, m, true)? == one_minus_q)
        });
    }
    vec![shift, single, chain]
}

fn special_suite(r: &Resolved) -> Vec<Check> {
    let s = Suite::SpecialValues;
    let mut unscaled = Check::new(s, "roots-of-unity");
    let mut scaled = Check::new(s, "scaled-roots-of-unity");
    let mut via_shift = Check::new(s, "scaled-via-qshift");
    let mut fractional = Check::new(s, "fractional-powers");
    for n in 0..=r.max_n {
        for m in 2..=r.max_m {
            let params = vec![("n", json!(n)), ("m", json!(m))];
            unscaled.case(params.clone(), move |_| {
                let v = rs_eval_roots(n, m, false)?;
                Ok(v.is_rational_integral() && v.to_qpoly() == Some(special1_formula(n, m)))
            });
            scaled.case(params.clone(), move |_| {
                let v = rs_eval_roots(n, m, true)?;
                Ok(v.is_rational_integral() && v.to_qpoly() == Some(special3_formula(n, m)))
            });
            if n >= m {
                via_shift.case(params.clone(), move |_| special3_via_qshift_check(n, m));
            }
            if n + 2 <= r.max_n && m < r.max_m {
                fractional.case(params, move |_| special2_check(n, m));
            }
        }
    }
    vec![unscaled, scaled, via_shift, fractional]
}

fn galois_suite(r: &Resolved) -> Vec<Check> {
    let s = Suite::Galois;
    let mut pascal = Check::new(s, "qpascal-vs-division");
    for n in 0..=r.max_n {
        for k in 0..=n {
            pascal.case(vec![("n", json!(n)), ("k", json!(k))], move |kern| {
                Ok(kern.qbinom(n, k) == qbinomial_by_division(n, k)?)
            });
        }
    }
    let mut split = Check::new(s, "three-type-split");
    for n in 1..r.max_n {
        for k in 1..=n + 1 {
            split.case(vec![("n", json!(n)), ("k", json!(k))], move |kern| {
                let (ni, ki) = (n as isize, k as isize);
                let rhs = &(&kern.qbinom_or_zero(ni, ki) + &kern.qbinom_or_zero(ni, ki - 1))
                    + &(&signed_qfalling(n, 1) * &kern.qbinom_or_zero(ni - 1, ki - 1));
                Ok(kern.qbinom(n + 1, k) == rhs)
            });
        }
    }
    let mut sum = Check::new(s, "galois-sum");
    let mut recursion = Check::new(s, "galois-recursion");
    let mut rs_value = Check::new(s, "galois-equals-rs");
    for n in 0..=r.max_n {
        sum.case(vec![("n", json!(n))], move |kern| {
            let mut total = MPoly::zero();
            for k in 0..=n {
                total += &kern.qbinom(n, k);
            }
            Ok(galois(n) == total)
        });
        if n >= 1 && n < r.max_n {
            recursion.case(vec![("n", json!(n))], move |_| {
                let rhs = &galois(n).scale(&BigInt::from(2)) + &(&signed_qfalling(n, 1) * &galois(n - 1));
                Ok(galois(n + 1) == rhs)
            });
        }
        rs_value.case(vec![("n", json!(n))], move |_| {
            let h = rs(n, 2)?.into_value().substitute(Var::t(1), &MPoly::one());
            Ok(h == galois(n))
        });
    }
    let mut seeds = Check::new(s, "seeds-at-q2");
    seeds.case(vec![("q", json!(2))], |_| {
        let seq: Vec<BigInt> = (0..3).map(|n| galois(n).eval_q(2)).collect::<Result<_>>()?;
        Ok(galois(0).is_one() && galois(1) == MPoly::constant(2) && seq == [1, 2, 5].map(BigInt::from))
    });
    vec![pascal, split, sum, recursion, rs_value, seeds]
}

fn gengal_suite(r: &Resolved) -> Vec<Check> {
    let s = Suite::GengalLemma;
    let (lemma_n, lemma_m) = (r.max_n.saturating_sub(1), r.max_m.saturating_sub(1));
    let mut lemma = Check::new(s, "lemma-positive-parts");
    let mut zeros = Check::new(s, "lemma-zero-parts");
    let mut division = Check::new(s, "qmultinomial-division");
    for total in 1..=lemma_n {
        for m in 1..=lemma_m {
            for c in Composition::all(total, m) {
                let zero_count = c.parts().iter().filter(|&&k| k == 0).count();
                let params = vec![("comp", comp_json(&c))];
                if zero_count == 0 && m >= 2 {
                    let c2 = c.clone();
                    lemma.case(params.clone(), move |kern| Ok(gengal_lemma_rhs(&c2)? == kern.qmultinom(&c2)));
                } else if (1..=2).contains(&zero_count) {
                    let c2 = c.clone();
                    zeros.case(params.clone(), move |kern| {
                        Ok(gengal_lemma_zero_extension(&c2)? == kern.qmultinom(&c2))
                    });
                }
                division.case(params, move |kern| Ok(qmultinomial_by_division(&c)? == kern.qmultinom(&c)));
            }
        }
    }
    let mut corollary = Check::new(s, "gengal-recursion");
    let mut rs_value = Check::new(s, "gengal-equals-rs");
    for n in 0..=r.max_n {
        for m in 2..=r.max_m {
            let params = vec![("n", json!(n)), ("m", json!(m))];
            if n + 1 >= m {
                corollary.case(params.clone(), move |_| gengal_recursion_check(n, m));
            }
            rs_value.case(params, move |_| {
                let subs: Vec<(Var, MPoly)> = (1..m).map(|i| (Var::t(i), MPoly::one())).collect();
                Ok(rs(n, m)?.into_value().substitute_many(&subs) == galois_general(n, m)?)
            });
        }
    }
    vec![lemma, zeros, division, corollary, rs_value]
}

fn flag_suite(r: &Resolved) -> Vec<Check> {
    let s = Suite::FlagOracle;
    let (sub_fields, flag_fields) = match r.field {
        Some(f) => (vec![f], vec![f]),
        None => (vec![(2, 1), (3, 1), (2, 2), (5, 1)], vec![(2, 1), (3, 1)]),
    };
    let mut subspaces = Check::new(s, "subspace-count");
    for n in 0..=r.max_n + 1 {
        for f in fields(&sub_fields) {
            for k in 0..=n {
                let params = vec![("field", field_label(&f)), ("n", json!(n)), ("k", json!(k))];
                let f = f.clone();
                subspaces.case(params, move |kern| {
                    let mut seen = HashSet::new();
                    for w in enumerate_subspaces(&f, n, k) {
                        if !seen.insert(w) {
                            return Ok(false);
                        }
                    }
                    Ok(BigInt::from(seen.len()) == eval(&kern.qbinom(n, k), f.q())?)
                });
            }
        }
    }
    let mut flags = Check::new(s, "flag-count");
    let mut totals = Check::new(s, "total-flags");
    for n in 0..=r.max_n {
        for f in fields(&flag_fields) {
            for m in 2..=r.max_m {
                for c in Composition::all(n, m) {
                    let params = vec![("field", field_label(&f)), ("comp", comp_json(&c))];
                    let f = f.clone();
                    flags.case(params, move |kern| {
                        let expected = eval(&kern.qmultinom(&c), f.q())?;
                        let slow = count_flags(&f, &c);
                        Ok(BigInt::from(slow) == expected && count_flags_fast(&f, &c) == slow)
                    });
                }
                let params = vec![("field", field_label(&f)), ("n", json!(n)), ("m", json!(m))];
                let f = f.clone();
                totals.case(params, move |_| {
                    Ok(BigInt::from(total_flags(&f, n, m)?) == eval(&galois_general(n, m)?, f.q())?)
                });
            }
        }
    }
    vec![subspaces, flags, totals]
}

fn census_suite(r: &Resolved) -> Vec<Check> {
    let s = Suite::TypeCensus;
    let (census_fields, pattern_fields) = match r.field {
        Some(f) => (vec![f], vec![f]),
        None => (vec![(2, 1), (3, 1)], vec![(2, 1)]),
    };
    let mut census = Check::new(s, "type-census");
    for n1 in 1..=r.max_n + 1 {
        for f in fields(&census_fields) {
            for k in 1..=n1 {
                let params = vec![("field", field_label(&f)), ("n+1", json!(n1)), ("k", json!(k))];
                let f = f.clone();
                census.case(params, move |kern| {
                    let (n, ki) = (n1 as isize - 1, k as isize);
                    let expected = [
                        kern.qbinom_or_zero(n, ki),
                        kern.qbinom_or_zero(n, ki - 1),
                        if n1 >= 2 {
                            &signed_qfalling(n1 - 1, 1) * &kern.qbinom_or_zero(n - 1, ki - 1)
                        } else {
                            MPoly::zero()
                        },
                    ];
                    let got = type_census(&f, n1, k)?;
                    let mut total = BigInt::from(0);
                    for (g, e) in got.iter().zip(&expected) {
                        let e = eval(e, f.q())?;
                        if BigInt::from(*g) != e {
                            return Ok(false);
                        }
                        total += e;
                    }
                    Ok(total == eval(&kern.qbinom(n1, k), f.q())?)
                });
            }
        }
    }
    let mut patterns = Check::new(s, "flag-type-patterns");
    for n1 in 2..=r.max_n + 1 {
        for f in fields(&pattern_fields) {
            for m in 2..=r.max_m {
                for c in Composition::all(n1, m).filter(Composition::all_positive) {
                    let params = vec![("field", field_label(&f)), ("comp", comp_json(&c))];
                    let f = f.clone();
                    patterns.case(params, move |kern| {
                        let counts = type_pattern_census(&f, &c)?;
                        let mut total = 0u64;
                        for j in SubsetIndicator::nonempty(m) {
                            let got = counts.get(&j).copied().unwrap_or(0);
                            if BigInt::from(got) != eval(&lemma_term(&c, &j), f.q())? {
                                return Ok(false);
                            }
                            total += got;
                        }
                        let expected = eval(&kern.qmultinom(&c), f.q())?;
                        Ok(BigInt::from(total) == expected && total == count_flags(&f, &c))
                    });
                }
            }
        }
    }
    vec![census, patterns]
}

fn build(suite: Suite, r: &Resolved) -> Vec<Check> {
    match suite {
        Suite::Euler => euler_suite(r),
        Suite::Genfn => genfn_suite(r),
        Suite::ThmRecursion => recursion_suite(r),
        Suite::Qshift => qshift_suite(r),
        Suite::SpecialValues => special_suite(r),
        Suite::Galois => galois_suite(r),
        Suite::GengalLemma => gengal_suite(r),
        Suite::FlagOracle => flag_suite(r),
        Suite::TypeCensus => census_suite(r),
        Suite::All => unreachable!("expanded by the caller"),
    }
}

/// First failing case of a check.
#[derive(Clone, Debug, PartialEq)]
pub struct Counterexample {
    pub suite: Suite,
    pub check: &'static str,
    pub params: Vec<(&'static str, Value)>,
    pub error: Option<String>,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self
            .params
            .iter()
            .map(|(k, v)| match v {
                Value::String(s) => format!("{k}={s}"),
                other => format!("{k}={other}"),
            })
            .collect();
        write!(f, "{}/{} failed at {}", self.suite, self.check, params.join(", "))?;
        if let Some(e) = &self.error {
            write!(f, " ({e})")?;
        }
        Ok(())
    }
}

pub struct VerifyReport {
    pub records: Vec<OutputRecord>,
    pub failures: Vec<Counterexample>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs `suite` (every suite for [`Suite::All`]) and returns one record per
/// check followed by a summary record. Errors only for bad caps.
pub fn run_verify(suite: Suite, caps: &Caps, kernel: &Kernel) -> Result<VerifyReport> {
    let suites: Vec<Suite> = if suite == Suite::All {
        Suite::CONCRETE.to_vec()
    } else {
        vec![suite]
    };
    let mut checks = Vec::new();
    for s in &suites {
        checks.extend(build(*s, &resolve(*s, caps)?));
    }
    let jobs: Vec<(usize, usize)> = checks
        .iter()
        .enumerate()
        .flat_map(|(ci, c)| (0..c.cases.len()).map(move |k| (ci, k)))
        .collect();
    let outcomes: Vec<Option<String>> = jobs
        .par_iter()
        .map(|&(ci, k)| match (checks[ci].cases[k].run)(kernel) {
            Ok(true) => None,
            Ok(false) => Some(String::new()),
            Err(e) => Some(e.to_string()),
        })
        .collect();

    let mut by_check: BTreeMap<usize, Vec<(usize, &Option<String>)>> = BTreeMap::new();
    for (&(ci, k), out) in jobs.iter().zip(&outcomes) {
        by_check.entry(ci).or_default().push((k, out));
    }
    let mut records = Vec::new();
    let mut failures = Vec::new();
    let mut total_cases = 0;
    for (ci, check) in checks.iter().enumerate() {
        let results = by_check.remove(&ci).unwrap_or_default();
        total_cases += results.len();
        let failed: Vec<_> = results.iter().filter(|(_, o)| o.is_some()).collect();
        let first = failed.first().map(|&&(k, o)| {
            let err = o.as_ref().filter(|s| !s.is_empty()).cloned();
            Counterexample {
                suite: check.suite,
                check: check.name,
                params: check.cases[k].params.clone(),
                error: err,
            }
        });
        let counterexample = first.as_ref().map(|c| {
            let mut obj: serde_json::Map<String, Value> =
                c.params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
            if let Some(e) = &c.error {
                obj.insert("error".into(), json!(e));
            }
            Value::Object(obj)
        });
        records.push(
            OutputRecord::new(
                "verify",
                inputs!("suite" => check.suite.name(), "check" => check.name),
                json!({
                    "cases": results.len(),
                    "failed": failed.len(),
                    "counterexample": counterexample,
                }),
            )
            .with_status(failed.is_empty()),
        );
        failures.extend(first);
    }
    let summary = OutputRecord::new(
        "verify",
        inputs!(
            "suite" => suite.name(),
            "max_n" => caps.max_n,
            "max_m" => caps.max_m,
            "p" => caps.p,
            "e" => caps.e,
            "xcap" => caps.xcap,
            "qcap" => caps.qcap,
        ),
        json!({
            "checks": checks.len(),
            "cases": total_cases,
            "failed_checks": failures.len(),
        }),
    )
    .with_status(failures.is_empty());
    records.push(summary);
    Ok(VerifyReport { records, failures })
}
