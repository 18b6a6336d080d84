//! Acceptance criteria 1-10. Runs without the libtest harness and prints one
//! line per criterion; exits nonzero if any criterion fails or overruns its
//! time limit.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use qflag::bigpoly::{MPoly, Var};
use qflag::cyclotomic::{
    h1_shift_chain, rs_eval_roots, special1_formula, special2_check, special3_formula, CycPoly,
};
use qflag::ffspace::{
    build_field, count_flags, enumerate_subspaces, flag_type_pattern_count, total_flags, type_census,
};
use qflag::qkernel::{
    galois, gengal_lemma_rhs, gengal_lemma_zero_extension, gengal_recursion_check, lemma_term,
    qbinomial, qbinomial_by_division, qbinomial_or_zero, qmultinomial, signed_qfalling, Composition,
    SubsetIndicator,
};
use qflag::rogers_szego::{
    euler_check, rs, rs_functional_series_check, rs_generating_check, rs_qshift_lhs, rs_qshift_rhs,
    rs_recursion_rhs, two_variable_recursion_rhs,
};

type Outcome = Result<(), String>;
type Criterion = (&'static str, u64, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn q_pow(e: usize) -> MPoly {
    MPoly::var_pow(Var::Q, e as u32)
}

fn one_minus_q_pow(e: usize) -> MPoly {
    &MPoly::one() - &q_pow(e)
}

fn product_one_minus(js: impl Iterator<Item = usize>) -> MPoly {
    js.fold(MPoly::one(), |acc, j| &acc * &one_minus_q_pow(j))
}

fn qpascal_vs_division() -> Outcome {
    for n in 0..=12 {
        for k in 0..=n {
            let a = qbinomial(n, k).map_err(|e| e.to_string())?;
            let b = qbinomial_by_division(n, k).map_err(|e| e.to_string())?;
            ensure!(a == b, "n={n} k={k}: {a} vs {b}");
        }
    }
    Ok(())
}

fn subspace_oracle() -> Outcome {
    for (p, e) in [(2, 1), (3, 1), (2, 2), (5, 1)] {
        let f = build_field(p, e).map_err(|e| e.to_string())?;
        let q = f.q() as i64;
        for n in 0..=5 {
            for k in 0..=n {
                let count = enumerate_subspaces(&f, n, k).count();
                let expected = qbinomial(n, k).unwrap().eval_q(q).unwrap();
                ensure!(BigInt::from(count) == expected, "q={q} n={n} k={k}: {count} vs {expected}");
            }
        }
    }
    Ok(())
}

fn flag_oracle() -> Outcome {
    for p in [2u32, 3] {
        let f = build_field(p, 1).unwrap();
        for m in 1..=4 {
            for n in 0..=4 {
                for c in Composition::all(n, m) {
                    let got = count_flags(&f, &c);
                    let expected = qmultinomial(&c).eval_q(p as i64).unwrap();
                    ensure!(BigInt::from(got) == expected, "q={p} {c}: {got} vs {expected}");
                }
            }
        }
    }
    let f2 = build_field(2, 1).unwrap();
    let total = total_flags(&f2, 2, 3).map_err(|e| e.to_string())?;
    ensure!(total == 12, "total_flags(F_2, 2, 3) = {total}");
    Ok(())
}

fn recursion_in_n() -> Outcome {
    for m in 2..=5 {
        for n in m - 1..=10 {
            let lhs = rs(n + 1, m).unwrap();
            let rhs = rs_recursion_rhs(n, m).map_err(|e| e.to_string())?;
            ensure!(lhs == rhs, "n={n} m={m}");
        }
    }
    // m = 2: H_(n+1)(t) = (1 + t) H_n(t) + t (q^n - 1) H_(n-1)(t)
    let t = MPoly::t(1);
    for n in 1..=10 {
        let rhs = &(&(&MPoly::one() + &t) * rs(n, 2).unwrap().value())
            + &(&(&t * &(&q_pow(n) - &MPoly::one())) * rs(n - 1, 2).unwrap().value());
        ensure!(&rhs == rs(n + 1, 2).unwrap().value(), "one-variable recursion at n={n}");
        ensure!(
            rs_recursion_rhs(n, 2).unwrap().value() == &rhs,
            "general recursion at m=2 differs from the one-variable form at n={n}"
        );
    }
    // the expanded two-variable recursion at n = 2, written out here term by term
    let (t1, t2) = (MPoly::t(1), MPoly::t(2));
    let t1t2 = &t1 * &t2;
    let q2m1 = &q_pow(2) - &MPoly::one();
    let q1m1 = &q_pow(1) - &MPoly::one();
    let displayed = &(&(&(&MPoly::one() + &t1) + &t2) * rs(2, 3).unwrap().value())
        + &(&(&(&(&t1t2 + &t1) + &t2) * &q2m1) * rs(1, 3).unwrap().value());
    let displayed = &displayed + &(&(&(&t1t2 * &q2m1) * &q1m1) * rs(0, 3).unwrap().value());
    ensure!(&displayed == rs(3, 3).unwrap().value(), "two-variable recursion at n=2");
    ensure!(two_variable_recursion_rhs(2).unwrap() == displayed, "library two-variable form at n=2");
    Ok(())
}

fn generating_function() -> Outcome {
    for m in 2..=4 {
        ensure!(rs_generating_check(m, 8, 12).map_err(|e| e.to_string())?, "generating function m={m}");
        ensure!(rs_functional_series_check(m, 8, 12).map_err(|e| e.to_string())?, "functional relation m={m}");
    }
    ensure!(euler_check(8, 12).map_err(|e| e.to_string())?, "Euler identity");
    Ok(())
}

fn special_values() -> Outcome {
    for m in 2..=6 {
        for n in 0..=12 {
            let plain = rs_eval_roots(n, m, false).unwrap();
            ensure!(plain.is_rational_integral(), "H_{n} at roots, m={m}: not rational-integral");
            ensure!(plain == CycPoly::from_qpoly(&special1_formula(n, m), m).unwrap(), "H_{n} at roots, m={m}");
            if n % m != 0 {
                ensure!(plain.is_zero(), "H_{n} at roots, m={m}: expected 0");
            }
            let scaled = rs_eval_roots(n, m, true).unwrap();
            ensure!(scaled.is_rational_integral(), "H_{n} at scaled roots, m={m}: not rational-integral");
            ensure!(scaled == CycPoly::from_qpoly(&special3_formula(n, m), m).unwrap(), "H_{n} at scaled roots, m={m}");
        }
    }
    // m = 2 by direct substitution: t = -1 and t = -q
    for n in 0..=12 {
        let h = rs(n, 2).unwrap();
        let at_minus_one = h.value().substitute(Var::t(1), &-MPoly::one());
        let expected = if n % 2 == 0 {
            product_one_minus((1..n).filter(|j| j % 2 == 1))
        } else {
            MPoly::zero()
        };
        ensure!(at_minus_one == expected, "H_{n}(-1) = {at_minus_one}");
        let at_minus_q = h.value().substitute(Var::t(1), &-MPoly::q());
        let expected = product_one_minus((1..=n).filter(|j| j % 2 == 1));
        ensure!(at_minus_q == expected, "H_{n}(-q) = {at_minus_q}");
    }
    for m in 2..=5 {
        for n in 0..=10 {
            ensure!(special2_check(n, m).map_err(|e| e.to_string())?, "fractional powers n={n} m={m}");
        }
    }
    Ok(())
}

fn qshift() -> Outcome {
    for m in 2..=4 {
        for j in SubsetIndicator::nonempty(m - 1) {
            for n in j.len()..=8 {
                let lhs = rs_qshift_lhs(n, m, &j).unwrap();
                let rhs = rs_qshift_rhs(n, m, &j).map_err(|e| e.to_string())?;
                ensure!(lhs == rhs, "n={n} m={m} J={j}");
            }
        }
    }
    // H_n(tq) = H_n(t) - t (1 - q^n) H_(n-1)(t)
    let t = MPoly::t(1);
    for n in 1..=8 {
        let lhs = rs(n, 2).unwrap().value().substitute(Var::t(1), &(&t * &MPoly::q()));
        let rhs = rs(n, 2).unwrap().value() - &(&(&t * &one_minus_q_pow(n)) * rs(n - 1, 2).unwrap().value());
        ensure!(lhs == rhs, "one-variable q-shift at n={n}");
    }
    for m in 2..=6 {
        let chain = h1_shift_chain(m).map_err(|e| e.to_string())?;
        let last = chain.last().unwrap();
        let expected = CycPoly::from_qpoly(&one_minus_q_pow(1), m).unwrap();
        ensure!(last == &expected, "H_1 two-stage value at m={m}: {last}");
        ensure!(rs_eval_roots(1, m, true).unwrap() == expected, "H_1 direct value at m={m}");
    }
    Ok(())
}

fn qmultinomial_expansion() -> Outcome {
    for m in 2..=4 {
        for n1 in m..=9 {
            for c in Composition::all(n1, m).filter(Composition::all_positive) {
                let rhs = gengal_lemma_rhs(&c).map_err(|e| e.to_string())?;
                ensure!(rhs == qmultinomial(&c), "{c}");
            }
        }
    }
    // one or two zero parts inserted anywhere into a positive composition
    for m in 2..=6 {
        for n1 in 1..=9 {
            for c in Composition::all(n1, m) {
                let zeros = c.parts().iter().filter(|&&k| k == 0).count();
                if zeros == 0 || zeros > 2 || m - zeros > 4 {
                    continue;
                }
                let rhs = gengal_lemma_zero_extension(&c).map_err(|e| e.to_string())?;
                ensure!(rhs == qmultinomial(&c), "zero extension {c}");
            }
        }
    }
    for m in 2..=5 {
        for n in m - 1..=10 {
            ensure!(gengal_recursion_check(n, m).map_err(|e| e.to_string())?, "generalized recursion n={n} m={m}");
        }
    }
    ensure!(galois(0) == MPoly::one(), "G_0 = {}", galois(0));
    ensure!(galois(1) == MPoly::constant(2), "G_1 = {}", galois(1));
    let seq: Vec<BigInt> = (0..3).map(|n| galois(n).eval_q(2).unwrap()).collect();
    ensure!(seq == [1, 2, 5].map(BigInt::from), "G at q=2 begins {seq:?}");
    for n in 1..=12 {
        let rhs = &galois(n).scale(&BigInt::from(2)) + &(&signed_qfalling(n, 1) * &galois(n - 1));
        ensure!(galois(n + 1) == rhs, "Galois recursion at n={n}");
    }
    Ok(())
}

fn type_census_check() -> Outcome {
    for p in [2u32, 3] {
        let f = build_field(p, 1).unwrap();
        let q = p as i64;
        for n1 in 1..=4usize {
            let (n, ni) = (n1 - 1, n1 as isize - 1);
            for k in 1..=n1 {
                let ki = k as isize;
                let got = type_census(&f, n1, k).map_err(|e| e.to_string())?;
                let t3 = if n >= 1 {
                    (&signed_qfalling(n, 1) * &qbinomial_or_zero(ni - 1, ki - 1)).eval_q(q).unwrap()
                } else {
                    BigInt::from(0)
                };
                let expected = [
                    qbinomial_or_zero(ni, ki).eval_q(q).unwrap(),
                    qbinomial_or_zero(ni, ki - 1).eval_q(q).unwrap(),
                    t3,
                ];
                ensure!(got.map(BigInt::from) == expected, "q={q} n+1={n1} k={k}: {got:?}");
            }
        }
    }
    let f2 = build_field(2, 1).unwrap();
    for m in 2..=3 {
        for n1 in m..=4 {
            for c in Composition::all(n1, m).filter(Composition::all_positive) {
                let mut sum = 0;
                for j in SubsetIndicator::nonempty(m) {
                    let count = flag_type_pattern_count(&f2, &c, &j).map_err(|e| e.to_string())?;
                    let term = lemma_term(&c, &j).eval_q(2).unwrap();
                    ensure!(BigInt::from(count) == term, "{c} J={j}: {count} vs {term}");
                    sum += count;
                }
                let flags = count_flags(&f2, &c);
                ensure!(sum == flags, "{c}: patterns sum to {sum}, flags {flags}");
            }
        }
    }
    Ok(())
}

fn qflag(args: &[&str]) -> Result<std::process::Output, String> {
    Command::new(env!("CARGO_BIN_EXE_qflag"))
        .args(args)
        .output()
        .map_err(|e| format!("cannot run qflag: {e}"))
}

fn end_to_end() -> Outcome {
    let out = qflag(&["verify", "all"])?;
    ensure!(
        out.status.code() == Some(0),
        "verify all exited {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    let stdout = String::from_utf8_lossy(&out.stdout);
    let mut records = 0;
    for line in stdout.lines() {
        let record: serde_json::Value = serde_json::from_str(line).map_err(|e| format!("bad record {line}: {e}"))?;
        ensure!(record["status"] == "ok", "verify all emitted {line}");
        records += 1;
    }
    ensure!(records > 0, "verify all printed nothing");

    // each fault lands on a q-binomial within the default galois caps; the
    // reference comparison must name exactly the corrupted (n, k)
    let faults = [
        ("qbinom:5,2,3,1", "n=5, k=2"),
        ("qbinom:1,0,0,-1", "n=1, k=0"),
        ("qbinom:7,3,12,2", "n=7, k=3"),
        ("qbinom:12,6,0,5", "n=12, k=6"),
        ("qbinom:4,4,0,1", "n=4, k=4"),
    ];
    for (fault, case) in faults {
        let out = qflag(&["verify", "galois", "--inject-fault", fault])?;
        ensure!(out.status.code() == Some(1), "fault {fault}: exit {:?}", out.status.code());
        let stderr = String::from_utf8_lossy(&out.stderr);
        let expected = format!("galois/qpascal-vs-division failed at {case}");
        ensure!(stderr.lines().any(|l| l == format!("verify: {expected}")), "fault {fault}: report was {stderr:?}");
    }
    let out = qflag(&["verify", "all", "--inject-fault", "qbinom:3,1,1,-1"])?;
    ensure!(out.status.code() == Some(1), "verify all with a fault exited {:?}", out.status.code());
    let stderr = String::from_utf8_lossy(&out.stderr);
    ensure!(
        stderr.contains("verify: galois/qpascal-vs-division failed at n=3, k=1"),
        "verify all with a fault reported {stderr:?}"
    );
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("q-Pascal agrees with exact division, n <= 12", 1, qpascal_vs_division),
        ("subspace enumeration matches q-binomials, q in {2,3,4,5}, n <= 5", 30, subspace_oracle),
        ("flag enumeration matches q-multinomials, q in {2,3}, n, m <= 4", 60, flag_oracle),
        ("recursion in n, 2 <= m <= 5, n <= 10", 60, recursion_in_n),
        ("generating function, functional relation and Euler identity at N=8, Q=12", 60, generating_function),
        ("values at roots of unity and fractional powers", 120, special_values),
        ("q-shift equation, m <= 4, n <= 8", 60, qshift),
        ("q-multinomial subset expansion and generalized Galois recursion", 60, qmultinomial_expansion),
        ("three-type census and flag type patterns", 60, type_census_check),
        ("verify all and fault injection", 600, end_to_end),
    ];
    let mut failed = 0;
    for (i, (name, limit, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let verdict = match outcome {
            Ok(()) if elapsed <= Duration::from_secs(limit) => "PASS".to_string(),
            Ok(()) => format!("FAIL (over the {limit} s limit)"),
            Err(e) => format!("FAIL ({e})"),
        };
        if !verdict.starts_with("PASS") {
            failed += 1;
        }
        println!("criterion {:>2}: {verdict} [{:.2} s / {limit} s] {name}", i + 1, elapsed.as_secs_f64());
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    } else {
        println!("all 10 criteria passed");
        ExitCode::SUCCESS
    }
}
