//! Acceptance criteria, one pass/fail line each. Exits non-zero if any criterion fails.

use std::time::Instant;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use wilson_loops::characters::{
    branching_and_induction_checks, char_table, centralizer_order, dim_sk, dim_un, koike_dimension,
    koike_expand,
};
use wilson_loops::exact::{abs, factorial, int, to_f64};
use wilson_loops::expansion::{expansion_pipeline, ExpansionReport};
use wilson_loops::oracle::{mc_integral, mc_orthonormality, Group};
use wilson_loops::partitions::{
    count_ssyt, enumerate_partitions, partitions_in_box, su_diagram, CutoffSpec, SkewShape, YoungDiagram,
};
use wilson_loops::surface::{
    expected_trace, fourier_coefficient, fourier_coefficient_poly, glm_lower_bound, omega_representatives,
    single_lambda_majorant, witten_zeta_partial, Cutoff, Rep, Route, Word,
};
use wilson_loops::weingarten::WordMomentEngine;
use wilson_loops::Rational;

type Outcome = Result<String, String>;

fn yd(rows: &[usize]) -> YoungDiagram {
    YoungDiagram::new(rows.to_vec()).unwrap()
}

/// Weyl product over a signature, written out independently of the library.
fn weyl(f: &[i64]) -> Rational {
    let n = f.len();
    let mut d = Rational::one();
    for i in 0..n {
        for j in i + 1..n {
            d *= Rational::new(BigInt::from(f[i] - f[j] + (j - i) as i64), BigInt::from((j - i) as i64));
        }
    }
    d
}

fn weyl_poly(lambda: &YoungDiagram, n: usize) -> Rational {
    let f: Vec<i64> = (0..n).map(|i| lambda.row(i) as i64).collect();
    weyl(&f)
}

fn weyl_pair(mu: &YoungDiagram, nu: &YoungDiagram, n: usize) -> Rational {
    let mut f = vec![0i64; n];
    for i in 0..mu.length() {
        f[i] += mu.row(i) as i64;
    }
    for j in 0..nu.length() {
        f[n - 1 - j] -= nu.row(j) as i64;
    }
    weyl(&f)
}

fn criterion_1() -> Outcome {
    let e = Word::identity(2);
    let mut checked = 0;
    for n in 2..=4usize {
        for rows in [&[1][..], &[2], &[1, 1], &[2, 1]] {
            let lambda = yd(rows);
            let got = fourier_coefficient_poly(&e, &lambda, n).map_err(|e| e.to_string())?.value;
            let d = weyl_poly(&lambda, n);
            let expected = int(n as i64) / (&d * &d * &d);
            if got != expected {
                return Err(format!("lambda={lambda}, n={n}: {got} != {expected}"));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} exact equalities"))
}

fn criterion_2() -> Outcome {
    let z = witten_zeta_partial(2, 2, Cutoff::MaxDim { d: 10_000 }).map_err(|e| e.to_string())?;
    // Common denominator lcm(1..N)², summed as integers.
    let l = (1..=10_000i64).fold(BigInt::one(), |acc, k| acc.lcm(&BigInt::from(k)));
    let l2 = &l * &l;
    let num: BigInt = (1..=10_000i64).map(|k| &l2 / BigInt::from(k * k)).sum();
    let expected = Rational::new(num, l2);
    if z.partial_sum != expected {
        return Err("partial sum differs from the Basel partial sum".into());
    }
    let gap = std::f64::consts::PI.powi(2) / 6.0 - to_f64(&z.partial_sum);
    if !(gap > 0.0 && gap < 1.1e-4) {
        return Err(format!("pi^2/6 gap {gap:e}"));
    }
    Ok(format!("{} terms, gap to pi^2/6 = {gap:.6e}", z.terms))
}

fn criterion_3(engine: &WordMomentEngine) -> Outcome {
    for n in 4..=8usize {
        for b in 1..=2 {
            let e = expected_trace(&Word::identity(2), n, Cutoff::Omega { b }, Route::Auto, engine)
                .map_err(|e| e.to_string())?;
            if e.value != int(n as i64) {
                return Err(format!("n={n}, B={b}: {}", e.value));
            }
        }
    }
    Ok("E = n for n = 4..8, B = 1, 2".into())
}

fn criterion_4(engine: &WordMomentEngine) -> Outcome {
    let mut count = 0;
    for text in ["a", "ab", "aaB"] {
        let w = Word::parse(text, 2).unwrap();
        for n in [4usize, 5] {
            for b in 1..=2 {
                let spec = CutoffSpec::new(b).unwrap();
                for r in omega_representatives(spec, n).map_err(|e| e.to_string())? {
                    let rep = if r.nu.is_empty() { Rep::poly(r.mu) } else { Rep::rational(r.mu, r.nu) };
                    for route in [Route::Weingarten, Route::Auto] {
                        let c = fourier_coefficient(&w, &rep, n, route, engine).map_err(|e| e.to_string())?;
                        if !c.value.is_zero() {
                            return Err(format!("I({w}, {rep}) = {} at n={n}", c.value));
                        }
                        count += 1;
                    }
                }
                let e = expected_trace(&w, n, Cutoff::Omega { b }, Route::Auto, engine).map_err(|e| e.to_string())?;
                if !e.value.is_zero() {
                    return Err(format!("E[{w}] = {} at n={n}, B={b}", e.value));
                }
            }
        }
    }
    Ok(format!("{count} coefficients and 12 expectations are exactly 0"))
}

/// The golden Monte Carlo set: (word, rep, n).
fn golden_set() -> Vec<(Word, Rep, usize)> {
    let ab = Word::parse("abAB", 2).unwrap();
    let e = Word::identity(2);
    let a = Word::parse("a", 2).unwrap();
    let mut set = Vec::new();
    for n in 2..=4 {
        set.push((ab.clone(), Rep::poly(YoungDiagram::empty()), n));
        set.push((ab.clone(), Rep::poly(yd(&[1])), n));
    }
    set.push((e.clone(), Rep::poly(yd(&[1])), 2));
    set.push((e.clone(), Rep::poly(yd(&[2])), 2));
    set.push((e, Rep::poly(yd(&[1, 1])), 3));
    set.push((ab.clone(), Rep::poly(yd(&[2])), 3));
    set.push((ab, Rep::rational(yd(&[1]), yd(&[1])), 3));
    set.push((a, Rep::poly(yd(&[1])), 3));
    set
}

fn criterion_5(engine: &WordMomentEngine) -> Outcome {
    let mut worst: f64 = 0.0;
    for (w, rep, n) in golden_set() {
        let exact = fourier_coefficient(&w, &rep, n, Route::Auto, engine).map_err(|e| e.to_string())?.value;
        let est = mc_integral(&w, &rep, n, Group::U, 200_000, 42).map_err(|e| e.to_string())?;
        let target = Complex64::new(to_f64(&exact), 0.0);
        let z = est.z_score(target);
        worst = worst.max(z);
        if !est.within(target, 4.0) {
            return Err(format!(
                "I({w}, {rep}) at n={n}: exact {exact}, MC {:.6}+{:.6}i, stderr {:.2e} ({z:.2} SE)",
                est.mean.re, est.mean.im, est.stderr
            ));
        }
    }
    Ok(format!("12 triples, largest deviation {worst:.2} SE"))
}

fn criterion_6() -> Outcome {
    let small: Vec<YoungDiagram> = partitions_in_box(2, 2).into_iter().filter(|d| d.size() <= 2).collect();
    let mut worst: f64 = 0.0;
    for mu in &small {
        for nu in &small {
            let e = koike_expand(mu, nu).map_err(|e| e.to_string())?;
            let start = (mu.length() + nu.length()).max(1);
            for n in start..start + 5 {
                let got = koike_dimension(&e.terms, n);
                if got != weyl_pair(mu, nu, n) {
                    return Err(format!("[{mu},{nu}] n={n}: {got}"));
                }
            }
            let est = mc_orthonormality(mu, nu, 4, 200_000, 42).map_err(|e| e.to_string())?;
            let one = Complex64::new(1.0, 0.0);
            worst = worst.max(est.z_score(one));
            if !est.within(one, 4.0) {
                return Err(format!("[{mu},{nu}] norm {:.5} +- {:.1e}", est.mean.re, est.stderr));
            }
        }
    }
    Ok(format!("{} pairs, largest orthonormality deviation {worst:.2} SE", small.len().pow(2)))
}

fn criterion_7(engine: &WordMomentEngine) -> Outcome {
    let mut instances: Vec<(Word, Rep, usize)> = Vec::new();
    for n in 2..=4 {
        for rows in [&[1][..], &[2], &[1, 1], &[2, 1]] {
            instances.push((Word::identity(2), Rep::poly(yd(rows)), n));
        }
    }
    instances.extend(golden_set());
    for (w, rep, n) in &instances {
        let i = fourier_coefficient(w, rep, *n, Route::Auto, engine).map_err(|e| e.to_string())?.value;
        // For balanced words the coefficient only sees the SU(n) restriction.
        let (mu, nu) = rep.pair();
        let lambda = su_diagram(&mu, &nu, *n).map_err(|e| e.to_string())?;
        let m = single_lambda_majorant(w, &lambda, *n).map_err(|e| e.to_string())?;
        if abs(&i) > m.majorant {
            return Err(format!("|I({w}, {rep})| = {} exceeds {} at n={n}", abs(&i), m.majorant));
        }
    }
    let mut glm = 0;
    for k in 0..=6 {
        for lambda in enumerate_partitions(k) {
            for n in lambda.length().max(1)..=8 {
                let bound = glm_lower_bound(&lambda, n).map_err(|e| e.to_string())?;
                let d = to_f64(&weyl_poly(&lambda, n));
                if bound > d * (1.0 + 1e-12) {
                    return Err(format!("GLM bound {bound} > D = {d} for {lambda}, n={n}"));
                }
                glm += 1;
            }
        }
    }
    Ok(format!("{} majorant instances, {glm} dimension bounds", instances.len()))
}

fn coeff_list(r: &ExpansionReport) -> String {
    r.expansion.coefficients().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")
}

fn criterion_8(engine: &WordMomentEngine, notes: &mut Vec<String>) -> Outcome {
    let w = Word::parse("abAB", 2).unwrap();
    let spec = CutoffSpec::new(1).unwrap();
    let control = expansion_pipeline(&Word::identity(2), spec, &(12..20).collect::<Vec<_>>(), 3, engine)
        .map_err(|e| format!("empty-word control: {e}"))?;
    let control_ok = control.expansion.coeff(-1) == Some(&int(1))
        && control.expansion.coefficients()[1..].iter().all(|c| c.is_zero());
    notes.push(format!("empty-word control over n = 12..19: a = [{}]", coeff_list(&control)));

    // The same pipeline over a longer range, reported so the coherence parts can be inspected.
    match expansion_pipeline(&w, spec, &(12..32).collect::<Vec<_>>(), 3, engine) {
        Ok(r) => {
            let s = r.diagnostics.stability.as_ref();
            notes.push(format!(
                "[a,b] over n = 12..31: degrees {:?}, held-out residuals zero: {}, a = [{}], B=2 agrees on orders {:?}",
                r.diagnostics.interpolation.degrees,
                r.diagnostics.interpolation.held_out_residuals.iter().all(|v| v.num == "0"),
                coeff_list(&r),
                s.map(|s| s.agreeing_orders.clone()).unwrap_or_default(),
            ));
        }
        Err(e) => notes.push(format!("[a,b] over n = 12..31: {e}")),
    }

    let r = expansion_pipeline(&w, spec, &(12..20).collect::<Vec<_>>(), 3, engine)
        .map_err(|e| format!("[a,b] at B=1 over n = 12..19: {e}"))?;
    let residuals_zero = r.diagnostics.interpolation.held_out_residuals.iter().all(|v| v.num == "0");
    let stability = r.diagnostics.stability.as_ref().ok_or("no B=2 comparison")?;
    if !residuals_zero || !stability.all_shared_agree || !control_ok {
        return Err(format!(
            "residuals zero: {residuals_zero}, B-stable: {}, control: {control_ok}",
            stability.all_shared_agree
        ));
    }
    Ok(format!("a = [{}], |a_-1| = {}", coeff_list(&r), r.expansion.coeff(-1).unwrap().abs()))
}

fn criterion_9() -> Outcome {
    const P: [usize; 21] = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77, 101, 135, 176, 231, 297, 385, 490, 627];
    for (k, &p) in P.iter().enumerate() {
        if enumerate_partitions(k).len() != p {
            return Err(format!("p({k})"));
        }
    }
    for k in 0..=10 {
        let s: num_bigint::BigUint = enumerate_partitions(k).iter().map(|l| dim_sk(l).pow(2)).sum();
        if s != factorial(k) {
            return Err(format!("sum of squares at k={k}"));
        }
    }
    for k in 1..=8 {
        let t = char_table(k).map_err(|e| e.to_string())?;
        let m = t.shapes.len();
        // Row orthogonality weighted by class sizes: Σ_κ |C_κ| χ_λ χ_μ = k! δ.
        let kf = BigInt::from(factorial(k));
        for a in 0..m {
            for b in 0..m {
                let s: BigInt = (0..m)
                    .map(|c| {
                        let size = &kf / BigInt::from(centralizer_order(&t.classes[c].partition));
                        size * BigInt::from(t.values[a][c] * t.values[b][c])
                    })
                    .sum();
                let expected = if a == b { kf.clone() } else { BigInt::zero() };
                if s != expected {
                    return Err(format!("orthogonality at k={k}"));
                }
            }
        }
    }
    for k in 0..=6 {
        for lambda in enumerate_partitions(k) {
            for n in 1..=5usize {
                let c = count_ssyt(&SkewShape::straight(lambda.clone()), 1, n as i64);
                if int(c as i64) != dim_un(&lambda, n) || (lambda.length() <= n && int(c as i64) != weyl_poly(&lambda, n)) {
                    return Err(format!("SSYT count for {lambda}, n={n}"));
                }
                if lambda.length() <= n {
                    for b in 1..=2 {
                        branching_and_induction_checks(&lambda, &lambda, n, b).map_err(|e| e.to_string())?;
                    }
                }
            }
        }
    }
    Ok("partition counts, sum of squares, orthogonality, SSYT, branching, induction".into())
}

fn main() {
    let engine = WordMomentEngine::default();
    let mut failures = Vec::new();
    let mut report = |id: u32, name: &str, run: &mut dyn FnMut(&mut Vec<String>) -> Outcome| {
        let start = Instant::now();
        let mut local = Vec::new();
        let outcome = run(&mut local);
        let secs = start.elapsed().as_secs_f64();
        match &outcome {
            Ok(detail) => println!("criterion {id} [{name}]: PASS ({detail}) in {secs:.1}s"),
            Err(detail) => {
                println!("criterion {id} [{name}]: FAIL ({detail}) in {secs:.1}s");
                failures.push(id);
            }
        }
        for n in local {
            println!("    note: {n}");
        }
    };
    report(1, "Frobenius identity", &mut |_| criterion_1());
    report(2, "Witten zeta partial sum", &mut |_| criterion_2());
    report(3, "identity expectation", &mut |_| criterion_3(&engine));
    report(4, "zero law", &mut |_| criterion_4(&engine));
    report(5, "Monte Carlo cross-validation", &mut |_| criterion_5(&engine));
    report(6, "Koike gate", &mut |_| criterion_6());
    report(7, "majorant dominance", &mut |_| criterion_7(&engine));
    report(8, "expansion coherence", &mut |n| criterion_8(&engine, n));
    report(9, "combinatorial identities", &mut |_| criterion_9());
    if failures.is_empty() {
        println!("acceptance: all 9 criteria pass");
    } else {
        println!("acceptance: failing criteria {failures:?}");
        std::process::exit(1);
    }
}
