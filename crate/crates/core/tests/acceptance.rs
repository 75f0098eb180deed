//! One line per acceptance criterion; exits nonzero if any fails.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::Instant;

use brauer_b::admissible::{orbit_size, orbit_size_formula, OrbitRep};
use brauer_b::cellular::{cell_dimension_sum, verify_filtration};
use brauer_b::combinat::{binom, double_fact, factorial, pow2, rank_formula};
use brauer_b::connector::{
    brauer_layer, count_class, is_symmetric_basis_index, stratified_counts, stratum_formula, ConnectorClass,
};
use brauer_b::normalform::{class_range, BrauerAlgebra};
use brauer_b::verify::{self, coset_table, double_coset_orbits};

type Outcome = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn failures(checks: Vec<verify::Check>) -> Outcome {
    let bad: Vec<String> = checks
        .into_iter()
        .filter(|c| !c.passed())
        .map(|c| format!("{}: {}", c.name, c.detail.unwrap_or_default()))
        .collect();
    ensure(bad.is_empty(), || bad.join("; "))
}

fn rank_table() -> Outcome {
    for (n, want) in [(1, 3usize), (2, 25), (3, 273), (4, 3801), (5, 66315)] {
        let got = BrauerAlgebra::get(n).map_err(|e| e.to_string())?.enumerate_basis().len();
        ensure(got == want && got as u128 == rank_formula(n as u64), || format!("n = {n}: {got} ≠ {want}"))?;
    }
    Ok(())
}

fn b3_double_cosets() -> Outcome {
    let alg = BrauerAlgebra::get(3).map_err(|e| e.to_string())?;
    let mut sizes: Vec<usize> = double_coset_orbits(&alg).map_err(|e| e.to_string())?.iter().map(|o| o.2).collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    ensure(sizes == [144, 48, 18, 18, 18, 9, 9, 9], || format!("{sizes:?}"))
}

fn relation_suite() -> Outcome {
    for n in [3, 4] {
        failures(verify::relations(n).map_err(|e| e.to_string())?).map_err(|e| format!("n = {n}: {e}"))?;
    }
    Ok(())
}

fn counting_identities() -> Outcome {
    for k in 0..=10u64 {
        let s: u128 = (0..=k / 2).map(|t| brauer_layer(k, t)).sum();
        let direct: u128 = (0..=k / 2)
            .map(|t| (binom(k, 2 * t) * double_fact(t)).pow(2) * factorial(k - 2 * t))
            .sum();
        ensure(s == double_fact(k) && direct == s, || format!("k = {k}: {s} vs {}", double_fact(k)))?;
    }
    for n in 1..=5usize {
        let strata = stratified_counts(n);
        for i in 2..=6u8 {
            for t in class_range(i, n) {
                let got = strata[i as usize][t];
                let want = stratum_formula(n, i, t);
                ensure(got == want, || format!("n = {n}, M^({i})_{t}: {got} ≠ {want}"))?;
            }
        }
    }
    Ok(())
}

fn orbit_sizes() -> Outcome {
    for n in 1..=5 {
        for kind in [OrbitRep::Z, OrbitRep::ZTilde, OrbitRep::ZBar] {
            for t in kind.t_range(n) {
                let got = orbit_size(kind, t, n).map_err(|e| e.to_string())? as u128;
                let (nn, tt) = (n as u64, t as u64);
                let want = match kind {
                    OrbitRep::Z => pow2(tt) * binom(nn, 2 * tt) * double_fact(tt),
                    OrbitRep::ZTilde => binom(nn, 2 * tt) * double_fact(tt),
                    OrbitRep::ZBar => nn as u128 * binom(nn - 1, 2 * tt - 2) * double_fact(tt - 1),
                };
                ensure(got == want && want == orbit_size_formula(kind, t, n), || {
                    format!("n = {n}, {kind:?}_{t}: {got} ≠ {want}")
                })?;
            }
        }
    }
    Ok(())
}

fn table_one() -> Outcome {
    for n in 1..=4 {
        let alg = BrauerAlgebra::get(n).map_err(|e| e.to_string())?;
        let mut sum = 0u128;
        for cd in alg.classes() {
            let (dl, c) = coset_table(cd.class_i, cd.t, n);
            let partner = match cd.class_i {
                5 => 6,
                6 => 5,
                i => i,
            };
            let (dr, _) = coset_table(partner, cd.t, n);
            let got = (cd.d_left.len() as u128, cd.c.len() as u128, cd.d_right.len() as u128);
            ensure(got == (dl, c, dr), || format!("n = {n} ({},{}): {got:?}", cd.class_i, cd.t))?;
            sum += dl * c * dr;
        }
        ensure(sum == rank_formula(n as u64), || format!("n = {n}: Σ = {sum}"))?;
    }
    Ok(())
}

fn action_consistency() -> Outcome {
    for n in 1..=4 {
        failures(verify::action(n).map_err(|e| e.to_string())?).map_err(|e| format!("n = {n}: {e}"))?;
    }
    Ok(())
}

fn symmetric_counts() -> Outcome {
    for n in 1..=5usize {
        let nn = n as u64;
        let want = [
            pow2(nn) * double_fact(nn),
            pow2(nn) * (double_fact(nn) - factorial(nn)),
            double_fact(nn + 1) - factorial(nn + 1),
        ];
        let got = [ConnectorClass::TBar, ConnectorClass::TBarEq, ConnectorClass::TeqT0].map(|c| count_class(n, c));
        ensure(got == want && got.iter().sum::<u128>() == rank_formula(nn), || format!("n = {n}: {got:?} ≠ {want:?}"))?;
    }
    Ok(())
}

fn phi_bijection() -> Outcome {
    for n in 1..=4 {
        let alg = BrauerAlgebra::get(n).map_err(|e| e.to_string())?;
        let mut seen = HashSet::new();
        for x in alg.enumerate_basis() {
            let d = alg.phi_index(&x).map_err(|e| e.to_string())?;
            ensure(is_symmetric_basis_index(&d), || format!("n = {n}: image not symmetric"))?;
            ensure(seen.insert(d), || format!("n = {n}: repeated image"))?;
        }
        let target: u128 = [ConnectorClass::TBar, ConnectorClass::TBarEq, ConnectorClass::TeqT0]
            .map(|c| count_class(n, c))
            .iter()
            .sum();
        ensure(seen.len() as u128 == target, || format!("n = {n}: {} images of {target}", seen.len()))?;
    }
    Ok(())
}

fn cellular_skeleton() -> Outcome {
    for n in 1..=4 {
        let s = cell_dimension_sum(n);
        ensure(s == rank_formula(n as u64), || format!("n = {n}: Σ|T(λ)|² = {s}"))?;
    }
    for n in 1..=3 {
        let bad: Vec<String> = verify_filtration(n)
            .map_err(|e| e.to_string())?
            .into_iter()
            .filter(|r| !r.passed())
            .map(|r| format!("{} {}: {}", r.check, r.label, r.witness.unwrap_or_default()))
            .collect();
        ensure(bad.is_empty(), || format!("n = {n}: {}", bad.join("; ")))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("rank table n = 1..5", rank_table),
        ("B3 double-coset decomposition", b3_double_cosets),
        ("relation suite with random multipliers, n = 3, 4", relation_suite),
        ("counting identities", counting_identities),
        ("admissible orbit sizes, n ≤ 5", orbit_sizes),
        ("coset and centralizer sizes, n ≤ 4", table_one),
        ("action consistency, n ≤ 4", action_consistency),
        ("symmetric diagram counts, n ≤ 5", symmetric_counts),
        ("diagram map bijection, n ≤ 4", phi_bijection),
        ("cellular skeleton", cellular_skeleton),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {:>2}: PASS  {name} ({secs:.1}s)", k + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name} ({secs:.1}s): {e}", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
