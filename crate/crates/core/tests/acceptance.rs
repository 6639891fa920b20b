//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if
//! any criterion fails. Runs under `cargo test`.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use zs_core::extremal::max_independent_exact;
use zs_core::matchings::{
    all_edge_sets, canonical_family, enumerate_matchings, enumerate_near_matchings, lift_near,
    near_cycle_type, EdgeSet, PerfectMatching,
};
use zs_core::partitions::{
    derangement_count, enumerate_partitions, fat_count_formula, fat_partitions, hook_dim, odd_double_factorial,
    single_odd_part_partitions, Partition,
};
use zs_core::rational::{exp_neg_half_bounds, from_biguint, q, qi};
use zs_core::scheme::{build_scheme, fourier_support, spherical_oracle, MatchingFunction};
use zs_core::spectral::{certify, eigen_table, solve_weights, zeta};
use zs_core::symfunc::{
    alpha_kostka_matrix, gram_schmidt_jack, kostka_matrix, leading_minor, perm_char_matrix, zonal_character_table,
};
use zs_core::{QMatrix, Rational};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn int_table(rows: &[[i64; 5]]) -> QMatrix {
    QMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| qi(x)).collect()).collect())
}

fn c1_p_table() -> Outcome {
    let expected = int_table(&[
        [48, 32, 12, 12, 1],
        [-8, 4, -2, 5, 1],
        [-2, -8, 7, 2, 1],
        [4, -2, -2, -1, 1],
        [-6, 8, 3, -6, 1],
    ]);
    let scheme = build_scheme(4).map_err(|e| e.to_string())?;
    let labels: Vec<String> = scheme.labels.iter().map(ToString::to_string).collect();
    ensure(labels == ["4", "3,1", "2,2", "2,1,1", "1,1,1,1"], || format!("labels {labels:?}"))?;
    ensure(scheme.p_table.entries == expected, || format!("got\n{}", scheme.p_table))?;
    Ok("5x5 table exact".into())
}

fn c2_certificate() -> Outcome {
    let cert = certify(4, 1).map_err(|e| e.to_string())?;
    let etas: Vec<Rational> = cert.eigenvalues.values().cloned().collect();
    ensure(cert.valid, || "certificate invalid".into())?;
    ensure(cert.zeta == q(-1, 6), || format!("zeta {}", cert.zeta))?;
    ensure(etas == [qi(1), q(-1, 6), q(-1, 24), q(1, 12), q(-1, 8)], || format!("eigenvalues {etas:?}"))?;
    ensure(cert.hoffman_value == qi(15), || format!("hoffman {}", cert.hoffman_value))?;
    Ok("valid, zeta=-1/6, hoffman=15".into())
}

fn c3_ratio_identity() -> Outcome {
    let mut cases = 0;
    for n in 4..=12u32 {
        for t in 1..=3u32 {
            if 2 * t >= n {
                continue;
            }
            let z = zeta(n, t).map_err(|e| e.to_string())?;
            let value = from_biguint(&odd_double_factorial(n)) * -&z / (Rational::one() - &z);
            ensure(value.is_integer(), || format!("({n},{t}) gives non-integer {value}"))?;
            let expected = BigInt::from(odd_double_factorial(n - t));
            ensure(value.to_integer() == expected, || format!("({n},{t}): {value} != {expected}"))?;
            cases += 1;
        }
    }
    Ok(format!("{cases} (n,t) pairs"))
}

fn c4_fattest() -> Outcome {
    let mut cases = 0;
    for t in 1..=2u32 {
        for n in 2 * t + 1..=12 {
            let Ok(weights) = solve_weights(n, t) else { continue };
            let eta = eigen_table(&weights, n).map_err(|e| e.to_string())?;
            let hook = Partition::hook(n, t);
            ensure(weights.get(&hook).is_none(), || format!("({n},{t}) hook was weighted"))?;
            let z = zeta(n, t).map_err(|e| e.to_string())?;
            ensure(eta[&hook] == z, || format!("({n},{t}): eta_hook = {} != {z}", eta[&hook]))?;
            cases += 1;
        }
    }
    Ok(format!("eta at (n-t,1^t) = zeta for {cases} (n,t) pairs"))
}

fn c5_oracle() -> Outcome {
    let mut entries = 0;
    for n in 3..=4u32 {
        let zonal = zonal_character_table(n).map_err(|e| e.to_string())?;
        for (i, lambda) in zonal.row_labels.iter().enumerate() {
            for (j, rho) in zonal.col_labels.iter().enumerate() {
                let oracle = spherical_oracle(lambda, rho, n).map_err(|e| e.to_string())?;
                ensure(&oracle == zonal.at(i, j), || format!("n={n} ({lambda};{rho}): {oracle} vs {}", zonal.at(i, j)))?;
                entries += 1;
            }
        }
    }
    Ok(format!("{entries} entries agree"))
}

fn c6_orthogonality() -> Outcome {
    for n in 1..=8u32 {
        let labels = enumerate_partitions(n);
        let zonal = zonal_character_table(n).map_err(|e| e.to_string())?;
        let order = from_biguint(&odd_double_factorial(n));
        let valency: Vec<Rational> = labels
            .iter()
            .map(|r| zs_core::matchings::sphere_size(r, n).map(|s| from_biguint(&s)))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        let dims: Vec<Rational> = labels.iter().map(|l| from_biguint(&hook_dim(&l.doubled()))).collect();
        let k = labels.len();
        for a in 0..k {
            for b in 0..k {
                let dot: Rational = (0..k).map(|r| &valency[r] * zonal.at(a, r) * zonal.at(b, r)).sum();
                let expected = if a == b { &order / &dims[a] } else { Rational::zero() };
                ensure(dot == expected, || format!("row orthogonality n={n} ({a},{b})"))?;
            }
        }
        for r in 0..k {
            let sum: Rational = (0..k).map(|l| &dims[l] * zonal.at(l, r)).sum();
            let expected = if r == k - 1 { order.clone() } else { Rational::zero() };
            ensure(sum == expected, || format!("column relation n={n} rho={}", labels[r]))?;
        }
    }
    Ok("both relations exact for n <= 8".into())
}

fn c7_alpha_kostka() -> Outcome {
    for n in 1..=8u32 {
        let k = kostka_matrix(n).map_err(|e| e.to_string())?;
        let k1 = alpha_kostka_matrix(n, &qi(1)).map_err(|e| e.to_string())?;
        let k2 = alpha_kostka_matrix(n, &qi(2)).map_err(|e| e.to_string())?;
        ensure(k1.entries == k.entries, || format!("K^(1) != K at n={n}"))?;
        for (x, y) in k2.entries.entries().iter().zip(k.entries.entries()) {
            ensure(!x.is_negative() && x <= y, || format!("n={n}: K^(2) entry {x} vs K entry {y}"))?;
        }
    }
    for n in 1..=6u32 {
        for alpha in [qi(1), qi(2)] {
            let gs = gram_schmidt_jack(n, &alpha).map_err(|e| e.to_string())?;
            let strips = alpha_kostka_matrix(n, &alpha).map_err(|e| e.to_string())?;
            ensure(gs.entries == strips.entries, || format!("Gram-Schmidt mismatch n={n} alpha={alpha}"))?;
        }
    }
    Ok("K^(1)=K, 0<=K^(2)<=K for n<=8; Gram-Schmidt agrees for n<=6".into())
}

fn c8_minor_stability() -> Outcome {
    let mut checks = 0;
    for t in 1..=3u32 {
        let mut reference: Option<[QMatrix; 4]> = None;
        for n in 2 * t + 2..=10 {
            let kostka = kostka_matrix(n).map_err(|e| e.to_string())?;
            let perm = perm_char_matrix(n).map_err(|e| e.to_string())?;
            let k = leading_minor(&kostka, n, t).map_err(|e| e.to_string())?;
            let d = leading_minor(&perm, n, t).map_err(|e| e.to_string())?;
            let ki = k.entries.inverse().map_err(|e| e.to_string())?;
            let di = d.entries.inverse().map_err(|e| e.to_string())?;
            ensure(k.entries.rows() == fat_count_formula(t) - 1, || format!("minor size at n={n}"))?;
            let current = [k.entries, d.entries, ki, di];
            match &reference {
                None => reference = Some(current),
                Some(r) => {
                    ensure(*r == current, || format!("t={t}: minors at n={n} differ from n={}", 2 * t + 2))?;
                    checks += 1;
                }
            }
        }
    }
    Ok(format!("{checks} comparisons of K, D and inverses"))
}

fn c9_fourier_support() -> Outcome {
    let n = 5;
    let scheme = build_scheme(n).map_err(|e| e.to_string())?;
    let mut families = 0;
    for t in 1..=2u32 {
        let fat = fat_partitions(n, t).map_err(|e| e.to_string())?;
        for fixed in all_edge_sets(n, t) {
            let family = canonical_family(&fixed, n).map_err(|e| e.to_string())?;
            let f = MatchingFunction::indicator(&scheme, &family).map_err(|e| e.to_string())?;
            let support = fourier_support(&scheme, &f).map_err(|e| e.to_string())?;
            if let Some(bad) = support.iter().find(|mu| !fat.contains(mu)) {
                return Err(format!("t={t} T={fixed}: non-fat {bad} in support"));
            }
            families += 1;
        }
        let config: Vec<(u32, u32)> = (0..t).map(|i| (2 * i + 3, 2 * i + 4)).collect();
        let family = canonical_family(&EdgeSet::new(&config).map_err(|e| e.to_string())?, n)
            .map_err(|e| e.to_string())?;
        let f = MatchingFunction::indicator(&scheme, &family).map_err(|e| e.to_string())?;
        let support = fourier_support(&scheme, &f).map_err(|e| e.to_string())?;
        let hook = Partition::hook(n, t);
        ensure(support.contains(&hook), || format!("t={t}: {hook} missing from support {support:?}"))?;
    }
    Ok(format!("{families} canonical families fat-supported; hook present for both t"))
}

fn c10_brute_force() -> Outcome {
    let mut found = Vec::new();
    for (n, t, expected) in [(3u32, 1u32, 3u64), (3, 2, 1), (4, 1, 15)] {
        let r = max_independent_exact(n, t, false).map_err(|e| e.to_string())?;
        ensure(r.optimum == expected, || format!("({n},{t}) optimum {} != {expected}", r.optimum))?;
        ensure(zs_core::matchings::is_t_intersecting(&r.witness, t), || format!("({n},{t}) witness not t-intersecting"))?;
        found.push(format!("({n},{t})={}", r.optimum));
    }
    let cert = certify(4, 1).map_err(|e| e.to_string())?;
    ensure(cert.hoffman_value == qi(15), || "hoffman value at (4,1) is not 15".into())?;
    Ok(format!("{} matches hoffman", found.join(" ")))
}

fn c11_asymptotics() -> Outcome {
    let (lo, hi) = exp_neg_half_bounds(&q(1, 1_000_000));
    ensure(&hi - &lo <= q(1, 1_000_000) && lo < hi, || "bad interval".into())?;
    let mut worst = Rational::zero();
    for n in 8..=20u32 {
        let count = derangement_count(n, 1).map_err(|e| e.to_string())?;
        let ratio = from_biguint(&count) / from_biguint(&odd_double_factorial(n));
        let tol = q(1, 4) / qi(n as i64);
        // every point of [lo, hi] lies within tol of the ratio
        let gap = (&ratio - &lo).abs().max((&ratio - &hi).abs());
        ensure(gap <= tol, || format!("n={n}: gap {gap} exceeds {tol}"))?;
        let scaled = gap * qi(n as i64);
        if scaled > worst {
            worst = scaled;
        }
    }
    Ok(format!("max n*|gap| = {:.4} <= 0.25", rational_f64(&worst)))
}

fn rational_f64(x: &Rational) -> f64 {
    let scaled = (x * qi(1_000_000)).to_integer();
    scaled.to_string().parse::<f64>().unwrap_or(f64::NAN) / 1e6
}

fn c12_near_isomorphism() -> Outcome {
    for n in 3..=4u32 {
        let near = enumerate_near_matchings(n).map_err(|e| e.to_string())?;
        let lifts: Vec<PerfectMatching> = near.iter().map(lift_near).collect();
        let mut sorted = lifts.clone();
        sorted.sort();
        sorted.dedup();
        ensure(sorted == enumerate_matchings(n).map_err(|e| e.to_string())?, || format!("psi not bijective at n={n}"))?;
        for t in 1..=2u32 {
            for (i, a) in near.iter().enumerate() {
                for (j, b) in near.iter().enumerate() {
                    let d = near_cycle_type(a, b).map_err(|e| e.to_string())?;
                    let small_parts = d.parts().iter().filter(|&&p| p <= 2).count();
                    let in_theta = small_parts < t as usize;
                    let in_gamma = lifts[i].shared_edges(&lifts[j]) < t as usize;
                    ensure(in_theta == in_gamma, || format!("n={n} t={t}: {a} / {b} (d'={d})"))?;
                }
            }
        }
    }
    for n in 1..=6u32 {
        let total: BigUint = single_odd_part_partitions(2 * n - 1).iter().map(hook_dim).sum();
        ensure(total == odd_double_factorial(n), || format!("n={n}: sum f^lambda = {total}"))?;
    }
    Ok("psi is an isomorphism for n in {3,4}, t in {1,2}; dimension sums match for n <= 6".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, Duration, fn() -> Outcome); 12] = [
        ("1 P-table reproduction (n=4)", Duration::from_secs(5), c1_p_table),
        ("2 certificate at (4,1)", Duration::from_secs(5), c2_certificate),
        ("3 ratio-bound identity", Duration::from_secs(10), c3_ratio_identity),
        ("4 fattest-hook eigenvalue", Duration::from_secs(300), c4_fattest),
        ("5 oracle equivalence", Duration::from_secs(120), c5_oracle),
        ("6 orthogonality", Duration::from_secs(120), c6_orthogonality),
        ("7 alpha-Kostka degeneration", Duration::from_secs(180), c7_alpha_kostka),
        ("8 minor stability", Duration::from_secs(180), c8_minor_stability),
        ("9 Fourier support (n=5)", Duration::from_secs(600), c9_fourier_support),
        ("10 brute-force agreement", Duration::from_secs(300), c10_brute_force),
        ("11 derangement asymptotics", Duration::from_secs(1), c11_asymptotics),
        ("12 near-perfect isomorphism", Duration::from_secs(300), c12_near_isomorphism),
    ];
    let mut failures = 0;
    for (name, budget, check) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > budget => Err(format!("{detail}; over budget {budget:?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS  {name:<32} {elapsed:>10.2?}  {detail}"),
            Err(detail) => {
                failures += 1;
                println!("FAIL  {name:<32} {elapsed:>10.2?}  {detail}");
            }
        }
    }
    println!("{} of 12 criteria passed", 12 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
