//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

mod support;

use std::f64::consts::FRAC_1_SQRT_2;
use std::time::Instant;

use dbridge::alpha::{construct_alpha, reduce_half_integer, AlphaKind, AlphaRatio, Catalog};
use dbridge::elliptic::{complete_k_of, jacobi_cn_sn_dn, k_of_inv_sqrt2, EllipticModulus};
use dbridge::profile::build_profile;
use dbridge::scan::{
    cluster_hits, fill_omegas, i_minus, i_plus, omega_limit_report, scan_hits_with, scan_hurwitz,
    Parallelism,
};
use dbridge::spectrum::{
    bifurcation_check, enumerate_solutions, is_branch_index, omega_minus, omega_plus, Family,
    GraphGeometry, Solution,
};
use support::*;

type Outcome = Result<String, String>;

fn check(ok: bool, msg: impl Into<String>) -> Outcome {
    if ok {
        Ok(msg.into())
    } else {
        Err(msg.into())
    }
}

fn catalog(name: &str) -> AlphaRatio {
    Catalog::default().resolve(name).unwrap()
}

/// Number of leading significant digits on which two decimal strings agree.
fn matching_digits(a: &str, b: &str) -> usize {
    let digits = |s: &str| {
        s.chars()
            .filter(|c| c.is_ascii_digit())
            .skip_while(|&c| c == '0')
            .collect::<Vec<_>>()
    };
    let (da, db) = (digits(a), digits(b));
    if a.starts_with('-') != b.starts_with('-') {
        return 0;
    }
    da.iter().zip(&db).take_while(|(x, y)| x == y).count()
}

fn indices(alpha: &AlphaRatio, n_max: u64, par: Parallelism) -> Vec<u64> {
    scan_hits_with(alpha, n_max, 0.25, par)
        .unwrap()
        .iter()
        .map(|h| h.n)
        .collect()
}

fn criterion_1() -> Outcome {
    let table = [
        (1, "-0.05278640450004206072"),
        (19, "-0.05589202451518391926"),
        (341, "-0.05590166939086236898"),
        (6119, "-0.05590169934418131952"),
        (109801, "-0.05590169943720494638"),
    ];
    let t0 = Instant::now();
    let hits = scan_hits_with(&catalog("inv_sqrt5"), 1_000_000, 0.25, Parallelism::Serial)
        .map_err(|e| e.to_string())?;
    let secs = t0.elapsed().as_secs_f64();
    let ns: Vec<u64> = hits.iter().map(|h| h.n).collect();
    if ns != table.iter().map(|t| t.0).collect::<Vec<_>>() {
        return Err(format!("indices {ns:?}"));
    }
    let worst = hits
        .iter()
        .zip(table)
        .map(|(h, (_, want))| matching_digits(&h.seq.xi_tilde_decimal(20), want))
        .min()
        .unwrap();
    check(
        worst >= 12 && secs < 60.0,
        format!("5 indices, ≥{worst} matching digits, serial scan {secs:.2}s"),
    )
}

fn criterion_2() -> Outcome {
    let want = [1, 6, 13, 84, 181, 1170, 2521, 16296, 35113, 226974, 489061];
    let hits = scan_hits_with(&catalog("inv_sqrt3"), 1_000_000, 0.25, Parallelism::Global)
        .map_err(|e| e.to_string())?;
    let ns: Vec<u64> = hits.iter().map(|h| h.n).collect();
    if ns != want {
        return Err(format!("indices {ns:?}"));
    }
    let rep = cluster_hits(&hits, 1e-6);
    let centers: Vec<f64> = rep.clusters.iter().map(|c| c.center).collect();
    let near = |x: f64| centers.iter().any(|c| (c - x).abs() < 1e-6);
    check(
        centers.len() == 2 && near(0.072_168_783_6) && near(-0.216_506_350_9),
        format!("11 indices, cluster centers {centers:?}"),
    )
}

fn criterion_3() -> Outcome {
    let printed = [
        1u64, 2, 5, 8, 21, 34, 89, 144, 377, 610, 1597, 2584, 6765, 10946, 28657, 46368, 121393,
        196418, 514229, 832040, 2178309, 3524578, 9227465,
    ];
    let hits = scan_hits_with(
        &catalog("inv_one_plus_sqrt5"),
        10_000_000,
        0.25,
        Parallelism::Global,
    )
    .map_err(|e| e.to_string())?;
    let ns: Vec<u64> = hits.iter().map(|h| h.n).collect();
    if let Some(m) = printed.iter().find(|n| !ns.contains(n)) {
        return Err(format!("missing n = {m}"));
    }
    let rep = cluster_hits(&hits, 1e-6);
    if rep.clusters.len() != 2 {
        return Err(format!("{} clusters", rep.clusters.len()));
    }
    let late: Vec<f64> = hits
        .iter()
        .filter(|h| h.n >= 10_000)
        .map(|h| h.xi_tilde)
        .collect();
    let pos: Vec<f64> = late.iter().copied().filter(|x| *x > 0.0).collect();
    let neg: Vec<f64> = late.iter().copied().filter(|x| *x < 0.0).collect();
    let asym = pos
        .iter()
        .flat_map(|p| neg.iter().map(move |n| (p + n).abs()))
        .fold(0.0, f64::max);
    let centers_ok = rep
        .clusters
        .iter()
        .all(|c| (c.center.abs() - 0.223_606_797_7).abs() < 1e-6);
    check(
        centers_ok && asym < 1e-9 && !pos.is_empty() && !neg.is_empty(),
        format!("{} indices incl. 9227465, clusters ±0.2236067977, max |ξ̃₊ + ξ̃₋| = {asym:.1e} for n ≥ 1e4", ns.len()),
    )
}

fn criterion_4() -> Outcome {
    let mut worst_id = 0.0f64;
    for i in 0..=100 {
        let k = i as f64 / 101.0 + 0.0099;
        let m = EllipticModulus::new(k.min(0.999)).unwrap();
        for j in -200..=200 {
            let u = j as f64 * 0.05;
            let (cn, sn, dn) = jacobi_cn_sn_dn(u, &m);
            let kk = m.k();
            worst_id = worst_id
                .max((cn * cn + sn * sn - 1.0).abs())
                .max((dn * dn + kk * kk * sn * sn - 1.0).abs());
        }
    }
    let mut worst_k = 0.0f64;
    for i in 0..=999 {
        let k = i as f64 * 0.001;
        worst_k = worst_k.max((complete_k_of(k).unwrap() / k_trapezoid(k) - 1.0).abs());
    }
    let k0 = k_of_inv_sqrt2();
    let k0_digits = ((k0 - k_trapezoid(FRAC_1_SQRT_2)) / k0).abs();
    check(
        worst_id <= 1e-12 && worst_k <= 1e-12 && k0_digits < 1e-12,
        format!("identity residual {worst_id:.1e}, K rel err {worst_k:.1e}, K(1/√2) rel err {k0_digits:.1e}"),
    )
}

fn criterion_5() -> Outcome {
    let t0 = Instant::now();
    let mut worst = 0.0f64;
    for name in ["inv_sqrt5", "inv_sqrt3", "inv_one_plus_sqrt5"] {
        let alpha = catalog(name);
        let geom = GraphGeometry::from_ratio(&alpha, 1.0).unwrap();
        for n in 1..=50u64 {
            let frac = (n as f64 * alpha.value()).fract();
            let plus = omega_plus(&geom, &alpha, n).map_err(|e| e.to_string())?;
            let minus = omega_minus(&geom, &alpha, n).map_err(|e| e.to_string())?;
            for (w, sigma) in [(plus, 1.0), (minus, -1.0)] {
                let Some(w) = w else { continue };
                let oracle = omega_bisect(n, frac, sigma, 1.0);
                worst = worst.max(((w.omega - oracle) / oracle).abs());
            }
        }
    }
    let secs = t0.elapsed().as_secs_f64();
    check(
        worst <= 1e-9 && secs < 10.0,
        format!("300 frequencies, max rel err {worst:.1e}, {secs:.2}s"),
    )
}

fn criterion_6() -> Outcome {
    let alpha = catalog("inv_sqrt5");
    let geom = GraphGeometry::from_ratio(&alpha, 1.0).unwrap();
    let mut hits =
        scan_hits_with(&alpha, 1_000_000, 0.25, Parallelism::Global).map_err(|e| e.to_string())?;
    fill_omegas(&geom, &alpha, &mut hits).map_err(|e| e.to_string())?;
    let (lo, _) = i_plus(1.0);
    let plus_ok = hits
        .iter()
        .all(|h| h.omega_plus.is_some_and(|w| (lo..=0.0).contains(&w)));
    let mut hz = scan_hurwitz(&alpha, 1_000_000, Parallelism::Global).map_err(|e| e.to_string())?;
    fill_omegas(&geom, &alpha, &mut hz).map_err(|e| e.to_string())?;
    let (lo_m, _) = i_minus(1.0);
    let minus_ok = hz.len() >= 3
        && hz
            .iter()
            .all(|h| h.omega_minus.is_some_and(|w| (lo_m..=0.0).contains(&w)));
    let rows = omega_limit_report(&geom, &alpha, &hits).map_err(|e| e.to_string())?;
    let worst = rows
        .iter()
        .filter(|r| r.n >= 10_000)
        .map(|r| (r.ratio - 1.0).abs())
        .fold(0.0, f64::max);
    check(
        plus_ok && minus_ok && worst < 1e-4,
        format!(
            "{} ω⁺ in I⁺, {} Hurwitz ω⁻ in I⁻, asymptotic ratio dev {worst:.1e}",
            hits.len(),
            hz.len()
        ),
    )
}

fn criterion_7() -> Outcome {
    let mut waves = Vec::new();
    for (spec, ns) in [
        ("inv_sqrt5", &[1u64, 2, 3][..]),
        ("inv_sqrt3", &[1, 2][..]),
        ("1/3", &[1, 2][..]),
        ("2/5", &[1, 3, 4][..]),
    ] {
        let alpha = Catalog::default().resolve(spec).unwrap();
        let geom = GraphGeometry::from_ratio(&alpha, 1.0).unwrap();
        for &n in ns {
            for w in [omega_plus(&geom, &alpha, n), omega_minus(&geom, &alpha, n)] {
                if let Some(w) = w.map_err(|e| e.to_string())? {
                    waves.push((spec, geom, w));
                }
            }
        }
    }
    let mut worst_k = 0.0f64;
    let mut worst_ode = 0.0f64;
    for (spec, geom, w) in &waves {
        let p = build_profile(w, geom).map_err(|e| format!("{spec}: {e}"))?;
        let v = p.validate(400);
        let scale = (2.0 * w.omega.abs()).sqrt();
        worst_k = worst_k.max(v.kirchhoff_cont.max(v.kirchhoff_deriv) / scale);
        worst_ode = worst_ode.max(v.ode_residual / (1e-4 * w.omega.abs().powf(1.5) * 2f64.sqrt()));
    }
    check(
        waves.len() >= 20 && worst_k <= 1e-8 && worst_ode <= 1.0,
        format!(
            "{} profiles, Kirchhoff/√(2|ω|) ≤ {worst_k:.1e}, ODE residual at {:.2} of the gate",
            waves.len(),
            worst_ode
        ),
    )
}

fn criterion_8() -> Outcome {
    let mut cases = 0;
    for q in 2..=12u64 {
        for p in 1..q {
            if num_integer::gcd(p, q) != 1 {
                continue;
            }
            let alpha = AlphaRatio::rational(p, q).unwrap();
            let geom = GraphGeometry::from_ratio(&alpha, 1.0).unwrap();
            let (_, q0) = reduce_half_integer(p, q);
            let sols = enumerate_solutions(&geom, &alpha, 3 * q).map_err(|e| e.to_string())?;
            for family in [Family::Plus, Family::Minus] {
                let iso: Vec<u64> = sols
                    .iter()
                    .filter(|s| s.family() == family && matches!(s, Solution::Isolated(_)))
                    .map(Solution::n)
                    .collect();
                let br: Vec<u64> = sols
                    .iter()
                    .filter(|s| s.family() == family && matches!(s, Solution::Branch(_)))
                    .map(Solution::n)
                    .collect();
                let want_iso: Vec<u64> = (1..=3 * q).filter(|n| n % q0 != 0).collect();
                let want_br: Vec<u64> = match family {
                    Family::Plus => (1..=3 * q).filter(|n| n % q == 0).collect(),
                    Family::Minus if q % 2 == 0 => (1..=3 * q).filter(|n| n % q == q / 2).collect(),
                    Family::Minus => Vec::new(),
                };
                if iso != want_iso || br != want_br {
                    return Err(format!(
                        "α = {p}/{q} {family}: isolated {iso:?}, branches {br:?}"
                    ));
                }
                if iso.iter().any(|&n| is_branch_index(&alpha, family, n)) {
                    return Err(format!("α = {p}/{q}: overlap"));
                }
            }
            cases += 1;
        }
    }
    check(true, format!("{cases} ratios p/q with q ≤ 12, n ≤ 3q"))
}

fn criterion_9() -> Outcome {
    let alpha = AlphaRatio::rational(1, 3).unwrap();
    let geom = GraphGeometry::from_ratio(&alpha, 1.0).unwrap();
    let lambda1 = (2.0 * std::f64::consts::PI * 3.0).powi(2);
    let eps = 1e-6 * lambda1;
    let b = bifurcation_check(&geom, &alpha, 1, eps).map_err(|e| e.to_string())?;
    let amp = b.amplitude / b.predicted;
    let kr = b.k_n / (2.0 * eps / (3.0 * b.lambda)).sqrt();
    check(
        (0.999..=1.001).contains(&amp)
            && (0.99..=1.01).contains(&kr)
            && ((b.lambda - lambda1) / lambda1).abs() < 1e-14,
        format!("amplitude ratio {amp:.7}, modulus ratio {kr:.7}"),
    )
}

fn criterion_10() -> Outcome {
    let t0 = Instant::now();
    let mut report = Vec::new();
    for ell in [0.0, 5.0, 5.25] {
        let (alpha, starts) = construct_alpha(ell, 12).map_err(|e| e.to_string())?;
        let AlphaKind::Constructed(c) = alpha.kind() else {
            unreachable!()
        };
        let gaps: Vec<f64> = (1..=12)
            .map(|j| c.xi_tilde_gap(j))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        let monotone = gaps.windows(2).all(|w| w[1].abs() <= w[0].abs());
        let last = c
            .xi_tilde_block_decimal(12, 20)
            .map_err(|e| e.to_string())?;
        let exact = last == format!("{ell:.20}");
        if !(monotone && gaps[11].abs() < 1e-3 && exact) {
            return Err(format!("ℓ = {ell}: gaps {gaps:?}, ξ̃ = {last}"));
        }
        report.push(format!("ℓ={ell}: n_12={} gap {:.1e}", starts[11], gaps[11]));
    }
    let secs = t0.elapsed().as_secs_f64();
    check(secs < 5.0, format!("{}; {secs:.2}s", report.join(", ")))
}

fn criterion_11() -> Outcome {
    let alpha = catalog("inv_sqrt5");
    let render = |par| {
        let hits = scan_hits_with(&alpha, 1_000_000, 0.25, par).unwrap();
        hits.iter()
            .map(|h| format!("{},{}\n", h.n, h.seq.xi_tilde_decimal(20)))
            .collect::<String>()
    };
    let serial = render(Parallelism::Serial);
    let parallel = render(Parallelism::Threads(8));
    check(
        serial == parallel && indices(&alpha, 1000, Parallelism::Threads(8)) == [1, 19, 341],
        format!("{} bytes identical", serial.len()),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("hit table for 1/√5", criterion_1),
        ("hit table and clusters for 1/√3", criterion_2),
        ("hit table and clusters for 1/(1+√5)", criterion_3),
        ("elliptic kernel", criterion_4),
        ("frequency solver vs bisection", criterion_5),
        ("frequency intervals", criterion_6),
        ("profile validation", criterion_7),
        ("rational enumeration", criterion_8),
        ("small-amplitude bifurcation", criterion_9),
        ("dyadic constructor", criterion_10),
        ("scan determinism", criterion_11),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(msg) => println!("criterion {:>2} PASS  {name}: {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {msg}", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
