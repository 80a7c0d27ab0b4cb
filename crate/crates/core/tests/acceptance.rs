//! Acceptance suite: one line per criterion, nonzero exit if any fails.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod common;

use std::f64::consts::PI;
use std::time::Instant;

use magdirac::bounds::{self, BoundKind, GeometricData};
use magdirac::lattice::Lattice;
use magdirac::oracle::{self, verify::gauge_residual};
use magdirac::scalar::C;
use magdirac::sphere;
use magdirac::torus::{self, SpinCData};
use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn sphere_block_oracle() -> Outcome {
    let start = Instant::now();
    let grid: Vec<f64> = (0..17).map(|j| -4.0 + 0.5 * j as f64).collect();
    let r = oracle::verify_sphere_blocks(30, &grid).map_err(|e| e.to_string())?;
    let secs = start.elapsed().as_secs_f64();
    check(
        r.pass && r.max_residual < 1e-12,
        format!(
            "{} checks, max relative residual {:e}, {secs:.2}s, worst {:?}",
            r.checks, r.max_residual, r.worst
        ),
    )
}

fn sphere_multiplicities() -> Outcome {
    let s = sphere::spectrum(0.0, 12.0, 1e-9);
    let mut bad = Vec::new();
    for k in 0..=10i64 {
        let got = s.multiplicity_at(1.5 + k as f64);
        let want = ((k + 2) * (k + 1)) as usize;
        if got != want {
            bad.push(format!("k={k}: {got} != {want}"));
        }
    }
    check(
        bad.is_empty(),
        if bad.is_empty() {
            "k = 0..10 exact".into()
        } else {
            bad.join(", ")
        },
    )
}

fn torus_mode_oracle() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut fails = Vec::new();
    for n in 1..=4 {
        let r = oracle::verify_torus_modes::<f64>(n, 200, 1000 + n as u64)
            .map_err(|e| e.to_string())?;
        worst = worst.max(r.max_residual);
        if !r.pass {
            fails.push(format!("n={n}: {:?}", r.worst));
        }
    }
    check(
        fails.is_empty(),
        format!(
            "n = 1..4 x 200 samples, max residual {worst:e} {}",
            fails.join("; ")
        ),
    )
}

fn zero_modes() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    let mut fails = Vec::new();
    for i in 0..50 {
        let n = 1 + i % 4;
        let base = common::random_data(&mut rng, n, true, false);
        let gamma: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
        let data = base
            .with_potential(torus::zero_mode_potential(&base, &gamma))
            .unwrap();
        let found = torus::zero_mode(&data);
        let mult = torus::spectrum(&data, 1.0, 1e-9)
            .unwrap()
            .multiplicity_at(0.0);
        if found.as_deref() != Some(&gamma[..]) || mult != 1 << (n / 2) {
            fails.push(format!(
                "constructed n={n} gamma={gamma:?}: found {found:?}, multiplicity {mult}"
            ));
        }
    }
    let mut min_generic = f64::INFINITY;
    for i in 0..50 {
        let n = 1 + i % 4;
        let data = common::random_data(&mut rng, n, true, true);
        let found = torus::zero_mode(&data);
        let l1 = bounds::torus_lambda1(&data).unwrap();
        min_generic = min_generic.min(l1);
        if found.is_some() || !(l1 > 0.0) {
            fails.push(format!("generic n={n}: zero mode {found:?}, min |λ| {l1}"));
        }
    }
    check(
        fails.is_empty(),
        format!(
            "50 constructed + 50 generic; smallest generic |λ| {min_generic:.3e} {}",
            fails.join("; ")
        ),
    )
}

fn gauge_invariance() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let four_pi = 4.0 * PI;
    let data = SpinCData::new(
        Lattice::integer(2).unwrap(),
        vec![0, 0],
        vec![0.0, 0.0],
        vec![four_pi * 0.1, four_pi * 0.23],
    )
    .unwrap();
    let mut lines = Vec::new();
    let mut ok = true;
    for trial in 0..5 {
        let count = rng.gen_range(1..=3);
        let terms: Vec<(Vec<i64>, C<f64>)> = (0..count)
            .map(|_| {
                let freq = loop {
                    let v = vec![rng.gen_range(-1..=1), rng.gen_range(-1..=1)];
                    if v != [0, 0] {
                        break v;
                    }
                };
                (
                    freq,
                    C::new(rng.gen_range(-0.15..0.15), rng.gen_range(-0.15..0.15)),
                )
            })
            .collect();
        let at10 = gauge_residual(&data, &terms, 10, 10).map_err(|e| e.to_string())?;
        let seq: Vec<f64> = [4, 8, 12]
            .iter()
            .map(|&c| gauge_residual(&data, &terms, c, 10).map_err(|e| e.to_string()))
            .collect::<Result<_, _>>()?;
        let monotone = seq.windows(2).all(|w| w[1] <= w[0] + 1e-12);
        ok &= at10 <= 1e-6 && monotone;
        lines.push(format!(
            "#{trial}: r10={at10:.1e} r4/8/12={:.1e}/{:.1e}/{:.1e}",
            seq[0], seq[1], seq[2]
        ));
    }
    let secs = start.elapsed().as_secs_f64();
    check(ok, format!("{} ({secs:.1}s)", lines.join(", ")))
}

fn sphere_first_eigenvalue() -> Outcome {
    let mut fails = Vec::new();
    for j in 1..=30 {
        let t = 0.05 * j as f64;
        let l = sphere::lambda1(t);
        let fr = bounds::friedrich_bound(&GeometricData::round_s3(), t)
            .unwrap()
            .value;
        if (l - (1.5 - t)).abs() > 1e-12 || !(fr < l * l) {
            fails.push(format!("(a) t={t}: λ₁={l}, Friedrich {fr}"));
        }
    }
    for j in -200..=200 {
        let t = 0.05 * j as f64;
        let l = sphere::lambda1(t);
        let equal = (l + t.abs() - 1.5).abs() <= 1e-12;
        let inside = t.abs() <= 1.5 + 1e-12;
        if equal != inside {
            fails.push(format!("(b) t={t}: λ₁+|t|={}", l + t.abs()));
        }
        if j != 0 && !(l < 1.5) {
            fails.push(format!("(c) t={t}: λ₁={l}"));
        }
    }
    check(
        fails.is_empty(),
        if fails.is_empty() {
            "(a), (b), (c) on grids".into()
        } else {
            fails.join("; ")
        },
    )
}

fn diamagnetic_dichotomy() -> Outcome {
    let d = SpinCData::new(
        Lattice::integer(2).unwrap(),
        vec![1, 0],
        vec![0.0, 0.0],
        vec![0.0, 0.0],
    )
    .unwrap();
    let first = |s: f64| -> f64 {
        let a = torus::diamagnetic_potential(&d, s).unwrap();
        let ds = d.with_potential(a).unwrap();
        torus::spectrum(&ds, 10.0, 1e-9)
            .unwrap()
            .smallest_positive()
            .unwrap()
    };
    let base = first(0.0);
    let up = first(0.05);
    let down = first(-0.05);
    let (m0, _) = torus::lowest_mode(&d).unwrap();
    let tracked = |s: f64| {
        torus::mode_value(
            &d.with_potential(torus::diamagnetic_potential(&d, s).unwrap())
                .unwrap(),
            &m0,
        )
    };
    check(
        (base - PI).abs() < 1e-12 && up > base + 1e-6 && down < base - 1e-6,
        format!(
            "smallest positive: s=0 {base:.9}, s=+0.05 {up:.9}, s=-0.05 {down:.9}; mode {m0:?} tracked: {:.9} / {:.9}",
            tracked(0.05),
            tracked(-0.05)
        ),
    )
}

fn basic_sharpness() -> Outcome {
    let g = GeometricData::<f64>::round_s3();
    let mut worst: f64 = 0.0;
    for j in 0..=1000 {
        let t = 0.01 * j as f64;
        let b = bounds::basic_bound(&g, t).unwrap().value;
        worst = worst.max((b - (0.5 + (t * t + 4.0).sqrt())).abs());
    }
    let mut fails = Vec::new();
    for n in [5usize, 7, 9] {
        let m = (n - 1) / 2;
        let mut gn = g.clone();
        gn.n = n;
        gn.scalar_curvature = (n * (n - 1)) as f64;
        gn.omega_norm = (m as f64).sqrt();
        let start = (3.0 * n as f64 - 1.0) / 4.0;
        for j in 0..=400 {
            let t = start + 0.05 * j as f64;
            let b = bounds::basic_bound(&gn, t).unwrap().value;
            if !(b > n as f64 / 2.0 - t) {
                fails.push(format!("n={n} t={t}"));
            }
        }
    }
    check(
        worst <= 1e-12 && fails.is_empty(),
        format!(
            "max |basic - (1/2+sqrt(t²+4))| = {worst:e}; crossover n=5,7,9 {}",
            fails.join(" ")
        ),
    )
}

fn collisions() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let pick = |rng: &mut ChaCha8Rng| {
        let k = rng.gen_range(1..=25i64);
        (k, rng.gen_range(0..k))
    };
    let mut fails = Vec::new();
    let mut worst: f64 = 0.0;
    let mut tested = 0;
    while tested < 100 {
        let (a, b) = (pick(&mut rng), pick(&mut rng));
        if a == b || 2 * (a.1 - b.1) == a.0 - b.0 {
            continue;
        }
        tested += 1;
        let t: f64 = sphere::collision_t(a.0, a.1, b.0, b.1).unwrap();
        let (fa, fb) = (sphere::f0(a.0, a.1, t), sphere::f0(b.0, b.1, t));
        let rel = (fa - fb).abs() / (1.0 + fa.abs());
        worst = worst.max(rel);
        let q: Rational64 = sphere::collision_t(a.0, a.1, b.0, b.1).unwrap();
        if rel > 1e-10 || sphere::f0(a.0, a.1, q) != sphere::f0(b.0, b.1, q) {
            fails.push(format!("{a:?} vs {b:?} at t={t}"));
        }
    }
    let mut degenerate = 0;
    while degenerate < 100 {
        let (a, b) = (pick(&mut rng), pick(&mut rng));
        if (a.0 - b.0) % 2 != 0 {
            continue;
        }
        let p2 = a.1 - (a.0 - b.0) / 2;
        if !(0 <= p2 && p2 < b.0) {
            continue;
        }
        degenerate += 1;
        if sphere::collision_t::<f64>(a.0, a.1, b.0, p2).is_some() {
            fails.push(format!(
                "degenerate {a:?} vs ({}, {p2}) returned a value",
                b.0
            ));
        }
    }
    check(
        fails.is_empty(),
        format!("100 pairs, max relative f0 mismatch {worst:e} (exact over rationals); 100 degenerate pairs {}", fails.join("; ")),
    )
}

fn soundness() -> Outcome {
    let mut fails = Vec::new();
    let mut sphere_checks = 0;
    let all = [
        BoundKind::Friedrich,
        BoundKind::Hijazi,
        BoundKind::Basic,
        BoundKind::Diamagnetic,
    ];
    for j in -80..=80 {
        let t = 0.05 * j as f64;
        for (kind, r) in bounds::sphere_reports(t, &all) {
            let r = r.map_err(|e| e.to_string())?;
            sphere_checks += 1;
            if r.violation {
                fails.push(format!("S³ t={t} {}: gap {:e}", kind.name(), r.gap));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let kinds = [
        BoundKind::Friedrich,
        BoundKind::Hijazi,
        BoundKind::Baer,
        BoundKind::Nodal,
    ];
    let mut torus_checks = 0;
    for i in 0..50 {
        let n = 2 + i % 3;
        let twist = rng.gen_bool(0.5);
        let data = common::random_data(&mut rng, n, twist, true);
        for (kind, r) in bounds::torus_reports(&data, &kinds).map_err(|e| e.to_string())? {
            if let Ok(r) = r {
                torus_checks += 1;
                if r.violation {
                    fails.push(format!("torus #{i} {}: gap {:e}", kind.name(), r.gap));
                }
            }
        }
    }
    check(
        fails.is_empty(),
        format!(
            "{sphere_checks} S³ comparisons, {torus_checks} torus comparisons {}",
            fails.join("; ")
        ),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 10] = [
        ("S³ block oracle", sphere_block_oracle),
        ("S³ multiplicities at t = 0", sphere_multiplicities),
        ("torus mode oracle", torus_mode_oracle),
        ("torus zero-mode criterion", zero_modes),
        ("gauge invariance", gauge_invariance),
        (
            "S³ first eigenvalue, Friedrich and Hijazi",
            sphere_first_eigenvalue,
        ),
        ("torus diamagnetic dichotomy", diamagnetic_dichotomy),
        (
            "basic-spinor bound sharpness and crossover",
            basic_sharpness,
        ),
        ("branch collision formula", collisions),
        ("bound soundness sweep", soundness),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("PASS  {:>2}. {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {:>2}. {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
