//! Acceptance suite: one test per criterion, each printing a PASS line
//! once its assertions hold. Run with `cargo test --test acceptance`
//! (add `-- --nocapture` to see the lines).

use jumplab::geometry::{QuadConfig, RectifiableSet};
use jumplab::harness::experiment::{
    diagnostic_sweep, run_experiment, ExperimentConfig, KernelChoice,
};
use jumplab::harness::scene::SceneSpec;
use jumplab::kernel::{sphere_volume, Kernel};
use jumplab::measure::{Atom, Density, RadonMeasure};
use jumplab::operators::{
    flat_plane_reflection_check, jump_constant_numeric, jump_residuals_at_param,
    truncated_transform, ExtrapolationConfig,
};
use jumplab::vec3::Vec3;
use rand::{Rng, SeedableRng};
use std::f64::consts::PI;
use std::time::Instant;

fn circle_scene(density: Density) -> SceneSpec {
    let mut spec = SceneSpec::builtin("circle").unwrap();
    spec.measure.density = density;
    spec
}

fn sphere_scene(density: Density) -> SceneSpec {
    let mut spec = SceneSpec::builtin("sphere").unwrap();
    spec.measure.density = density;
    spec
}

/// Criterion 1: numeric jump constants match the closed forms.
#[test]
fn criterion_1_jump_constants_match_closed_forms() {
    let start = Instant::now();
    let r1 = Kernel::riesz(1).unwrap();
    let c = jump_constant_numeric(&r1, Vec3::xy(0.0, 1.0), 1e4).unwrap();
    let expected = Vec3::xy(0.0, sphere_volume(1) / 2.0); // (0, π)
    assert!(
        (c.value - expected).norm() < 1e-8,
        "riesz n=1: {:?} vs {:?}",
        c.value,
        expected
    );
    assert!(start.elapsed().as_secs_f64() < 10.0);

    let t2 = Instant::now();
    let r2 = Kernel::riesz(2).unwrap();
    let c = jump_constant_numeric(&r2, Vec3::new(0.0, 0.0, 1.0), 1e4).unwrap();
    let expected = Vec3::new(0.0, 0.0, sphere_volume(2) / 2.0); // (0, 0, 2π)
    assert!(
        (c.value - expected).norm() < 1e-6,
        "riesz n=2: {:?} vs {:?}",
        c.value,
        expected
    );
    assert!(t2.elapsed().as_secs_f64() < 10.0);

    // Odd Cauchy powers at 8 seeded random unit directions. The closed
    // form is (−1)^{(j−1)/2} π N^j: the j = 1 kernel coincides with the
    // planar Riesz kernel, which pins the sign.
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
    for j in [1u32, 3, 5] {
        let t = Instant::now();
        let kernel = Kernel::cauchy_power(j).unwrap();
        for _ in 0..8 {
            let angle = rng.gen_range(0.0..2.0 * PI);
            let n = Vec3::xy(angle.cos(), angle.sin());
            let numeric = jump_constant_numeric(&kernel, n, 1e4).unwrap().value;
            let closed = kernel.closed_form_jump(n).unwrap();
            assert!(
                (numeric - closed).norm() < 1e-6,
                "j={j} at angle {angle}: {numeric:?} vs {closed:?}"
            );
        }
        assert!(t.elapsed().as_secs_f64() < 10.0, "j={j} too slow");
    }
    println!("criterion 1 PASS: jump constants match closed forms (riesz 1e-8/1e-6, cauchy 1e-6)");
}

/// Criterion 2: double-layer jump is f/2 on circle and sphere.
#[test]
fn criterion_2_double_layer_jump() {
    let start = Instant::now();
    let cases: Vec<(SceneSpec, &str)> = vec![
        (circle_scene(Density::constant(1.0)), "circle f=1"),
        (
            circle_scene(Density::Trig {
                coefficients: vec![0.0, 1.0],
            }),
            "circle f=cos",
        ),
        (sphere_scene(Density::constant(1.0)), "sphere f=1"),
        (
            sphere_scene(Density::Trig {
                coefficients: vec![0.0, 1.0],
            }),
            "sphere f=cos",
        ),
    ];
    for (scene, label) in cases {
        let config = ExperimentConfig::new(scene, KernelChoice::DoubleLayer, 8);
        let report = run_experiment(&config).unwrap();
        assert!(report.points.len() >= 8, "{label}");
        for row in &report.points {
            let half_jump = 0.5 * (row.t_plus.value[0] - row.t_minus.value[0]);
            assert!(
                (half_jump - 0.5 * row.f).abs() < 1e-3,
                "{label} point {}: half-jump {} vs f/2 {}",
                row.point_id,
                half_jump,
                0.5 * row.f
            );
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 300.0, "double layer took {elapsed:.1}s");
    println!("criterion 2 PASS: double-layer half-jump = f/2 within 1e-3 ({elapsed:.1}s)");
}

fn scene_trio() -> Vec<(SceneSpec, &'static str, f64)> {
    let line = SceneSpec::builtin("line").unwrap();
    let circle = circle_scene(Density::Trig {
        coefficients: vec![1.0, 0.3],
    });
    let mut fourier = SceneSpec::builtin("fourier").unwrap();
    fourier.measure.density = Density::Trig {
        coefficients: vec![1.0, 0.25],
    };
    vec![
        (line, "flat line", 1e-5),
        (circle, "unit circle", 1e-3),
        (fourier, "fourier graph", 1e-3),
    ]
}

/// Criterion 3: jump-identity residuals across scenes × kernels, with
/// an independent graded-grid oracle at the two finest ladder scales.
#[test]
fn criterion_3_residuals_across_scenes_and_kernels() {
    let kernels = [
        KernelChoice::Riesz { n: 1 },
        KernelChoice::CauchyPower { j: 1 },
        KernelChoice::CauchyPower { j: 3 },
    ];
    for (scene, label, bound) in scene_trio() {
        for kernel_choice in kernels {
            let config = ExperimentConfig::new(scene.clone(), kernel_choice, 6);
            let report = run_experiment(&config).unwrap();
            assert!(
                report.summary.all_converged,
                "{label} / {}",
                kernel_choice.label()
            );
            for row in &report.points {
                assert!(
                    row.residual_avg < bound,
                    "{label} / {} point {}: residual_avg {}",
                    kernel_choice.label(),
                    row.point_id,
                    row.residual_avg
                );
                assert!(
                    row.residual_jump < bound,
                    "{label} / {} point {}: residual_jump {}",
                    kernel_choice.label(),
                    row.point_id,
                    row.residual_jump
                );
            }

            // Oracle cross-check: recompute T at the two finest plus-side
            // ladder scales with a dense graded midpoint rule.
            let kernel = match kernel_choice {
                KernelChoice::Riesz { n } => Kernel::riesz(n).unwrap(),
                KernelChoice::CauchyPower { j } => Kernel::cauchy_power(j).unwrap(),
                KernelChoice::DoubleLayer => unreachable!(),
            };
            let measure = scene.build().unwrap();
            let patch = 0usize;
            let d = measure.carrier().patches()[patch].domain;
            let t_mid = [(d.lo[0] + d.hi[0]) / 2.0 + 0.137, 0.0];
            let cfg = ExtrapolationConfig::for_diameter(measure.scene_diameter());
            let rec =
                jump_residuals_at_param(&kernel, &measure, patch, t_mid, 0.5, 0.25, &cfg).unwrap();
            let frame = measure.carrier().tangent_frame(patch, &t_mid).unwrap();
            let finest = rec.t_plus.samples.iter().rev().take(2);
            for (scale, value) in finest {
                let y = frame.point + frame.normal.scale(*scale);
                let oracle = graded_oracle(&kernel, &measure, patch, y, 0.25 * scale, t_mid[0]);
                let err = (Vec3(*value) - oracle).norm();
                assert!(
                    err < 1e-5,
                    "{label} / {} oracle mismatch {err} at scale {scale}",
                    kernel_choice.label()
                );
            }
        }
    }
    println!("criterion 3 PASS: residuals < 1e-3 (flat line < 1e-5) for 3 scenes x 3 kernels, oracle-checked");
}

/// Dense graded midpoint rule for T_trunc ν(y) on a single-patch curve;
/// independent of the adaptive engine.
fn graded_oracle(
    kernel: &Kernel,
    measure: &RadonMeasure,
    patch_idx: usize,
    y: Vec3,
    trunc: f64,
    s_star: f64,
) -> Vec3 {
    let patch = &measure.carrier().patches()[patch_idx];
    let (lo, hi) = (patch.domain.lo[0], patch.domain.hi[0]);
    let w = patch.position(&[s_star, 0.0]).dist(&y).max(1e-12);
    let span = (hi - lo).max(1.0);
    let u_max = (2.0 * span / w).asinh();
    let m = 400_000usize;
    let du = 2.0 * u_max / m as f64;
    let mut sum = Vec3::ZERO;
    for i in 0..m {
        let u = -u_max + (i as f64 + 0.5) * du;
        let s = s_star + w * u.sinh();
        if s <= lo || s >= hi {
            continue;
        }
        let pos = patch.position(&[s, 0.0]);
        if pos.dist(&y) <= trunc {
            continue;
        }
        let jac = patch.jacobian(&[s, 0.0]);
        let f = measure.density_at_param(s);
        sum += kernel
            .eval(y - pos)
            .scale(f * jac * w * u.cosh() * du);
    }
    sum
}

/// Criterion 4: exact cancellation properties.
#[test]
fn criterion_4_exact_cancellations() {
    // Symmetric atom pairs: T_ε ≡ 0 to 1e-12 at every truncation.
    let far_carrier = RectifiableSet::segment(Vec3::xy(40.0, 40.0), Vec3::xy(41.0, 40.0));
    let x = Vec3::xy(0.2, -0.7);
    let p = Vec3::xy(1.3, 1.1);
    let m = RadonMeasure::new(
        far_carrier,
        Density::constant(0.0),
        vec![Atom::new(p, 2.5), Atom::new(x.scale(2.0) - p, 2.5)],
    );
    for kernel in [
        Kernel::riesz(1).unwrap(),
        Kernel::cauchy_power(3).unwrap(),
        Kernel::cauchy_power(5).unwrap(),
    ] {
        for eps in [1e-3, 0.1, 0.5, 1.0] {
            let r = truncated_transform(&kernel, &m, x, eps, &QuadConfig::default());
            assert!(r.value.norm() < 1e-12, "{} eps={eps}", kernel.name());
        }
    }

    // Flat-plane reflection identity at 20 seeded random configurations.
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
    for case in 0..20 {
        let three_d = case % 4 == 3;
        let (frame, kernel) = if three_d {
            let axis = Vec3::new(
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            )
            .normalized();
            let origin = Vec3::new(
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            );
            let e1 = axis.cross(&Vec3::new(0.3, -0.9, 0.4)).normalized();
            let e2 = axis.cross(&e1);
            let plane = RectifiableSet::plane_patch(origin, e1, e2, 1.0);
            (
                plane.tangent_frame(0, &[0.0, 0.0]).unwrap(),
                Kernel::riesz(2).unwrap(),
            )
        } else {
            let alpha = rng.gen_range(0.0..PI);
            let p0 = Vec3::xy(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let dir = Vec3::xy(alpha.cos(), alpha.sin());
            let seg = RectifiableSet::segment(p0 - dir, p0 + dir);
            let kernel = match case % 3 {
                0 => Kernel::riesz(1).unwrap(),
                1 => Kernel::cauchy_power(3).unwrap(),
                _ => Kernel::cauchy_power(5).unwrap(),
            };
            (seg.tangent_frame(0, &[0.5, 0.0]).unwrap(), kernel)
        };
        // Random point in the aperture-0.5 cone over the normal.
        let beta = rng.gen_range(-1.0f64..1.0) * 0.5f64.acos() * 0.9;
        let r = rng.gen_range(0.1..1.0);
        let dir = frame.normal.scale(beta.cos()) + frame.basis[0].scale(beta.sin());
        let y = frame.point + dir.scale(r);
        let v = flat_plane_reflection_check(&kernel, &frame, y, 5.0 * r).unwrap();
        assert!(v < 1e-9, "case {case}: {v}");
    }

    // Oddness and homogeneity at 1e6 samples, relative 1e-12.
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4242);
    for kernel in [
        Kernel::riesz(1).unwrap(),
        Kernel::riesz(2).unwrap(),
        Kernel::cauchy_power(1).unwrap(),
        Kernel::cauchy_power(3).unwrap(),
        Kernel::cauchy_power(5).unwrap(),
    ] {
        let dim = kernel.ambient_dim();
        let samples = 1_000_000usize / 5;
        for _ in 0..samples {
            let mut c = [0.0; 3];
            for item in c.iter_mut().take(dim) {
                *item = rng.gen_range(-1.0..1.0);
            }
            let x = Vec3(c);
            if x.norm_sq() < 1e-6 {
                continue;
            }
            let v = kernel.eval(x);
            assert!(
                (kernel.eval(-x) + v).norm() <= 1e-12 * v.norm().max(1e-300),
                "oddness {} at {x:?}",
                kernel.name()
            );
            let lambda = rng.gen_range(0.25..4.0);
            let scaled = kernel.eval(x.scale(lambda));
            let predicted = v.scale(lambda.powi(-(kernel.n() as i32)));
            assert!(
                (scaled - predicted).norm() <= 1e-12 * predicted.norm(),
                "homogeneity {} at {x:?}",
                kernel.name()
            );
        }
    }
    println!("criterion 4 PASS: atom-pair cancellation 1e-12, reflection 1e-9 x20, oddness/homogeneity 1e-12 x1e6");
}

/// Criterion 5: sampled cone diagnostics decay along a halving ladder.
#[test]
fn criterion_5_diagnostic_decay() {
    let config = ExperimentConfig::new(
        circle_scene(Density::constant(1.0)),
        KernelChoice::Riesz { n: 1 },
        2,
    );
    let deltas = [0.032, 0.016, 0.008, 0.004, 0.002];
    let table = diagnostic_sweep(&config, &deltas, 8).unwrap();
    let points: Vec<usize> = {
        let mut ids: Vec<usize> = table.rows.iter().map(|r| r.point_id).collect();
        ids.sort_unstable();
        ids.dedup();
        ids
    };
    for id in points {
        let rows: Vec<_> = table.rows.iter().filter(|r| r.point_id == id).collect();
        assert_eq!(rows.len(), deltas.len());
        for w in rows.windows(2) {
            assert!(
                w[1].s_sum <= w[0].s_sum * 1.1 + 1e-15,
                "S_sum not decaying at point {id}"
            );
            assert!(
                w[1].s_diff <= w[0].s_diff * 1.1 + 1e-15,
                "S_diff not decaying at point {id}"
            );
        }
        let last = rows.last().unwrap();
        assert!(last.s_sum < 1e-2, "final S {}", last.s_sum);
        assert!(last.s_diff < 1e-2, "final S~ {}", last.s_diff);
    }
    println!("criterion 5 PASS: S and S~ non-increasing over 5 halvings, final < 1e-2");
}

/// Criterion 6: byte-identical reports, timestamp excluded, regardless
/// of the thread cap.
#[test]
fn criterion_6_determinism() {
    let config = ExperimentConfig::new(
        circle_scene(Density::Trig {
            coefficients: vec![1.0, 0.3],
        }),
        KernelChoice::Riesz { n: 1 },
        4,
    );
    std::env::set_var("JUMPLAB_THREADS", "1");
    let first = run_experiment(&config).unwrap();
    let second = run_experiment(&config).unwrap();
    std::env::set_var("JUMPLAB_THREADS", "4");
    let third = run_experiment(&config).unwrap();
    std::env::remove_var("JUMPLAB_THREADS");
    let fourth = run_experiment(&config).unwrap();

    let a = first.to_json_without_timestamp();
    assert_eq!(a, second.to_json_without_timestamp(), "rerun differs");
    assert_eq!(a, third.to_json_without_timestamp(), "4 threads differ");
    assert_eq!(a, fourth.to_json_without_timestamp(), "default pool differs");
    assert_eq!(first.to_csv(), third.to_csv());
    println!("criterion 6 PASS: reports byte-identical across reruns and thread counts");
}

/// Criterion 7: principal values on the circle against a brute-force
/// Riemann oracle with symmetric exclusion.
#[test]
fn criterion_7_pv_oracle_on_circle() {
    let kernel = Kernel::riesz(1).unwrap();
    let measure = RadonMeasure::hausdorff(RectifiableSet::circle(Vec3::ZERO, 1.0));
    let cfg = ExtrapolationConfig::for_diameter(2.0);
    for i in 0..8 {
        let theta = 0.3 + i as f64 * (2.0 * PI - 0.6) / 8.0;
        let x = Vec3::xy(theta.cos(), theta.sin());
        let pv = jumplab::operators::principal_value(&kernel, &measure, x, &cfg).unwrap();
        assert!(pv.converged);

        // Oracle: million-node Riemann sum, symmetric node layout
        // around θ so the singular tangential part cancels exactly.
        let k_half = 500_000i64;
        let sp = 2.0 * PI / (2 * k_half + 1) as f64;
        let mut oracle = Vec3::ZERO;
        for k in 1..=k_half {
            for sign in [-1.0, 1.0] {
                let t = theta + sign * k as f64 * sp;
                let ypt = Vec3::xy(t.cos(), t.sin());
                oracle += kernel.eval(x - ypt).scale(sp);
            }
        }
        let expected = x.scale(PI); // π · N_outward
        assert!(
            (pv.value() - expected).norm() < 1e-4,
            "pv vs closed form at theta={theta}: {:?}",
            pv.value()
        );
        assert!(
            (pv.value() - oracle).norm() < 1e-4,
            "pv vs oracle at theta={theta}: {:?} vs {oracle:?}",
            pv.value()
        );
        assert!((oracle - expected).norm() < 1e-4);
    }
    println!("criterion 7 PASS: circle pv = pi*N within 1e-4 against 1e6-node Riemann oracle");
}
