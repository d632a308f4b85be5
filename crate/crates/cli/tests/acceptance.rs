// Copyright 2026 the minkowski-geometry Authors
// SPDX-License-Identifier: Apache-2.0 OR MIT

//! Acceptance gate: one test per criterion, each printing its own
//! pass/fail line in the harness output. Tolerances are pinned here as
//! constants; the fixtures mirror the spec files in `specs/`.

use minkowski_core::blaschke::blaschke_at;
use minkowski_core::indicatrix::{sample_surface, Chart, SphereGrid};
use minkowski_core::indicatrix::centro_affine_connection;
use minkowski_core::linalg::{self, Mat};
use minkowski_core::navigation::{randers_det_g, randers_pair_from_navigation};
use minkowski_core::norm::{sample_directions, MatsumotoCoeff, NormSpec, PhiSpec};
use minkowski_core::section::{darboux_profile, induced_tensors, sweep_shifts, SectionSpec};
use minkowski_core::volumes::{ball_volume, omega, volume_report, VolumeReport};
use std::path::PathBuf;
use std::process::Command;

const COEFF: MatsumotoCoeff = MatsumotoCoeff::TraceFree;

fn grid(dim: usize, res: usize) -> SphereGrid {
    SphereGrid::new(dim, res).unwrap()
}

fn report(spec: &NormSpec, res: usize) -> VolumeReport {
    volume_report(spec, &grid(spec.dim, res), COEFF).unwrap()
}

fn euclid3() -> NormSpec {
    NormSpec::euclidean(Mat::identity(3))
}

/// The unit-speed translated ball: base Euclidean unit sphere, shifted by
/// the navigation field W = (0, 0, 1/2).
fn nav_shift() -> Vec<f64> {
    vec![0.0, 0.0, 0.5]
}

fn translated_ball3() -> NormSpec {
    NormSpec::navigation(euclid3(), nav_shift())
}

fn darboux_true3() -> NormSpec {
    NormSpec::navigation(
        NormSpec::alpha_beta(
            Mat::identity(3),
            vec![0.0, 0.0, 0.5],
            PhiSpec::Quadratic { epsilon: 0.1 },
        ),
        vec![0.0, 0.1, 0.2],
    )
}

fn darboux_sheared3() -> NormSpec {
    NormSpec::alpha_beta(
        Mat::from_rows(&[
            vec![1.1225, -0.0525, 0.35],
            vec![-0.0525, 1.0225, -0.15],
            vec![0.35, -0.15, 1.0],
        ]),
        vec![0.175, -0.075, 0.5],
        PhiSpec::Quadratic { epsilon: 0.6 },
    )
}

// --- deterministic pseudo-random fixtures -------------------------------

fn splitmix(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn unit(state: &mut u64) -> f64 {
    (splitmix(state) >> 11) as f64 * (1.0 / 9_007_199_254_740_992.0)
}

fn random_direction(state: &mut u64, dim: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| 2.0 * unit(state) - 1.0).collect();
        let n = linalg::norm2(&v);
        if (0.1..=1.0).contains(&n) {
            return linalg::scaled(&v, 1.0 / n);
        }
    }
}

/// Seeded curved, non-quadratic, non-Randers norms with profile strength
/// ε ∈ [0.05, 0.2]: far enough from the equality class that every margin
/// is strictly positive, close enough that all of them stay admissible.
fn seeded_spec(k: u64) -> NormSpec {
    let mut s = 0xA076_1D64_78BD_642F ^ (k.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let _ = splitmix(&mut s);
    let eps = 0.05 + 0.15 * unit(&mut s);
    let b_norm = 0.35 + 0.25 * unit(&mut s);
    let b_dir = random_direction(&mut s, 3);
    let v = random_direction(&mut s, 3);
    // q = I + 0.2 vvᵀ is symmetric positive definite for every v.
    let mut q = Mat::identity(3);
    for i in 0..3 {
        for j in 0..3 {
            q[(i, j)] += 0.2 * v[i] * v[j];
        }
    }
    let b = linalg::scaled(&b_dir, b_norm);
    let phi = if k % 2 == 0 {
        PhiSpec::Quadratic { epsilon: eps }
    } else {
        // The exponential profile is closer to the equality class at equal
        // ε, so keep its strength at the top of the allowed band.
        PhiSpec::Exponential { epsilon: 0.14 + 0.06 * unit(&mut s) }
    };
    NormSpec::alpha_beta(q, b, phi)
}

// --- criterion 1: flat suite --------------------------------------------

#[test]
fn a1_flat_norm_is_exactly_flat() {
    let spec = euclid3();
    for u in sample_directions(3, 40) {
        let t = spec.tensors(&u).unwrap();
        assert!(t.max_abs_cartan() <= 1e-10);
        let i_norm = linalg::norm2(&t.cartan_form);
        assert!(i_norm <= 1e-10, "cartan form {i_norm:e}");
        assert!(t.max_abs_matsumoto(COEFF) <= 1e-10);
        assert!(t.distortion(1.0).abs() <= 1e-10);

        let sample = blaschke_at(&spec, &Chart::standard(&u), 1.0, COEFF).unwrap();
        for lambda in &sample.principal_curvatures {
            assert!((lambda - 1.0).abs() <= 1e-6, "principal {lambda}");
        }
        for l in &sample.mean_curvatures {
            assert!((l - 1.0).abs() <= 1e-6, "mean curvature {l}");
        }
        assert!((sample.surface.gauss_curvature - 1.0).abs() <= 1e-8);
    }

    let r = report(&spec, 24);
    let sphere_area = 4.0 * std::f64::consts::PI;
    let ball = sphere_area / 3.0;
    assert!((r.affine_area - sphere_area).abs() <= 1e-6 * sphere_area);
    assert!((r.euclidean_area - sphere_area).abs() <= 1e-6 * sphere_area);
    for v in r.mixed_volumes.iter().chain(&r.mixed_volumes_fitted) {
        assert!((v - ball).abs() <= 1e-6 * ball, "V_k {v}");
    }
    println!("flat suite: torsions 0, curvatures 1, S = 4π, V_k = 4π/3");
}

// --- criterion 2: translated-ball suite ---------------------------------

#[test]
fn a2_translated_ball_matches_every_closed_form() {
    let nav = translated_ball3();
    let (a, b) = randers_pair_from_navigation(&Mat::identity(3), &nav_shift()).unwrap();
    let randers = NormSpec::randers(a.clone(), b.clone());

    let mut state = 17u64;
    for _ in 0..50 {
        let y = random_direction(&mut state, 3);
        // Implicit navigation solve against the closed-form norm.
        let (f_nav, f_cf) = (nav.f(&y), randers.f(&y));
        assert!((f_nav - f_cf).abs() <= 1e-9 * f_cf, "{f_nav} vs {f_cf}");
        // Fundamental determinant against its closed form.
        let det = nav.tensors(&y).unwrap().det_g;
        let det_cf = randers_det_g(&a, &b, &y);
        assert!((det - det_cf).abs() <= 1e-7 * det_cf.abs());
        // No trace-free torsion anywhere on a Randers norm.
        assert!(nav.tensors(&y).unwrap().max_abs_matsumoto(COEFF) <= 1e-8);
    }
    // Determinant spot value at the north pole.
    let det_pole = nav.tensors(&[0.0, 0.0, 1.0]).unwrap().det_g;
    assert!((det_pole - 16.0).abs() <= 1e-7 * 16.0, "det g at pole {det_pole}");

    let r = report(&nav, 24);
    assert!((r.sigma - 1.0).abs() <= 1e-7, "sigma {}", r.sigma);
    let sphere_area = 4.0 * std::f64::consts::PI;
    assert!((r.affine_area - sphere_area).abs() <= 1e-4 * sphere_area);
    assert!(r.l1_range.0 >= 1.0 - 1e-4 && r.l1_range.1 <= 1.0 + 1e-4);
    assert!(r.isoperimetric_margin.abs() <= 1e-4);
    let curvature_margin = r.curvature_integral_margin.expect("curvature stays positive");
    assert!(curvature_margin.abs() <= 1e-4);

    // Affine normal of a translated round sphere points at its center.
    let shift = nav_shift();
    let mut state = 5u64;
    for _ in 0..25 {
        let u = random_direction(&mut state, 3);
        let s = blaschke_at(&nav, &Chart::standard(&u), r.sigma, COEFF).unwrap();
        for a_idx in 0..3 {
            let expected = -(s.surface.point[a_idx] + shift[a_idx]);
            assert!((s.xi[a_idx] - expected).abs() <= 1e-5, "xi component");
        }
        for l in &s.mean_curvatures {
            assert!((l - 1.0).abs() <= 1e-4, "L_r {l}");
        }
    }
    println!("translated ball: closed forms, sigma = 1, xi = -(y+W), L_r = 1, margins 0");
}

// --- criterion 3: strict-inequality suite -------------------------------

#[test]
fn a3_seeded_curved_norms_keep_strict_margins() {
    for k in 0..5u64 {
        let spec = seeded_spec(k);
        spec.validate().unwrap();
        let r = report(&spec, 32);
        assert!(
            r.isoperimetric_margin > 1e-11,
            "spec {k}: isoperimetric margin {:e} not strictly positive",
            r.isoperimetric_margin
        );
        let curvature_margin = r
            .curvature_integral_margin
            .unwrap_or_else(|| panic!("spec {k}: curvature left the real domain"));
        assert!(
            curvature_margin > 1e-11,
            "spec {k}: curvature-integral margin {curvature_margin:e}"
        );
        for &(a, b, m) in &r.power_inequality_margins {
            assert!(m >= -1e-6, "spec {k}: power margin ({a},{b}) = {m:e}");
        }
        println!(
            "seeded spec {k}: isoperimetric {:.3e}, curvature-integral {:.3e}, min power {:.3e}",
            r.isoperimetric_margin,
            curvature_margin,
            r.power_inequality_margins
                .iter()
                .map(|&(_, _, m)| m)
                .fold(f64::INFINITY, f64::min)
        );
    }
}

// --- criterion 4: mixed volumes, two independent routes ------------------

#[test]
fn a4_mixed_volumes_agree_between_integral_and_fit() {
    let mut suite: Vec<(String, NormSpec)> = vec![
        ("euclidean".into(), euclid3()),
        ("translated ball".into(), translated_ball3()),
    ];
    for k in 0..5u64 {
        suite.push((format!("seeded {k}"), seeded_spec(k)));
    }
    for (name, spec) in &suite {
        let r = report(spec, 24);
        assert!(r.fit_residual <= 1e-8, "{name}: residual {:e}", r.fit_residual);
        for (v_int, v_fit) in r.mixed_volumes.iter().zip(&r.mixed_volumes_fitted) {
            assert!(
                (v_int - v_fit).abs() <= 1e-4 * v_int.abs(),
                "{name}: {v_int} vs {v_fit}"
            );
        }
        println!("{name}: V_k integral vs fit agree, residual {:.3e}", r.fit_residual);
    }
}

// --- criterion 5: pointwise structural identities ------------------------

/// Pullback of the ambient angular metric onto the chart tangents at
/// chart coordinates θ, for finite-difference derivatives in θ.
fn h_in_chart(spec: &NormSpec, chart: &Chart, theta: &[f64]) -> Mat {
    let d = spec.dim;
    let n = d - 1;
    let mut w = chart.base.clone();
    for (i, t) in theta.iter().enumerate() {
        linalg::axpy(*t, &chart.frame[i], &mut w);
    }
    let f = spec.f(&w);
    let grad = spec.gradient(&w);
    let tangents: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let df = linalg::dot(&grad, &chart.frame[i]);
            (0..d).map(|a| chart.frame[i][a] / f - w[a] * df / (f * f)).collect()
        })
        .collect();
    let amb = spec.tensors(&w).unwrap();
    let mut h = Mat::zeros(n, n);
    for i in 0..n {
        let hv = amb.h.matvec(&tangents[i]);
        for j in 0..=i {
            h[(i, j)] = linalg::dot(&hv, &tangents[j]);
            h[(j, i)] = h[(i, j)];
        }
    }
    h
}

#[test]
fn a5_structural_identities_hold_at_random_points() {
    let suite: Vec<(&str, NormSpec)> = vec![
        ("euclidean", euclid3()),
        ("translated ball", translated_ball3()),
        (
            "quadratic profile",
            NormSpec::alpha_beta(
                Mat::identity(3),
                vec![0.0, 0.0, 0.5],
                PhiSpec::Quadratic { epsilon: 0.1 },
            ),
        ),
        (
            "exponential profile",
            NormSpec::alpha_beta(
                Mat::identity(3),
                vec![0.0, 0.0, 0.4],
                PhiSpec::Exponential { epsilon: 0.15 },
            ),
        ),
    ];
    for (name, spec) in &suite {
        let sigma = omega(3) / ball_volume(spec, &grid(3, 16)).unwrap();
        let mut state = 0xC0FFEE ^ name.len() as u64;
        for _ in 0..100 {
            let u = random_direction(&mut state, 3);
            let chart = Chart::standard(&u);
            let surf = sample_surface(spec, &chart).unwrap();
            let r = &surf.point;
            let amb = spec.tensors(r).unwrap();
            let n = 2;

            // Frame Gram identity: the chart tangents and the position
            // vector are g-orthogonal with Gram matrix diag(h, 1).
            for i in 0..n {
                let gv = amb.g.matvec(&surf.tangents[i]);
                assert!(linalg::dot(&gv, r).abs() <= 1e-8, "{name}: mixed Gram");
                for j in 0..n {
                    let gram = linalg::dot(&gv, &surf.tangents[j]);
                    assert!(
                        (gram - surf.h_pullback[(i, j)]).abs() <= 1e-8,
                        "{name}: tangent Gram"
                    );
                }
            }
            let grr = linalg::dot(&amb.g.matvec(r), r);
            assert!((grr - 1.0).abs() <= 1e-8, "{name}: unit Gram {grr}");

            // Mean Cartan form is the differential of the distortion.
            let v = random_direction(&mut state, 3);
            let delta = 1e-4;
            let tau = |y: &[f64]| 0.5 * spec.tensors(y).unwrap().det_g.ln();
            let mut yp = r.clone();
            linalg::axpy(delta, &v, &mut yp);
            let mut ym = r.clone();
            linalg::axpy(-delta, &v, &mut ym);
            let dtau = (tau(&yp) - tau(&ym)) / (2.0 * delta);
            let i_of_v = linalg::dot(&amb.cartan_form, &v) / spec.f(r);
            assert!((dtau - i_of_v).abs() <= 1e-6, "{name}: dtau {dtau} vs {i_of_v}");

            // Covariant derivative of the angular pullback is twice the
            // Cartan pullback for the connection the decomposition of
            // second derivatives actually induces.
            let ca = centro_affine_connection(spec, &chart).unwrap();
            let h0 = h_in_chart(spec, &chart, &[0.0, 0.0]);
            for i in 0..n {
                for j in 0..n {
                    assert!(
                        (ca.h_from_decomposition[(i, j)] - h0[(i, j)]).abs() <= 1e-8,
                        "{name}: two routes to h"
                    );
                }
            }
            let dh: Vec<Mat> = (0..n)
                .map(|k| {
                    let mut tp = [0.0, 0.0];
                    tp[k] = delta;
                    let mut tm = [0.0, 0.0];
                    tm[k] = -delta;
                    let hp = h_in_chart(spec, &chart, &tp);
                    let hm = h_in_chart(spec, &chart, &tm);
                    let mut d = Mat::zeros(n, n);
                    for i in 0..n {
                        for j in 0..n {
                            d[(i, j)] = (hp[(i, j)] - hm[(i, j)]) / (2.0 * delta);
                        }
                    }
                    d
                })
                .collect();
            let gamma = |i: usize, j: usize, k: usize| ca.gamma[(i * n + j) * n + k];
            for k in 0..n {
                for i in 0..n {
                    for j in 0..n {
                        let mut nabla = dh[k][(i, j)];
                        for m in 0..n {
                            nabla -= gamma(k, i, m) * h0[(m, j)];
                            nabla -= gamma(k, j, m) * h0[(i, m)];
                        }
                        let mut a_pull = 0.0;
                        for (a, ea) in surf.tangents[k].iter().enumerate() {
                            for (bb, eb) in surf.tangents[i].iter().enumerate() {
                                for (c, ec) in surf.tangents[j].iter().enumerate() {
                                    a_pull += ea * eb * ec * amb.cartan_at(a, bb, c);
                                }
                            }
                        }
                        assert!(
                            (nabla - 2.0 * a_pull).abs() <= 1e-5,
                            "{name}: cubic form {nabla} vs {}",
                            2.0 * a_pull
                        );
                    }
                }
            }

            // Derivative of the affine normal against the shape operator,
            // and the dual routes to the Gauss curvature.
            let sample = blaschke_at(spec, &chart, sigma, COEFF).unwrap();
            assert!(sample.equiaffine_defect <= 1e-5, "{name}: xi derivative");
            let k_dual = surf.support.powi(n as i32) * surf.det_h / surf.det_gram;
            assert!(
                (surf.gauss_curvature - k_dual).abs() <= 1e-8 * surf.gauss_curvature.abs(),
                "{name}: K two routes"
            );
        }
        println!("{name}: 100 random points, all pointwise identities hold");
    }
}

// --- criterion 6: section constancy -------------------------------------

#[test]
fn a6_section_constancy_separates_profile_norms() {
    let axis = SectionSpec::new(vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]).unwrap();
    let n_samples = 16;
    let res = 32;

    // A norm with a symmetry plane passes on every random shift.
    let true_spec = darboux_true3();
    let shifts = sweep_shifts(&true_spec, 5, 11);
    let mut max_dev = 0.0f64;
    let mut max_cubic = 0.0f64;
    for shift in &shifts {
        let rep = darboux_profile(&true_spec, &axis, shift, n_samples, res).unwrap();
        max_dev = max_dev.max(rep.profile.dev);
        max_cubic = max_cubic.max(rep.max_cubic);
    }
    assert!(max_dev <= 1e-5, "true spec max dev {max_dev:e}");
    assert!(max_cubic <= 1e-5, "true spec max cubic {max_cubic:e}");
    println!("symmetry-plane spec: max dev {max_dev:.2e}, max cubic {max_cubic:.2e}");

    // The sheared counterexample fails both statistics decisively.
    let sheared = darboux_sheared3();
    let shifts = sweep_shifts(&sheared, 5, 11);
    let mut max_dev = 0.0f64;
    let mut max_cubic = 0.0f64;
    for shift in &shifts {
        let rep = darboux_profile(&sheared, &axis, shift, n_samples, res).unwrap();
        max_dev = max_dev.max(rep.profile.dev);
        max_cubic = max_cubic.max(rep.max_cubic);
    }
    assert!(max_dev >= 1e-3, "sheared max dev {max_dev:e}");
    assert!(max_cubic >= 1e-3, "sheared max cubic {max_cubic:e}");
    println!("sheared spec: max dev {max_dev:.2e}, max cubic {max_cubic:.2e}");

    // Restriction identities: the induced plane tensors are pullbacks.
    for spec in [&true_spec, &sheared] {
        for k in 0..20 {
            let theta = 0.13 + 2.0 * std::f64::consts::PI * k as f64 / 20.0;
            let c = [theta.cos(), theta.sin()];
            let plane = induced_tensors(spec, &axis, &c).unwrap();
            let point = axis.embed(&c);
            let amb = spec.tensors(&point).unwrap();
            let w = &axis.basis;
            for i in 0..2 {
                for j in 0..2 {
                    let g_pull = linalg::dot(&amb.g.matvec(&w[j]), &w[i]);
                    assert!((plane.g[(i, j)] - g_pull).abs() <= 1e-10 * g_pull.abs().max(1.0));
                    let h_pull = linalg::dot(&amb.h.matvec(&w[j]), &w[i]);
                    assert!((plane.h[(i, j)] - h_pull).abs() <= 1e-10 * h_pull.abs().max(1.0));
                    for l in 0..2 {
                        let mut a_pull = 0.0;
                        for (a, wa) in w[i].iter().enumerate() {
                            for (bb, wb) in w[j].iter().enumerate() {
                                for (cc, wc) in w[l].iter().enumerate() {
                                    a_pull += wa * wb * wc * amb.cartan_at(a, bb, cc);
                                }
                            }
                        }
                        assert!((plane.cartan_at(i, j, l) - a_pull).abs() <= 1e-10);
                    }
                }
            }
            // Plane norms carry no trace-free torsion at all.
            assert!(plane.max_abs_matsumoto(COEFF) <= 1e-8);
        }
    }
    println!("restriction identities and plane-torsion vanishing hold");
}

// --- criterion 7: quadrature convergence ---------------------------------

#[test]
fn a7_doubling_resolution_is_converged() {
    for (name, spec) in [("euclidean", euclid3()), ("translated ball", translated_ball3())] {
        let coarse = report(&spec, 24);
        let fine = report(&spec, 48);
        let ds = (coarse.affine_area - fine.affine_area).abs() / fine.affine_area;
        assert!(ds <= 1e-6, "{name}: affine area moved by {ds:e}");
        for (vc, vf) in coarse.mixed_volumes.iter().zip(&fine.mixed_volumes) {
            let dv = (vc - vf).abs() / vf.abs();
            assert!(dv <= 1e-6, "{name}: V_k moved by {dv:e}");
        }
        println!("{name}: S and V_k stable to 1e-6 under resolution doubling");
    }
}

// --- criterion 8: reproducible byte-identical reports --------------------

fn repo_spec(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../specs").join(name)
}

fn run_cli(args: &[&str]) {
    let status = Command::new(env!("CARGO_BIN_EXE_minkowski"))
        .args(args)
        .status()
        .expect("spawn CLI");
    assert!(status.success(), "CLI failed: {args:?}");
}

#[test]
fn a8_reproducible_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let spec = repo_spec("randers3.json");
    let spec = spec.to_str().unwrap();

    for out in ["a", "b"] {
        run_cli(&[
            "report",
            "--spec",
            spec,
            "--resolution",
            "12",
            "--reproducible",
            "--out",
            dir.path().join(out).to_str().unwrap(),
        ]);
    }
    for suffix in [".report.json", ".report.indicatrix.csv"] {
        let a = std::fs::read(dir.path().join(format!("a{suffix}"))).unwrap();
        let b = std::fs::read(dir.path().join(format!("b{suffix}"))).unwrap();
        assert!(a == b, "{suffix} differs between identical runs");
        assert!(!a.is_empty());
    }

    let dspec = repo_spec("darboux_true3.json");
    let dspec = dspec.to_str().unwrap();
    for out in ["da", "db"] {
        run_cli(&[
            "darboux",
            "--spec",
            dspec,
            "--resolution",
            "16",
            "--samples",
            "8",
            "--shifts",
            "2",
            "--seed",
            "9",
            "--reproducible",
            "--out",
            dir.path().join(out).to_str().unwrap(),
        ]);
    }
    for suffix in [".darboux.json", ".darboux.shift0.csv", ".darboux.shift2.csv"] {
        let a = std::fs::read(dir.path().join(format!("da{suffix}"))).unwrap();
        let b = std::fs::read(dir.path().join(format!("db{suffix}"))).unwrap();
        assert!(a == b, "{suffix} differs between identical runs");
    }
    println!("reports and plot data are byte-identical under --reproducible");
}
