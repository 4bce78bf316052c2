//! Exit criteria. Runs every criterion concurrently, prints one line each and
//! fails the target if any criterion fails.

mod common;

use std::fs;
use std::process::ExitCode;
use std::sync::OnceLock;

use common::*;
use ks2d::calculus::{advection, divergence, perp_curl, speed_sq};
use ks2d::diagnostics::{
    energy_budget, galilean_shift, mean_ode_residual, particle_advance, DiagnosticsRecord, LinearInTime, Monitor,
    MonitorParams, ParticleRecord,
};
use ks2d::harness::{build_initial, read_snapshot, resume, run_to_dir, snapshot_path, InitSpec, RunConfig};
use ks2d::models::{rhs, CastrateConstraints};
use ks2d::timestep::{run, Collect, RunObserver, RunPlan, Scheme, Stepper, StepperConfig};
use ks2d::{Grid, ModelKind, ModelSpec, PointSet, Result, SpectralField, State, VectorField};
use num_complex::Complex64;
use rand::Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

#[derive(Default)]
struct Records(Vec<DiagnosticsRecord>);

impl RunObserver for Records {
    fn on_sample(&mut self, _: &State, r: &DiagnosticsRecord) -> Result<()> {
        self.0.push(*r);
        Ok(())
    }
}

fn random_init(k_max: f64, amplitude: f64, seed: u64) -> InitSpec {
    InitSpec::RandomCurlFree { k_max, amplitude, seed }
}

fn records_of(spec: ModelSpec, u0: VectorField, stepper: StepperConfig, diag_every: u64) -> Result<Vec<DiagnosticsRecord>> {
    let plan = RunPlan {
        stepper,
        diag_every,
        snap_every: 0,
    };
    let mut mon = Monitor::new(spec, MonitorParams::from_model(&spec));
    let mut obs = Records::default();
    run(&plan, State::new(0.0, u0, spec), &mut mon, &mut obs, true)?;
    Ok(obs.0)
}

fn identity_suite() -> Outcome {
    let g = Grid::new(64).unwrap();
    let spec = ModelSpec::new(ModelKind::Kse, 2.0);
    let mut r = rng(101);
    let (mut ibp, mut closure, mut plancherel, mut oracle) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for case in 0..100 {
        let u = random_curl_free(g, 8.0, &mut r);
        let a = advection(&u, &u).inner(&u);
        let b = 0.5 * divergence(&u).inner(&speed_sq(&u));
        ibp = ibp.max((a + b).abs() / a.abs().max(b.abs()));

        let p = physical(&u, 64);
        oracle = oracle.max(rel(a, trilinear(&p, &p, &p))).max(rel(b, transport(&p)));

        let cut = [2.0, 3.0, 4.5, 6.5][case % 4];
        let eb = energy_budget(&u, &spec, cut);
        closure = closure.max(eb.closure_residual());
        let (pl, ph) = (physical(&vlow(&u, cut), 64), physical(&vhigh(&u, cut), 64));
        let terms = [
            -trilinear(&pl, &pl, &pl),
            -trilinear(&pl, &ph, &pl),
            -trilinear(&ph, &p, &pl),
            -trilinear(&p, &p, &ph),
        ];
        let lib = [eb.i_a, eb.i_b, eb.i_c, eb.ii];
        let scale: f64 = terms.iter().map(|t| t.abs()).sum();
        for (l, o) in lib.iter().zip(&terms) {
            oracle = oracle.max((l - o).abs() / scale);
        }
        let sum: f64 = terms.iter().sum();
        closure = closure.max((sum - transport(&p)).abs() / scale);

        let energy: Vec<f64> = (0..64 * 64).map(|i| p.u[0][i].powi(2) + p.u[1][i].powi(2)).collect();
        plancherel = plancherel.max(rel(quad(&energy), u.l2_norm().powi(2)));
    }
    outcome(
        ibp < 1e-10 && closure < 1e-9 && plancherel < 1e-10 && oracle < 1e-10,
        format!("ibp {ibp:.2e} (<1e-10), closure {closure:.2e} (<1e-9), plancherel {plancherel:.2e} (<1e-10), vs quadrature {oracle:.2e}"),
    )
}

fn bernstein_interpolation() -> Outcome {
    let g = Grid::new(32).unwrap();
    let mut r = rng(202);
    let within = |lhs: f64, rhs: f64| lhs <= rhs * (1.0 + 1e-12) + 1e-12;
    let mut violations = 0;
    let mut checks = 0;
    for _ in 0..1000 {
        let k_max = r.random_range(1.0..15.0);
        let phi = random_scalar(g, k_max, false, &mut r);
        let mut ks = [r.random_range(0.0..4.0), r.random_range(0.0..4.0)];
        ks.sort_by(f64::total_cmp);
        let [k, kp] = ks;
        let n = [1.0, 2.0, 4.0, 8.0][r.random_range(0..4)];
        let d_k = phi.fractional_laplacian(k).unwrap().l2_norm();
        let d_kp = phi.fractional_laplacian(kp).unwrap().l2_norm();
        let lo = phi.project_low(n).sobolev_norm(kp, true);
        let hi = phi.project_high(n).sobolev_norm(k, true);
        violations += usize::from(!within(lo, n.powf(kp - k) * d_k));
        violations += usize::from(!within(hi, n.powf(-(kp - k)) * d_kp));

        let psi = phi.fluctuation();
        let mut ks = [
            r.random_range(-2.0..4.0),
            r.random_range(-2.0..4.0),
            r.random_range(-2.0..4.0),
        ];
        ks.sort_by(f64::total_cmp);
        let [k1, kk, k2] = ks;
        if k2 > k1 {
            let theta = (kk - k1) / (k2 - k1);
            let lhs = psi.fractional_laplacian(kk).unwrap().l2_norm();
            let rhs = psi.sobolev_norm(k2, true).powf(theta) * psi.sobolev_norm(k1, true).powf(1.0 - theta);
            violations += usize::from(!within(lhs, rhs));
            checks += 1;
        }
        checks += 2;
    }
    outcome(violations == 0, format!("{violations} violations in {checks} checks over 1000 cases"))
}

fn energy_balance() -> Outcome {
    let g = Grid::new(64).unwrap();
    let mut r = rng(303);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let lambda = r.random_range(0.0..5.0);
        let spec = ModelSpec::new(ModelKind::Kse, lambda);
        let u = random_vector(g, 8.0, false, &mut r);
        let lhs = rhs(&spec, &u).unwrap().inner(&u);
        let lap = |f: &SpectralField| filter(f, |a, b| (-((a * a + b * b) as f64)).into());
        let (l1, l2) = (synthesize(&lap(&u.u1), 64), synthesize(&lap(&u.u2), 64));
        let p = physical(&u, 64);
        let lap_sq = quad(&(0..64 * 64).map(|i| l1[i] * l1[i] + l2[i] * l2[i]).collect::<Vec<_>>());
        let lap_u = quad(&(0..64 * 64).map(|i| l1[i] * p.u[0][i] + l2[i] * p.u[1][i]).collect::<Vec<_>>());
        let tr = transport(&p);
        let residual = lhs + lap_sq + lambda * lap_u - tr;
        let scale = lhs.abs() + lap_sq + (lambda * lap_u).abs() + tr.abs();
        worst = worst.max(residual.abs() / scale);
    }
    outcome(worst < 1e-9, format!("max relative residual {worst:.2e} (<1e-9) over 50 fields"))
}

/// kse λ = 2.5, n = 64, h = 1e-3, T = 10 at the given diagnostics cadence.
fn kse_desk_run(diag_every: u64) -> Vec<DiagnosticsRecord> {
    let g = Grid::new(64).unwrap();
    let spec = ModelSpec::new(ModelKind::Kse, 2.5);
    let u0 = build_initial(&random_init(8.0, 1.0, 5), g).unwrap();
    records_of(spec, u0, StepperConfig::new(1e-3, 10.0), diag_every).unwrap()
}

static FINE_RUN: OnceLock<Vec<DiagnosticsRecord>> = OnceLock::new();

fn curl_persistence() -> Outcome {
    let recs = FINE_RUN.get_or_init(|| kse_desk_run(10));
    let worst = recs.iter().map(|r| r.curl_sup).fold(0.0, f64::max);
    let u0 = build_initial(&random_init(8.0, 1.0, 5), Grid::new(64).unwrap()).unwrap();
    let initial = perp_curl(&u0).max_abs_physical();
    outcome(
        worst <= 1e-8,
        format!("max |curl| {worst:.2e} (<=1e-8) over {} samples, initial {initial:.1e}", recs.len()),
    )
}

fn bse_max_principle() -> Outcome {
    let g = Grid::new(64).unwrap();
    let lambda = 1.0;
    let spec = ModelSpec::new(ModelKind::BurgersSivashinsky, lambda);
    let u0 = build_initial(&random_init(8.0, 1.0, 7), g).unwrap();
    let recs = records_of(spec, u0, StepperConfig::new(1e-3, 5.0), 10).unwrap();
    let d0 = recs[0].div_sup.max(0.0);
    let excess = recs
        .iter()
        .map(|r| r.div_plus_sup - ((lambda * r.t).exp() * d0 + 1e-6))
        .fold(f64::NEG_INFINITY, f64::max);
    outcome(
        excess <= 0.0,
        format!("max of div_plus_sup - bound {excess:.3e} (<=0) over {} samples", recs.len()),
    )
}

fn burgers_particles() -> Outcome {
    let n = 128;
    let h = 2e-3;
    let g = Grid::new(n).unwrap();
    let spec = ModelSpec::new(ModelKind::BurgersInviscid, 0.0);
    let u0 = build_initial(&random_init(2.0, 1.0, 1), g).unwrap();

    // T* = -1 / min eigenvalue of the symmetric ∇u₀, on a 2× refined grid
    let m = 2 * n;
    let d11 = synthesize(&dx(&u0.u1, 0), m);
    let d12 = synthesize(&dx(&u0.u2, 0), m);
    let d22 = synthesize(&dx(&u0.u2, 1), m);
    let min_eig = (0..m * m)
        .map(|i| {
            let (tr, det) = (d11[i] + d22[i], d11[i] * d22[i] - d12[i] * d12[i]);
            tr / 2.0 - (tr * tr / 4.0 - det).max(0.0).sqrt()
        })
        .fold(f64::INFINITY, f64::min);
    let t_shock = -1.0 / min_eig;
    let steps = (0.8 * t_shock / h).floor() as usize;

    let pts = PointSet::new((0..100).map(|k| {
        let (i, j) = ((k / 10) as f64, (k % 10) as f64);
        [(i + 0.5) * 0.2 * std::f64::consts::PI, (j + 0.37) * 0.2 * std::f64::consts::PI]
    }));
    let stepper = Stepper::new(&StepperConfig::new(h, steps as f64 * h).with_scheme(Scheme::Rk4), spec, g).unwrap();
    let mut s = State::new(0.0, u0, spec);
    let mut p = ParticleRecord::seed(0.0, pts, &s.u);
    let (mut rise, mut omega) = (0.0f64, p.omega_along.iter().fold(0.0f64, |a, w| a.max(w.abs())));
    for _ in 0..steps {
        let next = stepper.step(&s).unwrap();
        let q = particle_advance(
            &p,
            &LinearInTime {
                t0: s.t,
                u0: &s.u,
                t1: next.t,
                u1: &next.u,
            },
            h,
        );
        for i in 0..q.delta_along.len() {
            rise = rise.max(q.delta_along[i] - p.delta_along[i]);
            omega = omega.max(q.omega_along[i].abs());
        }
        p = q;
        s = next;
    }
    outcome(
        rise <= 1e-4 && omega <= 1e-8,
        format!(
            "T* = {t_shock:.4}, ran to t = {:.4}; max delta increase {rise:.2e} (<=1e-4), max |omega| {omega:.2e} (<=1e-8)",
            s.t
        ),
    )
}

fn castrated_gronwall() -> Outcome {
    let g = Grid::new(64).unwrap();
    let lambda = 4.0;
    let (c_star, n_star) = (1.0, 12.0);
    let constraints = CastrateConstraints::evaluate(c_star, n_star, lambda, 1.0);
    let spec = ModelSpec::new(ModelKind::CastratedKse, lambda).with_cutoff(c_star, n_star);
    let u0 = build_initial(&random_init(8.0, 1.0, 9), g).unwrap();
    let e0 = u0.l2_norm().powi(2);
    let rate = 4.0 * lambda.max(1.0).powi(2);

    let short = records_of(spec, u0.clone(), StepperConfig::new(1e-3, 1.0), 10).unwrap();
    let gronwall = short.iter().all(|r| r.l2_norm.powi(2) <= (rate * r.t).exp() * e0);

    let mut long_cfg = StepperConfig::new(1e-2, 100.0);
    long_cfg.safety_checks = false;
    let long = records_of(spec, u0, long_cfg, 100);
    let (finite, detail) = match &long {
        Ok(recs) => {
            let bad = recs.iter().find(|r| !r.energy.is_finite());
            let peak = recs.iter().map(|r| r.energy).filter(|e| e.is_finite()).fold(0.0, f64::max);
            match bad {
                None => (true, format!("T=100 finite, peak energy {peak:.3e}")),
                Some(r) => (
                    false,
                    format!(
                        "T=100 coefficients finite but recorded energy overflows at t = {:.0} (last finite peak {peak:.3e})",
                        r.t
                    ),
                ),
            }
        }
        Err(e) => (false, format!("T=100 run failed: {e}")),
    };
    outcome(
        constraints.satisfied() && gronwall && finite,
        format!(
            "constraints satisfied: {}; Gronwall bound on [0,1]: {}; {detail}",
            constraints.satisfied(),
            gronwall
        ),
    )
}

fn integrator_convergence() -> Outcome {
    let g = Grid::new(64).unwrap();
    let solve = |spec: ModelSpec, u0: &VectorField, h: f64, t: f64, scheme: Scheme| {
        let st = Stepper::new(&StepperConfig::new(h, t).with_scheme(scheme), spec, g).unwrap();
        let mut s = State::new(0.0, u0.clone(), spec);
        for _ in 0..(t / h).round() as usize {
            s = st.step(&s).unwrap();
        }
        s.u
    };
    let ratio = |spec: ModelSpec, u0: &VectorField, hs: [f64; 3], t: f64, scheme: Scheme| {
        let [a, b, c] = hs.map(|h| solve(spec, u0, h, t, scheme));
        (&a - &b).l2_norm() / (&b - &c).l2_norm()
    };
    let kse = ModelSpec::new(ModelKind::Kse, 2.0);
    let u0 = build_initial(&random_init(4.0, 1.0, 5), g).unwrap();
    let imex = ratio(kse, &u0, [1e-3, 5e-4, 2.5e-4], 1.0, Scheme::ImexEuler);
    let burgers = ModelSpec::new(ModelKind::BurgersInviscid, 0.0);
    let v0 = build_initial(&random_init(3.0, 1.0, 3), g).unwrap();
    let rk4 = ratio(burgers, &v0, [0.02, 0.01, 0.005], 0.2, Scheme::Rk4);
    outcome(
        (imex - 2.0).abs() <= 0.3 && (rk4 - 16.0).abs() <= 4.0,
        format!("imex_euler ratio {imex:.4} (2.0+-0.3), rk4 ratio {rk4:.4} (16+-4)"),
    )
}

fn galilean_and_mean() -> Outcome {
    let g = Grid::new(64).unwrap();
    let mut r = rng(909);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let u = random_vector(g, 12.0, false, &mut r);
        let d = [r.random_range(0.0..6.3), r.random_range(0.0..6.3)];
        let v = [r.random_range(-2.0..2.0), r.random_range(-2.0..2.0)];
        let gu = galilean_shift(&u, d, v);
        for k in [-2.0, -1.0, 1.0, 2.0] {
            worst = worst.max(rel(gu.sobolev_norm(k, true), u.sobolev_norm(k, true)));
        }
    }

    let spec = ModelSpec::new(ModelKind::Kse, 2.0);
    let mut u0 = random_vector(g, 6.0, true, &mut r);
    u0 = &u0 * (1.0 / u0.l2_norm());
    u0.u1.set_mode(0, 0, Complex64::new(0.3, 0.0));
    u0.u2.set_mode(0, 0, Complex64::new(-0.2, 0.0));
    let plan = RunPlan {
        stepper: StepperConfig::new(1e-3, 2.0),
        diag_every: 10,
        snap_every: 0,
    };
    let mut mon = Monitor::new(spec, MonitorParams::from_model(&spec));
    let mut obs = Collect::default();
    run(&plan, State::new(0.0, u0, spec), &mut mon, &mut obs, true).unwrap();
    let samples: Vec<(f64, VectorField)> = obs.samples.into_iter().map(|(s, _)| (s.t, s.u)).collect();
    let trace = mean_ode_residual(&samples, &spec).unwrap();
    let m0 = samples[0].1.mean();
    let drift = samples
        .iter()
        .map(|(_, u)| {
            let m = u.mean();
            (m[0] - m0[0]).hypot(m[1] - m0[1])
        })
        .fold(0.0, f64::max);
    let slack = trace
        .mean_sup
        .iter()
        .zip(&trace.mean_bound)
        .map(|(s, b)| b - s)
        .fold(f64::INFINITY, f64::min);
    outcome(
        worst <= 1e-12 && trace.bound_holds(),
        format!(
            "norm change {worst:.2e} (<=1e-12); mean bound holds at all {} samples: {} (min slack {slack:.3e}, max mean change {drift:.3e})",
            samples.len(),
            trace.bound_holds()
        ),
    )
}

fn criterion_monitors() -> Outcome {
    let fine = FINE_RUN.get_or_init(|| kse_desk_run(10));
    let coarse = kse_desk_run(20);
    let (f, c) = (fine.last().unwrap(), coarse.last().unwrap());
    let changes = [
        rel(f.running_int_div_plus, c.running_int_div_plus),
        rel(f.running_int_proj_div_plus, c.running_int_proj_div_plus),
        rel(f.running_int_n_alpha_4, c.running_int_n_alpha_4),
    ];
    let cadence_ok = changes.iter().all(|&x| x < 0.01);

    let g = Grid::new(32).unwrap();
    let (alpha, c_star, n_star, t_end) = (0.5, 1.5, 2.0, 1.0);
    let spec = ModelSpec::new(ModelKind::Kse, 2.5).with_cutoff(c_star, n_star).with_alpha(alpha);
    let zero = records_of(spec, VectorField::zeros(g), StepperConfig::new(1e-2, t_end), 1).unwrap();
    let z = zero.last().unwrap();
    let expected = (c_star * n_star).powf(4.0 / (2.0 - alpha)) * t_end;
    let zero_ok = rel(z.running_int_n_alpha_4, expected) <= 1e-12
        && z.running_int_div_plus == 0.0
        && z.running_int_proj_div_plus == 0.0;
    outcome(
        cadence_ok && zero_ok,
        format!(
            "cadence-halving changes {:.2e}/{:.2e}/{:.2e} (<1e-2); zero field int N^4 = {:.15e} vs {expected:.15e}",
            changes[0], changes[1], changes[2], z.running_int_n_alpha_4
        ),
    )
}

fn determinism_and_restart() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let text = "model = kse\nlambda = 2\nn = 32\nh = 1e-3\nt_end = 1\ndiag_every = 10\nsnap_every = 500\ninit = random\nk_max = 6\namplitude = 1\nseed = 4\n";
    let cfg_at = |name: &str| {
        let mut c = RunConfig::parse(text, "acceptance").unwrap();
        c.out_dir = dir.path().join(name);
        c
    };
    let (a, b) = (cfg_at("a"), cfg_at("b"));
    run_to_dir(&a).unwrap();
    run_to_dir(&b).unwrap();
    let same = |f: &str| fs::read(a.out_dir.join(f)).unwrap() == fs::read(b.out_dir.join(f)).unwrap();
    let identical = same("timeseries.csv") && same("final.ks2d");

    // resume b from its t = 0.5 snapshot and compare with a's uninterrupted end state
    resume(&snapshot_path(&b.out_dir, 500), &b).unwrap();
    let ua = read_snapshot(&a.out_dir.join("final.ks2d")).unwrap().to_field().unwrap();
    let ub = read_snapshot(&b.out_dir.join("final.ks2d")).unwrap().to_field().unwrap();
    let gap = (&ua - &ub).max_abs_coeff();
    outcome(
        identical && gap <= 1e-12,
        format!("byte-identical repeat: {identical}; resumed vs uninterrupted max coefficient gap {gap:.2e} (<=1e-12)"),
    )
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, fn() -> Outcome); 11] = [
        (1, "identity suite", identity_suite),
        (2, "Bernstein and interpolation", bernstein_interpolation),
        (3, "semi-discrete energy balance", energy_balance),
        (4, "curl-free persistence", curl_persistence),
        (5, "Burgers-Sivashinsky max principle", bse_max_principle),
        (6, "Lagrangian divergence monotonicity", burgers_particles),
        (7, "castrated KSE Gronwall and long run", castrated_gronwall),
        (8, "integrator convergence", integrator_convergence),
        (9, "Galilean invariance and mean control", galilean_and_mean),
        (10, "criterion monitors", criterion_monitors),
        (11, "determinism and restart", determinism_and_restart),
    ];
    let results: Vec<Outcome> = std::thread::scope(|s| {
        let handles: Vec<_> = criteria.iter().map(|(_, _, f)| s.spawn(*f)).collect();
        handles
            .into_iter()
            .map(|h| h.join().unwrap_or_else(|_| outcome(false, "panicked")))
            .collect()
    });
    let mut failed = 0;
    for ((id, name, _), r) in criteria.iter().zip(&results) {
        let verdict = if r.pass { "PASS" } else { "FAIL" };
        println!("criterion {id:>2} {verdict}  {name}: {}", r.detail);
        failed += usize::from(!r.pass);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
