//! Acceptance suite. Each test covers one numbered release criterion and
//! prints a single line of the form
//!
//! ```text
//! [PASS] criterion N: <what was checked, with tolerances and measured values>
//! ```
//!
//! (run with `cargo test --test acceptance -- --nocapture` to see the
//! lines for passing criteria; a failing criterion prints its line and
//! panics with the same detail).

use keen::{
    admissible_d0_bound, build_kappa, d0_residual, double_zero_necessary, eigenvalues_3x3,
    find_d0_roots, integrate, integrate_goodwin, jacobian_at_origin, kappa2_lower_bound,
    kappa_at_equilibrium, origin_eigenvalues, origin_linearization, realize_double_zero,
    realize_kappa, rk4_integrate, Classification, ConvergedTarget, EconomyParams,
    IntegratorConfig, InvestmentFunction, Method, PhillipsCurve, RootSearch, StabilityReport,
    State, Termination,
};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Collects sub-checks of one criterion and prints exactly one
/// pass/fail line when finished.
struct Criterion {
    name: &'static str,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Criterion {
    fn new(name: &'static str) -> Self {
        Criterion { name, failures: Vec::new(), notes: Vec::new() }
    }

    fn check(&mut self, ok: bool, detail: String) {
        if !ok {
            self.failures.push(detail);
        }
    }

    fn note(&mut self, detail: String) {
        self.notes.push(detail);
    }

    fn finish(self) {
        let status = if self.failures.is_empty() { "PASS" } else { "FAIL" };
        let mut line = format!("[{status}] {}", self.name);
        for n in &self.notes {
            line.push_str(&format!(" | {n}"));
        }
        for f in &self.failures {
            line.push_str(&format!(" | {f}"));
        }
        println!("{line}");
        assert!(
            self.failures.is_empty(),
            "{} failed: {}",
            self.name,
            self.failures.join("; ")
        );
    }
}

fn example_params() -> EconomyParams {
    EconomyParams::new(3.0, 0.05, 0.03, 0.1, 0.03).unwrap()
}

/// Wage response with value -0.04 at zero employment and a zero crossing
/// at 96% employment.
fn example_phillips() -> PhillipsCurve {
    let denom = 1.0 - 0.04 * 0.04;
    PhillipsCurve::rational(0.04 / denom, 0.04f64.powi(3) / denom).unwrap()
}

fn example_kappa() -> InvestmentFunction {
    InvestmentFunction::new(0.34, 0.0836, 0.6829).unwrap()
}

fn example_roots() -> Vec<f64> {
    find_d0_roots(
        &example_params(),
        &example_kappa(),
        &RootSearch { interval: (-100.0, 200.0), samples: 100_000 },
    )
    .unwrap()
}

#[test]
fn criterion_1_stationary_debt_roots() {
    let mut c = Criterion::new(
        "criterion 1: exactly two stationary debt levels in [-100, 200], within 5e-3 of -9.2100 and 86.5545, residuals < 1e-9",
    );
    let p = example_params();
    let kap = example_kappa();
    let roots = example_roots();
    c.check(roots.len() == 2, format!("expected 2 roots, found {}", roots.len()));
    if roots.len() == 2 {
        let expected = [-9.2100, 86.5545];
        for (root, want) in roots.iter().zip(expected) {
            c.check(
                (root - want).abs() < 5e-3,
                format!("root {root:.6} misses {want} by {:.2e}", (root - want).abs()),
            );
            let res = d0_residual(*root, &p, &kap);
            c.check(res.abs() < 1e-9, format!("residual at {root:.6} is {res:.2e}"));
        }
        c.note(format!("roots {:.6} and {:.6}", roots[0], roots[1]));
    }
    c.finish();
}

#[test]
fn criterion_2_wage_direction_eigenvalue() {
    let mut c = Criterion::new(
        "criterion 2: wage-direction eigenvalue at the negative root equals -0.0900 within 1e-6",
    );
    let roots = example_roots();
    let ev = origin_eigenvalues(&example_params(), &example_phillips(), &example_kappa(), roots[0])
        .unwrap();
    c.check(
        (ev[0] - (-0.0900)).abs() < 1e-6,
        format!("eigenvalue 1 = {:.9} misses -0.0900 by {:.2e}", ev[0], (ev[0] + 0.09).abs()),
    );
    c.note(format!("eigenvalue 1 = {:.9}", ev[0]));
    c.finish();
}

#[test]
fn criterion_3_negative_root_is_stable() {
    let mut c = Criterion::new(
        "criterion 3: all three eigenvalues at the negative root strictly negative, classified Stable; eigenvalues 2 and 3 agree with an independent re-evaluation within 1e-9",
    );
    let p = example_params();
    let kap = example_kappa();
    let roots = example_roots();
    let d0 = roots[0];
    let ev = origin_eigenvalues(&p, &example_phillips(), &kap, d0).unwrap();

    c.check(
        ev.iter().all(|&e| e < 0.0),
        format!("expected three negative eigenvalues, got {ev:?}"),
    );
    let class = StabilityReport::from_real(ev).classification;
    c.check(class == Classification::Stable, format!("classification {class:?}"));

    // Independent re-evaluation of the employment- and debt-direction
    // eigenvalues straight from the model functions.
    let pi0 = 1.0 - p.r * d0;
    let k = kap.eval(pi0);
    let kp = kap.prime(pi0);
    let ev2_check = (k - p.nu * (p.alpha + p.beta + p.delta)) / p.nu;
    let ev3_check = (p.nu * (p.r + p.delta) - k + p.r * (d0 - p.nu) * kp) / p.nu;
    c.check(
        (ev[1] - ev2_check).abs() < 1e-9,
        format!("eigenvalue 2 {:.6e} vs re-evaluation {ev2_check:.6e}", ev[1]),
    );
    c.check(
        (ev[2] - ev3_check).abs() < 1e-9,
        format!("eigenvalue 3 {:.6e} vs re-evaluation {ev3_check:.6e}", ev[2]),
    );
    c.note(format!(
        "measured ev2 = {:.6e}, ev3 = {:.6e}; reference magnitudes 1.2285e-4 and 1.664e-1 recorded for comparison, not asserted",
        ev[1], ev[2]
    ));
    c.finish();
}

#[test]
fn criterion_4_construction_reproduces_the_example_curve() {
    let mut c = Criterion::new(
        "criterion 4: build_kappa(-9.21, 0.34, 0.6829) gives kappa1 within 2e-4 of 0.0836 and an admissible bound of -9.2 within 1e-12",
    );
    let (_kap, cert) =
        build_kappa(-9.21, 0.34, 0.6829, &example_params(), &example_phillips()).unwrap();
    c.check(
        (cert.kappa1 - 0.0836).abs() < 2e-4,
        format!("kappa1 = {:.7} misses 0.0836 by {:.2e}", cert.kappa1, (cert.kappa1 - 0.0836).abs()),
    );
    c.check(
        (cert.admissible_bound - (-9.2)).abs() < 1e-12,
        format!("admissible bound = {:.15} (expected -9.2)", cert.admissible_bound),
    );
    c.note(format!(
        "kappa1 = {:.7}, bound = {:.13}, residual = {:.2e}",
        cert.kappa1, cert.admissible_bound, cert.residual
    ));
    c.finish();
}

#[test]
fn criterion_5_randomized_constructions_are_stable() {
    let mut c = Criterion::new(
        "criterion 5: 100/100 randomized admissible constructions give three negative eigenvalues and stationarity residual < 1e-10",
    );
    let phi = PhillipsCurve::linear(0.04, 1.0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0005);
    let mut successes = 0usize;
    let mut drawn = 0usize;
    while drawn < 100 {
        let alpha = rng.gen_range(0.01..0.1);
        let beta = rng.gen_range(0.01..0.1);
        let delta = rng.gen_range(0.01..0.2);
        let nu = rng.gen_range(1.0..5.0);
        if nu * (alpha + beta + delta) >= 1.0 {
            continue; // balanced investment share must stay below one
        }
        let r = rng.gen_range(1e-6..alpha + beta);
        let p = EconomyParams::new(nu, alpha, beta, delta, r).unwrap();
        let cc = rng.gen_range(1e-6..p.interest_investment_share());
        let bound = admissible_d0_bound(&p).unwrap();
        let d0 = bound - rng.gen_range(1e-6..50.0);
        let lb = kappa2_lower_bound(cc, d0, &p).unwrap();
        let kappa2 = lb.max(0.0) + rng.gen_range(0.01..5.0);
        if (kappa2 * (1.0 - r * d0)).abs() > 600.0 {
            continue; // keep the exponential representable
        }
        drawn += 1;
        match build_kappa(d0, cc, kappa2, &p, &phi) {
            Ok((_, cert)) => {
                if cert.eigenvalues.iter().all(|&e| e < 0.0) && cert.residual.abs() < 1e-10 {
                    successes += 1;
                } else {
                    c.check(
                        false,
                        format!(
                            "draw {drawn}: eigenvalues {:?}, residual {:.2e}",
                            cert.eigenvalues, cert.residual
                        ),
                    );
                }
            }
            Err(e) => c.check(false, format!("draw {drawn} failed to build: {e}")),
        }
    }
    c.check(successes == 100, format!("{successes}/100 constructions certified"));
    c.note(format!("{successes}/100 constructions certified"));
    c.finish();
}

#[test]
fn criterion_6_double_zero_realizations_close_the_loop() {
    let mut c = Criterion::new(
        "criterion 6: 20 sampled (c, kappa2) double-zero realizations give |eigenvalue 2| and |eigenvalue 3| < 1e-8",
    );
    let p = example_params();
    let phi = example_phillips();
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0006);
    let mut realized = 0usize;
    let mut attempts = 0usize;
    while realized < 20 && attempts < 10_000 {
        attempts += 1;
        let cc = rng.gen_range(0.05..0.6);
        let kappa2 = rng.gen_range(0.2..3.0);
        let query = match double_zero_necessary(cc, kappa2, &p) {
            Ok(q) => q,
            Err(_) => continue,
        };
        let Some(&b_root) = query.b_roots.iter().find(|&&b| b > cc) else {
            continue;
        };
        match realize_double_zero(cc, kappa2, b_root, &p) {
            Ok((p2, kap2, d)) => {
                realized += 1;
                // The realized point is generally not stationary, so the
                // eigenvalue formulas are evaluated through the ungated
                // closed-form linearization.
                let j = origin_linearization(&p2, &phi, &kap2, d);
                c.check(
                    j[1][1].abs() < 1e-8 && j[2][2].abs() < 1e-8,
                    format!(
                        "realization {realized} (c={cc:.4}, kappa2={kappa2:.4}): ev2={:.2e}, ev3={:.2e}",
                        j[1][1], j[2][2]
                    ),
                );
            }
            Err(e) => c.check(false, format!("(c={cc:.4}, kappa2={kappa2:.4}): {e}")),
        }
    }
    c.check(realized == 20, format!("{realized}/20 realizations reached in {attempts} draws"));
    c.note(format!("{realized}/20 realizations in {attempts} draws"));
    c.finish();
}

#[test]
fn criterion_7_attraction_to_the_negative_root() {
    let mut c = Criterion::new(
        "criterion 7: trajectory from (1e-3, 1e-3, -9.21 + 1e-2) converges to the negative-debt rest point with terminal distance < 1e-3 (horizon 1e5, adaptive tolerance 1e-10)",
    );
    let p = example_params();
    let cfg = IntegratorConfig {
        method: Method::AdaptiveRk45 {
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            min_step: 1e-12,
            max_step: 20.0,
        },
        t_end: 1e5,
        sample_interval: 20.0,
        d_explode: 1e6,
        eq_tol: 1e-5,
    };
    let s0 = State::new(1e-3, 1e-3, -9.21 + 1e-2);
    let traj = integrate(&s0, &p, &example_phillips(), &example_kappa(), &cfg).unwrap();
    let d0 = example_roots()[0];
    match &traj.termination {
        Termination::ConvergedTo { target: ConvergedTarget::TrivialDeflation { d0: td }, .. } => {
            c.check(
                (td - d0).abs() < 1e-6,
                format!("converged to d0 = {td:.6}, expected {d0:.6}"),
            );
        }
        other => c.check(false, format!("terminated with {other:?}")),
    }
    let terminal = traj.states.last().unwrap();
    let dist = terminal.distance(&State::new(0.0, 0.0, d0));
    c.check(dist < 1e-3, format!("terminal distance {dist:.2e} >= 1e-3"));
    c.note(format!(
        "terminal distance {:.2e} at t = {:.0}",
        dist,
        traj.times.last().unwrap()
    ));
    c.finish();
}

/// Symmetric eigenvalue oracle: Givens tridiagonalization followed by
/// explicitly shifted QR iteration with the Wilkinson shift and 2x2
/// deflation. Deliberately independent of the closed-form solver.
mod qr_oracle {
    fn mul3(a: &[[f64; 3]; 3], b: &[[f64; 3]; 3]) -> [[f64; 3]; 3] {
        let mut out = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                for (k, bk) in b.iter().enumerate() {
                    out[i][j] += a[i][k] * bk[j];
                }
            }
        }
        out
    }

    fn transpose(a: &[[f64; 3]; 3]) -> [[f64; 3]; 3] {
        let mut out = *a;
        for i in 0..3 {
            for j in 0..3 {
                out[i][j] = a[j][i];
            }
        }
        out
    }

    /// Similarity transform zeroing the (0, 2) and (2, 0) entries.
    fn tridiagonalize(m: &[[f64; 3]; 3]) -> [[f64; 3]; 3] {
        let a = m[0][1];
        let b = m[0][2];
        let r = a.hypot(b);
        if r == 0.0 {
            return *m;
        }
        let (c, s) = (a / r, b / r);
        let g = [[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]];
        mul3(&mul3(&transpose(&g), m), &g)
    }

    fn eig2(p: f64, q: f64, s: f64) -> [f64; 2] {
        let mid = 0.5 * (p + s);
        let rad = (0.5 * (p - s)).hypot(q);
        [mid + rad, mid - rad]
    }

    fn wilkinson_shift(t: &[[f64; 3]; 3]) -> f64 {
        let d = 0.5 * (t[1][1] - t[2][2]);
        let e = t[2][1];
        if e == 0.0 {
            return t[2][2];
        }
        let sign = if d >= 0.0 { 1.0 } else { -1.0 };
        t[2][2] - e * e / (d + sign * d.hypot(e))
    }

    /// One explicit QR step on `t - mu I`: factor with Givens rotations,
    /// recombine in reverse order, add the shift back.
    fn qr_step(t: &[[f64; 3]; 3], mu: f64) -> [[f64; 3]; 3] {
        let mut m = *t;
        for i in 0..3 {
            m[i][i] -= mu;
        }
        let mut q = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
        for (i, j) in [(0usize, 1usize), (0, 2), (1, 2)] {
            let r = m[i][i].hypot(m[j][i]);
            if r == 0.0 {
                continue;
            }
            let (c, s) = (m[i][i] / r, m[j][i] / r);
            let mut g = [[0.0; 3]; 3];
            for k in 0..3 {
                g[k][k] = 1.0;
            }
            g[i][i] = c;
            g[i][j] = s;
            g[j][i] = -s;
            g[j][j] = c;
            m = mul3(&g, &m);
            q = mul3(&g, &q);
        }
        // m is now R and q is the accumulated rotation product, so the
        // next iterate R Q^T restores similarity with t.
        let mut next = mul3(&m, &transpose(&q));
        for i in 0..3 {
            next[i][i] += mu;
        }
        // Symmetrize to shed rounding skew.
        for i in 0..3 {
            for j in (i + 1)..3 {
                let avg = 0.5 * (next[i][j] + next[j][i]);
                next[i][j] = avg;
                next[j][i] = avg;
            }
        }
        next
    }

    pub fn symmetric_eigenvalues(m: &[[f64; 3]; 3]) -> [f64; 3] {
        let mut t = tridiagonalize(m);
        let scale = m.iter().flatten().fold(1.0f64, |acc, &x| acc.max(x.abs()));
        let eps = 1e-15 * scale;
        let mut out = None;
        for _ in 0..500 {
            if t[1][0].abs() <= eps && t[2][1].abs() <= eps && t[2][0].abs() <= eps {
                out = Some([t[0][0], t[1][1], t[2][2]]);
                break;
            }
            if t[2][1].abs() <= eps && t[2][0].abs() <= eps {
                let top = eig2(t[0][0], t[1][0], t[1][1]);
                out = Some([top[0], top[1], t[2][2]]);
                break;
            }
            if t[1][0].abs() <= eps && t[2][0].abs() <= eps {
                let bottom = eig2(t[1][1], t[2][1], t[2][2]);
                out = Some([t[0][0], bottom[0], bottom[1]]);
                break;
            }
            t = qr_step(&t, wilkinson_shift(&t));
        }
        let mut ev = out.unwrap_or([t[0][0], t[1][1], t[2][2]]);
        ev.sort_by(|x, y| y.partial_cmp(x).unwrap());
        ev
    }
}

#[test]
fn criterion_8_numerical_quality() {
    let mut c = Criterion::new(
        "criterion 8: RK4 order >= 3.9 on the exponential; cycle invariant drift < 1e-6 relative over t=200 at tolerance 1e-10; closed-form eigenvalues match a QR-iteration oracle to 1e-8 on 100 random symmetric matrices",
    );

    // Empirical convergence order on y' = -y over [0, 1].
    let exact = (-1.0f64).exp();
    let error_at = |h: f64| -> f64 {
        let path = rk4_integrate(|_t, y: &[f64; 1]| Ok([-y[0]]), [1.0], 0.0, 1.0, h).unwrap();
        (path.last().unwrap().1[0] - exact).abs()
    };
    let mut orders = Vec::new();
    for h in [0.1, 0.05, 0.025] {
        let order = (error_at(h) / error_at(h / 2.0)).log2();
        orders.push(order);
        c.check(order >= 3.9, format!("order {order:.3} at h = {h}"));
    }
    c.note(format!(
        "orders {:.3}, {:.3}, {:.3}",
        orders[0], orders[1], orders[2]
    ));

    // Conserved quantity of the two-variable cycle over t = 200.
    let p = example_params();
    let cfg = IntegratorConfig {
        method: Method::AdaptiveRk45 {
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            min_step: 1e-12,
            max_step: 0.25,
        },
        t_end: 200.0,
        sample_interval: 0.5,
        d_explode: 1e6,
        eq_tol: 1e-300,
    };
    let cyc = integrate_goodwin(0.7, 0.85, &p, 0.04, 0.12, &cfg).unwrap();
    let v0 = cyc.conserved[0];
    let drift = cyc
        .conserved
        .iter()
        .fold(0.0f64, |acc, v| acc.max((v - v0).abs()))
        / v0.abs();
    c.check(drift < 1e-6, format!("relative drift {drift:.2e} >= 1e-6"));
    c.note(format!("relative invariant drift {drift:.2e}"));

    // Closed-form solver vs the QR oracle on random symmetric matrices.
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0008);
    let mut worst = 0.0f64;
    for i in 0..100 {
        let mut m = [[0.0; 3]; 3];
        for a in 0..3 {
            for b in a..3 {
                let v = rng.gen_range(-5.0..5.0);
                m[a][b] = v;
                m[b][a] = v;
            }
        }
        let oracle = qr_oracle::symmetric_eigenvalues(&m);
        let ev = eigenvalues_3x3(&m);
        for (have, want) in ev.iter().zip(oracle) {
            let diff = (have.re - want).abs().max(have.im.abs());
            worst = worst.max(diff);
            c.check(
                diff <= 1e-8,
                format!("matrix {i}: closed form {have} vs oracle {want:.12} (diff {diff:.2e})"),
            );
        }
    }
    c.note(format!("worst eigenvalue deviation {worst:.2e} across 100 matrices"));
    c.finish();
}

#[test]
fn criterion_9_triangular_structure_invariant() {
    let mut c = Criterion::new(
        "criterion 9: 1000 random valid configurations give a Jacobian with its five structural zeros exact and eigenvalues equal to the diagonal within 1e-12",
    );
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0009);
    let mut checked = 0usize;
    while checked < 1000 {
        let nu = rng.gen_range(0.5..8.0);
        let alpha = rng.gen_range(0.001..0.5);
        let beta = rng.gen_range(0.001..0.5);
        let delta = rng.gen_range(0.001..0.5);
        let r = rng.gen_range(0.0..0.5);
        let p = EconomyParams::new(nu, alpha, beta, delta, r).unwrap();
        let d0 = rng.gen_range(-20.0..20.0);
        if (d0 - nu).abs() < 0.1 {
            continue; // too close to the stationarity pole
        }
        let ke = match kappa_at_equilibrium(d0, &p) {
            Ok(v) => v,
            Err(_) => continue,
        };
        if ke <= 1e-3 {
            continue; // exponential amplitude would not be positive
        }
        let cc = rng.gen_range(0.0..ke - 1e-3);
        let kappa2 = rng.gen_range(0.01..5.0);
        if (kappa2 * (1.0 - r * d0)).abs() > 600.0 {
            continue;
        }
        let kap = match realize_kappa(d0, cc, kappa2, &p) {
            Ok(k) => k,
            Err(_) => continue,
        };
        let phi = if checked % 2 == 0 {
            PhillipsCurve::linear(rng.gen_range(0.001..0.2), rng.gen_range(1e-4..0.5)).unwrap()
        } else {
            PhillipsCurve::rational(rng.gen_range(0.001..0.2), rng.gen_range(1e-4..0.5)).unwrap()
        };
        checked += 1;

        let j = match jacobian_at_origin(&p, &phi, &kap, d0) {
            Ok(j) => j,
            Err(e) => {
                c.check(false, format!("configuration {checked}: {e}"));
                continue;
            }
        };
        let zeros_exact = j[0][1] == 0.0
            && j[0][2] == 0.0
            && j[1][0] == 0.0
            && j[1][2] == 0.0
            && j[2][1] == 0.0;
        c.check(zeros_exact, format!("configuration {checked}: zero pattern broken: {j:?}"));

        let ev = eigenvalues_3x3(&j);
        let mut diag = [j[0][0], j[1][1], j[2][2]];
        diag.sort_by(|x, y| y.partial_cmp(x).unwrap());
        for (have, want) in ev.iter().zip(diag) {
            c.check(
                have.im == 0.0 && (have.re - want).abs() <= 1e-12,
                format!("configuration {checked}: eigenvalue {have} vs diagonal {want}"),
            );
        }
    }
    c.note(format!("{checked} configurations checked"));
    c.finish();
}
