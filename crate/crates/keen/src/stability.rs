//! Linearization and spectral classification of rest points.
//!
//! At a collapsed-wage rest point `(0, 0, d0)` the Jacobian is lower
//! triangular with a closed form, so its eigenvalues are the diagonal
//! entries and carry no solver noise. General rest points go through a
//! central-difference Jacobian and a closed-form 3x3 eigensolver.

use crate::equilibria::d0_residual;
use crate::error::KeenError;
use crate::model::{
    keen_vector_field, EconomyParams, InvestmentFunction, PhillipsCurve, State,
};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// A debt root older than this residual is rejected as stale.
pub const ROOT_RESIDUAL_GATE: f64 = 1e-6;
/// Real parts within this band of zero make the classification marginal.
pub const MARGINAL_TOL: f64 = 1e-9;
/// Central-difference step bounds for the numeric Jacobian.
pub const JACOBIAN_STEP_RANGE: (f64, f64) = (1e-8, 1e-4);

/// Closed-form Jacobian of the field on the collapsed-wage line, evaluated
/// at `(0, 0, d)` for an arbitrary debt value `d`.
///
/// This is pure formula evaluation: it does not require `d` to be a rest
/// point. Use [`jacobian_at_origin`] when `d` is supposed to be one.
pub fn origin_linearization(
    p: &EconomyParams,
    phi: &PhillipsCurve,
    kap: &InvestmentFunction,
    d: f64,
) -> [[f64; 3]; 3] {
    let pi0 = 1.0 - p.r * d;
    let k = kap.eval(pi0);
    let kp = kap.prime(pi0);
    let b = p.balanced_investment_share();
    let j11 = phi.at_zero() - p.alpha;
    let j22 = (k - b) / p.nu;
    let j31 = ((d - p.nu) * kp + p.nu) / p.nu;
    let j33 = (p.nu * (p.r + p.delta) - k + p.r * (d - p.nu) * kp) / p.nu;
    [[j11, 0.0, 0.0], [0.0, j22, 0.0], [j31, 0.0, j33]]
}

fn gate_root(d0_root: f64, p: &EconomyParams, kap: &InvestmentFunction) -> Result<(), KeenError> {
    let residual = d0_residual(d0_root, p, kap);
    if !residual.is_finite() || residual.abs() >= ROOT_RESIDUAL_GATE {
        return Err(KeenError::StaleRoot {
            d0: d0_root,
            residual,
            gate: ROOT_RESIDUAL_GATE,
        });
    }
    Ok(())
}

/// Closed-form Jacobian at the rest point `(0, 0, d0_root)`.
///
/// `d0_root` must satisfy the stationarity equation to better than 1e-6,
/// otherwise the value is stale and the call fails.
pub fn jacobian_at_origin(
    p: &EconomyParams,
    phi: &PhillipsCurve,
    kap: &InvestmentFunction,
    d0_root: f64,
) -> Result<[[f64; 3]; 3], KeenError> {
    gate_root(d0_root, p, kap)?;
    Ok(origin_linearization(p, phi, kap, d0_root))
}

/// Eigenvalues at the rest point `(0, 0, d0_root)`: the diagonal of the
/// triangular Jacobian, in row order (wage, employment, debt directions).
pub fn origin_eigenvalues(
    p: &EconomyParams,
    phi: &PhillipsCurve,
    kap: &InvestmentFunction,
    d0_root: f64,
) -> Result<[f64; 3], KeenError> {
    let j = jacobian_at_origin(p, phi, kap, d0_root)?;
    Ok([j[0][0], j[1][1], j[2][2]])
}

/// Central-difference Jacobian of the field at an arbitrary state.
///
/// `h` must lie in `[1e-8, 1e-4]`; the truncation error is second order in
/// `h`. Domain failures of the field propagate.
pub fn numeric_jacobian(
    s: &State,
    p: &EconomyParams,
    phi: &PhillipsCurve,
    kap: &InvestmentFunction,
    h: f64,
) -> Result<[[f64; 3]; 3], KeenError> {
    let (lo, hi) = JACOBIAN_STEP_RANGE;
    if !(h >= lo && h <= hi) {
        return Err(KeenError::invalid(format!(
            "numeric Jacobian step must lie in [{lo:e}, {hi:e}], got {h:e}"
        )));
    }
    let mut j = [[0.0; 3]; 3];
    let base = s.as_array();
    for col in 0..3 {
        let mut plus = base;
        let mut minus = base;
        plus[col] += h;
        minus[col] -= h;
        let fp = keen_vector_field(&State::from_array(plus), p, phi, kap)?;
        let fm = keen_vector_field(&State::from_array(minus), p, phi, kap)?;
        for row in 0..3 {
            j[row][col] = (fp[row] - fm[row]) / (2.0 * h);
        }
    }
    Ok(j)
}

/// Eigenvalues of a real 3x3 matrix, sorted by real part descending, then by
/// imaginary part descending. Complex pairs are exact conjugates.
///
/// Exactly triangular input short-circuits to the diagonal, which keeps rest
/// point spectra free of cubic-solver noise even at coincident eigenvalues.
pub fn eigenvalues_3x3(m: &[[f64; 3]; 3]) -> [Complex64; 3] {
    let upper_zero = m[0][1] == 0.0 && m[0][2] == 0.0 && m[1][2] == 0.0;
    let lower_zero = m[1][0] == 0.0 && m[2][0] == 0.0 && m[2][1] == 0.0;
    if upper_zero || lower_zero {
        let mut eig = [
            Complex64::new(m[0][0], 0.0),
            Complex64::new(m[1][1], 0.0),
            Complex64::new(m[2][2], 0.0),
        ];
        sort_eigs(&mut eig);
        return eig;
    }

    // Characteristic polynomial x^3 + a2 x^2 + a1 x + a0.
    let tr = m[0][0] + m[1][1] + m[2][2];
    let minors = m[0][0] * m[1][1] - m[0][1] * m[1][0]
        + m[0][0] * m[2][2] - m[0][2] * m[2][0]
        + m[1][1] * m[2][2] - m[1][2] * m[2][1];
    let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    let a2 = -tr;
    let a1 = minors;
    let a0 = -det;

    // Depressed form t^3 + pt + q with x = t - a2/3.
    let shift = a2 / 3.0;
    let pp = a1 - a2 * a2 / 3.0;
    let qq = 2.0 * a2 * a2 * a2 / 27.0 - a2 * a1 / 3.0 + a0;
    let disc = -4.0 * pp * pp * pp - 27.0 * qq * qq;

    let mut eig = if disc >= 0.0 {
        // Three real roots. disc >= 0 with pp = 0 forces qq = 0 (triple root).
        if pp == 0.0 {
            [Complex64::new(-shift, 0.0); 3]
        } else {
            let mcoef = 2.0 * (-pp / 3.0).sqrt();
            let arg = (3.0 * qq / (pp * mcoef)).clamp(-1.0, 1.0);
            let theta = arg.acos() / 3.0;
            let mut out = [Complex64::new(0.0, 0.0); 3];
            for (k, slot) in out.iter_mut().enumerate() {
                let t = mcoef * (theta - 2.0 * std::f64::consts::PI * k as f64 / 3.0).cos();
                *slot = Complex64::new(t - shift, 0.0);
            }
            out
        }
    } else if qq == 0.0 {
        // t (t^2 + pp) with pp > 0: one real root and a pure imaginary pair.
        let w = pp.sqrt();
        [
            Complex64::new(-shift, 0.0),
            Complex64::new(-shift, w),
            Complex64::new(-shift, -w),
        ]
    } else {
        // One real root and a conjugate pair (Cardano, cancellation-safe).
        let s = (qq * qq / 4.0 + pp * pp * pp / 27.0).sqrt();
        let u = (-qq / 2.0 - qq.signum() * s).cbrt();
        let v = if u != 0.0 { -pp / (3.0 * u) } else { 0.0 };
        let t_real = u + v;
        let re_pair = -t_real / 2.0 - shift;
        let im_pair = (3.0f64.sqrt() / 2.0) * (u - v).abs();
        [
            Complex64::new(t_real - shift, 0.0),
            Complex64::new(re_pair, im_pair),
            Complex64::new(re_pair, -im_pair),
        ]
    };
    sort_eigs(&mut eig);
    eig
}

fn sort_eigs(eig: &mut [Complex64; 3]) {
    eig.sort_by(|a, b| {
        b.re.partial_cmp(&a.re)
            .unwrap()
            .then(b.im.partial_cmp(&a.im).unwrap())
    });
}

/// Spectral verdict on a rest point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    /// Every eigenvalue has real part below `-1e-9`.
    Stable,
    /// Some eigenvalue has real part above `1e-9`.
    Unstable,
    /// Neither: some real part sits within `1e-9` of zero.
    Marginal,
}

/// Classify a spectrum by the signs of its real parts.
pub fn classify(eigenvalues: &[Complex64; 3]) -> Classification {
    if eigenvalues.iter().any(|e| e.re > MARGINAL_TOL) {
        Classification::Unstable
    } else if eigenvalues.iter().all(|e| e.re < -MARGINAL_TOL) {
        Classification::Stable
    } else {
        Classification::Marginal
    }
}

/// Spectrum plus verdict, for reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StabilityReport {
    pub eigenvalues: [Complex64; 3],
    pub classification: Classification,
}

impl StabilityReport {
    pub fn from_eigenvalues(eigenvalues: [Complex64; 3]) -> Self {
        let classification = classify(&eigenvalues);
        StabilityReport {
            eigenvalues,
            classification,
        }
    }

    pub fn from_real(eigenvalues: [f64; 3]) -> Self {
        Self::from_eigenvalues([
            Complex64::new(eigenvalues[0], 0.0),
            Complex64::new(eigenvalues[1], 0.0),
            Complex64::new(eigenvalues[2], 0.0),
        ])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equilibria::{find_d0_roots, RootSearch};

    fn example_params() -> EconomyParams {
        EconomyParams::new(3.0, 0.05, 0.03, 0.1, 0.03).unwrap()
    }

    fn example_phillips() -> PhillipsCurve {
        let denom = 1.0 - 0.04 * 0.04;
        PhillipsCurve::rational(0.04 / denom, 0.04f64.powi(3) / denom).unwrap()
    }

    fn example_kappa() -> InvestmentFunction {
        InvestmentFunction::new(0.34, 0.0836, 0.6829).unwrap()
    }

    fn example_roots() -> (f64, f64) {
        let roots = find_d0_roots(
            &example_params(),
            &example_kappa(),
            &RootSearch {
                interval: (-100.0, 200.0),
                samples: 100_000,
            },
        )
        .unwrap();
        (roots[0], roots[1])
    }

    #[test]
    fn origin_jacobian_matches_frozen_spectrum() {
        let p = example_params();
        let phi = example_phillips();
        let kap = example_kappa();
        let (d_neg, d_pos) = example_roots();

        let ev = origin_eigenvalues(&p, &phi, &kap, d_neg).unwrap();
        // Frozen from a 40-digit evaluation at the polished root.
        assert!((ev[0] - (-0.09)).abs() < 1e-12);
        assert!((ev[1] - (-4.465_374_220_486_868e-5)).abs() < 1e-12);
        assert!((ev[2] - (-0.066_621_829_856_194_5)).abs() < 1e-12);

        let ev = origin_eigenvalues(&p, &phi, &kap, d_pos).unwrap();
        assert!((ev[1] - (-0.057_300_628_424_946_72)).abs() < 1e-10);
        assert!((ev[2] - 0.023_333_225_718_830_42).abs() < 1e-10);
    }

    #[test]
    fn stale_root_is_rejected() {
        let p = example_params();
        let err = origin_eigenvalues(&p, &example_phillips(), &example_kappa(), -9.0).unwrap_err();
        assert!(matches!(err, KeenError::StaleRoot { .. }));
    }

    #[test]
    fn numeric_jacobian_matches_closed_form_at_origin() {
        let p = example_params();
        // Linear wage response: defined on both sides of lambda = 0, which
        // central differences at the origin require.
        let phi = PhillipsCurve::linear(0.04, 1.0).unwrap();
        let kap = example_kappa();
        let (d_neg, _) = example_roots();
        let closed = jacobian_at_origin(&p, &phi, &kap, d_neg).unwrap();
        let s = State::new(0.0, 0.0, d_neg);

        let err_at = |h: f64| {
            let num = numeric_jacobian(&s, &p, &phi, &kap, h).unwrap();
            let mut worst: f64 = 0.0;
            for i in 0..3 {
                for j in 0..3 {
                    worst = worst.max((num[i][j] - closed[i][j]).abs());
                }
            }
            worst
        };
        let e1 = err_at(1e-4);
        let e2 = err_at(5e-5);
        assert!(e1 < 1e-6);
        // Central differences: halving h shrinks the truncation error ~4x.
        let ratio = e1 / e2;
        assert!(
            (3.0..5.0).contains(&ratio),
            "expected second-order convergence, ratio {ratio}"
        );
    }

    #[test]
    fn numeric_jacobian_zeros_are_exact_at_origin() {
        let p = example_params();
        let phi = PhillipsCurve::linear(0.04, 1.0).unwrap();
        let kap = example_kappa();
        let (d_neg, _) = example_roots();
        let num = numeric_jacobian(&State::new(0.0, 0.0, d_neg), &p, &phi, &kap, 1e-5).unwrap();
        for (i, j) in [(0, 1), (0, 2), (1, 0), (1, 2), (2, 1)] {
            assert_eq!(num[i][j], 0.0);
        }
    }

    #[test]
    fn numeric_jacobian_step_is_validated() {
        let p = example_params();
        let s = State::new(0.5, 0.9, 1.0);
        for h in [0.0, 1e-9, 1e-3, f64::NAN] {
            assert!(numeric_jacobian(&s, &p, &example_phillips(), &example_kappa(), h).is_err());
        }
    }

    #[test]
    fn eigenvalues_of_identity_and_triangular() {
        let id = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
        let ev = eigenvalues_3x3(&id);
        for e in ev {
            assert_eq!(e, Complex64::new(1.0, 0.0));
        }
        let tri = [[2.0, 0.0, 0.0], [7.0, -1.0, 0.0], [3.0, 4.0, 0.5]];
        let ev = eigenvalues_3x3(&tri);
        assert_eq!(ev[0], Complex64::new(2.0, 0.0));
        assert_eq!(ev[1], Complex64::new(0.5, 0.0));
        assert_eq!(ev[2], Complex64::new(-1.0, 0.0));
    }

    #[test]
    fn eigenvalues_handle_conjugate_pairs() {
        // Block diagonal: rotation block (re = 1, im = +/-2) plus eigenvalue 3.
        let m = [[1.0, -2.0, 0.0], [2.0, 1.0, 0.0], [0.0, 1e-30, 3.0]];
        let ev = eigenvalues_3x3(&m);
        assert!((ev[0].re - 3.0).abs() < 1e-12);
        assert!((ev[1].re - 1.0).abs() < 1e-12);
        assert!((ev[1].im - 2.0).abs() < 1e-12);
        // Exact conjugates by construction.
        assert_eq!(ev[1].re, ev[2].re);
        assert_eq!(ev[1].im, -ev[2].im);
    }

    #[test]
    fn eigenvalues_match_companion_of_known_cubic() {
        // Companion matrix of (x-1)(x-2)(x-3) = x^3 - 6x^2 + 11x - 6.
        let m = [[0.0, 0.0, 6.0], [1.0, 0.0, -11.0], [0.0, 1.0, 6.0]];
        let ev = eigenvalues_3x3(&m);
        assert!((ev[0].re - 3.0).abs() < 1e-10);
        assert!((ev[1].re - 2.0).abs() < 1e-10);
        assert!((ev[2].re - 1.0).abs() < 1e-10);
        for e in ev {
            assert_eq!(e.im, 0.0);
        }
    }

    #[test]
    fn classification_boundaries() {
        let mk = |a: f64, b: f64, c: f64| {
            [
                Complex64::new(a, 0.0),
                Complex64::new(b, 1.0),
                Complex64::new(c, -1.0),
            ]
        };
        assert_eq!(classify(&mk(-0.1, -0.2, -0.3)), Classification::Stable);
        assert_eq!(classify(&mk(-0.1, 1e-8, -0.3)), Classification::Unstable);
        assert_eq!(classify(&mk(-0.1, 1e-10, -0.3)), Classification::Marginal);
        assert_eq!(classify(&mk(0.0, -0.2, -0.3)), Classification::Marginal);
    }
}
