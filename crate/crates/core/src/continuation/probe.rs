//! Experiments built on the solver: prescribed σ-targets, the isolation of
//! `χ_n` among boundary-unipotent characters, and the comparison of the
//! numeric σ-Jacobian with the exact certificate.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{
    build_system, newton_solve, sigma_with_gradients, to_complex_matrix, CMatrix, CharacterSample, NewtonOptions,
    RepPoint,
};
use crate::cusp::{integrate_form, CuspShape, TorusForm};
use crate::deform::{sigma_derivative_matrix, PeripheralClass};
use crate::error::Result;
use crate::manifold::{peripheral_parabolic_check, rho_n_of_word, Manifold};

/// Word length of character samples.
pub const SAMPLE_LENGTH: usize = 4;

fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (trial as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn random_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// One solve towards prescribed targets.
#[derive(Clone, Debug, Serialize)]
pub struct TrialOutcome {
    pub trial: usize,
    pub converged: bool,
    pub iterations: usize,
    pub residual: f64,
    pub target_error: f64,
    pub condition: f64,
    /// Character distance to `χ_n`.
    pub distance: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub n: usize,
    pub perturbation: f64,
    pub trials: Vec<TrialOutcome>,
    /// Smallest character distance between two converged trials.
    pub min_pairwise_distance: f64,
}

fn sample(manifold: &Manifold, point: &RepPoint) -> CharacterSample {
    CharacterSample::new(&manifold.presentation.generators, &point.matrices, SAMPLE_LENGTH)
}

/// Solves for each target vector `σ(ρ_n) + δ`: first `δ = perturbation·e_j`
/// for every coordinate, then `random` vectors with entries of modulus at most
/// `perturbation`.
pub fn target_sweep(manifold: &Manifold, n: usize, perturbation: f64, random: usize, seed: u64) -> Result<SweepReport> {
    let (system, base) = build_system(manifold, n, true)?;
    let chi = sample(manifold, &base);
    let dim = system.targets.len();
    let mut offsets: Vec<Vec<Complex64>> = (0..dim)
        .map(|j| {
            let mut d = vec![Complex64::new(0.0, 0.0); dim];
            d[j] = Complex64::new(perturbation, 0.0);
            d
        })
        .collect();
    offsets.extend((0..random).map(|t| {
        let mut rng = trial_rng(seed, t);
        (0..dim)
            .map(|_| random_complex(&mut rng) * (perturbation / 2f64.sqrt()))
            .collect()
    }));

    let results: Vec<(TrialOutcome, Option<CharacterSample>)> = offsets
        .par_iter()
        .enumerate()
        .map(|(trial, offset)| {
            let targets: Vec<Complex64> = system.targets.iter().zip(offset).map(|(t, d)| t + d).collect();
            let sys = system.with_targets(targets.clone()).expect("same length");
            match newton_solve(&sys, &base, NewtonOptions::default()) {
                Ok(report) => {
                    let index = |g: char| sys.generators.iter().position(|&h| h == g).unwrap();
                    let recovered: Vec<Complex64> = sys
                        .peripherals
                        .iter()
                        .flat_map(|p| sigma_with_gradients(&super::word_product(&report.point.matrices, &index, p)).0)
                        .collect();
                    let target_error = recovered
                        .iter()
                        .zip(&targets)
                        .map(|(a, b)| (a - b).norm())
                        .fold(0.0, f64::max);
                    let s = sample(manifold, &report.point);
                    let outcome = TrialOutcome {
                        trial,
                        converged: true,
                        iterations: report.iterations,
                        residual: report.residual_norm,
                        target_error,
                        condition: report.condition,
                        distance: s.distance(&chi),
                    };
                    (outcome, Some(s))
                }
                Err(_) => (
                    TrialOutcome {
                        trial,
                        converged: false,
                        iterations: 0,
                        residual: f64::NAN,
                        target_error: f64::NAN,
                        condition: f64::NAN,
                        distance: f64::NAN,
                    },
                    None,
                ),
            }
        })
        .collect();

    let samples: Vec<&CharacterSample> = results.iter().filter_map(|(_, s)| s.as_ref()).collect();
    let mut min_pairwise_distance = f64::INFINITY;
    for (a, sa) in samples.iter().enumerate() {
        for sb in &samples[a + 1..] {
            min_pairwise_distance = min_pairwise_distance.min(sa.distance(sb));
        }
    }
    Ok(SweepReport {
        n,
        perturbation,
        trials: results.into_iter().map(|(o, _)| o).collect(),
        min_pairwise_distance,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct IsolationReport {
    pub n: usize,
    pub radius: f64,
    pub trials: Vec<TrialOutcome>,
    pub converged: usize,
    pub max_distance: f64,
    /// Converged trials landing farther than `threshold` from `χ_n`.
    pub violations: usize,
    pub threshold: f64,
}

/// Perturbs `ρ_n` by `radius` in Frobenius norm, projects back onto
/// `{relators, det = 1, σ_j(meridian) = σ_j(ρ_n)}` with minimum-norm
/// Gauss–Newton steps and measures the character distance to `χ_n`.
pub fn unipotent_isolation_probe(
    manifold: &Manifold,
    n: usize,
    trials: usize,
    radius: f64,
    seed: u64,
) -> Result<IsolationReport> {
    let (gauged, base) = build_system(manifold, n, true)?;
    let system = gauged.without_gauge();
    let chi = sample(manifold, &base);
    let threshold = 1e-8;
    let outcomes: Vec<TrialOutcome> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_rng(seed, trial);
            let mut noise: Vec<CMatrix> = base
                .matrices
                .iter()
                .map(|m| CMatrix::from_fn(m.nrows(), m.ncols(), |_, _| random_complex(&mut rng)))
                .collect();
            let total: f64 = noise.iter().map(|m| m.norm_squared()).sum::<f64>().sqrt();
            for m in &mut noise {
                *m *= Complex64::new(radius / total, 0.0);
            }
            let start = system.point(base.matrices.iter().zip(&noise).map(|(a, b)| a + b).collect());
            let options = NewtonOptions {
                rank_tolerance: 1e-9,
                ..NewtonOptions::default()
            };
            match newton_solve(&system, &start, options) {
                Ok(report) => TrialOutcome {
                    trial,
                    converged: true,
                    iterations: report.iterations,
                    residual: report.residual_norm,
                    target_error: report.point.residuals.target,
                    condition: report.condition,
                    distance: sample(manifold, &report.point).distance(&chi),
                },
                Err(_) => TrialOutcome {
                    trial,
                    converged: false,
                    iterations: 0,
                    residual: f64::NAN,
                    target_error: f64::NAN,
                    condition: f64::NAN,
                    distance: f64::NAN,
                },
            }
        })
        .collect();
    let converged = outcomes.iter().filter(|o| o.converged).count();
    let max_distance = outcomes
        .iter()
        .filter(|o| o.converged)
        .map(|o| o.distance)
        .fold(0.0, f64::max);
    let violations = outcomes
        .iter()
        .filter(|o| o.converged && o.distance > threshold)
        .count();
    Ok(IsolationReport {
        n,
        radius,
        trials: outcomes,
        converged,
        max_distance,
        violations,
        threshold,
    })
}

/// The exact `J` against central differences of `σ_j((Id + ε·d_{ω_i})ρ(γ))`
/// in complex floating point on the normalised holonomy.
#[derive(Clone, Debug, Serialize)]
pub struct JacobianComparison {
    pub n: usize,
    pub class: [i64; 2],
    pub max_abs_error: f64,
    pub relative_error: f64,
}

pub fn exact_vs_numeric_jacobian(manifold: &Manifold, n: usize, class: PeripheralClass) -> Result<JacobianComparison> {
    let report = peripheral_parabolic_check(&manifold.presentation, &manifold.lift)?
        .into_iter()
        .next()
        .ok_or(crate::error::Error::NotParabolic { word: String::new() })?;
    let shape = CuspShape::specialized(report.tau.clone())?.with_signs(report.meridian_sign, report.longitude_sign);
    let exact = sigma_derivative_matrix(n, &shape, class)?;
    let word = report.meridian.power(class.p).concat(&report.longitude.power(class.q));
    let rho = to_complex_matrix(&rho_n_of_word(&report.normalized, n, &word)?);
    let eps = 1e-5;
    let mut max_abs_error: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for i in 1..n {
        let d = integrate_form(&TorusForm::Omega(i), n, &shape, class.p, class.q)?;
        let d = CMatrix::from_fn(n, n, |r, c| d.get(r, c).coeff(0).to_complex());
        let id = CMatrix::identity(n, n);
        let at = |e: f64| sigma_with_gradients(&((&id + &d * Complex64::new(e, 0.0)) * &rho)).0;
        let (plus, minus) = (at(eps), at(-eps));
        for j in 1..n {
            let derivative = (plus[j - 1] - minus[j - 1]) / (2.0 * eps);
            let signed = if j % 2 == 0 { derivative } else { -derivative };
            let exact_entry = exact.jacobian[i - 1][j - 1].coeff(0).to_complex();
            max_abs_error = max_abs_error.max((signed - exact_entry).norm());
            scale = scale.max(exact_entry.norm());
        }
    }
    Ok(JacobianComparison {
        n,
        class: [class.p, class.q],
        max_abs_error,
        relative_error: max_abs_error / scale.max(f64::MIN_POSITIVE),
    })
}
