//! Floating-point companion to the exact certificate: Gauss–Newton on the
//! polynomial system `{relators = Id, det = 1, σ_j(ρ(γ)) = targets}` in the
//! entries of the generator images, with a linear slice through the base point
//! transverse to conjugation.

mod character;
mod probe;

pub use character::CharacterSample;
pub use probe::{
    SAMPLE_LENGTH,
    exact_vs_numeric_jacobian, target_sweep, unipotent_isolation_probe, IsolationReport, JacobianComparison,
    SweepReport, TrialOutcome,
};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{FieldElement, Matrix};
use crate::manifold::{rho_n_of_word, Manifold};
use crate::word::Word;

pub type CMatrix = DMatrix<Complex64>;

pub fn to_complex_matrix(m: &Matrix<FieldElement>) -> CMatrix {
    let n = m.n();
    CMatrix::from_fn(n, n, |r, c| m.get(r, c).to_complex())
}

/// Generator images plus the residuals recomputed at construction.
#[derive(Clone, Debug)]
pub struct RepPoint {
    pub matrices: Vec<CMatrix>,
    pub residuals: Residuals,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct Residuals {
    pub relator: f64,
    pub det: f64,
    pub target: f64,
    pub gauge: f64,
}

impl Residuals {
    pub fn max(&self) -> f64 {
        self.relator.max(self.det).max(self.target).max(self.gauge)
    }
}

/// Product of generator images along a word.
pub fn word_product(z: &[CMatrix], index: &dyn Fn(char) -> usize, word: &Word) -> CMatrix {
    let n = z[0].nrows();
    let mut acc = CMatrix::identity(n, n);
    for l in word.letters() {
        let g = &z[index(l.generator)];
        acc = if l.inverse {
            acc * g.clone().try_inverse().expect("generator image is invertible")
        } else {
            acc * g
        };
    }
    acc
}

/// Characteristic polynomial data: `σ_1..σ_{n−1}` and the Faddeev–LeVerrier
/// matrices `B_0 = Id, B_k = M·B_{k−1} + c_{n−k}·Id`, which give
/// `∂σ_j/∂M_rc = (−1)^{j+1} (B_{j−1})_cr`.
pub fn sigma_with_gradients(m: &CMatrix) -> (Vec<Complex64>, Vec<CMatrix>) {
    let n = m.nrows();
    let id = CMatrix::identity(n, n);
    let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
    coeffs[n] = Complex64::new(1.0, 0.0);
    let mut b = vec![id.clone()];
    for k in 1..=n {
        let mb = m * &b[k - 1];
        coeffs[n - k] = -mb.trace() / k as f64;
        if k < n {
            b.push(mb + &id * coeffs[n - k]);
        }
    }
    let sigmas = (1..n)
        .map(|j| if j % 2 == 0 { coeffs[n - j] } else { -coeffs[n - j] })
        .collect();
    let grads = (1..n)
        .map(|j| {
            let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
            b[j - 1].transpose() * Complex64::new(sign, 0.0)
        })
        .collect();
    (sigmas, grads)
}

/// The system and everything needed to evaluate it.
#[derive(Clone, Debug)]
pub struct System {
    pub n: usize,
    pub generators: Vec<char>,
    pub relators: Vec<Word>,
    /// One peripheral word per cusp whose `σ_j` are prescribed.
    pub peripherals: Vec<Word>,
    pub targets: Vec<Complex64>,
    /// Slice `Σ conj(T_v)·(Z − Z₀) = 0` for `v` in a basis of 𝔰𝔩(n).
    gauge: Option<(Vec<CMatrix>, Vec<Vec<CMatrix>>)>,
}

impl System {
    pub fn unknowns(&self) -> usize {
        self.generators.len() * self.n * self.n
    }

    pub fn has_gauge(&self) -> bool {
        self.gauge.is_some()
    }

    pub fn with_targets(&self, targets: Vec<Complex64>) -> Result<System> {
        if targets.len() != self.targets.len() {
            return Err(Error::DimensionMismatch {
                left: self.targets.len(),
                right: targets.len(),
            });
        }
        Ok(System {
            targets,
            ..self.clone()
        })
    }

    pub fn without_gauge(&self) -> System {
        System {
            gauge: None,
            ..self.clone()
        }
    }

    fn index(&self) -> impl Fn(char) -> usize + '_ {
        move |g| {
            self.generators
                .iter()
                .position(|&h| h == g)
                .expect("word uses a known generator")
        }
    }

    fn block_sizes(&self) -> [usize; 4] {
        let n = self.n;
        [
            self.relators.len() * n * n,
            self.generators.len(),
            self.targets.len(),
            self.gauge.as_ref().map_or(0, |(_, t)| t.len()),
        ]
    }

    pub fn equations(&self) -> usize {
        self.block_sizes().iter().sum()
    }

    fn flatten(&self, z: &[CMatrix]) -> DVector<Complex64> {
        DVector::from_iterator(self.unknowns(), z.iter().flat_map(|m| m.transpose().iter().copied().collect::<Vec<_>>()))
    }

    fn unflatten(&self, v: &DVector<Complex64>) -> Vec<CMatrix> {
        let n = self.n;
        (0..self.generators.len())
            .map(|g| CMatrix::from_fn(n, n, |r, c| v[g * n * n + r * n + c]))
            .collect()
    }

    /// Residual blocks: relator entries, determinants, σ-targets, gauge.
    pub fn residual(&self, z: &[CMatrix]) -> DVector<Complex64> {
        let n = self.n;
        let index = self.index();
        let mut out = Vec::with_capacity(self.equations());
        let id = CMatrix::identity(n, n);
        for rel in &self.relators {
            let w = word_product(z, &index, rel) - &id;
            out.extend(w.transpose().iter().copied());
        }
        for m in z {
            out.push(m.determinant() - Complex64::new(1.0, 0.0));
        }
        let mut t = self.targets.iter();
        for p in &self.peripherals {
            let (sigmas, _) = sigma_with_gradients(&word_product(z, &index, p));
            for s in sigmas {
                out.push(s - t.next().expect("target count checked"));
            }
        }
        if let Some((base, tangents)) = &self.gauge {
            for tv in tangents {
                let mut acc = Complex64::new(0.0, 0.0);
                for (g, tg) in tv.iter().enumerate() {
                    acc += tg.iter().zip((&z[g] - &base[g]).iter()).map(|(a, b)| a.conj() * b).sum::<Complex64>();
                }
                out.push(acc);
            }
        }
        DVector::from_vec(out)
    }

    pub fn residuals(&self, z: &[CMatrix]) -> Residuals {
        let f = self.residual(z);
        let [a, b, c, _] = self.block_sizes();
        let block_max = |lo: usize, hi: usize| (lo..hi).map(|k| f[k].norm()).fold(0.0, f64::max);
        Residuals {
            relator: block_max(0, a),
            det: block_max(a, a + b),
            target: block_max(a + b, a + b + c),
            gauge: block_max(a + b + c, f.len()),
        }
    }

    pub fn point(&self, matrices: Vec<CMatrix>) -> RepPoint {
        let residuals = self.residuals(&matrices);
        RepPoint { matrices, residuals }
    }

    /// Analytic Jacobian. A letter at position `t` of a word `W = L·G·R`
    /// contributes `∂W_ab/∂G_rc = L_ar R_cb`; an inverse letter uses
    /// `L' = −L·G⁻¹` and `R' = G⁻¹·R`.
    pub fn jacobian(&self, z: &[CMatrix]) -> CMatrix {
        let n = self.n;
        let nn = n * n;
        let index = self.index();
        let mut jac = CMatrix::zeros(self.equations(), self.unknowns());
        let col = |g: usize, r: usize, c: usize| g * nn + r * n + c;

        let factors = |word: &Word| -> Vec<(usize, CMatrix, CMatrix)> {
            let letters = word.letters();
            let images: Vec<CMatrix> = letters
                .iter()
                .map(|l| {
                    let g = &z[index(l.generator)];
                    if l.inverse {
                        g.clone().try_inverse().expect("invertible")
                    } else {
                        g.clone()
                    }
                })
                .collect();
            let mut suffix = vec![CMatrix::identity(n, n); letters.len() + 1];
            for t in (0..letters.len()).rev() {
                suffix[t] = &images[t] * &suffix[t + 1];
            }
            let mut prefix = CMatrix::identity(n, n);
            let mut out = Vec::with_capacity(letters.len());
            for (t, l) in letters.iter().enumerate() {
                let g = index(l.generator);
                let (left, right) = if l.inverse {
                    (-(&prefix * &images[t]), &images[t] * &suffix[t + 1])
                } else {
                    (prefix.clone(), suffix[t + 1].clone())
                };
                out.push((g, left, right));
                prefix = &prefix * &images[t];
            }
            out
        };

        let mut row = 0;
        for rel in &self.relators {
            for (g, left, right) in factors(rel) {
                for a in 0..n {
                    for b in 0..n {
                        for r in 0..n {
                            for c in 0..n {
                                jac[(row + a * n + b, col(g, r, c))] += left[(a, r)] * right[(c, b)];
                            }
                        }
                    }
                }
            }
            row += nn;
        }
        for (g, m) in z.iter().enumerate() {
            let det = m.determinant();
            let inv = m.clone().try_inverse().expect("invertible");
            for r in 0..n {
                for c in 0..n {
                    jac[(row, col(g, r, c))] = det * inv[(c, r)];
                }
            }
            row += 1;
        }
        for p in &self.peripherals {
            let (_, grads) = sigma_with_gradients(&word_product(z, &index, p));
            let parts = factors(p);
            for s in &grads {
                for (g, left, right) in &parts {
                    let contribution = left.transpose() * s * right.transpose();
                    for r in 0..n {
                        for c in 0..n {
                            jac[(row, col(*g, r, c))] += contribution[(r, c)];
                        }
                    }
                }
                row += 1;
            }
        }
        if let Some((_, tangents)) = &self.gauge {
            for tv in tangents {
                for (g, tg) in tv.iter().enumerate() {
                    for r in 0..n {
                        for c in 0..n {
                            jac[(row, col(g, r, c))] = tg[(r, c)].conj();
                        }
                    }
                }
                row += 1;
            }
        }
        jac
    }

    /// Central differences along each real coordinate direction.
    pub fn jacobian_fd(&self, z: &[CMatrix], h: f64) -> CMatrix {
        let x0 = self.flatten(z);
        let mut jac = CMatrix::zeros(self.equations(), self.unknowns());
        for k in 0..self.unknowns() {
            let mut plus = x0.clone();
            let mut minus = x0.clone();
            plus[k] += Complex64::new(h, 0.0);
            minus[k] -= Complex64::new(h, 0.0);
            let diff = (self.residual(&self.unflatten(&plus)) - self.residual(&self.unflatten(&minus))) / Complex64::new(2.0 * h, 0.0);
            jac.set_column(k, &diff);
        }
        jac
    }
}

/// `ρ_n` of the generators as complex matrices.
pub fn base_point(manifold: &Manifold, n: usize) -> Result<Vec<CMatrix>> {
    manifold
        .presentation
        .generators
        .iter()
        .map(|&g| Ok(to_complex_matrix(&rho_n_of_word(&manifold.lift, n, &Word::generator(g))?)))
        .collect()
}

/// The system at `ρ_n` with the σ-values of `ρ_n` on each meridian as targets.
/// With `gauge`, a slice through `ρ_n` transverse to conjugation is appended.
pub fn build_system(manifold: &Manifold, n: usize, gauge: bool) -> Result<(System, RepPoint)> {
    if n < 2 {
        return Err(Error::DimensionTooSmall(n));
    }
    let base = base_point(manifold, n)?;
    let generators = manifold.presentation.generators.clone();
    let peripherals: Vec<Word> = manifold.presentation.cusps.iter().map(|(m, _)| m.clone()).collect();
    let gauge_data = gauge.then(|| {
        let tangents = crate::liealg::traceless_basis(n)
            .iter()
            .map(|v| {
                let v = to_complex_matrix(&v.map(|x| FieldElement::rational(x.clone())));
                base.iter().map(|g| &v * g - g * &v).collect()
            })
            .collect();
        (base.clone(), tangents)
    });
    let mut system = System {
        n,
        generators,
        relators: manifold.presentation.relators.clone(),
        peripherals,
        targets: Vec::new(),
        gauge: gauge_data,
    };
    let targets: Vec<Complex64> = {
        let index = system.index();
        system
            .peripherals
            .iter()
            .flat_map(|p| sigma_with_gradients(&word_product(&base, &index, p)).0)
            .collect()
    };
    system.targets = targets;
    let point = system.point(base);
    Ok((system, point))
}

#[derive(Clone, Copy, Debug)]
pub struct NewtonOptions {
    pub max_iterations: usize,
    pub tolerance: f64,
    /// Singular values below `rank_tolerance · σ_max` are treated as zero.
    pub rank_tolerance: f64,
}

impl Default for NewtonOptions {
    fn default() -> Self {
        NewtonOptions {
            max_iterations: 60,
            tolerance: 1e-10,
            rank_tolerance: 1e-10,
        }
    }
}

#[derive(Clone, Debug)]
pub struct NewtonReport {
    pub point: RepPoint,
    pub iterations: usize,
    pub residual_norm: f64,
    /// `σ_max/σ_min` of the final Jacobian over its numerical rank.
    pub condition: f64,
    pub rank: usize,
}

fn norm(v: &DVector<Complex64>) -> f64 {
    v.norm()
}

/// Minimum-norm least-squares step from a truncated SVD.
fn lstsq_step(jac: &CMatrix, rhs: &DVector<Complex64>, rank_tolerance: f64) -> (DVector<Complex64>, usize, f64) {
    let svd = jac.clone().svd(true, true);
    let smax = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let cutoff = smax * rank_tolerance;
    let rank = svd.singular_values.iter().filter(|&&s| s > cutoff).count();
    let smin = svd
        .singular_values
        .iter()
        .copied()
        .filter(|&s| s > cutoff)
        .fold(f64::INFINITY, f64::min);
    let u = svd.u.as_ref().expect("u computed");
    let v_t = svd.v_t.as_ref().expect("v_t computed");
    let mut step = DVector::zeros(jac.ncols());
    for (k, &s) in svd.singular_values.iter().enumerate() {
        if s <= cutoff {
            continue;
        }
        let coeff = u.column(k).dotc(rhs) / s;
        step += v_t.row(k).adjoint() * coeff;
    }
    (step, rank, smax / smin)
}

/// Damped Gauss–Newton with step halving. With a gauge slice the system has
/// full column rank near `ρ_n`; without one, the minimum-norm step moves
/// transversally to the solution set.
pub fn newton_solve(system: &System, start: &RepPoint, options: NewtonOptions) -> Result<NewtonReport> {
    let mut z = start.matrices.clone();
    let mut f = system.residual(&z);
    if !norm(&f).is_finite() {
        return Err(Error::Divergence {
            iterations: 0,
            residual: f64::INFINITY,
        });
    }
    let mut iterations = 0;
    while norm(&f) >= options.tolerance {
        if iterations == options.max_iterations {
            return Err(Error::Divergence {
                iterations,
                residual: norm(&f),
            });
        }
        let jac = system.jacobian(&z);
        let (step, rank, _) = lstsq_step(&jac, &(-&f), options.rank_tolerance);
        if system.has_gauge() && rank < system.unknowns() {
            return Err(Error::RankDeficient {
                rank,
                required: system.unknowns(),
            });
        }
        let x = system.flatten(&z);
        let mut t = 1.0;
        let current = norm(&f);
        loop {
            let candidate = system.unflatten(&(&x + &step * Complex64::new(t, 0.0)));
            let fc = system.residual(&candidate);
            if norm(&fc) < current || t < 1e-6 {
                z = candidate;
                f = fc;
                break;
            }
            t *= 0.5;
        }
        iterations += 1;
    }
    let jac = system.jacobian(&z);
    let (_, rank, condition) = lstsq_step(&jac, &f, options.rank_tolerance);
    Ok(NewtonReport {
        residual_norm: norm(&f),
        point: system.point(z),
        iterations,
        condition,
        rank,
    })
}

/// Numerical rank of a Jacobian.
pub fn numerical_rank(jac: &CMatrix, rank_tolerance: f64) -> usize {
    let s = jac.singular_values();
    let smax = s.iter().copied().fold(0.0, f64::max);
    s.iter().filter(|&&x| x > smax * rank_tolerance).count()
}

/// Tangent counts at `ρ_n`: kernel of the relator and determinant block,
/// the conjugation orbit, and their difference, the local dimension of the
/// character variety.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GaugeCount {
    pub kernel: usize,
    pub orbit: usize,
    pub local_dimension: usize,
    pub gauged_rank: usize,
    pub unknowns: usize,
}

pub fn gauge_count(manifold: &Manifold, n: usize) -> Result<GaugeCount> {
    let (system, point) = build_system(manifold, n, true)?;
    let z = &point.matrices;
    let full = system.jacobian(z);
    let rel_rows = system.relators.len() * n * n + system.generators.len();
    let hom_block = full.rows(0, rel_rows).into_owned();
    let kernel = system.unknowns() - numerical_rank(&hom_block, 1e-9);
    let orbit_rows: Vec<CMatrix> = crate::liealg::traceless_basis(n)
        .iter()
        .map(|v| {
            let v = to_complex_matrix(&v.map(|x| FieldElement::rational(x.clone())));
            let flat: Vec<Complex64> = z
                .iter()
                .flat_map(|g| (&v * g - g * &v).transpose().iter().copied().collect::<Vec<_>>())
                .collect();
            CMatrix::from_row_slice(1, flat.len(), &flat)
        })
        .collect();
    let mut orbit_matrix = CMatrix::zeros(orbit_rows.len(), system.unknowns());
    for (k, r) in orbit_rows.iter().enumerate() {
        orbit_matrix.set_row(k, &r.row(0));
    }
    let orbit = numerical_rank(&orbit_matrix, 1e-9);
    Ok(GaugeCount {
        kernel,
        orbit,
        local_dimension: kernel - orbit,
        gauged_rank: numerical_rank(&full, 1e-9),
        unknowns: system.unknowns(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_point_solves_the_system() {
        let m = Manifold::figure_eight();
        for n in 2..5 {
            let (system, point) = build_system(&m, n, true).unwrap();
            assert!(point.residuals.max() < 1e-12, "{:?}", point.residuals);
            let binom: Vec<f64> = (1..n).map(|j| crate::exact::binomial(n, j).to_f64()).collect();
            for (t, b) in system.targets.iter().zip(binom) {
                assert!((t - Complex64::new(b, 0.0)).norm() < 1e-12);
            }
            let report = newton_solve(&system, &point, NewtonOptions::default()).unwrap();
            assert_eq!(report.iterations, 0);
        }
    }

    #[test]
    fn analytic_jacobian_matches_differences() {
        let m = Manifold::figure_eight();
        for n in 2..4 {
            let (system, point) = build_system(&m, n, true).unwrap();
            let z: Vec<CMatrix> = point
                .matrices
                .iter()
                .enumerate()
                .map(|(g, a)| a.map(|x| x + Complex64::new(0.01 * (g as f64 + 1.0), -0.02)))
                .collect();
            let exact = system.jacobian(&z);
            let fd = system.jacobian_fd(&z, 1e-6);
            let scale = exact.iter().map(|x| x.norm()).fold(1.0, f64::max);
            let err = (exact - fd).iter().map(|x| x.norm()).fold(0.0, f64::max);
            assert!(err / scale < 1e-6, "relative error {err}");
        }
    }

    #[test]
    fn tangent_dimension_is_n_minus_one() {
        let m = Manifold::figure_eight();
        for n in 2..5 {
            let count = gauge_count(&m, n).unwrap();
            assert_eq!(count.orbit, n * n - 1);
            assert_eq!(count.local_dimension, n - 1);
            assert_eq!(count.gauged_rank, count.unknowns);
        }
    }
}
