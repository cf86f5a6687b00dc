//! Prescribes σ-values of the figure-eight meridian near those of ρ_n, solves
//! for nearby representations and checks that distinct targets give distinct
//! characters. Also compares the numeric σ-Jacobian with the exact one.
//!
//!     cargo run --release --example newton_continuation -- [n] [perturbation]

use charvar::continuation::{exact_vs_numeric_jacobian, gauge_count, target_sweep};
use charvar::deform::PeripheralClass;
use charvar::manifold::Manifold;

fn main() -> charvar::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n = args.first().and_then(|s| s.parse().ok()).unwrap_or(2);
    let perturbation = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(1e-3);

    let fig8 = Manifold::figure_eight();
    let count = gauge_count(&fig8, n)?;
    println!(
        "tangent at rho_{n}: kernel {} = orbit {} + local dimension {}",
        count.kernel, count.orbit, count.local_dimension
    );

    let sweep = target_sweep(&fig8, n, perturbation, 4, 11)?;
    println!("trial  iters  residual    target err  condition   distance");
    for t in &sweep.trials {
        println!(
            "{:>5}  {:>5}  {:.3e}   {:.3e}   {:.3e}   {:.3e}",
            t.trial, t.iterations, t.residual, t.target_error, t.condition, t.distance
        );
    }
    println!("smallest pairwise character distance: {:.3e}", sweep.min_pairwise_distance);

    for class in [PeripheralClass::MERIDIAN, PeripheralClass::new(1, 1)] {
        let cmp = exact_vs_numeric_jacobian(&fig8, n, class)?;
        println!(
            "class ({}, {}): exact vs numeric jacobian, relative error {:.3e}",
            class.p, class.q, cmp.relative_error
        );
    }
    Ok(())
}
