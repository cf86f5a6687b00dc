//! Perturbs ρ_n of the figure-eight group, projects back onto the
//! boundary-unipotent representations and reports the character distance to χ_n.
//!
//!     cargo run --release --example isolation_probe -- [n] [trials] [radius]

use charvar::continuation::unipotent_isolation_probe;
use charvar::manifold::Manifold;

fn main() -> charvar::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n = args.first().and_then(|s| s.parse().ok()).unwrap_or(2);
    let trials = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(100);
    let radius = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(1e-2);

    let fig8 = Manifold::figure_eight();
    let report = unipotent_isolation_probe(&fig8, n, trials, radius, 7)?;
    println!("n = {n}, radius = {radius:e}, trials = {trials}");
    println!("converged: {} / {trials}", report.converged);
    println!("max character distance to chi_n: {:.3e}", report.max_distance);
    println!("trials farther than {:e}: {}", report.threshold, report.violations);
    for t in report.trials.iter().filter(|t| !t.converged) {
        println!("  trial {} did not converge", t.trial);
    }
    Ok(())
}
