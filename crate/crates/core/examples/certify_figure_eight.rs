//! End-to-end exact certificate for the figure-eight knot complement: relator
//! check, peripheral normalisation and the σ-Jacobian on γ₁ and (1,1).
//!
//!     cargo run --example certify_figure_eight -- [max_n]

use charvar::certify::{certify_manifold, TauMode};
use charvar::deform::PeripheralClass;
use charvar::manifold::{check_relators, peripheral_parabolic_check, Manifold};

fn main() -> charvar::Result<()> {
    let max_n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(5);
    let fig8 = Manifold::figure_eight();
    for r in check_relators(&fig8.presentation, &fig8.lift)? {
        println!("relator {} ↦ {}Id", r.relator, r.sign);
    }
    let cusp = &peripheral_parabolic_check(&fig8.presentation, &fig8.lift)?[0];
    println!(
        "meridian {} ({} lift), longitude {} ({} lift), τ = {}",
        cusp.meridian, cusp.meridian_sign, cusp.longitude, cusp.longitude_sign, cusp.tau
    );

    let classes = [PeripheralClass::MERIDIAN, PeripheralClass::new(1, 1)];
    for n in 2..=max_n {
        let cert = certify_manifold(&fig8, n, TauMode::Specialize, &classes)?;
        for (word, j) in &cert.cusps[0].classes {
            println!(
                "n = {n}, γ = {word}: det J = {}, lead product agrees: {}, {}",
                j.determinant,
                j.determinant == j.lead_product,
                if j.certified { "certified" } else { "NOT certified" }
            );
        }
    }
    let record = certify_manifold(&fig8, 2, TauMode::Formal, &classes[..1])?.record();
    println!("{}", serde_json::to_string_pretty(&record).expect("serializable"));
    Ok(())
}
