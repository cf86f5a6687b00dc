//! The trace pairing on 𝔰𝔩(n): the constants c_i = tr(h₋^i h₊^i), the
//! invariants of the parabolic subgroup and the decomposition of 𝔰𝔩(n) under
//! the adjoint action of SL(2).
//!
//!     cargo run --example lie_pairing -- [max_n]

use charvar::liealg::{clebsch_gordan_dims, gram_determinant, parabolic_invariants, PairingConstants};

fn main() -> charvar::Result<()> {
    let max_n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(6);
    println!("{:<3} {:<40} {:<8} {:<22} gram det", "n", "c_i", "ker ad", "summand dimensions");
    for n in 2..=max_n {
        let c = PairingConstants::compute(n)?;
        let inv = parabolic_invariants(n)?;
        let dims = clebsch_gordan_dims(n)?;
        let gram = if n <= 6 { gram_determinant(n).to_string() } else { "-".into() };
        let cs: Vec<String> = c.c.iter().map(|x| x.to_string()).collect();
        println!(
            "{n:<3} {:<40} {:<8} {:<22} {gram}",
            cs.join(" "),
            format!("{}{}", inv.basis.len(), if inv.spans_powers { " = h+^i" } else { "" }),
            format!("{dims:?}"),
        );
    }
    Ok(())
}
