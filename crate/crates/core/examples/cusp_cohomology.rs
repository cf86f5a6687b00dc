//! Twisted cohomology of the cusp torus: the forms ω_i and (a dx + b dy)⊗h₊^j,
//! their cup pairing with a formal cusp shape τ, and growth along the cusp.
//!
//!     cargo run --example cusp_cohomology -- [n] [a] [b]

use charvar::cusp::{cohomology_basis, growth_exponent, is_square_integrable, CuspShape, TorusForm};
use charvar::exact::{FieldElement, Ring};

fn main() -> charvar::Result<()> {
    let args: Vec<i64> = std::env::args().skip(1).filter_map(|s| s.parse().ok()).collect();
    let n = args.first().copied().unwrap_or(3) as usize;
    let (a, b) = (args.get(1).copied().unwrap_or(1), args.get(2).copied().unwrap_or(0));

    let shape = CuspShape::formal();
    let basis = cohomology_basis(n, &FieldElement::from_int(a), &FieldElement::from_int(b), &shape)?;
    println!("basis forms and growth exponents κ (|form|² dvol ~ e^(κt)):");
    for form in &basis.forms {
        let label = match form {
            TorusForm::Omega(i) => format!("ω_{i}"),
            TorusForm::Const { j, .. } => format!("({a} dx + {b} dy)⊗h+^{j}"),
        };
        println!(
            "  {label:<24} κ = {:>3}  L²: {}",
            growth_exponent(form, n)?,
            is_square_integrable(form, n)?
        );
    }
    println!("cup pairing matrix:");
    for row in basis.pairing.rows() {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:>14}")).collect();
        println!("  {}", cells.join(" "));
    }
    println!("determinant: {}", basis.determinant);
    Ok(())
}
