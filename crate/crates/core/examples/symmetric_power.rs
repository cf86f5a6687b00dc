//! The irreducible representation ς_n of SL(2): images of group elements, of
//! the Lie algebra basis, and of the unipotent one-parameter subgroup with a
//! formal parameter.
//!
//!     cargo run --example symmetric_power -- [n]

use charvar::exact::{Beta, FieldElement, Matrix, NumberField, Poly, Rational, Ring};
use charvar::rep::{h_minus, h_plus, sl2_e, sym_power, sym_power_lie, SL2Matrix, Sign};

fn show<R: Ring>(title: &str, m: &Matrix<R>) {
    println!("{title}");
    for row in m.rows() {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:>14}")).collect();
        println!("  {}", cells.join(" "));
    }
}

fn main() -> charvar::Result<()> {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(4);

    show(&format!("h+ = ς_{n}(f)"), &h_plus::<Rational>(n));
    show(&format!("h- = ς_{n}(g)"), &h_minus::<Rational>(n));
    show("ς(e)", &sym_power_lie(&sl2_e::<Rational>(), n)?);

    let beta = Poly::<Rational, Beta>::var();
    show("ς(1 β; 0 1) = exp(β h+)", &sym_power(&SL2Matrix::upper(beta), n)?);

    let i = FieldElement::generator(&NumberField::gaussian());
    let a = SL2Matrix::upper(i.clone()).mul(&SL2Matrix::lower(FieldElement::rational(Rational::new(1, 2))));
    let b = SL2Matrix::lower(i).with_sign(Sign::Minus);
    let product = sym_power(&a.mul(&b), n)?;
    let separately = sym_power(&a, n)?.matmul(&sym_power(&b, n)?);
    show("ς(A·B) over Q(i), B a minus lift", &product);
    println!("ς(A·B) == ς(A)·ς(B): {}", product == separately);
    Ok(())
}
