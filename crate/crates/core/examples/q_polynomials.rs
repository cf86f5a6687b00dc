//! First-order change of the characteristic polynomial of a peripheral
//! element along the cusp directions ω_i. Each Q_i is computed three ways
//! (closed form, Neumann-series inverse, dual-number determinant) and its
//! valuations at λ = 0 and at the eigenvalue are reported.
//!
//!     cargo run --example q_polynomials -- [n] [p] [q]

use charvar::cusp::CuspShape;
use charvar::deform::{q_polynomial, q_polynomial_oracle, q_polynomial_via_inverse, PeripheralClass};
use charvar::rep::Sign;

fn main() -> charvar::Result<()> {
    let args: Vec<i64> = std::env::args().skip(1).filter_map(|s| s.parse().ok()).collect();
    let n = args.first().copied().unwrap_or(4) as usize;
    let class = PeripheralClass::new(args.get(1).copied().unwrap_or(1), args.get(2).copied().unwrap_or(0));

    for sign in [Sign::Plus, Sign::Minus] {
        let shape = CuspShape::formal().with_signs(sign, Sign::Plus);
        println!("meridian lift {sign}, class ({}, {}):", class.p, class.q);
        for i in 1..n {
            let q = q_polynomial(i, n, &shape, class)?;
            let agree = q.q == q_polynomial_oracle(i, n, &shape, class)?
                && q.q == q_polynomial_via_inverse(i, n, &shape, class)?;
            println!(
                "  Q_{i} = {}\n      v(λ=0) = {}, v(λ={}) = {} (expected {}), three routes agree: {agree}",
                q.q,
                q.v0,
                q.sigma,
                q.v1,
                n - i - 1
            );
        }
    }
    Ok(())
}
