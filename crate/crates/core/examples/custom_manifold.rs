//! Loads a manifold from the plain-text format, here the figure-eight lift
//! conjugated by (2 1; 1 1), and certifies it. Parse errors carry line numbers.
//!
//!     cargo run --example custom_manifold -- [path]

use charvar::certify::{certify_manifold, TauMode};
use charvar::deform::PeripheralClass;
use charvar::manifold::{parse_manifold, Manifold};

const CONJUGATED: &str = "\
# figure-eight, holonomy conjugated by (2 1; 1 1)
field: 1,-1,1
gens: x y
rel: XyxYxyXYxY
cusp: x yXYxxYXy
mat x: -1 4 -1 3
mat y: 1,1 0,-1 0,1 1,-1
";

fn main() -> charvar::Result<()> {
    let manifold = match std::env::args().nth(1) {
        Some(path) => Manifold::load(std::path::Path::new(&path))?,
        None => parse_manifold("conjugated-fig8", CONJUGATED)?,
    };
    println!("{}: generators {:?}", manifold.name, manifold.presentation.generators);
    for n in 2..=4 {
        let cert = certify_manifold(&manifold, n, TauMode::Specialize, &[PeripheralClass::MERIDIAN])?;
        let (_, j) = &cert.cusps[0].classes[0];
        println!("n = {n}: det J = {}, certified: {}", j.determinant, cert.certified());
    }
    match parse_manifold("broken", "gens: x\nmat x: 1 1 0\n") {
        Err(e) => println!("malformed input rejected: {e}"),
        Ok(_) => println!("malformed input unexpectedly accepted"),
    }
    Ok(())
}
