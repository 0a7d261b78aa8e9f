//! Linear eigenvalues and the small-amplitude cnoidal waves bifurcating from them.

use dbridge::alpha::AlphaRatio;
use dbridge::spectrum::{bifurcation_check, linear_eigenvalues, GraphGeometry};

fn main() -> dbridge::Result<()> {
    let alpha = AlphaRatio::rational(1, 3)?;
    let geom = GraphGeometry::from_ratio(&alpha, 1.0)?;
    for e in linear_eigenvalues(&geom, &alpha, 3) {
        println!("λ_{} = {:.12} (q0 = {})", e.n, e.lambda, e.q0);
    }
    for eps in [1e-2, 1e-4, 1e-6, 1e-8] {
        let b = bifurcation_check(&geom, &alpha, 1, eps)?;
        println!(
            "ε = {eps:.0e}: amplitude {:.6e}, √(4ε/3) = {:.6e}, ratio {:.9}",
            b.amplitude,
            b.predicted,
            b.amplitude / b.predicted
        );
    }
    let irrational = AlphaRatio::quadratic(0, 1, 5, 5)?;
    let g = GraphGeometry::from_ratio(&irrational, 1.0)?;
    println!(
        "α = {irrational}: {} eigenvalues",
        linear_eigenvalues(&g, &irrational, 10).len()
    );
    Ok(())
}
