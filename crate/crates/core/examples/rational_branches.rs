//! Continuous branches at degenerate indices of a rational ratio.

use dbridge::alpha::AlphaRatio;
use dbridge::profile::build_profile;
use dbridge::spectrum::{branch_solution, BranchSign, Family, GraphGeometry};

fn main() -> dbridge::Result<()> {
    let alpha = AlphaRatio::rational(1, 2)?;
    let geom = GraphGeometry::from_ratio(&alpha, 1.0)?;
    for (family, n) in [(Family::Plus, 2), (Family::Minus, 1)] {
        for omega in [-0.1, -1.0, -10.0, -100.0] {
            let w = branch_solution(&geom, &alpha, family, n, omega, BranchSign::Plus)?;
            let (cont, deriv) = build_profile(&w, &geom)?.kirchhoff_residual();
            println!(
                "{family:<5} n = {n}  ω = {omega:>7}  k = {:.12}  shift γ = {:+.12}  Kirchhoff {cont:.1e} / {deriv:.1e}",
                w.k(),
                w.shift
            );
        }
    }
    Ok(())
}
