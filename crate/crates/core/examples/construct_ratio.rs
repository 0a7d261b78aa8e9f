//! A ratio whose dyadic subsequence ξ̃_{2^{n_j}} converges to a chosen ℓ.

use dbridge::alpha::{construct_alpha, AlphaKind};
use dbridge::scan::omega_prediction;

fn main() -> dbridge::Result<()> {
    let ell: f64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(5.25);
    let (alpha, starts) = construct_alpha(ell, 10)?;
    let AlphaKind::Constructed(c) = alpha.kind() else {
        unreachable!()
    };
    println!("ℓ = {ell}, α ≈ {:.17}", alpha.value());
    for (j, n) in starts.iter().enumerate() {
        println!(
            "  j = {:>2}  n_j = {n:>6}  ξ̃ = {}",
            j + 1,
            c.xi_tilde_block_decimal(j + 1, 24)?
        );
    }
    println!(
        "implied plus-family limit for L = 1: ω₀ = {:.12e}",
        omega_prediction(ell, 1.0)
    );
    Ok(())
}
