//! The maps S, φ and G = S∘φ⁻¹ that turn ξ_n into frequencies.

use dbridge::maps::{g_of_t, gamma_shift, gamma_shift_integral, phi_inverse, ModulusFocusing};

fn main() -> dbridge::Result<()> {
    println!(
        "{:>8} {:>22} {:>22} {:>22}",
        "k", "S(k)", "φ(k)", "1 - φ(k)"
    );
    for k in [0.7072, 0.75, 0.8, 0.9, 0.99, 0.999_999] {
        let m = ModulusFocusing::new(k)?;
        let (phi, rest) = m.phi_pair();
        println!("{k:>8} {:>22.15e} {phi:>22.15e} {rest:>22.15e}", m.s());
    }
    for t in [0.1, 0.5, 0.9, 0.999] {
        let m = phi_inverse(t)?;
        println!("φ⁻¹({t}) = {:.15}, G({t}) = {:.15}", m.k(), g_of_t(t)?);
    }
    let (n, omega, length) = (2, -3.0, 1.0);
    println!(
        "γ for n = {n}, ω = {omega}: Carlson {:.15}, quadrature {:.15}",
        gamma_shift(n, omega, length)?,
        gamma_shift_integral(n, omega, length)?
    );
    Ok(())
}
