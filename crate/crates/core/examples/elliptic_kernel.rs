//! Jacobi functions and complete integrals from the elliptic kernel.

use dbridge::elliptic::{arccn, complete_k, jacobi_cn_sn_dn, k_of_inv_sqrt2, EllipticModulus};

fn main() -> dbridge::Result<()> {
    println!("K(1/√2) = {:.17}", k_of_inv_sqrt2());
    for k in [0.0, 0.5, 0.9, 0.999] {
        let m = EllipticModulus::new(k)?;
        let kk = complete_k(&m);
        let (cn, sn, dn) = jacobi_cn_sn_dn(0.5 * kk, &m);
        println!(
            "k = {k:<5}  K = {kk:.15}  cn(K/2) = {cn:.15}  sn = {sn:.15}  dn = {dn:.15}  arccn(cn) = {:.15}",
            arccn(cn, &m)?
        );
    }
    Ok(())
}
