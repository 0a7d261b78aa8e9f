//! Isolated frequencies and branch markers for an irrational and a rational ratio.

use dbridge::alpha::Catalog;
use dbridge::spectrum::{enumerate_solutions, GraphGeometry, Solution};

fn main() -> dbridge::Result<()> {
    let catalog = Catalog::default();
    for spec in ["inv_sqrt5", "3/8"] {
        let alpha = catalog.resolve(spec)?;
        let geom = GraphGeometry::from_ratio(&alpha, 1.0)?;
        println!("α = {alpha} (L1 = {:.6}, L2 = {:.6})", geom.l1(), geom.l2());
        for s in enumerate_solutions(&geom, &alpha, 8)? {
            match s {
                Solution::Isolated(w) => println!(
                    "  {:<5} n = {:<2} ω = {:>22.15e}  k = {:.12}  shift = {:+.12}",
                    w.family,
                    w.n,
                    w.omega,
                    w.k(),
                    w.shift
                ),
                Solution::Branch(b) => {
                    println!("  {:<5} n = {:<2} continuous branch", b.family, b.n)
                }
            }
        }
    }
    Ok(())
}
