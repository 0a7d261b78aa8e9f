//! Small |ξ̃_n| hits, their cluster points and the frequency limit law.
//!
//! `cargo run --release --example diophantine_scan -- inv_one_plus_sqrt5 10000000`

use dbridge::alpha::Catalog;
use dbridge::scan::{cluster_hits, fill_omegas, omega_limit_report, scan_hits, DEFAULT_THRESHOLD};
use dbridge::spectrum::GraphGeometry;

fn main() -> dbridge::Result<()> {
    let mut args = std::env::args().skip(1);
    let spec = args.next().unwrap_or_else(|| "inv_sqrt3".into());
    let n_max: u64 = args
        .next()
        .and_then(|s| s.parse().ok())
        .unwrap_or(1_000_000);
    let alpha = Catalog::default().resolve(&spec)?;
    let geom = GraphGeometry::from_ratio(&alpha, 1.0)?;

    let mut hits = scan_hits(&alpha, n_max, DEFAULT_THRESHOLD)?;
    fill_omegas(&geom, &alpha, &mut hits)?;
    for h in &hits {
        println!(
            "{:>9}  {}  ω⁺ = {:.12e}",
            h.n,
            h.seq.xi_tilde_decimal(20),
            h.omega_plus.unwrap_or(f64::NAN)
        );
    }
    let report = cluster_hits(&hits, 1e-6);
    for c in &report.clusters {
        println!(
            "cluster: mean {:+.10}  latest {:+.12}  members {:?}  recurrence {:?}",
            c.center, c.latest, c.members, c.recurrence
        );
    }
    if let Some(last) = omega_limit_report(&geom, &alpha, &hits)?.last() {
        println!("n = {}: √(ω⁺/prediction) = {:.12}", last.n, last.ratio);
    }
    Ok(())
}
