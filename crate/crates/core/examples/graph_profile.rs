//! Profile of a standing wave on all four edges, with residual checks.

use dbridge::alpha::Catalog;
use dbridge::profile::{build_profile, ExportFormat};
use dbridge::spectrum::{omega_minus, GraphGeometry};

fn main() -> dbridge::Result<()> {
    let alpha = Catalog::default().resolve("inv_sqrt5")?;
    let geom = GraphGeometry::from_ratio(&alpha, 1.0)?;
    let wave =
        omega_minus(&geom, &alpha, 2)?.expect("irrational ratios have every isolated solution");
    let profile = build_profile(&wave, &geom)?;
    let v = profile.validate(400);
    eprintln!(
        "ω = {:.15e}: Kirchhoff {:.1e} / {:.1e}, ODE residual {:.1e}",
        wave.omega, v.kirchhoff_cont, v.kirchhoff_deriv, v.ode_residual
    );
    print!("{}", profile.export(8, ExportFormat::Csv, None));
    Ok(())
}
