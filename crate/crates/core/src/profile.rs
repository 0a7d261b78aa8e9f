//! Four-component graph profiles built from a ring wave and two half-soliton
//! tails, with vertex-condition and ODE residual checks and table export.
//!
//! Edge 1 is `[0, L1]`, edge 2 is `[L1, L]`; both are restrictions of one
//! `L`-periodic ring function. Edge 3 is the half-line at the vertex `x = 0`
//! of the ring and edge 4 the half-line at `x = L1`; both are parametrized
//! by the distance from their vertex.

use std::fmt::Write as _;
use std::path::Path;

use serde_json::{Map, Number, Value};

use crate::elliptic::jacobi_cn_sn_dn;
use crate::error::{Error, Result};
use crate::format::sci17;
use crate::spectrum::{Branch, Family, GraphGeometry, StandingWave};

/// Tail cutoff used by the residual check, in units of `1/√|ω|`.
pub const TAIL_RESIDUAL_LENGTH: f64 = 20.0;
/// Relative height below which exported tails are cut.
pub const TAIL_EXPORT_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GraphProfile {
    geom: GraphGeometry,
    wave: StandingWave,
    tail_signs: [f64; 2],
}

/// Residuals of a profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Validation {
    /// Largest continuity mismatch over both vertices.
    pub kirchhoff_cont: f64,
    /// Largest signed derivative sum over both vertices.
    pub kirchhoff_deriv: f64,
    pub ode_residual: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Csv,
    Json,
}

impl std::str::FromStr for ExportFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            _ => Err(Error::Parse(format!("unknown format '{s}' (csv or json)"))),
        }
    }
}

/// Assemble the profile of `wave` on `geom`, checking the period and the
/// vertex values `u(0) = √(2|ω|)`, `u(L1) = ±√(2|ω|)`.
pub fn build_profile(wave: &StandingWave, geom: &GraphGeometry) -> Result<GraphProfile> {
    let length = geom.length();
    let period_mismatch =
        wave.modulus.s() * wave.n as f64 / (length * wave.omega.abs().sqrt()) - 1.0;
    if !(period_mismatch.abs() < 1e-9) {
        return Err(Error::Inconsistent(format!(
            "wave period does not divide L = {length} into {} parts",
            wave.n
        )));
    }
    let sign4 = match wave.family {
        Family::Plus => 1.0,
        Family::Minus => -1.0,
    };
    let p = GraphProfile {
        geom: *geom,
        wave: *wave,
        tail_signs: [1.0, sign4],
    };
    let v = wave.vertex_value();
    let tol = 1e-8 * v.max(1.0);
    if (p.ring(0.0).0 - v).abs() > tol || (p.ring(geom.l1()).0 - sign4 * v).abs() > tol {
        return Err(Error::Inconsistent(format!(
            "{} wave n = {} does not meet the vertex values on this geometry",
            wave.family, wave.n
        )));
    }
    Ok(p)
}

impl GraphProfile {
    pub fn geometry(&self) -> &GraphGeometry {
        &self.geom
    }

    pub fn wave(&self) -> &StandingWave {
        &self.wave
    }

    /// Copy with the sign of the tail on edge 3 or 4 replaced.
    pub fn with_tail_sign(mut self, edge: usize, sign: f64) -> Self {
        assert!(edge == 3 || edge == 4, "tails are edges 3 and 4");
        self.tail_signs[edge - 3] = sign;
        self
    }

    /// Ring function and derivative at `x`.
    pub fn ring(&self, x: f64) -> (f64, f64) {
        let w = &self.wave;
        let (a, p) = (w.amplitude(), w.wavenumber());
        let (cn, sn, dn) = jacobi_cn_sn_dn(p * (x + w.shift), &w.modulus.elliptic());
        (a * cn, -a * p * sn * dn)
    }

    /// Tail on edge 3 or 4 and its derivative at distance `x` from the vertex.
    pub fn tail(&self, edge: usize, x: f64) -> (f64, f64) {
        let root = self.wave.omega.abs().sqrt();
        let sign = self.tail_signs[edge - 3];
        let amp = sign * (2.0 * self.wave.omega.abs()).sqrt();
        let sech = 1.0 / (root * x).cosh();
        (amp * sech, -amp * root * sech * (root * x).tanh())
    }

    /// `(u_j(x), u_j'(x))` on edge `j ∈ 1..=4`.
    pub fn eval(&self, edge: usize, x: f64) -> (f64, f64) {
        match edge {
            1 | 2 => self.ring(x),
            3 | 4 => self.tail(edge, x),
            _ => panic!("edge {edge} out of range"),
        }
    }

    /// Domain of an edge; tails are cut at `cutoff`.
    fn edge_range(&self, edge: usize, cutoff: f64) -> (f64, f64) {
        match edge {
            1 => (0.0, self.geom.l1()),
            2 => (self.geom.l1(), self.geom.length()),
            _ => (0.0, cutoff),
        }
    }

    /// `(continuity, derivative)` residuals of the vertex conditions.
    pub fn kirchhoff_residual(&self) -> (f64, f64) {
        let (l1, l) = (self.geom.l1(), self.geom.length());
        let (u1a, d1a) = self.eval(1, 0.0);
        let (u2a, d2a) = self.eval(2, l);
        let (u3, d3) = self.eval(3, 0.0);
        let (u1b, d1b) = self.eval(1, l1);
        let (u2b, d2b) = self.eval(2, l1);
        let (u4, d4) = self.eval(4, 0.0);
        let cont = [(u1a - u2a), (u1a - u3), (u1b - u2b), (u1b - u4)]
            .iter()
            .fold(0.0f64, |m, v| m.max(v.abs()));
        let deriv = (d1a - d2a + d3).abs().max((-d1b + d2b + d4).abs());
        (cont, deriv)
    }

    /// Largest `|-u'' - u³ - ωu|` over `samples` points per edge, with `u''`
    /// from centered differences at step `1e-4` times the edge length.
    pub fn ode_residual(&self, samples: usize) -> f64 {
        let samples = samples.max(2);
        let omega = self.wave.omega;
        let cutoff = TAIL_RESIDUAL_LENGTH / omega.abs().sqrt();
        let mut worst = 0.0f64;
        for edge in 1..=4 {
            let (a, b) = self.edge_range(edge, cutoff);
            let h = 1e-4 * (b - a);
            let lo = if edge >= 3 { a + h } else { a };
            for i in 0..samples {
                let x = lo + (b - lo) * i as f64 / (samples - 1) as f64;
                let u = self.eval(edge, x).0;
                let second =
                    (self.eval(edge, x + h).0 - 2.0 * u + self.eval(edge, x - h).0) / (h * h);
                worst = worst.max((-second - u * u * u - omega * u).abs());
            }
        }
        worst
    }

    pub fn validate(&self, samples: usize) -> Validation {
        let (kirchhoff_cont, kirchhoff_deriv) = self.kirchhoff_residual();
        Validation {
            kirchhoff_cont,
            kirchhoff_deriv,
            ode_residual: self.ode_residual(samples),
        }
    }

    /// Distance beyond which the tails drop under `1e-12` of their peak.
    pub fn export_tail_length(&self) -> f64 {
        (1.0 / TAIL_EXPORT_FLOOR).acosh() / self.wave.omega.abs().sqrt()
    }

    /// Sample rows `(edge, x, u, u')`, `grid_points` per edge, endpoints included.
    pub fn samples(&self, grid_points: usize) -> Vec<(usize, f64, f64, f64)> {
        let grid_points = grid_points.max(2);
        let cutoff = self.export_tail_length();
        let mut rows = Vec::with_capacity(4 * grid_points);
        for edge in 1..=4 {
            let (a, b) = self.edge_range(edge, cutoff);
            for i in 0..grid_points {
                let x = if i + 1 == grid_points {
                    b
                } else {
                    a + (b - a) * i as f64 / (grid_points - 1) as f64
                };
                let (u, du) = self.eval(edge, x);
                rows.push((edge, x, u, du));
            }
        }
        rows
    }

    /// Serialize `grid_points` samples per edge; JSON optionally carries residuals.
    pub fn export(
        &self,
        grid_points: usize,
        format: ExportFormat,
        validation: Option<&Validation>,
    ) -> String {
        let rows = self.samples(grid_points);
        match format {
            ExportFormat::Csv => {
                let mut out = String::from("edge,x,u,du\n");
                for (edge, x, u, du) in rows {
                    let _ = writeln!(out, "{edge},{},{},{}", sci17(x), sci17(u), sci17(du));
                }
                out
            }
            ExportFormat::Json => {
                let mut root = Map::new();
                let mut geometry = Map::new();
                geometry.insert("L1".into(), num(self.geom.l1()));
                geometry.insert("L2".into(), num(self.geom.l2()));
                geometry.insert("L".into(), num(self.geom.length()));
                root.insert("geometry".into(), Value::Object(geometry));
                root.insert("omega".into(), num(self.wave.omega));
                root.insert("family".into(), Value::String(self.wave.family.to_string()));
                root.insert("n".into(), Value::from(self.wave.n));
                root.insert(
                    "branch".into(),
                    Value::Bool(self.wave.branch == Branch::ContinuousBranch),
                );
                root.insert("k".into(), num(self.wave.k()));
                root.insert("shift".into(), num(self.wave.shift));
                if let Some(v) = validation {
                    let mut m = Map::new();
                    m.insert("kirchhoff_cont".into(), num(v.kirchhoff_cont));
                    m.insert("kirchhoff_deriv".into(), num(v.kirchhoff_deriv));
                    m.insert("ode_residual".into(), num(v.ode_residual));
                    root.insert("validation".into(), Value::Object(m));
                }
                let samples = rows
                    .into_iter()
                    .map(|(edge, x, u, du)| {
                        let mut m = Map::new();
                        m.insert("edge".into(), Value::from(edge));
                        m.insert("x".into(), num(x));
                        m.insert("u".into(), num(u));
                        m.insert("du".into(), num(du));
                        Value::Object(m)
                    })
                    .collect();
                root.insert("samples".into(), Value::Array(samples));
                let mut text =
                    serde_json::to_string_pretty(&Value::Object(root)).expect("serializable");
                text.push('\n');
                text
            }
        }
    }

    pub fn write(
        &self,
        path: &Path,
        grid_points: usize,
        format: ExportFormat,
        validation: Option<&Validation>,
    ) -> Result<()> {
        std::fs::write(path, self.export(grid_points, format, validation))?;
        Ok(())
    }
}

/// JSON number carrying exactly the 17-digit text used in CSV output.
pub(crate) fn num(x: f64) -> Value {
    Value::Number(sci17(x).parse::<Number>().expect("finite float"))
}
