//! Scans of the diophantine observables over long index ranges.
//!
//! `scan_hits` lists the `n` with `|ξ̃_n| = n‖nα + 1/2‖` below a threshold;
//! `scan_hurwitz` lists the `n` with `n ξ_n = 2n‖nα‖` below `2/√5`. Both split
//! `1..=n_max` into blocks of `2^16` indices that may run in parallel; the
//! merged output is identical to a serial run.

use rayon::prelude::*;

use crate::alpha::{AlphaRatio, DichotomySequences, XiCursor};
use crate::elliptic::k_of_inv_sqrt2;
use crate::error::{domain, Error, Result};
use crate::spectrum::{omega_minus, omega_plus, GraphGeometry};

pub const DEFAULT_THRESHOLD: f64 = 0.25;
pub const DEFAULT_CLUSTER_RADIUS: f64 = 1e-6;
pub const BLOCK_LEN: u64 = 1 << 16;
/// Members from this hit onward (0-based) are clustered.
pub const DEFAULT_TAIL_START: usize = 3;
const CONVERGED_GAP: f64 = 1e-9;

/// One index passing a scan criterion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiophantineHit {
    pub n: u64,
    pub xi_tilde: f64,
    pub seq: DichotomySequences,
    pub omega_plus: Option<f64>,
    pub omega_minus: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parallelism {
    Serial,
    /// Rayon's global pool.
    Global,
    /// A dedicated pool with this many workers.
    Threads(usize),
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Criterion {
    XiTilde(f64),
    Hurwitz(f64),
}

impl Criterion {
    /// `(value, radius, bound)` at the cursor; a hit is `value < bound`.
    fn probe(&self, cur: &XiCursor<'_>) -> (f64, f64, f64) {
        let r = cur.xi_tilde_radius();
        match *self {
            Criterion::XiTilde(t) => (cur.xi_tilde().abs(), r, t),
            Criterion::Hurwitz(b) => (cur.n() as f64 * cur.xi(), 2.0 * r, b),
        }
    }

    fn accepts(&self, d: &DichotomySequences) -> bool {
        match *self {
            Criterion::XiTilde(t) => d.xi_tilde.abs() < t,
            Criterion::Hurwitz(b) => d.is_regular() && d.n as f64 * d.xi < b,
        }
    }
}

fn scan_block(
    alpha: &AlphaRatio,
    crit: Criterion,
    start: u64,
    end: u64,
) -> Result<Vec<DiophantineHit>> {
    let mut hits = Vec::new();
    let mut cur = alpha.cursor(start);
    while cur.n() <= end {
        let (value, radius, bound) = crit.probe(&cur);
        if value < bound + radius {
            if (value - bound).abs() <= radius {
                return Err(Error::PrecisionExhausted {
                    n: cur.n(),
                    reason: "hit test undecided at this precision".into(),
                });
            }
            let seq = cur.sequences()?;
            if crit.accepts(&seq) {
                hits.push(DiophantineHit {
                    n: seq.n,
                    xi_tilde: seq.xi_tilde,
                    seq,
                    omega_plus: None,
                    omega_minus: None,
                });
            }
        }
        cur.advance();
    }
    Ok(hits)
}

fn run(
    alpha: &AlphaRatio,
    n_max: u64,
    crit: Criterion,
    par: Parallelism,
) -> Result<Vec<DiophantineHit>> {
    if n_max == 0 {
        return Err(domain("scan needs n_max ≥ 1"));
    }
    if n_max > alpha.n_max() {
        return Err(domain(format!(
            "n_max = {n_max} exceeds the cap {}",
            alpha.n_max()
        )));
    }
    let blocks: Vec<(u64, u64)> = (0..n_max.div_ceil(BLOCK_LEN))
        .map(|b| (b * BLOCK_LEN + 1, ((b + 1) * BLOCK_LEN).min(n_max)))
        .collect();
    let parts: Vec<Vec<DiophantineHit>> = match par {
        Parallelism::Serial => blocks
            .iter()
            .map(|&(s, e)| scan_block(alpha, crit, s, e))
            .collect::<Result<_>>()?,
        Parallelism::Global => blocks
            .par_iter()
            .map(|&(s, e)| scan_block(alpha, crit, s, e))
            .collect::<Result<_>>()?,
        Parallelism::Threads(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t.max(1))
                .build()
                .map_err(|e| domain(format!("thread pool: {e}")))?;
            pool.install(|| {
                blocks
                    .par_iter()
                    .map(|&(s, e)| scan_block(alpha, crit, s, e))
                    .collect::<Result<_>>()
            })?
        }
    };
    Ok(parts.into_iter().flatten().collect())
}

/// All `n ≤ n_max` with `|ξ̃_n| < threshold`, ascending.
pub fn scan_hits(alpha: &AlphaRatio, n_max: u64, threshold: f64) -> Result<Vec<DiophantineHit>> {
    scan_hits_with(alpha, n_max, threshold, Parallelism::Global)
}

pub fn scan_hits_with(
    alpha: &AlphaRatio,
    n_max: u64,
    threshold: f64,
    par: Parallelism,
) -> Result<Vec<DiophantineHit>> {
    if !(threshold > 0.0) {
        return Err(domain(format!(
            "threshold must be positive, got {threshold}"
        )));
    }
    run(alpha, n_max, Criterion::XiTilde(threshold), par)
}

/// All `n ≤ n_max` with `n ξ_n < 2/√5` (and `ξ_n ≠ 0`), ascending.
pub fn scan_hurwitz(
    alpha: &AlphaRatio,
    n_max: u64,
    par: Parallelism,
) -> Result<Vec<DiophantineHit>> {
    run(alpha, n_max, Criterion::Hurwitz(2.0 / 5f64.sqrt()), par)
}

/// Attach both frequencies to each hit.
pub fn fill_omegas(
    geom: &GraphGeometry,
    alpha: &AlphaRatio,
    hits: &mut [DiophantineHit],
) -> Result<()> {
    for h in hits.iter_mut() {
        h.omega_plus = omega_plus(geom, alpha, h.n)?.map(|w| w.omega);
        h.omega_minus = omega_minus(geom, alpha, h.n)?.map(|w| w.omega);
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct Cluster {
    /// Mean of the member values.
    pub center: f64,
    /// Value of the member with the largest index.
    pub latest: f64,
    /// Member indices, ascending.
    pub members: Vec<u64>,
    pub values: Vec<f64>,
    /// `max - min` of the member values.
    pub spread: f64,
    /// The two largest-index members differ by less than `1e-9`.
    pub converged: bool,
    /// `(c1, c2)` with `a_{i+1} = c1 a_i + c2 a_{i-1}` over the member indices.
    pub recurrence: Option<(i64, i64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClusterReport {
    pub clusters: Vec<Cluster>,
    pub converged: bool,
    pub radius: f64,
    /// Tail members that did not join any cluster of two or more.
    pub transients: Vec<u64>,
}

/// Group the tail of a hit list (from the `tail_start`-th hit on) by value.
///
/// Hits are visited from the largest index down; a hit joins the first
/// cluster whose latest member lies within `radius / 2`, else starts a new
/// one. Single-member groups are reported as transients.
pub fn cluster_hits_from(hits: &[DiophantineHit], radius: f64, tail_start: usize) -> ClusterReport {
    let mut groups: Vec<Vec<(u64, f64)>> = Vec::new();
    for h in hits.iter().skip(tail_start).rev() {
        match groups
            .iter_mut()
            .find(|g| (g[0].1 - h.xi_tilde).abs() <= 0.5 * radius)
        {
            Some(g) => g.push((h.n, h.xi_tilde)),
            None => groups.push(vec![(h.n, h.xi_tilde)]),
        }
    }
    let mut clusters = Vec::new();
    let mut transients = Vec::new();
    for mut g in groups {
        if g.len() < 2 {
            transients.push(g[0].0);
            continue;
        }
        g.reverse();
        let members: Vec<u64> = g.iter().map(|m| m.0).collect();
        let values: Vec<f64> = g.iter().map(|m| m.1).collect();
        let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let last = values.len() - 1;
        clusters.push(Cluster {
            center: values.iter().sum::<f64>() / values.len() as f64,
            latest: values[last],
            converged: (values[last] - values[last - 1]).abs() < CONVERGED_GAP,
            recurrence: fit_recurrence(&members),
            members,
            values,
            spread: hi - lo,
        });
    }
    clusters.sort_by(|a, b| b.center.total_cmp(&a.center));
    transients.sort_unstable();
    let converged = !clusters.is_empty() && clusters.iter().all(|c| c.converged);
    ClusterReport {
        clusters,
        converged,
        radius,
        transients,
    }
}

pub fn cluster_hits(hits: &[DiophantineHit], radius: f64) -> ClusterReport {
    cluster_hits_from(hits, radius, DEFAULT_TAIL_START)
}

/// Integer `(c1, c2)` with `a_{i+1} = c1 a_i + c2 a_{i-1}` for every
/// consecutive triple; needs at least four terms.
pub fn fit_recurrence(a: &[u64]) -> Option<(i64, i64)> {
    if a.len() < 4 {
        return None;
    }
    let v: Vec<i128> = a.iter().map(|&x| x as i128).collect();
    // [v1 v0; v2 v1] (c1, c2)ᵀ = (v2, v3)ᵀ
    let det = v[1] * v[1] - v[0] * v[2];
    if det == 0 {
        return None;
    }
    let n1 = v[2] * v[1] - v[0] * v[3];
    let n2 = v[1] * v[3] - v[2] * v[2];
    if n1 % det != 0 || n2 % det != 0 {
        return None;
    }
    let (c1, c2) = (n1 / det, n2 / det);
    let fits = v.windows(3).all(|w| {
        c1.checked_mul(w[1])
            .zip(c2.checked_mul(w[0]))
            .is_some_and(|(x, y)| x + y == w[2])
    });
    fits.then_some((c1 as i64, c2 as i64))
}

/// `[-K(1/√2)⁴/L², 0]`, the interval holding the plus-family cluster point.
pub fn i_plus(length: f64) -> (f64, f64) {
    let k = k_of_inv_sqrt2();
    (-k.powi(4) / (length * length), 0.0)
}

/// `[-(16/5) K(1/√2)⁴/L², 0]`.
pub fn i_minus(length: f64) -> (f64, f64) {
    let k = k_of_inv_sqrt2();
    (-3.2 * k.powi(4) / (length * length), 0.0)
}

/// Small-frequency law `ω ≈ -((4/L) K(1/√2)² |ξ̃|)²`.
pub fn omega_prediction(xi_tilde: f64, length: f64) -> f64 {
    let k = k_of_inv_sqrt2();
    let root = 4.0 / length * k * k * xi_tilde.abs();
    -root * root
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OmegaLimitRow {
    pub n: u64,
    pub xi_tilde: f64,
    pub omega_plus: f64,
    pub prediction: f64,
    /// `√|ω_n^+| / √|prediction|`.
    pub ratio: f64,
    pub in_i_plus: bool,
}

/// Exact plus-family frequency against the small-frequency law at each hit.
pub fn omega_limit_report(
    geom: &GraphGeometry,
    alpha: &AlphaRatio,
    hits: &[DiophantineHit],
) -> Result<Vec<OmegaLimitRow>> {
    let length = geom.length();
    let (lo, hi) = i_plus(length);
    hits.iter()
        .filter_map(|h| match omega_plus(geom, alpha, h.n) {
            Ok(Some(w)) => Some(Ok((h, w.omega))),
            Ok(None) => None,
            Err(e) => Some(Err(e)),
        })
        .map(|r| {
            let (h, omega) = r?;
            let prediction = omega_prediction(h.xi_tilde, length);
            Ok(OmegaLimitRow {
                n: h.n,
                xi_tilde: h.xi_tilde,
                omega_plus: omega,
                prediction,
                ratio: (omega / prediction).sqrt(),
                in_i_plus: (lo..=hi).contains(&omega),
            })
        })
        .collect()
}
