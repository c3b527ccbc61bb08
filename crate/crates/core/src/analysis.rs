//! Product resistances, resistance diameters, and scans over the towers
//! `P_n □ Q_k`.

use num_traits::Signed;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::builders;
use crate::closed_forms::hypercube_tower_limit;
use crate::error::{Error, Result};
use crate::exact::{resistance_exact, resistance_matrix_exact};
use crate::format::rational_string;
use crate::network::{ratio, to_f64, Rational, ResistorNetwork, VertexId};
use crate::spectra::{
    hypercube_spectrum, network_spectrum, path_spectrum, product_spectrum, resistance_spectral,
    Spectrum, ZERO_EIGENVALUE_TOL,
};

pub const DEFAULT_VERTEX_BUDGET: usize = 4096;

/// Relative tolerance for ties in the float diameter search.
pub const FLOAT_TIE_TOL: f64 = 1e-9;

/// Vertex budget from `RESNET_VERTEX_BUDGET`, else [`DEFAULT_VERTEX_BUDGET`].
pub fn default_vertex_budget() -> usize {
    std::env::var("RESNET_VERTEX_BUDGET")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_VERTEX_BUDGET)
}

/// `R_{G□H}[(u,x),(v,y)]` from the factor spectra and factor resistances:
/// `R_G/m + R_H/n + Σ_p Σ_q (Ψ_pu Φ_qx − Ψ_pv Φ_qy)² / (λ_p + μ_q)` with
/// `n = |G|`, `m = |H|` and both sums skipping the constant eigenpair.
#[allow(clippy::too_many_arguments)]
pub fn product_resistance(
    sg: &Spectrum,
    sh: &Spectrum,
    rg: f64,
    rh: f64,
    u: VertexId,
    x: VertexId,
    v: VertexId,
    y: VertexId,
) -> Result<f64> {
    let (n, m) = (sg.len(), sh.len());
    for s in [sg, sh] {
        if s.vectors.len() != s.len() || s.vectors.iter().any(|vec| vec.len() != s.len()) {
            return Err(Error::DimensionMismatch("spectrum is not square".into()));
        }
        if !s.last_is_constant() {
            return Err(Error::DimensionMismatch(
                "spectrum must end with the constant eigenvector".into(),
            ));
        }
    }
    if u >= n || v >= n {
        return Err(Error::VertexOutOfRange {
            vertex: u.max(v),
            n,
        });
    }
    if x >= m || y >= m {
        return Err(Error::VertexOutOfRange {
            vertex: x.max(y),
            n: m,
        });
    }
    let mut sum = 0.0;
    for p in 0..n - 1 {
        let (pu, pv) = (sg.component(p, u), sg.component(p, v));
        for q in 0..m - 1 {
            let denom = sg.values[p] + sh.values[q];
            if denom <= ZERO_EIGENVALUE_TOL {
                return Err(Error::Disconnected);
            }
            let d = pu * sh.component(q, x) - pv * sh.component(q, y);
            sum += d * d / denom;
        }
    }
    Ok(rg / m as f64 + rh / n as f64 + sum)
}

/// [`product_resistance`] with spectra and factor resistances computed from
/// the factor networks.
pub fn product_resistance_for(
    g: &ResistorNetwork,
    h: &ResistorNetwork,
    (u, x): (VertexId, VertexId),
    (v, y): (VertexId, VertexId),
) -> Result<f64> {
    let sg = network_spectrum(g)?;
    let sh = network_spectrum(h)?;
    let rg = to_f64(&resistance_exact(g, u, v)?);
    let rh = to_f64(&resistance_exact(h, x, y)?);
    product_resistance(&sg, &sh, rg, rh, u, x, v, y)
}

/// Maximum resistance over all pairs with every pair attaining it.
#[derive(Debug, Clone, PartialEq)]
pub struct DiameterReport {
    pub value: f64,
    /// Present when computed exactly.
    pub exact: Option<Rational>,
    /// Pairs `(u, v)` with `u < v`, in lexicographic order.
    pub pairs: Vec<(VertexId, VertexId)>,
    pub labels: Vec<(String, String)>,
}

impl DiameterReport {
    fn new(
        net: &ResistorNetwork,
        value: f64,
        exact: Option<Rational>,
        pairs: Vec<(VertexId, VertexId)>,
    ) -> Self {
        let labels = pairs
            .iter()
            .map(|&(u, v)| (net.label(u).into_owned(), net.label(v).into_owned()))
            .collect();
        Self {
            value,
            exact,
            pairs,
            labels,
        }
    }

    fn value_string(&self) -> String {
        match &self.exact {
            Some(r) => rational_string(r),
            None => format!("{:.15e}", self.value),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("u,v,label_u,label_v,R\n");
        let value = self.value_string();
        for (&(u, v), (lu, lv)) in self.pairs.iter().zip(&self.labels) {
            out.push_str(&format!("{u},{v},{lu},{lv},{value}\n"));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "D_r": self.value,
            "D_r_exact": self.exact.as_ref().map(rational_string),
            "pairs": self.pairs.iter().zip(&self.labels).map(|(&(u, v), (lu, lv))| json!({
                "u": u, "v": v, "label_u": lu, "label_v": lv,
            })).collect::<Vec<_>>(),
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("D_r = {}", self.value_string());
        if self.exact.is_some() {
            out.push_str(&format!(" ({:.15})", self.value));
        }
        out.push('\n');
        out.push_str(&format!("{} pair(s)\n", self.pairs.len()));
        for (lu, lv) in &self.labels {
            out.push_str(&format!("{lu} {lv}\n"));
        }
        out
    }
}

/// Exact resistance diameter with the full tie set.
pub fn resistance_diameter(net: &ResistorNetwork) -> Result<DiameterReport> {
    if net.vertex_count() < 2 {
        return Err(Error::InvalidArgument(
            "diameter needs at least two vertices".into(),
        ));
    }
    if !net.all_positive() {
        return Err(Error::InvalidArgument(
            "diameter search needs positive resistances".into(),
        ));
    }
    let table = resistance_matrix_exact(net)?;
    let mut best: Option<&Rational> = None;
    let mut pairs = Vec::new();
    for (u, v, r) in table.pairs() {
        match best {
            Some(b) if r < b => {}
            Some(b) if r == b => pairs.push((u, v)),
            _ => {
                best = Some(r);
                pairs = vec![(u, v)];
            }
        }
    }
    let exact = best.expect("at least one pair").clone();
    Ok(DiameterReport::new(net, to_f64(&exact), Some(exact), pairs))
}

/// Float resistance diameter from the numeric spectrum; ties within
/// [`FLOAT_TIE_TOL`] relative.
pub fn resistance_diameter_spectral(net: &ResistorNetwork) -> Result<DiameterReport> {
    if net.vertex_count() < 2 {
        return Err(Error::InvalidArgument(
            "diameter needs at least two vertices".into(),
        ));
    }
    if !net.is_connected() {
        return Err(Error::Disconnected);
    }
    let s = network_spectrum(net)?;
    let n = net.vertex_count();
    let mut all = Vec::with_capacity(n * (n - 1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            all.push((u, v, resistance_spectral(&s, u, v)?));
        }
    }
    let max = all.iter().map(|t| t.2).fold(f64::NEG_INFINITY, f64::max);
    let pairs = all
        .iter()
        .filter(|t| (max - t.2) <= FLOAT_TIE_TOL * max.abs())
        .map(|t| (t.0, t.1))
        .collect();
    Ok(DiameterReport::new(net, max, None, pairs))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ScanMode {
    #[default]
    Exact,
    Spectral,
}

impl ScanMode {
    pub fn name(self) -> &'static str {
        match self {
            ScanMode::Exact => "exact",
            ScanMode::Spectral => "spectral",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanConfig {
    pub k: usize,
    pub n_max: usize,
    /// Hypercube vertices `(b_i, b_j)`: the pair is `(a1,b_i)`, `(an,b_j)`.
    pub pair: (VertexId, VertexId),
    pub mode: ScanMode,
    pub vertex_budget: usize,
}

impl ScanConfig {
    /// Antipodal pair, exact mode, budget from the environment.
    pub fn new(k: usize, n_max: usize) -> Self {
        let last = (1usize << k.min(usize::BITS as usize - 1)) - 1;
        Self {
            k,
            n_max,
            pair: (0, last),
            mode: ScanMode::Exact,
            vertex_budget: default_vertex_budget(),
        }
    }
}

/// One row per `n`; `diff = R_n − R_{n−1}` is absent on the `n = 2` baseline.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanRow {
    pub n: usize,
    pub r_n: f64,
    pub r_exact: Option<Rational>,
    pub diff: Option<f64>,
    pub diff_exact: Option<Rational>,
    pub abs_dev_from_limit: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanReport {
    pub k: usize,
    pub pair: (VertexId, VertexId),
    pub mode: ScanMode,
    pub limit: Rational,
    pub rows: Vec<ScanRow>,
}

fn fmt_f64(x: f64) -> String {
    format!("{:.17e}", x)
}

impl ScanReport {
    pub fn row(&self, n: usize) -> Option<&ScanRow> {
        self.rows.iter().find(|r| r.n == n)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,R_n,diff,abs_dev_from_limit\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{}\n",
                r.n,
                fmt_f64(r.r_n),
                r.diff.map(fmt_f64).unwrap_or_default(),
                r.abs_dev_from_limit.map(fmt_f64).unwrap_or_default()
            ));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "k": self.k,
            "pair": [self.pair.0, self.pair.1],
            "mode": self.mode.name(),
            "limit": rational_string(&self.limit),
            "rows": self.rows.iter().map(|r| json!({
                "n": r.n,
                "R_n": r.r_n,
                "diff": r.diff,
                "abs_dev_from_limit": r.abs_dev_from_limit,
                "R_n_exact": r.r_exact.as_ref().map(rational_string),
                "diff_exact": r.diff_exact.as_ref().map(rational_string),
            })).collect::<Vec<_>>(),
        })
    }

    /// `last diff=… deviation=…`, or the baseline value for single-row scans.
    pub fn summary(&self) -> String {
        match self.rows.iter().rev().find(|r| r.diff.is_some()) {
            Some(r) => format!(
                "k={} n={} last diff={} deviation from {}={}",
                self.k,
                r.n,
                fmt_f64(r.diff.unwrap_or_default()),
                rational_string(&self.limit),
                fmt_f64(r.abs_dev_from_limit.unwrap_or_default())
            ),
            None => {
                let r = &self.rows[0];
                let value = r
                    .r_exact
                    .as_ref()
                    .map(rational_string)
                    .unwrap_or_else(|| fmt_f64(r.r_n));
                format!("k={} n={} baseline R_n={}", self.k, r.n, value)
            }
        }
    }
}

fn tower_endpoint(
    k: usize,
    n: usize,
    pair: (VertexId, VertexId),
    mode: ScanMode,
) -> Result<(f64, Option<Rational>)> {
    let q = 1usize << k;
    let (u, v) = (pair.0, (n - 1) * q + pair.1);
    match mode {
        ScanMode::Exact => {
            let net = builders::path_hypercube_product(n, k)?;
            let r = resistance_exact(&net, u, v)?;
            Ok((to_f64(&r), Some(r)))
        }
        ScanMode::Spectral => {
            let s = product_spectrum(&path_spectrum(n)?, &hypercube_spectrum(k)?);
            Ok((resistance_spectral(&s, u, v)?, None))
        }
    }
}

/// `R_{U_n}[(a1,b_i),(an,b_j)]` on `U_n = P_n □ Q_k` for `n = 2..=n_max`.
pub fn conjecture_scan(config: &ScanConfig) -> Result<ScanReport> {
    let ScanConfig {
        k,
        n_max,
        pair,
        mode,
        vertex_budget,
    } = *config;
    if !(1..30).contains(&k) {
        return Err(Error::InvalidArgument(format!(
            "k must be in 1..30, got {k}"
        )));
    }
    if n_max < 2 {
        return Err(Error::InvalidArgument(format!(
            "max n must be >= 2, got {n_max}"
        )));
    }
    let q = 1usize << k;
    if pair.0 >= q || pair.1 >= q {
        return Err(Error::VertexOutOfRange {
            vertex: pair.0.max(pair.1),
            n: q,
        });
    }
    let vertices = n_max.saturating_mul(q);
    if vertices > vertex_budget {
        return Err(Error::BudgetExceeded {
            vertices,
            budget: vertex_budget,
        });
    }
    let values: Vec<(f64, Option<Rational>)> = (2..=n_max)
        .into_par_iter()
        .map(|n| tower_endpoint(k, n, pair, mode))
        .collect::<Result<_>>()?;
    let limit = hypercube_tower_limit(k);
    let limit_f = to_f64(&limit);
    let mut rows = Vec::with_capacity(values.len());
    for (i, (r_n, r_exact)) in values.iter().enumerate() {
        let mut row = ScanRow {
            n: i + 2,
            r_n: *r_n,
            r_exact: r_exact.clone(),
            diff: None,
            diff_exact: None,
            abs_dev_from_limit: None,
        };
        if i > 0 {
            let (prev, prev_exact) = &values[i - 1];
            match (r_exact, prev_exact) {
                (Some(a), Some(b)) => {
                    let d = a - b;
                    row.diff = Some(to_f64(&d));
                    row.abs_dev_from_limit = Some(to_f64(&(&d - &limit).abs()));
                    row.diff_exact = Some(d);
                }
                _ => {
                    let d = r_n - prev;
                    row.diff = Some(d);
                    row.abs_dev_from_limit = Some((d - limit_f).abs());
                }
            }
        }
        rows.push(row);
    }
    Ok(ScanReport {
        k,
        pair,
        mode,
        limit,
        rows,
    })
}

/// `D_r(G_n)` for block towers and the increments `D_r(G_n) − D_r(G_{n−1})`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiameterDeltaRow {
    pub n: usize,
    pub diameter: Rational,
    pub pair_count: usize,
    pub delta: Option<Rational>,
    /// Increment of the corner pair `(a1,b1)`, `(an,b3)`.
    pub endpoint_delta: Option<Rational>,
}

impl DiameterDeltaRow {
    pub fn delta_matches_endpoint(&self) -> bool {
        self.delta == self.endpoint_delta
    }
}

pub fn diameter_delta_scan(n_max: usize) -> Result<Vec<DiameterDeltaRow>> {
    if n_max < 2 {
        return Err(Error::InvalidArgument(format!(
            "max n must be >= 2, got {n_max}"
        )));
    }
    let budget = default_vertex_budget();
    if 4 * n_max > budget {
        return Err(Error::BudgetExceeded {
            vertices: 4 * n_max,
            budget,
        });
    }
    let per_n: Vec<(Rational, usize, Rational)> = (2..=n_max)
        .into_par_iter()
        .map(|n| {
            let tower = builders::block_tower(n)?;
            let d = resistance_diameter(&tower)?;
            let endpoint = resistance_exact(&tower, 0, 4 * (n - 1) + 2)?;
            Ok((d.exact.expect("exact mode"), d.pairs.len(), endpoint))
        })
        .collect::<Result<_>>()?;
    Ok(per_n
        .iter()
        .enumerate()
        .map(|(i, (d, count, endpoint))| {
            let (delta, endpoint_delta) = if i == 0 {
                (None, None)
            } else {
                (Some(d - &per_n[i - 1].0), Some(endpoint - &per_n[i - 1].2))
            };
            DiameterDeltaRow {
                n: i + 2,
                diameter: d.clone(),
                pair_count: *count,
                delta,
                endpoint_delta,
            }
        })
        .collect())
}

/// Exact pair resistances on `G_n`, `L_n` and `C^4_{P_n}` entering the
/// identities that single out the diametrical pairs of `G_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct TowerIdentities {
    pub n: usize,
    /// `R_{G_n}[(a1,b1),(an,b_j)]` for `j = 1..=4`.
    pub tower: [Rational; 4],
    /// `R_{L_n}[(a1,c1),(an,c2)]`.
    pub ladder_far: Rational,
    /// `R_{L_n}[(a1,c1),(an,c1)]`.
    pub ladder_near: Rational,
    /// `R_{C^4_{P_n}}[a1,b]`.
    pub fan_apex: Rational,
    /// `R_{C^4_{P_n}}[a1,an]`.
    pub fan_ends: Rational,
}

impl TowerIdentities {
    pub fn compute(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!(
                "tower needs n >= 2, got {n}"
            )));
        }
        let tower_net = builders::block_tower(n)?;
        let base = 4 * (n - 1);
        let tower = [0, 1, 2, 3].map(|j| resistance_exact(&tower_net, 0, base + j));
        let [t1, t2, t3, t4] = tower;
        let ladder = builders::ladder(n)?;
        let fan = builders::fan(n, 4)?;
        Ok(Self {
            n,
            tower: [t1?, t2?, t3?, t4?],
            ladder_far: resistance_exact(&ladder, 0, 2 * n - 1)?,
            ladder_near: resistance_exact(&ladder, 0, 2 * n - 2)?,
            fan_apex: resistance_exact(&fan, 0, n)?,
            fan_ends: resistance_exact(&fan, 0, n - 1)?,
        })
    }

    pub fn ladder_gap(&self) -> Rational {
        &self.ladder_far - &self.ladder_near
    }

    /// `2R[a1,b] − R[a1,an]` on the fan.
    pub fn fan_defect(&self) -> Rational {
        &self.fan_apex * ratio(2, 1) - &self.fan_ends
    }

    /// `R[(a1,b1),(an,b3)] − R[(a1,b1),(an,b1)]` equals the ladder gap.
    pub fn opposite_vs_same_holds(&self) -> bool {
        &self.tower[2] - &self.tower[0] == self.ladder_gap()
    }

    /// `R[(a1,b1),(an,b3)] − R[(a1,b1),(an,b2)] = ½ gap − ½ fan defect`.
    pub fn opposite_vs_adjacent_holds(&self) -> bool {
        let half = ratio(1, 2);
        &self.tower[2] - &self.tower[1] == (self.ladder_gap() - self.fan_defect()) * half
    }

    /// The opposite corner is strictly farthest among the four top corners.
    pub fn opposite_is_strict_max(&self) -> bool {
        let far = &self.tower[2];
        self.tower[0] < *far && self.tower[1] < *far && self.tower[3] < *far
    }
}
