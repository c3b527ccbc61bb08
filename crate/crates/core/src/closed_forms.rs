//! Direct evaluators for known closed-form resistances. They are independent
//! of the elimination solver and serve as cross-checks against it.

use num_bigint::BigUint;
use num_traits::One;

use crate::builders;
use crate::error::{Error, Result};
use crate::exact::resistance_exact;
use crate::network::{integer, ratio, to_f64, Rational, VertexId};
use crate::spectra::{cone_sum, path_spectrum, Spectrum};

/// Partite side of a vertex in `K_{m,n}`: `X` has `m` vertices, `Y` has `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    X,
    Y,
}

/// Resistance between two distinct vertices of the unit `K_{m,n}`.
pub fn kmn_resistance(m: usize, n: usize, side_u: Side, side_v: Side) -> Result<Rational> {
    if m < 1 || n < 1 {
        return Err(Error::InvalidArgument(format!(
            "K_{{m,n}} needs m, n >= 1, got m={m}, n={n}"
        )));
    }
    let (m, n) = (m as i64, n as i64);
    Ok(match (side_u, side_v) {
        (Side::X, Side::X) => ratio(2, n),
        (Side::Y, Side::Y) => ratio(2, m),
        _ => ratio(m + n - 1, m * n),
    })
}

/// Irrational constants of the ladder formulas.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LadderConstants {
    pub alpha: f64,
    pub a: f64,
    pub b: f64,
}

impl LadderConstants {
    pub fn new() -> Self {
        let s = 3f64.sqrt();
        Self {
            alpha: 2.0 - s,
            a: 2.0 + s,
            b: 2.0 - s,
        }
    }
}

impl Default for LadderConstants {
    fn default() -> Self {
        Self::new()
    }
}

fn ladder_size(n: usize) -> Result<()> {
    if n < 2 {
        Err(Error::InvalidArgument(format!(
            "ladder needs n >= 2, got {n}"
        )))
    } else {
        Ok(())
    }
}

/// `R_{L_n}[(a1,c1),(an,c2)]`.
pub fn ladder_endpoint_resistance(n: usize) -> Result<f64> {
    ladder_size(n)?;
    let alpha = LadderConstants::new().alpha;
    let nf = n as f64;
    let p = |e: usize| alpha.powi(e as i32);
    let bracket = 2.0 + 2.0 * p(n + 1) + 2.0 * p(n) + 2.0 * alpha;
    Ok((nf - 1.0) / 2.0 + (1.0 + p(n - 1)) / (4.0 * 3f64.sqrt() * (1.0 - p(2 * n))) * bracket)
}

/// `R_{L_n}[(a1,c1),(an,c2)] − R_{L_n}[(a1,c1),(an,c1)] = 2√3 / (aⁿ − bⁿ)`.
pub fn ladder_gap(n: usize) -> Result<f64> {
    ladder_size(n)?;
    let LadderConstants { a, b, .. } = LadderConstants::new();
    Ok(2.0 * 3f64.sqrt() / (a.powi(n as i32) - b.powi(n as i32)))
}

fn factorial(k: usize) -> BigUint {
    (1..=k as u64).map(BigUint::from).product()
}

/// `D_r(Q_k) = Σ_{i=1}^{k} (k−i)!(i−1)!/k!`, exactly.
pub fn hypercube_diameter(k: usize) -> Result<Rational> {
    if k < 1 {
        return Err(Error::InvalidArgument(
            "hypercube dimension must be >= 1".into(),
        ));
    }
    let denom: num_bigint::BigInt = factorial(k).into();
    let numer: BigUint = (1..=k).map(|i| factorial(k - i) * factorial(i - 1)).sum();
    Ok(Rational::new(numer.into(), denom))
}

fn check_spectrum(s: &Spectrum, what: &str) -> Result<()> {
    if s.is_empty() || !s.last_is_constant() {
        return Err(Error::InvalidArgument(format!(
            "{what} spectrum must end with the constant eigenvector"
        )));
    }
    Ok(())
}

fn check_vertex(s: &Spectrum, v: VertexId) -> Result<()> {
    if v >= s.len() {
        Err(Error::VertexOutOfRange {
            vertex: v,
            n: s.len(),
        })
    } else {
        Ok(())
    }
}

/// A query on `G + H`. Vertices are indexed within their own factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JoinQuery {
    /// `u, v ∈ V(G)`.
    WithinFirst { u: VertexId, v: VertexId },
    /// `u ∈ V(G)`, `w ∈ V(H)`.
    Across { u: VertexId, w: VertexId },
}

/// Resistance in the join `G + H` from the factor spectra.
pub fn join_resistance(sg: &Spectrum, sh: &Spectrum, query: JoinQuery) -> Result<f64> {
    check_spectrum(sg, "G")?;
    check_spectrum(sh, "H")?;
    let (n, m) = (sg.len(), sh.len());
    match query {
        JoinQuery::WithinFirst { u, v } => {
            check_vertex(sg, u)?;
            check_vertex(sg, v)?;
            Ok(cone_sum(sg, m as f64, |k| {
                (sg.component(k, u) - sg.component(k, v)).powi(2)
            }))
        }
        JoinQuery::Across { u, w } => {
            check_vertex(sg, u)?;
            check_vertex(sh, w)?;
            Ok(cone_sum(sg, m as f64, |k| sg.component(k, u).powi(2))
                + cone_sum(sh, n as f64, |k| sh.component(k, w).powi(2))
                + 1.0 / (n * m) as f64)
        }
    }
}

/// A query on the weighted cone `C^m_G`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConeQuery {
    Pair { u: VertexId, v: VertexId },
    Apex { u: VertexId },
}

/// Resistance in the weighted cone `C^m_G` from the spectrum of `G`.
pub fn cone_resistance(sg: &Spectrum, m: usize, query: ConeQuery) -> Result<f64> {
    if m <= 1 {
        return Err(Error::InvalidArgument(format!(
            "cone weight m must exceed 1, got {m}"
        )));
    }
    check_spectrum(sg, "G")?;
    let n = sg.len();
    let mf = m as f64;
    match query {
        ConeQuery::Pair { u, v } => {
            check_vertex(sg, u)?;
            check_vertex(sg, v)?;
            Ok(cone_sum(sg, mf, |k| {
                (sg.component(k, u) - sg.component(k, v)).powi(2)
            }))
        }
        ConeQuery::Apex { u } => {
            check_vertex(sg, u)?;
            Ok(cone_sum(sg, mf, |k| sg.component(k, u).powi(2)) + 1.0 / (n as f64 * mf))
        }
    }
}

/// Both sides of
/// `R_{G_n}[(a1,b1),(an,b3)] = R_{L_n}[(a1,c1),(an,c2)] + ¼R_{C^4_{P_n}}[a1,an] − (n−1)/4`.
#[derive(Debug, Clone, PartialEq)]
pub struct DecompositionReport {
    pub n: usize,
    /// Left side, exact on the block tower.
    pub left: Rational,
    /// Right side with ladder and fan terms solved exactly.
    pub right_exact: Rational,
    /// Right side with ladder and fan terms from their closed forms.
    pub right_closed_form: f64,
    pub residual_exact: Rational,
    pub residual_float: f64,
}

impl DecompositionReport {
    pub fn exact_holds(&self) -> bool {
        self.left == self.right_exact
    }
}

pub fn block_tower_decomposition(n: usize) -> Result<DecompositionReport> {
    ladder_size(n)?;
    let tower = builders::block_tower(n)?;
    let left = resistance_exact(&tower, 0, 4 * (n - 1) + 2)?;
    let ladder = resistance_exact(&builders::ladder(n)?, 0, 2 * n - 1)?;
    let fan = resistance_exact(&builders::fan(n, 4)?, 0, n - 1)?;
    let shift = ratio(n as i64 - 1, 4);
    let quarter = ratio(1, 4);
    let right_exact = &ladder + &fan * &quarter - &shift;
    let fan_cf = cone_resistance(&path_spectrum(n)?, 4, ConeQuery::Pair { u: 0, v: n - 1 })?;
    let right_closed_form = ladder_endpoint_resistance(n)? + fan_cf / 4.0 - to_f64(&shift);
    let residual_exact = &left - &right_exact;
    let residual_float = (to_f64(&left) - right_closed_form).abs();
    Ok(DecompositionReport {
        n,
        left,
        right_exact,
        right_closed_form,
        residual_exact,
        residual_float,
    })
}

/// `1/2^k`, the limit of consecutive endpoint differences on `P_n □ Q_k`.
pub fn hypercube_tower_limit(k: usize) -> Rational {
    Rational::one() / integer(1i64 << k.min(62))
}
