//! Resistor networks and their Laplacians.
//!
//! A [`ResistorNetwork`] is an undirected multigraph on dense vertex ids
//! `0..n`. Each edge carries an exact rational resistance. Negative
//! resistances are only legal on edges flagged as gadget edges, which arise
//! from the star replacement of a complete bipartite block.

use std::borrow::Cow;
use std::collections::VecDeque;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact arbitrary-precision fraction. Always reduced with a positive denominator.
pub type Rational = BigRational;

/// Dense vertex index in `0..n`.
pub type VertexId = usize;

/// Shorthand for building a small rational.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn integer(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Lossy promotion to `f64`. Handles values whose numerator and denominator
/// individually overflow `f64`.
pub fn to_f64(value: &Rational) -> f64 {
    if let (Some(n), Some(d)) = (value.numer().to_f64(), value.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    // Scale both sides down to 64 significant bits before dividing.
    let nb = value.numer().bits() as i64;
    let db = value.denom().bits() as i64;
    let shift_n = (nb - 64).max(0);
    let shift_d = (db - 64).max(0);
    let n = (value.numer() >> shift_n as usize).to_f64().unwrap_or(0.0);
    let d = (value.denom() >> shift_d as usize).to_f64().unwrap_or(1.0);
    n / d * 2f64.powi((shift_n - shift_d) as i32)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub resistance: Rational,
    /// Marks a star-replacement edge, the only kind allowed to be negative.
    pub gadget: bool,
}

impl Edge {
    pub fn conductance(&self) -> Rational {
        self.resistance.recip()
    }

    /// Returns the endpoint opposite `w`, if `w` is an endpoint.
    pub fn other(&self, w: VertexId) -> Option<VertexId> {
        if self.u == w {
            Some(self.v)
        } else if self.v == w {
            Some(self.u)
        } else {
            None
        }
    }

    pub fn joins(&self, a: VertexId, b: VertexId) -> bool {
        (self.u == a && self.v == b) || (self.u == b && self.v == a)
    }
}

/// Weighted undirected resistor multigraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResistorNetwork {
    n: usize,
    edges: Vec<Edge>,
    labels: Option<Vec<String>>,
}

impl ResistorNetwork {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            edges: Vec::new(),
            labels: None,
        }
    }

    /// Network on `labels.len()` vertices named by `labels`. Labels must be unique.
    pub fn with_labels(labels: Vec<String>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::Malformed(format!("duplicate label `{l}`")));
            }
        }
        Ok(Self {
            n: labels.len(),
            edges: Vec::new(),
            labels: Some(labels),
        })
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId, resistance: Rational) -> Result<()> {
        self.push_edge(u, v, resistance, false)
    }

    pub fn add_gadget_edge(
        &mut self,
        u: VertexId,
        v: VertexId,
        resistance: Rational,
    ) -> Result<()> {
        self.push_edge(u, v, resistance, true)
    }

    pub fn add_unit_edge(&mut self, u: VertexId, v: VertexId) -> Result<()> {
        self.push_edge(u, v, Rational::one(), false)
    }

    pub fn push_edge(
        &mut self,
        u: VertexId,
        v: VertexId,
        resistance: Rational,
        gadget: bool,
    ) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::Malformed(format!("self-loop at vertex {u}")));
        }
        if resistance.is_zero() {
            return Err(Error::Malformed(format!(
                "zero resistance on edge {{{u},{v}}}"
            )));
        }
        if resistance.is_negative() && !gadget {
            return Err(Error::Malformed(format!(
                "negative resistance {resistance} on edge {{{u},{v}}} not flagged as gadget"
            )));
        }
        self.edges.push(Edge {
            u,
            v,
            resistance,
            gadget,
        });
        Ok(())
    }

    /// Appends a vertex and returns its id. Unlabelled networks get labels
    /// materialised first so the new vertex can carry `label`.
    pub fn add_vertex(&mut self, label: impl Into<String>) -> Result<VertexId> {
        let label = label.into();
        let labels = self.materialize_labels();
        if labels.contains(&label) {
            return Err(Error::Malformed(format!("duplicate label `{label}`")));
        }
        labels.push(label);
        self.n += 1;
        Ok(self.n - 1)
    }

    fn materialize_labels(&mut self) -> &mut Vec<String> {
        let n = self.n;
        self.labels
            .get_or_insert_with(|| (0..n).map(|i| i.to_string()).collect())
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn has_labels(&self) -> bool {
        self.labels.is_some()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Label of `v`, falling back to the decimal id.
    pub fn label(&self, v: VertexId) -> Cow<'_, str> {
        match &self.labels {
            Some(l) => Cow::Borrowed(l[v].as_str()),
            None => Cow::Owned(v.to_string()),
        }
    }

    pub fn find_label(&self, label: &str) -> Option<VertexId> {
        match &self.labels {
            Some(l) => l.iter().position(|x| x == label),
            None => label.parse::<usize>().ok().filter(|&v| v < self.n),
        }
    }

    /// Resolves a user-supplied vertex reference: an exact label match wins,
    /// otherwise a decimal id.
    pub fn resolve(&self, name: &str) -> Result<VertexId> {
        if let Some(v) = self.find_label(name) {
            return Ok(v);
        }
        match name.parse::<usize>() {
            Ok(v) if v < self.n => Ok(v),
            Ok(v) => Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            }),
            Err(_) => Err(Error::UnknownVertex(name.to_string())),
        }
    }

    pub fn has_gadgets(&self) -> bool {
        self.edges.iter().any(|e| e.gadget)
    }

    pub fn all_positive(&self) -> bool {
        self.edges.iter().all(|e| e.resistance.is_positive())
    }

    /// Number of edge endpoints at `v` (parallel edges counted separately).
    pub fn degree(&self, v: VertexId) -> usize {
        self.edges.iter().filter(|e| e.u == v || e.v == v).count()
    }

    /// Distinct neighbours of `v` in ascending order.
    pub fn neighbors(&self, v: VertexId) -> Vec<VertexId> {
        let mut out: Vec<VertexId> = self.edges.iter().filter_map(|e| e.other(v)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn edges_between(&self, a: VertexId, b: VertexId) -> Vec<&Edge> {
        self.edges.iter().filter(|e| e.joins(a, b)).collect()
    }

    pub fn adjacency_lists(&self) -> Vec<Vec<VertexId>> {
        let mut adj = vec![Vec::new(); self.n];
        for e in &self.edges {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        let adj = self.adjacency_lists();
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    queue.push_back(y);
                }
            }
        }
        count == self.n
    }

    /// Copy of this network with `v` and its incident edges removed. Remaining
    /// vertices keep their relative order; labels are materialised.
    pub fn without_vertices(&self, remove: &[VertexId]) -> ResistorNetwork {
        let mut keep = vec![true; self.n];
        for &v in remove {
            keep[v] = false;
        }
        let mut new_id = vec![usize::MAX; self.n];
        let mut labels = Vec::new();
        for v in 0..self.n {
            if keep[v] {
                new_id[v] = labels.len();
                labels.push(self.label(v).into_owned());
            }
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| keep[e.u] && keep[e.v])
            .map(|e| Edge {
                u: new_id[e.u],
                v: new_id[e.v],
                ..e.clone()
            })
            .collect();
        ResistorNetwork {
            n: labels.len(),
            edges,
            labels: Some(labels),
        }
    }

    /// Copy with the edges at the given indices removed.
    pub fn without_edges(&self, indices: &[usize]) -> ResistorNetwork {
        let mut out = self.clone();
        let mut sorted = indices.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        for i in sorted.into_iter().rev() {
            out.edges.remove(i);
        }
        out
    }
}

/// Exact weighted Laplacian: off-diagonals are negated summed conductances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Laplacian {
    n: usize,
    entries: Vec<Rational>,
}

impl Laplacian {
    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn to_f64(&self) -> crate::spectra::DenseMatrix {
        crate::spectra::DenseMatrix::from_fn(self.n, |i, j| to_f64(self.get(i, j)))
    }
}

/// Assembles the Laplacian of `net`. Each edge adds its conductance to both
/// diagonal entries and subtracts it from the two off-diagonal entries.
pub fn build_laplacian(net: &ResistorNetwork) -> Result<Laplacian> {
    let n = net.vertex_count();
    let mut entries = vec![Rational::zero(); n * n];
    for e in net.edges() {
        if e.resistance.is_zero() {
            return Err(Error::Malformed(format!(
                "zero resistance on edge {{{},{}}}",
                e.u, e.v
            )));
        }
        let c = e.conductance();
        entries[e.u * n + e.u] += &c;
        entries[e.v * n + e.v] += &c;
        entries[e.u * n + e.v] -= &c;
        entries[e.v * n + e.u] -= &c;
    }
    Ok(Laplacian { n, entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(l: &Laplacian) -> Vec<Vec<i64>> {
        (0..l.size())
            .map(|i| {
                l.row(i)
                    .iter()
                    .map(|x| x.to_integer().try_into().unwrap())
                    .collect()
            })
            .collect()
    }

    #[test]
    fn unit_edge_laplacian() {
        let mut net = ResistorNetwork::new(2);
        net.add_unit_edge(0, 1).unwrap();
        assert_eq!(
            ints(&build_laplacian(&net).unwrap()),
            vec![vec![1, -1], vec![-1, 1]]
        );
    }

    #[test]
    fn parallel_conductances_add() {
        let mut net = ResistorNetwork::new(2);
        net.add_edge(0, 1, integer(2)).unwrap();
        net.add_edge(0, 1, integer(2)).unwrap();
        assert_eq!(
            ints(&build_laplacian(&net).unwrap()),
            vec![vec![1, -1], vec![-1, 1]]
        );
    }

    #[test]
    fn c4_laplacian() {
        let mut net = ResistorNetwork::new(4);
        for i in 0..4 {
            net.add_unit_edge(i, (i + 1) % 4).unwrap();
        }
        let l = ints(&build_laplacian(&net).unwrap());
        assert_eq!(
            l,
            vec![
                vec![2, -1, 0, -1],
                vec![-1, 2, -1, 0],
                vec![0, -1, 2, -1],
                vec![-1, 0, -1, 2]
            ]
        );
    }

    #[test]
    fn rejects_bad_edges() {
        let mut net = ResistorNetwork::new(3);
        assert!(matches!(
            net.add_edge(0, 1, integer(0)),
            Err(Error::Malformed(_))
        ));
        assert!(matches!(
            net.add_edge(1, 1, integer(1)),
            Err(Error::Malformed(_))
        ));
        assert!(matches!(
            net.add_edge(0, 1, ratio(-1, 6)),
            Err(Error::Malformed(_))
        ));
        assert!(net.add_gadget_edge(0, 1, ratio(-1, 6)).is_ok());
        assert!(matches!(
            net.add_edge(0, 3, integer(1)),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        ));
    }

    #[test]
    fn big_rational_to_f64() {
        let big = Rational::new(BigInt::from(10).pow(400) * 5, BigInt::from(10).pow(400) * 6);
        assert!((to_f64(&big) - 5.0 / 6.0).abs() < 1e-15);
        let two = BigInt::from(2).pow(1100);
        let near_one = Rational::new(&two + 1, two);
        assert!((to_f64(&near_one) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn removing_vertices_renumbers() {
        let mut net = ResistorNetwork::new(4);
        net.add_unit_edge(0, 1).unwrap();
        net.add_unit_edge(1, 2).unwrap();
        net.add_unit_edge(2, 3).unwrap();
        let sub = net.without_vertices(&[1]);
        assert_eq!(sub.vertex_count(), 3);
        assert_eq!(sub.edge_count(), 1);
        assert_eq!(sub.label(1), "2");
        assert_eq!(sub.edges()[0].u, 1);
        assert_eq!(sub.edges()[0].v, 2);
        assert!(!sub.is_connected());
    }
}
