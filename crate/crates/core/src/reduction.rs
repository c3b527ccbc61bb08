//! Terminal-preserving network rewrites.
//!
//! Every rewrite is pure: it returns the rewritten network together with a
//! [`ReductionStep`] that records exactly which vertices and edges were
//! removed and added. Steps refer to vertices by label because ids shift when
//! vertices are removed; [`ReductionStep::apply`] replays a step on the
//! pre-network and reproduces the post-network.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::builders;
use crate::error::{Error, Result};
use crate::exact::resistance_matrix_exact;
use crate::format::rational_string;
use crate::network::{integer, ratio, Rational, ResistorNetwork, VertexId};

/// Vertices that must survive every rewrite, identified by label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Terminals {
    labels: Vec<String>,
}

impl Terminals {
    pub fn from_ids(net: &ResistorNetwork, ids: &[VertexId]) -> Result<Self> {
        if ids.is_empty() {
            return Err(Error::InvalidArgument(
                "terminal set must be nonempty".into(),
            ));
        }
        let mut labels = Vec::new();
        for &v in ids {
            net.check_vertex(v)?;
            let l = net.label(v).into_owned();
            if !labels.contains(&l) {
                labels.push(l);
            }
        }
        Ok(Self { labels })
    }

    pub fn from_labels(net: &ResistorNetwork, names: &[&str]) -> Result<Self> {
        let ids = names
            .iter()
            .map(|n| net.resolve(n))
            .collect::<Result<Vec<_>>>()?;
        Self::from_ids(net, &ids)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn contains(&self, net: &ResistorNetwork, v: VertexId) -> bool {
        let l = net.label(v);
        self.labels.iter().any(|t| *t == l)
    }

    /// Current ids of the terminals in `net`, in terminal order.
    pub fn ids(&self, net: &ResistorNetwork) -> Result<Vec<VertexId>> {
        self.labels
            .iter()
            .map(|l| {
                net.find_label(l)
                    .ok_or_else(|| Error::UnknownVertex(l.clone()))
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepKind {
    Series,
    Parallel,
    DeltaY,
    EliminateBlock,
    SubstituteBipartite,
}

impl StepKind {
    pub fn name(self) -> &'static str {
        match self {
            StepKind::Series => "series",
            StepKind::Parallel => "parallel",
            StepKind::DeltaY => "delta_y",
            StepKind::EliminateBlock => "eliminate_block",
            StepKind::SubstituteBipartite => "substitute_bipartite",
        }
    }
}

/// An edge as recorded in a step, endpoints by label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeRecord {
    pub u: String,
    pub v: String,
    pub resistance: Rational,
    pub gadget: bool,
}

impl EdgeRecord {
    fn to_json(&self) -> Value {
        json!({
            "u": self.u,
            "v": self.v,
            "r": rational_string(&self.resistance),
            "gadget": self.gadget,
        })
    }
}

impl std::fmt::Display for EdgeRecord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}-{}:{}",
            self.u,
            self.v,
            rational_string(&self.resistance)
        )?;
        if self.gadget {
            write!(f, "*")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionStep {
    pub kind: StepKind,
    pub removed_vertices: Vec<String>,
    pub added_vertices: Vec<String>,
    pub removed_edges: Vec<EdgeRecord>,
    pub added_edges: Vec<EdgeRecord>,
}

impl ReductionStep {
    fn new(kind: StepKind) -> Self {
        Self {
            kind,
            removed_vertices: Vec::new(),
            added_vertices: Vec::new(),
            removed_edges: Vec::new(),
            added_edges: Vec::new(),
        }
    }

    /// Replays this step: drops the removed edges and vertices, then appends
    /// the added vertices and edges in record order.
    pub fn apply(&self, net: &ResistorNetwork) -> Result<ResistorNetwork> {
        let mut edge_indices = Vec::new();
        for rec in &self.removed_edges {
            let u = lookup(net, &rec.u)?;
            let v = lookup(net, &rec.v)?;
            let idx = net
                .edges()
                .iter()
                .enumerate()
                .position(|(i, e)| {
                    !edge_indices.contains(&i)
                        && e.joins(u, v)
                        && e.resistance == rec.resistance
                        && e.gadget == rec.gadget
                })
                .ok_or_else(|| Error::NotApplicable(format!("edge {rec} not present")))?;
            edge_indices.push(idx);
        }
        let mut out = net.without_edges(&edge_indices);
        let remove = self
            .removed_vertices
            .iter()
            .map(|l| lookup(&out, l))
            .collect::<Result<Vec<_>>>()?;
        if let Some(&v) = remove.iter().find(|&&v| out.degree(v) > 0) {
            return Err(Error::NotApplicable(format!(
                "vertex {} still has edges",
                out.label(v)
            )));
        }
        out = out.without_vertices(&remove);
        for l in &self.added_vertices {
            out.add_vertex(l.clone())?;
        }
        for rec in &self.added_edges {
            let u = lookup(&out, &rec.u)?;
            let v = lookup(&out, &rec.v)?;
            out.push_edge(u, v, rec.resistance.clone(), rec.gadget)?;
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kind": self.kind.name(),
            "removed_vertices": self.removed_vertices,
            "added_vertices": self.added_vertices,
            "removed_edges": self.removed_edges.iter().map(EdgeRecord::to_json).collect::<Vec<_>>(),
            "added_edges": self.added_edges.iter().map(EdgeRecord::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn to_line(&self) -> String {
        let join = |items: &[EdgeRecord]| {
            items
                .iter()
                .map(|e| e.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        format!(
            "{} -v[{}] +v[{}] -e[{}] +e[{}]",
            self.kind.name(),
            self.removed_vertices.join(","),
            self.added_vertices.join(","),
            join(&self.removed_edges),
            join(&self.added_edges)
        )
    }
}

fn lookup(net: &ResistorNetwork, label: &str) -> Result<VertexId> {
    match net.labels() {
        Some(labels) => labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownVertex(label.to_string())),
        None => net.resolve(label),
    }
}

fn record(
    net: &ResistorNetwork,
    u: VertexId,
    v: VertexId,
    r: Rational,
    gadget: bool,
) -> EdgeRecord {
    EdgeRecord {
        u: net.label(u).into_owned(),
        v: net.label(v).into_owned(),
        resistance: r,
        gadget,
    }
}

fn record_edge(net: &ResistorNetwork, index: usize) -> EdgeRecord {
    let e = &net.edges()[index];
    record(net, e.u, e.v, e.resistance.clone(), e.gadget)
}

/// A rewritten network and the step that produced it.
#[derive(Debug, Clone)]
pub struct Rewrite {
    pub network: ResistorNetwork,
    pub step: ReductionStep,
}

fn finish(net: &ResistorNetwork, step: ReductionStep) -> Result<Rewrite> {
    let network = step.apply(net)?;
    Ok(Rewrite { network, step })
}

fn fresh_label(net: &ResistorNetwork, stem: &str) -> String {
    (1..)
        .map(|i| format!("{stem}{i}"))
        .find(|l| net.find_label(l).is_none())
        .expect("unbounded")
}

fn incident(net: &ResistorNetwork, v: VertexId) -> Vec<usize> {
    net.edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| e.u == v || e.v == v)
        .map(|(i, _)| i)
        .collect()
}

fn single_edge(net: &ResistorNetwork, a: VertexId, b: VertexId) -> Result<usize> {
    let found: Vec<usize> = net
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| e.joins(a, b))
        .map(|(i, _)| i)
        .collect();
    match found.as_slice() {
        [i] => Ok(*i),
        [] => Err(Error::NotApplicable(format!(
            "no edge between {} and {}",
            net.label(a),
            net.label(b)
        ))),
        _ => Err(Error::NotApplicable(format!(
            "parallel edges between {} and {}; merge them first",
            net.label(a),
            net.label(b)
        ))),
    }
}

/// Merges the two resistors through a degree-2 non-terminal vertex.
pub fn series_reduce(
    net: &ResistorNetwork,
    terminals: &Terminals,
    mid: VertexId,
) -> Result<Rewrite> {
    net.check_vertex(mid)?;
    if terminals.contains(net, mid) {
        return Err(Error::NotApplicable(format!(
            "{} is a terminal",
            net.label(mid)
        )));
    }
    let edges = incident(net, mid);
    if edges.len() != 2 {
        return Err(Error::NotApplicable(format!(
            "{} has degree {}, series needs 2",
            net.label(mid),
            edges.len()
        )));
    }
    let (e1, e2) = (&net.edges()[edges[0]], &net.edges()[edges[1]]);
    let a = e1.other(mid).expect("incident");
    let b = e2.other(mid).expect("incident");
    if a == b {
        return Err(Error::NotApplicable(format!(
            "both edges at {} lead to {}",
            net.label(mid),
            net.label(a)
        )));
    }
    let r = &e1.resistance + &e2.resistance;
    if r.is_zero() {
        return Err(Error::NotApplicable("series resistances cancel".into()));
    }
    let gadget = e1.gadget || e2.gadget;
    let mut step = ReductionStep::new(StepKind::Series);
    step.removed_edges = edges.iter().map(|&i| record_edge(net, i)).collect();
    step.removed_vertices.push(net.label(mid).into_owned());
    step.added_edges.push(record(net, a, b, r, gadget));
    finish(net, step)
}

/// Replaces all resistors between `u` and `v` by one with the reciprocal of
/// the summed conductances.
pub fn parallel_reduce(net: &ResistorNetwork, u: VertexId, v: VertexId) -> Result<Rewrite> {
    net.check_vertex(u)?;
    net.check_vertex(v)?;
    let edges: Vec<usize> = net
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| e.joins(u, v))
        .map(|(i, _)| i)
        .collect();
    if edges.len() < 2 {
        return Err(Error::NotApplicable(format!(
            "{} edge(s) between {} and {}, parallel needs 2",
            edges.len(),
            net.label(u),
            net.label(v)
        )));
    }
    let conductance: Rational = edges.iter().map(|&i| net.edges()[i].conductance()).sum();
    if conductance.is_zero() {
        return Err(Error::NotApplicable(
            "parallel conductances cancel; resistance undefined".into(),
        ));
    }
    let gadget = edges.iter().any(|&i| net.edges()[i].gadget);
    let mut step = ReductionStep::new(StepKind::Parallel);
    step.removed_edges = edges.iter().map(|&i| record_edge(net, i)).collect();
    step.added_edges
        .push(record(net, u, v, conductance.recip(), gadget));
    finish(net, step)
}

/// Δ-Y transformation of the triangle `(u, v, w)`.
///
/// With `r1 = r[u,v]`, `r2 = r[v,w]`, `r3 = r[w,u]` and `S = r1 + r2 + r3`,
/// the new center is joined to `u` by `r1 r3 / S`, to `v` by `r1 r2 / S`
/// and to `w` by `r2 r3 / S`: each arm is the product of the two triangle
/// edges meeting at its corner.
pub fn delta_y(
    net: &ResistorNetwork,
    triangle: (VertexId, VertexId, VertexId),
    center_label: Option<&str>,
) -> Result<Rewrite> {
    let (u, v, w) = triangle;
    for x in [u, v, w] {
        net.check_vertex(x)?;
    }
    if u == v || v == w || u == w {
        return Err(Error::NotApplicable(
            "triangle corners must be distinct".into(),
        ));
    }
    let i1 = single_edge(net, u, v)?;
    let i2 = single_edge(net, v, w)?;
    let i3 = single_edge(net, w, u)?;
    let [e1, e2, e3] = [i1, i2, i3].map(|i| &net.edges()[i]);
    let (r1, r2, r3) = (&e1.resistance, &e2.resistance, &e3.resistance);
    let sum = r1 + r2 + r3;
    if sum.is_zero() {
        return Err(Error::NotApplicable(
            "triangle resistances sum to zero".into(),
        ));
    }
    let gadget = e1.gadget || e2.gadget || e3.gadget;
    let center = match center_label {
        Some(l) => {
            if net.find_label(l).is_some() {
                return Err(Error::Malformed(format!("label `{l}` already in use")));
            }
            l.to_string()
        }
        None => fresh_label(net, "y"),
    };
    let arm = |a: &Rational, b: &Rational| (a * b) / &sum;
    let mut step = ReductionStep::new(StepKind::DeltaY);
    step.removed_edges = [i1, i2, i3].iter().map(|&i| record_edge(net, i)).collect();
    step.added_vertices.push(center.clone());
    for (corner, r) in [(u, arm(r1, r3)), (v, arm(r1, r2)), (w, arm(r2, r3))] {
        step.added_edges.push(EdgeRecord {
            u: net.label(corner).into_owned(),
            v: center.clone(),
            resistance: r,
            gadget,
        });
    }
    finish(net, step)
}

/// Blocks of the network as edge-index sets, plus the cut-vertex flags.
pub fn blocks(net: &ResistorNetwork) -> (Vec<Vec<usize>>, Vec<bool>) {
    struct State<'a> {
        net: &'a ResistorNetwork,
        adj: Vec<Vec<(VertexId, usize)>>,
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<usize>,
        blocks: Vec<Vec<usize>>,
        cut: Vec<bool>,
    }

    fn dfs(s: &mut State<'_>, x: VertexId, parent_edge: Option<usize>) {
        s.time += 1;
        s.disc[x] = s.time;
        s.low[x] = s.time;
        let mut children = 0;
        let adj = s.adj[x].clone();
        for (y, ei) in adj {
            if Some(ei) == parent_edge {
                continue;
            }
            if s.disc[y] == 0 {
                children += 1;
                s.stack.push(ei);
                dfs(s, y, Some(ei));
                s.low[x] = s.low[x].min(s.low[y]);
                if s.low[y] >= s.disc[x] {
                    if parent_edge.is_some() {
                        s.cut[x] = true;
                    }
                    let mut block = Vec::new();
                    while let Some(top) = s.stack.pop() {
                        block.push(top);
                        if top == ei {
                            break;
                        }
                    }
                    block.sort_unstable();
                    s.blocks.push(block);
                }
            } else if s.disc[y] < s.disc[x] {
                s.stack.push(ei);
                s.low[x] = s.low[x].min(s.disc[y]);
            }
        }
        if parent_edge.is_none() && children > 1 {
            s.cut[x] = true;
        }
        let _ = s.net;
    }

    let n = net.vertex_count();
    let mut adj = vec![Vec::new(); n];
    for (i, e) in net.edges().iter().enumerate() {
        adj[e.u].push((e.v, i));
        adj[e.v].push((e.u, i));
    }
    let mut s = State {
        net,
        adj,
        disc: vec![0; n],
        low: vec![0; n],
        time: 0,
        stack: Vec::new(),
        blocks: Vec::new(),
        cut: vec![false; n],
    };
    for v in 0..n {
        if s.disc[v] == 0 {
            dfs(&mut s, v, None);
        }
    }
    let (mut blocks, cut) = (s.blocks, s.cut);
    blocks.sort();
    (blocks, cut)
}

/// Removes a block that contains exactly one cut vertex `x` and no terminal
/// other than `x`. All of the block except `x` is deleted.
pub fn eliminate_block(net: &ResistorNetwork, terminals: &Terminals) -> Result<Rewrite> {
    let (blocks, cut) = blocks(net);
    for block in blocks {
        let mut verts: BTreeSet<VertexId> = BTreeSet::new();
        for &i in &block {
            verts.insert(net.edges()[i].u);
            verts.insert(net.edges()[i].v);
        }
        let cuts: Vec<VertexId> = verts.iter().copied().filter(|&v| cut[v]).collect();
        if cuts.len() != 1 {
            continue;
        }
        let x = cuts[0];
        if verts.iter().any(|&v| v != x && terminals.contains(net, v)) {
            continue;
        }
        let mut step = ReductionStep::new(StepKind::EliminateBlock);
        step.removed_edges = block.iter().map(|&i| record_edge(net, i)).collect();
        step.removed_vertices = verts
            .iter()
            .filter(|&&v| v != x)
            .map(|&v| net.label(v).into_owned())
            .collect();
        return finish(net, step);
    }
    Err(Error::NotApplicable(
        "no block with a single cut vertex and no interior terminal".into(),
    ))
}

/// Replaces the unit complete bipartite subnetwork between `X` and `Y` by
/// the star gadget; edges inside `X` or inside `Y` are kept. The gadget adds
/// `x0` and `y0`, edges `x0–x_i` of `1/|Y|`, `y0–y_j` of `1/|X|`, and
/// `x0–y0` of `−1/(|X||Y|)` flagged as gadget.
pub fn substitute_bipartite_star(
    net: &ResistorNetwork,
    xs: &[VertexId],
    ys: &[VertexId],
) -> Result<Rewrite> {
    if xs.is_empty() || ys.is_empty() {
        return Err(Error::NotApplicable(
            "both partite sets must be nonempty".into(),
        ));
    }
    let xset: BTreeSet<VertexId> = xs.iter().copied().collect();
    let yset: BTreeSet<VertexId> = ys.iter().copied().collect();
    if xset.len() != xs.len() || yset.len() != ys.len() || !xset.is_disjoint(&yset) {
        return Err(Error::NotApplicable(
            "partite sets must be distinct and disjoint".into(),
        ));
    }
    for &v in xs.iter().chain(ys) {
        net.check_vertex(v)?;
    }
    let mut removed = Vec::new();
    for (i, e) in net.edges().iter().enumerate() {
        let ux = xset.contains(&e.u);
        let vx = xset.contains(&e.v);
        let uy = yset.contains(&e.u);
        let vy = yset.contains(&e.v);
        if (ux && vy) || (uy && vx) {
            if e.resistance != Rational::one() || e.gadget {
                return Err(Error::NotApplicable(
                    "bipartite edges must be unit resistors".into(),
                ));
            }
            removed.push(i);
        }
    }
    for &x in xs {
        for &y in ys {
            let count = removed
                .iter()
                .filter(|&&i| net.edges()[i].joins(x, y))
                .count();
            if count != 1 {
                return Err(Error::NotApplicable(format!(
                    "{} edge(s) between {} and {}; need exactly one",
                    count,
                    net.label(x),
                    net.label(y)
                )));
            }
        }
    }
    let (m, n) = (xs.len() as i64, ys.len() as i64);
    let x0 = fresh_or(net, "x0", "x");
    let mut y0 = fresh_or(net, "y0", "y");
    if y0 == x0 {
        y0.push('\'');
    }
    let mut step = ReductionStep::new(StepKind::SubstituteBipartite);
    step.removed_edges = removed.iter().map(|&i| record_edge(net, i)).collect();
    step.added_vertices = vec![x0.clone(), y0.clone()];
    for &x in xs {
        step.added_edges.push(EdgeRecord {
            u: x0.clone(),
            v: net.label(x).into_owned(),
            resistance: ratio(1, n),
            gadget: false,
        });
    }
    for &y in ys {
        step.added_edges.push(EdgeRecord {
            u: y0.clone(),
            v: net.label(y).into_owned(),
            resistance: ratio(1, m),
            gadget: false,
        });
    }
    step.added_edges.push(EdgeRecord {
        u: x0,
        v: y0,
        resistance: ratio(-1, m * n),
        gadget: true,
    });
    finish(net, step)
}

fn fresh_or(net: &ResistorNetwork, preferred: &str, stem: &str) -> String {
    if net.find_label(preferred).is_none() {
        preferred.to_string()
    } else {
        fresh_label(net, &format!("{stem}0_"))
    }
}

/// Resistances among terminal pairs `(i, j)` with `i < j` in terminal order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TerminalTable {
    pub entries: Vec<(String, String, Rational)>,
}

impl TerminalTable {
    pub fn compute(net: &ResistorNetwork, terminals: &Terminals) -> Result<Self> {
        let ids = terminals.ids(net)?;
        let table = resistance_matrix_exact(net)?;
        let mut entries = Vec::new();
        for (a, &u) in ids.iter().enumerate() {
            for &v in &ids[a + 1..] {
                entries.push((
                    net.label(u).into_owned(),
                    net.label(v).into_owned(),
                    table.get(u, v).clone(),
                ));
            }
        }
        Ok(Self { entries })
    }

    fn to_json(&self) -> Value {
        Value::Array(
            self.entries
                .iter()
                .map(|(u, v, r)| json!({"u": u, "v": v, "R": rational_string(r)}))
                .collect(),
        )
    }
}

/// Ordered record of rewrites from `initial` to `final_network`.
#[derive(Debug, Clone)]
pub struct ReductionTrace {
    pub initial: ResistorNetwork,
    pub terminals: Terminals,
    pub steps: Vec<ReductionStep>,
    pub final_network: ResistorNetwork,
    /// One table for the initial network and one after every step.
    pub certificates: Option<Vec<TerminalTable>>,
}

impl ReductionTrace {
    pub fn start(initial: ResistorNetwork, terminals: Terminals, certify: bool) -> Result<Self> {
        let certificates = if certify {
            Some(vec![TerminalTable::compute(&initial, &terminals)?])
        } else {
            None
        };
        Ok(Self {
            final_network: initial.clone(),
            initial,
            terminals,
            steps: Vec::new(),
            certificates,
        })
    }

    /// Appends a rewrite of the current final network.
    pub fn push(&mut self, rewrite: Rewrite) -> Result<()> {
        if let Some(certs) = &mut self.certificates {
            certs.push(TerminalTable::compute(&rewrite.network, &self.terminals)?);
        }
        self.steps.push(rewrite.step);
        self.final_network = rewrite.network;
        Ok(())
    }

    pub fn current(&self) -> &ResistorNetwork {
        &self.final_network
    }

    /// True when every certificate table equals the first one.
    pub fn certificates_consistent(&self) -> Option<bool> {
        self.certificates
            .as_ref()
            .map(|c| c.windows(2).all(|w| w[0] == w[1]))
    }

    /// Replays every step on the initial network.
    pub fn replay(&self) -> Result<ResistorNetwork> {
        self.steps
            .iter()
            .try_fold(self.initial.clone(), |net, step| step.apply(&net))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "terminals": self.terminals.labels(),
            "initial": network_json(&self.initial),
            "steps": self.steps.iter().map(ReductionStep::to_json).collect::<Vec<_>>(),
            "final": network_json(&self.final_network),
            "certificates": self.certificates.as_ref().map(|c| c.iter().map(TerminalTable::to_json).collect::<Vec<_>>()),
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "terminals {}", self.terminals.labels().join(","));
        for (i, step) in self.steps.iter().enumerate() {
            let _ = writeln!(out, "{} {}", i + 1, step.to_line());
        }
        if let Some(ok) = self.certificates_consistent() {
            let _ = writeln!(
                out,
                "certificates {}",
                if ok { "consistent" } else { "MISMATCH" }
            );
        }
        out
    }
}

pub fn network_json(net: &ResistorNetwork) -> Value {
    json!({
        "vertices": (0..net.vertex_count()).map(|v| net.label(v).into_owned()).collect::<Vec<_>>(),
        "edges": net.edges().iter().map(|e| json!({
            "u": net.label(e.u),
            "v": net.label(e.v),
            "r": rational_string(&e.resistance),
            "gadget": e.gadget,
        })).collect::<Vec<_>>(),
    })
}

#[derive(Debug, Clone, Copy, Default)]
pub struct GreedyOptions {
    /// Also apply Δ-Y, chasing triangles the way the fan chain pipeline does.
    pub delta_y: bool,
    pub certify: bool,
}

#[derive(Debug, Clone)]
pub struct GreedyOutcome {
    pub trace: ReductionTrace,
    /// False when non-terminal vertices remain that no rewrite can remove
    /// (Δ-Y centres are allowed to remain in Δ-Y mode).
    pub complete: bool,
}

/// Applies rewrites greedily in the order parallel, series, block
/// elimination, then (when enabled) Δ-Y, until nothing applies.
///
/// In Δ-Y mode the centres created by Δ-Y are never merged away by series
/// steps, and triangles through the newest centre are preferred; on a fan
/// with terminals `{a1, an, b}` this reproduces the chain network of the fan
/// pipeline.
pub fn reduce_greedy(
    net: &ResistorNetwork,
    terminals: &Terminals,
    options: GreedyOptions,
) -> Result<GreedyOutcome> {
    if !net.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut trace = ReductionTrace::start(net.clone(), terminals.clone(), options.certify)?;
    let mut centers: Vec<String> = Vec::new();
    let budget = 16 * (net.vertex_count() + net.edge_count()) + 16;
    for _ in 0..budget {
        let cur = trace.current().clone();
        let rewrite = next_parallel(&cur)
            .or_else(|| next_series(&cur, terminals, &centers))
            .or_else(|| eliminate_block(&cur, terminals).ok())
            .or_else(|| {
                if options.delta_y {
                    next_delta_y(&cur, terminals, &centers)
                } else {
                    None
                }
            });
        match rewrite {
            Some(rw) => {
                if rw.step.kind == StepKind::DeltaY {
                    centers.extend(rw.step.added_vertices.iter().cloned());
                }
                trace.push(rw)?;
            }
            None => break,
        }
    }
    let cur = trace.current();
    let complete = (0..cur.vertex_count()).all(|v| {
        terminals.contains(cur, v)
            || (options.delta_y && centers.iter().any(|c| *c == cur.label(v)))
    });
    Ok(GreedyOutcome { trace, complete })
}

fn next_parallel(net: &ResistorNetwork) -> Option<Rewrite> {
    let mut pairs: Vec<(VertexId, VertexId)> = net
        .edges()
        .iter()
        .map(|e| (e.u.min(e.v), e.u.max(e.v)))
        .collect();
    pairs.sort_unstable();
    pairs
        .windows(2)
        .filter(|w| w[0] == w[1])
        .map(|w| w[0])
        .find_map(|(u, v)| parallel_reduce(net, u, v).ok())
}

fn next_series(
    net: &ResistorNetwork,
    terminals: &Terminals,
    centers: &[String],
) -> Option<Rewrite> {
    (0..net.vertex_count())
        .filter(|&v| net.degree(v) == 2)
        .filter(|&v| !centers.iter().any(|c| *c == net.label(v)))
        .find_map(|v| series_reduce(net, terminals, v).ok())
}

fn triangles(net: &ResistorNetwork) -> Vec<(VertexId, VertexId, VertexId)> {
    let adj: Vec<Vec<VertexId>> = (0..net.vertex_count()).map(|v| net.neighbors(v)).collect();
    let mut out = Vec::new();
    for u in 0..net.vertex_count() {
        for &v in adj[u].iter().filter(|&&v| v > u) {
            for &w in adj[v].iter().filter(|&&w| w > v) {
                if adj[u].binary_search(&w).is_ok() {
                    out.push((u, v, w));
                }
            }
        }
    }
    out
}

fn next_delta_y(
    net: &ResistorNetwork,
    terminals: &Terminals,
    centers: &[String],
) -> Option<Rewrite> {
    let tris = triangles(net);
    let is_center = |v: VertexId| centers.iter().any(|c| *c == net.label(v));
    let newest = centers.last().and_then(|c| net.find_label(c));
    let center_label = fresh_label(net, "c");

    if let Some(c) = newest {
        if let Some(&(u, v, w)) = tris.iter().find(|&&(u, v, w)| u == c || v == c || w == c) {
            let ordered = order_from(c, (u, v, w));
            if let Ok(rw) = delta_y(net, ordered, Some(&center_label)) {
                return Some(rw);
            }
        }
    }
    let term_ids = terminals.ids(net).ok()?;
    let rank = |t: &(VertexId, VertexId, VertexId)| {
        let corners = [t.0, t.1, t.2];
        term_ids
            .iter()
            .position(|x| corners.contains(x))
            .unwrap_or(usize::MAX)
    };
    let mut candidates: Vec<_> = tris
        .into_iter()
        .filter(|&(u, v, w)| {
            [u, v, w]
                .iter()
                .any(|&x| !terminals.contains(net, x) && !is_center(x) && net.degree(x) == 3)
        })
        .collect();
    candidates.sort_by_key(|t| (rank(t), *t));
    candidates.into_iter().find_map(|t| {
        let first = [t.0, t.1, t.2]
            .into_iter()
            .find(|x| term_ids.first() == Some(x))
            .unwrap_or(t.0);
        delta_y(net, order_from(first, t), Some(&center_label)).ok()
    })
}

fn order_from(
    first: VertexId,
    t: (VertexId, VertexId, VertexId),
) -> (VertexId, VertexId, VertexId) {
    let rest: Vec<VertexId> = [t.0, t.1, t.2]
        .into_iter()
        .filter(|&x| x != first)
        .collect();
    (first, rest[0], rest[1])
}

/// Result of the fan chain pipeline on `C^m_{P_{n+1}}`.
#[derive(Debug, Clone)]
pub struct FanChain {
    pub n: usize,
    pub m: usize,
    pub trace: ReductionTrace,
    /// Resistances along the final chain `a1, c1, …, c_n, a_{n+1}`.
    pub chain: Vec<Rational>,
    /// `apex_arms[i-1] = r[c_i, b]` in the network right after the `i`-th Δ-Y.
    pub apex_arms: Vec<Rational>,
}

impl FanChain {
    /// `r[c_{n-1}, b]` in `N_{n-1}`.
    pub fn penultimate_apex_arm(&self) -> &Rational {
        &self.apex_arms[self.n - 2]
    }

    /// `r[c_{n-1}, c_n]` in `N_n`.
    pub fn last_link(&self) -> &Rational {
        &self.chain[self.n - 1]
    }

    /// `R[a1, c_k]` along the chain.
    pub fn to_center(&self, k: usize) -> Rational {
        self.chain[..k].iter().sum()
    }

    /// `R[a1, a_{n+1}]` of the fan `C^m_{P_{n+1}}`: the chain is a tree.
    pub fn endpoint_resistance(&self) -> Rational {
        self.chain.iter().sum()
    }

    /// `R[a1, b]` of the fan `C^m_{P_{n+1}}`.
    pub fn apex_resistance(&self) -> Rational {
        self.to_center(self.n) + &self.apex_arms[self.n - 1]
    }
}

/// Reduces the fan `C^m_{P_{n+1}}` (terminals `a1`, `a_{n+1}`, `b`) to a
/// chain: for `i = 1..=n`, Δ-Y on the triangle `(prev, a_{i+1}, b)` with new
/// centre `c_i` (where `prev` is `a1`, then `c_{i-1}`), followed by a series
/// merge of `a_{i+1}` while it is interior.
pub fn fan_chain_reduce(n: usize, m: usize, certify: bool) -> Result<FanChain> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "fan chain needs n >= 2, got {n}"
        )));
    }
    let fan = builders::fan(n + 1, m)?;
    let terminals = Terminals::from_labels(&fan, &["a1", &format!("a{}", n + 1), "b"])?;
    let mut trace = ReductionTrace::start(fan, terminals.clone(), certify)?;
    let mut apex_arms = Vec::with_capacity(n);
    let mut prev = "a1".to_string();
    for i in 1..=n {
        let net = trace.current();
        let ids = |l: &str| {
            net.find_label(l)
                .ok_or_else(|| Error::UnknownVertex(l.to_string()))
        };
        let tri = (ids(&prev)?, ids(&format!("a{}", i + 1))?, ids("b")?);
        let center = format!("c{i}");
        let rw = delta_y(net, tri, Some(&center))?;
        let arm = rw
            .step
            .added_edges
            .iter()
            .find(|e| e.u == "b")
            .map(|e| e.resistance.clone())
            .expect("apex arm");
        apex_arms.push(arm);
        trace.push(rw)?;
        if i < n {
            let net = trace.current();
            let mid = net
                .find_label(&format!("a{}", i + 1))
                .expect("interior path vertex");
            let rw = series_reduce(net, &terminals, mid)?;
            trace.push(rw)?;
        }
        prev = center;
    }

    let net = trace.current();
    let mut order = vec!["a1".to_string()];
    order.extend((1..=n).map(|i| format!("c{i}")));
    order.push(format!("a{}", n + 1));
    let chain = order
        .windows(2)
        .map(|w| {
            let a = net.find_label(&w[0]).expect("chain vertex");
            let b = net.find_label(&w[1]).expect("chain vertex");
            let i = single_edge(net, a, b)?;
            Ok(net.edges()[i].resistance.clone())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FanChain {
        n,
        m,
        trace,
        chain,
        apex_arms,
    })
}

/// `1 / m^n` as an exact rational.
pub fn inverse_power(m: usize, n: usize) -> Rational {
    let mut r = integer(1);
    for _ in 0..n {
        r /= integer(m as i64);
    }
    r
}

/// Checks `0 < r[c_{n-1}, b] < 1/m^n` for a computed chain.
pub fn apex_arm_bound_holds(chain: &FanChain) -> bool {
    let arm = chain.penultimate_apex_arm();
    arm.is_positive() && *arm < inverse_power(chain.m, chain.n)
}
