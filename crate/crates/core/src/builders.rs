//! Named network families. All builders use unit resistors except the apex
//! edges of cones and fans.
//!
//! Product vertices are numbered row-major: `(u, x)` gets id
//! `u * |V(H)| + x` and label `(label_u,label_x)`.

use num_traits::One;

use crate::error::{Error, Result};
use crate::network::{ratio, Rational, ResistorNetwork};

fn positive(name: &str, value: usize) -> Result<()> {
    if value == 0 {
        Err(Error::InvalidArgument(format!("{name} must be positive")))
    } else {
        Ok(())
    }
}

fn named(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

/// Path `a1 a2 ... an`.
pub fn path(n: usize) -> Result<ResistorNetwork> {
    positive("path length", n)?;
    let mut net = ResistorNetwork::with_labels(named("a", n))?;
    for i in 1..n {
        net.add_unit_edge(i - 1, i)?;
    }
    Ok(net)
}

/// Cycle `b1 b2 ... bn b1`. `cycle(1)` is a single vertex and `cycle(2)` a
/// single edge.
pub fn cycle(n: usize) -> Result<ResistorNetwork> {
    positive("cycle length", n)?;
    let mut net = ResistorNetwork::with_labels(named("b", n))?;
    for i in 1..n {
        net.add_unit_edge(i - 1, i)?;
    }
    if n > 2 {
        net.add_unit_edge(n - 1, 0)?;
    }
    Ok(net)
}

/// The clique `K2 = c1 c2`.
pub fn clique2() -> ResistorNetwork {
    let mut net = ResistorNetwork::with_labels(named("c", 2)).expect("distinct labels");
    net.add_unit_edge(0, 1).expect("valid edge");
    net
}

/// `n` isolated vertices `x1 ... xn`.
pub fn empty(n: usize) -> Result<ResistorNetwork> {
    positive("vertex count", n)?;
    ResistorNetwork::with_labels(named("x", n))
}

/// Complete bipartite `K_{m,n}` with parts `x1..xm` (ids `0..m`) and `y1..yn`.
pub fn complete_bipartite(m: usize, n: usize) -> Result<ResistorNetwork> {
    positive("m", m)?;
    positive("n", n)?;
    let mut labels = named("x", m);
    labels.extend(named("y", n));
    let mut net = ResistorNetwork::with_labels(labels)?;
    for i in 0..m {
        for j in 0..n {
            net.add_unit_edge(i, m + j)?;
        }
    }
    Ok(net)
}

/// Hypercube `Q_k = Q_{k-1} □ K2`. Vertex ids read as `k`-bit coordinate
/// strings, most significant coordinate first; labels are those bit strings.
pub fn hypercube(k: usize) -> Result<ResistorNetwork> {
    positive("dimension", k)?;
    let n = 1usize << k;
    let labels = (0..n).map(|v| format!("{v:0k$b}")).collect();
    let mut net = ResistorNetwork::with_labels(labels)?;
    for v in 0..n {
        for bit in 0..k {
            let w = v ^ (1 << bit);
            if v < w {
                net.add_unit_edge(v, w)?;
            }
        }
    }
    Ok(net)
}

/// Cartesian product `G □ H`.
pub fn cartesian_product(g: &ResistorNetwork, h: &ResistorNetwork) -> Result<ResistorNetwork> {
    let (ng, nh) = (g.vertex_count(), h.vertex_count());
    let id = |u: usize, x: usize| u * nh + x;
    let mut labels = Vec::with_capacity(ng * nh);
    for u in 0..ng {
        for x in 0..nh {
            labels.push(format!("({},{})", g.label(u), h.label(x)));
        }
    }
    let mut net = ResistorNetwork::with_labels(labels)?;
    for x in 0..nh {
        for e in g.edges() {
            net.push_edge(id(e.u, x), id(e.v, x), e.resistance.clone(), e.gadget)?;
        }
    }
    for u in 0..ng {
        for e in h.edges() {
            net.push_edge(id(u, e.u), id(u, e.v), e.resistance.clone(), e.gadget)?;
        }
    }
    Ok(net)
}

fn unique_label(existing: &ResistorNetwork, base: &str) -> String {
    let mut label = base.to_string();
    while existing.find_label(&label).is_some() {
        label.push('\'');
    }
    label
}

/// Weighted cone: `G` plus an apex `b` joined to every vertex of `G` by a
/// resistor of resistance `1/m`. The apex gets the last id.
pub fn cone(g: &ResistorNetwork, m: usize) -> Result<ResistorNetwork> {
    if m <= 1 {
        return Err(Error::InvalidArgument(format!(
            "cone weight m must exceed 1, got {m}"
        )));
    }
    let n = g.vertex_count();
    let mut labels: Vec<String> = (0..n).map(|v| g.label(v).into_owned()).collect();
    labels.push(unique_label(g, "b"));
    let mut net = ResistorNetwork::with_labels(labels)?;
    for e in g.edges() {
        net.push_edge(e.u, e.v, e.resistance.clone(), e.gadget)?;
    }
    let apex_r = ratio(1, m as i64);
    for v in 0..n {
        net.add_edge(v, n, apex_r.clone())?;
    }
    Ok(net)
}

/// Join `G + H`: disjoint union plus a unit edge between every vertex of `G`
/// and every vertex of `H`. `H`'s vertices follow `G`'s.
pub fn join(g: &ResistorNetwork, h: &ResistorNetwork) -> Result<ResistorNetwork> {
    let (ng, nh) = (g.vertex_count(), h.vertex_count());
    let mut labels: Vec<String> = (0..ng).map(|v| g.label(v).into_owned()).collect();
    for x in 0..nh {
        let mut label = h.label(x).into_owned();
        while labels.contains(&label) {
            label.push('\'');
        }
        labels.push(label);
    }
    let mut net = ResistorNetwork::with_labels(labels)?;
    for e in g.edges() {
        net.push_edge(e.u, e.v, e.resistance.clone(), e.gadget)?;
    }
    for e in h.edges() {
        net.push_edge(ng + e.u, ng + e.v, e.resistance.clone(), e.gadget)?;
    }
    for u in 0..ng {
        for x in 0..nh {
            net.add_edge(u, ng + x, Rational::one())?;
        }
    }
    Ok(net)
}

/// Ladder `L_n = P_n □ K2`; `(a_i, c_j)` has id `2(i-1) + (j-1)`.
pub fn ladder(n: usize) -> Result<ResistorNetwork> {
    cartesian_product(&path(n)?, &clique2())
}

/// Block tower `G_n = P_n □ C4`; `(a_i, b_j)` has id `4(i-1) + (j-1)`.
pub fn block_tower(n: usize) -> Result<ResistorNetwork> {
    cartesian_product(&path(n)?, &cycle(4)?)
}

/// `P_n □ Q_k`; the block tower family generalised to any hypercube.
pub fn path_hypercube_product(n: usize, k: usize) -> Result<ResistorNetwork> {
    cartesian_product(&path(n)?, &hypercube(k)?)
}

/// Weighted fan `C^m_{P_n}`: vertices `a1..an` then the apex `b` (id `n`).
pub fn fan(n: usize, m: usize) -> Result<ResistorNetwork> {
    cone(&path(n)?, m)
}
