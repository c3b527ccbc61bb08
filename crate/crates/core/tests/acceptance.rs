//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::time::{Duration, Instant};

use num_traits::{Signed, Zero};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use resnet_core::analysis::{conjecture_scan, product_resistance, resistance_diameter, ScanConfig};
use resnet_core::builders::{
    block_tower, cartesian_product, complete_bipartite, cone, cycle, fan, hypercube, join, ladder,
    path, path_hypercube_product,
};
use resnet_core::closed_forms::{
    block_tower_decomposition, hypercube_diameter, kmn_resistance, ladder_endpoint_resistance,
    ladder_gap, Side,
};
use resnet_core::exact::{
    resistance_exact, resistance_exact_grounded, resistance_matrix_exact, GroundedSystem,
};
use resnet_core::network::{integer, ratio, to_f64};
use resnet_core::reduction::{
    delta_y, eliminate_block, fan_chain_reduce, inverse_power, parallel_reduce, series_reduce,
    substitute_bipartite_star, Rewrite, StepKind, TerminalTable, Terminals,
};
use resnet_core::spectra::{
    hypercube_spectrum, network_spectrum, path_spectrum, product_spectrum, resistance_spectral,
    Spectrum,
};
use resnet_core::{Rational, ResistorNetwork, VertexId};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: resnet_core::Error) -> String {
    e.to_string()
}

fn criterion_1() -> Outcome {
    for k in 1..=6 {
        let formula = hypercube_diameter(k).map_err(err)?;
        let q = hypercube(k).map_err(err)?;
        let oracle = resistance_exact(&q, 0, (1 << k) - 1).map_err(err)?;
        ensure(formula == oracle, || {
            format!("k={k}: formula {formula} vs oracle {oracle}")
        })?;
    }
    let d3 = hypercube_diameter(3).map_err(err)?;
    ensure(d3 == ratio(5, 6), || format!("k=3 gives {d3}"))?;
    Ok("k=1..6 exact, k=3 = 5/6".into())
}

fn criterion_2() -> Outcome {
    let mut checked = 0;
    for m in 1..=6 {
        for n in 1..=6 {
            let net = complete_bipartite(m, n).map_err(err)?;
            let table = resistance_matrix_exact(&net).map_err(err)?;
            let mut cases = vec![(0, m, Side::X, Side::Y)];
            if m >= 2 {
                cases.push((0, m - 1, Side::X, Side::X));
            }
            if n >= 2 {
                cases.push((m, m + n - 1, Side::Y, Side::Y));
            }
            for (u, v, su, sv) in cases {
                let formula = kmn_resistance(m, n, su, sv).map_err(err)?;
                ensure(&formula == table.get(u, v), || {
                    format!("m={m} n={n} {su:?}{sv:?}: {formula} vs {}", table.get(u, v))
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} exact cases"))
}

const RESISTANCES: [(i64, i64); 7] = [(1, 1), (2, 1), (3, 1), (1, 2), (1, 3), (2, 3), (3, 2)];

fn random_resistance(rng: &mut StdRng) -> Rational {
    let (p, q) = *RESISTANCES.choose(rng).expect("nonempty");
    ratio(p, q)
}

type Planted = (Vec<VertexId>, Vec<VertexId>);
type Criterion = (&'static str, u64, fn() -> Outcome);

/// Random connected network on `n` vertices: a random spanning tree, extra
/// edges (some parallel), and optionally a planted unit `K_{a,b}`.
fn random_network(rng: &mut StdRng, n: usize) -> (ResistorNetwork, Option<Planted>) {
    let mut net = ResistorNetwork::new(n);
    let mut planted = None;
    let mut forbidden: Vec<(VertexId, VertexId)> = Vec::new();
    if n >= 4 && rng.gen_bool(0.5) {
        let mut order: Vec<VertexId> = (0..n).collect();
        order.shuffle(rng);
        let a = rng.gen_range(1..=2);
        let b = rng.gen_range(1..=(n - a).min(3));
        let xs = order[..a].to_vec();
        let ys = order[a..a + b].to_vec();
        for &x in &xs {
            for &y in &ys {
                net.add_unit_edge(x, y).expect("valid");
                forbidden.push((x.min(y), x.max(y)));
            }
        }
        planted = Some((xs, ys));
    }
    let allowed =
        |u: VertexId, v: VertexId, f: &[(VertexId, VertexId)]| !f.contains(&(u.min(v), u.max(v)));
    let mut order: Vec<VertexId> = (0..n).collect();
    order.shuffle(rng);
    for i in 1..n {
        let v = order[i];
        let candidates: Vec<VertexId> = order[..i]
            .iter()
            .copied()
            .filter(|&u| allowed(u, v, &forbidden))
            .collect();
        if let Some(&u) = candidates.choose(rng) {
            net.add_edge(u, v, random_resistance(rng)).expect("valid");
        }
    }
    let extra = rng.gen_range(0..=n);
    for _ in 0..extra {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v && allowed(u, v, &forbidden) {
            net.add_edge(u, v, random_resistance(rng)).expect("valid");
        }
    }
    (net, planted)
}

fn candidate_rewrites(
    net: &ResistorNetwork,
    terminals: &Terminals,
    planted: &Option<(Vec<String>, Vec<String>)>,
) -> Vec<Rewrite> {
    let mut out = Vec::new();
    let n = net.vertex_count();
    for u in 0..n {
        for v in u + 1..n {
            if net.edges_between(u, v).len() >= 2 {
                out.extend(parallel_reduce(net, u, v).ok());
            }
        }
    }
    for v in 0..n {
        if net.degree(v) == 2 {
            out.extend(series_reduce(net, terminals, v).ok());
        }
    }
    let adj = net.adjacency_lists();
    for u in 0..n {
        for &v in adj[u].iter().filter(|&&v| v > u) {
            for &w in adj[v].iter().filter(|&&w| w > v) {
                if adj[u].contains(&w) {
                    out.extend(delta_y(net, (u, v, w), None).ok());
                }
            }
        }
    }
    out.extend(eliminate_block(net, terminals).ok());
    if let Some((xs, ys)) = planted {
        let find = |ls: &[String]| {
            ls.iter()
                .map(|l| net.find_label(l))
                .collect::<Option<Vec<_>>>()
        };
        if let (Some(x), Some(y)) = (find(xs), find(ys)) {
            out.extend(substitute_bipartite_star(net, &x, &y).ok());
        }
    }
    out
}

fn criterion_3() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_0003);
    let mut steps = 0;
    let mut kinds = std::collections::BTreeMap::new();
    let mut networks = 0;
    while steps < 200 {
        let n = rng.gen_range(3..=10);
        let (mut net, planted) = random_network(&mut rng, n);
        // Materialise labels so planted sets survive renumbering.
        let labels: Vec<String> = (0..n).map(|v| v.to_string()).collect();
        let mut labelled = ResistorNetwork::with_labels(labels).map_err(err)?;
        for e in net.edges() {
            labelled
                .push_edge(e.u, e.v, e.resistance.clone(), e.gadget)
                .map_err(err)?;
        }
        net = labelled;
        let planted = planted.map(|(xs, ys)| {
            let name = |v: &VertexId| v.to_string();
            (
                xs.iter().map(name).collect::<Vec<_>>(),
                ys.iter().map(name).collect::<Vec<_>>(),
            )
        });
        let count = rng.gen_range(2..=n.min(4));
        let mut ids: Vec<VertexId> = (0..n).collect();
        ids.shuffle(&mut rng);
        let terminals = Terminals::from_ids(&net, &ids[..count]).map_err(err)?;
        let reference = TerminalTable::compute(&net, &terminals).map_err(err)?;
        networks += 1;
        for _ in 0..12 {
            let mut options = candidate_rewrites(&net, &terminals, &planted);
            if options.is_empty() || steps >= 200 {
                break;
            }
            let substitution = options
                .iter()
                .position(|rw| rw.step.kind == StepKind::SubstituteBipartite);
            let pick = match substitution {
                Some(i) if rng.gen_bool(0.5) => i,
                _ => rng.gen_range(0..options.len()),
            };
            let rw = options.swap_remove(pick);
            let replayed = rw.step.apply(&net).map_err(err)?;
            ensure(replayed == rw.network, || {
                format!("step {} does not replay", rw.step.to_line())
            })?;
            let table = TerminalTable::compute(&rw.network, &terminals).map_err(err)?;
            ensure(table == reference, || {
                format!("step {} changed terminal resistances", rw.step.to_line())
            })?;
            *kinds.entry(rw.step.kind.name()).or_insert(0) += 1;
            net = rw.network;
            steps += 1;
        }
    }
    let summary: Vec<String> = kinds.iter().map(|(k, c)| format!("{k}={c}")).collect();
    Ok(format!(
        "{steps} steps on {networks} networks ({})",
        summary.join(" ")
    ))
}

fn criterion_4() -> Outcome {
    let two = integer(2);
    for m in [2usize, 3, 4] {
        for n in 2..=12 {
            let bound = inverse_power(m, n);
            let small = fan(n, m).map_err(err)?;
            let big = fan(n + 1, m).map_err(err)?;
            let ends_n = resistance_exact(&small, 0, n - 1).map_err(err)?;
            let apex_n = resistance_exact(&small, 0, n).map_err(err)?;
            let ends_n1 = resistance_exact(&big, 0, n).map_err(err)?;
            let apex_n1 = resistance_exact(&big, 0, n + 1).map_err(err)?;

            let d1 = &ends_n1 - &ends_n;
            ensure(d1.is_positive() && d1 < &bound * &two, || {
                format!("m={m} n={n}: end growth {d1} outside (0, 2/m^n)")
            })?;
            let d2 = &apex_n - &apex_n1;
            ensure(d2.is_positive() && d2 < bound, || {
                format!("m={m} n={n}: apex drop {d2} outside (0, 1/m^n)")
            })?;
            let d3 = &apex_n * &two - &ends_n;
            ensure(d3.is_positive() && d3 < &bound * &two, || {
                format!("m={m} n={n}: defect {d3} outside (0, 2/m^n)")
            })?;

            let chain = fan_chain_reduce(n, m, false).map_err(err)?;
            let arm = chain.penultimate_apex_arm();
            ensure(arm.is_positive() && *arm < bound, || {
                format!("m={m} n={n}: r[c_(n-1),b] = {arm} not below 1/m^n")
            })?;
            ensure(chain.last_link() * &two == d1, || {
                format!("m={m} n={n}: twice the last chain link differs from the end growth")
            })?;
            ensure(chain.endpoint_resistance() == ends_n1, || {
                format!("m={m} n={n}: chain endpoint resistance disagrees with oracle")
            })?;
        }
    }
    Ok("m in {2,3,4}, n = 2..12, three bounds and chain arm bound exact".into())
}

fn criterion_5() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut previous: Option<f64> = None;
    let mut previous_gap: Option<f64> = None;
    for n in 2..=12 {
        let net = ladder(n).map_err(err)?;
        let far = to_f64(&resistance_exact(&net, 0, 2 * n - 1).map_err(err)?);
        let near = to_f64(&resistance_exact(&net, 0, 2 * n - 2).map_err(err)?);
        let cf = ladder_endpoint_resistance(n).map_err(err)?;
        let gap = ladder_gap(n).map_err(err)?;
        worst = worst.max((cf - far).abs()).max((gap - (far - near)).abs());
        ensure((cf - far).abs() < 1e-12, || {
            format!("n={n}: endpoint {cf} vs {far}")
        })?;
        ensure((gap - (far - near)).abs() < 1e-12, || {
            format!("n={n}: gap {gap} vs {}", far - near)
        })?;
        ensure(gap > 0.0, || format!("n={n}: gap {gap} not positive"))?;
        if let Some(p) = previous {
            ensure(cf - p > 0.25, || {
                format!("n={n}: increment {} not above 1/4", cf - p)
            })?;
        }
        if let Some(p) = previous_gap {
            ensure(gap < p, || format!("n={n}: gap not decreasing"))?;
        }
        previous = Some(cf);
        previous_gap = Some(gap);
    }
    Ok(format!("n = 2..12, max deviation {worst:.2e}"))
}

fn random_connected(rng: &mut StdRng, max_n: usize) -> ResistorNetwork {
    let n = rng.gen_range(1..=max_n);
    let mut net = ResistorNetwork::new(n);
    for v in 1..n {
        let u = rng.gen_range(0..v);
        net.add_edge(u, v, random_resistance(rng)).expect("valid");
    }
    for _ in 0..rng.gen_range(0..=n) {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v {
            net.add_edge(u, v, random_resistance(rng)).expect("valid");
        }
    }
    net
}

fn criterion_6() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_0006);
    let mut worst: f64 = 0.0;
    let mut pairs = 0;
    for trial in 0..50 {
        let g = random_connected(&mut rng, 5);
        let h = random_connected(&mut rng, 5);
        let product = cartesian_product(&g, &h).map_err(err)?;
        let table = resistance_matrix_exact(&product).map_err(err)?;
        let rg = resistance_matrix_exact(&g).map_err(err)?;
        let rh = resistance_matrix_exact(&h).map_err(err)?;
        let sg = network_spectrum(&g).map_err(err)?;
        let sh = network_spectrum(&h).map_err(err)?;
        let (ng, nh) = (g.vertex_count(), h.vertex_count());
        for a in 0..ng * nh {
            for b in 0..ng * nh {
                let (u, x, v, y) = (a / nh, a % nh, b / nh, b % nh);
                let r = product_resistance(
                    &sg,
                    &sh,
                    to_f64(rg.get(u, v)),
                    to_f64(rh.get(x, y)),
                    u,
                    x,
                    v,
                    y,
                )
                .map_err(err)?;
                let d = (r - to_f64(table.get(a, b))).abs();
                worst = worst.max(d);
                ensure(d < 1e-9, || {
                    format!("trial {trial}: pair ({a},{b}) off by {d:.3e}")
                })?;
                pairs += 1;
            }
        }
    }
    Ok(format!(
        "50 pairs of factors, {pairs} vertex pairs, max deviation {worst:.2e}"
    ))
}

fn criterion_7() -> Outcome {
    let mut cfg = ScanConfig::new(2, 20);
    cfg.vertex_budget = 4096;
    let report = conjecture_scan(&cfg).map_err(err)?;
    ensure(report.rows.len() == 19, || {
        format!("{} rows", report.rows.len())
    })?;
    let data = &report.rows[1..];
    for r in data {
        let d = r.diff_exact.as_ref().expect("exact mode");
        ensure(d.is_positive(), || {
            format!("n={}: diff {d} not positive", r.n)
        })?;
    }
    for w in data.windows(2) {
        let (a, b) = (
            w[0].abs_dev_from_limit.unwrap(),
            w[1].abs_dev_from_limit.unwrap(),
        );
        ensure(b < a, || {
            format!(
                "deviation not decreasing at n={}: {a:.3e} -> {b:.3e}",
                w[1].n
            )
        })?;
    }
    let dev15 = report
        .row(15)
        .and_then(|r| r.abs_dev_from_limit)
        .unwrap_or(f64::NAN);
    ensure(dev15 < 1e-6, || {
        format!("|diff - 1/4| at n=15 is {dev15:.3e}")
    })?;
    let last = data.last().unwrap();
    Ok(format!(
        "diffs positive, deviation decreasing; n=15 dev {dev15:.2e}, n={} dev {:.2e}",
        last.n,
        last.abs_dev_from_limit.unwrap()
    ))
}

fn criterion_8() -> Outcome {
    let mut parts = Vec::new();
    for k in [1usize, 3] {
        let report = conjecture_scan(&ScanConfig::new(k, 12)).map_err(err)?;
        let dev = |n| {
            report
                .row(n)
                .and_then(|r| r.abs_dev_from_limit)
                .unwrap_or(f64::NAN)
        };
        let ratio = dev(4) / dev(12);
        ensure(ratio >= 10.0, || {
            format!("k={k}: deviation ratio n=4/n=12 is {ratio:.3}")
        })?;
        parts.push(format!("k={k} ratio {ratio:.2e}"));
    }
    Ok(parts.join(", "))
}

fn criterion_9() -> Outcome {
    for n in 2..=8 {
        let d = resistance_diameter(&block_tower(n).map_err(err)?).map_err(err)?;
        let top = 4 * (n - 1);
        let expected = vec![(0, top + 2), (1, top + 3), (2, top), (3, top + 1)];
        ensure(d.pairs == expected, || {
            format!("n={n}: pairs {:?}", d.labels)
        })?;
        if n == 2 {
            let q3 = resistance_diameter(&hypercube(3).map_err(err)?).map_err(err)?;
            ensure(
                d.exact == Some(ratio(5, 6)) && q3.exact == d.exact && q3.pairs.len() == 4,
                || format!("G_2 diameter {:?}", d.exact),
            )?;
        }
    }
    Ok("n = 2..8: exactly the four corner pairs, exact ties, D_r(G_2) = 5/6".into())
}

fn criterion_10() -> Outcome {
    for n in 2..=8 {
        let report = block_tower_decomposition(n).map_err(err)?;
        ensure(report.residual_exact.is_zero(), || {
            format!("n={n}: residual {}", report.residual_exact)
        })?;
        ensure(report.residual_float < 1e-10, || {
            format!("n={n}: closed-form residual {:.3e}", report.residual_float)
        })?;
    }
    Ok("n = 2..8 exact residual 0".into())
}

fn property_networks() -> Vec<(String, ResistorNetwork, Option<Spectrum>)> {
    let mut v: Vec<(String, ResistorNetwork, Option<Spectrum>)> = vec![
        (
            "path(200)".into(),
            path(200).unwrap(),
            Some(path_spectrum(200).unwrap()),
        ),
        ("cycle(200)".into(), cycle(200).unwrap(), None),
        (
            "hypercube(7)".into(),
            hypercube(7).unwrap(),
            Some(hypercube_spectrum(7).unwrap()),
        ),
        (
            "block_tower(50)".into(),
            block_tower(50).unwrap(),
            Some(product_spectrum(
                &path_spectrum(50).unwrap(),
                &resnet_core::spectra::cycle_spectrum(4).unwrap(),
            )),
        ),
        ("ladder(100)".into(), ladder(100).unwrap(), None),
        (
            "path_hypercube(25,3)".into(),
            path_hypercube_product(25, 3).unwrap(),
            Some(product_spectrum(
                &path_spectrum(25).unwrap(),
                &hypercube_spectrum(3).unwrap(),
            )),
        ),
        ("K(10,12)".into(), complete_bipartite(10, 12).unwrap(), None),
        ("fan(150,3)".into(), fan(150, 3).unwrap(), None),
        (
            "cone(C20,5)".into(),
            cone(&cycle(20).unwrap(), 5).unwrap(),
            None,
        ),
        (
            "join(P5,C6)".into(),
            join(&path(5).unwrap(), &cycle(6).unwrap()).unwrap(),
            None,
        ),
    ];
    v.push(("block_tower(8)".into(), block_tower(8).unwrap(), None));
    v
}

fn criterion_11() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_0011);
    let mut worst: f64 = 0.0;

    // Spectral against exact on builders with at most 200 vertices.
    for (name, net, closed) in property_networks() {
        let n = net.vertex_count();
        ensure(n <= 200, || format!("{name} has {n} vertices"))?;
        let numeric = network_spectrum(&net).map_err(err)?;
        let lu = GroundedSystem::new(&net, 0)
            .map_err(err)?
            .factor()
            .map_err(err)?;
        for _ in 0..12 {
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            let x = lu.potentials(u, v);
            let exact = to_f64(&(&x[u] - &x[v]));
            for s in std::iter::once(&numeric).chain(closed.as_ref()) {
                let r = resistance_spectral(s, u, v).map_err(err)?;
                let d = (r - exact).abs();
                worst = worst.max(d);
                ensure(d < 1e-9, || {
                    format!("{name} ({u},{v}): spectral {r} vs exact {exact}")
                })?;
            }
        }
    }

    // Metric axioms and ground independence on small random networks.
    for trial in 0..40 {
        let net = random_connected(&mut rng, 8);
        let n = net.vertex_count();
        let t = resistance_matrix_exact(&net).map_err(err)?;
        for a in 0..n {
            ensure(t.get(a, a).is_zero(), || {
                format!("trial {trial}: R[{a},{a}] != 0")
            })?;
            for b in 0..n {
                ensure(t.get(a, b) == t.get(b, a), || {
                    format!("trial {trial}: asymmetric")
                })?;
                if a != b {
                    ensure(t.get(a, b).is_positive(), || {
                        format!("trial {trial}: nonpositive")
                    })?;
                }
                for c in 0..n {
                    ensure(t.get(a, c) <= &(t.get(a, b) + t.get(b, c)), || {
                        format!("trial {trial}: triangle inequality fails at ({a},{b},{c})")
                    })?;
                }
            }
        }
        if n >= 2 {
            let (u, v) = (0, n - 1);
            for g in 0..n {
                let r = resistance_exact_grounded(&net, u, v, g).map_err(err)?;
                ensure(&r == t.get(u, v), || {
                    format!("trial {trial}: ground {g} changes R")
                })?;
            }
        }

        // Raising one resistance never lowers any resistance.
        if net.edge_count() > 0 {
            let i = rng.gen_range(0..net.edge_count());
            let mut raised = ResistorNetwork::new(n);
            for (j, e) in net.edges().iter().enumerate() {
                let r = if j == i {
                    &e.resistance * integer(3)
                } else {
                    e.resistance.clone()
                };
                raised.add_edge(e.u, e.v, r).map_err(err)?;
            }
            let t2 = resistance_matrix_exact(&raised).map_err(err)?;
            for (a, b, r) in t.pairs() {
                ensure(t2.get(a, b) >= r, || {
                    format!("trial {trial}: Rayleigh fails at ({a},{b})")
                })?;
            }
        }
    }

    // G_n sits inside G_{n+1}: the fixed pair can only get closer.
    for n in 2..=9 {
        let (u, v) = (0, 4 * (n - 1) + 2);
        let small = resistance_exact(&block_tower(n).map_err(err)?, u, v).map_err(err)?;
        let big = resistance_exact(&block_tower(n + 1).map_err(err)?, u, v).map_err(err)?;
        ensure(big <= small, || {
            format!("n={n}: fixed pair grows in the larger tower")
        })?;
    }
    Ok(format!(
        "metric, ground, Rayleigh, spectral max deviation {worst:.2e}"
    ))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("hypercube diameter", 5, criterion_1),
        ("K_{m,n} closed forms", 5, criterion_2),
        ("rewrite soundness", 30, criterion_3),
        ("fan bounds", 30, criterion_4),
        ("ladder closed forms", 10, criterion_5),
        ("product formula", 60, criterion_6),
        ("k=2 tower scan", 120, criterion_7),
        ("k=1,3 tower scans", 180, criterion_8),
        ("block tower diametrical pairs", 120, criterion_9),
        ("decomposition identity", 60, criterion_10),
        ("property suite", 120, criterion_11),
    ];
    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let mut failures = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let id = i + 1;
        if !filter.is_empty() && !filter.iter().any(|f| f == &id.to_string()) {
            continue;
        }
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|msg| {
            if elapsed > Duration::from_secs(*limit) {
                Err(format!(
                    "{msg}; took {:.1}s, limit {limit}s",
                    elapsed.as_secs_f64()
                ))
            } else {
                Ok(msg)
            }
        });
        match outcome {
            Ok(msg) => println!(
                "PASS criterion {id:>2} {name} ({:.2}s): {msg}",
                elapsed.as_secs_f64()
            ),
            Err(msg) => {
                failures += 1;
                println!(
                    "FAIL criterion {id:>2} {name} ({:.2}s): {msg}",
                    elapsed.as_secs_f64()
                );
            }
        }
    }
    if failures > 0 {
        println!("{failures} criterion/criteria failed");
        std::process::exit(1);
    }
}
