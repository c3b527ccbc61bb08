//! Exact effective resistance by rational elimination on the grounded
//! Laplacian. Every other evaluator in the crate is checked against this.

use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::network::{build_laplacian, Rational, ResistorNetwork, VertexId};

/// Laplacian with the ground vertex's row and column deleted.
#[derive(Debug, Clone)]
pub struct GroundedSystem {
    ground: VertexId,
    /// Row/column `i` of `matrix` belongs to vertex `vertices[i]`.
    vertices: Vec<VertexId>,
    matrix: Vec<Vec<Rational>>,
}

impl GroundedSystem {
    pub fn new(net: &ResistorNetwork, ground: VertexId) -> Result<Self> {
        net.check_vertex(ground)?;
        let lap = build_laplacian(net)?;
        let vertices: Vec<VertexId> = (0..net.vertex_count()).filter(|&v| v != ground).collect();
        let matrix = vertices
            .iter()
            .map(|&i| vertices.iter().map(|&j| lap.get(i, j).clone()).collect())
            .collect();
        Ok(Self {
            ground,
            vertices,
            matrix,
        })
    }

    pub fn ground(&self) -> VertexId {
        self.ground
    }

    pub fn dim(&self) -> usize {
        self.vertices.len()
    }

    /// Row index of `v`, or `None` for the ground vertex.
    pub fn index_of(&self, v: VertexId) -> Option<usize> {
        match v.cmp(&self.ground) {
            std::cmp::Ordering::Less => Some(v),
            std::cmp::Ordering::Equal => None,
            std::cmp::Ordering::Greater => Some(v - 1),
        }
    }

    pub fn factor(self) -> Result<LuFactors> {
        LuFactors::new(self)
    }
}

fn cost(x: &Rational) -> u64 {
    x.numer().bits() + x.denom().bits()
}

/// `PA = LU` over the rationals. Pivots are the nonzero candidates with the
/// fewest numerator plus denominator bits; ties go to the lowest row.
#[derive(Debug, Clone)]
pub struct LuFactors {
    system_vertices: Vec<VertexId>,
    ground: VertexId,
    /// Strict lower part holds the multipliers, upper part holds `U`.
    lu: Vec<Vec<Rational>>,
    /// `perm[i]` is the original row now at position `i`.
    perm: Vec<usize>,
}

impl LuFactors {
    fn new(system: GroundedSystem) -> Result<Self> {
        let GroundedSystem {
            ground,
            vertices,
            matrix: mut a,
        } = system;
        let n = a.len();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let pivot = (k..n)
                .filter(|&i| !a[i][k].is_zero())
                .min_by_key(|&i| (cost(&a[i][k]), i))
                .ok_or(Error::Singular { pivot: vertices[k] })?;
            a.swap(k, pivot);
            perm.swap(k, pivot);

            let (head, tail) = a.split_at_mut(k + 1);
            let pivot_row = &head[k];
            let pivot_cols: Vec<usize> = (k + 1..n).filter(|&j| !pivot_row[j].is_zero()).collect();
            let inv = pivot_row[k].recip();
            for row in tail.iter_mut() {
                if row[k].is_zero() {
                    continue;
                }
                let f = &row[k] * &inv;
                for &j in &pivot_cols {
                    let delta = &f * &pivot_row[j];
                    row[j] -= delta;
                }
                row[k] = f;
            }
        }
        Ok(Self {
            system_vertices: vertices,
            ground,
            lu: a,
            perm,
        })
    }

    pub fn dim(&self) -> usize {
        self.lu.len()
    }

    /// Solves `A x = b` for a right-hand side given in original row order.
    pub fn solve(&self, b: &[Rational]) -> Vec<Rational> {
        let n = self.dim();
        let mut y: Vec<Rational> = self.perm.iter().map(|&i| b[i].clone()).collect();
        for i in 0..n {
            for j in 0..i {
                if !self.lu[i][j].is_zero() && !y[j].is_zero() {
                    let delta = &self.lu[i][j] * &y[j];
                    y[i] -= delta;
                }
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                if !self.lu[i][j].is_zero() && !y[j].is_zero() {
                    let delta = &self.lu[i][j] * &y[j];
                    y[i] -= delta;
                }
            }
            y[i] = &y[i] / &self.lu[i][i];
        }
        y
    }

    fn index_of(&self, v: VertexId) -> Option<usize> {
        match v.cmp(&self.ground) {
            std::cmp::Ordering::Less => Some(v),
            std::cmp::Ordering::Equal => None,
            std::cmp::Ordering::Greater => Some(v - 1),
        }
    }

    /// Potentials for a unit current injected at `u` and extracted at `v`,
    /// with the ground held at zero.
    pub fn potentials(&self, u: VertexId, v: VertexId) -> Vec<Rational> {
        let n = self.dim();
        let mut b = vec![Rational::zero(); n];
        if let Some(i) = self.index_of(u) {
            b[i] += Rational::from_integer(1.into());
        }
        if let Some(i) = self.index_of(v) {
            b[i] -= Rational::from_integer(1.into());
        }
        let x = self.solve(&b);
        let mut full = vec![Rational::zero(); n + 1];
        for (i, &vert) in self.system_vertices.iter().enumerate() {
            full[vert] = x[i].clone();
        }
        full
    }
}

fn check_query(net: &ResistorNetwork, u: VertexId, v: VertexId) -> Result<()> {
    net.check_vertex(u)?;
    net.check_vertex(v)?;
    if !net.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(())
}

/// Effective resistance between `u` and `v`, grounding `v`.
pub fn resistance_exact(net: &ResistorNetwork, u: VertexId, v: VertexId) -> Result<Rational> {
    resistance_exact_grounded(net, u, v, v)
}

/// Effective resistance between `u` and `v` with an explicit ground vertex.
/// The result does not depend on the choice of ground.
pub fn resistance_exact_grounded(
    net: &ResistorNetwork,
    u: VertexId,
    v: VertexId,
    ground: VertexId,
) -> Result<Rational> {
    check_query(net, u, v)?;
    if u == v {
        return Ok(Rational::zero());
    }
    let lu = GroundedSystem::new(net, ground)?.factor()?;
    let x = lu.potentials(u, v);
    Ok(&x[u] - &x[v])
}

/// Symmetric all-pairs resistance table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResistanceMatrix {
    n: usize,
    values: Vec<Rational>,
}

impl ResistanceMatrix {
    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, u: VertexId, v: VertexId) -> &Rational {
        &self.values[u * self.n + v]
    }

    /// Pairs `u < v` in lexicographic order with their resistance.
    pub fn pairs(&self) -> impl Iterator<Item = (VertexId, VertexId, &Rational)> + '_ {
        (0..self.n).flat_map(move |u| (u + 1..self.n).map(move |v| (u, v, self.get(u, v))))
    }
}

/// All-pairs resistances from one factorisation: the grounded inverse `M`
/// gives `R[u,v] = M[u,u] + M[v,v] - 2 M[u,v]` with ground entries zero.
pub fn resistance_matrix_exact(net: &ResistorNetwork) -> Result<ResistanceMatrix> {
    let n = net.vertex_count();
    if n == 0 || !net.is_connected() {
        return Err(Error::Disconnected);
    }
    let ground = n - 1;
    let lu = GroundedSystem::new(net, ground)?.factor()?;
    let dim = lu.dim();
    let columns: Vec<Vec<Rational>> = (0..dim)
        .into_par_iter()
        .map(|j| {
            let mut e = vec![Rational::zero(); dim];
            e[j] = Rational::from_integer(1.into());
            lu.solve(&e)
        })
        .collect();
    let inv = |i: usize, j: usize| -> Rational {
        if i == ground || j == ground {
            Rational::zero()
        } else {
            columns[j][i].clone()
        }
    };
    let mut values = vec![Rational::zero(); n * n];
    for u in 0..n {
        for v in u + 1..n {
            let r = inv(u, u) + inv(v, v) - inv(u, v) * Rational::from_integer(2.into());
            values[u * n + v] = r.clone();
            values[v * n + u] = r;
        }
    }
    Ok(ResistanceMatrix { n, values })
}
