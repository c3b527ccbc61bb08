//! Laplacian eigensystems: closed forms for paths, cycles, `K2` and
//! hypercubes, Kronecker composition for Cartesian products, and a dense
//! symmetric eigensolver for everything else.
//!
//! Eigenvalues are stored in nonincreasing order, so the zero eigenvalue of a
//! connected network comes last with eigenvector `e / sqrt(n)`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::network::{build_laplacian, ResistorNetwork, VertexId};

pub const ORTHONORMALITY_TOL: f64 = 1e-12;
pub const RESIDUAL_TOL: f64 = 1e-10;
/// Eigenvalues below this (relative to the largest) are treated as zero.
pub const ZERO_EIGENVALUE_TOL: f64 = 1e-9;

/// Square row-major `f64` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.data[i * n + j] = f(i, j);
            }
        }
        m
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(
                "matrix rows must be square".into(),
            ));
        }
        Ok(Self::from_fn(n, |i, j| rows[i][j]))
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) * x[j]).sum())
            .collect()
    }
}

/// Eigenvalues `λ_1 ≥ … ≥ λ_n` with an orthonormal basis of eigenvectors;
/// `vectors[i]` affords `values[i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Component of eigenvector `k` at vertex `v`.
    pub fn component(&self, k: usize, v: VertexId) -> f64 {
        self.vectors[k][v]
    }

    /// Spectrum of the one-vertex graph.
    pub fn trivial() -> Self {
        Self {
            values: vec![0.0],
            vectors: vec![vec![1.0]],
        }
    }

    /// Largest `|Ψ_i·Ψ_j − δ_ij|`.
    pub fn orthonormality_error(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.len() {
            for j in i..self.len() {
                let dot: f64 = self.vectors[i]
                    .iter()
                    .zip(&self.vectors[j])
                    .map(|(a, b)| a * b)
                    .sum();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).abs());
            }
        }
        worst
    }

    /// Largest entry of `|LΨ − λΨ|` over all pairs.
    pub fn residual(&self, laplacian: &DenseMatrix) -> f64 {
        let mut worst: f64 = 0.0;
        for (lambda, psi) in self.values.iter().zip(&self.vectors) {
            let lpsi = laplacian.mul_vec(psi);
            for (a, b) in lpsi.iter().zip(psi) {
                worst = worst.max((a - lambda * b).abs());
            }
        }
        worst
    }

    /// Whether the last eigenvector is the normalised constant vector.
    pub fn last_is_constant(&self) -> bool {
        let n = self.len();
        if n == 0 {
            return false;
        }
        let c = 1.0 / (n as f64).sqrt();
        self.vectors[n - 1]
            .iter()
            .all(|x| (x - c).abs() <= ORTHONORMALITY_TOL)
    }

    fn zero_count(&self) -> usize {
        let scale = self.values.first().copied().unwrap_or(0.0).abs().max(1.0);
        self.values
            .iter()
            .filter(|v| v.abs() <= ZERO_EIGENVALUE_TOL * scale)
            .count()
    }
}

fn normalized(mut v: Vec<f64>) -> Vec<f64> {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    for x in &mut v {
        *x /= norm;
    }
    v
}

fn constant_vector(n: usize) -> Vec<f64> {
    vec![1.0 / (n as f64).sqrt(); n]
}

/// Path `P_n`: `λ = 2 − 2cos(pπ/n)` with eigenvector
/// `x_j ∝ cos(pπ(j + 1/2)/n)`, listed for `p = n−1, …, 0`.
pub fn path_spectrum(n: usize) -> Result<Spectrum> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "path length must be positive".into(),
        ));
    }
    let nf = n as f64;
    let mut values = Vec::with_capacity(n);
    let mut vectors = Vec::with_capacity(n);
    for p in (1..n).rev() {
        let theta = p as f64 * PI / nf;
        values.push(2.0 - 2.0 * theta.cos());
        vectors.push(normalized(
            (0..n).map(|j| (theta * (j as f64 + 0.5)).cos()).collect(),
        ));
    }
    values.push(0.0);
    vectors.push(constant_vector(n));
    Ok(Spectrum { values, vectors })
}

/// `K2`: eigenvalues `(2, 0)` with `(−√2/2, √2/2)` and `(√2/2, √2/2)`.
pub fn clique2_spectrum() -> Spectrum {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    Spectrum {
        values: vec![2.0, 0.0],
        vectors: vec![vec![-h, h], vec![h, h]],
    }
}

/// Edgeless graph `K̄_n`: all eigenvalues zero, with the path eigenbasis so
/// that the last vector is still `e / sqrt(n)`.
pub fn empty_spectrum(n: usize) -> Result<Spectrum> {
    let mut s = path_spectrum(n)?;
    s.values.iter_mut().for_each(|v| *v = 0.0);
    Ok(s)
}

/// Cycle `C_n` in vertex order `b1 … bn`. `C4` uses the ±1/2 basis
/// `(1,−1,1,−1)/2`, `(−1,−1,1,1)/2`, `(−1,1,1,−1)/2`.
pub fn cycle_spectrum(n: usize) -> Result<Spectrum> {
    match n {
        0 => Err(Error::InvalidArgument(
            "cycle length must be positive".into(),
        )),
        1 => Ok(Spectrum::trivial()),
        2 => Ok(clique2_spectrum()),
        4 => Ok(Spectrum {
            values: vec![4.0, 2.0, 2.0, 0.0],
            vectors: vec![
                vec![0.5, -0.5, 0.5, -0.5],
                vec![-0.5, -0.5, 0.5, 0.5],
                vec![-0.5, 0.5, 0.5, -0.5],
                vec![0.5; 4],
            ],
        }),
        _ => {
            let nf = n as f64;
            let mut pairs: Vec<(f64, Vec<f64>)> = Vec::with_capacity(n);
            for k in (1..=n / 2).rev() {
                let theta = 2.0 * PI * k as f64 / nf;
                let lambda = 2.0 - 2.0 * theta.cos();
                pairs.push((
                    lambda,
                    normalized((0..n).map(|j| (theta * j as f64).cos()).collect()),
                ));
                if 2 * k != n {
                    pairs.push((
                        lambda,
                        normalized((0..n).map(|j| (theta * j as f64).sin()).collect()),
                    ));
                }
            }
            pairs.push((0.0, constant_vector(n)));
            let (values, vectors) = pairs.into_iter().unzip();
            Ok(Spectrum { values, vectors })
        }
    }
}

/// Hypercube `Q_k` as the `k`-fold Kronecker composition of `K2`.
pub fn hypercube_spectrum(k: usize) -> Result<Spectrum> {
    if k == 0 {
        return Err(Error::InvalidArgument("dimension must be positive".into()));
    }
    let mut s = clique2_spectrum();
    for _ in 1..k {
        s = product_spectrum(&s, &clique2_spectrum());
    }
    Ok(s)
}

/// Spectrum of `G □ H`: eigenvalues `λ_i + μ_j` with eigenvectors `Ψ_i ⊗ Φ_j`,
/// sorted nonincreasing with ties broken by factor indices `(i, j)`.
pub fn product_spectrum(g: &Spectrum, h: &Spectrum) -> Spectrum {
    let (n, m) = (g.len(), h.len());
    let mut order: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..m).map(move |j| (i, j))).collect();
    order.sort_by(|&(i1, j1), &(i2, j2)| {
        let a = g.values[i1] + h.values[j1];
        let b = g.values[i2] + h.values[j2];
        b.total_cmp(&a).then((i1, j1).cmp(&(i2, j2)))
    });
    let mut values = Vec::with_capacity(n * m);
    let mut vectors = Vec::with_capacity(n * m);
    for &(i, j) in &order {
        values.push(g.values[i] + h.values[j]);
        let mut v = Vec::with_capacity(n * m);
        for &a in &g.vectors[i] {
            for &b in &h.vectors[j] {
                v.push(a * b);
            }
        }
        vectors.push(v);
    }
    // The Kronecker product of two constant vectors is 1/sqrt(nm) only up to
    // rounding; pin it.
    if let (Some(&lg), Some(&lh)) = (g.values.last(), h.values.last()) {
        if lg == 0.0 && lh == 0.0 && values.last() == Some(&0.0) {
            *vectors.last_mut().expect("nonempty") = constant_vector(n * m);
        }
    }
    Spectrum { values, vectors }
}

/// Full eigensystem of a symmetric matrix.
///
/// For a Laplacian of a connected network the null vector is replaced by
/// exactly `e / sqrt(n)` and its eigenvalue by `0`.
pub fn generic_spectrum(l: &DenseMatrix) -> Result<Spectrum> {
    let n = l.size();
    let scale = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| l.get(i, j).abs())
        .fold(0.0, f64::max)
        .max(1.0);
    for i in 0..n {
        for j in i + 1..n {
            if (l.get(i, j) - l.get(j, i)).abs() > 1e-12 * scale {
                return Err(Error::NotSymmetric { row: i, col: j });
            }
        }
    }
    let (values, vectors) = symmetric_eigen(l);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[b].total_cmp(&values[a]).then(a.cmp(&b)));
    let mut spectrum = Spectrum {
        values: order.iter().map(|&k| values[k]).collect(),
        vectors: order.iter().map(|&k| vectors[k].clone()).collect(),
    };
    let row_sums_zero =
        (0..n).all(|i| (0..n).map(|j| l.get(i, j)).sum::<f64>().abs() < 1e-9 * scale);
    if n > 0 && row_sums_zero && spectrum.zero_count() == 1 {
        *spectrum.values.last_mut().expect("nonempty") = 0.0;
        *spectrum.vectors.last_mut().expect("nonempty") = constant_vector(n);
    }
    Ok(spectrum)
}

/// Numeric eigensystem of a network's Laplacian.
pub fn network_spectrum(net: &ResistorNetwork) -> Result<Spectrum> {
    generic_spectrum(&build_laplacian(net)?.to_f64())
}

fn symmetric_eigen(l: &DenseMatrix) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = l.size();
    let m = nalgebra::DMatrix::from_fn(n, n, |i, j| l.get(i, j));
    let eig = nalgebra::SymmetricEigen::new(m);
    let values = eig.eigenvalues.iter().copied().collect();
    let vectors = (0..n)
        .map(|k| eig.eigenvectors.column(k).iter().copied().collect())
        .collect();
    (values, vectors)
}

/// `Σ_{k<n} f(k) / (λ_k + shift)`, skipping the final (constant) eigenpair.
pub fn cone_sum(s: &Spectrum, shift: f64, f: impl Fn(usize) -> f64) -> f64 {
    (0..s.len().saturating_sub(1))
        .map(|k| f(k) / (s.values[k] + shift))
        .sum()
}

/// `R[u,v] = Σ_{k<n} (Ψ_ku − Ψ_kv)² / λ_k`.
pub fn resistance_spectral(s: &Spectrum, u: VertexId, v: VertexId) -> Result<f64> {
    let n = s.len();
    for w in [u, v] {
        if w >= n {
            return Err(Error::VertexOutOfRange { vertex: w, n });
        }
    }
    if s.zero_count() != 1 {
        return Err(Error::Disconnected);
    }
    Ok((0..n - 1)
        .map(|k| (s.vectors[k][u] - s.vectors[k][v]).powi(2) / s.values[k])
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{clique2, cycle, path};

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < tol)
    }

    #[test]
    fn path_spectra() {
        let s = path_spectrum(1).unwrap();
        assert_eq!(s.values, vec![0.0]);
        assert_eq!(s.vectors, vec![vec![1.0]]);

        let s = path_spectrum(2).unwrap();
        assert!(close(&s.values, &[2.0, 0.0], 1e-15));
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!(close(
            &s.vectors[0].iter().map(|x| x.abs()).collect::<Vec<_>>(),
            &[h, h],
            1e-15
        ));
        assert!(s.vectors[0][0] * s.vectors[0][1] < 0.0);

        let s = path_spectrum(3).unwrap();
        assert!(close(&s.values, &[3.0, 1.0, 0.0], 1e-14));
    }

    #[test]
    fn c4_matches_closed_basis() {
        let s = cycle_spectrum(4).unwrap();
        assert_eq!(s.values, vec![4.0, 2.0, 2.0, 0.0]);
        assert_eq!(s.vectors[0], vec![0.5, -0.5, 0.5, -0.5]);
        let l = build_laplacian(&cycle(4).unwrap()).unwrap().to_f64();
        assert!(s.residual(&l) < 1e-15);
        assert!(s.orthonormality_error() < 1e-15);
    }

    #[test]
    fn closed_forms_are_eigensystems() {
        for n in 1..12 {
            let l = build_laplacian(&path(n).unwrap()).unwrap().to_f64();
            let s = path_spectrum(n).unwrap();
            assert!(s.residual(&l) < RESIDUAL_TOL, "path {n}");
            assert!(s.orthonormality_error() < ORTHONORMALITY_TOL, "path {n}");
            let l = build_laplacian(&cycle(n).unwrap()).unwrap().to_f64();
            let s = cycle_spectrum(n).unwrap();
            assert!(s.residual(&l) < RESIDUAL_TOL, "cycle {n}");
            assert!(s.orthonormality_error() < ORTHONORMALITY_TOL, "cycle {n}");
            assert_eq!(s.values.last(), Some(&0.0));
        }
    }

    #[test]
    fn hypercube_values() {
        assert_eq!(hypercube_spectrum(1).unwrap().values, vec![2.0, 0.0]);
        assert_eq!(
            hypercube_spectrum(3).unwrap().values,
            vec![6.0, 4.0, 4.0, 4.0, 2.0, 2.0, 2.0, 0.0]
        );
    }

    #[test]
    fn hypercube_entry_magnitudes_follow_dimension() {
        for k in 1..=6 {
            let s = hypercube_spectrum(k).unwrap();
            let expected = std::f64::consts::FRAC_1_SQRT_2.powi(k as i32);
            for vec in &s.vectors {
                for x in vec {
                    assert!((x.abs() - expected).abs() < 1e-15, "k={k}");
                }
            }
        }
    }

    #[test]
    fn product_examples() {
        let s = product_spectrum(&path_spectrum(2).unwrap(), &clique2_spectrum());
        assert!(close(&s.values, &[4.0, 2.0, 2.0, 0.0], 1e-14));

        let c4 = cycle_spectrum(4).unwrap();
        assert_eq!(product_spectrum(&c4, &Spectrum::trivial()), c4);

        let q3 = product_spectrum(&path_spectrum(2).unwrap(), &cycle_spectrum(4).unwrap());
        let mut vals = q3.values.clone();
        vals.iter_mut()
            .for_each(|x| *x = (*x * 1e12).round() / 1e12);
        assert_eq!(vals, hypercube_spectrum(3).unwrap().values);
        assert!(q3.orthonormality_error() < ORTHONORMALITY_TOL);
    }

    #[test]
    fn generic_matches_closed_forms() {
        let s = network_spectrum(&clique2()).unwrap();
        assert!(close(&s.values, &[2.0, 0.0], 1e-10));
        let s = network_spectrum(&path(3).unwrap()).unwrap();
        assert!(close(&s.values, &[3.0, 1.0, 0.0], 1e-10));
        let c4 = cycle(4).unwrap();
        let s = network_spectrum(&c4).unwrap();
        assert!(close(&s.values, &[4.0, 2.0, 2.0, 0.0], 1e-10));
        let l = build_laplacian(&c4).unwrap().to_f64();
        assert!(s.residual(&l) < RESIDUAL_TOL);
        assert!(s.orthonormality_error() < ORTHONORMALITY_TOL);
        assert_eq!(s.vectors[3], vec![0.5; 4]);
    }

    #[test]
    fn generic_rejects_asymmetric() {
        let m = DenseMatrix::from_rows(&[vec![1.0, 2.0], vec![0.0, 1.0]]).unwrap();
        assert_eq!(
            generic_spectrum(&m),
            Err(Error::NotSymmetric { row: 0, col: 1 })
        );
    }

    #[test]
    fn spectral_resistance_examples() {
        let k2 = clique2_spectrum();
        assert!((resistance_spectral(&k2, 0, 1).unwrap() - 1.0).abs() < 1e-12);
        let c4 = cycle_spectrum(4).unwrap();
        assert!((resistance_spectral(&c4, 0, 2).unwrap() - 1.0).abs() < 1e-12);
        let p4 = path_spectrum(4).unwrap();
        assert!((resistance_spectral(&p4, 0, 3).unwrap() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn spectral_resistance_rejects_disconnected() {
        let mut net = ResistorNetwork::new(3);
        net.add_unit_edge(0, 1).unwrap();
        let s = network_spectrum(&net).unwrap();
        assert_eq!(resistance_spectral(&s, 0, 1), Err(Error::Disconnected));
    }
}
