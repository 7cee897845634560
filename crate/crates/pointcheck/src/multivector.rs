//! Dense k-vectors on ℝ^d with float entries.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Increasing k-subsets of 0..d in lexicographic order.
pub fn combinations(d: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > d {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < d - k + i {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Lexicographic position of an increasing multi-index.
fn rank(idx: &[usize], d: usize) -> usize {
    let k = idx.len();
    let mut r = 0;
    let mut prev = 0;
    for (a, &i) in idx.iter().enumerate() {
        for j in prev..i {
            r += binom(d - j - 1, k - a - 1);
        }
        prev = i + 1;
    }
    r
}

/// Sorts a multi-index, returning the permutation sign, or None on a repeat.
pub fn sort_sign(idx: &[usize]) -> Option<(Vec<usize>, f64)> {
    let mut v = idx.to_vec();
    let mut sign = 1.0;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, sign))
}

/// Π ∈ ∧^k ℝ^d, stored by increasing multi-indices.
#[derive(Clone, Debug, PartialEq)]
pub struct PointedMultivector {
    dim: usize,
    degree: usize,
    comps: Vec<f64>,
}

impl PointedMultivector {
    pub fn zeros(dim: usize, degree: usize) -> Self {
        PointedMultivector { dim, degree, comps: vec![0.0; binom(dim, degree)] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Components in lexicographic order of [`combinations`].
    pub fn components(&self) -> &[f64] {
        &self.comps
    }

    pub fn from_components(dim: usize, degree: usize, comps: Vec<f64>) -> Result<Self> {
        if comps.len() != binom(dim, degree) {
            return Err(Error::Shape(format!(
                "{} components for degree {degree} in dimension {dim}",
                comps.len()
            )));
        }
        Ok(PointedMultivector { dim, degree, comps })
    }

    /// Any index order is accepted; repeated indices give 0.
    pub fn get(&self, idx: &[usize]) -> f64 {
        assert_eq!(idx.len(), self.degree);
        match sort_sign(idx) {
            Some((v, s)) => s * self.comps[rank(&v, self.dim)],
            None => 0.0,
        }
    }

    /// Adds `c·e_{idx}`; unsorted indices pick up the permutation sign.
    pub fn add_term(&mut self, idx: &[usize], c: f64) {
        assert_eq!(idx.len(), self.degree);
        assert!(idx.iter().all(|&i| i < self.dim), "index out of range");
        if let Some((v, s)) = sort_sign(idx) {
            let r = rank(&v, self.dim);
            self.comps[r] += s * c;
        }
    }

    /// The bivector with matrix entries P_ij (upper triangle is read).
    pub fn from_bivector_matrix(p: &DMatrix<f64>) -> Self {
        let d = p.nrows();
        let mut out = Self::zeros(d, 2);
        for i in 0..d {
            for j in i + 1..d {
                out.add_term(&[i, j], p[(i, j)]);
            }
        }
        out
    }

    /// Full antisymmetric matrix of a bivector.
    pub fn bivector_matrix(&self) -> DMatrix<f64> {
        assert_eq!(self.degree, 2);
        let d = self.dim;
        DMatrix::from_fn(d, d, |i, j| if i == j { 0.0 } else { self.get(&[i, j]) })
    }

    /// v₁∧…∧v_k.
    pub fn wedge_vectors(dim: usize, vs: &[DVector<f64>]) -> Self {
        let k = vs.len();
        let mut out = Self::zeros(dim, k);
        for (r, idx) in combinations(dim, k).into_iter().enumerate() {
            let m = DMatrix::from_fn(k, k, |a, b| vs[b][idx[a]]);
            out.comps[r] = m.determinant();
        }
        out
    }

    pub fn wedge(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let d = self.dim;
        let mut out = Self::zeros(d, self.degree + other.degree);
        let left = combinations(d, self.degree);
        let right = combinations(d, other.degree);
        for (i, a) in left.iter().enumerate() {
            if self.comps[i] == 0.0 {
                continue;
            }
            for (j, b) in right.iter().enumerate() {
                if other.comps[j] == 0.0 {
                    continue;
                }
                let mut idx = a.clone();
                idx.extend_from_slice(b);
                if idx.len() <= d {
                    out.add_term(&idx, self.comps[i] * other.comps[j]);
                }
            }
        }
        out
    }

    /// Π(ξ¹,…,ξ^k) = Σ_I Π^I det(ξ^a_{I_b}).
    pub fn eval(&self, xis: &[DVector<f64>]) -> f64 {
        assert_eq!(xis.len(), self.degree);
        let k = self.degree;
        let mut total = 0.0;
        for (r, idx) in combinations(self.dim, k).into_iter().enumerate() {
            let c = self.comps[r];
            if c == 0.0 {
                continue;
            }
            let m = DMatrix::from_fn(k, k, |a, b| xis[a][idx[b]]);
            total += c * m.determinant();
        }
        total
    }

    /// A_*Π for a linear map A: ℝ^d → ℝ^{d'} given as a d'×d matrix.
    pub fn push_forward(&self, a: &DMatrix<f64>) -> Self {
        assert_eq!(a.ncols(), self.dim);
        let d2 = a.nrows();
        let mut out = Self::zeros(d2, self.degree);
        for (r, idx) in combinations(self.dim, self.degree).into_iter().enumerate() {
            let c = self.comps[r];
            if c == 0.0 {
                continue;
            }
            let cols: Vec<DVector<f64>> = idx.iter().map(|&i| a.column(i).into_owned()).collect();
            out.axpy(c, &Self::wedge_vectors(d2, &cols));
        }
        out
    }

    /// Copies Π into the block starting at `offset` of ℝ^{total}, scaled by `c`.
    pub fn embed(&self, offset: usize, total: usize, c: f64) -> Self {
        assert!(offset + self.dim <= total);
        let mut out = Self::zeros(total, self.degree);
        for (r, idx) in combinations(self.dim, self.degree).into_iter().enumerate() {
            if self.comps[r] != 0.0 {
                let shifted: Vec<usize> = idx.iter().map(|i| i + offset).collect();
                out.add_term(&shifted, c * self.comps[r]);
            }
        }
        out
    }

    /// c₁Π₁ ⊕ c₂Π₂ ⊕ … on the product space.
    pub fn direct_sum(parts: &[(&Self, f64)]) -> Self {
        let total: usize = parts.iter().map(|(p, _)| p.dim).sum();
        let degree = parts.first().map_or(0, |(p, _)| p.degree);
        let mut out = Self::zeros(total, degree);
        let mut offset = 0;
        for (p, c) in parts {
            assert_eq!(p.degree, degree, "direct sum of mixed degrees");
            out.axpy(1.0, &p.embed(offset, total, *c));
            offset += p.dim;
        }
        out
    }

    /// self += c·other.
    pub fn axpy(&mut self, c: f64, other: &Self) {
        assert_eq!((self.dim, self.degree), (other.dim, other.degree));
        for (x, y) in self.comps.iter_mut().zip(&other.comps) {
            *x += c * y;
        }
    }

    pub fn scale(&self, c: f64) -> Self {
        PointedMultivector { comps: self.comps.iter().map(|x| c * x).collect(), ..self.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.axpy(-1.0, other);
        out
    }

    /// Largest absolute component.
    pub fn max_abs(&self) -> f64 {
        self.comps.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// Nonzero components with their multi-indices.
    pub fn terms(&self) -> Vec<(Vec<usize>, f64)> {
        combinations(self.dim, self.degree)
            .into_iter()
            .zip(&self.comps)
            .filter(|(_, c)| **c != 0.0)
            .map(|(i, c)| (i, *c))
            .collect()
    }
}
