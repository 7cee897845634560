//! Seeded generators for polynomials, sections, algebroids and differentials.

use std::collections::BTreeMap;

use gerstenhaber::exterior::multi_indices;
use gerstenhaber::{
    rat, Algebroid, Differential, Frame, FrameKind, LieAlgebroid, Monomial, Multivec, Poly, Qlb,
    Rational, VarSet,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Shape limits for random coefficients.
#[derive(Clone, Copy, Debug)]
pub struct Shape {
    pub max_degree: u32,
    pub max_terms: usize,
}

impl Default for Shape {
    fn default() -> Self {
        Shape {
            max_degree: 2,
            max_terms: 2,
        }
    }
}

pub struct Gen {
    rng: ChaCha8Rng,
}

impl Gen {
    pub fn new(seed: u64) -> Self {
        Gen {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    /// Small nonzero rational, occasionally with denominator 2 or 3.
    pub fn rational(&mut self) -> Rational {
        let mut n: i64 = self.rng.gen_range(1..=3);
        if self.rng.gen_bool(0.5) {
            n = -n;
        }
        let d = *[1, 1, 1, 2, 3].choose(&mut self.rng).unwrap();
        rat(n, d)
    }

    /// Random polynomial in the variables `allowed` (indices into `vars`).
    pub fn poly(&mut self, vars: &VarSet, allowed: &[usize], shape: Shape) -> Poly {
        let nterms = self.rng.gen_range(0..=shape.max_terms);
        let mut terms = Vec::new();
        for _ in 0..nterms {
            let mut e = vec![0u32; vars.len()];
            let deg = self.rng.gen_range(0..=shape.max_degree);
            if !allowed.is_empty() {
                for _ in 0..deg {
                    e[*allowed.choose(&mut self.rng).unwrap()] += 1;
                }
            }
            terms.push((Monomial::from_exponents(e), self.rational()));
        }
        Poly::from_terms(vars, terms)
    }

    /// Random degree-`k` multivector over `frame` with coefficients in `allowed`.
    pub fn multivector(&mut self, frame: &Frame, k: usize, allowed: &[usize], shape: Shape) -> Multivec {
        let idxs = multi_indices(frame.len(), k);
        if idxs.is_empty() {
            return Multivec::zero(frame, k as isize);
        }
        let n = self.rng.gen_range(1..=shape.max_terms.max(1));
        let mut terms = Vec::new();
        for _ in 0..n {
            let idx = idxs.choose(&mut self.rng).unwrap().clone();
            terms.push((idx, self.poly(frame.vars(), allowed, shape)));
        }
        Multivec::from_terms(frame, k, terms).expect("valid indices")
    }

    /// Random section of ∧^k A with coefficients in the base coordinates.
    pub fn section(&mut self, a: &Algebroid, k: usize, shape: Shape) -> Multivec {
        let coords = a.coords().to_vec();
        self.multivector(a.frame(), k, &coords, shape)
    }

    /// Random almost k-differential (no compatibility imposed).
    pub fn almost_differential(&mut self, a: &Algebroid, k: usize, shape: Shape) -> Differential {
        let dx = (0..a.base_dim())
            .map(|_| {
                if k == 0 {
                    Multivec::zero(a.frame(), -1)
                } else {
                    self.section(a, k - 1, shape)
                }
            })
            .collect();
        let de = (0..a.rank()).map(|_| self.section(a, k, shape)).collect();
        Differential::new(a, k as isize, dx, de).expect("well formed")
    }

    /// A random algebroid from the built-in families, possibly after a
    /// polynomial change of frame.
    pub fn algebroid(&mut self) -> Algebroid {
        let base = match self.below(5) {
            0 => Algebroid::tangent(self.rng.gen_range(1..=3)),
            1 => so3_action(),
            2 => lie_algebra(&so3_constants(), "e"),
            3 => lie_poisson(&heisenberg_constants()),
            _ => lie_poisson(&so3_constants()),
        };
        if base.base_dim() > 0 && self.rng.gen_bool(0.5) {
            self.frame_change(&base)
        } else {
            base
        }
    }

    /// Unipotent upper triangular change of frame e'_i = e_i + Σ_{j>i} M_ij e_j
    /// with M polynomial; the new structure functions come from the engine.
    pub fn frame_change(&mut self, a: &Algebroid) -> Algebroid {
        let s = a.rank();
        let vars = a.vars();
        let coords = a.coords().to_vec();
        let shape = Shape {
            max_degree: 1,
            max_terms: 1,
        };
        let zero = Poly::zero(vars);
        let one = Poly::one(vars);
        let mut m = vec![vec![zero.clone(); s]; s];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = one.clone();
            for entry in row.iter_mut().skip(i + 1) {
                if self.rng.gen_bool(0.5) {
                    *entry = self.poly(vars, &coords, shape);
                }
            }
        }
        let minv = unipotent_inverse(&m, vars);
        let old: Vec<Multivec> = (0..s)
            .map(|i| {
                Multivec::from_terms(a.frame(), 1, (0..s).map(|j| (vec![j], m[i][j].clone())))
                    .unwrap()
            })
            .collect();
        let names: Vec<String> = (1..=s).map(|i| format!("f{i}")).collect();
        let frame = Frame::new("A'", FrameKind::AlgebroidSections, &names, vars).unwrap();
        let anchor: Vec<Vec<Poly>> = (0..s)
            .map(|i| {
                (0..a.base_dim())
                    .map(|b| {
                        let mut acc = zero.clone();
                        for j in 0..s {
                            acc = &acc + &(&m[i][j] * &a.anchor()[j][b]);
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        let mut brackets = BTreeMap::new();
        for i in 0..s {
            for j in i + 1..s {
                let b = a.bracket(&old[i], &old[j]);
                let coefs: Vec<Poly> = (0..s)
                    .map(|k| {
                        let mut acc = zero.clone();
                        for l in 0..s {
                            acc = &acc + &(&b.coeff(&[l]) * &minv[l][k]);
                        }
                        acc
                    })
                    .collect();
                brackets.insert((i, j), coefs);
            }
        }
        LieAlgebroid::new(frame, coords, anchor, &brackets).unwrap()
    }

    /// A random quasi-Lie bialgebroid: a known model twisted by a random bivector.
    pub fn qlb(&mut self) -> Qlb {
        let base = match self.below(3) {
            0 => so3_double_qlb(),
            1 => {
                let a = self.algebroid();
                Qlb::new(Differential::zero(&a, 2), Multivec::zero(a.frame(), 3)).unwrap()
            }
            _ => lie_poisson_qlb(&so3_constants()),
        };
        let shape = Shape {
            max_degree: 1,
            max_terms: 2,
        };
        let t = self.section(base.algebroid(), 2, shape);
        base.twist_unchecked(&t).unwrap()
    }
}

/// Inverse of a unipotent matrix of polynomials via the finite Neumann series.
pub fn unipotent_inverse(m: &[Vec<Poly>], vars: &VarSet) -> Vec<Vec<Poly>> {
    let s = m.len();
    let zero = Poly::zero(vars);
    let ident: Vec<Vec<Poly>> = (0..s)
        .map(|i| (0..s).map(|j| if i == j { Poly::one(vars) } else { zero.clone() }).collect())
        .collect();
    // N = I − M is strictly upper triangular, M⁻¹ = Σ_{p<s} N^p
    let n: Vec<Vec<Poly>> = (0..s)
        .map(|i| (0..s).map(|j| &ident[i][j] - &m[i][j]).collect())
        .collect();
    let mut acc = ident.clone();
    let mut power = ident;
    for _ in 1..s {
        power = matmul(&power, &n, &zero);
        for i in 0..s {
            for j in 0..s {
                acc[i][j] = &acc[i][j] + &power[i][j];
            }
        }
    }
    acc
}

fn matmul(a: &[Vec<Poly>], b: &[Vec<Poly>], zero: &Poly) -> Vec<Vec<Poly>> {
    let s = a.len();
    (0..s)
        .map(|i| {
            (0..s)
                .map(|j| {
                    let mut acc = zero.clone();
                    for (k, bk) in b.iter().enumerate() {
                        acc = &acc + &(&a[i][k] * &bk[j]);
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Structure constants `c[i][j][k]` of [u_i,u_j] = Σ_k c_ij^k u_k.
pub type Constants = Vec<Vec<Vec<Rational>>>;

pub fn so3_constants() -> Constants {
    let mut c = vec![vec![vec![rat(0, 1); 3]; 3]; 3];
    for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
        c[i][j][k] = rat(1, 1);
        c[j][i][k] = rat(-1, 1);
    }
    c
}

/// [u1,u2] = u3, others zero.
pub fn heisenberg_constants() -> Constants {
    let mut c = vec![vec![vec![rat(0, 1); 3]; 3]; 3];
    c[0][1][2] = rat(1, 1);
    c[1][0][2] = rat(-1, 1);
    c
}

/// sl2 in the basis h, e, f: [h,e] = 2e, [h,f] = −2f, [e,f] = h.
pub fn sl2_constants() -> Constants {
    let mut c = vec![vec![vec![rat(0, 1); 3]; 3]; 3];
    let mut set = |i: usize, j: usize, k: usize, v: i64| {
        c[i][j][k] = rat(v, 1);
        c[j][i][k] = rat(-v, 1);
    };
    set(0, 1, 1, 2);
    set(0, 2, 2, -2);
    set(1, 2, 0, 1);
    c
}

fn constant_brackets(c: &Constants, vars: &VarSet) -> BTreeMap<(usize, usize), Vec<Poly>> {
    let s = c.len();
    let mut out = BTreeMap::new();
    for i in 0..s {
        for j in i + 1..s {
            out.insert(
                (i, j),
                (0..s).map(|k| Poly::constant(vars, c[i][j][k].clone())).collect(),
            );
        }
    }
    out
}

/// A Lie algebra as an algebroid over a point.
pub fn lie_algebra(c: &Constants, prefix: &str) -> Algebroid {
    let vars = VarSet::empty();
    let names: Vec<String> = (1..=c.len()).map(|i| format!("{prefix}{i}")).collect();
    let frame = Frame::new("g", FrameKind::AlgebroidSections, &names, &vars).unwrap();
    LieAlgebroid::new(frame, vec![], vec![vec![]; c.len()], &constant_brackets(c, &vars)).unwrap()
}

/// so(3) acting on ℝ³ by rotations; ρ(e_i) = −Σ ε_ijk x_j ∂_k.
pub fn so3_action() -> Algebroid {
    let vars = VarSet::numbered("x", 3);
    let c = so3_constants();
    let frame = Frame::new("A", FrameKind::AlgebroidSections, ["e1", "e2", "e3"], &vars).unwrap();
    let anchor = (0..3)
        .map(|i| {
            (0..3)
                .map(|k| {
                    let mut acc = Poly::zero(&vars);
                    for j in 0..3 {
                        let eps = &c[i][j][k];
                        if *eps != rat(0, 1) {
                            acc = &acc - &Poly::var(&vars, j).scale(eps);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect();
    LieAlgebroid::new(frame, vec![0, 1, 2], anchor, &constant_brackets(&c, &vars)).unwrap()
}

/// T*𝔤* for the linear Poisson structure π^{ab} = Σ_k c_ab^k x_k; frame dx_i.
pub fn lie_poisson(c: &Constants) -> Algebroid {
    let n = c.len();
    let vars = VarSet::numbered("x", n);
    let names: Vec<String> = (1..=n).map(|i| format!("dx{i}")).collect();
    let frame = Frame::new("T*M", FrameKind::AlgebroidSections, &names, &vars).unwrap();
    let pi = |a: usize, b: usize| {
        let mut acc = Poly::zero(&vars);
        for k in 0..n {
            acc = &acc + &Poly::var(&vars, k).scale(&c[a][b][k]);
        }
        acc
    };
    let anchor = (0..n).map(|a| (0..n).map(|b| pi(a, b)).collect()).collect();
    LieAlgebroid::new(frame, (0..n).collect(), anchor, &constant_brackets(c, &vars)).unwrap()
}

/// The Lie bialgebroid (T*𝔤*, d, 0): δx_i = dx_i, δ(dx_i) = 0.
pub fn lie_poisson_qlb(c: &Constants) -> Qlb {
    let a = lie_poisson(c);
    let n = a.base_dim();
    let dx = (0..n).map(|i| a.generator(i)).collect();
    let de = (0..n).map(|_| Multivec::zero(a.frame(), 2)).collect();
    Qlb::new(Differential::new(&a, 2, dx, de).unwrap(), Multivec::zero(a.frame(), 3)).unwrap()
}

/// so(3) ⊂ so(3)⊕so(3) with F = 0 and Ω = ¼ e1∧e2∧e3 over a point.
pub fn so3_double_qlb() -> Qlb {
    let a = lie_algebra(&so3_constants(), "e");
    let omega = Multivec::monomial(
        a.frame(),
        vec![0, 1, 2],
        Poly::constant(a.vars(), rat(1, 4)),
    );
    Qlb::new(Differential::zero(&a, 2), omega).unwrap()
}
