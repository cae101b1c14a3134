//! Shared deterministic instance generators for the integration and
//! acceptance suites. Everything is seeded; repeated runs are identical.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use algk_core::algebra::{AlgRef, FdAlgebra, Morphism};
use algk_core::linalg::{Matrix, Subspace};
use algk_core::poly::Poly;
use algk_core::scalar::{FieldSpec, Scalar};
use algk_core::word::Word;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q() -> FieldSpec {
    FieldSpec::Rationals
}

pub fn gf(p: u64) -> FieldSpec {
    FieldSpec::prime_field(p).unwrap()
}

pub fn rand_scalar(field: FieldSpec, rng: &mut ChaCha8Rng) -> Scalar {
    match field {
        FieldSpec::Rationals => {
            // small numerators and denominators keep the arithmetic honest
            let num = rng.gen_range(-3i64..=3);
            let den = *[1i64, 1, 1, 2, 3].get(rng.gen_range(0..5)).unwrap();
            field.from_int(num).div(&field.from_int(den)).unwrap()
        }
        FieldSpec::PrimeField(p) => field.from_int(rng.gen_range(0..p) as i64),
    }
}

pub fn rand_vector(field: FieldSpec, dim: usize, rng: &mut ChaCha8Rng) -> Vec<Scalar> {
    (0..dim).map(|_| rand_scalar(field, rng)).collect()
}

pub fn rand_algebra(field: FieldSpec, dim: usize, rng: &mut ChaCha8Rng) -> AlgRef {
    let names = (1..=dim).map(|i| format!("e{i}")).collect();
    Arc::new(FdAlgebra::from_fn(field, names, |_, _| {
        rand_vector(field, dim, rng)
    }))
}

/// Random algebra with mostly-zero structure constants, so proper ideals
/// actually exist.
pub fn sparse_rand_algebra(field: FieldSpec, dim: usize, rng: &mut ChaCha8Rng) -> AlgRef {
    let names = (1..=dim).map(|i| format!("e{i}")).collect();
    Arc::new(FdAlgebra::from_fn(field, names, |_, _| {
        if rng.gen_bool(0.65) {
            vec![field.zero(); dim]
        } else {
            let mut v = vec![field.zero(); dim];
            v[rng.gen_range(0..dim)] = field.one();
            v
        }
    }))
}

/// A random invertible matrix, built from the identity by random shears
/// and row swaps, so it is invertible by construction.
pub fn rand_invertible(field: FieldSpec, n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let mut m = Matrix::identity(field, n);
    if n < 2 {
        return m;
    }
    for _ in 0..(3 * n + 2) {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        if i == j {
            continue;
        }
        let c = rand_scalar(field, rng);
        // row_i += c * row_j
        for k in 0..n {
            let delta = m[(j, k)].mul(&c);
            m[(i, k)] = m[(i, k)].add(&delta);
        }
    }
    m
}

/// All structure tables of a GF(2) algebra of the given dimension.
pub fn all_gf2_algebras(dim: usize) -> Vec<AlgRef> {
    let field = gf(2);
    let cells = dim * dim * dim;
    assert!(cells <= 16, "table enumeration explodes");
    let mut out = Vec::new();
    for mask in 0u32..(1 << cells) {
        let names: Vec<String> = (1..=dim).map(|i| format!("e{i}")).collect();
        let alg = FdAlgebra::from_fn(field, names, |i, j| {
            (0..dim)
                .map(|k| {
                    let bit = (i * dim + j) * dim + k;
                    if mask >> bit & 1 == 1 {
                        field.one()
                    } else {
                        field.zero()
                    }
                })
                .collect()
        });
        out.push(Arc::new(alg));
    }
    out
}

/// All subspaces of GF(p)^dim, by spanning every subset of the nonzero
/// vectors (fine for p^dim <= 16).
pub fn all_subspaces(field: FieldSpec, dim: usize) -> Vec<Subspace> {
    let vectors = all_vectors(field, dim);
    let mut out: Vec<Subspace> = Vec::new();
    let n = vectors.len();
    assert!(n <= 16, "subspace enumeration explodes");
    for mask in 0u32..(1 << n) {
        let chosen: Vec<Vec<Scalar>> = (0..n)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| vectors[i].clone())
            .collect();
        let s = Subspace::span(field, dim, &chosen).unwrap();
        if !out.contains(&s) {
            out.push(s);
        }
    }
    out
}

pub fn all_vectors(field: FieldSpec, dim: usize) -> Vec<Vec<Scalar>> {
    let p = match field {
        FieldSpec::PrimeField(p) => p,
        FieldSpec::Rationals => panic!("cannot enumerate Q"),
    };
    let count = (p as u64).pow(dim as u32);
    let mut out = Vec::new();
    for idx in 0..count {
        let mut v = Vec::with_capacity(dim);
        let mut rest = idx;
        for _ in 0..dim {
            v.push(field.from_int((rest % p as u64) as i64));
            rest /= p as u64;
        }
        out.push(v);
    }
    out
}

/// Every morphism between two small algebras over a prime field, found by
/// brute force over all matrices.
pub fn all_morphisms(a: &AlgRef, x: &AlgRef) -> Vec<Morphism> {
    let field = a.field();
    let p = match field {
        FieldSpec::PrimeField(p) => p,
        FieldSpec::Rationals => panic!("cannot enumerate morphisms over Q"),
    };
    let cells = a.dim() * x.dim();
    let count = (p as u64).pow(cells as u32);
    assert!(count <= 1 << 20, "morphism enumeration explodes");
    let mut out = Vec::new();
    for idx in 0..count {
        let mut m = Matrix::zeros(field, x.dim(), a.dim());
        let mut rest = idx;
        for c in 0..cells {
            let (i, j) = (c % x.dim(), c / x.dim());
            m[(i, j)] = field.from_int((rest % p as u64) as i64);
            rest /= p as u64;
        }
        if let Ok(f) = Morphism::new(a.clone(), x.clone(), m) {
            out.push(f);
        }
    }
    out
}

/// Random non-associative polynomial: `terms` monomials over the first
/// `nvars` of x, y, z with degrees within `max_deg`.
pub fn rand_poly(
    field: FieldSpec,
    nvars: usize,
    max_deg: usize,
    terms: usize,
    rng: &mut ChaCha8Rng,
) -> Poly {
    let vars: Vec<&str> = ["x", "y", "z"][..nvars].to_vec();
    let mut p = Poly::zero(field);
    for _ in 0..terms {
        let deg = rng.gen_range(1..=max_deg);
        let w = rand_word(&vars, deg, rng);
        let mut c = rand_scalar(field, rng);
        if c.is_zero() {
            c = field.one();
        }
        p = p.add(&Poly::monomial(field, c, w));
    }
    p
}

pub fn rand_word(vars: &[&str], len: usize, rng: &mut ChaCha8Rng) -> Word {
    if len == 1 {
        let v = vars[rng.gen_range(0..vars.len())];
        return Word::leaf(v);
    }
    let left = rng.gen_range(1..len);
    let l = rand_word(vars, left, rng);
    let r = rand_word(vars, len - left, rng);
    Word::mul(&l, &r)
}

/// Random assignment of algebra elements to the polynomial's variables.
pub fn rand_assignment(
    p: &Poly,
    a: &FdAlgebra,
    rng: &mut ChaCha8Rng,
) -> BTreeMap<String, Vec<Scalar>> {
    p.variables()
        .into_iter()
        .map(|v| (v, rand_vector(a.field(), a.dim(), rng)))
        .collect()
}

/// A split extension B = A (+) C with a random twisting: the product is
/// (a, c)(a', c') = (aa' + L(c, a') + R(a, c'), cc') for random bilinear
/// maps L: C x A -> A and R: A x C -> A. The canonical injections and
/// projections make a split short exact sequence.
pub struct SplitExtension {
    pub a: AlgRef,
    pub b: AlgRef,
    pub c: AlgRef,
    pub f: Morphism, // A -> B, kernel of g
    pub g: Morphism, // B -> C, split epi
    pub s: Morphism, // C -> B, section
}

pub fn rand_split_extension(
    field: FieldSpec,
    dim_a: usize,
    dim_c: usize,
    rng: &mut ChaCha8Rng,
) -> SplitExtension {
    let a = rand_algebra(field, dim_a, rng);
    let c = rand_algebra(field, dim_c, rng);
    let n = dim_a + dim_c;
    // bilinear twists live entirely in the A block
    let twist_l: Vec<Vec<Vec<Scalar>>> = (0..dim_c)
        .map(|_| (0..dim_a).map(|_| rand_vector(field, dim_a, rng)).collect())
        .collect();
    let twist_r: Vec<Vec<Vec<Scalar>>> = (0..dim_a)
        .map(|_| (0..dim_c).map(|_| rand_vector(field, dim_a, rng)).collect())
        .collect();
    let names: Vec<String> = (1..=n).map(|i| format!("b{i}")).collect();
    let a2 = a.clone();
    let c2 = c.clone();
    let b = FdAlgebra::from_fn(field, names, move |i, j| {
        let mut out = vec![field.zero(); n];
        if i < dim_a && j < dim_a {
            for (k, s) in a2.basis_product(i, j).iter() {
                out[*k] = s.clone();
            }
        } else if i >= dim_a && j >= dim_a {
            for (k, s) in c2.basis_product(i - dim_a, j - dim_a).iter() {
                out[dim_a + k] = s.clone();
            }
        }
        if i >= dim_a && j < dim_a {
            // L(c_i, a_j)
            for (k, s) in twist_l[i - dim_a][j].iter().enumerate() {
                if !s.is_zero() {
                    out[k] = out[k].add(s);
                }
            }
        }
        if i < dim_a && j >= dim_a {
            // R(a_i, c_j)
            for (k, s) in twist_r[i][j - dim_a].iter().enumerate() {
                if !s.is_zero() {
                    out[k] = out[k].add(s);
                }
            }
        }
        out
    });
    let b = Arc::new(b);
    let mut fm = Matrix::zeros(field, n, dim_a);
    for i in 0..dim_a {
        fm[(i, i)] = field.one();
    }
    let mut gm = Matrix::zeros(field, dim_c, n);
    for i in 0..dim_c {
        gm[(i, dim_a + i)] = field.one();
    }
    let f = Morphism::new(a.clone(), b.clone(), fm).expect("A includes into B");
    let g = Morphism::new(b.clone(), c.clone(), gm).expect("B retracts onto C");
    let s = Morphism::new(c.clone(), b.clone(), g.matrix().transpose()).expect("C includes into B");
    SplitExtension { a, b, c, f, g, s }
}

/// The 2x2 matrix-unit algebra over the field.
pub fn matrix_units_2x2(field: FieldSpec) -> AlgRef {
    let names = vec![
        "e11".to_string(),
        "e12".to_string(),
        "e21".to_string(),
        "e22".to_string(),
    ];
    Arc::new(FdAlgebra::from_fn(field, names, |a, b| {
        let (i, j) = (a / 2, a % 2);
        let (k, l) = (b / 2, b % 2);
        let mut v = vec![field.zero(); 4];
        if j == k {
            v[i * 2 + l] = field.one();
        }
        v
    }))
}

/// Linear section of a surjective morphism, solved exactly.
pub fn linear_section(g: &Morphism) -> Matrix {
    let field = g.source().field();
    let m = g.matrix();
    let mut section = Matrix::zeros(field, g.source().dim(), g.target().dim());
    for j in 0..g.target().dim() {
        let mut rhs = vec![field.zero(); g.target().dim()];
        rhs[j] = field.one();
        let aug = m.hstack(&Matrix::column(field, &rhs));
        let (red, pivots) = aug.rref();
        for (r, &p) in pivots.iter().enumerate() {
            assert!(p < m.cols(), "morphism is not surjective");
            section[(p, j)] = red[(r, m.cols())].clone();
        }
    }
    section
}
