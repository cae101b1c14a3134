//! Limit/colimit-style diagram constructions: products, pullbacks, image
//! factorizations, exact sequences, and the Split Short Five Lemma check.

use std::sync::Arc;

use crate::error::{AlgError, Result};
use crate::linalg::{Matrix, Subspace};
use crate::scalar::Scalar;

use super::{AlgRef, FdAlgebra, Morphism};

/// A product A x C with its projections and the canonical injections
/// (which are morphisms because the structure is componentwise).
pub struct ProductData {
    pub carrier: AlgRef,
    pub pi_left: Morphism,
    pub pi_right: Morphism,
    pub incl_left: Morphism,
    pub incl_right: Morphism,
}

impl ProductData {
    /// The unique mediating morphism <a, c>: X -> A x C.
    pub fn mediate(&self, a: &Morphism, c: &Morphism) -> Result<Morphism> {
        if a.source() != c.source() {
            return Err(AlgError::NotComposable(0));
        }
        if a.target() != self.pi_left.target() || c.target() != self.pi_right.target() {
            return Err(AlgError::NotComposable(1));
        }
        let m = self.pi_left.target().dim();
        let n = self.pi_right.target().dim();
        let x = a.source().dim();
        let mut mat = Matrix::zeros(a.source().field(), m + n, x);
        for j in 0..x {
            for i in 0..m {
                mat[(i, j)] = a.matrix()[(i, j)].clone();
            }
            for i in 0..n {
                mat[(m + i, j)] = c.matrix()[(i, j)].clone();
            }
        }
        Morphism::new(a.source().clone(), self.carrier.clone(), mat)
    }
}

/// Componentwise product algebra. Basis names are prefixed l/r copies.
pub fn product(a: &AlgRef, c: &AlgRef) -> Result<ProductData> {
    if a.field() != c.field() {
        return Err(AlgError::FieldMismatch(
            a.field().to_string(),
            c.field().to_string(),
        ));
    }
    let field = a.field();
    let m = a.dim();
    let n = c.dim();
    let names: Vec<String> = (1..=m + n).map(|i| format!("p{i}")).collect();
    let carrier = FdAlgebra::from_fn(field, names, |i, j| {
        let mut v = vec![field.zero(); m + n];
        if i < m && j < m {
            for (k, s) in a.basis_product(i, j) {
                v[*k] = s.clone();
            }
        } else if i >= m && j >= m {
            for (k, s) in c.basis_product(i - m, j - m) {
                v[m + k] = s.clone();
            }
        }
        v
    });
    let carrier = Arc::new(carrier);
    let mut pl = Matrix::zeros(field, m, m + n);
    for i in 0..m {
        pl[(i, i)] = field.one();
    }
    let mut pr = Matrix::zeros(field, n, m + n);
    for i in 0..n {
        pr[(i, m + i)] = field.one();
    }
    let pi_left = Morphism::new(carrier.clone(), a.clone(), pl.clone())?;
    let pi_right = Morphism::new(carrier.clone(), c.clone(), pr.clone())?;
    let incl_left = Morphism::new(a.clone(), carrier.clone(), pl.transpose())?;
    let incl_right = Morphism::new(c.clone(), carrier.clone(), pr.transpose())?;
    Ok(ProductData {
        carrier,
        pi_left,
        pi_right,
        incl_left,
        incl_right,
    })
}

/// A pullback P = A x_B C of f: A -> B along g: C -> B, realized as the
/// subalgebra {(a, c) | f(a) = g(c)} of the product.
pub struct PullbackData {
    pub carrier: AlgRef,
    pub pi_left: Morphism,
    pub pi_right: Morphism,
    sub: Subspace,
    product: ProductData,
}

impl PullbackData {
    /// The unique mediating morphism <a, c>: X -> P for f o a = g o c.
    pub fn mediate(&self, a: &Morphism, c: &Morphism) -> Result<Morphism> {
        let into_product = self.product.mediate(a, c)?;
        // coordinates of each image vector in the pullback subspace basis
        let x = a.source().dim();
        let field = a.source().field();
        let mut mat = Matrix::zeros(field, self.sub.dim(), x);
        for j in 0..x {
            let v = into_product.matrix().col(j);
            let coords = self.sub.coordinates(&v).ok_or_else(|| {
                AlgError::InputError("cone does not factor through the pullback".into())
            })?;
            for i in 0..self.sub.dim() {
                mat[(i, j)] = coords[i].clone();
            }
        }
        Morphism::new(a.source().clone(), self.carrier.clone(), mat)
    }
}

pub fn pullback(f: &Morphism, g: &Morphism) -> Result<PullbackData> {
    if f.target() != g.target() {
        return Err(AlgError::NotComposable(0));
    }
    let prod = product(f.source(), g.source())?;
    // kernel of [f | -g] on the product coordinates
    let b_dim = f.target().dim();
    let m = f.source().dim();
    let n = g.source().dim();
    let field = f.source().field();
    let mut stacked = Matrix::zeros(field, b_dim, m + n);
    for i in 0..b_dim {
        for j in 0..m {
            stacked[(i, j)] = f.matrix()[(i, j)].clone();
        }
        for j in 0..n {
            stacked[(i, m + j)] = g.matrix()[(i, j)].neg();
        }
    }
    let sub = crate::linalg::map_kernel_image(&stacked).0;
    let carrier = Arc::new(prod.carrier.induced_on_subspace(&sub, "p")?);
    let incl = Morphism::new(
        carrier.clone(),
        prod.carrier.clone(),
        sub.basis().transpose(),
    )?;
    let pi_left = prod.pi_left.compose(&incl)?;
    let pi_right = prod.pi_right.compose(&incl)?;
    Ok(PullbackData {
        carrier,
        pi_left,
        pi_right,
        sub,
        product: prod,
    })
}

/// Factors f as a surjection onto its image followed by the inclusion.
pub fn image_factorization(f: &Morphism) -> Result<(AlgRef, Morphism, Morphism)> {
    let image = f.image_subspace();
    let carrier = Arc::new(f.target().induced_on_subspace(&image, "i")?);
    let incl = Morphism::new(
        carrier.clone(),
        f.target().clone(),
        image.basis().transpose(),
    )?;
    let mut p = Matrix::zeros(f.source().field(), image.dim(), f.source().dim());
    for j in 0..f.source().dim() {
        let col = f.matrix().col(j);
        let coords = image
            .coordinates(&col)
            .expect("image vectors lie in the image");
        for i in 0..image.dim() {
            p[(i, j)] = coords[i].clone();
        }
    }
    let onto = Morphism::new(f.source().clone(), carrier.clone(), p)?;
    debug_assert_eq!(incl.compose(&onto).unwrap().matrix(), f.matrix());
    Ok((carrier, onto, incl))
}

/// Exactness report for one joint of a composable sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JointReport {
    pub image_dim: usize,
    pub kernel_dim: usize,
    pub exact: bool,
}

/// Checks exactness (image = kernel as canonical subspaces) at each inner
/// joint of a composable sequence.
pub fn is_exact(seq: &[Morphism]) -> Result<Vec<JointReport>> {
    for (i, pair) in seq.windows(2).enumerate() {
        if pair[0].target() != pair[1].source() {
            return Err(AlgError::NotComposable(i));
        }
    }
    let mut reports = Vec::new();
    for pair in seq.windows(2) {
        let image = pair[0].image_subspace();
        let kernel = pair[1].kernel_subspace();
        reports.push(JointReport {
            image_dim: image.dim(),
            kernel_dim: kernel.dim(),
            exact: image == kernel,
        });
    }
    Ok(reports)
}

/// Report for a candidate short exact sequence 0 -> A -f-> B -g-> C -> 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SesReport {
    pub f_injective: bool,
    pub middle_exact: bool,
    pub g_surjective: bool,
}

impl SesReport {
    pub fn is_short_exact(&self) -> bool {
        self.f_injective && self.middle_exact && self.g_surjective
    }
}

/// Witness check for Definition "f is a kernel of g and g is a cokernel
/// of f": equivalently f injective, im f = ker g, g surjective.
pub fn ses_is_short_exact(f: &Morphism, g: &Morphism) -> Result<SesReport> {
    if f.target() != g.source() {
        return Err(AlgError::NotComposable(0));
    }
    Ok(SesReport {
        f_injective: f.is_injective(),
        middle_exact: f.image_subspace() == g.kernel_subspace(),
        g_surjective: g.is_surjective(),
    })
}

/// For a short exact sequence of abelian algebras, builds the explicit
/// isomorphism A (+) C -> B, (a, c) -> f(a) + s(c), where s is a linear
/// splitting of g. In the abelian variety every linear map is a morphism,
/// so the Split Short Five Lemma applies and the result is an iso.
pub fn ses_direct_sum_witness(f: &Morphism, g: &Morphism) -> Result<(ProductData, Morphism)> {
    let report = ses_is_short_exact(f, g)?;
    if !report.is_short_exact() {
        return Err(AlgError::DiagramInvalid(
            "sequence is not short exact".into(),
        ));
    }
    let b = f.target();
    let c = g.target();
    let field = b.field();
    // linear section of g: solve g * s_j = e_j for each basis vector of C
    let mut section = Matrix::zeros(field, b.dim(), c.dim());
    for j in 0..c.dim() {
        let rhs: Vec<Scalar> = (0..c.dim())
            .map(|i| if i == j { field.one() } else { field.zero() })
            .collect();
        let sol = solve(g.matrix(), &rhs)?;
        for i in 0..b.dim() {
            section[(i, j)] = sol[i].clone();
        }
    }
    let prod = product(f.source(), c)?;
    // beta(a, c) = f(a) + s(c)
    let mut beta = Matrix::zeros(field, b.dim(), f.source().dim() + c.dim());
    for j in 0..f.source().dim() {
        for i in 0..b.dim() {
            beta[(i, j)] = f.matrix()[(i, j)].clone();
        }
    }
    for j in 0..c.dim() {
        for i in 0..b.dim() {
            beta[(i, f.source().dim() + j)] = section[(i, j)].clone();
        }
    }
    let beta = Morphism::new(prod.carrier.clone(), b.clone(), beta)?;
    Ok((prod, beta))
}

/// Exact solve of M x = rhs via the augmented rref; free variables are
/// set to zero.
fn solve(m: &Matrix, rhs: &[Scalar]) -> Result<Vec<Scalar>> {
    let field = m.field();
    let aug = m.hstack(&Matrix::column(field, rhs));
    let (ared, apivots) = aug.rref();
    if apivots.iter().any(|&p| p == m.cols()) {
        return Err(AlgError::InputError("linear system is inconsistent".into()));
    }
    let mut x = vec![field.zero(); m.cols()];
    for (r, &p) in apivots.iter().enumerate() {
        x[p] = ared[(r, m.cols())].clone();
    }
    Ok(x)
}

/// The data of the Split Short Five Lemma diagram:
///
/// ```text
///         f        g
///    A ------> B <====> C        (g o s = 1_C)
///    |         |   s    |
///  alpha     beta     gamma
///    v         v   t    v
///    D ------> E <====> F        (q o t = 1_F)
///         k        q
/// ```
pub struct SplitFiveDiagram {
    pub f: Morphism,
    pub g: Morphism,
    pub s: Morphism,
    pub k: Morphism,
    pub q: Morphism,
    pub t: Morphism,
    pub alpha: Morphism,
    pub beta: Morphism,
    pub gamma: Morphism,
}

/// Validates every hypothesis of the Split Short Five Lemma and then
/// reports whether beta is an isomorphism. The theorem guarantees `true`
/// whenever alpha and gamma are isomorphisms.
pub fn split_short_five_check(d: &SplitFiveDiagram) -> Result<bool> {
    let fail = |msg: &str| Err(AlgError::DiagramInvalid(msg.to_string()));
    // endpoints
    if d.f.target() != d.g.source() || d.s.target() != d.g.source() || d.s.source() != d.g.target()
    {
        return fail("top row endpoints do not match");
    }
    if d.k.target() != d.q.source() || d.t.target() != d.q.source() || d.t.source() != d.q.target()
    {
        return fail("bottom row endpoints do not match");
    }
    if d.alpha.source() != d.f.source() || d.alpha.target() != d.k.source() {
        return fail("alpha endpoints do not match");
    }
    if d.beta.source() != d.g.source() || d.beta.target() != d.q.source() {
        return fail("beta endpoints do not match");
    }
    if d.gamma.source() != d.g.target() || d.gamma.target() != d.q.target() {
        return fail("gamma endpoints do not match");
    }
    // splittings
    let id_c = Matrix::identity(d.g.target().field(), d.g.target().dim());
    if *d.g.compose(&d.s)?.matrix() != id_c {
        return fail("g o s is not the identity");
    }
    let id_f = Matrix::identity(d.q.target().field(), d.q.target().dim());
    if *d.q.compose(&d.t)?.matrix() != id_f {
        return fail("q o t is not the identity");
    }
    // kernels
    if !d.f.is_injective() || d.f.image_subspace() != d.g.kernel_subspace() {
        return fail("f is not a kernel of g");
    }
    if !d.k.is_injective() || d.k.image_subspace() != d.q.kernel_subspace() {
        return fail("k is not a kernel of q");
    }
    // commuting squares
    if d.beta.compose(&d.f)?.matrix() != d.k.compose(&d.alpha)?.matrix() {
        return fail("left square does not commute");
    }
    if d.q.compose(&d.beta)?.matrix() != d.gamma.compose(&d.g)?.matrix() {
        return fail("right square does not commute");
    }
    if d.beta.compose(&d.s)?.matrix() != d.t.compose(&d.gamma)?.matrix() {
        return fail("splitting square does not commute");
    }
    Ok(d.beta.is_isomorphism())
}
