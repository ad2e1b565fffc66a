//! Valid contexts for tests: the matrix Morita context, corner contexts
//! `(Ae, eA)` over `eAe`, and samples for the W(Bim) axiom checker.

use std::sync::Arc;

use super::algebras::{ground, matrix_algebra, product, truncated_poly, upper_triangular};
use super::modules;
use super::random::Sampler;
use crate::algebra::Algebra;
use crate::bicat::{AxiomSamples, Bicategory};
use crate::bimod::{balanced_map, tensor_over, Bim, Bimodule, BimoduleMap};
use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix, Scalar, Solution};
use crate::wide::{reverse_context, scale_context, ContextMorphism, TypedMorphism, WideContext, W};

pub type BimContext = WideContext<Bim>;

/// Columns and rows of size `n` between `M_n(k)` and `k`, with
/// `eta(x (x) y) = x y^T` and `rho(y (x) x) = y x`.
pub fn matrix_morita(field: Field, n: usize) -> Result<BimContext> {
    let mn = Arc::new(matrix_algebra(field, n));
    let k = Arc::new(ground(field));
    let f = Arc::new(modules::columns(&mn, &k, n));
    let g = Arc::new(modules::rows(&k, &mn, n));
    let fg = tensor_over(&f, &g)?;
    let outer = Matrix::from_fn(field, n * n, n * n, |ab, xy| if ab == xy { field.one() } else { field.zero() });
    let eta = balanced_map(&fg, &Arc::new(Bimodule::regular(&mn)), &outer)?;
    let gf = tensor_over(&g, &f)?;
    let inner = Matrix::from_fn(field, 1, n * n, |_, yx| if yx / n == yx % n { field.one() } else { field.zero() });
    let rho = balanced_map(&gf, &Arc::new(Bimodule::regular(&k)), &inner)?;
    Ok(WideContext { f, g, eta, rho })
}

/// `theta: I_k -> g f`, the inverse of the matrix context's `rho`.
pub fn matrix_theta(c: &BimContext) -> Result<BimoduleMap> {
    c.rho.inverse()
}

/// The corner algebra `eAe` with the columns of `inclusion` giving its basis
/// inside `A`.
pub struct Corner {
    pub algebra: Arc<Algebra>,
    pub inclusion: Matrix,
}

fn coords_in(basis: &Matrix, v: Vec<Scalar>) -> Result<Vec<Scalar>> {
    match basis.solve(&Matrix::column(basis.field(), v))? {
        Solution::Solved { x, .. } => Ok(x.entries().to_vec()),
        Solution::NoSolution => Err(Error::Invalid("element outside the subspace".into())),
    }
}

pub fn corner_algebra(a: &Arc<Algebra>, e: &[Scalar]) -> Result<Corner> {
    if !a.is_idempotent(e)? || e.iter().all(Scalar::is_zero) {
        return Err(Error::NotIdempotent);
    }
    let reg = Bimodule::regular(a);
    let inclusion = reg.left_of(e).mul(&reg.right_of(e)).column_space()?;
    let d = inclusion.cols();
    let mut structure = Vec::with_capacity(d * d * d);
    for i in 0..d {
        for j in 0..d {
            let prod = a.multiply(inclusion.col(i).entries(), inclusion.col(j).entries())?;
            structure.extend(coords_in(&inclusion, prod)?);
        }
    }
    let unit = coords_in(&inclusion, e.to_vec())?;
    Ok(Corner { algebra: Arc::new(Algebra::new(a.field(), d, structure, unit)?), inclusion })
}

/// `(Ae, eA, mult, mult)` as a context from `eAe` to `A`.
pub fn corner_context(a: &Arc<Algebra>, e: &[Scalar]) -> Result<(BimContext, Corner)> {
    let corner = corner_algebra(a, e)?;
    let b = &corner.algebra;
    let reg = Bimodule::regular(a);
    let id_a = Matrix::identity(a.field(), a.dim());
    let fb = reg.right_of(e).column_space()?;
    let gb = reg.left_of(e).column_space()?;
    let f = Arc::new(modules::sub_bimodule(&reg, &fb, a, &id_a, b, &corner.inclusion)?);
    let g = Arc::new(modules::sub_bimodule(&reg, &gb, b, &corner.inclusion, a, &id_a)?);
    let products = |left: &Matrix, right: &Matrix| -> Result<Vec<Vec<Scalar>>> {
        let mut out = Vec::new();
        for i in 0..left.cols() {
            for j in 0..right.cols() {
                out.push(a.multiply(left.col(i).entries(), right.col(j).entries())?);
            }
        }
        Ok(out)
    };
    let field = a.field();
    let fg_vals = products(&fb, &gb)?;
    let eta_amb = Matrix::from_fn(field, a.dim(), fg_vals.len(), |r, c| fg_vals[c][r].clone());
    let eta = balanced_map(&tensor_over(&f, &g)?, &Arc::new(reg.clone()), &eta_amb)?;
    let gf_vals = products(&gb, &fb)?.into_iter().map(|v| coords_in(&corner.inclusion, v)).collect::<Result<Vec<_>>>()?;
    let rho_amb = Matrix::from_fn(field, b.dim(), gf_vals.len(), |r, c| gf_vals[c][r].clone());
    let rho = balanced_map(&tensor_over(&g, &f)?, &Arc::new(Bimodule::regular(b)), &rho_amb)?;
    Ok((WideContext { f, g, eta, rho }, corner))
}

/// Algebras with a few idempotents (in their own basis) to cut corners from.
pub fn corner_seeds(field: Field) -> Vec<(String, Arc<Algebra>, Vec<Vec<Scalar>>)> {
    let z = field.zero();
    let o = field.one();
    vec![
        (
            "m2".to_string(),
            Arc::new(matrix_algebra(field, 2)),
            vec![
                vec![o.clone(), z.clone(), z.clone(), z.clone()],
                vec![z.clone(), z.clone(), z.clone(), o.clone()],
                vec![o.clone(), z.clone(), z.clone(), o.clone()],
            ],
        ),
        ("k2".to_string(), Arc::new(product(field, 2)), vec![vec![o.clone(), z.clone()], vec![o.clone(), o.clone()]]),
        (
            "k3".to_string(),
            Arc::new(product(field, 3)),
            vec![vec![o.clone(), o.clone(), z.clone()], vec![z.clone(), z.clone(), o.clone()]],
        ),
        (
            "t2".to_string(),
            Arc::new(upper_triangular(field)),
            vec![
                vec![o.clone(), z.clone(), z.clone()],
                vec![z.clone(), z.clone(), o.clone()],
                vec![o.clone(), o.clone(), z.clone()],
            ],
        ),
        ("dual2".to_string(), Arc::new(truncated_poly(field, 2)), vec![vec![o.clone(), z.clone()]]),
    ]
}

/// `u e u^-1` for a random unit `u`: another idempotent of the same algebra.
pub fn conjugate_idempotent(s: &mut Sampler, a: &Arc<Algebra>, e: &[Scalar]) -> Result<Vec<Scalar>> {
    let reg = Bimodule::regular(a);
    for _ in 0..64 {
        let u: Vec<Scalar> = (0..a.dim()).map(|_| s.scalar()).collect();
        // u^-1 = L_u^-1 1 when left multiplication by u is invertible
        let lu = reg.left_of(&u);
        if lu.rank()? < a.dim() {
            continue;
        }
        let uinv = lu.inverse()?.mul(&a.unit_vector()).entries().to_vec();
        return a.multiply(&a.multiply(&u, e)?, &uinv);
    }
    Err(Error::Generation("no invertible element found".into()))
}

/// A random corner context, together with the corner algebra.
pub fn random_corner(s: &mut Sampler) -> Result<(BimContext, Corner)> {
    let seeds = corner_seeds(s.field);
    let (_, a, es) = s.pick(&seeds).clone();
    let e = s.pick(&es).clone();
    let e = conjugate_idempotent(s, &a, &e)?;
    corner_context(&a, &e)
}

/// `(f, g, 0, 0)`: any pair of morphisms between such contexts is compatible.
pub fn zero_context(f: &Arc<Bimodule>, g: &Arc<Bimodule>) -> Result<BimContext> {
    let fg = tensor_over(f, g)?;
    let gf = tensor_over(g, f)?;
    let ia = Arc::new(Bimodule::regular(f.left()));
    let ib = Arc::new(Bimodule::regular(f.right()));
    Ok(WideContext { eta: BimoduleMap::zero(&fg, &ia), rho: BimoduleMap::zero(&gf, &ib), f: f.clone(), g: g.clone() })
}

/// `(s id, t id)` from `c` scaled by `lambda` to `c` scaled by `mu`, when
/// `s t mu = lambda`.
pub fn scaling_morphism(c: &BimContext, s: &Scalar, t: &Scalar) -> ContextMorphism<Bim> {
    ContextMorphism { alpha: BimoduleMap::identity(&c.f).scale(s), beta: BimoduleMap::identity(&c.g).scale(t) }
}

/// Pairs `(outer, inner)` of valid contexts whose product is defined: corners
/// with their reverses, corners of corners, identities, scalings, and the
/// matrix context.
pub fn context_pairs(field: Field, seed: u64, count: usize) -> Result<Vec<(BimContext, BimContext)>> {
    let bim = Bim::new(field);
    let mut s = Sampler::new(field, seed);
    let mut out = Vec::with_capacity(count);
    let matrix = matrix_morita(field, 2)?;
    while out.len() < count {
        let (gamma, corner) = random_corner(&mut s)?;
        let lambda = s.nonzero_scalar();
        let pair = match out.len() % 6 {
            0 => (gamma.clone(), reverse_context(&gamma)),
            1 => (reverse_context(&gamma), gamma.clone()),
            2 => {
                let b = &corner.algebra;
                let (inner, _) = corner_context(b, b.unit())?;
                (gamma, inner)
            }
            3 => {
                let id = crate::wide::identity_context(&bim, &bim.source(&gamma.f))?;
                (scale_context(&bim, &gamma, &lambda), id)
            }
            4 => (scale_context(&bim, &gamma, &lambda), reverse_context(&gamma)),
            _ => {
                if s.coin() {
                    (matrix.clone(), reverse_context(&matrix))
                } else {
                    (reverse_context(&matrix), scale_context(&bim, &matrix, &lambda))
                }
            }
        };
        out.push(pair);
    }
    Ok(out)
}

/// Samples for the axiom checker on W(Bim). Even-numbered samples alternate a
/// corner context with its reverse at random scalings, linked by scaling
/// morphisms; odd ones use zero contexts on random bimodules with arbitrary
/// maps between basis-changed copies.
pub fn wide_samples(field: Field, seed: u64, count: usize) -> Result<AxiomSamples<W<Bim>>> {
    let bim = Bim::new(field);
    let mut s = Sampler::new(field, seed);
    let mut samples = AxiomSamples::default();
    for i in 0..count {
        let (path, cells) = if i % 2 == 0 { scaled_path(&bim, &mut s)? } else { zero_path(&mut s)? };
        samples.objects.push(bim.target(&path[0].f));
        let [first, second, third] = cells;
        samples.interchanges.push(([first[0].clone(), first[1].clone()], [second[0].clone(), second[1].clone()]));
        samples.chains.push([first[0].clone(), second[0].clone(), third[0].clone()]);
        samples.whiskers.push(first.to_vec());
        samples.paths.push(path);
    }
    Ok(samples)
}

type Layers = [[TypedMorphism<Bim>; 3]; 3];

/// Four contexts and three layers of morphisms on the first three: layer
/// `k + 1` starts where layer `k` ends.
fn scaled_path(bim: &Bim, s: &mut Sampler) -> Result<(Vec<BimContext>, Layers)> {
    let (gamma, _) = random_corner(s)?;
    let base = [gamma.clone(), reverse_context(&gamma), gamma.clone(), reverse_context(&gamma)];
    let mut scales: Vec<Scalar> = (0..4).map(|_| s.nonzero_scalar()).collect();
    let path: Vec<BimContext> = base.iter().zip(&scales).map(|(c, l)| scale_context(bim, c, l)).collect();
    let mut layers: Vec<[TypedMorphism<Bim>; 3]> = Vec::new();
    let mut current = path[..3].to_vec();
    for _ in 0..3 {
        let mut layer = Vec::new();
        for j in 0..3 {
            let mu = s.nonzero_scalar();
            let sc = s.nonzero_scalar();
            // s t mu = lambda
            let t = scales[j].checked_div(&(&sc * &mu))?;
            let to = scale_context(bim, &base[j], &mu);
            let m = scaling_morphism(&base[j], &sc, &t);
            layer.push(TypedMorphism::new(m, current[j].clone(), to.clone()));
            current[j] = to;
            scales[j] = mu;
        }
        layers.push(layer.try_into().map_err(|_| Error::Generation("layer".into()))?);
    }
    Ok((path, layers.try_into().map_err(|_| Error::Generation("layers".into()))?))
}

fn zero_path(s: &mut Sampler) -> Result<(Vec<BimContext>, Layers)> {
    let a = s.algebra(2)?;
    let b = s.algebra(2)?;
    let f = Arc::new(s.bimodule(&a, &b, 2)?);
    let g = Arc::new(s.bimodule(&b, &a, 2)?);
    let ctx = zero_context(&f, &g)?;
    let path = vec![ctx.clone(), reverse_context(&ctx), ctx.clone(), reverse_context(&ctx)];
    let mut layers: Vec<[TypedMorphism<Bim>; 3]> = Vec::new();
    let mut current = path[..3].to_vec();
    for _ in 0..3 {
        let mut layer = Vec::new();
        for c in current.iter_mut() {
            let alpha = s.map_out_of(&c.f)?;
            let beta = s.map_out_of(&c.g)?;
            let to = zero_context(alpha.target(), beta.target())?;
            layer.push(TypedMorphism::new(ContextMorphism { alpha, beta }, c.clone(), to.clone()));
            *c = to;
        }
        layers.push(layer.try_into().map_err(|_| Error::Generation("layer".into()))?);
    }
    Ok((path, layers.try_into().map_err(|_| Error::Generation("layers".into()))?))
}
