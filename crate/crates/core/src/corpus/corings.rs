//! Corings, bicomodules and entwined cells over the small algebras.

use std::sync::Arc;

use super::algebras::{ground, matrix_algebra, product, small_catalog, CatalogAlgebra};
use super::contexts::matrix_morita;
use super::modules;
use super::random::Sampler;
use crate::algebra::Algebra;
use crate::bicat::{AxiomSamples, Bicategory};
use crate::bimod::{iota, tensor_over, Bimodule, BimoduleMap};
use crate::coring::{
    cell_from_bicomodule, classical_to_wrem, lift, rem_two_cell_basis, sweedler_coring, trivial_coring, Bicomodule, Comodule,
    Coring, EntwinedCell, EntwinedTwoCell, Rem, WremContext,
};
use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix, Scalar};
use crate::pushout::{CatSamples, SampleMorphism};

#[derive(Clone, Debug)]
pub struct CoringSeed {
    pub name: String,
    pub coring: Arc<Coring>,
    /// The base as a catalog algebra, when random bimodules over it are available.
    pub base: Option<CatalogAlgebra>,
}

fn catalog(field: Field, name: &str) -> CatalogAlgebra {
    small_catalog(field).into_iter().find(|c| c.name == name).expect("catalog algebra")
}

/// `k -> A`, as a one-column matrix.
pub fn ground_inclusion(a: &Algebra) -> Matrix {
    a.unit_vector()
}

/// Trivial corings of a few algebras and some Sweedler corings.
pub fn coring_catalog(field: Field) -> Result<Vec<CoringSeed>> {
    let k = Arc::new(ground(field));
    let mut out = Vec::new();
    for name in ["k", "k2", "dual2"] {
        let c = catalog(field, name);
        out.push(CoringSeed { name: format!("trivial {name}"), coring: Arc::new(trivial_coring(&c.algebra)?), base: Some(c) });
    }
    let m2 = Arc::new(matrix_algebra(field, 2));
    out.push(CoringSeed { name: "trivial m2".into(), coring: Arc::new(trivial_coring(&m2)?), base: None });
    for name in ["dual2", "k2"] {
        let c = catalog(field, name);
        let coring = sweedler_coring(&c.algebra, &k, &ground_inclusion(&c.algebra))?;
        out.push(CoringSeed { name: format!("sweedler k in {name}"), coring: Arc::new(coring), base: Some(c) });
    }
    let k2 = Arc::new(product(field, 2));
    let o = field.one();
    let z = field.zero();
    let diagonal = Matrix::from_raw(field, 4, 2, vec![o.clone(), z.clone(), z.clone(), z.clone(), z.clone(), z.clone(), z, o]);
    out.push(CoringSeed {
        name: "sweedler k2 in m2".into(),
        coring: Arc::new(sweedler_coring(&m2, &k2, &diagonal)?),
        base: None,
    });
    Ok(out)
}

/// The cell `(M, iota_M)` between trivial corings.
pub fn classical_cell(m: &Arc<Bimodule>) -> Result<EntwinedCell> {
    let c = Arc::new(trivial_coring(m.left())?);
    let d = Arc::new(trivial_coring(m.right())?);
    EntwinedCell::new(d, c, m.clone(), iota(m)?)
}

/// Bicomodules cycling through cofree comodules on random bimodules,
/// cofree comodules on the base, and corings over themselves.
pub fn bicomodule_corpus(field: Field, seed: u64, count: usize) -> Result<Vec<(String, Bicomodule)>> {
    let mut s = Sampler::new(field, seed);
    let seeds = coring_catalog(field)?;
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let seed = &seeds[i % seeds.len()];
        let c = &seed.coring;
        let entry = match (i / seeds.len()) % 3 {
            0 => match &seed.base {
                Some(base) => {
                    let left = s.algebra(2)?;
                    let x = Arc::new(s.bimodule(&left, base, 2)?);
                    let cofree = Comodule::cofree(c, &x)?;
                    (format!("cofree X (x) C, {} over {}", seed.name, left.name), Bicomodule::with_trivial_left(&cofree)?)
                }
                None => {
                    let x = Arc::new(Bimodule::regular(&c.base));
                    (format!("cofree A (x) C, {}", seed.name), Bicomodule::with_trivial_left(&Comodule::cofree(c, &x)?)?)
                }
            },
            1 => {
                let x = Arc::new(Bimodule::regular(&c.base));
                (format!("cofree A (x) C, {}", seed.name), Bicomodule::with_trivial_left(&Comodule::cofree(c, &x)?)?)
            }
            _ => (format!("regular {}", seed.name), Bicomodule::regular(c)?),
        };
        out.push(entry);
    }
    Ok(out)
}

/// A random combination of a basis of 2-cells `f -> g`.
pub fn random_two_cell(s: &mut Sampler, f: &EntwinedCell, g: &EntwinedCell) -> Result<EntwinedTwoCell> {
    let basis = rem_two_cell_basis(f, g)?;
    let dom = f.reduced_domain()?;
    let mut map = BimoduleMap::zero(&dom, &g.module);
    for b in &basis {
        let c: Scalar = s.scalar();
        map = map.add(&b.map.scale(&c))?;
    }
    EntwinedTwoCell::new(f.clone(), g.clone(), map)
}

/// Samples for the axiom checker on REM(Bim). Even-numbered samples are
/// bimodule paths read over trivial corings with lifted random maps; odd ones
/// are paths of identity, regular and cofree cells over a Sweedler coring with
/// random endo-2-cells.
pub fn rem_samples(field: Field, seed: u64, count: usize) -> Result<AxiomSamples<Rem>> {
    let rem = Rem;
    let mut s = Sampler::new(field, seed);
    let sweedler: Vec<CoringSeed> =
        coring_catalog(field)?.into_iter().filter(|c| c.name.starts_with("sweedler") && c.base.is_some()).collect();
    let mut samples = AxiomSamples::default();
    for i in 0..count {
        let (path, layers) = if i % 2 == 0 {
            classical_path(&mut s)?
        } else {
            let seed = s.pick(&sweedler).clone();
            coring_path(&mut s, &seed)?
        };
        samples.objects.push(rem.target(&path[0]));
        let [first, second, third] = layers;
        samples.interchanges.push(([first[0].clone(), first[1].clone()], [second[0].clone(), second[1].clone()]));
        samples.chains.push([first[0].clone(), second[0].clone(), third[0].clone()]);
        samples.whiskers.push(first.to_vec());
        samples.paths.push(path);
    }
    Ok(samples)
}

type Layers = [[EntwinedTwoCell; 3]; 3];

fn layers(rows: Vec<Vec<EntwinedTwoCell>>) -> Result<Layers> {
    let rows: Vec<[EntwinedTwoCell; 3]> =
        rows.into_iter().map(|r| r.try_into().map_err(|_| Error::Generation("layer".into()))).collect::<Result<_>>()?;
    rows.try_into().map_err(|_| Error::Generation("layers".into()))
}

fn classical_path(s: &mut Sampler) -> Result<(Vec<EntwinedCell>, Layers)> {
    let algs = (0..5).map(|_| s.algebra(2)).collect::<Result<Vec<_>>>()?;
    let modules = (0..4).map(|i| s.bimodule(&algs[i], &algs[i + 1], 2).map(Arc::new)).collect::<Result<Vec<_>>>()?;
    let path = modules.iter().map(classical_cell).collect::<Result<Vec<_>>>()?;
    let mut current: Vec<Arc<Bimodule>> = modules[..3].to_vec();
    let mut rows = Vec::new();
    for _ in 0..3 {
        let mut row = Vec::new();
        for m in current.iter_mut() {
            let phi = s.map_out_of(m)?;
            let from = classical_cell(m)?;
            let to = classical_cell(phi.target())?;
            row.push(EntwinedTwoCell::new(from.clone(), to, lift(&from.target, &phi)?)?);
            *m = phi.target().clone();
        }
        rows.push(row);
    }
    Ok((path, layers(rows)?))
}

fn coring_path(s: &mut Sampler, seed: &CoringSeed) -> Result<(Vec<EntwinedCell>, Layers)> {
    let rem = Rem;
    let c = &seed.coring;
    let base = seed.base.as_ref().ok_or_else(|| Error::Generation("coring without catalog base".into()))?;
    let left = s.algebra(2)?;
    let x = Arc::new(s.bimodule(&left, base, 2)?);
    let cofree = cell_from_bicomodule(&Bicomodule::with_trivial_left(&Comodule::cofree(c, &x)?)?)?;
    let regular = cell_from_bicomodule(&Bicomodule::regular(c)?)?;
    let id = rem.id1(c)?;
    let mut path = vec![cofree];
    for _ in 0..3 {
        path.push(if s.coin() { regular.clone() } else { id.clone() });
    }
    let mut rows = Vec::new();
    for _ in 0..3 {
        let row = path[..3].iter().map(|f| random_two_cell(s, f, f)).collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    Ok((path, layers(rows)?))
}

fn random_colinear(s: &mut Sampler, from: &Comodule, to: &Comodule) -> Result<Option<BimoduleMap>> {
    let basis = from.colinear_basis(to)?;
    if basis.is_empty() {
        return Ok(None);
    }
    let mut map = BimoduleMap::zero(&from.carrier, &to.carrier);
    for b in &basis {
        map = map.add(&b.scale(&s.nonzero_scalar()))?;
    }
    Ok(Some(map))
}

/// Samples on both sides plus `count` random colinear maps, alternating
/// sides and walking through ordered pairs of samples.
pub fn cat_samples(
    s: &mut Sampler,
    c_side: Vec<(String, Comodule)>,
    d_side: Vec<(String, Comodule)>,
    count: usize,
) -> Result<CatSamples> {
    let mut out = CatSamples { c_side, d_side, ..Default::default() };
    let pairs = |n: usize| -> Vec<(usize, usize)> { (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect() };
    let (pc, pd) = (pairs(out.c_side.len()), pairs(out.d_side.len()));
    let (mut ic, mut id) = (0, 0);
    let mut stalled = 0;
    while out.c_morphisms.len() + out.d_morphisms.len() < count {
        let on_c = (out.c_morphisms.len() + out.d_morphisms.len()).is_multiple_of(2);
        let (side, ps, idx) = if on_c { (&out.c_side, &pc, &mut ic) } else { (&out.d_side, &pd, &mut id) };
        if ps.is_empty() || stalled > pc.len() + pd.len() {
            return Err(Error::Generation("no colinear maps between the samples".into()));
        }
        let (i, j) = ps[*idx % ps.len()];
        *idx += 1;
        let (from, to) = (&side[i], &side[j]);
        match random_colinear(s, &from.1, &to.1)? {
            Some(map) => {
                stalled = 0;
                let m = SampleMorphism { name: format!("{} -> {}", from.0, to.0), from: from.1.clone(), to: to.1.clone(), map };
                if on_c {
                    out.c_morphisms.push(m)
                } else {
                    out.d_morphisms.push(m)
                }
            }
            None => stalled += 1,
        }
    }
    Ok(out)
}

/// The matrix context read over trivial corings, with the regular module,
/// the free module of rank 2 and the simple module on the M_n side, `k` and
/// `k^2` on the other, and five colinear maps.
pub fn matrix_cat_samples(field: Field, n: usize, seed: u64) -> Result<(WremContext, CatSamples)> {
    let ctx = classical_to_wrem(&matrix_morita(field, n)?)?;
    let (c, d) = (&ctx.f.target, &ctx.f.source);
    let k = d.base.clone();
    let free = |a: &Arc<Algebra>, rank: usize| -> Result<Arc<Bimodule>> {
        let one = modules::right_regular(&k, a);
        let mut acc = one.clone();
        for _ in 1..rank {
            acc = modules::direct_sum(&acc, &one)?;
        }
        Ok(Arc::new(acc))
    };
    let c_side = vec![
        ("A".to_string(), Comodule::trivial(c, &free(&c.base, 1)?)?),
        ("A^2".to_string(), Comodule::trivial(c, &free(&c.base, 2)?)?),
        ("simple".to_string(), Comodule::trivial(c, &Arc::new(modules::rows(&k, &c.base, n)))?),
    ];
    let d_side = vec![
        ("B".to_string(), Comodule::trivial(d, &free(&d.base, 1)?)?),
        ("B^2".to_string(), Comodule::trivial(d, &free(&d.base, 2)?)?),
    ];
    let samples = cat_samples(&mut Sampler::new(field, seed), c_side, d_side, 5)?;
    Ok((ctx, samples))
}

/// Descent data for the Sweedler coring `C` of `k` in `A`. `M` is `k` with `A`
/// acting by a character, over the trivial coring of `k`; `N = A` as a
/// (k, A)-bimodule with `a -> 1 (x) (1 (x) a)` in `N (x)_A C`. The push-outs
/// along them are the descent equivalence between C-comodules and vector spaces.
#[derive(Clone, Debug)]
pub struct Descent {
    pub c: Arc<Coring>,
    pub d: Arc<Coring>,
    pub m: Comodule,
    pub n: Comodule,
}

pub fn sweedler_descent(field: Field, name: &str) -> Result<Descent> {
    let seed = catalog(field, name);
    let a = seed.algebra.clone();
    let k = Arc::new(ground(field));
    let chi = seed.characters.first().ok_or_else(|| Error::Generation(format!("{name} has no character")))?;
    let c = Arc::new(sweedler_coring(&a, &k, &ground_inclusion(&a))?);
    let d = Arc::new(trivial_coring(&k)?);
    let m = Comodule::trivial(&d, &Arc::new(modules::character_module(&a, chi, &k, &[field.one()])))?;
    let n_mod = Arc::new(modules::right_regular(&k, &a));
    let nc = tensor_over(&n_mod, &c.carrier)?;
    let c_proj = &c.carrier.tensor().expect("sweedler carrier is a tensor").projection;
    let nc_proj = &nc.tensor().expect("tensor").projection;
    let one = a.unit_vector();
    let dim = a.dim();
    let mut coaction = Matrix::zeros(field, nc.dim(), dim);
    for j in 0..dim {
        let in_c = c_proj.mul(&one.kron(&Matrix::basis_vector(field, dim, j)));
        let image = nc_proj.mul(&one.kron(&in_c));
        for r in 0..nc.dim() {
            coaction.set(r, j, image.get(r, 0).clone());
        }
    }
    let n = Comodule::new(c.clone(), n_mod.clone(), BimoduleMap::new(n_mod, nc, coaction)?)?;
    Ok(Descent { c, d, m, n })
}
