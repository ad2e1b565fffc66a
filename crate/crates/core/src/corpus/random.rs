//! Seeded random algebras, bimodules, and bimodule maps.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::algebras::{small_catalog, CatalogAlgebra};
use super::modules;
use crate::algebra::Algebra;
use crate::bicat::AxiomSamples;
use crate::bimod::{hom_basis, map_from_coords, Bim, Bimodule, BimoduleMap};
use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix, Scalar};

const ATTEMPTS: usize = 64;

/// Deterministic source of random objects over one field.
pub struct Sampler {
    pub field: Field,
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(field: Field, seed: u64) -> Self {
        Sampler { field, rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn coin(&mut self) -> bool {
        self.rng.gen_bool(0.5)
    }

    /// Small integers over Q keep the arithmetic readable; uniform residues mod p.
    pub fn scalar(&mut self) -> Scalar {
        match self.field {
            Field::Rational => self.field.from_i64(self.rng.gen_range(-3..=3)),
            Field::Prime(p) => self.field.from_i64(self.rng.gen_range(0..p) as i64),
        }
    }

    pub fn nonzero_scalar(&mut self) -> Scalar {
        loop {
            let s = self.scalar();
            if !s.is_zero() {
                return s;
            }
        }
    }

    pub fn matrix(&mut self, rows: usize, cols: usize) -> Matrix {
        let data = (0..rows * cols).map(|_| self.scalar()).collect();
        Matrix::from_raw(self.field, rows, cols, data)
    }

    pub fn invertible(&mut self, n: usize) -> Result<Matrix> {
        for _ in 0..ATTEMPTS {
            let m = self.matrix(n, n);
            if m.rank()? == n {
                return Ok(m);
            }
        }
        Err(Error::Generation(format!("no invertible {n}x{n} matrix found")))
    }

    pub fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        &items[self.below(items.len())]
    }

    /// A catalog algebra of dimension at most `max_dim`, in a random basis.
    pub fn algebra(&mut self, max_dim: usize) -> Result<CatalogAlgebra> {
        let choices: Vec<CatalogAlgebra> = small_catalog(self.field).into_iter().filter(|c| c.algebra.dim() <= max_dim).collect();
        let base = self.pick(&choices).clone();
        self.rebase_algebra(&base)
    }

    /// The algebra of the given dimension from the catalog, in a random basis.
    pub fn algebra_of_dim(&mut self, dim: usize) -> Result<CatalogAlgebra> {
        let choices: Vec<CatalogAlgebra> = small_catalog(self.field).into_iter().filter(|c| c.algebra.dim() == dim).collect();
        if choices.is_empty() {
            return Err(Error::Generation(format!("no catalog algebra of dimension {dim}")));
        }
        let base = self.pick(&choices).clone();
        self.rebase_algebra(&base)
    }

    /// Same algebra in the basis `e'_i = sum_k P[k][i] e_k`.
    pub fn rebase_algebra(&mut self, c: &CatalogAlgebra) -> Result<CatalogAlgebra> {
        let a = &c.algebra;
        let n = a.dim();
        let p = self.invertible(n)?;
        let pinv = p.inverse()?;
        let f = self.field;
        let col = |i: usize| p.col(i).entries().to_vec();
        let mut structure = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                let prod = Matrix::column(f, a.multiply(&col(i), &col(j))?);
                let coords = pinv.mul(&prod);
                structure.extend(coords.entries().iter().cloned());
            }
        }
        let unit = pinv.mul(&a.unit_vector()).entries().to_vec();
        let algebra = Arc::new(Algebra::new(f, n, structure, unit)?);
        let characters = c
            .characters
            .iter()
            .map(|ch| {
                let row = Matrix::from_raw(f, 1, n, ch.clone());
                row.mul(&p).entries().to_vec()
            })
            .collect();
        let columns = c.columns.as_ref().map(|mats| {
            (0..n)
                .map(|i| {
                    let mut acc = Matrix::zeros(f, mats[0].rows(), mats[0].cols());
                    for (k, m) in mats.iter().enumerate() {
                        acc = acc.add(&m.scale(p.get(k, i)));
                    }
                    acc
                })
                .collect()
        });
        Ok(CatalogAlgebra { name: c.name.clone(), algebra, characters, columns })
    }

    /// A random (A, B)-bimodule of dimension `1..=max_dim`, assembled from
    /// valid pieces and then expressed in a random basis.
    pub fn bimodule(&mut self, a: &CatalogAlgebra, b: &CatalogAlgebra, max_dim: usize) -> Result<Bimodule> {
        let target = 1 + self.below(max_dim);
        let mut acc: Option<Bimodule> = None;
        while acc.as_ref().map_or(0, Bimodule::dim) < target {
            let room = target - acc.as_ref().map_or(0, Bimodule::dim);
            let pieces = self.pieces(a, b, room)?;
            let piece = self.pick(&pieces).clone();
            acc = Some(match acc {
                None => piece,
                Some(m) => modules::direct_sum(&m, &piece)?,
            });
        }
        let m = acc.expect("nonempty");
        let p = self.invertible(m.dim())?;
        let m = modules::change_basis(&m, &p)?;
        let report = m.validate();
        if !report.ok() {
            return Err(Error::Generation(format!("assembled bimodule is invalid: {:?}", report.failing_names())));
        }
        Ok(m)
    }

    fn pieces(&mut self, a: &CatalogAlgebra, b: &CatalogAlgebra, room: usize) -> Result<Vec<Bimodule>> {
        let (aa, ba) = (&a.algebra, &b.algebra);
        let mut out = Vec::new();
        for chi in &a.characters {
            for psi in &b.characters {
                out.push(modules::character_module(aa, chi, ba, psi));
            }
        }
        if aa == ba && aa.dim() <= room {
            out.push(Bimodule::regular(aa));
        }
        if ba.dim() == 1 {
            if aa.dim() <= room {
                out.push(modules::left_regular(aa, ba));
            }
            if let Some(cols) = &a.columns {
                if cols[0].rows() <= room {
                    out.push(modules::from_left_representation(aa, ba, cols.clone())?);
                }
            }
        }
        if aa.dim() == 1 {
            if ba.dim() <= room {
                out.push(modules::right_regular(aa, ba));
            }
            if let Some(cols) = &b.columns {
                if cols[0].rows() <= room {
                    out.push(modules::from_right_representation(aa, ba, cols)?);
                }
            }
        }
        Ok(out)
    }

    /// A random element of `Hom(m, n)`.
    pub fn map(&mut self, m: &Arc<Bimodule>, n: &Arc<Bimodule>) -> Result<BimoduleMap> {
        let basis = hom_basis(m, n)?;
        let coeffs: Vec<Scalar> = basis.iter().map(|_| self.scalar()).collect();
        Ok(map_from_coords(m, n, &basis, &coeffs))
    }

    /// A bimodule isomorphic to `m` in another basis, with a random map into it.
    pub fn map_out_of(&mut self, m: &Arc<Bimodule>) -> Result<BimoduleMap> {
        let p = self.invertible(m.dim())?;
        let other = Arc::new(modules::change_basis(m, &p)?);
        self.map(m, &other)
    }
}

/// Random composable samples for the axiom checker on bimodules: `count`
/// paths of four bimodules, with as many whiskering triples, interchange
/// squares, and vertical chains.
pub fn bim_samples(field: Field, seed: u64, count: usize, max_dim: usize) -> Result<AxiomSamples<Bim>> {
    let mut s = Sampler::new(field, seed);
    let mut samples = AxiomSamples::default();
    for _ in 0..count {
        let algs = (0..5).map(|_| s.algebra(max_dim)).collect::<Result<Vec<_>>>()?;
        let path = (0..4).map(|i| s.bimodule(&algs[i], &algs[i + 1], max_dim).map(Arc::new)).collect::<Result<Vec<_>>>()?;
        samples.objects.push(algs[0].algebra.clone());
        let cells = path[..3].iter().map(|f| s.map_out_of(f)).collect::<Result<Vec<_>>>()?;
        let upper = [s.map_out_of(cells[0].target())?, s.map_out_of(cells[1].target())?];
        samples.interchanges.push(([cells[0].clone(), cells[1].clone()], upper.clone()));
        let third = s.map_out_of(upper[0].target())?;
        samples.chains.push([cells[0].clone(), upper[0].clone(), third]);
        samples.whiskers.push(cells);
        samples.paths.push(path);
    }
    Ok(samples)
}
