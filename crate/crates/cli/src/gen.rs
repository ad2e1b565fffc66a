//! Corpus generators written out as bundles.

use std::sync::Arc;

use clap::ValueEnum;

use wrmc::bimod::Bim;
use wrmc::coring::{
    cell_from_bicomodule, cell_from_comodule, rem_identity_cell, wrem_context_space, Bicomodule, Comodule, WremContext,
};
use wrmc::corpus::contexts::{context_pairs, matrix_morita, matrix_theta, random_corner};
use wrmc::corpus::corings::{bicomodule_corpus, cat_samples, coring_catalog, matrix_cat_samples, sweedler_descent};
use wrmc::corpus::random::Sampler;
use wrmc::exactla::Field;
use wrmc::pushout::{eta_tilde, rho_tilde, CatSamples};
use wrmc::wide::{identity_morphism, TypedMorphism, WideContext};

use crate::bundle::{BundleDoc, BundleWriter, Equivalence, ReconstructionInput};
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Generator {
    /// The matrix context between M_n(k) and k, its equivalence data and identity morphism.
    MatrixMorita,
    /// Random corner contexts.
    Corners,
    /// Pairs of contexts whose product is defined.
    ContextPairs,
    /// Trivial and Sweedler corings with regular comodules, bicomodules and identity cells.
    Corings,
    /// Random bicomodules and their cells.
    Bicomodules,
    /// The matrix context over trivial corings with comodule samples and reconstruction data.
    CatSamples,
    /// Descent contexts over Sweedler corings with samples and reconstruction data.
    Descent,
}

impl Generator {
    pub fn name(self) -> &'static str {
        match self {
            Generator::MatrixMorita => "matrix-morita",
            Generator::Corners => "corners",
            Generator::ContextPairs => "context-pairs",
            Generator::Corings => "corings",
            Generator::Bicomodules => "bicomodules",
            Generator::CatSamples => "cat-samples",
            Generator::Descent => "descent",
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct GenOptions {
    pub field: Field,
    pub seed: u64,
    pub n: usize,
    pub samples: usize,
    /// Also emit deliberately broken copies, named `<name>.expected-fail`.
    pub negatives: bool,
}

fn lib(e: wrmc::Error) -> CliError {
    CliError::Generation(e.to_string())
}

pub fn generate(kind: Generator, o: &GenOptions) -> Result<BundleDoc, CliError> {
    let field = o.field;
    let two = field.from_i64(2);
    let mut w = BundleWriter::new(field);
    match kind {
        Generator::MatrixMorita => {
            let c = matrix_morita(field, o.n).map_err(lib)?;
            w.context("matrix", &c)?;
            let theta = matrix_theta(&c).map_err(lib)?;
            w.equivalence("matrix", &Equivalence { f: c.f.clone(), g: c.g.clone(), eta: c.eta.clone(), theta })?;
            let id = identity_morphism(&Bim::new(field), &c).map_err(lib)?;
            w.morphism("matrix.id", &TypedMorphism::new(id, c.clone(), c.clone()))?;
            if o.negatives {
                w.context("matrix.expected-fail", &WideContext { eta: c.eta.scale(&two), ..c })?;
            }
        }
        Generator::Corners => {
            let mut s = Sampler::new(field, o.seed);
            for i in 0..o.samples {
                let (c, _) = random_corner(&mut s).map_err(lib)?;
                w.context(&format!("corner{i}"), &c)?;
                if o.negatives {
                    w.context(&format!("corner{i}.expected-fail"), &WideContext { rho: c.rho.scale(&two), ..c })?;
                }
            }
        }
        Generator::ContextPairs => {
            for (i, (outer, inner)) in context_pairs(field, o.seed, o.samples).map_err(lib)?.iter().enumerate() {
                w.context(&format!("pair{i}.outer"), outer)?;
                w.context(&format!("pair{i}.inner"), inner)?;
            }
        }
        Generator::Corings => {
            for seed in coring_catalog(field).map_err(lib)? {
                let c = &seed.coring;
                w.coring(&seed.name, c)?;
                w.comodule(&format!("{}.regular", seed.name), &Comodule::regular(c).map_err(lib)?)?;
                let b = Bicomodule::regular(c).map_err(lib)?;
                w.bicomodule(&format!("{}.regular", seed.name), &b)?;
                w.cell(&format!("{}.id", seed.name), &rem_identity_cell(c).map_err(lib)?)?;
                w.cell(&format!("{}.regular", seed.name), &cell_from_bicomodule(&b).map_err(lib)?)?;
                if o.negatives {
                    w.coring(&format!("{}.expected-fail", seed.name), &Arc::new(c.with_scaled_delta(&two)))?;
                }
            }
        }
        Generator::Bicomodules => {
            for (name, b) in bicomodule_corpus(field, o.seed, o.samples).map_err(lib)? {
                let name = w.bicomodule(&name, &b)?;
                w.cell(&name, &cell_from_bicomodule(&b).map_err(lib)?)?;
            }
        }
        Generator::CatSamples => {
            let (ctx, samples) = matrix_cat_samples(field, o.n, o.seed).map_err(lib)?;
            let m = Comodule::trivial(&ctx.f.source, &ctx.f.module).map_err(lib)?;
            let n = Comodule::trivial(&ctx.f.target, &ctx.g.module).map_err(lib)?;
            write_context_data(&mut w, "matrix", &ctx, &samples, m, n)?;
            if o.negatives {
                let mut bad = ctx.clone();
                bad.eta.map = bad.eta.map.scale(&two);
                let name = w.wrem_context("matrix.expected-fail", &bad)?;
                w.sample_set(&name, &name, &samples)?;
            }
        }
        Generator::Descent => {
            let mut s = Sampler::new(field, o.seed);
            for algebra in ["dual2", "k2"] {
                let data = sweedler_descent(field, algebra).map_err(lib)?;
                let f = cell_from_comodule(&data.m, &data.c).map_err(lib)?;
                let g = cell_from_comodule(&data.n, &data.d).map_err(lib)?;
                let space = wrem_context_space(&f, &g).map_err(lib)?;
                let mut ctx = space.sample(&mut s).map_err(lib)?;
                while ctx.eta.map.is_zero() {
                    ctx = space.sample(&mut s).map_err(lib)?;
                }
                let regular = |c| Comodule::regular(c).map_err(lib);
                let c_side = vec![("C".to_string(), regular(&data.c)?), ("N".to_string(), data.n.clone())];
                let d_side = vec![("D".to_string(), regular(&data.d)?), ("M".to_string(), data.m.clone())];
                // maps only run between comodules over the same left algebra, so
                // morphisms come from each side's regular comodule alone
                let mut samples = cat_samples(&mut s, c_side[..1].to_vec(), d_side[..1].to_vec(), 4).map_err(lib)?;
                samples.c_side = c_side;
                samples.d_side = d_side;
                write_context_data(&mut w, &format!("descent {algebra}"), &ctx, &samples, data.m, data.n)?;
            }
        }
    }
    Ok(w.finish())
}

fn write_context_data(
    w: &mut BundleWriter,
    name: &str,
    ctx: &WremContext,
    samples: &CatSamples,
    m: Comodule,
    n: Comodule,
) -> Result<(), CliError> {
    let name = w.wrem_context(name, ctx)?;
    w.sample_set(&name, &name, samples)?;
    let eta_c = eta_tilde(ctx, &Comodule::regular(&ctx.f.target).map_err(lib)?).map_err(lib)?;
    let rho_d = rho_tilde(ctx, &Comodule::regular(&ctx.f.source).map_err(lib)?).map_err(lib)?;
    w.reconstruction(&name, &ReconstructionInput { m, n, eta_tilde: eta_c, rho_tilde: rho_d })?;
    Ok(())
}
