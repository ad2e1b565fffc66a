use std::sync::Arc;
use std::time::Instant;

use wrmc::bicat::{check_axioms, Bicategory};
use wrmc::bimod::Bim;
use wrmc::coring::{
    cell_from_bicomodule, check_entwined_cell, check_wrem_context, classical_to_wrem, reduction_agreement, rem_hcompose,
    wrem_to_classical,
};
use wrmc::corpus::algebras::small_catalog;
use wrmc::corpus::contexts::wide_samples;
use wrmc::corpus::corings::rem_samples;
use wrmc::corpus::random::bim_samples;
use wrmc::exactla::Field;
use wrmc::pushout::{check_cat_context, reconstruct_context, recover_entwining, PushoutFunctor};
use wrmc::report::{Report, Witness};
use wrmc::wide::{
    check_context, context_from_equivalence, epi_implies_iso, identity_context, multiply_contexts, EpiIsoOutcome, W,
};

use crate::bundle::{self, Bundle, BundleWriter, Named};
use crate::gen::{generate, GenOptions};
use crate::report::{self as rep, ReportBuilder};
use crate::{Cli, CliError, Command, Which};

/// What a command printed and the exit status it asks for.
#[derive(Clone, Debug, PartialEq)]
pub struct Output {
    pub text: String,
    pub code: i32,
}

const DEFAULT_SAMPLES: usize = 10;

fn load(cli: &Cli, path: &std::path::Path) -> Result<Bundle, CliError> {
    let text = std::fs::read_to_string(path)?;
    let b = Bundle::parse(&text)?;
    if let Some(f) = cli.field {
        if f != b.field {
            return Err(CliError::Parse(format!("bundle is over {} but --field {f} was given", b.field)));
        }
    }
    Ok(b)
}

fn selected<'a, T>(named: &'a Named<T>, name: &Option<String>) -> Result<Vec<(&'a str, &'a T)>, CliError> {
    match name {
        Some(n) => Ok(vec![(named.iter().find(|(k, _)| k == n).map(|(k, _)| k).unwrap_or(""), named.get(n)?)]),
        None => Ok(named.iter().collect()),
    }
}

fn emit(path: &Option<std::path::PathBuf>, w: BundleWriter) -> Result<(), CliError> {
    if let Some(p) = path {
        std::fs::write(p, bundle::to_json(&w.finish()))?;
    }
    Ok(())
}

fn equal(r: &mut ReportBuilder, name: String, lhs: &wrmc::bimod::BimoduleMap, rhs: &wrmc::bimod::BimoduleMap) {
    match lhs.diff(rhs, &name) {
        None => r.pass(name, "equal"),
        Some(w) => r.fail(name, &w),
    }
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let start = Instant::now();
    let mut r = ReportBuilder::new();
    let field: Field;
    match &cli.command {
        Command::Gen(g) => {
            let o = GenOptions {
                field: cli.field.unwrap_or(Field::Rational),
                seed: cli.seed.unwrap_or(0),
                n: g.n,
                samples: cli.samples.unwrap_or(DEFAULT_SAMPLES),
                negatives: g.negatives,
            };
            let doc = generate(g.generator, &o)?;
            if cli.verbose {
                eprintln!("gen {}: {} ms", g.generator.name(), start.elapsed().as_millis());
            }
            return Ok(Output { text: bundle::to_json(&doc), code: 0 });
        }
        Command::BicatAxioms(a) => {
            field = cli.field.unwrap_or(Field::Prime(101));
            let (seed, n) = (cli.seed.unwrap_or(0), cli.samples.unwrap_or(DEFAULT_SAMPLES));
            let lib = |e: wrmc::Error| CliError::Generation(e.to_string());
            if matches!(a.which, Which::Bim | Which::All) {
                r.extend("Bim: ", &check_axioms(&Bim::new(field), &bim_samples(field, seed, n, a.max_dim).map_err(lib)?));
            }
            if matches!(a.which, Which::W | Which::All) {
                r.extend("W(Bim): ", &check_axioms(&W::new(Bim::new(field)), &wide_samples(field, seed, n).map_err(lib)?));
            }
            if matches!(a.which, Which::Rem | Which::All) {
                r.extend("REM: ", &check_axioms(&wrmc::coring::Rem, &rem_samples(field, seed, n).map_err(lib)?));
            }
        }
        Command::IdentityContext(a) => {
            let algebras: Vec<(String, Arc<wrmc::algebra::Algebra>)> = match &a.bundle {
                Some(p) => {
                    let b = load(cli, p)?;
                    field = b.field;
                    selected(&b.algebras, &a.name)?.into_iter().map(|(n, v)| (n.to_string(), v.clone())).collect()
                }
                None => {
                    field = cli.field.unwrap_or(Field::Rational);
                    small_catalog(field).into_iter().map(|c| (c.name, c.algebra)).collect()
                }
            };
            let bim = Bim::new(field);
            let mut w = BundleWriter::new(field);
            for (name, alg) in &algebras {
                match identity_context(&bim, alg) {
                    Ok(c) => {
                        r.run(&format!("id {name}: "), || check_context(&bim, &c));
                        w.context(&format!("id {name}"), &c)?;
                    }
                    Err(e) => r.error(format!("id {name}"), e.to_string()),
                }
            }
            emit(&a.emit, w)?;
        }
        Command::Validate(a) => {
            let b = load(cli, &a.bundle)?;
            field = b.field;
            for (n, x) in selected(&b.algebras, &a.name).unwrap_or_default() {
                r.extend(&format!("algebra {n}: "), &x.validate());
            }
            for (n, x) in selected(&b.bimodules, &a.name).unwrap_or_default() {
                r.extend(&format!("bimodule {n}: "), &x.validate());
            }
            for (n, x) in selected(&b.maps, &a.name).unwrap_or_default() {
                let mut one = Report::new();
                one.record("bimodule map", Ok(x.linearity_defect()));
                r.extend(&format!("map {n}: "), &one);
            }
            for (n, x) in selected(&b.corings, &a.name).unwrap_or_default() {
                r.extend(&format!("coring {n}: "), &x.validate());
            }
            for (n, x) in selected(&b.comodules, &a.name).unwrap_or_default() {
                r.extend(&format!("comodule {n}: "), &x.validate());
            }
            for (n, x) in selected(&b.bicomodules, &a.name).unwrap_or_default() {
                r.extend(&format!("bicomodule {n}: "), &x.validate());
            }
            for (n, x) in selected(&b.cells, &a.name).unwrap_or_default() {
                r.run(&format!("cell {n}: "), || check_entwined_cell(x));
            }
        }
        Command::CheckContext(a) => {
            let b = load(cli, &a.bundle)?;
            field = b.field;
            let bim = Bim::new(field);
            for (n, c) in selected(&b.contexts, &a.name)? {
                r.run(&format!("{n}: "), || check_context(&bim, c));
            }
        }
        Command::MulContexts(a) => {
            let b = load(cli, &a.bundle)?;
            field = b.field;
            let bim = Bim::new(field);
            let pairs: Vec<(String, String)> = match (&a.outer, &a.inner) {
                (Some(o), Some(i)) => vec![(o.clone(), i.clone())],
                _ => {
                    let named: Vec<_> = b
                        .contexts
                        .iter()
                        .filter_map(|(n, _)| n.strip_suffix(".outer"))
                        .filter(|p| b.contexts.get(&format!("{p}.inner")).is_ok())
                        .map(|p| (format!("{p}.outer"), format!("{p}.inner")))
                        .collect();
                    if named.is_empty() {
                        let all: Vec<_> = b.contexts.iter().collect();
                        let mut out = Vec::new();
                        for (o, oc) in &all {
                            for (i, ic) in &all {
                                if bim.source(&oc.f) == bim.target(&ic.f) {
                                    out.push((o.to_string(), i.to_string()));
                                }
                            }
                        }
                        out
                    } else {
                        named
                    }
                }
            };
            let mut w = BundleWriter::new(field);
            for (o, i) in pairs {
                let (oc, ic) = (b.contexts.get(&o)?, b.contexts.get(&i)?);
                let name = format!("{o} * {i}");
                match multiply_contexts(&bim, oc, ic) {
                    Ok(p) => {
                        r.run(&format!("{name}: "), || check_context(&bim, &p));
                        w.context(&name, &p)?;
                    }
                    Err(e) => r.error(name, e.to_string()),
                }
            }
            emit(&a.emit, w)?;
        }
        Command::CheckMorphism(a) => {
            let b = load(cli, &a.bundle)?;
            field = b.field;
            let wb = W::new(Bim::new(field));
            for (n, m) in selected(&b.morphisms, &a.name)? {
                r.run(&format!("{n}: "), || wb.check(m));
            }
        }
        Command::FromEquivalence(a) => {
            let b = load(cli, &a.bundle)?;
            field = b.field;
            let bim = Bim::new(field);
            let mut w = BundleWriter::new(field);
            for (n, e) in selected(&b.equivalences, &a.name)? {
                match context_from_equivalence(&bim, &e.f, &e.g, &e.eta, &e.theta) {
                    Ok(sol) => {
                        r.pass(format!("{n}: solution space dimension"), sol.solution_dim.to_string());
                        r.run(&format!("{n}: "), || check_context(&bim, &sol.context));
                        if let Ok(known) = b.contexts.get(n) {
                            equal(&mut r, format!("{n}: rho matches context {n}"), &sol.context.rho, &known.rho);
                        }
                        w.context(n, &sol.context)?;
                    }
                    Err(e) => r.error(n.to_string(), e.to_string()),
                }
            }
            emit(&a.emit, w)?;
        }
        Command::EpiIso(a) => {
            let b = load(cli, &a.bundle)?;
            field = b.field;
            let bim = Bim::new(field);
            for (n, c) in selected(&b.contexts, &a.name)? {
                match epi_implies_iso(&bim, c) {
                    Ok(EpiIsoOutcome::Invertible { report, .. }) => r.extend(&format!("{n}: "), &report),
                    Ok(EpiIsoOutcome::Skipped(why)) => r.pass(format!("{n}: epi implies iso"), format!("skipped: {why}")),
                    Err(e) => r.error(n.to_string(), e.to_string()),
                }
            }
        }
        Command::CheckCoring(a) => {
            let b = load(cli, &a.bundle)?;
            field = b.field;
            for (n, c) in selected(&b.corings, &a.name)? {
                r.extend(&format!("{n}: "), &c.validate());
            }
        }
        Command::CheckCell(a) => {
            let b = load(cli, &a.bundle)?;
            field = b.field;
            for (n, c) in selected(&b.cells, &a.name).unwrap_or_default() {
                r.run(&format!("cell {n}: "), || check_entwined_cell(c));
            }
            for (n, x) in selected(&b.bicomodules, &a.name).unwrap_or_default() {
                r.run(&format!("bicomodule {n}: "), || check_entwined_cell(&cell_from_bicomodule(x)?));
            }
        }
        Command::RemCompose(a) => {
            let b = load(cli, &a.bundle)?;
            field = b.field;
            let cells: Vec<_> = selected(&b.cells, &a.name)?;
            for (m, mc) in &cells {
                for (k, kc) in b.cells.iter() {
                    if mc.source == kc.target {
                        r.run(&format!("{m} . {k}: "), || check_entwined_cell(&rem_hcompose(mc, kc)?));
                    }
                }
            }
        }
        Command::CheckWrem(a) => {
            let b = load(cli, &a.bundle)?;
            field = b.field;
            for (n, c) in selected(&b.wrem_contexts, &a.name)? {
                r.run(&format!("{n}: "), || check_wrem_context(c));
            }
        }
        Command::ClassicalRoundtrip(a) => {
            let b = load(cli, &a.bundle)?;
            field = b.field;
            let bim = Bim::new(field);
            for (n, c) in selected(&b.contexts, &a.name)? {
                r.run(&format!("{n}: classical: "), || check_context(&bim, c));
                r.run(&format!("{n}: reduced: "), || check_wrem_context(&classical_to_wrem(c)?));
                r.run(&format!("{n}: agreement: "), || reduction_agreement(c));
                match classical_to_wrem(c).and_then(|w| wrem_to_classical(&w)) {
                    Ok(back) => {
                        equal(&mut r, format!("{n}: round trip eta"), &back.eta, &c.eta);
                        equal(&mut r, format!("{n}: round trip rho"), &back.rho, &c.rho);
                    }
                    Err(e) => r.error(format!("{n}: round trip"), e.to_string()),
                }
            }
        }
        Command::Pushout(a) => {
            let b = load(cli, &a.bundle)?;
            field = b.field;
            let mut w = BundleWriter::new(field);
            for (n, cell) in selected(&b.cells, &a.name)? {
                let p = PushoutFunctor::new(cell.clone());
                match recover_entwining(&p) {
                    Ok(m) => equal(&mut r, format!("{n}: entwining recovered"), &m, &cell.entwining),
                    Err(e) => r.error(format!("{n}: entwining recovered"), e.to_string()),
                }
                for (x, comodule) in b.comodules.iter().filter(|(_, x)| x.coring == cell.target) {
                    match p.apply(comodule) {
                        Ok(pushed) => {
                            r.extend(&format!("{n} on {x}: "), &pushed.validate());
                            w.comodule(&format!("{n}({x})"), &pushed)?;
                        }
                        Err(e) => r.error(format!("{n} on {x}"), e.to_string()),
                    }
                }
            }
            emit(&a.emit, w)?;
        }
        Command::CheckCatContext(a) => {
            let b = load(cli, &a.bundle)?;
            field = b.field;
            for (n, set) in selected(&b.sample_sets, &a.name)? {
                let ctx = b.wrem_contexts.get(&set.context)?;
                r.run(&format!("{n}: "), || check_cat_context(ctx, &set.samples));
            }
        }
        Command::Reconstruct(a) => {
            let b = load(cli, &a.bundle)?;
            field = b.field;
            let mut w = BundleWriter::new(field);
            for (n, x) in selected(&b.reconstructions, &a.name)? {
                match reconstruct_context(&x.m, &x.n, &x.eta_tilde, &x.rho_tilde) {
                    Ok(rec) => {
                        r.extend(&format!("{n}: "), &rec.report);
                        if let Ok(known) = b.wrem_contexts.get(n) {
                            equal(&mut r, format!("{n}: eta matches context {n}"), &rec.context.eta.map, &known.eta.map);
                            equal(&mut r, format!("{n}: rho matches context {n}"), &rec.context.rho.map, &known.rho.map);
                            if rec.context.f != known.f || rec.context.g != known.g {
                                r.fail(format!("{n}: cells match context {n}"), &Witness::new("cells", "reconstructed", "given"));
                            }
                        }
                        w.wrem_context(n, &rec.context)?;
                    }
                    Err(e) => r.error(n.to_string(), e.to_string()),
                }
            }
            emit(&a.emit, w)?;
        }
    }
    let mut doc = r.finish(cli.command.name(), &field.descriptor(), cli.seed);
    if cli.verbose {
        let ms = start.elapsed().as_millis() as u64;
        doc.timing_ms = Some(ms);
        eprintln!("{}: {} checks in {ms} ms", cli.command.name(), doc.summary.total);
    }
    Ok(Output { code: doc.exit_code(), text: rep::to_json(&doc) })
}
