//! The acceptance suite: one line per criterion, nonzero exit if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::time::Instant;

use clap::{Parser, ValueEnum};

use wrmc::bicat::{check_axioms, Bicategory};
use wrmc::bimod::{tensor_over, Bim, Bimodule, BimoduleMap};
use wrmc::coring::{
    cell_from_bicomodule, cell_from_comodule, check_entwined_cell, check_wrem_context, classical_to_wrem, reduction_agreement,
    wrem_context_space, Comodule, WremContext,
};
use wrmc::corpus::algebras::small_catalog;
use wrmc::corpus::contexts::{context_pairs, matrix_morita, matrix_theta, random_corner, wide_samples};
use wrmc::corpus::corings::{bicomodule_corpus, coring_catalog, matrix_cat_samples, sweedler_descent};
use wrmc::corpus::random::{bim_samples, Sampler};
use wrmc::exactla::{Field, Matrix};
use wrmc::pushout::{check_cat_context, eta_tilde, reconstruct_context, rho_tilde};
use wrmc::report::Report;
use wrmc::wide::{
    check_context, context_from_equivalence, epi_implies_iso, identity_context, multiply_contexts, EpiIsoOutcome, WideContext, W,
};
use wrmc_cli::bundle::{self, Bundle};
use wrmc_cli::gen::{generate, GenOptions, Generator};
use wrmc_cli::{run, Cli};

const GF101: Field = Field::Prime(101);
const FIELDS: [Field; 2] = [Field::Rational, Field::Prime(101)];

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ok_report(what: &str, r: &Report) -> Result<(), String> {
    ensure(r.ok(), || format!("{what}: {:?}", r.failing_names()))
}

fn lib<T>(r: wrmc::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn bim_coherence() -> Outcome {
    let start = Instant::now();
    let samples = lib(bim_samples(GF101, 101, 100, 3))?;
    ensure(samples.paths.len() >= 100, || format!("only {} tuples", samples.paths.len()))?;
    let report = check_axioms(&Bim::new(GF101), &samples);
    ok_report("bim axioms", &report)?;
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 60.0, || format!("took {secs:.1}s"))?;
    Ok(format!("{} tuples, {} checks in {secs:.1}s", samples.paths.len(), report.len()))
}

fn product_closure() -> Outcome {
    let bim = Bim::new(GF101);
    let pairs = lib(context_pairs(GF101, 3, 50))?;
    ensure(pairs.len() >= 50, || format!("only {} pairs", pairs.len()))?;
    for (i, (outer, inner)) in pairs.iter().enumerate() {
        let p = lib(multiply_contexts(&bim, outer, inner))?;
        ok_report(&format!("product {i}"), &lib(check_context(&bim, &p))?)?;
    }
    Ok(format!("{} products pass", pairs.len()))
}

fn wide_axioms() -> Outcome {
    let w = W::new(Bim::new(GF101));
    let samples = lib(wide_samples(GF101, 31, 30))?;
    ensure(samples.paths.len() >= 30, || format!("only {} tuples", samples.paths.len()))?;
    let report = check_axioms(&w, &samples);
    ok_report("W axioms", &report)?;
    Ok(format!("{} tuples, {} checks", samples.paths.len(), report.len()))
}

/// `dim M (x)_A N` from the relations `m a (x) n - m (x) a n`, assembled with
/// Kronecker products.
fn tensor_dim_oracle(m: &Bimodule, n: &Bimodule) -> usize {
    let field = m.field();
    let (dm, dn) = (m.dim(), n.dim());
    let blocks: Vec<Matrix> = m
        .right_action()
        .iter()
        .zip(n.left_action())
        .map(|(r, l)| r.kron(&Matrix::identity(field, dn)).sub(&Matrix::identity(field, dm).kron(l)))
        .collect();
    let refs: Vec<&Matrix> = blocks.iter().collect();
    dm * dn - Matrix::hstack(&refs).rank().unwrap()
}

fn two_sided(a: &BimoduleMap, inv: &BimoduleMap) -> bool {
    a.compose(inv).ok() == Some(BimoduleMap::identity(a.target()))
        && inv.compose(a).ok() == Some(BimoduleMap::identity(a.source()))
}

fn matrix_morita_checks() -> Outcome {
    for field in FIELDS {
        let bim = Bim::new(field);
        let c = lib(matrix_morita(field, 2))?;
        ok_report("matrix context", &lib(check_context(&bim, &c))?)?;
        let fg = lib(tensor_over(&c.f, &c.g))?.dim();
        let gf = lib(tensor_over(&c.g, &c.f))?.dim();
        let oracle = (tensor_dim_oracle(&c.f, &c.g), tensor_dim_oracle(&c.g, &c.f));
        ensure((fg, gf) == (4, 1) && oracle == (4, 1), || format!("dims {fg}/{gf}, oracle {oracle:?} over {field}"))?;
        ensure(c.eta.is_surjective() && c.rho.is_surjective(), || "eta or rho not surjective".into())?;
        match lib(epi_implies_iso(&bim, &c))? {
            EpiIsoOutcome::Invertible { eta_inv, rho_inv, report } => {
                ok_report("inverse checks", &report)?;
                ensure(two_sided(&c.eta, &eta_inv) && two_sided(&c.rho, &rho_inv), || "inverses are not two-sided".into())?;
            }
            EpiIsoOutcome::Skipped(why) => return Err(format!("skipped: {why}")),
        }
    }
    Ok("dims 4/1 match the relation-rank oracle, inverses exact in Q and GF(101)".into())
}

fn from_equivalence() -> Outcome {
    let mut cases = 0;
    for field in FIELDS {
        let bim = Bim::new(field);
        for a in small_catalog(field) {
            let i = lib(bim.id1(&a.algebra))?;
            let eta = lib(bim.right_unitor(&i))?;
            let theta = lib(bim.left_unitor_inv(&i))?;
            let sol = lib(context_from_equivalence(&bim, &i, &i, &eta, &theta))?;
            ensure(sol.solution_dim == 1, || format!("{}: solution dim {}", a.name, sol.solution_dim))?;
            ensure(sol.context.rho == lib(bim.left_unitor(&i))?, || format!("{}: rho is not the left unitor", a.name))?;
            cases += 1;
        }
        let c = lib(matrix_morita(field, 2))?;
        let theta = lib(matrix_theta(&c))?;
        let sol = lib(context_from_equivalence(&bim, &c.f, &c.g, &c.eta, &theta))?;
        ensure(sol.solution_dim == 1, || format!("matrix: solution dim {}", sol.solution_dim))?;
        ensure(sol.context.rho == c.rho, || "matrix: rho differs from the corpus".into())?;
        cases += 1;
    }
    Ok(format!("{cases} equivalences, unique rho each time"))
}

fn coring_suite() -> Outcome {
    let mut names = Vec::new();
    for field in FIELDS {
        let two = field.from_i64(2);
        let catalog = lib(coring_catalog(field))?;
        for expected in ["trivial k", "trivial m2", "trivial dual2", "sweedler k in dual2"] {
            ensure(catalog.iter().any(|s| s.name == expected), || format!("catalog lacks {expected}"))?;
        }
        for seed in &catalog {
            ok_report(&seed.name, &seed.coring.validate())?;
            for (what, bad) in
                [("scaled delta", seed.coring.with_scaled_delta(&two)), ("scaled counit", seed.coring.with_scaled_counit(&two))]
            {
                let r = bad.validate();
                ensure(!r.ok(), || format!("{} with {what} passes", seed.name))?;
                ensure(r.failures().all(|f| f.witness().is_some_and(|w| w.coordinate.is_some())), || {
                    format!("{} with {what}: failure without a coordinate witness", seed.name)
                })?;
            }
            if field == GF101 {
                names.push(seed.name.clone());
            }
        }
    }
    Ok(format!("{} corings valid, all corruptions caught: {}", names.len(), names.join(", ")))
}

fn reduction() -> Outcome {
    let mut count = 0;
    for field in FIELDS {
        let bim = Bim::new(field);
        let mut cases = vec![lib(matrix_morita(field, 2))?];
        for a in small_catalog(field) {
            cases.push(lib(identity_context(&bim, &a.algebra))?);
        }
        let mut s = Sampler::new(field, 20);
        for _ in 0..20 {
            cases.push(lib(random_corner(&mut s))?.0);
        }
        let broken: Vec<WideContext<Bim>> =
            cases.iter().map(|c| WideContext { eta: c.eta.scale(&field.from_i64(2)), ..c.clone() }).collect();
        let good = cases.len();
        cases.extend(broken);
        for (i, c) in cases.iter().enumerate() {
            let classical = lib(check_context(&bim, c))?;
            let reduced = lib(check_wrem_context(&lib(classical_to_wrem(c))?))?;
            ensure(classical.ok() == (i < good), || format!("case {i}: classical verdict {}", classical.ok()))?;
            ensure(classical.ok() == reduced.ok(), || format!("case {i}: verdicts differ"))?;
            ok_report(&format!("case {i} witnesses"), &lib(reduction_agreement(c))?)?;
        }
        count += cases.len();
    }
    Ok(format!("{count} cases agree, half of them corrupted"))
}

fn bicomodule_cells() -> Outcome {
    let mut count = 0;
    for field in FIELDS {
        let corpus = lib(bicomodule_corpus(field, 8, 24))?;
        ensure(corpus.len() >= 20, || format!("only {} bicomodules", corpus.len()))?;
        for (name, b) in &corpus {
            ok_report(name, &lib(check_entwined_cell(&lib(cell_from_bicomodule(b))?))?)?;
        }
        count += corpus.len();
    }
    Ok(format!("{count} cells pass"))
}

fn cat_context() -> Outcome {
    let mut checks = 0;
    for field in FIELDS {
        let (ctx, samples) = lib(matrix_cat_samples(field, 2, 9))?;
        let morphisms = samples.c_morphisms.len() + samples.d_morphisms.len();
        ensure(morphisms >= 5, || format!("only {morphisms} morphisms"))?;
        let r = lib(check_cat_context(&ctx, &samples))?;
        ok_report("push-out context", &r)?;
        checks += r.len();
        let mut bad = ctx.clone();
        bad.eta.map = bad.eta.map.scale(&field.from_i64(2));
        let r = lib(check_cat_context(&bad, &samples))?;
        ensure(!r.ok(), || "scaled eta still passes".into())?;
    }
    Ok(format!("{checks} checks pass, scaled eta caught"))
}

fn round_trip(ctx: &WremContext, m: &Comodule, n: &Comodule) -> Result<(), String> {
    let eta_c = lib(eta_tilde(ctx, &lib(Comodule::regular(&ctx.f.target))?))?;
    let rho_d = lib(rho_tilde(ctx, &lib(Comodule::regular(&ctx.f.source))?))?;
    let back = lib(reconstruct_context(m, n, &eta_c, &rho_d))?;
    ok_report("reconstruction", &back.report)?;
    ok_report("reconstructed context", &lib(check_wrem_context(&back.context))?)?;
    ensure(back.context == *ctx, || "reconstructed context differs".into())
}

fn reconstruction() -> Outcome {
    let mut count = 0;
    for field in FIELDS {
        let (ctx, _) = lib(matrix_cat_samples(field, 2, 1))?;
        let m = lib(Comodule::trivial(&ctx.f.source, &ctx.f.module))?;
        let n = lib(Comodule::trivial(&ctx.f.target, &ctx.g.module))?;
        round_trip(&ctx, &m, &n)?;
        count += 1;
        let mut s = Sampler::new(field, 10);
        for algebra in ["dual2", "k2"] {
            let data = lib(sweedler_descent(field, algebra))?;
            let f = lib(cell_from_comodule(&data.m, &data.c))?;
            let g = lib(cell_from_comodule(&data.n, &data.d))?;
            let space = lib(wrem_context_space(&f, &g))?;
            ensure(space.dim() == 1, || format!("{algebra}: context space of dim {}", space.dim()))?;
            let mut ctx = lib(space.sample(&mut s))?;
            while ctx.eta.map.is_zero() {
                ctx = lib(space.sample(&mut s))?;
            }
            round_trip(&ctx, &data.m, &data.n)?;
            count += 1;
        }
    }
    Ok(format!("{count} contexts recovered exactly"))
}

fn cli(args: &[&str]) -> Result<(String, i32), String> {
    let cli = Cli::try_parse_from(std::iter::once("wrmc").chain(args.iter().copied())).map_err(|e| e.to_string())?;
    let out = run(&cli).map_err(|e| e.to_string())?;
    Ok((out.text, out.code))
}

fn report_validator() -> Result<jsonschema::Validator, String> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/report.schema.json");
    let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
    let schema: serde_json::Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    jsonschema::validator_for(&schema).map_err(|e| e.to_string())
}

fn determinism_and_io() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let schema = report_validator()?;
    let mut bundles = 0;
    let mut reports = 0;
    for (field, tag) in [(Field::Rational, "Q"), (GF101, "Fp:101")] {
        for &g in Generator::value_variants() {
            let o = GenOptions { field, seed: 7, n: 2, samples: 10, negatives: true };
            let text = bundle::to_json(&generate(g, &o).map_err(|e| e.to_string())?);
            let again = bundle::to_json(&generate(g, &o).map_err(|e| e.to_string())?);
            ensure(text == again, || format!("{} over {tag}: generation not deterministic", g.name()))?;
            let (cli_text, code) = cli(&["gen", g.name(), "--field", tag, "--seed", "7", "--samples", "10", "--negatives"])?;
            ensure(code == 0 && cli_text == text, || format!("{}: CLI bytes differ from the library", g.name()))?;
            let parsed = Bundle::parse(&text).map_err(|e| e.to_string())?;
            let written = bundle::to_json(&parsed.to_doc().map_err(|e| e.to_string())?);
            ensure(written == text, || format!("{} over {tag}: serialize after parse changes the bundle", g.name()))?;
            bundles += 1;

            let path = dir.path().join(format!("{}-{}.json", g.name(), bundles));
            std::fs::write(&path, &text).map_err(|e| e.to_string())?;
            let p = path.to_str().unwrap();
            let (first, _) = cli(&["validate", p])?;
            let (second, _) = cli(&["validate", p])?;
            ensure(first == second, || format!("{}: validate reports differ", g.name()))?;
            let doc: serde_json::Value = serde_json::from_str(&first).map_err(|e| e.to_string())?;
            let errors: Vec<String> = schema.iter_errors(&doc).map(|e| e.to_string()).collect();
            ensure(errors.is_empty(), || format!("{}: report off schema: {errors:?}", g.name()))?;
            reports += 1;
        }
    }
    Ok(format!("{bundles} bundles round-trip byte for byte, {reports} reports repeat and match the schema"))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("Bim coherence", bim_coherence),
        ("context products", product_closure),
        ("W(Bim) axioms", wide_axioms),
        ("matrix Morita context", matrix_morita_checks),
        ("contexts from equivalences", from_equivalence),
        ("coring suite", coring_suite),
        ("reduction over trivial corings", reduction),
        ("cells from bicomodules", bicomodule_cells),
        ("push-out context", cat_context),
        ("reconstruction round trip", reconstruction),
        ("determinism and IO", determinism_and_io),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
}
