use super::*;
use crate::bicat::LinearBicategory;
use crate::exactla::{Matrix, Solution};

/// The context built from equivalence data, with the dimension of the
/// homogenized solution space of `1_f rho = kappa` (1 means unique).
pub struct EquivalenceSolution<B: Bicategory> {
    pub context: WideContext<B>,
    pub solution_dim: usize,
}

/// `kappa = r_f^-1 l_f (eta 1_f) a^-1_{f,g,f}: f (g f) -> f I_B`.
fn kappa<B: Bicategory>(inst: &B, f: &B::Cell1, g: &B::Cell1, eta: &B::Cell2) -> Result<B::Cell2> {
    compose_all(
        inst,
        &[inst.associator_inv(f, g, f)?, inst.hcomp2(eta, &inst.id2(f)?)?, inst.left_unitor(f)?, inst.right_unitor_inv(f)?],
    )
}

/// Finds the unique `rho: g f -> I_B` making `(f, g, eta, rho)` a context,
/// given `eta: f g -> I_A` and `theta: I_B -> g f`, both invertible.
pub fn context_from_equivalence<B: LinearBicategory>(
    inst: &B,
    f: &B::Cell1,
    g: &B::Cell1,
    eta: &B::Cell2,
    theta: &B::Cell2,
) -> Result<EquivalenceSolution<B>> {
    let a = inst.target(f);
    let b = inst.source(f);
    expect_type(inst, eta, &inst.hcomp1(f, g)?, &inst.id1(&a)?, "eta: f g -> I_A")?;
    let gf = inst.hcomp1(g, f)?;
    let ib = inst.id1(&b)?;
    expect_type(inst, theta, &ib, &gf, "theta: I_B -> g f")?;
    inst.invert(eta).map_err(|e| Error::Invalid(format!("eta must be invertible: {e}")))?;
    inst.invert(theta).map_err(|e| Error::Invalid(format!("theta must be invertible: {e}")))?;

    let target = inst.coords(&kappa(inst, f, g, eta)?);
    let basis = inst.hom_basis(&gf, &ib)?;
    let id_f = inst.id2(f)?;
    let field = inst.field();
    let mut columns = Vec::with_capacity(basis.len());
    for r in &basis {
        columns.push(inst.coords(&inst.hcomp2(&id_f, r)?));
    }
    let rows = target.len();
    let v = Matrix::from_fn(field, rows, basis.len(), |i, j| columns[j][i].clone());
    let rhs = Matrix::column(field, target);
    match v.solve(&rhs)? {
        Solution::NoSolution => Err(Error::NoSolution("no rho with 1_f rho = kappa; the data is not an equivalence".into())),
        Solution::Solved { kernel_dim, .. } if kernel_dim > 0 => Err(Error::NonUnique(kernel_dim + 1)),
        Solution::Solved { x, .. } => {
            let rho = inst.combine(&gf, &ib, &basis, x.entries());
            Ok(EquivalenceSolution {
                context: WideContext { f: f.clone(), g: g.clone(), eta: eta.clone(), rho },
                solution_dim: 1,
            })
        }
    }
}

/// `r_{fg} (1 eta) = l_{fg} (eta 1)` on `(f g)(f g)`.
pub fn equivalence_diagram<B: Bicategory>(inst: &B, f: &B::Cell1, g: &B::Cell1, eta: &B::Cell2) -> Result<Report> {
    let fg = inst.hcomp1(f, g)?;
    expect_type(inst, eta, &fg, &inst.id1(&inst.target(f))?, "eta: f g -> I_A")?;
    let id = inst.id2(&fg)?;
    let lhs = inst.vcomp(&inst.right_unitor(&fg)?, &inst.hcomp2(&id, eta)?)?;
    let rhs = inst.vcomp(&inst.left_unitor(&fg)?, &inst.hcomp2(eta, &id)?)?;
    let mut report = Report::new();
    report.record("diagram on (f g)(f g)", Ok(inst.diff2(&lhs, &rhs, "r (1 eta) vs l (eta 1)")));
    Ok(report)
}

pub enum EpiIsoOutcome<B: Bicategory> {
    /// Both cells are invertible; the report records the two-sided inverse checks.
    Invertible {
        eta_inv: B::Cell2,
        rho_inv: B::Cell2,
        report: Report,
    },
    Skipped(String),
}

/// If `eta` and `rho` are both epimorphisms they must be isomorphisms.
pub fn epi_implies_iso<B: LinearBicategory>(inst: &B, c: &WideContext<B>) -> Result<EpiIsoOutcome<B>> {
    context_objects(inst, c)?;
    let mut missing = Vec::new();
    if !inst.is_epi(&c.eta) {
        missing.push("eta");
    }
    if !inst.is_epi(&c.rho) {
        missing.push("rho");
    }
    if !missing.is_empty() {
        return Ok(EpiIsoOutcome::Skipped(format!("{} not surjective", missing.join(" and "))));
    }
    let invert = |cell: &B::Cell2, name: &str| {
        inst.invert(cell).map_err(|e| Error::Inconsistent(format!("{name} is surjective but not invertible: {e}")))
    };
    let eta_inv = invert(&c.eta, "eta")?;
    let rho_inv = invert(&c.rho, "rho")?;
    let mut report = Report::new();
    for (name, cell, inv) in [("eta", &c.eta, &eta_inv), ("rho", &c.rho, &rho_inv)] {
        let after = inst.vcomp(inv, cell)?;
        let before = inst.vcomp(cell, inv)?;
        report.record(format!("{name} inverse on the left"), Ok(inst.diff2(&after, &inst.id2(&inst.dom(cell))?, name)));
        report.record(format!("{name} inverse on the right"), Ok(inst.diff2(&before, &inst.id2(&inst.cod(cell))?, name)));
    }
    if !report.ok() {
        return Err(Error::Inconsistent(format!("inverse checks failed: {:?}", report.failing_names())));
    }
    Ok(EpiIsoOutcome::Invertible { eta_inv, rho_inv, report })
}
