//! The bundle file: named algebras, bimodules, maps and the structures built
//! from them, all over one field, as JSON.
//!
//! Tensor products are not stored. A reference `{"tensor": [a, b, c]}` is
//! rebuilt with the same bracketing, so maps into and out of tensor products
//! keep their exact basis.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use wrmc::algebra::Algebra;
use wrmc::bicat::Bicategory;
use wrmc::bimod::{tensor_word, Bim, Bimodule, BimoduleMap};
use wrmc::coring::{Bicomodule, Comodule, Coring, EntwinedCell, EntwinedTwoCell, Rem, WremContext};
use wrmc::exactla::{Field, Matrix, Scalar};
use wrmc::pushout::{CatSamples, SampleMorphism};
use wrmc::wide::{ContextMorphism, TypedMorphism, WideContext};

use crate::CliError;

pub const FORMAT_VERSION: u32 = 1;

pub type MatrixDoc = Vec<Vec<String>>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BundleDoc {
    pub format_version: u32,
    pub field: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub algebras: Vec<AlgebraDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub bimodules: Vec<BimoduleDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub maps: Vec<MapDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub corings: Vec<CoringDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub comodules: Vec<ComoduleDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub bicomodules: Vec<BicomoduleDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub cells: Vec<CellDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub contexts: Vec<ContextDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub morphisms: Vec<MorphismDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub equivalences: Vec<EquivalenceDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub wrem_contexts: Vec<WremContextDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sample_sets: Vec<SampleSetDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub reconstructions: Vec<ReconstructionDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    pub name: String,
    pub dim: usize,
    pub unit: Vec<String>,
    /// `structure[i][j]` are the coordinates of `e_i e_j`.
    pub structure: Vec<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BimoduleDoc {
    pub name: String,
    pub left: String,
    pub right: String,
    pub dim: usize,
    pub left_action: Vec<MatrixDoc>,
    pub right_action: Vec<MatrixDoc>,
}

/// A named bimodule or a tensor product of references.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ModuleRef {
    Name(String),
    Tensor { tensor: Vec<ModuleRef> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDoc {
    pub name: String,
    pub source: ModuleRef,
    pub target: ModuleRef,
    pub matrix: MatrixDoc,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoringDoc {
    pub name: String,
    pub base: String,
    pub carrier: ModuleRef,
    pub delta: String,
    pub counit: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComoduleDoc {
    pub name: String,
    pub coring: String,
    pub carrier: ModuleRef,
    pub coaction: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BicomoduleDoc {
    pub name: String,
    pub left: String,
    pub right: String,
    pub carrier: ModuleRef,
    pub right_coaction: String,
    pub left_coaction: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellDoc {
    pub name: String,
    pub source: String,
    pub target: String,
    pub module: ModuleRef,
    pub entwining: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContextDoc {
    pub name: String,
    pub f: ModuleRef,
    pub g: ModuleRef,
    pub eta: String,
    pub rho: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismDoc {
    pub name: String,
    pub from: String,
    pub to: String,
    pub alpha: String,
    pub beta: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EquivalenceDoc {
    pub name: String,
    pub f: ModuleRef,
    pub g: ModuleRef,
    pub eta: String,
    pub theta: String,
}

/// `eta` and `rho` are the reduced maps `C (M N) -> C` and `D (N M) -> D`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WremContextDoc {
    pub name: String,
    pub f: String,
    pub g: String,
    pub eta: String,
    pub rho: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LabeledComodule {
    pub label: String,
    pub comodule: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SampleMorphismDoc {
    pub name: String,
    pub from: String,
    pub to: String,
    pub map: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SampleSetDoc {
    pub name: String,
    pub context: String,
    pub c_side: Vec<LabeledComodule>,
    pub d_side: Vec<LabeledComodule>,
    pub c_morphisms: Vec<SampleMorphismDoc>,
    pub d_morphisms: Vec<SampleMorphismDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReconstructionDoc {
    pub name: String,
    /// Right comodule over the source coring.
    pub m: String,
    /// Right comodule over the target coring.
    pub n: String,
    pub eta_tilde: String,
    pub rho_tilde: String,
}

/// Entries in file order, looked up by name.
#[derive(Clone, Debug)]
pub struct Named<T> {
    kind: &'static str,
    entries: Vec<(String, T)>,
}

impl<T> Named<T> {
    fn new(kind: &'static str) -> Self {
        Named { kind, entries: Vec::new() }
    }

    pub fn get(&self, name: &str) -> Result<&T, CliError> {
        self.entries
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| v)
            .ok_or_else(|| CliError::Reference(format!("no {} named {name:?}", self.kind)))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &T)> {
        self.entries.iter().map(|(n, v)| (n.as_str(), v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn insert(&mut self, name: &str, value: T) -> Result<(), CliError> {
        if self.entries.iter().any(|(n, _)| n == name) {
            return Err(CliError::Parse(format!("duplicate {} name {name:?}", self.kind)));
        }
        self.entries.push((name.to_string(), value));
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct Equivalence {
    pub f: Arc<Bimodule>,
    pub g: Arc<Bimodule>,
    pub eta: BimoduleMap,
    pub theta: BimoduleMap,
}

#[derive(Clone, Debug)]
pub struct SampleSet {
    pub context: String,
    pub samples: CatSamples,
}

#[derive(Clone, Debug)]
pub struct ReconstructionInput {
    pub m: Comodule,
    pub n: Comodule,
    pub eta_tilde: BimoduleMap,
    pub rho_tilde: BimoduleMap,
}

/// A parsed bundle with every reference resolved.
#[derive(Clone, Debug)]
pub struct Bundle {
    pub field: Field,
    pub algebras: Named<Arc<Algebra>>,
    pub bimodules: Named<Arc<Bimodule>>,
    pub maps: Named<BimoduleMap>,
    pub corings: Named<Arc<Coring>>,
    pub comodules: Named<Comodule>,
    pub bicomodules: Named<Bicomodule>,
    pub cells: Named<EntwinedCell>,
    pub contexts: Named<WideContext<Bim>>,
    pub morphisms: Named<TypedMorphism<Bim>>,
    pub equivalences: Named<Equivalence>,
    pub wrem_contexts: Named<WremContext>,
    pub sample_sets: Named<SampleSet>,
    pub reconstructions: Named<ReconstructionInput>,
}

fn core<'a>(what: &'a str, name: &'a str) -> impl FnOnce(wrmc::Error) -> CliError + 'a {
    move |e| CliError::Parse(format!("{what} {name:?}: {e}"))
}

fn scalar(field: Field, s: &str) -> Result<Scalar, CliError> {
    field.parse(s).map_err(|e| CliError::Parse(e.to_string()))
}

fn matrix(field: Field, rows: usize, cols: usize, doc: &MatrixDoc, what: &str) -> Result<Matrix, CliError> {
    if doc.len() != rows || doc.iter().any(|r| r.len() != cols) {
        return Err(CliError::Parse(format!("{what}: expected a {rows}x{cols} matrix")));
    }
    let data = doc.iter().flatten().map(|s| scalar(field, s)).collect::<Result<Vec<_>, _>>()?;
    Ok(Matrix::from_raw(field, rows, cols, data))
}

fn matrix_doc(m: &Matrix) -> MatrixDoc {
    m.to_rows().iter().map(|r| r.iter().map(Scalar::to_canonical).collect()).collect()
}

impl Bundle {
    pub fn empty(field: Field) -> Bundle {
        Bundle {
            field,
            algebras: Named::new("algebra"),
            bimodules: Named::new("bimodule"),
            maps: Named::new("map"),
            corings: Named::new("coring"),
            comodules: Named::new("comodule"),
            bicomodules: Named::new("bicomodule"),
            cells: Named::new("cell"),
            contexts: Named::new("context"),
            morphisms: Named::new("morphism"),
            equivalences: Named::new("equivalence"),
            wrem_contexts: Named::new("wrem context"),
            sample_sets: Named::new("sample set"),
            reconstructions: Named::new("reconstruction"),
        }
    }

    pub fn parse(text: &str) -> Result<Bundle, CliError> {
        let doc: BundleDoc = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
        Bundle::from_doc(&doc)
    }

    fn module(&self, r: &ModuleRef) -> Result<Arc<Bimodule>, CliError> {
        match r {
            ModuleRef::Name(n) => self.bimodules.get(n).cloned(),
            ModuleRef::Tensor { tensor } => {
                let leaves = tensor.iter().map(|l| self.module(l)).collect::<Result<Vec<_>, _>>()?;
                if leaves.len() < 2 {
                    return Err(CliError::Parse("a tensor reference needs at least two factors".into()));
                }
                tensor_word(&leaves).map_err(|e| CliError::Reference(format!("tensor reference: {e}")))
            }
        }
    }

    pub fn from_doc(doc: &BundleDoc) -> Result<Bundle, CliError> {
        if doc.format_version != FORMAT_VERSION {
            return Err(CliError::Parse(format!("unsupported format version {}", doc.format_version)));
        }
        let field = Field::from_descriptor(&doc.field).map_err(|e| CliError::Parse(e.to_string()))?;
        let mut b = Bundle::empty(field);

        for a in &doc.algebras {
            let n = a.dim;
            if a.structure.len() != n || a.structure.iter().any(|row| row.len() != n || row.iter().any(|v| v.len() != n)) {
                return Err(CliError::Parse(format!("algebra {:?}: structure must be {n}x{n}x{n}", a.name)));
            }
            let structure = a.structure.iter().flatten().flatten().map(|s| scalar(field, s)).collect::<Result<_, _>>()?;
            let unit = a.unit.iter().map(|s| scalar(field, s)).collect::<Result<_, _>>()?;
            let alg = Algebra::new(field, n, structure, unit).map_err(core("algebra", &a.name))?;
            b.algebras.insert(&a.name, Arc::new(alg))?;
        }
        for m in &doc.bimodules {
            let (left, right) = (b.algebras.get(&m.left)?.clone(), b.algebras.get(&m.right)?.clone());
            let what = format!("bimodule {:?}", m.name);
            let la = m.left_action.iter().map(|x| matrix(field, m.dim, m.dim, x, &what)).collect::<Result<_, _>>()?;
            let ra = m.right_action.iter().map(|x| matrix(field, m.dim, m.dim, x, &what)).collect::<Result<_, _>>()?;
            let module = Bimodule::new(left, right, la, ra).map_err(core("bimodule", &m.name))?;
            if module.dim() != m.dim {
                return Err(CliError::Parse(format!("{what}: declared dim {} but actions have dim {}", m.dim, module.dim())));
            }
            b.bimodules.insert(&m.name, Arc::new(module))?;
        }
        for m in &doc.maps {
            let (s, t) = (b.module(&m.source)?, b.module(&m.target)?);
            let mat = matrix(field, t.dim(), s.dim(), &m.matrix, &format!("map {:?}", m.name))?;
            // linearity is a validator concern, so unchecked here
            let map = BimoduleMap::new_unchecked(s, t, mat).map_err(core("map", &m.name))?;
            b.maps.insert(&m.name, map)?;
        }
        for c in &doc.corings {
            let coring = Coring::new(
                b.algebras.get(&c.base)?.clone(),
                b.module(&c.carrier)?,
                b.maps.get(&c.delta)?.clone(),
                b.maps.get(&c.counit)?.clone(),
            )
            .map_err(core("coring", &c.name))?;
            b.corings.insert(&c.name, Arc::new(coring))?;
        }
        for x in &doc.comodules {
            let cm = Comodule::new(b.corings.get(&x.coring)?.clone(), b.module(&x.carrier)?, b.maps.get(&x.coaction)?.clone())
                .map_err(core("comodule", &x.name))?;
            b.comodules.insert(&x.name, cm)?;
        }
        for x in &doc.bicomodules {
            let bc = Bicomodule::new(
                b.corings.get(&x.left)?.clone(),
                b.corings.get(&x.right)?.clone(),
                b.module(&x.carrier)?,
                b.maps.get(&x.right_coaction)?.clone(),
                b.maps.get(&x.left_coaction)?.clone(),
            )
            .map_err(core("bicomodule", &x.name))?;
            b.bicomodules.insert(&x.name, bc)?;
        }
        for x in &doc.cells {
            let cell = EntwinedCell::new(
                b.corings.get(&x.source)?.clone(),
                b.corings.get(&x.target)?.clone(),
                b.module(&x.module)?,
                b.maps.get(&x.entwining)?.clone(),
            )
            .map_err(core("cell", &x.name))?;
            b.cells.insert(&x.name, cell)?;
        }
        for x in &doc.contexts {
            let ctx = WideContext {
                f: b.module(&x.f)?,
                g: b.module(&x.g)?,
                eta: b.maps.get(&x.eta)?.clone(),
                rho: b.maps.get(&x.rho)?.clone(),
            };
            b.contexts.insert(&x.name, ctx)?;
        }
        for x in &doc.morphisms {
            let m = ContextMorphism { alpha: b.maps.get(&x.alpha)?.clone(), beta: b.maps.get(&x.beta)?.clone() };
            let typed = TypedMorphism::new(m, b.contexts.get(&x.from)?.clone(), b.contexts.get(&x.to)?.clone());
            b.morphisms.insert(&x.name, typed)?;
        }
        for x in &doc.equivalences {
            let e = Equivalence {
                f: b.module(&x.f)?,
                g: b.module(&x.g)?,
                eta: b.maps.get(&x.eta)?.clone(),
                theta: b.maps.get(&x.theta)?.clone(),
            };
            b.equivalences.insert(&x.name, e)?;
        }
        for x in &doc.wrem_contexts {
            let (f, g) = (b.cells.get(&x.f)?.clone(), b.cells.get(&x.g)?.clone());
            let two = |a: &EntwinedCell, c: &EntwinedCell, map: &str| -> Result<EntwinedTwoCell, CliError> {
                let map = b.maps.get(map)?.clone();
                let built = Rem.hcomp1(a, c).and_then(|src| EntwinedTwoCell::new(src, Rem.id1(&a.target)?, map));
                built.map_err(core("wrem context", &x.name))
            };
            let ctx = WideContext { eta: two(&f, &g, &x.eta)?, rho: two(&g, &f, &x.rho)?, f, g };
            b.wrem_contexts.insert(&x.name, ctx)?;
        }
        for x in &doc.sample_sets {
            b.wrem_contexts.get(&x.context)?;
            let side = |list: &[LabeledComodule]| -> Result<Vec<(String, Comodule)>, CliError> {
                list.iter().map(|l| Ok((l.label.clone(), b.comodules.get(&l.comodule)?.clone()))).collect()
            };
            let morphisms = |list: &[SampleMorphismDoc]| -> Result<Vec<SampleMorphism>, CliError> {
                list.iter()
                    .map(|m| {
                        Ok(SampleMorphism {
                            name: m.name.clone(),
                            from: b.comodules.get(&m.from)?.clone(),
                            to: b.comodules.get(&m.to)?.clone(),
                            map: b.maps.get(&m.map)?.clone(),
                        })
                    })
                    .collect()
            };
            let samples = CatSamples {
                c_side: side(&x.c_side)?,
                d_side: side(&x.d_side)?,
                c_morphisms: morphisms(&x.c_morphisms)?,
                d_morphisms: morphisms(&x.d_morphisms)?,
            };
            b.sample_sets.insert(&x.name, SampleSet { context: x.context.clone(), samples })?;
        }
        for x in &doc.reconstructions {
            let r = ReconstructionInput {
                m: b.comodules.get(&x.m)?.clone(),
                n: b.comodules.get(&x.n)?.clone(),
                eta_tilde: b.maps.get(&x.eta_tilde)?.clone(),
                rho_tilde: b.maps.get(&x.rho_tilde)?.clone(),
            };
            b.reconstructions.insert(&x.name, r)?;
        }
        Ok(b)
    }

    /// Writes every entry back under its own name, in order.
    pub fn to_doc(&self) -> Result<BundleDoc, CliError> {
        let mut w = BundleWriter::new(self.field);
        for (n, v) in self.algebras.iter() {
            w.algebra(n, v)?;
        }
        for (n, v) in self.bimodules.iter() {
            w.bimodule(n, v)?;
        }
        for (n, v) in self.maps.iter() {
            w.map(n, v)?;
        }
        for (n, v) in self.corings.iter() {
            w.coring(n, v)?;
        }
        for (n, v) in self.comodules.iter() {
            w.comodule(n, v)?;
        }
        for (n, v) in self.bicomodules.iter() {
            w.bicomodule(n, v)?;
        }
        for (n, v) in self.cells.iter() {
            w.cell(n, v)?;
        }
        for (n, v) in self.contexts.iter() {
            w.context(n, v)?;
        }
        for (n, v) in self.morphisms.iter() {
            w.morphism(n, v)?;
        }
        for (n, v) in self.equivalences.iter() {
            w.equivalence(n, v)?;
        }
        for (n, v) in self.wrem_contexts.iter() {
            w.wrem_context(n, v)?;
        }
        for (n, v) in self.sample_sets.iter() {
            w.sample_set(n, &v.context, &v.samples)?;
        }
        for (n, v) in self.reconstructions.iter() {
            w.reconstruction(n, v)?;
        }
        Ok(w.finish())
    }
}

/// Builds a [`BundleDoc`] from library values. Each method adds a named
/// entry, or returns the name of an equal entry already present; anything it
/// depends on is added on the way under a name derived from `name`.
pub struct BundleWriter {
    doc: BundleDoc,
    algebras: Vec<(String, Arc<Algebra>)>,
    bimodules: Vec<(String, Arc<Bimodule>)>,
    maps: Vec<(String, BimoduleMap)>,
    corings: Vec<(String, Arc<Coring>)>,
    comodules: Vec<(String, Comodule)>,
    bicomodules: Vec<(String, Bicomodule)>,
    cells: Vec<(String, EntwinedCell)>,
    contexts: Vec<(String, WideContext<Bim>)>,
    wrem_contexts: Vec<(String, WremContext)>,
    others: Vec<String>,
}

/// Finds an equal entry or reserves a name for a new one.
fn slot<T: PartialEq>(table: &[(String, T)], name: &str, value: &T) -> Result<(String, bool), CliError> {
    if let Some((n, _)) = table.iter().find(|(_, v)| v == value) {
        return Ok((n.clone(), false));
    }
    let taken = |n: &str| table.iter().any(|(m, _)| m == n);
    if !taken(name) {
        return Ok((name.to_string(), true));
    }
    let fresh = (2..).map(|i| format!("{name}#{i}")).find(|n| !taken(n)).expect("unbounded");
    Ok((fresh, true))
}

impl BundleWriter {
    pub fn new(field: Field) -> Self {
        BundleWriter {
            doc: BundleDoc {
                format_version: FORMAT_VERSION,
                field: field.descriptor(),
                algebras: vec![],
                bimodules: vec![],
                maps: vec![],
                corings: vec![],
                comodules: vec![],
                bicomodules: vec![],
                cells: vec![],
                contexts: vec![],
                morphisms: vec![],
                equivalences: vec![],
                wrem_contexts: vec![],
                sample_sets: vec![],
                reconstructions: vec![],
            },
            algebras: vec![],
            bimodules: vec![],
            maps: vec![],
            corings: vec![],
            comodules: vec![],
            bicomodules: vec![],
            cells: vec![],
            contexts: vec![],
            wrem_contexts: vec![],
            others: vec![],
        }
    }

    pub fn finish(self) -> BundleDoc {
        self.doc
    }

    pub fn algebra(&mut self, name: &str, a: &Arc<Algebra>) -> Result<String, CliError> {
        let (name, new) = slot(&self.algebras, name, a)?;
        if new {
            self.algebras.push((name.clone(), a.clone()));
            let structure = a
                .structure_nested()
                .iter()
                .map(|row| row.iter().map(|v| v.iter().map(Scalar::to_canonical).collect()).collect())
                .collect();
            self.doc.algebras.push(AlgebraDoc {
                name: name.clone(),
                dim: a.dim(),
                unit: a.unit().iter().map(Scalar::to_canonical).collect(),
                structure,
            });
        }
        Ok(name)
    }

    /// Adds a plain bimodule; tensor products are referenced through their factors.
    pub fn bimodule(&mut self, name: &str, m: &Arc<Bimodule>) -> Result<ModuleRef, CliError> {
        if let Some(t) = m.tensor() {
            let leaves = t
                .leaves
                .iter()
                .enumerate()
                .map(|(i, l)| self.bimodule(&format!("{name}.{i}"), l))
                .collect::<Result<Vec<_>, _>>()?;
            return Ok(ModuleRef::Tensor { tensor: leaves });
        }
        let (name, new) = slot(&self.bimodules, name, m)?;
        if new {
            let left = self.algebra(&format!("{name}.left"), m.left())?;
            let right = self.algebra(&format!("{name}.right"), m.right())?;
            self.bimodules.push((name.clone(), m.clone()));
            self.doc.bimodules.push(BimoduleDoc {
                name: name.clone(),
                left,
                right,
                dim: m.dim(),
                left_action: m.left_action().iter().map(matrix_doc).collect(),
                right_action: m.right_action().iter().map(matrix_doc).collect(),
            });
        }
        Ok(ModuleRef::Name(name))
    }

    pub fn map(&mut self, name: &str, f: &BimoduleMap) -> Result<String, CliError> {
        let (name, new) = slot(&self.maps, name, f)?;
        if new {
            let source = self.bimodule(&format!("{name}.source"), f.source())?;
            let target = self.bimodule(&format!("{name}.target"), f.target())?;
            self.maps.push((name.clone(), f.clone()));
            self.doc.maps.push(MapDoc { name: name.clone(), source, target, matrix: matrix_doc(f.matrix()) });
        }
        Ok(name)
    }

    pub fn coring(&mut self, name: &str, c: &Arc<Coring>) -> Result<String, CliError> {
        let (name, new) = slot(&self.corings, name, c)?;
        if new {
            let base = self.algebra(&format!("{name}.base"), &c.base)?;
            let carrier = self.bimodule(&format!("{name}.carrier"), &c.carrier)?;
            let delta = self.map(&format!("{name}.delta"), &c.delta)?;
            let counit = self.map(&format!("{name}.counit"), &c.counit)?;
            self.corings.push((name.clone(), c.clone()));
            self.doc.corings.push(CoringDoc { name: name.clone(), base, carrier, delta, counit });
        }
        Ok(name)
    }

    pub fn comodule(&mut self, name: &str, x: &Comodule) -> Result<String, CliError> {
        let (name, new) = slot(&self.comodules, name, x)?;
        if new {
            let coring = self.coring(&format!("{name}.coring"), &x.coring)?;
            let carrier = self.bimodule(&format!("{name}.carrier"), &x.carrier)?;
            let coaction = self.map(&format!("{name}.coaction"), &x.coaction)?;
            self.comodules.push((name.clone(), x.clone()));
            self.doc.comodules.push(ComoduleDoc { name: name.clone(), coring, carrier, coaction });
        }
        Ok(name)
    }

    pub fn bicomodule(&mut self, name: &str, x: &Bicomodule) -> Result<String, CliError> {
        let (name, new) = slot(&self.bicomodules, name, x)?;
        if new {
            let left = self.coring(&format!("{name}.left"), &x.left)?;
            let right = self.coring(&format!("{name}.right"), &x.right)?;
            let carrier = self.bimodule(&format!("{name}.carrier"), &x.carrier)?;
            let right_coaction = self.map(&format!("{name}.right_coaction"), &x.right_coaction)?;
            let left_coaction = self.map(&format!("{name}.left_coaction"), &x.left_coaction)?;
            self.bicomodules.push((name.clone(), x.clone()));
            self.doc.bicomodules.push(BicomoduleDoc { name: name.clone(), left, right, carrier, right_coaction, left_coaction });
        }
        Ok(name)
    }

    pub fn cell(&mut self, name: &str, x: &EntwinedCell) -> Result<String, CliError> {
        let (name, new) = slot(&self.cells, name, x)?;
        if new {
            let source = self.coring(&format!("{name}.source"), &x.source)?;
            let target = self.coring(&format!("{name}.target"), &x.target)?;
            let module = self.bimodule(&format!("{name}.module"), &x.module)?;
            let entwining = self.map(&format!("{name}.entwining"), &x.entwining)?;
            self.cells.push((name.clone(), x.clone()));
            self.doc.cells.push(CellDoc { name: name.clone(), source, target, module, entwining });
        }
        Ok(name)
    }

    pub fn context(&mut self, name: &str, c: &WideContext<Bim>) -> Result<String, CliError> {
        let (name, new) = slot(&self.contexts, name, c)?;
        if new {
            let f = self.bimodule(&format!("{name}.f"), &c.f)?;
            let g = self.bimodule(&format!("{name}.g"), &c.g)?;
            let eta = self.map(&format!("{name}.eta"), &c.eta)?;
            let rho = self.map(&format!("{name}.rho"), &c.rho)?;
            self.contexts.push((name.clone(), c.clone()));
            self.doc.contexts.push(ContextDoc { name: name.clone(), f, g, eta, rho });
        }
        Ok(name)
    }

    fn claim(&mut self, kind: &str, name: &str) -> Result<(), CliError> {
        let key = format!("{kind}/{name}");
        if self.others.contains(&key) {
            return Err(CliError::Parse(format!("duplicate {kind} name {name:?}")));
        }
        self.others.push(key);
        Ok(())
    }

    pub fn morphism(&mut self, name: &str, m: &TypedMorphism<Bim>) -> Result<(), CliError> {
        self.claim("morphism", name)?;
        let from = self.context(&format!("{name}.from"), &m.from)?;
        let to = self.context(&format!("{name}.to"), &m.to)?;
        let alpha = self.map(&format!("{name}.alpha"), &m.morphism.alpha)?;
        let beta = self.map(&format!("{name}.beta"), &m.morphism.beta)?;
        self.doc.morphisms.push(MorphismDoc { name: name.to_string(), from, to, alpha, beta });
        Ok(())
    }

    pub fn equivalence(&mut self, name: &str, e: &Equivalence) -> Result<(), CliError> {
        self.claim("equivalence", name)?;
        let f = self.bimodule(&format!("{name}.f"), &e.f)?;
        let g = self.bimodule(&format!("{name}.g"), &e.g)?;
        let eta = self.map(&format!("{name}.eta"), &e.eta)?;
        let theta = self.map(&format!("{name}.theta"), &e.theta)?;
        self.doc.equivalences.push(EquivalenceDoc { name: name.to_string(), f, g, eta, theta });
        Ok(())
    }

    pub fn wrem_context(&mut self, name: &str, c: &WremContext) -> Result<String, CliError> {
        let (name, new) = slot(&self.wrem_contexts, name, c)?;
        if new {
            let f = self.cell(&format!("{name}.f"), &c.f)?;
            let g = self.cell(&format!("{name}.g"), &c.g)?;
            let eta = self.map(&format!("{name}.eta"), &c.eta.map)?;
            let rho = self.map(&format!("{name}.rho"), &c.rho.map)?;
            self.wrem_contexts.push((name.clone(), c.clone()));
            self.doc.wrem_contexts.push(WremContextDoc { name: name.clone(), f, g, eta, rho });
        }
        Ok(name)
    }

    /// `context` must name a wrem context already written.
    pub fn sample_set(&mut self, name: &str, context: &str, s: &CatSamples) -> Result<(), CliError> {
        self.claim("sample set", name)?;
        if !self.wrem_contexts.iter().any(|(n, _)| n == context) {
            return Err(CliError::Reference(format!("no wrem context named {context:?}")));
        }
        let mut side = |list: &[(String, Comodule)]| -> Result<Vec<LabeledComodule>, CliError> {
            list.iter()
                .map(|(label, x)| {
                    Ok(LabeledComodule { label: label.clone(), comodule: self.comodule(&format!("{name}.{label}"), x)? })
                })
                .collect()
        };
        let c_side = side(&s.c_side)?;
        let d_side = side(&s.d_side)?;
        let mut morphisms = |list: &[SampleMorphism]| -> Result<Vec<SampleMorphismDoc>, CliError> {
            list.iter()
                .enumerate()
                .map(|(i, m)| {
                    Ok(SampleMorphismDoc {
                        name: m.name.clone(),
                        from: self.comodule(&format!("{name}.{}", m.name), &m.from)?,
                        to: self.comodule(&format!("{name}.{}", m.name), &m.to)?,
                        map: self.map(&format!("{name}.map{i}"), &m.map)?,
                    })
                })
                .collect()
        };
        let c_morphisms = morphisms(&s.c_morphisms)?;
        let d_morphisms = morphisms(&s.d_morphisms)?;
        self.doc.sample_sets.push(SampleSetDoc {
            name: name.to_string(),
            context: context.to_string(),
            c_side,
            d_side,
            c_morphisms,
            d_morphisms,
        });
        Ok(())
    }

    pub fn reconstruction(&mut self, name: &str, r: &ReconstructionInput) -> Result<(), CliError> {
        self.claim("reconstruction", name)?;
        let m = self.comodule(&format!("{name}.m"), &r.m)?;
        let n = self.comodule(&format!("{name}.n"), &r.n)?;
        let eta_tilde = self.map(&format!("{name}.eta_tilde"), &r.eta_tilde)?;
        let rho_tilde = self.map(&format!("{name}.rho_tilde"), &r.rho_tilde)?;
        self.doc.reconstructions.push(ReconstructionDoc { name: name.to_string(), m, n, eta_tilde, rho_tilde });
        Ok(())
    }
}

pub fn to_json(doc: &BundleDoc) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("bundle documents always serialize");
    s.push('\n');
    s
}
