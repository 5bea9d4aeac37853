//! JSON documents: an envelope `{body, kind, version}` around kind-specific
//! bodies whose polynomial payloads are strings in the exactpoly grammar.
//!
//! Struct fields are declared in alphabetical order, so serialization emits
//! sorted keys and rendering is canonical.

use std::collections::BTreeMap;
use std::fmt;

use lra_core::exactpoly::{parse_poly, AlgMorphism, AlgebraPres, Derivation, MPoly, MonomialOrder, DEFAULT_STEP_CAP};
use lra_core::groupoid::{FinGroupoid, GroupoidAction, GrpdComorphism, GrpdMap, GrpdMorphism};
use lra_core::morphisms::{PAComorphism, PAMorphism};
use lra_core::pseudoalg::{PAElement, PAlg, Pseudoalgebra};
use lra_core::psisum::{MixedElement, PsiSum};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{CliError, CliResult, PolySyntax};

pub const VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Algebra,
    Morphism,
    Derivation,
    Palg,
    Element,
    Pamorphism,
    Pacomorphism,
    Groupoid,
    Grpdmap,
    Action,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = serde_json::to_value(self).expect("kind serializes");
        f.write_str(v.as_str().expect("kind is a string"))
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEnvelope {
    body: Value,
    kind: Kind,
    version: String,
}

#[derive(Serialize)]
struct Envelope<'a, B: Serialize> {
    body: &'a B,
    kind: Kind,
    version: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraBody {
    #[serde(default = "default_order")]
    pub order: String,
    #[serde(default)]
    pub relations: Vec<String>,
    pub variables: Vec<String>,
}

fn default_order() -> String {
    MonomialOrder::default().tag().to_string()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismBody {
    pub images: Vec<String>,
    pub source: AlgebraBody,
    pub target: AlgebraBody,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DerivationBody {
    pub algebra: AlgebraBody,
    pub images: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub left: String,
    pub right: String,
    pub value: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PalgBody {
    pub algebra: AlgebraBody,
    /// One row per basis vector, one image per variable.
    pub anchors: Vec<Vec<String>>,
    pub basis: Vec<String>,
    /// Nonzero `[left, right]` with `left` before `right` in the basis.
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementBody {
    pub coords: Vec<String>,
    /// Coefficients of `e_i ⊗ 1` for an element of a psi-sum.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tensor: Option<Vec<String>>,
}

/// Shared body of `pamorphism` (one row per source basis vector) and
/// `pacomorphism` (one row per basis vector of `F`, coefficients on `E`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PaMapBody {
    pub images: Vec<Vec<String>>,
    pub psi: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowEntry {
    pub inverse: String,
    pub name: String,
    pub source: String,
    pub target: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupoidBody {
    pub arrows: Vec<ArrowEntry>,
    /// `[g, h, gh]` for every composable pair.
    pub composition: Vec<[String; 3]>,
    /// Identity arrow of each object, in object order.
    pub identities: Vec<String>,
    pub objects: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GrpdMapBody {
    /// `[g, image]` for a morphism.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub arrows: Vec<[String; 2]>,
    /// `[x, φ(x)]`.
    pub base: Vec<[String; 2]>,
    /// `morphism` or `comorphism`.
    pub map: String,
    /// `[x, w, Φ(x, w)]` for a comorphism.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub table: Vec<[String; 3]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionBody {
    /// Base object of each point, in point order.
    pub fibration: Vec<String>,
    pub space: Vec<String>,
    /// `[z, g, S(g)z]`.
    pub table: Vec<[String; 3]>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    Algebra(AlgebraBody),
    Morphism(MorphismBody),
    Derivation(DerivationBody),
    Palg(PalgBody),
    Element(ElementBody),
    Pamorphism(PaMapBody),
    Pacomorphism(PaMapBody),
    Groupoid(GroupoidBody),
    Grpdmap(GrpdMapBody),
    Action(ActionBody),
}

fn body<T: DeserializeOwned>(path: &str, value: Value) -> CliResult<T> {
    serde_path_to_error::deserialize(value).map_err(|e| CliError::Schema {
        path: path.into(),
        field: format!("body.{}", e.path()).trim_end_matches(".").to_string(),
        message: e.into_inner().to_string(),
    })
}

impl Document {
    pub fn kind(&self) -> Kind {
        match self {
            Document::Algebra(_) => Kind::Algebra,
            Document::Morphism(_) => Kind::Morphism,
            Document::Derivation(_) => Kind::Derivation,
            Document::Palg(_) => Kind::Palg,
            Document::Element(_) => Kind::Element,
            Document::Pamorphism(_) => Kind::Pamorphism,
            Document::Pacomorphism(_) => Kind::Pacomorphism,
            Document::Groupoid(_) => Kind::Groupoid,
            Document::Grpdmap(_) => Kind::Grpdmap,
            Document::Action(_) => Kind::Action,
        }
    }

    /// Parses `text`; `path` labels errors.
    pub fn parse(path: &str, text: &str) -> CliResult<Document> {
        let value: Value = serde_json::from_str(text).map_err(|e| CliError::Syntax {
            path: path.into(),
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        let raw: RawEnvelope = serde_path_to_error::deserialize(value).map_err(|e| CliError::Schema {
            path: path.into(),
            field: e.path().to_string(),
            message: e.into_inner().to_string(),
        })?;
        if raw.version != VERSION {
            return Err(CliError::Schema {
                path: path.into(),
                field: "version".into(),
                message: format!("unsupported version `{}`, expected `{VERSION}`", raw.version),
            });
        }
        let b = raw.body;
        Ok(match raw.kind {
            Kind::Algebra => Document::Algebra(body(path, b)?),
            Kind::Morphism => Document::Morphism(body(path, b)?),
            Kind::Derivation => Document::Derivation(body(path, b)?),
            Kind::Palg => Document::Palg(body(path, b)?),
            Kind::Element => Document::Element(body(path, b)?),
            Kind::Pamorphism => Document::Pamorphism(body(path, b)?),
            Kind::Pacomorphism => Document::Pacomorphism(body(path, b)?),
            Kind::Groupoid => Document::Groupoid(body(path, b)?),
            Kind::Grpdmap => Document::Grpdmap(body(path, b)?),
            Kind::Action => Document::Action(body(path, b)?),
        })
    }

    /// Pretty JSON with sorted keys and a trailing newline.
    pub fn render(&self) -> String {
        fn go<B: Serialize>(kind: Kind, b: &B) -> String {
            let env = Envelope { body: b, kind, version: VERSION };
            let mut s = serde_json::to_string_pretty(&env).expect("documents serialize");
            s.push('\n');
            s
        }
        let k = self.kind();
        match self {
            Document::Algebra(b) => go(k, b),
            Document::Morphism(b) => go(k, b),
            Document::Derivation(b) => go(k, b),
            Document::Palg(b) => go(k, b),
            Document::Element(b) => go(k, b),
            Document::Pamorphism(b) | Document::Pacomorphism(b) => go(k, b),
            Document::Groupoid(b) => go(k, b),
            Document::Grpdmap(b) => go(k, b),
            Document::Action(b) => go(k, b),
        }
    }
}

/// Conversion context: the file being read and the Groebner step cap.
#[derive(Debug, Clone)]
pub struct Ctx {
    pub path: String,
    pub step_cap: u64,
}

impl Ctx {
    pub fn new(path: impl Into<String>, step_cap: u64) -> Self {
        Ctx { path: path.into(), step_cap }
    }

    pub fn with_default_cap(path: impl Into<String>) -> Self {
        Ctx::new(path, DEFAULT_STEP_CAP)
    }

    pub fn schema(&self, field: impl Into<String>, message: impl Into<String>) -> CliError {
        CliError::Schema { path: self.path.clone(), field: field.into(), message: message.into() }
    }

    pub fn poly(&self, text: &str, names: &[String], field: &str) -> CliResult<MPoly> {
        parse_poly(text, names).map_err(|e| match e {
            lra_core::Error::Parse { column, message } => CliError::Polynomial(Box::new(PolySyntax {
                path: self.path.clone(),
                field: field.into(),
                text: text.into(),
                caret: " ".repeat(column.saturating_sub(1)),
                column,
                message,
            })),
            other => self.schema(field, other.to_string()),
        })
    }

    fn polys(&self, texts: &[String], names: &[String], field: &str) -> CliResult<Vec<MPoly>> {
        texts.iter().enumerate().map(|(i, t)| self.poly(t, names, &format!("{field}[{i}]"))).collect()
    }

    fn expect_len(&self, field: &str, found: usize, expected: usize) -> CliResult<()> {
        if found == expected {
            Ok(())
        } else {
            Err(self.schema(field, format!("expected {expected} entries, found {found}")))
        }
    }

    fn lookup(&self, index: &BTreeMap<&str, usize>, name: &str, field: &str, what: &str) -> CliResult<usize> {
        index.get(name).copied().ok_or_else(|| self.schema(field, format!("unknown {what} `{name}`")))
    }

    pub fn algebra(&self, b: &AlgebraBody, field: &str) -> CliResult<AlgebraPres> {
        let order = MonomialOrder::from_tag(&b.order)
            .ok_or_else(|| self.schema(format!("{field}.order"), format!("unknown monomial order `{}`", b.order)))?;
        let gens = self.polys(&b.relations, &b.variables, &format!("{field}.relations"))?;
        Ok(AlgebraPres::with_options(b.variables.clone(), gens, order, self.step_cap)?)
    }

    pub fn alg_morphism(&self, b: &MorphismBody) -> CliResult<AlgMorphism> {
        let source = self.algebra(&b.source, "body.source")?;
        let target = self.algebra(&b.target, "body.target")?;
        self.expect_len("body.images", b.images.len(), source.nvars())?;
        let images = self.polys(&b.images, target.variables(), "body.images")?;
        Ok(AlgMorphism::new(source, target, images)?)
    }

    pub fn derivation(&self, b: &DerivationBody) -> CliResult<Derivation> {
        let a = self.algebra(&b.algebra, "body.algebra")?;
        self.expect_len("body.images", b.images.len(), a.nvars())?;
        let images = self.polys(&b.images, a.variables(), "body.images")?;
        Ok(Derivation::new(a, images)?)
    }

    pub fn palg(&self, b: &PalgBody) -> CliResult<PAlg> {
        let a = self.algebra(&b.algebra, "body.algebra")?;
        let m = b.basis.len();
        self.expect_len("body.anchors", b.anchors.len(), m)?;
        let mut anchors = Vec::with_capacity(m);
        for (i, row) in b.anchors.iter().enumerate() {
            let field = format!("body.anchors[{i}]");
            self.expect_len(&field, row.len(), a.nvars())?;
            anchors.push(Derivation::new(a.clone(), self.polys(row, a.variables(), &field)?)?);
        }
        let index: BTreeMap<&str, usize> = b.basis.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
        let mut table = BTreeMap::new();
        for (k, entry) in b.brackets.iter().enumerate() {
            let field = format!("body.brackets[{k}]");
            let i = self.lookup(&index, &entry.left, &format!("{field}.left"), "basis vector")?;
            let j = self.lookup(&index, &entry.right, &format!("{field}.right"), "basis vector")?;
            if i >= j {
                return Err(self.schema(field, "left must precede right in the basis"));
            }
            self.expect_len(&format!("{field}.value"), entry.value.len(), m)?;
            let value = self.polys(&entry.value, a.variables(), &format!("{field}.value"))?;
            if table.insert((i, j), value).is_some() {
                return Err(self.schema(field, "duplicate bracket entry"));
            }
        }
        Ok(PAlg::new(a, b.basis.clone(), anchors, table)?)
    }

    pub fn element(&self, e: &PAlg, b: &ElementBody) -> CliResult<PAElement> {
        if b.tensor.is_some() {
            return Err(self.schema("body.tensor", "a plain element has no tensor part"));
        }
        self.expect_len("body.coords", b.coords.len(), e.rank())?;
        let coords = self.polys(&b.coords, e.algebra().variables(), "body.coords")?;
        Ok(e.element(coords)?)
    }

    pub fn mixed_element(&self, ctx: &PsiSum<PAlg>, b: &ElementBody) -> CliResult<MixedElement<PAElement>> {
        let tensor = b.tensor.as_ref().ok_or_else(|| self.schema("body.tensor", "missing tensor part"))?;
        let f = ctx.f();
        self.expect_len("body.tensor", tensor.len(), ctx.e().rank())?;
        self.expect_len("body.coords", b.coords.len(), f.rank())?;
        let tensor = self.polys(tensor, f.algebra().variables(), "body.tensor")?;
        let coords = self.polys(&b.coords, f.algebra().variables(), "body.coords")?;
        Ok(ctx.element(tensor, f.element(coords)?)?)
    }

    fn psi(&self, e: &PAlg, f: &PAlg, b: &PaMapBody) -> CliResult<AlgMorphism> {
        self.expect_len("body.psi", b.psi.len(), e.algebra().nvars())?;
        let images = self.polys(&b.psi, f.algebra().variables(), "body.psi")?;
        Ok(AlgMorphism::new(e.algebra().clone(), f.algebra().clone(), images)?)
    }

    fn rows(&self, b: &PaMapBody, f: &PAlg, rows: usize, cols: usize) -> CliResult<Vec<Vec<MPoly>>> {
        self.expect_len("body.images", b.images.len(), rows)?;
        b.images
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let field = format!("body.images[{i}]");
                self.expect_len(&field, row.len(), cols)?;
                self.polys(row, f.algebra().variables(), &field)
            })
            .collect()
    }

    pub fn pamorphism(&self, e: &PAlg, f: &PAlg, b: &PaMapBody) -> CliResult<PAMorphism> {
        let psi = self.psi(e, f, b)?;
        let images = self.rows(b, f, e.rank(), f.rank())?;
        Ok(PAMorphism::new(e.clone(), f.clone(), psi, images)?)
    }

    pub fn pacomorphism(&self, e: &PAlg, f: &PAlg, b: &PaMapBody) -> CliResult<PAComorphism> {
        let psi = self.psi(e, f, b)?;
        let images = self.rows(b, f, f.rank(), e.rank())?;
        Ok(PAComorphism::new(e.clone(), f.clone(), psi, images)?)
    }

    pub fn groupoid(&self, b: &GroupoidBody) -> CliResult<FinGroupoid> {
        let objects: BTreeMap<&str, usize> = b.objects.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
        let arrows: BTreeMap<&str, usize> = b.arrows.iter().enumerate().map(|(i, a)| (a.name.as_str(), i)).collect();
        let (mut src, mut tgt, mut inv) = (Vec::new(), Vec::new(), Vec::new());
        for (k, a) in b.arrows.iter().enumerate() {
            let field = format!("body.arrows[{k}]");
            src.push(self.lookup(&objects, &a.source, &format!("{field}.source"), "object")?);
            tgt.push(self.lookup(&objects, &a.target, &format!("{field}.target"), "object")?);
            inv.push(self.lookup(&arrows, &a.inverse, &format!("{field}.inverse"), "arrow")?);
        }
        self.expect_len("body.identities", b.identities.len(), b.objects.len())?;
        let ids = b
            .identities
            .iter()
            .enumerate()
            .map(|(k, g)| self.lookup(&arrows, g, &format!("body.identities[{k}]"), "arrow"))
            .collect::<CliResult<Vec<_>>>()?;
        let mut comp = BTreeMap::new();
        for (k, entry) in b.composition.iter().enumerate() {
            let field = |p: usize| format!("body.composition[{k}][{p}]");
            let g = self.lookup(&arrows, &entry[0], &field(0), "arrow")?;
            let h = self.lookup(&arrows, &entry[1], &field(1), "arrow")?;
            let gh = self.lookup(&arrows, &entry[2], &field(2), "arrow")?;
            if comp.insert((g, h), gh).is_some() {
                return Err(self.schema(format!("body.composition[{k}]"), "duplicate composition entry"));
            }
        }
        let names = b.arrows.iter().map(|a| a.name.clone()).collect();
        Ok(FinGroupoid::new(b.objects.clone(), names, src, tgt, ids, inv, &comp)?)
    }

    pub fn grpd_map(&self, gamma: &FinGroupoid, pi: &FinGroupoid, b: &GrpdMapBody) -> CliResult<GrpdMap> {
        let index = |names: &[String]| -> BTreeMap<String, usize> {
            names.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect()
        };
        let (go, ga, po, pa) = (index(gamma.objects()), index(gamma.arrows()), index(pi.objects()), index(pi.arrows()));
        let look = |m: &BTreeMap<String, usize>, name: &str, field: String, what: &str| {
            m.get(name).copied().ok_or_else(|| self.schema(field, format!("unknown {what} `{name}`")))
        };
        let mut base = vec![None; gamma.n_objects()];
        for (k, [x, y]) in b.base.iter().enumerate() {
            let x = look(&go, x, format!("body.base[{k}][0]"), "source object")?;
            let y = look(&po, y, format!("body.base[{k}][1]"), "target object")?;
            if base[x].replace(y).is_some() {
                return Err(self.schema(format!("body.base[{k}]"), "object mapped twice"));
            }
        }
        let base = base
            .into_iter()
            .enumerate()
            .map(|(x, y)| y.ok_or_else(|| self.schema("body.base", format!("object `{}` is not mapped", gamma.objects()[x]))))
            .collect::<CliResult<Vec<_>>>()?;
        match b.map.as_str() {
            "morphism" => {
                if !b.table.is_empty() {
                    return Err(self.schema("body.table", "a morphism has no comorphism table"));
                }
                let mut arrow_map = vec![None; gamma.n_arrows()];
                for (k, [g, w]) in b.arrows.iter().enumerate() {
                    let g = look(&ga, g, format!("body.arrows[{k}][0]"), "source arrow")?;
                    let w = look(&pa, w, format!("body.arrows[{k}][1]"), "target arrow")?;
                    if arrow_map[g].replace(w).is_some() {
                        return Err(self.schema(format!("body.arrows[{k}]"), "arrow mapped twice"));
                    }
                }
                let arrow_map = arrow_map
                    .into_iter()
                    .enumerate()
                    .map(|(g, w)| {
                        w.ok_or_else(|| self.schema("body.arrows", format!("arrow `{}` is not mapped", gamma.arrows()[g])))
                    })
                    .collect::<CliResult<Vec<_>>>()?;
                Ok(GrpdMap::Morphism(GrpdMorphism { base, arrow_map }))
            }
            "comorphism" => {
                if !b.arrows.is_empty() {
                    return Err(self.schema("body.arrows", "a comorphism has no arrow map"));
                }
                let mut table = BTreeMap::new();
                for (k, [x, w, g]) in b.table.iter().enumerate() {
                    let x = look(&go, x, format!("body.table[{k}][0]"), "source object")?;
                    let w = look(&pa, w, format!("body.table[{k}][1]"), "target arrow")?;
                    let g = look(&ga, g, format!("body.table[{k}][2]"), "source arrow")?;
                    if table.insert((x, w), g).is_some() {
                        return Err(self.schema(format!("body.table[{k}]"), "duplicate table entry"));
                    }
                }
                Ok(GrpdMap::Comorphism(GrpdComorphism { base, table }))
            }
            other => Err(self.schema("body.map", format!("expected `morphism` or `comorphism`, found `{other}`"))),
        }
    }

    pub fn action(&self, gamma: &FinGroupoid, b: &ActionBody) -> CliResult<GroupoidAction> {
        let points: BTreeMap<&str, usize> = b.space.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
        let objects: BTreeMap<&str, usize> =
            gamma.objects().iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
        let arrows: BTreeMap<&str, usize> = gamma.arrows().iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
        if points.len() != b.space.len() {
            return Err(self.schema("body.space", "duplicate point"));
        }
        self.expect_len("body.fibration", b.fibration.len(), b.space.len())?;
        let fibration = b
            .fibration
            .iter()
            .enumerate()
            .map(|(k, m)| self.lookup(&objects, m, &format!("body.fibration[{k}]"), "object"))
            .collect::<CliResult<Vec<_>>>()?;
        let mut act = BTreeMap::new();
        for (k, [z, g, z2]) in b.table.iter().enumerate() {
            let field = |p: usize| format!("body.table[{k}][{p}]");
            let z = self.lookup(&points, z, &field(0), "point")?;
            let g = self.lookup(&arrows, g, &field(1), "arrow")?;
            let z2 = self.lookup(&points, z2, &field(2), "point")?;
            if act.insert((z, g), z2).is_some() {
                return Err(self.schema(format!("body.table[{k}]"), "duplicate table entry"));
            }
        }
        Ok(GroupoidAction { space: b.space.clone(), fibration, act })
    }
}

pub fn algebra_body(a: &AlgebraPres) -> AlgebraBody {
    AlgebraBody {
        order: a.ideal().order().tag().to_string(),
        relations: a.ideal().generators().iter().map(|g| a.render(g)).collect(),
        variables: a.variables().to_vec(),
    }
}

pub fn alg_morphism_body(m: &AlgMorphism) -> MorphismBody {
    MorphismBody {
        images: m.images().iter().map(|p| m.target().render(p)).collect(),
        source: algebra_body(m.source()),
        target: algebra_body(m.target()),
    }
}

pub fn derivation_body(d: &Derivation) -> DerivationBody {
    let a = d.algebra();
    DerivationBody { algebra: algebra_body(a), images: d.images().iter().map(|p| a.render(p)).collect() }
}

pub fn palg_body(e: &PAlg) -> PalgBody {
    let a = e.algebra();
    let render = |ps: &[MPoly]| ps.iter().map(|p| a.render(p)).collect::<Vec<_>>();
    let brackets = e
        .structure_table()
        .into_iter()
        .filter(|(_, v)| v.iter().any(|p| !p.is_zero()))
        .map(|((i, j), v)| BracketEntry {
            left: e.basis_names()[i].clone(),
            right: e.basis_names()[j].clone(),
            value: render(&v),
        })
        .collect();
    PalgBody {
        algebra: algebra_body(a),
        anchors: e.anchors().iter().map(|d| render(d.images())).collect(),
        basis: e.basis_names().to_vec(),
        brackets,
    }
}

pub fn element_body(e: &PAlg, x: &PAElement) -> ElementBody {
    ElementBody { coords: x.coords().iter().map(|p| e.algebra().render(p)).collect(), tensor: None }
}

pub fn mixed_element_body(ctx: &PsiSum<PAlg>, z: &MixedElement<PAElement>) -> ElementBody {
    let b = ctx.f().algebra();
    ElementBody {
        coords: z.f_part.coords().iter().map(|p| b.render(p)).collect(),
        tensor: Some(z.tensor.iter().map(|p| b.render(p)).collect()),
    }
}

pub fn pamorphism_body(m: &PAMorphism) -> PaMapBody {
    let b = m.target().algebra();
    PaMapBody {
        images: m.images().iter().map(|y| y.coords().iter().map(|p| b.render(p)).collect()).collect(),
        psi: m.psi().images().iter().map(|p| b.render(p)).collect(),
    }
}

pub fn pacomorphism_body(m: &PAComorphism) -> PaMapBody {
    let b = m.f().algebra();
    PaMapBody {
        images: m.images().iter().map(|row| row.iter().map(|p| b.render(p)).collect()).collect(),
        psi: m.psi().images().iter().map(|p| b.render(p)).collect(),
    }
}

pub fn groupoid_body(g: &FinGroupoid) -> GroupoidBody {
    let an = |a: usize| g.arrows()[a].clone();
    GroupoidBody {
        arrows: (0..g.n_arrows())
            .map(|a| ArrowEntry {
                inverse: an(g.inv(a)),
                name: an(a),
                source: g.objects()[g.src(a)].clone(),
                target: g.objects()[g.tgt(a)].clone(),
            })
            .collect(),
        composition: g.composition_table().into_iter().map(|((a, b), c)| [an(a), an(b), an(c)]).collect(),
        identities: (0..g.n_objects()).map(|x| an(g.id(x))).collect(),
        objects: g.objects().to_vec(),
    }
}

pub fn grpd_map_body(gamma: &FinGroupoid, pi: &FinGroupoid, m: &GrpdMap) -> GrpdMapBody {
    let base = m
        .base()
        .iter()
        .enumerate()
        .map(|(x, &y)| [gamma.objects()[x].clone(), pi.objects()[y].clone()])
        .collect();
    match m {
        GrpdMap::Morphism(f) => GrpdMapBody {
            arrows: f
                .arrow_map
                .iter()
                .enumerate()
                .map(|(g, &w)| [gamma.arrows()[g].clone(), pi.arrows()[w].clone()])
                .collect(),
            base,
            map: "morphism".into(),
            table: Vec::new(),
        },
        GrpdMap::Comorphism(c) => GrpdMapBody {
            arrows: Vec::new(),
            base,
            map: "comorphism".into(),
            table: c
                .table
                .iter()
                .map(|(&(x, w), &g)| [gamma.objects()[x].clone(), pi.arrows()[w].clone(), gamma.arrows()[g].clone()])
                .collect(),
        },
    }
}

pub fn action_body(gamma: &FinGroupoid, s: &GroupoidAction) -> ActionBody {
    ActionBody {
        fibration: s.fibration.iter().map(|&m| gamma.objects()[m].clone()).collect(),
        space: s.space.clone(),
        table: s
            .act
            .iter()
            .map(|(&(z, g), &z2)| [s.space[z].clone(), gamma.arrows()[g].clone(), s.space[z2].clone()])
            .collect(),
    }
}
