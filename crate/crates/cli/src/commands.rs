//! Command-line grammar and dispatch.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lra_core::exactpoly::{check_derivation, check_morphism, AlgMorphism, MPoly, DEFAULT_STEP_CAP};
use lra_core::groupoid::{
    action_as_comorphism, all_base_maps, check_groupoid, check_groupoid_action, check_grpd_map, enumerate_maps,
    graph_of, graph_subgroupoid_check, group_groupoid, induced_groupoid_action, make_direct_product, make_gauge,
    make_pair, make_phi_product, make_action_groupoid_of_action, restrict_groupoid, FinGroup, FinGroupoid, GrpdMap,
    MapKind, PrincipalBundle, Route, SEARCH_LIMIT,
};
use lra_core::morphisms::{
    chain_map_check, check_pacomorphism, check_pamorphism, comorphism_graph_check, compose_comorphisms,
    compose_morphisms, morphism_graph_check, PAComorphism, PAMorphism,
};
use lra_core::pseudoalg::{axioms_check, jacobiator, PAElement, PAlg, Pseudoalgebra};
use lra_core::psisum::{MixedElement, PsiSum};
use lra_core::restrict::RestrictionCtx;
use lra_core::{Execution, Report};

use crate::doc::{self, Ctx, Document, Kind};
use crate::error::{CliError, CliResult};
use crate::verdict::{Format, VerdictReport};

/// Environment variable overriding the Groebner step cap.
pub const STEP_CAP_ENV: &str = "LRA_STEP_CAP";

#[derive(Debug, Parser)]
#[command(name = "lra", version, about = "Exact checks for Lie pseudoalgebras, their (co)morphisms and finite groupoids")]
pub struct Cli {
    /// Output format of verdict reports.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check an algebra presentation, an algebra map or a derivation.
    CheckAlgebra { doc: PathBuf },
    /// Check the pseudoalgebra axioms.
    CheckPalg { palg: PathBuf },
    /// Restriction to an ideal.
    #[command(subcommand)]
    Restrict(RestrictCmd),
    /// Psi-sums of two pseudoalgebras.
    #[command(subcommand)]
    Psisum(PsisumCmd),
    /// Run a direct verifier.
    Check {
        #[arg(value_enum)]
        what: CheckWhat,
        e: PathBuf,
        f: PathBuf,
        map: PathBuf,
    },
    /// Run the direct verifier and the graph route side by side.
    GraphTheorem {
        #[arg(value_enum)]
        kind: PaKind,
        e: PathBuf,
        f: PathBuf,
        map: PathBuf,
    },
    /// Compose `m1: E → F` with `m2: F → G` (comorphisms: `E ⇐ F ⇐ G`).
    Compose {
        #[arg(value_enum)]
        kind: PaKind,
        e: PathBuf,
        f: PathBuf,
        g: PathBuf,
        m1: PathBuf,
        m2: PathBuf,
        /// Write the composite document here.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Finite groupoids.
    #[command(subcommand)]
    Grpd(GrpdCmd),
    /// Re-render a document canonically.
    Render { doc: PathBuf },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckWhat {
    Morphism,
    Comorphism,
    Chainmap,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PaKind {
    Morphism,
    Comorphism,
}

#[derive(Debug, Clone, Args)]
pub struct IdealArgs {
    /// Generators of the ideal, in the variables of the pseudoalgebra.
    #[arg(long = "ideal", required = true, num_args = 1..)]
    pub ideal: Vec<String>,
}

#[derive(Debug, Subcommand)]
pub enum RestrictCmd {
    /// Is the element in the upper set, and in the ideal times the module.
    Member {
        palg: PathBuf,
        element: PathBuf,
        #[command(flatten)]
        ideal: IdealArgs,
    },
    /// The quotient bracket of two elements of the upper set.
    Bracket {
        palg: PathBuf,
        x: PathBuf,
        y: PathBuf,
        #[command(flatten)]
        ideal: IdealArgs,
    },
}

#[derive(Debug, Subcommand)]
pub enum PsisumCmd {
    /// Membership of an element.
    Member { e: PathBuf, f: PathBuf, psi: PathBuf, z: PathBuf },
    /// Bracket of two members.
    Bracket { e: PathBuf, f: PathBuf, psi: PathBuf, z1: PathBuf, z2: PathBuf },
    /// Membership, closure on all pairs and Jacobi on all triples.
    ClosureSuite {
        e: PathBuf,
        f: PathBuf,
        psi: PathBuf,
        #[arg(required = true, num_args = 1..)]
        elements: Vec<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum GrpdCmd {
    /// Build a groupoid document.
    #[command(subcommand)]
    Build(BuildCmd),
    /// Check the groupoid axioms.
    Check { groupoid: PathBuf },
    /// Check a morphism or comorphism.
    CheckMap { gamma: PathBuf, pi: PathBuf, map: PathBuf },
    /// Direct verifier and graph route side by side.
    GraphTheorem { gamma: PathBuf, pi: PathBuf, map: PathBuf },
    /// Enumerate all maps by both routes and compare.
    Enumerate {
        gamma: PathBuf,
        pi: PathBuf,
        #[arg(long, value_enum)]
        kind: PaKind,
        /// Base map as target object names in source object order; all maps when absent.
        #[arg(long, value_delimiter = ',')]
        phi: Option<Vec<String>>,
        /// Disable the thread pool.
        #[arg(long)]
        sequential: bool,
    },
    /// Check an action and its round trip through the pair groupoid.
    Action { gamma: PathBuf, action: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum BuildCmd {
    /// The pair groupoid on the given objects.
    Pair {
        #[arg(required = true, num_args = 1..)]
        objects: Vec<String>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// The cyclic group of the given order as a one-object groupoid.
    Group {
        order: usize,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// The direct product.
    Product {
        gamma: PathBuf,
        pi: PathBuf,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// The restriction of the direct product to the graph of the base map.
    PhiProduct {
        gamma: PathBuf,
        pi: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        phi: Vec<String>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// The gauge groupoid of the trivial bundle `base × Z/n`.
    Gauge {
        #[arg(long, value_delimiter = ',', required = true)]
        base: Vec<String>,
        #[arg(long)]
        order: usize,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// The full subgroupoid on the given objects.
    Restrict {
        groupoid: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        keep: Vec<String>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// The action groupoid of a groupoid action.
    Action {
        gamma: PathBuf,
        action: PathBuf,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

/// What a command prints and how the process exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Reads the step cap from [`STEP_CAP_ENV`], defaulting when unset.
pub fn step_cap_from_env() -> CliResult<u64> {
    match std::env::var(STEP_CAP_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{STEP_CAP_ENV} must be a positive integer, found `{v}`"))),
        Err(_) => Ok(DEFAULT_STEP_CAP),
    }
}

enum Produced {
    Verdict(Report, Option<String>),
    Document(String),
}

struct Runner {
    step_cap: u64,
}

fn display(p: &Path) -> String {
    p.display().to_string()
}

impl Runner {
    fn ctx(&self, p: &Path) -> Ctx {
        Ctx::new(display(p), self.step_cap)
    }

    fn load(&self, p: &Path) -> CliResult<Document> {
        let text = std::fs::read_to_string(p).map_err(|source| CliError::Io { path: display(p), source })?;
        Document::parse(&display(p), &text)
    }

    fn wrong_kind(&self, p: &Path, found: Kind, expected: &str) -> CliError {
        self.ctx(p).schema("kind", format!("expected {expected}, found {found}"))
    }

    fn palg(&self, p: &Path) -> CliResult<PAlg> {
        match self.load(p)? {
            Document::Palg(b) => self.ctx(p).palg(&b),
            d => Err(self.wrong_kind(p, d.kind(), "palg")),
        }
    }

    fn groupoid(&self, p: &Path) -> CliResult<FinGroupoid> {
        match self.load(p)? {
            Document::Groupoid(b) => self.ctx(p).groupoid(&b),
            d => Err(self.wrong_kind(p, d.kind(), "groupoid")),
        }
    }

    fn element(&self, e: &PAlg, p: &Path) -> CliResult<PAElement> {
        match self.load(p)? {
            Document::Element(b) => self.ctx(p).element(e, &b),
            d => Err(self.wrong_kind(p, d.kind(), "element")),
        }
    }

    fn mixed(&self, ctx: &PsiSum<PAlg>, p: &Path) -> CliResult<MixedElement<PAElement>> {
        match self.load(p)? {
            Document::Element(b) => self.ctx(p).mixed_element(ctx, &b),
            d => Err(self.wrong_kind(p, d.kind(), "element")),
        }
    }

    fn alg_morphism(&self, p: &Path) -> CliResult<AlgMorphism> {
        match self.load(p)? {
            Document::Morphism(b) => self.ctx(p).alg_morphism(&b),
            d => Err(self.wrong_kind(p, d.kind(), "morphism")),
        }
    }

    fn pamorphism(&self, e: &PAlg, f: &PAlg, p: &Path) -> CliResult<PAMorphism> {
        match self.load(p)? {
            Document::Pamorphism(b) => self.ctx(p).pamorphism(e, f, &b),
            d => Err(self.wrong_kind(p, d.kind(), "pamorphism")),
        }
    }

    fn pacomorphism(&self, e: &PAlg, f: &PAlg, p: &Path) -> CliResult<PAComorphism> {
        match self.load(p)? {
            Document::Pacomorphism(b) => self.ctx(p).pacomorphism(e, f, &b),
            d => Err(self.wrong_kind(p, d.kind(), "pacomorphism")),
        }
    }

    fn psisum(&self, e: &Path, f: &Path, psi: &Path) -> CliResult<PsiSum<PAlg>> {
        let (e, f, psi) = (self.palg(e)?, self.palg(f)?, self.alg_morphism(psi)?);
        Ok(PsiSum::new(e, f, psi)?)
    }

    fn ideal(&self, e: &PAlg, ideal: &IdealArgs) -> CliResult<RestrictionCtx> {
        let ctx = Ctx::new("command line", self.step_cap);
        let gens = ideal
            .ideal
            .iter()
            .enumerate()
            .map(|(i, g)| ctx.poly(g, e.algebra().variables(), &format!("--ideal[{i}]")))
            .collect::<CliResult<Vec<MPoly>>>()?;
        Ok(RestrictionCtx::with_step_cap(e.clone(), gens, self.step_cap)?)
    }

    fn run(&self, command: &Command) -> CliResult<Produced> {
        match command {
            Command::CheckAlgebra { doc } => self.check_algebra(doc),
            Command::CheckPalg { palg } => Ok(Produced::Verdict(axioms_check(&self.palg(palg)?), None)),
            Command::Restrict(cmd) => self.restrict(cmd),
            Command::Psisum(cmd) => self.psisum_cmd(cmd),
            Command::Check { what, e, f, map } => {
                let (e, f) = (self.palg(e)?, self.palg(f)?);
                let report = match what {
                    CheckWhat::Morphism => check_pamorphism(&self.pamorphism(&e, &f, map)?),
                    CheckWhat::Comorphism => check_pacomorphism(&self.pacomorphism(&e, &f, map)?),
                    CheckWhat::Chainmap => chain_map_check(&self.pacomorphism(&e, &f, map)?),
                };
                Ok(Produced::Verdict(report, None))
            }
            Command::GraphTheorem { kind, e, f, map } => {
                let (e, f) = (self.palg(e)?, self.palg(f)?);
                let (direct, graph) = match kind {
                    PaKind::Morphism => {
                        let m = self.pamorphism(&e, &f, map)?;
                        (check_pamorphism(&m), morphism_graph_check(&m)?)
                    }
                    PaKind::Comorphism => {
                        let m = self.pacomorphism(&e, &f, map)?;
                        (check_pacomorphism(&m), comorphism_graph_check(&m)?)
                    }
                };
                Ok(Produced::Verdict(side_by_side(direct, graph), None))
            }
            Command::Compose { kind, e, f, g, m1, m2, output } => self.compose(*kind, [e, f, g], m1, m2, output.as_deref()),
            Command::Grpd(cmd) => self.grpd(cmd),
            Command::Render { doc } => self.render(doc),
        }
    }

    fn check_algebra(&self, p: &Path) -> CliResult<Produced> {
        let ctx = self.ctx(p);
        match self.load(p)? {
            Document::Algebra(b) => {
                let a = ctx.algebra(&b, "body")?;
                let mut report = Report::new("algebra presentation");
                report.pass("ideal is proper");
                let gb: Vec<String> = a.ideal().groebner().iter().map(|g| a.render(g)).collect();
                let result = if gb.is_empty() { "Groebner basis: (none)".into() } else { format!("Groebner basis: {}", gb.join(", ")) };
                Ok(Produced::Verdict(report, Some(result)))
            }
            Document::Morphism(b) => Ok(Produced::Verdict(check_morphism(&ctx.alg_morphism(&b)?), None)),
            Document::Derivation(b) => Ok(Produced::Verdict(check_derivation(&ctx.derivation(&b)?), None)),
            d => Err(self.wrong_kind(p, d.kind(), "algebra, morphism or derivation")),
        }
    }

    fn restrict(&self, cmd: &RestrictCmd) -> CliResult<Produced> {
        match cmd {
            RestrictCmd::Member { palg, element, ideal } => {
                let e = self.palg(palg)?;
                let ctx = self.ideal(&e, ideal)?;
                let x = self.element(&e, element)?;
                let a = e.algebra();
                let mut report = Report::new("restriction membership");
                for g in ctx.generators() {
                    let image = e.anchor_apply(&x, g);
                    report.record(format!("anchor maps {} into the ideal", a.render(g)), ctx.in_ideal(&image), || {
                        format!("{} applied to {} gives {}, not in the ideal", e.render(&x), a.render(g), a.render(&image))
                    });
                }
                let result = format!(
                    "in ideal times module: {}\nclass: {}",
                    ctx.in_lower(&x)?,
                    ctx.render(&ctx.reduce(&x))
                );
                Ok(Produced::Verdict(report, Some(result)))
            }
            RestrictCmd::Bracket { palg, x, y, ideal } => {
                let e = self.palg(palg)?;
                let ctx = self.ideal(&e, ideal)?;
                let (x, y) = (self.element(&e, x)?, self.element(&e, y)?);
                let coords = ctx.quotient_bracket(&x, &y)?;
                let parent = e.bracket(&x, &y);
                let mut report = Report::new("restriction bracket");
                let inside = ctx.in_upper(&parent)?;
                report.record("bracket lies in the upper set", inside, || {
                    format!("{} leaves the upper set", e.render(&parent))
                });
                Ok(Produced::Verdict(report, Some(ctx.render(&coords))))
            }
        }
    }

    fn psisum_cmd(&self, cmd: &PsisumCmd) -> CliResult<Produced> {
        match cmd {
            PsisumCmd::Member { e, f, psi, z } => {
                let ctx = self.psisum(e, f, psi)?;
                let z = self.mixed(&ctx, z)?;
                Ok(Produced::Verdict(ctx.membership_report(&z), Some(ctx.render(&z))))
            }
            PsisumCmd::Bracket { e, f, psi, z1, z2 } => {
                let ctx = self.psisum(e, f, psi)?;
                let (z1, z2) = (self.mixed(&ctx, z1)?, self.mixed(&ctx, z2)?);
                let br = ctx.psisum_bracket(&z1, &z2)?;
                let mut report = Report::new("psi-sum bracket");
                report.absorb("bracket", ctx.membership_report(&br));
                let doc = Document::Element(doc::mixed_element_body(&ctx, &br));
                Ok(Produced::Verdict(report, Some(format!("{}\n{}", ctx.render(&br), doc.render()))))
            }
            PsisumCmd::ClosureSuite { e, f, psi, elements } => {
                let ctx = self.psisum(e, f, psi)?;
                let zs = elements.iter().map(|p| self.mixed(&ctx, p)).collect::<CliResult<Vec<_>>>()?;
                Ok(Produced::Verdict(closure_suite(&ctx, &zs)?, None))
            }
        }
    }

    fn compose(
        &self,
        kind: PaKind,
        [e, f, g]: [&PathBuf; 3],
        m1: &Path,
        m2: &Path,
        output: Option<&Path>,
    ) -> CliResult<Produced> {
        let (e, f, g) = (self.palg(e)?, self.palg(f)?, self.palg(g)?);
        let (report, doc) = match kind {
            PaKind::Morphism => {
                let c = compose_morphisms(&self.pamorphism(&e, &f, m1)?, &self.pamorphism(&f, &g, m2)?)?;
                (check_pamorphism(&c), Document::Pamorphism(doc::pamorphism_body(&c)))
            }
            PaKind::Comorphism => {
                let c = compose_comorphisms(&self.pacomorphism(&e, &f, m1)?, &self.pacomorphism(&f, &g, m2)?)?;
                (check_pacomorphism(&c), Document::Pacomorphism(doc::pacomorphism_body(&c)))
            }
        };
        let text = doc.render();
        if let Some(out) = output {
            write(out, &text)?;
        }
        Ok(Produced::Verdict(report, Some(text)))
    }

    fn objects(&self, g: &FinGroupoid, names: &[String]) -> CliResult<Vec<usize>> {
        names
            .iter()
            .map(|n| g.object_index(n).ok_or_else(|| CliError::Usage(format!("unknown object `{n}`"))))
            .collect()
    }

    fn grpd(&self, cmd: &GrpdCmd) -> CliResult<Produced> {
        match cmd {
            GrpdCmd::Build(b) => self.build(b),
            GrpdCmd::Check { groupoid } => Ok(Produced::Verdict(check_groupoid(&self.groupoid(groupoid)?), None)),
            GrpdCmd::CheckMap { gamma, pi, map } => {
                let (g, p, m) = self.grpd_map(gamma, pi, map)?;
                Ok(Produced::Verdict(check_grpd_map(&g, &p, &m), None))
            }
            GrpdCmd::GraphTheorem { gamma, pi, map } => {
                let (g, p, m) = self.grpd_map(gamma, pi, map)?;
                let direct = check_grpd_map(&g, &p, &m);
                let graph = graph_subgroupoid_check(&g, &p, m.base(), m.kind(), &graph_of(&m));
                Ok(Produced::Verdict(side_by_side(direct, graph), None))
            }
            GrpdCmd::Enumerate { gamma, pi, kind, phi, sequential } => {
                let (g, p) = (self.groupoid(gamma)?, self.groupoid(pi)?);
                let kind = match kind {
                    PaKind::Morphism => MapKind::Morphism,
                    PaKind::Comorphism => MapKind::Comorphism,
                };
                let exec = if *sequential { Execution::Sequential } else { Execution::default() };
                let phis = match phi {
                    Some(names) => {
                        if names.len() != g.n_objects() {
                            return Err(CliError::Usage(format!("--phi needs {} objects", g.n_objects())));
                        }
                        vec![self.objects(&p, names)?]
                    }
                    None => {
                        let size = (0..g.n_objects()).fold(1u128, |s, _| s.saturating_mul(p.n_objects() as u128));
                        if size > SEARCH_LIMIT {
                            return Err(lra_core::Error::SearchTooLarge { size, limit: SEARCH_LIMIT }.into());
                        }
                        all_base_maps(g.n_objects(), p.n_objects())
                    }
                };
                let mut report = Report::new(format!("{kind} enumeration"));
                let mut total = 0;
                for phi in phis {
                    let direct = enumerate_maps(&g, &p, &phi, kind, Route::Direct, exec)?;
                    let graph = enumerate_maps(&g, &p, &phi, kind, Route::Graph, exec)?;
                    let label: Vec<&str> = phi.iter().map(|&y| p.objects()[y].as_str()).collect();
                    total += direct.len();
                    report.record(format!("over ({}), found {}", label.join(","), direct.len()), direct == graph, || {
                        format!("direct route finds {} maps, graph route finds {}", direct.len(), graph.len())
                    });
                }
                Ok(Produced::Verdict(report, Some(format!("{total} maps in total"))))
            }
            GrpdCmd::Action { gamma, action } => {
                let g = self.groupoid(gamma)?;
                let s = match self.load(action)? {
                    Document::Action(b) => self.ctx(action).action(&g, &b)?,
                    d => return Err(self.wrong_kind(action, d.kind(), "action")),
                };
                let mut report = Report::new("groupoid action");
                let axioms = check_groupoid_action(&g, &s);
                let ok = axioms.is_pass();
                report.absorb("", axioms);
                if ok {
                    let (pair, phi) = action_as_comorphism(&g, &s)?;
                    let (back, verdict) = induced_groupoid_action(&pair, &g, &phi)?;
                    report.absorb("induced", verdict);
                    report.record("round trip through the pair groupoid", back == s, || {
                        "the induced action differs from the input".into()
                    });
                }
                Ok(Produced::Verdict(report, None))
            }
        }
    }

    fn grpd_map(&self, gamma: &Path, pi: &Path, map: &Path) -> CliResult<(FinGroupoid, FinGroupoid, GrpdMap)> {
        let (g, p) = (self.groupoid(gamma)?, self.groupoid(pi)?);
        let m = match self.load(map)? {
            Document::Grpdmap(b) => self.ctx(map).grpd_map(&g, &p, &b)?,
            d => return Err(self.wrong_kind(map, d.kind(), "grpdmap")),
        };
        Ok((g, p, m))
    }

    fn build(&self, cmd: &BuildCmd) -> CliResult<Produced> {
        let (g, output) = match cmd {
            BuildCmd::Pair { objects, output } => {
                let names: Vec<&str> = objects.iter().map(String::as_str).collect();
                (make_pair(&names)?, output)
            }
            BuildCmd::Group { order, output } => {
                if *order == 0 {
                    return Err(CliError::Usage("group order must be positive".into()));
                }
                (group_groupoid(&FinGroup::cyclic(*order)), output)
            }
            BuildCmd::Product { gamma, pi, output } => {
                (make_direct_product(&self.groupoid(gamma)?, &self.groupoid(pi)?), output)
            }
            BuildCmd::PhiProduct { gamma, pi, phi, output } => {
                let (g, p) = (self.groupoid(gamma)?, self.groupoid(pi)?);
                if phi.len() != g.n_objects() {
                    return Err(CliError::Usage(format!("--phi needs {} objects", g.n_objects())));
                }
                let phi = self.objects(&p, phi)?;
                (make_phi_product(&g, &p, &phi)?, output)
            }
            BuildCmd::Gauge { base, order, output } => {
                if *order == 0 {
                    return Err(CliError::Usage("group order must be positive".into()));
                }
                let names: Vec<&str> = base.iter().map(String::as_str).collect();
                (make_gauge(&PrincipalBundle::trivial(&names, FinGroup::cyclic(*order)))?, output)
            }
            BuildCmd::Restrict { groupoid, keep, output } => {
                let g = self.groupoid(groupoid)?;
                let keep = self.objects(&g, keep)?;
                (restrict_groupoid(&g, &keep)?, output)
            }
            BuildCmd::Action { gamma, action, output } => {
                let g = self.groupoid(gamma)?;
                let s = match self.load(action)? {
                    Document::Action(b) => self.ctx(action).action(&g, &b)?,
                    d => return Err(self.wrong_kind(action, d.kind(), "action")),
                };
                (make_action_groupoid_of_action(&g, &s)?.groupoid, output)
            }
        };
        let text = Document::Groupoid(doc::groupoid_body(&g)).render();
        match output {
            Some(out) => {
                write(out, &text)?;
                Ok(Produced::Document(String::new()))
            }
            None => Ok(Produced::Document(text)),
        }
    }

    fn render(&self, p: &Path) -> CliResult<Produced> {
        let ctx = self.ctx(p);
        let doc = match self.load(p)? {
            Document::Algebra(b) => Document::Algebra(doc::algebra_body(&ctx.algebra(&b, "body")?)),
            Document::Morphism(b) => Document::Morphism(doc::alg_morphism_body(&ctx.alg_morphism(&b)?)),
            Document::Derivation(b) => Document::Derivation(doc::derivation_body(&ctx.derivation(&b)?)),
            Document::Palg(b) => Document::Palg(doc::palg_body(&ctx.palg(&b)?)),
            Document::Groupoid(b) => Document::Groupoid(doc::groupoid_body(&ctx.groupoid(&b)?)),
            other => other,
        };
        Ok(Produced::Document(doc.render()))
    }
}

fn write(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: display(path), source })
}

fn side_by_side(direct: Report, graph: Report) -> Report {
    let (d, g) = (direct.is_pass(), graph.is_pass());
    let mut report = Report::new("graph theorem");
    report.absorb("direct", direct);
    report.absorb("graph", graph);
    report.record("routes agree", d == g, || format!("direct route says {d}, graph route says {g}"));
    report
}

fn closure_suite(ctx: &PsiSum<PAlg>, zs: &[MixedElement<PAElement>]) -> CliResult<Report> {
    let mut report = Report::new(format!("psi-sum closure on {} elements", zs.len()));
    for (i, z) in zs.iter().enumerate() {
        let r = ctx.membership_report(z);
        report.record(format!("element {i} is a member"), r.is_pass(), || r.summary());
    }
    if !report.is_pass() {
        return Ok(report);
    }
    let n = zs.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let brackets = Execution::default().map(&pairs, |&(i, j)| ctx.psisum_bracket(&zs[i], &zs[j]));
    for (&(i, j), br) in pairs.iter().zip(brackets) {
        let br = br?;
        report.record(format!("bracket of {i}, {j} is a member"), ctx.membership(&br), || {
            format!("{} fails membership", ctx.render(&br))
        });
    }
    let triples: Vec<(usize, usize, usize)> =
        pairs.iter().flat_map(|&(i, j)| (j + 1..n).map(move |k| (i, j, k))).collect();
    let jacobi = Execution::default().map(&triples, |&(i, j, k)| jacobiator(ctx, &zs[i], &zs[j], &zs[k]));
    for (&(i, j, k), jac) in triples.iter().zip(jacobi) {
        report.record(format!("Jacobi on {i}, {j}, {k}"), ctx.is_zero(&jac), || {
            format!("Jacobiator is {}", ctx.render(&jac))
        });
    }
    Ok(report)
}

/// Runs a parsed command line with the given step cap.
pub fn run(cli: &Cli, step_cap: u64) -> Outcome {
    let start = Instant::now();
    let produced = Runner { step_cap }.run(&cli.command);
    let ms = start.elapsed().as_millis() as u64;
    match produced {
        Ok(Produced::Verdict(report, result)) => {
            let v = VerdictReport::new(&report, result, ms);
            Outcome { stdout: v.render(cli.format), stderr: String::new(), code: v.exit_code() }
        }
        Ok(Produced::Document(text)) => Outcome { stdout: text, stderr: String::new(), code: 0 },
        Err(CliError::Core(lra_core::Error::Verification(report))) => {
            let v = VerdictReport::new(&report, None, ms);
            Outcome { stdout: v.render(cli.format), stderr: String::new(), code: 1 }
        }
        Err(e) => Outcome { stdout: String::new(), stderr: format!("error: {e}\n"), code: e.exit_code() },
    }
}
