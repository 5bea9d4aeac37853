//! Morphisms and comorphisms of pseudoalgebras.
//!
//! A morphism `(Ψ, ψ): E → F` is an `A`-linear map over `ψ: A → B`, stored by
//! the images `Ψ(e_i) ∈ F`. A comorphism from `F` to `E` over `ψ` is a
//! `B`-linear map `Ψ: F → E ⊗_A B`, stored by `Ψ(f_j) = Σ_k e_k ⊗ b_jk`.
//!
//! Both verifiers work on bases. For morphisms, condition (1) is `A`-linear in
//! `X` and a `ψ`-derivation in `a`, and given (1) the bracket condition
//! satisfies `Ψ[X, aY] - [ΨX, Ψ(aY)] = ψ(a)(Ψ[X, Y] - [ΨX, ΨY])`. The same
//! Leibniz bookkeeping applies to comorphisms, so basis vectors and algebra
//! generators suffice.

use std::fmt;

use crate::error::{Error, Result};
use crate::exactpoly::{AlgMorphism, AlgebraPres, Derivation, MPoly};
use crate::exec::Execution;
use crate::pseudoalg::{differential, pair_index, pairs, KForm, PAElement, PAlg, Pseudoalgebra};
use crate::psisum::{MixedElement, PsiSum};
use crate::report::Report;

fn ensure_checked(psi: AlgMorphism) -> Result<AlgMorphism> {
    if psi.is_checked() {
        Ok(psi)
    } else {
        psi.verified()
    }
}

fn same_shape(e: &PAlg, f: &PAlg, psi: &AlgMorphism) -> Result<()> {
    e.algebra().expect_same(psi.source(), "source of psi")?;
    f.algebra().expect_same(psi.target(), "target of psi")
}

/// A candidate morphism `E → F` over `ψ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PAMorphism {
    e: PAlg,
    f: PAlg,
    psi: AlgMorphism,
    images: Vec<PAElement>,
}

impl PAMorphism {
    pub fn new(e: PAlg, f: PAlg, psi: AlgMorphism, images: Vec<Vec<MPoly>>) -> Result<Self> {
        same_shape(&e, &f, &psi)?;
        if images.len() != e.rank() {
            return Err(Error::RankMismatch { expected: e.rank(), found: images.len() });
        }
        let images = images.into_iter().map(|c| f.element(c)).collect::<Result<Vec<_>>>()?;
        Ok(PAMorphism { e, f, psi: ensure_checked(psi)?, images })
    }

    pub fn identity(e: &PAlg) -> Self {
        let images = (0..e.rank()).map(|i| e.basis_element(i)).collect();
        PAMorphism { e: e.clone(), f: e.clone(), psi: AlgMorphism::identity(e.algebra()), images }
    }

    pub fn source(&self) -> &PAlg {
        &self.e
    }

    pub fn target(&self) -> &PAlg {
        &self.f
    }

    pub fn psi(&self) -> &AlgMorphism {
        &self.psi
    }

    pub fn images(&self) -> &[PAElement] {
        &self.images
    }

    /// `Ψ(Σ a_i e_i) = Σ ψ(a_i) Ψ(e_i)`.
    pub fn apply(&self, x: &PAElement) -> PAElement {
        let mut out = self.f.zero();
        for (a, img) in x.coords().iter().zip(&self.images) {
            if !a.is_zero() {
                out = self.f.add(&out, &self.f.scale(&self.psi.image(a), img));
            }
        }
        out
    }

    /// Single-entry mutants: each nonzero image coordinate shifted by 1, and
    /// each coordinate multiplied by the first variable of the target algebra.
    pub fn mutants(&self) -> Vec<PAMorphism> {
        let b = self.f.algebra();
        let mut out = Vec::new();
        for i in 0..self.images.len() {
            for k in 0..self.f.rank() {
                let c = &self.images[i].coords()[k];
                let mut variants = vec![c + &b.one()];
                if b.nvars() > 0 {
                    variants.push(b.mul(c, &b.var(0)));
                }
                for v in variants {
                    let mut images: Vec<Vec<MPoly>> = self.images.iter().map(|x| x.coords().to_vec()).collect();
                    images[i][k] = v;
                    let m = PAMorphism::new(self.e.clone(), self.f.clone(), self.psi.clone(), images)
                        .expect("same shape as the original");
                    if m != *self && !out.contains(&m) {
                        out.push(m);
                    }
                }
            }
        }
        out
    }
}

/// A candidate comorphism from `F` to `E` over `ψ: A → B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PAComorphism {
    e: PAlg,
    f: PAlg,
    psi: AlgMorphism,
    /// `images[j][k] = b_jk`, the coefficient of `e_k` in `Ψ(f_j)`.
    images: Vec<Vec<MPoly>>,
}

impl PAComorphism {
    pub fn new(e: PAlg, f: PAlg, psi: AlgMorphism, images: Vec<Vec<MPoly>>) -> Result<Self> {
        same_shape(&e, &f, &psi)?;
        if images.len() != f.rank() {
            return Err(Error::RankMismatch { expected: f.rank(), found: images.len() });
        }
        let b = f.algebra();
        let mut reduced = Vec::with_capacity(images.len());
        for row in images {
            if row.len() != e.rank() {
                return Err(Error::RankMismatch { expected: e.rank(), found: row.len() });
            }
            for c in &row {
                c.check_arity(b.nvars())?;
            }
            reduced.push(row.iter().map(|c| b.reduce(c)).collect());
        }
        Ok(PAComorphism { e, f, psi: ensure_checked(psi)?, images: reduced })
    }

    pub fn identity(e: &PAlg) -> Self {
        let a = e.algebra();
        let images = (0..e.rank()).map(|j| (0..e.rank()).map(|k| a.constant(i64::from(j == k))).collect()).collect();
        PAComorphism { e: e.clone(), f: e.clone(), psi: AlgMorphism::identity(a), images }
    }

    /// The pseudoalgebra `E` whose tensor extension receives `Ψ`.
    pub fn e(&self) -> &PAlg {
        &self.e
    }

    /// The pseudoalgebra `F` on which `Ψ` is defined.
    pub fn f(&self) -> &PAlg {
        &self.f
    }

    pub fn psi(&self) -> &AlgMorphism {
        &self.psi
    }

    pub fn images(&self) -> &[Vec<MPoly>] {
        &self.images
    }

    /// `Ψ(Σ y_j f_j) = Σ_k e_k ⊗ Σ_j y_j b_jk`.
    pub fn apply(&self, y: &PAElement) -> Vec<MPoly> {
        let b = self.f.algebra();
        let mut out = vec![b.zero(); self.e.rank()];
        for (yj, row) in y.coords().iter().zip(&self.images) {
            if yj.is_zero() {
                continue;
            }
            for (k, c) in row.iter().enumerate() {
                out[k] = &out[k] + &(yj * c);
            }
        }
        out.iter().map(|c| b.reduce(c)).collect()
    }

    /// Renders `Ψ(f_j)` as `e_k⊗(b_jk) + ...`.
    pub fn render_image(&self, j: usize) -> String {
        render_tensor(&self.e, self.f.algebra(), &self.images[j])
    }

    /// Single-entry mutants, by the same protocol as [`PAMorphism::mutants`].
    pub fn mutants(&self) -> Vec<PAComorphism> {
        let b = self.f.algebra();
        let mut out = Vec::new();
        for j in 0..self.images.len() {
            for k in 0..self.e.rank() {
                let c = &self.images[j][k];
                let mut variants = vec![c + &b.one()];
                if b.nvars() > 0 {
                    variants.push(b.mul(c, &b.var(0)));
                }
                for v in variants {
                    let mut images = self.images.clone();
                    images[j][k] = v;
                    let m = PAComorphism::new(self.e.clone(), self.f.clone(), self.psi.clone(), images)
                        .expect("same shape as the original");
                    if m != *self && !out.contains(&m) {
                        out.push(m);
                    }
                }
            }
        }
        out
    }
}

fn render_tensor(e: &PAlg, b: &AlgebraPres, coeffs: &[MPoly]) -> String {
    let parts: Vec<String> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| format!("{}⊗({})", e.basis_names()[k], b.render(c)))
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// Verifies the two morphism conditions on basis vectors and generators.
pub fn check_pamorphism(m: &PAMorphism) -> Report {
    let (e, f) = (&m.e, &m.f);
    let (a, b) = (e.algebra(), f.algebra());
    let mut report = Report::new(format!("morphism over {} -> {}", a, b));
    for i in 0..e.rank() {
        for v in 0..a.nvars() {
            let x = MPoly::var(a.nvars(), v);
            let lhs = m.psi.image(&e.anchor(i).eval(&x));
            let rhs = f.anchor_apply(&m.images[i], &m.psi.image(&x));
            report.record(format!("anchor condition on {}, {}", e.basis_names()[i], a.variables()[v]), lhs == rhs, || {
                format!(
                    "psi([{e_i}, {x}]) = {} but [Psi({e_i}), psi({x})] = {}",
                    b.render(&lhs),
                    b.render(&rhs),
                    e_i = e.basis_names()[i],
                    x = a.variables()[v]
                )
            });
        }
    }
    for (i, j) in pairs(e.rank()) {
        let lhs = m.apply(&e.element(e.structure(i, j)).expect("structure row"));
        let rhs = f.bracket(&m.images[i], &m.images[j]);
        report.record(format!("bracket condition on {}, {}", e.basis_names()[i], e.basis_names()[j]), lhs == rhs, || {
            format!(
                "Psi([{a}, {c}]) = {} but [Psi({a}), Psi({c})] = {}",
                f.render(&lhs),
                f.render(&rhs),
                a = e.basis_names()[i],
                c = e.basis_names()[j]
            )
        });
    }
    if report.checks.is_empty() {
        report.pass("no basis conditions");
    }
    report
}

/// Verifies the two comorphism identities on basis vectors and generators,
/// with the right-hand side of the bracket identity expanded term by term.
pub fn check_pacomorphism(m: &PAComorphism) -> Report {
    let (e, f) = (&m.e, &m.f);
    let (a, b) = (e.algebra(), f.algebra());
    let mut report = Report::new(format!("comorphism over {} -> {}", a, b));
    for j in 0..f.rank() {
        for v in 0..a.nvars() {
            let x = MPoly::var(a.nvars(), v);
            let lhs = f.anchor(j).eval(&m.psi.image(&x));
            let mut rhs = b.zero();
            for (k, bk) in m.images[j].iter().enumerate() {
                rhs = &rhs + &(bk * &m.psi.image(&e.anchor(k).eval(&x)));
            }
            let rhs = b.reduce(&rhs);
            report.record(format!("anchor identity on {}, {}", f.basis_names()[j], a.variables()[v]), lhs == rhs, || {
                format!(
                    "[{f_j}, psi({x})] = {} but sum_k b_k psi([e_k, {x}]) = {}",
                    b.render(&lhs),
                    b.render(&rhs),
                    f_j = f.basis_names()[j],
                    x = a.variables()[v]
                )
            });
        }
    }
    for (j, l) in pairs(f.rank()) {
        let lhs = m.apply(&f.element(f.structure(j, l)).expect("structure row"));
        let (b1, b2) = (&m.images[j], &m.images[l]);
        let mut rhs = vec![b.zero(); e.rank()];
        for (p, bp) in b1.iter().enumerate() {
            for (q, bq) in b2.iter().enumerate() {
                if bp.is_zero() || bq.is_zero() || p == q {
                    continue;
                }
                let w = bp * bq;
                for (k, c) in e.structure(p, q).iter().enumerate() {
                    if !c.is_zero() {
                        rhs[k] = &rhs[k] + &(&m.psi.image(c) * &w);
                    }
                }
            }
        }
        for k in 0..e.rank() {
            rhs[k] = &(&rhs[k] + &f.anchor(j).eval(&b2[k])) - &f.anchor(l).eval(&b1[k]);
        }
        let rhs: Vec<MPoly> = rhs.iter().map(|c| b.reduce(c)).collect();
        report.record(format!("bracket identity on {}, {}", f.basis_names()[j], f.basis_names()[l]), lhs == rhs, || {
            format!(
                "Psi([{a}, {c}]) = {} but the expanded right side is {}",
                render_tensor(e, b, &lhs),
                render_tensor(e, b, &rhs),
                a = f.basis_names()[j],
                c = f.basis_names()[l]
            )
        });
    }
    if report.checks.is_empty() {
        report.pass("no basis conditions");
    }
    report
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphKind {
    Morphism,
    Comorphism,
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GraphKind::Morphism => "morphism",
            GraphKind::Comorphism => "comorphism",
        })
    }
}

/// Generators of the graph of a (co)morphism inside `(E ⊗_A B) ⊕ F`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    pub kind: GraphKind,
    pub generators: Vec<MixedElement<PAElement>>,
}

/// `e_i ⊗ 1 + Ψ(e_i)` for each basis vector of `E`.
pub fn morphism_graph(m: &PAMorphism) -> Graph {
    let b = m.f.algebra();
    let generators = (0..m.e.rank())
        .map(|i| {
            let mut tensor = vec![b.zero(); m.e.rank()];
            tensor[i] = b.one();
            MixedElement { tensor, f_part: m.images[i].clone() }
        })
        .collect();
    Graph { kind: GraphKind::Morphism, generators }
}

/// `Ψ(f_j) + f_j` for each basis vector of `F`.
pub fn comorphism_graph(m: &PAComorphism) -> Graph {
    let generators = (0..m.f.rank())
        .map(|j| MixedElement { tensor: m.images[j].clone(), f_part: m.f.basis_element(j) })
        .collect();
    Graph { kind: GraphKind::Comorphism, generators }
}

/// The difference between `z` and the combination of graph generators
/// selected by its distinguished component; zero iff `z` is in the span.
///
/// Errors unless the generators have the graph shape: unit tensor parts for a
/// morphism graph, unit `F`-parts for a comorphism graph.
pub fn span_residual(
    ctx: &PsiSum<PAlg>,
    graph: &Graph,
    z: &MixedElement<PAElement>,
) -> Result<MixedElement<PAElement>> {
    let b = ctx.f().algebra();
    let unit = |coords: &[MPoly], i: usize| coords.iter().enumerate().all(|(k, c)| *c == b.constant(i64::from(k == i)));
    let mut residual = z.clone();
    match graph.kind {
        GraphKind::Morphism => {
            if graph.generators.len() != ctx.e().rank()
                || !graph.generators.iter().enumerate().all(|(i, g)| unit(&g.tensor, i))
            {
                return Err(Error::Precondition("generators do not have the shape of a morphism graph".into()));
            }
            for (t, g) in z.tensor.iter().zip(&graph.generators) {
                residual = ctx.sub(&residual, &ctx.scale(t, g));
            }
        }
        GraphKind::Comorphism => {
            if graph.generators.len() != ctx.f().rank()
                || !graph.generators.iter().enumerate().all(|(j, g)| unit(g.f_part.coords(), j))
            {
                return Err(Error::Precondition("generators do not have the shape of a comorphism graph".into()));
            }
            for (y, g) in z.f_part.coords().iter().zip(&graph.generators) {
                residual = ctx.sub(&residual, &ctx.scale(y, g));
            }
        }
    }
    Ok(residual)
}

/// Decides whether the graph is a sub-pseudoalgebra of the psi-sum: every
/// generator is a member, and every bracket of generators is in their span.
pub fn graph_subalgebra_check(ctx: &PsiSum<PAlg>, graph: &Graph) -> Result<Report> {
    let mut report = Report::new(format!("{} graph inside the psi-sum", graph.kind));
    for (i, g) in graph.generators.iter().enumerate() {
        let r = ctx.membership_report(g);
        report.record(format!("generator {i} is a member"), r.is_pass(), || {
            format!("{}: {}", ctx.render(g), r.failures().next().and_then(|c| c.witness.clone()).unwrap_or_default())
        });
    }
    for (i, j) in pairs(graph.generators.len()) {
        let br = ctx.bracket(&graph.generators[i], &graph.generators[j]);
        let res = span_residual(ctx, graph, &br)?;
        report.record(format!("bracket of generators {i}, {j} lies in the span"), ctx.is_zero(&res), || {
            format!("[g{i}, g{j}] = {} leaves residual {}", ctx.render(&br), ctx.render(&res))
        });
    }
    if report.checks.is_empty() {
        report.pass("empty graph");
    }
    Ok(report)
}

/// Runs the graph route for a candidate morphism.
pub fn morphism_graph_check(m: &PAMorphism) -> Result<Report> {
    let ctx = PsiSum::new_unverified(m.e.clone(), m.f.clone(), m.psi.clone())?;
    graph_subalgebra_check(&ctx, &morphism_graph(m))
}

/// Runs the graph route for a candidate comorphism.
pub fn comorphism_graph_check(m: &PAComorphism) -> Result<Report> {
    let ctx = PsiSum::new_unverified(m.e.clone(), m.f.clone(), m.psi.clone())?;
    graph_subalgebra_check(&ctx, &comorphism_graph(m))
}

/// `(Θ∘Ψ, θ∘ψ)`: `e_i ↦ Σ_j θ(y_ij) Θ(f_j)`.
pub fn compose_morphisms(m1: &PAMorphism, m2: &PAMorphism) -> Result<PAMorphism> {
    if m1.f != m2.e {
        return Err(Error::AlgebraMismatch("target of the first morphism is not the source of the second".into()));
    }
    let psi = m1.psi.then(&m2.psi)?;
    let images = m1.images.iter().map(|y| m2.apply(y).into_coords()).collect();
    PAMorphism::new(m1.e.clone(), m2.f.clone(), psi, images)
}

/// For `m1: F → E ⊗_A B` over `ψ` and `m2: G → F ⊗_B C` over `θ`, the
/// composite `(Ψ ⊗ Id) ∘ Θ: G → E ⊗_A C` over `θ∘ψ`.
pub fn compose_comorphisms(m1: &PAComorphism, m2: &PAComorphism) -> Result<PAComorphism> {
    if m1.f != m2.e {
        return Err(Error::AlgebraMismatch("the comorphisms do not compose".into()));
    }
    let c = m2.f.algebra();
    let psi = m1.psi.then(&m2.psi)?;
    let images = m2
        .images
        .iter()
        .map(|row| {
            let mut out = vec![c.zero(); m1.e.rank()];
            for (j, clj) in row.iter().enumerate() {
                if clj.is_zero() {
                    continue;
                }
                for (k, bjk) in m1.images[j].iter().enumerate() {
                    out[k] = &out[k] + &(&m2.psi.image(bjk) * clj);
                }
            }
            out
        })
        .collect();
    PAComorphism::new(m1.e.clone(), m2.f.clone(), psi, images)
}

/// The dual map on forms of degree 0, 1 and 2.
pub fn pullback(m: &PAComorphism, omega: &KForm) -> Result<KForm> {
    let (e, f) = (&m.e, &m.f);
    let b = f.algebra();
    match omega.degree {
        0 => Ok(KForm { degree: 0, coeffs: vec![m.psi.image(&omega.coeffs[0])] }),
        1 => {
            if omega.coeffs.len() != e.rank() {
                return Err(Error::RankMismatch { expected: e.rank(), found: omega.coeffs.len() });
            }
            let xi: Vec<MPoly> = omega.coeffs.iter().map(|c| m.psi.image(c)).collect();
            let coeffs = m
                .images
                .iter()
                .map(|row| {
                    let mut s = b.zero();
                    for (x, bk) in xi.iter().zip(row) {
                        s = &s + &(x * bk);
                    }
                    b.reduce(&s)
                })
                .collect();
            Ok(KForm { degree: 1, coeffs })
        }
        2 => {
            let me = e.rank();
            if omega.coeffs.len() != me * me.saturating_sub(1) / 2 {
                return Err(Error::RankMismatch { expected: me * me.saturating_sub(1) / 2, found: omega.coeffs.len() });
            }
            let w: Vec<MPoly> = omega.coeffs.iter().map(|c| m.psi.image(c)).collect();
            let coeffs = pairs(f.rank())
                .into_iter()
                .map(|(j, l)| {
                    let mut s = b.zero();
                    for (p, q) in pairs(me) {
                        let wpq = &w[pair_index(me, p, q)];
                        if wpq.is_zero() {
                            continue;
                        }
                        let det = &(&m.images[j][p] * &m.images[l][q]) - &(&m.images[j][q] * &m.images[l][p]);
                        s = &s + &(wpq * &det);
                    }
                    b.reduce(&s)
                })
                .collect();
            Ok(KForm { degree: 2, coeffs })
        }
        d => Err(Error::Precondition(format!("pullback is implemented on degrees 0 to 2, not {d}"))),
    }
}

/// Checks `d_F ∘ Ψ* = Ψ* ∘ d_E` on generators of `A` (degree 0) and on the
/// dual basis of `E` (degree 1).
pub fn chain_map_check(m: &PAComorphism) -> Report {
    let (e, f) = (&m.e, &m.f);
    let (a, b) = (e.algebra(), f.algebra());
    let mut report = Report::new(format!("dual map commutes with the differentials over {} -> {}", a, b));
    let render_form = |k: &KForm| -> String {
        let parts: Vec<String> = k.coeffs.iter().map(|c| b.render(c)).collect();
        format!("({})", parts.join(", "))
    };
    for v in 0..a.nvars() {
        let x = KForm { degree: 0, coeffs: vec![MPoly::var(a.nvars(), v)] };
        let lhs = differential(f, &pullback(m, &x).expect("degree 0")).expect("degree 0");
        let rhs = pullback(m, &differential(e, &x).expect("degree 0")).expect("degree 1");
        report.record(format!("degree 0 at {}", a.variables()[v]), lhs == rhs, || {
            format!("d_F psi({x}) = {} but Psi*(d_E {x}) = {}", render_form(&lhs), render_form(&rhs), x = a.variables()[v])
        });
    }
    for k in 0..e.rank() {
        let mut coeffs = vec![a.zero(); e.rank()];
        coeffs[k] = a.one();
        let eps = KForm { degree: 1, coeffs };
        let lhs = differential(f, &pullback(m, &eps).expect("degree 1")).expect("degree 1");
        let rhs = pullback(m, &differential(e, &eps).expect("degree 1")).expect("degree 2");
        report.record(format!("degree 1 at the dual of {}", e.basis_names()[k]), lhs == rhs, || {
            format!(
                "d_F Psi*(eps_{n}) = {} but Psi*(d_E eps_{n}) = {} on pairs of F",
                render_form(&lhs),
                render_form(&rhs),
                n = e.basis_names()[k]
            )
        });
    }
    if report.checks.is_empty() {
        report.pass("no conditions");
    }
    report
}

/// A `ψ`-derivation `A → B`, given by the images of the generators of `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PsiDerivation {
    pub psi: AlgMorphism,
    pub images: Vec<MPoly>,
}

impl PsiDerivation {
    pub fn eval(&self, a: &MPoly) -> MPoly {
        let b = self.psi.target();
        let mut out = b.zero();
        for (i, img) in self.images.iter().enumerate() {
            let d = a.partial(i);
            if !d.is_zero() && !img.is_zero() {
                out = &out + &(&self.psi.image(&d) * img);
            }
        }
        b.reduce(&out)
    }

    pub fn render(&self) -> String {
        let (a, b) = (self.psi.source(), self.psi.target());
        let parts: Vec<String> = self
            .images
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(i, p)| format!("({})*d{}", b.render(p), a.variables()[i]))
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// For a comorphism `Ψ: F → E ⊗_A B`, the maps `f_j ↦ Σ_k b_jk ψ∘θ_E(e_k)`.
///
/// Each is a `ψ`-derivation `A → B`; the verdict confirms it is projectable,
/// i.e. agrees with `θ_F(f_j)∘ψ`, and, when `ψ` is the identity so that the
/// maps are derivations of `A`, that brackets are preserved.
pub fn induced_infinitesimal_action(m: &PAComorphism) -> Result<(Vec<PsiDerivation>, Report)> {
    let pre = check_pacomorphism(m);
    if !pre.is_pass() {
        return Err(Error::Precondition(format!("not a comorphism: {}", pre.summary())));
    }
    let (e, f) = (&m.e, &m.f);
    let a = e.algebra();
    let ders: Vec<PsiDerivation> = m
        .images
        .iter()
        .map(|row| {
            let images = (0..a.nvars())
                .map(|v| {
                    let x = MPoly::var(a.nvars(), v);
                    let mut s = f.algebra().zero();
                    for (k, bk) in row.iter().enumerate() {
                        s = &s + &(bk * &m.psi.image(&e.anchor(k).eval(&x)));
                    }
                    f.algebra().reduce(&s)
                })
                .collect();
            PsiDerivation { psi: m.psi.clone(), images }
        })
        .collect();
    let mut report = Report::new("induced infinitesimal action");
    for (j, d) in ders.iter().enumerate() {
        let ok = (0..a.nvars()).all(|v| {
            let x = MPoly::var(a.nvars(), v);
            d.eval(&x) == f.anchor(j).eval(&m.psi.image(&x))
        });
        report.record(format!("action of {} is projectable", f.basis_names()[j]), ok, || {
            format!("{} differs from the anchor of {} along psi", d.render(), f.basis_names()[j])
        });
    }
    if m.psi == AlgMorphism::identity(a) {
        let as_der: Vec<Derivation> = ders
            .iter()
            .map(|d| Derivation::new(a.clone(), d.images.clone()).expect("same algebra"))
            .collect();
        for (j, l) in pairs(f.rank()) {
            let mut lhs = Derivation::zero(a);
            for (c, d) in f.structure(j, l).iter().zip(&as_der) {
                lhs = lhs.add(&d.scale(c));
            }
            let rhs = as_der[j].commutator(&as_der[l]);
            report.record(format!("bracket of {}, {} preserved", f.basis_names()[j], f.basis_names()[l]), lhs == rhs, || {
                format!("action of the bracket is {} but the commutator is {}", lhs.render(), rhs.render())
            });
        }
    }
    Ok((ders, report))
}

/// For a morphism `(Ψ, ψ): E → F`, the action `e_i ↦ θ_F(Ψ(e_i))` by
/// derivations of `B`.
///
/// The verdict checks that each action is `ψ`-related to `θ_E(e_i)` and that
/// brackets are preserved. Linearity over `A` holds by construction since the
/// action is extended from the basis. This is the algebraic form of an
/// infinitesimal action of a Lie algebra (take `E` over the rationals) or of a
/// Lie algebroid on a fibred space.
pub fn infinitesimal_action_of_morphism(m: &PAMorphism) -> (Vec<Derivation>, Report) {
    let (e, f) = (&m.e, &m.f);
    let (a, b) = (e.algebra(), f.algebra());
    let ders: Vec<Derivation> = m.images.iter().map(|y| f.anchor_of(y)).collect();
    let mut report = Report::new("infinitesimal action");
    for (i, d) in ders.iter().enumerate() {
        let ok = (0..a.nvars()).all(|v| {
            let x = MPoly::var(a.nvars(), v);
            d.eval(&m.psi.image(&x)) == m.psi.image(&e.anchor(i).eval(&x))
        });
        report.record(format!("action of {} is related to its anchor", e.basis_names()[i]), ok, || {
            format!("{} is not psi-related to the anchor of {}", d.render(), e.basis_names()[i])
        });
    }
    for (i, j) in pairs(e.rank()) {
        let mut lhs = Derivation::zero(b);
        for (c, d) in e.structure(i, j).iter().zip(&ders) {
            lhs = lhs.add(&d.scale(&m.psi.image(c)));
        }
        let rhs = ders[i].commutator(&ders[j]);
        report.record(format!("bracket of {}, {} preserved", e.basis_names()[i], e.basis_names()[j]), lhs == rhs, || {
            format!(
                "action of [{}, {}] is {} but the commutator of the actions is {}",
                e.basis_names()[i],
                e.basis_names()[j],
                lhs.render(),
                rhs.render()
            )
        });
    }
    if report.checks.is_empty() {
        report.pass("no conditions");
    }
    (ders, report)
}

/// Outcome of running both routes on one candidate.
#[derive(Debug, Clone)]
pub struct RouteComparison {
    pub direct: bool,
    pub graph: bool,
}

impl RouteComparison {
    pub fn agree(&self) -> bool {
        self.direct == self.graph
    }
}

/// Direct verifier and graph route on each morphism candidate.
pub fn compare_morphism_routes(suite: &[PAMorphism], exec: Execution) -> Result<Vec<RouteComparison>> {
    exec.map(suite, |m| {
        Ok(RouteComparison { direct: check_pamorphism(m).is_pass(), graph: morphism_graph_check(m)?.is_pass() })
    })
    .into_iter()
    .collect()
}

/// Direct verifier and graph route on each comorphism candidate.
pub fn compare_comorphism_routes(suite: &[PAComorphism], exec: Execution) -> Result<Vec<RouteComparison>> {
    exec.map(suite, |m| {
        Ok(RouteComparison { direct: check_pacomorphism(m).is_pass(), graph: comorphism_graph_check(m)?.is_pass() })
    })
    .into_iter()
    .collect()
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::exactpoly::rat;
    use crate::pseudoalg::{make_der, make_klie};

    fn der(vars: &[&str]) -> PAlg {
        make_der(&AlgebraPres::polynomial(vars)).unwrap()
    }

    fn uv(coef: &str) -> PAComorphism {
        let e = der(&["u", "v"]);
        let f = der(&["x"]);
        let b = f.algebra().clone();
        let psi = AlgMorphism::parse(e.algebra().clone(), b.clone(), &["x", "x^2"]).unwrap();
        PAComorphism::new(e, f, psi, vec![vec![b.one(), b.poly(coef).unwrap()]]).unwrap()
    }

    #[test]
    fn uv_comorphism_and_mutant() {
        let good = uv("2*x");
        assert!(check_pacomorphism(&good).is_pass());
        assert!(chain_map_check(&good).is_pass());
        assert!(comorphism_graph_check(&good).unwrap().is_pass());
        let bad = uv("3*x");
        let r = check_pacomorphism(&bad);
        assert!(!r.is_pass());
        assert_eq!(r.failures().next().unwrap().name, "anchor identity on dx, v");
        let c = chain_map_check(&bad);
        assert_eq!(c.failures().next().unwrap().name, "degree 0 at v");
        assert!(!comorphism_graph_check(&bad).unwrap().is_pass());
        let g = comorphism_graph(&good);
        assert_eq!(g.generators.len(), 1);
        assert_eq!(g.generators[0].tensor, vec![MPoly::one(1), good.f().algebra().poly("2*x").unwrap()]);
    }

    #[test]
    fn relabeling_morphism() {
        let e = der(&["x"]);
        let f = der(&["y"]);
        let psi = AlgMorphism::parse(e.algebra().clone(), f.algebra().clone(), &["y"]).unwrap();
        let m = PAMorphism::new(e, f.clone(), psi, vec![vec![f.algebra().one()]]).unwrap();
        assert!(check_pamorphism(&m).is_pass());
        assert!(morphism_graph_check(&m).unwrap().is_pass());
        for mu in m.mutants() {
            assert!(!check_pamorphism(&mu).is_pass());
            assert!(!morphism_graph_check(&mu).unwrap().is_pass());
        }
    }

    fn sl2() -> PAlg {
        let mut c = BTreeMap::new();
        c.insert((0, 1), vec![rat(0), rat(2), rat(0)]);
        c.insert((0, 2), vec![rat(0), rat(0), rat(-2)]);
        c.insert((1, 2), vec![rat(1), rat(0), rat(0)]);
        make_klie(vec!["h".into(), "e".into(), "f".into()], &c).unwrap()
    }

    #[test]
    fn sl2_action_as_morphism() {
        let g = sl2();
        let d = der(&["x"]);
        let a = d.algebra().clone();
        let psi = AlgMorphism::unit(&a);
        let p = |s: &str| a.poly(s).unwrap();
        let good = PAMorphism::new(g.clone(), d.clone(), psi.clone(), vec![vec![p("-2*x")], vec![p("1")], vec![p("-x^2")]])
            .unwrap();
        assert!(check_pamorphism(&good).is_pass());
        let (ders, r) = infinitesimal_action_of_morphism(&good);
        assert!(r.is_pass());
        assert_eq!(ders[1], Derivation::partial(&a, 0));
        let bad = PAMorphism::new(g, d, psi, vec![vec![p("x")], vec![p("1")], vec![p("x^2")]]).unwrap();
        let (_, r) = infinitesimal_action_of_morphism(&bad);
        assert!(!r.is_pass());
        assert!(r.failures().next().unwrap().witness.as_ref().unwrap().contains("commutator"));
        assert!(!check_pamorphism(&bad).is_pass());
    }

    #[test]
    fn composition_and_identities() {
        let m = uv("2*x");
        let id_e = PAComorphism::identity(m.e());
        let id_f = PAComorphism::identity(m.f());
        assert_eq!(compose_comorphisms(&id_e, &m).unwrap(), m);
        assert_eq!(compose_comorphisms(&m, &id_f).unwrap(), m);
        // x -> s^2 from Der(Q[x]) to Der(Q[s])
        let s = der(&["s"]);
        let b = s.algebra().clone();
        let theta = AlgMorphism::parse(m.f().algebra().clone(), b.clone(), &["s^2"]).unwrap();
        let m2 = PAComorphism::new(m.f().clone(), s, theta, vec![vec![b.poly("2*s").unwrap()]]).unwrap();
        assert!(check_pacomorphism(&m2).is_pass());
        let c = compose_comorphisms(&m, &m2).unwrap();
        assert!(check_pacomorphism(&c).is_pass());
        // chain rule: ds -> du ⊗ 2s + dv ⊗ 4s^3
        assert_eq!(c.images()[0], vec![b.poly("2*s").unwrap(), b.poly("4*s^3").unwrap()]);
    }

    #[test]
    fn two_forms_vanish_on_rank_one() {
        let m = uv("2*x");
        let e = m.e();
        let a = e.algebra();
        let w = KForm { degree: 2, coeffs: vec![a.poly("u*v").unwrap()] };
        let p = pullback(&m, &w).unwrap();
        assert!(p.coeffs.is_empty());
    }
}
