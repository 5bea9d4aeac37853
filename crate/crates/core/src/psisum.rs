//! Direct sums and psi-sums of pseudoalgebras.
//!
//! For `E` over `A`, `F` over `B` and an algebra map `ψ: A → B`, the psi-sum
//! `E ⊕_ψ F` consists of the pairs `Σ e_i ⊗ b_i + Y` in `(E ⊗_A B) ⊕ F` with
//!
//! ```text
//! Σ_i ψ(θ(e_i)(a)) b_i = θ(Y)(ψ(a))     for all a in A.
//! ```
//!
//! Both sides are `ψ`-derivations `A → B` in `a`, so they agree on all of `A`
//! once they agree on the generators of `A`; [`PsiSum::membership`] therefore
//! tests the variables only. Since `E` is free, `E ⊗_A B` is the free
//! `B`-module on the basis of `E`, and a mixed element stores one
//! `B`-coefficient per basis vector of `E`.
//!
//! Anchor and bracket are
//!
//! ```text
//! θ(Σ e_i ⊗ b_i + Y) = θ(Y)
//! [Σ e_i⊗b_i + Y, Σ e_j⊗b'_j + Y'] = Σ [e_i, e_j] ⊗ b_i b'_j + Σ e_j ⊗ θ(Y)(b'_j)
//!                                    - Σ e_i ⊗ θ(Y')(b_i) + [Y, Y']
//! ```

use crate::error::{Error, Result};
use crate::exactpoly::{AlgMorphism, AlgebraPres, Derivation, MPoly};
use crate::exec::Execution;
use crate::pseudoalg::{axioms_check, pairs, PAElement, PAlg, Pseudoalgebra, StructureTable};
use crate::report::Report;

/// Anything that can report on its own axioms.
pub trait Verifiable {
    fn axioms(&self) -> Report;
}

impl Verifiable for PAlg {
    fn axioms(&self) -> Report {
        axioms_check(self)
    }
}

/// An element `Σ e_i ⊗ b_i + Y` of `(E ⊗_A B) ⊕ F`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedElement<Y> {
    /// `b_i`, one per basis vector of `E`, in normal form in `B`.
    pub tensor: Vec<MPoly>,
    pub f_part: Y,
}

/// The psi-sum `E ⊕_ψ F`.
#[derive(Debug, Clone)]
pub struct PsiSum<F> {
    e: PAlg,
    f: F,
    psi: AlgMorphism,
}

impl<F: Pseudoalgebra + Verifiable> PsiSum<F> {
    /// Checks `ψ` against both algebras and the axioms of `E` and `F`.
    pub fn new(e: PAlg, f: F, psi: AlgMorphism) -> Result<Self> {
        let ctx = Self::new_unverified(e, f, psi)?;
        let mut report = Report::new("psi-sum summands");
        report.absorb("E", axioms_check(&ctx.e));
        report.absorb("F", ctx.f.axioms());
        if !report.is_pass() {
            return Err(Error::verification(report));
        }
        Ok(ctx)
    }
}

impl<F: Pseudoalgebra> PsiSum<F> {
    /// Checks `ψ` only; the caller vouches for the axioms of the summands.
    pub fn new_unverified(e: PAlg, f: F, psi: AlgMorphism) -> Result<Self> {
        e.algebra().expect_same(psi.source(), "source of psi")?;
        f.algebra().expect_same(psi.target(), "target of psi")?;
        let psi = if psi.is_checked() { psi } else { psi.verified()? };
        Ok(PsiSum { e, f, psi })
    }

    pub fn e(&self) -> &PAlg {
        &self.e
    }

    pub fn f(&self) -> &F {
        &self.f
    }

    pub fn psi(&self) -> &AlgMorphism {
        &self.psi
    }

    /// Builds a mixed element, reducing the tensor coefficients in `B`.
    pub fn element(&self, tensor: Vec<MPoly>, f_part: F::Element) -> Result<MixedElement<F::Element>> {
        if tensor.len() != self.e.rank() {
            return Err(Error::RankMismatch { expected: self.e.rank(), found: tensor.len() });
        }
        let b = self.f.algebra();
        for t in &tensor {
            t.check_arity(b.nvars())?;
        }
        Ok(MixedElement { tensor: tensor.iter().map(|t| b.reduce(t)).collect(), f_part })
    }

    /// `e_i ⊗ 1`.
    pub fn tensor_basis(&self, i: usize) -> MixedElement<F::Element> {
        let b = self.f.algebra();
        let mut tensor = vec![b.zero(); self.e.rank()];
        tensor[i] = b.one();
        MixedElement { tensor, f_part: self.f.zero() }
    }

    /// The element `Y` of `F` viewed inside the sum.
    pub fn from_f(&self, y: F::Element) -> MixedElement<F::Element> {
        MixedElement { tensor: vec![self.f.algebra().zero(); self.e.rank()], f_part: y }
    }

    /// `LHS - RHS` of the membership identity at `a ∈ A`.
    pub fn defect(&self, z: &MixedElement<F::Element>, a: &MPoly) -> MPoly {
        let b = self.f.algebra();
        let mut lhs = b.zero();
        for (i, bi) in z.tensor.iter().enumerate() {
            if bi.is_zero() {
                continue;
            }
            let ta = self.e.anchor(i).eval(a);
            if !ta.is_zero() {
                lhs = &lhs + &(&self.psi.image(&ta) * bi);
            }
        }
        let rhs = self.f.anchor_apply(&z.f_part, &self.psi.image(a));
        b.reduce(&(&lhs - &rhs))
    }

    /// The membership test on the generators of `A`.
    pub fn membership(&self, z: &MixedElement<F::Element>) -> bool {
        let n = self.e.algebra().nvars();
        (0..n).all(|v| self.defect(z, &MPoly::var(n, v)).is_zero())
    }

    /// The membership identity at an arbitrary `a ∈ A`.
    pub fn membership_at(&self, z: &MixedElement<F::Element>, a: &MPoly) -> bool {
        self.defect(z, a).is_zero()
    }

    pub fn membership_report(&self, z: &MixedElement<F::Element>) -> Report {
        let a = self.e.algebra();
        let n = a.nvars();
        let mut report = Report::new(format!("membership of {}", self.render(z)));
        if n == 0 {
            report.pass("coefficient algebra has no generators");
        }
        for v in 0..n {
            let d = self.defect(z, &MPoly::var(n, v));
            report.record(format!("identity at {}", a.variables()[v]), d.is_zero(), || {
                format!(
                    "sum_i psi([e_i, {v}]) b_i - [Y, psi({v})] = {}",
                    self.f.algebra().render(&d),
                    v = a.variables()[v]
                )
            });
        }
        report
    }

    fn require_member(&self, z: &MixedElement<F::Element>, what: &str) -> Result<()> {
        if self.membership(z) {
            Ok(())
        } else {
            Err(Error::Precondition(format!("{what} {} is not in the psi-sum", self.render(z))))
        }
    }

    /// The anchor of a member: the anchor of its `F`-part.
    pub fn psisum_anchor(&self, z: &MixedElement<F::Element>, b: &MPoly) -> Result<MPoly> {
        self.require_member(z, "element")?;
        Ok(self.f.anchor_apply(&z.f_part, b))
    }

    /// The bracket of two members.
    pub fn psisum_bracket(
        &self,
        z1: &MixedElement<F::Element>,
        z2: &MixedElement<F::Element>,
    ) -> Result<MixedElement<F::Element>> {
        self.require_member(z1, "first argument")?;
        self.require_member(z2, "second argument")?;
        Ok(self.bracket(z1, z2))
    }
}

impl<F: Pseudoalgebra> Pseudoalgebra for PsiSum<F> {
    type Element = MixedElement<F::Element>;

    fn algebra(&self) -> &AlgebraPres {
        self.f.algebra()
    }

    fn zero(&self) -> Self::Element {
        self.from_f(self.f.zero())
    }

    fn add(&self, x: &Self::Element, y: &Self::Element) -> Self::Element {
        MixedElement {
            tensor: x.tensor.iter().zip(&y.tensor).map(|(a, b)| a + b).collect(),
            f_part: self.f.add(&x.f_part, &y.f_part),
        }
    }

    fn scale(&self, a: &MPoly, x: &Self::Element) -> Self::Element {
        let b = self.f.algebra();
        MixedElement { tensor: x.tensor.iter().map(|t| b.mul(a, t)).collect(), f_part: self.f.scale(a, &x.f_part) }
    }

    fn bracket(&self, z1: &Self::Element, z2: &Self::Element) -> Self::Element {
        let b = self.f.algebra();
        let m = self.e.rank();
        let mut tensor = vec![b.zero(); m];
        for (i, bi) in z1.tensor.iter().enumerate() {
            if bi.is_zero() {
                continue;
            }
            for (j, bj) in z2.tensor.iter().enumerate() {
                if bj.is_zero() || i == j {
                    continue;
                }
                let w = bi * bj;
                for (k, c) in self.e.structure(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        tensor[k] = &tensor[k] + &(&self.psi.image(c) * &w);
                    }
                }
            }
        }
        for k in 0..m {
            tensor[k] = &(&tensor[k] + &self.f.anchor_apply(&z1.f_part, &z2.tensor[k]))
                - &self.f.anchor_apply(&z2.f_part, &z1.tensor[k]);
        }
        MixedElement {
            tensor: tensor.iter().map(|t| b.reduce(t)).collect(),
            f_part: self.f.bracket(&z1.f_part, &z2.f_part),
        }
    }

    fn anchor_apply(&self, z: &Self::Element, b: &MPoly) -> MPoly {
        self.f.anchor_apply(&z.f_part, b)
    }

    fn render(&self, z: &Self::Element) -> String {
        let b = self.f.algebra();
        let mut parts: Vec<String> = z
            .tensor
            .iter()
            .enumerate()
            .filter(|(_, t)| !t.is_zero())
            .map(|(i, t)| format!("{}⊗({})", self.e.basis_names()[i], b.render(t)))
            .collect();
        if !self.f.is_zero(&z.f_part) {
            parts.push(self.f.render(&z.f_part));
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    fn is_zero(&self, z: &Self::Element) -> bool {
        z.tensor.iter().all(MPoly::is_zero) && self.f.is_zero(&z.f_part)
    }
}

impl<F: Pseudoalgebra + Verifiable> Verifiable for PsiSum<F> {
    fn axioms(&self) -> Report {
        let mut r = Report::new("psi-sum");
        r.absorb("E", axioms_check(&self.e));
        r.absorb("F", self.f.axioms());
        r
    }
}

/// The direct sum `E ⊕ F` over `A ⊗ B`.
///
/// Returns the sum and the list of renamed variables and basis vectors of `F`
/// (renamed by appending primes when they collide with names from `E`).
pub fn direct_sum(e: &PAlg, f: &PAlg) -> Result<(PAlg, Vec<(String, String)>)> {
    let (ab, mut renamed) = e.algebra().tensor(f.algebra())?;
    let n = ab.nvars();
    let (na, m_e, m_f) = (e.algebra().nvars(), e.rank(), f.rank());
    let embed_der = |d: &Derivation, offset: usize| -> Result<Derivation> {
        let mut images = vec![ab.zero(); n];
        for (v, img) in d.images().iter().enumerate() {
            images[offset + v] = img.embed(n, offset);
        }
        Derivation::new(ab.clone(), images)
    };
    let mut anchor = Vec::with_capacity(m_e + m_f);
    for d in e.anchors() {
        anchor.push(embed_der(d, 0)?);
    }
    for d in f.anchors() {
        anchor.push(embed_der(d, na)?);
    }
    let mut names: Vec<String> = e.basis_names().to_vec();
    for name in f.basis_names() {
        let mut new = name.clone();
        while names.contains(&new) || (new != *name && f.basis_names().contains(&new)) {
            new.push('\'');
        }
        if new != *name {
            renamed.push((name.clone(), new.clone()));
        }
        names.push(new);
    }
    let mut table = StructureTable::new();
    for ((i, j), c) in e.structure_table() {
        let mut coords: Vec<MPoly> = c.iter().map(|p| p.embed(n, 0)).collect();
        coords.resize(m_e + m_f, ab.zero());
        table.insert((i, j), coords);
    }
    for ((i, j), c) in f.structure_table() {
        let mut coords = vec![ab.zero(); m_e];
        coords.extend(c.iter().map(|p| p.embed(n, na)));
        table.insert((m_e + i, m_e + j), coords);
    }
    Ok((PAlg::new(ab, names, anchor, table)?, renamed))
}

/// An element of the left side `(E ⊕_ψ F) ⊕_θ G` of the triple-sum inclusion:
/// `Σ_k w_k ⊗ c_k + Z` with `w_k ∈ E ⊕_ψ F`, `c_k ∈ C`, `Z ∈ G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleElement {
    pub terms: Vec<(MixedElement<PAElement>, MPoly)>,
    pub z: PAElement,
}

/// The two sides of the triple-sum inclusion for `ψ: A → B`, `θ: B → C`.
pub struct TripleSums {
    inner: PsiSum<PAlg>,
    g: PAlg,
    theta: AlgMorphism,
    right: PsiSum<PsiSum<PAlg>>,
}

impl TripleSums {
    pub fn new(e: PAlg, f: PAlg, g: PAlg, psi: AlgMorphism, theta: AlgMorphism) -> Result<Self> {
        let inner = PsiSum::new(e.clone(), f.clone(), psi.clone())?;
        g.algebra().expect_same(theta.target(), "target of theta")?;
        f.algebra().expect_same(theta.source(), "source of theta")?;
        let theta = if theta.is_checked() { theta } else { theta.verified()? };
        let fg = PsiSum::new(f, g.clone(), theta.clone())?;
        let right = PsiSum::new(e, fg, inner.psi.then(&theta)?)?;
        Ok(TripleSums { inner, g, theta, right })
    }

    pub fn inner(&self) -> &PsiSum<PAlg> {
        &self.inner
    }

    pub fn right(&self) -> &PsiSum<PsiSum<PAlg>> {
        &self.right
    }

    /// Membership in the left side, tested on the generators of `B`.
    pub fn left_membership(&self, x: &TripleElement) -> bool {
        if !x.terms.iter().all(|(w, _)| self.inner.membership(w)) {
            return false;
        }
        let b = self.inner.f().algebra();
        let c = self.g.algebra();
        (0..b.nvars()).all(|v| {
            let y = MPoly::var(b.nvars(), v);
            let mut lhs = c.zero();
            for (w, ck) in &x.terms {
                lhs = &lhs + &(&self.theta.image(&self.inner.anchor_apply(w, &y)) * ck);
            }
            let rhs = self.g.anchor_apply(&x.z, &self.theta.image(&y));
            c.is_zero(&(&lhs - &rhs))
        })
    }

    /// Bracket on the left side, by the psi-sum bracket formula with
    /// `E ⊕_ψ F` in place of `E`.
    pub fn left_bracket(&self, x1: &TripleElement, x2: &TripleElement) -> TripleElement {
        let c = self.g.algebra();
        let mut terms = Vec::new();
        for (w, ck) in &x1.terms {
            for (w2, cl) in &x2.terms {
                terms.push((self.inner.bracket(w, w2), c.mul(ck, cl)));
            }
        }
        for (w2, cl) in &x2.terms {
            terms.push((w2.clone(), self.g.anchor_apply(&x1.z, cl)));
        }
        for (w, ck) in &x1.terms {
            terms.push((w.clone(), c.reduce(&-&self.g.anchor_apply(&x2.z, ck))));
        }
        TripleElement { terms, z: self.g.bracket(&x1.z, &x2.z) }
    }

    /// `Σ w_k ⊗ c_k + Z  ↦  Σ e_i ⊗ (Σ_k θ(b_ki) c_k) + (Σ f_j ⊗ (Σ_k θ(y_kj) c_k) + Z)`.
    pub fn reassociate(&self, x: &TripleElement) -> MixedElement<MixedElement<PAElement>> {
        let c = self.g.algebra();
        let mut e_part = vec![c.zero(); self.inner.e().rank()];
        let mut f_part = vec![c.zero(); self.inner.f().rank()];
        for (w, ck) in &x.terms {
            for (i, b) in w.tensor.iter().enumerate() {
                e_part[i] = &e_part[i] + &(&self.theta.image(b) * ck);
            }
            for (j, y) in w.f_part.coords().iter().enumerate() {
                f_part[j] = &f_part[j] + &(&self.theta.image(y) * ck);
            }
        }
        MixedElement {
            tensor: e_part.iter().map(|p| c.reduce(p)).collect(),
            f_part: MixedElement { tensor: f_part.iter().map(|p| c.reduce(p)).collect(), f_part: x.z.clone() },
        }
    }
}

/// Checks that re-association maps the supplied members of
/// `(E ⊕_ψ F) ⊕_θ G` into `E ⊕_{θψ} (F ⊕_θ G)` and preserves their brackets.
pub fn triple_inclusion_check(sums: &TripleSums, elements: &[TripleElement]) -> Result<Report> {
    triple_inclusion_check_with(sums, elements, Execution::default())
}

pub fn triple_inclusion_check_with(sums: &TripleSums, elements: &[TripleElement], exec: Execution) -> Result<Report> {
    for (k, x) in elements.iter().enumerate() {
        if !sums.left_membership(x) {
            return Err(Error::Precondition(format!("element {k} is not a member of the left-hand sum")));
        }
    }
    let mut report = Report::new(format!("triple-sum inclusion on {} elements", elements.len()));
    let images: Vec<_> = exec.map(elements, |x| sums.reassociate(x));
    for (k, img) in images.iter().enumerate() {
        let ok = sums.right.membership(img);
        report.record(format!("element {k} lies in the right-hand sum"), ok, || {
            sums.right.membership_report(img).summary()
        });
    }
    let idx: Vec<(usize, usize)> = pairs(elements.len());
    let agree = exec.map(&idx, |&(i, j)| {
        let left = sums.reassociate(&sums.left_bracket(&elements[i], &elements[j]));
        let right = sums.right.bracket(&images[i], &images[j]);
        (i, j, left == right, left, right)
    });
    for (i, j, ok, left, right) in agree {
        report.record(format!("bracket of elements {i}, {j} is preserved"), ok, || {
            format!("left gives {} but right gives {}", sums.right.render(&left), sums.right.render(&right))
        });
    }
    Ok(report)
}

/// True when `E` is defined over the rationals, where the membership identity
/// is vacuous and every pair lies in the sum.
pub fn is_isum(ctx: &PsiSum<PAlg>) -> bool {
    ctx.e().algebra().nvars() == 0
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::pseudoalg::{make_der, make_klie};
    use crate::exactpoly::rat;

    fn der(v: &str) -> PAlg {
        make_der(&AlgebraPres::polynomial(&[v])).unwrap()
    }

    fn ctx_xy() -> PsiSum<PAlg> {
        let e = der("x");
        let f = der("y");
        let psi = AlgMorphism::parse(e.algebra().clone(), f.algebra().clone(), &["y^2"]).unwrap();
        PsiSum::new(e, f, psi).unwrap()
    }

    fn member(ctx: &PsiSum<PAlg>, b: &str) -> MixedElement<PAElement> {
        let bb = ctx.f().algebra().poly(b).unwrap();
        let y = ctx.f().element(vec![bb.clone()]).unwrap();
        let two_y = ctx.f().algebra().poly("2*y").unwrap();
        ctx.element(vec![&two_y * &bb], y).unwrap()
    }

    #[test]
    fn membership_examples() {
        let ctx = ctx_xy();
        let b = ctx.f().algebra();
        assert!(ctx.membership(&member(&ctx, "1")));
        let bad = ctx.element(vec![b.one()], ctx.f().basis_element(0)).unwrap();
        assert!(!ctx.membership(&bad));
        assert!(!ctx.membership_report(&bad).is_pass());
        let z = member(&ctx, "1");
        assert_eq!(ctx.psisum_anchor(&z, &b.poly("y^3").unwrap()).unwrap(), b.poly("3*y^2").unwrap());
        assert!(ctx.psisum_anchor(&z, &b.one()).unwrap().is_zero());
        assert!(ctx.psisum_anchor(&bad, &b.one()).is_err());
    }

    #[test]
    fn bracket_closure_example() {
        let ctx = ctx_xy();
        let z1 = member(&ctx, "1");
        let z2 = member(&ctx, "y^2");
        let br = ctx.psisum_bracket(&z1, &z2).unwrap();
        assert!(ctx.membership(&br));
        // [dy, y^2 dy] = 2y dy; tensor: dy(2y^3) - y^2 dy(2y) = 6y^2 - 2y^2 = 4y^2
        assert_eq!(br, member(&ctx, "2*y"));
        assert!(ctx.is_zero(&ctx.psisum_bracket(&z1, &z1).unwrap()));
    }

    #[test]
    fn direct_sum_of_der() {
        let (s, renamed) = direct_sum(&der("x"), &der("y")).unwrap();
        assert!(renamed.is_empty());
        assert_eq!(s.rank(), 2);
        assert!(s.structure_table().is_empty());
        assert!(axioms_check(&s).is_pass());
        let (s, renamed) = direct_sum(&der("x"), &der("x")).unwrap();
        assert_eq!(renamed.len(), 2);
        assert_eq!(s.basis_names(), &["dx", "dx'"]);
        assert!(axioms_check(&s).is_pass());
    }

    #[test]
    fn isum_of_lie_algebras() {
        let mut c = BTreeMap::new();
        c.insert((0, 1), vec![rat(0), rat(1)]);
        let g = make_klie(vec!["X".into(), "Y".into()], &c).unwrap();
        let h = make_klie(vec!["U".into()], &BTreeMap::new()).unwrap();
        let q = AlgebraPres::rationals();
        let ctx = PsiSum::new(g.clone(), h.clone(), AlgMorphism::identity(&q)).unwrap();
        assert!(is_isum(&ctx));
        let z = ctx.element(vec![MPoly::from_int(0, 3), MPoly::from_int(0, -1)], h.basis_element(0)).unwrap();
        assert!(ctx.membership(&z));
        let (sum, _) = direct_sum(&g, &h).unwrap();
        let x = ctx.tensor_basis(0);
        let y = ctx.tensor_basis(1);
        let br = ctx.psisum_bracket(&x, &y).unwrap();
        assert_eq!(br.tensor, sum.structure(0, 1)[..2].to_vec());
    }

    #[test]
    fn triple_inclusion_on_chained_substitutions() {
        let (e, f, g) = (der("x"), der("y"), der("z"));
        let psi = AlgMorphism::parse(e.algebra().clone(), f.algebra().clone(), &["y^2"]).unwrap();
        let theta = AlgMorphism::parse(f.algebra().clone(), g.algebra().clone(), &["z^3"]).unwrap();
        let sums = TripleSums::new(e, f, g.clone(), psi, theta).unwrap();
        let inner = sums.inner();
        let c = g.algebra();
        let w = member(inner, "1");
        let yw = member(inner, "y");
        let mut elements = Vec::new();
        for zeta in ["1", "z", "z^2 + 1"] {
            let zeta = c.poly(zeta).unwrap();
            let ck = c.mul(&c.poly("3*z^2").unwrap(), &zeta);
            let z = g.element(vec![zeta]).unwrap();
            elements.push(TripleElement { terms: vec![(w.clone(), ck.clone())], z: z.clone() });
            let shifted = vec![(w.clone(), ck.clone()), (yw.clone(), c.poly("z").unwrap()), (w.clone(), c.poly("-z^4").unwrap())];
            elements.push(TripleElement { terms: shifted, z });
        }
        for x in &elements {
            assert!(sums.left_membership(x));
        }
        let report = triple_inclusion_check(&sums, &elements).unwrap();
        assert!(report.is_pass(), "{report}");
        let bad = TripleElement { terms: vec![(w, c.one())], z: g.zero() };
        assert!(matches!(triple_inclusion_check(&sums, &[bad]), Err(Error::Precondition(_))));
    }
}
