//! Standard examples: pseudoalgebras, (co)morphism suites and a groupoid corpus.

use std::collections::BTreeMap;

use crate::exactpoly::{rat, AlgMorphism, AlgebraPres, Derivation, MPoly};
use crate::groupoid::{group_groupoid, make_action_groupoid, make_pair, restrict_groupoid, FinGroup, FinGroupoid, RightAction};
use crate::morphisms::{PAComorphism, PAMorphism};
use crate::pseudoalg::{make_action, make_cotangent_poisson, make_der, make_klie, PAElement, PAlg, Pseudoalgebra};
use crate::psisum::{MixedElement, PsiSum, TripleSums};

fn poly(a: &AlgebraPres, s: &str) -> MPoly {
    a.poly(s).expect("catalog polynomial")
}

/// `Der(ℚ[vars])` with basis the partial derivatives.
pub fn der(vars: &[&str]) -> PAlg {
    make_der(&AlgebraPres::polynomial(vars)).expect("free algebra")
}

/// `sl₂` on the basis `h, e, f` with `[h, e] = 2e`, `[h, f] = -2f`, `[e, f] = h`.
pub fn sl2() -> PAlg {
    let mut c = BTreeMap::new();
    c.insert((0, 1), vec![rat(0), rat(2), rat(0)]);
    c.insert((0, 2), vec![rat(0), rat(0), rat(-2)]);
    c.insert((1, 2), vec![rat(1), rat(0), rat(0)]);
    make_klie(vec!["h".into(), "e".into(), "f".into()], &c).expect("sl2")
}

/// The derivations `h ↦ -2x∂, e ↦ ∂, f ↦ -x²∂` of `ℚ[x]`.
pub fn sl2_line_action() -> Vec<Derivation> {
    let a = AlgebraPres::polynomial(&["x"]);
    ["-2*x", "1", "-x^2"].iter().map(|s| Derivation::parse(&a, &[s]).expect("derivation")).collect()
}

/// The action pseudoalgebra `ℚ[x] ⊗ sl₂` of [`sl2_line_action`].
pub fn sl2_action() -> PAlg {
    make_action(&AlgebraPres::polynomial(&["x"]), &sl2(), sl2_line_action()).expect("sl2 acts on the line")
}

/// The cotangent pseudoalgebra of the linear Poisson structure on `sl₂*`,
/// in coordinates `h, e, f`.
pub fn coadjoint_sl2() -> PAlg {
    let b = AlgebraPres::polynomial(&["h", "e", "f"]);
    let p = |s: &str| poly(&b, s);
    let pi = vec![
        vec![p("0"), p("2*e"), p("-2*f")],
        vec![p("-2*e"), p("0"), p("h")],
        vec![p("2*f"), p("-h"), p("0")],
    ];
    make_cotangent_poisson(&b, &pi).expect("coadjoint Poisson structure")
}

/// The anchor of a pseudoalgebra on polynomial coefficients, as a morphism
/// into the derivations of its algebra over the identity.
pub fn anchor_morphism(e: &PAlg) -> PAMorphism {
    let a = e.algebra().clone();
    let images = e.anchors().iter().map(|d| d.images().to_vec()).collect();
    PAMorphism::new(e.clone(), make_der(&a).expect("free algebra"), AlgMorphism::identity(&a), images).expect("anchor")
}

/// `h ↦ -h, e ↦ -f, f ↦ -e` on `sl₂`.
pub fn chevalley_involution() -> Vec<Vec<MPoly>> {
    let q = |n: i64| MPoly::from_int(0, n);
    vec![vec![q(-1), q(0), q(0)], vec![q(0), q(0), q(-1)], vec![q(0), q(-1), q(0)]]
}

/// Valid morphisms used to seed the morphism suite.
pub fn valid_morphisms() -> Vec<PAMorphism> {
    let mut out = Vec::new();
    let (dx, dy) = (der(&["x"]), der(&["y"]));
    let relabel = AlgMorphism::parse(dx.algebra().clone(), dy.algebra().clone(), &["y"]).expect("relabel");
    out.push(PAMorphism::new(dx.clone(), dy.clone(), relabel, vec![vec![dy.algebra().one()]]).expect("relabel"));

    let line = dx.algebra().clone();
    let images = sl2_line_action().iter().map(|d| d.images().to_vec()).collect();
    out.push(PAMorphism::new(sl2(), dx.clone(), AlgMorphism::unit(&line), images).expect("sl2 on the line"));

    out.push(PAMorphism::identity(&sl2()));
    out.push(
        PAMorphism::new(sl2(), sl2(), AlgMorphism::identity(&AlgebraPres::rationals()), chevalley_involution())
            .expect("involution"),
    );

    let dxy = der(&["x", "y"]);
    let incl = AlgMorphism::parse(line.clone(), dxy.algebra().clone(), &["x"]).expect("inclusion");
    let b = dxy.algebra();
    out.push(PAMorphism::new(dx, dxy.clone(), incl, vec![vec![b.one(), poly(b, "y")]]).expect("lift"));

    out.push(anchor_morphism(&sl2_action()));
    out.push(anchor_morphism(&coadjoint_sl2()));
    out
}

/// Valid morphisms followed by all their single-entry mutants.
pub fn morphism_suite() -> Vec<PAMorphism> {
    let valid = valid_morphisms();
    let mutants: Vec<PAMorphism> = valid.iter().flat_map(PAMorphism::mutants).collect();
    valid.into_iter().chain(mutants).collect()
}

/// `ψ: u ↦ x, v ↦ x²` with `∂x ↦ ∂u ⊗ 1 + ∂v ⊗ 2x`, from `Der(ℚ[x])` to `Der(ℚ[u, v])`.
pub fn uv_comorphism() -> PAComorphism {
    let (e, f) = (der(&["u", "v"]), der(&["x"]));
    let b = f.algebra().clone();
    let psi = AlgMorphism::parse(e.algebra().clone(), b.clone(), &["x", "x^2"]).expect("psi");
    PAComorphism::new(e, f, psi, vec![vec![b.one(), poly(&b, "2*x")]]).expect("uv comorphism")
}

/// `θ: x ↦ s²` with `∂s ↦ ∂x ⊗ 2s`, from `Der(ℚ[s])` to `Der(ℚ[x])`.
pub fn square_comorphism() -> PAComorphism {
    let (e, f) = (der(&["x"]), der(&["s"]));
    let c = f.algebra().clone();
    let theta = AlgMorphism::parse(e.algebra().clone(), c.clone(), &["s^2"]).expect("theta");
    PAComorphism::new(e, f, theta, vec![vec![poly(&c, "2*s")]]).expect("square comorphism")
}

/// `s ↦ r + 1` with `∂r ↦ ∂s ⊗ 1`, from `Der(ℚ[r])` to `Der(ℚ[s])`.
pub fn shift_comorphism() -> PAComorphism {
    let (e, f) = (der(&["s"]), der(&["r"]));
    let c = f.algebra().clone();
    let shift = AlgMorphism::parse(e.algebra().clone(), c.clone(), &["r + 1"]).expect("shift");
    PAComorphism::new(e, f, shift, vec![vec![c.one()]]).expect("shift comorphism")
}

/// Valid comorphisms used to seed the comorphism suite.
pub fn valid_comorphisms() -> Vec<PAComorphism> {
    let mut out = vec![uv_comorphism(), square_comorphism(), PAComorphism::identity(&der(&["x", "y"]))];

    let (dx, dxy) = (der(&["x"]), der(&["x", "y"]));
    let b = dxy.algebra().clone();
    let incl = AlgMorphism::parse(dx.algebra().clone(), b.clone(), &["x"]).expect("inclusion");
    out.push(PAComorphism::new(dx.clone(), dxy, incl, vec![vec![b.one()], vec![b.zero()]]).expect("projection"));

    let q = AlgebraPres::rationals();
    out.push(
        PAComorphism::new(sl2(), sl2(), AlgMorphism::identity(&q), chevalley_involution()).expect("involution"),
    );

    let act = sl2_action();
    let a = act.algebra().clone();
    out.push(
        PAComorphism::new(act, dx, AlgMorphism::identity(&a), vec![vec![a.zero(), a.one(), a.zero()]])
            .expect("lift of d/dx"),
    );
    out
}

/// Valid comorphisms followed by all their single-entry mutants.
pub fn comorphism_suite() -> Vec<PAComorphism> {
    let valid = valid_comorphisms();
    let mutants: Vec<PAComorphism> = valid.iter().flat_map(PAComorphism::mutants).collect();
    valid.into_iter().chain(mutants).collect()
}

/// The ψ-sum of `Der(ℚ[x])` and `Der(ℚ[y])` over `ψ: x ↦ y²`.
pub fn psisum_square() -> PsiSum<PAlg> {
    let (e, f) = (der(&["x"]), der(&["y"]));
    let psi = AlgMorphism::parse(e.algebra().clone(), f.algebra().clone(), &["y^2"]).expect("psi");
    PsiSum::new(e, f, psi).expect("psi-sum")
}

/// The member `∂x ⊗ 2yb + b∂y` of [`psisum_square`].
pub fn psisum_square_member(ctx: &PsiSum<PAlg>, b: &MPoly) -> MixedElement<PAElement> {
    let two_y = poly(ctx.f().algebra(), "2*y");
    let y = ctx.f().element(vec![b.clone()]).expect("rank one");
    ctx.element(vec![ctx.f().algebra().mul(&two_y, b)], y).expect("member")
}

/// The chained sums over `ψ: x ↦ y²` and `θ: y ↦ z³`.
pub fn chained_triple() -> TripleSums {
    let (e, f, g) = (der(&["x"]), der(&["y"]), der(&["z"]));
    let psi = AlgMorphism::parse(e.algebra().clone(), f.algebra().clone(), &["y^2"]).expect("psi");
    let theta = AlgMorphism::parse(f.algebra().clone(), g.algebra().clone(), &["z^3"]).expect("theta");
    TripleSums::new(e, f, g, psi, theta).expect("triple sums")
}

/// `ℤ/2` swapping `{1, 2}`.
pub fn swap_groupoid() -> FinGroupoid {
    let action = RightAction::new(FinGroup::cyclic(2), &["1", "2"], vec![vec![0, 1], vec![1, 0]]).expect("swap");
    make_action_groupoid(&action).expect("swap groupoid")
}

/// Named groupoids with at most six arrows.
pub fn small_groupoids() -> Vec<(String, FinGroupoid)> {
    let swap = swap_groupoid();
    let z2_on_three = make_action_groupoid(
        &RightAction::new(FinGroup::cyclic(2), &["1", "2", "3"], vec![vec![0, 1], vec![1, 0], vec![2, 2]])
            .expect("action"),
    )
    .expect("groupoid");
    let z3_on_two = make_action_groupoid(&RightAction::trivial(FinGroup::cyclic(3), &["1", "2"])).expect("groupoid");
    vec![
        ("pair(1)".into(), make_pair(&["1"]).expect("pair")),
        ("pair(2)".into(), make_pair(&["1", "2"]).expect("pair")),
        ("Z/2".into(), group_groupoid(&FinGroup::cyclic(2))),
        ("Z/3".into(), group_groupoid(&FinGroup::cyclic(3))),
        ("Z/2 swapping 2 points".into(), swap.clone()),
        ("Z/2 on 3 points".into(), z2_on_three.clone()),
        ("Z/3 fixing 2 points".into(), z3_on_two),
        ("swap restricted to 1 point".into(), restrict_groupoid(&swap, &[0]).expect("restriction")),
        ("Z/2 on 3 points restricted to its fixed point".into(), restrict_groupoid(&z2_on_three, &[2]).expect("restriction")),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::check_groupoid;
    use crate::morphisms::{check_pacomorphism, check_pamorphism};
    use crate::pseudoalg::axioms_check;

    #[test]
    fn seeds_are_valid() {
        for m in valid_morphisms() {
            assert!(check_pamorphism(&m).is_pass(), "{}", check_pamorphism(&m));
        }
        for m in valid_comorphisms() {
            assert!(check_pacomorphism(&m).is_pass(), "{}", check_pacomorphism(&m));
        }
        assert!(morphism_suite().len() >= 20);
        assert!(comorphism_suite().len() >= 20);
        assert!(axioms_check(&coadjoint_sl2()).is_pass());
    }

    #[test]
    fn corpus_is_small_and_valid() {
        for (name, g) in small_groupoids() {
            assert!(g.n_arrows() <= 6, "{name}");
            assert!(check_groupoid(&g).is_pass(), "{name}");
        }
    }
}
