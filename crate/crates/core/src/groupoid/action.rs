//! Groupoid actions on fibred sets, their comorphism form, and action groupoids.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::report::Report;

use super::maps::pullback_domain;
use super::{
    check_groupoid, check_grpd_comorphism, check_grpd_morphism, make_pair, make_phi_product_with_pairs, record_first,
    FinGroupoid, GrpdComorphism, GrpdMorphism,
};

/// A right action of a groupoid on `φ: Z → M`: `S(g): Z_{α(g)} → Z_{β(g)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupoidAction {
    pub space: Vec<String>,
    /// `fibration[z] = φ(z)`.
    pub fibration: Vec<usize>,
    /// `act[(z, g)] = S(g)(z)` for `φ(z) = α(g)`.
    pub act: BTreeMap<(usize, usize), usize>,
}

impl GroupoidAction {
    /// Builds the table from a function on `Z ×_φ Γ`.
    pub fn from_fn(gamma: &FinGroupoid, space: &[&str], fibration: Vec<usize>, s: impl Fn(usize, usize) -> usize) -> Self {
        let act = (0..space.len())
            .flat_map(|z| gamma.out_arrows(fibration[z]).map(move |g| (z, g)))
            .map(|(z, g)| ((z, g), s(z, g)))
            .collect();
        GroupoidAction { space: space.iter().map(|s| s.to_string()).collect(), fibration, act }
    }
}

/// Checks `φ` onto, the domain of the table, `φ(S(g)z) = β(g)`, `S(id) = Id`
/// and `S(g₁g₂) = S(g₂)∘S(g₁)`.
pub fn check_groupoid_action(gamma: &FinGroupoid, s: &GroupoidAction) -> Report {
    let mut report = Report::new("groupoid action");
    let nz = s.space.len();
    let shape = if s.fibration.len() != nz || s.fibration.iter().any(|&m| m >= gamma.n_objects()) {
        Some("fibration does not match the space and the base".to_string())
    } else {
        let expected: Vec<(usize, usize)> =
            (0..nz).flat_map(|z| gamma.out_arrows(s.fibration[z]).map(move |g| (z, g))).collect();
        let keys: Vec<(usize, usize)> = s.act.keys().copied().collect();
        if keys != expected || s.act.values().any(|&z| z >= nz) {
            Some("table is not defined exactly on Z x_phi Gamma with values in Z".to_string())
        } else {
            None
        }
    };
    if let Some(w) = shape {
        report.fail("shape", w);
        return report;
    }
    report.pass("shape");
    let zn = |z: usize| s.space[z].clone();
    let an = |g: usize| gamma.arrows()[g].clone();
    let w = (0..gamma.n_objects()).find(|m| !s.fibration.contains(m)).map(|m| format!("nothing lies over {}", gamma.objects()[m]));
    record_first(&mut report, "fibration is onto", w);
    let w = s
        .act
        .iter()
        .find(|(&(_, g), &z2)| s.fibration[z2] != gamma.tgt(g))
        .map(|(&(z, g), &z2)| format!("S({})({}) = {} is not over the target", an(g), zn(z), zn(z2)));
    record_first(&mut report, "S(g) lands in the target fiber", w);
    let w = (0..nz)
        .find(|&z| s.act[&(z, gamma.id(s.fibration[z]))] != z)
        .map(|z| format!("S({})({}) = {}", an(gamma.id(s.fibration[z])), zn(z), zn(s.act[&(z, gamma.id(s.fibration[z]))])));
    record_first(&mut report, "identities act trivially", w);
    let w = s.act.iter().find_map(|(&(z, g), &z2)| {
        gamma.out_arrows(gamma.tgt(g)).find_map(|h| {
            let gh = gamma.compose(g, h)?;
            let lhs = s.act[&(z, gh)];
            let rhs = *s.act.get(&(z2, h))?;
            (lhs != rhs).then(|| {
                format!("S({}{})({}) = {} but S({})(S({})({})) = {}", an(g), an(h), zn(z), zn(lhs), an(h), an(g), zn(z), zn(rhs))
            })
        })
    });
    record_first(&mut report, "S(gh) = S(h) S(g)", w);
    report
}

/// `Φ(x, g) = (x, S(g)x)` from `Z ×_φ Γ` to the pair groupoid on `Z`.
/// Returns the pair groupoid and the comorphism over `φ`.
pub fn action_as_comorphism(gamma: &FinGroupoid, s: &GroupoidAction) -> Result<(FinGroupoid, GrpdComorphism)> {
    let names: Vec<&str> = s.space.iter().map(String::as_str).collect();
    let pair = make_pair(&names)?;
    let n = s.space.len();
    let mut table = BTreeMap::new();
    for (x, g) in pullback_domain(&pair, gamma, &s.fibration) {
        let y = *s.act.get(&(x, g)).ok_or_else(|| Error::Malformed("action table is incomplete".into()))?;
        table.insert((x, g), x * n + y);
    }
    Ok((pair, GrpdComorphism { base: s.fibration.clone(), table }))
}

/// For a comorphism `Φ: Z ×_φ Γ → Ω` over a surjective `φ: Z → M`, the action
/// `S(g)(x) = β_Ω(Φ(x, g))`, with the verdict on the action axioms.
pub fn induced_groupoid_action(
    omega: &FinGroupoid,
    gamma: &FinGroupoid,
    phi: &GrpdComorphism,
) -> Result<(GroupoidAction, Report)> {
    let pre = check_grpd_comorphism(omega, gamma, phi);
    if !pre.is_pass() {
        return Err(Error::Precondition(format!("not a comorphism: {}", pre.summary())));
    }
    if let Some(m) = (0..gamma.n_objects()).find(|m| !phi.base.contains(m)) {
        return Err(Error::Precondition(format!("base map misses {}", gamma.objects()[m])));
    }
    let act = phi.table.iter().map(|(&k, &w)| (k, omega.tgt(w))).collect();
    let s = GroupoidAction { space: omega.objects().to_vec(), fibration: phi.base.clone(), act };
    let report = check_groupoid_action(gamma, &s);
    Ok((s, report))
}

/// The action groupoid `Z ×_φ Γ` of an action with its projection to `Γ` and
/// its embedding into the φ-product of the pair groupoid on `Z` with `Γ`.
#[derive(Debug, Clone)]
pub struct ActionGroupoid {
    pub groupoid: FinGroupoid,
    /// `(x, g)` behind each arrow.
    pub pairs: Vec<(usize, usize)>,
    /// `(x, g) ↦ g` over `φ`.
    pub projection: GrpdMorphism,
    /// The φ-product of `pair(Z)` and `Γ`.
    pub phi_product: FinGroupoid,
    /// `(x, g) ↦ ((x, S(g)x), g)` over the identity of `Z`.
    pub embedding: GrpdMorphism,
    pub report: Report,
}

/// Builds `Z ×_φ Γ` with `α(x, g) = x`, `β(x, g) = S(g)x` and
/// `(x, g)(S(g)x, h) = (x, gh)`; errors unless `S` is an action.
pub fn make_action_groupoid_of_action(gamma: &FinGroupoid, s: &GroupoidAction) -> Result<ActionGroupoid> {
    let pre = check_groupoid_action(gamma, s);
    if !pre.is_pass() {
        return Err(Error::verification(pre));
    }
    let pairs: Vec<(usize, usize)> = s.act.keys().copied().collect();
    let index: BTreeMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let arrows = pairs.iter().map(|&(x, g)| format!("({},{})", s.space[x], gamma.arrows()[g])).collect();
    let src = pairs.iter().map(|&(x, _)| x).collect();
    let tgt = pairs.iter().map(|p| s.act[p]).collect();
    let inv = pairs.iter().map(|p| index[&(s.act[p], gamma.inv(p.1))]).collect();
    let ids = (0..s.space.len()).map(|x| index[&(x, gamma.id(s.fibration[x]))]).collect();
    let groupoid = FinGroupoid::from_fn(s.space.clone(), arrows, src, tgt, ids, inv, |a, b| {
        let (x, g) = pairs[a];
        let h = pairs[b].1;
        index[&(x, gamma.compose(g, h).expect("composable in the base"))]
    });

    let projection = GrpdMorphism { base: s.fibration.clone(), arrow_map: pairs.iter().map(|p| p.1).collect() };
    let names: Vec<&str> = s.space.iter().map(String::as_str).collect();
    let pair = make_pair(&names)?;
    let (phi_product, product_pairs) = make_phi_product_with_pairs(&pair, gamma, &s.fibration)?;
    let product_index: BTreeMap<(usize, usize), usize> =
        product_pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let n = s.space.len();
    let embedding = GrpdMorphism {
        base: (0..n).collect(),
        arrow_map: pairs.iter().map(|&(x, g)| product_index[&(x * n + s.act[&(x, g)], g)]).collect(),
    };

    let mut report = Report::new("action groupoid");
    report.absorb("groupoid", check_groupoid(&groupoid));
    report.absorb("projection", check_grpd_morphism(&groupoid, gamma, &projection));
    report.absorb("embedding", check_grpd_morphism(&groupoid, &phi_product, &embedding));
    let mut images = embedding.arrow_map.clone();
    images.sort_unstable();
    images.dedup();
    record_first(
        &mut report,
        "embedding is injective",
        (images.len() != embedding.arrow_map.len()).then(|| "two arrows share an image".to_string()),
    );
    Ok(ActionGroupoid { groupoid, pairs, projection, phi_product, embedding, report })
}

#[cfg(test)]
mod tests {
    use super::super::*;
    use super::*;

    fn swap() -> FinGroupoid {
        make_action_groupoid(&RightAction::new(FinGroup::cyclic(2), &["1", "2"], vec![vec![0, 1], vec![1, 0]]).unwrap())
            .unwrap()
    }

    /// The action of an action groupoid on its own base: `S(g)(x) = β(g)`.
    fn tautological(g: &FinGroupoid) -> GroupoidAction {
        let names: Vec<&str> = g.objects().iter().map(String::as_str).collect();
        GroupoidAction::from_fn(g, &names, (0..g.n_objects()).collect(), |_, a| g.tgt(a))
    }

    #[test]
    fn round_trip_through_the_pair_groupoid() {
        let g = swap();
        let s = tautological(&g);
        assert!(check_groupoid_action(&g, &s).is_pass());
        let (pair, phi) = action_as_comorphism(&g, &s).unwrap();
        assert!(check_grpd_comorphism(&pair, &g, &phi).is_pass());
        let (back, verdict) = induced_groupoid_action(&pair, &g, &phi).unwrap();
        assert!(verdict.is_pass());
        assert_eq!(back, s);
        let sigma = g.arrow_index("(1,1)").unwrap();
        assert_eq!(back.act[&(0, sigma)], 1);
    }

    #[test]
    fn action_groupoid_of_an_action() {
        let g = swap();
        let ag = make_action_groupoid_of_action(&g, &tautological(&g)).unwrap();
        assert_eq!(ag.groupoid.n_arrows(), 4);
        assert!(ag.report.is_pass(), "{}", ag.report);
        let graph = morphism_graph(&ag.embedding);
        let r = graph_subgroupoid_check(&ag.groupoid, &ag.phi_product, &ag.embedding.base, MapKind::Morphism, &graph);
        assert!(r.is_pass());
    }

    #[test]
    fn broken_action_is_rejected() {
        let g = swap();
        let mut s = tautological(&g);
        let id0 = g.id(0);
        s.act.insert((0, id0), 1);
        let r = check_groupoid_action(&g, &s);
        assert!(!r.is_pass());
        assert!(make_action_groupoid_of_action(&g, &s).is_err());
    }
}
