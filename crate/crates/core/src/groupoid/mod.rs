//! Finite groupoids with explicit tables.
//!
//! A product `gh` is defined when `β(g) = α(h)`; some texts use the opposite
//! order. Objects are identified with their identity arrows. Restrictions and
//! φ-products of finite groupoids are always groupoids, so no smoothness
//! caveats apply here.

mod action;
mod group;
mod maps;

use std::collections::{BTreeMap, BTreeSet};

pub use action::{
    action_as_comorphism, check_groupoid_action, induced_groupoid_action, make_action_groupoid_of_action,
    ActionGroupoid, GroupoidAction,
};
pub use group::{check_right_action, FinGroup, PrincipalBundle, RightAction};
pub use maps::{
    all_base_maps, check_grpd_comorphism, check_grpd_map, check_grpd_morphism, comorphism_graph,
    compose_grpd_comorphisms, compose_grpd_morphisms, enumerate_maps, find_isomorphism, graph_of,
    graph_subgroupoid_check, morphism_graph, search_space, GrpdComorphism, GrpdMap, GrpdMorphism, MapKind, Route,
    SEARCH_LIMIT,
};

use crate::error::{Error, Result};
use crate::report::Report;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinGroupoid {
    objects: Vec<String>,
    arrows: Vec<String>,
    src: Vec<usize>,
    tgt: Vec<usize>,
    ids: Vec<usize>,
    inv: Vec<usize>,
    /// `comp[g * n + h]`, defined on composable pairs.
    comp: Vec<Option<usize>>,
}

fn check_unique(names: &[String], what: &str) -> Result<()> {
    let mut seen = BTreeSet::new();
    for n in names {
        if !seen.insert(n) {
            return Err(Error::DuplicateName(format!("{what} {n}")));
        }
    }
    Ok(())
}

impl FinGroupoid {
    /// Builds a groupoid from raw tables. Only shapes and index ranges are
    /// checked here; [`check_groupoid`] decides the axioms.
    pub fn new(
        objects: Vec<String>,
        arrows: Vec<String>,
        src: Vec<usize>,
        tgt: Vec<usize>,
        ids: Vec<usize>,
        inv: Vec<usize>,
        comp: &BTreeMap<(usize, usize), usize>,
    ) -> Result<Self> {
        check_unique(&objects, "object")?;
        check_unique(&arrows, "arrow")?;
        let (no, na) = (objects.len(), arrows.len());
        let lens = [("source", src.len(), na), ("target", tgt.len(), na), ("inverse", inv.len(), na), ("identity", ids.len(), no)];
        for (what, found, expected) in lens {
            if found != expected {
                return Err(Error::Malformed(format!("{what} table has {found} entries, expected {expected}")));
            }
        }
        if src.iter().chain(&tgt).any(|&x| x >= no) {
            return Err(Error::Malformed("source or target out of range".into()));
        }
        if ids.iter().chain(&inv).any(|&g| g >= na) {
            return Err(Error::Malformed("identity or inverse out of range".into()));
        }
        let mut table = vec![None; na * na];
        for (&(g, h), &gh) in comp {
            if g >= na || h >= na || gh >= na {
                return Err(Error::Malformed(format!("composition entry ({g}, {h}) -> {gh} out of range")));
            }
            table[g * na + h] = Some(gh);
        }
        Ok(FinGroupoid { objects, arrows, src, tgt, ids, inv, comp: table })
    }

    /// Builds a groupoid whose composition is given by `mul` on composable pairs.
    pub(crate) fn from_fn(
        objects: Vec<String>,
        arrows: Vec<String>,
        src: Vec<usize>,
        tgt: Vec<usize>,
        ids: Vec<usize>,
        inv: Vec<usize>,
        mul: impl Fn(usize, usize) -> usize,
    ) -> Self {
        let na = arrows.len();
        let mut comp = vec![None; na * na];
        for g in 0..na {
            for h in 0..na {
                if tgt[g] == src[h] {
                    comp[g * na + h] = Some(mul(g, h));
                }
            }
        }
        FinGroupoid { objects, arrows, src, tgt, ids, inv, comp }
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn arrows(&self) -> &[String] {
        &self.arrows
    }

    pub fn n_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn n_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn src(&self, g: usize) -> usize {
        self.src[g]
    }

    pub fn tgt(&self, g: usize) -> usize {
        self.tgt[g]
    }

    pub fn id(&self, x: usize) -> usize {
        self.ids[x]
    }

    pub fn inv(&self, g: usize) -> usize {
        self.inv[g]
    }

    pub fn composable(&self, g: usize, h: usize) -> bool {
        self.tgt[g] == self.src[h]
    }

    /// The product `gh` as stored in the table.
    pub fn compose(&self, g: usize, h: usize) -> Option<usize> {
        self.comp[g * self.n_arrows() + h]
    }

    /// All stored composition entries `((g, h), gh)`.
    pub fn composition_table(&self) -> BTreeMap<(usize, usize), usize> {
        let n = self.n_arrows();
        (0..n * n).filter_map(|k| self.comp[k].map(|gh| ((k / n, k % n), gh))).collect()
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a == name)
    }

    /// Arrows with source `x`.
    pub fn out_arrows(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n_arrows()).filter(move |&g| self.src[g] == x)
    }

    /// `O_x = β(α⁻¹(x))`.
    pub fn orbit(&self, x: usize) -> BTreeSet<usize> {
        self.out_arrows(x).map(|g| self.tgt[g]).collect()
    }

    fn describe(&self, g: usize) -> String {
        format!("{}: {} -> {}", self.arrows[g], self.objects[self.src[g]], self.objects[self.tgt[g]])
    }
}

/// `O_x` for the object `x`.
pub fn orbit(g: &FinGroupoid, x: usize) -> BTreeSet<usize> {
    g.orbit(x)
}

/// The orbit condition necessary for a map over `φ` to exist: `φ(O_x) ⊂ O_φ(x)`
/// for morphisms and `O_φ(x) ⊂ φ(O_x)` for comorphisms, for every `x`.
pub fn orbit_condition(gamma: &FinGroupoid, pi: &FinGroupoid, phi: &[usize], kind: MapKind) -> bool {
    (0..gamma.n_objects()).all(|x| {
        let image: BTreeSet<usize> = gamma.orbit(x).iter().map(|&y| phi[y]).collect();
        let target = pi.orbit(phi[x]);
        match kind {
            MapKind::Morphism => image.is_subset(&target),
            MapKind::Comorphism => target.is_subset(&image),
        }
    })
}

/// Records a single check from the first counterexample, if any.
pub(crate) fn record_first(report: &mut Report, name: &str, witness: Option<String>) {
    match witness {
        None => report.pass(name),
        Some(w) => report.fail(name, w),
    }
}

/// Checks every groupoid axiom exhaustively.
pub fn check_groupoid(g: &FinGroupoid) -> Report {
    let mut report = Report::new(format!("groupoid with {} objects and {} arrows", g.n_objects(), g.n_arrows()));
    let objs = 0..g.n_objects();
    let arrs = || 0..g.n_arrows();
    let name = |a: usize| g.arrows[a].clone();

    let w = objs.clone().find(|&x| g.src(g.id(x)) != x || g.tgt(g.id(x)) != x).map(|x| {
        format!("identity {} of {} is {}", name(g.id(x)), g.objects[x], g.describe(g.id(x)))
    });
    record_first(&mut report, "identities sit at their objects", w);

    let w = arrs().flat_map(|a| arrs().map(move |b| (a, b))).find_map(|(a, b)| {
        match (g.composable(a, b), g.compose(a, b)) {
            (true, None) => Some(format!("{}{} is undefined although composable", name(a), name(b))),
            (false, Some(_)) => Some(format!("{}{} is defined although {} != {}", name(a), name(b), g.objects[g.tgt(a)], g.objects[g.src(b)])),
            _ => None,
        }
    });
    record_first(&mut report, "composition defined exactly on composable pairs", w);

    let w = g.composition_table().into_iter().find_map(|((a, b), ab)| {
        (g.src(ab) != g.src(a) || g.tgt(ab) != g.tgt(b))
            .then(|| format!("{}{} = {} has the wrong endpoints", name(a), name(b), g.describe(ab)))
    });
    record_first(&mut report, "endpoints of products", w);

    let w = arrs().find_map(|a| {
        let left = g.compose(g.id(g.src(a)), a);
        let right = g.compose(a, g.id(g.tgt(a)));
        (left != Some(a) || right != Some(a)).then(|| format!("units do not fix {}", name(a)))
    });
    record_first(&mut report, "unit laws", w);

    let w = arrs().find_map(|a| {
        let i = g.inv(a);
        let ok = g.compose(a, i) == Some(g.id(g.src(a))) && g.compose(i, a) == Some(g.id(g.tgt(a)));
        (!ok).then(|| format!("{} is not an inverse of {}", name(i), name(a)))
    });
    record_first(&mut report, "inverses", w);

    let w = g.composition_table().into_iter().find_map(|((a, b), ab)| {
        arrs().filter(|&c| g.composable(b, c)).find_map(|c| {
            let lhs = g.compose(ab, c);
            let rhs = g.compose(b, c).and_then(|bc| g.compose(a, bc));
            (lhs != rhs).then(|| format!("({}{}){} != {}({}{})", name(a), name(b), name(c), name(a), name(b), name(c)))
        })
    });
    record_first(&mut report, "associativity", w);
    report
}

/// `M × M` with `(x, y)(y, z) = (x, z)`; arrow `(x, y)` has index `x·|M| + y`.
pub fn make_pair(objects: &[&str]) -> Result<FinGroupoid> {
    let objects: Vec<String> = objects.iter().map(|s| s.to_string()).collect();
    check_unique(&objects, "object")?;
    let n = objects.len();
    let idx = |x: usize, y: usize| x * n + y;
    let mut arrows = Vec::with_capacity(n * n);
    let (mut src, mut tgt, mut inv) = (Vec::new(), Vec::new(), Vec::new());
    for x in 0..n {
        for y in 0..n {
            arrows.push(format!("({},{})", objects[x], objects[y]));
            src.push(x);
            tgt.push(y);
            inv.push(idx(y, x));
        }
    }
    let ids = (0..n).map(|x| idx(x, x)).collect();
    Ok(FinGroupoid::from_fn(objects, arrows, src, tgt, ids, inv, |g, h| idx(g / n, h % n)))
}

/// `M × G` with `α(x, g) = x`, `β(x, g) = xg` and `(x, g₁)(xg₁, g₂) = (x, g₁g₂)`;
/// arrow `(x, g)` has index `x·|G| + g`. Errors unless the action axioms hold.
pub fn make_action_groupoid(action: &RightAction) -> Result<FinGroupoid> {
    let report = check_right_action(action);
    if !report.is_pass() {
        return Err(Error::verification(report));
    }
    let grp = action.group();
    let k = grp.order();
    let n = action.set().len();
    let idx = |x: usize, g: usize| x * k + g;
    let mut arrows = Vec::with_capacity(n * k);
    let (mut src, mut tgt, mut inv) = (Vec::new(), Vec::new(), Vec::new());
    for x in 0..n {
        for g in 0..k {
            arrows.push(format!("({},{})", action.set()[x], grp.elements()[g]));
            src.push(x);
            tgt.push(action.act(x, g));
            inv.push(idx(action.act(x, g), grp.inverse(g)));
        }
    }
    let ids = (0..n).map(|x| idx(x, grp.identity())).collect();
    Ok(FinGroupoid::from_fn(action.set().to_vec(), arrows, src, tgt, ids, inv, |a, b| {
        idx(a / k, grp.mul(a % k, b % k))
    }))
}

/// A group as a groupoid with one object.
pub fn group_groupoid(group: &FinGroup) -> FinGroupoid {
    let action = RightAction::trivial(group.clone(), &["*"]);
    make_action_groupoid(&action).expect("trivial action")
}

/// `Γ × Π` over `M × N`; arrow `(g, w)` has index `g·|Π| + w` and object
/// `(x, y)` has index `x·|N| + y`.
pub fn make_direct_product(gamma: &FinGroupoid, pi: &FinGroupoid) -> FinGroupoid {
    let (np, nn) = (pi.n_arrows(), pi.n_objects());
    let mut objects = Vec::new();
    for x in gamma.objects() {
        for y in pi.objects() {
            objects.push(format!("({x},{y})"));
        }
    }
    let mut arrows = Vec::new();
    let (mut src, mut tgt, mut inv) = (Vec::new(), Vec::new(), Vec::new());
    for g in 0..gamma.n_arrows() {
        for w in 0..np {
            arrows.push(format!("({},{})", gamma.arrows()[g], pi.arrows()[w]));
            src.push(gamma.src(g) * nn + pi.src(w));
            tgt.push(gamma.tgt(g) * nn + pi.tgt(w));
            inv.push(gamma.inv(g) * np + pi.inv(w));
        }
    }
    let ids = (0..gamma.n_objects())
        .flat_map(|x| (0..nn).map(move |y| (x, y)))
        .map(|(x, y)| gamma.id(x) * np + pi.id(y))
        .collect();
    FinGroupoid::from_fn(objects, arrows, src, tgt, ids, inv, |a, b| {
        let gh = gamma.compose(a / np, b / np).expect("composable in the first factor");
        let wz = pi.compose(a % np, b % np).expect("composable in the second factor");
        gh * np + wz
    })
}

/// The full subgroupoid on the objects `keep`, listed in the given order.
/// Returns the groupoid together with the kept arrows' indices in `g`.
pub fn restrict_with_arrows(g: &FinGroupoid, keep: &[usize]) -> Result<(FinGroupoid, Vec<usize>)> {
    if let Some(&x) = keep.iter().find(|&&x| x >= g.n_objects()) {
        return Err(Error::Malformed(format!("object index {x} out of range")));
    }
    let mut pos = vec![None; g.n_objects()];
    for (i, &x) in keep.iter().enumerate() {
        if pos[x].is_some() {
            return Err(Error::DuplicateName(g.objects[x].clone()));
        }
        pos[x] = Some(i);
    }
    let kept: Vec<usize> = (0..g.n_arrows()).filter(|&a| pos[g.src(a)].is_some() && pos[g.tgt(a)].is_some()).collect();
    let mut apos = vec![usize::MAX; g.n_arrows()];
    for (i, &a) in kept.iter().enumerate() {
        apos[a] = i;
    }
    let objects = keep.iter().map(|&x| g.objects[x].clone()).collect();
    let arrows = kept.iter().map(|&a| g.arrows[a].clone()).collect();
    let src = kept.iter().map(|&a| pos[g.src(a)].unwrap()).collect();
    let tgt = kept.iter().map(|&a| pos[g.tgt(a)].unwrap()).collect();
    let ids = keep.iter().map(|&x| apos[g.id(x)]).collect();
    let inv = kept.iter().map(|&a| apos[g.inv(a)]).collect();
    let mut comp = BTreeMap::new();
    for (i, &a) in kept.iter().enumerate() {
        for (j, &b) in kept.iter().enumerate() {
            if let Some(ab) = g.compose(a, b) {
                comp.insert((i, j), apos[ab]);
            }
        }
    }
    let out = FinGroupoid::new(objects, arrows, src, tgt, ids, inv, &comp)?;
    Ok((out, kept))
}

/// `Γ_{M₀} = {g | α(g) ∈ M₀, β(g) ∈ M₀}`.
pub fn restrict_groupoid(g: &FinGroupoid, keep: &[usize]) -> Result<FinGroupoid> {
    restrict_with_arrows(g, keep).map(|(r, _)| r)
}

/// The restriction of `Γ × Π` to the graph of `φ: M → N`, on the base `M`.
/// Also returns the pair `(g, w)` behind each arrow.
pub fn make_phi_product_with_pairs(
    gamma: &FinGroupoid,
    pi: &FinGroupoid,
    phi: &[usize],
) -> Result<(FinGroupoid, Vec<(usize, usize)>)> {
    if phi.len() != gamma.n_objects() || phi.iter().any(|&y| y >= pi.n_objects()) {
        return Err(Error::Malformed("base map does not match the groupoids".into()));
    }
    let product = make_direct_product(gamma, pi);
    let graph: Vec<usize> = phi.iter().enumerate().map(|(x, &y)| x * pi.n_objects() + y).collect();
    let (mut out, kept) = restrict_with_arrows(&product, &graph)?;
    out.objects = gamma.objects.clone();
    let pairs = kept.iter().map(|&a| (a / pi.n_arrows(), a % pi.n_arrows())).collect();
    Ok((out, pairs))
}

/// `Γ ×_φ Π = {(g, w) | α_Π(w) = φα_Γ(g), β_Π(w) = φβ_Γ(g)}` on the base `M`.
pub fn make_phi_product(gamma: &FinGroupoid, pi: &FinGroupoid, phi: &[usize]) -> Result<FinGroupoid> {
    make_phi_product_with_pairs(gamma, pi, phi).map(|(g, _)| g)
}

/// `(P × P)/G` over `M` for a principal bundle; arrow `⟨x₁, x₂⟩` is named by
/// the least representative of its orbit.
pub fn make_gauge(bundle: &PrincipalBundle) -> Result<FinGroupoid> {
    let report = bundle.check();
    if !report.is_pass() {
        return Err(Error::verification(report));
    }
    let act = bundle.action();
    let grp = act.group();
    let p = act.set().len();
    // orbit representative of (x1, x2) under the diagonal action
    let rep = |x1: usize, x2: usize| -> (usize, usize) {
        (0..grp.order()).map(|g| (act.act(x1, g), act.act(x2, g))).min().expect("nonempty group")
    };
    let reps: Vec<(usize, usize)> =
        (0..p).flat_map(|a| (0..p).map(move |b| (a, b))).filter(|&(a, b)| rep(a, b) == (a, b)).collect();
    let index: BTreeMap<(usize, usize), usize> = reps.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let look = |x1: usize, x2: usize| index[&rep(x1, x2)];
    let proj = bundle.projection();
    let arrows = reps.iter().map(|&(a, b)| format!("<{},{}>", act.set()[a], act.set()[b])).collect();
    let src = reps.iter().map(|&(a, _)| proj[a]).collect();
    let tgt = reps.iter().map(|&(_, b)| proj[b]).collect();
    let inv = reps.iter().map(|&(a, b)| look(b, a)).collect();
    let ids = (0..bundle.base().len())
        .map(|m| {
            let a = (0..p).find(|&a| proj[a] == m).expect("projection is onto");
            look(a, a)
        })
        .collect();
    Ok(FinGroupoid::from_fn(bundle.base().to_vec(), arrows, src, tgt, ids, inv, |u, v| {
        let (x1, x2) = reps[u];
        let (y1, y2) = reps[v];
        let g = (0..grp.order()).find(|&g| act.act(y1, g) == x2).expect("fibers are single orbits");
        look(x1, act.act(y2, g))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn swap() -> FinGroupoid {
        make_action_groupoid(&RightAction::new(FinGroup::cyclic(2), &["1", "2"], vec![vec![0, 1], vec![1, 0]]).unwrap())
            .unwrap()
    }

    #[test]
    fn pair_groupoid() {
        let g = make_pair(&["a", "b", "c"]).unwrap();
        assert_eq!(g.n_arrows(), 9);
        assert!(check_groupoid(&g).is_pass());
        assert_eq!(g.orbit(1).len(), 3);
        let one = make_pair(&["a"]).unwrap();
        assert_eq!(one.n_arrows(), 1);
        assert!(check_groupoid(&one).is_pass());
    }

    #[test]
    fn broken_inverse_is_named() {
        let g = make_pair(&["a", "b"]).unwrap();
        let mut inv: Vec<usize> = (0..4).map(|a| g.inv(a)).collect();
        inv[1] = 1;
        let broken = FinGroupoid::new(
            g.objects().to_vec(),
            g.arrows().to_vec(),
            (0..4).map(|a| g.src(a)).collect(),
            (0..4).map(|a| g.tgt(a)).collect(),
            vec![g.id(0), g.id(1)],
            inv,
            &g.composition_table(),
        )
        .unwrap();
        let r = check_groupoid(&broken);
        let f: Vec<_> = r.failures().collect();
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].name, "inverses");
        assert!(f[0].witness.as_ref().unwrap().contains("(a,b)"));
    }

    #[test]
    fn action_groupoids() {
        let g = swap();
        assert_eq!(g.n_arrows(), 4);
        assert!(check_groupoid(&g).is_pass());
        let a = g.arrow_index("(1,1)").unwrap();
        assert_eq!(g.objects()[g.tgt(a)], "2");
        let trivial = make_action_groupoid(&RightAction::trivial(FinGroup::cyclic(1), &["p", "q"])).unwrap();
        assert_eq!(trivial.n_arrows(), 2);
        let z2 = group_groupoid(&FinGroup::cyclic(2));
        assert_eq!((z2.n_objects(), z2.n_arrows()), (1, 2));
        assert!(check_groupoid(&z2).is_pass());
    }

    #[test]
    fn products_and_restrictions() {
        let p2 = make_pair(&["1", "2"]).unwrap();
        let prod = make_direct_product(&p2, &p2);
        assert_eq!((prod.n_objects(), prod.n_arrows()), (4, 16));
        assert!(check_groupoid(&prod).is_pass());
        assert!(check_groupoid(&make_direct_product(&p2, &swap())).is_pass());

        let pa = make_pair(&["a"]).unwrap();
        let phi = make_phi_product(&p2, &pa, &[0, 0]).unwrap();
        assert_eq!(phi.n_arrows(), 4);
        let pab = make_pair(&["a", "b"]).unwrap();
        let bij = make_phi_product(&p2, &pab, &[0, 1]).unwrap();
        assert_eq!(bij.n_arrows(), 4);
        assert!(check_groupoid(&bij).is_pass());

        let r = restrict_groupoid(&swap(), &[0]).unwrap();
        assert_eq!(r.n_arrows(), 1);
        assert!(check_groupoid(&restrict_groupoid(&p2, &[]).unwrap()).is_pass());
        let p3 = make_pair(&["1", "2", "3"]).unwrap();
        assert_eq!(restrict_groupoid(&p3, &[0, 2]).unwrap().n_arrows(), 4);
    }

    #[test]
    fn gauge_of_trivial_bundle() {
        let bundle = PrincipalBundle::trivial(&["1", "2"], FinGroup::cyclic(2));
        let g = make_gauge(&bundle).unwrap();
        assert_eq!(g.n_arrows(), 8);
        assert!(check_groupoid(&g).is_pass());
        let target = make_direct_product(&make_pair(&["1", "2"]).unwrap(), &group_groupoid(&FinGroup::cyclic(2)));
        assert!(find_isomorphism(&g, &target).unwrap().is_some());
        let plain = PrincipalBundle::trivial(&["1", "2"], FinGroup::cyclic(1));
        let g = make_gauge(&plain).unwrap();
        let p = make_pair(&["1", "2"]).unwrap();
        assert_eq!(g.n_arrows(), p.n_arrows());
        assert!(find_isomorphism(&g, &p).unwrap().is_some());
    }

    #[test]
    fn orbit_conditions() {
        // two fixed points collapse onto one point of a pair groupoid
        let fixed = make_action_groupoid(&RightAction::trivial(FinGroup::cyclic(1), &["1", "2"])).unwrap();
        let one = make_pair(&["a"]).unwrap();
        assert!(orbit_condition(&fixed, &one, &[0, 0], MapKind::Morphism));
        // the pair groupoid on two points has one orbit that a constant map cannot cover
        let two = make_pair(&["a", "b"]).unwrap();
        assert!(!orbit_condition(&fixed, &two, &[0, 0], MapKind::Comorphism));
        assert!(orbit_condition(&two, &fixed, &[0, 0], MapKind::Morphism));
    }
}
