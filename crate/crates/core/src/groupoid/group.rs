//! Finite groups, right actions and principal bundles.

use crate::error::{Error, Result};
use crate::report::Report;

use super::record_first;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinGroup {
    elements: Vec<String>,
    mul: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FinGroup {
    /// Builds a group from its multiplication table; errors with a report when
    /// the table is not a group.
    pub fn new(elements: Vec<String>, mul: Vec<Vec<usize>>) -> Result<Self> {
        let n = elements.len();
        if n == 0 || mul.len() != n || mul.iter().any(|r| r.len() != n || r.iter().any(|&c| c >= n)) {
            return Err(Error::Malformed("group table must be square with entries in range".into()));
        }
        let mut report = Report::new("group table");
        let identity = (0..n).find(|&e| (0..n).all(|g| mul[e][g] == g && mul[g][e] == g));
        record_first(&mut report, "identity", identity.is_none().then(|| "no two-sided identity".to_string()));
        let Some(identity) = identity else {
            return Err(Error::verification(report));
        };
        let inverse: Vec<Option<usize>> =
            (0..n).map(|g| (0..n).find(|&h| mul[g][h] == identity && mul[h][g] == identity)).collect();
        let w = inverse.iter().position(Option::is_none).map(|g| format!("{} has no inverse", elements[g]));
        record_first(&mut report, "inverses", w);
        let w = (0..n)
            .flat_map(|a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c))))
            .find(|&(a, b, c)| mul[mul[a][b]][c] != mul[a][mul[b][c]])
            .map(|(a, b, c)| format!("({}{}){} != {}({}{})", elements[a], elements[b], elements[c], elements[a], elements[b], elements[c]));
        record_first(&mut report, "associativity", w);
        if !report.is_pass() {
            return Err(Error::verification(report));
        }
        let inverse = inverse.into_iter().map(Option::unwrap).collect();
        Ok(FinGroup { elements, mul, identity, inverse })
    }

    /// `ℤ/n` with elements named `0..n-1`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0, "cyclic group of order 0");
        let elements = (0..n).map(|k| k.to_string()).collect();
        let mul = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FinGroup::new(elements, mul).expect("cyclic group")
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.mul
    }
}

/// A right action `(x, g) ↦ xg` of a finite group on a finite set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RightAction {
    group: FinGroup,
    set: Vec<String>,
    /// `act[x][g] = xg`.
    act: Vec<Vec<usize>>,
}

impl RightAction {
    pub fn new(group: FinGroup, set: &[&str], act: Vec<Vec<usize>>) -> Result<Self> {
        let n = set.len();
        if act.len() != n || act.iter().any(|r| r.len() != group.order() || r.iter().any(|&y| y >= n)) {
            return Err(Error::Malformed("action table must be |set| x |group| with entries in range".into()));
        }
        Ok(RightAction { group, set: set.iter().map(|s| s.to_string()).collect(), act })
    }

    pub fn trivial(group: FinGroup, set: &[&str]) -> Self {
        let act = (0..set.len()).map(|x| vec![x; group.order()]).collect();
        RightAction::new(group, set, act).expect("trivial action")
    }

    pub fn group(&self) -> &FinGroup {
        &self.group
    }

    pub fn set(&self) -> &[String] {
        &self.set
    }

    pub fn act(&self, x: usize, g: usize) -> usize {
        self.act[x][g]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.act
    }
}

/// Checks `xe = x` and `x(g₁g₂) = (xg₁)g₂`.
pub fn check_right_action(a: &RightAction) -> Report {
    let g = &a.group;
    let mut report = Report::new("right action");
    let w = (0..a.set.len())
        .find(|&x| a.act(x, g.identity()) != x)
        .map(|x| format!("{} e = {}", a.set[x], a.set[a.act(x, g.identity())]));
    record_first(&mut report, "identity acts trivially", w);
    let w = (0..a.set.len())
        .flat_map(|x| (0..g.order()).flat_map(move |p| (0..g.order()).map(move |q| (x, p, q))))
        .find(|&(x, p, q)| a.act(x, g.mul(p, q)) != a.act(a.act(x, p), q))
        .map(|(x, p, q)| format!("{x}({p}{q}) != ({x}{p}){q}", x = a.set[x], p = g.elements[p], q = g.elements[q]));
    record_first(&mut report, "compatibility with products", w);
    report
}

/// A finite principal bundle `p: P → M` with structure group acting on `P`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrincipalBundle {
    action: RightAction,
    base: Vec<String>,
    projection: Vec<usize>,
}

impl PrincipalBundle {
    pub fn new(action: RightAction, base: &[&str], projection: Vec<usize>) -> Result<Self> {
        if projection.len() != action.set.len() || projection.iter().any(|&m| m >= base.len()) {
            return Err(Error::Malformed("projection must send every point of P into the base".into()));
        }
        Ok(PrincipalBundle { action, base: base.iter().map(|s| s.to_string()).collect(), projection })
    }

    /// `M × G → M` with `G` acting on the second factor by right translation;
    /// the point `(m, g)` is named `m.g` and has index `m·|G| + g`.
    pub fn trivial(base: &[&str], group: FinGroup) -> Self {
        let k = group.order();
        let names: Vec<String> =
            base.iter().flat_map(|m| group.elements().iter().map(move |g| format!("{m}.{g}"))).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let act = (0..names.len()).map(|p| (0..k).map(|g| (p / k) * k + group.mul(p % k, g)).collect()).collect();
        let projection = (0..names.len()).map(|p| p / k).collect();
        let action = RightAction::new(group, &refs, act).expect("translation action");
        PrincipalBundle::new(action, base, projection).expect("trivial bundle")
    }

    pub fn action(&self) -> &RightAction {
        &self.action
    }

    pub fn base(&self) -> &[String] {
        &self.base
    }

    pub fn projection(&self) -> &[usize] {
        &self.projection
    }

    /// Action axioms, projection onto and invariant, action free and
    /// transitive on every fiber.
    pub fn check(&self) -> Report {
        let a = &self.action;
        let g = a.group();
        let p = &self.projection;
        let mut report = Report::new("principal bundle");
        report.absorb("action", check_right_action(a));
        let w = (0..self.base.len()).find(|m| !p.contains(m)).map(|m| format!("fiber over {} is empty", self.base[m]));
        record_first(&mut report, "projection is onto", w);
        let pts = 0..a.set.len();
        let w = pts
            .clone()
            .flat_map(|x| (0..g.order()).map(move |h| (x, h)))
            .find(|&(x, h)| p[a.act(x, h)] != p[x])
            .map(|(x, h)| format!("{} and {}{} lie over different points", a.set[x], a.set[x], g.elements[h]));
        record_first(&mut report, "action preserves fibers", w);
        let w = pts
            .clone()
            .flat_map(|x| (0..g.order()).map(move |h| (x, h)))
            .find(|&(x, h)| h != g.identity() && a.act(x, h) == x)
            .map(|(x, h)| format!("{} fixes {}", g.elements[h], a.set[x]));
        record_first(&mut report, "action is free", w);
        let w = pts
            .clone()
            .flat_map(|x| pts.clone().map(move |y| (x, y)))
            .find(|&(x, y)| p[x] == p[y] && (0..g.order()).all(|h| a.act(x, h) != y))
            .map(|(x, y)| format!("no group element moves {} to {}", a.set[x], a.set[y]));
        record_first(&mut report, "action is transitive on fibers", w);
        report
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_tables() {
        let z3 = FinGroup::cyclic(3);
        assert_eq!(z3.inverse(1), 2);
        let bad = FinGroup::new(vec!["e".into(), "a".into()], vec![vec![0, 1], vec![1, 1]]);
        assert!(matches!(bad, Err(Error::Verification(_))));
    }

    #[test]
    fn actions_and_bundles() {
        let bad = RightAction::new(FinGroup::cyclic(2), &["1", "2"], vec![vec![1, 0], vec![1, 0]]).unwrap();
        assert!(!check_right_action(&bad).is_pass());
        assert!(PrincipalBundle::trivial(&["1", "2"], FinGroup::cyclic(2)).check().is_pass());
        let not_free = PrincipalBundle::new(RightAction::trivial(FinGroup::cyclic(2), &["p"]), &["m"], vec![0]).unwrap();
        let r = not_free.check();
        assert_eq!(r.failures().next().unwrap().name, "action is free");
    }
}
