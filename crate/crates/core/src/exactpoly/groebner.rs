//! Multivariate division and Buchberger's algorithm.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::poly::{divides, lcm, MPoly, Monomial, MonomialOrder, Rational};
use crate::error::{Error, Result};

/// Reduction steps allowed to a single Buchberger run unless configured otherwise.
pub const DEFAULT_STEP_CAP: u64 = 1_000_000;

#[derive(Clone, PartialEq, Eq)]
struct Key {
    order: MonomialOrder,
    mono: Monomial,
}

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order.cmp(&self.mono, &other.mono)
    }
}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

struct Divisor {
    lead: Monomial,
    lead_coeff: Rational,
    tail: Vec<(Monomial, Rational)>,
}

impl Divisor {
    fn new(p: &MPoly, order: MonomialOrder) -> Self {
        let (lead, lc) = p.leading(order).expect("divisors are nonzero");
        let lead = lead.clone();
        let tail = p.terms().filter(|(m, _)| **m != lead).map(|(m, c)| (m.clone(), c.clone())).collect();
        Divisor { lead, lead_coeff: lc.clone(), tail }
    }
}

struct Budget {
    used: u64,
    cap: u64,
}

impl Budget {
    fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.cap {
            Err(Error::StepCap { cap: self.cap })
        } else {
            Ok(())
        }
    }
}

fn reduce_with(p: &MPoly, divisors: &[Divisor], order: MonomialOrder, budget: &mut Budget) -> Result<MPoly> {
    let n = p.nvars();
    let mut work: BTreeMap<Key, Rational> =
        p.terms().map(|(m, c)| (Key { order, mono: m.clone() }, c.clone())).collect();
    let mut rem = MPoly::zero(n);
    while let Some((key, c)) = work.pop_last() {
        let Some(d) = divisors.iter().find(|d| divides(&d.lead, &key.mono)) else {
            rem.add_term(key.mono, c);
            continue;
        };
        budget.tick()?;
        let factor = &c / &d.lead_coeff;
        let shift: Monomial = key.mono.iter().zip(&d.lead).map(|(a, b)| a - b).collect();
        for (m, tc) in &d.tail {
            let mono: Monomial = m.iter().zip(&shift).map(|(a, b)| a + b).collect();
            let delta = -(tc * &factor);
            let k = Key { order, mono };
            let entry = work.entry(k).or_insert_with(Rational::zero);
            *entry += delta;
            if entry.is_zero() {
                // re-find the key to drop it; BTreeMap entry API has no remove on VacantEntry
                let mono: Monomial = m.iter().zip(&shift).map(|(a, b)| a + b).collect();
                work.remove(&Key { order, mono });
            }
        }
    }
    Ok(rem)
}

/// Remainder of `p` under multivariate division by `basis`.
///
/// When `basis` is a Groebner basis the remainder is the canonical
/// representative of the residue class of `p`.
pub fn reduce(p: &MPoly, basis: &[MPoly], order: MonomialOrder) -> MPoly {
    let divisors: Vec<Divisor> = basis.iter().filter(|g| !g.is_zero()).map(|g| Divisor::new(g, order)).collect();
    let mut budget = Budget { used: 0, cap: u64::MAX };
    reduce_with(p, &divisors, order, &mut budget).expect("unbounded budget")
}

fn monic(p: &MPoly, order: MonomialOrder) -> MPoly {
    match p.leading(order) {
        Some((_, c)) if !c.is_one() => p.scale(&c.recip()),
        _ => p.clone(),
    }
}

/// S-polynomial of two nonzero polynomials.
pub fn s_polynomial(f: &MPoly, g: &MPoly, order: MonomialOrder) -> MPoly {
    let (mf, cf) = f.leading(order).expect("nonzero");
    let (mg, cg) = g.leading(order).expect("nonzero");
    let l = lcm(mf, mg);
    let sf: Monomial = l.iter().zip(mf).map(|(a, b)| a - b).collect();
    let sg: Monomial = l.iter().zip(mg).map(|(a, b)| a - b).collect();
    &f.mul_term(&sf, &cf.recip()) - &g.mul_term(&sg, &cg.recip())
}

/// Reduced Groebner basis of the ideal generated by `generators`.
///
/// The output is monic, inter-reduced, and sorted by ascending leading
/// monomial, so equal ideals produce identical bases. `step_cap` bounds the
/// total number of reduction steps; exceeding it is an error, never a partial
/// answer.
pub fn buchberger(generators: &[MPoly], order: MonomialOrder, step_cap: u64) -> Result<Vec<MPoly>> {
    let Some(n) = generators.first().map(MPoly::nvars) else {
        return Ok(Vec::new());
    };
    for g in generators {
        g.check_arity(n)?;
    }
    let mut budget = Budget { used: 0, cap: step_cap };
    let mut basis: Vec<MPoly> = generators.iter().filter(|g| !g.is_zero()).map(|g| monic(g, order)).collect();
    let mut divisors: Vec<Divisor> = basis.iter().map(|g| Divisor::new(g, order)).collect();
    let mut pairs: Vec<(usize, usize)> =
        (0..basis.len()).flat_map(|j| (0..j).map(move |i| (i, j))).collect();

    while !pairs.is_empty() {
        // normal selection strategy: smallest lcm first
        let idx = (0..pairs.len())
            .min_by(|&a, &b| {
                let la = lcm(&divisors[pairs[a].0].lead, &divisors[pairs[a].1].lead);
                let lb = lcm(&divisors[pairs[b].0].lead, &divisors[pairs[b].1].lead);
                order.cmp(&la, &lb)
            })
            .expect("nonempty");
        let (i, j) = pairs.swap_remove(idx);
        let (li, lj) = (&divisors[i].lead, &divisors[j].lead);
        if li.iter().zip(lj).all(|(a, b)| *a == 0 || *b == 0) {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j], order);
        let r = reduce_with(&s, &divisors, order, &mut budget)?;
        if r.is_zero() {
            continue;
        }
        let r = monic(&r, order);
        if r.is_constant() {
            return Ok(vec![MPoly::one(n)]);
        }
        let k = basis.len();
        divisors.push(Divisor::new(&r, order));
        basis.push(r);
        pairs.extend((0..k).map(|i| (i, k)));
    }
    if basis.iter().any(MPoly::is_constant) {
        return Ok(vec![MPoly::one(n)]);
    }
    Ok(interreduce(basis, order))
}

fn interreduce(basis: Vec<MPoly>, order: MonomialOrder) -> Vec<MPoly> {
    let leads: Vec<Monomial> = basis.iter().map(|g| g.leading(order).unwrap().0.clone()).collect();
    let mut minimal: Vec<MPoly> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let redundant = leads.iter().enumerate().any(|(j, lj)| {
            j != i && divides(lj, &leads[i]) && (lj != &leads[i] || j < i)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut out = minimal.clone();
    for i in 0..out.len() {
        let others: Vec<MPoly> = out.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g.clone()).collect();
        out[i] = monic(&reduce(&out[i], &others, order), order);
    }
    out.sort_by(|a, b| order.cmp(a.leading(order).unwrap().0, b.leading(order).unwrap().0));
    out
}

/// Checks the Buchberger criterion directly: every S-polynomial reduces to zero.
pub fn is_groebner(basis: &[MPoly], order: MonomialOrder) -> bool {
    (0..basis.len()).all(|j| {
        (0..j).all(|i| reduce(&s_polynomial(&basis[i], &basis[j], order), basis, order).is_zero())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::parse::parse_poly;

    fn p(s: &str, names: &[&str]) -> MPoly {
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        parse_poly(s, &names).unwrap()
    }

    const G: MonomialOrder = MonomialOrder::Grevlex;

    #[test]
    fn basis_of_x2_plus_y_and_y() {
        let v = ["x", "y"];
        let gb = buchberger(&[p("x^2 + y", &v), p("y", &v)], G, DEFAULT_STEP_CAP).unwrap();
        assert_eq!(gb, vec![p("y", &v), p("x^2", &v)]);
        assert!(is_groebner(&gb, G));
        // x^3 mod <x^2 + y, y> is zero
        assert!(reduce(&p("x^3", &v), &gb, G).is_zero());
    }

    #[test]
    fn single_and_unit_ideals() {
        let v = ["x"];
        assert_eq!(buchberger(&[p("x", &v)], G, DEFAULT_STEP_CAP).unwrap(), vec![p("x", &v)]);
        assert_eq!(buchberger(&[p("x - 1", &v), p("x", &v)], G, DEFAULT_STEP_CAP).unwrap(), vec![p("1", &v)]);
        assert_eq!(buchberger(&[p("2*x", &v)], G, DEFAULT_STEP_CAP).unwrap(), vec![p("x", &v)]);
        assert!(buchberger(&[], G, DEFAULT_STEP_CAP).unwrap().is_empty());
    }

    #[test]
    fn twisted_cubic_in_both_orders() {
        let v = ["x", "y", "z"];
        let gens = [p("y - x^2", &v), p("z - x^3", &v)];
        for order in [MonomialOrder::Grevlex, MonomialOrder::Lex] {
            let gb = buchberger(&gens, order, DEFAULT_STEP_CAP).unwrap();
            assert!(is_groebner(&gb, order));
            for g in &gens {
                assert!(reduce(g, &gb, order).is_zero());
            }
            assert!(!reduce(&p("x*y - z + 1", &v), &gb, order).is_zero());
            assert!(reduce(&p("x*y - z", &v), &gb, order).is_zero());
        }
    }

    #[test]
    fn step_cap_is_a_resource_error() {
        let v = ["x", "y", "z"];
        let gens = [p("x*y - z", &v), p("x*z - y", &v), p("y*z - x", &v)];
        assert!(matches!(buchberger(&gens, G, 1), Err(Error::StepCap { cap: 1 })));
        assert!(buchberger(&gens, G, DEFAULT_STEP_CAP).is_ok());
    }
}
