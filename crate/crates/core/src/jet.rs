//! Variational calculus on the jet ring in `(t, x)`: Euler operators and total divergences.

use std::collections::{BTreeMap, BTreeSet};

use crate::calculus::Derivation;
use crate::error::{Error, Result};
use crate::graded::{Coeff, Expr, Field, FuncKind, Gen, Jet, Monomial, Space};

pub const SPACE: Space = Space::X;

pub fn dt() -> Derivation {
    Derivation::total_t()
}

pub fn dx() -> Derivation {
    Derivation::total_space(SPACE)
}

/// Field jets occurring in an expression.
pub fn jets_in(e: &Expr) -> BTreeSet<Jet> {
    e.generators()
        .into_iter()
        .filter_map(|g| match g {
            Gen::Field(j) => Some(j),
            _ => None,
        })
        .collect()
}

/// Left derivative with respect to a jet.
pub fn partial(e: &Expr, j: Jet) -> Expr {
    Derivation::partial_gen(Gen::Field(j)).apply(e)
}

/// Euler operator `sum_J (-D)^J d/d f_J`.
pub fn euler(l: &Expr, f: Field) -> Expr {
    let (dt, dx) = (dt(), dx());
    let mut out = Expr::zero();
    let mut jets = jets_in(l);
    jets.insert(Jet::new(f, SPACE));
    for j in jets.into_iter().filter(|j| j.field == f) {
        let mut term = partial(l, j);
        for _ in 0..j.dt {
            term = -dt.apply(&term);
        }
        for _ in 0..j.ds {
            term = -dx.apply(&term);
        }
        out.add_assign_ref(&term);
    }
    out
}

/// True when every Euler operator annihilates `e`.
pub fn is_null_lagrangian(e: &Expr) -> bool {
    Field::ALL.iter().all(|f| euler(e, *f).is_zero())
}

/// `(K0, K1)` with `D_t K0 + D_x K1 = e`.
#[derive(Clone, Debug, PartialEq)]
pub struct Divergence {
    pub k0: Expr,
    pub k1: Expr,
}

fn replace_one(m: &Monomial, g: Gen, by: &Expr) -> Option<Monomial> {
    let e = m.exponent(g);
    let rest = Expr::term(Coeff::one(), m.without(g));
    let lowered = Expr::power_of(g, e - 1);
    let prod = &(&rest * &lowered) * by;
    let mut it = prod.terms();
    match (it.next(), it.next()) {
        (Some((mm, _)), None) => Some(mm.clone()),
        _ => None,
    }
}

/// Function jets `H` and base field `phi` with `d_phi H = +-G`.
fn antiderivatives(kind: FuncKind) -> Vec<(Field, FuncKind)> {
    use FuncKind::*;
    let mut out = Vec::new();
    match kind {
        F(n) if n > 0 => out.push((Field::Phi00, F(n - 1))),
        V00(n) if n > 0 => {
            out.push((Field::Phi00, V00(n - 1)));
            out.push((Field::Phi11, V11(n - 1)));
        }
        V11(n) if n > 0 => {
            out.push((Field::Phi00, V11(n - 1)));
            out.push((Field::Phi11, V00(n - 1)));
        }
        Sin(a) => out.push((a.field(), Cos(a))),
        Cos(a) => out.push((a.field(), Sin(a))),
        _ => {}
    }
    out
}

/// Monomials that could be `D_t`- resp. `D_x`-preimages of `m`.
fn preimages(m: &Monomial) -> (Vec<Monomial>, Vec<Monomial>) {
    let mut k0 = Vec::new();
    let mut k1 = Vec::new();
    for (g, _) in m.factors() {
        match g {
            Gen::Field(j) => {
                if let Some(l) = j.lower_t() {
                    k0.extend(replace_one(m, *g, &Expr::gen(Gen::Field(l))));
                }
                if let Some(l) = j.lower_s() {
                    k1.extend(replace_one(m, *g, &Expr::gen(Gen::Field(l))));
                }
            }
            Gen::Func(fj) => {
                for (field, anti) in antiderivatives(fj.kind) {
                    let h = Expr::gen(Gen::func(anti, fj.space));
                    let Some(swapped) = replace_one(m, *g, &h) else { continue };
                    for (dir, target) in [(0u8, &mut k0), (1u8, &mut k1)] {
                        let jet = if dir == 0 {
                            Jet::with(field, fj.space, 1, 0)
                        } else {
                            Jet::with(field, fj.space, 0, 1)
                        };
                        if swapped.contains(Gen::Field(jet)) {
                            target.extend(replace_one(&swapped, Gen::Field(jet), &Expr::one()));
                        }
                    }
                }
            }
            _ => {}
        }
    }
    (k0, k1)
}

/// Incremental column echelon form over the Gaussian rationals.
#[derive(Default)]
struct Echelon {
    /// pivot monomial -> (vector whose smallest monomial is the pivot with coefficient 1, combination)
    pivots: BTreeMap<Monomial, (Expr, BTreeMap<usize, Coeff>)>,
}

fn add_combo(acc: &mut BTreeMap<usize, Coeff>, other: &BTreeMap<usize, Coeff>, s: &Coeff) {
    for (k, v) in other {
        let e = acc.entry(*k).or_insert_with(Coeff::zero);
        *e += &(v * s);
        if e.is_zero() {
            acc.remove(k);
        }
    }
}

impl Echelon {
    fn reduce(&self, mut v: Expr, mut combo: BTreeMap<usize, Coeff>) -> (Expr, BTreeMap<usize, Coeff>) {
        loop {
            let Some((lead, c)) = v.leading().map(|(m, c)| (m.clone(), c.clone())) else {
                return (v, combo);
            };
            let Some((pv, pc)) = self.pivots.get(&lead) else {
                // look past a non-pivot leading term
                let head = Expr::term(c.clone(), lead.clone());
                let (rest, combo2) = self.reduce(&v - &head, combo);
                return (&head + &rest, combo2);
            };
            let s = -c;
            v.add_scaled(pv, &s);
            add_combo(&mut combo, pc, &s);
        }
    }

    fn insert(&mut self, v: Expr, col: usize) {
        let combo = BTreeMap::from([(col, Coeff::one())]);
        let (r, combo) = self.reduce_leading(v, combo);
        if let Some((lead, c)) = r.leading().map(|(m, c)| (m.clone(), c.clone())) {
            let inv = c.inv().expect("nonzero");
            let mut cb = BTreeMap::new();
            add_combo(&mut cb, &combo, &inv);
            self.pivots.insert(lead, (r.scale(&inv), cb));
        }
    }

    /// Reduces until the leading monomial is not a pivot.
    fn reduce_leading(&self, mut v: Expr, mut combo: BTreeMap<usize, Coeff>) -> (Expr, BTreeMap<usize, Coeff>) {
        loop {
            let Some((lead, c)) = v.leading().map(|(m, c)| (m.clone(), c.clone())) else {
                return (v, combo);
            };
            let Some((pv, pc)) = self.pivots.get(&lead) else {
                return (v, combo);
            };
            let s = -c;
            v.add_scaled(pv, &s);
            add_combo(&mut combo, pc, &s);
        }
    }
}

/// Finds `K0`, `K1` with `D_t K0 + D_x K1 = e`, searching polynomial candidates generated
/// by lowering one derivative (and inverting the chain rule on function jets).
pub fn solve_divergence(e: &Expr) -> Result<Divergence> {
    if e.is_zero() {
        return Ok(Divergence { k0: Expr::zero(), k1: Expr::zero() });
    }
    let (dt, dx) = (dt(), dx());
    let mut k0: BTreeSet<Monomial> = BTreeSet::new();
    let mut k1: BTreeSet<Monomial> = BTreeSet::new();
    let mut frontier: BTreeSet<Monomial> = e.terms().map(|(m, _)| m.clone()).collect();
    let mut seen = frontier.clone();
    for _round in 0..4 {
        let mut new0 = Vec::new();
        let mut new1 = Vec::new();
        for m in &frontier {
            let (a, b) = preimages(m);
            new0.extend(a.into_iter().filter(|c| !k0.contains(c)));
            new1.extend(b.into_iter().filter(|c| !k1.contains(c)));
        }
        let mut next = BTreeSet::new();
        for c in new0 {
            if k0.insert(c.clone()) {
                for (m, _) in dt.apply(&Expr::term(Coeff::one(), c)).terms() {
                    if seen.insert(m.clone()) {
                        next.insert(m.clone());
                    }
                }
            }
        }
        for c in new1 {
            if k1.insert(c.clone()) {
                for (m, _) in dx.apply(&Expr::term(Coeff::one(), c)).terms() {
                    if seen.insert(m.clone()) {
                        next.insert(m.clone());
                    }
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    let cols: Vec<(u8, Monomial)> = k0.into_iter().map(|m| (0, m)).chain(k1.into_iter().map(|m| (1, m))).collect();
    let mut ech = Echelon::default();
    for (i, (dir, m)) in cols.iter().enumerate() {
        let d = if *dir == 0 { &dt } else { &dx };
        ech.insert(d.apply(&Expr::term(Coeff::one(), m.clone())), i);
    }
    let (rest, combo) = ech.reduce(e.clone(), BTreeMap::new());
    if !rest.is_zero() {
        return Err(Error::Unsolvable(format!("not a total divergence; remainder {rest}")));
    }
    // e + sum combo_i col_i = 0
    let mut out = Divergence { k0: Expr::zero(), k1: Expr::zero() };
    for (i, c) in combo {
        let (dir, m) = &cols[i];
        let target = if *dir == 0 { &mut out.k0 } else { &mut out.k1 };
        target.add_term(m.clone(), &(-c));
    }
    debug_assert_eq!(&dt.apply(&out.k0) + &dx.apply(&out.k1), *e);
    Ok(out)
}

/// `D_t a + D_x b`.
pub fn divergence(a: &Expr, b: &Expr) -> Expr {
    &dt().apply(a) + &dx().apply(b)
}
