use num_rational::Rational64;
use num_traits::{One, Zero};

use super::degree::{parity, Degree};
use super::generator::Gen;

pub type Exp = Rational64;

/// A product of generators in canonical order, each with a nonzero exponent.
///
/// Invariants: factors strictly increasing by [`Gen`] order, nilpotent generators have
/// exponent 1, `z` has exponent 1, only `y`/`x` carry non-integer exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<(Gen, Exp)>);

fn exp_parity(e: Exp) -> u8 {
    // only called for generators with integer exponents
    (e.to_integer().rem_euclid(2)) as u8
}

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn gen(g: Gen) -> Self {
        Monomial(vec![(g, Exp::one())])
    }

    /// Builds `g^e`; returns `None` when the power vanishes (nilpotent squared).
    pub fn power(g: Gen, e: Exp) -> Option<Self> {
        if e.is_zero() {
            return Some(Monomial::one());
        }
        assert!(
            g.allows_rational_exponent() || e.is_integer(),
            "non-integer exponent on {g}"
        );
        assert!(g.allows_rational_exponent() || e > Exp::zero(), "negative exponent on {g}");
        if g.is_nilpotent() && e > Exp::one() {
            return None;
        }
        if g == Gen::Z {
            let n = e.to_integer();
            let mut f = Vec::new();
            if n >= 2 {
                f.push((Gen::Y, Exp::from(n / 2)));
            }
            if n % 2 == 1 {
                f.push((Gen::Z, Exp::one()));
            }
            return Some(Monomial(f));
        }
        Some(Monomial(vec![(g, e)]))
    }

    pub fn factors(&self) -> &[(Gen, Exp)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, g: Gen) -> Exp {
        self.0
            .iter()
            .find(|(h, _)| *h == g)
            .map(|(_, e)| *e)
            .unwrap_or_else(Exp::zero)
    }

    pub fn contains(&self, g: Gen) -> bool {
        self.0.iter().any(|(h, _)| *h == g)
    }

    pub fn degree(&self) -> Degree {
        self.0.iter().fold(Degree::D00, |acc, (g, e)| {
            if g.degree() == Degree::D00 {
                acc
            } else {
                acc + g.degree().times(e.to_integer())
            }
        })
    }

    pub fn scaling_dimension(&self) -> Rational64 {
        self.0
            .iter()
            .fold(Rational64::zero(), |acc, (g, e)| acc + g.scaling_dimension() * *e)
    }

    /// The monomial with the factor `g` removed entirely.
    pub fn without(&self, g: Gen) -> Monomial {
        Monomial(self.0.iter().filter(|(h, _)| *h != g).cloned().collect())
    }

    /// Splits into the factors before index `i` and from `i` on.
    pub fn split_at(&self, i: usize) -> (Monomial, Monomial) {
        (Monomial(self.0[..i].to_vec()), Monomial(self.0[i..].to_vec()))
    }

    /// Product `self * other` in canonical form: the sign (`true` = negative) and the
    /// monomial, or `None` if the product vanishes.
    pub fn mul(&self, other: &Monomial) -> Option<(bool, Monomial)> {
        let mut sign = 0u8;
        // sign from moving every factor of `other` left past larger factors of `self`
        for (b, eb) in &other.0 {
            let db = b.degree();
            if db == Degree::D00 {
                continue;
            }
            for (a, ea) in self.0.iter().rev() {
                if a <= b {
                    break;
                }
                if parity(a.degree(), db) == 1 {
                    sign ^= exp_parity(*ea) & exp_parity(*eb);
                }
            }
        }
        let mut out: Vec<(Gen, Exp)> = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            let next = if j >= other.0.len() || (i < self.0.len() && self.0[i].0 < other.0[j].0) {
                i += 1;
                self.0[i - 1]
            } else if i >= self.0.len() || other.0[j].0 < self.0[i].0 {
                j += 1;
                other.0[j - 1]
            } else {
                let (g, e1) = self.0[i];
                let e2 = other.0[j].1;
                i += 1;
                j += 1;
                if g.is_nilpotent() {
                    return None;
                }
                (g, e1 + e2)
            };
            if !next.1.is_zero() {
                out.push(next);
            }
        }
        // z^2 = y
        if let Some(pos) = out.iter().position(|(g, _)| *g == Gen::Z) {
            let n = out[pos].1.to_integer();
            if n >= 2 {
                let extra = Exp::from(n / 2);
                if n % 2 == 1 {
                    out[pos].1 = Exp::one();
                } else {
                    out.remove(pos);
                }
                match out.iter().position(|(g, _)| *g >= Gen::Y) {
                    Some(p) if out[p].0 == Gen::Y => {
                        out[p].1 += extra;
                        if out[p].1.is_zero() {
                            out.remove(p);
                        }
                    }
                    Some(p) => out.insert(p, (Gen::Y, extra)),
                    None => out.push((Gen::Y, extra)),
                }
            }
        }
        // first-order truncation in each independent parameter set
        let mut seen: Vec<u8> = Vec::new();
        for (g, e) in &out {
            if let Some(c) = g.infinitesimal_copy() {
                if seen.contains(&c) || *e > Exp::one() {
                    return None;
                }
                seen.push(c);
            }
        }
        Some((sign == 1, Monomial(out)))
    }

    /// Sign (`true` = negative) picked up by reversing the factor order.
    pub fn reversal_sign(&self) -> bool {
        let mut sign = 0u8;
        for (i, (a, ea)) in self.0.iter().enumerate() {
            // a^e reversed internally: self-parity vanishes for non-nilpotent generators
            for (b, eb) in &self.0[i + 1..] {
                if parity(a.degree(), b.degree()) == 1 {
                    sign ^= exp_parity(*ea) & exp_parity(*eb);
                }
            }
        }
        sign == 1
    }
}
