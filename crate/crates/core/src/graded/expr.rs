use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Rational64;
use num_traits::{One, Zero};

use super::coeff::Coeff;
use super::degree::Degree;
use super::generator::{Field, Gen};
use super::monomial::{Exp, Monomial};

/// Sparse normal-form element of the graded ring over the Gaussian rationals.
///
/// No zero coefficients are ever stored, so structural equality is ring equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Expr {
    terms: BTreeMap<Monomial, Coeff>,
}

/// Z2 x Z2 degree of an expression.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegreeInfo {
    Zero,
    Homogeneous(Degree),
    Inhomogeneous,
}

/// Scaling dimension of an expression.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dimension {
    Zero,
    Uniform(Rational64),
    Inhomogeneous,
}

impl Expr {
    pub fn zero() -> Self {
        Expr::default()
    }

    pub fn one() -> Self {
        Expr::constant(Coeff::one())
    }

    pub fn constant(c: Coeff) -> Self {
        Expr::term(c, Monomial::one())
    }

    pub fn int(n: i64) -> Self {
        Expr::constant(Coeff::int(n))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Expr::constant(Coeff::frac(n, d))
    }

    pub fn i() -> Self {
        Expr::constant(Coeff::i())
    }

    pub fn gen(g: Gen) -> Self {
        Expr::term(Coeff::one(), Monomial::gen(g))
    }

    pub fn power_of(g: Gen, e: Exp) -> Self {
        match Monomial::power(g, e) {
            Some(m) => Expr::term(Coeff::one(), m),
            None => Expr::zero(),
        }
    }

    pub fn term(c: Coeff, m: Monomial) -> Self {
        let mut e = Expr::zero();
        e.add_term(m, &c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    /// The smallest monomial and its coefficient.
    pub fn leading(&self) -> Option<(&Monomial, &Coeff)> {
        self.terms.iter().next()
    }

    pub fn coeff_of(&self, m: &Monomial) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: &Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign_ref(&mut self, other: &Expr) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c);
        }
    }

    pub fn add_scaled(&mut self, other: &Expr, s: &Coeff) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), &(c * s));
        }
    }

    pub fn scale(&self, s: &Coeff) -> Expr {
        let mut out = Expr::zero();
        out.add_scaled(self, s);
        out
    }

    pub fn mul_ref(&self, other: &Expr) -> Expr {
        let mut out = Expr::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if let Some((neg, m)) = m1.mul(m2) {
                    let c = c1 * c2;
                    out.add_term(m, &if neg { -c } else { c });
                }
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Expr {
        let mut out = Expr::one();
        for _ in 0..n {
            out = out.mul_ref(self);
        }
        out
    }

    pub fn product<'a>(items: impl IntoIterator<Item = &'a Expr>) -> Expr {
        items.into_iter().fold(Expr::one(), |acc, e| acc.mul_ref(e))
    }

    pub fn sum<I: IntoIterator<Item = Expr>>(items: I) -> Expr {
        let mut out = Expr::zero();
        for e in items {
            out.add_assign_ref(&e);
        }
        out
    }

    pub fn degree(&self) -> DegreeInfo {
        let mut it = self.terms.keys().map(Monomial::degree);
        match it.next() {
            None => DegreeInfo::Zero,
            Some(d) => {
                if it.all(|e| e == d) {
                    DegreeInfo::Homogeneous(d)
                } else {
                    DegreeInfo::Inhomogeneous
                }
            }
        }
    }

    /// Degree of a homogeneous expression; zero counts as degree (0,0).
    ///
    /// # Panics
    /// On inhomogeneous input.
    pub fn homogeneous_degree(&self) -> Degree {
        match self.degree() {
            DegreeInfo::Zero => Degree::D00,
            DegreeInfo::Homogeneous(d) => d,
            DegreeInfo::Inhomogeneous => panic!("degree of inhomogeneous expression {self}"),
        }
    }

    pub fn scaling_dimension(&self) -> Dimension {
        let mut it = self.terms.keys().map(Monomial::scaling_dimension);
        match it.next() {
            None => Dimension::Zero,
            Some(d) => {
                if it.all(|e| e == d) {
                    Dimension::Uniform(d)
                } else {
                    Dimension::Inhomogeneous
                }
            }
        }
    }

    /// Star conjugation: conjugates coefficients and reverses factor order.
    pub fn star(&self) -> Expr {
        let mut out = Expr::zero();
        for (m, c) in &self.terms {
            let c = c.conj();
            out.add_term(m.clone(), &if m.reversal_sign() { -c } else { c });
        }
        out
    }

    pub fn is_star_real(&self) -> bool {
        self.star() == *self
    }

    /// Keeps the terms whose monomial satisfies `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&Monomial) -> bool) -> Expr {
        Expr {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Ring homomorphism replacing `g^e` by `f(g, e)` wherever `f` returns `Some`.
    ///
    /// Substitutes must have the same degree as the generator they replace for the
    /// ordering signs to be consistent.
    pub fn substitute(&self, f: &impl Fn(Gen, Exp) -> Option<Expr>) -> Expr {
        let mut out = Expr::zero();
        for (m, c) in &self.terms {
            let mut acc = Expr::constant(c.clone());
            for (g, e) in m.factors() {
                let piece = f(*g, *e).unwrap_or_else(|| Expr::power_of(*g, *e));
                acc = acc.mul_ref(&piece);
                if acc.is_zero() {
                    break;
                }
            }
            out.add_assign_ref(&acc);
        }
        out
    }

    /// Replaces every occurrence of generator `g` (any exponent) by `value`.
    pub fn substitute_gen(&self, g: Gen, value: &Expr) -> Expr {
        self.substitute(&|h, e| {
            (h == g).then(|| {
                assert!(e.is_integer() && e > Exp::zero());
                value.pow(e.to_integer() as u32)
            })
        })
    }

    /// Total power of the undifferentiated and differentiated jets of `field`.
    pub fn max_field_power(&self, field: Field) -> Exp {
        self.terms
            .keys()
            .map(|m| field_power(m, field))
            .max()
            .unwrap_or_else(Exp::zero)
    }

    pub fn generators(&self) -> std::collections::BTreeSet<Gen> {
        self.terms
            .keys()
            .flat_map(|m| m.factors().iter().map(|(g, _)| *g))
            .collect()
    }

    pub fn contains_gen(&self, g: Gen) -> bool {
        self.terms.keys().any(|m| m.contains(g))
    }

    /// Coefficient of `g^1` when the expression is written as `g * c + (terms without g)`,
    /// with `g` moved to the far left.
    pub fn left_coefficient(&self, g: Gen) -> Expr {
        let d = crate::calculus::Derivation::partial_gen(g);
        d.apply(&self.filter(|m| m.exponent(g) == Exp::one()))
    }
}

pub(crate) fn field_power(m: &Monomial, field: Field) -> Exp {
    m.factors()
        .iter()
        .filter(|(g, _)| matches!(g, Gen::Field(j) if j.field == field))
        .map(|(_, e)| *e)
        .fold(Exp::zero(), |a, b| a + b)
}

impl From<Gen> for Expr {
    fn from(g: Gen) -> Expr {
        Expr::gen(g)
    }
}

impl From<Coeff> for Expr {
    fn from(c: Coeff) -> Expr {
        Expr::constant(c)
    }
}

impl Add for &Expr {
    type Output = Expr;
    fn add(self, rhs: &Expr) -> Expr {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl Add for Expr {
    type Output = Expr;
    fn add(mut self, rhs: Expr) -> Expr {
        self.add_assign_ref(&rhs);
        self
    }
}

impl Sub for &Expr {
    type Output = Expr;
    fn sub(self, rhs: &Expr) -> Expr {
        let mut out = self.clone();
        out.add_scaled(rhs, &Coeff::int(-1));
        out
    }
}

impl Sub for Expr {
    type Output = Expr;
    fn sub(self, rhs: Expr) -> Expr {
        &self - &rhs
    }
}

impl Mul for &Expr {
    type Output = Expr;
    fn mul(self, rhs: &Expr) -> Expr {
        self.mul_ref(rhs)
    }
}

impl Mul for Expr {
    type Output = Expr;
    fn mul(self, rhs: Expr) -> Expr {
        self.mul_ref(&rhs)
    }
}

impl Mul<&Expr> for Coeff {
    type Output = Expr;
    fn mul(self, rhs: &Expr) -> Expr {
        rhs.scale(&self)
    }
}

impl Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        self.scale(&Coeff::int(-1))
    }
}

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        -&self
    }
}

fn fmt_exp(e: &Exp) -> String {
    if e.is_integer() {
        e.to_integer().to_string()
    } else {
        format!("({}/{})", e.numer(), e.denom())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors()
            .iter()
            .map(|(g, e)| {
                if e.is_one() {
                    g.name()
                } else {
                    format!("{}^{}", g.name(), fmt_exp(e))
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            use num_traits::Signed;
            let negative = (c.re.is_negative() && c.im.is_zero()) || (c.re.is_zero() && c.im.is_negative());
            let c = &if negative { -c } else { c.clone() };
            match (first, negative) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
                (true, false) => {}
            }
            first = false;
            if m.is_one() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{c}*{m}")?;
            }
        }
        Ok(())
    }
}

impl One for Expr {
    fn one() -> Self {
        Expr::one()
    }
}

impl Zero for Expr {
    fn zero() -> Self {
        Expr::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}
