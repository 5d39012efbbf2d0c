//! Prepotentials `V(Phi)` and their component functions `V00`, `V11`.

use serde::Serialize;

use crate::calculus::Derivation;
use crate::error::{Error, Result};
use crate::graded::coeff::parse_rational;
use crate::graded::{Coeff, Expr, Field, FuncKind, Gen, Monomial, Space, TrigArg};
use crate::superfield::Stage;

pub const DEFAULT_TRUNCATION: u32 = 4;

/// A real function of one variable with a known derivative chain.
#[derive(Clone, Debug, PartialEq)]
pub enum Potential {
    /// `sum_k c_k Phi^k`.
    Poly(Vec<Coeff>),
    Cos,
    Sin,
    /// An unspecified function; its derivatives are the jets `F0, F1, ...`.
    Abstract,
}

impl Potential {
    /// Parses `poly:c0,c1,...`, `cos`, `sin` or `abstract`.
    pub fn parse(s: &str) -> Result<Potential> {
        match s.trim() {
            "cos" => Ok(Potential::Cos),
            "sin" => Ok(Potential::Sin),
            "abstract" => Ok(Potential::Abstract),
            other => {
                let body = other.strip_prefix("poly:").ok_or_else(|| Error::Potential(s.to_string()))?;
                let coeffs = body
                    .split(',')
                    .map(|c| parse_rational(c.trim()).map(Coeff::real))
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| Error::Potential(s.to_string()))?;
                if coeffs.is_empty() {
                    return Err(Error::Potential(s.to_string()));
                }
                Ok(Potential::Poly(coeffs))
            }
        }
    }

    /// `V = Phi^2 / 2`.
    pub fn massive() -> Potential {
        Potential::Poly(vec![Coeff::zero(), Coeff::zero(), Coeff::frac(1, 2)])
    }

    pub fn label(&self) -> String {
        match self {
            Potential::Poly(c) => {
                let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                format!("poly:{}", parts.join(","))
            }
            Potential::Cos => "cos".into(),
            Potential::Sin => "sin".into(),
            Potential::Abstract => "abstract".into(),
        }
    }

    fn degree_bound(&self) -> Option<usize> {
        match self {
            Potential::Poly(c) => Some(c.len().saturating_sub(1)),
            _ => None,
        }
    }

    /// `V^(n)(phi00)` as an expression in `space`.
    pub fn derivative(&self, n: u32, space: Space) -> Expr {
        let phi = Expr::gen(Gen::field(Field::Phi00, space));
        match self {
            Potential::Poly(c) => {
                let mut out = Expr::zero();
                for (k, ck) in c.iter().enumerate() {
                    let k = k as u32;
                    if k < n {
                        continue;
                    }
                    let falling: i64 = ((k - n + 1)..=k).map(i64::from).product();
                    out.add_assign_ref(&phi.pow(k - n).scale(&(ck * &Coeff::int(falling))));
                }
                out
            }
            Potential::Cos | Potential::Sin => {
                let shift = if *self == Potential::Cos { 0 } else { 3 };
                trig_cycle((n + shift) % 4, TrigArg::Phi00, space)
            }
            Potential::Abstract => Expr::gen(Gen::func(FuncKind::F(n as u8), space)),
        }
    }
}

/// `n`-th derivative of cos: cos, -sin, -cos, sin.
fn trig_cycle(n: u32, arg: TrigArg, space: Space) -> Expr {
    let cos = Expr::gen(Gen::func(FuncKind::Cos(arg), space));
    let sin = Expr::gen(Gen::func(FuncKind::Sin(arg), space));
    match n % 4 {
        0 => cos,
        1 => -sin,
        2 => -cos,
        _ => sin,
    }
}

fn factorial(n: u32) -> i64 {
    (1..=i64::from(n)).product()
}

/// The component potentials with the truncation order they were built at.
#[derive(Clone, Debug, PartialEq)]
pub struct PotentialPair {
    pub v00: Expr,
    pub v11: Expr,
    pub space: Space,
    /// `None` for exact pairs.
    pub truncation: Option<u32>,
}

impl PotentialPair {
    /// Abstract pair linked only by the constraint rewrite rules.
    pub fn generic(space: Space) -> PotentialPair {
        PotentialPair {
            v00: Expr::gen(Gen::func(FuncKind::V00(0), space)),
            v11: Expr::gen(Gen::func(FuncKind::V11(0), space)),
            space,
            truncation: None,
        }
    }
}

/// Series for `V00` (even powers of `phi11`) and `V11` (odd powers), with explicit `y^n`
/// before the redefinition.
pub fn potential_components(v: &Potential, stage: Stage, truncation: u32) -> PotentialPair {
    let space = stage.space();
    let order = match v.degree_bound() {
        Some(d) => (d as u32 / 2 + 1).max(truncation),
        None => truncation,
    };
    let phi11 = Expr::gen(Gen::field(Field::Phi11, space));
    let mut v00 = Expr::zero();
    let mut v11 = Expr::zero();
    for n in 0..=order {
        let yn = match stage {
            Stage::Pre => Expr::power_of(Gen::Y, i64::from(n).into()),
            Stage::Post => Expr::one(),
        };
        let even = (&yn * &phi11.pow(2 * n)).scale(&Coeff::frac(1, factorial(2 * n)));
        let odd = (&yn * &phi11.pow(2 * n + 1)).scale(&Coeff::frac(1, factorial(2 * n + 1)));
        v00.add_assign_ref(&(&even * &v.derivative(2 * n + 1, space)));
        v11.add_assign_ref(&(&odd * &v.derivative(2 * n + 2, space)));
    }
    let truncation = v.degree_bound().is_none().then_some(order);
    PotentialPair { v00, v11, space, truncation }
}

/// Closed forms in the redefined variables: exact for polynomials, products of trig jets for
/// `cos`/`sin`, the generic pair for an abstract potential.
pub fn closed_form(v: &Potential, space: Space) -> PotentialPair {
    let f = |k, a| Expr::gen(Gen::func(k, space)).mul_ref(&Expr::gen(Gen::func(a, space)));
    use FuncKind::{Cos, Sin};
    use TrigArg::{Phi00 as A, Phi11 as B};
    match v {
        Potential::Poly(_) => {
            let stage = if space == Space::Y { Stage::Pre } else { Stage::Post };
            potential_components(v, stage, 0)
        }
        // V00 = g'(phi00) cos phi11, V11 = g''(phi00) sin phi11 whenever g'' = -g
        Potential::Cos => PotentialPair { v00: -f(Sin(A), Cos(B)), v11: -f(Cos(A), Sin(B)), space, truncation: None },
        Potential::Sin => PotentialPair { v00: f(Cos(A), Cos(B)), v11: -f(Sin(A), Sin(B)), space, truncation: None },
        Potential::Abstract => PotentialPair::generic(space),
    }
}

/// Replaces `sin phi11`, `cos phi11` by their Taylor polynomials through `phi11^max_power`.
pub fn expand_phi11_trig(e: &Expr, space: Space, max_power: u32) -> Expr {
    let phi11 = Expr::gen(Gen::field(Field::Phi11, space));
    let series = |odd: bool| {
        let mut out = Expr::zero();
        let mut k = u32::from(odd);
        let mut sign = 1;
        while k <= max_power {
            out.add_assign_ref(&phi11.pow(k).scale(&Coeff::frac(sign, factorial(k))));
            sign = -sign;
            k += 2;
        }
        out
    };
    let sin = series(true);
    let cos = series(false);
    e.substitute(&|g, exp| {
        let base = match g {
            Gen::Func(f) if f.space == space && f.kind == FuncKind::Sin(TrigArg::Phi11) => &sin,
            Gen::Func(f) if f.space == space && f.kind == FuncKind::Cos(TrigArg::Phi11) => &cos,
            _ => return None,
        };
        Some(base.pow(exp.to_integer() as u32))
    })
}

/// Terms whose total power of `phi11` jets is at most `max`.
pub fn truncate_phi11(e: &Expr, max: i64) -> Expr {
    e.filter(|m| crate::graded::expr::field_power(m, Field::Phi11) <= max.into())
}

/// Compares a series pair with a closed-form pair through `phi11`-degree `2N + 1`.
pub fn matches_closed_form(series: &PotentialPair, closed: &PotentialPair) -> bool {
    let Some(n) = series.truncation else {
        return series.v00 == closed.v00 && series.v11 == closed.v11;
    };
    let max = 2 * n + 1;
    let cmp = |a: &Expr, b: &Expr| {
        let b = expand_phi11_trig(b, closed.space, max);
        truncate_phi11(a, max as i64) == truncate_phi11(&b, max as i64)
    };
    cmp(&series.v00, &closed.v00) && cmp(&series.v11, &closed.v11)
}

/// Outcome of checking `d00 V00 = d11 V11` and `d11 V00 = d00 V11`.
#[derive(Clone, Debug, Serialize)]
pub struct ConstraintReport {
    pub first_equation_ok: bool,
    pub second_equation_ok: bool,
    #[serde(serialize_with = "crate::graded::json::serialize_expr")]
    pub first_residual: Expr,
    #[serde(serialize_with = "crate::graded::json::serialize_expr")]
    pub second_residual: Expr,
    /// Highest `phi11` power compared in each equation, `None` when exact.
    pub compared_through: Option<(i64, i64)>,
    pub first_failing: Option<&'static str>,
}

impl ConstraintReport {
    pub fn ok(&self) -> bool {
        self.first_equation_ok && self.second_equation_ok
    }
}

pub fn check_potential_constraint(p: &PotentialPair) -> ConstraintReport {
    let d00 = Derivation::partial_gen(Gen::field(Field::Phi00, p.space));
    let d11 = Derivation::partial_gen(Gen::field(Field::Phi11, p.space));
    let mut r1 = &d00.apply(&p.v00) - &d11.apply(&p.v11);
    // before the redefinition phi11 carries a factor 1/x, so the second equation reads
    // d11 V00 = y d00 V11
    let y = match p.space {
        Space::Y => Expr::gen(Gen::Y),
        Space::X => Expr::one(),
    };
    let mut r2 = &d11.apply(&p.v00) - &(&y * &d00.apply(&p.v11));
    let compared_through = p.truncation.map(|n| {
        let n = i64::from(n);
        (2 * n, 2 * n - 1)
    });
    if let Some((a, b)) = compared_through {
        r1 = truncate_phi11(&r1, a);
        r2 = truncate_phi11(&r2, b);
    }
    let first_failing = if !r1.is_zero() {
        Some("d00 V00 = d11 V11")
    } else if !r2.is_zero() {
        Some("d11 V00 = d00 V11")
    } else {
        None
    };
    ConstraintReport {
        first_equation_ok: r1.is_zero(),
        second_equation_ok: r2.is_zero(),
        first_residual: r1,
        second_residual: r2,
        compared_through,
        first_failing,
    }
}

/// Normal form modulo `sin^2 + cos^2 = 1`: powers of cosines above one are rewritten with sines.
pub fn reduce_trig(e: &Expr) -> Expr {
    e.substitute(&|g, k| {
        let Gen::Func(fj) = g else { return None };
        let FuncKind::Cos(a) = fj.kind else { return None };
        let k = k.to_integer();
        if k < 2 {
            return None;
        }
        let sin = Expr::gen(Gen::func(FuncKind::Sin(a), fj.space));
        let one_minus = &Expr::one() - &(&sin * &sin);
        let odd = if k % 2 == 1 { Expr::gen(g) } else { Expr::one() };
        Some(&odd * &one_minus.pow((k / 2) as u32))
    })
}

/// Builds a pair from two expressions, e.g. hand-written candidates.
pub fn pair_from(v00: Expr, v11: Expr, space: Space) -> PotentialPair {
    PotentialPair { v00, v11, space, truncation: None }
}

/// Swaps `phi00` and `phi11` (and the trig jets evaluated at them).
pub fn exchange_fields(e: &Expr, space: Space) -> Expr {
    e.substitute(&|g, exp| {
        let image = match g {
            Gen::Field(j) if j.field == Field::Phi00 => Gen::Field(crate::graded::Jet { field: Field::Phi11, ..j }),
            Gen::Field(j) if j.field == Field::Phi11 => Gen::Field(crate::graded::Jet { field: Field::Phi00, ..j }),
            Gen::Func(f) if f.space == space => {
                let swap = |a| if a == TrigArg::Phi00 { TrigArg::Phi11 } else { TrigArg::Phi00 };
                let kind = match f.kind {
                    FuncKind::Sin(a) => FuncKind::Sin(swap(a)),
                    FuncKind::Cos(a) => FuncKind::Cos(swap(a)),
                    _ => return None,
                };
                Gen::func(kind, space)
            }
            _ => return None,
        };
        Some(Expr::term(Coeff::one(), Monomial::gen(image)).pow(exp.to_integer() as u32))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::{parse_expr, Degree, DegreeInfo};

    fn p(s: &str) -> Expr {
        parse_expr(s, Space::X).unwrap()
    }

    #[test]
    fn massive_pair() {
        let pair = potential_components(&Potential::massive(), Stage::Post, 4);
        assert_eq!(pair.v00, p("phi00"));
        assert_eq!(pair.v11, p("phi11"));
        assert!(check_potential_constraint(&pair).ok());
    }

    #[test]
    fn constant_pair_vanishes() {
        let pair = potential_components(&Potential::parse("poly:3/2").unwrap(), Stage::Post, 4);
        assert!(pair.v00.is_zero() && pair.v11.is_zero());
    }

    #[test]
    fn cos_series_matches_closed_form() {
        for n in 1..6 {
            let s = potential_components(&Potential::Cos, Stage::Post, n);
            let c = closed_form(&Potential::Cos, Space::X);
            assert!(matches_closed_form(&s, &c), "order {n}");
            assert!(check_potential_constraint(&s).ok());
            let s = potential_components(&Potential::Sin, Stage::Post, n);
            assert!(matches_closed_form(&s, &closed_form(&Potential::Sin, Space::X)));
        }
        let c = closed_form(&Potential::Cos, Space::X);
        assert_eq!(c.v00, p("-sin_phi00*cos_phi11"));
        assert!(check_potential_constraint(&c).ok());
        assert_eq!(exchange_fields(&c.v00, Space::X), c.v11);
    }

    #[test]
    fn abstract_series_satisfies_constraint() {
        for stage in [Stage::Pre, Stage::Post] {
            let s = potential_components(&Potential::Abstract, stage, 3);
            assert!(check_potential_constraint(&s).ok());
            assert_eq!(s.v00.degree(), DegreeInfo::Homogeneous(Degree::D00));
            assert_eq!(s.v11.degree(), DegreeInfo::Homogeneous(Degree::D11));
        }
    }

    #[test]
    fn hand_built_pair_fails_first_equation() {
        let r = check_potential_constraint(&pair_from(p("phi00"), Expr::zero(), Space::X));
        assert!(!r.first_equation_ok);
        assert!(r.second_equation_ok);
    }

    #[test]
    fn grammar() {
        assert!(Potential::parse("poly:0,0,1/2").unwrap() == Potential::massive());
        assert!(Potential::parse("poly:").is_err());
        assert!(Potential::parse("tan").is_err());
    }
}
