//! Superfield expansion, induced component transformations and the variable redefinition.

use std::collections::BTreeMap;

use crate::calculus::{bracket, Derivation, Operator};
use crate::error::{Error, Result};
use crate::graded::{
    parity, parse_expr, Coeff, Degree, DegreeInfo, Expr, Field, Gen, Jet, Monomial, Param, ParamKind, Space,
};

/// Before (`t`, `y`) or after (`t/2 -> t`, `x = sqrt(y)`, rescaled fields) the redefinition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum Stage {
    Pre,
    Post,
}

impl Stage {
    pub fn space(self) -> Space {
        match self {
            Stage::Pre => Space::Y,
            Stage::Post => Space::X,
        }
    }
}

/// Position of a component in the expansion: `theta10^a theta01^b z^c` and the factor
/// multiplying the field there.
struct Slot {
    field: Field,
    th10: bool,
    th01: bool,
    z: bool,
    /// The field equals `inverse * coefficient`.
    inverse: Coeff,
}

fn slots() -> [Slot; 8] {
    let s = |field, th10, th01, z, inverse| Slot { field, th10, th01, z, inverse };
    [
        s(Field::Phi00, false, false, false, Coeff::one()),
        s(Field::Phi11, false, false, true, Coeff::one()),
        s(Field::Psi10, true, false, false, Coeff::imag(-1, 1)),
        s(Field::Lambda01, true, false, true, Coeff::one()),
        s(Field::Psi01, false, true, false, Coeff::imag(-1, 1)),
        s(Field::Lambda10, false, true, true, Coeff::one()),
        s(Field::A11, true, true, false, Coeff::one()),
        s(Field::A00, true, true, true, Coeff::one()),
    ]
}

/// `phi00 + z phi11 + th10(i psi10 + z lam01) + th01(i psi01 + z lam10) + th10 th01 (A11 + z A00)`.
pub fn expand_superfield(space: Space) -> Expr {
    parse_expr(
        "phi00 + z*phi11 + th10*(i*psi10 + z*lam01) + th01*(i*psi01 + z*lam10) + th10*th01*(A11 + z*A00)",
        space,
    )
    .expect("superfield template parses")
}

/// Splits a superspace expression into its eight basis coefficients and returns the
/// component values they encode.
pub fn extract_components(e: &Expr) -> BTreeMap<Field, Expr> {
    let slots = slots();
    let mut out: BTreeMap<Field, Expr> = Field::ALL.iter().map(|f| (*f, Expr::zero())).collect();
    for (m, c) in e.terms() {
        let (a, b, z) = (m.contains(Gen::Theta10), m.contains(Gen::Theta01), m.contains(Gen::Z));
        // theta's lead the canonical order and z only passes even coordinates: no sign
        let rest = m.without(Gen::Theta10).without(Gen::Theta01).without(Gen::Z);
        let slot = slots
            .iter()
            .find(|s| s.th10 == a && s.th01 == b && s.z == z)
            .expect("eight slots cover every pattern");
        out.get_mut(&slot.field)
            .expect("all fields present")
            .add_term(rest, &(c * &slot.inverse));
    }
    out
}

/// The coefficient multiplying each generator in the field variation `delta Phi`.
pub fn variation_coefficient(op: Operator) -> Coeff {
    match op {
        Operator::H | Operator::Z | Operator::L11 => Coeff::i(),
        Operator::Q10 | Operator::Q01 => Coeff::int(-1),
        Operator::D10 | Operator::D01 => panic!("covariant derivatives generate no symmetry"),
    }
}

/// Parameter attached to a symmetry generator.
pub fn parameter(op: Operator, copy: u8) -> Param {
    let kind = match op {
        Operator::H => ParamKind::E00,
        Operator::Z => ParamKind::E11,
        Operator::Q10 => ParamKind::E10,
        Operator::Q01 => ParamKind::E01,
        Operator::L11 => ParamKind::EL,
        Operator::D10 | Operator::D01 => panic!("covariant derivatives carry no parameter"),
    };
    Param { kind, copy }
}

/// `c eps Op` acting on superspace, with `c` from [`variation_coefficient`].
pub fn superspace_variation(op: Operator, copy: u8) -> Derivation {
    let factor = Expr::term(variation_coefficient(op), Monomial::gen(Gen::Param(parameter(op, copy))));
    op.derivation().scaled(&factor).renamed(format!("delta_{}", op.name()))
}

/// Component transformation table of a symmetry, with parameter copy `copy`.
pub fn induced_variation(op: Operator, stage: Stage, copy: u8) -> Result<BTreeMap<Field, Expr>> {
    let phi = expand_superfield(Space::Y);
    let varied = superspace_variation(op, copy).apply(&phi);
    let pre = extract_components(&varied);
    for (f, v) in &pre {
        if v.contains_gen(Gen::Z) || v.contains_gen(Gen::Theta10) || v.contains_gen(Gen::Theta01) {
            return Err(Error::OutsideBasis(format!("delta {} = {v}", f.name())));
        }
        match v.degree() {
            DegreeInfo::Zero => {}
            DegreeInfo::Homogeneous(d) if d == f.degree() => {}
            _ => return Err(Error::Inhomogeneous(format!("delta {} = {v}", f.name()))),
        }
    }
    Ok(match stage {
        Stage::Pre => pre,
        Stage::Post => pre
            .into_iter()
            .map(|(f, v)| {
                let scaled = &Expr::power_of(Gen::X, rescaling_power(f).into()) * &redefine(&v);
                (f, scaled)
            })
            .collect(),
    })
}

/// Field variation as a derivation on the jet ring.
pub fn variation_derivation(op: Operator, stage: Stage, copy: u8) -> Result<Derivation> {
    let table = induced_variation(op, stage, copy)?;
    Ok(Derivation::from_table(&format!("delta_{}", op.name()), Degree::D00, table))
}

/// Sum of all five field variations with independent parameters.
pub fn total_variation(stage: Stage, copy: u8) -> Result<Derivation> {
    let mut table: BTreeMap<Field, Expr> = BTreeMap::new();
    for op in Operator::SYMMETRIES {
        for (f, v) in induced_variation(op, stage, copy)? {
            table.entry(f).or_default().add_assign_ref(&v);
        }
    }
    Ok(Derivation::from_table("delta", Degree::D00, table))
}

/// Power of `x` multiplying the old field in the new one.
pub fn rescaling_power(f: Field) -> i64 {
    match f {
        Field::Phi11 | Field::A00 | Field::Lambda10 | Field::Lambda01 => 1,
        _ => 0,
    }
}

/// Rewrites an expression in the old variables `(t, y)` and old fields in terms of the new
/// variables `t_old = 2t`, `y = x^2` and the new fields `f_new = x^r f_old`.
pub fn redefine(e: &Expr) -> Expr {
    let dt = Derivation::total_t();
    let dx = Derivation::total_space(Space::X);
    let half = Coeff::frac(1, 2);
    let inv_2x = Expr::term(half.clone(), Monomial::power(Gen::X, (-1).into()).expect("x^-1"));
    e.substitute(&|g, exp| {
        let image = match g {
            Gen::T => Expr::int(2).mul_ref(&Expr::gen(Gen::T)),
            Gen::Y => return Some(Expr::power_of(Gen::X, exp * 2)),
            Gen::Field(j) if j.space == Space::Y => {
                let base = Expr::gen(Gen::Field(Jet::new(j.field, Space::X)));
                let mut v = &Expr::power_of(Gen::X, (-rescaling_power(j.field)).into()) * &base;
                for _ in 0..j.ds {
                    v = &inv_2x * &dx.apply(&v);
                }
                for _ in 0..j.dt {
                    v = dt.apply(&v).scale(&half);
                }
                v
            }
            Gen::Func(f) if f.space == Space::Y => Expr::gen(Gen::func(f.kind, Space::X)),
            _ => return None,
        };
        assert!(exp.is_integer());
        Some(image.pow(exp.to_integer() as u32))
    })
}

/// Structure constants: the bracket of two symmetry generators as a combination of generators.
pub fn structure_constants(a: Operator, b: Operator) -> Vec<(Coeff, Operator)> {
    use Operator::*;
    let direct = |a, b| -> Option<Vec<(Coeff, Operator)>> {
        Some(match (a, b) {
            (Q10, Q10) | (Q01, Q01) => vec![(Coeff::int(2), H)],
            (Q10, Q01) => vec![(Coeff::i(), Z)],
            (L11, H) => vec![(Coeff::imag(1, 2), Z)],
            (L11, Z) => vec![(Coeff::imag(2, 1), H)],
            (L11, Q10) => vec![(Coeff::frac(-1, 2), Q01)],
            (L11, Q01) => vec![(Coeff::frac(1, 2), Q10)],
            _ => return None,
        })
    };
    if let Some(v) = direct(a, b) {
        return v;
    }
    if let Some(v) = direct(b, a) {
        // [B,A] = -(-1)^{a.b} [A,B]
        let p = parity(a.derivation().degree(), b.derivation().degree());
        let s = if p == 1 { Coeff::one() } else { Coeff::int(-1) };
        return v.into_iter().map(|(c, o)| (&c * &s, o)).collect();
    }
    Vec::new()
}

/// Result of one closure check.
#[derive(Clone, Debug, serde::Serialize)]
pub struct ClosureCheck {
    pub first: Operator,
    pub second: Operator,
    pub ok: bool,
    #[serde(serialize_with = "crate::graded::json::serialize_expr_map")]
    pub residuals: BTreeMap<String, Expr>,
}

/// Checks `[delta_A(eps), delta_B(eps')]` on every component against the variation generated by
/// the structure constants, working bilinearly in the two parameter copies.
pub fn closure_check(a: Operator, b: Operator) -> Result<ClosureCheck> {
    let d1 = variation_derivation(a, Stage::Pre, 0)?;
    let d2 = variation_derivation(b, Stage::Pre, 1)?;
    let t1 = induced_variation(a, Stage::Pre, 0)?;
    let t2 = induced_variation(b, Stage::Pre, 1)?;
    // Omega2 Omega1 - Omega1 Omega2 = -c_a c_b (-1)^{a.b} eps eps' [[A,B]]
    let (da, db) = (a.derivation(), b.derivation());
    let p = parity(da.degree(), db.degree());
    let eps = Expr::gen(Gen::Param(parameter(a, 0)));
    let eps1 = Expr::gen(Gen::Param(parameter(b, 1)));
    let mut pref = &variation_coefficient(a) * &variation_coefficient(b);
    pref = if p == 1 { pref } else { -pref };
    let prefactor = (&eps * &eps1).scale(&pref);
    let terms: Vec<(Expr, Derivation)> = structure_constants(a, b)
        .into_iter()
        .map(|(c, o)| (prefactor.scale(&c), o.derivation()))
        .collect();
    let phi = expand_superfield(Space::Y);
    let expected = if terms.is_empty() {
        BTreeMap::new()
    } else {
        let refs: Vec<(Expr, &Derivation)> = terms.iter().map(|(e, d)| (e.clone(), d)).collect();
        extract_components(&Derivation::lin("rhs", &refs).apply(&phi))
    };
    let mut residuals = BTreeMap::new();
    for f in Field::ALL {
        let lhs = &d1.apply(&t2[&f]) - &d2.apply(&t1[&f]);
        let rhs = expected.get(&f).cloned().unwrap_or_default();
        let r = &lhs - &rhs;
        if !r.is_zero() {
            residuals.insert(f.name().to_string(), r);
        }
    }
    Ok(ClosureCheck { first: a, second: b, ok: residuals.is_empty(), residuals })
}

/// Cross-check of [`closure_check`]: the same commutator against the superspace bracket.
pub fn closure_by_superspace_bracket(a: Operator, b: Operator) -> Result<bool> {
    let d1 = variation_derivation(a, Stage::Pre, 0)?;
    let d2 = variation_derivation(b, Stage::Pre, 1)?;
    let phi = expand_superfield(Space::Y);
    let lhs = &d1.apply(&d2.apply(&phi)) - &d2.apply(&d1.apply(&phi));
    let rhs = bracket(&superspace_variation(b, 1), &superspace_variation(a, 0)).apply(&phi);
    Ok(lhs == rhs)
}

const FIELD_ORDER: [&str; 8] = ["phi00", "phi11", "A00", "A11", "psi10", "lam10", "psi01", "lam01"];

fn reference_rows(op: Operator, stage: Stage) -> [&'static str; 8] {
    use Operator::*;
    // order: phi00, phi11, A00, A11, psi10, lam10, psi01, lam01
    match (stage, op) {
        (Stage::Pre, H) => [
            "-e00*phi00_t", "-e00*phi11_t", "-e00*A00_t", "-e00*A11_t",
            "-e00*psi10_t", "-e00*lam10_t", "-e00*psi01_t", "-e00*lam01_t",
        ],
        (Stage::Pre, Z) => [
            "-e11*(phi11 + 2*y*phi11_y)",
            "-2*e11*phi00_y",
            "-2*e11*A11_y",
            "-e11*(A00 + 2*y*A00_y)",
            "i*e11*(lam01 + 2*y*lam01_y)",
            "-2*i*e11*psi01_y",
            "i*e11*(lam10 + 2*y*lam10_y)",
            "-2*i*e11*psi10_y",
        ],
        (Stage::Pre, Q10) => [
            "-i*e10*psi10",
            "e10*lam01",
            "-i*e10*(lam10_t - psi10_y)",
            "-e10*(psi01_t + 1/2*lam01 + y*lam01_y)",
            "e10*phi00_t",
            "e10*(A00 + phi00_y)",
            "i*e10*(A11 + 1/2*phi11 + y*phi11_y)",
            "-i*e10*phi11_t",
        ],
        (Stage::Pre, Q01) => [
            "-i*e01*psi01",
            "e01*lam10",
            "-i*e01*(lam01_t + psi01_y)",
            "-e01*(psi10_t - 1/2*lam10 - y*lam10_y)",
            "i*e01*(A11 - 1/2*phi11 - y*phi11_y)",
            "-i*e01*phi11_t",
            "e01*phi00_t",
            "e01*(A00 - phi00_y)",
        ],
        (Stage::Pre, L11) => [
            "eL*(2*y*phi11_t + 1/2*t*(phi11 + 2*y*phi11_y))",
            "eL*(2*phi00_t + t*phi00_y)",
            "eL*(2*A11_t + t*A11_y)",
            "eL*(2*y*A00_t + 1/2*t*(A00 + 2*y*A00_y))",
            "-i*eL*(2*y*lam01_t + 1/2*t*(lam01 + 2*y*lam01_y) - 1/2*psi01)",
            "i*eL*(2*psi01_t + t*psi01_y - 1/2*lam01)",
            "-i*eL*(2*y*lam10_t + 1/2*t*(lam10 + 2*y*lam10_y) + 1/2*psi10)",
            "i*eL*(2*psi10_t + t*psi10_y + 1/2*lam10)",
        ],
        (Stage::Post, H) => [
            "-1/2*e00*phi00_t", "-1/2*e00*phi11_t", "-1/2*e00*A00_t", "-1/2*e00*A11_t",
            "-1/2*e00*psi10_t", "-1/2*e00*lam10_t", "-1/2*e00*psi01_t", "-1/2*e00*lam01_t",
        ],
        (Stage::Post, Z) => [
            "-e11*phi11_x",
            "-e11*phi00_x",
            "-e11*A11_x",
            "-e11*A00_x",
            "i*e11*lam01_x",
            "-i*e11*psi01_x",
            "i*e11*lam10_x",
            "-i*e11*psi10_x",
        ],
        (Stage::Post, Q10) => [
            "-i*e10*psi10",
            "e10*lam01",
            "-1/2*i*e10*(lam10_t - psi10_x)",
            "-1/2*e10*(psi01_t + lam01_x)",
            "1/2*e10*phi00_t",
            "e10*(A00 + 1/2*phi00_x)",
            "i*e10*(A11 + 1/2*phi11_x)",
            "-1/2*i*e10*phi11_t",
        ],
        (Stage::Post, Q01) => [
            "-i*e01*psi01",
            "e01*lam10",
            "-1/2*i*e01*(lam01_t + psi01_x)",
            "-1/2*e01*(psi10_t - lam10_x)",
            "i*e01*(A11 - 1/2*phi11_x)",
            "-1/2*i*e01*phi11_t",
            "1/2*e01*phi00_t",
            "e01*(A00 - 1/2*phi00_x)",
        ],
        (Stage::Post, L11) => [
            "eL*(x*phi11_t + t*phi11_x)",
            "eL*(x*phi00_t + t*phi00_x)",
            "eL*(x*A11_t + t*A11_x)",
            "eL*(x*A00_t + t*A00_x)",
            "-i*eL*(x*lam01_t + t*lam01_x - 1/2*psi01)",
            "i*eL*(x*psi01_t + t*psi01_x - 1/2*lam01)",
            "-i*eL*(x*lam10_t + t*lam10_x + 1/2*psi10)",
            "i*eL*(x*psi10_t + t*psi10_x + 1/2*lam10)",
        ],
        (_, D10 | D01) => [""; 8],
    }
}

/// Displayed transformation table of a symmetry.
pub fn reference_table(op: Operator, stage: Stage) -> BTreeMap<Field, Expr> {
    reference_rows(op, stage)
        .iter()
        .zip(FIELD_ORDER)
        .filter(|(src, _)| !src.is_empty())
        .map(|(src, name)| {
            let f = Field::from_name(name).expect("field name");
            (f, parse_expr(src, stage.space()).expect("reference table parses"))
        })
        .collect()
}

/// One table entry compared with its derivation.
#[derive(Clone, Debug, serde::Serialize)]
pub struct TableEntryCheck {
    pub symmetry: String,
    pub stage: Stage,
    pub field: String,
    pub matches: bool,
    #[serde(serialize_with = "crate::graded::json::serialize_expr")]
    pub derived: Expr,
    #[serde(serialize_with = "crate::graded::json::serialize_expr")]
    pub displayed: Expr,
}

/// Every entry of every table, pre and post redefinition.
pub fn compare_tables() -> Result<Vec<TableEntryCheck>> {
    let mut out = Vec::new();
    for stage in [Stage::Pre, Stage::Post] {
        for op in Operator::SYMMETRIES {
            let derived = induced_variation(op, stage, 0)?;
            for (f, displayed) in reference_table(op, stage) {
                let d = derived.get(&f).cloned().unwrap_or_default();
                out.push(TableEntryCheck {
                    symmetry: op.name().into(),
                    stage,
                    field: f.name().into(),
                    matches: d == displayed,
                    derived: d,
                    displayed,
                });
            }
        }
    }
    Ok(out)
}
