//! Euler-Lagrange equations, Noether currents and their conservation on the jet ring.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::calculus::{Derivation, Operator};
use crate::error::{Error, Result};
use crate::graded::json::{expr_to_json, serialize_expr};
use crate::graded::{parse_expr, Coeff, Expr, Field, FuncKind, Gen, Jet};
use crate::action::{fermion_bilinears, mat_vec, spinors, GammaConvention};
use crate::jet::{self, Divergence, SPACE};
use crate::potential::reduce_trig;
use crate::superfield::{induced_variation, parameter, Stage};

/// Equations of motion and the jets they solve for.
#[derive(Clone, Debug, Serialize)]
pub struct EomSystem {
    /// `dL/df - D_t dL/df_t - D_x dL/df_x`
    #[serde(serialize_with = "serialize_field_map")]
    pub equations: BTreeMap<Field, Expr>,
    /// Highest time jet of each dynamical field in terms of lower jets.
    #[serde(skip)]
    pub solved_forms: BTreeMap<Jet, Expr>,
}

fn serialize_field_map<S: serde::Serializer>(m: &BTreeMap<Field, Expr>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_map(m.iter().map(|(f, e)| (f.name(), expr_to_json(e))))
}

/// Jet eliminated by the equation of `f`.
pub fn solved_jet(f: Field) -> Jet {
    let order = if f.is_odd() { 1 } else { 2 };
    Jet::with(f, SPACE, order, 0)
}

pub fn euler_lagrange(l: &Expr) -> Result<EomSystem> {
    let jets = jet::jets_in(l);
    if let Some(j) = jets.iter().find(|j| j.order() > 1) {
        return Err(Error::SecondOrder(j.name()));
    }
    let mut equations = BTreeMap::new();
    let mut solved_forms = BTreeMap::new();
    for f in Field::ALL {
        if !jets.iter().any(|j| j.field == f) {
            continue;
        }
        let eq = jet::euler(l, f);
        let target = solved_jet(f);
        let g = Gen::Field(target);
        let lin = jet::partial(&eq, target);
        match lin.leading() {
            Some((m, c)) if lin.len() == 1 && m.is_one() => {
                let rest = eq.filter(|m| !m.contains(g));
                solved_forms.insert(target, rest.scale(&(-c.inv().expect("nonzero"))));
            }
            _ if lin.is_zero() => {}
            _ => return Err(Error::Unsolvable(format!("equation of {} is not linear in {}", f.name(), target.name()))),
        }
        equations.insert(f, eq);
    }
    Ok(EomSystem { equations, solved_forms })
}

impl EomSystem {
    /// Replaces every jet at or above a solved jet, repeatedly, until none remain.
    pub fn reduce(&self, e: &Expr) -> Expr {
        let (dt, dx) = (jet::dt(), jet::dx());
        let mut cur = e.clone();
        for _ in 0..64 {
            let mut changed = false;
            let next = cur.substitute(&|g, _| {
                let Gen::Field(j) = g else { return None };
                let base = solved_jet(j.field);
                let form = self.solved_forms.get(&base)?;
                if j.dt < base.dt {
                    return None;
                }
                let mut v = form.clone();
                for _ in base.dt..j.dt {
                    v = dt.apply(&v);
                }
                for _ in 0..j.ds {
                    v = dx.apply(&v);
                }
                Some(v)
            });
            if next != cur {
                changed = true;
            }
            cur = next;
            if !changed {
                break;
            }
        }
        cur
    }
}

/// Variation tables with the auxiliary fields replaced by their on-shell values.
pub fn on_shell_table(op: Operator, aux: &BTreeMap<Field, Expr>) -> Result<BTreeMap<Field, Expr>> {
    let dt = jet::dt();
    let dx = jet::dx();
    let table = induced_variation(op, Stage::Post, 0)?;
    let mut out = BTreeMap::new();
    for (f, v) in table {
        if aux.contains_key(&f) {
            continue;
        }
        let v = v.substitute(&|g, _| {
            let Gen::Field(j) = g else { return None };
            let mut s = aux.get(&j.field)?.clone();
            for _ in 0..j.dt {
                s = dt.apply(&s);
            }
            for _ in 0..j.ds {
                s = dx.apply(&s);
            }
            Some(s)
        });
        out.insert(f, v);
    }
    Ok(out)
}

fn epsilon(op: Operator) -> Gen {
    Gen::Param(parameter(op, 0))
}

/// Variation of `l` under `op` as a total divergence.
pub fn invariance(l: &Expr, op: Operator, aux: &BTreeMap<Field, Expr>) -> Result<(Expr, Divergence)> {
    let table = on_shell_table(op, aux)?;
    let delta = Derivation::from_table(op.name(), crate::graded::Degree::D00, table);
    let dl = delta.apply(l);
    let k = jet::solve_divergence(&dl)?;
    Ok((dl, k))
}

/// Eliminated generic Lagrangian and the auxiliary solutions it was eliminated with.
pub fn auxiliary_solutions_generic() -> Result<(Expr, BTreeMap<Field, Expr>)> {
    use crate::action::{auxiliary_solutions, lagrangian, PotentialChoice};
    let full = lagrangian(&PotentialChoice::Generic, false)?.total();
    let aux = auxiliary_solutions(&full)?;
    Ok((lagrangian(&PotentialChoice::Generic, true)?.total(), aux))
}

/// Noether current of one symmetry.
#[derive(Clone, Debug, Serialize)]
pub struct Current {
    pub symmetry: String,
    #[serde(serialize_with = "serialize_expr")]
    pub j0: Expr,
    #[serde(serialize_with = "serialize_expr")]
    pub j1: Expr,
}

/// `j^mu = d_eps [ sum_f delta f dL/d(d_mu f) - K^mu ]`, with `delta L = D_mu K^mu`.
pub fn noether_current(l: &Expr, op: Operator, aux: &BTreeMap<Field, Expr>) -> Result<Current> {
    let table = on_shell_table(op, aux)?;
    let delta = Derivation::from_table(op.name(), crate::graded::Degree::D00, table.clone());
    let dl = delta.apply(l);
    let k = jet::solve_divergence(&dl)?;
    let mut j0 = -&k.k0;
    let mut j1 = -&k.k1;
    for (f, v) in &table {
        let jt = Jet::with(*f, SPACE, 1, 0);
        let jx = Jet::with(*f, SPACE, 0, 1);
        j0.add_assign_ref(&(v * &jet::partial(l, jt)));
        j1.add_assign_ref(&(v * &jet::partial(l, jx)));
    }
    let strip = Derivation::partial_gen(epsilon(op));
    Ok(Current { symmetry: op.name().to_string(), j0: strip.apply(&j0), j1: strip.apply(&j1) })
}

/// Divergence of a current reduced with the equations of motion.
#[derive(Clone, Debug, Serialize)]
pub struct ConservationReport {
    pub symmetry: String,
    pub conserved: bool,
    #[serde(serialize_with = "serialize_expr")]
    pub residual: Expr,
}

pub fn check_conservation(c: &Current, eom: &EomSystem) -> ConservationReport {
    let div = jet::divergence(&c.j0, &c.j1);
    let residual = eom.reduce(&div);
    ConservationReport { symmetry: c.symmetry.clone(), conserved: residual.is_zero(), residual }
}

/// How a derived current relates to a reference one.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum CurrentMatch {
    /// `derived = factor * reference`
    Exact { factor: [String; 2] },
    /// `derived - factor * reference` is identically divergence free.
    Improvement {
        factor: [String; 2],
        #[serde(serialize_with = "serialize_expr")]
        delta_j0: Expr,
        #[serde(serialize_with = "serialize_expr")]
        delta_j1: Expr,
    },
    Mismatch {
        #[serde(serialize_with = "serialize_expr")]
        delta_j0: Expr,
        #[serde(serialize_with = "serialize_expr")]
        delta_j1: Expr,
    },
}

impl CurrentMatch {
    pub fn ok(&self) -> bool {
        !matches!(self, CurrentMatch::Mismatch { .. })
    }
}

fn ratios(derived: &Expr, reference: &Expr) -> Vec<Coeff> {
    let mut out: Vec<Coeff> = Vec::new();
    for (m, c) in reference.terms() {
        let d = derived.coeff_of(m);
        if let Some(r) = d.div(c) {
            if !r.is_zero() && !out.contains(&r) {
                out.push(r);
            }
        }
    }
    out
}

/// Compares a derived current with a reference pair, allowing an overall factor and an
/// identically conserved improvement term.
pub fn compare_current(derived: &Current, j0: &Expr, j1: &Expr) -> CurrentMatch {
    let mut candidates = ratios(&derived.j0, j0);
    for r in ratios(&derived.j1, j1) {
        if !candidates.contains(&r) {
            candidates.push(r);
        }
    }
    let mut first = None;
    for factor in candidates {
        let d0 = &derived.j0 - &j0.scale(&factor);
        let d1 = &derived.j1 - &j1.scale(&factor);
        let strings = factor.to_strings();
        if d0.is_zero() && d1.is_zero() {
            return CurrentMatch::Exact { factor: strings };
        }
        if jet::divergence(&d0, &d1).is_zero() {
            return CurrentMatch::Improvement { factor: strings, delta_j0: d0, delta_j1: d1 };
        }
        first.get_or_insert(CurrentMatch::Mismatch { delta_j0: d0, delta_j1: d1 });
    }
    first.unwrap_or_else(|| CurrentMatch::Mismatch { delta_j0: &derived.j0 - j0, delta_j1: &derived.j1 - j1 })
}

const Z0: &str = "phi00_t*phi11_x + phi00_x*phi11_t + psi10_x*lam01 - psi10*lam01_x + psi01_x*lam10 - psi01*lam10_x";
const Z1: &str = "-phi00_t*phi11_t - phi00_x*phi11_x + psi10*lam01_t - psi10_t*lam01 + psi01*lam10_t - psi01_t*lam10 \
    + alpha^2*V00*V11 - 2*alpha*(psi10*psi01 + lam10*lam01)*V11_1 - 2*i*alpha*(psi10*lam10 + psi01*lam01)*V00_1";

/// Reference currents in the normalization of the component Lagrangian with displayed coupling.
pub fn reference_current(op: Operator) -> Option<(Expr, Expr)> {
    let (a, b) = match op {
        Operator::H => (
            "1/2*(phi00_t^2 + phi00_x^2 + phi11_t^2 + phi11_x^2) \
             + i*(psi10*lam10_x - psi10_x*lam10 - psi01*lam01_x + psi01_x*lam01) \
             + 1/2*alpha^2*(V00^2 + V11^2) - 2*alpha*(psi10*psi01 + lam10*lam01)*V00_1 \
             - 2*i*alpha*(psi10*lam10 + psi01*lam01)*V11_1"
                .to_string(),
            "-phi00_t*phi00_x - phi11_t*phi11_x + i*(psi10_t*lam10 - psi10*lam10_t - psi01_t*lam01 + psi01*lam01_t)"
                .to_string(),
        ),
        Operator::Q10 => (
            "phi00_t*psi10 + phi00_x*lam10 - i*phi11_t*lam01 + i*phi11_x*psi01 + alpha*V11*lam10 + i*alpha*V00*psi01"
                .to_string(),
            "-phi00_t*lam10 - phi00_x*psi10 - i*phi11_t*psi01 + i*phi11_x*lam01 - alpha*V11*psi10 + i*alpha*V00*lam01"
                .to_string(),
        ),
        Operator::Q01 => (
            "phi00_t*psi01 - phi00_x*lam01 - i*phi11_t*lam10 - i*phi11_x*psi10 + alpha*V11*lam01 + i*alpha*V00*psi10"
                .to_string(),
            "phi00_t*lam01 - phi00_x*psi01 + i*phi11_t*psi10 + i*phi11_x*lam10 + alpha*V11*psi01 - i*alpha*V00*lam10"
                .to_string(),
        ),
        Operator::Z => (Z0.to_string(), Z1.to_string()),
        Operator::L11 => (
            format!(
                "-t*({Z0}) - x*(phi00_t*phi11_t + phi00_x*phi11_x + psi10*psi01_x - psi10_x*psi01 \
                 - lam10*lam01_x + lam10_x*lam01 + alpha^2*V00*V11 - 2*alpha*(psi10*psi01 + lam10*lam01)*V11_1 \
                 - 2*i*alpha*(psi10*lam10 + psi01*lam01)*V00_1)"
            ),
            format!(
                "-t*({Z1}) + x*(phi00_t*phi11_x + phi00_x*phi11_t + psi10*psi01_t - psi10_t*psi01 \
                 - lam10*lam01_t + lam10_t*lam01)"
            ),
        ),
        _ => return None,
    };
    let p = |s: &str| parse_expr(s, SPACE).expect("reference current parses");
    Some((p(&a), p(&b)))
}

/// Which displayed system of equations to compare against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EomReference {
    Generic,
    Massive,
    Cosine,
}

fn p(s: &str) -> Expr {
    parse_expr(s, SPACE).expect("reference equation parses")
}

/// `i dslash Psi + rest` for one spinor, as a column.
fn dirac(spinor10: bool, rest: [Expr; 2]) -> [Expr; 2] {
    let gc = GammaConvention::default();
    let pick = |(a, b): ([Expr; 2], [Expr; 2])| if spinor10 { a } else { b };
    let dt = mat_vec(&gc.gamma0, &pick(spinors(1, 0)));
    let dx = mat_vec(&gc.gamma1, &pick(spinors(0, 1)));
    let i = Expr::i();
    [&(&i * &(&dt[0] + &dx[0])) + &rest[0], &(&i * &(&dt[1] + &dx[1])) + &rest[1]]
}

/// Spinor equation `E` mapped to Euler-Lagrange components via `2 gamma0 E`.
fn spinor_to_fields(spinor10: bool, e: [Expr; 2], out: &mut BTreeMap<Field, Expr>) {
    let gc = GammaConvention::default();
    let v = mat_vec(&gc.gamma0, &e);
    let two = Expr::int(2);
    if spinor10 {
        out.insert(Field::Psi10, &two * &v[0]);
        out.insert(Field::Lambda10, &two * &v[1]);
    } else {
        out.insert(Field::Lambda01, &two * &v[0]);
        out.insert(Field::Psi01, &(-&two) * &v[1]);
    }
}

/// Displayed equations of motion, converted to Euler-Lagrange form: bosonic displays
/// `box phi + ... = 0` are negated and spinor displays `E = 0` are multiplied by `2 gamma0`.
pub fn reference_equations(which: EomReference) -> BTreeMap<Field, Expr> {
    let gc = GammaConvention::default();
    let (mix, same) = fermion_bilinears(&gc);
    let i = Expr::i();
    let a = p("alpha");
    let (s10, s01) = spinors(0, 0);
    let g3 = |v: &[Expr; 2]| mat_vec(&gc.gamma3, v);
    let times = |v: &[Expr; 2], c: &Expr| [&v[0] * c, &v[1] * c];
    let add = |u: [Expr; 2], v: [Expr; 2]| [&u[0] + &v[0], &u[1] + &v[1]];
    let scale = |c: &Expr, v: [Expr; 2]| [c * &v[0], c * &v[1]];
    let box_ = |f: &str| p(&format!("{f}_tt - {f}_xx"));
    let (b00, b11, e10, e01) = match which {
        EomReference::Generic => (
            &(&box_("phi00") + &p("alpha^2*(V00*V00_1 + V11*V11_1)"))
                + &(&a * &(&(&mix * &p("V00_2")) - &(&(&i * &same) * &p("V11_2")))),
            &(&box_("phi11") + &p("alpha^2*(V00_1*V11 + V00*V11_1)"))
                + &(&a * &(&(&mix * &p("V11_2")) - &(&(&i * &same) * &p("V00_2")))),
            dirac(true, scale(&a, g3(&add(times(&s01, &p("V00_1")), times(&s10, &p("-i*V11_1")))))),
            dirac(false, scale(&(-&a), g3(&add(times(&s10, &p("V00_1")), times(&s01, &p("i*V11_1")))))),
        ),
        EomReference::Massive => (
            &box_("phi00") + &p("alpha^2*phi00"),
            &box_("phi11") + &p("alpha^2*phi11"),
            dirac(true, scale(&a, g3(&s01))),
            dirac(false, scale(&(-&a), g3(&s10))),
        ),
        EomReference::Cosine => {
            let cc = p("cos_phi00*cos_phi11");
            let ss = p("sin_phi00*sin_phi11");
            (
                &(&box_("phi00") + &p("alpha^2*sin_phi00*cos_phi00*(cos_phi11^2 - sin_phi11^2)"))
                    + &(&(&(-&a) * &(&mix * &p("sin_phi00*cos_phi11"))) + &(&(&i * &a) * &(&same * &p("cos_phi00*sin_phi11")))),
                &(&box_("phi11") + &p("alpha^2*(cos_phi00^2 - sin_phi00^2)*sin_phi11*cos_phi11"))
                    + &(&(&(-&a) * &(&mix * &p("cos_phi00*sin_phi11"))) + &(&(&i * &a) * &(&same * &p("sin_phi00*cos_phi11")))),
                dirac(true, add(scale(&a, g3(&times(&s01, &cc))), scale(&(&i * &a), times(&s10, &ss)))),
                dirac(false, add(scale(&(-&a), g3(&times(&s10, &cc))), scale(&(&i * &a), g3(&times(&s01, &ss))))),
            )
        }
    };
    let mut out = BTreeMap::from([(Field::Phi00, -&b00), (Field::Phi11, -&b11)]);
    spinor_to_fields(true, e10, &mut out);
    spinor_to_fields(false, e01, &mut out);
    out
}

/// Difference between derived and displayed equations, per field.
#[derive(Clone, Debug, Serialize)]
pub struct EomComparison {
    pub field: String,
    pub matches: bool,
    #[serde(serialize_with = "serialize_expr")]
    pub difference: Expr,
}

pub fn compare_equations(eom: &EomSystem, reference: &BTreeMap<Field, Expr>) -> Vec<EomComparison> {
    reference
        .iter()
        .map(|(f, r)| {
            let derived = eom.equations.get(f).cloned().unwrap_or_default();
            let difference = reduce_trig(&(&derived - r));
            EomComparison { field: f.name().to_string(), matches: difference.is_zero(), difference }
        })
        .collect()
}

/// Sets the listed fields and all their jets to zero (`sin -> 0`, `cos -> 1`).
pub fn restrict(e: &Expr, zero: &[Field]) -> Expr {
    e.substitute(&|g, _| match g {
        Gen::Field(j) if zero.contains(&j.field) => Some(Expr::zero()),
        Gen::Func(f) => match f.kind {
            FuncKind::Sin(a) if zero.contains(&a.field()) => Some(Expr::zero()),
            FuncKind::Cos(a) if zero.contains(&a.field()) => Some(Expr::one()),
            _ => None,
        },
        _ => None,
    })
}

/// True when every other equation vanishes on the restriction that keeps only `keep`.
pub fn restriction_consistent(eom: &EomSystem, keep: Field) -> bool {
    let zero: Vec<Field> = Field::ALL.into_iter().filter(|f| *f != keep).collect();
    eom.equations.iter().filter(|(f, _)| **f != keep).all(|(_, e)| reduce_trig(&restrict(e, &zero)).is_zero())
}

/// Solved second time derivative of `keep` after setting every other dynamical field to zero.
pub fn reduced_equation(eom: &EomSystem, keep: Field) -> Option<Expr> {
    let zero: Vec<Field> = Field::ALL.into_iter().filter(|f| *f != keep).collect();
    eom.solved_forms.get(&solved_jet(keep)).map(|e| restrict(e, &zero))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{auxiliary_solutions, lagrangian, PotentialChoice};
    use crate::graded::{parse_expr, Space};

    fn p(s: &str) -> Expr {
        parse_expr(s, Space::X).unwrap()
    }

    fn setup() -> (Expr, BTreeMap<Field, Expr>) {
        let full = lagrangian(&PotentialChoice::Generic, false).unwrap().total();
        let aux = auxiliary_solutions(&full).unwrap();
        let l = lagrangian(&PotentialChoice::Generic, true).unwrap().total();
        (l, aux)
    }

    #[test]
    fn wave_equation() {
        let l = p("1/2*phi00_t^2 - 1/2*phi00_x^2");
        let eom = euler_lagrange(&l).unwrap();
        assert_eq!(eom.equations[&Field::Phi00], p("-phi00_tt + phi00_xx"));
        assert_eq!(eom.solved_forms[&solved_jet(Field::Phi00)], p("phi00_xx"));
        assert!(euler_lagrange(&p("phi00*phi00_tt")).is_err());
    }

    #[test]
    fn hamiltonian_and_q10_currents() {
        let (l, aux) = setup();
        let eom = euler_lagrange(&l).unwrap();
        let jh = noether_current(&l, Operator::H, &aux).unwrap();
        let j10 = noether_current(&l, Operator::Q10, &aux).unwrap();
        assert!(check_conservation(&jh, &eom).conserved);
        assert!(check_conservation(&j10, &eom).conserved);
        let printed_h1 = p("-phi00_t*phi00_x - phi11_t*phi11_x + i*(psi10_t*lam10 - psi10*lam10_t - psi01_t*lam01 + psi01*lam01_t)");
        let (r0, r1) = reference_current(Operator::H).unwrap();
        assert_eq!(r1, printed_h1);
        match compare_current(&jh, &r0, &r1) {
            CurrentMatch::Exact { factor } => assert_eq!(factor[0], "-1/2"),
            other => panic!("{other:?}"),
        }
        let broken = Current { j1: &jh.j1 + &p("phi00"), ..jh.clone() };
        let r = check_conservation(&broken, &eom);
        assert_eq!(r.residual, p("phi00_x"));
    }
}




