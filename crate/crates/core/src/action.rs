//! Superspace integration, the invariant action and the component Lagrangian.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::calculus::{Derivation, JetRule, Operator};
use crate::error::{Error, Result};
use crate::graded::expr::field_power;
use crate::graded::{parse_expr, Coeff, Expr, Field, FuncKind, Gen, Monomial, Param, ParamKind, Space};
use crate::potential::{closed_form, Potential, PotentialPair, DEFAULT_TRUNCATION};
use crate::superfield::{expand_superfield, redefine, superspace_variation, variation_derivation, Stage};

fn g(x: Gen) -> Expr {
    Expr::gen(x)
}

fn alpha() -> Expr {
    g(Gen::param(ParamKind::Alpha))
}

/// Coefficient of `theta10 theta01` (left Berezin derivative `d10 d01`).
pub fn berezin(e: &Expr) -> Expr {
    let d10 = Derivation::partial_gen(Gen::Theta10);
    let d01 = Derivation::partial_gen(Gen::Theta01);
    d10.apply(&d01.apply(e))
        .filter(|m| !m.contains(Gen::Theta10) && !m.contains(Gen::Theta01))
}

/// Splits a `theta`-free expression as `a + z b` and returns `(a, b)`.
pub fn split_z(e: &Expr) -> (Expr, Expr) {
    let mut a = Expr::zero();
    let mut b = Expr::zero();
    for (m, c) in e.terms() {
        if m.contains(Gen::Z) {
            // z only passes even coordinates on its way to the front
            b.add_term(m.without(Gen::Z), c);
        } else {
            a.add_term(m.clone(), c);
        }
    }
    (a, b)
}

/// `int dt dz d10 d01 e`: half the `z`-linear part of the `theta10 theta01` coefficient,
/// as a density in `(t, y)`.
pub fn integrate_superspace(e: &Expr) -> Expr {
    let (_, b) = split_z(&berezin(e));
    b.scale(&Coeff::frac(1, 2))
}

/// `D10 Phi` and `D01 Phi` before the redefinition.
pub fn covariant_derivatives() -> (Expr, Expr) {
    let phi = expand_superfield(Space::Y);
    (Operator::D10.derivation().apply(&phi), Operator::D01.derivation().apply(&phi))
}

/// `z y^(-1/2)`.
pub fn measure_factor() -> Expr {
    &g(Gen::Z) * &Expr::power_of(Gen::Y, num_rational::Rational64::new(-1, 2))
}

/// `V(Phi) = sum_k N^k / k! V^(k)(phi00)` with `N = Phi - phi00`, through `k = max_k`.
pub fn superfield_potential(max_k: u32) -> Expr {
    let phi = expand_superfield(Space::Y);
    let n = &phi - &g(Gen::field(Field::Phi00, Space::Y));
    let mut out = Expr::zero();
    let mut power = Expr::one();
    let mut fact: i64 = 1;
    for k in 0..=max_k {
        if k > 0 {
            power = power.mul_ref(&n);
            fact *= i64::from(k);
        }
        let fk = g(Gen::func(FuncKind::F(k as u8), Space::Y));
        out.add_assign_ref(&(&power * &fk).scale(&Coeff::frac(1, fact)));
    }
    out
}

/// Highest `F` derivative needed so that all terms through `phi11^(2T+1)` are complete.
pub fn series_depth(truncation: u32) -> u32 {
    2 * truncation + 3
}

/// Power of the undifferentiated `phi11` in a monomial.
fn phi11_power(m: &Monomial, space: Space) -> i64 {
    m.exponent(Gen::field(Field::Phi11, space)).to_integer()
}

pub fn truncate_undiff_phi11(e: &Expr, space: Space, max: i64) -> Expr {
    e.filter(|m| phi11_power(m, space) <= max)
}

/// `d00^m V00` (`odd = false`) or `d00^m V11` as an `F`-series through `phi11^max`, post stage.
fn v_series(odd: bool, m: u32, max: i64, space: Space) -> Expr {
    let phi11 = g(Gen::field(Field::Phi11, space));
    let mut out = Expr::zero();
    let mut j = u32::from(odd);
    let mut fact: i64 = 1;
    while i64::from(j) <= max {
        let f = g(Gen::func(FuncKind::F((m + j + 1) as u8), space));
        out.add_assign_ref(&(&phi11.pow(j) * &f).scale(&Coeff::frac(1, fact)));
        fact *= i64::from(j + 1) * i64::from(j + 2);
        j += 2;
    }
    out
}

/// Rewrites an `F`-series in the redefined variables, complete through `phi11^max`, in terms of
/// the jets `d00^n V00`, `d00^n V11`.
pub fn fold_series(e: &Expr, max: i64, space: Space) -> Result<Expr> {
    let phi11 = Gen::field(Field::Phi11, space);
    let is_f = |x: &Gen| matches!(x, Gen::Func(f) if matches!(f.kind, FuncKind::F(_)));
    let work = truncate_undiff_phi11(e, space, max);
    let mut out = work.filter(|m| !m.factors().iter().any(|(x, _)| is_f(x)));
    let mut rem = work.filter(|m| m.factors().iter().any(|(x, _)| is_f(x)));
    let mut guard = 0usize;
    while !rem.is_zero() {
        guard += 1;
        if guard > 100_000 {
            return Err(Error::Unsolvable("series folding does not terminate".into()));
        }
        let (m, c) = rem
            .terms()
            .min_by_key(|(m, _)| phi11_power(m, space))
            .map(|(m, c)| (m.clone(), c.clone()))
            .expect("nonempty");
        let j = phi11_power(&m, space);
        let (fgen, fexp) = *m.factors().iter().find(|(x, _)| is_f(x)).expect("has F");
        let k = match fgen {
            Gen::Func(f) => match f.kind {
                FuncKind::F(k) => u32::from(k),
                _ => unreachable!(),
            },
            _ => unreachable!(),
        };
        if !fexp.is_integer() || fexp.to_integer() != 1 {
            return Err(Error::Unsolvable(format!("nonlinear potential term {m}")));
        }
        let prefactor = Expr::term(Coeff::one(), m.without(phi11).without(fgen));
        let (series, jet) = match j {
            0 if k >= 1 => (v_series(false, k - 1, max, space), FuncKind::V00((k - 1) as u8)),
            1 if k >= 2 => (v_series(true, k - 2, max, space), FuncKind::V11((k - 2) as u8)),
            _ => return Err(Error::Unsolvable(format!("cannot fold term {c}*{m}"))),
        };
        let lead = &prefactor * &(&g(phi11).pow(j as u32) * &g(fgen));
        let lc = lead.coeff_of(&m);
        let scale = c.div(&lc).expect("leading coefficient is a sign");
        let sub = truncate_undiff_phi11(&(&prefactor * &series), space, max).scale(&scale);
        rem = &rem - &sub;
        out.add_assign_ref(&(&prefactor * &g(Gen::func(jet, space))).scale(&scale));
    }
    Ok(out)
}

/// Replaces the generic jets `d00^n V00`, `d00^n V11` by derivatives of a concrete pair.
pub fn substitute_pair(e: &Expr, pair: &PotentialPair) -> Expr {
    let space = pair.space;
    let d00 = Derivation::partial_gen(Gen::field(Field::Phi00, space));
    let nth = |base: &Expr, n: u8| (0..n).fold(base.clone(), |acc, _| d00.apply(&acc));
    e.substitute(&|x, exp| match x {
        Gen::Func(f) if f.space == space => {
            let v = match f.kind {
                FuncKind::V00(n) => nth(&pair.v00, n),
                FuncKind::V11(n) => nth(&pair.v11, n),
                _ => return None,
            };
            Some(v.pow(exp.to_integer() as u32))
        }
        _ => None,
    })
}

/// The kinetic density: `theta10 theta01`, `z`-free part of `D10 Phi D01 Phi`.
pub fn kinetic_sector() -> Expr {
    let (d10, d01) = covariant_derivatives();
    split_z(&berezin(&(&d10 * &d01))).0
}

/// `d10 d01 V(Phi)` at `theta = 0`, split as `(V11 part, V00 part)` in `a + z b`, complete
/// through `phi11^(2T+1)`.
pub fn potential_sector(truncation: u32) -> (Expr, Expr) {
    let v = superfield_potential(series_depth(truncation));
    let (a, b) = split_z(&berezin(&v));
    let max = i64::from(2 * truncation + 1);
    (
        truncate_undiff_phi11(&a, Space::Y, max),
        truncate_undiff_phi11(&b, Space::Y, max),
    )
}

/// Comparison of the computed potential sector with the displayed forms.
#[derive(Clone, Debug, Serialize)]
pub struct PotentialSectorReport {
    pub truncation: u32,
    pub v11_matches: bool,
    /// `V00` with the degree-consistent last factor `d00 V~11`.
    pub v00_matches_corrected: bool,
    /// `V00` exactly as displayed, with last factor `d00 V~00`.
    pub v00_matches_printed: bool,
}

pub fn verify_potential_sector(truncation: u32) -> PotentialSectorReport {
    use crate::potential::potential_components;
    let (v11, v00) = potential_sector(truncation);
    let pair = potential_components(&Potential::Abstract, Stage::Pre, truncation);
    let d00 = Derivation::partial_gen(Gen::field(Field::Phi00, Space::Y));
    let (t00, t11) = (pair.v00.clone(), pair.v11.clone());
    let (dt00, dt11) = (d00.apply(&t00), d00.apply(&t11));
    let p = |s: &str| parse_expr(s, Space::Y).expect("template");
    let psipsi = p("psi10*psi01 + y*lam10*lam01");
    let psilam = p("i*(psi10*lam10 + psi01*lam01)");
    let a11 = p("A11");
    let a00 = p("A00");
    let y = g(Gen::Y);
    let printed_v11 = &(&(&a11 * &t00) - &(&psipsi * &dt00)) + &(&y * &(&(&a00 * &t11) - &(&psilam * &dt11)));
    let v00_head = &(&a00 * &t00) - &(&psilam * &dt00);
    let corrected = &v00_head + &(&(&a11 * &t11) - &(&psipsi * &dt11));
    let printed = &v00_head + &(&(&a11 * &t11) - &(&psipsi * &dt00));
    let max = i64::from(2 * truncation + 1);
    let cmp = |a: &Expr, b: &Expr| {
        truncate_undiff_phi11(a, Space::Y, max) == truncate_undiff_phi11(b, Space::Y, max)
    };
    PotentialSectorReport {
        truncation,
        v11_matches: cmp(&v11, &printed_v11),
        v00_matches_corrected: cmp(&v00, &corrected),
        v00_matches_printed: cmp(&v00, &printed),
    }
}

/// Pre-redefinition density `L_y` with `S = int dt dy L_y`, as an `F`-series.
pub fn pre_lagrangian(truncation: u32) -> Expr {
    let (d10, d01) = covariant_derivatives();
    let kin = (&d10 * &d01).scale(&Coeff::int(2));
    let pot = &alpha() * &superfield_potential(series_depth(truncation));
    let integrand = &measure_factor() * &(&kin + &pot);
    -integrate_superspace(&integrand)
}

/// `L_x = 2x R(L_y)`: the redefined fields and variables with `dy = 2x dx`.
pub fn redefine_density(ly: &Expr) -> Expr {
    &(&Expr::int(2) * &g(Gen::X)) * &redefine(ly)
}

/// The component Lagrangian, split into the coupling-free and coupling-dependent parts.
#[derive(Clone, Debug, PartialEq)]
pub struct Lagrangian {
    pub kinetic: Expr,
    pub interaction: Expr,
}

impl Lagrangian {
    pub fn from_total(total: &Expr) -> Lagrangian {
        let a = Gen::param(ParamKind::Alpha);
        Lagrangian {
            kinetic: total.filter(|m| !m.contains(a)),
            interaction: total.filter(|m| m.contains(a)),
        }
    }

    pub fn total(&self) -> Expr {
        &self.kinetic + &self.interaction
    }
}

/// Which potential the Lagrangian is specialized to.
#[derive(Clone, Debug, PartialEq)]
pub enum PotentialChoice {
    /// Abstract `V00`, `V11` linked by the constraint rules.
    Generic,
    Concrete(Potential),
}

/// Normalization of the coupling in the component Lagrangian.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Coupling {
    /// `alpha` exactly as it appears in the superspace action.
    Action,
    /// `alpha -> 2 alpha`: the normalization of the displayed component Lagrangian, whose
    /// interaction terms are twice those produced by the action with the kinetic terms fixed.
    Printed,
}

impl Coupling {
    pub fn apply(self, e: &Expr) -> Expr {
        match self {
            Coupling::Action => e.clone(),
            Coupling::Printed => e.substitute_gen(Gen::param(ParamKind::Alpha), &(&Expr::int(2) * &alpha())),
        }
    }
}

/// Derives the component Lagrangian from the superspace action.
pub fn component_lagrangian(
    choice: &PotentialChoice,
    eliminate_auxiliary: bool,
    truncation: u32,
    coupling: Coupling,
) -> Result<Lagrangian> {
    let ly = pre_lagrangian(truncation);
    let lx = redefine_density(&ly);
    for (m, _) in lx.terms() {
        if m.contains(Gen::X) || m.contains(Gen::Y) || m.contains(Gen::Z) {
            return Err(Error::OutsideBasis(format!("explicit coordinate survives redefinition: {m}")));
        }
    }
    let max = i64::from(2 * truncation + 1);
    let mut total = coupling.apply(&fold_series(&lx, max, Space::X)?);
    if eliminate_auxiliary {
        total = eliminate_auxiliaries(&total)?;
    }
    if let PotentialChoice::Concrete(v) = choice {
        total = substitute_pair(&total, &closed_form(v, Space::X));
    }
    Ok(Lagrangian::from_total(&total))
}

/// Default truncation, displayed coupling normalization.
pub fn lagrangian(choice: &PotentialChoice, eliminate_auxiliary: bool) -> Result<Lagrangian> {
    component_lagrangian(choice, eliminate_auxiliary, DEFAULT_TRUNCATION, Coupling::Printed)
}

/// Solves the algebraic equations of `A00` and `A11` and substitutes them back.
pub fn eliminate_auxiliaries(l: &Expr) -> Result<Expr> {
    let solutions = auxiliary_solutions(l)?;
    let mut out = l.clone();
    for (f, v) in solutions {
        out = out.substitute_gen(Gen::field(f, Space::X), &v);
    }
    Ok(out)
}

/// `A = -b / a` from `dL/dA = a A + b` with constant `a`.
pub fn auxiliary_solutions(l: &Expr) -> Result<BTreeMap<Field, Expr>> {
    let mut out = BTreeMap::new();
    for f in [Field::A00, Field::A11] {
        let a = Gen::field(f, Space::X);
        for (m, _) in l.terms() {
            if m.factors().iter().any(|(x, _)| matches!(x, Gen::Field(j) if j.field == f && j.order() > 0)) {
                return Err(Error::Unsolvable(format!("{} is dynamical", f.name())));
            }
        }
        let eq = Derivation::partial_gen(a).apply(l);
        let lin = Derivation::partial_gen(a).apply(&eq);
        let rest = eq.filter(|m| !m.contains(a));
        let mut it = lin.terms();
        let coeff = match (it.next(), it.next()) {
            (Some((m, c)), None) if m.is_one() => c.clone(),
            _ => return Err(Error::Unsolvable(format!("equation of {} is not linear", f.name()))),
        };
        if eq != &(&Expr::constant(coeff.clone()) * &g(a)) + &rest {
            return Err(Error::Unsolvable(format!("equation of {} is not linear", f.name())));
        }
        let inv = coeff.inv().expect("nonzero");
        out.insert(f, rest.scale(&(-inv)));
    }
    Ok(out)
}

/// Results of the invariance lemmas.
#[derive(Clone, Debug, Serialize)]
pub struct LemmaReport {
    pub measure_invariant_abstract_shift: bool,
    pub measure_invariant_susy_shift: bool,
    pub d10_phi_nilpotent: bool,
    pub d01_phi_nilpotent: bool,
    /// `delta_L (D10 Phi D01 Phi) = i eL L11 (D10 Phi D01 Phi)`: transforms like a superfield.
    pub product_transforms_as_superfield: bool,
    /// The displayed arrangement `delta_L P + eL L11 P = 0` taken literally.
    pub printed_sign_residual_zero: bool,
}

pub fn invariance_lemmas() -> LemmaReport {
    let w = g(Gen::param(ParamKind::Dz));
    let shift = Derivation::new("dz", crate::graded::Degree::D00, [(Gen::Z, w)].into_iter().collect(), JetRule::Inert);
    let mf = measure_factor();
    let susy_z = -superspace_variation_coordinates().apply_gen(Gen::Z);
    let susy = Derivation::new(
        "susy",
        crate::graded::Degree::D00,
        [(Gen::Z, susy_z)].into_iter().collect(),
        JetRule::Inert,
    );
    let (d10, d01) = covariant_derivatives();
    let p = &d10 * &d01;
    let dl = variation_derivation(Operator::L11, Stage::Pre, 0).expect("table");
    let el = g(Gen::Param(Param::new(ParamKind::EL)));
    let l11p = Operator::L11.derivation().apply(&p);
    let lhs = dl.apply(&p);
    LemmaReport {
        measure_invariant_abstract_shift: shift.apply(&mf).is_zero(),
        measure_invariant_susy_shift: susy.apply(&mf).is_zero(),
        d10_phi_nilpotent: (&d10 * &d10).is_zero(),
        d01_phi_nilpotent: (&d01 * &d01).is_zero(),
        product_transforms_as_superfield: (&lhs - &(&(&Expr::i() * &el) * &l11p)).is_zero(),
        printed_sign_residual_zero: (&lhs + &(&el * &l11p)).is_zero(),
    }
}

/// Coordinate variation `-(field variation)` for all five generators together.
fn superspace_variation_coordinates() -> Derivation {
    let ops: Vec<Derivation> = Operator::SYMMETRIES.iter().map(|o| superspace_variation(*o, 0)).collect();
    let terms: Vec<(Expr, &Derivation)> = ops.iter().map(|d| (Expr::one(), d)).collect();
    Derivation::lin("delta", &terms)
}

/// 2x2 matrices of expressions.
pub type Mat2 = [[Expr; 2]; 2];

fn mat(a: [[i64; 2]; 2]) -> Mat2 {
    a.map(|r| r.map(Expr::int))
}

fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out: Mat2 = Default::default();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                let t = &a[i][k] * &b[k][j];
                out[i][j].add_assign_ref(&t);
            }
        }
    }
    out
}

/// Representation of the two-dimensional Clifford algebra with `eta = diag(1, -1)`.
pub struct GammaConvention {
    pub gamma0: Mat2,
    pub gamma1: Mat2,
    pub gamma3: Mat2,
}

impl Default for GammaConvention {
    fn default() -> Self {
        GammaConvention {
            gamma0: mat([[1, 0], [0, -1]]),
            gamma1: mat([[0, -1], [1, 0]]),
            gamma3: mat([[0, 1], [1, 0]]),
        }
    }
}

impl GammaConvention {
    /// Checks `{gamma^mu, gamma^nu} = 2 eta^{mu nu}` and `gamma3 = -gamma0 gamma1`.
    pub fn verify(&self) -> bool {
        let g = [&self.gamma0, &self.gamma1];
        let eta = [1, -1];
        for mu in 0..2 {
            for nu in 0..2 {
                let ab = mat_mul(g[mu], g[nu]);
                let ba = mat_mul(g[nu], g[mu]);
                for i in 0..2 {
                    for j in 0..2 {
                        let expect = if mu == nu && i == j { 2 * eta[mu] } else { 0 };
                        if &ab[i][j] + &ba[i][j] != Expr::int(expect) {
                            return false;
                        }
                    }
                }
            }
        }
        let prod = mat_mul(&self.gamma0, &self.gamma1);
        (0..2).all(|i| (0..2).all(|j| self.gamma3[i][j] == -&prod[i][j]))
    }
}

/// `(psi10, lam10)` and `(lam01, -psi01)` as column vectors of jets.
pub fn spinors(dt: u8, dx: u8) -> ([Expr; 2], [Expr; 2]) {
    let f = |x: Field| g(Gen::jet(x, Space::X, dt, dx));
    (
        [f(Field::Psi10), f(Field::Lambda10)],
        [f(Field::Lambda01), -f(Field::Psi01)],
    )
}

/// `bar(A) M B = A^T gamma0 M B`.
pub fn bilinear(a: &[Expr; 2], m: &Mat2, b: &[Expr; 2], gc: &GammaConvention) -> Expr {
    let gm = mat_mul(&gc.gamma0, m);
    let mut out = Expr::zero();
    for i in 0..2 {
        for j in 0..2 {
            out.add_assign_ref(&(&(&a[i] * &gm[i][j]) * &b[j]));
        }
    }
    out
}

/// `bar(Psi10) g3 Psi01 - bar(Psi01) g3 Psi10` and `bar(Psi10) g3 Psi10 + bar(Psi01) g3 Psi01`.
pub fn fermion_bilinears(gc: &GammaConvention) -> (Expr, Expr) {
    let (s10, s01) = spinors(0, 0);
    let g3 = &gc.gamma3;
    let mix = &bilinear(&s10, g3, &s01, gc) - &bilinear(&s01, g3, &s10, gc);
    let same = &bilinear(&s10, g3, &s10, gc) + &bilinear(&s01, g3, &s01, gc);
    (mix, same)
}

/// `M v` for a column of expressions.
pub fn mat_vec(m: &Mat2, v: &[Expr; 2]) -> [Expr; 2] {
    let row = |i: usize| &(&m[i][0] * &v[0]) + &(&m[i][1] * &v[1]);
    [row(0), row(1)]
}

/// The Lagrangian written with spinors, expanded in components (generic potential).
pub fn spinor_form(eliminated: bool) -> Expr {
    let gc = GammaConvention::default();
    let p = |s: &str| parse_expr(s, Space::X).expect("template");
    let mut l = p("1/2*(phi00_t^2 - phi00_x^2 + phi11_t^2 - phi11_x^2)");
    let (s10, s01) = spinors(0, 0);
    let (s10t, s01t) = spinors(1, 0);
    let (s10x, s01x) = spinors(0, 1);
    let dslash = |a: &[Expr; 2], at: &[Expr; 2], ax: &[Expr; 2]| {
        &bilinear(a, &gc.gamma0, at, &gc) + &bilinear(a, &gc.gamma1, ax, &gc)
    };
    l.add_assign_ref(&(&Expr::i() * &(&dslash(&s10, &s10t, &s10x) + &dslash(&s01, &s01t, &s01x))));
    let a = alpha();
    if eliminated {
        l.add_assign_ref(&(&(&a * &a) * &p("-1/2*(V00^2 + V11^2)")));
    } else {
        l.add_assign_ref(&p("2*A00^2 + 2*A11^2"));
        l.add_assign_ref(&(&a * &p("-2*(A11*V00 + A00*V11)")));
    }
    let (mix, same) = fermion_bilinears(&gc);
    let bracket = &(&mix * &p("V00_1")) - &(&(&Expr::i() * &same) * &p("V11_1"));
    l.add_assign_ref(&(&(-&a) * &bracket));
    l
}

/// Displayed component Lagrangians.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LagrangianReference {
    /// Generic potential, auxiliaries present, component form.
    WithAuxiliaries,
    /// Generic potential, auxiliaries eliminated, spinor form.
    Eliminated,
    /// `V = Phi^2 / 2`
    Massive,
    /// `V = cos Phi`
    Cosine,
}

pub fn reference_lagrangian(r: LagrangianReference) -> Expr {
    let p = |s: &str| parse_expr(s, Space::X).expect("template");
    let a = alpha();
    let (mix, same) = fermion_bilinears(&GammaConvention::default());
    let kinetic = || spinor_form(true).filter(|m| !m.contains(Gen::param(ParamKind::Alpha)));
    match r {
        LagrangianReference::WithAuxiliaries => p(
            "1/2*(phi00_t^2 - phi00_x^2 + phi11_t^2 - phi11_x^2) + 2*A00^2 + 2*A11^2 \
             + i*(psi10*psi10_t + psi01*psi01_t + lam10*lam10_t + lam01*lam01_t) \
             - i*(psi10*lam10_x - psi10_x*lam10 - psi01*lam01_x + psi01_x*lam01) \
             - 2*alpha*(A11*V00 + A00*V11) \
             + 2*alpha*((psi10*psi01 + lam10*lam01)*V00_1 + i*(psi10*lam10 + psi01*lam01)*V11_1)",
        ),
        LagrangianReference::Eliminated => spinor_form(true),
        LagrangianReference::Massive => {
            &(&kinetic() + &p("-1/2*alpha^2*phi00^2 - 1/2*alpha^2*phi11^2")) - &(&a * &mix)
        }
        LagrangianReference::Cosine => {
            let pot = p("-1/2*alpha^2*(sin_phi00^2*cos_phi11^2 + cos_phi00^2*sin_phi11^2)");
            let coupling = &(&mix * &p("cos_phi00*cos_phi11")) + &(&(&Expr::i() * &same) * &p("sin_phi00*sin_phi11"));
            &(&kinetic() + &pot) + &(&a * &coupling)
        }
    }
}

/// `derived - displayed`, modulo `sin^2 + cos^2 = 1`.
pub fn lagrangian_difference(l: &Lagrangian, r: LagrangianReference) -> Expr {
    crate::potential::reduce_trig(&(&l.total() - &reference_lagrangian(r)))
}

/// Spinor repackaging check against a component Lagrangian.
#[derive(Clone, Debug, Serialize)]
pub struct SpinorReport {
    pub clifford: bool,
    pub matches: bool,
    #[serde(serialize_with = "crate::graded::json::serialize_expr")]
    pub difference: Expr,
}

pub fn spinor_repack(l: &Lagrangian, eliminated: bool) -> SpinorReport {
    let diff = &spinor_form(eliminated) - &l.total();
    SpinorReport { clifford: GammaConvention::default().verify(), matches: diff.is_zero(), difference: diff }
}

/// Scaling dimension and degree audit of a Lagrangian; `[alpha] = 1`.
#[derive(Clone, Debug, Serialize)]
pub struct AuditReport {
    pub degree_00: bool,
    pub star_real: bool,
    pub kinetic_dimension: Option<String>,
    pub interaction_dimension: Option<String>,
}

pub fn audit(l: &Lagrangian) -> AuditReport {
    use crate::graded::{DegreeInfo, Dimension};
    let total = l.total();
    let dim = |e: &Expr| match e.scaling_dimension() {
        Dimension::Uniform(d) => Some(d.to_string()),
        Dimension::Zero => Some("0".into()),
        Dimension::Inhomogeneous => None,
    };
    AuditReport {
        degree_00: matches!(total.degree(), DegreeInfo::Homogeneous(d) if d == crate::graded::Degree::D00),
        star_real: total.is_star_real(),
        kinetic_dimension: dim(&l.kinetic),
        interaction_dimension: dim(&l.interaction),
    }
}

/// Total power of a field's jets in a monomial, re-exported for reports.
pub fn jet_power(m: &Monomial, f: Field) -> i64 {
    field_power(m, f).to_integer()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn py(s: &str) -> Expr {
        parse_expr(s, Space::Y).unwrap()
    }

    fn px(s: &str) -> Expr {
        parse_expr(s, Space::X).unwrap()
    }

    #[test]
    fn integration_map() {
        assert_eq!(integrate_superspace(&py("th10*th01*z*A00")), py("1/2*A00"));
        assert!(integrate_superspace(&py("th10*th01*A11")).is_zero());
        assert!(integrate_superspace(&py("phi00")).is_zero());
    }

    #[test]
    fn kinetic_density() {
        let k = kinetic_sector();
        let printed = py(
            "-phi00_t^2 + y*phi00_y^2 - y*phi11_t^2 + 1/4*(phi11 + 2*y*phi11_y)^2 - y*A00^2 - A11^2 \
             - i*(psi10*psi10_t + psi01*psi01_t) - i*y*(lam10*lam10_t + lam01*lam01_t) \
             + i/2*(psi10*lam10 - psi01*lam01) \
             - i*y*(psi10_y*lam10 - psi10*lam10_y + psi01*lam01_y - psi01_y*lam01)",
        );
        assert_eq!(k, printed);
    }

    #[test]
    fn lemmas() {
        let r = invariance_lemmas();
        assert!(r.measure_invariant_abstract_shift);
        assert!(r.measure_invariant_susy_shift);
        assert!(r.d10_phi_nilpotent && r.d01_phi_nilpotent);
        assert!(r.product_transforms_as_superfield);
    }

    #[test]
    fn potential_sector_forms() {
        let r = verify_potential_sector(2);
        assert!(r.v11_matches);
        assert!(r.v00_matches_corrected);
        assert!(!r.v00_matches_printed);
    }

    #[test]
    fn generic_lagrangian() {
        let l = component_lagrangian(&PotentialChoice::Generic, false, 2, Coupling::Printed).unwrap();
        let kin = px(
            "1/2*(phi00_t^2 - phi00_x^2 + phi11_t^2 - phi11_x^2) + 2*A00^2 + 2*A11^2 \
             + i*(psi10*psi10_t + psi01*psi01_t + lam10*lam10_t + lam01*lam01_t) \
             - i*(psi10*lam10_x - psi10_x*lam10 - psi01*lam01_x + psi01_x*lam01)",
        );
        assert_eq!(l.kinetic, kin);
        let int = px(
            "-2*alpha*(A11*V00 + A00*V11) \
             + 2*alpha*((psi10*psi01 + lam10*lam01)*V00_1 + i*(psi10*lam10 + psi01*lam01)*V11_1)",
        );
        assert_eq!(l.interaction, int);
        assert!(spinor_repack(&l, false).matches);
        let raw = component_lagrangian(&PotentialChoice::Generic, false, 2, Coupling::Action).unwrap();
        assert_eq!(raw.kinetic, l.kinetic);
        assert_eq!(Coupling::Printed.apply(&raw.interaction), int);
        assert_ne!(raw.interaction, int);
        let a = audit(&l);
        assert!(a.degree_00 && a.star_real);
    }

    #[test]
    fn displayed_lagrangians() {
        use LagrangianReference::*;
        let cases = [
            (PotentialChoice::Generic, false, WithAuxiliaries),
            (PotentialChoice::Generic, true, Eliminated),
            (PotentialChoice::Concrete(Potential::massive()), true, Massive),
            (PotentialChoice::Concrete(Potential::Cos), true, Cosine),
        ];
        for (choice, elim, r) in cases {
            let l = lagrangian(&choice, elim).unwrap();
            assert!(lagrangian_difference(&l, r).is_zero(), "{r:?}: {}", lagrangian_difference(&l, r));
            let raw = component_lagrangian(&choice, elim, DEFAULT_TRUNCATION, Coupling::Action).unwrap();
            assert!(!lagrangian_difference(&raw, r).is_zero());
        }
    }

    #[test]
    fn elimination() {
        let l = component_lagrangian(&PotentialChoice::Generic, true, 2, Coupling::Printed).unwrap();
        assert!(spinor_repack(&l, true).matches);
        let m = component_lagrangian(&PotentialChoice::Concrete(Potential::massive()), true, 2, Coupling::Printed).unwrap();
        let mass = px("-1/2*alpha^2*(phi00^2 + phi11^2)");
        assert_eq!(m.interaction.filter(|x| !x.factors().iter().any(|(g, _)| g.is_nilpotent())), mass);
    }
}
