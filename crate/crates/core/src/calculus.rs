//! Graded derivations on the superspace ring and the superalgebra realization.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use serde::Serialize;

use crate::graded::{parity, Coeff, Degree, Expr, Field, FuncJet, FuncKind, Gen, Jet, Space, TrigArg};

/// How a derivation extends from coordinates to field jets.
#[derive(Clone, Debug, PartialEq)]
pub enum JetRule {
    /// Fields are functions of `(t, y)` or `(t, x)`: `D f = D(t) f_t + D(s) f_s`.
    Prolong,
    /// Explicit images of the undifferentiated fields; jets follow by total derivatives.
    Table(BTreeMap<Field, Expr>),
    /// Left partial derivative with respect to a single jet.
    Partial(Jet),
    /// Field jets are annihilated.
    Inert,
}

/// A homogeneous graded derivation, determined by its action on generators.
#[derive(Clone, Debug)]
pub struct Derivation {
    name: String,
    degree: Degree,
    action: BTreeMap<Gen, Expr>,
    jets: JetRule,
    cache: Arc<Mutex<HashMap<Gen, Expr>>>,
}

/// Superspace coordinates on which operator identities are checked.
pub const COORDINATES: [Gen; 4] = [Gen::T, Gen::Z, Gen::Theta10, Gen::Theta01];

fn c(n: i64, d: i64) -> Expr {
    Expr::frac(n, d)
}

fn ci(n: i64, d: i64) -> Expr {
    Expr::constant(Coeff::imag(n, d))
}

fn g(x: Gen) -> Expr {
    Expr::gen(x)
}

impl Derivation {
    pub fn new(name: impl Into<String>, degree: Degree, action: BTreeMap<Gen, Expr>, jets: JetRule) -> Self {
        Derivation { name: name.into(), degree, action, jets, cache: Arc::default() }
    }

    fn from_pairs(name: &str, degree: Degree, pairs: Vec<(Gen, Expr)>, jets: JetRule) -> Self {
        Derivation::new(name, degree, pairs.into_iter().collect(), jets)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> Degree {
        self.degree
    }

    pub fn jet_rule(&self) -> &JetRule {
        &self.jets
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Left partial derivative with respect to a generator.
    pub fn partial_gen(x: Gen) -> Self {
        let name = format!("d/d{}", x.name());
        match x {
            Gen::Field(j) => Derivation::new(name, j.field.degree(), BTreeMap::new(), JetRule::Partial(j)),
            _ => Derivation::from_pairs(&name, x.degree(), vec![(x, Expr::one())], JetRule::Inert),
        }
    }

    /// Partial derivative acting on explicit coordinates and, by prolongation, on fields.
    pub fn partial_coordinate(x: Gen) -> Self {
        Derivation::from_pairs(&format!("d_{}", x.name()), x.degree(), vec![(x, Expr::one())], JetRule::Prolong)
    }

    /// Total derivative in `t`.
    pub fn total_t() -> Self {
        Derivation::partial_coordinate(Gen::T).renamed("D_t")
    }

    /// Total derivative along the spatial variable of `space`.
    pub fn total_space(space: Space) -> Self {
        let x = space.coordinate();
        Derivation::partial_coordinate(x).renamed(format!("D_{}", x.name()))
    }

    /// Applies a transformation table to the fields, leaving coordinates fixed.
    pub fn from_table(name: &str, degree: Degree, table: BTreeMap<Field, Expr>) -> Self {
        Derivation::new(name, degree, BTreeMap::new(), JetRule::Table(table))
    }

    /// Image of a single generator.
    pub fn apply_gen(&self, x: Gen) -> Expr {
        if let Some(v) = self.cache.lock().expect("cache poisoned").get(&x) {
            return v.clone();
        }
        let v = self.compute_gen(x);
        self.cache.lock().expect("cache poisoned").insert(x, v.clone());
        v
    }

    fn compute_gen(&self, x: Gen) -> Expr {
        if let Some(v) = self.action.get(&x) {
            return v.clone();
        }
        match x {
            Gen::Y => {
                let dz = self.apply_gen(Gen::Z);
                if dz.is_zero() {
                    return Expr::zero();
                }
                let z = g(Gen::Z);
                let sign = if parity(self.degree, Degree::D11) == 1 { -1 } else { 1 };
                &(&dz * &z) + &(&z * &dz).scale(&Coeff::int(sign))
            }
            Gen::Field(j) => self.jet_image(j),
            Gen::Func(f) => self.func_image(f),
            _ => Expr::zero(),
        }
    }

    fn jet_image(&self, j: Jet) -> Expr {
        match &self.jets {
            JetRule::Inert => Expr::zero(),
            JetRule::Partial(target) => {
                if *target == j {
                    Expr::one()
                } else {
                    Expr::zero()
                }
            }
            JetRule::Prolong => {
                let dt = self.apply_gen(Gen::T);
                let ds = self.apply_gen(j.space.coordinate());
                let mut out = &dt * &g(Gen::Field(j.raise_t()));
                out.add_assign_ref(&(&ds * &g(Gen::Field(j.raise_s()))));
                out
            }
            JetRule::Table(table) => {
                let Some(base) = table.get(&j.field) else {
                    return Expr::zero();
                };
                let mut out = base.clone();
                if j.dt > 0 {
                    let d = Derivation::total_t();
                    for _ in 0..j.dt {
                        out = d.apply(&out);
                    }
                }
                if j.ds > 0 {
                    let d = Derivation::total_space(j.space);
                    for _ in 0..j.ds {
                        out = d.apply(&out);
                    }
                }
                out
            }
        }
    }

    fn func_image(&self, f: FuncJet) -> Expr {
        let mut out = Expr::zero();
        for (field, partial) in [(Field::Phi00, func_partial_00(f)), (Field::Phi11, func_partial_11(f))] {
            if partial.is_zero() {
                continue;
            }
            let d = self.apply_gen(Gen::field(field, f.space));
            if !d.is_zero() {
                out.add_assign_ref(&(&d * &partial));
            }
        }
        out
    }

    /// Graded-Leibniz extension to an arbitrary expression.
    pub fn apply(&self, p: &Expr) -> Expr {
        let mut out = Expr::zero();
        for (m, coeff) in p.terms() {
            let factors = m.factors();
            for (i, (x, e)) in factors.iter().enumerate() {
                let dx = self.apply_gen(*x);
                if dx.is_zero() {
                    continue;
                }
                let (prefix, rest) = m.split_at(i);
                let (_, suffix) = rest.split_at(1);
                let mut piece = Expr::term(coeff.clone(), prefix.clone());
                if parity(self.degree, prefix.degree()) == 1 {
                    piece = -piece;
                }
                let lowered = Expr::power_of(*x, *e - 1);
                let scale = Coeff::real(num_rational::BigRational::new(
                    (*e.numer()).into(),
                    (*e.denom()).into(),
                ));
                let mid = (&dx * &lowered).scale(&scale);
                piece = &(&piece * &mid) * &Expr::term(Coeff::one(), suffix);
                out.add_assign_ref(&piece);
            }
        }
        out
    }

    /// Left-multiplies the action by a homogeneous expression, e.g. a parameter.
    pub fn scaled(&self, factor: &Expr) -> Derivation {
        Derivation::lin(&format!("{}*{}", factor, self.name), &[(factor.clone(), self)])
    }

    /// Linear combination `sum c_k D_k` of derivations of a common total degree.
    pub fn lin(name: &str, terms: &[(Expr, &Derivation)]) -> Derivation {
        assert!(!terms.is_empty(), "empty linear combination");
        let degree = terms[0].0.homogeneous_degree() + terms[0].1.degree;
        for (cf, d) in terms {
            assert_eq!(cf.homogeneous_degree() + d.degree, degree, "inhomogeneous combination");
        }
        let mut keys: Vec<Gen> = terms.iter().flat_map(|(_, d)| d.action.keys().copied()).collect();
        keys.sort();
        keys.dedup();
        let action = keys
            .into_iter()
            .map(|k| {
                let v = Expr::sum(terms.iter().map(|(cf, d)| cf * &d.apply_gen(k)));
                (k, v)
            })
            .collect();
        let jets = if terms.iter().all(|(_, d)| d.jets == JetRule::Inert) {
            JetRule::Inert
        } else if terms.iter().all(|(_, d)| d.jets == JetRule::Prolong) {
            JetRule::Prolong
        } else if terms.iter().all(|(_, d)| matches!(d.jets, JetRule::Table(_) | JetRule::Inert)) {
            let mut table: BTreeMap<Field, Expr> = BTreeMap::new();
            for (cf, d) in terms {
                if let JetRule::Table(t) = &d.jets {
                    for (f, v) in t {
                        table.entry(*f).or_default().add_assign_ref(&(cf * v));
                    }
                }
            }
            JetRule::Table(table)
        } else {
            panic!("cannot combine derivations with different jet rules")
        };
        Derivation::new(name, degree, action, jets)
    }

    /// `D1 - D2` for derivations of equal degree.
    pub fn minus(&self, other: &Derivation) -> Derivation {
        Derivation::lin(
            &format!("{} - {}", self.name, other.name),
            &[(Expr::one(), self), (Expr::int(-1), other)],
        )
    }
}

/// `d/dphi00` of a function jet.
pub fn func_partial_00(f: FuncJet) -> Expr {
    let s = f.space;
    let fj = |k| g(Gen::func(k, s));
    match f.kind {
        FuncKind::F(n) => fj(FuncKind::F(n + 1)),
        FuncKind::V00(n) => fj(FuncKind::V00(n + 1)),
        FuncKind::V11(n) => fj(FuncKind::V11(n + 1)),
        FuncKind::Sin(TrigArg::Phi00) => fj(FuncKind::Cos(TrigArg::Phi00)),
        FuncKind::Cos(TrigArg::Phi00) => -fj(FuncKind::Sin(TrigArg::Phi00)),
        FuncKind::Sin(TrigArg::Phi11) | FuncKind::Cos(TrigArg::Phi11) => Expr::zero(),
    }
}

/// `d/dphi11` of a function jet, using `d11 V00 = d00 V11` and `d11 V11 = d00 V00`.
pub fn func_partial_11(f: FuncJet) -> Expr {
    let s = f.space;
    let fj = |k| g(Gen::func(k, s));
    match f.kind {
        FuncKind::F(_) => Expr::zero(),
        FuncKind::V00(n) => fj(FuncKind::V11(n + 1)),
        FuncKind::V11(n) => fj(FuncKind::V00(n + 1)),
        FuncKind::Sin(TrigArg::Phi11) => fj(FuncKind::Cos(TrigArg::Phi11)),
        FuncKind::Cos(TrigArg::Phi11) => -fj(FuncKind::Sin(TrigArg::Phi11)),
        FuncKind::Sin(TrigArg::Phi00) | FuncKind::Cos(TrigArg::Phi00) => Expr::zero(),
    }
}

/// The named superspace operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Operator {
    H,
    Z,
    Q10,
    Q01,
    L11,
    D10,
    D01,
}

impl Operator {
    pub const SYMMETRIES: [Operator; 5] = [Operator::H, Operator::Z, Operator::Q10, Operator::Q01, Operator::L11];

    pub fn name(self) -> &'static str {
        match self {
            Operator::H => "H",
            Operator::Z => "Z",
            Operator::Q10 => "Q10",
            Operator::Q01 => "Q01",
            Operator::L11 => "L11",
            Operator::D10 => "D10",
            Operator::D01 => "D01",
        }
    }

    pub fn from_name(s: &str) -> Option<Operator> {
        [Operator::H, Operator::Z, Operator::Q10, Operator::Q01, Operator::L11, Operator::D10, Operator::D01]
            .into_iter()
            .find(|o| o.name().eq_ignore_ascii_case(s))
    }

    /// Differential-operator realization on superspace.
    pub fn derivation(self) -> Derivation {
        use Gen::{Theta01 as TH01, Theta10 as TH10, T, Z};
        let (degree, pairs) = match self {
            Operator::H => (Degree::D00, vec![(T, ci(1, 1))]),
            Operator::Z => (Degree::D11, vec![(Z, ci(1, 1))]),
            Operator::Q10 => (
                Degree::D10,
                vec![(T, &ci(1, 1) * &g(TH10)), (TH10, Expr::one()), (Z, &c(1, 2) * &g(TH01))],
            ),
            Operator::Q01 => (
                Degree::D01,
                vec![(T, &ci(1, 1) * &g(TH01)), (TH01, Expr::one()), (Z, &c(-1, 2) * &g(TH10))],
            ),
            Operator::L11 => (
                Degree::D11,
                vec![
                    (T, &ci(-2, 1) * &g(Z)),
                    (Z, &ci(-1, 2) * &g(T)),
                    (TH10, &c(1, 2) * &g(TH01)),
                    (TH01, &c(-1, 2) * &g(TH10)),
                ],
            ),
            Operator::D10 => (
                Degree::D10,
                vec![(T, &ci(-1, 1) * &g(TH10)), (TH10, Expr::one()), (Z, &c(-1, 2) * &g(TH01))],
            ),
            Operator::D01 => (
                Degree::D01,
                vec![(T, &ci(-1, 1) * &g(TH01)), (TH01, Expr::one()), (Z, &c(1, 2) * &g(TH10))],
            ),
        };
        Derivation::from_pairs(self.name(), degree, pairs, JetRule::Prolong)
    }
}

/// Graded bracket `AB - (-1)^{a.b} BA`, realized by its action on the coordinates.
pub fn bracket(a: &Derivation, b: &Derivation) -> Derivation {
    let s = parity(a.degree, b.degree);
    let action = COORDINATES
        .iter()
        .map(|&x| {
            let ab = a.apply(&b.apply_gen(x));
            let ba = b.apply(&a.apply_gen(x));
            let v = if s == 1 { &ab + &ba } else { &ab - &ba };
            (x, v)
        })
        .collect();
    let jets = if a.jets == JetRule::Prolong && b.jets == JetRule::Prolong {
        JetRule::Prolong
    } else {
        JetRule::Inert
    };
    let name = if s == 1 {
        format!("{{{},{}}}", a.name, b.name)
    } else {
        format!("[{},{}]", a.name, b.name)
    };
    Derivation::new(name, a.degree + b.degree, action, jets)
}

/// Outcome of one operator identity.
#[derive(Clone, Debug, Serialize)]
pub struct RelationCheck {
    pub relation: String,
    pub status: &'static str,
    #[serde(serialize_with = "crate::graded::json::serialize_expr_map")]
    pub residuals: BTreeMap<String, Expr>,
}

impl RelationCheck {
    pub fn ok(&self) -> bool {
        self.status == "ok"
    }
}

/// Compares two derivations on the coordinates.
pub fn compare_on_coordinates(relation: String, lhs: &Derivation, rhs: &Derivation) -> RelationCheck {
    let mut residuals = BTreeMap::new();
    for x in COORDINATES {
        let r = &lhs.apply_gen(x) - &rhs.apply_gen(x);
        if !r.is_zero() {
            residuals.insert(x.name(), r);
        }
    }
    let status = if residuals.is_empty() { "ok" } else { "fail" };
    RelationCheck { relation, status, residuals }
}

fn zero_derivation(degree: Degree) -> Derivation {
    Derivation::new("0", degree, BTreeMap::new(), JetRule::Prolong)
}

/// Checks the full table of (anti)commutation relations and the graded Jacobi identity.
pub fn verify_structure_constants() -> Vec<RelationCheck> {
    use Operator::*;
    let op = |o: Operator| o.derivation();
    let times = |k: Expr, o: Operator| op(o).scaled(&k);
    let zero = |a: Operator, b: Operator| zero_derivation(op(a).degree + op(b).degree);
    let table: Vec<(Operator, Operator, Derivation, &str)> = vec![
        (Q10, Q10, times(c(2, 1), H), "2H"),
        (Q01, Q01, times(c(2, 1), H), "2H"),
        (Q10, Q01, times(ci(1, 1), Z), "iZ"),
        (H, Q10, zero(H, Q10), "0"),
        (H, Q01, zero(H, Q01), "0"),
        (Z, Q10, zero(Z, Q10), "0"),
        (Z, Q01, zero(Z, Q01), "0"),
        (H, Z, zero(H, Z), "0"),
        (L11, H, times(ci(1, 2), Z), "(i/2)Z"),
        (L11, Z, times(ci(2, 1), H), "2iH"),
        (L11, Q10, times(c(-1, 2), Q01), "-(1/2)Q01"),
        (L11, Q01, times(c(1, 2), Q10), "(1/2)Q10"),
        (D10, D10, times(c(-2, 1), H), "-2H"),
        (D01, D01, times(c(-2, 1), H), "-2H"),
        (D10, D01, times(ci(-1, 1), Z), "-iZ"),
        (D10, Q10, zero(D10, Q10), "0"),
        (D01, Q01, zero(D01, Q01), "0"),
        (D10, Q01, zero(D10, Q01), "0"),
        (D01, Q10, zero(D01, Q10), "0"),
        (L11, D10, times(c(-1, 2), D01), "-(1/2)D01"),
        (L11, D01, times(c(1, 2), D10), "(1/2)D10"),
    ];
    let mut out = Vec::new();
    for (a, b, rhs, rhs_name) in table {
        let lhs = bracket(&op(a), &op(b));
        out.push(compare_on_coordinates(format!("{} = {}", lhs.name(), rhs_name), &lhs, &rhs));
    }
    for x in Operator::SYMMETRIES {
        for y in Operator::SYMMETRIES {
            for z in Operator::SYMMETRIES {
                out.push(jacobi(x, y, z));
            }
        }
    }
    out
}

/// Graded Jacobi identity `[X,[Y,Z]] = [[X,Y],Z] + (-1)^{x.y} [Y,[X,Z]]`.
pub fn jacobi(x: Operator, y: Operator, z: Operator) -> RelationCheck {
    let (dx, dy, dz) = (x.derivation(), y.derivation(), z.derivation());
    let lhs = bracket(&dx, &bracket(&dy, &dz));
    let first = bracket(&bracket(&dx, &dy), &dz);
    let second = bracket(&dy, &bracket(&dx, &dz));
    let sign = if parity(dx.degree, dy.degree) == 1 { -1 } else { 1 };
    let rhs = Derivation::lin("rhs", &[(Expr::one(), &first), (Expr::int(sign), &second)]);
    compare_on_coordinates(format!("Jacobi({},{},{})", x.name(), y.name(), z.name()), &lhs, &rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::ParamKind;

    #[test]
    fn theta_derivative_is_left() {
        let d = Derivation::partial_gen(Gen::Theta10);
        let p = &g(Gen::Theta10) * &g(Gen::Theta01);
        assert_eq!(d.apply(&p), g(Gen::Theta01));
        let d = Derivation::partial_gen(Gen::Theta01);
        // th10 th01 -> th10 commutes past d01 with parity((0,1),(1,0)) = 0
        assert_eq!(d.apply(&p), g(Gen::Theta10));
    }

    #[test]
    fn q10_on_coordinates() {
        let q = Operator::Q10.derivation();
        assert_eq!(q.apply(&g(Gen::T)), &ci(1, 1) * &g(Gen::Theta10));
        assert_eq!(q.apply(&g(Gen::Z)), &c(1, 2) * &g(Gen::Theta01));
        // Q10 y = Q10(z) z - z Q10(z)
        let y = q.apply(&g(Gen::Y));
        assert_eq!(y, &g(Gen::Theta01) * &g(Gen::Z));
    }

    #[test]
    fn l11_coordinate_transformation() {
        let el = g(Gen::param(ParamKind::EL));
        let delta = Operator::L11.derivation().scaled(&(&ci(-1, 1) * &el));
        assert_eq!(delta.apply(&g(Gen::T)), &c(-2, 1) * &(&el * &g(Gen::Z)));
    }

    #[test]
    fn all_relations_hold() {
        for r in verify_structure_constants() {
            assert!(r.ok(), "{} residuals {:?}", r.relation, r.residuals);
        }
    }

    #[test]
    fn prolongation_on_jets() {
        let h = Operator::H.derivation();
        let phi = Gen::field(Field::Phi00, Space::Y);
        assert_eq!(h.apply(&g(phi)), &ci(1, 1) * &g(Gen::jet(Field::Phi00, Space::Y, 1, 0)));
        let z = Operator::Z.derivation();
        let expect = &ci(2, 1) * &(&g(Gen::Z) * &g(Gen::jet(Field::Phi00, Space::Y, 0, 1)));
        assert_eq!(z.apply(&g(phi)), expect);
    }

    #[test]
    fn chain_rule_through_constraint() {
        let s = Space::X;
        let d11 = Derivation::partial_gen(Gen::field(Field::Phi11, s));
        let v00 = g(Gen::func(FuncKind::V00(0), s));
        assert_eq!(d11.apply(&v00), g(Gen::func(FuncKind::V11(1), s)));
        let dx = Derivation::total_space(s);
        let cos = g(Gen::func(FuncKind::Cos(TrigArg::Phi00), s));
        let expect = -(&g(Gen::jet(Field::Phi00, s, 0, 1)) * &g(Gen::func(FuncKind::Sin(TrigArg::Phi00), s)));
        assert_eq!(dx.apply(&cos), expect);
    }
}
