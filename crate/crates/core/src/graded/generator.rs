use std::fmt;

use num_rational::Rational64;

use super::degree::Degree;

/// The eight component fields of the degree-(0,0) superfield.
///
/// Even fields come first so that the derived order puts even jets before odd jets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Phi00,
    Phi11,
    A00,
    A11,
    Psi10,
    Lambda10,
    Psi01,
    Lambda01,
}

impl Field {
    pub const ALL: [Field; 8] = [
        Field::Phi00,
        Field::Phi11,
        Field::A00,
        Field::A11,
        Field::Psi10,
        Field::Lambda10,
        Field::Psi01,
        Field::Lambda01,
    ];

    pub fn degree(self) -> Degree {
        match self {
            Field::Phi00 | Field::A00 => Degree::D00,
            Field::Phi11 | Field::A11 => Degree::D11,
            Field::Psi10 | Field::Lambda10 => Degree::D10,
            Field::Psi01 | Field::Lambda01 => Degree::D01,
        }
    }

    pub fn is_odd(self) -> bool {
        self.degree().is_odd()
    }

    pub fn name(self) -> &'static str {
        match self {
            Field::Phi00 => "phi00",
            Field::Phi11 => "phi11",
            Field::A00 => "A00",
            Field::A11 => "A11",
            Field::Psi10 => "psi10",
            Field::Lambda10 => "lam10",
            Field::Psi01 => "psi01",
            Field::Lambda01 => "lam01",
        }
    }

    pub fn latex(self) -> &'static str {
        match self {
            Field::Phi00 => "\\varphi_{00}",
            Field::Phi11 => "\\varphi_{11}",
            Field::A00 => "A_{00}",
            Field::A11 => "A_{11}",
            Field::Psi10 => "\\psi_{10}",
            Field::Lambda10 => "\\lambda_{10}",
            Field::Psi01 => "\\psi_{01}",
            Field::Lambda01 => "\\lambda_{01}",
        }
    }

    pub fn from_name(s: &str) -> Option<Field> {
        Field::ALL.into_iter().find(|f| f.name() == s)
    }

    /// Scaling dimension of the undifferentiated field with a dimensionless superfield.
    pub fn scaling_dimension(self, space: Space) -> Rational64 {
        let half = Rational64::new(1, 2);
        match (space, self) {
            (_, Field::Phi00) => 0.into(),
            (_, Field::Psi10 | Field::Psi01) => half,
            (Space::Y, Field::Phi11 | Field::A11) => 1.into(),
            (Space::Y, Field::Lambda10 | Field::Lambda01) => Rational64::new(3, 2),
            (Space::Y, Field::A00) => 2.into(),
            // rescaled by x, which has dimension -1
            (Space::X, Field::Phi11) => 0.into(),
            (Space::X, Field::A11 | Field::A00) => 1.into(),
            (Space::X, Field::Lambda10 | Field::Lambda01) => half,
        }
    }
}

/// Spatial variable a jet is differentiated along: `y = z^2` or `x = sqrt(y)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Space {
    Y,
    X,
}

impl Space {
    pub fn coordinate(self) -> Gen {
        match self {
            Space::Y => Gen::Y,
            Space::X => Gen::X,
        }
    }
}

/// A field together with its derivative orders.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Jet {
    pub field: Field,
    pub space: Space,
    pub dt: u8,
    pub ds: u8,
}

impl Jet {
    pub fn new(field: Field, space: Space) -> Self {
        Jet { field, space, dt: 0, ds: 0 }
    }

    pub fn with(field: Field, space: Space, dt: u8, ds: u8) -> Self {
        Jet { field, space, dt, ds }
    }

    pub fn raise_t(self) -> Self {
        Jet { dt: self.dt + 1, ..self }
    }

    pub fn raise_s(self) -> Self {
        Jet { ds: self.ds + 1, ..self }
    }

    pub fn lower_t(self) -> Option<Self> {
        (self.dt > 0).then(|| Jet { dt: self.dt - 1, ..self })
    }

    pub fn lower_s(self) -> Option<Self> {
        (self.ds > 0).then(|| Jet { ds: self.ds - 1, ..self })
    }

    pub fn order(self) -> u8 {
        self.dt + self.ds
    }

    pub fn base(self) -> Self {
        Jet { dt: 0, ds: 0, ..self }
    }

    pub fn name(self) -> String {
        let mut s = self.field.name().to_string();
        if self.order() > 0 {
            s.push('_');
            s.extend(std::iter::repeat_n('t', self.dt as usize));
            let c = if self.space == Space::Y { 'y' } else { 'x' };
            s.extend(std::iter::repeat_n(c, self.ds as usize));
        }
        s
    }

    pub fn scaling_dimension(self) -> Rational64 {
        let per_space = if self.space == Space::Y { 2 } else { 1 };
        self.field.scaling_dimension(self.space)
            + Rational64::from(self.dt as i64 + per_space * self.ds as i64)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ParamKind {
    E00,
    E11,
    E10,
    E01,
    EL,
    /// Abstract infinitesimal shift of `z`, used for the invariance lemma on `z/sqrt(y)`.
    Dz,
    Alpha,
}

/// A transformation parameter or coupling. `copy` distinguishes independent parameter
/// sets when two variations are composed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Param {
    pub kind: ParamKind,
    pub copy: u8,
}

impl Param {
    pub fn new(kind: ParamKind) -> Self {
        Param { kind, copy: 0 }
    }

    pub fn degree(self) -> Degree {
        match self.kind {
            ParamKind::E00 => Degree::D00,
            ParamKind::E11 | ParamKind::EL | ParamKind::Dz | ParamKind::Alpha => Degree::D11,
            ParamKind::E10 => Degree::D10,
            ParamKind::E01 => Degree::D01,
        }
    }

    pub fn is_infinitesimal(self) -> bool {
        self.kind != ParamKind::Alpha
    }

    pub fn scaling_dimension(self) -> Rational64 {
        match self.kind {
            ParamKind::E00 | ParamKind::E11 | ParamKind::Dz => (-1).into(),
            ParamKind::E10 | ParamKind::E01 => Rational64::new(-1, 2),
            ParamKind::EL => 0.into(),
            ParamKind::Alpha => 1.into(),
        }
    }

    pub fn name(self) -> String {
        let base = match self.kind {
            ParamKind::E00 => "e00",
            ParamKind::E11 => "e11",
            ParamKind::E10 => "e10",
            ParamKind::E01 => "e01",
            ParamKind::EL => "eL",
            ParamKind::Dz => "dz",
            ParamKind::Alpha => "alpha",
        };
        if self.copy == 0 {
            base.to_string()
        } else {
            format!("{base}_{}", self.copy)
        }
    }
}

/// Which field a trigonometric function jet is evaluated at.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TrigArg {
    Phi00,
    Phi11,
}

impl TrigArg {
    pub fn field(self) -> Field {
        match self {
            TrigArg::Phi00 => Field::Phi00,
            TrigArg::Phi11 => Field::Phi11,
        }
    }
}

/// Function symbols evaluated on the bosonic fields.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FuncKind {
    /// `V^(n)(phi00)`: n-th derivative of an abstract prepotential.
    F(u8),
    /// `d00^n V00(phi00, phi11)`.
    V00(u8),
    /// `d00^n V11(phi00, phi11)`.
    V11(u8),
    Sin(TrigArg),
    Cos(TrigArg),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FuncJet {
    pub kind: FuncKind,
    pub space: Space,
}

impl FuncJet {
    pub fn new(kind: FuncKind, space: Space) -> Self {
        FuncJet { kind, space }
    }

    pub fn degree(self) -> Degree {
        match self.kind {
            FuncKind::F(_) | FuncKind::V00(_) => Degree::D00,
            FuncKind::V11(_) => Degree::D11,
            FuncKind::Sin(TrigArg::Phi00) | FuncKind::Cos(_) => Degree::D00,
            FuncKind::Sin(TrigArg::Phi11) => Degree::D11,
        }
    }

    pub fn name(self) -> String {
        match self.kind {
            FuncKind::F(n) => format!("F{n}"),
            FuncKind::V00(0) => "V00".into(),
            FuncKind::V11(0) => "V11".into(),
            FuncKind::V00(n) => format!("V00_{n}"),
            FuncKind::V11(n) => format!("V11_{n}"),
            FuncKind::Sin(a) => format!("sin_{}", a.field().name()),
            FuncKind::Cos(a) => format!("cos_{}", a.field().name()),
        }
    }
}

/// A generator of the graded ring. The derived order is the canonical factor order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    Theta10,
    Theta01,
    T,
    Y,
    X,
    Z,
    Param(Param),
    Field(Jet),
    Func(FuncJet),
}

impl Gen {
    pub fn degree(self) -> Degree {
        match self {
            Gen::Theta10 => Degree::D10,
            Gen::Theta01 => Degree::D01,
            Gen::T | Gen::Y | Gen::X => Degree::D00,
            Gen::Z => Degree::D11,
            Gen::Param(p) => p.degree(),
            Gen::Field(j) => j.field.degree(),
            Gen::Func(f) => f.degree(),
        }
    }

    pub fn is_nilpotent(self) -> bool {
        self.degree().is_odd()
    }

    /// Only `y` and `x` may carry non-integer exponents.
    pub fn allows_rational_exponent(self) -> bool {
        matches!(self, Gen::Y | Gen::X)
    }

    /// Every generator is real under the star conjugation.
    pub fn is_star_fixed(self) -> bool {
        true
    }

    pub fn infinitesimal_copy(self) -> Option<u8> {
        match self {
            Gen::Param(p) if p.is_infinitesimal() => Some(p.copy),
            _ => None,
        }
    }

    pub fn scaling_dimension(self) -> Rational64 {
        match self {
            Gen::Theta10 | Gen::Theta01 => Rational64::new(-1, 2),
            Gen::T | Gen::Z | Gen::X => (-1).into(),
            Gen::Y => (-2).into(),
            Gen::Param(p) => p.scaling_dimension(),
            Gen::Field(j) => j.scaling_dimension(),
            Gen::Func(_) => 0.into(),
        }
    }

    pub fn name(self) -> String {
        match self {
            Gen::Theta10 => "th10".into(),
            Gen::Theta01 => "th01".into(),
            Gen::T => "t".into(),
            Gen::Y => "y".into(),
            Gen::X => "x".into(),
            Gen::Z => "z".into(),
            Gen::Param(p) => p.name(),
            Gen::Field(j) => j.name(),
            Gen::Func(f) => f.name(),
        }
    }

    pub fn field(f: Field, space: Space) -> Gen {
        Gen::Field(Jet::new(f, space))
    }

    pub fn jet(f: Field, space: Space, dt: u8, ds: u8) -> Gen {
        Gen::Field(Jet::with(f, space, dt, ds))
    }

    pub fn param(kind: ParamKind) -> Gen {
        Gen::Param(Param::new(kind))
    }

    pub fn func(kind: FuncKind, space: Space) -> Gen {
        Gen::Func(FuncJet::new(kind, space))
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order_groups() {
        let phi = Gen::field(Field::Phi00, Space::Y);
        let psi = Gen::field(Field::Psi10, Space::Y);
        let order = [
            Gen::Theta10,
            Gen::Theta01,
            Gen::T,
            Gen::Y,
            Gen::X,
            Gen::Z,
            Gen::param(ParamKind::E10),
            Gen::param(ParamKind::Alpha),
            phi,
            psi,
            Gen::func(FuncKind::F(0), Space::Y),
        ];
        assert!(order.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn nilpotent_flags() {
        assert!(Gen::Theta10.is_nilpotent());
        assert!(Gen::param(ParamKind::E01).is_nilpotent());
        assert!(Gen::jet(Field::Lambda01, Space::X, 2, 1).is_nilpotent());
        assert!(!Gen::Z.is_nilpotent());
        assert!(!Gen::param(ParamKind::EL).is_nilpotent());
        assert!(!Gen::field(Field::Phi11, Space::Y).is_nilpotent());
    }

    #[test]
    fn jet_dimensions() {
        let j = Jet::with(Field::Phi11, Space::Y, 1, 1);
        assert_eq!(j.scaling_dimension(), Rational64::from(4));
        let j = Jet::with(Field::Lambda10, Space::X, 0, 1);
        assert_eq!(j.scaling_dimension(), Rational64::new(3, 2));
        assert_eq!(Jet::with(Field::Psi10, Space::X, 2, 0).name(), "psi10_tt");
    }
}
