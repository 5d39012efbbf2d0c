//! Matrix differential-operator presentation of the symmetry generators on the component vector
//! `(phi00, A00, A11, phi11, psi10, lam10, psi01, lam01)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use crate::calculus::Operator;
use crate::error::{Error, Result};
use crate::graded::{parity, parse_expr, Coeff, Degree, Expr, Field, Gen, Monomial, Space};
use crate::superfield::{induced_variation, parameter, structure_constants, Stage};

pub const BASIS: [Field; 8] = [
    Field::Phi00,
    Field::A00,
    Field::A11,
    Field::Phi11,
    Field::Psi10,
    Field::Lambda10,
    Field::Psi01,
    Field::Lambda01,
];

/// Exponents of `t^a x^b d_t^c d_x^d`.
pub type WeylMonomial = [u32; 4];

/// Element of the Weyl algebra in `t, x, d_t, d_x`, kept in the normal order
/// coordinates left, derivatives right.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct DiffOp {
    terms: BTreeMap<WeylMonomial, Coeff>,
}

fn falling(n: u32, k: u32) -> i64 {
    (0..k).map(|i| i64::from(n - i)).product()
}

fn binomial(n: u32, k: u32) -> i64 {
    falling(n, k) / falling(k, k)
}

impl DiffOp {
    pub fn zero() -> Self {
        DiffOp::default()
    }

    pub fn monomial(c: Coeff, m: WeylMonomial) -> Self {
        let mut out = DiffOp::zero();
        out.add_term(m, c);
        out
    }

    pub fn constant(c: Coeff) -> Self {
        DiffOp::monomial(c, [0; 4])
    }

    pub fn dt() -> Self {
        DiffOp::monomial(Coeff::one(), [0, 0, 1, 0])
    }

    pub fn dx() -> Self {
        DiffOp::monomial(Coeff::one(), [0, 0, 0, 1])
    }

    /// `x d_t + t d_x`
    pub fn boost() -> Self {
        &DiffOp::monomial(Coeff::one(), [0, 1, 1, 0]) + &DiffOp::monomial(Coeff::one(), [1, 0, 0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WeylMonomial, &Coeff)> {
        self.terms.iter()
    }

    fn add_term(&mut self, m: WeylMonomial, c: Coeff) {
        let e = self.terms.entry(m).or_insert_with(Coeff::zero);
        *e += &c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        let mut out = DiffOp::zero();
        for (m, v) in &self.terms {
            out.add_term(*m, v * c);
        }
        out
    }

    pub fn latex(&self) -> String {
        self.render(true)
    }

    fn render(&self, latex: bool) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let names: [&str; 4] = if latex { ["t", "x", "\\partial_t", "\\partial_x"] } else { ["t", "x", "dt", "dx"] };
        let mut parts = Vec::new();
        for (m, c) in &self.terms {
            let mut factors = Vec::new();
            for (k, e) in m.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[k].to_string()),
                    _ => factors.push(format!("{}^{}", names[k], e)),
                }
            }
            let coeff = Expr::constant(c.clone()).to_string();
            parts.push(match (factors.is_empty(), coeff.as_str()) {
                (true, _) => coeff,
                (false, "1") => factors.join(if latex { " " } else { "*" }),
                (false, "-1") => format!("-{}", factors.join(if latex { " " } else { "*" })),
                (false, _) => format!("{coeff}{}{}", if latex { " " } else { "*" }, factors.join(if latex { " " } else { "*" })),
            });
        }
        parts.join(" + ")
    }
}

impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

impl Add for &DiffOp {
    type Output = DiffOp;
    fn add(self, o: &DiffOp) -> DiffOp {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &DiffOp {
    type Output = DiffOp;
    fn sub(self, o: &DiffOp) -> DiffOp {
        self + &(-o)
    }
}

impl Neg for &DiffOp {
    type Output = DiffOp;
    fn neg(self) -> DiffOp {
        self.scale(&Coeff::int(-1))
    }
}

impl Mul for &DiffOp {
    type Output = DiffOp;
    /// `d^c q^e = sum_k C(c,k) e!/(e-k)! q^(e-k) d^(c-k)` in each variable.
    fn mul(self, o: &DiffOp) -> DiffOp {
        let mut out = DiffOp::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                let base = ca * cb;
                // t-sector then x-sector
                for kt in 0..=a[2].min(b[0]) {
                    for kx in 0..=a[3].min(b[1]) {
                        let w = binomial(a[2], kt) * falling(b[0], kt) * binomial(a[3], kx) * falling(b[1], kx);
                        let m = [a[0] + b[0] - kt, a[1] + b[1] - kx, a[2] - kt + b[2], a[3] - kx + b[3]];
                        out.add_term(m, &base * &Coeff::int(w));
                    }
                }
            }
        }
        out
    }
}

/// An 8x8 matrix of differential operators with a degree.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixOperator {
    pub name: String,
    pub degree: Degree,
    pub entries: [[DiffOp; 8]; 8],
}

impl MatrixOperator {
    pub fn zero(name: &str, degree: Degree) -> Self {
        MatrixOperator { name: name.into(), degree, entries: Default::default() }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(DiffOp::is_zero)
    }

    pub fn mul(&self, o: &MatrixOperator) -> MatrixOperator {
        let mut out = MatrixOperator::zero(&format!("{}{}", self.name, o.name), self.degree + o.degree);
        for i in 0..8 {
            for j in 0..8 {
                for k in 0..8 {
                    let p = &self.entries[i][k] * &o.entries[k][j];
                    out.entries[i][j] = &out.entries[i][j] + &p;
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &Coeff) -> MatrixOperator {
        let mut out = self.clone();
        for e in out.entries.iter_mut().flatten() {
            *e = e.scale(c);
        }
        out
    }

    pub fn add(&self, o: &MatrixOperator) -> MatrixOperator {
        let mut out = self.clone();
        for i in 0..8 {
            for j in 0..8 {
                out.entries[i][j] = &self.entries[i][j] + &o.entries[i][j];
            }
        }
        out
    }

    /// Entries that differ, as `(row, col, self, other)` with 1-based indices.
    pub fn differences(&self, o: &MatrixOperator) -> Vec<(usize, usize, String, String)> {
        let mut out = Vec::new();
        for i in 0..8 {
            for j in 0..8 {
                if self.entries[i][j] != o.entries[i][j] {
                    out.push((i + 1, j + 1, self.entries[i][j].to_string(), o.entries[i][j].to_string()));
                }
            }
        }
        out
    }

    pub fn nonzero_entries(&self) -> Vec<(usize, usize, String)> {
        let mut out = Vec::new();
        for i in 0..8 {
            for j in 0..8 {
                if !self.entries[i][j].is_zero() {
                    out.push((i + 1, j + 1, self.entries[i][j].to_string()));
                }
            }
        }
        out
    }

    /// Column-aligned plain-text rendering.
    pub fn to_text(&self) -> String {
        let cells: Vec<Vec<String>> =
            self.entries.iter().map(|row| row.iter().map(DiffOp::to_string).collect()).collect();
        let widths: Vec<usize> = (0..8).map(|j| cells.iter().map(|r| r[j].len()).max().unwrap_or(1)).collect();
        let mut out = String::new();
        for (i, row) in cells.iter().enumerate() {
            if i == 4 {
                out.push_str(&"-".repeat(widths.iter().sum::<usize>() + 3 * 8));
                out.push('\n');
            }
            for (j, c) in row.iter().enumerate() {
                if j == 4 {
                    out.push_str("| ");
                }
                out.push_str(&format!("{:>w$}  ", c, w = widths[j]));
            }
            out.push('\n');
        }
        out
    }

    pub fn to_latex(&self) -> String {
        let rows: Vec<String> = self
            .entries
            .iter()
            .map(|row| row.iter().map(DiffOp::latex).collect::<Vec<_>>().join(" & "))
            .collect();
        format!("\\left(\\begin{{array}}{{cccc|cccc}}\n{}\n\\end{{array}}\\right)", rows.join(" \\\\\n"))
    }

    /// Bracket `AB - (-1)^{a.b} BA`.
    pub fn bracket(&self, o: &MatrixOperator) -> MatrixOperator {
        let ab = self.mul(o);
        let ba = o.mul(self);
        let s = if parity(self.degree, o.degree) == 1 { Coeff::one() } else { Coeff::int(-1) };
        ab.add(&ba.scale(&s))
    }
}

impl Serialize for MatrixOperator {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let rows: Vec<Vec<String>> = self.entries.iter().map(|r| r.iter().map(DiffOp::to_string).collect()).collect();
        let mut st = s.serialize_struct("MatrixOperator", 3)?;
        st.serialize_field("name", &self.name)?;
        st.serialize_field("degree", &self.degree.to_string())?;
        st.serialize_field("entries", &rows)?;
        st.end()
    }
}

fn coeff(s: &str) -> Coeff {
    parse_expr(s, Space::X).expect("coefficient").coeff_of(&Monomial::one())
}

fn degree_of(op: Operator) -> Degree {
    op.derivation().degree()
}

/// Displayed matrix of a generator.
pub fn printed_matrix(op: Operator) -> Result<MatrixOperator> {
    let one = || DiffOp::constant(Coeff::one());
    // (row, col, coefficient, operator), 1-based
    let entries: Vec<(usize, usize, &str, DiffOp)> = match op {
        Operator::H => (1..=8).map(|k| (k, k, "i/2", DiffOp::dt())).collect(),
        Operator::Z => vec![
            (1, 4, "-i", DiffOp::dx()),
            (2, 3, "-i", DiffOp::dx()),
            (3, 2, "-i", DiffOp::dx()),
            (4, 1, "-i", DiffOp::dx()),
            (5, 8, "-1", DiffOp::dx()),
            (6, 7, "1", DiffOp::dx()),
            (7, 6, "-1", DiffOp::dx()),
            (8, 5, "1", DiffOp::dx()),
        ],
        Operator::Q10 => vec![
            (1, 5, "1", one()),
            (2, 5, "-1/2", DiffOp::dx()),
            (2, 6, "1/2", DiffOp::dt()),
            (3, 7, "-i/2", DiffOp::dt()),
            (3, 8, "-i/2", DiffOp::dx()),
            (4, 8, "i", one()),
            (5, 1, "i/2", DiffOp::dt()),
            (6, 1, "i/2", DiffOp::dx()),
            (6, 2, "i", one()),
            (7, 3, "-1", one()),
            (7, 4, "-1/2", DiffOp::dx()),
            (8, 4, "1/2", DiffOp::dt()),
        ],
        Operator::Q01 => vec![
            (1, 7, "1", one()),
            (2, 7, "1/2", DiffOp::dx()),
            (2, 8, "1/2", DiffOp::dt()),
            (3, 5, "-i/2", DiffOp::dt()),
            (3, 6, "i/2", DiffOp::dx()),
            (4, 6, "i", one()),
            (5, 3, "-1", one()),
            (5, 4, "1/2", DiffOp::dx()),
            (6, 4, "1/2", DiffOp::dt()),
            (7, 1, "i/2", DiffOp::dt()),
            (8, 1, "-i/2", DiffOp::dx()),
            (8, 2, "i", one()),
        ],
        Operator::L11 => vec![
            (1, 4, "i", DiffOp::boost()),
            (2, 3, "i", DiffOp::boost()),
            (3, 2, "i", DiffOp::boost()),
            (4, 1, "i", DiffOp::boost()),
            (5, 7, "-1/2", one()),
            (5, 8, "1", DiffOp::boost()),
            (6, 7, "-1", DiffOp::boost()),
            (6, 8, "1/2", one()),
            (7, 5, "1/2", one()),
            (7, 6, "1", DiffOp::boost()),
            (8, 5, "-1", DiffOp::boost()),
            (8, 6, "-1/2", one()),
        ],
        other => return Err(Error::Operator(other.name().to_string())),
    };
    let mut m = MatrixOperator::zero(op.name(), degree_of(op));
    for (i, j, c, d) in entries {
        m.entries[i - 1][j - 1] = d.scale(&coeff(c));
    }
    Ok(m)
}

/// Displayed matrix, cross-checked against the one read off the variation table.
pub fn build_matrix(op: Operator) -> Result<MatrixOperator> {
    let printed = printed_matrix(op)?;
    let derived = derived_matrix(op)?;
    let diff = printed.differences(&derived);
    if diff.is_empty() {
        Ok(printed)
    } else {
        let list: Vec<String> = diff.iter().map(|(i, j, a, b)| format!("({i},{j}): displayed {a}, derived {b}")).collect();
        Err(Error::Disagreement(format!("{} vs its variation table: {}", op.name(), list.join("; "))))
    }
}

/// Matrix read off the variation table through `delta Phi = -i eps M Phi`.
pub fn derived_matrix(op: Operator) -> Result<MatrixOperator> {
    let table = induced_variation(op, Stage::Post, 0)?;
    let strip = crate::calculus::Derivation::partial_gen(Gen::Param(parameter(op, 0)));
    let mut m = MatrixOperator::zero(op.name(), degree_of(op));
    for (i, f) in BASIS.iter().enumerate() {
        let Some(delta) = table.get(f) else { continue };
        let body = strip.apply(delta);
        for (mono, c) in body.terms() {
            let mut weyl = [0u32; 4];
            let mut column = None;
            for (g, e) in mono.factors() {
                let e = u32::try_from(e.to_integer()).map_err(|_| Error::OutsideBasis(mono.to_string()))?;
                match g {
                    Gen::T => weyl[0] = e,
                    Gen::X => weyl[1] = e,
                    Gen::Field(j) if e == 1 && column.is_none() => {
                        column = BASIS.iter().position(|b| *b == j.field);
                        weyl[2] = u32::from(j.dt);
                        weyl[3] = u32::from(j.ds);
                    }
                    _ => return Err(Error::OutsideBasis(format!("non-linear variation term {mono}"))),
                }
            }
            let j = column.ok_or_else(|| Error::OutsideBasis(format!("variation term without a field: {mono}")))?;
            let entry = DiffOp::monomial(c * &Coeff::i(), weyl);
            m.entries[i][j] = &m.entries[i][j] + &entry;
        }
    }
    Ok(m)
}

/// One matrix relation `[A, B] - sum c C`.
#[derive(Clone, Debug, Serialize)]
pub struct MatrixRelation {
    pub relation: String,
    pub holds: bool,
    /// Nonzero residual entries `(row, col, entry)`.
    pub residual: Vec<(usize, usize, String)>,
}

/// Checks every bracket among the given matrices against the structure constants.
pub fn verify_matrix_relations(matrices: &BTreeMap<Operator, MatrixOperator>) -> Vec<MatrixRelation> {
    let ops: Vec<Operator> = Operator::SYMMETRIES.to_vec();
    let mut out = Vec::new();
    for (k, a) in ops.iter().enumerate() {
        for b in &ops[k..] {
            let (Some(ma), Some(mb)) = (matrices.get(a), matrices.get(b)) else { continue };
            let mut residual = ma.bracket(mb);
            let mut rhs = Vec::new();
            for (c, o) in structure_constants(*a, *b) {
                if let Some(mo) = matrices.get(&o) {
                    residual = residual.add(&mo.scale(&(-&c)));
                }
                rhs.push(format!("({}) {}", Expr::constant(c), o.name()));
            }
            let rhs = if rhs.is_empty() { "0".to_string() } else { rhs.join(" + ") };
            out.push(MatrixRelation {
                relation: format!("[{}, {}] = {}", a.name(), b.name(), rhs),
                holds: residual.is_zero(),
                residual: residual.nonzero_entries(),
            });
        }
    }
    out
}

/// Comparison of one displayed matrix with the derived one.
#[derive(Clone, Debug, Serialize)]
pub struct MatrixComparison {
    pub generator: String,
    pub matches: bool,
    /// `(row, col, displayed, derived)`
    pub differences: Vec<(usize, usize, String, String)>,
}

pub fn compare_matrices() -> Result<Vec<MatrixComparison>> {
    Operator::SYMMETRIES
        .iter()
        .map(|op| {
            let p = printed_matrix(*op)?;
            let d = derived_matrix(*op)?;
            let differences = p.differences(&d);
            Ok(MatrixComparison { generator: op.name().into(), matches: differences.is_empty(), differences })
        })
        .collect()
}

/// The five matrices, either displayed or derived.
pub fn matrices(derived: bool) -> Result<BTreeMap<Operator, MatrixOperator>> {
    Operator::SYMMETRIES
        .iter()
        .map(|op| Ok((*op, if derived { derived_matrix(*op)? } else { printed_matrix(*op)? })))
        .collect()
}

