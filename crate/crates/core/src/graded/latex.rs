//! LaTeX rendering with conventional symbol names.

use num_traits::{One, Signed, Zero};

use super::coeff::Coeff;
use super::expr::Expr;
use super::generator::{FuncKind, Gen, Jet, ParamKind, Space, TrigArg};
use super::monomial::{Exp, Monomial};

fn jet_latex(j: Jet) -> String {
    let mut s = j.field.latex().to_string();
    match j.dt {
        0 => {}
        1 => s = format!("\\dot{{{s}}}"),
        2 => s = format!("\\ddot{{{s}}}"),
        n => s = format!("\\partial_t^{{{n}}}{s}"),
    }
    if j.ds > 0 {
        let var = if j.space == Space::Y { "y" } else { "x" };
        if j.space == Space::X && j.ds <= 2 {
            s = format!("{s}{}", "'".repeat(j.ds as usize));
        } else {
            s = format!("\\partial_{var}^{{{}}}{s}", j.ds);
        }
    }
    s
}

pub fn gen_latex(g: Gen) -> String {
    match g {
        Gen::Theta10 => "\\theta_{10}".into(),
        Gen::Theta01 => "\\theta_{01}".into(),
        Gen::T => "t".into(),
        Gen::Y => "y".into(),
        Gen::X => "x".into(),
        Gen::Z => "z".into(),
        Gen::Param(p) => {
            let base = match p.kind {
                ParamKind::E00 => "\\epsilon_{00}",
                ParamKind::E11 => "\\epsilon_{11}",
                ParamKind::E10 => "\\epsilon_{10}",
                ParamKind::E01 => "\\epsilon_{01}",
                ParamKind::EL => "\\epsilon_{L}",
                ParamKind::Dz => "w",
                ParamKind::Alpha => "\\alpha",
            };
            if p.copy == 0 {
                base.into()
            } else {
                format!("{base}'")
            }
        }
        Gen::Field(j) => jet_latex(j),
        Gen::Func(f) => match f.kind {
            FuncKind::F(0) => "V".into(),
            FuncKind::F(n) => format!("V^{{({n})}}"),
            FuncKind::V00(0) => "\\mathcal{V}_{00}".into(),
            FuncKind::V11(0) => "\\mathcal{V}_{11}".into(),
            FuncKind::V00(n) => format!("\\partial_{{00}}^{{{n}}}\\mathcal{{V}}_{{00}}"),
            FuncKind::V11(n) => format!("\\partial_{{00}}^{{{n}}}\\mathcal{{V}}_{{11}}"),
            FuncKind::Sin(a) | FuncKind::Cos(a) => {
                let name = if matches!(f.kind, FuncKind::Sin(_)) { "\\sin" } else { "\\cos" };
                let arg = if a == TrigArg::Phi00 { "\\varphi_{00}" } else { "\\varphi_{11}" };
                format!("{name}{arg}")
            }
        },
    }
}

fn exp_latex(e: Exp) -> String {
    if e.is_integer() {
        e.to_integer().to_string()
    } else {
        format!("{}/{}", e.numer(), e.denom())
    }
}

pub fn monomial_latex(m: &Monomial) -> String {
    m.factors()
        .iter()
        .map(|(g, e)| {
            let base = gen_latex(*g);
            if e.is_one() {
                base
            } else {
                format!("{{{base}}}^{{{}}}", exp_latex(*e))
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn rat_latex(r: &num_rational::BigRational) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", r.numer(), r.denom())
    }
}

/// Renders `c` with an explicit leading sign, omitting a unit magnitude when `bare` allows.
fn coeff_latex(c: &Coeff, bare: bool) -> (bool, String) {
    if c.im.is_zero() {
        let neg = c.re.is_negative();
        let a = c.re.abs();
        let s = if bare && a.is_one() { String::new() } else { rat_latex(&a) };
        (neg, s)
    } else if c.re.is_zero() {
        let neg = c.im.is_negative();
        let a = c.im.abs();
        let s = if a.is_one() { "i".to_string() } else { format!("{}i", rat_latex(&a)) };
        (neg, s)
    } else {
        (false, format!("\\left({} + {}i\\right)", rat_latex(&c.re), rat_latex(&c.im)))
    }
}

pub fn expr_latex(e: &Expr) -> String {
    if e.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (m, c)) in e.terms().enumerate() {
        let (neg, cs) = coeff_latex(c, !m.is_one());
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&cs);
        if !m.is_one() {
            if !cs.is_empty() {
                out.push(' ');
            }
            out.push_str(&monomial_latex(m));
        }
    }
    out
}
