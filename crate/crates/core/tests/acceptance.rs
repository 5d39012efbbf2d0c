//! Acceptance suite: one line per criterion.
//!
//! Criteria listed in `KNOWN_FAILURES` are reported as FAIL without failing the run; any other
//! FAIL exits nonzero.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use z22susy::action::{
    audit, component_lagrangian, integrate_superspace, lagrangian, lagrangian_difference, reference_lagrangian,
    Coupling, LagrangianReference, PotentialChoice,
};
use z22susy::calculus::{verify_structure_constants, Operator};
use z22susy::dmodule::{compare_matrices, matrices, verify_matrix_relations};
use z22susy::graded::coeff::parse_rational;
use z22susy::graded::{parse_expr, Coeff, DegreeInfo, Expr, Field, Space};
use z22susy::jet::divergence;
use z22susy::potential::{closed_form, Potential, DEFAULT_TRUNCATION};
use z22susy::sim::*;
use z22susy::superfield::{closure_check, compare_tables, induced_variation, Stage};
use z22susy::variational::*;

const KNOWN_FAILURES: [u32; 3] = [4, 7, 8];

type Criterion = (u32, &'static str, u64, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn p(s: &str) -> Expr {
    parse_expr(s, Space::X).unwrap()
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn homogeneous(e: &Expr) -> bool {
    !matches!(e.degree(), DegreeInfo::Inhomogeneous)
}

fn c1_structure_constants() -> Outcome {
    let relations = verify_structure_constants();
    let failed: Vec<String> = relations.iter().filter(|r| !r.ok()).map(|r| r.relation.clone()).collect();
    let mut closure_failed = Vec::new();
    let mut closures = 0;
    for (k, a) in Operator::SYMMETRIES.iter().enumerate() {
        for b in &Operator::SYMMETRIES[k..] {
            closures += 1;
            if !closure_check(*a, *b).map(|c| c.ok).unwrap_or(false) {
                closure_failed.push(format!("{}{}", a.name(), b.name()));
            }
        }
    }
    Outcome {
        pass: failed.is_empty() && closure_failed.is_empty(),
        detail: format!(
            "{}/{} operator identities, {}/{} component closures; failing {:?} {:?}",
            relations.len() - failed.len(),
            relations.len(),
            closures - closure_failed.len(),
            closures,
            failed,
            closure_failed
        ),
    }
}

fn c2_tables() -> Outcome {
    match compare_tables() {
        Ok(entries) => {
            let bad: Vec<String> = entries
                .iter()
                .filter(|e| !e.matches)
                .map(|e| format!("{:?} {} {}", e.stage, e.symmetry, e.field))
                .collect();
            Outcome {
                pass: entries.len() == 80 && bad.is_empty(),
                detail: format!("{}/{} entries match; failing {:?}", entries.len() - bad.len(), entries.len(), bad),
            }
        }
        Err(e) => Outcome { pass: false, detail: e.to_string() },
    }
}

fn c3_integration() -> Outcome {
    let y = |s: &str| parse_expr(s, Space::Y).unwrap();
    let got = integrate_superspace(&y("th10*th01*z*A00"));
    Outcome { pass: got == y("1/2*A00"), detail: format!("int(th10 th01 z A00) = {got}") }
}

fn c4_lagrangian() -> Outcome {
    use LagrangianReference::*;
    let raw = component_lagrangian(&PotentialChoice::Generic, false, DEFAULT_TRUNCATION, Coupling::Action).unwrap();
    let raw_elim = component_lagrangian(&PotentialChoice::Generic, true, DEFAULT_TRUNCATION, Coupling::Action).unwrap();
    let shown = reference_lagrangian(WithAuxiliaries);
    let shown_kinetic = shown.filter(|m| !m.contains(z22susy::graded::Gen::param(z22susy::graded::ParamKind::Alpha)));
    let shown_interaction = &shown - &shown_kinetic;
    let kinetic_ok = raw.kinetic == shown_kinetic;
    let half = (&Expr::int(2) * &raw.interaction) == shown_interaction;
    let literal = lagrangian_difference(&raw, WithAuxiliaries).is_zero();
    let literal_elim = lagrangian_difference(&raw_elim, Eliminated).is_zero();
    let printed = lagrangian_difference(&lagrangian(&PotentialChoice::Generic, false).unwrap(), WithAuxiliaries).is_zero();
    let printed_elim = lagrangian_difference(&lagrangian(&PotentialChoice::Generic, true).unwrap(), Eliminated).is_zero();
    Outcome {
        pass: literal && literal_elim,
        detail: format!(
            "action coupling: auxiliary form {}, eliminated form {}; kinetic sector {}, \
             interaction sector equals half the displayed one: {}; with alpha -> 2 alpha: auxiliary form {}, eliminated form {}",
            yes(literal),
            yes(literal_elim),
            if kinetic_ok { "matches" } else { "differs" },
            yes(half),
            yes(printed),
            yes(printed_elim)
        ),
    }
}

fn generic_setup() -> (Expr, Expr, BTreeMap<Field, Expr>) {
    let full = lagrangian(&PotentialChoice::Generic, false).unwrap().total();
    let (elim, aux) = auxiliary_solutions_generic().unwrap();
    (full, elim, aux)
}

fn c5_invariance() -> Outcome {
    let (full, elim, aux) = generic_setup();
    let mut bad = Vec::new();
    for op in Operator::SYMMETRIES {
        for (l, a, label) in [(&full, &BTreeMap::new(), "off-shell"), (&elim, &aux, "eliminated")] {
            let ok = match invariance(l, op, a) {
                Ok((dl, k)) => (&divergence(&k.k0, &k.k1) - &dl).is_zero(),
                Err(_) => false,
            };
            if !ok {
                bad.push(format!("{} {}", op.name(), label));
            }
        }
    }
    Outcome {
        pass: bad.is_empty(),
        detail: format!("{}/10 variations are exact divergences; failing {:?}", 10 - bad.len(), bad),
    }
}

fn c6_currents() -> Outcome {
    let (_, elim, aux) = generic_setup();
    let eom = euler_lagrange(&elim).unwrap();
    let mut pass = true;
    let mut parts = Vec::new();
    for op in Operator::SYMMETRIES {
        let c = noether_current(&elim, op, &aux).unwrap();
        let conserved = check_conservation(&c, &eom).conserved;
        let (r0, r1) = reference_current(op).unwrap();
        let m = compare_current(&c, &r0, &r1);
        pass &= conserved && m.ok();
        let how = match &m {
            CurrentMatch::Exact { factor } => format!("exact x({})", coeff(factor)),
            CurrentMatch::Improvement { factor, .. } => format!("improvement x({})", coeff(factor)),
            CurrentMatch::Mismatch { .. } => "mismatch".into(),
        };
        parts.push(format!("{} {} conserved={}", op.name(), how, yes(conserved)));
    }
    Outcome { pass, detail: parts.join("; ") }
}

fn coeff(f: &[String; 2]) -> Coeff {
    Coeff::new(parse_rational(&f[0]).unwrap(), parse_rational(&f[1]).unwrap())
}

fn c7_dmodule() -> Outcome {
    let printed = matrices(false).unwrap();
    let relations = verify_matrix_relations(&printed);
    let closes = relations.iter().all(|r| r.holds);
    let comparison = compare_matrices().unwrap();
    let differing: Vec<String> = comparison
        .iter()
        .filter(|c| !c.matches)
        .map(|c| format!("{} ({} entries)", c.generator, c.differences.len()))
        .collect();
    let derived_fail: Vec<String> = matrices(true)
        .map(|m| verify_matrix_relations(&m).into_iter().filter(|r| !r.holds).map(|r| r.relation).collect())
        .unwrap_or_default();
    Outcome {
        pass: closes && differing.is_empty(),
        detail: format!(
            "displayed matrices close: {} ({} relations); derived differs from displayed for {:?}; \
             derived set fails {:?}",
            yes(closes),
            relations.len(),
            differing,
            derived_fail
        ),
    }
}

fn c8_examples() -> Outcome {
    let massive = Potential::massive();
    let lm = lagrangian(&PotentialChoice::Concrete(massive.clone()), true).unwrap();
    let massive_l = lagrangian_difference(&lm, LagrangianReference::Massive).is_zero();
    let em = euler_lagrange(&lm.total()).unwrap();
    let massive_eom = compare_equations(&em, &reference_equations(EomReference::Massive)).iter().all(|c| c.matches)
        && em.solved_forms[&solved_jet(Field::Phi00)] == p("phi00_xx - alpha^2*phi00")
        && em.solved_forms[&solved_jet(Field::Phi11)] == p("phi11_xx - alpha^2*phi11");

    let cos = closed_form(&Potential::Cos, Space::X);
    let cos_potentials = cos.v00 == p("-sin_phi00*cos_phi11") && cos.v11 == p("-cos_phi00*sin_phi11");
    let lc = lagrangian(&PotentialChoice::Concrete(Potential::Cos), true).unwrap();
    let cos_l = lagrangian_difference(&lc, LagrangianReference::Cosine).is_zero();
    let ec = euler_lagrange(&lc.total()).unwrap();
    let cmp = compare_equations(&ec, &reference_equations(EomReference::Cosine));
    let cos_eom_bad: Vec<String> = cmp.iter().filter(|c| !c.matches).map(|c| c.field.clone()).collect();
    let bosonic_parts = cmp
        .iter()
        .filter(|c| c.field.starts_with("phi"))
        .all(|c| restrict(&c.difference, &[Field::Psi10, Field::Lambda10, Field::Psi01, Field::Lambda01]).is_zero());

    let sg = |f: Field, u: &str| {
        reduced_equation(&ec, f) == Some(p(&format!("{u}_xx - alpha^2*sin_{u}*cos_{u}")))
            && restriction_consistent(&ec, f)
    };
    let sine_gordon = sg(Field::Phi00, "phi00") && sg(Field::Phi11, "phi11");
    Outcome {
        pass: massive_l && massive_eom && cos_potentials && cos_l && cos_eom_bad.is_empty() && sine_gordon,
        detail: format!(
            "massive Lagrangian {}, massive EOM {}; cos potentials {}, cos Lagrangian {}, \
             coupled cos EOM differ in {:?} (bosonic parts agree: {}); sine-Gordon reductions {}",
            yes(massive_l),
            yes(massive_eom),
            yes(cos_potentials),
            yes(cos_l),
            cos_eom_bad,
            yes(bosonic_parts),
            yes(sine_gordon)
        ),
    }
}

fn c9_numeric() -> Outcome {
    let budget = Duration::from_secs(60);
    let mut slow = Vec::new();
    let mut timed = |label: &str, f: &dyn Fn() -> Trajectory| {
        let t = Instant::now();
        let traj = f();
        if t.elapsed() > budget {
            slow.push(label.to_string());
        }
        traj
    };
    // (a)
    let errors: Vec<f64> = [0.1, 0.05, 0.025]
        .iter()
        .map(|dx| {
            let cfg = SimConfig { t_end: 5.0, ..SimConfig::new(1.0, *dx) };
            let traj = timed("a", &|| run(&cfg).unwrap());
            l2_error(&traj.final_state.phi00, &cfg, |x| kink(1.0, x, 0.0, 0.0, 0.0).0)
        })
        .collect();
    let ratios: Vec<f64> = errors.windows(2).map(|w| w[0] / w[1]).collect();
    let a = ratios.iter().all(|r| (3.5..=4.5).contains(r));
    // (b)
    let cfg = SimConfig {
        dt: 0.02,
        t_end: 100.0,
        x_min: -30.0,
        x_max: 30.0,
        initial: Profile::Kink { x0: 0.0, v: 0.5, field: Target::Phi00 },
        ..SimConfig::new(1.0, 0.05)
    };
    let drift = timed("b", &|| run(&cfg).unwrap()).relative_energy_drift();
    let b = drift < 1e-5;
    // (c)
    let cfg = SimConfig {
        dt: 0.02,
        t_end: 40.0,
        x_min: -40.0,
        x_max: 40.0,
        initial: Profile::Kink { x0: -10.0, v: 0.5, field: Target::Phi00 },
        ..SimConfig::new(1.0, 0.05)
    };
    let traj = timed("c", &|| run(&cfg).unwrap());
    let pos = crossing(&traj.final_state.phi00, &cfg, std::f64::consts::FRAC_PI_2).unwrap_or(f64::NAN);
    let c = (pos - 10.0).abs() < cfg.dx;
    // (d)
    let cfg = SimConfig {
        dt: 0.02,
        t_end: 20.0,
        initial: Profile::TwoFieldKink { x0: 1.0, v: 0.3 },
        ..SimConfig::new(1.0, 0.05)
    };
    let traj = timed("d", &|| run(&cfg).unwrap());
    let asym = traj
        .final_state
        .phi00
        .iter()
        .zip(&traj.final_state.phi11)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);
    let d = asym < 1e-12;
    Outcome {
        pass: a && b && c && d && slow.is_empty(),
        detail: format!(
            "(a) error ratios {:.3?} {}; (b) drift {:.2e} {}; (c) kink at {:.4} vs 10 {}; (d) asymmetry {:.1e} {}; over budget {:?}",
            ratios,
            yes(a),
            drift,
            yes(b),
            pos,
            yes(c),
            asym,
            yes(d),
            slow
        ),
    }
}

fn c10_audits() -> Outcome {
    let mut bad = Vec::new();
    let choices = [
        ("generic", PotentialChoice::Generic, false),
        ("generic eliminated", PotentialChoice::Generic, true),
        ("massive", PotentialChoice::Concrete(Potential::massive()), true),
        ("cos", PotentialChoice::Concrete(Potential::Cos), true),
    ];
    for (label, choice, elim) in choices {
        let a = audit(&lagrangian(&choice, elim).unwrap());
        if !(a.degree_00 && a.star_real) {
            bad.push(format!("L {label}"));
        }
    }
    let (_, elim, aux) = generic_setup();
    for op in Operator::SYMMETRIES {
        let (r0, r1) = reference_current(op).unwrap();
        if !(r0.is_star_real() && r1.is_star_real() && homogeneous(&r0) && homogeneous(&r1)) {
            bad.push(format!("displayed current {}", op.name()));
        }
        let c = noether_current(&elim, op, &aux).unwrap();
        let phased = |e: &Expr| e.is_star_real() || (&Expr::i() * e).is_star_real();
        if !(phased(&c.j0) && phased(&c.j1) && homogeneous(&c.j0) && homogeneous(&c.j1)) {
            bad.push(format!("derived current {}", op.name()));
        }
    }
    let mut entries = 0;
    for stage in [Stage::Pre, Stage::Post] {
        for op in Operator::SYMMETRIES {
            for (f, e) in induced_variation(op, stage, 0).unwrap() {
                entries += 1;
                if !(e.is_star_real() && homogeneous(&e)) {
                    bad.push(format!("{stage:?} {} {}", op.name(), f.name()));
                }
            }
        }
    }
    Outcome {
        pass: bad.is_empty(),
        detail: format!("4 Lagrangians, 10 displayed and derived currents, {entries} table entries; failing {bad:?}"),
    }
}

fn main() {
    let criteria: [Criterion; 10] = [
        (1, "structure constants", 5, c1_structure_constants),
        (2, "transformation tables", 10, c2_tables),
        (3, "integration map", 5, c3_integration),
        (4, "Lagrangian derivation", 30, c4_lagrangian),
        (5, "invariance", 60, c5_invariance),
        (6, "Noether currents", 60, c6_currents),
        (7, "D-module", 5, c7_dmodule),
        (8, "examples", 10, c8_examples),
        (9, "numerics", 240, c9_numeric),
        (10, "reality and degree audits", 5, c10_audits),
    ];
    let mut unexpected = Vec::new();
    for (n, name, budget, f) in criteria {
        let t = Instant::now();
        let mut o = f();
        let elapsed = t.elapsed();
        if elapsed > Duration::from_secs(budget) {
            o.pass = false;
            o.detail.push_str(&format!("; exceeded {budget} s"));
        }
        let status = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {n}: {status} {name} [{:.2} s] {}", elapsed.as_secs_f64(), o.detail);
        if !o.pass && !KNOWN_FAILURES.contains(&n) {
            unexpected.push(n);
        }
    }
    if unexpected.is_empty() {
        println!("acceptance: no unexpected failures (known failures: {KNOWN_FAILURES:?})");
    } else {
        println!("acceptance: unexpected failures in criteria {unexpected:?}");
        std::process::exit(1);
    }
}
