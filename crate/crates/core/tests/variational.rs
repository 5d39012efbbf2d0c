use std::collections::BTreeMap;

use z22susy::action::{auxiliary_solutions, lagrangian, PotentialChoice};
use z22susy::calculus::Operator;
use z22susy::graded::{parse_expr, Expr, Field, Space};
use z22susy::potential::Potential;
use z22susy::variational::*;

fn p(s: &str) -> Expr {
    parse_expr(s, Space::X).unwrap()
}

fn generic() -> (Expr, BTreeMap<Field, Expr>) {
    let full = lagrangian(&PotentialChoice::Generic, false).unwrap().total();
    let aux = auxiliary_solutions(&full).unwrap();
    (lagrangian(&PotentialChoice::Generic, true).unwrap().total(), aux)
}

fn eom_for(choice: PotentialChoice) -> EomSystem {
    euler_lagrange(&lagrangian(&choice, true).unwrap().total()).unwrap()
}

#[test]
fn generic_equations_match_display() {
    let eom = eom_for(PotentialChoice::Generic);
    for c in compare_equations(&eom, &reference_equations(EomReference::Generic)) {
        assert!(c.matches, "{} differs by {}", c.field, c.difference);
    }
}

#[test]
fn massive_model_is_free_with_mass_alpha() {
    let eom = eom_for(PotentialChoice::Concrete(Potential::massive()));
    for c in compare_equations(&eom, &reference_equations(EomReference::Massive)) {
        assert!(c.matches, "{} differs by {}", c.field, c.difference);
    }
    assert_eq!(eom.solved_forms[&solved_jet(Field::Phi00)], p("phi00_xx - alpha^2*phi00"));
    assert_eq!(eom.solved_forms[&solved_jet(Field::Phi11)], p("phi11_xx - alpha^2*phi11"));
}

#[test]
fn cosine_display_differs_only_in_fermion_couplings() {
    let eom = eom_for(PotentialChoice::Concrete(Potential::Cos));
    let cmp = compare_equations(&eom, &reference_equations(EomReference::Cosine));
    for c in &cmp {
        assert!(!c.matches);
        let fermions = [Field::Psi10, Field::Lambda10, Field::Psi01, Field::Lambda01];
        let bosonic_part = restrict(&c.difference, &fermions);
        assert!(bosonic_part.is_zero(), "{}: {}", c.field, c.difference);
    }
}

#[test]
fn sine_gordon_reductions() {
    let eom = eom_for(PotentialChoice::Concrete(Potential::Cos));
    // sin 2u = 2 sin u cos u
    assert_eq!(reduced_equation(&eom, Field::Phi00).unwrap(), p("phi00_xx - alpha^2*sin_phi00*cos_phi00"));
    assert_eq!(reduced_equation(&eom, Field::Phi11).unwrap(), p("phi11_xx - alpha^2*sin_phi11*cos_phi11"));
    assert!(restriction_consistent(&eom, Field::Phi00));
    assert!(restriction_consistent(&eom, Field::Phi11));
}

#[test]
fn off_shell_invariance_with_auxiliaries() {
    let full = lagrangian(&PotentialChoice::Generic, false).unwrap().total();
    for op in Operator::SYMMETRIES {
        let (dl, k) = invariance(&full, op, &BTreeMap::new()).unwrap();
        assert_eq!(z22susy::jet::divergence(&k.k0, &k.k1), dl);
        assert!(z22susy::jet::is_null_lagrangian(&dl), "{}", op.name());
    }
}

#[test]
fn all_currents_conserved_and_match_reference() {
    let (l, aux) = generic();
    let eom = euler_lagrange(&l).unwrap();
    let expected = [
        (Operator::H, "-1/2", false),
        (Operator::Z, "-1", true),
        (Operator::Q10, "-i", true),
        (Operator::Q01, "-i", true),
        (Operator::L11, "-1", false),
    ];
    for (op, factor, improvement) in expected {
        let j = noether_current(&l, op, &aux).unwrap();
        let report = check_conservation(&j, &eom);
        assert!(report.conserved, "{}: {}", op.name(), report.residual);
        let (r0, r1) = reference_current(op).unwrap();
        let m = compare_current(&j, &r0, &r1);
        let f = match &m {
            CurrentMatch::Exact { factor } => {
                assert!(!improvement, "{}", op.name());
                factor.clone()
            }
            CurrentMatch::Improvement { factor, .. } => {
                assert!(improvement, "{}", op.name());
                factor.clone()
            }
            CurrentMatch::Mismatch { .. } => panic!("{}: {m:?}", op.name()),
        };
        let c = p(factor).leading().map(|(_, c)| c.to_strings()).unwrap();
        assert_eq!(f, c, "{}", op.name());
    }
}

#[test]
fn perturbed_current_is_not_conserved() {
    let (l, aux) = generic();
    let eom = euler_lagrange(&l).unwrap();
    let j = noether_current(&l, Operator::Q10, &aux).unwrap();
    let broken = Current { j1: &j.j1 + &p("phi00"), ..j };
    let r = check_conservation(&broken, &eom);
    assert!(!r.conserved);
    assert_eq!(r.residual, p("phi00_x"));
}

#[test]
fn currents_are_homogeneous_and_real_up_to_phase() {
    let (l, aux) = generic();
    for op in Operator::SYMMETRIES {
        let j = noether_current(&l, op, &aux).unwrap();
        let (r0, r1) = reference_current(op).unwrap();
        for (d, r) in [(&j.j0, &r0), (&j.j1, &r1)] {
            assert_eq!(d.homogeneous_degree(), r.homogeneous_degree());
            assert!(r.is_star_real(), "{}", op.name());
        }
    }
}
