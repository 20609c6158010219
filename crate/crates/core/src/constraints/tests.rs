use super::*;
use crate::bordism::{cp_class, product};
use crate::graded::{parse_monomial, parse_polynomial};
use crate::linalg::q;

fn bso(d: u32, s: &str) -> Monomial {
    parse_monomial(s, GeneratorSystem::Bso(d)).unwrap()
}

fn pm(s: &str) -> Monomial {
    parse_monomial(s, GeneratorSystem::P).unwrap()
}

fn seq(d: u32, parts: &[&str]) -> KappaSequence {
    KappaSequence::new(parts.iter().map(|s| bso(d, s)).collect())
}

#[test]
fn sequences_small_cases() {
    assert_eq!(kappa_sequences(2, 2).unwrap(), vec![seq(2, &["e^2"])]);
    let mut expected = vec![seq(2, &["e^3"]), seq(2, &["e^2", "e^2"])];
    expected.sort();
    assert_eq!(kappa_sequences(2, 4).unwrap(), expected);
    assert!(kappa_sequences(4, 1).unwrap().is_empty());
    assert!(kappa_sequences(2, 0).is_err());
}

#[test]
fn sequences_have_the_right_degree() {
    for (d, p) in [(2, 6), (4, 4), (6, 8), (5, 6)] {
        let all = kappa_sequences(d, p).unwrap();
        assert!(!all.is_empty());
        for s in &all {
            assert_eq!(s.kappa_degree(d), Some(p));
        }
        let mut dedup = all.clone();
        dedup.dedup();
        assert_eq!(dedup.len(), all.len());
    }
}

#[test]
fn kappa_expansion() {
    let ph2 = parse_polynomial("ph2", None).unwrap();
    let two = expand_kappa(&ph2, 2).unwrap();
    assert_eq!(two.len(), 1);
    assert_eq!(two[&seq(2, &["e^4"])], q(1));

    let four = expand_kappa(&ph2, 4).unwrap();
    assert_eq!(four.len(), 2);
    assert_eq!(four[&seq(4, &["p1^2"])], q(1));
    assert_eq!(four[&seq(4, &["e^2"])], q(-2));

    assert!(expand_kappa(&GradedPolynomial::zero(GeneratorSystem::Ph), 4)
        .unwrap()
        .is_empty());
    let ph1 = parse_polynomial("ph1", None).unwrap();
    assert!(expand_kappa(&ph1, 4).is_err());
}

#[test]
fn middle_term_against_projective_space() {
    let system = build_system(8, 4, &cp_class(4)).unwrap();
    let x = parse_polynomial("ph1*ph2", None).unwrap();
    let c = system.iter().find(|c| c.label == x).expect("ph1*ph2 is in AP");
    assert_eq!(c.e_coeffs.len(), 2);
    assert_eq!(c.e_coeffs[&pm("p1^3")], q(1));
    assert_eq!(c.e_coeffs[&pm("p1*p2")], q(-2));
    assert_eq!(c.b_coeffs.len(), 1);
    assert_eq!(c.b_coeffs[&pm("p1")], q(-5));
    assert!(c.kappa_coeffs.keys().all(|s| s.len() == 1));
    assert_eq!(c.constant, q(0));

    let base = cp_class(2);
    let zero_k = KappaFunctional::zero(8, 4);
    assert_eq!(c.other_side(&base, &zero_k), q(15));
}

#[test]
fn primitive_class_has_no_middle_term() {
    let system = build_system(2, 6, &cp_class(1)).unwrap();
    let x = parse_polynomial("ph2", None).unwrap();
    let c = system.iter().find(|c| c.label == x).unwrap();
    assert!(c.b_coeffs.is_empty());
    assert_eq!(c.kappa_coeffs.len(), 1);
    assert_eq!(c.kappa_coeffs[&seq(2, &["e^4"])], q(-1));
    assert!(build_system(2, 1, &cp_class(1)).unwrap().is_empty());
}

#[test]
fn system_size_matches_ap_dimension() {
    for (d, p) in [(2, 2), (2, 6), (4, 4), (6, 6), (8, 8)] {
        let f = BordismClassQ::zero(d);
        let n = build_system(d, p, &f).unwrap().len();
        assert_eq!(n, ap_basis_monomial(d, p + d).unwrap().dim());
    }
    assert!(build_system(4, 4, &cp_class(3)).is_err());
}

#[test]
fn trivial_bundles_are_feasible() {
    for d in [2, 6, 8] {
        for p in [4, 8] {
            let f = cp_class(d / 2);
            let b = cp_class(p / 2);
            let problem = FeasibilityProblem::trivial_bundle(&f, &b).unwrap();
            let verdict = check_feasibility(&problem).unwrap();
            assert!(verdict.satisfied, "d={d} p={p}: {:?}", verdict.violations);
        }
    }
}

#[test]
fn perturbation_is_detected() {
    let f = cp_class(4);
    let b = cp_class(2);
    let problem = FeasibilityProblem::trivial_bundle(&f, &b).unwrap();
    let system = build_system(8, 4, &f).unwrap();
    let mut visible: Vec<Monomial> = system
        .iter()
        .flat_map(|c| c.e_coeffs.keys().cloned())
        .collect();
    visible.sort();
    visible.dedup();
    assert!(!visible.is_empty());
    for m in visible {
        let mut bumped = problem.clone();
        bumped.total = BordismClassQ::from_fn(12, |n| {
            problem.total.number(n) + if *n == m { q(1) } else { q(0) }
        });
        let verdict = check_feasibility(&bumped).unwrap();
        assert!(!verdict.satisfied);
        for v in &verdict.violations {
            assert_ne!(v.lhs, v.rhs);
            let c = system.iter().find(|c| c.label == v.x).unwrap();
            assert!(c.e_coeffs.contains_key(&m));
        }
    }
}

#[test]
fn vacuous_when_ap_is_empty() {
    let f = BordismClassQ::zero(2);
    let problem = FeasibilityProblem::new(
        f,
        BordismClassQ::zero(5),
        BordismClassQ::zero(3),
        KappaFunctional::zero(2, 3),
    )
    .unwrap();
    assert!(check_feasibility(&problem).unwrap().satisfied);
}

#[test]
fn solving_for_total_space() {
    let (d, p) = (6, 6);
    let f = BordismClassQ::zero(6);
    let b = BordismClassQ::zero(6);
    let mut kappa = KappaFunctional::zero(d, p);
    for (i, s) in kappa_sequences(d, p).unwrap().into_iter().enumerate() {
        kappa.set(s, q(i as i64 + 1)).unwrap();
    }
    let mut partial = PartialProblem::unknown(d, p, f).unwrap();
    partial.fix_base(&b).unwrap();
    partial.fix_kappa(&kappa).unwrap();
    let family = solve_for(&partial).unwrap();

    let h = monomial_basis(GeneratorSystem::P, d + p).len();
    let ap = ap_basis_monomial(d, d + p).unwrap();
    assert_eq!(family.unknowns.len(), h);
    assert_eq!(family.dimension(), h - ap.dim());

    // every solution satisfies the check and fixes <x, e> for x in AP
    let system = build_system(d, p, &partial.fibre).unwrap();
    for t in 0..3 {
        let params: Vec<Rational> = (0..family.dimension()).map(|i| q((i * t) as i64 - 2)).collect();
        let problem = partial.complete(&family.point(&params)).unwrap();
        assert!(check_feasibility(&problem).unwrap().satisfied);
        for c in &system {
            assert_eq!(c.total_side(&problem.total), c.other_side(&b, &kappa));
        }
    }
}

#[test]
fn solving_for_kappa_leaves_products_free() {
    let (d, p) = (2, 6);
    let f = cp_class(1);
    let b = cp_class(3);
    let mut partial = PartialProblem::unknown(d, p, f.clone()).unwrap();
    partial.fix_total(&product(&b, &f)).unwrap();
    partial.fix_base(&b).unwrap();
    let family = solve_for(&partial).unwrap();

    let single = Unknown::Kappa(seq(2, &["e^4"]));
    let pair = Unknown::Kappa(seq(2, &["e^2", "e^3"]));
    assert!(family.is_pinned(&single));
    assert_eq!(family.particular_value(&single), Some(&q(0)));
    assert!(!family.is_pinned(&pair));
}

#[test]
fn all_unknown_is_solvable() {
    for (d, p) in [(2, 2), (4, 4), (6, 2), (8, 4)] {
        let partial = PartialProblem::unknown(d, p, cp_class(d / 2)).unwrap();
        let family = solve_for(&partial).unwrap();
        let rows = build_system(d, p, &partial.fibre).unwrap().len();
        assert_eq!(family.dimension(), family.unknowns.len() - rows);
    }
}

#[test]
fn inconsistent_data_has_no_solution() {
    let f = cp_class(4);
    let b = cp_class(2);
    let mut total = product(&b, &f);
    total = &total + &BordismClassQ::from_fn(12, |m| if *m == pm("p1^3") { q(1) } else { q(0) });
    let mut partial = PartialProblem::unknown(8, 4, f).unwrap();
    partial.fix_total(&total).unwrap();
    partial.fix_base(&b).unwrap();
    partial.fix_kappa(&KappaFunctional::zero(8, 4)).unwrap();
    assert!(matches!(solve_for(&partial), Err(Error::NoSolution)));
}

#[test]
fn scaling_preserves_feasibility() {
    let f = BordismClassQ::zero(4);
    let b = cp_class(2);
    let mut partial = PartialProblem::unknown(4, 4, f.clone()).unwrap();
    partial.fix_base(&b).unwrap();
    let family = solve_for(&partial).unwrap();
    let params: Vec<Rational> = (0..family.dimension()).map(|i| q(i as i64)).collect();
    let problem = partial.complete(&family.point(&params)).unwrap();
    assert!(check_feasibility(&problem).unwrap().satisfied);

    let lambda = Rational::new(7.into(), 3.into());
    let scaled = FeasibilityProblem::new(
        f,
        problem.total.scale(&lambda),
        problem.base.scale(&lambda),
        problem.kappa.scale(&lambda),
    )
    .unwrap();
    assert!(check_feasibility(&scaled).unwrap().satisfied);
}

#[test]
fn problem_json_round_trip() {
    let f = cp_class(3);
    let b = cp_class(2);
    let mut problem = FeasibilityProblem::trivial_bundle(&f, &b).unwrap();
    problem.kappa.set(seq(6, &["p1*e"]), Rational::new(1.into(), 2.into())).unwrap();
    problem.kappa.set(seq(6, &["p1^2*e"]), q(1)).unwrap_err();
    let j = ProblemJson::from(&problem);
    let text = serde_json::to_string(&j).unwrap();
    let back: ProblemJson = serde_json::from_str(&text).unwrap();
    assert_eq!(back.to_feasibility().unwrap(), problem);

    let named: ProblemJson = serde_json::from_str(
        r#"{"d":8,"p":4,"fibre":"cp4","total":"cp2xcp4","base":"cp2"}"#,
    )
    .unwrap();
    assert!(check_feasibility(&named.to_feasibility().unwrap()).unwrap().satisfied);
    let holes: ProblemJson = serde_json::from_str(
        r#"{"d":8,"p":4,"fibre":"cp4","base":{"dim":4,"numbers":[{"monomial":[[1,1]],"value":null}]}}"#,
    )
    .unwrap();
    assert!(holes.to_feasibility().is_err());
    let partial = holes.to_partial().unwrap();
    assert_eq!(partial.base[&pm("p1")], None);
    assert!(partial.kappa.values().all(Option::is_none));
}
