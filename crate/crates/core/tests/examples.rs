//! Small hand-checked scenarios, one per behaviour.

use inqbq::logic::{entails, equivalent, id_entails_via_translation, valid, SearchConfig, Verdict};
use inqbq::models::{
    canonical_full_extension, canonical_full_model, is_full, pair_world, quotient_id_model, relation_of_state,
    world_structure, ModelBuilder, ModelError, State, StructureBuilder,
};
use inqbq::paperlab::{build_chi, build_eta, build_rho, build_theta, verify_support_truth};
use inqbq::semantics::{denote_term, supports, tarski_eval, truth_at, Assignment, EvalConfig};
use inqbq::syntax::{parse_formula, parse_term, print_formula, Formula, Signature, Term};

fn pred_signature() -> Signature {
    Signature::builder().predicate("P", 1).build().unwrap()
}

fn exhausted(v: &Verdict) -> bool {
    matches!(v, Verdict::ExhaustedBounds { .. })
}

#[test]
fn question_and_derived_forms_desugar() {
    let sig = pred_signature();
    let px = Formula::atom("P", vec![Term::var("x")]);
    let q = parse_formula("?P(x)", &sig).unwrap();
    assert_eq!(q, Formula::inq_disj(px.clone(), Formula::implies(px.clone(), Formula::bottom())));
    assert_eq!(print_formula(&parse_formula("_|_", &sig).unwrap()), "_|_");
    assert!(!build_eta().is_classical());
    assert!(!q.is_classical());
    let scoped = parse_formula("P(x) -> iexists x. P(x)", &sig).unwrap();
    assert_eq!(scoped.free_vars().into_iter().collect::<Vec<_>>(), ["x"]);
    assert!(parse_formula("forall x. P(x)", &sig).unwrap().free_vars().is_empty());
    assert_eq!(print_formula(&build_theta()), "iexists x. iexists y. ~(x = a & y = b)");
}

#[test]
fn equality_must_be_a_congruence() {
    let sig = pred_signature();
    let mut b = ModelBuilder::new(&sig, 1, 2);
    b.identify(0, 0, 1).unwrap().fact(0, "P", &[0]).unwrap();
    assert!(matches!(b.build(), Err(ModelError::Congruence { .. })));
    b.fact(0, "P", &[1]).unwrap();
    let m = b.build().unwrap();
    assert!(!m.is_id_model());
    assert_eq!(world_structure(&m, 0).domain_size(), 1);
    let q = quotient_id_model(&m, m.full_state()).unwrap();
    assert!(q.model.is_id_model());
    assert_eq!(q.model.domain_size(), 1);
}

#[test]
fn canonical_worlds_interpret_the_constants() {
    let m = canonical_full_model(2).unwrap();
    assert_eq!(m.num_worlds(), 4);
    let w = pair_world(0, 1, 2);
    assert_eq!(m.constant_at(w, "a").unwrap(), 0);
    assert_eq!(m.constant_at(w, "b").unwrap(), 1);
    assert_eq!(canonical_full_model(1).unwrap().num_worlds(), 1);
    assert_eq!(relation_of_state(&m, State::from_worlds([w])).unwrap().into_iter().collect::<Vec<_>>(), [(0, 1)]);
    assert!(relation_of_state(&m, State::EMPTY).unwrap().is_empty());
}

#[test]
fn deleting_a_world_breaks_fullness() {
    let sig = Signature::two_constants();
    // the three pairs other than (1,1)
    let pairs = [(0, 0), (0, 1), (1, 0)];
    let mut b = ModelBuilder::new(&sig, pairs.len(), 2);
    for (w, &(d, e)) in pairs.iter().enumerate() {
        b.constant(w, "a", d).unwrap().constant(w, "b", e).unwrap();
    }
    let m = b.build().unwrap();
    assert!(!is_full(&m).unwrap());
    assert!(supports(&m, m.full_state(), &Assignment::new(), &build_theta()).unwrap());

    let mut b = ModelBuilder::new(&sig, 1, 2);
    b.constant(0, "a", 0).unwrap().constant(0, "b", 1).unwrap();
    let single = b.build().unwrap();
    assert!(!is_full(&single).unwrap());
    assert!(supports(&single, single.full_state(), &Assignment::new(), &build_theta()).unwrap());
    assert!(supports(&single, State::EMPTY, &Assignment::new(), &build_theta()).unwrap());
}

#[test]
fn full_extension_restricts_back_to_the_structure() {
    let sig = pred_signature();
    let mut sb = StructureBuilder::new(&sig, 2);
    sb.fact("P", &[1]).unwrap();
    let s = sb.build().unwrap();
    let m = canonical_full_extension(&s).unwrap();
    assert_eq!(m.num_worlds(), 4);
    assert!(is_full(&m).unwrap());
    for w in 0..m.num_worlds() {
        assert_eq!(world_structure(&m, w).reduct(&sig).unwrap(), s);
    }
}

#[test]
fn terms_denote_through_tables() {
    let sig = Signature::builder().constant("a").function("f", 1, false).build().unwrap();
    let n = 3;
    let mut b = ModelBuilder::new(&sig, 2, n);
    b.constant(0, "a", 0).unwrap().constant(1, "a", 2).unwrap();
    for d in 0..n {
        b.function_everywhere("f", &[d], (d + 1) % n).unwrap();
    }
    let m = b.build().unwrap();
    let fa = parse_term("f(a)", &sig).unwrap();
    assert_eq!(denote_term(&m, 0, &Assignment::new(), &fa).unwrap(), 1);
    assert_eq!(denote_term(&m, 1, &Assignment::new(), &fa).unwrap(), 0);
    let g = Assignment::new().with("x", 2);
    assert_eq!(denote_term(&m, 1, &g, &Term::var("x")).unwrap(), 2);
}

#[test]
fn uniform_extension_settles_the_universal_question() {
    let sig = pred_signature();
    let mut b = ModelBuilder::new(&sig, 2, 2);
    b.fact(0, "P", &[0]).unwrap();
    let m = b.build().unwrap();
    let f = parse_formula("forall x. ?P(x)", &sig).unwrap();
    let g = Assignment::new();
    assert!(!supports(&m, m.full_state(), &g, &f).unwrap());
    assert!(supports(&m, State::from_worlds([0]), &g, &f).unwrap());
    assert!(supports(&m, State::EMPTY, &g, &f).unwrap());

    let pc = parse_formula("?P(c)", &sig.with_constants(&["c"]).unwrap()).unwrap();
    let mut b = ModelBuilder::new(&sig.with_constants(&["c"]).unwrap(), 2, 2);
    b.fact(0, "P", &[0]).unwrap().constant(0, "c", 0).unwrap().constant(1, "c", 0).unwrap();
    let m = b.build().unwrap();
    assert!((0..2).all(|w| truth_at(&m, w, &g, &pc).unwrap()));
    assert!(!supports(&m, m.full_state(), &g, &pc).unwrap());
    assert!(!(0..2).any(|w| truth_at(&m, w, &g, &Formula::bottom()).unwrap()));
}

#[test]
fn tarskian_examples() {
    let sig = pred_signature();
    let empty = StructureBuilder::new(&sig, 2).build().unwrap();
    let g = Assignment::new();
    assert!(!tarski_eval(&empty, &g, &parse_formula("exists x. P(x)", &sig).unwrap()).unwrap());
    assert!(tarski_eval(&empty, &g, &parse_formula("exists x. exists y. x != y", &sig).unwrap()).unwrap());

    let mut sb = StructureBuilder::new(&sig, 2);
    sb.fact("P", &[0]).unwrap().fact("P", &[1]).unwrap();
    let full = sb.build().unwrap();
    let eval = EvalConfig::default();
    let report = verify_support_truth(&full, &parse_formula("forall x. P(x)", &sig).unwrap(), &eval).unwrap();
    assert!(report.all_passed());
    assert!(verify_support_truth(&full, &Formula::bottom(), &eval).unwrap().all_passed());
}

#[test]
fn counting_sentences_match_domain_size() {
    assert!(build_chi(0).is_err());
    let sig = Signature::default();
    assert_eq!(build_chi(2).unwrap(), parse_formula("exists x1. exists x2. x1 != x2", &sig).unwrap());
    for d in 1..=3 {
        let m = canonical_full_model(d).unwrap();
        for n in 1..=4 {
            let chi = build_chi(n).unwrap();
            assert!(chi.is_classical());
            assert_eq!(supports(&m, m.full_state(), &Assignment::new(), &chi).unwrap(), d >= n, "|D|={d} n={n}");
        }
    }
}

#[test]
fn rigidity_of_equality() {
    let sig = Signature::default();
    let rho = build_rho();
    let id = SearchConfig::new(3, 3).id_only(true);
    assert!(exhausted(&valid(&sig, &rho, &id).unwrap()));
    let general = valid(&sig, &rho, &SearchConfig::new(3, 3)).unwrap();
    let cm = general.countermodel().expect("equality can vary");
    assert!(!cm.model.is_id_model());
    assert!(!supports(&cm.model, cm.state, &cm.assignment, &rho).unwrap());

    let mut b = ModelBuilder::new(&sig, 2, 2);
    b.identify(1, 0, 1).unwrap();
    let m = b.build().unwrap();
    assert!(!supports(&m, m.full_state(), &Assignment::new(), &rho).unwrap());
    assert!(supports(&m, State::EMPTY, &Assignment::new(), &rho).unwrap());
    assert!(supports(&m, State::from_worlds([1]), &Assignment::new(), &rho).unwrap());
}

#[test]
fn entailment_and_validity_examples() {
    let sig = pred_signature().with_constants(&["c"]).unwrap();
    let p = |t: &str| parse_formula(t, &sig).unwrap();
    let cfg = SearchConfig::new(3, 3);
    assert!(exhausted(&entails(&sig, &[], &p("~_|_"), &cfg).unwrap()));
    assert!(exhausted(&valid(&sig, &p("?(c = c)"), &cfg).unwrap()));
    let v = entails(&sig, &[p("exists x. P(x)")], &p("iexists x. P(x)"), &cfg).unwrap();
    let cm = v.countermodel().unwrap();
    assert_eq!((cm.model.num_worlds(), cm.model.domain_size()), (2, 2));
    assert!(supports(&cm.model, cm.state, &cm.assignment, &p("exists x. P(x)")).unwrap());
    assert!(!supports(&cm.model, cm.state, &cm.assignment, &p("iexists x. P(x)")).unwrap());
}

#[test]
fn lambda_and_mu_agree_only_on_id_models() {
    let sig = Signature::builder().constant("a").build().unwrap();
    let lam = parse_formula("lam(a)", &sig).unwrap();
    let mu = parse_formula("mu(a)", &sig).unwrap();
    assert!(exhausted(&equivalent(&sig, &lam, &mu, &SearchConfig::new(3, 3).id_only(true)).unwrap()));
    let v = equivalent(&sig, &lam, &mu, &SearchConfig::new(3, 3)).unwrap();
    let cm = v.countermodel().unwrap();
    let g = &cm.assignment;
    assert_ne!(supports(&cm.model, cm.state, g, &lam).unwrap(), supports(&cm.model, cm.state, g, &mu).unwrap());
    assert!(exhausted(&equivalent(&sig, &lam, &lam, &SearchConfig::new(2, 2)).unwrap()));
}

#[test]
fn finiteness_sentences_fail_to_entail_theta() {
    let sig = Signature::two_constants();
    let premises = [build_eta(), build_chi(1).unwrap()];
    let cfg = SearchConfig::new(4, 2).id_only(true);
    let direct = entails(&sig, &premises, &build_theta(), &cfg).unwrap();
    let translated = id_entails_via_translation(&sig, &premises, &build_theta(), &cfg).unwrap();
    for v in [&direct, &translated] {
        let cm = v.countermodel().expect("a finite full model");
        for f in &premises {
            assert!(supports(&cm.model, cm.state, &cm.assignment, f).unwrap());
        }
        assert!(!supports(&cm.model, cm.state, &cm.assignment, &build_theta()).unwrap());
    }
    assert!(exhausted(&id_entails_via_translation(&sig, &[], &build_rho(), &SearchConfig::new(2, 2)).unwrap()));
}
