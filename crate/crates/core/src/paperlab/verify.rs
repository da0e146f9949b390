use std::collections::BTreeSet;

use crate::logic::{fol_countermodel, valid, SearchConfig};
use crate::models::{
    canonical_full_extension, canonical_full_model, enumerate_models, is_full, relation_of_state, world_structure,
    EnumerationConfig, InfoModel, Pruning, State, Structure,
};
use crate::semantics::{tarski_eval, Assignment, EvalConfig, Evaluator, StateSet, MAX_LATTICE_WORLDS};
use crate::syntax::{parse_formula, Formula, Signature};
use crate::Error;

use super::report::{LemmaReport, Witness};
use super::sentences::{build_chi, build_eta, build_rho, build_theta};

/// Largest domain for which the canonical model's state lattice is checked.
pub const MAX_CANONICAL_DOMAIN: usize = 4;

fn canonical(n: usize) -> Result<InfoModel, Error> {
    if n > MAX_CANONICAL_DOMAIN || n * n > MAX_LATTICE_WORLDS {
        return Err(Error::Resource(format!(
            "canonical model with {n} individuals has {} worlds; at most {} individuals are supported",
            n * n,
            MAX_CANONICAL_DOMAIN
        )));
    }
    Ok(canonical_full_model(n)?)
}

fn support_set(m: &InfoModel, f: &Formula, eval: &EvalConfig) -> Result<StateSet, Error> {
    Ok(Evaluator::new(m, f, eval)?.support_set(&Assignment::new())?)
}

fn supports_full(m: &InfoModel, f: &Formula, eval: &EvalConfig) -> Result<bool, Error> {
    Ok(Evaluator::new(m, f, eval)?.supports(m.full_state(), &Assignment::new())?)
}

type Rel = BTreeSet<(usize, usize)>;

fn is_function(r: &Rel) -> bool {
    r.iter().zip(r.iter().skip(1)).all(|(p, q)| p.0 != q.0)
}

fn is_injective(r: &Rel) -> bool {
    let images: BTreeSet<usize> = r.iter().map(|p| p.1).collect();
    images.len() == r.len()
}

fn domain_of(r: &Rel) -> BTreeSet<usize> {
    r.iter().map(|p| p.0).collect()
}

fn range_of(r: &Rel) -> BTreeSet<usize> {
    r.iter().map(|p| p.1).collect()
}

/// For each state of each canonical model up to `max_domain` individuals,
/// compares four support facts with the corresponding properties of the
/// relation the state induces, then checks that no state falsifies `η`.
pub fn verify_rs_characterization(max_domain: usize, eval: &EvalConfig) -> Result<LemmaReport, Error> {
    if max_domain == 0 {
        return Err(Error::Precondition("max_domain must be at least 1".into()));
    }
    let sig = Signature::two_constants();
    let f = |t: &str| parse_formula(t, &sig).expect("fixed formula");
    let dep_ab = f("dep(a; b)");
    let dep_ba = f("dep(b; a)");
    let avoid_a = f("iexists x. x != a");
    let avoid_b = f("iexists x. x != b");
    let eta = build_eta();
    let mut report = LemmaReport::new("rs-characterization").param("max_domain", max_domain);
    for n in 1..=max_domain {
        let m = canonical(n)?;
        let full: BTreeSet<usize> = (0..n).collect();
        let sets = [&dep_ab, &dep_ba, &avoid_a, &avoid_b].map(|phi| support_set(&m, phi, eval));
        let [s_ab, s_ba, s_a, s_b] = sets;
        let (s_ab, s_ba, s_a, s_b) = (s_ab?, s_ba?, s_a?, s_b?);
        let s_eta = support_set(&m, &eta, eval)?;
        let mut falsifiers = 0;
        for s in State::all(m.num_worlds()) {
            let r = relation_of_state(&m, s)?;
            let checks = [
                ("function", &dep_ab, s_ab.contains(s), is_function(&r)),
                ("injective", &dep_ba, s_ba.contains(s), is_injective(&r)),
                ("total", &avoid_a, !s_a.contains(s), domain_of(&r) == full),
                ("not-surjective", &avoid_b, s_b.contains(s), range_of(&r) != full),
            ];
            for (what, phi, support_fact, relation_fact) in checks {
                // for `total` the support fact is a non-support
                let expected = if what == "total" { !relation_fact } else { relation_fact };
                report.check(format!("|D|={n} s={s} {what}"), support_fact == relation_fact, || {
                    Some(Witness::new(&m, s, phi, expected))
                });
            }
            if is_function(&r) && is_injective(&r) && domain_of(&r) == full && range_of(&r) != full {
                falsifiers += 1;
            }
        }
        let eta_everywhere = s_eta.is_all() && falsifiers == 0;
        let first_bad = s_eta.complement().first();
        report.check(format!("|D|={n} no state falsifies eta"), eta_everywhere, || {
            first_bad.map(|s| Witness::new(&m, s, &eta, true))
        });
    }
    Ok(report)
}

/// Over all id-models for `{a, b}` within the bounds: the full state
/// supports `θ` exactly when the model is not full.
pub fn verify_theta_fullness(
    max_worlds: usize,
    max_domain: usize,
    pruning: Pruning,
    eval: &EvalConfig,
) -> Result<LemmaReport, Error> {
    let theta = build_theta();
    let cfg = EnumerationConfig::new(max_worlds, max_domain).id_only(true).pruning(pruning);
    let mut report = LemmaReport::new("theta-fullness")
        .param("max_worlds", max_worlds)
        .param("max_domain", max_domain)
        .param("pruning", format!("{pruning:?}"));
    for (i, m) in enumerate_models(&Signature::two_constants(), &cfg)?.enumerate() {
        let supported = supports_full(&m, &theta, eval)?;
        let full = is_full(&m)?;
        let label = format!("model {i} |W|={} |D|={}", m.num_worlds(), m.domain_size());
        report.check(label, supported == !full, || Some(Witness::new(&m, m.full_state(), &theta, !full)));
    }
    for n in (1..=max_domain).filter(|n| n * n <= max_worlds && *n <= MAX_CANONICAL_DOMAIN) {
        let m = canonical(n)?;
        let ok = is_full(&m)? && !supports_full(&m, &theta, eval)?;
        report.check(format!("canonical |D|={n}"), ok, || Some(Witness::new(&m, m.full_state(), &theta, false)));
    }
    Ok(report)
}

/// With `k + 1` individuals the canonical model supports `χ1 … χk` and `η`
/// but not `θ`, nor `χ(k+2)`.
pub fn compactness_witness(k: usize, eval: &EvalConfig) -> Result<LemmaReport, Error> {
    let m = canonical(k + 1)?;
    let mut report = LemmaReport::new("compactness-witness").param("k", k).param("domain", k + 1);
    let full = m.full_state();
    for n in 1..=k {
        let chi = build_chi(n)?;
        let ok = supports_full(&m, &chi, eval)?;
        report.check(format!("chi{n} supported"), ok, || Some(Witness::new(&m, full, &chi, true)));
    }
    let too_many = build_chi(k + 2)?;
    let ok = !supports_full(&m, &too_many, eval)?;
    report.check(format!("chi{} not supported", k + 2), ok, || Some(Witness::new(&m, full, &too_many, false)));
    let eta = build_eta();
    let ok = supports_full(&m, &eta, eval)?;
    report.check("eta supported", ok, || Some(Witness::new(&m, full, &eta, true)));
    let theta = build_theta();
    let ok = !supports_full(&m, &theta, eval)?;
    report.check("theta not supported", ok, || Some(Witness::new(&m, full, &theta, false)));
    Ok(report)
}

fn require_sentence_without_ab(sig: &Signature, alpha: &Formula) -> Result<(), Error> {
    if !alpha.is_classical() || !alpha.is_sentence() {
        return Err(Error::Precondition(format!("`{alpha}` must be a classical sentence")));
    }
    if sig.contains("a") || sig.contains("b") {
        return Err(Error::Precondition("the signature must not declare `a` or `b`".into()));
    }
    Ok(())
}

/// Compares support of `α` at all worlds of the canonical full extension
/// of `s` with Tarskian truth of `α` in `s`.
pub fn verify_support_truth(s: &Structure, alpha: &Formula, eval: &EvalConfig) -> Result<LemmaReport, Error> {
    let mut report = LemmaReport::new("support-truth");
    support_truth_instance(&mut report, s, alpha, eval, "instance")?;
    Ok(report)
}

pub(crate) fn support_truth_instance(
    report: &mut LemmaReport,
    s: &Structure,
    alpha: &Formula,
    eval: &EvalConfig,
    label: &str,
) -> Result<(), Error> {
    require_sentence_without_ab(s.signature(), alpha)?;
    let m = canonical_full_extension(s)?;
    if m.num_worlds() > MAX_LATTICE_WORLDS {
        return Err(Error::Resource(format!("extension has {} worlds", m.num_worlds())));
    }
    let supported = supports_full(&m, alpha, eval)?;
    let truth = tarski_eval(s, &Assignment::new(), alpha)?;
    report.check(format!("{label} |D|={} {alpha}", s.domain_size()), supported == truth, || {
        Some(Witness::new(&m, m.full_state(), alpha, truth))
    });
    Ok(())
}

/// `η → α ∨∨ θ`, or with `ρ` conjoined to the antecedent.
pub fn bridge_formula(alpha: &Formula, with_rigid_equality: bool) -> Formula {
    let antecedent = if with_rigid_equality { Formula::and(build_rho(), build_eta()) } else { build_eta() };
    Formula::implies(antecedent, Formula::inq_disj(alpha.clone(), build_theta()))
}

#[derive(Clone, Debug)]
pub struct BridgeConfig {
    pub max_worlds: usize,
    pub max_domain: usize,
    /// Search general models for `ρ ∧ η → α ∨∨ θ` instead of id-models
    /// for `η → α ∨∨ θ`.
    pub general: bool,
    pub search: SearchConfig,
    /// Cap on structures for the first-order side.
    pub structure_limit: u64,
}

impl BridgeConfig {
    pub fn new(max_worlds: usize, max_domain: usize) -> Self {
        BridgeConfig {
            max_worlds,
            max_domain,
            general: false,
            search: SearchConfig::new(max_worlds, max_domain),
            structure_limit: 10_000_000,
        }
    }

    pub fn general(mut self, general: bool) -> Self {
        self.general = general;
        self
    }

    /// Largest structure whose canonical full extension fits in the bounds.
    pub fn structure_bound(&self) -> usize {
        (1..=self.max_domain).take_while(|n| n * n <= self.max_worlds).last().unwrap_or(0)
    }
}

/// Bounded finite validity of `α` against bounded validity of the bridge
/// formula, plus both countermodel translations.
pub fn finite_validity_bridge(sig: &Signature, alpha: &Formula, cfg: &BridgeConfig) -> Result<LemmaReport, Error> {
    require_sentence_without_ab(sig, alpha)?;
    let fol_bound = cfg.structure_bound();
    if fol_bound == 0 {
        return Err(Error::Precondition("bounds admit no canonical extension".into()));
    }
    let bridge = bridge_formula(alpha, cfg.general);
    let variant = if cfg.general { "general" } else { "id" };
    let mut report = LemmaReport::new(&format!("finite-validity-bridge-{variant}"))
        .param("alpha", alpha)
        .param("max_worlds", cfg.max_worlds)
        .param("max_domain", cfg.max_domain)
        .param("structure_bound", fol_bound);

    let fol = fol_countermodel(sig, &[], alpha, fol_bound, cfg.structure_limit)?;
    let wide = sig.with_constants(&["a", "b"])?;
    let search = SearchConfig { max_worlds: cfg.max_worlds, max_domain: cfg.max_domain, ..cfg.search.clone() }
        .id_only(!cfg.general);
    let inq = valid(&wide, &bridge, &search)?;
    if let Some(cs) = &fol {
        report = report.param("structure_size", cs.structure.domain_size());
    }
    if let Some(cm) = inq.countermodel() {
        report = report.param("countermodel_domain", cm.model.domain_size());
    }

    // extension of a counterstructure, if any
    let extension = match &fol {
        Some(cs) => Some(canonical_full_extension(&cs.structure)?),
        None => None,
    };
    let agree = fol.is_some() == inq.is_countermodel();
    report.check("bounded verdicts agree", agree, || match (inq.countermodel(), &extension) {
        (Some(cm), _) => Some(Witness { assignment: cm.assignment.clone(), ..Witness::new(&cm.model, cm.state, &bridge, true) }),
        (None, Some(m)) => Some(Witness::new(m, m.full_state(), &bridge, true)),
        (None, None) => None,
    });

    if let Some(cm) = inq.countermodel() {
        let mut extracted = None;
        let local_sig = sig.restrict(&alpha.symbols());
        for w in cm.state.worlds() {
            let local = world_structure(&cm.model, w).reduct(&local_sig)?;
            if !tarski_eval(&local, &Assignment::new(), alpha)? {
                extracted = Some(local);
                break;
            }
        }
        let ok = extracted.as_ref().is_some_and(|s| s.domain_size() <= cm.model.domain_size());
        if let Some(s) = &extracted {
            report = report.param("extracted_size", s.domain_size());
        }
        report.check("countermodel yields a falsifying world structure", ok, || {
            Some(Witness::new(&cm.model, cm.state, alpha, false))
        });
    }
    if let Some(m) = &extension {
        let falsified = !supports_full(m, &bridge, &cfg.search.eval)?;
        report.check("canonical extension falsifies the bridge formula", falsified, || {
            Some(Witness::new(m, m.full_state(), &bridge, false))
        });
    }
    Ok(report)
}

/// The ten classical sentences of the default bridge corpus, over
/// `{P/1, c}`.
pub fn bridge_corpus() -> (Signature, Vec<Formula>) {
    let sig = Signature::builder().predicate("P", 1).constant("c").build().expect("valid signature");
    let texts = [
        "exists x. exists y. x != y",
        "forall x. x = x",
        "_|_",
        "exists x. P(x)",
        "(forall x. P(x)) \\/ exists x. ~P(x)",
        "forall x. forall y. x = y",
        "P(c) -> exists x. P(x)",
        "exists x. P(x) -> forall y. P(y)",
        "forall x. forall y. forall z. x = y \\/ y = z \\/ x = z",
        "exists x. forall y. x = y",
    ];
    let formulas = texts.iter().map(|t| parse_formula(t, &sig).expect("corpus sentence parses")).collect();
    (sig, formulas)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::StructureBuilder;

    fn eval() -> EvalConfig {
        EvalConfig::default()
    }

    #[test]
    fn rs_characterization_small() {
        let r = verify_rs_characterization(2, &eval()).unwrap();
        assert!(r.all_passed(), "{:?}", r.failures().next());
        // four facts per state of M_1 and M_2, plus one corollary per size
        assert_eq!(r.total(), 4 * 2 + 4 * 16 + 2);
    }

    #[test]
    fn theta_fullness_small() {
        let r = verify_theta_fullness(4, 2, Pruning::None, &eval()).unwrap();
        assert!(r.all_passed());
        assert!(r.total() > 300);
    }

    #[test]
    fn compactness_small() {
        for k in 0..=2 {
            let r = compactness_witness(k, &eval()).unwrap();
            assert!(r.all_passed(), "k={k}");
        }
        assert!(matches!(compactness_witness(4, &eval()), Err(Error::Resource(_))));
    }

    #[test]
    fn support_truth_examples() {
        let sig = Signature::builder().predicate("P", 1).build().unwrap();
        let mut b = StructureBuilder::new(&sig, 2);
        b.fact("P", &[0]).unwrap().fact("P", &[1]).unwrap();
        let s = b.build().unwrap();
        for text in ["forall x. P(x)", "_|_", "exists x. ~P(x)"] {
            let alpha = parse_formula(text, &sig).unwrap();
            assert!(verify_support_truth(&s, &alpha, &eval()).unwrap().all_passed(), "{text}");
        }
        let open = parse_formula("P(x)", &sig).unwrap();
        assert!(matches!(verify_support_truth(&s, &open, &eval()), Err(Error::Precondition(_))));
    }

    #[test]
    fn bridge_examples() {
        let (sig, corpus) = bridge_corpus();
        let cfg = BridgeConfig::new(4, 2);
        let distinct = finite_validity_bridge(&sig, &corpus[0], &cfg).unwrap();
        assert!(distinct.all_passed(), "{distinct}");
        assert_eq!(distinct.total(), 3);
        let reflexive = finite_validity_bridge(&sig, &corpus[1], &cfg).unwrap();
        assert!(reflexive.all_passed());
        assert_eq!(reflexive.total(), 1);
        let bottom = finite_validity_bridge(&sig, &corpus[2], &cfg.clone().general(true)).unwrap();
        assert!(bottom.all_passed(), "{bottom}");
    }

    #[test]
    fn failures_carry_confirmable_witnesses() {
        let m = canonical_full_model(2).unwrap();
        let mut r = LemmaReport::new("deliberately wrong");
        // predicting support of theta on a full model is wrong
        r.check("x", false, || Some(Witness::new(&m, m.full_state(), &build_theta(), true)));
        assert!(r.reverify().unwrap());
        let mut wrong = LemmaReport::new("bogus witness");
        wrong.check("y", false, || Some(Witness::new(&m, m.full_state(), &build_theta(), false)));
        assert!(!wrong.reverify().unwrap());
    }
}
