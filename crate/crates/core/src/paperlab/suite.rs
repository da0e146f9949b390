use crate::corpus::{random_formula, random_structure, rng, FormulaOptions};
use crate::models::Pruning;
use crate::semantics::EvalConfig;
use crate::syntax::Signature;
use crate::Error;

use super::report::LemmaReport;
use super::verify::{
    bridge_corpus, compactness_witness, finite_validity_bridge, support_truth_instance, verify_rs_characterization,
    verify_theta_fullness, BridgeConfig,
};

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    /// Largest canonical model checked; 4 is the extended run.
    pub max_domain: usize,
    pub eval: EvalConfig,
    pub seed: u64,
    /// Random (structure, sentence) pairs in the support/truth report.
    pub support_truth_samples: usize,
    pub deterministic: bool,
    pub workers: Option<usize>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            max_domain: 3,
            eval: EvalConfig::default(),
            seed: 2024,
            support_truth_samples: 200,
            deterministic: false,
            workers: None,
        }
    }
}

/// Every report, in a fixed order.
pub fn default_suite(cfg: &SuiteConfig) -> Result<Vec<LemmaReport>, Error> {
    let mut out = vec![verify_rs_characterization(cfg.max_domain, &cfg.eval)?];
    out.push(if cfg.max_domain <= 3 {
        verify_theta_fullness(4, 2, Pruning::None, &cfg.eval)?
    } else {
        verify_theta_fullness(9, 3, Pruning::WorldOrder, &cfg.eval)?
    });
    for k in 0..cfg.max_domain {
        out.push(compactness_witness(k, &cfg.eval)?);
    }

    let sig = Signature::builder().predicate("P", 1).predicate("R", 2).constant("c").build()?;
    let mut r = rng(cfg.seed);
    let mut report = LemmaReport::new("support-truth").param("samples", cfg.support_truth_samples).param("seed", cfg.seed);
    for i in 0..cfg.support_truth_samples {
        let s = random_structure(&mut r, &sig, 3);
        let alpha = random_formula(&mut r, &sig, &FormulaOptions::new(4).classical(true));
        support_truth_instance(&mut report, &s, &alpha, &cfg.eval, &format!("sample {i}"))?;
    }
    out.push(report);

    let (sig, sentences) = bridge_corpus();
    for general in [false, true] {
        let mut bridge = BridgeConfig::new(4, 2).general(general);
        bridge.search = bridge.search.eval(cfg.eval.clone()).deterministic(cfg.deterministic).workers(cfg.workers);
        for alpha in &sentences {
            out.push(finite_validity_bridge(&sig, alpha, &bridge)?);
        }
    }
    Ok(out)
}
