//! The key sentences `η`, `θ`, `χn`, `ρ`, and checks of their properties on
//! finite models, each producing a [`LemmaReport`].
//!
//! ```
//! use inqbq::paperlab::{compactness_witness, verify_rs_characterization};
//! use inqbq::semantics::EvalConfig;
//!
//! let eval = EvalConfig::default();
//! assert!(verify_rs_characterization(2, &eval)?.all_passed());
//! assert!(compactness_witness(1, &eval)?.all_passed());
//! # Ok::<(), inqbq::Error>(())
//! ```

mod report;
mod sentences;
mod suite;
mod verify;

pub use report::{Instance, LemmaReport, Witness};
pub use sentences::{build_chi, build_eta, build_rho, build_theta, named_sentence};
pub use suite::{default_suite, SuiteConfig};
pub use verify::{
    bridge_corpus, bridge_formula, compactness_witness, finite_validity_bridge, verify_rs_characterization,
    verify_support_truth, verify_theta_fullness, BridgeConfig, MAX_CANONICAL_DOMAIN,
};
