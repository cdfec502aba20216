//! The derivative map `Φ`, trace and cotrace, the quantity `Δ(C, F)`, a
//! brute-force Lefschetz number on `H^+`, and seeded campaigns comparing the
//! two.

mod campaign;
mod delta_quantity;
mod maps;
mod oracle;

pub use campaign::{
    run_campaign, trial_instance, trial_seed, verify_proposition, CampaignParams, TrialFailure,
    VerificationReport, CAMPAIGN_BASIS_STEPS, MAX_CAMPAIGN_EXPONENT,
};
pub use delta_quantity::{
    cotrace_preimage, delta_quantity, delta_quantity_with, evaluate_on, DualFactor, Order,
};
pub use maps::{cotrace_map, phi, phi_dual, trace_map};
pub use oracle::{
    lefschetz_oracle, lefschetz_oracle_details, plus_action, OracleResult, PlusAction,
};
