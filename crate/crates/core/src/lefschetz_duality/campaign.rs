use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::delta_quantity::{delta_quantity_with, DualFactor, Order};
use super::oracle::lefschetz_oracle;
use crate::chain_complex::{chain_map_to_text, complex_to_text, ChainMap, GradedComplex};
use crate::error::{Error, Result};
use crate::normal_form::{random_chain_map, random_complex, ComplexSpec, MINOR_RANK_LIMIT};

pub const MAX_CAMPAIGN_EXPONENT: u32 = 16;
pub const CAMPAIGN_BASIS_STEPS: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CampaignParams {
    pub campaign_seed: u64,
    pub trials: usize,
    pub max_rank: usize,
    pub max_exponent: u32,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
}

impl CampaignParams {
    pub fn new(campaign_seed: u64, trials: usize, max_rank: usize, max_exponent: u32) -> Self {
        CampaignParams {
            campaign_seed,
            trials,
            max_rank,
            max_exponent,
            jobs: None,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(2..=MINOR_RANK_LIMIT).contains(&self.max_rank) {
            return Err(Error::ParameterOutOfRange(format!(
                "max-rank must be in 2..={MINOR_RANK_LIMIT}, got {}",
                self.max_rank
            )));
        }
        if !(1..=MAX_CAMPAIGN_EXPONENT).contains(&self.max_exponent) {
            return Err(Error::ParameterOutOfRange(format!(
                "max-exponent must be in 1..={MAX_CAMPAIGN_EXPONENT}, got {}",
                self.max_exponent
            )));
        }
        if self.jobs == Some(0) {
            return Err(Error::ParameterOutOfRange("jobs must be positive".into()));
        }
        Ok(())
    }
}

/// A trial whose two computations disagreed or failed. Complex and map are
/// embedded in the text formats for replay.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrialFailure {
    pub trial: usize,
    pub seed: u64,
    pub complex: String,
    pub map: String,
    pub delta_value: Option<u8>,
    pub oracle_value: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub campaign_seed: u64,
    pub trials: usize,
    pub failures: Vec<TrialFailure>,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Seed of trial `index`, independent of scheduling.
pub fn trial_seed(campaign_seed: u64, index: usize) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(campaign_seed);
    rng.set_stream(index as u64);
    rng.gen()
}

/// The complex and chain map of one trial: a random torsion complex in a
/// scrambled basis and a random endomorphism of it.
pub fn trial_instance(
    seed: u64,
    max_rank: usize,
    max_exponent: u32,
) -> Result<(Arc<GradedComplex>, ChainMap)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (_, c) = random_complex(
        rng.gen(),
        ComplexSpec {
            max_rank,
            max_exponent,
            max_steps: CAMPAIGN_BASIS_STEPS,
            allow_one_steps: false,
        },
    );
    let c = Arc::new(c.with_name("trial"));
    let f = random_chain_map(&c, rng.gen())?.with_name("f");
    Ok((c, f))
}

fn run_trial(params: &CampaignParams, index: usize, factor: DualFactor) -> Option<TrialFailure> {
    let seed = trial_seed(params.campaign_seed, index);
    let (c, f) = match trial_instance(seed, params.max_rank, params.max_exponent) {
        Ok(x) => x,
        Err(e) => {
            return Some(TrialFailure {
                trial: index,
                seed,
                complex: String::new(),
                map: String::new(),
                delta_value: None,
                oracle_value: None,
                error: Some(e.to_string()),
            })
        }
    };
    let delta = delta_quantity_with(&c, &f, Order::InverseFirst, factor);
    let oracle = lefschetz_oracle(&c, &f);
    let agree = matches!((&delta, &oracle), (Ok(a), Ok(b)) if a == b);
    if agree {
        return None;
    }
    let error = [delta.as_ref().err(), oracle.as_ref().err()]
        .into_iter()
        .flatten()
        .map(|e| e.to_string())
        .reduce(|a, b| format!("{a}; {b}"));
    Some(TrialFailure {
        trial: index,
        seed,
        complex: complex_to_text(&c),
        map: chain_map_to_text(&f),
        delta_value: delta.ok().map(u8::from),
        oracle_value: oracle.ok().map(u8::from),
        error,
    })
}

/// Runs `params.trials` trials comparing `Δ(C, F)` (with the given second
/// tensor factor) against the brute-force Lefschetz number on `H^+`.
pub fn run_campaign(params: &CampaignParams, factor: DualFactor) -> Result<VerificationReport> {
    params.validate()?;
    let start = Instant::now();
    let work = || -> Vec<TrialFailure> {
        (0..params.trials)
            .into_par_iter()
            .filter_map(|i| run_trial(params, i, factor))
            .collect()
    };
    let failures = match params.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::ParameterOutOfRange(e.to_string()))?
            .install(work),
        None => work(),
    };
    Ok(VerificationReport {
        campaign_seed: params.campaign_seed,
        trials: params.trials,
        failures,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

/// Asserts `Δ(C, F) = Lef(F_* on H^+)` on seeded random trials.
pub fn verify_proposition(
    campaign_seed: u64,
    trials: usize,
    max_rank: usize,
    max_exponent: u32,
) -> Result<VerificationReport> {
    run_campaign(
        &CampaignParams::new(campaign_seed, trials, max_rank, max_exponent),
        DualFactor::PhiDual,
    )
}
