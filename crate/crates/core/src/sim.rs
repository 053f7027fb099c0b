//! Desk-scale Monte Carlo simulation of the hybrid random-coding
//! construction on the binary scenario: superposition codebooks, typicality
//! encoding (covering), unique decoding at Bob (packing), and the
//! eavesdropper's decodability check that underpins the equivocation
//! characterization.
//!
//! Model distributions are taken from [`crate::binary::hybrid_joint`], never
//! re-derived here. Typicality is the robust flavor: the empirical joint
//! type must be within ℓ∞ distance δ of the model joint. Codewords are drawn
//! i.i.d. from the model marginals (not resampled from the typical set),
//! which is the unbiased small-n variant of the same construction.
//!
//! Everything is a pure function of (config, seed): per-trial random streams
//! are derived with a fixed SplitMix64 mix, so serial and parallel runs are
//! bit-identical.

use crate::binary::{hybrid_joint, BinaryError, BinarySetup};
use crate::info::JointPmf;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

/// Total stored codeword symbols allowed per codebook.
pub const CODEBOOK_CAP: usize = 1 << 22;

#[derive(Debug, Error)]
pub enum SimError {
    #[error("{name} = {value} is invalid: {why}")]
    InvalidConfig {
        name: &'static str,
        value: f64,
        why: &'static str,
    },
    #[error("codebook needs {needed} stored symbols, cap is {cap}")]
    CodebookCapExceeded { needed: u128, cap: usize },
    #[error(transparent)]
    Binary(#[from] BinaryError),
}

pub type Result<T> = std::result::Result<T, SimError>;

/// Experiment description: blocklength, rates (bits/symbol), typicality
/// slack δ, trial count, seed, scenario and the hybrid noise parameter u.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SimConfig {
    pub n: usize,
    pub r1: f64,
    pub r2: f64,
    pub rf: f64,
    pub typicality_slack: f64,
    pub trials: usize,
    pub seed: u64,
    pub setup: BinarySetup,
    pub u: f64,
}

impl SimConfig {
    /// Number of codewords carried by a rate: round(2^{nR}), at least 1.
    fn words(&self, rate: f64) -> usize {
        let count = (2.0f64).powf(self.n as f64 * rate);
        if count >= CODEBOOK_CAP as f64 {
            usize::MAX
        } else {
            (count.round() as usize).max(1)
        }
    }

    pub fn num_u_words(&self) -> usize {
        self.words(self.r1)
    }

    pub fn num_r2(&self) -> usize {
        self.words(self.r2)
    }

    pub fn num_rf(&self) -> usize {
        self.words(self.rf)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 8 {
            return Err(SimError::InvalidConfig {
                name: "n",
                value: self.n as f64,
                why: "blocklength must be at least 8",
            });
        }
        if self.typicality_slack <= 0.0 || self.typicality_slack.is_nan() {
            return Err(SimError::InvalidConfig {
                name: "typicality_slack",
                value: self.typicality_slack,
                why: "must be positive",
            });
        }
        for (name, rate) in [("r1", self.r1), ("r2", self.r2), ("rf", self.rf)] {
            if rate <= 0.0 || !rate.is_finite() {
                return Err(SimError::InvalidConfig {
                    name,
                    value: rate,
                    why: "rates must be positive",
                });
            }
        }
        if !(0.0..=0.5).contains(&self.u) {
            return Err(SimError::InvalidConfig {
                name: "u",
                value: self.u,
                why: "hybrid crossover must lie in [0, 1/2]",
            });
        }
        let (num_u, num_r2, num_rf) = (self.num_u_words(), self.num_r2(), self.num_rf());
        let needed = (num_u as u128)
            .saturating_mul(self.n as u128)
            .saturating_add(
                (num_u as u128)
                    .saturating_mul(num_r2 as u128)
                    .saturating_mul(num_rf as u128)
                    .saturating_mul(self.n as u128),
            );
        if needed > CODEBOOK_CAP as u128 {
            return Err(SimError::CodebookCapExceeded {
                needed,
                cap: CODEBOOK_CAP,
            });
        }
        Ok(())
    }

    /// Default typicality slack 2/√n.
    pub fn default_slack(n: usize) -> f64 {
        2.0 / (n as f64).sqrt()
    }
}

/// SplitMix64 finalizer used to derive independent sub-streams from the
/// experiment seed. Stream 0 generates the codebooks; stream t+1 drives
/// trial t. Fixed here so parallel and serial runs agree.
fn derived_seed(seed: u64, stream: u64) -> u64 {
    let mut z = seed ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn codebook_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derived_seed(seed, 0))
}

fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derived_seed(seed, trial as u64 + 1))
}

/// A model pmf over a small variable tuple, reordered into a fixed layout
/// for fast joint-type comparisons.
#[derive(Debug, Clone)]
struct TypModel {
    sizes: Vec<usize>,
    probs: Vec<f64>,
}

impl TypModel {
    /// Extracts the marginal of `joint` on `order`, laid out in that order.
    fn from_joint(joint: &JointPmf, order: &[&str]) -> Self {
        let marginal = joint.marginalize(order).expect("model variables exist");
        let mvars = marginal.variables();
        let perm: Vec<usize> = order
            .iter()
            .map(|name| mvars.iter().position(|(m, _)| m == name).unwrap())
            .collect();
        let msizes: Vec<usize> = mvars.iter().map(|(_, k)| *k).collect();
        let sizes: Vec<usize> = perm.iter().map(|&i| msizes[i]).collect();
        let cells: usize = sizes.iter().product();
        let mut probs = vec![0.0; cells];
        let mut coords = vec![0usize; msizes.len()];
        for (flat, &p) in marginal.mass().iter().enumerate() {
            let mut rem = flat;
            for i in (0..msizes.len()).rev() {
                coords[i] = rem % msizes[i];
                rem /= msizes[i];
            }
            let mut out = 0usize;
            for (j, &i) in perm.iter().enumerate() {
                out = out * sizes[j] + coords[i];
            }
            probs[out] = p;
        }
        TypModel { sizes, probs }
    }

    /// Robust joint typicality: every cell of the empirical type of the
    /// zipped sequences is within δ of the model probability.
    fn is_typical(&self, seqs: &[&[u8]], delta: f64, counts: &mut Vec<u32>) -> bool {
        let n = seqs[0].len();
        debug_assert!(seqs.iter().all(|s| s.len() == n));
        debug_assert_eq!(seqs.len(), self.sizes.len());
        counts.clear();
        counts.resize(self.probs.len(), 0);
        for i in 0..n {
            let mut cell = 0usize;
            for (s, &k) in seqs.iter().zip(&self.sizes) {
                cell = cell * k + s[i] as usize;
            }
            counts[cell] += 1;
        }
        let inv_n = 1.0 / n as f64;
        counts
            .iter()
            .zip(&self.probs)
            .all(|(&c, &p)| (c as f64 * inv_n - p).abs() <= delta)
    }
}

/// Model distributions and samplers backing one experiment, all extracted
/// from the exact hybrid joint.
#[derive(Debug, Clone)]
pub struct HybridModel {
    setup: BinarySetup,
    p_u1: f64,
    p_v1_given_u: [f64; 2],
    t_ua: TypModel,
    t_uva: TypModel,
    t_uby: TypModel,
    t_uvby: TypModel,
    t_uvaz: TypModel,
}

impl HybridModel {
    pub fn new(setup: &BinarySetup, u: f64) -> Result<Self> {
        let joint = hybrid_joint(setup, u)?;
        let uv = TypModel::from_joint(&joint, &["U", "V"]);
        let p_u = [uv.probs[0] + uv.probs[1], uv.probs[2] + uv.probs[3]];
        Ok(HybridModel {
            setup: *setup,
            p_u1: p_u[1],
            p_v1_given_u: [uv.probs[1] / p_u[0], uv.probs[3] / p_u[1]],
            t_ua: TypModel::from_joint(&joint, &["U", "A"]),
            t_uva: TypModel::from_joint(&joint, &["U", "V", "A"]),
            t_uby: TypModel::from_joint(&joint, &["U", "B", "Y"]),
            t_uvby: TypModel::from_joint(&joint, &["U", "V", "B", "Y"]),
            t_uvaz: TypModel::from_joint(&joint, &["U", "V", "A", "Z"]),
        })
    }

    /// Draws one source block (Aⁿ, Bⁿ, Eⁿ).
    pub fn draw_source(&self, n: usize, rng: &mut ChaCha8Rng) -> (Vec<u8>, Vec<u8>, Vec<u8>) {
        let mut a = vec![0u8; n];
        let mut b = vec![0u8; n];
        let mut e = vec![0u8; n];
        for i in 0..n {
            a[i] = rng.random_bool(0.5) as u8;
            b[i] = if rng.random_bool(self.setup.erasure_prob) {
                crate::info::ERASURE as u8
            } else {
                a[i]
            };
            e[i] = a[i] ^ (rng.random_bool(self.setup.eps) as u8);
        }
        (a, b, e)
    }

    /// Passes a channel-input block through Eve's BSC(ζ).
    pub fn eve_channel(&self, x: &[u8], rng: &mut ChaCha8Rng) -> Vec<u8> {
        x.iter()
            .map(|&xi| xi ^ (rng.random_bool(self.setup.zeta) as u8))
            .collect()
    }
}

/// Superposition codebook: `num_u` u-words, and per u-word one v-word per
/// (r2, rf) index pair. Fully determined by the experiment seed.
#[derive(Debug, Clone, PartialEq)]
pub struct Codebook {
    n: usize,
    num_u: usize,
    num_r2: usize,
    num_rf: usize,
    u_words: Vec<u8>,
    v_words: Vec<u8>,
}

impl Codebook {
    pub fn num_u(&self) -> usize {
        self.num_u
    }

    pub fn u_word(&self, r1: usize) -> &[u8] {
        &self.u_words[r1 * self.n..(r1 + 1) * self.n]
    }

    pub fn v_word(&self, r1: usize, r2: usize, rf: usize) -> &[u8] {
        let idx = (r1 * self.num_r2 + r2) * self.num_rf + rf;
        &self.v_words[idx * self.n..(idx + 1) * self.n]
    }
}

/// Draws the codebooks: u-words i.i.d. from p(u), then v-words symbol-wise
/// from p(v|u) conditioned on their parent u-word.
pub fn generate_codebooks(config: &SimConfig, model: &HybridModel) -> Result<Codebook> {
    config.validate()?;
    let (n, num_u, num_r2, num_rf) = (
        config.n,
        config.num_u_words(),
        config.num_r2(),
        config.num_rf(),
    );
    let mut rng = codebook_rng(config.seed);
    let mut u_words = vec![0u8; num_u * n];
    for bit in u_words.iter_mut() {
        *bit = rng.random_bool(model.p_u1) as u8;
    }
    let mut v_words = vec![0u8; num_u * num_r2 * num_rf * n];
    for r1 in 0..num_u {
        let base = r1 * num_r2 * num_rf * n;
        for w in 0..num_r2 * num_rf {
            for i in 0..n {
                let parent = u_words[r1 * n + i] as usize;
                v_words[base + w * n + i] = rng.random_bool(model.p_v1_given_u[parent]) as u8;
            }
        }
    }
    Ok(Codebook {
        n,
        num_u,
        num_r2,
        num_rf,
        u_words,
        v_words,
    })
}

/// Which encoder search came up empty.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CoveringFailure {
    NoTypicalUWord,
    NoTypicalVWord { r1: usize },
}

/// A successful encoding: selected indices and the channel input
/// x_i = v_i ⊕ a_i.
#[derive(Debug, Clone, PartialEq)]
pub struct Encoding {
    pub r1: usize,
    pub r2: usize,
    pub x_seq: Vec<u8>,
}

/// Covering encoder: the first u-word jointly typical with the source block,
/// then (within the given rf slice) the first v-word conditionally typical.
pub fn encode(
    a_seq: &[u8],
    rf: usize,
    codebook: &Codebook,
    config: &SimConfig,
    model: &HybridModel,
) -> std::result::Result<Encoding, CoveringFailure> {
    let delta = config.typicality_slack;
    let mut counts = Vec::new();
    let r1 = (0..codebook.num_u)
        .find(|&r1| {
            model
                .t_ua
                .is_typical(&[codebook.u_word(r1), a_seq], delta, &mut counts)
        })
        .ok_or(CoveringFailure::NoTypicalUWord)?;
    let u_word = codebook.u_word(r1);
    let r2 = (0..codebook.num_r2)
        .find(|&r2| {
            model.t_uva.is_typical(
                &[u_word, codebook.v_word(r1, r2, rf), a_seq],
                delta,
                &mut counts,
            )
        })
        .ok_or(CoveringFailure::NoTypicalVWord { r1 })?;
    let x_seq = codebook
        .v_word(r1, r2, rf)
        .iter()
        .zip(a_seq)
        .map(|(&v, &a)| v ^ a)
        .collect();
    Ok(Encoding { r1, r2, x_seq })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DecodeStage {
    UWord,
    VWord,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DecodeFailureKind {
    NoCandidate,
    Ambiguous,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DecodeFailure {
    pub stage: DecodeStage,
    pub kind: DecodeFailureKind,
}

/// Bob's decoder: the unique u-word jointly typical with (Bⁿ, Yⁿ), then the
/// unique v-word in that bucket. Zero candidates and two-or-more candidates
/// are distinct failures.
pub fn decode_bob(
    b_seq: &[u8],
    y_seq: &[u8],
    codebook: &Codebook,
    config: &SimConfig,
    model: &HybridModel,
) -> std::result::Result<(usize, usize, usize), DecodeFailure> {
    let delta = config.typicality_slack;
    let mut counts = Vec::new();

    let mut r1_hit: Option<usize> = None;
    for r1 in 0..codebook.num_u {
        if model
            .t_uby
            .is_typical(&[codebook.u_word(r1), b_seq, y_seq], delta, &mut counts)
        {
            if r1_hit.is_some() {
                return Err(DecodeFailure {
                    stage: DecodeStage::UWord,
                    kind: DecodeFailureKind::Ambiguous,
                });
            }
            r1_hit = Some(r1);
        }
    }
    let r1 = r1_hit.ok_or(DecodeFailure {
        stage: DecodeStage::UWord,
        kind: DecodeFailureKind::NoCandidate,
    })?;

    let u_word = codebook.u_word(r1);
    let mut v_hit: Option<(usize, usize)> = None;
    for r2 in 0..codebook.num_r2 {
        for rf in 0..codebook.num_rf {
            if model.t_uvby.is_typical(
                &[u_word, codebook.v_word(r1, r2, rf), b_seq, y_seq],
                delta,
                &mut counts,
            ) {
                if v_hit.is_some() {
                    return Err(DecodeFailure {
                        stage: DecodeStage::VWord,
                        kind: DecodeFailureKind::Ambiguous,
                    });
                }
                v_hit = Some((r2, rf));
            }
        }
    }
    let (r2, rf) = v_hit.ok_or(DecodeFailure {
        stage: DecodeStage::VWord,
        kind: DecodeFailureKind::NoCandidate,
    })?;
    Ok((r1, r2, rf))
}

/// Eve's decodability check: given the common index r1 and her observations
/// (Aⁿ, Zⁿ), the transmitted v-word must be the unique one in bucket r1 that
/// is jointly typical with them.
#[allow(clippy::too_many_arguments)]
pub fn eve_decodability(
    r1: usize,
    sent_r2: usize,
    sent_rf: usize,
    a_seq: &[u8],
    z_seq: &[u8],
    codebook: &Codebook,
    config: &SimConfig,
    model: &HybridModel,
) -> bool {
    let delta = config.typicality_slack;
    let mut counts = Vec::new();
    let u_word = codebook.u_word(r1);
    if !model.t_uvaz.is_typical(
        &[u_word, codebook.v_word(r1, sent_r2, sent_rf), a_seq, z_seq],
        delta,
        &mut counts,
    ) {
        return false;
    }
    for r2 in 0..codebook.num_r2 {
        for rf in 0..codebook.num_rf {
            if (r2, rf) == (sent_r2, sent_rf) {
                continue;
            }
            if model.t_uvaz.is_typical(
                &[u_word, codebook.v_word(r1, r2, rf), a_seq, z_seq],
                delta,
                &mut counts,
            ) {
                return false;
            }
        }
    }
    true
}

/// Outcome of one trial. `bob_ok` requires the decoded indices to equal the
/// sent ones (and hence implies `covering_ok`); `distortion` is present
/// whenever Bob produced an estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrialOutcome {
    pub covering_ok: bool,
    pub bob_ok: bool,
    pub eve_ok: bool,
    pub distortion: Option<f64>,
}

/// A success rate with its Wilson 95% interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RateSummary {
    pub successes: u64,
    pub trials: u64,
    pub rate: f64,
    pub wilson_low: f64,
    pub wilson_high: f64,
}

impl RateSummary {
    fn from_counts(successes: u64, trials: u64) -> Option<Self> {
        if trials == 0 {
            return None;
        }
        let z = 1.959_963_984_540_054_f64;
        let n = trials as f64;
        let p = successes as f64 / n;
        let z2 = z * z;
        let denom = 1.0 + z2 / n;
        let center = (p + z2 / (2.0 * n)) / denom;
        let half = z / denom * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
        Some(RateSummary {
            successes,
            trials,
            rate: p,
            wilson_low: (center - half).max(0.0),
            wilson_high: (center + half).min(1.0),
        })
    }
}

/// Aggregated experiment result. Covering and Bob rates are over all trials;
/// Eve's rate is over the trials where covering succeeded (a transmission
/// happened); the distortion is averaged over `bob_ok` trials. All fields
/// are `None` when their denominator is zero.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimResult {
    pub config: SimConfig,
    pub covering: Option<RateSummary>,
    pub bob: Option<RateSummary>,
    pub eve: Option<RateSummary>,
    pub mean_distortion: Option<f64>,
}

/// Runs one trial: draw the source block and the fountain index, encode,
/// pass through the channels, decode at Bob, check decodability at Eve.
fn run_trial(
    trial: usize,
    codebook: &Codebook,
    config: &SimConfig,
    model: &HybridModel,
) -> TrialOutcome {
    let mut rng = trial_rng(config.seed, trial);
    let (a, b, e) = model.draw_source(config.n, &mut rng);
    let _ = e; // Eve's side information block; her check below uses (Aⁿ, Zⁿ)
    let rf = rng.random_range(0..config.num_rf());

    let encoding = match encode(&a, rf, codebook, config, model) {
        Ok(enc) => enc,
        Err(_) => {
            return TrialOutcome {
                covering_ok: false,
                bob_ok: false,
                eve_ok: false,
                distortion: None,
            }
        }
    };
    let y = encoding.x_seq.clone();
    let z = model.eve_channel(&encoding.x_seq, &mut rng);

    let decoded = decode_bob(&b, &y, codebook, config, model);
    let bob_ok = decoded == Ok((encoding.r1, encoding.r2, rf));
    let distortion = decoded.ok().map(|(r1, r2, rfd)| {
        let v = codebook.v_word(r1, r2, rfd);
        let errors = v
            .iter()
            .zip(&y)
            .zip(&a)
            .filter(|((&v, &y), &a)| (v ^ y) != a)
            .count();
        errors as f64 / config.n as f64
    });
    let eve_ok = eve_decodability(
        encoding.r1,
        encoding.r2,
        rf,
        &a,
        &z,
        codebook,
        config,
        model,
    );
    TrialOutcome {
        covering_ok: true,
        bob_ok,
        eve_ok,
        distortion,
    }
}

/// Runs the full experiment: fixed per-trial seeds, trials in parallel,
/// order-independent aggregation.
pub fn run_experiment(config: &SimConfig) -> Result<SimResult> {
    config.validate()?;
    let model = HybridModel::new(&config.setup, config.u)?;
    let codebook = generate_codebooks(config, &model)?;

    let outcomes: Vec<TrialOutcome> = (0..config.trials)
        .into_par_iter()
        .map(|t| run_trial(t, &codebook, config, &model))
        .collect();

    let covering = outcomes.iter().filter(|o| o.covering_ok).count() as u64;
    let bob = outcomes.iter().filter(|o| o.bob_ok).count() as u64;
    let eve = outcomes
        .iter()
        .filter(|o| o.covering_ok && o.eve_ok)
        .count() as u64;
    let bob_distortions: Vec<f64> = outcomes
        .iter()
        .filter(|o| o.bob_ok)
        .filter_map(|o| o.distortion)
        .collect();

    Ok(SimResult {
        config: *config,
        covering: RateSummary::from_counts(covering, config.trials as u64),
        bob: RateSummary::from_counts(bob, config.trials as u64),
        eve: RateSummary::from_counts(eve, covering),
        mean_distortion: if bob_distortions.is_empty() {
            None
        } else {
            Some(bob_distortions.iter().sum::<f64>() / bob_distortions.len() as f64)
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(beta: f64) -> BinarySetup {
        BinarySetup::new(beta, 0.1, 0.1).unwrap()
    }

    fn config(
        n: usize,
        rates: (f64, f64, f64),
        delta: f64,
        seed: u64,
        beta: f64,
        u: f64,
    ) -> SimConfig {
        SimConfig {
            n,
            r1: rates.0,
            r2: rates.1,
            rf: rates.2,
            typicality_slack: delta,
            trials: 200,
            seed,
            setup: setup(beta),
            u,
        }
    }

    #[test]
    fn word_counts_follow_rates() {
        let cfg = config(16, (0.25, 1e-6, 1e-6), 0.5, 1, 0.5, 0.0);
        assert_eq!(cfg.num_u_words(), 16);
        assert_eq!(cfg.num_r2(), 1);
        assert_eq!(cfg.num_rf(), 1);
        let model = HybridModel::new(&cfg.setup, cfg.u).unwrap();
        let book = generate_codebooks(&cfg, &model).unwrap();
        assert_eq!(book.num_u(), 16);
        assert_eq!(book.u_word(7).len(), 16);
    }

    #[test]
    fn single_word_codebook_is_deterministic() {
        let cfg = config(16, (1e-6, 1e-6, 1e-6), 0.5, 42, 0.5, 0.1);
        let model = HybridModel::new(&cfg.setup, cfg.u).unwrap();
        assert_eq!(cfg.num_u_words(), 1);
        let a = generate_codebooks(&cfg, &model).unwrap();
        let b = generate_codebooks(&cfg, &model).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn same_seed_gives_identical_codebooks_and_seeds_differ() {
        let cfg = config(24, (0.2, 0.1, 0.05), 0.5, 7, 0.5, 0.2);
        let model = HybridModel::new(&cfg.setup, cfg.u).unwrap();
        let a = generate_codebooks(&cfg, &model).unwrap();
        let b = generate_codebooks(&cfg, &model).unwrap();
        assert_eq!(a, b);
        let other = SimConfig { seed: 8, ..cfg };
        let c = generate_codebooks(&other, &model).unwrap();
        assert_ne!(a, c, "different seeds should give different codebooks");
    }

    #[test]
    fn codebook_cap_is_enforced() {
        let cfg = config(64, (0.2, 0.2, 0.2), 0.5, 1, 0.5, 0.1);
        assert!(matches!(
            cfg.validate(),
            Err(SimError::CodebookCapExceeded { .. })
        ));
    }

    #[test]
    fn invalid_configs_are_rejected() {
        let mut cfg = config(16, (0.1, 0.1, 0.1), 0.5, 1, 0.5, 0.1);
        cfg.n = 4;
        assert!(matches!(
            cfg.validate(),
            Err(SimError::InvalidConfig { name: "n", .. })
        ));
        let mut cfg = config(16, (0.1, 0.1, 0.1), 0.0, 1, 0.5, 0.1);
        cfg.typicality_slack = 0.0;
        assert!(cfg.validate().is_err());
        let cfg = config(16, (0.0, 0.1, 0.1), 0.5, 1, 0.5, 0.1);
        assert!(matches!(
            cfg.validate(),
            Err(SimError::InvalidConfig { name: "r1", .. })
        ));
    }

    #[test]
    fn maximal_slack_accepts_first_codeword() {
        let cfg = config(16, (0.25, 0.1, 0.1), 1.0, 3, 0.5, 0.2);
        let model = HybridModel::new(&cfg.setup, cfg.u).unwrap();
        let book = generate_codebooks(&cfg, &model).unwrap();
        let mut rng = trial_rng(cfg.seed, 0);
        let (a, _, _) = model.draw_source(cfg.n, &mut rng);
        let enc = encode(&a, 0, &book, &cfg, &model).unwrap();
        assert_eq!((enc.r1, enc.r2), (0, 0));
    }

    #[test]
    fn encoder_returns_a_genuinely_typical_pair() {
        // oracle: recompute the empirical joint type of the returned pair
        let cfg = config(64, (0.15, 1e-6, 1e-6), 0.12, 5, 0.5, 0.0);
        let model = HybridModel::new(&cfg.setup, cfg.u).unwrap();
        let book = generate_codebooks(&cfg, &model).unwrap();
        let mut found = 0;
        for trial in 0..50 {
            let mut rng = trial_rng(cfg.seed, trial);
            let (a, _, _) = model.draw_source(cfg.n, &mut rng);
            if let Ok(enc) = encode(&a, 0, &book, &cfg, &model) {
                found += 1;
                let u_word = book.u_word(enc.r1);
                let mut joint = [[0u32; 2]; 2];
                for i in 0..cfg.n {
                    joint[u_word[i] as usize][a[i] as usize] += 1;
                }
                // U = V ⊕ W with V ⊥ A, so the model joint is uniform 1/4
                for row in &joint {
                    for &c in row {
                        let dev = (c as f64 / cfg.n as f64 - 0.25).abs();
                        assert!(dev <= cfg.typicality_slack, "dev {dev} exceeds slack");
                    }
                }
            }
        }
        assert!(found > 0, "no trial managed to encode");
    }

    #[test]
    fn starved_encoder_mostly_fails_covering() {
        // single v-word per bucket and a tight slack: covering should almost
        // always fail at the second search stage
        let cfg = SimConfig {
            trials: 200,
            ..config(96, (0.1, 1e-6, 1e-6), 0.025, 7, 0.5, 0.35)
        };
        let model = HybridModel::new(&cfg.setup, cfg.u).unwrap();
        let book = generate_codebooks(&cfg, &model).unwrap();
        let mut failures = 0;
        for trial in 0..cfg.trials {
            let mut rng = trial_rng(cfg.seed, trial);
            let (a, _, _) = model.draw_source(cfg.n, &mut rng);
            if encode(&a, 0, &book, &cfg, &model).is_err() {
                failures += 1;
            }
        }
        let rate = failures as f64 / cfg.trials as f64;
        assert!(rate >= 0.9, "covering failure rate {rate}");
    }

    #[test]
    fn noiseless_degenerate_decode_always_returns_sent_indices() {
        // B = A (β = 0) and U = V, so the sent u-word satisfies u = y ⊕ b
        // symbol-wise while a wrong word dumps ~half its mass on cells the
        // model gives zero probability; at this blocklength the slack sits
        // between the two, making decoding unambiguous.
        let cfg = SimConfig {
            trials: 200,
            ..config(1024, (0.005, 1e-6, 1e-6), 0.06, 9, 0.0, 0.0)
        };
        let model = HybridModel::new(&cfg.setup, cfg.u).unwrap();
        let book = generate_codebooks(&cfg, &model).unwrap();
        for trial in 0..cfg.trials {
            let mut rng = trial_rng(cfg.seed, trial);
            let (a, b, _) = model.draw_source(cfg.n, &mut rng);
            let rf = rng.random_range(0..cfg.num_rf());
            let enc = encode(&a, rf, &book, &cfg, &model).expect("covering succeeds");
            let y = enc.x_seq.clone();
            let got = decode_bob(&b, &y, &book, &cfg, &model).expect("decode succeeds");
            assert_eq!(got, (enc.r1, enc.r2, rf));
            let v = book.v_word(got.0, got.1, got.2);
            let distortion = v
                .iter()
                .zip(&y)
                .zip(&a)
                .filter(|((&v, &y), &a)| (v ^ y) != a)
                .count();
            assert_eq!(distortion, 0);
        }
    }

    #[test]
    fn overloaded_first_stage_is_mostly_ambiguous() {
        // R1 far above I(U;BY) with a loose slack: everything looks typical
        let cfg = SimConfig {
            trials: 200,
            ..config(
                32,
                (0.4, 1e-6, 1e-6),
                SimConfig::default_slack(32),
                11,
                0.8,
                0.0,
            )
        };
        let model = HybridModel::new(&cfg.setup, cfg.u).unwrap();
        let book = generate_codebooks(&cfg, &model).unwrap();
        let mut ambiguous = 0;
        for trial in 0..cfg.trials {
            let mut rng = trial_rng(cfg.seed, trial);
            let (a, b, _) = model.draw_source(cfg.n, &mut rng);
            let Ok(enc) = encode(&a, 0, &book, &cfg, &model) else {
                continue;
            };
            let y = enc.x_seq.clone();
            if decode_bob(&b, &y, &book, &cfg, &model)
                == Err(DecodeFailure {
                    stage: DecodeStage::UWord,
                    kind: DecodeFailureKind::Ambiguous,
                })
            {
                ambiguous += 1;
            }
        }
        let rate = ambiguous as f64 / cfg.trials as f64;
        assert!(rate >= 0.5, "ambiguous failure rate {rate}");
    }

    #[test]
    fn corrupted_observation_yields_no_candidate() {
        let cfg = config(1024, (0.005, 1e-6, 1e-6), 0.06, 9, 0.0, 0.0);
        let model = HybridModel::new(&cfg.setup, cfg.u).unwrap();
        let book = generate_codebooks(&cfg, &model).unwrap();
        let mut rng = trial_rng(cfg.seed, 0);
        let (a, b, _) = model.draw_source(cfg.n, &mut rng);
        let enc = encode(&a, 0, &book, &cfg, &model).unwrap();
        // flip every received symbol, pushing the pair far outside the slack
        let y: Vec<u8> = enc.x_seq.iter().map(|&x| x ^ 1).collect();
        let got = decode_bob(&b, &y, &book, &cfg, &model);
        assert_eq!(
            got,
            Err(DecodeFailure {
                stage: DecodeStage::UWord,
                kind: DecodeFailureKind::NoCandidate,
            })
        );
    }

    #[test]
    fn eve_bucket_of_one_with_maximal_slack_is_decodable() {
        let cfg = config(16, (1e-6, 1e-6, 1e-6), 1.0, 13, 0.5, 0.25);
        let model = HybridModel::new(&cfg.setup, cfg.u).unwrap();
        let book = generate_codebooks(&cfg, &model).unwrap();
        let mut rng = trial_rng(cfg.seed, 0);
        let (a, _, _) = model.draw_source(cfg.n, &mut rng);
        let enc = encode(&a, 0, &book, &cfg, &model).unwrap();
        let z = model.eve_channel(&enc.x_seq, &mut rng);
        assert!(eve_decodability(
            enc.r1, enc.r2, 0, &a, &z, &book, &cfg, &model
        ));
    }

    #[test]
    fn zero_trials_yield_empty_result() {
        let cfg = SimConfig {
            trials: 0,
            ..config(16, (0.1, 0.1, 0.1), 0.5, 1, 0.5, 0.1)
        };
        let result = run_experiment(&cfg).unwrap();
        assert!(result.covering.is_none());
        assert!(result.bob.is_none());
        assert!(result.eve.is_none());
        assert!(result.mean_distortion.is_none());
    }

    #[test]
    fn identical_configs_reproduce_bit_identical_results() {
        let cfg = SimConfig {
            trials: 64,
            ..config(
                32,
                (0.1, 0.05, 0.05),
                SimConfig::default_slack(32),
                99,
                0.3,
                0.1,
            )
        };
        let a = run_experiment(&cfg).unwrap();
        let b = run_experiment(&cfg).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn bob_success_implies_covering_and_zero_distortion() {
        let cfg = SimConfig {
            trials: 128,
            ..config(1024, (0.005, 1e-6, 1e-6), 0.06, 21, 0.0, 0.0)
        };
        let result = run_experiment(&cfg).unwrap();
        let covering = result.covering.unwrap();
        let bob = result.bob.unwrap();
        assert!(bob.successes <= covering.successes);
        assert!(bob.rate > 0.9, "bob rate {}", bob.rate);
        assert_eq!(result.mean_distortion, Some(0.0));
    }

    #[test]
    fn covering_success_is_nondecreasing_in_v_rate() {
        // second-stage covering is the bottleneck; more v-words per bucket
        // can only help
        let mut rates = Vec::new();
        for r2 in [1e-6, 0.05, 0.12] {
            let cfg = SimConfig {
                trials: 400,
                ..config(64, (0.1, r2, 1e-6), 0.04, 17, 0.5, 0.35)
            };
            rates.push(run_experiment(&cfg).unwrap().covering.unwrap().rate);
        }
        assert!(
            rates[0] <= rates[1] && rates[1] <= rates[2],
            "covering rates not monotone: {rates:?}"
        );
        assert!(
            rates[2] - rates[0] > 0.3,
            "ladder should show a real transition: {rates:?}"
        );
    }

    #[test]
    fn bob_success_does_not_improve_beyond_first_stage_capacity() {
        let s = setup(0.95);
        let info = crate::binary::hybrid_information(&s, 0.0).unwrap();
        let mut rates = Vec::new();
        for r1 in [1e-4, info.i_u_by + 0.05, info.i_u_by + 0.10] {
            let cfg = SimConfig {
                n: 80,
                r1,
                r2: 1e-6,
                rf: 1e-6,
                typicality_slack: SimConfig::default_slack(80),
                trials: 400,
                seed: 19,
                setup: s,
                u: 0.0,
            };
            rates.push(run_experiment(&cfg).unwrap().bob.unwrap().rate);
        }
        assert!(
            rates[0] >= rates[1] && rates[1] >= rates[2],
            "bob rates not nonincreasing: {rates:?}"
        );
        assert!(rates[0] - rates[2] > 0.5, "no transition: {rates:?}");
    }

    #[test]
    fn eve_decodability_transitions_at_its_rate() {
        // rate pair straddling I(V;AZ|U) by ±0.1 bits; below it the bucket
        // is decodable, above it uniqueness collapses
        let s = setup(0.5);
        let u = 0.012;
        let info = crate::binary::hybrid_information(&s, u).unwrap();
        let base = SimConfig {
            n: 80,
            r1: 1e-4,
            r2: 1e-6,
            rf: 1e-6,
            typicality_slack: SimConfig::default_slack(80),
            trials: 500,
            seed: 13,
            setup: s,
            u,
        };
        let half_lo = ((info.i_v_az_u - 0.1) / 2.0).max(1e-6);
        let lo = SimConfig {
            r2: half_lo,
            rf: half_lo,
            ..base
        };
        let hi = SimConfig {
            r2: (info.i_v_az_u + 0.1) / 2.0,
            rf: (info.i_v_az_u + 0.1) / 2.0,
            ..base
        };
        let rate_lo = run_experiment(&lo).unwrap().eve.unwrap().rate;
        let rate_hi = run_experiment(&hi).unwrap().eve.unwrap().rate;
        assert!(rate_lo >= 0.8, "low-rate eve success {rate_lo}");
        assert!(rate_hi <= 0.2, "high-rate eve success {rate_hi}");
    }

    #[test]
    fn margin_compliant_construction_succeeds_end_to_end() {
        // rates sit at least 0.05 bits inside every covering/packing and
        // decodability constraint, with the codebook near its cap
        let s = BinarySetup::new(0.0, 0.1, 0.1).unwrap();
        let u = 0.3;
        let info = crate::binary::hybrid_information(&s, u).unwrap();
        let cfg = SimConfig {
            n: 128,
            r1: 0.05,
            r2: 0.05,
            rf: 0.01,
            typicality_slack: 0.04,
            trials: 500,
            seed: 31,
            setup: s,
            u,
        };
        assert!(cfg.r1 >= info.i_ua + 0.05);
        assert!(cfg.r1 <= info.i_u_by - 0.05);
        assert!(cfg.r2 >= info.i_va_u + 0.05);
        assert!(cfg.r2 + cfg.rf <= info.i_v_by_u.min(info.i_v_az_u) - 0.05);
        let res = run_experiment(&cfg).unwrap();
        let covering = res.covering.unwrap().rate;
        let bob = res.bob.unwrap().rate;
        let eve = res.eve.unwrap().rate;
        assert!(
            covering >= 0.7 && bob >= 0.7 && eve >= 0.7,
            "rates: covering={covering} bob={bob} eve={eve}"
        );
        assert_eq!(res.mean_distortion, Some(0.0));
    }

    #[test]
    fn derived_seed_separates_streams() {
        let s = derived_seed(1234, 0);
        for t in 1..100u64 {
            assert_ne!(s, derived_seed(1234, t));
        }
    }
}
