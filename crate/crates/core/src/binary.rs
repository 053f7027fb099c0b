//! Equivocation rates for a uniform binary source sent over a type-II
//! wiretap channel: noiseless to Bob, BSC(ζ) to Eve, with side information
//! B = BEC(β)(A) at Bob and E = BSC(ε)(A) at Eve. Bob reconstructs
//! losslessly (D = 0); the schemes differ in how much uncertainty they can
//! leave at Eve.
//!
//! Evaluated schemes:
//! - digital: separate secure source code and wiretap channel code with
//!   BSC-parameterized auxiliaries U = BSC(u)(A), Q = BSC(q)(X);
//! - hybrid: a single joint codebook with V ~ B(½) independent of A,
//!   X = V ⊕ A and U = V ⊕ W for an independent W ~ B(u);
//! - analog: X = A directly, Δ = H(A | E, Z);
//! - outer bound: the digital expression without the source-channel rate
//!   coupling, over the same auxiliary family (plus an optional |U| = 3
//!   exhaustive variant for sensitivity checks).
//!
//! All quantities are computed exactly from dense joint pmfs via [`crate::info`].

use crate::curve::{CurvePoint, RegionCurve, Scheme};
use crate::info::{binary_entropy, joint_from_factors, Factor, InfoError, JointPmf};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

/// Feasibility slacks down to this value count as feasible.
const FEAS_TOL: f64 = -1e-12;
/// Grid step for the digital/outer two-parameter search.
const UQ_GRID_STEP: f64 = 1.0 / 512.0;
/// Grid step for the hybrid single-parameter search.
const HYBRID_GRID_STEP: f64 = 1.0 / 1024.0;
/// Width at which the local golden refinement stops. The searched objectives
/// have kinks (clamped brackets, min terms), so the refinement is pushed well
/// past the nominal 1e-6 parameter resolution to keep the achieved value
/// accurate near a kinked maximum.
const REFINE_TOL: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum BinaryError {
    #[error("{name} = {value} outside [{lo}, {hi}]")]
    ParamOutOfRange {
        name: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },
    #[error("scheme `{0}` is not defined for the binary sweep")]
    SchemeNotAvailable(Scheme),
    #[error(transparent)]
    Info(#[from] InfoError),
}

pub type Result<T> = std::result::Result<T, BinaryError>;

fn check_range(name: &'static str, value: f64, lo: f64, hi: f64) -> Result<()> {
    if !(lo..=hi).contains(&value) || value.is_nan() {
        return Err(BinaryError::ParamOutOfRange {
            name,
            value,
            lo,
            hi,
        });
    }
    Ok(())
}

/// Scenario parameters: Bob's side-information erasure probability β, Eve's
/// side-information crossover ε, and Eve's channel crossover ζ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BinarySetup {
    pub erasure_prob: f64,
    pub eps: f64,
    pub zeta: f64,
}

impl BinarySetup {
    pub fn new(erasure_prob: f64, eps: f64, zeta: f64) -> Result<Self> {
        check_range("erasure_prob", erasure_prob, 0.0, 1.0)?;
        check_range("eps", eps, 0.0, 0.5)?;
        check_range("zeta", zeta, 0.0, 0.5)?;
        Ok(BinarySetup {
            erasure_prob,
            eps,
            zeta,
        })
    }
}

/// BSC crossover probabilities of the auxiliary variables: U = BSC(u)(A) and
/// Q = BSC(q)(X). The hybrid scheme only uses `u`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AuxParams {
    pub u: f64,
    pub q: f64,
}

impl AuxParams {
    pub fn new(u: f64, q: f64) -> Result<Self> {
        check_range("u", u, 0.0, 0.5)?;
        check_range("q", q, 0.0, 0.5)?;
        Ok(AuxParams { u, q })
    }
}

/// Relative quality of the two side informations as a function of (β, ε).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SideInfoClass {
    /// β < 2ε: A — B — E forms a Markov chain.
    MarkovChainAbe,
    /// 2ε ≤ β < 4ε(1−ε): B is less noisy than E.
    BLessNoisyThanE,
    /// 4ε(1−ε) ≤ β < h₂(ε): B is more capable than E (I(A;B) ≥ I(A;E)).
    BMoreCapableThanE,
    /// β ≥ h₂(ε): none of the above orders hold.
    NoneOfThese,
}

/// Classifies the side informations by the interval of β relative to the
/// thresholds 2ε, 4ε(1−ε) and h₂(ε). Each threshold belongs to the upper
/// class; a tiny tolerance keeps values that equal a threshold in exact
/// arithmetic (like β = 0.36 at ε = 0.1) from being misfiled by rounding.
pub fn classify_side_info(erasure_prob: f64, eps: f64) -> Result<SideInfoClass> {
    const BOUNDARY_TOL: f64 = 1e-12;
    check_range("erasure_prob", erasure_prob, 0.0, 1.0)?;
    check_range("eps", eps, 0.0, 0.5)?;
    let b = erasure_prob;
    if b < 2.0 * eps - BOUNDARY_TOL {
        Ok(SideInfoClass::MarkovChainAbe)
    } else if b < 4.0 * eps * (1.0 - eps) - BOUNDARY_TOL {
        Ok(SideInfoClass::BLessNoisyThanE)
    } else if b < binary_entropy(eps).expect("eps validated") - BOUNDARY_TOL {
        Ok(SideInfoClass::BMoreCapableThanE)
    } else {
        Ok(SideInfoClass::NoneOfThese)
    }
}

/// An evaluated equivocation rate together with whether the underlying rate
/// constraints admit the point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Equivocation {
    pub delta: f64,
    pub feasible: bool,
}

/// Best point of a two-parameter search.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BestAux {
    pub delta: f64,
    pub aux: AuxParams,
}

/// Best point of the hybrid single-parameter search.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BestHybrid {
    pub delta: f64,
    pub u: f64,
}

/// Joint pmf over (A, U, B, E) for the source side of the digital scheme.
fn source_joint(setup: &BinarySetup, u: f64) -> Result<JointPmf> {
    Ok(joint_from_factors(&[
        Factor::bernoulli("A", 0.5)?,
        Factor::bsc("A", "U", u)?,
        Factor::bec("A", "B", setup.erasure_prob)?,
        Factor::bsc("A", "E", setup.eps)?,
    ])?)
}

/// Joint pmf over (X, Q, Y, Z) for the channel side: X ~ B(½), Y = X
/// (noiseless to Bob), Z = BSC(ζ)(X), Q = BSC(q)(X).
fn channel_joint(zeta: f64, q: f64) -> Result<JointPmf> {
    Ok(joint_from_factors(&[
        Factor::bernoulli("X", 0.5)?,
        Factor::bsc("X", "Q", q)?,
        Factor::copy("X", 2, "Y")?,
        Factor::bsc("X", "Z", zeta)?,
    ])?)
}

/// Joint pmf over (W, V, A, U, X, B, E, Y, Z) for the hybrid scheme:
/// W ~ B(u), V ~ B(½) independent of A, U = V ⊕ W, X = V ⊕ A, Y = X,
/// Z = BSC(ζ)(X), B = BEC(β)(A), E = BSC(ε)(A).
pub fn hybrid_joint(setup: &BinarySetup, u: f64) -> Result<JointPmf> {
    check_range("u", u, 0.0, 0.5)?;
    Ok(joint_from_factors(&[
        Factor::bernoulli("W", u)?,
        Factor::bernoulli("V", 0.5)?,
        Factor::bernoulli("A", 0.5)?,
        Factor::xor("V", "W", "U")?,
        Factor::xor("V", "A", "X")?,
        Factor::bec("A", "B", setup.erasure_prob)?,
        Factor::bsc("A", "E", setup.eps)?,
        Factor::copy("X", 2, "Y")?,
        Factor::bsc("X", "Z", setup.zeta)?,
    ])?)
}

/// Per-u source terms of the digital/outer expressions.
#[derive(Debug, Clone, Copy)]
struct SourceTerms {
    u: f64,
    /// H(A | U, E)
    h_a_ue: f64,
    /// H(A | U, B), i.e. I(A;A | U,B)
    h_a_ub: f64,
    /// I(U; A | B)
    i_ua_b: f64,
}

fn source_terms(setup: &BinarySetup, u: f64) -> Result<SourceTerms> {
    let joint = source_joint(setup, u)?;
    Ok(SourceTerms {
        u,
        h_a_ue: joint.conditional_entropy(&["A"], &["U", "E"])?,
        h_a_ub: joint.conditional_entropy(&["A"], &["U", "B"])?,
        i_ua_b: joint.conditional_mutual_information(&["U"], &["A"], &["B"])?,
    })
}

/// Per-q channel terms of the digital/outer expressions.
#[derive(Debug, Clone, Copy)]
struct ChannelTerms {
    q: f64,
    /// I(Q; Y)
    i_qy: f64,
    /// I(X;Y|Q) − I(X;Z|Q), the secure channel-rate surplus
    surplus: f64,
}

fn channel_terms(zeta: f64, q: f64) -> Result<ChannelTerms> {
    let joint = channel_joint(zeta, q)?;
    let i_xy_q = joint.conditional_mutual_information(&["X"], &["Y"], &["Q"])?;
    let i_xz_q = joint.conditional_mutual_information(&["X"], &["Z"], &["Q"])?;
    Ok(ChannelTerms {
        q,
        i_qy: joint.mutual_information(&["Q"], &["Y"])?,
        surplus: i_xy_q - i_xz_q,
    })
}

/// Lossless-rate terms shared by every (u, q): H(A|B) and I(X;Y).
fn lossless_terms(setup: &BinarySetup) -> Result<(f64, f64)> {
    let source = source_joint(setup, 0.0)?;
    let channel = channel_joint(setup.zeta, 0.0)?;
    Ok((
        source.conditional_entropy(&["A"], &["B"])?,
        channel.mutual_information(&["X"], &["Y"])?,
    ))
}

fn digital_delta(src: &SourceTerms, ch: &ChannelTerms) -> f64 {
    src.h_a_ue - (src.h_a_ub - ch.surplus).max(0.0)
}

fn outer_delta(src: &SourceTerms, ch: &ChannelTerms, h_a_b: f64) -> f64 {
    src.h_a_ue - (h_a_b - src.i_ua_b - ch.surplus).max(0.0)
}

/// Equivocation rate of the digital scheme at auxiliary parameters (u, q),
/// with lossless reconstruction at Bob. Feasibility requires
/// I(U;A|B) ≤ I(Q;Y) and H(A|B) ≤ I(X;Y).
pub fn digital_equivocation(setup: &BinarySetup, aux: &AuxParams) -> Result<Equivocation> {
    let src = source_terms(setup, aux.u)?;
    let ch = channel_terms(setup.zeta, aux.q)?;
    let (h_a_b, i_xy) = lossless_terms(setup)?;
    let feasible = ch.i_qy - src.i_ua_b >= FEAS_TOL && i_xy - h_a_b >= FEAS_TOL;
    Ok(Equivocation {
        delta: digital_delta(&src, &ch),
        feasible,
    })
}

/// Maximizes the digital equivocation over the (u, q) grid (step 1/512) with
/// local refinement, restricted to feasible points.
pub fn digital_best(setup: &BinarySetup) -> Result<BestAux> {
    best_over_uq(setup, |src, ch, lossless| {
        let feasible = ch.i_qy - src.i_ua_b >= FEAS_TOL && lossless.1 - lossless.0 >= FEAS_TOL;
        (digital_delta(src, ch), feasible)
    })
}

/// Equivocation rate of the outer bound evaluated on the BSC(u)/BSC(q)
/// auxiliary family with V = A and T = X; only the lossless transport
/// constraint H(A|B) ≤ I(X;Y) applies.
pub fn outer_bound_equivocation(setup: &BinarySetup, aux: &AuxParams) -> Result<Equivocation> {
    let src = source_terms(setup, aux.u)?;
    let ch = channel_terms(setup.zeta, aux.q)?;
    let (h_a_b, i_xy) = lossless_terms(setup)?;
    Ok(Equivocation {
        delta: outer_delta(&src, &ch, h_a_b),
        feasible: i_xy - h_a_b >= FEAS_TOL,
    })
}

/// Maximizes the outer-bound expression over the (u, q) grid with local
/// refinement.
pub fn outer_best(setup: &BinarySetup) -> Result<BestAux> {
    best_over_uq(setup, |src, ch, lossless| {
        let feasible = lossless.1 - lossless.0 >= FEAS_TOL;
        (outer_delta(src, ch, lossless.0), feasible)
    })
}

/// Shared (u, q) grid-plus-refinement driver. The objective receives the
/// per-u source terms, per-q channel terms and (H(A|B), I(X;Y)).
fn best_over_uq(
    setup: &BinarySetup,
    objective: impl Fn(&SourceTerms, &ChannelTerms, (f64, f64)) -> (f64, bool),
) -> Result<BestAux> {
    let lossless = lossless_terms(setup)?;
    let n = (0.5 / UQ_GRID_STEP) as usize;
    let u_terms: Vec<SourceTerms> = (0..=n)
        .map(|k| source_terms(setup, k as f64 * UQ_GRID_STEP))
        .collect::<Result<_>>()?;
    let q_terms: Vec<ChannelTerms> = (0..=n)
        .map(|k| channel_terms(setup.zeta, k as f64 * UQ_GRID_STEP))
        .collect::<Result<_>>()?;

    let mut best: Option<(f64, f64, f64)> = None; // (delta, u, q)
    for src in &u_terms {
        for ch in &q_terms {
            let (delta, feasible) = objective(src, ch, lossless);
            if !feasible {
                continue;
            }
            let better = match best {
                None => true,
                // deterministic argmax: larger delta, then smaller u, then q
                Some((bd, bu, bq)) => {
                    delta > bd || (delta == bd && (src.u < bu || (src.u == bu && ch.q < bq)))
                }
            };
            if better {
                best = Some((delta, src.u, ch.q));
            }
        }
    }
    let (mut delta, mut u, mut q) =
        best.expect("u = q = 1/2 is always feasible, the grid cannot be empty");

    // Local refinement. The objective can be flat in q wherever the bracket
    // clamps to zero, so refining u at a fixed q can stall on a plateau;
    // instead u is refined against the best-over-q envelope, and q is then
    // re-optimized at the refined u.
    let envelope = |u: f64| -> Result<f64> {
        let src = source_terms(setup, u)?;
        let mut best = f64::NEG_INFINITY;
        for ch in &q_terms {
            let (d, feasible) = objective(&src, ch, lossless);
            if feasible && d > best {
                best = d;
            }
        }
        Ok(best)
    };
    let (du, refined_u) = golden_max_res(
        envelope,
        (u - UQ_GRID_STEP).max(0.0),
        (u + UQ_GRID_STEP).min(0.5),
    )?;
    if du > delta {
        u = refined_u;
        // grid-best q at the refined u, then a golden polish around it
        let src = source_terms(setup, u)?;
        let mut best_q = (f64::NEG_INFINITY, q);
        for ch in &q_terms {
            let (d, feasible) = objective(&src, ch, lossless);
            if feasible && d > best_q.0 {
                best_q = (d, ch.q);
            }
        }
        delta = best_q.0;
        q = best_q.1;
        let (dq, refined_q) = golden_max_res(
            |x| {
                let ch = channel_terms(setup.zeta, x)?;
                let (d, feasible) = objective(&src, &ch, lossless);
                Ok(if feasible { d } else { f64::NEG_INFINITY })
            },
            (q - UQ_GRID_STEP).max(0.0),
            (q + UQ_GRID_STEP).min(0.5),
        )?;
        if dq > delta {
            delta = dq;
            q = refined_q;
        }
    }
    Ok(BestAux {
        delta,
        aux: AuxParams { u, q },
    })
}

fn golden_max_res(f: impl Fn(f64) -> Result<f64>, mut lo: f64, mut hi: f64) -> Result<(f64, f64)> {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    let mut best = if f1 >= f2 { (f1, x1) } else { (f2, x2) };
    while hi - lo > REFINE_TOL {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2)?;
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1)?;
        }
        let (fc, xc) = if f1 >= f2 { (f1, x1) } else { (f2, x2) };
        if fc > best.0 {
            best = (fc, xc);
        }
    }
    Ok(best)
}

/// Information quantities of the hybrid joint used by the equivocation
/// expression, the feasibility checks and the simulator's rate placement.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HybridInformation {
    pub i_ua: f64,
    pub i_u_by: f64,
    pub i_va_u: f64,
    pub i_v_by_u: f64,
    pub i_v_az_u: f64,
    pub h_a_ue: f64,
    pub i_xz_ue: f64,
}

/// Computes every information quantity of the hybrid scheme from the joint.
pub fn hybrid_information(setup: &BinarySetup, u: f64) -> Result<HybridInformation> {
    let joint = hybrid_joint(setup, u)?;
    Ok(HybridInformation {
        i_ua: joint.mutual_information(&["U"], &["A"])?,
        i_u_by: joint.mutual_information(&["U"], &["B", "Y"])?,
        i_va_u: joint.conditional_mutual_information(&["V"], &["A"], &["U"])?,
        i_v_by_u: joint.conditional_mutual_information(&["V"], &["B", "Y"], &["U"])?,
        i_v_az_u: joint.conditional_mutual_information(&["V"], &["A", "Z"], &["U"])?,
        h_a_ue: joint.conditional_entropy(&["A"], &["U", "E"])?,
        i_xz_ue: joint.conditional_mutual_information(&["X"], &["Z"], &["U", "E"])?,
    })
}

/// Equivocation of the hybrid scheme at noise parameter u:
/// Δ = H(A|UE) − I(V;A|U) − I(X;Z|UE) + min{I(V;BY|U), I(V;AZ|U)},
/// feasible when I(U;A) ≤ I(U;BY) and I(V;A|U) ≤ I(V;BY|U).
///
/// Bob's estimate Â(V,B,Y) = V ⊕ Y reproduces A exactly on every
/// positive-mass cell (see [`hybrid_reconstruction_is_lossless`]), so the
/// distortion is zero.
pub fn hybrid_equivocation(setup: &BinarySetup, u: f64) -> Result<Equivocation> {
    let info = hybrid_information(setup, u)?;
    let delta = info.h_a_ue - info.i_va_u - info.i_xz_ue + info.i_v_by_u.min(info.i_v_az_u);
    let feasible = info.i_u_by - info.i_ua >= FEAS_TOL && info.i_v_by_u - info.i_va_u >= FEAS_TOL;
    Ok(Equivocation { delta, feasible })
}

/// Checks that V ⊕ Y = A on every positive-mass cell of the hybrid joint.
pub fn hybrid_reconstruction_is_lossless(setup: &BinarySetup, u: f64) -> Result<bool> {
    let joint = hybrid_joint(setup, u)?;
    let vya = joint.marginalize(&["V", "A", "Y"])?;
    for v in 0..2 {
        for a in 0..2 {
            for y in 0..2 {
                if vya.prob(&[v, a, y]) > 0.0 && (v ^ y) != a {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Maximizes the hybrid equivocation over the u grid (step 1/1024),
/// restricted to feasible points.
pub fn hybrid_best(setup: &BinarySetup) -> Result<BestHybrid> {
    let n = (0.5 / HYBRID_GRID_STEP) as usize;
    let mut best: Option<(f64, f64)> = None;
    for k in 0..=n {
        let u = k as f64 * HYBRID_GRID_STEP;
        let eq = hybrid_equivocation(setup, u)?;
        if !eq.feasible {
            continue;
        }
        let better = match best {
            None => true,
            Some((bd, bu)) => eq.delta > bd || (eq.delta == bd && u < bu),
        };
        if better {
            best = Some((eq.delta, u));
        }
    }
    let (delta, u) = best.expect("the grid always contains feasible points");
    Ok(BestHybrid { delta, u })
}

/// Equivocation of the pure analog scheme X = A: Δ = H(A | E, Z) with
/// independent E = BSC(ε)(A) and Z = BSC(ζ)(A).
pub fn analog_equivocation(setup: &BinarySetup) -> Result<f64> {
    let joint = joint_from_factors(&[
        Factor::bernoulli("A", 0.5)?,
        Factor::bsc("A", "E", setup.eps)?,
        Factor::bsc("A", "Z", setup.zeta)?,
    ])?;
    Ok(joint.conditional_entropy(&["A"], &["E", "Z"])?)
}

/// Outer-bound search over an exhaustive |U| = 3 conditional-kernel family
/// (rows of p(u|a) on a simplex grid of step 1/16) with the BSC(q) channel
/// auxiliary. Slower sensitivity check behind its own entry point.
pub fn outer_best_extended(setup: &BinarySetup) -> Result<f64> {
    let (h_a_b, i_xy) = lossless_terms(setup)?;
    if i_xy - h_a_b < FEAS_TOL {
        return Ok(0.0);
    }
    let n = (0.5 / UQ_GRID_STEP) as usize;
    let q_terms: Vec<ChannelTerms> = (0..=n)
        .map(|k| channel_terms(setup.zeta, k as f64 * UQ_GRID_STEP))
        .collect::<Result<_>>()?;
    let best_surplus = q_terms
        .iter()
        .map(|t| t.surplus)
        .fold(f64::NEG_INFINITY, f64::max);

    const STEPS: usize = 16;
    let mut rows: Vec<[f64; 3]> = Vec::new();
    for i in 0..=STEPS {
        for j in 0..=(STEPS - i) {
            let k = STEPS - i - j;
            rows.push([
                i as f64 / STEPS as f64,
                j as f64 / STEPS as f64,
                k as f64 / STEPS as f64,
            ]);
        }
    }

    let best = rows
        .par_iter()
        .map(|row0| {
            let mut local: f64 = 0.0;
            for row1 in &rows {
                let kernel = Factor::new(
                    vec![("A".to_string(), 2)],
                    vec![("U".to_string(), 3)],
                    vec![row0[0], row0[1], row0[2], row1[0], row1[1], row1[2]],
                )?;
                let joint = joint_from_factors(&[
                    Factor::bernoulli("A", 0.5)?,
                    kernel,
                    Factor::bec("A", "B", setup.erasure_prob)?,
                    Factor::bsc("A", "E", setup.eps)?,
                ])?;
                let h_a_ue = joint.conditional_entropy(&["A"], &["U", "E"])?;
                let i_ua_b = joint.conditional_mutual_information(&["U"], &["A"], &["B"])?;
                // best q decouples: the bracket is minimized by the largest surplus
                let delta = h_a_ue - (h_a_b - i_ua_b - best_surplus).max(0.0);
                local = local.max(delta);
            }
            Ok(local)
        })
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0f64, f64::max);
    Ok(best)
}

/// Sweeps the requested schemes over a β grid; each point reports the
/// per-scheme best equivocation and the parameters that achieve it.
pub fn sweep(
    template: &BinarySetup,
    beta_grid: &[f64],
    schemes: &[Scheme],
) -> Result<Vec<RegionCurve>> {
    for &scheme in schemes {
        if !matches!(
            scheme,
            Scheme::Analog | Scheme::Digital | Scheme::Hybrid | Scheme::Outer
        ) {
            return Err(BinaryError::SchemeNotAvailable(scheme));
        }
    }
    schemes
        .iter()
        .map(|&scheme| {
            let mut points: Vec<CurvePoint> = beta_grid
                .par_iter()
                .map(|&beta| {
                    let setup = BinarySetup::new(beta, template.eps, template.zeta)?;
                    let point = match scheme {
                        Scheme::Analog => CurvePoint {
                            x: beta,
                            delta: analog_equivocation(&setup)?,
                            d_e: None,
                            params: Vec::new(),
                            feasible: true,
                        },
                        Scheme::Digital => {
                            let best = digital_best(&setup)?;
                            CurvePoint {
                                x: beta,
                                delta: best.delta,
                                d_e: None,
                                params: vec![("u", best.aux.u), ("q", best.aux.q)],
                                feasible: true,
                            }
                        }
                        Scheme::Hybrid => {
                            let best = hybrid_best(&setup)?;
                            CurvePoint {
                                x: beta,
                                delta: best.delta,
                                d_e: None,
                                params: vec![("u", best.u)],
                                feasible: true,
                            }
                        }
                        Scheme::Outer => {
                            let best = outer_best(&setup)?;
                            CurvePoint {
                                x: beta,
                                delta: best.delta,
                                d_e: None,
                                params: vec![("u", best.aux.u), ("q", best.aux.q)],
                                feasible: true,
                            }
                        }
                        _ => unreachable!("validated above"),
                    };
                    Ok(point)
                })
                .collect::<Result<Vec<_>>>()?;
            points.sort_by(|a, b| a.x.total_cmp(&b.x));
            Ok(RegionCurve { scheme, points })
        })
        .collect()
}
