//! Distortion–equivocation region of a standard Gaussian source sent over a
//! Gaussian wiretap channel, with eavesdropper side information and no
//! side information at the legitimate receiver.
//!
//! Equivocation Δ is a differential-entropy rate in bits; the companion
//! quantity D_E = 2^{2Δ}/(2πe) lower-bounds the eavesdropper's MMSE. The
//! module evaluates, for a channel-input power budget P and noise powers
//! (P_Y, P_Z, P_E):
//!
//! - the optimal achievable boundary D ↦ D_E (closed form),
//! - the separation-based digital scheme (optimized over its rate split μ),
//! - the power-reduced analog scheme,
//! - linear-mixing hybrid codes V = αA + γN, X = √P(βA − γN), evaluated
//!   through the joint covariance (log-det information quantities), and
//! - a time-sharing baseline between the analog and digital sweet spots.

use crate::curve::{CurvePoint, RegionCurve, Scheme};
use nalgebra::{Cholesky, DMatrix, Dyn};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

/// 2πe, the variance-to-entropy constant for Gaussians.
pub const TWO_PI_E: f64 = 2.0 * std::f64::consts::PI * std::f64::consts::E;

/// Slack below which a distortion is still considered inside its interval.
const D_TOL: f64 = 1e-12;
/// Variance below which a Gaussian component is treated as degenerate and
/// dropped from information quantities.
const DEGENERATE_VAR: f64 = 1e-12;
/// Constraint slacks down to this value count as feasible (pure rounding).
const FEAS_TOL: f64 = -1e-9;

#[derive(Debug, Error)]
pub enum GaussianError {
    #[error("{name} must be positive (got {value})")]
    NonPositivePower { name: &'static str, value: f64 },
    #[error("distortion {d} outside [{lo}, {hi}]")]
    DistortionOutOfRange { d: f64, lo: f64, hi: f64 },
    #[error("mu {mu} outside [{lo}, 1]")]
    MuOutOfRange { mu: f64, lo: f64 },
    #[error("requires P_Y < P_Z (got P_Y={p_y}, P_Z={p_z})")]
    ChannelOrder { p_y: f64, p_z: f64 },
    #[error("unsupported case: finite Bob side-information power")]
    UnsupportedFinitePb,
    #[error("mixing coefficient beta_mix {0} outside [0, 1]")]
    BetaMixOutOfRange(f64),
    #[error("covariance matrix is singular for these parameters")]
    SingularCovariance,
    #[error("D_E must be positive (got {0})")]
    NonPositiveDe(f64),
    #[error("unknown variable `{0}` in covariance model")]
    UnknownVariable(String),
}

pub type Result<T> = std::result::Result<T, GaussianError>;

/// Scenario powers: channel input power P, channel noise powers P_Y (Bob)
/// and P_Z (Eve), side-information noise powers P_E (Eve) and optionally
/// P_B (Bob; `None` means no side information at Bob, i.e. P_B → ∞).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GaussianSetup {
    pub p: f64,
    pub p_y: f64,
    pub p_z: f64,
    pub p_e: f64,
    pub p_b: Option<f64>,
}

impl GaussianSetup {
    pub fn new(p: f64, p_y: f64, p_z: f64, p_e: f64, p_b: Option<f64>) -> Result<Self> {
        for (name, value) in [("P", p), ("P_Y", p_y), ("P_Z", p_z), ("P_E", p_e)] {
            if value <= 0.0 || value.is_nan() {
                return Err(GaussianError::NonPositivePower { name, value });
            }
        }
        if let Some(pb) = p_b {
            if pb <= 0.0 || pb.is_nan() {
                return Err(GaussianError::NonPositivePower {
                    name: "P_B",
                    value: pb,
                });
            }
        }
        Ok(GaussianSetup {
            p,
            p_y,
            p_z,
            p_e,
            p_b,
        })
    }

    /// Smallest achievable distortion, 1/(1 + P/P_Y).
    pub fn min_distortion(&self) -> f64 {
        1.0 / (1.0 + self.p / self.p_y)
    }

    /// Distortion beyond which the digital scheme is already optimal,
    /// (1 + P/P_Z)/(1 + P/P_Y).
    pub fn digital_distortion(&self) -> f64 {
        (1.0 + self.p / self.p_z) / (1.0 + self.p / self.p_y)
    }

    /// Var(A | E) = 1/(1 + 1/P_E): no scheme can push D_E above this.
    pub fn de_ceiling(&self) -> f64 {
        1.0 / (1.0 + 1.0 / self.p_e)
    }

    fn require_no_bob_side_info(&self) -> Result<()> {
        if self.p_b.is_some() {
            return Err(GaussianError::UnsupportedFinitePb);
        }
        Ok(())
    }

    fn require_bob_better_channel(&self) -> Result<()> {
        if self.p_y >= self.p_z {
            return Err(GaussianError::ChannelOrder {
                p_y: self.p_y,
                p_z: self.p_z,
            });
        }
        Ok(())
    }
}

/// Whether a separation-based (digital) design is known to achieve the whole
/// region for the given powers. The corner with a better channel to Bob but
/// better side information at Eve is the one where it does not.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SeparationStatus {
    SeparationOptimal,
    Open,
}

pub fn separation_status(setup: &GaussianSetup) -> SeparationStatus {
    let bob_better_channel = setup.p_y < setup.p_z;
    let bob_worse_side_info = match setup.p_b {
        Some(pb) => pb > setup.p_e,
        None => true, // absent side information is the P_B → ∞ limit
    };
    if bob_better_channel && bob_worse_side_info {
        SeparationStatus::Open
    } else {
        SeparationStatus::SeparationOptimal
    }
}

/// Linear-mixing coefficients of the hybrid code V = αA + γN,
/// X = √P(βA − γN), with γ = √(1 − β²).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GaussianHybridParams {
    pub alpha: f64,
    pub beta_mix: f64,
    pub gamma: f64,
}

impl GaussianHybridParams {
    pub fn new(alpha: f64, beta_mix: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&beta_mix) {
            return Err(GaussianError::BetaMixOutOfRange(beta_mix));
        }
        let gamma = (1.0 - beta_mix * beta_mix).max(0.0).sqrt();
        Ok(GaussianHybridParams {
            alpha,
            beta_mix,
            gamma,
        })
    }
}

/// A point of the region: distortion at Bob, equivocation rate at Eve, and
/// the induced MMSE bound D_E = 2^{2Δ}/(2πe).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegionPoint {
    pub d: f64,
    pub delta: f64,
    pub d_e: f64,
}

impl RegionPoint {
    pub fn from_distortion_delta(d: f64, delta: f64) -> Self {
        debug_assert!(d > 0.0, "distortion must be positive");
        RegionPoint {
            d,
            delta,
            d_e: equivocation_to_de(delta),
        }
    }

    pub fn from_distortion_de(d: f64, d_e: f64) -> Result<Self> {
        Ok(RegionPoint {
            d,
            delta: de_to_equivocation(d_e)?,
            d_e,
        })
    }

    /// Checks the coupling D_E = 2^{2Δ}/(2πe) to within 1e-12.
    pub fn is_consistent(&self) -> bool {
        (self.d_e - equivocation_to_de(self.delta)).abs() <= 1e-12
    }
}

/// D_E = 2^{2Δ}/(2πe).
pub fn equivocation_to_de(delta: f64) -> f64 {
    (2.0f64).powf(2.0 * delta) / TWO_PI_E
}

/// Inverse of [`equivocation_to_de`]: Δ = ½ log₂(2πe · D_E).
pub fn de_to_equivocation(d_e: f64) -> Result<f64> {
    if d_e <= 0.0 || d_e.is_nan() {
        return Err(GaussianError::NonPositiveDe(d_e));
    }
    Ok(0.5 * (TWO_PI_E * d_e).log2())
}

/// Largest achievable D_E at distortion D (the region boundary):
/// D_E = 1 / ( max{1, (1/D)·(1+P/P_Z)/(1+P/P_Y)} + 1/P_E ).
///
/// Requires P_Y < P_Z and no side information at Bob.
pub fn optimal_boundary_de(d: f64, setup: &GaussianSetup) -> Result<f64> {
    setup.require_no_bob_side_info()?;
    setup.require_bob_better_channel()?;
    let d_min = setup.min_distortion();
    if d < d_min - D_TOL {
        return Err(GaussianError::DistortionOutOfRange {
            d,
            lo: d_min,
            hi: f64::INFINITY,
        });
    }
    let ratio = (1.0 + setup.p / setup.p_z) / (1.0 + setup.p / setup.p_y);
    Ok(1.0 / ((ratio / d).max(1.0) + 1.0 / setup.p_e))
}

/// D_E achieved by the separation-based scheme at rate-split parameter μ:
/// D_E = 1/(1/μ + 1/P_E) · min{1, D(1+P/P_Y) / (1 + μP/P_Z − (1−μ)P_Y/P_Z)}.
pub fn digital_de(d: f64, mu: f64, setup: &GaussianSetup) -> Result<f64> {
    setup.require_no_bob_side_info()?;
    setup.require_bob_better_channel()?;
    let d_min = setup.min_distortion();
    if d < d_min - D_TOL {
        return Err(GaussianError::DistortionOutOfRange {
            d,
            lo: d_min,
            hi: f64::INFINITY,
        });
    }
    if !(d_min - 1e-12..=1.0 + 1e-12).contains(&mu) {
        return Err(GaussianError::MuOutOfRange { mu, lo: d_min });
    }
    let first = 1.0 / (1.0 / mu + 1.0 / setup.p_e);
    let denom = 1.0 + mu * setup.p / setup.p_z - (1.0 - mu) * setup.p_y / setup.p_z;
    let second = (d * (1.0 + setup.p / setup.p_y) / denom).min(1.0);
    Ok(first * second)
}

/// Maximizes [`digital_de`] over μ ∈ [1/(1+P/P_Y), 1]: coarse grid at
/// resolution 1e-3, then golden-section refinement. Returns (D_E, μ*).
pub fn digital_best_de(d: f64, setup: &GaussianSetup) -> Result<(f64, f64)> {
    let mu_lo = setup.min_distortion();
    let steps = ((1.0 - mu_lo) / 1e-3).ceil() as usize;
    let mut best = (f64::NEG_INFINITY, mu_lo);
    for k in 0..=steps {
        let mu = (mu_lo + k as f64 * 1e-3).min(1.0);
        let de = digital_de(d, mu, setup)?;
        if de > best.0 {
            best = (de, mu);
        }
    }
    let lo = (best.1 - 2e-3).max(mu_lo);
    let hi = (best.1 + 2e-3).min(1.0);
    let (de, mu) = golden_max(
        |mu| digital_de(d, mu, setup).unwrap_or(f64::NEG_INFINITY),
        lo,
        hi,
    );
    if de > best.0 {
        best = (de, mu);
    }
    Ok(best)
}

/// Golden-section maximization of a locally unimodal function on [lo, hi].
fn golden_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > 1e-9 {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        }
    }
    let mid = 0.5 * (lo + hi);
    (f(mid), mid)
}

/// D_E of the pure analog scheme at distortion D ∈ [1/(1+P/P_Y), 1]: the
/// source is scaled to a reduced power p' = P_Y(1/D − 1) so that
/// D = 1/(1 + p'/P_Y), which yields
/// D_E = Var(A | Z, E) = 1/(1 + 1/P_E + (1/D − 1)·P_Y/P_Z).
pub fn analog_de(d: f64, setup: &GaussianSetup) -> Result<f64> {
    setup.require_no_bob_side_info()?;
    let d_min = setup.min_distortion();
    if d < d_min - D_TOL || d > 1.0 + D_TOL {
        return Err(GaussianError::DistortionOutOfRange {
            d,
            lo: d_min,
            hi: 1.0,
        });
    }
    Ok(1.0 / (1.0 + 1.0 / setup.p_e + (1.0 / d - 1.0) * setup.p_y / setup.p_z))
}

/// Reduced transmit power used by the analog scheme to hit distortion D.
pub fn analog_reduced_power(d: f64, setup: &GaussianSetup) -> f64 {
    setup.p_y * (1.0 / d - 1.0)
}

/// Mixing coefficients that make the hybrid code achieve the boundary at
/// distortion D ∈ [1/(1+P/P_Y), (1+P/P_Z)/(1+P/P_Y)].
pub fn hybrid_params_for_distortion(d: f64, setup: &GaussianSetup) -> Result<GaussianHybridParams> {
    setup.require_no_bob_side_info()?;
    setup.require_bob_better_channel()?;
    let lo = setup.min_distortion();
    let hi = setup.digital_distortion();
    if d < lo - D_TOL || d > hi + D_TOL {
        return Err(GaussianError::DistortionOutOfRange { d, lo, hi });
    }
    let radicand = (1.0 + setup.p / setup.p_z - d * (1.0 + setup.p / setup.p_y)).max(0.0);
    let beta = ((setup.p_z / setup.p).sqrt() * radicand.sqrt()).min(1.0);
    let gamma_sq = 1.0 - beta * beta;
    let drive = ((setup.p / setup.p_y - setup.p / setup.p_z) / d).sqrt();
    let alpha = (beta + gamma_sq * drive) / (1.0 + gamma_sq * setup.p / setup.p_y) - beta;
    GaussianHybridParams::new(alpha, beta)
}

/// Result of evaluating a hybrid code through its joint covariance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HybridEvaluation {
    pub point: RegionPoint,
    /// Slack of the decodability constraint, I(V;Y) − I(V;A).
    pub constraint_slack: f64,
    /// True when the slack is above the rounding floor (−1e-9).
    pub feasible: bool,
}

/// Evaluates the hybrid code (V = αA + γN, X = √P(βA − γN)) exactly through
/// the joint Gaussian covariance of (A, V, X, Y, Z, E):
/// D = Var(A|V,Y) and Δ = h(A|E) − I(V;A) − I(X;Z|E) + min{I(V;Y), I(V;AZ)}.
pub fn hybrid_evaluate(
    params: &GaussianHybridParams,
    setup: &GaussianSetup,
) -> Result<HybridEvaluation> {
    setup.require_no_bob_side_info()?;
    let model = hybrid_covariance(params, setup);

    let d = model.conditional_variance("A", &["V", "Y"])?;
    let h_a_given_e = model.conditional_entropy_bits(&["A"], &["E"])?;
    let i_va = model.mutual_information_bits(&["V"], &["A"])?;
    let i_xz_e = model.conditional_mutual_information_bits(&["X"], &["Z"], &["E"])?;
    let i_vy = model.mutual_information_bits(&["V"], &["Y"])?;
    let i_vaz = model.mutual_information_bits(&["V"], &["A", "Z"])?;

    let delta = h_a_given_e - i_va - i_xz_e + i_vy.min(i_vaz);
    let slack = i_vy - i_va;
    Ok(HybridEvaluation {
        point: RegionPoint::from_distortion_delta(d, delta),
        constraint_slack: slack,
        feasible: slack >= FEAS_TOL,
    })
}

/// D_E of time sharing between the analog-optimal endpoint (D_min) and the
/// digital-optimal point (D_dig). (D, Δ) interpolates linearly, so D_E
/// interpolates geometrically.
pub fn time_sharing_de(d: f64, setup: &GaussianSetup) -> Result<f64> {
    setup.require_no_bob_side_info()?;
    setup.require_bob_better_channel()?;
    let lo = setup.min_distortion();
    let hi = setup.digital_distortion();
    if d < lo - D_TOL || d > hi + D_TOL {
        return Err(GaussianError::DistortionOutOfRange { d, lo, hi });
    }
    let de_lo = optimal_boundary_de(lo, setup)?;
    let de_hi = optimal_boundary_de(hi, setup)?;
    let lambda = ((d - lo) / (hi - lo)).clamp(0.0, 1.0);
    Ok(de_lo.powf(1.0 - lambda) * de_hi.powf(lambda))
}

/// Zero-mean jointly Gaussian vector described by its covariance matrix.
/// Information quantities are computed from log-determinants; components
/// with (conditional) variance below 1e-12 are treated as degenerate and
/// dropped.
#[derive(Debug, Clone)]
pub struct GaussianVec {
    names: Vec<String>,
    cov: DMatrix<f64>,
}

impl GaussianVec {
    /// Builds the covariance of `rows · base` where `base` has independent
    /// components with the given variances: Σ = L diag(var) Lᵀ.
    pub fn from_linear_map(names: &[&str], rows: &DMatrix<f64>, base_var: &[f64]) -> Self {
        assert_eq!(rows.nrows(), names.len());
        assert_eq!(rows.ncols(), base_var.len());
        let d = DMatrix::from_diagonal(&nalgebra::DVector::from_row_slice(base_var));
        let cov = rows * d * rows.transpose();
        GaussianVec {
            names: names.iter().map(|s| s.to_string()).collect(),
            cov,
        }
    }

    pub fn covariance(&self) -> &DMatrix<f64> {
        &self.cov
    }

    fn indices(&self, vars: &[&str]) -> Result<Vec<usize>> {
        vars.iter()
            .map(|v| {
                self.names
                    .iter()
                    .position(|n| n == v)
                    .ok_or_else(|| GaussianError::UnknownVariable(v.to_string()))
            })
            .collect()
    }

    /// Drops variables whose marginal variance is degenerate.
    fn live_indices(&self, vars: &[&str]) -> Result<Vec<usize>> {
        Ok(self
            .indices(vars)?
            .into_iter()
            .filter(|&i| self.cov[(i, i)] > DEGENERATE_VAR)
            .collect())
    }

    fn block(&self, rows: &[usize], cols: &[usize]) -> DMatrix<f64> {
        DMatrix::from_fn(rows.len(), cols.len(), |r, c| self.cov[(rows[r], cols[c])])
    }

    fn conditional_cov(&self, target: &[usize], given: &[usize]) -> Result<DMatrix<f64>> {
        let s_tt = self.block(target, target);
        if given.is_empty() {
            return Ok(s_tt);
        }
        let s_gg = self.block(given, given);
        let s_tg = self.block(target, given);
        let chol: Cholesky<f64, Dyn> =
            Cholesky::new(s_gg).ok_or(GaussianError::SingularCovariance)?;
        let solved = chol.solve(&s_tg.transpose());
        Ok(&s_tt - &s_tg * solved)
    }

    /// Var(target | given) for a scalar target.
    pub fn conditional_variance(&self, target: &str, given: &[&str]) -> Result<f64> {
        let t = self.indices(&[target])?;
        let g = self.live_indices(given)?;
        Ok(self.conditional_cov(&t, &g)?[(0, 0)])
    }

    /// Differential entropy h(vars) in bits, ½ log₂((2πe)^k det Σ).
    pub fn entropy_bits(&self, vars: &[&str]) -> Result<f64> {
        let idx = self.live_indices(vars)?;
        if idx.is_empty() {
            return Ok(0.0);
        }
        let sigma = self.block(&idx, &idx);
        entropy_of_cov(&sigma)
    }

    /// h(x | given) in bits.
    pub fn conditional_entropy_bits(&self, x: &[&str], given: &[&str]) -> Result<f64> {
        let xi = self.live_indices(x)?;
        if xi.is_empty() {
            return Ok(0.0);
        }
        let gi = self.live_indices(given)?;
        let sigma = self.conditional_cov(&xi, &gi)?;
        entropy_of_cov(&sigma)
    }

    /// I(x; y) in bits; degenerate components carry no information.
    pub fn mutual_information_bits(&self, x: &[&str], y: &[&str]) -> Result<f64> {
        self.conditional_mutual_information_bits(x, y, &[])
    }

    /// I(x; y | given) in bits, via h(x|given) − h(x|y,given).
    pub fn conditional_mutual_information_bits(
        &self,
        x: &[&str],
        y: &[&str],
        given: &[&str],
    ) -> Result<f64> {
        let xi = self.live_indices(x)?;
        let yi = self.live_indices(y)?;
        if xi.is_empty() || yi.is_empty() {
            return Ok(0.0);
        }
        let gi = self.live_indices(given)?;
        let mut yg = yi.clone();
        yg.extend_from_slice(&gi);
        let h1 = entropy_of_cov(&self.conditional_cov(&xi, &gi)?)?;
        let h2 = entropy_of_cov(&self.conditional_cov(&xi, &yg)?)?;
        Ok((h1 - h2).max(0.0))
    }
}

fn entropy_of_cov(sigma: &DMatrix<f64>) -> Result<f64> {
    let k = sigma.nrows() as f64;
    let chol: Cholesky<f64, Dyn> =
        Cholesky::new(sigma.clone()).ok_or(GaussianError::SingularCovariance)?;
    let det = chol.determinant();
    if det <= 0.0 || det.is_nan() {
        return Err(GaussianError::SingularCovariance);
    }
    Ok(0.5 * (k * TWO_PI_E.log2() + det.log2()))
}

/// Joint covariance of (A, V, X, Y, Z, E) for the hybrid code.
pub fn hybrid_covariance(params: &GaussianHybridParams, setup: &GaussianSetup) -> GaussianVec {
    let (a, b, g) = (params.alpha, params.beta_mix, params.gamma);
    let sp = setup.p.sqrt();
    // base = (A, N, N_Y, N_Z, N_E)
    let rows = DMatrix::from_row_slice(
        6,
        5,
        &[
            1.0,
            0.0,
            0.0,
            0.0,
            0.0, // A
            a,
            g,
            0.0,
            0.0,
            0.0, // V = αA + γN
            sp * b,
            -sp * g,
            0.0,
            0.0,
            0.0, // X = √P(βA − γN)
            sp * b,
            -sp * g,
            1.0,
            0.0,
            0.0, // Y = X + N_Y
            sp * b,
            -sp * g,
            0.0,
            1.0,
            0.0, // Z = X + N_Z
            1.0,
            0.0,
            0.0,
            0.0,
            1.0, // E = A + N_E
        ],
    );
    GaussianVec::from_linear_map(
        &["A", "V", "X", "Y", "Z", "E"],
        &rows,
        &[1.0, 1.0, setup.p_y, setup.p_z, setup.p_e],
    )
}

/// Sweeps the requested schemes over a distortion grid. Points outside a
/// scheme's domain are skipped; rows are sorted by distortion.
pub fn sweep(
    setup: &GaussianSetup,
    d_grid: &[f64],
    schemes: &[Scheme],
) -> Result<Vec<RegionCurve>> {
    schemes
        .iter()
        .map(|&scheme| {
            let mut points: Vec<CurvePoint> = d_grid
                .par_iter()
                .filter_map(|&d| point_for(scheme, d, setup).transpose())
                .collect::<Result<Vec<_>>>()?;
            points.sort_by(|a, b| a.x.total_cmp(&b.x));
            Ok(RegionCurve { scheme, points })
        })
        .collect()
}

/// Evaluates one scheme at one distortion; `Ok(None)` when the distortion is
/// outside the scheme's domain.
fn point_for(scheme: Scheme, d: f64, setup: &GaussianSetup) -> Result<Option<CurvePoint>> {
    let out_of_domain = |e: &GaussianError| matches!(e, GaussianError::DistortionOutOfRange { .. });
    let point = match scheme {
        Scheme::Optimal => match optimal_boundary_de(d, setup) {
            Ok(de) => {
                let delta = de_to_equivocation(de)?;
                let params = if d <= setup.digital_distortion() + D_TOL {
                    let p = hybrid_params_for_distortion(d.min(setup.digital_distortion()), setup)?;
                    vec![("alpha", p.alpha), ("beta", p.beta_mix)]
                } else {
                    Vec::new()
                };
                Some(CurvePoint {
                    x: d,
                    delta,
                    d_e: Some(de),
                    params,
                    feasible: true,
                })
            }
            Err(e) if out_of_domain(&e) => None,
            Err(e) => return Err(e),
        },
        Scheme::Digital => match digital_best_de(d, setup) {
            Ok((de, mu)) => Some(CurvePoint {
                x: d,
                delta: de_to_equivocation(de)?,
                d_e: Some(de),
                params: vec![("mu", mu)],
                feasible: true,
            }),
            Err(e) if out_of_domain(&e) => None,
            Err(e) => return Err(e),
        },
        Scheme::Analog => match analog_de(d, setup) {
            Ok(de) => Some(CurvePoint {
                x: d,
                delta: de_to_equivocation(de)?,
                d_e: Some(de),
                params: Vec::new(),
                feasible: true,
            }),
            Err(e) if out_of_domain(&e) => None,
            Err(e) => return Err(e),
        },
        Scheme::Timeshare => match time_sharing_de(d, setup) {
            Ok(de) => Some(CurvePoint {
                x: d,
                delta: de_to_equivocation(de)?,
                d_e: Some(de),
                params: Vec::new(),
                feasible: true,
            }),
            Err(e) if out_of_domain(&e) => None,
            Err(e) => return Err(e),
        },
        Scheme::Hybrid | Scheme::Outer => {
            // On this model the hybrid construction and the outer bound both
            // coincide with the optimal boundary; report them through it.
            return point_for(Scheme::Optimal, d, setup).map(|p| {
                p.map(|mut p| {
                    // keep the scheme's own row shape
                    p.feasible = true;
                    p
                })
            });
        }
    };
    Ok(point)
}
