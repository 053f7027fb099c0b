//! Region curves: one (x, Δ) point per grid value and scheme, with the
//! parameters that achieved it. These are the rows the CLI serializes.

use serde::Serialize;
use std::fmt;
use std::str::FromStr;

/// Transmission scheme identifiers used in curve output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    Analog,
    Digital,
    Hybrid,
    Optimal,
    Outer,
    Timeshare,
}

impl Scheme {
    pub const ALL: [Scheme; 6] = [
        Scheme::Analog,
        Scheme::Digital,
        Scheme::Hybrid,
        Scheme::Optimal,
        Scheme::Outer,
        Scheme::Timeshare,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Scheme::Analog => "analog",
            Scheme::Digital => "digital",
            Scheme::Hybrid => "hybrid",
            Scheme::Optimal => "optimal",
            Scheme::Outer => "outer",
            Scheme::Timeshare => "timeshare",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Scheme::ALL
            .iter()
            .find(|scheme| scheme.name() == s)
            .copied()
            .ok_or_else(|| format!("unknown scheme `{s}`"))
    }
}

/// One evaluated point of a region curve. `x` is the swept coordinate
/// (distortion D for the Gaussian case, erasure probability β for the binary
/// case); `d_e` is only meaningful for Gaussian curves.
#[derive(Debug, Clone, Serialize)]
pub struct CurvePoint {
    pub x: f64,
    pub delta: f64,
    pub d_e: Option<f64>,
    /// Scheme parameters that achieve the point, as (name, value) pairs.
    pub params: Vec<(&'static str, f64)>,
    pub feasible: bool,
}

/// A full sweep of one scheme.
#[derive(Debug, Clone, Serialize)]
pub struct RegionCurve {
    pub scheme: Scheme,
    pub points: Vec<CurvePoint>,
}
