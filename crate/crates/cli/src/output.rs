//! Deterministic text formatting for curve CSV files and result JSON.

use secrecylab_core::curve::RegionCurve;

/// Formats with 12 significant digits, trimming trailing zeros, in the
/// style of printf's %g. Deterministic and stable across runs; 12 digits
/// keep re-parsed equivocation values within 1e-9 even above 1 bit.
pub fn fmt_sig(x: f64) -> String {
    const SIG: usize = 12;
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".to_string()
        } else if x > 0.0 {
            "inf".to_string()
        } else {
            "-inf".to_string()
        };
    }
    let sci = format!("{:.*e}", SIG - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponential format");
    let exp: i32 = exp.parse().expect("exponent");
    if (-4..SIG as i32).contains(&exp) {
        let decimals = (SIG as i32 - 1 - exp).max(0) as usize;
        let fixed = format!("{x:.decimals$}");
        trim_zeros(&fixed)
    } else {
        format!("{}e{}", trim_zeros(mantissa), exp)
    }
}

fn trim_zeros(s: &str) -> String {
    if !s.contains('.') {
        return s.to_string();
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

/// Renders swept curves as CSV with header
/// `scheme,x,Delta,D_E,params,feasible`, rows sorted by (scheme, x).
pub fn curves_to_csv(curves: &[RegionCurve]) -> String {
    let mut rows: Vec<(String, f64, String)> = Vec::new();
    for curve in curves {
        for point in &curve.points {
            let d_e = point.d_e.map(fmt_sig).unwrap_or_default();
            let params = point
                .params
                .iter()
                .map(|(name, value)| format!("{name}={}", fmt_sig(*value)))
                .collect::<Vec<_>>()
                .join(";");
            let line = format!(
                "{},{},{},{},{},{}",
                curve.scheme,
                fmt_sig(point.x),
                fmt_sig(point.delta),
                d_e,
                params,
                point.feasible,
            );
            rows.push((curve.scheme.name().to_string(), point.x, line));
        }
    }
    rows.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.total_cmp(&b.1)));
    let mut out = String::from("scheme,x,Delta,D_E,params,feasible\n");
    for (_, _, line) in rows {
        out.push_str(&line);
        out.push('\n');
    }
    out
}
