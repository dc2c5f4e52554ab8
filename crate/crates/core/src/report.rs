//! Assembled per-function report: every measure, the derived bounds, the
//! constant-free scale values for symmetric functions, and (on request)
//! the representing and symmetrized polynomials.

use crate::boolfn::{Family, TruthTable};
use crate::error::Result;
use crate::measures::{bound_report, symmetric_query_scale, threshold_query_scale, BoundReport};
use crate::polynomial::{interpolate, symmetrize, MultilinearPoly, UnivariatePoly};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MeasureReport {
    pub label: String,
    pub family: Option<String>,
    /// THRESHOLD level when the function came from that family.
    pub threshold_level: Option<usize>,
    pub bounds: BoundReport,
    /// Weight profile for symmetric functions.
    pub profile: Option<Vec<bool>>,
    /// `sqrt(n (n - Gamma))`: constant-free scale of the bounded-error
    /// query cost of a non-constant symmetric function.
    pub symmetric_scale: Option<f64>,
    /// `sqrt(m (n - m + 1))` for THRESHOLD at level m.
    pub threshold_scale: Option<f64>,
    pub representing_poly: Option<MultilinearPoly>,
    pub symmetrized_poly: Option<UnivariatePoly>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
}

/// Build the full report for one function. `source_family` annotates the
/// provenance (and enables the THRESHOLD scale value); `include_polys`
/// attaches the representing polynomial and its symmetrization.
pub fn measure_report(
    f: &TruthTable,
    label: &str,
    source_family: Option<(Family, Option<usize>)>,
    include_polys: bool,
) -> Result<MeasureReport> {
    let bounds = bound_report(f)?;
    let profile = f.symmetric_profile();
    let symmetric_scale = bounds
        .gamma
        .map(|gamma| symmetric_query_scale(f.n(), gamma));
    let threshold_scale = match source_family {
        Some((Family::Threshold, Some(m))) => Some(threshold_query_scale(f.n(), m)),
        _ => None,
    };
    let (representing_poly, symmetrized_poly) = if include_polys {
        let p = interpolate(f);
        let q = symmetrize(&p);
        (Some(p), Some(q))
    } else {
        (None, None)
    };
    Ok(MeasureReport {
        label: label.to_string(),
        family: source_family.map(|(fam, _)| fam.name().to_string()),
        threshold_level: source_family.and_then(|(_, m)| m),
        bounds,
        profile: profile.map(|p| p.values().to_vec()),
        symmetric_scale,
        threshold_scale,
        representing_poly,
        symmetrized_poly,
        timestamp: None,
    })
}

impl MeasureReport {
    /// Human-readable markdown block.
    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("## {}\n\n", self.label));
        out.push_str(&BoundReport::markdown_header());
        out.push('\n');
        out.push_str(&self.bounds.markdown_row(&self.label));
        out.push('\n');
        if let Some(profile) = &self.profile {
            let bits: String = profile.iter().map(|&b| if b { '1' } else { '0' }).collect();
            out.push_str(&format!("\n- weight profile: `{bits}`\n"));
        }
        if let Some(scale) = self.symmetric_scale {
            out.push_str(&format!(
                "- bounded-error scale sqrt(n(n-gamma)) = {scale:.4} (constant-free)\n"
            ));
        }
        if let Some(scale) = self.threshold_scale {
            out.push_str(&format!(
                "- threshold scale sqrt(m(n-m+1)) = {scale:.4} (constant-free)\n"
            ));
        }
        if let Some(p) = &self.representing_poly {
            out.push_str(&format!(
                "- representing polynomial: {} terms, degree {}\n",
                p.term_count(),
                p.degree()
            ));
        }
        if let Some(q) = &self.symmetrized_poly {
            out.push_str(&format!("- symmetrized degree: {}\n", q.degree()));
        }
        if let Some(ts) = self.timestamp {
            out.push_str(&format!("- generated at: {ts}\n"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn or4_report() {
        let f = TruthTable::from_family(Family::Or, 4, None).unwrap();
        let r = measure_report(&f, "or_4", Some((Family::Or, None)), true).unwrap();
        assert_eq!(r.bounds.deg, 4);
        assert_eq!(r.bounds.gamma, Some(3));
        assert_eq!(r.symmetric_scale, Some(2.0));
        assert!(r.threshold_scale.is_none());
        assert_eq!(r.representing_poly.as_ref().unwrap().degree(), 4);
        let md = r.to_markdown();
        assert!(md.contains("weight profile"));
    }

    #[test]
    fn threshold_report_carries_scale() {
        let f = TruthTable::from_family(Family::Threshold, 6, Some(2)).unwrap();
        let r = measure_report(&f, "threshold", Some((Family::Threshold, Some(2))), false)
            .unwrap();
        assert_eq!(r.threshold_scale, Some((2.0f64 * 5.0).sqrt()));
        assert_eq!(r.threshold_level, Some(2));
    }

    #[test]
    fn json_round_trip() {
        let f = TruthTable::from_family(Family::Parity, 3, None).unwrap();
        let r = measure_report(&f, "parity_3", Some((Family::Parity, None)), true).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        let back: MeasureReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back.bounds.deg, 3);
        assert_eq!(back.label, "parity_3");
    }
}
