//! Pearson correlation between measure differences and network properties.

use statrs::function::beta::beta_reg;

use crate::measures::MeasureTag;
use crate::stats::GraphStats;

/// Adjacent measure pairs; each difference is `uniqueness(hi) - uniqueness(lo)`.
pub const DIFF_PAIRS: [(MeasureTag, MeasureTag); 5] = [
    (MeasureTag::Count, MeasureTag::Degree),
    (MeasureTag::DegDist, MeasureTag::Count),
    (MeasureTag::DkAnon, MeasureTag::DegDist),
    (MeasureTag::Vrq, MeasureTag::DkAnon),
    (MeasureTag::Hybrid, MeasureTag::Vrq),
];

pub fn pair_name(pair: (MeasureTag, MeasureTag)) -> String {
    format!("{}-{}", pair.0.name(), pair.1.name())
}

/// Pearson's r, or `None` when either sample has zero variance or fewer
/// than two points.
pub fn pearson(x: &[f64], y: &[f64]) -> Option<f64> {
    assert_eq!(x.len(), y.len(), "samples differ in length");
    let n = x.len();
    if n < 2 {
        return None;
    }
    let constant = |s: &[f64]| s.iter().all(|&v| v == s[0]);
    if constant(x) || constant(y) {
        return None;
    }
    let mx = x.iter().sum::<f64>() / n as f64;
    let my = y.iter().sum::<f64>() / n as f64;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        let (dx, dy) = (a - mx, b - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    Some((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

/// Two-sided p-value of `r` over `n` points under the t-test with `n - 2`
/// degrees of freedom. With `t = r * sqrt(df / (1 - r^2))` the tail mass is
/// `I_{1 - r^2}(df/2, 1/2)`.
pub fn pearson_p_value(r: f64, n: usize) -> f64 {
    assert!(n >= 3, "p-value needs at least 3 points");
    let df = (n - 2) as f64;
    let x = (1.0 - r * r).clamp(0.0, 1.0);
    if x == 0.0 {
        return 0.0;
    }
    beta_reg(df / 2.0, 0.5, x).clamp(0.0, 1.0)
}

#[derive(Clone, Debug, PartialEq)]
pub struct CorrelationRecord {
    pub property: String,
    pub pair: String,
    /// `None` when a column has zero variance.
    pub r: Option<f64>,
    pub p_value: Option<f64>,
    pub n: usize,
}

/// Named numeric columns of a statistics report, in a fixed order.
pub fn stat_columns(s: &GraphStats) -> Vec<(&'static str, f64)> {
    vec![
        ("nodes", s.node_count as f64),
        ("edges", s.edge_count as f64),
        ("avg_degree", s.avg_degree),
        ("median_degree", s.median_degree),
        ("max_degree", s.max_degree as f64),
        ("avg_clustering", s.avg_clustering),
        ("assortativity", s.assortativity),
        ("diameter", s.diameter as f64),
        ("avg_distance", s.avg_distance),
        ("powerlaw_alpha", s.powerlaw_alpha),
        ("components", s.component_count as f64),
    ]
}

/// Correlates every adjacent-pair difference with every property.
/// `uniqueness[i][j]` is dataset `i` under `MeasureTag::ALL[j]`;
/// `properties` holds one value per dataset for each named column.
pub fn diff_correlations(
    uniqueness: &[[f64; 6]],
    properties: &[(String, Vec<f64>)],
) -> Vec<CorrelationRecord> {
    let n = uniqueness.len();
    assert!(n >= 3, "correlation needs at least 3 datasets");
    let idx = |t: MeasureTag| MeasureTag::ALL.iter().position(|&u| u == t).unwrap();
    let mut out = Vec::new();
    for pair in DIFF_PAIRS {
        let diff: Vec<f64> = uniqueness
            .iter()
            .map(|row| row[idx(pair.0)] - row[idx(pair.1)])
            .collect();
        for (name, column) in properties {
            assert_eq!(column.len(), n, "column {name} has wrong length");
            let r = if column.iter().chain(&diff).any(|v| !v.is_finite()) {
                None
            } else {
                pearson(column, &diff)
            };
            out.push(CorrelationRecord {
                property: name.clone(),
                pair: pair_name(pair),
                r,
                p_value: r.map(|r| pearson_p_value(r, n)),
                n,
            });
        }
    }
    out
}
