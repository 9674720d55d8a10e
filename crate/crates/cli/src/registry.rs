//! Dataset registry: names, local paths, optional download URLs and the
//! published statistics used to check a local copy.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use graphanon_core::GraphStats;
use serde::{Deserialize, Serialize};

/// Tolerance for averaged statistics published with two decimals.
pub const AVERAGE_TOLERANCE: f64 = 0.01;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedStats {
    pub nodes: Option<usize>,
    pub edges: Option<usize>,
    pub avg_degree: Option<f64>,
    pub median_degree: Option<f64>,
    pub max_degree: Option<usize>,
    pub clustering: Option<f64>,
    pub assortativity: Option<f64>,
    pub diameter: Option<usize>,
    pub avg_distance: Option<f64>,
    pub alpha: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatasetEntry {
    pub name: String,
    /// Relative to the data directory unless absolute.
    pub path: Option<PathBuf>,
    pub url: Option<String>,
    #[serde(default)]
    pub expected: ExpectedStats,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub field: &'static str,
    pub expected: f64,
    pub actual: f64,
    /// Checks that count toward pass/fail; the rest are informational.
    pub enforced: bool,
    pub ok: bool,
}

impl ExpectedStats {
    /// Counts and diameter must match exactly; average degree, clustering
    /// and average distance within [`AVERAGE_TOLERANCE`]. Other published
    /// columns are compared but not enforced.
    pub fn check(&self, s: &GraphStats) -> Vec<Check> {
        let mut out = Vec::new();
        let mut exact = |field, want: Option<usize>, got: usize, enforced| {
            if let Some(w) = want {
                out.push(Check {
                    field,
                    expected: w as f64,
                    actual: got as f64,
                    enforced,
                    ok: w == got,
                });
            }
        };
        exact("nodes", self.nodes, s.node_count, true);
        exact("edges", self.edges, s.edge_count, true);
        exact("diameter", self.diameter, s.diameter, true);
        exact("max_degree", self.max_degree, s.max_degree, false);
        let mut near = |field, want: Option<f64>, got: f64, enforced| {
            if let Some(w) = want {
                out.push(Check {
                    field,
                    expected: w,
                    actual: got,
                    enforced,
                    ok: (w - got).abs() <= AVERAGE_TOLERANCE + 1e-9,
                });
            }
        };
        near("avg_degree", self.avg_degree, s.avg_degree, true);
        near("clustering", self.clustering, s.avg_clustering, true);
        near("avg_distance", self.avg_distance, s.avg_distance, true);
        near("median_degree", self.median_degree, s.median_degree, false);
        near("assortativity", self.assortativity, s.assortativity, false);
        near("alpha", self.alpha, s.powerlaw_alpha, false);
        out
    }
}

pub fn passes(checks: &[Check]) -> bool {
    checks.iter().filter(|c| c.enforced).all(|c| c.ok)
}

#[derive(Clone, Debug)]
pub struct Registry {
    pub entries: Vec<DatasetEntry>,
    pub data_dir: PathBuf,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Manifest {
    data_dir: Option<PathBuf>,
    #[serde(default)]
    dataset: Vec<DatasetEntry>,
}

impl Registry {
    pub fn builtin(data_dir: PathBuf) -> Self {
        Registry {
            entries: builtin_entries(),
            data_dir,
        }
    }

    /// Built-in entries overlaid with a TOML manifest. Manifest entries
    /// replace built-ins of the same name.
    pub fn with_manifest(mut self, path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading manifest {}", path.display()))?;
        let manifest: Manifest = toml::from_str(&text)
            .with_context(|| format!("parsing manifest {}", path.display()))?;
        let mut seen = std::collections::HashSet::new();
        for e in &manifest.dataset {
            if !seen.insert(e.name.clone()) {
                bail!("dataset {:?} listed twice in {}", e.name, path.display());
            }
        }
        if let Some(dir) = manifest.data_dir {
            let base = path.parent().unwrap_or(Path::new("."));
            self.data_dir = base.join(dir);
        }
        for e in manifest.dataset {
            match self.entries.iter_mut().find(|b| b.name == e.name) {
                Some(slot) => *slot = e,
                None => self.entries.push(e),
            }
        }
        Ok(self)
    }

    pub fn get(&self, name: &str) -> Option<&DatasetEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    /// Where the entry's file is expected to live, whether or not it exists.
    pub fn path_of(&self, e: &DatasetEntry) -> PathBuf {
        match &e.path {
            Some(p) => self.data_dir.join(p),
            None => {
                for ext in ["txt", "edges", "tsv", "csv"] {
                    let p = self.data_dir.join(format!("{}.{ext}", e.name));
                    if p.is_file() {
                        return p;
                    }
                }
                self.data_dir.join(format!("{}.txt", e.name))
            }
        }
    }

    /// An existing file path, or a registry name whose file exists.
    pub fn resolve(&self, arg: &str) -> Result<(String, PathBuf, Option<&DatasetEntry>)> {
        let direct = Path::new(arg);
        if direct.is_file() {
            let stem = direct
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| arg.to_owned());
            return Ok((stem.clone(), direct.to_owned(), self.get(&stem)));
        }
        let Some(entry) = self.get(arg) else {
            bail!("{arg:?} is neither a file nor a registered dataset");
        };
        let path = self.path_of(entry);
        if !path.is_file() {
            bail!(
                "dataset {arg:?} is registered but {} does not exist; run 'fetch' or place the file there",
                path.display()
            );
        }
        Ok((entry.name.clone(), path, Some(entry)))
    }
}

/// Network statistics as published for the paper's 32 datasets: nodes,
/// edges, average/median/max degree, clustering, assortativity, diameter,
/// average distance, power-law exponent.
const TABLE: [(
    &str,
    usize,
    usize,
    f64,
    f64,
    usize,
    f64,
    f64,
    usize,
    f64,
    f64,
); 32] = [
    (
        "radoslaw-emails",
        167,
        3250,
        38.92,
        40.0,
        139,
        0.69,
        -0.30,
        5,
        1.97,
        4.61,
    ),
    (
        "primary-school",
        236,
        5899,
        49.99,
        49.0,
        98,
        0.50,
        0.17,
        3,
        1.86,
        9.08,
    ),
    (
        "moreno-innov",
        241,
        923,
        7.66,
        7.0,
        28,
        0.31,
        -0.06,
        5,
        2.47,
        4.62,
    ),
    (
        "gene-fusion",
        291,
        279,
        1.92,
        1.0,
        34,
        0.00,
        -0.35,
        9,
        3.90,
        2.50,
    ),
    (
        "copnet-calls",
        536,
        621,
        2.32,
        2.0,
        18,
        0.25,
        0.17,
        22,
        7.37,
        3.82,
    ),
    (
        "copnet-sms",
        568,
        697,
        2.45,
        2.0,
        11,
        0.22,
        0.19,
        20,
        7.32,
        3.90,
    ),
    (
        "copnet-fb",
        800,
        6418,
        16.05,
        13.0,
        101,
        0.32,
        0.18,
        7,
        2.98,
        3.21,
    ),
    (
        "fb-reed98",
        962,
        18812,
        39.11,
        29.0,
        313,
        0.33,
        0.02,
        6,
        2.46,
        4.38,
    ),
    (
        "arenas-email",
        1133,
        5451,
        9.62,
        7.0,
        71,
        0.25,
        0.08,
        8,
        3.61,
        6.78,
    ),
    (
        "network-science",
        1461,
        2742,
        3.75,
        3.0,
        34,
        0.88,
        0.46,
        17,
        5.82,
        3.61,
    ),
    (
        "fb-simmons81",
        1518,
        32988,
        43.46,
        37.0,
        300,
        0.33,
        -0.06,
        7,
        2.57,
        4.74,
    ),
    (
        "dnc-emails",
        1893,
        4385,
        4.63,
        1.0,
        402,
        0.59,
        -0.31,
        8,
        3.37,
        2.01,
    ),
    (
        "moreno-health",
        2539,
        10455,
        8.24,
        8.0,
        27,
        0.15,
        0.25,
        10,
        4.56,
        8.24,
    ),
    (
        "fb-wellesley22",
        2970,
        94899,
        63.91,
        52.0,
        746,
        0.27,
        0.06,
        8,
        2.59,
        4.60,
    ),
    (
        "bitcoin-alpha",
        3783,
        14124,
        7.47,
        2.0,
        511,
        0.28,
        -0.17,
        10,
        3.57,
        2.09,
    ),
    (
        "grqc-collab",
        5242,
        14484,
        5.53,
        3.0,
        81,
        0.69,
        0.66,
        17,
        6.05,
        2.11,
    ),
    (
        "fb-carnegie49",
        6637,
        249967,
        75.33,
        54.0,
        840,
        0.29,
        0.12,
        8,
        2.74,
        4.98,
    ),
    (
        "pajek-erdos",
        6927,
        11850,
        3.42,
        1.0,
        507,
        0.40,
        -0.12,
        4,
        3.78,
        2.16,
    ),
    (
        "dt-interaction",
        7341,
        15138,
        4.12,
        1.0,
        584,
        0.00,
        -0.12,
        18,
        6.15,
        1.88,
    ),
    (
        "dg-assoc", 7813, 21357, 5.47, 2.0, 485, 0.00, -0.29, 8, 4.23, 1.94,
    ),
    (
        "fb-gwu54", 12193, 469528, 77.02, 60.0, 2002, 0.22, 0.03, 9, 2.83, 4.78,
    ),
    (
        "anybeat", 12645, 49132, 7.77, 2.0, 4800, 0.40, -0.12, 10, 3.17, 1.75,
    ),
    (
        "ce-cx", 15229, 245952, 32.30, 13.0, 375, 0.23, 0.34, 13, 3.85, 4.02,
    ),
    (
        "astro-physics",
        18771,
        198050,
        21.10,
        9.0,
        504,
        0.68,
        0.21,
        14,
        4.19,
        4.50,
    ),
    (
        "fb-bu10", 19700, 637528, 64.72, 51.0, 1819, 0.20, 0.05, 9, 3.03, 5.44,
    ),
    (
        "fb-uillinois",
        30664,
        1048574,
        68.39,
        50.0,
        2718,
        0.20,
        0.05,
        9,
        3.08,
        5.39,
    ),
    (
        "enron-email",
        36692,
        183831,
        10.02,
        3.0,
        1383,
        0.72,
        -0.11,
        13,
        4.03,
        1.97,
    ),
    (
        "fb-penn94",
        41536,
        1362220,
        65.59,
        48.0,
        4410,
        0.22,
        0.00,
        8,
        3.12,
        4.16,
    ),
    (
        "fb-wall-2009",
        46952,
        183412,
        7.81,
        4.0,
        223,
        0.15,
        0.22,
        18,
        5.60,
        5.24,
    ),
    (
        "brightkite",
        58228,
        214078,
        7.35,
        2.0,
        1134,
        0.27,
        0.01,
        18,
        4.92,
        2.48,
    ),
    (
        "the-marker-cafe",
        69413,
        1644843,
        47.39,
        6.0,
        8930,
        0.24,
        -0.15,
        9,
        3.06,
        2.86,
    ),
    (
        "slashdot-zoo",
        79116,
        467731,
        11.82,
        2.0,
        2534,
        0.09,
        -0.07,
        12,
        4.04,
        3.46,
    ),
];

/// Datasets small enough for a full-stats integration check.
pub const SMALL_DATASETS: [&str; 7] = [
    "radoslaw-emails",
    "primary-school",
    "moreno-innov",
    "gene-fusion",
    "copnet-calls",
    "copnet-sms",
    "copnet-fb",
];

pub fn builtin_entries() -> Vec<DatasetEntry> {
    TABLE
        .iter()
        .map(
            |&(name, nodes, edges, avg, median, max, clustering, assort, diameter, dist, alpha)| {
                DatasetEntry {
                    name: name.to_owned(),
                    path: None,
                    url: None,
                    expected: ExpectedStats {
                        nodes: Some(nodes),
                        edges: Some(edges),
                        avg_degree: Some(avg),
                        median_degree: Some(median),
                        max_degree: Some(max),
                        clustering: Some(clustering),
                        assortativity: Some(assort),
                        diameter: Some(diameter),
                        avg_distance: Some(dist),
                        alpha: Some(alpha),
                    },
                }
            },
        )
        .collect()
}

pub fn names(r: &Registry) -> BTreeMap<&str, bool> {
    r.entries
        .iter()
        .map(|e| (e.name.as_str(), r.path_of(e).is_file()))
        .collect()
}
