//! Calibrated regression margins for the empirical sum ratios.
//!
//! The sawtooth-sum and divisor-moment comparisons have unknowable implied
//! constants, so they are pinned empirically: the first run records the
//! observed ratios into a JSON file, and every later run asserts that the
//! freshly computed ratios stay within a 10x margin of the recorded ones.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::pairs::ExponentPair;
use crate::sums::{psi_sum_report, tau_moment};

/// One pinned sawtooth-sum ratio.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PsiSumPoint {
    pub x: u64,
    pub n_start: u64,
    pub ratio: f64,
}

/// One pinned divisor-moment ratio.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TauMomentPoint {
    pub x: u64,
    pub z: u64,
    pub u: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Calibration {
    pub psi_sum: Vec<PsiSumPoint>,
    pub tau_moment: Vec<TauMomentPoint>,
}

/// Fixed (x, N) grid for the sawtooth-sum ratios.
pub const PSI_SUM_GRID: [(u64, u64); 6] = [
    (1_000_000, 100),
    (1_000_000, 1000),
    (10_000_000, 500),
    (10_000_000, 3162),
    (100_000_000, 1000),
    (100_000_000, 10_000),
];

/// Fixed (x, z, u) grid for the divisor-moment ratios.
pub const TAU_MOMENT_GRID: [(u64, u64, f64); 2] =
    [(1_000_000, 10_000, 1.0), (1_000_000, 10_000, 2.108)];

/// Runs the full grid and returns the observed ratios.
pub fn compute_current() -> Calibration {
    let pair = ExponentPair::bourgain();
    let theta = crate::default_theta();
    let psi_sum = PSI_SUM_GRID
        .iter()
        .map(|&(x, n)| PsiSumPoint {
            x,
            n_start: n,
            ratio: psi_sum_report(x, n, &pair, &theta)
                .expect("grid points satisfy N <= sqrt(x)")
                .ratio,
        })
        .collect();
    let tau_moment = TAU_MOMENT_GRID
        .iter()
        .map(|&(x, z, u)| TauMomentPoint {
            x,
            z,
            u,
            ratio: tau_moment(x, z, u)
                .expect("grid points satisfy 2 <= z <= x")
                .ratio,
        })
        .collect();
    Calibration {
        psi_sum,
        tau_moment,
    }
}

pub fn load(path: &Path) -> Option<Calibration> {
    let text = fs::read_to_string(path).ok()?;
    serde_json::from_str(&text).ok()
}

pub fn save(path: &Path, calibration: &Calibration) -> std::io::Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    fs::write(path, serde_json::to_string_pretty(calibration).unwrap())
}

/// Human-readable check results: one line per grid point.
#[derive(Debug, Clone)]
pub struct MarginCheck {
    pub label: String,
    pub recorded: f64,
    pub observed: f64,
    pub pass: bool,
}

/// Compares fresh ratios against recorded ones with a 10x margin. Zero
/// recorded ratios only demand a finite observation.
pub fn margin_checks(recorded: &Calibration, observed: &Calibration) -> Vec<MarginCheck> {
    const MARGIN: f64 = 10.0;
    let mut checks = Vec::new();
    for (r, o) in recorded.psi_sum.iter().zip(&observed.psi_sum) {
        assert_eq!(
            (r.x, r.n_start),
            (o.x, o.n_start),
            "calibration grids differ"
        );
        checks.push(MarginCheck {
            label: format!("psi-sum-ratio x={} N={}", r.x, r.n_start),
            recorded: r.ratio,
            observed: o.ratio,
            pass: o.ratio.is_finite() && (r.ratio == 0.0 || o.ratio <= MARGIN * r.ratio),
        });
    }
    for (r, o) in recorded.tau_moment.iter().zip(&observed.tau_moment) {
        assert_eq!((r.x, r.z), (o.x, o.z), "calibration grids differ");
        checks.push(MarginCheck {
            label: format!("tau-moment-ratio x={} z={} u={}", r.x, r.z, r.u),
            recorded: r.ratio,
            observed: o.ratio,
            pass: o.ratio.is_finite() && (r.ratio == 0.0 || o.ratio <= MARGIN * r.ratio),
        });
    }
    checks
}

/// Default on-disk location of the recorded calibration.
pub fn default_path() -> std::path::PathBuf {
    match std::env::var_os("SMOOTHSPAN_CALIBRATION") {
        Some(p) => p.into(),
        None => Path::new(env!("CARGO_MANIFEST_DIR"))
            .join("tests")
            .join("data")
            .join("calibration.json"),
    }
}
