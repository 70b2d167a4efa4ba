//! Worst-case MAG families and the distortion sweeps measured on them.
//!
//! For a signature `w` of length `p` the worst case is the MAG in the space
//! `tau_from_bitstring(w)` whose characteristic string is `x` (by default a
//! single leading `1`). Its isomorphic classical graph has the same `x`, so
//! any difference between the compressed edge set strings of the two is
//! attributable to the multidimensional space.
//!
//! Signatures for a sweep are prefixes of one pseudorandom bit sequence, so
//! `ones(w)` never decreases along the sweep.

mod report;
pub mod stats;

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rand::distributions::{Bernoulli, Distribution};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use crate::bits::BitString;
use crate::codec::{encode_tau, write_edge_set};
use crate::complexity::{estimate, estimate_with, Compressor, Registry};
use crate::error::{MagError, Result};
use crate::isomorphism::{mag_to_graph, ClassicalGraph};
use crate::mag::{tau_from_bitstring, BinarySignature, CompanionTuple, SimpleMag, SizeCap};

pub use report::{
    read_report_json, render_svg, validate_report, write_csv, write_reports, ReportConfig, ReportKind, SweepReport,
    CSV_HEADER, REPORT_SCHEMA,
};

pub const DEFAULT_P_VALUES: [usize; 5] = [8, 12, 16, 20, 24];
/// Keeps `|E_c|` near 3.4·10⁷ at `p = 24`.
pub const DEFAULT_ONES_CAP: u64 = 13;
/// Seeds tried after the requested one before giving up.
pub const MAX_SEED_ATTEMPTS: u64 = 10_000;

/// The presence pattern placed on the possible edges.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Topology {
    /// Only possible edge 0 is present.
    Trivial,
    /// Each possible edge present independently with probability `ρ`.
    RandomDensity(f64),
}

impl fmt::Display for Topology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Topology::Trivial => write!(f, "trivial"),
            Topology::RandomDensity(rho) => write!(f, "random:{rho}"),
        }
    }
}

impl FromStr for Topology {
    type Err = MagError;

    /// `trivial` or `random:<ρ>` with `0 ≤ ρ ≤ 1`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || MagError::Parse {
            line: 0,
            msg: format!("topology `{s}` is neither `trivial` nor `random:<density>`"),
        };
        if s == "trivial" {
            return Ok(Topology::Trivial);
        }
        let rho: f64 = s.strip_prefix("random:").ok_or_else(bad)?.parse().map_err(|_| bad())?;
        if !(0.0..=1.0).contains(&rho) {
            return Err(MagError::InvalidConstruction(format!(
                "density {rho} is outside [0, 1]"
            )));
        }
        Ok(Topology::RandomDensity(rho))
    }
}

impl Serialize for Topology {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Topology {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Everything a sweep depends on. Two runs with equal configs produce
/// byte-identical reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub seed: u64,
    pub p_values: Vec<usize>,
    pub topology: Topology,
    pub compressor: String,
    pub ones_cap: u64,
    pub size_cap_bits: u64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            seed: 0,
            p_values: DEFAULT_P_VALUES.to_vec(),
            topology: Topology::Trivial,
            compressor: "lz".into(),
            ones_cap: DEFAULT_ONES_CAP,
            size_cap_bits: SizeCap::default().0,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.p_values.is_empty() {
            return Err(MagError::InvalidConstruction("no p values".into()));
        }
        if self.p_values[0] == 0 {
            return Err(MagError::InvalidConstruction("p must be at least 1".into()));
        }
        if self.p_values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(MagError::InvalidConstruction(
                "p values must be strictly increasing".into(),
            ));
        }
        if self.ones_cap == 0 {
            return Err(MagError::InvalidConstruction("ones cap must be at least 1".into()));
        }
        if let Topology::RandomDensity(rho) = self.topology {
            if !(0.0..=1.0).contains(&rho) {
                return Err(MagError::InvalidConstruction(format!(
                    "density {rho} is outside [0, 1]"
                )));
            }
        }
        Ok(())
    }

    fn min_p(&self) -> usize {
        self.p_values[0]
    }

    fn max_p(&self) -> usize {
        *self.p_values.last().expect("validated")
    }
}

/// The first `p` bits of the pseudorandom sequence for `seed`: ChaCha20
/// output bytes read MSB first. Shorter prefixes of the same seed agree.
pub fn signature_bits(seed: u64, p: usize) -> BinarySignature {
    let mut bytes = vec![0u8; p.div_ceil(8)];
    ChaCha20Rng::seed_from_u64(seed).fill_bytes(&mut bytes);
    let bits = BitString::from_bools((0..p).map(|i| bytes[i / 8] & (0x80 >> (i % 8)) != 0));
    BinarySignature::new(bits)
}

/// Outcome of rejection sampling over `seed, seed + 1, …`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeedChoice {
    pub requested: u64,
    pub effective: u64,
}

/// Picks the first seed whose sequence has at most `ones_cap` ones in its
/// first `max_p` bits and at least one in its first `min_p` bits.
pub fn select_seed(seed: u64, min_p: usize, max_p: usize, ones_cap: u64) -> Result<SeedChoice> {
    for attempt in 0..MAX_SEED_ATTEMPTS {
        let s = seed.wrapping_add(attempt);
        let w = signature_bits(s, max_p);
        let head = w.bits().iter().take(min_p).filter(|&b| b).count();
        if w.ones() <= ones_cap && head >= 1 {
            return Ok(SeedChoice {
                requested: seed,
                effective: s,
            });
        }
    }
    Err(MagError::InvalidConstruction(format!(
        "no seed in {seed}..{seed}+{MAX_SEED_ATTEMPTS} keeps ones(w) ≤ {ones_cap} for p = {max_p}"
    )))
}

/// Presence bits for `topology` over `n_edges` possible edges. Random
/// densities draw from the seed's generator on stream `p`, disjoint from the
/// signature stream.
pub fn topology_bits(topology: Topology, n_edges: u64, seed: u64, p: usize) -> BitString {
    match topology {
        Topology::Trivial => {
            let mut x = BitString::zeros(n_edges);
            if n_edges > 0 {
                x.set(0, true);
            }
            x
        }
        Topology::RandomDensity(rho) => {
            let mut rng = ChaCha20Rng::seed_from_u64(seed);
            rng.set_stream(p as u64);
            let coin = Bernoulli::new(rho).expect("density validated");
            BitString::from_bools((0..n_edges).map(|_| coin.sample(&mut rng)))
        }
    }
}

/// A worst-case MAG, its isomorphic classical graph and the signature `w`.
#[derive(Debug, Clone)]
pub struct WorstCase {
    pub w: BinarySignature,
    pub mag: SimpleMag,
    pub graph: ClassicalGraph,
}

/// Builds the worst case for `w = signature_bits(seed, p)`.
pub fn build_worst_case(seed: u64, p: usize, topology: Topology, cap: SizeCap) -> Result<WorstCase> {
    build_from_signature(signature_bits(seed, p), topology, seed, cap)
}

/// Builds the worst case in the space of `w`. A `w` without ones spans a
/// single vertex and is rejected as degenerate.
pub fn build_from_signature(w: BinarySignature, topology: Topology, seed: u64, cap: SizeCap) -> Result<WorstCase> {
    if w.ones() == 0 {
        return Err(MagError::Degenerate(format!(
            "w = {w} has no ones, so the space has a single vertex and no possible edges"
        )));
    }
    let tau = tau_from_bitstring(&w)?;
    cap.check(&tau)?;
    let x = topology_bits(topology, tau.num_possible_edges(), seed, w.len());
    let mag = SimpleMag::from_edge_bits(tau, x)?;
    let graph = mag_to_graph(&mag);
    Ok(WorstCase { w, mag, graph })
}

/// One measured point of a sweep; every size is in bits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DistortionRow {
    pub p: u64,
    pub ones: u64,
    pub n_vertices: u64,
    pub n_possible_edges: u64,
    pub c_x: u64,
    pub c_edgeset: u64,
    pub c_tau: u64,
    pub c_edgeset_given_x: u64,
    pub c_graph_edgeset: u64,
}

impl DistortionRow {
    /// `C(⟨E⟩) − C(⟨E(G)⟩)`.
    pub fn distortion(&self) -> i64 {
        self.c_edgeset as i64 - self.c_graph_edgeset as i64
    }

    /// Checks `|V| = 2^ones` and `|E_c| = |V|(|V| − 1)/2`.
    pub fn check_invariants(&self) -> Result<()> {
        let n = 1u64.checked_shl(self.ones as u32).filter(|_| self.ones < 64);
        if n != Some(self.n_vertices) {
            return Err(MagError::Malformed(format!(
                "row p = {}: {} vertices but {} ones",
                self.p, self.n_vertices, self.ones
            )));
        }
        let edges = u128::from(self.n_vertices) * u128::from(self.n_vertices.saturating_sub(1)) / 2;
        if edges != u128::from(self.n_possible_edges) {
            return Err(MagError::Malformed(format!(
                "row p = {}: {} possible edges for {} vertices",
                self.p, self.n_possible_edges, self.n_vertices
            )));
        }
        Ok(())
    }
}

fn stream_edge_set<'a>(tau: &'a CompanionTuple, flags: &'a BitString) -> impl Fn(&mut dyn Write) -> Result<()> + 'a {
    move |w| {
        write_edge_set(tau, flags, w)?;
        Ok(())
    }
}

/// Measures every column of a row for `wc` under `c`.
pub fn measure_row(wc: &WorstCase, c: &dyn Compressor) -> Result<DistortionRow> {
    let x = wc.mag.edge_bits();
    if x != wc.graph.edge_bits() {
        return Err(MagError::InvalidConstruction(
            "MAG and graph characteristic strings differ".into(),
        ));
    }
    let tau = wc.mag.tau();
    let graph_tau = CompanionTuple::new(vec![wc.graph.vertex_count()])?;

    let c_x = estimate(c, x.as_bytes())?.compressed_len;
    let c_edgeset = estimate_with(c, stream_edge_set(tau, x))?.compressed_len;
    let c_tau = estimate(c, encode_tau(tau).as_bytes())?.compressed_len;
    let joint = estimate_with(c, |w| {
        w.write_all(x.as_bytes())?;
        stream_edge_set(tau, x)(w)
    })?
    .compressed_len;
    let c_graph_edgeset = estimate_with(c, stream_edge_set(&graph_tau, x))?.compressed_len;

    Ok(DistortionRow {
        p: wc.w.len() as u64,
        ones: wc.w.ones(),
        n_vertices: tau.num_composite_vertices(),
        n_possible_edges: tau.num_possible_edges(),
        c_x,
        c_edgeset,
        c_tau,
        c_edgeset_given_x: joint.saturating_sub(c_x),
        c_graph_edgeset,
    })
}

/// A finished or aborted sweep. When `error` is set, `report` holds the rows
/// measured before the failure and is marked failed.
#[derive(Debug)]
pub struct SweepRun {
    pub report: SweepReport,
    pub error: Option<MagError>,
}

impl SweepRun {
    pub fn into_result(self) -> Result<SweepReport> {
        match self.error {
            Some(e) => Err(e),
            None => Ok(self.report),
        }
    }
}

struct Plan {
    compressor: std::sync::Arc<dyn Compressor>,
    seed: SeedChoice,
    cap: SizeCap,
    w: BinarySignature,
}

fn plan(cfg: &ExperimentConfig, registry: &Registry) -> Result<Plan> {
    cfg.validate()?;
    let compressor = registry.get(&cfg.compressor)?;
    let seed = select_seed(cfg.seed, cfg.min_p(), cfg.max_p(), cfg.ones_cap)?;
    let cap = SizeCap(cfg.size_cap_bits);
    let w = signature_bits(seed.effective, cfg.max_p());
    // the largest space of the sweep is checked before any work starts
    tau_from_bitstring(&w).and_then(|tau| cap.check(&tau))?;
    Ok(Plan {
        compressor,
        seed,
        cap,
        w,
    })
}

fn run_rows<F>(cfg: &ExperimentConfig, registry: &Registry, kind: ReportKind, row: F) -> SweepRun
where
    F: Fn(&Plan, usize) -> Result<DistortionRow>,
{
    let mut report = SweepReport::new(kind, cfg);
    let plan = match plan(cfg, registry) {
        Ok(plan) => plan,
        Err(e) => {
            report.fail(&e);
            return SweepRun { report, error: Some(e) };
        }
    };
    report.config.effective_seed = Some(plan.seed.effective);
    report.signature = Some(plan.w.to_string());
    for &p in &cfg.p_values {
        match row(&plan, p) {
            Ok(r) => report.push(r, p),
            Err(e) => {
                report.fail(&e);
                return SweepRun { report, error: Some(e) };
            }
        }
    }
    SweepRun { report, error: None }
}

fn prefix(w: &BinarySignature, p: usize) -> BinarySignature {
    BinarySignature::new(BitString::from_bools(w.bits().iter().take(p)))
}

/// For each `p`: the worst case for the prefix `w↾p`, measured.
pub fn run_distortion_sweep(cfg: &ExperimentConfig) -> SweepRun {
    run_distortion_sweep_with(cfg, &Registry::builtin())
}

pub fn run_distortion_sweep_with(cfg: &ExperimentConfig, registry: &Registry) -> SweepRun {
    run_rows(cfg, registry, ReportKind::DistortionSweep, |plan, p| {
        let wc = build_from_signature(prefix(&plan.w, p), cfg.topology, plan.seed.effective, plan.cap)?;
        measure_row(&wc, plan.compressor.as_ref())
    })
}

/// The uniform counterpart of each sweep point: the all-ones signature of
/// length `ones(w↾p)`, whose space `(2, …, 2)` has exactly as many vertices
/// as the worst case at `p` and therefore the same classical graph. Rows
/// carry the uniform order in `p`; the sweep point it pairs with is kept in
/// the report's `paired_p`.
pub fn run_uniform_control(cfg: &ExperimentConfig) -> SweepRun {
    run_uniform_control_with(cfg, &Registry::builtin())
}

pub fn run_uniform_control_with(cfg: &ExperimentConfig, registry: &Registry) -> SweepRun {
    run_rows(cfg, registry, ReportKind::UniformControl, |plan, p| {
        let k = prefix(&plan.w, p).ones() as usize;
        let uniform = BinarySignature::new(BitString::from_bools(std::iter::repeat_n(true, k)));
        let wc = build_from_signature(uniform, cfg.topology, plan.seed.effective, plan.cap)?;
        measure_row(&wc, plan.compressor.as_ref())
    })
}
