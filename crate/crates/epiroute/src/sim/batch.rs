//! Batch execution of independent runs with deterministic seeding.
//!
//! Run `k` of a batch draws from a ChaCha stream keyed by the master seed
//! with stream id `k`, so the ensemble is reproducible bit for bit no matter
//! how many rayon workers execute it: runs are collected in index order and
//! reduced sequentially.

use super::meeting::{run_meeting_with_rng, MeetingScenario};
use super::spatial::{run_spatial_with_rng, SpatialScenario};
use super::{NullSink, RunMetrics};
use crate::error::{Error, Result};
use crate::stats::{proportion_ci95_half_width, SampleStats};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Ensemble summary of a batch; means carry 95% normal-approximation CIs.
#[derive(Debug, Clone, PartialEq)]
pub struct AggregateStats {
    pub runs: usize,
    pub delivered: usize,
    pub losses: usize,
    pub loss_rate: f64,
    pub loss_ci95: f64,
    /// Delivery delay over delivered runs only; `None` if nothing arrived.
    pub delivery_delay: Option<SampleStats>,
    pub buffer: SampleStats,
    pub extinction: SampleStats,
}

impl AggregateStats {
    pub fn from_metrics(metrics: &[RunMetrics]) -> Self {
        let runs = metrics.len();
        let losses = metrics.iter().filter(|m| m.lost).count();
        let delays: Vec<f64> = metrics.iter().filter_map(|m| m.t_d).collect();
        let buffers: Vec<f64> = metrics.iter().map(|m| m.buffer_integral).collect();
        let extinct: Vec<f64> = metrics.iter().map(|m| m.t_extinct).collect();
        AggregateStats {
            runs,
            delivered: delays.len(),
            losses,
            loss_rate: losses as f64 / runs as f64,
            loss_ci95: proportion_ci95_half_width(losses, runs),
            delivery_delay: SampleStats::from_samples(&delays),
            buffer: SampleStats::from_samples(&buffers).expect("runs >= 1"),
            extinction: SampleStats::from_samples(&extinct).expect("runs >= 1"),
        }
    }
}

/// RNG for run `index` of a batch keyed by `master_seed`.
pub fn run_rng(master_seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(index);
    rng
}

fn collect<F>(runs: usize, run_one: F) -> Result<Vec<RunMetrics>>
where
    F: Fn(u64) -> Result<RunMetrics> + Sync,
{
    if runs < 1 {
        return Err(Error::InvalidParameter("need at least one run".into()));
    }
    let results: Vec<Result<RunMetrics>> =
        (0..runs as u64).into_par_iter().map(&run_one).collect();
    let mut metrics = Vec::with_capacity(runs);
    for (idx, r) in results.into_iter().enumerate() {
        metrics.push(r.map_err(|e| Error::Run {
            run: idx,
            message: e.to_string(),
        })?);
    }
    Ok(metrics)
}

/// All per-run metrics of a meeting-process batch, in run order.
pub fn batch_meeting_metrics(
    scn: &MeetingScenario,
    runs: usize,
    master_seed: u64,
) -> Result<Vec<RunMetrics>> {
    collect(runs, |index| {
        let mut rng = run_rng(master_seed, index);
        run_meeting_with_rng(scn, &mut rng, &mut NullSink)
    })
}

pub fn batch_meeting(
    scn: &MeetingScenario,
    runs: usize,
    master_seed: u64,
) -> Result<AggregateStats> {
    Ok(AggregateStats::from_metrics(&batch_meeting_metrics(
        scn,
        runs,
        master_seed,
    )?))
}

/// All per-run metrics of a spatial batch, in run order.
pub fn batch_spatial_metrics(
    scn: &SpatialScenario,
    runs: usize,
    master_seed: u64,
) -> Result<Vec<RunMetrics>> {
    collect(runs, |index| {
        let mut rng = run_rng(master_seed, index);
        run_spatial_with_rng(scn, &mut rng, &mut NullSink)
    })
}

pub fn batch_spatial(
    scn: &SpatialScenario,
    runs: usize,
    master_seed: u64,
) -> Result<AggregateStats> {
    Ok(AggregateStats::from_metrics(&batch_spatial_metrics(
        scn,
        runs,
        master_seed,
    )?))
}
