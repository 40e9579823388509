//! Monte Carlo ensembles of independent realizations.
//!
//! Realization `i` is seeded with [`realization_seed`]`(master_seed, i)`, so
//! any single run can be replayed on its own. Realizations are simulated in
//! fixed-size chunks (in parallel within a chunk) and folded into running
//! means strictly in index order, which makes the statistics bit-identical
//! for any worker count while keeping memory at O(chunk · K).

use rayon::prelude::*;

use crate::agent::{run_realization, AlgorithmParams, Fidelities};
use crate::channels::{Channel, EnergyBasis};
use crate::error::{Error, Result};
use crate::linalg::Unitary2;
use crate::rng::realization_seed;
use crate::scalar::Scalar;

pub const DEFAULT_REALIZATIONS: usize = 1000;

const CHUNK: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnsembleConfig<T> {
    pub channel: Channel<T>,
    pub params: AlgorithmParams<T>,
    pub realizations: usize,
    pub master_seed: u64,
    /// Also track fidelities of D_k applied to the other basis state.
    pub dual_basis: bool,
}

impl<T: Scalar> EnsembleConfig<T> {
    pub fn new(
        channel: Channel<T>,
        params: AlgorithmParams<T>,
        realizations: usize,
        master_seed: u64,
        dual_basis: bool,
    ) -> Result<Self> {
        let cfg = Self {
            channel,
            params,
            realizations,
            master_seed,
            dual_basis,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.realizations == 0 {
            return Err(Error::InvalidConfig(
                "realization count must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// Per-iteration means with their standard errors.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Series<T> {
    pub mean: Vec<T>,
    pub std_err: Vec<T>,
}

impl<T: Scalar> Series<T> {
    pub fn last_mean(&self) -> Option<T> {
        self.mean.last().copied()
    }

    pub fn last_std_err(&self) -> Option<T> {
        self.std_err.last().copied()
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct DualSeries<T> {
    pub f_e: Series<T>,
    pub f_g: Series<T>,
}

/// Ensemble means W_k, F_k^(e), F_k^(g), F_k for k = 1..=K.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct EnsembleStats<T> {
    pub realizations: usize,
    pub w: Series<T>,
    pub f_e: Series<T>,
    pub f_g: Series<T>,
    pub f_max: Series<T>,
    /// Fidelities of D_k applied to the opposite computational basis state.
    pub dual: Option<DualSeries<T>>,
}

impl<T: Scalar> EnsembleStats<T> {
    pub fn iterations(&self) -> usize {
        self.w.mean.len()
    }
}

/// (|⟨e|D|1⟩|, |⟨g|D|1⟩|).
pub fn dual_basis_fidelities<T: Scalar>(transform: &Unitary2<T>, basis: &EnergyBasis<T>) -> (T, T) {
    let f = Fidelities::of(transform, basis, crate::linalg::BasisBit::One);
    (f.excited, f.ground)
}

const COLUMNS: usize = 6;
type Observation<T> = [T; COLUMNS];

/// Welford running mean and sum of squared deviations.
#[derive(Debug, Clone, Copy, Default)]
struct Running<T> {
    mean: T,
    m2: T,
}

impl<T: Scalar> Running<T> {
    fn push(&mut self, x: T, n: usize) {
        let delta = x - self.mean;
        self.mean = self.mean + delta / T::lit(n as f64);
        self.m2 = self.m2 + delta * (x - self.mean);
    }

    fn std_err(&self, n: usize) -> T {
        if n < 2 {
            return T::zero();
        }
        let nf = T::lit(n as f64);
        let var = (self.m2 / (nf - T::one())).max(T::zero());
        (var / nf).sqrt()
    }
}

struct Accumulator<T> {
    count: usize,
    cells: Vec<[Running<T>; COLUMNS]>,
}

impl<T: Scalar> Accumulator<T> {
    fn new(iterations: usize) -> Self {
        Self {
            count: 0,
            cells: vec![[Running::default(); COLUMNS]; iterations],
        }
    }

    fn push(&mut self, realization: &[Observation<T>]) {
        self.count += 1;
        for (cell, obs) in self.cells.iter_mut().zip(realization) {
            for (acc, &x) in cell.iter_mut().zip(obs) {
                acc.push(x, self.count);
            }
        }
    }

    fn series(&self, col: usize) -> Series<T> {
        let (mean, std_err) = self
            .cells
            .iter()
            .map(|c| (c[col].mean, c[col].std_err(self.count)))
            .unzip();
        Series { mean, std_err }
    }

    fn finish(self, dual: bool) -> EnsembleStats<T> {
        EnsembleStats {
            realizations: self.count,
            w: self.series(0),
            f_e: self.series(1),
            f_g: self.series(2),
            f_max: self.series(3),
            dual: dual.then(|| DualSeries {
                f_e: self.series(4),
                f_g: self.series(5),
            }),
        }
    }
}

fn observe<T: Scalar>(cfg: &EnsembleConfig<T>, index: usize) -> Result<Vec<Observation<T>>> {
    let seed = realization_seed(cfg.master_seed, index as u64);
    let records = run_realization(&cfg.channel, &cfg.params, seed)?;
    let other_bit = cfg.params.basis_bit().flipped();
    Ok(records
        .iter()
        .map(|r| {
            let (de, dg) = if cfg.dual_basis {
                let f = Fidelities::of(&r.transform, cfg.channel.basis(), other_bit);
                (f.excited, f.ground)
            } else {
                (T::zero(), T::zero())
            };
            [r.w_after, r.f_e, r.f_g, r.f_max, de, dg]
        })
        .collect())
}

/// Runs the ensemble on an automatically sized worker pool.
pub fn run_ensemble<T: Scalar>(cfg: &EnsembleConfig<T>) -> Result<EnsembleStats<T>> {
    run_ensemble_with_threads(cfg, 0)
}

/// Runs the ensemble on `threads` workers (0 = automatic, 1 = no pool).
pub fn run_ensemble_with_threads<T: Scalar>(
    cfg: &EnsembleConfig<T>,
    threads: usize,
) -> Result<EnsembleStats<T>> {
    cfg.validate()?;
    if threads == 1 {
        return run_chunks(cfg, |range| range.map(|i| observe(cfg, i)).collect());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidConfig(format!("cannot start worker pool: {e}")))?;
    pool.install(|| {
        run_chunks(cfg, |range| {
            range.into_par_iter().map(|i| observe(cfg, i)).collect()
        })
    })
}

fn run_chunks<T, F>(cfg: &EnsembleConfig<T>, mut simulate: F) -> Result<EnsembleStats<T>>
where
    T: Scalar,
    F: FnMut(std::ops::Range<usize>) -> Vec<Result<Vec<Observation<T>>>>,
{
    let mut acc = Accumulator::new(cfg.params.iterations());
    let mut start = 0;
    while start < cfg.realizations {
        let end = (start + CHUNK).min(cfg.realizations);
        for obs in simulate(start..end) {
            acc.push(&obs?);
        }
        start = end;
    }
    Ok(acc.finish(cfg.dual_basis))
}

pub type SweepOutcome<T> = (EnsembleConfig<T>, Result<EnsembleStats<T>>);

/// Runs every config in order; a failing config does not stop the rest.
pub fn sweep<T: Scalar>(
    grid: &[EnsembleConfig<T>],
    threads: usize,
) -> Result<Vec<SweepOutcome<T>>> {
    if grid.is_empty() {
        return Err(Error::InvalidConfig("sweep grid is empty".into()));
    }
    Ok(grid
        .iter()
        .map(|cfg| (*cfg, run_ensemble_with_threads(cfg, threads)))
        .collect())
}
