//! Exhaustive sweeps over boxes of order vectors.
//!
//! Instances are computed in contiguous chunks (in parallel when the
//! `parallel` feature is on) and handed to a single writer in lexicographic
//! order, so the output file and the summary do not depend on the worker count.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::conditions::{check_instance, ConditionReport};
use crate::error::{Error, Result};
use crate::model::{DegreeVector, Instance, InstanceFlags, OrderVector};
use crate::report::write_sweep_record;

pub const DEFAULT_INSTANCE_CAP: u64 = 10_000_000;

const CHUNK: usize = 2048;

/// All order vectors of the box `[-B, B]^r`, lexicographically.
#[derive(Clone, Debug)]
pub struct OrderBox {
    rank: usize,
    bound: i64,
    len: usize,
    next: usize,
}

impl OrderBox {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn bound(&self) -> i64 {
        self.bound
    }

    pub fn total(&self) -> usize {
        self.len
    }

    /// The vector at position `index` of the full enumeration.
    pub fn get(&self, index: usize) -> Option<OrderVector> {
        if index >= self.len {
            return None;
        }
        let side = (2 * self.bound + 1) as usize;
        let mut rest = index;
        let mut entries = vec![0i64; self.rank];
        for slot in entries.iter_mut().rev() {
            *slot = (rest % side) as i64 - self.bound;
            rest /= side;
        }
        OrderVector::new(entries).ok()
    }
}

impl Iterator for OrderBox {
    type Item = OrderVector;

    fn next(&mut self) -> Option<OrderVector> {
        let v = self.get(self.next)?;
        self.next += 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.len - self.next;
        (n, Some(n))
    }
}

impl ExactSizeIterator for OrderBox {}

pub fn enumerate_order_vectors(r: usize, bound: i64) -> Result<OrderBox> {
    enumerate_order_vectors_capped(r, bound, DEFAULT_INSTANCE_CAP)
}

/// Like [`enumerate_order_vectors`], refusing plans with `r * (2B+1)^r > cap`.
pub fn enumerate_order_vectors_capped(r: usize, bound: i64, cap: u64) -> Result<OrderBox> {
    if r == 0 {
        return Err(Error::EmptyVector);
    }
    if !(1..=crate::model::MAX_ORDER_MAGNITUDE).contains(&bound) {
        return Err(Error::OrderOutOfRange(bound));
    }
    let side = 2 * bound as u128 + 1;
    let count = (0..r).try_fold(1u128, |acc, _| acc.checked_mul(side));
    let weighted = count.and_then(|c| c.checked_mul(r as u128));
    match (count, weighted) {
        (Some(count), Some(w)) if w <= cap as u128 => Ok(OrderBox {
            rank: r,
            bound,
            len: count as usize,
            next: 0,
        }),
        _ => Err(Error::CapExceeded {
            requested: weighted.unwrap_or(u128::MAX),
            cap,
        }),
    }
}

#[derive(Clone, Debug)]
pub struct SweepPlan {
    pub degrees: DegreeVector,
    pub order_bound: i64,
    pub flags: InstanceFlags,
    pub worker_count: usize,
    pub output: Option<PathBuf>,
    pub instance_cap: u64,
}

impl SweepPlan {
    pub fn new(degrees: DegreeVector, order_bound: i64) -> Self {
        SweepPlan {
            degrees,
            order_bound,
            flags: InstanceFlags::default(),
            worker_count: 1,
            output: None,
            instance_cap: DEFAULT_INSTANCE_CAP,
        }
    }

    pub fn with_workers(mut self, n: usize) -> Self {
        self.worker_count = n;
        self
    }

    pub fn with_output(mut self, path: impl Into<PathBuf>) -> Self {
        self.output = Some(path.into());
        self
    }

    pub fn with_flags(mut self, flags: InstanceFlags) -> Self {
        self.flags = flags;
        self
    }

    fn instance(&self, orders: OrderVector) -> Result<Instance> {
        Ok(Instance::new(self.degrees.clone(), orders)?.with_flags(self.flags))
    }
}

/// Aggregate statistics of a sweep. Counts other than `total`, `admissible`
/// and `inadmissible` range over admissible instances.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub rank: Option<usize>,
    pub degrees: Option<Vec<u64>>,
    pub flags: Option<InstanceFlags>,
    pub total: u64,
    pub admissible: u64,
    pub inadmissible: u64,
    pub cond_i_true: u64,
    pub cond_i_false: u64,
    pub factorial_not_i: u64,
    pub equivalence_checked: u64,
    pub hilbert_size_histogram: BTreeMap<usize, u64>,
    /// Order vectors whose checked equivalence failed, in lex order.
    pub counterexamples: Vec<Vec<i64>>,
}

impl SweepSummary {
    pub fn absorb(&mut self, report: &ConditionReport) -> Result<()> {
        let inst = &report.instance;
        let degrees = inst.degrees().entries().to_vec();
        match (&self.degrees, &self.flags) {
            (Some(d), Some(f)) if *d != degrees || *f != inst.flags => {
                return Err(Error::MixedPlans(format!(
                    "{:?}/{:?} vs {:?}/{:?}",
                    d, f, degrees, inst.flags
                )));
            }
            (None, _) => {
                self.rank = Some(inst.rank());
                self.degrees = Some(degrees);
                self.flags = Some(inst.flags);
            }
            _ => {}
        }
        self.total += 1;
        if !report.admissible.ok {
            self.inadmissible += 1;
            return Ok(());
        }
        self.admissible += 1;
        if report.conditions.i {
            self.cond_i_true += 1;
        } else {
            self.cond_i_false += 1;
            if report.factorial {
                self.factorial_not_i += 1;
            }
        }
        *self
            .hilbert_size_histogram
            .entry(report.hilbert.size)
            .or_default() += 1;
        if let Some(ok) = report.equivalence_ok {
            self.equivalence_checked += 1;
            if !ok {
                self.counterexamples.push(inst.orders().entries().to_vec());
            }
        }
        Ok(())
    }

    pub fn passes(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

pub fn summarize<'a>(
    records: impl IntoIterator<Item = &'a ConditionReport>,
) -> Result<SweepSummary> {
    let mut summary = SweepSummary::default();
    for r in records {
        summary.absorb(r)?;
    }
    summary.counterexamples.sort();
    Ok(summary)
}

#[derive(Clone, Debug)]
pub struct SweepOutcome {
    pub summary: SweepSummary,
    pub wall_time: Duration,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    #[cfg(feature = "parallel")]
    Parallel {
        workers: usize,
    },
}

impl Execution {
    /// Parallel when the feature is enabled and more than one worker is requested.
    pub fn for_workers(workers: usize) -> Self {
        #[cfg(feature = "parallel")]
        if workers > 1 {
            return Execution::Parallel { workers };
        }
        if workers > 1 {
            log::warn!("built without the `parallel` feature; running sequentially");
        }
        Execution::Sequential
    }
}

fn compute_range(
    plan: &SweepPlan,
    boxed: &OrderBox,
    start: usize,
    end: usize,
) -> Result<Vec<ConditionReport>> {
    (start..end)
        .map(|i| {
            let v = boxed
                .get(i)
                .ok_or(Error::Invariant(format!("index {i} outside box")))?;
            check_instance(&plan.instance(v)?)
        })
        .collect()
}

#[cfg(feature = "parallel")]
fn compute_range_parallel(
    pool: &rayon::ThreadPool,
    plan: &SweepPlan,
    boxed: &OrderBox,
    start: usize,
    end: usize,
) -> Result<Vec<ConditionReport>> {
    use rayon::prelude::*;
    pool.install(|| {
        (start..end)
            .into_par_iter()
            .map(|i| {
                let v = boxed
                    .get(i)
                    .ok_or(Error::Invariant(format!("index {i} outside box")))?;
                check_instance(&plan.instance(v)?)
            })
            .collect()
    })
}

/// Runs the plan, writing one JSON line per instance to `out`.
pub fn run_sweep_to(
    plan: &SweepPlan,
    out: &mut dyn Write,
    exec: Execution,
) -> Result<SweepOutcome> {
    let started = Instant::now();
    if plan.worker_count == 0 {
        return Err(Error::Invariant("worker count must be at least 1".into()));
    }
    let boxed =
        enumerate_order_vectors_capped(plan.degrees.rank(), plan.order_bound, plan.instance_cap)?;

    #[cfg(feature = "parallel")]
    let pool = match exec {
        Execution::Parallel { workers } => Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(workers)
                .build()
                .map_err(|e| Error::Invariant(e.to_string()))?,
        ),
        Execution::Sequential => None,
    };
    #[cfg(not(feature = "parallel"))]
    let _ = exec;

    let mut summary = SweepSummary::default();
    let total = boxed.total();
    let mut start = 0;
    while start < total {
        let end = (start + CHUNK).min(total);
        #[cfg(feature = "parallel")]
        let reports = match &pool {
            Some(pool) => compute_range_parallel(pool, plan, &boxed, start, end)?,
            None => compute_range(plan, &boxed, start, end)?,
        };
        #[cfg(not(feature = "parallel"))]
        let reports = compute_range(plan, &boxed, start, end)?;
        for rep in &reports {
            write_sweep_record(out, rep)?;
            summary.absorb(rep)?;
        }
        start = end;
    }
    out.flush()?;
    Ok(SweepOutcome {
        summary,
        wall_time: started.elapsed(),
    })
}

/// Runs the plan with `plan.worker_count` workers, writing to `plan.output` if set.
pub fn run_sweep(plan: &SweepPlan) -> Result<SweepOutcome> {
    let exec = Execution::for_workers(plan.worker_count);
    match &plan.output {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            run_sweep_to(plan, &mut w, exec)
        }
        None => run_sweep_to(plan, &mut std::io::sink(), exec),
    }
}
