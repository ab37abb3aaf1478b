//! Repeated solves from random starting vectors, with the converged
//! eigenpairs grouped into clusters.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::Result;
use crate::mni::{run_mni, Eigenpair, SolveOptions, SolveReport};
use crate::tensor::{DenseTensor, ProbVector};

/// Default clustering tolerance. Loose enough to hold together runs that
/// reach an eigenpair with a singular Newton system, where a `1e-13`
/// residual pins `x` only to about `1e-6`.
pub const DEFAULT_CLUSTER_TOL: f64 = 1e-5;

/// Grouping tolerance for the final iterates of runs that did not converge.
pub const STALLED_CLUSTER_TOL: f64 = 1e-2;

/// Starting vector of trial `trial`: `n` uniform draws on `(0, 1)` from
/// stream `trial` of a ChaCha8 generator seeded with `seed`, scaled to unit
/// 1-norm. Independent of how many other trials run or in which order.
pub fn initial_vector(seed: u64, trial: u64, n: usize) -> ProbVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    let y: Vec<f64> = (0..n)
        .map(|_| loop {
            let u: f64 = rng.gen();
            if u > 0.0 {
                break u;
            }
        })
        .collect();
    ProbVector::normalize(y).expect("positive draws")
}

/// Members of one cluster, as indices into the clustered slice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairCluster {
    /// First-seen member; membership is decided against it.
    pub anchor: usize,
    /// Member with the smallest residual.
    pub representative: usize,
    pub members: Vec<usize>,
}

/// Groups eigenpairs: a pair joins the first cluster whose anchor is within
/// `cluster_tol` in both `|x - x'|_1` and `|lambda - lambda'|`, and starts a
/// new cluster otherwise.
pub fn cluster_eigenpairs(pairs: &[Eigenpair], cluster_tol: f64) -> Vec<PairCluster> {
    let mut clusters: Vec<PairCluster> = Vec::new();
    for (i, p) in pairs.iter().enumerate() {
        let hit = clusters.iter_mut().find(|c| {
            let a = &pairs[c.anchor];
            a.x.l1_distance(&p.x) < cluster_tol && (a.lambda - p.lambda).abs() < cluster_tol
        });
        match hit {
            Some(c) => {
                c.members.push(i);
                if p.residual < pairs[c.representative].residual {
                    c.representative = i;
                }
            }
            None => clusters.push(PairCluster {
                anchor: i,
                representative: i,
                members: vec![i],
            }),
        }
    }
    clusters
}

#[derive(Debug, Clone)]
pub struct TrialOutcome {
    pub index: usize,
    pub x0: ProbVector,
    pub report: SolveReport,
    /// Cluster index for converged trials.
    pub cluster: Option<usize>,
}

/// One row of an occurrence table.
#[derive(Debug, Clone)]
pub struct ClusterSummary {
    pub representative: Eigenpair,
    pub occurrences: usize,
    pub avg_sign: f64,
    pub avg_iter: f64,
    pub avg_err: f64,
    /// Trial indices, ascending.
    pub trials: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct MultiStartReport {
    pub clusters: Vec<ClusterSummary>,
    /// Non-converged trials grouped by where they stopped.
    pub stalled: Vec<ClusterSummary>,
    pub total_trials: usize,
    /// Trials that did not converge.
    pub failures: usize,
    pub outcomes: Vec<TrialOutcome>,
}

impl MultiStartReport {
    /// Average iterations and final residual over the failed trials.
    pub fn failure_averages(&self) -> Option<(f64, f64)> {
        let failed: Vec<&SolveReport> = self
            .outcomes
            .iter()
            .filter(|o| !o.report.converged)
            .map(|o| &o.report)
            .collect();
        if failed.is_empty() {
            return None;
        }
        let n = failed.len() as f64;
        let iter = failed.iter().map(|r| r.iterations as f64).sum::<f64>() / n;
        let err = failed.iter().map(|r| r.eigenpair.residual).sum::<f64>() / n;
        Some((iter, err))
    }
}

/// Runs MNI from `trials` random starts drawn with `opts.rng_seed`.
pub fn multistart(
    a: &DenseTensor,
    trials: usize,
    opts: &SolveOptions,
    cluster_tol: f64,
) -> Result<MultiStartReport> {
    opts.validate()?;
    multistart_with(a.dim(), trials, opts.rng_seed, cluster_tol, |x0| {
        run_mni(a, x0, opts)
    })
}

/// Runs `solve` from `trials` random starts of dimension `n` and clusters
/// the converged results. Trials may run in parallel on the current rayon
/// pool; the report is assembled in trial order.
pub fn multistart_with<F>(
    n: usize,
    trials: usize,
    seed: u64,
    cluster_tol: f64,
    solve: F,
) -> Result<MultiStartReport>
where
    F: Fn(&ProbVector) -> Result<SolveReport> + Sync,
{
    let outcomes: Vec<TrialOutcome> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let x0 = initial_vector(seed, t as u64, n);
            solve(&x0).map(|report| TrialOutcome {
                index: t,
                x0,
                report,
                cluster: None,
            })
        })
        .collect::<Result<_>>()?;
    Ok(summarize(outcomes, cluster_tol))
}

fn summarize(mut outcomes: Vec<TrialOutcome>, cluster_tol: f64) -> MultiStartReport {
    let (converged, failed): (Vec<usize>, Vec<usize>) =
        (0..outcomes.len()).partition(|&t| outcomes[t].report.converged);
    let clusters = group(&mut outcomes, &converged, cluster_tol, true);
    let stalled = group(&mut outcomes, &failed, STALLED_CLUSTER_TOL, false);
    MultiStartReport {
        clusters,
        stalled,
        total_trials: outcomes.len(),
        failures: failed.len(),
        outcomes,
    }
}

fn group(
    outcomes: &mut [TrialOutcome],
    which: &[usize],
    tol: f64,
    tag: bool,
) -> Vec<ClusterSummary> {
    let pairs: Vec<Eigenpair> = which
        .iter()
        .map(|&t| outcomes[t].report.eigenpair.clone())
        .collect();
    let mut out = Vec::new();
    for (c, g) in cluster_eigenpairs(&pairs, tol).iter().enumerate() {
        let trials: Vec<usize> = g.members.iter().map(|&m| which[m]).collect();
        let k = trials.len() as f64;
        let (mut sign, mut iter, mut err) = (0.0, 0.0, 0.0);
        for &t in &trials {
            let r = &outcomes[t].report;
            sign += r.sign_interventions as f64;
            iter += r.iterations as f64;
            err += r.eigenpair.residual;
            if tag {
                outcomes[t].cluster = Some(c);
            }
        }
        out.push(ClusterSummary {
            representative: pairs[g.representative].clone(),
            occurrences: trials.len(),
            avg_sign: sign / k,
            avg_iter: iter / k,
            avg_err: err / k,
            trials,
        });
    }
    out
}
