//! Reproducible Monte Carlo sweeps over `K`.
//!
//! # Seeding
//!
//! Trial `i` of the cell `(n, k, gamma)` gets the seed
//! `Seed(master_seed).derive(&[n, k, gamma, i])` (see [`crate::seed`]). From
//! it, two independent streams are split off:
//!
//! * graph stream: `trial_seed.derive(&[GRAPH_STREAM, model_tag])`
//! * deletion stream: `trial_seed.derive(&[DELETION_STREAM])`
//!
//! The model tag only enters the graph stream, so a K-out trial and the
//! Erdős–Rényi trial with the same index delete the same node set. Every
//! trial is a pure function of its seed and results are folded in trial
//! order, so output does not depend on the number of worker threads.
//!
//! Trials that delete every node count as connected.

use std::fmt;
use std::io::Write;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::components;
use crate::deletion::{delete_uniform, DeletionAmount, DeletionSpec};
use crate::error::{invalid, Error, Result};
use crate::graph::{sample_er, sample_kout};
use crate::seed::Seed;

pub const GRAPH_STREAM: u64 = 0x0047_5241_5048; // "GRAPH"
pub const DELETION_STREAM: u64 = 0x4445_4c45_5445; // "DELETE"

pub const CSV_HEADER: [&str; 12] = [
    "model",
    "n",
    "k",
    "gamma",
    "trials",
    "master_seed",
    "prob_connected",
    "mean_outside_giant",
    "max_outside_giant",
    "p95_outside_giant",
    "mean_components",
    "prob_giant_within_lambda",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Kout,
    Er,
    Both,
}

impl Model {
    pub fn tag(self) -> u64 {
        match self {
            Model::Kout => 1,
            Model::Er => 2,
            Model::Both => 3,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Model::Kout => "kout",
            Model::Er => "er",
            Model::Both => "both",
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Second parameter of the sampled graph.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GraphParam {
    /// Out-degree of a K-out graph.
    K(usize),
    /// Edge probability of `G(n, p)`.
    P(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialResult {
    pub connected: bool,
    pub outside_giant: usize,
    pub component_count: usize,
}

/// Samples one graph, deletes nodes, and summarizes the residual graph.
pub fn run_trial(
    model: Model,
    n: usize,
    param: GraphParam,
    deletion: DeletionAmount,
    trial_seed: Seed,
) -> Result<TrialResult> {
    let graph_seed = trial_seed.derive(&[GRAPH_STREAM, model.tag()]);
    let del = DeletionSpec {
        amount: deletion,
        seed: trial_seed.derive(&[DELETION_STREAM]),
    };
    let residual = match (model, param) {
        (Model::Kout, GraphParam::K(k)) => delete_uniform(&sample_kout(n, k, graph_seed)?, &del)?,
        (Model::Er, GraphParam::P(p)) => delete_uniform(&sample_er(n, p, graph_seed)?, &del)?,
        (m, p) => return Err(invalid(format!("model {m} cannot be sampled with {p:?}"))),
    };
    let summary = components(&residual);
    Ok(TrialResult {
        connected: summary.connected,
        outside_giant: summary.outside_giant,
        component_count: summary.component_count,
    })
}

/// Edge probability of the baseline matched to a K-out graph's mean degree, `2k/n` capped at 1.
pub fn matched_er_probability(n: usize, k: usize) -> f64 {
    (2.0 * k as f64 / n as f64).min(1.0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub model: Model,
    pub n: usize,
    pub k_values: Vec<usize>,
    pub deletion: DeletionAmount,
    pub trials: usize,
    pub master_seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<usize>,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<usize> {
        if self.n < 2 {
            return Err(invalid(format!("n must be at least 2, got {}", self.n)));
        }
        if self.k_values.is_empty() {
            return Err(invalid("k_values must not be empty"));
        }
        if let Some(&k) = self.k_values.iter().find(|&&k| k == 0 || k >= self.n) {
            return Err(invalid(format!("k = {k} outside 1..={}", self.n - 1)));
        }
        if self.trials == 0 {
            return Err(invalid("trials must be at least 1"));
        }
        if self.lambda == Some(0) {
            return Err(invalid("lambda must be at least 1"));
        }
        self.deletion.realize(self.n)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    fn trial_seed(&self, k: usize, gamma: usize, index: usize) -> Seed {
        Seed(self.master_seed).derive(&[self.n as u64, k as u64, gamma as u64, index as u64])
    }
}

/// One CSV row: aggregate of all trials of one `(model, k, gamma)` cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub model: Model,
    pub n: usize,
    pub k: usize,
    pub gamma: usize,
    pub trials: usize,
    pub master_seed: u64,
    pub prob_connected: f64,
    pub mean_outside_giant: f64,
    pub max_outside_giant: usize,
    /// Nearest-rank 95th percentile.
    pub p95_outside_giant: usize,
    pub mean_components: f64,
    /// Fraction of trials with `outside_giant < lambda`.
    pub prob_giant_within_lambda: Option<f64>,
    /// Number of connected trials; `prob_connected` is this over `trials`.
    #[serde(skip)]
    pub connected_trials: usize,
}

impl SweepRow {
    fn aggregate(
        model: Model,
        config: &ExperimentConfig,
        k: usize,
        gamma: usize,
        trials: &[TrialResult],
    ) -> Self {
        let t = trials.len();
        let tf = t as f64;
        let connected_trials = trials.iter().filter(|r| r.connected).count();
        let mut outside: Vec<usize> = trials.iter().map(|r| r.outside_giant).collect();
        outside.sort_unstable();
        let p95_rank = (95 * t).div_ceil(100).max(1);
        SweepRow {
            model,
            n: config.n,
            k,
            gamma,
            trials: t,
            master_seed: config.master_seed,
            prob_connected: connected_trials as f64 / tf,
            mean_outside_giant: outside.iter().sum::<usize>() as f64 / tf,
            max_outside_giant: *outside.last().expect("at least one trial"),
            p95_outside_giant: outside[p95_rank - 1],
            mean_components: trials.iter().map(|r| r.component_count).sum::<usize>() as f64 / tf,
            prob_giant_within_lambda: config
                .lambda
                .map(|l| trials.iter().filter(|r| r.outside_giant < l).count() as f64 / tf),
            connected_trials,
        }
    }

    /// Binomial standard error of `prob_connected`.
    pub fn std_error(&self) -> f64 {
        let p = self.prob_connected;
        (p * (1.0 - p) / self.trials as f64).sqrt()
    }

    fn csv_record(&self) -> [String; 12] {
        [
            self.model.to_string(),
            self.n.to_string(),
            self.k.to_string(),
            self.gamma.to_string(),
            self.trials.to_string(),
            self.master_seed.to_string(),
            self.prob_connected.to_string(),
            self.mean_outside_giant.to_string(),
            self.max_outside_giant.to_string(),
            self.p95_outside_giant.to_string(),
            self.mean_components.to_string(),
            self.prob_giant_within_lambda
                .map(|v| v.to_string())
                .unwrap_or_default(),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
}

impl SweepResult {
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        w.write_record(CSV_HEADER)?;
        for row in &self.rows {
            w.write_record(row.csv_record())?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf).expect("csv output is utf-8"))
    }

    pub fn save_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        let file = std::fs::File::create(path)?;
        self.write_csv(std::io::BufWriter::new(file))
    }

    pub fn row(&self, model: Model, k: usize) -> Option<&SweepRow> {
        self.rows.iter().find(|r| r.model == model && r.k == k)
    }
}

/// Options for a sweep run.
#[derive(Default)]
pub struct RunOptions<'a> {
    /// Worker threads; `None` uses the available parallelism.
    pub workers: Option<usize>,
    /// Called once per finished cell.
    pub on_cell: Option<&'a mut dyn FnMut(&SweepRow)>,
}

impl<'a> RunOptions<'a> {
    pub fn workers(workers: usize) -> Self {
        RunOptions {
            workers: Some(workers),
            on_cell: None,
        }
    }
}

/// Runs every `k` in the config for its model. A config with `model = both`
/// is delegated to [`compare_er`].
pub fn run_sweep(config: &ExperimentConfig, options: RunOptions<'_>) -> Result<SweepResult> {
    let models: &[Model] = match config.model {
        Model::Kout => &[Model::Kout],
        Model::Er => &[Model::Er],
        Model::Both => &[Model::Kout, Model::Er],
    };
    execute(config, models, options)
}

/// Paired K-out / Erdős–Rényi sweep: for each `k`, a K-out row and a
/// `G(n, 2k/n)` row whose trials reuse the same deletion sets.
pub fn compare_er(config: &ExperimentConfig, options: RunOptions<'_>) -> Result<SweepResult> {
    if config.model != Model::Both {
        return Err(invalid(format!(
            "comparison requires model = both, got {}",
            config.model
        )));
    }
    execute(config, &[Model::Kout, Model::Er], options)
}

fn execute(
    config: &ExperimentConfig,
    models: &[Model],
    mut options: RunOptions<'_>,
) -> Result<SweepResult> {
    let gamma = config.validate()?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = options.workers {
        builder = builder.num_threads(w.max(1));
    }
    let pool = builder
        .build()
        .map_err(|e| Error::Io(std::io::Error::other(e.to_string())))?;

    let mut rows = Vec::with_capacity(config.k_values.len() * models.len());
    for &k in &config.k_values {
        for &model in models {
            let param = match model {
                Model::Kout => GraphParam::K(k),
                _ => GraphParam::P(matched_er_probability(config.n, k)),
            };
            let trials: Vec<TrialResult> = pool
                .install(|| {
                    (0..config.trials)
                        .into_par_iter()
                        .map(|i| {
                            run_trial(
                                model,
                                config.n,
                                param,
                                config.deletion,
                                config.trial_seed(k, gamma, i),
                            )
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .map_err(|e| Error::Cell {
                    model: model.to_string(),
                    k: k as u32,
                    gamma,
                    source: Box::new(e),
                })?;
            let row = SweepRow::aggregate(model, config, k, gamma, &trials);
            if let Some(cb) = options.on_cell.as_mut() {
                cb(&row);
            }
            rows.push(row);
        }
    }
    Ok(SweepResult { rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(
        model: Model,
        n: usize,
        ks: &[usize],
        deletion: DeletionAmount,
        trials: usize,
    ) -> ExperimentConfig {
        ExperimentConfig {
            model,
            n,
            k_values: ks.to_vec(),
            deletion,
            trials,
            master_seed: 12345,
            lambda: None,
        }
    }

    #[test]
    fn two_node_trial() {
        for s in 0..10 {
            let r = run_trial(
                Model::Kout,
                2,
                GraphParam::K(1),
                DeletionAmount::Count(0),
                Seed(s),
            )
            .unwrap();
            assert_eq!(
                r,
                TrialResult {
                    connected: true,
                    outside_giant: 0,
                    component_count: 1
                }
            );
        }
    }

    #[test]
    fn trial_is_deterministic() {
        let go = || {
            run_trial(
                Model::Kout,
                500,
                GraphParam::K(2),
                DeletionAmount::Fraction(0.4),
                Seed(99),
            )
            .unwrap()
        };
        assert_eq!(go(), go());
        let go = || {
            run_trial(
                Model::Er,
                500,
                GraphParam::P(0.004),
                DeletionAmount::Count(50),
                Seed(99),
            )
            .unwrap()
        };
        assert_eq!(go(), go());
    }

    #[test]
    fn mismatched_param_is_rejected() {
        assert!(run_trial(
            Model::Kout,
            10,
            GraphParam::P(0.1),
            DeletionAmount::Count(0),
            Seed(0)
        )
        .is_err());
        assert!(run_trial(
            Model::Both,
            10,
            GraphParam::K(2),
            DeletionAmount::Count(0),
            Seed(0)
        )
        .is_err());
    }

    #[test]
    fn sweep_shape() {
        let c = config(Model::Kout, 200, &[2, 3], DeletionAmount::Fraction(0.2), 10);
        let r = run_sweep(&c, RunOptions::default()).unwrap();
        assert_eq!(r.rows.len(), 2);
        for row in &r.rows {
            assert_eq!(row.gamma, 40);
            assert!((0.0..=1.0).contains(&row.prob_connected));
            assert!(row.max_outside_giant >= row.p95_outside_giant);
            assert!(row.max_outside_giant as f64 >= row.mean_outside_giant);
            assert_eq!(
                row.prob_connected,
                row.connected_trials as f64 / row.trials as f64
            );
            assert!(row.prob_giant_within_lambda.is_none());
        }
    }

    #[test]
    fn worker_count_does_not_matter() {
        let mut c = config(Model::Both, 300, &[1, 2, 3], DeletionAmount::Count(30), 40);
        c.lambda = Some(3);
        let one = run_sweep(&c, RunOptions::workers(1))
            .unwrap()
            .to_csv_string()
            .unwrap();
        let eight = run_sweep(&c, RunOptions::workers(8))
            .unwrap()
            .to_csv_string()
            .unwrap();
        assert_eq!(one, eight);
    }

    #[test]
    fn compare_rows_are_paired() {
        let c = config(Model::Both, 400, &[3, 4], DeletionAmount::Fraction(0.4), 20);
        let r = compare_er(&c, RunOptions::default()).unwrap();
        let models: Vec<_> = r.rows.iter().map(|row| (row.model, row.k)).collect();
        assert_eq!(
            models,
            vec![
                (Model::Kout, 3),
                (Model::Er, 3),
                (Model::Kout, 4),
                (Model::Er, 4)
            ]
        );
        assert!(r.rows.iter().all(|row| row.trials == 20));

        let kout_only = config(Model::Kout, 400, &[3], DeletionAmount::Count(1), 2);
        assert!(compare_er(&kout_only, RunOptions::default()).is_err());
    }

    #[test]
    fn paired_trials_share_deletion_sets() {
        let c = config(Model::Both, 100, &[2], DeletionAmount::Count(30), 5);
        for i in 0..5 {
            let seed = c.trial_seed(2, 30, i);
            let del = DeletionSpec {
                amount: c.deletion,
                seed: seed.derive(&[DELETION_STREAM]),
            };
            let kout =
                sample_kout(100, 2, seed.derive(&[GRAPH_STREAM, Model::Kout.tag()])).unwrap();
            let er = sample_er(100, 0.04, seed.derive(&[GRAPH_STREAM, Model::Er.tag()])).unwrap();
            let a = delete_uniform(&kout, &del).unwrap();
            let b = delete_uniform(&er, &del).unwrap();
            assert_eq!(a.deleted(), b.deleted());
        }
    }

    #[test]
    fn er_mean_degree_matches_k() {
        let n = 5000;
        for k in [3usize, 5, 8] {
            let g = sample_er(n, matched_er_probability(n, k), Seed(k as u64)).unwrap();
            let per_node = crate::graph::Graph::edge_count(&g) as f64 / n as f64;
            assert!(
                (per_node / k as f64 - 1.0).abs() < 0.05,
                "k={k}: {per_node}"
            );
        }
    }

    #[test]
    fn lambda_counts_strictly_below() {
        let mut c = config(Model::Kout, 60, &[1], DeletionAmount::Count(0), 200);
        c.lambda = Some(1);
        let r = run_sweep(&c, RunOptions::default()).unwrap();
        let row = &r.rows[0];
        // outside_giant < 1 is exactly connectivity
        assert_eq!(row.prob_giant_within_lambda, Some(row.prob_connected));
    }

    #[test]
    fn invalid_configs() {
        let bad = [
            config(Model::Kout, 10, &[], DeletionAmount::Count(0), 1),
            config(Model::Kout, 10, &[10], DeletionAmount::Count(0), 1),
            config(Model::Kout, 10, &[0], DeletionAmount::Count(0), 1),
            config(Model::Kout, 10, &[2], DeletionAmount::Count(0), 0),
            config(Model::Kout, 10, &[2], DeletionAmount::Count(11), 1),
            config(Model::Kout, 10, &[2], DeletionAmount::Fraction(1.0), 1),
        ];
        for c in bad {
            let e = run_sweep(&c, RunOptions::default()).unwrap_err();
            assert!(e.is_usage(), "{e}");
        }
    }

    #[test]
    fn all_deleted_counts_as_connected() {
        let c = config(Model::Kout, 10, &[2], DeletionAmount::Count(10), 5);
        let r = run_sweep(&c, RunOptions::default()).unwrap();
        assert_eq!(r.rows[0].prob_connected, 1.0);
        assert_eq!(r.rows[0].mean_components, 0.0);
    }

    #[test]
    fn csv_layout() {
        let mut c = config(Model::Kout, 50, &[2], DeletionAmount::Count(5), 4);
        let text = run_sweep(&c, RunOptions::default())
            .unwrap()
            .to_csv_string()
            .unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), CSV_HEADER.join(","));
        let row = lines.next().unwrap();
        assert!(row.starts_with("kout,50,2,5,4,12345,"));
        assert!(row.ends_with(','), "empty lambda column: {row}");
        assert!(!text.contains('\r'));
        assert!(text.ends_with('\n'));

        c.lambda = Some(2);
        let text = run_sweep(&c, RunOptions::default())
            .unwrap()
            .to_csv_string()
            .unwrap();
        assert!(!text.lines().nth(1).unwrap().ends_with(','));
    }

    #[test]
    fn config_json_schema() {
        let text = r#"{"model":"both","n":5000,"k_values":[3,4],"deletion":{"mode":"fraction","value":0.4},"trials":100,"master_seed":7}"#;
        let c = ExperimentConfig::from_json(text).unwrap();
        assert_eq!(c.model, Model::Both);
        assert_eq!(c.deletion, DeletionAmount::Fraction(0.4));
        assert_eq!(c.lambda, None);
        let text = r#"{"model":"kout","n":50,"k_values":[2],"deletion":{"mode":"count","value":5},"trials":3,"master_seed":1,"lambda":4}"#;
        let c = ExperimentConfig::from_json(text).unwrap();
        assert_eq!(c.deletion, DeletionAmount::Count(5));
        assert_eq!(c.lambda, Some(4));
        assert!(ExperimentConfig::from_json(r#"{"model":"kout"}"#).is_err());
    }
}
