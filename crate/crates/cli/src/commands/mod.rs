pub mod agent_case;
pub mod kb_sweep;
pub mod linkbudget;
pub mod simulate;

use rayon::ThreadPool;

use crate::config::ExperimentConfig;
use crate::CliError;

/// Worker pool sized by the config, or by rayon's default when unset.
pub(crate) fn pool(cfg: &ExperimentConfig) -> Result<ThreadPool, CliError> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cfg.workers {
        b = b.num_threads(n);
    }
    b.build().map_err(|e| CliError::Output(format!("worker pool: {e}")))
}

pub(crate) fn mean(v: &[f64]) -> f64 {
    if v.is_empty() {
        return 0.0;
    }
    v.iter().sum::<f64>() / v.len() as f64
}

/// Standard error of the mean (sample standard deviation over sqrt(n)).
pub(crate) fn std_err(v: &[f64]) -> f64 {
    if v.len() < 2 {
        return 0.0;
    }
    let m = mean(v);
    let var = v.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (v.len() - 1) as f64;
    (var / v.len() as f64).sqrt()
}
