use std::collections::BTreeMap;

use serde::Serialize;

/// Number of posts per observed retweet count.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct RetweetHistogram {
    pub bins: BTreeMap<u64, u64>,
    pub total: u64,
}

/// Least-squares line through `(ln k, ln frequency)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PowerLawFit {
    pub slope: f64,
    pub intercept: f64,
    /// Number of bins the line was fitted to.
    pub bins: usize,
}

impl RetweetHistogram {
    pub fn add(&mut self, retweet_count: u64) {
        *self.bins.entry(retweet_count).or_default() += 1;
        self.total += 1;
    }

    pub fn merge(mut self, other: RetweetHistogram) -> Self {
        for (k, n) in other.bins {
            *self.bins.entry(k).or_default() += n;
        }
        self.total += other.total;
        self
    }

    pub fn frequency(&self, retweet_count: u64) -> u64 {
        self.bins.get(&retweet_count).copied().unwrap_or(0)
    }

    /// Share of posts retweeted at least once, in `[0, 1]`.
    pub fn fraction_retweeted(&self) -> f64 {
        if self.total == 0 {
            0.0
        } else {
            1.0 - self.frequency(0) as f64 / self.total as f64
        }
    }

    /// `(retweet_count, frequency)` pairs that can go on log-log axes:
    /// non-empty bins with at least one retweet.
    pub fn log_log_pairs(&self) -> Vec<(u64, u64)> {
        self.bins.iter().filter(|&(&k, &n)| k >= 1 && n > 0).map(|(&k, &n)| (k, n)).collect()
    }

    /// Fits the power-law head of the histogram.
    ///
    /// Uses the bins `k = 1, 2, ...` up to the first empty one; past that
    /// point the tail is too sparse for its frequencies to mean anything.
    /// Returns `None` with fewer than two usable bins.
    pub fn fit_power_law(&self) -> Option<PowerLawFit> {
        let points: Vec<(f64, f64)> = (1u64..)
            .map_while(|k| self.bins.get(&k).filter(|&&n| n > 0).map(|&n| ((k as f64).ln(), (n as f64).ln())))
            .collect();
        if points.len() < 2 {
            return None;
        }
        let n = points.len() as f64;
        let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
        let my = points.iter().map(|p| p.1).sum::<f64>() / n;
        let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
        let slope = sxy / sxx;
        Some(PowerLawFit {
            slope,
            intercept: my - slope * mx,
            bins: points.len(),
        })
    }
}

pub fn retweet_histogram<I: IntoIterator<Item = u64>>(retweet_counts: I) -> RetweetHistogram {
    let mut h = RetweetHistogram::default();
    for k in retweet_counts {
        h.add(k);
    }
    h
}
