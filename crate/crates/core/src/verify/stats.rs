use statrs::distribution::{ChiSquared, ContinuousCDF};

use super::DistributionTable;
use crate::error::Result;

/// Pearson goodness-of-fit of observed frequencies against an exact law.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChiSquare {
    pub statistic: f64,
    /// Cells with positive expected mass, minus one.
    pub dof: usize,
    /// The 0.999 quantile of `χ²(dof)`; 0 when `dof` is 0.
    pub critical: f64,
}

impl ChiSquare {
    pub fn passed(&self) -> bool {
        self.statistic <= self.critical
    }
}

/// `Σ (O − E)² / E` over cells with `E > 0`, with `O = trials · empirical`.
/// Any observation in a cell of zero expected mass makes the statistic
/// infinite.
pub fn chi_square(empirical: &DistributionTable, exact: &DistributionTable, trials: u64) -> Result<ChiSquare> {
    empirical.vertices().ensure_same(exact.vertices())?;
    let n = trials as f64;
    let mut statistic = 0.0;
    let mut cells = 0usize;
    for (&o, &e) in empirical.masses().iter().zip(exact.masses()) {
        if e > 0.0 {
            cells += 1;
            let (observed, expected) = (o * n, e * n);
            statistic += (observed - expected).powi(2) / expected;
        } else if o > 0.0 {
            statistic = f64::INFINITY;
        }
    }
    let dof = cells.saturating_sub(1);
    let critical = if dof == 0 {
        0.0
    } else {
        ChiSquared::new(dof as f64).expect("positive degrees of freedom").inverse_cdf(0.999)
    };
    Ok(ChiSquare { statistic, dof, critical })
}
