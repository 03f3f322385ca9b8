//! Seeded synthetic series pairs with a controlled correlation.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::series::TimeSeries;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SyntheticSpec {
    pub length: usize,
    pub rho: f64,
    pub seed: u64,
}

impl SyntheticSpec {
    pub fn new(length: usize, rho: f64, seed: u64) -> Self {
        Self { length, rho, seed }
    }

    pub fn validate(&self) -> Result<()> {
        if self.length < 2 {
            return Err(Error::InvalidParameter(format!(
                "synthetic length must be at least 2, got {}",
                self.length
            )));
        }
        if !(-1.0..=1.0).contains(&self.rho) {
            return Err(Error::InvalidCorrelation(self.rho));
        }
        Ok(())
    }

    /// Short label used as a dataset name.
    pub fn label(&self) -> String {
        format!("synthetic-n{}-rho{}-s{}", self.length, self.rho, self.seed)
    }
}

fn standardize(values: &mut [f64]) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    let sd = var.sqrt();
    for v in values.iter_mut() {
        *v = if sd > 0.0 { (*v - mean) / sd } else { 0.0 };
    }
}

/// Returns `(a, b)`: `a` is a standardized Gaussian random walk and
/// `b = rho * a + sqrt(1 - rho^2) * e` with `e` standardized white noise.
pub fn generate_pair(spec: &SyntheticSpec) -> Result<(TimeSeries, TimeSeries)> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut level = 0.0;
    let mut walk: Vec<f64> = (0..spec.length)
        .map(|_| {
            let step: f64 = StandardNormal.sample(&mut rng);
            level += step;
            level
        })
        .collect();
    let mut noise: Vec<f64> = (0..spec.length)
        .map(|_| StandardNormal.sample(&mut rng))
        .collect();
    standardize(&mut walk);
    standardize(&mut noise);
    let mix = (1.0 - spec.rho * spec.rho).max(0.0).sqrt();
    let other = walk
        .iter()
        .zip(&noise)
        .map(|(w, e)| spec.rho * w + mix * e)
        .collect();
    Ok((
        TimeSeries::with_id(format!("{}-a", spec.label()), walk)?,
        TimeSeries::with_id(format!("{}-b", spec.label()), other)?,
    ))
}

/// Sample Pearson correlation.
pub fn pearson(s: &TimeSeries, q: &TimeSeries) -> Result<f64> {
    let (a, b) = (s.values(), q.values());
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    if a.len() < 2 {
        return Err(Error::InvalidParameter(
            "correlation needs at least two samples".into(),
        ));
    }
    let n = a.len() as f64;
    let ma = a.iter().sum::<f64>() / n;
    let mb = b.iter().sum::<f64>() / n;
    let (mut sab, mut saa, mut sbb) = (0.0, 0.0, 0.0);
    for (x, y) in a.iter().zip(b) {
        let (dx, dy) = (x - ma, y - mb);
        sab += dx * dy;
        saa += dx * dx;
        sbb += dy * dy;
    }
    if saa == 0.0 || sbb == 0.0 {
        return Err(Error::UndefinedCorrelation);
    }
    Ok((sab / (saa.sqrt() * sbb.sqrt())).clamp(-1.0, 1.0))
}
