//! Dominant-frequency estimation for sampled observables.
//!
//! The series is mean-subtracted, Hann-windowed and zero-padded before the
//! FFT; the peak bin is refined by fitting a parabola to the log magnitudes
//! of the peak and its two neighbours.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::series::{Channel, SpinTimeSeries};

const ZERO_PAD_FACTOR: usize = 8;
const MIN_SAMPLES_PER_PERIOD: f64 = 16.0;
const MIN_PERIODS: f64 = 3.0;

/// Angular frequency with its uncertainty (half the padded bin width).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrequencyEstimate {
    pub omega: f64,
    pub uncertainty: f64,
}

pub fn extract_frequency(series: &SpinTimeSeries, channel: Channel) -> Result<FrequencyEstimate> {
    dominant_frequency(&series.times, &series.channel(channel))
}

pub fn dominant_frequency(times: &[f64], values: &[f64]) -> Result<FrequencyEstimate> {
    let n = times.len();
    if n != values.len() {
        return Err(Error::Invalid(format!(
            "{n} times but {} values",
            values.len()
        )));
    }
    if n < 16 {
        return Err(Error::Invalid(format!("need at least 16 samples, got {n}")));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::Invalid("series contains non-finite values".into()));
    }
    let dt = (times[n - 1] - times[0]) / (n - 1) as f64;
    if dt.is_nan()
        || dt <= 0.0
        || times
            .windows(2)
            .any(|w| ((w[1] - w[0]) - dt).abs() > 1e-6 * dt)
    {
        return Err(Error::Invalid(
            "frequency extraction needs a uniform, increasing time grid".into(),
        ));
    }

    let mean = values.iter().sum::<f64>() / n as f64;
    let rms = (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n as f64).sqrt();
    if rms <= 1e-10 * mean.abs().max(1.0) {
        return Err(Error::NoOscillation);
    }

    let n_fft = n.next_power_of_two() * ZERO_PAD_FACTOR;
    let mut buffer = vec![Complex64::new(0.0, 0.0); n_fft];
    for (k, v) in values.iter().enumerate() {
        let w = 0.5 * (1.0 - (2.0 * PI * k as f64 / (n - 1) as f64).cos());
        buffer[k] = Complex64::new(w * (v - mean), 0.0);
    }
    FftPlanner::new()
        .plan_fft_forward(n_fft)
        .process(&mut buffer);
    let half = n_fft / 2;
    let magnitude: Vec<f64> = buffer[..=half].iter().map(|z| z.norm()).collect();

    let (peak, &peak_mag) = magnitude[1..half]
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(k, m)| (k + 1, m))
        .ok_or(Error::NoOscillation)?;
    let mut sorted = magnitude.clone();
    sorted.sort_by(f64::total_cmp);
    let median = sorted[sorted.len() / 2];
    if peak_mag.is_nan() || peak_mag <= 4.0 * median {
        return Err(Error::NoOscillation);
    }

    let (a, b, c) = (
        magnitude[peak - 1].ln(),
        peak_mag.ln(),
        magnitude[peak + 1].ln(),
    );
    let curvature = a - 2.0 * b + c;
    let offset = if curvature < 0.0 {
        0.5 * (a - c) / curvature
    } else {
        0.0
    };
    let bin = 2.0 * PI / (n_fft as f64 * dt);
    let omega = (peak as f64 + offset) * bin;

    let span = times[n - 1] - times[0];
    let periods = omega * span / (2.0 * PI);
    if periods < MIN_PERIODS {
        return Err(Error::Invalid(format!(
            "series spans {periods:.2} periods of the detected oscillation; at least {MIN_PERIODS} needed"
        )));
    }
    let samples_per_period = 2.0 * PI / (omega * dt);
    if samples_per_period < MIN_SAMPLES_PER_PERIOD {
        return Err(Error::Invalid(format!(
            "only {samples_per_period:.1} samples per period; at least {MIN_SAMPLES_PER_PERIOD} needed"
        )));
    }
    Ok(FrequencyEstimate {
        omega,
        uncertainty: 0.5 * bin,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::uniform_grid;

    #[test]
    fn recovers_synthetic_cosine() {
        for (omega0, phase, periods) in [(0.141245, 0.3, 10.0), (2.7, -1.0, 5.0), (1e5, 0.0, 20.0)]
        {
            let t = uniform_grid(0.0, periods * 2.0 * PI / omega0, 640);
            let v: Vec<f64> = t.iter().map(|t| 0.2 + (omega0 * t + phase).cos()).collect();
            let est = dominant_frequency(&t, &v).unwrap();
            assert!(
                ((est.omega - omega0) / omega0).abs() < 1e-3,
                "{} vs {omega0}",
                est.omega
            );
            assert!(est.uncertainty > 0.0);
        }
    }

    #[test]
    fn constant_series_has_no_oscillation() {
        let t = uniform_grid(0.0, 10.0, 100);
        let v = vec![0.25; 100];
        assert_eq!(dominant_frequency(&t, &v), Err(Error::NoOscillation));
    }

    #[test]
    fn undersampled_series_is_rejected() {
        // 2 periods only
        let t = uniform_grid(0.0, 2.0 * 2.0 * PI, 200);
        let v: Vec<f64> = t.iter().map(|t| t.cos()).collect();
        assert!(matches!(dominant_frequency(&t, &v), Err(Error::Invalid(_))));
        // 8 samples per period
        let t = uniform_grid(0.0, 10.0 * 2.0 * PI, 81);
        let v: Vec<f64> = t.iter().map(|t| t.cos()).collect();
        assert!(matches!(dominant_frequency(&t, &v), Err(Error::Invalid(_))));
    }

    #[test]
    fn nonuniform_grid_is_rejected() {
        let mut t = uniform_grid(0.0, 10.0, 64);
        t[10] += 0.01;
        let v: Vec<f64> = t.iter().map(|t| (3.0 * t).cos()).collect();
        assert!(matches!(dominant_frequency(&t, &v), Err(Error::Invalid(_))));
    }
}
