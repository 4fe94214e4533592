//! Per-field frequency reports, the decay fit and their text outputs.

use std::io::Write;

use num_rational::Ratio;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct FrequencyReport {
    pub p: u64,
    pub e: u32,
    pub q: u64,
    pub n: u32,
    /// Residues of `(Z/p^n)^×` in increasing order.
    pub classes: Vec<u64>,
    pub counts: Vec<u64>,
    pub predicted: Ratio<u64>,
    pub total_ordinary: u64,
    pub total_supersingular: u64,
    pub max_abs_deviation: f64,
    pub chi_square: f64,
}

impl FrequencyReport {
    pub(crate) fn from_counts(
        p: u64,
        e: u32,
        n: u32,
        residue_counts: &[u64],
        supersingular: u64,
    ) -> Self {
        let classes: Vec<u64> = (0..residue_counts.len() as u64)
            .filter(|r| r % p != 0)
            .collect();
        let counts: Vec<u64> = classes
            .iter()
            .map(|&r| residue_counts[r as usize])
            .collect();
        let total_ordinary: u64 = counts.iter().sum();
        let predicted = Ratio::new(1, classes.len() as u64);
        let pf = 1.0 / classes.len() as f64;
        let (mut max_dev, mut chi) = (0.0f64, 0.0f64);
        if total_ordinary > 0 {
            let expected = total_ordinary as f64 * pf;
            for &c in &counts {
                max_dev = max_dev.max((c as f64 / total_ordinary as f64 - pf).abs());
                chi += (c as f64 - expected).powi(2) / expected;
            }
        }
        FrequencyReport {
            p,
            e,
            q: p.pow(e),
            n,
            classes,
            counts,
            predicted,
            total_ordinary,
            total_supersingular: supersingular,
            max_abs_deviation: max_dev,
            chi_square: chi,
        }
    }

    pub fn total(&self) -> u64 {
        self.total_ordinary + self.total_supersingular
    }

    pub fn observed_frequency(&self, i: usize) -> f64 {
        if self.total_ordinary == 0 {
            return 0.0;
        }
        self.counts[i] as f64 / self.total_ordinary as f64
    }

    pub fn supersingular_fraction(&self) -> f64 {
        if self.total() == 0 {
            return 0.0;
        }
        self.total_supersingular as f64 / self.total() as f64
    }

    /// The deviation used in the fit: exact zeros are floored at
    /// `1 / (2 · total_ordinary)`, the resolution of the frequencies.
    pub fn fitted_deviation(&self) -> f64 {
        let floor = 1.0 / (2.0 * self.total_ordinary.max(1) as f64);
        self.max_abs_deviation.max(floor)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DecayFit {
    pub slope: f64,
    pub intercept: f64,
}

/// Least squares of `log(deviation)` on `log q`.
pub fn decay_fit(reports: &[FrequencyReport]) -> Result<DecayFit> {
    let mut qs: Vec<u64> = reports.iter().map(|r| r.q).collect();
    qs.sort_unstable();
    qs.dedup();
    if qs.len() < 3 || qs.len() != reports.len() {
        return Err(Error::InvalidParameter(
            "the decay fit needs at least three reports at distinct q".into(),
        ));
    }
    let pts: Vec<(f64, f64)> = reports
        .iter()
        .map(|r| ((r.q as f64).ln(), r.fitted_deviation().ln()))
        .collect();
    Ok(least_squares(&pts))
}

pub fn least_squares(pts: &[(f64, f64)]) -> DecayFit {
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let slope = sxy / sxx;
    DecayFit {
        slope,
        intercept: my - slope * mx,
    }
}

pub fn write_report_csv<W: Write>(r: &FrequencyReport, mut out: W) -> std::io::Result<()> {
    writeln!(
        out,
        "q,n,class,observed_count,observed_freq,predicted_freq,deviation"
    )?;
    let pf = *r.predicted.numer() as f64 / *r.predicted.denom() as f64;
    for (i, (&c, &k)) in r.classes.iter().zip(&r.counts).enumerate() {
        let f = r.observed_frequency(i);
        writeln!(
            out,
            "{},{},{},{},{:.12},{}/{},{:.12}",
            r.q,
            r.n,
            c,
            k,
            f,
            r.predicted.numer(),
            r.predicted.denom(),
            f - pf
        )?;
    }
    Ok(())
}

pub fn write_summary_csv<W: Write>(
    reports: &[FrequencyReport],
    fit: Option<DecayFit>,
    mut out: W,
) -> std::io::Result<()> {
    writeln!(out, "q,max_abs_deviation,ss_fraction,slope")?;
    let slope = fit.map(|f| format!("{:.6}", f.slope)).unwrap_or_default();
    for r in reports {
        writeln!(
            out,
            "{},{:.12},{:.12},{}",
            r.q,
            r.max_abs_deviation,
            r.supersingular_fraction(),
            slope
        )?;
    }
    Ok(())
}

/// Two whitespace-separated columns, `log q` and `log deviation`.
pub fn write_plot_data<W: Write>(
    reports: &[FrequencyReport],
    notes: &str,
    mut out: W,
) -> std::io::Result<()> {
    for line in notes.lines() {
        writeln!(out, "# {line}")?;
    }
    writeln!(out, "# log_q log_deviation")?;
    for r in reports {
        writeln!(
            out,
            "{:.9} {:.9}",
            (r.q as f64).ln(),
            r.fitted_deviation().ln()
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn synthetic(q: u64, dev: f64) -> FrequencyReport {
        let mut r = FrequencyReport::from_counts(3, 1, 1, &[0, 1, 1], 0);
        r.q = q;
        r.total_ordinary = 1 << 40;
        r.max_abs_deviation = dev;
        r
    }

    #[test]
    fn fit_recovers_inverse_square_root() {
        let reports: Vec<_> = [9u64, 27, 81, 243]
            .iter()
            .map(|&q| synthetic(q, 0.7 / (q as f64).sqrt()))
            .collect();
        let fit = decay_fit(&reports).unwrap();
        assert!((fit.slope + 0.5).abs() < 1e-9);
        assert!((fit.intercept - 0.7f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn constant_deviation_has_zero_slope() {
        let reports: Vec<_> = [9u64, 27, 81].iter().map(|&q| synthetic(q, 0.1)).collect();
        assert!(decay_fit(&reports).unwrap().slope.abs() < 1e-12);
        assert!(decay_fit(&reports[..2]).is_err());
    }

    #[test]
    fn counts_and_frequencies() {
        let r = FrequencyReport::from_counts(3, 2, 2, &[0, 3, 1, 0, 1, 1, 0, 1, 1], 5);
        assert_eq!(r.classes, vec![1, 2, 4, 5, 7, 8]);
        assert_eq!(r.total_ordinary, 8);
        assert_eq!(r.predicted, Ratio::new(1, 6));
        assert!((r.max_abs_deviation - (3.0 / 8.0 - 1.0 / 6.0)).abs() < 1e-12);
        let total: f64 = (0..r.classes.len()).map(|i| r.observed_frequency(i)).sum();
        assert!((total - 1.0).abs() < 1e-12);
    }
}
