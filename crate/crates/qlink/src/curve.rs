//! Shared tabulated-curve machinery: strictly increasing abscissa, log-log
//! interpolation with a linear fallback on segments that touch zero, and a
//! small CSV reader (two float columns, `#` comments, line-numbered errors).

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct SampledCurve {
    samples: Vec<(f64, f64)>,
}

impl SampledCurve {
    /// `samples` are `(x, y)` pairs with x > 0 strictly increasing and
    /// y >= 0 finite; at least two samples.
    pub fn new(samples: Vec<(f64, f64)>) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::InvalidInput(
                "curve needs at least two samples".to_string(),
            ));
        }
        for &(x, y) in &samples {
            if !x.is_finite() || !y.is_finite() || x <= 0.0 || y < 0.0 {
                return Err(Error::InvalidInput(format!(
                    "curve sample ({x:e}, {y:e}) must have finite x > 0 and y >= 0"
                )));
            }
        }
        if samples.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::InvalidInput(
                "curve abscissa must be strictly increasing".to_string(),
            ));
        }
        Ok(SampledCurve { samples })
    }

    pub fn from_csv(text: &str, header: &str, label: &str) -> Result<Self> {
        let mut samples = Vec::new();
        let mut header_seen = false;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            if !header_seen {
                if content != header {
                    return Err(Error::DataFormat {
                        path: label.to_string(),
                        line,
                        message: format!("expected header '{header}', got '{content}'"),
                    });
                }
                header_seen = true;
                continue;
            }
            let fields: Vec<&str> = content.split(',').map(str::trim).collect();
            if fields.len() != 2 {
                return Err(Error::DataFormat {
                    path: label.to_string(),
                    line,
                    message: format!("expected 2 comma-separated fields, got {}", fields.len()),
                });
            }
            let mut parsed = [0.0f64; 2];
            for (slot, field) in parsed.iter_mut().zip(&fields) {
                *slot = field.parse().map_err(|_| Error::DataFormat {
                    path: label.to_string(),
                    line,
                    message: format!("malformed number '{field}'"),
                })?;
            }
            samples.push((parsed[0], parsed[1]));
        }
        if !header_seen {
            return Err(Error::DataFormat {
                path: label.to_string(),
                line: 1,
                message: format!("missing header '{header}'"),
            });
        }
        SampledCurve::new(samples).map_err(|e| Error::DataFormat {
            path: label.to_string(),
            line: 1,
            message: e.to_string(),
        })
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn x_min(&self) -> f64 {
        self.samples[0].0
    }

    pub fn x_max(&self) -> f64 {
        self.samples[self.samples.len() - 1].0
    }

    /// Interpolated value at `x`. Log-log within a segment; plain linear on
    /// segments where either endpoint value is zero. Out-of-range `x` is an
    /// error rather than an extrapolation.
    pub fn value_at(&self, x: f64, what: &'static str) -> Result<f64> {
        if !x.is_finite() || x < self.x_min() || x > self.x_max() {
            return Err(Error::OutOfRange {
                what,
                value: x,
                lo: self.x_min(),
                hi: self.x_max(),
            });
        }
        let i = match self.samples.binary_search_by(|(sx, _)| sx.total_cmp(&x)) {
            Ok(exact) => return Ok(self.samples[exact].1),
            Err(ins) => ins - 1,
        };
        let (x0, y0) = self.samples[i];
        let (x1, y1) = self.samples[i + 1];
        if y0 > 0.0 && y1 > 0.0 {
            let t = (x.ln() - x0.ln()) / (x1.ln() - x0.ln());
            Ok((y0.ln() + t * (y1.ln() - y0.ln())).exp())
        } else {
            let t = (x - x0) / (x1 - x0);
            Ok(y0 + t * (y1 - y0))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interpolates_log_log() {
        let c = SampledCurve::new(vec![(1.0, 1.0), (100.0, 1e-4)]).unwrap();
        // Halfway in log x: y = sqrt(1 * 1e-4) = 1e-2.
        let y = c.value_at(10.0, "x").unwrap();
        assert!((y - 1e-2).abs() < 1e-16);
    }

    #[test]
    fn zero_segment_falls_back_to_linear() {
        let c = SampledCurve::new(vec![(1.0, 0.0), (3.0, 4.0)]).unwrap();
        assert_eq!(c.value_at(2.0, "x").unwrap(), 2.0);
        assert_eq!(c.value_at(1.0, "x").unwrap(), 0.0);
    }

    #[test]
    fn exact_sample_returns_tabulated_value() {
        let c = SampledCurve::new(vec![(1.0, 5.0), (2.0, 7.0), (4.0, 9.0)]).unwrap();
        assert_eq!(c.value_at(2.0, "x").unwrap(), 7.0);
    }

    #[test]
    fn out_of_range_is_an_error() {
        let c = SampledCurve::new(vec![(1.0, 1.0), (2.0, 1.0)]).unwrap();
        assert!(matches!(
            c.value_at(0.5, "x"),
            Err(Error::OutOfRange { .. })
        ));
        assert!(matches!(
            c.value_at(2.5, "x"),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn rejects_unsorted_and_negative() {
        assert!(SampledCurve::new(vec![(2.0, 1.0), (1.0, 1.0)]).is_err());
        assert!(SampledCurve::new(vec![(1.0, -1.0), (2.0, 1.0)]).is_err());
        assert!(SampledCurve::new(vec![(1.0, 1.0)]).is_err());
    }

    #[test]
    fn csv_reports_line_numbers() {
        let text = "a_m,b_m2\n1.0,2.0\nbogus,3.0\n";
        let err = SampledCurve::from_csv(text, "a_m,b_m2", "test.csv").unwrap_err();
        match err {
            Error::DataFormat { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn csv_strips_comments_and_blank_lines() {
        let text = "# leading comment\n\na_m,b_m2\n1.0,2.0 # trailing\n2.0,3.0\n";
        let c = SampledCurve::from_csv(text, "a_m,b_m2", "test.csv").unwrap();
        assert_eq!(c.len(), 2);
    }

    #[test]
    fn csv_rejects_wrong_header() {
        let err = SampledCurve::from_csv("x,y\n1,2\n", "a_m,b_m2", "t.csv").unwrap_err();
        match err {
            Error::DataFormat { line, .. } => assert_eq!(line, 1),
            other => panic!("unexpected error {other:?}"),
        }
    }
}
