//! Complex pairs and evaluation grids.

use std::fmt;
use std::str::FromStr;

use zeta_core::Complex64;

use crate::CliError;

/// A complex number written as `re,im`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Pair(pub Complex64);

impl FromStr for Pair {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let t = s.trim().trim_start_matches('[').trim_start_matches('(');
        let t = t.trim_end_matches(']').trim_end_matches(')');
        let (re, im) = t
            .split_once(',')
            .ok_or_else(|| format!("'{s}' is not an re,im pair"))?;
        let parse = |x: &str| x.trim().parse::<f64>().map_err(|e| format!("'{s}': {e}"));
        Ok(Pair(Complex64::new(parse(re)?, parse(im)?)))
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.0.re, self.0.im)
    }
}

/// Comma-separated reals.
#[derive(Clone, Debug, PartialEq)]
pub struct Reals(pub Vec<f64>);

impl FromStr for Reals {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let t = s.trim().trim_start_matches('[').trim_end_matches(']');
        t.split(',')
            .map(|x| x.trim().parse::<f64>().map_err(|e| format!("'{s}': {e}")))
            .collect::<Result<Vec<_>, _>>()
            .map(Reals)
    }
}

fn axis(start: f64, stop: f64, step: f64, name: &str) -> Result<Vec<f64>, CliError> {
    if start == stop {
        return Ok(vec![start]);
    }
    if !(step > 0.0) || stop < start {
        return Err(CliError::Usage(format!(
            "{name}: need start <= stop and a positive step, got {start}..{stop} by {step}"
        )));
    }
    let n = ((stop - start) / step + 1e-9).floor() as usize + 1;
    if n > 1_000_000 {
        return Err(CliError::Usage(format!("{name}: grid has {n} points")));
    }
    Ok((0..n).map(|i| start + i as f64 * step).collect())
}

/// Rectangular grid from start to stop with per-axis steps; real part outermost.
pub fn complex_grid(start: Complex64, stop: Option<Complex64>, step: Option<Complex64>) -> Result<Vec<Complex64>, CliError> {
    let stop = stop.unwrap_or(start);
    let step = step.unwrap_or_default();
    let re = axis(start.re, stop.re, step.re, "real axis")?;
    let im = axis(start.im, stop.im, step.im, "imaginary axis")?;
    Ok(re
        .iter()
        .flat_map(|&x| im.iter().map(move |&y| Complex64::new(x, y)))
        .collect())
}

/// `count` log-spaced values from start to stop.
pub fn log_grid(start: f64, stop: f64, count: usize) -> Result<Vec<f64>, CliError> {
    if !(start > 0.0 && stop >= start) || count == 0 {
        return Err(CliError::Usage(format!(
            "t-grid: need 0 < start <= stop and a positive count, got {start}..{stop} x {count}"
        )));
    }
    if count == 1 || start == stop {
        return Ok(vec![start]);
    }
    Ok((0..count)
        .map(|i| start * (stop / start).powf(i as f64 / (count - 1) as f64))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairs_parse() {
        assert_eq!("1.5,-2".parse::<Pair>().unwrap().0, Complex64::new(1.5, -2.0));
        assert_eq!("[3, 0]".parse::<Pair>().unwrap().0, Complex64::new(3.0, 0.0));
        assert!("1+2i".parse::<Pair>().is_err());
        assert_eq!("0.25, 1".parse::<Reals>().unwrap().0, vec![0.25, 1.0]);
    }

    #[test]
    fn grids() {
        let g = complex_grid(Complex64::new(3.0, 0.0), Some(Complex64::new(4.0, 1.0)), Some(Complex64::new(0.5, 1.0))).unwrap();
        assert_eq!(g.len(), 6);
        assert_eq!(g[1], Complex64::new(3.0, 1.0));
        assert_eq!(complex_grid(Complex64::new(2.0, 1.0), None, None).unwrap().len(), 1);
        assert!(complex_grid(Complex64::new(2.0, 0.0), Some(Complex64::new(1.0, 0.0)), Some(Complex64::new(1.0, 0.0))).is_err());
        let t = log_grid(0.1, 10.0, 3).unwrap();
        assert!((t[1] - 1.0).abs() < 1e-15);
        assert!(log_grid(0.0, 1.0, 3).is_err());
    }
}
