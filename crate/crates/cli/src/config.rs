use num_complex::Complex64;
use sigma_rigidity::{DEFAULT_Q_TERMS, MIN_IM_TAU, MIN_Q_TERMS};

/// Environment variable overriding the default product truncation.
pub const QTERMS_ENV: &str = "SIGMA_RIGIDITY_QTERMS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// Settings shared by every subcommand.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub tau: Complex64,
    pub q_terms: usize,
    pub tol: f64,
    pub samples: usize,
    pub seed: u64,
    pub format: Format,
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), String> {
        if !(self.tau.im >= MIN_IM_TAU) {
            return Err(format!("Im tau must be at least {MIN_IM_TAU}, got {}", self.tau.im));
        }
        if self.q_terms < MIN_Q_TERMS {
            return Err(format!("q_terms must be at least {MIN_Q_TERMS}, got {}", self.q_terms));
        }
        if !(self.tol > 0.0) {
            return Err(format!("tolerance must be positive, got {}", self.tol));
        }
        if self.samples == 0 {
            return Err("sample count must be positive".into());
        }
        Ok(())
    }
}

/// `--qterms` if given, else the environment override, else the default.
pub fn q_terms(flag: Option<usize>) -> Result<usize, String> {
    if let Some(n) = flag {
        return Ok(n);
    }
    match std::env::var(QTERMS_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| format!("{QTERMS_ENV}={v:?} is not a non-negative integer")),
        Err(_) => Ok(DEFAULT_Q_TERMS),
    }
}

/// Parses `RE,IM`.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let (re, im) = s.split_once(',').ok_or_else(|| format!("expected RE,IM, got {s:?}"))?;
    let p = |x: &str| x.trim().parse::<f64>().map_err(|e| format!("{x:?}: {e}"));
    Ok(Complex64::new(p(re)?, p(im)?))
}

/// Parses `j,k`.
pub fn parse_pair(s: &str) -> Result<(i64, i64), String> {
    let (j, k) = s.split_once(',').ok_or_else(|| format!("expected j,k, got {s:?}"))?;
    let p = |x: &str| x.trim().parse::<i64>().map_err(|e| format!("{x:?}: {e}"));
    Ok((p(j)?, p(k)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_pairs() {
        assert_eq!(parse_complex("0.3, -1").unwrap(), Complex64::new(0.3, -1.0));
        assert_eq!(parse_pair("-2,3").unwrap(), (-2, 3));
        assert!(parse_complex("1").is_err());
        assert!(parse_pair("1,x").is_err());
    }

    #[test]
    fn validation() {
        let mut c = RunConfig {
            tau: Complex64::new(0.0, 1.0),
            q_terms: 60,
            tol: 1e-8,
            samples: 20,
            seed: 0,
            format: Format::Json,
        };
        assert!(c.validate().is_ok());
        c.tau.im = 0.1;
        assert!(c.validate().is_err());
        c.tau.im = 1.0;
        c.q_terms = 39;
        assert!(c.validate().is_err());
    }
}
