use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::Args;
use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{Map, Value};

use crate::error::CliError;

/// A complex number written as `1`, `-0.5`, `2i`, `1+i` or `0.3-1.2i`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Amplitude(pub Complex64);

impl FromStr for Amplitude {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || format!("cannot read {s:?} as a complex number");
        if t.is_empty() {
            return Err(bad());
        }
        let Some(body) = t.strip_suffix('i') else {
            return t.parse::<f64>().map(|re| Amplitude(Complex64::new(re, 0.0))).map_err(|_| bad());
        };
        // split at the last sign that is not part of an exponent
        let bytes = body.as_bytes();
        let split = (1..bytes.len()).rev().find(|&k| {
            (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E')
        });
        let (re, im) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("0", body),
        };
        let im = match im {
            "" | "+" => "1",
            "-" => "-1",
            x => x,
        };
        let re: f64 = re.parse().map_err(|_| bad())?;
        let im: f64 = im.parse().map_err(|_| bad())?;
        Ok(Amplitude(Complex64::new(re, im)))
    }
}

impl fmt::Display for Amplitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let z = self.0;
        if z.im == 0.0 {
            write!(f, "{}", z.re)
        } else if z.re == 0.0 {
            write!(f, "{}i", z.im)
        } else if z.im < 0.0 {
            write!(f, "{}{}i", z.re, z.im)
        } else {
            write!(f, "{}+{}i", z.re, z.im)
        }
    }
}

impl Serialize for Amplitude {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Amplitude {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match Value::deserialize(d)? {
            Value::Number(n) => Ok(Amplitude(Complex64::new(n.as_f64().unwrap_or(f64::NAN), 0.0))),
            Value::String(s) => s.parse().map_err(serde::de::Error::custom),
            other => Err(serde::de::Error::custom(format!("expected a number or string, found {other}"))),
        }
    }
}

/// A signal/reference amplitude pair written `alpha:beta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmplitudePair(pub Amplitude, pub Amplitude);

impl FromStr for AmplitudePair {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (a, b) = s.split_once(':').ok_or_else(|| format!("expected alpha:beta, got {s:?}"))?;
        Ok(AmplitudePair(a.parse()?, b.parse()?))
    }
}

impl fmt::Display for AmplitudePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.0, self.1)
    }
}

impl Serialize for AmplitudePair {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for AmplitudePair {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Fills every unset field of `self` from `file`.
pub trait Overlay {
    fn overlay(self, file: Self) -> Self;
}

macro_rules! params {
    ($(#[$meta:meta])* $name:ident { $($(#[$fmeta:meta])* $field:ident : $ty:ty),* $(,)? }) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Default, PartialEq, Args, Serialize, Deserialize)]
        #[serde(deny_unknown_fields)]
        pub struct $name {
            $($(#[$fmeta])* #[serde(default, skip_serializing_if = "Option::is_none")] pub $field: Option<$ty>,)*
        }

        impl Overlay for $name {
            fn overlay(self, file: Self) -> Self {
                $name { $($field: self.$field.or(file.$field),)* }
            }
        }
    };
}

params!(HomodyneParams {
    /// Signal amplitude [default: 1]
    #[arg(long)]
    alpha: Amplitude,
    /// Local-oscillator amplitude [default: 2]
    #[arg(long)]
    beta: Amplitude,
    /// Number of phase points over [0, 2π) [default: 64]
    #[arg(long)]
    phi_steps: usize,
    /// Total photon cutoff [default: smallest with tail below 1e-12]
    #[arg(long)]
    cutoff: usize,
    /// Highest moment order to tabulate, 1 to 4 [default: 2]
    #[arg(long)]
    moments: u32,
});

params!(TwirlParams {
    /// Coherent amplitudes for the single-mode twirl identity [default: 0.5,1,2i,1+i]
    #[arg(long, value_delimiter = ',')]
    alphas: Vec<Amplitude>,
    /// alpha:beta pairs for the collective twirl [default: 1:2,1:4,0.5:3]
    #[arg(long, value_delimiter = ',')]
    pairs: Vec<AmplitudePair>,
    /// Random pure qubit states for the spin-1/2 average [default: 100]
    #[arg(long)]
    qubits: usize,
    /// RNG seed (required)
    #[arg(long)]
    seed: u64,
});

params!(LocalizeParams {
    /// Photons initially in each mode [default: 20]
    #[arg(long)]
    n: usize,
    /// Detections per trajectory [default: 30]
    #[arg(long)]
    k: usize,
    /// Number of trajectories [default: 500]
    #[arg(long)]
    seeds: usize,
    /// Seed of the first trajectory; trajectory i uses seed + i (required)
    #[arg(long)]
    seed: u64,
    /// Phase grid points for the posterior [default: 256]
    #[arg(long)]
    grid: usize,
});

params!(TheoremParams {
    /// Largest number of detected modes in a random experiment [default: 4]
    #[arg(long)]
    modes: usize,
    /// Largest network depth [default: 6]
    #[arg(long)]
    depth: usize,
    /// Number of random experiments [default: 100]
    #[arg(long)]
    trials: usize,
    /// Random signals per experiment [default: 2]
    #[arg(long)]
    signals: usize,
    /// RNG seed (required)
    #[arg(long)]
    seed: u64,
    /// Largest loss probability [default: 0.5]
    #[arg(long)]
    max_loss: f64,
    /// Smallest detector efficiency [default: 0.5]
    #[arg(long)]
    min_efficiency: f64,
    /// Coherent probe amplitude for the counterexample [default: 1]
    #[arg(long)]
    gamma: Amplitude,
    /// Experiment file (network JSON with probes, losses and detectors);
    /// replaces the random experiments
    #[arg(long)]
    spec: PathBuf,
});

params!(MomentsParams {
    /// Signal amplitude [default: 1]
    #[arg(long)]
    alpha: Amplitude,
    /// Real local-oscillator amplitudes [default: 2,4,8,16]
    #[arg(long, value_delimiter = ',')]
    betas: Vec<f64>,
    /// Moment order, 1 to 4 [default: 2]
    #[arg(long)]
    order: u32,
    /// Phase shift on the signal [default: 0]
    #[arg(long)]
    phi: f64,
});

/// Top-level keys of a config file besides the experiment's own parameters.
pub struct ConfigFile {
    pub experiment: Option<String>,
    pub out: Option<PathBuf>,
    pub params: Value,
}

pub fn read_config(path: &Path) -> Result<ConfigFile, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("config {} is not valid JSON: {e}", path.display())))?;
    let Value::Object(mut map) = value else {
        return Err(CliError::Usage("config must be a JSON object".into()));
    };
    let experiment = match map.remove("experiment") {
        None => None,
        Some(Value::String(s)) => Some(s),
        Some(other) => return Err(CliError::Usage(format!("experiment must be a string, found {other}"))),
    };
    let out = match map.remove("out") {
        None => None,
        Some(Value::String(s)) => Some(PathBuf::from(s)),
        Some(other) => return Err(CliError::Usage(format!("out must be a string, found {other}"))),
    };
    Ok(ConfigFile { experiment, out, params: Value::Object(map) })
}

pub fn parse_params<T: for<'de> Deserialize<'de> + Default>(params: Option<&Value>) -> Result<T, CliError> {
    match params {
        None => Ok(T::default()),
        Some(v) => serde_json::from_value(v.clone()).map_err(|e| CliError::Usage(format!("invalid config: {e}"))),
    }
}

pub fn empty_params() -> Value {
    Value::Object(Map::new())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn amp(s: &str) -> Complex64 {
        s.parse::<Amplitude>().unwrap().0
    }

    #[test]
    fn complex_literals() {
        assert_eq!(amp("1"), Complex64::new(1.0, 0.0));
        assert_eq!(amp("2i"), Complex64::new(0.0, 2.0));
        assert_eq!(amp("1+i"), Complex64::new(1.0, 1.0));
        assert_eq!(amp("-i"), Complex64::new(0.0, -1.0));
        assert_eq!(amp("0.3-1.2i"), Complex64::new(0.3, -1.2));
        assert_eq!(amp("1e-3+2e+1i"), Complex64::new(1e-3, 20.0));
        assert!("x".parse::<Amplitude>().is_err());
        assert!("1+2j".parse::<Amplitude>().is_err());
        for s in ["1", "2i", "1+1i", "0.3-1.2i"] {
            assert_eq!(amp(&Amplitude(amp(s)).to_string()), amp(s));
        }
    }

    #[test]
    fn flags_override_file() {
        let flags = HomodyneParams { beta: Some(Amplitude(Complex64::new(3.0, 0.0))), ..Default::default() };
        let file: HomodyneParams = serde_json::from_str(r#"{"alpha": "1+i", "beta": 2}"#).unwrap();
        let merged = flags.overlay(file);
        assert_eq!(merged.alpha.unwrap().0, Complex64::new(1.0, 1.0));
        assert_eq!(merged.beta.unwrap().0, Complex64::new(3.0, 0.0));
        assert!(serde_json::from_str::<HomodyneParams>(r#"{"alpah": 1}"#).is_err());
    }
}
