//! Run configuration shared by the subcommands: serializable, loadable from
//! TOML, individual flags override file values.

use painleve2::params::Sign;
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommandKind {
    Params,
    Trace,
    Poles,
    TotalIntegral,
    Rh,
    Pc,
    Fig2,
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// Fully-resolved run configuration; every command reads the subset it
/// needs. Serialization round-trips losslessly, and the canonical JSON form
/// is hashed into emitted file headers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct RunConfig {
    pub command: CommandKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<(f64, f64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sign: Option<Sign>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xmin: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xmax: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid_step: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<(f64, f64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub panels: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub suite: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
}

impl RunConfig {
    pub fn new(command: CommandKind) -> RunConfig {
        RunConfig {
            command,
            alpha: None,
            sign: None,
            xmin: None,
            xmax: None,
            grid_step: None,
            tol: None,
            p: None,
            tau: None,
            y: None,
            panels: None,
            suite: None,
            out: None,
            format: None,
        }
    }

    /// FNV-1a over the canonical JSON serialization, excluding the output
    /// destination (the same computation written to two paths emits
    /// byte-identical data).
    pub fn hash(&self) -> u64 {
        let mut data = self.clone();
        data.out = None;
        let canon = serde_json::to_string(&data).expect("config serializes");
        let mut h: u64 = 0xcbf29ce484222325;
        for b in canon.as_bytes() {
            h ^= *b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
        h
    }
}

/// `re` or `re,im` complex scalar syntax used on the command line.
pub fn parse_complex(s: &str) -> Result<(f64, f64), String> {
    let parts: Vec<&str> = s.split(',').collect();
    match parts.as_slice() {
        [re] => re
            .trim()
            .parse::<f64>()
            .map(|r| (r, 0.0))
            .map_err(|e| e.to_string()),
        [re, im] => {
            let r = re.trim().parse::<f64>().map_err(|e| e.to_string())?;
            let i = im.trim().parse::<f64>().map_err(|e| e.to_string())?;
            Ok((r, i))
        }
        _ => Err(format!("cannot parse '{s}' as a complex number (re or re,im)")),
    }
}
