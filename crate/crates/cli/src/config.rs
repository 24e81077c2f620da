use std::fs;
use std::path::Path;

use num_bigint::BigInt;
use serde::Deserialize;

use k3wall::SurfaceData;

pub const DEFAULT_ROOT_BOUND: u32 = 20;

/// Keys accepted in a `--config` TOML file.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceSpec {
    pub d_prime: Option<i64>,
    pub gram: Option<Vec<Vec<i64>>>,
    pub root_bound: Option<u32>,
}

impl SurfaceSpec {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        toml::from_str(&text).map_err(|e| {
            let msg = e.to_string().split_whitespace().collect::<Vec<_>>().join(" ");
            format!("config {}: {msg}", path.display())
        })
    }

    /// Merges a `--d-prime` flag into the file spec and builds the surface.
    pub fn surface(&self, flag: Option<i64>) -> Result<SurfaceData, String> {
        let d_prime = match (flag, self.d_prime) {
            (Some(a), Some(b)) if a != b => {
                return Err(format!("--d-prime {a} disagrees with config d_prime = {b}"))
            }
            (a, b) => a.or(b),
        };
        if let Some(gram) = &self.gram {
            let gram: Vec<Vec<BigInt>> =
                gram.iter().map(|row| row.iter().map(|&x| BigInt::from(x)).collect()).collect();
            let surface = SurfaceData::with_gram(gram).map_err(|e| format!("config gram: {e}"))?;
            if let Some(d) = d_prime {
                if surface.d_prime() != &BigInt::from(d) {
                    return Err(format!(
                        "d_prime = {d} disagrees with gram[0][0]/2 = {}",
                        surface.d_prime()
                    ));
                }
            }
            return Ok(surface);
        }
        match d_prime {
            Some(d) => SurfaceData::rank_one(d).map_err(|e| e.to_string()),
            None => Err("no surface given: pass --d-prime or --config".into()),
        }
    }

    pub fn root_bound(&self, flag: Option<u32>) -> u32 {
        flag.or(self.root_bound).unwrap_or(DEFAULT_ROOT_BOUND)
    }
}
