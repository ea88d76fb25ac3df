//! On-disk form of constructed moduli.
//!
//! ```text
//! {
//!   "version": 1,
//!   "n": 3,
//!   "k_hint": 2,
//!   "moduli": ["3", "4", "5"],
//!   "provenance": { "seed": ["1", "2", "3"], "t": "1", "P": "2" }
//! }
//! ```
//!
//! (pretty-printed with two-space indent; `k_hint` is omitted when unset).
//! Loading re-derives the moduli from the provenance and rejects the file
//! on any mismatch.

use mignotte::sharing::parse_decimal;
use mignotte::{MignotteModuli, Natural, SeedSequence};
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const MODULI_FILE_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuliFile {
    pub version: u32,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_hint: Option<usize>,
    pub moduli: Vec<String>,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Provenance {
    pub seed: Vec<String>,
    pub t: String,
    #[serde(rename = "P")]
    pub p: String,
}

fn decimals(xs: &[Natural]) -> Vec<String> {
    xs.iter().map(Natural::to_string).collect()
}

impl ModuliFile {
    pub fn from_moduli(m: &MignotteModuli, k_hint: Option<usize>) -> Self {
        ModuliFile {
            version: MODULI_FILE_VERSION,
            n: m.len(),
            k_hint,
            moduli: decimals(m.moduli()),
            provenance: Provenance {
                seed: decimals(m.seed().terms()),
                t: m.iterations().to_string(),
                p: m.difference_product().to_string(),
            },
        }
    }

    pub fn to_canonical_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain record serializes");
        s.push('\n');
        s
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text)
            .map_err(|e| CliError::Domain(format!("malformed moduli file: {e}")))
    }

    /// Re-derives everything from the provenance block.
    pub fn load(&self) -> Result<MignotteModuli, CliError> {
        if self.version != MODULI_FILE_VERSION {
            return Err(CliError::Domain(format!(
                "unsupported moduli file version {}",
                self.version
            )));
        }
        if self.n != self.moduli.len() {
            return Err(CliError::Domain(format!(
                "moduli file says n = {} but lists {} moduli",
                self.n,
                self.moduli.len()
            )));
        }
        let parse_all = |xs: &[String], what: &str| -> Result<Vec<Natural>, CliError> {
            xs.iter()
                .map(|x| parse_decimal(x, what).map_err(CliError::from))
                .collect()
        };
        let seed = SeedSequence::new(parse_all(&self.provenance.seed, "seed")?)?;
        let t = parse_decimal(&self.provenance.t, "t")?;
        let p = parse_decimal(&self.provenance.p, "P")?;
        let moduli = parse_all(&self.moduli, "modulus")?;
        Ok(MignotteModuli::from_provenance(seed, t, p, moduli)?)
    }
}
