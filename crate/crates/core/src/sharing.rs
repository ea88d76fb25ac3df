//! Mignotte `(k, n)` threshold secret sharing.
//!
//! A secret `S` with `N < S < M` is split into the residues `S mod m_i`.
//! Any `k` residues pin `S` down modulo a product of at least `M`, so CRT
//! recovers it; `k - 1` residues only pin it modulo at most `N`, which
//! leaves several candidates in the range.
//!
//! The plain scheme does not randomize the secret, so fewer than `k` shares
//! still leak partial information about it. Use it for what it is.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::construction::{check_mignotte, Bounds, MignotteModuli};
use crate::error::{Error, Result};
use crate::numtheory::{crt_combine, ResiduePair};
use crate::Natural;

/// Share file format version.
pub const SHARE_FORMAT_VERSION: u32 = 1;
/// Value of the `scheme` field in share files.
pub const SCHEME_NAME: &str = "mignotte";
/// Largest `M` that [`enumerate_candidates`] will scan.
pub const DEFAULT_ENUMERATION_CAP: u64 = 10_000_000;

/// Content digest identifying a scheme: lowercase hex SHA-256 of
///
/// ```text
/// mignotte-scheme/v1\n
/// k=<k>\n
/// moduli=<m_1>,<m_2>,...,<m_n>\n
/// ```
///
/// with every number in plain decimal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SchemeId(String);

impl SchemeId {
    pub fn compute(moduli: &[Natural], k: usize) -> Self {
        let list = moduli
            .iter()
            .map(Natural::to_string)
            .collect::<Vec<_>>()
            .join(",");
        let canonical = format!("mignotte-scheme/v1\nk={k}\nmoduli={list}\n");
        SchemeId(hex::encode(Sha256::digest(canonical.as_bytes())))
    }

    pub fn parse(s: &str) -> Result<Self> {
        let ok = s.len() == 64 && s.bytes().all(|b| matches!(b, b'0'..=b'9' | b'a'..=b'f'));
        if ok {
            Ok(SchemeId(s.to_string()))
        } else {
            Err(Error::malformed(
                "scheme_id must be 64 lowercase hex digits",
            ))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for SchemeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Moduli, threshold and the derived secret range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemeParams {
    moduli: Vec<Natural>,
    k: usize,
    bounds: Bounds,
    scheme_id: SchemeId,
}

impl SchemeParams {
    pub fn new(moduli: &MignotteModuli, k: usize) -> Result<Self> {
        Self::from_moduli(moduli.moduli().to_vec(), k)
    }

    /// Parameters over any list that is a Mignotte sequence for `k`.
    pub fn from_moduli(moduli: Vec<Natural>, k: usize) -> Result<Self> {
        let bounds = check_mignotte(&moduli, k)?;
        let scheme_id = SchemeId::compute(&moduli, k);
        Ok(SchemeParams {
            moduli,
            k,
            bounds,
            scheme_id,
        })
    }

    pub fn moduli(&self) -> &[Natural] {
        &self.moduli
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.moduli.len()
    }

    pub fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    pub fn scheme_id(&self) -> &SchemeId {
        &self.scheme_id
    }
}

/// One participant's piece: `residue = S mod modulus`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Share {
    scheme_id: SchemeId,
    n: usize,
    k: usize,
    index: usize,
    modulus: Natural,
    residue: Natural,
}

impl Share {
    pub fn new(
        scheme_id: SchemeId,
        n: usize,
        k: usize,
        index: usize,
        modulus: Natural,
        residue: Natural,
    ) -> Result<Self> {
        crate::construction::check_threshold(k, n)?;
        if index == 0 || index > n {
            return Err(Error::IndexOutOfRange { index, n });
        }
        // Reuses the residue/modulus validation.
        let pair = ResiduePair::new(residue, modulus)?;
        Ok(Share {
            scheme_id,
            n,
            k,
            index,
            modulus: pair.modulus().clone(),
            residue: pair.residue().clone(),
        })
    }

    pub fn scheme_id(&self) -> &SchemeId {
        &self.scheme_id
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// 1-based participant index.
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn modulus(&self) -> &Natural {
        &self.modulus
    }

    pub fn residue(&self) -> &Natural {
        &self.residue
    }

    fn as_pair(&self) -> ResiduePair {
        ResiduePair::new(self.residue.clone(), self.modulus.clone())
            .expect("validated on construction")
    }

    /// Canonical text form: pretty JSON, keys in fixed order, two-space
    /// indent, LF line endings, trailing newline.
    pub fn to_canonical_string(&self) -> String {
        let record = ShareRecord {
            version: SHARE_FORMAT_VERSION,
            scheme: SCHEME_NAME.to_string(),
            scheme_id: self.scheme_id.0.clone(),
            n: self.n,
            k: self.k,
            index: self.index,
            modulus: self.modulus.to_string(),
            residue: self.residue.to_string(),
        };
        let mut out = serde_json::to_string_pretty(&record).expect("plain record serializes");
        out.push('\n');
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let record: ShareRecord =
            serde_json::from_str(text).map_err(|e| Error::malformed(e.to_string()))?;
        if record.version != SHARE_FORMAT_VERSION {
            return Err(Error::malformed(format!(
                "unsupported version {}",
                record.version
            )));
        }
        if record.scheme != SCHEME_NAME {
            return Err(Error::malformed(format!(
                "unknown scheme {:?}",
                record.scheme
            )));
        }
        Share::new(
            SchemeId::parse(&record.scheme_id)?,
            record.n,
            record.k,
            record.index,
            parse_decimal(&record.modulus, "modulus")?,
            parse_decimal(&record.residue, "residue")?,
        )
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ShareRecord {
    version: u32,
    scheme: String,
    scheme_id: String,
    n: usize,
    k: usize,
    index: usize,
    modulus: String,
    residue: String,
}

/// Plain decimal: ASCII digits only, no sign, no leading zeros.
pub fn parse_decimal(s: &str, field: &str) -> Result<Natural> {
    let digits_only = !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    let canonical = s == "0" || !s.starts_with('0');
    if !(digits_only && canonical) {
        return Err(Error::malformed(format!(
            "{field} must be a plain decimal string"
        )));
    }
    Ok(s.parse().expect("validated digits"))
}

/// Residues of `secret` modulo every modulus, indexed from 1.
pub fn split(secret: &Natural, params: &SchemeParams) -> Result<Vec<Share>> {
    let b = &params.bounds;
    if secret <= &b.lower {
        return Err(Error::SecretBelowRange(b.lower.clone()));
    }
    if secret >= &b.upper {
        return Err(Error::SecretAboveRange(b.upper.clone()));
    }
    Ok(params
        .moduli
        .iter()
        .enumerate()
        .map(|(i, m)| Share {
            scheme_id: params.scheme_id.clone(),
            n: params.n(),
            k: params.k,
            index: i + 1,
            modulus: m.clone(),
            residue: secret % m,
        })
        .collect())
}

fn check_against_params(shares: &[Share], params: &SchemeParams) -> Result<()> {
    let mut seen = BTreeSet::new();
    for s in shares {
        if s.scheme_id != params.scheme_id || s.n != params.n() || s.k != params.k {
            return Err(Error::SchemeMismatch);
        }
        if !seen.insert(s.index) {
            return Err(Error::DuplicateIndex(s.index));
        }
        if s.modulus != params.moduli[s.index - 1] {
            return Err(Error::InconsistentShares);
        }
    }
    Ok(())
}

/// Recovers the secret from `k` or more shares.
///
/// Every supplied share enters the CRT. The result must land strictly
/// inside `(N, M)`; anything else means the shares were altered or do not
/// belong together.
pub fn reconstruct(shares: &[Share], params: &SchemeParams) -> Result<Natural> {
    if shares.len() < params.k {
        return Err(Error::InsufficientShares {
            have: shares.len(),
            need: params.k,
        });
    }
    check_against_params(shares, params)?;
    let x = combine(shares)?;
    let b = &params.bounds;
    if x <= b.lower || x >= b.upper {
        return Err(Error::InconsistentShares);
    }
    Ok(x)
}

/// Recovers the secret using only what the shares themselves carry.
///
/// Without the full moduli list the range check is weaker: `N` is bounded
/// below by the product of the `k - 1` largest known moduli and `M` above
/// by the product of the `k` smallest known ones, and the result must fall
/// strictly between those.
pub fn reconstruct_standalone(shares: &[Share]) -> Result<Natural> {
    let first = shares.first().ok_or(Error::EmptyInput)?;
    let mut seen = BTreeSet::new();
    for s in shares {
        if s.scheme_id != first.scheme_id || s.n != first.n || s.k != first.k {
            return Err(Error::SchemeMismatch);
        }
        if !seen.insert(s.index) {
            return Err(Error::DuplicateIndex(s.index));
        }
    }
    let k = first.k;
    if shares.len() < k {
        return Err(Error::InsufficientShares {
            have: shares.len(),
            need: k,
        });
    }
    let x = combine(shares)?;

    let mut known: Vec<&Natural> = shares.iter().map(|s| &s.modulus).collect();
    known.sort();
    let upper: Natural = known[..k].iter().copied().product();
    let lower: Natural = known[known.len() - (k - 1)..].iter().copied().product();
    if x <= lower || x >= upper {
        return Err(Error::InconsistentShares);
    }
    Ok(x)
}

fn combine(shares: &[Share]) -> Result<Natural> {
    let pairs: Vec<ResiduePair> = shares.iter().map(Share::as_pair).collect();
    match crt_combine(&pairs) {
        Ok(c) => Ok(c.residue().clone()),
        Err(Error::ModuliNotCoprime(..)) => Err(Error::InconsistentShares),
        Err(e) => Err(e),
    }
}

/// Every value in `(N, M)` consistent with fewer than `k` shares, ascending.
pub fn enumerate_candidates(shares: &[Share], params: &SchemeParams) -> Result<Vec<Natural>> {
    enumerate_candidates_capped(shares, params, &Natural::from(DEFAULT_ENUMERATION_CAP))
}

pub fn enumerate_candidates_capped(
    shares: &[Share],
    params: &SchemeParams,
    cap: &Natural,
) -> Result<Vec<Natural>> {
    let max = params.k - 1;
    if shares.len() > max {
        return Err(Error::TooManyShares {
            have: shares.len(),
            max,
        });
    }
    let b = &params.bounds;
    if &b.upper > cap {
        return Err(Error::RangeTooLarge {
            upper: b.upper.clone(),
            cap: cap.clone(),
        });
    }
    check_against_params(shares, params)?;

    let (residue, step) = if shares.is_empty() {
        (Natural::zero(), Natural::one())
    } else {
        let pairs: Vec<ResiduePair> = shares.iter().map(Share::as_pair).collect();
        let c = crt_combine(&pairs)?;
        (c.residue().clone(), c.modulus().clone())
    };

    // Smallest x > N with x ≡ residue (mod step).
    let start = &b.lower + 1u32;
    let offset = (&residue + &step - (&start % &step)) % &step;
    let mut x = start + offset;
    let mut out = Vec::new();
    while x < b.upper {
        out.push(x.clone());
        x += &step;
    }
    Ok(out)
}
