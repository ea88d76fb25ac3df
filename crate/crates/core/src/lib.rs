//! Direct construction of Mignotte sequences and the CRT threshold
//! secret-sharing scheme built on them.
//!
//! Take a strictly increasing, pairwise coprime seed `q_1 < … < q_n`
//! (`n >= 3`), let `P` be the product of every pairwise difference
//! `q_j - q_i`, and the shifted list `t·P + q_1, …, t·P + q_n` is a
//! `(k, n)`-Mignotte sequence for every `1 < k < n` and every `t >= 1`.
//!
//! ```
//! use mignotte::{construct, split, reconstruct, Natural, SchemeParams, SeedSequence};
//!
//! let seed = SeedSequence::sylvester(1u32, 4)?; // 1, 2, 3, 7
//! let moduli = construct(&seed, 1u32)?;
//! assert_eq!(moduli.difference_product(), &Natural::from(240u32));
//!
//! let params = SchemeParams::new(&moduli, 3)?;
//! let secret = params.bounds().lower.clone() + 1000u32;
//! let shares = split(&secret, &params)?;
//! assert_eq!(reconstruct(&shares[1..], &params)?, secret);
//! # Ok::<(), mignotte::Error>(())
//! ```
//!
//! Module map:
//!
//! * [`numtheory`]: gcd, coprimality, CRT, exact rationals.
//! * [`construction`]: seeds, the difference product, the shift, and exact
//!   checkers for the inequalities behind it.
//! * [`sharing`]: split, reconstruct, candidate enumeration, share files.
//! * [`analysis`]: growth tables as CSV.

pub mod analysis;
pub mod construction;
mod error;
pub mod numtheory;
pub mod sharing;

/// Non-negative integer of unbounded size.
pub type Natural = num_bigint::BigUint;

pub use construction::{
    bounds, check_mignotte, check_strong_general, check_strong_n3, construct, difference_product,
    is_mignotte, superfactorial_bound, sylvester_seed, validate_seed, Bounds, MignotteModuli,
    SeedSequence,
};
pub use error::{Error, Result};
pub use numtheory::{crt_combine, gcd, pairwise_coprime, to_rational, Rational, ResiduePair};
pub use sharing::{
    enumerate_candidates, reconstruct, reconstruct_standalone, split, SchemeId, SchemeParams, Share,
};

// Compiles the guide's code listings as doc-tests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/construction.md")]
    mod construction {}
    #[doc = include_str!("../../../book/src/bounds.md")]
    mod bounds {}
    #[doc = include_str!("../../../book/src/sharing.md")]
    mod sharing {}
    #[doc = include_str!("../../../book/src/analysis.md")]
    mod analysis {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
