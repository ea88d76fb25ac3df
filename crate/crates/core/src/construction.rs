//! Direct construction of Mignotte sequences.
//!
//! Start from any strictly increasing, pairwise coprime seed
//! `q_1 < … < q_n` with `n >= 3`, let `P` be the product of all pairwise
//! differences `q_j - q_i` (`i < j`), and shift every term by `t·P` for some
//! `t >= 1`. The shifted terms stay pairwise coprime, because every
//! difference divides the shift, and the product of the `k` smallest always
//! beats the product of the `k - 1` largest, for every `1 < k < n`.
//!
//! Besides the construction this module carries exact checkers for the
//! intermediate inequalities that make the argument work, so the test suite
//! can watch each of them hold.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numtheory::{first_common_factor, Rational};
use crate::Natural;

/// Numerator of the rational over-approximation `2.7182818285` of `e`.
pub const E_UPPER_NUMERATOR: u64 = 27_182_818_285;
/// Denominator of the rational over-approximation of `e`.
pub const E_UPPER_DENOMINATOR: u64 = 10_000_000_000;

/// A strictly increasing, pairwise coprime sequence of at least three
/// positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SeedSequence(Vec<Natural>);

impl SeedSequence {
    /// Validates `q` and wraps it.
    ///
    /// Checks run in a fixed order (length, positivity, ordering,
    /// coprimality) and the first violation is reported; a coprimality
    /// failure names the offending pair.
    pub fn new(q: Vec<Natural>) -> Result<Self> {
        if q.len() < 3 {
            return Err(Error::SequenceTooShort(q.len()));
        }
        check_positive_increasing(&q)?;
        check_coprime(&q)?;
        Ok(SeedSequence(q))
    }

    /// Seed from the recursion `q_{i+1} = 1 + q_1·…·q_i`.
    ///
    /// Any two terms are coprime: a later term is one more than a multiple
    /// of every earlier one.
    pub fn sylvester(q1: impl Into<Natural>, n: usize) -> Result<Self> {
        let q1 = q1.into();
        if n < 3 {
            return Err(Error::SequenceTooShort(n));
        }
        if q1.is_zero() {
            return Err(Error::ZeroTerm);
        }
        let mut terms = Vec::with_capacity(n);
        let mut product = q1.clone();
        terms.push(q1);
        while terms.len() < n {
            let next = &product + 1u32;
            product *= &next;
            terms.push(next);
        }
        Ok(SeedSequence(terms))
    }

    pub fn terms(&self) -> &[Natural] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always `false`; a seed has at least three terms.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> &Natural {
        &self.0[0]
    }

    pub fn last(&self) -> &Natural {
        &self.0[self.0.len() - 1]
    }

    pub fn into_terms(self) -> Vec<Natural> {
        self.0
    }
}

/// Same as [`SeedSequence::sylvester`].
pub fn sylvester_seed(q1: impl Into<Natural>, n: usize) -> Result<SeedSequence> {
    SeedSequence::sylvester(q1, n)
}

/// Same as [`SeedSequence::new`].
pub fn validate_seed(q: Vec<Natural>) -> Result<SeedSequence> {
    SeedSequence::new(q)
}

fn check_positive_increasing(xs: &[Natural]) -> Result<()> {
    if let Some(pos) = xs.iter().position(Zero::is_zero) {
        return Err(Error::ZeroAt(pos + 1));
    }
    match xs.windows(2).find(|w| w[0] >= w[1]) {
        Some(w) => Err(Error::NotIncreasing(w[0].clone(), w[1].clone())),
        None => Ok(()),
    }
}

fn check_coprime(xs: &[Natural]) -> Result<()> {
    match first_common_factor(xs) {
        Some((i, j)) => Err(Error::NotCoprime(xs[i].clone(), xs[j].clone())),
        None => Ok(()),
    }
}

pub(crate) fn check_threshold(k: usize, n: usize) -> Result<()> {
    if 1 < k && k < n {
        Ok(())
    } else {
        Err(Error::ThresholdOutOfRange { k, n })
    }
}

/// Product of all pairwise differences `q_j - q_i`, `i < j`.
pub fn difference_product(seed: &SeedSequence) -> Natural {
    difference_product_of(seed.terms())
}

/// Difference product of an arbitrary strictly increasing list.
///
/// # Panics
///
/// If `xs` is not strictly increasing.
pub fn difference_product_of(xs: &[Natural]) -> Natural {
    let mut p = Natural::one();
    for (i, lo) in xs.iter().enumerate() {
        for hi in &xs[i + 1..] {
            assert!(
                hi > lo,
                "difference product needs a strictly increasing list"
            );
            p *= hi - lo;
        }
    }
    p
}

/// Moduli `t·P + q_i` together with how they were obtained.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MignotteModuli {
    moduli: Vec<Natural>,
    seed: SeedSequence,
    difference_product: Natural,
    iterations: Natural,
}

impl MignotteModuli {
    pub fn moduli(&self) -> &[Natural] {
        &self.moduli
    }

    pub fn seed(&self) -> &SeedSequence {
        &self.seed
    }

    /// `P`, the difference product of the seed.
    pub fn difference_product(&self) -> &Natural {
        &self.difference_product
    }

    /// `t`, the number of times the shift was applied.
    pub fn iterations(&self) -> &Natural {
        &self.iterations
    }

    pub fn len(&self) -> usize {
        self.moduli.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moduli.is_empty()
    }

    /// The shift applied to every seed term, `t·P`.
    pub fn shift(&self) -> Natural {
        &self.iterations * &self.difference_product
    }

    /// Reassembles moduli from stored provenance, re-deriving everything.
    ///
    /// Rejects the input if `P` is not the seed's difference product, if any
    /// modulus differs from `t·P + q_i`, or if the result is not a Mignotte
    /// sequence for every admissible threshold.
    pub fn from_provenance(
        seed: SeedSequence,
        iterations: Natural,
        difference_product: Natural,
        moduli: Vec<Natural>,
    ) -> Result<Self> {
        let rebuilt = construct(&seed, iterations)?;
        if rebuilt.difference_product != difference_product {
            return Err(Error::ProvenanceMismatch(format!(
                "P should be {} for this seed, found {}",
                rebuilt.difference_product, difference_product
            )));
        }
        if rebuilt.moduli != moduli {
            return Err(Error::ProvenanceMismatch(
                "moduli differ from t*P + q_i".to_string(),
            ));
        }
        for k in 2..rebuilt.len() {
            check_mignotte(rebuilt.moduli(), k)?;
        }
        Ok(rebuilt)
    }

    /// The moduli read as a fresh seed. They satisfy every seed invariant.
    pub fn as_seed(&self) -> SeedSequence {
        SeedSequence(self.moduli.clone())
    }
}

/// Builds `t·P + q_1, …, t·P + q_n`.
pub fn construct(seed: &SeedSequence, t: impl Into<Natural>) -> Result<MignotteModuli> {
    let iterations = t.into();
    if iterations.is_zero() {
        return Err(Error::ZeroIterations);
    }
    let difference_product = difference_product(seed);
    let shift = &iterations * &difference_product;
    let moduli = seed.terms().iter().map(|q| &shift + q).collect();
    Ok(MignotteModuli {
        moduli,
        seed: seed.clone(),
        difference_product,
        iterations,
    })
}

/// Threshold products for one `k`.
///
/// `upper` is `M`, the product of the `k` smallest moduli; `lower` is `N`,
/// the product of the `k - 1` largest. Secrets live strictly between the
/// two, and `gap_ratio = (M - N) / N` measures how roomy that interval is.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Bounds {
    pub k: usize,
    pub n: usize,
    pub upper: Natural,
    pub lower: Natural,
    pub gap_ratio: Rational,
}

impl Bounds {
    /// Bounds of an arbitrary list, assumed sorted ascending. Only the
    /// threshold range is checked.
    pub fn of(moduli: &[Natural], k: usize) -> Result<Self> {
        let n = moduli.len();
        check_threshold(k, n)?;
        let upper: Natural = moduli[..k].iter().product();
        let lower: Natural = moduli[n - k + 1..].iter().product();
        let gap = BigInt::from(upper.clone()) - BigInt::from(lower.clone());
        let gap_ratio = crate::numtheory::to_rational(gap, &lower)?;
        Ok(Bounds {
            k,
            n,
            upper,
            lower,
            gap_ratio,
        })
    }

    pub fn is_mignotte(&self) -> bool {
        self.upper > self.lower
    }
}

pub fn bounds(moduli: &MignotteModuli, k: usize) -> Result<Bounds> {
    Bounds::of(moduli.moduli(), k)
}

/// `true` iff the product of the `k` smallest terms exceeds the product of
/// the `k - 1` largest.
///
/// The list must be positive, strictly increasing and pairwise coprime, and
/// `k` must satisfy `1 < k < len`; each violation is its own error.
pub fn is_mignotte(moduli: &[Natural], k: usize) -> Result<bool> {
    check_positive_increasing(moduli)?;
    check_coprime(moduli)?;
    Ok(Bounds::of(moduli, k)?.is_mignotte())
}

/// Like [`is_mignotte`], but a failing product comparison is an error that
/// carries both products.
pub fn check_mignotte(moduli: &[Natural], k: usize) -> Result<Bounds> {
    check_positive_increasing(moduli)?;
    check_coprime(moduli)?;
    let b = Bounds::of(moduli, k)?;
    if b.is_mignotte() {
        Ok(b)
    } else {
        Err(Error::NotMignotte {
            k,
            smallest: b.upper,
            largest: b.lower,
        })
    }
}

/// `(P + q_1)^2 > P + q_3` for a three-term seed.
///
/// Holds whenever `P` is the seed's difference product; `P` is a parameter
/// so that degenerate values can be probed.
pub fn check_strong_n3(seed: &SeedSequence, p: &Natural) -> Result<bool> {
    if seed.len() != 3 {
        return Err(Error::NotThreeTerms(seed.len()));
    }
    let q = seed.terms();
    let lhs = p + &q[0];
    Ok(&lhs * &lhs > p + &q[2])
}

/// `P·(P + q_1)^k > (P + q_n)^k`, for seeds with `n >= 4`.
///
/// This is the `k`-th power of `P^(1/k)·(1 + q_1/P) > 1 + q_n/P` after
/// clearing denominators, so no roots are taken.
pub fn check_strong_general(seed: &SeedSequence, p: &Natural, k: usize) -> Result<bool> {
    if seed.len() < 4 {
        return Err(Error::UseN3Checker(seed.len()));
    }
    check_threshold(k, seed.len())?;
    if p.is_zero() {
        return Err(Error::ZeroDifferenceProduct);
    }
    let exp = u32::try_from(k).expect("k < n fits in u32");
    let lhs = p * num_traits::pow(p + seed.first(), exp as usize);
    let rhs = num_traits::pow(p + seed.last(), exp as usize);
    Ok(lhs > rhs)
}

/// `1!·2!·…·(n-1)!`, a lower bound for the difference product of any
/// strictly increasing integer sequence of length `n`.
pub fn superfactorial_bound(n: usize) -> Result<Natural> {
    if n < 3 {
        return Err(Error::SequenceTooShort(n));
    }
    let mut factorial = Natural::one();
    let mut product = Natural::one();
    for i in 1..n {
        factorial *= Natural::from(i);
        product *= &factorial;
    }
    Ok(product)
}

/// `E^n` for the rational over-approximation `E` of `e`.
pub fn e_power_upper_bound(n: u32) -> Rational {
    Rational::new(E_UPPER_NUMERATOR, E_UPPER_DENOMINATOR)
        .expect("nonzero denominator")
        .pow(n)
}

/// `true` if `x > E^n`, which implies `x > e^n`.
pub fn exceeds_e_power(x: &Natural, n: u32) -> bool {
    e_power_upper_bound(n).cmp_natural(x).is_lt()
}
