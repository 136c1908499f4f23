//! Decides whether a finite Dold-coefficient sequence can occur as the
//! index sequence of a smooth map near an isolated fixed point in
//! dimension m, and exposes the distinct-values bound for smooth
//! expressions.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{self, lcm_closure};
use crate::dold::DivisorSequence;
use crate::error::{Error, Result};

/// A smoothly realizable expression in R^m takes at most 2^⌊(m+1)/2⌋
/// distinct values along the iterates.
pub fn max_distinct_values(m: u32) -> Result<u64> {
    if m < 3 {
        return Err(Error::InvalidInput(format!(
            "dimension must be at least 3, got {m}"
        )));
    }
    let e = m.div_ceil(2);
    if e >= 64 {
        return Err(Error::InvalidInput(format!("dimension {m} too large")));
    }
    Ok(1u64 << e)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RestrictionCase {
    /// m > 2s + 2: only the LCM₂ support condition applies.
    Unrestricted,
    MEq2s,
    MEq2sPlus1,
    MEq2sPlus2,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealizabilityWitness {
    pub s: usize,
    pub d_set: BTreeSet<u64>,
    pub restriction_case: RestrictionCase,
    /// Whether the support already lies in plain LCM(d_set).
    pub used_plain_lcm: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealizabilityVerdict {
    pub realizable: bool,
    pub witness: Option<RealizabilityWitness>,
    pub failure_reason: Option<String>,
}

/// Candidate d values: divisors of lcm(support) that are >= 3. A d not
/// dividing any support element never helps coverage.
pub fn candidate_d_values(support: &[u64]) -> Vec<u64> {
    let l = support.iter().fold(1u64, |acc, &k| arith::lcm(acc, k));
    arith::divisors(l).into_iter().filter(|&d| d >= 3).collect()
}

fn combinations(items: &[u64], k: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let n = items.len();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        // next combination in lexicographic order
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// All (s, d_set) with |d_set| = s <= ⌊m/2⌋ and each d >= 3 dividing
/// lcm(support), in deterministic order: increasing s, then lexicographic.
pub fn enumerate_candidate_d_sets(support: &[u64], m: u32) -> Vec<(usize, BTreeSet<u64>)> {
    let cands = candidate_d_values(support);
    let smax = (m / 2) as usize;
    let mut out = Vec::new();
    for s in 0..=smax.min(cands.len()) {
        for c in combinations(&cands, s) {
            out.push((s, c.into_iter().collect()));
        }
    }
    out
}

/// Prime powers in the support that any covering d_set must contain:
/// q^a >= 3 can only arise as the lcm of a subset containing q^a itself.
fn required_d_values(support: &[u64]) -> BTreeSet<u64> {
    support
        .iter()
        .copied()
        .filter(|&k| k >= 3 && arith::is_prime_power(k))
        .collect()
}

struct CandidateCheck {
    covered: bool,
    plain_lcm: bool,
    case: RestrictionCase,
    restriction_ok: bool,
}

fn check_candidate(
    support: &[u64],
    alpha1: &BigInt,
    alpha2: &BigInt,
    m: u32,
    s: usize,
    d_set: &BTreeSet<u64>,
) -> CandidateCheck {
    let lcm2 = lcm_closure(d_set, true);
    let covered = lcm2.contains_all(support);
    let plain = lcm_closure(d_set, false);
    let plain_lcm = plain.contains_all(support);
    let two_s = 2 * s as u32;
    let (case, restriction_ok) = if m > two_s + 2 {
        (RestrictionCase::Unrestricted, true)
    } else if m == two_s {
        (RestrictionCase::MEq2s, alpha1.is_one() && plain_lcm)
    } else if m == two_s + 1 {
        let clause_a = alpha1.abs() <= BigInt::one() && plain_lcm;
        let clause_b = alpha1.is_one() && (alpha2.is_zero() || alpha2.is_one());
        (RestrictionCase::MEq2sPlus1, clause_a || clause_b)
    } else {
        (
            RestrictionCase::MEq2sPlus2,
            alpha1.abs() <= BigInt::one() || plain_lcm,
        )
    };
    CandidateCheck {
        covered,
        plain_lcm,
        case,
        restriction_ok,
    }
}

/// First-witness decision for smooth realizability of a coefficient
/// sequence in dimension m. The search runs over candidate d-sets in
/// the order of `enumerate_candidate_d_sets`; subsets missing a required
/// prime-power support element can never cover and are skipped.
pub fn decide_sequence_realizable(
    coeffs: &DivisorSequence,
    m: u32,
) -> Result<RealizabilityVerdict> {
    if m < 3 {
        return Err(Error::InvalidInput(format!(
            "dimension must be at least 3, got {m}"
        )));
    }
    let support = coeffs.support();
    let alpha1 = coeffs.get(1).unwrap_or_else(|_| BigInt::zero());
    let alpha2 = if coeffs.horizon().is_multiple_of(2) {
        coeffs.get(2).unwrap()
    } else {
        BigInt::zero()
    };

    let cands = candidate_d_values(&support);
    let required = required_d_values(&support);
    let smax = ((m / 2) as usize).min(cands.len());
    let extras: Vec<u64> = cands
        .iter()
        .copied()
        .filter(|d| !required.contains(d))
        .collect();

    if required.len() <= smax {
        for s in required.len()..=smax {
            let mut sets: Vec<Vec<u64>> = combinations(&extras, s - required.len())
                .into_iter()
                .map(|mut extra| {
                    extra.extend(required.iter().copied());
                    extra.sort_unstable();
                    extra
                })
                .collect();
            sets.sort();
            for set in sets {
                let d_set: BTreeSet<u64> = set.into_iter().collect();
                let chk = check_candidate(&support, &alpha1, &alpha2, m, s, &d_set);
                if chk.covered && chk.restriction_ok {
                    return Ok(RealizabilityVerdict {
                        realizable: true,
                        witness: Some(RealizabilityWitness {
                            s,
                            d_set,
                            restriction_case: chk.case,
                            used_plain_lcm: chk.plain_lcm,
                        }),
                        failure_reason: None,
                    });
                }
            }
        }
    }

    let reason = if alpha1.abs() >= BigInt::from(2) {
        format!(
            "|α₁| = {} ≥ 2 requires m ≥ 2s+3 or (m = 2s+2 with plain-LCM support) \
             for some admissible d-set; none exists at m = {m}",
            alpha1.abs()
        )
    } else if alpha1.is_zero() && !support.is_empty() {
        format!(
            "α₁ = 0 requires m ≥ 2s+2 or (m ≥ 2s+1 with plain-LCM support) \
             for some admissible d-set; none exists at m = {m}"
        )
    } else {
        format!("no admissible (s, d-set) with 2s ≤ {m} covers the support {support:?}")
    };
    Ok(RealizabilityVerdict {
        realizable: false,
        witness: None,
        failure_reason: Some(reason),
    })
}
