//! The main decision: does the least number of n-periodic points admit a
//! smooth realization (NF_n = NJD_n)? Produces machine-checkable
//! certificates for both outcomes, plus the PSU(2)^s fixture generator.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith;
use crate::error::{Error, Result};
use crate::exact_linalg::{classify_spectrum, lefschetz_number, minimal_period_lcm, IntMatrix};
use crate::fund_group::FiniteAbelianGroup;
use crate::reid_graph::{build_graph, Attachment, Model, ValidatorReport, VerificationReport};
use crate::smooth_real::max_distinct_values;

pub const DEFAULT_MAX_EXPONENT: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerdictStatus {
    /// L(f) = 0: every L(f^k) vanishes, NF_n = 0 for all n.
    TriviallyEqual,
    /// All eigenvalue moduli ≤ 1: equality with a verified certificate.
    Equal,
    /// Some eigenvalue modulus > 1: strict inequality for some horizon.
    Unequal,
}

/// Certificate for the equal branch: attachments realizing the index
/// function on the graph at the given horizon, plus the verification.
#[derive(Debug, Clone)]
pub struct EqualityCertificate {
    pub horizon: u64,
    pub attachments: Vec<Attachment>,
    pub verification: VerificationReport,
}

/// Certificate for the unequal branch: exponents whose index values beat
/// the distinct-values bound for smooth expressions.
#[derive(Debug, Clone)]
pub struct InequalityCertificate {
    pub exponents: Vec<u64>,
    pub values: Vec<BigInt>,
    pub distinct_count: usize,
    pub bound: u64,
    /// n* = lcm of the exponents; the graph at this horizon is not
    /// smoothly realizable.
    pub witness_horizon: BigInt,
    /// False when the scan hit the cap before beating the bound; the
    /// verdict still follows from the spectrum.
    pub complete: bool,
    pub max_exponent: u64,
}

#[derive(Debug, Clone)]
pub struct EqualityVerdict {
    pub status: VerdictStatus,
    pub equality_certificate: Option<EqualityCertificate>,
    pub inequality_certificate: Option<InequalityCertificate>,
    pub diagnostics: Option<ValidatorReport>,
}

fn witness_scan(model: &Model, max_exponent: u64) -> Result<InequalityCertificate> {
    let spectrum = classify_spectrum(&model.matrix);
    let group_order = model.group.order();
    let d_product: u64 = spectrum.unity_periods.keys().product::<u64>().max(1);
    let coprime_to = group_order
        .checked_mul(d_product)
        .ok_or_else(|| Error::InvalidInput("coprimality modulus overflow".into()))?;
    let bound = max_distinct_values(model.dimension)?;
    let order = BigInt::from(group_order);

    let mut exponents = Vec::new();
    let mut values = Vec::new();
    let mut distinct: BTreeSet<BigInt> = BTreeSet::new();
    let mut complete = false;
    for r in 1..=max_exponent {
        if arith::gcd(r, coprime_to) != 1 {
            continue;
        }
        let l = lefschetz_number(&model.matrix, r);
        if l.is_zero() {
            continue;
        }
        let (ind, rem) = num_integer::Integer::div_rem(&l, &order);
        if !rem.is_zero() {
            return Err(Error::ModelInconsistency(format!(
                "Jiang divisibility fails: |G| = {group_order} does not divide L(f^{r}) = {l}"
            )));
        }
        exponents.push(r);
        distinct.insert(ind.clone());
        values.push(ind);
        if distinct.len() as u64 > bound {
            complete = true;
            break;
        }
    }
    let witness_horizon = exponents.iter().fold(BigInt::from(1), |acc, &r| {
        num_integer::lcm(acc, BigInt::from(r))
    });
    Ok(InequalityCertificate {
        exponents,
        values,
        distinct_count: distinct.len(),
        bound,
        witness_horizon,
        complete,
        max_exponent,
    })
}

/// Scan exponents coprime to |G| and to every minimal period d_i until
/// the collected index values exceed the distinct-values bound. Errors
/// when the cap is reached first.
pub fn witness_search(model: &Model, max_exponent: u64) -> Result<InequalityCertificate> {
    let cert = witness_scan(model, max_exponent)?;
    if !cert.complete {
        return Err(Error::SearchCapExceeded { max_exponent });
    }
    Ok(cert)
}

/// The main theorem as a decision procedure.
pub fn decide_equality(
    model: &Model,
    n: Option<u64>,
    max_exponent: u64,
) -> Result<EqualityVerdict> {
    let l1 = lefschetz_number(&model.matrix, 1);
    if l1.is_zero() {
        let horizon = n.unwrap_or(1);
        let graph = build_graph(model, horizon)?;
        return Ok(EqualityVerdict {
            status: VerdictStatus::TriviallyEqual,
            equality_certificate: None,
            inequality_certificate: None,
            diagnostics: Some(graph.run_validators()),
        });
    }
    let spectrum = classify_spectrum(&model.matrix);
    if spectrum.all_moduli_le_one {
        let d = minimal_period_lcm(&spectrum);
        let horizon = n.unwrap_or(d);
        let graph = build_graph(model, horizon)?;
        let attachments = graph.attach_expressions()?;
        let verification = graph.verify_smooth_realization(&attachments)?;
        let diagnostics = graph.run_validators();
        Ok(EqualityVerdict {
            status: VerdictStatus::Equal,
            equality_certificate: Some(EqualityCertificate {
                horizon,
                attachments,
                verification,
            }),
            inequality_certificate: None,
            diagnostics: Some(diagnostics),
        })
    } else {
        let cert = witness_scan(model, max_exponent)?;
        Ok(EqualityVerdict {
            status: VerdictStatus::Unequal,
            equality_certificate: None,
            inequality_certificate: Some(cert),
            diagnostics: None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NjdValue {
    Exact(u64),
    /// NJD_n ≥ NF_n here, and strictly greater for the witness horizon.
    LowerBound {
        at_least: u64,
        witness_horizon: BigInt,
    },
}

#[derive(Debug, Clone)]
pub struct NfNjdSummary {
    pub horizon: u64,
    pub nf: u64,
    pub njd: NjdValue,
    pub status: VerdictStatus,
}

pub fn nf_njd_summary(model: &Model, n: u64, max_exponent: u64) -> Result<NfNjdSummary> {
    let verdict = decide_equality(model, Some(n), max_exponent)?;
    let graph = build_graph(model, n)?;
    let nf = graph.nf_number()?;
    let njd = match verdict.status {
        VerdictStatus::TriviallyEqual | VerdictStatus::Equal => NjdValue::Exact(nf),
        VerdictStatus::Unequal => NjdValue::LowerBound {
            at_least: nf,
            witness_horizon: verdict
                .inequality_certificate
                .as_ref()
                .map(|c| c.witness_horizon.clone())
                .unwrap_or_else(BigInt::zero),
        },
    };
    Ok(NfNjdSummary {
        horizon: n,
        nf,
        njd,
        status: verdict.status,
    })
}

/// Model of a self-map of PSU(2)^s: the degree matrix must be congruent
/// to the identity mod 2 so that the induced map on π₁ = ℤ₂^s is the
/// identity. Dimension is 3s.
pub fn psu2_fixture(alpha: &IntMatrix) -> Result<Model> {
    let s = alpha.size();
    if s == 0 {
        return Err(Error::InvalidInput("PSU(2)^s fixture needs s >= 1".into()));
    }
    for i in 0..s {
        for j in 0..s {
            let e = alpha.get(i, j);
            let want_odd = i == j;
            let is_odd = !(e % BigInt::from(2)).is_zero();
            if is_odd != want_odd {
                return Err(Error::InvalidInput(format!(
                    "fixture parity violation at entry ({i},{j}) = {e}: \
                     diagonal entries must be odd, off-diagonal even"
                )));
            }
        }
    }
    Model::new(
        alpha.clone(),
        FiniteAbelianGroup::new(vec![2; s])?,
        3 * s as u32,
        Some(format!("PSU(2)^{s}")),
    )
}
