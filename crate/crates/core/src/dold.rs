//! Finite integer sequences indexed by the divisors of a horizon n:
//! the reg_k basis, Möbius-inversion expansion, evaluation, and Dold
//! congruence checking.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::arith::{divisors, moebius};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SequenceKind {
    /// A_k values (e.g. indices or Lefschetz numbers).
    Values,
    /// a_k coefficients of Σ a_k · reg_k.
    Coefficients,
}

/// Integer-valued function on the divisors of a fixed horizon.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorSequence {
    horizon: u64,
    kind: SequenceKind,
    values: BTreeMap<u64, BigInt>,
}

impl DivisorSequence {
    pub fn new(horizon: u64, kind: SequenceKind, values: BTreeMap<u64, BigInt>) -> Result<Self> {
        let expected = divisors(horizon);
        let keys: Vec<u64> = values.keys().copied().collect();
        if keys != expected {
            return Err(Error::InvalidInput(format!(
                "sequence keys {keys:?} are not the divisors of {horizon}"
            )));
        }
        Ok(DivisorSequence {
            horizon,
            kind,
            values,
        })
    }

    /// Build from a function on the divisors.
    pub fn from_fn<F: FnMut(u64) -> BigInt>(horizon: u64, kind: SequenceKind, mut f: F) -> Self {
        let values = divisors(horizon).into_iter().map(|k| (k, f(k))).collect();
        DivisorSequence {
            horizon,
            kind,
            values,
        }
    }

    /// Build a sequence from a sparse map, filling missing divisors with 0.
    pub fn from_sparse(
        horizon: u64,
        kind: SequenceKind,
        sparse: &BTreeMap<u64, BigInt>,
    ) -> Result<Self> {
        for k in sparse.keys() {
            if !horizon.is_multiple_of(*k) {
                return Err(Error::InvalidInput(format!(
                    "key {k} does not divide horizon {horizon}"
                )));
            }
        }
        Ok(Self::from_fn(horizon, kind, |k| {
            sparse.get(&k).cloned().unwrap_or_else(BigInt::zero)
        }))
    }

    pub fn horizon(&self) -> u64 {
        self.horizon
    }

    pub fn kind(&self) -> SequenceKind {
        self.kind
    }

    pub fn get(&self, k: u64) -> Result<BigInt> {
        self.values.get(&k).cloned().ok_or_else(|| {
            Error::InvalidInput(format!("{k} does not divide horizon {}", self.horizon))
        })
    }

    pub fn values(&self) -> &BTreeMap<u64, BigInt> {
        &self.values
    }

    /// Keys with nonzero value.
    pub fn support(&self) -> Vec<u64> {
        self.values
            .iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(&k, _)| k)
            .collect()
    }
}

/// reg_k(n) = k if k | n, else 0.
pub fn reg(k: u64, n: u64) -> u64 {
    assert!(k >= 1 && n >= 1);
    if n.is_multiple_of(k) {
        k
    } else {
        0
    }
}

/// Periodic expansion of a values sequence. Coefficients are exact
/// rationals (denominator dividing k); non-integral entries signal a
/// Dold congruence failure rather than aborting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expansion {
    pub horizon: u64,
    pub coeffs: BTreeMap<u64, BigRational>,
}

impl Expansion {
    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(|c| c.is_integer())
    }

    pub fn non_integral_keys(&self) -> Vec<u64> {
        self.coeffs
            .iter()
            .filter(|(_, c)| !c.is_integer())
            .map(|(&k, _)| k)
            .collect()
    }

    /// Integer coefficient sequence, when all coefficients are integral.
    pub fn integral(&self) -> Option<DivisorSequence> {
        if !self.is_integral() {
            return None;
        }
        let values = self
            .coeffs
            .iter()
            .map(|(&k, c)| (k, c.to_integer()))
            .collect();
        Some(
            DivisorSequence::new(self.horizon, SequenceKind::Coefficients, values)
                .expect("expansion keys are the divisors of the horizon"),
        )
    }
}

/// a_k = (1/k) Σ_{l|k} μ(k/l) A_l for every k dividing the horizon.
pub fn expand(seq: &DivisorSequence) -> Expansion {
    assert_eq!(
        seq.kind(),
        SequenceKind::Values,
        "expand needs a values sequence"
    );
    let mut coeffs = BTreeMap::new();
    for k in divisors(seq.horizon) {
        let mut acc = BigInt::zero();
        for l in divisors(k) {
            let mu = moebius(k / l);
            if mu != 0 {
                acc += BigInt::from(mu) * seq.get(l).unwrap();
            }
        }
        coeffs.insert(k, BigRational::new(acc, BigInt::from(k)));
    }
    Expansion {
        horizon: seq.horizon,
        coeffs,
    }
}

/// A_k = Σ_{l | horizon} a_l · reg_l(k), for k dividing the horizon.
pub fn evaluate(coeffs: &DivisorSequence, k: u64) -> Result<BigInt> {
    assert_eq!(
        coeffs.kind(),
        SequenceKind::Coefficients,
        "evaluate needs a coefficients sequence"
    );
    if k == 0 || !coeffs.horizon.is_multiple_of(k) {
        return Err(Error::InvalidInput(format!(
            "{k} does not divide horizon {}",
            coeffs.horizon
        )));
    }
    let mut acc = BigInt::zero();
    for (&l, a) in coeffs.values() {
        let r = reg(l, k);
        if r != 0 {
            acc += a * BigInt::from(r);
        }
    }
    Ok(acc)
}

/// Σ_{k|n'} μ(n'/k) A_k ≡ 0 (mod n') for every n' dividing the horizon.
pub fn check_dold(seq: &DivisorSequence) -> bool {
    assert_eq!(
        seq.kind(),
        SequenceKind::Values,
        "check_dold needs a values sequence"
    );
    for np in divisors(seq.horizon) {
        let mut acc = BigInt::zero();
        for k in divisors(np) {
            let mu = moebius(np / k);
            if mu != 0 {
                acc += BigInt::from(mu) * seq.get(k).unwrap();
            }
        }
        if !(acc % BigInt::from(np)).is_zero() {
            return false;
        }
    }
    true
}

/// JSON form: {"horizon": n, "kind": "...", "values": {"k": "int"}}
/// with integers as strings to keep arbitrary precision.
pub fn sequence_to_json(seq: &DivisorSequence) -> serde_json::Value {
    let values: serde_json::Map<String, serde_json::Value> = seq
        .values()
        .iter()
        .map(|(k, v)| (k.to_string(), serde_json::Value::String(v.to_string())))
        .collect();
    serde_json::json!({
        "horizon": seq.horizon(),
        "kind": match seq.kind() {
            SequenceKind::Values => "values",
            SequenceKind::Coefficients => "coefficients",
        },
        "values": values,
    })
}

pub fn sequence_from_json(v: &serde_json::Value) -> Result<DivisorSequence> {
    let bad = |m: &str| Error::InvalidInput(format!("sequence JSON: {m}"));
    let obj = v.as_object().ok_or_else(|| bad("expected an object"))?;
    let horizon = obj
        .get("horizon")
        .and_then(|h| h.as_u64())
        .ok_or_else(|| bad("missing or invalid 'horizon'"))?;
    let kind = match obj.get("kind").and_then(|k| k.as_str()) {
        Some("values") => SequenceKind::Values,
        Some("coefficients") => SequenceKind::Coefficients,
        _ => return Err(bad("'kind' must be \"values\" or \"coefficients\"")),
    };
    let raw = obj
        .get("values")
        .and_then(|m| m.as_object())
        .ok_or_else(|| bad("missing or invalid 'values'"))?;
    let mut values = BTreeMap::new();
    for (k, v) in raw {
        let key: u64 = k
            .parse()
            .map_err(|_| bad(&format!("key '{k}' is not a positive integer")))?;
        let int = match v {
            serde_json::Value::String(s) => s
                .parse::<BigInt>()
                .map_err(|_| bad(&format!("values.{k}: '{s}' is not an integer")))?,
            serde_json::Value::Number(n) => {
                let i = n
                    .as_i64()
                    .ok_or_else(|| bad(&format!("values.{k}: not an integer")))?;
                BigInt::from(i)
            }
            _ => return Err(bad(&format!("values.{k}: expected integer or string"))),
        };
        values.insert(key, int);
    }
    DivisorSequence::new(horizon, kind, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn seq(horizon: u64, kind: SequenceKind, pairs: &[(u64, i64)]) -> DivisorSequence {
        let values = pairs.iter().map(|&(k, v)| (k, BigInt::from(v))).collect();
        DivisorSequence::new(horizon, kind, values).unwrap()
    }

    #[test]
    fn reg_examples() {
        assert_eq!(reg(3, 6), 3);
        assert_eq!(reg(3, 4), 0);
        for n in 1..=20 {
            assert_eq!(reg(1, n), 1);
        }
    }

    #[test]
    fn expand_examples() {
        // hand Möbius inversion oracle: {1:2, 2:4, 4:0} -> {1:2, 2:1, 4:-1}
        let s = seq(4, SequenceKind::Values, &[(1, 2), (2, 4), (4, 0)]);
        let e = expand(&s);
        let c = e.integral().unwrap();
        assert_eq!(c.get(1).unwrap(), BigInt::from(2));
        assert_eq!(c.get(2).unwrap(), BigInt::from(1));
        assert_eq!(c.get(4).unwrap(), BigInt::from(-1));

        // constant 1 sequence is reg_1
        let s = DivisorSequence::from_fn(12, SequenceKind::Values, |_| BigInt::one());
        let c = expand(&s).integral().unwrap();
        for (k, v) in c.values() {
            assert_eq!(
                *v,
                if *k == 1 {
                    BigInt::one()
                } else {
                    BigInt::zero()
                }
            );
        }

        // {1:1, 2:2} -> a_2 = 1/2, flagged
        let s = seq(2, SequenceKind::Values, &[(1, 1), (2, 2)]);
        let e = expand(&s);
        assert!(!e.is_integral());
        assert_eq!(e.non_integral_keys(), vec![2]);
        assert_eq!(
            e.coeffs[&2],
            BigRational::new(BigInt::from(1), BigInt::from(2))
        );
        assert!(e.integral().is_none());
    }

    #[test]
    fn evaluate_examples() {
        let c = seq(4, SequenceKind::Coefficients, &[(1, 2), (2, 1), (4, -1)]);
        assert_eq!(evaluate(&c, 4).unwrap(), BigInt::from(0));
        assert_eq!(evaluate(&c, 2).unwrap(), BigInt::from(4));
        assert_eq!(evaluate(&c, 1).unwrap(), BigInt::from(2));
        assert!(evaluate(&c, 3).is_err());

        let c = seq(
            6,
            SequenceKind::Coefficients,
            &[(1, 7), (2, 0), (3, 0), (6, 0)],
        );
        for k in [1, 2, 3, 6] {
            assert_eq!(evaluate(&c, k).unwrap(), BigInt::from(7));
        }
    }

    #[test]
    fn check_dold_examples() {
        let a = crate::exact_linalg::IntMatrix::from_rows(&[vec![2, 1], vec![-1, 3]]).unwrap();
        let l = crate::exact_linalg::lefschetz_sequence(&a, 12);
        assert!(check_dold(&l));

        let bad = seq(2, SequenceKind::Values, &[(1, 1), (2, 2)]);
        assert!(!check_dold(&bad));

        let zero = DivisorSequence::from_fn(24, SequenceKind::Values, |_| BigInt::zero());
        assert!(check_dold(&zero));
    }

    #[test]
    fn json_round_trip() {
        let s = seq(
            12,
            SequenceKind::Values,
            &[(1, 2), (2, -4), (3, 0), (4, 8), (6, 1), (12, -1)],
        );
        let j = sequence_to_json(&s);
        let back = sequence_from_json(&j).unwrap();
        assert_eq!(s, back);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        /// Dold-valid sequences: built from random integer coefficients.
        fn dold_valid(horizon: u64) -> impl Strategy<Value = DivisorSequence> {
            let ds = divisors(horizon);
            proptest::collection::vec(-5i64..=5, ds.len()).prop_map(move |cs| {
                let coeffs = DivisorSequence::new(
                    horizon,
                    SequenceKind::Coefficients,
                    ds.iter()
                        .zip(&cs)
                        .map(|(&k, &c)| (k, BigInt::from(c)))
                        .collect(),
                )
                .unwrap();
                DivisorSequence::from_fn(horizon, SequenceKind::Values, |k| {
                    evaluate(&coeffs, k).unwrap()
                })
            })
        }

        proptest! {
            #[test]
            fn round_trip(s in dold_valid(24)) {
                let c = expand(&s).integral().expect("built from integral coefficients");
                for k in divisors(24) {
                    prop_assert_eq!(evaluate(&c, k).unwrap(), s.get(k).unwrap());
                }
            }

            #[test]
            fn dold_iff_integral(vals in proptest::collection::vec(-20i64..=20, 6)) {
                let ds = divisors(12);
                let s = DivisorSequence::new(
                    12,
                    SequenceKind::Values,
                    ds.iter().zip(&vals).map(|(&k, &v)| (k, BigInt::from(v))).collect(),
                ).unwrap();
                prop_assert_eq!(check_dold(&s), expand(&s).is_integral());
            }

            #[test]
            fn expand_is_linear(s in dold_valid(24), t in dold_valid(24)) {
                let sum = DivisorSequence::from_fn(24, SequenceKind::Values, |k| {
                    s.get(k).unwrap() + t.get(k).unwrap()
                });
                let es = expand(&s);
                let et = expand(&t);
                let esum = expand(&sum);
                for k in divisors(24) {
                    prop_assert_eq!(&esum.coeffs[&k], &(&es.coeffs[&k] + &et.coeffs[&k]));
                }
            }
        }
    }
}
