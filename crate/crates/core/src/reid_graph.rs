//! The Reidemeister orbit graph for f_# = identity over the levels k|n:
//! Jiang indices, essential/irreducible classification, graph Dold
//! coefficients, attached expressions, smooth-realization verification,
//! NF_n, and the structural validators.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::{self, divisors, is_prime_power, prime_divisors};
use crate::dold::{DivisorSequence, SequenceKind};
use crate::error::{Error, Result};
use crate::exact_linalg::{
    classify_spectrum, lefschetz_sequence, minimal_period_lcm, IntMatrix, SpectrumClassification,
};
use crate::fund_group::{FiniteAbelianGroup, GroupElement, DEFAULT_ENUM_CAP};
use crate::smooth_real::{decide_sequence_realizable, RealizabilityVerdict};

/// A self-map model: the matrix of the induced homomorphism on
/// indecomposable rational cohomology, the fundamental group (on which
/// the map acts as the identity), and the manifold dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Model {
    pub matrix: IntMatrix,
    pub group: FiniteAbelianGroup,
    pub dimension: u32,
    pub label: Option<String>,
}

impl Model {
    pub fn new(
        matrix: IntMatrix,
        group: FiniteAbelianGroup,
        dimension: u32,
        label: Option<String>,
    ) -> Result<Self> {
        if dimension < 3 {
            return Err(Error::InvalidInput(format!(
                "dimension must be at least 3, got {dimension}"
            )));
        }
        Ok(Model {
            matrix,
            group,
            dimension,
            label,
        })
    }
}

/// One Reidemeister class (= orbit, since f_# = id) at a level k | n.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex {
    pub level: u64,
    pub cls: GroupElement,
}

/// The built graph. Immutable after construction; all queries are pure.
#[derive(Debug, Clone)]
pub struct ReidemeisterGraph {
    model: Model,
    horizon: u64,
    levels: Vec<u64>,
    elements: Vec<GroupElement>,
    lefschetz: DivisorSequence,
    /// Per-level Jiang index L(f^k) / |G|.
    level_index: BTreeMap<u64, BigInt>,
    spectrum: SpectrumClassification,
}

/// Per-vertex flags and the set of irreducible essential orbits.
#[derive(Debug, Clone)]
pub struct GraphClassification {
    pub essential_levels: BTreeSet<u64>,
    pub irreducible: BTreeSet<Vertex>,
    pub ieor: BTreeSet<Vertex>,
}

/// Expression Σ_l a(l)·reg_l attached at a vertex in IEOR.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Attachment {
    pub base: Vertex,
    /// l ↦ a(l); support restricted to l·level(base) | d.
    pub coefficients: BTreeMap<u64, BigInt>,
}

impl Attachment {
    /// The coefficient data as a divisor-indexed sequence, for the
    /// realizability decider. The horizon covers all keys and 2.
    pub fn coefficient_sequence(&self) -> DivisorSequence {
        let h = self
            .coefficients
            .keys()
            .fold(2u64, |acc, &l| arith::lcm(acc, l));
        DivisorSequence::from_sparse(h, SequenceKind::Coefficients, &self.coefficients)
            .expect("keys divide their lcm")
    }
}

/// Outcome of checking a certificate against the graph.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub ok: bool,
    /// Nonzero residuals ind(B) − Σ_A C_A(B).
    pub residuals: BTreeMap<Vertex, BigInt>,
    pub attachment_verdicts: Vec<(Vertex, RealizabilityVerdict)>,
}

/// Pass/fail record of the structural validators.
#[derive(Debug, Clone)]
pub struct ValidatorReport {
    /// Every prime of |G| appears as some d_i = q^β (vacuous when
    /// L(f) = 0 or the spectrum has a large eigenvalue).
    pub v1_prime_periods: Option<bool>,
    /// i_{k, gcd(k,d)} bijective whenever L(f^k) ≠ 0.
    pub v2_reduction_bijective: bool,
    /// Essential irreducible vertices sit at levels dividing d.
    pub v3_ieor_levels_divide_d: bool,
    /// L(f^k) = L(f^{gcd(k,d)}) for all k | n (vacuous when the
    /// spectrum has a large eigenvalue).
    pub v4_lefschetz_gcd: Option<bool>,
    pub messages: Vec<String>,
}

impl ValidatorReport {
    pub fn all_pass(&self) -> bool {
        self.v1_prime_periods.unwrap_or(true)
            && self.v2_reduction_bijective
            && self.v3_ieor_levels_divide_d
            && self.v4_lefschetz_gcd.unwrap_or(true)
    }
}

pub fn build_graph(model: &Model, n: u64) -> Result<ReidemeisterGraph> {
    build_graph_capped(model, n, DEFAULT_ENUM_CAP)
}

pub fn build_graph_capped(model: &Model, n: u64, cap: u64) -> Result<ReidemeisterGraph> {
    if n < 1 {
        return Err(Error::InvalidInput("horizon must be positive".into()));
    }
    let elements = model.group.elements_capped(cap)?;
    let lefschetz = lefschetz_sequence(&model.matrix, n);
    let order = BigInt::from(model.group.order());
    let mut level_index = BTreeMap::new();
    for (&k, l) in lefschetz.values() {
        let (q, r) = num_integer::Integer::div_rem(l, &order);
        if !r.is_zero() {
            return Err(Error::ModelInconsistency(format!(
                "Jiang divisibility fails: |G| = {} does not divide L(f^{k}) = {l}",
                model.group.order()
            )));
        }
        level_index.insert(k, q);
    }
    let spectrum = classify_spectrum(&model.matrix);
    Ok(ReidemeisterGraph {
        model: model.clone(),
        horizon: n,
        levels: divisors(n),
        elements,
        lefschetz,
        level_index,
        spectrum,
    })
}

impl ReidemeisterGraph {
    pub fn model(&self) -> &Model {
        &self.model
    }

    pub fn horizon(&self) -> u64 {
        self.horizon
    }

    pub fn levels(&self) -> &[u64] {
        &self.levels
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn lefschetz(&self) -> &DivisorSequence {
        &self.lefschetz
    }

    pub fn spectrum(&self) -> &SpectrumClassification {
        &self.spectrum
    }

    /// lcm of the minimal periods of roots of unity in the spectrum.
    pub fn period_lcm(&self) -> u64 {
        minimal_period_lcm(&self.spectrum)
    }

    /// All vertices, level ascending then lexicographic class.
    pub fn vertices(&self) -> Vec<Vertex> {
        let mut out = Vec::with_capacity(self.levels.len() * self.elements.len());
        for &k in &self.levels {
            for x in &self.elements {
                out.push(Vertex {
                    level: k,
                    cls: x.clone(),
                });
            }
        }
        out
    }

    pub fn contains(&self, v: &Vertex) -> bool {
        self.horizon.is_multiple_of(v.level)
    }

    /// Jiang index of a vertex: L(f^k)/|G|, the same for every class at
    /// its level.
    pub fn index(&self, v: &Vertex) -> BigInt {
        self.level_index[&v.level].clone()
    }

    pub fn level_essential(&self, k: u64) -> bool {
        !self.level_index[&k].is_zero()
    }

    /// The boosting map i_{kl} applied to a vertex at level l, for l | k:
    /// multiplication by k/l on the class.
    pub fn boost(&self, v: &Vertex, k: u64) -> Vertex {
        debug_assert!(k.is_multiple_of(v.level));
        Vertex {
            level: k,
            cls: self.model.group.multiply_by(k / v.level, &v.cls),
        }
    }

    /// B precedes A (B ⪯ A): level(B) | level(A) and i maps B to A.
    /// Includes A = A.
    pub fn precedes(&self, b: &Vertex, a: &Vertex) -> bool {
        a.level.is_multiple_of(b.level) && self.boost(b, a.level) == *a
    }

    /// All vertices preceding `a` (including `a` itself).
    pub fn predecessors(&self, a: &Vertex) -> Vec<Vertex> {
        let mut out = Vec::new();
        for l in divisors(a.level) {
            for x in &self.elements {
                if self.model.group.multiply_by(a.level / l, x) == a.cls {
                    out.push(Vertex {
                        level: l,
                        cls: x.clone(),
                    });
                }
            }
        }
        out
    }

    /// Essential/irreducible flags and IEOR. With the Jiang property all
    /// classes at a level share the index, so essentiality is per level;
    /// a vertex is irreducible iff its class avoids pG for every prime
    /// p of its level.
    pub fn classify(&self) -> GraphClassification {
        let essential_levels: BTreeSet<u64> = self
            .levels
            .iter()
            .copied()
            .filter(|&k| self.level_essential(k))
            .collect();
        let mut irreducible = BTreeSet::new();
        for &k in &self.levels {
            let mut reducible: BTreeSet<GroupElement> = BTreeSet::new();
            for p in prime_divisors(k) {
                for x in &self.elements {
                    reducible.insert(self.model.group.multiply_by(p, x));
                }
            }
            for x in &self.elements {
                if !reducible.contains(x) {
                    irreducible.insert(Vertex {
                        level: k,
                        cls: x.clone(),
                    });
                }
            }
        }
        let ieor = irreducible
            .iter()
            .filter(|v| essential_levels.contains(&v.level))
            .cloned()
            .collect();
        GraphClassification {
            essential_levels,
            irreducible,
            ieor,
        }
    }

    /// Every predecessor of an essential vertex is essential. Indices
    /// are level-wide and (l, 0) always precedes (k, 0), so this reduces
    /// to: l | k and L(f^k) ≠ 0 imply L(f^l) ≠ 0.
    pub fn check_essential_reducibility(&self) -> bool {
        for &k in &self.levels {
            if !self.level_essential(k) {
                continue;
            }
            for l in divisors(k) {
                if !self.level_essential(l) {
                    return false;
                }
            }
        }
        true
    }

    /// Unique a_B with ind(f^b;B) = Σ_{C ⪯ B} c·a_C, by induction on the
    /// level. Non-integral quotients violate the graph Dold congruences.
    pub fn graph_dold_coefficients(&self) -> Result<BTreeMap<Vertex, BigInt>> {
        let mut coeffs: BTreeMap<Vertex, BigInt> = BTreeMap::new();
        for &b in &self.levels {
            // group elements y at level c mapping onto x under mult by b/c
            let ind_b = &self.level_index[&b];
            for x in &self.elements {
                let v = Vertex {
                    level: b,
                    cls: x.clone(),
                };
                let mut acc = ind_b.clone();
                for c in divisors(b) {
                    if c == b {
                        continue;
                    }
                    for y in &self.elements {
                        if self.model.group.multiply_by(b / c, y) == *x {
                            let pred = Vertex {
                                level: c,
                                cls: y.clone(),
                            };
                            acc -= BigInt::from(c) * &coeffs[&pred];
                        }
                    }
                }
                let (q, r) = num_integer::Integer::div_rem(&acc, &BigInt::from(b));
                if !r.is_zero() {
                    return Err(Error::ModelInconsistency(format!(
                        "graph Dold congruence fails at level {b}: residual {acc} not divisible by {b}"
                    )));
                }
                coeffs.insert(v, q);
            }
        }
        Ok(coeffs)
    }

    /// Reg_A^r(B) = k·r if i_{rk,k}(A) ⪯ B, else 0 (also 0 when r·k is
    /// outside the graph).
    pub fn reg_value(&self, a: &Vertex, r: u64, b: &Vertex) -> u64 {
        let rk = match a.level.checked_mul(r) {
            Some(rk) => rk,
            None => return 0,
        };
        if !self.horizon.is_multiple_of(rk) {
            return 0;
        }
        let boosted = self.boost(a, rk);
        if self.precedes(&boosted, b) {
            a.level * r
        } else {
            0
        }
    }

    /// Attached expressions certifying Σ_A C_A = ind. Requires essential
    /// reducibility. Coefficients at levels not dividing d are dropped.
    pub fn attach_expressions(&self) -> Result<Vec<Attachment>> {
        if !self.check_essential_reducibility() {
            return Err(Error::ModelInconsistency(
                "essential reducibility fails; attachments are not defined".into(),
            ));
        }
        let coeffs = self.graph_dold_coefficients()?;
        let classification = self.classify();
        let d = self.period_lcm();

        // Vert': vertices with an essential predecessor (incl. themselves).
        let mut vert_prime: Vec<Vertex> = Vec::new();
        let mut chosen: HashMap<Vertex, Vertex> = HashMap::new();
        for v in self.vertices() {
            let preds = self.predecessors(&v);
            if !preds.iter().any(|p| self.level_essential(p.level)) {
                continue;
            }
            // A_B: minimal (level, class) IEOR predecessor
            let a_b = preds
                .iter()
                .filter(|p| classification.ieor.contains(*p))
                .min()
                .cloned()
                .ok_or_else(|| {
                    Error::ModelInconsistency(format!(
                        "essential reducibility violation: vertex at level {} with class {:?} \
                         reduces to an essential class but to no irreducible essential one",
                        v.level,
                        v.cls.residues()
                    ))
                })?;
            chosen.insert(v.clone(), a_b);
            vert_prime.push(v);
        }

        let mut out = Vec::new();
        for a in &classification.ieor {
            let base_level = a.level;
            let mut coefficients = BTreeMap::new();
            let mut l = 1u64;
            while l * base_level <= self.horizon {
                let e = l * base_level;
                if self.horizon.is_multiple_of(e) && d.is_multiple_of(e) {
                    let b = self.boost(a, e);
                    if chosen.get(&b) == Some(a) {
                        let c = coeffs[&b].clone();
                        if !c.is_zero() {
                            coefficients.insert(l, c);
                        }
                    }
                }
                l += 1;
            }
            out.push(Attachment {
                base: a.clone(),
                coefficients,
            });
        }
        Ok(out)
    }

    /// Σ_A Σ_l a_A(l) · Reg_A^l(B)
    pub fn evaluate_attachments(&self, attachments: &[Attachment], b: &Vertex) -> BigInt {
        let mut acc = BigInt::zero();
        for att in attachments {
            for (&l, c) in &att.coefficients {
                let r = self.reg_value(&att.base, l, b);
                if r != 0 {
                    acc += c * BigInt::from(r);
                }
            }
        }
        acc
    }

    /// Certificate check: the attachments reproduce the index at every
    /// vertex, and every attached coefficient sequence is smoothly
    /// realizable in the model dimension.
    pub fn verify_smooth_realization(
        &self,
        attachments: &[Attachment],
    ) -> Result<VerificationReport> {
        let mut residuals = BTreeMap::new();
        for v in self.vertices() {
            let got = self.evaluate_attachments(attachments, &v);
            let want = self.index(&v);
            if got != want {
                residuals.insert(v, want - got);
            }
        }
        let mut attachment_verdicts = Vec::new();
        let mut all_realizable = true;
        for att in attachments {
            let verdict =
                decide_sequence_realizable(&att.coefficient_sequence(), self.model.dimension)?;
            all_realizable &= verdict.realizable;
            attachment_verdicts.push((att.base.clone(), verdict));
        }
        Ok(VerificationReport {
            ok: residuals.is_empty() && all_realizable,
            residuals,
            attachment_verdicts,
        })
    }

    /// NF_n = Σ_{k|n} k · #IEOR at level k: the least number of
    /// n-periodic points in the continuous homotopy class.
    pub fn nf_number(&self) -> Result<u64> {
        if !self.check_essential_reducibility() {
            return Err(Error::ModelInconsistency(
                "essential reducibility fails; NF is not given by IEOR counting".into(),
            ));
        }
        let classification = self.classify();
        let mut nf = 0u64;
        for v in &classification.ieor {
            nf += v.level;
        }
        Ok(nf)
    }

    /// Structural validators from the theory of all-moduli-≤-1 models.
    pub fn run_validators(&self) -> ValidatorReport {
        let d = self.period_lcm();
        let mut messages = Vec::new();
        let l1_nonzero = self.level_essential(1);

        let v1 = validate_prime_periods(&self.model);
        if v1 == Some(false) {
            messages.push(
                "V1: some prime of |G| has no minimal period d_i equal to a power of it".into(),
            );
        }
        debug_assert_eq!(v1.is_some(), l1_nonzero && self.spectrum.all_moduli_le_one);

        let mut v2 = true;
        for &k in &self.levels {
            if self.level_essential(k) {
                let kbar = arith::gcd(k, d);
                if !self.model.group.is_multiplication_bijective(k / kbar) {
                    v2 = false;
                    messages.push(format!(
                        "V2: i_{{{k},{kbar}}} is not bijective although L(f^{k}) ≠ 0"
                    ));
                }
            }
        }

        let classification = self.classify();
        let mut v3 = true;
        for v in &classification.ieor {
            if !d.is_multiple_of(v.level) {
                v3 = false;
                messages.push(format!(
                    "V3: essential irreducible vertex at level {} which does not divide d = {d}",
                    v.level
                ));
            }
        }

        let v4 = if self.spectrum.all_moduli_le_one {
            let mut ok = true;
            for &k in &self.levels {
                let kbar = arith::gcd(k, d);
                if self.lefschetz.get(k).unwrap() != self.lefschetz.get(kbar).unwrap() {
                    ok = false;
                    messages.push(format!("V4: L(f^{k}) ≠ L(f^{kbar})"));
                }
            }
            Some(ok)
        } else {
            None
        };

        ValidatorReport {
            v1_prime_periods: v1,
            v2_reduction_bijective: v2,
            v3_ieor_levels_divide_d: v3,
            v4_lefschetz_gcd: v4,
            messages,
        }
    }
}

/// V1 alone, at the model level: every prime q of |G| must appear among
/// the minimal periods as some d_i = q^β. Checkable without building a
/// graph, since a synthetic (matrix, group) pair that flunks it may
/// already fail Jiang divisibility. None when vacuous (L(f) = 0 or some
/// eigenvalue modulus exceeds 1).
pub fn validate_prime_periods(model: &Model) -> Option<bool> {
    let spectrum = classify_spectrum(&model.matrix);
    let l1_nonzero = !crate::exact_linalg::lefschetz_number(&model.matrix, 1).is_zero();
    if !(l1_nonzero && spectrum.all_moduli_le_one) {
        return None;
    }
    let periods: Vec<u64> = spectrum.unity_periods.keys().copied().collect();
    let ok = model.group.prime_support().iter().all(|&q| {
        periods
            .iter()
            .any(|&di| is_prime_power(di) && prime_divisors(di) == vec![q])
    });
    Some(ok)
}
