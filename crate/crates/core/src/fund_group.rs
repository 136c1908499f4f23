//! Finite abelian groups as sums of prime-power cyclic factors, their
//! multiplication-by-h endomorphisms and irreducible-class counting.

use crate::arith::{self, prime_divisors};
use crate::error::{Error, Result};

/// Default cap on full element enumeration.
pub const DEFAULT_ENUM_CAP: u64 = 1 << 16;

/// Direct sum of cyclic groups of prime-power order. The empty factor
/// list is the trivial group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAbelianGroup {
    factors: Vec<u64>,
    order: u64,
}

/// Residue tuple, one entry per factor, componentwise reduced.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement {
    residues: Vec<u64>,
}

impl GroupElement {
    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    pub fn is_zero(&self) -> bool {
        self.residues.iter().all(|&r| r == 0)
    }
}

impl FiniteAbelianGroup {
    pub fn new(factors: Vec<u64>) -> Result<Self> {
        let mut order: u64 = 1;
        for &f in &factors {
            if !arith::is_prime_power(f) {
                return Err(Error::InvalidInput(format!(
                    "group factor {f} is not a prime power > 1"
                )));
            }
            order = order
                .checked_mul(f)
                .ok_or_else(|| Error::InvalidInput("group order overflows u64".to_string()))?;
        }
        Ok(FiniteAbelianGroup { factors, order })
    }

    pub fn trivial() -> Self {
        FiniteAbelianGroup {
            factors: Vec::new(),
            order: 1,
        }
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    /// Primes dividing the order, ascending.
    pub fn prime_support(&self) -> Vec<u64> {
        prime_divisors(self.order)
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            residues: vec![0; self.factors.len()],
        }
    }

    pub fn element(&self, residues: Vec<u64>) -> Result<GroupElement> {
        if residues.len() != self.factors.len() {
            return Err(Error::InvalidInput(format!(
                "element has {} residues, group has {} factors",
                residues.len(),
                self.factors.len()
            )));
        }
        for (r, f) in residues.iter().zip(&self.factors) {
            if r >= f {
                return Err(Error::InvalidInput(format!(
                    "residue {r} out of range for factor {f}"
                )));
            }
        }
        Ok(GroupElement { residues })
    }

    /// All elements in lexicographic residue order.
    pub fn elements_capped(&self, cap: u64) -> Result<Vec<GroupElement>> {
        if self.order > cap {
            return Err(Error::EnumerationCap {
                order: self.order,
                cap,
            });
        }
        let mut out = Vec::with_capacity(self.order as usize);
        let mut cur = vec![0u64; self.factors.len()];
        loop {
            out.push(GroupElement {
                residues: cur.clone(),
            });
            // increment, last coordinate fastest
            let mut i = self.factors.len();
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                cur[i] += 1;
                if cur[i] < self.factors[i] {
                    break;
                }
                cur[i] = 0;
            }
        }
    }

    pub fn elements(&self) -> Result<Vec<GroupElement>> {
        self.elements_capped(DEFAULT_ENUM_CAP)
    }

    /// Componentwise h·x mod the factor orders.
    pub fn multiply_by(&self, h: u64, x: &GroupElement) -> GroupElement {
        let residues = x
            .residues
            .iter()
            .zip(&self.factors)
            .map(|(&r, &f)| (h % f) * r % f)
            .collect();
        GroupElement { residues }
    }

    pub fn add(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        let residues = x
            .residues
            .iter()
            .zip(&y.residues)
            .zip(&self.factors)
            .map(|((&a, &b), &f)| (a + b) % f)
            .collect();
        GroupElement { residues }
    }

    /// Multiplication by h is a bijection iff gcd(h, |G|) = 1.
    pub fn is_multiplication_bijective(&self, h: u64) -> bool {
        assert!(h >= 1);
        arith::gcd(h, self.order) == 1
    }

    /// #(G \ ∪_{p prime, p|k} pG), by inclusion–exclusion over the
    /// subsets S of primes dividing k, with
    /// |∩_{p∈S} pG| = ∏_factors f / gcd(∏_{p∈S} p, f).
    pub fn irreducible_class_count(&self, k: u64) -> u64 {
        assert!(k >= 1);
        if k == 1 {
            return self.order;
        }
        let primes = prime_divisors(k);
        let mut count: i128 = 0;
        for mask in 0..(1u32 << primes.len()) {
            let rad: u64 = primes
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &p)| p)
                .product();
            let size: u64 = self
                .factors
                .iter()
                .map(|&f| f / arith::gcd(rad, f))
                .product();
            if mask.count_ones() % 2 == 0 {
                count += size as i128;
            } else {
                count -= size as i128;
            }
        }
        debug_assert!(count >= 0);
        count as u64
    }
}
