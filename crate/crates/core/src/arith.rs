//! Number-theoretic primitives: divisors, Möbius, Euler totient,
//! LCM-closure sets and cyclotomic polynomials over the integers.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// All divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n >= 1, "divisors: n must be positive");
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Prime factorization of `n` as (prime, exponent) pairs, ascending.
pub fn factorize(n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1, "factorize: n must be positive");
    let mut n = n;
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// The set of primes dividing `n` (empty for n = 1).
pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// Möbius function.
pub fn moebius(n: u64) -> i64 {
    assert!(n >= 1, "moebius: n must be positive");
    let mut mu = 1i64;
    for (_, e) in factorize(n) {
        if e > 1 {
            return 0;
        }
        mu = -mu;
    }
    mu
}

/// Euler totient.
pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1, "euler_phi: n must be positive");
    let mut phi = n;
    for (p, _) in factorize(n) {
        phi = phi / p * (p - 1);
    }
    phi
}

pub fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    num_integer::lcm(a, b)
}

/// `true` iff `n` is a prime power p^a with a >= 1.
pub fn is_prime_power(n: u64) -> bool {
    n > 1 && factorize(n).len() == 1
}

/// The set { lcm(B) : B ⊆ base' } where base' is `base`, optionally with 2
/// adjoined. Always contains 1 (the empty subset).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LcmClosure {
    pub base: BTreeSet<u64>,
    pub augmented: bool,
    pub members: BTreeSet<u64>,
}

impl LcmClosure {
    pub fn contains(&self, k: u64) -> bool {
        self.members.contains(&k)
    }

    pub fn contains_all<'a, I: IntoIterator<Item = &'a u64>>(&self, ks: I) -> bool {
        ks.into_iter().all(|k| self.contains(*k))
    }
}

pub fn lcm_closure(base: &BTreeSet<u64>, augment_with_two: bool) -> LcmClosure {
    let mut effective: BTreeSet<u64> = base.clone();
    if augment_with_two {
        effective.insert(2);
    }
    let mut members: BTreeSet<u64> = BTreeSet::new();
    members.insert(1);
    for &b in &effective {
        let step: Vec<u64> = members.iter().map(|&m| lcm(m, b)).collect();
        members.extend(step);
    }
    LcmClosure {
        base: base.clone(),
        augmented: augment_with_two,
        members,
    }
}

/// Integer polynomial, coefficients in ascending degree order with a
/// nonzero leading coefficient (the zero polynomial has no coefficients).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPolynomial {
            coeffs: vec![BigInt::one()],
        }
    }

    /// x^j
    pub fn x_power(j: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); j + 1];
        coeffs[j] = BigInt::one();
        IntPolynomial { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; the zero polynomial is given degree 0 by convention here,
    /// use `is_zero` to distinguish.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect();
        Self::from_coeffs(coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::from_coeffs(coeffs)
    }

    /// Exact division; `None` when `other` does not divide `self` over ℤ.
    pub fn exact_div(&self, other: &Self) -> Option<Self> {
        assert!(!other.is_zero(), "exact_div by zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.coeffs.len() < other.coeffs.len() {
            return None;
        }
        let lead = other.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let qlen = rem.len() - other.coeffs.len() + 1;
        let mut quot = vec![BigInt::zero(); qlen];
        for qi in (0..qlen).rev() {
            let top = rem[qi + other.coeffs.len() - 1].clone();
            if top.is_zero() {
                continue;
            }
            let (q, r) = num_integer::Integer::div_rem(&top, &lead);
            if !r.is_zero() {
                return None;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let delta = &q * b;
                rem[qi + j] -= delta;
            }
            quot[qi] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_coeffs(quot))
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
}

/// The d-th cyclotomic polynomial, computed by exact division of x^d - 1
/// by the cyclotomic polynomials of the proper divisors of d.
pub fn cyclotomic(d: u64) -> IntPolynomial {
    assert!(d >= 1, "cyclotomic: d must be positive");
    let mut num = IntPolynomial::x_power(d as usize);
    num = num.add(&IntPolynomial::from_i64(&[-1]));
    for dd in divisors(d) {
        if dd == d {
            continue;
        }
        num = num
            .exact_div(&cyclotomic(dd))
            .expect("x^d - 1 is divisible by every Φ_{d'} with d' | d");
    }
    num
}
