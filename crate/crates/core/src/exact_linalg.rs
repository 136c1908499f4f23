//! Exact integer matrix computations: characteristic polynomial, the
//! Lefschetz sequence L(f^k) = det(I - A^k), and classification of the
//! spectrum into roots of unity, a nilpotent part and the rest.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{self, cyclotomic, divisors, euler_phi, IntPolynomial};
use crate::dold::{DivisorSequence, SequenceKind};
use crate::error::{Error, Result};

/// Square matrix of arbitrary-precision integers, row-major.
/// Size 0 is allowed and gives L ≡ 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    size: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(size: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != size * size {
            return Err(Error::InvalidInput(format!(
                "matrix of size {size} needs {} entries, got {}",
                size * size,
                entries.len()
            )));
        }
        Ok(IntMatrix { size, entries })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let size = rows.len();
        let mut entries = Vec::with_capacity(size * size);
        for row in rows {
            if row.len() != size {
                return Err(Error::InvalidInput(format!(
                    "matrix is not square: {size} rows but a row of length {}",
                    row.len()
                )));
            }
            entries.extend(row.iter().map(|&e| BigInt::from(e)));
        }
        Ok(IntMatrix { size, entries })
    }

    pub fn identity(size: usize) -> Self {
        let mut entries = vec![BigInt::zero(); size * size];
        for i in 0..size {
            entries[i * size + i] = BigInt::one();
        }
        IntMatrix { size, entries }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.size + j]
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.size)
            .map(|i| (0..self.size).map(|j| self.get(i, j).clone()).collect())
            .collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.size, other.size);
        let n = self.size;
        let mut entries = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    entries[i * n + j] += a * other.get(k, j);
                }
            }
        }
        IntMatrix { size: n, entries }
    }

    /// A^k by repeated exact multiplication.
    pub fn pow(&self, k: u64) -> IntMatrix {
        let mut acc = IntMatrix::identity(self.size);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn sub_from_identity(&self) -> IntMatrix {
        let n = self.size;
        let mut out = IntMatrix::identity(n);
        for i in 0..n * n {
            out.entries[i] -= &self.entries[i];
        }
        out
    }

    /// Exact determinant via fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        let n = self.size;
        if n == 0 {
            return BigInt::one();
        }
        let mut m: Vec<Vec<BigInt>> = self.rows();
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                // pivot search
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = num / &prev; // exact by Bareiss
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        let det = m[n - 1][n - 1].clone();
        if sign < 0 {
            -det
        } else {
            det
        }
    }

    pub fn trace(&self) -> BigInt {
        (0..self.size).map(|i| self.get(i, i).clone()).sum()
    }
}

/// Monic characteristic polynomial det(xI - A), by Faddeev–LeVerrier
/// with exact integer division.
pub fn char_poly(a: &IntMatrix) -> IntPolynomial {
    let n = a.size();
    if n == 0 {
        return IntPolynomial::one();
    }
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut m = IntMatrix::identity(n);
    for k in 1..=n {
        if k > 1 {
            // M_k = A * (M_{k-1} + c_{n-k+1} I)
            let mut shifted = m.clone();
            for i in 0..n {
                shifted.entries[i * n + i] += &coeffs[n - k + 1];
            }
            m = a.mul(&shifted);
        } else {
            m = a.clone();
        }
        let t = m.trace();
        let (c, r) = num_integer::Integer::div_rem(&(-t), &BigInt::from(k));
        debug_assert!(r.is_zero(), "Faddeev–LeVerrier division is exact");
        coeffs[n - k] = c;
    }
    IntPolynomial::from_coeffs(coeffs)
}

/// k ↦ det(I - A^k) for every k | n, exact.
pub fn lefschetz_sequence(a: &IntMatrix, n: u64) -> DivisorSequence {
    let values: BTreeMap<u64, BigInt> = divisors(n)
        .into_iter()
        .map(|k| (k, lefschetz_number(a, k)))
        .collect();
    DivisorSequence::new(n, SequenceKind::Values, values).expect("keys are the divisors of n")
}

/// det(I - A^k)
pub fn lefschetz_number(a: &IntMatrix, k: u64) -> BigInt {
    a.pow(k).sub_from_identity().det()
}

/// char_poly(A) = x^j · ∏ Φ_d^{mult(d)} · remainder, exactly.
/// `all_moduli_le_one` iff the remainder is the constant 1 (Kronecker:
/// a monic integer polynomial has all roots in the closed unit disk iff
/// it is such a product with remainder 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumClassification {
    /// d ↦ multiplicity of Φ_d in the characteristic polynomial.
    pub unity_periods: BTreeMap<u64, u32>,
    /// Multiplicity of the factor x.
    pub nilpotent_multiplicity: u32,
    /// Cofactor after removing x^j and all cyclotomic factors.
    pub remainder: IntPolynomial,
    pub all_moduli_le_one: bool,
    pub has_eigenvalue_one: bool,
}

impl SpectrumClassification {
    /// Re-multiplied factorization, for cross-checking.
    pub fn reassemble(&self) -> IntPolynomial {
        let mut p = IntPolynomial::x_power(self.nilpotent_multiplicity as usize);
        for (&d, &mult) in &self.unity_periods {
            let phi = cyclotomic(d);
            for _ in 0..mult {
                p = p.mul(&phi);
            }
        }
        p.mul(&self.remainder)
    }
}

pub fn classify_spectrum(a: &IntMatrix) -> SpectrumClassification {
    let mut p = char_poly(a);
    let mut nilpotent = 0u32;
    let x = IntPolynomial::x_power(1);
    while !p.is_zero() && p.coeff(0).is_zero() && p.degree() >= 1 {
        p = p.exact_div(&x).unwrap();
        nilpotent += 1;
    }
    let mut unity_periods = BTreeMap::new();
    let deg0 = p.degree() as u64;
    // phi(d) >= sqrt(d/2), so phi(d) <= deg forces d <= 2 deg^2.
    for d in 1..=(2 * deg0 * deg0).max(1) {
        if euler_phi(d) > p.degree() as u64 {
            continue;
        }
        let phi_d = cyclotomic(d);
        while let Some(q) = p.exact_div(&phi_d) {
            p = q;
            *unity_periods.entry(d).or_insert(0u32) += 1;
        }
        if p.degree() == 0 {
            break;
        }
    }
    let all_moduli_le_one = p.is_one();
    let has_eigenvalue_one = unity_periods.contains_key(&1);
    SpectrumClassification {
        unity_periods,
        nilpotent_multiplicity: nilpotent,
        remainder: p,
        all_moduli_le_one,
        has_eigenvalue_one,
    }
}

/// lcm of the minimal periods of roots of unity in the spectrum; 1 when
/// there are none.
pub fn minimal_period_lcm(c: &SpectrumClassification) -> u64 {
    c.unity_periods.keys().fold(1, |acc, &d| arith::lcm(acc, d))
}

/// Companion matrix of a monic polynomial.
pub fn companion(p: &IntPolynomial) -> IntMatrix {
    assert!(p.is_monic(), "companion matrix needs a monic polynomial");
    let n = p.degree();
    let mut entries = vec![BigInt::zero(); n * n];
    for i in 1..n {
        entries[i * n + (i - 1)] = BigInt::one();
    }
    for i in 0..n {
        entries[i * n + (n - 1)] = -p.coeff(i);
    }
    IntMatrix { size: n, entries }
}

/// Block-diagonal sum of square matrices.
pub fn block_diag(blocks: &[IntMatrix]) -> IntMatrix {
    let n: usize = blocks.iter().map(|b| b.size()).sum();
    let mut entries = vec![BigInt::zero(); n * n];
    let mut off = 0;
    for b in blocks {
        let s = b.size();
        for i in 0..s {
            for j in 0..s {
                entries[(off + i) * n + (off + j)] = b.get(i, j).clone();
            }
        }
        off += s;
    }
    IntMatrix { size: n, entries }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    /// Cofactor-expansion determinant oracle.
    fn det_oracle(rows: &[Vec<BigInt>]) -> BigInt {
        let n = rows.len();
        if n == 0 {
            return BigInt::one();
        }
        if n == 1 {
            return rows[0][0].clone();
        }
        let mut det = BigInt::zero();
        for j in 0..n {
            let minor: Vec<Vec<BigInt>> = rows[1..]
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|(c, _)| *c != j)
                        .map(|(_, v)| v.clone())
                        .collect()
                })
                .collect();
            let term = &rows[0][j] * det_oracle(&minor);
            if j % 2 == 0 {
                det += term;
            } else {
                det -= term;
            }
        }
        det
    }

    #[test]
    fn det_matches_cofactor_oracle() {
        let cases = [
            vec![vec![0, -1], vec![1, 0]],
            vec![vec![3]],
            vec![vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 10]],
            vec![vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]],
            vec![
                vec![2, -1, 0, 3],
                vec![0, 0, 0, 0],
                vec![1, 1, 1, 1],
                vec![-2, 3, -4, 5],
            ],
        ];
        for rows in &cases {
            let a = m(rows);
            assert_eq!(a.det(), det_oracle(&a.rows()), "{rows:?}");
        }
        assert_eq!(IntMatrix::new(0, vec![]).unwrap().det(), BigInt::one());
    }

    #[test]
    fn char_poly_examples() {
        let rot = m(&[vec![0, -1], vec![1, 0]]);
        assert_eq!(char_poly(&rot), IntPolynomial::from_i64(&[1, 0, 1]));
        assert_eq!(
            char_poly(&IntMatrix::identity(2)),
            IntPolynomial::from_i64(&[1, -2, 1])
        );
        assert_eq!(char_poly(&m(&[vec![3]])), IntPolynomial::from_i64(&[-3, 1]));
        assert_eq!(
            char_poly(&IntMatrix::new(0, vec![]).unwrap()),
            IntPolynomial::one()
        );
    }

    #[test]
    fn char_poly_matches_det_of_xi_minus_a() {
        // det(kI - A) must equal char_poly evaluated at k.
        let a = m(&[vec![1, -2, 0], vec![3, 0, 1], vec![-1, 2, 2]]);
        let p = char_poly(&a);
        for k in -4i64..=4 {
            let mut ki = IntMatrix::identity(3);
            for i in 0..3 {
                let v = BigInt::from(k) - a.get(i, i);
                ki.entries[i * 3 + i] = v;
                for j in 0..3 {
                    if i != j {
                        ki.entries[i * 3 + j] = -a.get(i, j);
                    }
                }
            }
            assert_eq!(ki.det(), p.eval(&BigInt::from(k)));
        }
    }

    #[test]
    fn lefschetz_examples() {
        let rot = m(&[vec![0, -1], vec![1, 0]]);
        let seq = lefschetz_sequence(&rot, 4);
        assert_eq!(seq.get(1).unwrap(), BigInt::from(2));
        assert_eq!(seq.get(2).unwrap(), BigInt::from(4));
        assert_eq!(seq.get(4).unwrap(), BigInt::from(0));

        let id = IntMatrix::identity(3);
        let seq = lefschetz_sequence(&id, 6);
        for k in [1u64, 2, 3, 6] {
            assert_eq!(seq.get(k).unwrap(), BigInt::zero());
        }

        let three = m(&[vec![3]]);
        let seq = lefschetz_sequence(&three, 3);
        assert_eq!(seq.get(1).unwrap(), BigInt::from(-2));
        assert_eq!(seq.get(3).unwrap(), BigInt::from(-26));
    }

    #[test]
    fn classify_examples() {
        let rot = m(&[vec![0, -1], vec![1, 0]]);
        let c = classify_spectrum(&rot);
        assert_eq!(c.unity_periods, BTreeMap::from([(4, 1)]));
        assert_eq!(c.nilpotent_multiplicity, 0);
        assert!(c.remainder.is_one());
        assert!(c.all_moduli_le_one);
        assert!(!c.has_eigenvalue_one);

        let three = m(&[vec![3]]);
        let c = classify_spectrum(&three);
        assert!(c.unity_periods.is_empty());
        assert_eq!(c.remainder, IntPolynomial::from_i64(&[-3, 1]));
        assert!(!c.all_moduli_le_one);

        let one = m(&[vec![1]]);
        let c = classify_spectrum(&one);
        assert_eq!(c.unity_periods, BTreeMap::from([(1, 1)]));
        assert!(c.has_eigenvalue_one);
    }

    #[test]
    fn classify_reassembles() {
        let cases = [
            m(&[vec![0, -1], vec![1, 0]]),
            m(&[vec![3]]),
            m(&[vec![0, 0], vec![1, 0]]),
            m(&[vec![2, 1, 0], vec![0, -1, 1], vec![1, 0, 0]]),
        ];
        for a in &cases {
            let c = classify_spectrum(a);
            assert_eq!(c.reassemble(), char_poly(a));
        }
    }

    #[test]
    fn kronecker_direction() {
        // products of cyclotomics are all-moduli <= 1
        let p = cyclotomic(3).mul(&cyclotomic(8)).mul(&cyclotomic(1));
        let c = classify_spectrum(&companion(&p));
        assert!(c.all_moduli_le_one);
        assert_eq!(c.unity_periods, BTreeMap::from([(1, 1), (3, 1), (8, 1)]));
        // golden-ratio polynomial has a root of modulus > 1
        let golden = IntPolynomial::from_i64(&[-1, -1, 1]);
        assert!(!classify_spectrum(&companion(&golden)).all_moduli_le_one);
    }

    #[test]
    fn minimal_period_lcm_examples() {
        let mk = |ds: &[u64]| SpectrumClassification {
            unity_periods: ds.iter().map(|&d| (d, 1)).collect(),
            nilpotent_multiplicity: 0,
            remainder: IntPolynomial::one(),
            all_moduli_le_one: true,
            has_eigenvalue_one: ds.contains(&1),
        };
        assert_eq!(minimal_period_lcm(&mk(&[4])), 4);
        assert_eq!(minimal_period_lcm(&mk(&[2, 3])), 6);
        assert_eq!(minimal_period_lcm(&mk(&[])), 1);
    }

    #[test]
    fn eigenvalue_one_kills_lefschetz() {
        let a = m(&[vec![1, 5], vec![0, -2]]);
        assert!(classify_spectrum(&a).has_eigenvalue_one);
        for k in 1..=12 {
            assert_eq!(lefschetz_number(&a, k), BigInt::zero());
        }
    }

    #[test]
    fn companion_has_right_char_poly() {
        for d in [1u64, 2, 5, 12, 30] {
            let p = cyclotomic(d);
            assert_eq!(char_poly(&companion(&p)), p);
        }
    }
}
