//! Dense rational matrices and the 4-valent step matrices.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Mul;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exact::{binomial, int_pow, int_to_rat, rat};

/// Square matrix over the rationals, row-major, 0-based storage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    n: usize,
    data: Vec<BigRational>,
}

impl RatMatrix {
    pub fn zeros(n: usize) -> Self {
        RatMatrix {
            n,
            data: vec![BigRational::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = BigRational::one();
        }
        m
    }

    pub fn diagonal(entries: impl IntoIterator<Item = BigRational>) -> Self {
        let entries: Vec<_> = entries.into_iter().collect();
        let mut m = RatMatrix::zeros(entries.len());
        for (i, e) in entries.into_iter().enumerate() {
            m.data[i * m.n + i] = e;
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// Entry at 1-based `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> &BigRational {
        &self.data[(row - 1) * self.n + (col - 1)]
    }

    pub fn set(&mut self, row: usize, col: usize, value: BigRational) {
        self.data[(row - 1) * self.n + (col - 1)] = value;
    }

    pub fn is_diagonal(&self) -> bool {
        (1..=self.n).all(|r| (1..=self.n).all(|c| r == c || self.get(r, c).is_zero()))
    }

    pub fn is_upper_unipotent(&self) -> bool {
        (1..=self.n).all(|r| {
            (1..=self.n).all(|c| match r.cmp(&c) {
                core::cmp::Ordering::Equal => self.get(r, c).is_one(),
                core::cmp::Ordering::Greater => self.get(r, c).is_zero(),
                core::cmp::Ordering::Less => true,
            })
        })
    }

    pub fn apply(&self, x: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(x.len(), self.n, "dimension mismatch");
        (0..self.n)
            .map(|r| {
                self.data[r * self.n..(r + 1) * self.n]
                    .iter()
                    .zip(x)
                    .filter(|(a, _)| !a.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// `self·other − other·self`.
    pub fn commutator(&self, other: &RatMatrix) -> RatMatrix {
        let ab = self * other;
        let ba = other * self;
        RatMatrix {
            n: self.n,
            data: ab.data.iter().zip(&ba.data).map(|(x, y)| x - y).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }
}

impl Mul for &RatMatrix {
    type Output = RatMatrix;

    fn mul(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let n = self.n;
        let mut out = RatMatrix::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = &self.data[r * n + k];
                if a.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let b = &rhs.data[k * n + c];
                    if !b.is_zero() {
                        out.data[r * n + c] += a * b;
                    }
                }
            }
        }
        out
    }
}

/// The common eigenbasis `S` of the step matrices and its inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnipotentBasis {
    pub size: usize,
    pub s: RatMatrix,
    pub s_inv: RatMatrix,
}

/// `S[k−m, k] = (−1)^m 2^(−m) C(k−1, m)`, and `S⁻¹` has the absolute values.
pub fn basis(size: usize) -> UnipotentBasis {
    let mut s = RatMatrix::zeros(size);
    let mut s_inv = RatMatrix::zeros(size);
    for k in 1..=size {
        for m in 0..k {
            let mag = BigRational::new(binomial(k as i64 - 1, m as i64), int_pow(2, m as u64));
            let signed = if m % 2 == 0 { mag.clone() } else { -mag.clone() };
            s.set(k - m, k, signed);
            s_inv.set(k - m, k, mag);
        }
    }
    UnipotentBasis { size, s, s_inv }
}

/// Step matrix `A^(j)`: diagonal `2(2j+k)`, super-diagonal `−k`.
pub fn a_matrix(j: u32, size: usize) -> RatMatrix {
    let mut a = RatMatrix::diagonal(eigenvalues(j, size));
    for k in 1..size {
        a.set(k, k + 1, rat(-(k as i64)));
    }
    a
}

/// `D^(j) = diag(2(2j+k))`, the eigenvalues of `A^(j)`.
pub fn d_matrix(j: u32, size: usize) -> RatMatrix {
    RatMatrix::diagonal(eigenvalues(j, size))
}

fn eigenvalues(j: u32, size: usize) -> impl Iterator<Item = BigRational> {
    (1..=size as i64).map(move |k| int_to_rat((2 * (2 * i64::from(j) + k)).into()))
}
