use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::matrix::IntegerMatrix;
use crate::error::{Error, Result};

/// Coefficient field for rank computations.
pub trait Field {
    type Elem: Clone + PartialEq;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn zero(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse of a nonzero element.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self { p })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field for PrimeField {
    type Elem = u64;

    fn from_i64(&self, v: i64) -> u64 {
        (v as i128).rem_euclid(self.p as i128) as u64
    }

    fn zero(&self) -> u64 {
        0
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + self.p as u128 - *b as u128) % self.p as u128) as u64
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }

    fn inv(&self, a: &u64) -> u64 {
        // Fermat: a^(p-2)
        let mut base = *a;
        let mut e = self.p - 2;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn inv(&self, a: &BigRational) -> BigRational {
        BigRational::one() / a
    }
}

/// Coefficient choice used by the CLI and the spectral sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coefficients {
    Integers,
    Rationals,
    Prime(u64),
}

impl Coefficients {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "z" | "Z" => Ok(Self::Integers),
            "q" | "Q" => Ok(Self::Rationals),
            _ => {
                let digits = s.trim_start_matches(['f', 'F']);
                let p: u64 = digits
                    .parse()
                    .map_err(|_| Error::Parse { pos: 0, msg: format!("unknown coefficient ring `{s}`") })?;
                PrimeField::new(p)?;
                Ok(Self::Prime(p))
            }
        }
    }
}

impl std::fmt::Display for Coefficients {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Integers => write!(f, "Z"),
            Self::Rationals => write!(f, "Q"),
            Self::Prime(p) => write!(f, "F{p}"),
        }
    }
}

/// Rank of an integer matrix after reduction into `field`.
pub fn rank_over_field<F: Field>(field: &F, m: &IntegerMatrix) -> usize {
    let mut rows: Vec<Vec<F::Elem>> = m
        .to_dense()
        .into_iter()
        .map(|row| row.into_iter().map(|v| field.from_i64(v)).collect())
        .collect();
    row_reduce(field, &mut rows)
}

/// In-place Gaussian elimination; returns the rank.
pub fn row_reduce<F: Field>(field: &F, rows: &mut [Vec<F::Elem>]) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| !field.is_zero(&rows[r][c])) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = field.inv(&rows[rank][c]);
        for r in 0..rows.len() {
            if r == rank || field.is_zero(&rows[r][c]) {
                continue;
            }
            let factor = field.mul(&rows[r][c], &inv);
            for k in c..ncols {
                let t = field.mul(&factor, &rows[rank][k]);
                rows[r][k] = field.sub(&rows[r][k], &t);
            }
        }
        rank += 1;
    }
    rank
}

/// Rank for a runtime coefficient choice. Over `Z` this is the rational rank.
pub fn rank_with(coeff: Coefficients, m: &IntegerMatrix) -> usize {
    match coeff {
        Coefficients::Integers | Coefficients::Rationals => rank_over_field(&Rationals, m),
        Coefficients::Prime(p) => rank_over_field(&PrimeField { p }, m),
    }
}
