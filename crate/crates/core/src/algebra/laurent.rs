use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Laurent polynomial with integer coefficients in one variable.
///
/// Exponents are stored as plain integers; the meaning of one unit (a power of
/// `A`, or a quarter power of `t`) is up to the caller and only matters when
/// printing, see [`LaurentPoly::display`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(coeff: i64, exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if coeff != 0 {
            terms.insert(exp, coeff);
        }
        Self { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, i64)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(c, e);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> i64 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    /// Nonzero terms as `(exponent, coefficient)` in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn add_term(&mut self, coeff: i64, exp: i64) {
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry(exp).or_insert(0);
        *entry = entry.checked_add(coeff).expect("Laurent coefficient overflow");
        if *entry == 0 {
            self.terms.remove(&exp);
        }
    }

    /// Multiply by `x^shift`.
    pub fn shift(&self, shift: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, &c)| (e + shift, c)).collect(),
        }
    }

    /// Substitute `x -> x^factor` (factor may be negative).
    pub fn scale_exponents(&self, factor: i64) -> Self {
        Self::from_terms(self.terms.iter().map(|(&e, &c)| (e * factor, c)))
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|(&e, &c)| (e, c.checked_mul(k).expect("Laurent coefficient overflow"))),
        )
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Sum of absolute values of the coefficients.
    pub fn l1_norm(&self) -> i64 {
        self.terms.values().map(|c| c.abs()).sum()
    }

    /// Exact evaluation at a nonzero rational point.
    pub fn eval(&self, x: &BigRational) -> BigRational {
        assert!(!x.is_zero(), "Laurent polynomial evaluated at 0");
        let mut acc = BigRational::zero();
        for (&e, &c) in &self.terms {
            let base = if e >= 0 { x.clone() } else { x.recip() };
            let mut p = BigRational::one();
            for _ in 0..e.unsigned_abs() {
                p *= &base;
            }
            acc += p * BigRational::from_integer(BigInt::from(c));
        }
        acc
    }

    /// True iff every exponent is divisible by `d`.
    pub fn exponents_divisible_by(&self, d: i64) -> bool {
        self.terms.keys().all(|e| e.is_multiple_of(&d))
    }

    /// Canonical ascending-exponent text form. One exponent unit is `1/denom`
    /// of a power of `var`.
    pub fn display<'a>(&'a self, var: &'a str, denom: i64) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, var, denom }
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a LaurentPoly,
    var: &'a str,
    denom: i64,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (k, (&e, &c)) in self.poly.terms.iter().enumerate() {
            let sign = if c < 0 { "-" } else if k > 0 { "+" } else { "" };
            write!(f, "{sign}")?;
            let mag = c.unsigned_abs();
            if e == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if mag != 1 {
                write!(f, "{mag}")?;
            }
            write!(f, "{}", self.var)?;
            let g = e.gcd(&self.denom);
            let (num, den) = (e / g, self.denom / g);
            match (num, den) {
                (1, 1) => {}
                (n, 1) => write!(f, "^{n}")?,
                (n, d) => write!(f, "^({n}/{d})")?,
            }
        }
        Ok(())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (&e, &c) in &rhs.terms {
            self.add_term(c, e);
        }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, &c) in &rhs.terms {
            out.add_term(-c, e);
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&e1, &c1) in &self.terms {
            for (&e2, &c2) in &rhs.terms {
                out.add_term(c1.checked_mul(c2).expect("Laurent coefficient overflow"), e1 + e2);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::zero(), |acc, p| acc + p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn display_is_ascending() {
        let p = LaurentPoly::from_terms([(4, -1), (0, 1), (-8, 1)]);
        assert_eq!(p.display("A", 1).to_string(), "A^-8+1-A^4");
        let q = LaurentPoly::from_terms([(-16, -1), (-12, 1), (-4, 1)]);
        assert_eq!(q.display("t", 4).to_string(), "-t^-4+t^-3+t^-1");
        let r = LaurentPoly::from_terms([(2, 3), (-6, -2)]);
        assert_eq!(r.display("t", 4).to_string(), "-2t^(-3/2)+3t^(1/2)");
        assert_eq!(LaurentPoly::zero().display("A", 1).to_string(), "0");
        assert_eq!(LaurentPoly::monomial(1, 1).display("A", 1).to_string(), "A");
    }

    #[test]
    fn no_zero_terms_stored() {
        let mut p = LaurentPoly::monomial(3, 2);
        p.add_term(-3, 2);
        assert!(p.is_zero());
        let d = LaurentPoly::from_terms([(2, -1), (-2, -1)]);
        let s = &d - &d;
        assert!(s.is_zero());
    }

    fn small_poly() -> impl Strategy<Value = LaurentPoly> {
        proptest::collection::vec((-6i64..6, -5i64..5), 0..5).prop_map(LaurentPoly::from_terms)
    }

    proptest! {
        #[test]
        fn multiplication_commutes_with_evaluation(f in small_poly(), g in small_poly(),
                                                   num in 1i64..7, den in 1i64..7, neg in any::<bool>()) {
            let x = BigRational::new(BigInt::from(if neg { -num } else { num }), BigInt::from(den));
            let fg = &f * &g;
            prop_assert_eq!(fg.eval(&x), f.eval(&x) * g.eval(&x));
            let s = &f + &g;
            prop_assert_eq!(s.eval(&x), f.eval(&x) + g.eval(&x));
        }
    }
}
