//! Univariate polynomials over ℚ, i.e. the ring B = k[t].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::ArithError;
use crate::rational::Rational;

/// A polynomial in `t`, stored sparsely as degree → nonzero coefficient.
///
/// The zero polynomial is the empty map and has degree `None`, which plays
/// the role of −∞ (so `None < Some(0)` under the derived ordering).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: BTreeMap<u32, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    /// The indeterminate `t`.
    pub fn t() -> Self {
        Poly::monomial(Rational::one(), 1)
    }

    pub fn constant(c: Rational) -> Self {
        Poly::monomial(c, 0)
    }

    pub fn monomial(c: Rational, degree: u32) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(degree, c);
        }
        Poly { coeffs }
    }

    /// Builds a polynomial from `(degree, coefficient)` pairs; repeated degrees are summed.
    pub fn from_terms(terms: impl IntoIterator<Item = (u32, Rational)>) -> Self {
        let mut coeffs: BTreeMap<u32, Rational> = BTreeMap::new();
        for (d, c) in terms {
            accumulate(&mut coeffs, d, c);
        }
        Poly { coeffs }
    }

    /// Integer coefficients in ascending degree order: `[-1, 0, 1]` is `t^2 - 1`.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(d, &c)| (d as u32, Rational::from(c))),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True for constants, including zero.
    pub fn is_constant(&self) -> bool {
        self.degree().unwrap_or(0) == 0
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.values().next_back()
    }

    pub fn coeff(&self, degree: u32) -> Rational {
        self.coeffs.get(&degree).cloned().unwrap_or_default()
    }

    /// Nonzero terms in ascending degree order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (u32, &Rational)> + '_ {
        self.coeffs.iter().map(|(&d, c)| (d, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// The constant value, when the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_constant() {
            Some(self.coeff(0))
        } else {
            None
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|(&d, a)| (d, a * c)).collect(),
        }
    }

    /// Multiplies by `t^shift`.
    pub fn shift(&self, shift: u32) -> Poly {
        Poly {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&d, c)| (d + shift, c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Poly::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Scales to leading coefficient 1; zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading_coeff().and_then(Rational::recip) {
            Some(inv) => self.scale(&inv),
            None => Poly::zero(),
        }
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly), ArithError> {
        let d_deg = divisor.degree().ok_or(ArithError::DivisionByZero)?;
        let d_lead_inv = divisor.leading_coeff().and_then(Rational::recip).unwrap();
        let mut quotient = BTreeMap::new();
        let mut rem = self.coeffs.clone();
        while let Some((&r_deg, r_lead)) = rem.iter().next_back() {
            if r_deg < d_deg {
                break;
            }
            let q = r_lead * &d_lead_inv;
            let shift = r_deg - d_deg;
            for (dd, dc) in divisor.terms() {
                accumulate(&mut rem, dd + shift, -(&q * dc));
            }
            // The leading term cancels exactly; make sure it is gone.
            debug_assert!(!rem.contains_key(&r_deg));
            quotient.insert(shift, q);
        }
        Ok((Poly { coeffs: quotient }, Poly { coeffs: rem }))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly, ArithError> {
        self.div_rem(divisor).map(|(_, r)| r)
    }

    /// True iff `divisor` divides `self` (`divisor` nonzero).
    pub fn is_divisible_by(&self, divisor: &Poly) -> Result<bool, ArithError> {
        Ok(self.rem(divisor)?.is_zero())
    }

    /// Monic greatest common divisor by the Euclidean algorithm.
    pub fn gcd(&self, other: &Poly) -> Result<Poly, ArithError> {
        if self.is_zero() && other.is_zero() {
            return Err(ArithError::GcdOfZeros);
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    pub fn derivative(&self) -> Poly {
        self.nth_derivative(1)
    }

    pub fn nth_derivative(&self, n: u32) -> Poly {
        if n == 0 {
            return self.clone();
        }
        let coeffs = self
            .coeffs
            .iter()
            .filter(|(&d, _)| d >= n)
            .map(|(&d, c)| {
                let falling = (0..n).fold(num_bigint::BigInt::from(1), |acc, s| acc * (d - s));
                (d - n, c * &Rational::from_integer(falling))
            })
            .collect();
        Poly { coeffs }
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Rational) -> Rational {
        let Some(top) = self.degree() else {
            return Rational::zero();
        };
        let mut acc = Rational::zero();
        for d in (0..=top).rev() {
            acc = &acc * x;
            if let Some(c) = self.coeffs.get(&d) {
                acc = &acc + c;
            }
        }
        acc
    }
}

pub(crate) fn accumulate<K: Ord>(map: &mut BTreeMap<K, Rational>, key: K, c: Rational) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match map.entry(key) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            let sum = o.get() + &c;
            if sum.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = sum;
            }
        }
    }
}

/// Writes `c1 m1 + c2 m2 - ...` with unit coefficients elided in front of a
/// nonempty monomial; an empty term list prints as `0`.
pub(crate) fn write_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (&'a Rational, String)>,
) -> fmt::Result {
    let mut first = true;
    for (c, mono) in terms {
        let mag = c.abs();
        if first {
            if c.is_negative() {
                f.write_str("-")?;
            }
        } else if c.is_negative() {
            f.write_str(" - ")?;
        } else {
            f.write_str(" + ")?;
        }
        match (mag.is_one(), mono.is_empty()) {
            (true, false) => f.write_str(&mono)?,
            (_, true) => write!(f, "{mag}")?,
            (false, false) => write!(f, "{mag} {mono}")?,
        }
        first = false;
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

pub(crate) fn power_str(sym: &str, e: u32) -> String {
    match e {
        0 => String::new(),
        1 => sym.to_string(),
        _ => format!("{sym}^{e}"),
    }
}

/// Descending degree, e.g. `2 t^3 - 2 t`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms().rev().map(|(d, c)| (c, power_str("t", d))))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &'a Poly) -> Poly {
        let mut coeffs = self.coeffs.clone();
        for (&d, c) in &rhs.coeffs {
            accumulate(&mut coeffs, d, c.clone());
        }
        Poly { coeffs }
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &'a Poly) -> Poly {
        let mut coeffs = self.coeffs.clone();
        for (&d, c) in &rhs.coeffs {
            accumulate(&mut coeffs, d, -c);
        }
        Poly { coeffs }
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &'a Poly) -> Poly {
        let mut coeffs = BTreeMap::new();
        for (&da, ca) in &self.coeffs {
            for (&db, cb) in &rhs.coeffs {
                accumulate(&mut coeffs, da + db, ca * cb);
            }
        }
        Poly { coeffs }
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|(&d, c)| (d, -c)).collect(),
        }
    }
}

macro_rules! owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f() -> Poly {
        Poly::from_ints(&[-1, 0, 1])
    }

    fn r(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn add_examples() {
        assert_eq!(&f() + &Poly::one(), Poly::from_ints(&[0, 0, 1]));
        assert_eq!(&f() + &Poly::zero(), f());
        assert_eq!(&f() + &f(), Poly::from_ints(&[-2, 0, 2]));
    }

    #[test]
    fn mul_examples() {
        let tm1 = Poly::from_ints(&[-1, 1]);
        let tp1 = Poly::from_ints(&[1, 1]);
        assert_eq!(&tm1 * &tp1, f());
        assert_eq!(&f() * &Poly::one(), f());
        assert_eq!(&f() * &f(), Poly::from_ints(&[1, 0, -2, 0, 1]));
        assert_eq!(f().pow(2), Poly::from_ints(&[1, 0, -2, 0, 1]));
    }

    #[test]
    fn divrem_examples() {
        let (q, rem) = Poly::from_ints(&[4, 0, 1]).div_rem(&f()).unwrap();
        assert_eq!((q, rem), (Poly::one(), Poly::constant(r(5))));
        let (q, rem) = f().div_rem(&f()).unwrap();
        assert_eq!((q, rem), (Poly::one(), Poly::zero()));
        let (q, rem) = Poly::from_ints(&[0, -2, 0, 2]).div_rem(&f()).unwrap();
        assert_eq!((q, rem), (Poly::from_ints(&[0, 2]), Poly::zero()));
    }

    #[test]
    fn divrem_by_zero_errors() {
        assert_eq!(f().div_rem(&Poly::zero()), Err(ArithError::DivisionByZero));
    }

    #[test]
    fn divrem_with_fractional_quotient() {
        // (t^2 + 1) / (2t) = t/2, remainder 1
        let (q, rem) = Poly::from_ints(&[1, 0, 1])
            .div_rem(&Poly::from_ints(&[0, 2]))
            .unwrap();
        assert_eq!(q, Poly::monomial(Rational::new(1, 2).unwrap(), 1));
        assert_eq!(rem, Poly::one());
    }

    #[test]
    fn gcd_examples() {
        let tm1 = Poly::from_ints(&[-1, 1]);
        let tp1 = Poly::from_ints(&[1, 1]);
        assert_eq!(tm1.gcd(&tp1).unwrap(), Poly::one());
        let p = Poly::from_ints(&[4, 0, -6]);
        assert_eq!(p.gcd(&p).unwrap(), p.monic());
        assert_eq!(f().gcd(&Poly::from_ints(&[1, -2, 1])).unwrap(), tm1);
        assert_eq!(
            Poly::zero().gcd(&Poly::zero()),
            Err(ArithError::GcdOfZeros)
        );
        assert_eq!(Poly::zero().gcd(&p).unwrap(), p.monic());
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(f().derivative(), Poly::from_ints(&[0, 2]));
        assert_eq!(Poly::constant(r(7)).derivative(), Poly::zero());
        assert_eq!(
            Poly::from_ints(&[1, 0, -2, 0, 1]).derivative(),
            Poly::from_ints(&[0, -4, 0, 4])
        );
        assert_eq!(
            Poly::from_ints(&[1, 0, -2, 0, 1]).nth_derivative(4),
            Poly::constant(r(24))
        );
    }

    #[test]
    fn eval_examples() {
        assert_eq!(f().eval(&r(1)), r(0));
        assert_eq!(Poly::zero().eval(&r(17)), r(0));
        assert_eq!(Poly::from_ints(&[1, 0, -2, 0, 1]).eval(&r(2)), r(9));
    }

    #[test]
    fn degree_sentinel_and_normalization() {
        assert_eq!(Poly::zero().degree(), None);
        assert!(None < Some(0u32));
        assert!((&f() - &f()).is_zero());
        assert_eq!(Poly::from_terms([(3, r(1)), (3, r(-1))]), Poly::zero());
    }

    #[test]
    fn display() {
        assert_eq!(Poly::from_ints(&[0, -2, 0, 2]).to_string(), "2 t^3 - 2 t");
        assert_eq!(f().to_string(), "t^2 - 1");
        assert_eq!(Poly::zero().to_string(), "0");
        assert_eq!((-f()).to_string(), "-t^2 + 1");
        assert_eq!(
            Poly::monomial(Rational::new(-1, 2).unwrap(), 1).to_string(),
            "-1/2 t"
        );
    }
}
