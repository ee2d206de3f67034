//! Exact scalar arithmetic: rational functions in one formal parameter `q`
//! over the rationals.
//!
//! A [`Scalar`] is a quotient `num/den` of univariate polynomials with
//! `BigRational` coefficients, kept in a unique canonical form: the
//! denominator is nonzero, monic, and coprime to the numerator. Equality of
//! values is therefore decidable by structural comparison. Constants are the
//! `q`-free case.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Dense univariate polynomial over `Rat`, coefficients in ascending degree,
/// no trailing zeros (the zero polynomial has an empty coefficient vector).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = Poly { coeffs: vec![c] };
        p.trim();
        p
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    /// The monomial `c * q^k`.
    pub fn monomial(c: Rat, k: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn as_constant(&self) -> Option<Rat> {
        match self.coeffs.len() {
            0 => Some(Rat::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = vec![Rat::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        Poly::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Euclidean division; the divisor must be nonzero.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let dlen = divisor.coeffs.len();
        let dlead = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() < dlen {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Rat::zero(); rem.len() - dlen + 1];
        for k in (0..quot.len()).rev() {
            let lead = rem[k + dlen - 1].clone();
            if lead.is_zero() {
                continue;
            }
            let c = lead / &dlead;
            for (j, d) in divisor.coeffs.iter().enumerate() {
                let v = d * &c;
                rem[k + j] -= v;
            }
            quot[k] = c;
        }
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.make_monic();
        a
    }

    fn make_monic(&mut self) {
        if let Some(lead) = self.leading().cloned() {
            if !lead.is_one() {
                for c in &mut self.coeffs {
                    *c /= &lead;
                }
            }
        }
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }
}

fn fmt_rat(c: &Rat) -> String {
    if c.denom().is_one() {
        format!("{}", c.numer())
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Poly {
    /// Descending powers, compact: `q^2-1`, `-2*q+1/2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = c.is_negative();
            if first {
                if sign {
                    write!(f, "-")?;
                }
                first = false;
            } else if sign {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            let coeff_part = if mag.is_one() && k > 0 {
                None
            } else {
                Some(fmt_rat(&mag))
            };
            match (coeff_part, k) {
                (Some(c), 0) => write!(f, "{c}")?,
                (Some(c), 1) => write!(f, "{c}*q")?,
                (Some(c), _) => write!(f, "{c}*q^{k}")?,
                (None, 1) => write!(f, "q")?,
                (None, _) => write!(f, "q^{k}")?,
            }
        }
        Ok(())
    }
}

/// A rational function in `q` with exact rational coefficients, in canonical
/// form: monic denominator coprime to the numerator. The zero scalar is
/// `0/1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Scalar {
    /// Canonicalize a quotient of polynomials. Errors on zero denominator.
    pub fn try_new(num: Poly, den: Poly) -> Result<Scalar> {
        if den.is_zero() {
            return Err(Error::arith("zero denominator"));
        }
        let mut num = num;
        let mut den = den;
        if num.is_zero() {
            return Ok(Scalar {
                num: Poly::zero(),
                den: Poly::one(),
            });
        }
        let g = num.gcd(&den);
        if !g.is_one() {
            num = num.div_rem(&g).0;
            den = den.div_rem(&g).0;
        }
        let lead = den.leading().unwrap().clone();
        if !lead.is_one() {
            let inv = Rat::one() / lead;
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Ok(Scalar { num, den })
    }

    fn new(num: Poly, den: Poly) -> Scalar {
        Scalar::try_new(num, den).expect("nonzero denominator")
    }

    pub fn zero() -> Scalar {
        Scalar {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Scalar {
        Scalar {
            num: Poly::one(),
            den: Poly::one(),
        }
    }

    pub fn from_int(n: i64) -> Scalar {
        Scalar::from_rat(Rat::from(BigInt::from(n)))
    }

    pub fn from_rat(c: Rat) -> Scalar {
        Scalar {
            num: Poly::constant(c),
            den: Poly::one(),
        }
    }

    /// The formal parameter `q`.
    pub fn q() -> Scalar {
        Scalar {
            num: Poly::monomial(Rat::one(), 1),
            den: Poly::one(),
        }
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(k: i64) -> Scalar {
        if k >= 0 {
            Scalar {
                num: Poly::monomial(Rat::one(), k as usize),
                den: Poly::one(),
            }
        } else {
            Scalar {
                num: Poly::one(),
                den: Poly::monomial(Rat::one(), (-k) as usize),
            }
        }
    }

    /// `c^k` for a nonzero rational constant `c` and any integer `k`.
    pub fn rat_pow(c: &Rat, k: i64) -> Result<Scalar> {
        if c.is_zero() && k < 0 {
            return Err(Error::arith("negative power of zero"));
        }
        if c.is_zero() && k == 0 {
            return Ok(Scalar::one());
        }
        let mut acc = Rat::one();
        for _ in 0..k.unsigned_abs() {
            acc *= c;
        }
        if k < 0 {
            acc = Rat::one() / acc;
        }
        Ok(Scalar::from_rat(acc))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    /// Constant value if this scalar is `q`-free.
    pub fn as_constant(&self) -> Option<Rat> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::arith("inverse of zero scalar"));
        }
        Scalar::try_new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, k: i64) -> Result<Scalar> {
        if k < 0 {
            return self.inv()?.pow(-k);
        }
        let mut acc = Scalar::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        Ok(acc)
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self * &other.inv()?)
    }

    /// Evaluate at a rational point; errors on a pole.
    pub fn eval_at(&self, x: &Rat) -> Result<Rat> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::arith(format!("pole of scalar at q={}", fmt_rat(x))));
        }
        Ok(self.num.eval(x) / d)
    }

    /// Substitute a rational constant for `q`, producing a constant scalar.
    pub fn specialize(&self, x: &Rat) -> Result<Scalar> {
        Ok(Scalar::from_rat(self.eval_at(x)?))
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar::new(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar::new(
            self.num.mul(&rhs.den).sub(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        Scalar::new(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }
}

impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    /// Panics on division by zero; use `try_div` where the divisor is not
    /// known to be nonzero.
    fn div(self, rhs: &Scalar) -> Scalar {
        self.try_div(rhs).expect("scalar division by zero")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl fmt::Display for Scalar {
    /// Canonical text. Multi-term polynomials are parenthesized so that the
    /// output re-parses inside products: `q`, `-2`, `(q^2-1)`, `-1/(q^2-1)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write_poly_atom(f, &self.num);
        }
        write_poly_atom(f, &self.num)?;
        write!(f, "/")?;
        // Denominator is monic and non-constant or non-one; always safe to
        // parenthesize except for pure monomials.
        if is_single_term(&self.den) {
            write!(f, "{}", self.den)
        } else {
            write!(f, "({})", self.den)
        }
    }
}

fn is_single_term(p: &Poly) -> bool {
    p.coeffs.iter().filter(|c| !c.is_zero()).count() <= 1
}

fn write_poly_atom(f: &mut fmt::Formatter<'_>, p: &Poly) -> fmt::Result {
    if is_single_term(p) {
        write!(f, "{p}")
    } else {
        write!(f, "({p})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Scalar {
        Scalar::q()
    }

    fn int(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn common_factor_cancels() {
        // (q^2-1)/(q-1) -> q+1
        let num = Poly::from_coeffs(vec![rat(-1, 1), rat(0, 1), rat(1, 1)]);
        let den = Poly::from_coeffs(vec![rat(-1, 1), rat(1, 1)]);
        let s = Scalar::try_new(num, den).unwrap();
        let expected = &q() + &int(1);
        assert_eq!(s, expected);
        assert_eq!(s.to_string(), "(q+1)");
    }

    #[test]
    fn zero_numerator_collapses() {
        let den = Poly::from_coeffs(vec![rat(1, 1), rat(0, 1), rat(-1, 1)]);
        let s = Scalar::try_new(Poly::zero(), den).unwrap();
        assert!(s.is_zero());
        assert_eq!(s, Scalar::zero());
    }

    #[test]
    fn monic_denominator_normalization() {
        // 1/(1-q^2) has canonical form -1/(q^2-1).
        let one_minus_q2 = &int(1) - &(&q() * &q());
        let s = int(1).try_div(&one_minus_q2).unwrap();
        assert_eq!(s.to_string(), "-1/(q^2-1)");
        // And it is idempotent under re-normalization.
        let again = Scalar::try_new(s.numerator().clone(), s.denominator().clone()).unwrap();
        assert_eq!(again, s);
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(Scalar::try_new(Poly::one(), Poly::zero()).is_err());
    }

    #[test]
    fn field_roundtrip() {
        let s = &(&q() + &int(2)) * &Scalar::q_pow(-3);
        let t = &int(7) - &Scalar::q_pow(2);
        let prod = &s * &t;
        assert_eq!(prod.try_div(&t).unwrap(), s);
    }

    #[test]
    fn q_pow_negative() {
        let s = Scalar::q_pow(-2);
        assert_eq!(&s * &Scalar::q_pow(2), Scalar::one());
        assert_eq!(s.to_string(), "1/q^2");
    }

    #[test]
    fn eval_and_pole() {
        let one_minus_q2 = &int(1) - &Scalar::q_pow(2);
        let s = int(1).try_div(&one_minus_q2).unwrap();
        assert_eq!(s.eval_at(&rat(2, 1)).unwrap(), rat(-1, 3));
        assert!(s.eval_at(&rat(1, 1)).is_err());
    }

    #[test]
    fn display_parses_sign_structure() {
        let s = &(-&q()) + &int(1); // 1 - q => -(q - 1) -> "-q+1" descending
        assert_eq!(s.to_string(), "(-q+1)");
        assert_eq!(int(-2).to_string(), "-2");
        assert_eq!(Scalar::q_pow(2).to_string(), "q^2");
    }
}
