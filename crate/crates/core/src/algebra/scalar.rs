//! Exact scalars in the field `Q(i, √2)`.
//!
//! A [`Scalar`] is stored as four rationals `(a, b, c, d)` standing for
//! `a + b·i + c·√2 + d·i√2`. Internally the field is treated as `K(i)` with
//! `K = Q(√2)`, which keeps multiplication and inversion short.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

pub type Rational = BigRational;

/// Builds a rational from a numerator/denominator pair of machine integers.
pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Formats a rational as `p/q` (or `p` when the denominator is one).
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    let parse_int = |t: &str| BigInt::from_str(t.trim()).map_err(|e| format!("bad rational {s:?}: {e}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(format!("bad rational {s:?}: zero denominator"));
            }
            Ok(BigRational::new(parse_int(n)?, d))
        }
        None => Ok(BigRational::from_integer(parse_int(s)?)),
    }
}

/// Element `a + b√2` of the real subfield `Q(√2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Surd {
    pub a: Rational,
    pub b: Rational,
}

impl Surd {
    fn mul(&self, o: &Surd) -> Surd {
        Surd {
            a: &self.a * &o.a + int(2) * &self.b * &o.b,
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }

    fn add(&self, o: &Surd) -> Surd {
        Surd { a: &self.a + &o.a, b: &self.b + &o.b }
    }

    fn sub(&self, o: &Surd) -> Surd {
        Surd { a: &self.a - &o.a, b: &self.b - &o.b }
    }

    fn inv(&self) -> Surd {
        // (a + b√2)^{-1} = (a - b√2) / (a² - 2b²); the norm vanishes only at 0.
        let norm = &self.a * &self.a - int(2) * &self.b * &self.b;
        Surd { a: &self.a / &norm, b: -&self.b / &norm }
    }

    /// Exact sign of `a + b√2`.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&Rational::zero());
        let sb = self.b.cmp(&Rational::zero());
        match (sa, sb) {
            (s, Ordering::Equal) => s,
            (Ordering::Equal, s) => s,
            (x, y) if x == y => x,
            (Ordering::Greater, _) => (&self.a * &self.a).cmp(&(int(2) * &self.b * &self.b)),
            _ => (int(2) * &self.b * &self.b).cmp(&(&self.a * &self.a)),
        }
    }
}

/// Exact element of `Q(i, √2)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Scalar {
    pub re: Rational,
    pub im: Rational,
    pub re_sqrt2: Rational,
    pub im_sqrt2: Rational,
}

impl Scalar {
    pub fn new(re: Rational, im: Rational, re_sqrt2: Rational, im_sqrt2: Rational) -> Self {
        Scalar { re, im, re_sqrt2, im_sqrt2 }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn i() -> Self {
        Scalar { im: Rational::one(), ..Self::default() }
    }

    pub fn sqrt2() -> Self {
        Scalar { re_sqrt2: Rational::one(), ..Self::default() }
    }

    pub fn from_rational(q: Rational) -> Self {
        Scalar { re: q, ..Self::default() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(int(n))
    }

    pub fn gaussian(re: Rational, im: Rational) -> Self {
        Scalar { re, im, ..Self::default() }
    }

    /// `i^k` for any integer `k`.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Self::one(),
            1 => Self::i(),
            2 => Self::from_int(-1),
            _ => -Self::i(),
        }
    }

    /// `e^{-iπk/4} = ((1 - i)/√2)^k`, an eighth root of unity.
    pub fn eighth_root_pow(k: i64) -> Self {
        let half = rat(1, 2);
        let zeta = Scalar::new(Rational::zero(), Rational::zero(), half.clone(), -half);
        let mut acc = Self::one();
        for _ in 0..k.rem_euclid(8) {
            acc = &acc * &zeta;
        }
        acc
    }

    fn real_part(&self) -> Surd {
        Surd { a: self.re.clone(), b: self.re_sqrt2.clone() }
    }

    fn imag_part(&self) -> Surd {
        Surd { a: self.im.clone(), b: self.im_sqrt2.clone() }
    }

    fn from_parts(x: Surd, y: Surd) -> Self {
        Scalar { re: x.a, im: y.a, re_sqrt2: x.b, im_sqrt2: y.b }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero() && self.re_sqrt2.is_zero() && self.im_sqrt2.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero() && self.re_sqrt2.is_zero() && self.im_sqrt2.is_zero()
    }

    /// True when the imaginary part vanishes.
    pub fn is_real(&self) -> bool {
        self.im.is_zero() && self.im_sqrt2.is_zero()
    }

    /// True when the scalar lies in `Q`.
    pub fn is_rational(&self) -> bool {
        self.is_real() && self.re_sqrt2.is_zero()
    }

    /// True when the scalar lies in `Q(i)`.
    pub fn is_gaussian(&self) -> bool {
        self.re_sqrt2.is_zero() && self.im_sqrt2.is_zero()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.re.clone())
    }

    /// Complex conjugation `i ↦ -i`; fixes `√2`.
    pub fn conj(&self) -> Self {
        Scalar {
            re: self.re.clone(),
            im: -&self.im,
            re_sqrt2: self.re_sqrt2.clone(),
            im_sqrt2: -&self.im_sqrt2,
        }
    }

    /// The real part `re + re_sqrt2·√2`.
    pub fn re_part(&self) -> Scalar {
        Scalar { re: self.re.clone(), re_sqrt2: self.re_sqrt2.clone(), ..Self::default() }
    }

    /// The imaginary part `im + im_sqrt2·√2` as a real scalar.
    pub fn im_part(&self) -> Scalar {
        Scalar { re: self.im.clone(), re_sqrt2: self.im_sqrt2.clone(), ..Self::default() }
    }

    /// Sign of a real scalar; `None` when the imaginary part is nonzero.
    pub fn real_sign(&self) -> Option<Ordering> {
        self.is_real().then(|| self.real_part().signum())
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let x = self.real_part();
        let y = self.imag_part();
        let norm = x.mul(&x).add(&y.mul(&y));
        let ninv = norm.inv();
        let neg_y = Surd { a: -&y.a, b: -&y.b };
        Some(Self::from_parts(x.mul(&ninv), neg_y.mul(&ninv)))
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Scalar {
            re: &self.re * q,
            im: &self.im * q,
            re_sqrt2: &self.re_sqrt2 * q,
            im_sqrt2: &self.im_sqrt2 * q,
        }
    }

    /// Largest absolute value among the four rational coordinates.
    pub fn max_coordinate(&self) -> Rational {
        [&self.re, &self.im, &self.re_sqrt2, &self.im_sqrt2]
            .into_iter()
            .map(|q| q.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<Rational> for Scalar {
    fn from(q: Rational) -> Self {
        Scalar::from_rational(q)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        Scalar {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
            re_sqrt2: &self.re_sqrt2 + &o.re_sqrt2,
            im_sqrt2: &self.im_sqrt2 + &o.im_sqrt2,
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        Scalar {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
            re_sqrt2: &self.re_sqrt2 - &o.re_sqrt2,
            im_sqrt2: &self.im_sqrt2 - &o.im_sqrt2,
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        let (x1, y1) = (self.real_part(), self.imag_part());
        let (x2, y2) = (o.real_part(), o.imag_part());
        let re = x1.mul(&x2).sub(&y1.mul(&y2));
        let im = x1.mul(&y2).add(&y1.mul(&x2));
        Scalar::from_parts(re, im)
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, o: &Scalar) -> Scalar {
        self * &o.inv().expect("division by zero scalar")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            re: -&self.re,
            im: -&self.im,
            re_sqrt2: -&self.re_sqrt2,
            im_sqrt2: -&self.im_sqrt2,
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                self.$m(&o)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        self.re += &o.re;
        self.im += &o.im;
        self.re_sqrt2 += &o.re_sqrt2;
        self.im_sqrt2 += &o.im_sqrt2;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        self.re -= &o.re;
        self.im -= &o.im;
        self.re_sqrt2 -= &o.re_sqrt2;
        self.im_sqrt2 -= &o.im_sqrt2;
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = [
            (&self.re, ""),
            (&self.im, "i"),
            (&self.re_sqrt2, "√2"),
            (&self.im_sqrt2, "i√2"),
        ];
        let mut wrote = false;
        for (q, unit) in parts {
            if q.is_zero() {
                continue;
            }
            let neg = q.is_negative();
            let mag = q.abs();
            if wrote {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            } else if neg {
                write!(f, "-")?;
            }
            if unit.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{unit}")?;
            } else {
                write!(f, "{mag}{unit}")?;
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Scalar", 4)?;
        st.serialize_field("re", &format_rational(&self.re))?;
        st.serialize_field("im", &format_rational(&self.im))?;
        st.serialize_field("re_sqrt2", &format_rational(&self.re_sqrt2))?;
        st.serialize_field("im_sqrt2", &format_rational(&self.im_sqrt2))?;
        st.end()
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ScalarObject {
    #[serde(default)]
    re: Option<RationalRepr>,
    #[serde(default)]
    im: Option<RationalRepr>,
    #[serde(default)]
    re_sqrt2: Option<RationalRepr>,
    #[serde(default)]
    im_sqrt2: Option<RationalRepr>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ScalarRepr {
    Object(ScalarObject),
    Plain(RationalRepr),
}

/// Rationals are accepted either as `"p/q"` strings or as JSON integers.
#[derive(Deserialize)]
#[serde(untagged)]
enum RationalRepr {
    Int(i64),
    Text(String),
}

impl RationalRepr {
    fn into_rational<E: de::Error>(self) -> Result<Rational, E> {
        match self {
            RationalRepr::Int(n) => Ok(int(n)),
            RationalRepr::Text(s) => parse_rational(&s).map_err(E::custom),
        }
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let conv = |r: Option<RationalRepr>| -> Result<Rational, D::Error> {
            r.map(RationalRepr::into_rational).transpose().map(|q| q.unwrap_or_else(Rational::zero))
        };
        match ScalarRepr::deserialize(d)? {
            ScalarRepr::Plain(r) => Ok(Scalar::from_rational(r.into_rational()?)),
            ScalarRepr::Object(o) => Ok(Scalar {
                re: conv(o.re)?,
                im: conv(o.im)?,
                re_sqrt2: conv(o.re_sqrt2)?,
                im_sqrt2: conv(o.im_sqrt2)?,
            }),
        }
    }
}

/// Serde adapter for bare rationals written as `"p/q"` strings.
pub mod rational_serde {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        RationalRepr::deserialize(d)?.into_rational()
    }

    pub mod vec {
        use super::*;

        pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
            let strs: Vec<String> = v.iter().map(format_rational).collect();
            strs.serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
            Vec::<RationalRepr>::deserialize(d)?.into_iter().map(RationalRepr::into_rational).collect()
        }
    }

    pub mod mat {
        use super::*;

        pub fn serialize<S: Serializer>(v: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
            let strs: Vec<Vec<String>> = v.iter().map(|r| r.iter().map(format_rational).collect()).collect();
            strs.serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Rational>>, D::Error> {
            Vec::<Vec<RationalRepr>>::deserialize(d)?
                .into_iter()
                .map(|r| r.into_iter().map(RationalRepr::into_rational).collect())
                .collect()
        }
    }
}
