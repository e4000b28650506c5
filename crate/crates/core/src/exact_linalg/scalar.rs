use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The ground field: the rationals or a prime field of machine size.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldSpec {
    p: u64,
}

/// Largest accepted prime; keeps products of residues inside `u64`.
pub const MAX_PRIME: u64 = (1 << 32) - 1;

impl FieldSpec {
    pub const RATIONALS: FieldSpec = FieldSpec { p: 0 };

    pub fn rationals() -> Self {
        Self::RATIONALS
    }

    /// Prime field of order `p`; primality is checked by trial division.
    pub fn prime(p: u64) -> Result<Self> {
        if p > MAX_PRIME || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec { p })
    }

    /// 0 for the rationals, p for a prime field.
    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn is_rationals(&self) -> bool {
        self.p == 0
    }

    pub fn zero(&self) -> Scalar {
        self.int(0)
    }

    pub fn one(&self) -> Scalar {
        self.int(1)
    }

    pub fn int(&self, n: i64) -> Scalar {
        if self.p == 0 {
            Scalar::Q(BigRational::from_integer(BigInt::from(n)))
        } else {
            let p = self.p as i128;
            let v = (n as i128).rem_euclid(p) as u64;
            Scalar::Fp { v, p: self.p }
        }
    }

    /// Image of a rational number; fails when the denominator vanishes mod p.
    pub fn rational(&self, q: &BigRational) -> Result<Scalar> {
        if self.p == 0 {
            return Ok(Scalar::Q(q.clone()));
        }
        let p = BigInt::from(self.p);
        let num = q.numer().mod_floor(&p).to_u64().unwrap_or(0);
        let den = q.denom().mod_floor(&p).to_u64().unwrap_or(0);
        if den == 0 {
            return Err(Error::NotInField {
                value: q.to_string(),
                field: self.to_string(),
            });
        }
        let d = Scalar::Fp { v: den, p: self.p };
        let inv = d.inv().expect("nonzero residue is invertible");
        Ok(Scalar::Fp { v: num, p: self.p } * inv)
    }

    pub fn ratio(&self, n: i64, d: i64) -> Result<Scalar> {
        if d == 0 {
            return Err(Error::NotInField {
                value: format!("{n}/{d}"),
                field: self.to_string(),
            });
        }
        self.rational(&BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    /// Parses `n`, `n/d` or `k mod p` into this field.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let bad = || Error::NotInField {
            value: s.to_string(),
            field: self.to_string(),
        };
        let s = s.trim();
        if let Some((k, p)) = s.split_once(" mod ") {
            let p: u64 = p.trim().parse().map_err(|_| bad())?;
            if p != self.p {
                return Err(bad());
            }
            let k: BigInt = k.trim().parse().map_err(|_| bad())?;
            return self.rational(&BigRational::from_integer(k));
        }
        let q = match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                BigRational::new(n, d)
            }
            None => BigRational::from_integer(s.parse::<BigInt>().map_err(|_| bad())?),
        };
        self.rational(&q)
    }

    /// Parses `Q`, `F<p>` (case-insensitive prefix).
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") {
            return Ok(Self::RATIONALS);
        }
        let digits = t
            .strip_prefix('F')
            .or_else(|| t.strip_prefix('f'))
            .ok_or_else(|| Error::UnknownName(format!("field {t}")))?;
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::UnknownName(format!("field {t}")))?;
        Self::prime(p)
    }

    /// All field elements, in residue order; only for prime fields.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        if self.p == 0 {
            None
        } else {
            Some((0..self.p).map(|v| Scalar::Fp { v, p: self.p }).collect())
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p == 0 {
            write!(f, "Q")
        } else {
            write!(f, "F{}", self.p)
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field element. Fractions are kept in lowest terms, residues in `[0, p)`.
///
/// Arithmetic between elements of different fields is a logic error and panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Q(BigRational),
    Fp { v: u64, p: u64 },
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Q(_) => FieldSpec::RATIONALS,
            Scalar::Fp { p, .. } => FieldSpec { p: *p },
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_zero(),
            Scalar::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_one(),
            Scalar::Fp { v, .. } => *v == 1,
        }
    }

    /// Multiplicative inverse, absent for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        match self {
            Scalar::Q(q) => Some(Scalar::Q(q.recip())),
            Scalar::Fp { v, p } => {
                let (g, x, _) = ext_gcd(*v as i128, *p as i128);
                if g != 1 {
                    return None;
                }
                Some(Scalar::Fp {
                    v: x.rem_euclid(*p as i128) as u64,
                    p: *p,
                })
            }
        }
    }

    /// Rational value when over Q.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Q(q) => Some(q),
            Scalar::Fp { .. } => None,
        }
    }

    /// Small integer representative (residue for F_p, integer value for integral rationals).
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Q(q) if q.is_integer() => q.numer().to_i64(),
            Scalar::Q(_) => None,
            Scalar::Fp { v, .. } => Some(*v as i64),
        }
    }

    /// Representation without the `mod p` suffix, for polynomial text.
    pub fn plain(&self) -> String {
        match self {
            Scalar::Q(q) => q.to_string(),
            Scalar::Fp { v, .. } => v.to_string(),
        }
    }

    /// True for rationals with negative sign; residues are never negative.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_negative(),
            Scalar::Fp { .. } => false,
        }
    }

    fn check(&self, other: &Scalar) {
        let (a, b) = (self.field(), other.field());
        assert!(a == b, "field mismatch: {a} vs {b}");
    }
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(q) => write!(f, "{q}"),
            Scalar::Fp { v, p } => write!(f, "{v} mod {p}"),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        self.check(o);
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, .. }) => Scalar::Fp {
                v: (a + b) % p,
                p: *p,
            },
            _ => unreachable!(),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self.check(o);
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a - b),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, .. }) => Scalar::Fp {
                v: (a + p - b) % p,
                p: *p,
            },
            _ => unreachable!(),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        self.check(o);
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, .. }) => Scalar::Fp {
                v: (a * b) % p,
                p: *p,
            },
            _ => unreachable!(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::Fp { v, p } => Scalar::Fp {
                v: (p - v) % p,
                p: *p,
            },
        }
    }
}

macro_rules! owned_ops {
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
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        *self = &*self + o;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        *self = &*self - o;
    }
}
