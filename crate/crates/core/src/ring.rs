//! Coefficient rings: the rationals, or Z/p^e with p an odd prime >= 5.
//!
//! Every scalar operation goes through a `RingSpec` so that residue
//! arithmetic and rational arithmetic share one code path in the linear
//! algebra. Scalars of mismatched rings are an internal error (the CLI
//! validates rings before any computation starts).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum RingError {
    #[error("invalid ring `{0}`: expected `Q` or `Z/p^e`")]
    Unparseable(String),
    #[error("p must be a prime >= 5 (got {0})")]
    BadPrime(u64),
    #[error("exponent must satisfy 1 <= e and p^e < 2^32 (got p={p}, e={e})")]
    BadExponent { p: u64, e: u32 },
}

/// A coefficient ring: `Q` or `Z/p^e` (p prime, p >= 5, p^e < 2^32).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RingSpec {
    Q,
    ModPrimePower { p: u64, e: u32 },
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl RingSpec {
    /// Construct Z/p^e, validating p prime >= 5, e >= 1, p^e < 2^32.
    pub fn mod_prime_power(p: u64, e: u32) -> Result<Self, RingError> {
        if !is_prime(p) || p < 5 {
            return Err(RingError::BadPrime(p));
        }
        if e < 1 {
            return Err(RingError::BadExponent { p, e });
        }
        let mut m = 1u64;
        for _ in 0..e {
            m = m.checked_mul(p).ok_or(RingError::BadExponent { p, e })?;
            if m >= 1u64 << 32 {
                return Err(RingError::BadExponent { p, e });
            }
        }
        Ok(RingSpec::ModPrimePower { p, e })
    }

    /// Parse `"Q"` or `"Z/p^e"` (`"Z/p"` means e = 1).
    pub fn parse(s: &str) -> Result<Self, RingError> {
        let t = s.trim();
        if t == "Q" {
            return Ok(RingSpec::Q);
        }
        let rest = t
            .strip_prefix("Z/")
            .ok_or_else(|| RingError::Unparseable(s.to_string()))?;
        let (p_str, e_str) = match rest.split_once('^') {
            Some((a, b)) => (a, b),
            None => (rest, "1"),
        };
        let p: u64 = p_str
            .parse()
            .map_err(|_| RingError::Unparseable(s.to_string()))?;
        let e: u32 = e_str
            .parse()
            .map_err(|_| RingError::Unparseable(s.to_string()))?;
        RingSpec::mod_prime_power(p, e)
    }

    pub fn label(&self) -> String {
        match self {
            RingSpec::Q => "Q".to_string(),
            RingSpec::ModPrimePower { p, e } => {
                if *e == 1 {
                    format!("Z/{p}")
                } else {
                    format!("Z/{p}^{e}")
                }
            }
        }
    }

    /// p^e for the modular ring.
    pub fn modulus(&self) -> Option<u64> {
        match self {
            RingSpec::Q => None,
            RingSpec::ModPrimePower { p, e } => {
                let mut m = 1u64;
                for _ in 0..*e {
                    m *= p;
                }
                Some(m)
            }
        }
    }

    pub fn prime_and_exp(&self) -> Option<(u64, u32)> {
        match self {
            RingSpec::Q => None,
            RingSpec::ModPrimePower { p, e } => Some((*p, *e)),
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            RingSpec::Q => Scalar::Rat(BigRational::zero()),
            RingSpec::ModPrimePower { .. } => Scalar::Mod(0),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            RingSpec::Q => Scalar::Rat(BigRational::from(BigInt::from(v))),
            RingSpec::ModPrimePower { .. } => {
                let m = self.modulus().unwrap() as i128;
                let r = ((v as i128 % m) + m) % m;
                Scalar::Mod(r as u64)
            }
        }
    }

    fn expect_mod(&self, a: &Scalar) -> u64 {
        match a {
            Scalar::Mod(x) => *x,
            Scalar::Rat(_) => panic!("coefficient ring mismatch: rational scalar in {}", self.label()),
        }
    }

    fn expect_rat<'a>(&self, a: &'a Scalar) -> &'a BigRational {
        match a {
            Scalar::Rat(x) => x,
            Scalar::Mod(_) => panic!("coefficient ring mismatch: residue scalar in Q"),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            RingSpec::Q => Scalar::Rat(self.expect_rat(a) + self.expect_rat(b)),
            RingSpec::ModPrimePower { .. } => {
                let m = self.modulus().unwrap() as u128;
                let s = (self.expect_mod(a) as u128 + self.expect_mod(b) as u128) % m;
                Scalar::Mod(s as u64)
            }
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match self {
            RingSpec::Q => Scalar::Rat(-self.expect_rat(a)),
            RingSpec::ModPrimePower { .. } => {
                let m = self.modulus().unwrap();
                let x = self.expect_mod(a);
                Scalar::Mod(if x == 0 { 0 } else { m - x })
            }
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            RingSpec::Q => Scalar::Rat(self.expect_rat(a) * self.expect_rat(b)),
            RingSpec::ModPrimePower { .. } => {
                let m = self.modulus().unwrap() as u128;
                let p = (self.expect_mod(a) as u128 * self.expect_mod(b) as u128) % m;
                Scalar::Mod(p as u64)
            }
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Rat(x) => x.is_zero(),
            Scalar::Mod(x) => *x == 0,
        }
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Rat(x) => x.is_one(),
            Scalar::Mod(x) => *x == 1,
        }
    }

    pub fn is_unit(&self, a: &Scalar) -> bool {
        match self {
            RingSpec::Q => !self.is_zero(a),
            RingSpec::ModPrimePower { p, .. } => !self.expect_mod(a).is_multiple_of(*p),
        }
    }

    /// Multiplicative inverse, when `a` is a unit.
    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        match self {
            RingSpec::Q => {
                let x = self.expect_rat(a);
                if x.is_zero() {
                    None
                } else {
                    Some(Scalar::Rat(x.recip()))
                }
            }
            RingSpec::ModPrimePower { .. } => {
                let m = self.modulus().unwrap() as i128;
                let a = self.expect_mod(a) as i128;
                // extended Euclid
                let (mut r0, mut r1) = (m, a);
                let (mut t0, mut t1) = (0i128, 1i128);
                while r1 != 0 {
                    let q = r0 / r1;
                    (r0, r1) = (r1, r0 - q * r1);
                    (t0, t1) = (t1, t0 - q * t1);
                }
                if r0 != 1 {
                    return None;
                }
                Some(Scalar::Mod((((t0 % m) + m) % m) as u64))
            }
        }
    }

    /// p-adic valuation truncated at e; by convention val(0) = e. Over Q:
    /// 0 for nonzero, usize::MAX sentinel never needed (callers branch on ring).
    pub fn valuation(&self, a: &Scalar) -> u32 {
        match self {
            RingSpec::Q => {
                if self.is_zero(a) {
                    u32::MAX
                } else {
                    0
                }
            }
            RingSpec::ModPrimePower { p, e } => {
                let mut x = self.expect_mod(a);
                if x == 0 {
                    return *e;
                }
                let mut v = 0;
                while x.is_multiple_of(*p) {
                    x /= p;
                    v += 1;
                }
                v
            }
        }
    }

    /// Write a unit u with a = u * p^val(a) (a nonzero residue). Over Q the
    /// unit part is a itself.
    pub fn unit_part(&self, a: &Scalar) -> Scalar {
        match self {
            RingSpec::Q => a.clone(),
            RingSpec::ModPrimePower { p, .. } => {
                let mut x = self.expect_mod(a);
                assert!(x != 0, "unit_part of zero");
                while x.is_multiple_of(*p) {
                    x /= p;
                }
                Scalar::Mod(x)
            }
        }
    }

    /// p^v as a scalar (modular rings only).
    pub fn prime_power(&self, v: u32) -> Scalar {
        match self {
            RingSpec::Q => panic!("prime_power over Q"),
            RingSpec::ModPrimePower { p, e } => {
                if v >= *e {
                    return Scalar::Mod(0);
                }
                let mut m = 1u64;
                for _ in 0..v {
                    m *= p;
                }
                Scalar::Mod(m)
            }
        }
    }

    /// Exact integer quotient of the canonical representative by p^v
    /// (requires p^v | a as integers, i.e. val(a) >= v).
    pub fn div_prime_power(&self, a: &Scalar, v: u32) -> Scalar {
        match self {
            RingSpec::Q => panic!("div_prime_power over Q"),
            RingSpec::ModPrimePower { p, .. } => {
                let x = self.expect_mod(a);
                let mut d = 1u64;
                for _ in 0..v {
                    d *= p;
                }
                assert!(x.is_multiple_of(d), "inexact division by p^{v}");
                Scalar::Mod(x / d)
            }
        }
    }

    /// Floor quotient and remainder of the canonical representative by p^v.
    pub fn divmod_prime_power(&self, a: &Scalar, v: u32) -> (Scalar, Scalar) {
        match self {
            RingSpec::Q => panic!("divmod_prime_power over Q"),
            RingSpec::ModPrimePower { p, .. } => {
                let x = self.expect_mod(a);
                let mut d = 1u64;
                for _ in 0..v {
                    d *= p;
                }
                (Scalar::Mod(x / d), Scalar::Mod(x % d))
            }
        }
    }
}

/// An exact scalar: a rational or a canonical residue in 0..p^e.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Scalar {
    Rat(BigRational),
    Mod(u64),
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(x) => {
                if x.is_integer() {
                    write!(f, "{}", x.numer())
                } else {
                    write!(f, "{}/{}", x.numer(), x.denom())
                }
            }
            Scalar::Mod(x) => write!(f, "{x}"),
        }
    }
}

impl Scalar {
    /// Parse back what `Display` printed, in the given ring.
    pub fn parse(ring: &RingSpec, s: &str) -> Option<Scalar> {
        match ring {
            RingSpec::Q => {
                let (n, d) = match s.split_once('/') {
                    Some((n, d)) => (n, d),
                    None => (s, "1"),
                };
                let n: BigInt = n.parse().ok()?;
                let d: BigInt = d.parse().ok()?;
                if d.is_zero() {
                    return None;
                }
                Some(Scalar::Rat(BigRational::new(n, d)))
            }
            RingSpec::ModPrimePower { .. } => {
                let v: i64 = s.parse().ok()?;
                Some(ring.from_i64(v))
            }
        }
    }

    /// Magnitude proxy used only for pivot tie-breaking statistics in tests.
    pub fn rat_abs_le_one(&self) -> bool {
        match self {
            Scalar::Rat(x) => x.abs() <= BigRational::one(),
            Scalar::Mod(_) => true,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_label_round_trip() {
        for s in ["Q", "Z/5", "Z/7^2", "Z/5^4", "Z/13"] {
            let r = RingSpec::parse(s).unwrap();
            assert_eq!(r.label(), s);
            assert_eq!(RingSpec::parse(&r.label()).unwrap(), r);
        }
    }

    #[test]
    fn rejects_bad_rings() {
        assert_eq!(RingSpec::parse("Z/3^2"), Err(RingError::BadPrime(3)));
        assert_eq!(RingSpec::parse("Z/2"), Err(RingError::BadPrime(2)));
        assert_eq!(RingSpec::parse("Z/4"), Err(RingError::BadPrime(4)));
        assert!(matches!(RingSpec::parse("Z/5^0"), Err(RingError::BadExponent { .. })));
        assert!(matches!(RingSpec::parse("Z/5^14"), Err(RingError::BadExponent { .. })));
        assert!(matches!(RingSpec::parse("R"), Err(RingError::Unparseable(_))));
    }

    #[test]
    fn modular_arithmetic_basics() {
        let r = RingSpec::parse("Z/5^2").unwrap();
        assert_eq!(r.modulus(), Some(25));
        let a = r.from_i64(-3);
        assert_eq!(a, Scalar::Mod(22));
        let b = r.from_i64(8);
        assert_eq!(r.add(&a, &b), Scalar::Mod(5));
        assert_eq!(r.mul(&a, &b), Scalar::Mod(1)); // 22*8 = 176 = 7*25+1
        assert_eq!(r.inv(&b), Some(Scalar::Mod(22)));
        assert_eq!(r.inv(&Scalar::Mod(5)), None);
        assert_eq!(r.valuation(&Scalar::Mod(5)), 1);
        assert_eq!(r.valuation(&Scalar::Mod(0)), 2);
        assert_eq!(r.valuation(&Scalar::Mod(7)), 0);
        assert_eq!(r.unit_part(&Scalar::Mod(15)), Scalar::Mod(3));
        assert_eq!(r.div_prime_power(&Scalar::Mod(15), 1), Scalar::Mod(3));
        let (q, rem) = r.divmod_prime_power(&Scalar::Mod(17), 1);
        assert_eq!((q, rem), (Scalar::Mod(3), Scalar::Mod(2)));
    }

    #[test]
    fn rational_arithmetic_basics() {
        let r = RingSpec::Q;
        let a = r.from_i64(3);
        let b = r.from_i64(-2);
        let half = r.inv(&r.from_i64(2)).unwrap();
        assert_eq!(r.mul(&a, &half).to_string(), "3/2");
        assert_eq!(r.add(&a, &b), r.one());
        assert!(r.is_unit(&b));
        assert!(!r.is_unit(&r.zero()));
    }

    #[test]
    fn scalar_display_parse_round_trip() {
        let q = RingSpec::Q;
        for s in ["0", "5", "-7", "3/2", "-11/4"] {
            let v = Scalar::parse(&q, s).unwrap();
            assert_eq!(v.to_string(), s);
        }
        let m = RingSpec::parse("Z/7^2").unwrap();
        let v = Scalar::parse(&m, "-1").unwrap();
        assert_eq!(v, Scalar::Mod(48));
    }

    #[test]
    fn inverse_agrees_with_multiplication() {
        let r = RingSpec::parse("Z/7^3").unwrap();
        for a in 1..343u64 {
            let s = Scalar::Mod(a);
            match r.inv(&s) {
                Some(i) => assert_eq!(r.mul(&s, &i), Scalar::Mod(1)),
                None => assert_eq!(a % 7, 0),
            }
        }
    }
}
