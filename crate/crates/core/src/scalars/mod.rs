//! Exact scalars over the supported base rings: the rationals and the
//! residue rings `Z/n`.
//!
//! Every [`Scalar`] is stored in canonical form (reduced fraction, or a
//! residue in `[0, n)`), so equality is structural.

mod linalg;
mod matrix;

pub use linalg::{
    canonical_row_form, echelon_rows, free_basis, intersect_modules, inverse, kernel,
    ring_idempotents, row_module_contains, same_row_module, solve, RowSolver, Solution,
};
pub use matrix::Matrix;

/// Coordinate vector helpers shared by every module.
pub mod vec {
    use super::{BaseRing, Scalar};

    pub fn add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(a.len(), b.len(), "vector length mismatch");
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(a.len(), b.len(), "vector length mismatch");
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub fn scale(s: &Scalar, a: &[Scalar]) -> Vec<Scalar> {
        a.iter().map(|x| s * x).collect()
    }

    pub fn zero(ring: &BaseRing, n: usize) -> Vec<Scalar> {
        vec![ring.zero(); n]
    }

    pub fn unit(ring: &BaseRing, n: usize, i: usize) -> Vec<Scalar> {
        let mut v = zero(ring, n);
        v[i] = ring.one();
        v
    }

    pub fn is_zero(a: &[Scalar]) -> bool {
        a.iter().all(Scalar::is_zero)
    }
}

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BaseRing {
    Rationals,
    Modular(u64),
}

impl BaseRing {
    pub fn modular(n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::UnsupportedRing(format!("Z/{n}")));
        }
        Ok(BaseRing::Modular(n))
    }

    /// Parses `"Q"` or `"Z/<n>"`. `"F_p"`/`"GF(p)"` are accepted for prime `p`.
    pub fn parse(spec: &str) -> Result<Self> {
        let s = spec.trim();
        if s == "Q" || s == "QQ" {
            return Ok(BaseRing::Rationals);
        }
        let modulus = s
            .strip_prefix("Z/")
            .or_else(|| s.strip_prefix("F_"))
            .or_else(|| s.strip_prefix("GF(").and_then(|r| r.strip_suffix(')')));
        if let Some(m) = modulus {
            let n: u64 = m
                .parse()
                .map_err(|_| Error::UnsupportedRing(spec.to_string()))?;
            if !s.starts_with("Z/") && !is_prime(n) {
                return Err(Error::UnsupportedRing(spec.to_string()));
            }
            return BaseRing::modular(n).map_err(|_| Error::UnsupportedRing(spec.to_string()));
        }
        Err(Error::UnsupportedRing(spec.to_string()))
    }

    pub fn modulus(&self) -> Option<u64> {
        match self {
            BaseRing::Rationals => None,
            BaseRing::Modular(n) => Some(*n),
        }
    }

    pub fn is_field(&self) -> bool {
        match self {
            BaseRing::Rationals => true,
            BaseRing::Modular(n) => is_prime(*n),
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            BaseRing::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            BaseRing::Modular(n) => Scalar::Residue {
                value: v.rem_euclid(*n as i64 as i128 as i64).unsigned_abs() % n,
                modulus: *n,
            },
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match self {
            BaseRing::Rationals => Scalar::Rational(BigRational::from_integer(v.clone())),
            BaseRing::Modular(n) => {
                let r = v.mod_floor(&BigInt::from(*n));
                Scalar::Residue {
                    value: r.to_u64().expect("residue fits"),
                    modulus: *n,
                }
            }
        }
    }

    /// Parses an integer `"5"`, `"-2"` or a fraction `"3/4"`. Fractions are
    /// accepted in `Z/n` when the denominator is a unit.
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar> {
        let bad = || Error::InvalidScalar(text.to_string(), self.to_string());
        let t = text.trim();
        let (num, den) = match t.split_once('/') {
            Some((a, b)) => (a.trim(), Some(b.trim())),
            None => (t, None),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = match den {
            Some(d) => d.parse().map_err(|_| bad())?,
            None => BigInt::one(),
        };
        if den.is_zero() {
            return Err(bad());
        }
        match self {
            BaseRing::Rationals => Ok(Scalar::Rational(BigRational::new(num, den))),
            BaseRing::Modular(_) => {
                let d = self.from_bigint(&den).inverse().ok_or_else(bad)?;
                Ok(&self.from_bigint(&num) * &d)
            }
        }
    }

    pub fn contains(&self, s: &Scalar) -> bool {
        match (self, s) {
            (BaseRing::Rationals, Scalar::Rational(_)) => true,
            (BaseRing::Modular(n), Scalar::Residue { modulus, .. }) => n == modulus,
            _ => false,
        }
    }

    /// Image of `s` under the canonical map into `self`: `Q -> Z/n` when the
    /// denominator is a unit, `Z/m -> Z/n` when `n` divides `m`.
    pub fn reduce(&self, s: &Scalar) -> Result<Scalar> {
        let bad = || Error::InvalidScalar(s.to_string(), self.to_string());
        match (self, s) {
            (BaseRing::Rationals, Scalar::Rational(_)) => Ok(s.clone()),
            (BaseRing::Modular(_), Scalar::Rational(q)) => {
                let d = self.from_bigint(q.denom()).inverse().ok_or_else(bad)?;
                Ok(&self.from_bigint(q.numer()) * &d)
            }
            (BaseRing::Modular(n), Scalar::Residue { value, modulus }) if modulus % n == 0 => {
                Ok(self.from_i64((value % n) as i64))
            }
            _ => Err(bad()),
        }
    }

    /// Extended gcd step used by the echelon routines. Returns `(g, s, t, u, v)`
    /// with `s*a + t*b = g`, `u*a + v*b = 0` and `s*v - t*u` a unit.
    pub(crate) fn gcdex(&self, a: &Scalar, b: &Scalar) -> (Scalar, Scalar, Scalar, Scalar, Scalar) {
        match self {
            BaseRing::Rationals => {
                if a.is_zero() {
                    (b.clone(), self.zero(), self.one(), self.one(), self.zero())
                } else {
                    let q = b * &a.inverse().expect("nonzero rational");
                    (a.clone(), self.one(), self.zero(), -&q, self.one())
                }
            }
            BaseRing::Modular(n) => {
                let (x, y) = (a.residue() as i128, b.residue() as i128);
                let (g, s, t) = ext_gcd(x, y);
                if g == 0 {
                    return (self.zero(), self.one(), self.zero(), self.zero(), self.one());
                }
                let m = *n as i128;
                let mk = |v: i128| Scalar::Residue {
                    value: v.rem_euclid(m) as u64,
                    modulus: *n,
                };
                (mk(g), mk(s), mk(t), mk(-(y / g)), mk(x / g))
            }
        }
    }

    /// A unit `u` such that `u*a` is the canonical associate of `a`
    /// (`1` over a field, `gcd(a, n)` over `Z/n`).
    pub(crate) fn unit_normalizer(&self, a: &Scalar) -> Scalar {
        match self {
            BaseRing::Rationals => a.inverse().unwrap_or_else(|| self.one()),
            BaseRing::Modular(n) => {
                let n = *n;
                let x = a.residue();
                if x == 0 {
                    return self.one();
                }
                let g = gcd_u64(x, n);
                let m = n / g;
                let base = if m == 1 {
                    1
                } else {
                    mod_inverse((x / g) % m, m).expect("coprime cofactor")
                };
                let mut u = base % n;
                let mut k = 0u64;
                while gcd_u64(u, n) != 1 {
                    k += 1;
                    u = ((base as u128 + k as u128 * m as u128) % n as u128) as u64;
                }
                Scalar::Residue { value: u, modulus: n }
            }
        }
    }

    /// Generator of the annihilator ideal of `a`.
    pub(crate) fn annihilator(&self, a: &Scalar) -> Scalar {
        match self {
            BaseRing::Rationals => {
                if a.is_zero() {
                    self.one()
                } else {
                    self.zero()
                }
            }
            BaseRing::Modular(n) => {
                let g = gcd_u64(a.residue(), *n);
                self.from_i64((*n / g) as i64)
            }
        }
    }

    /// For a canonical pivot `d`, the `q` such that `a - q*d` is the canonical
    /// remainder of `a` modulo the ideal `(d)`.
    pub(crate) fn reduction_quotient(&self, a: &Scalar, d: &Scalar) -> Scalar {
        match self {
            BaseRing::Rationals => a * &d.inverse().expect("nonzero pivot"),
            BaseRing::Modular(n) => Scalar::Residue {
                value: a.residue() / d.residue(),
                modulus: *n,
            },
        }
    }

    /// For a canonical pivot `d`, `Some(q)` with `q*d = a` when `a` lies in `(d)`.
    pub(crate) fn exact_quotient(&self, a: &Scalar, d: &Scalar) -> Option<Scalar> {
        match self {
            BaseRing::Rationals => Some(a * &d.inverse()?),
            BaseRing::Modular(n) => {
                let (x, y) = (a.residue(), d.residue());
                (x % y == 0).then(|| Scalar::Residue {
                    value: x / y,
                    modulus: *n,
                })
            }
        }
    }
}

impl fmt::Display for BaseRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseRing::Rationals => write!(f, "Q"),
            BaseRing::Modular(n) => write!(f, "Z/{n}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn ring(&self) -> BaseRing {
        match self {
            Scalar::Rational(_) => BaseRing::Rationals,
            Scalar::Residue { modulus, .. } => BaseRing::Modular(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    pub fn is_unit(&self) -> bool {
        match self {
            Scalar::Rational(q) => !q.is_zero(),
            Scalar::Residue { value, modulus } => gcd_u64(*value, *modulus) == 1,
        }
    }

    pub fn inverse(&self) -> Option<Scalar> {
        match self {
            Scalar::Rational(q) => (!q.is_zero()).then(|| Scalar::Rational(q.recip())),
            Scalar::Residue { value, modulus } => {
                mod_inverse(*value, *modulus).map(|v| Scalar::Residue {
                    value: v,
                    modulus: *modulus,
                })
            }
        }
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.ring().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    fn residue(&self) -> u64 {
        match self {
            Scalar::Residue { value, .. } => *value,
            Scalar::Rational(_) => panic!("residue requested from a rational scalar"),
        }
    }

    fn binop(
        &self,
        rhs: &Scalar,
        q: impl Fn(&BigRational, &BigRational) -> BigRational,
        z: impl Fn(u128, u128, u128) -> u128,
    ) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(q(a, b)),
            (
                Scalar::Residue { value: a, modulus: n },
                Scalar::Residue { value: b, modulus: m },
            ) if n == m => Scalar::Residue {
                value: z(*a as u128, *b as u128, *n as u128) as u64,
                modulus: *n,
            },
            _ => panic!("scalar ring mismatch: {self} and {rhs}"),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a.cmp(b),
            (Scalar::Residue { value: a, modulus: n }, Scalar::Residue { value: b, modulus: m }) => {
                (n, a).cmp(&(m, b))
            }
            (Scalar::Rational(_), Scalar::Residue { .. }) => Ordering::Less,
            (Scalar::Residue { .. }, Scalar::Rational(_)) => Ordering::Greater,
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.binop(rhs, |a, b| a + b, |a, b, n| (a + b) % n)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.binop(rhs, |a, b| a - b, |a, b, n| (a + n - b) % n)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.binop(rhs, |a, b| a * b, |a, b, n| (a * b) % n)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

impl Scalar {
    /// Numeric sign for rationals; residues are never negative.
    pub fn is_negative(&self) -> bool {
        matches!(self, Scalar::Rational(q) if q.is_negative())
    }
}

pub(crate) fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

pub fn mod_inverse(a: u64, n: u64) -> Option<u64> {
    if n == 1 {
        return Some(0);
    }
    let (g, s, _) = ext_gcd(a as i128, n as i128);
    (g == 1).then(|| s.rem_euclid(n as i128) as u64)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime-power factorization by trial division.
pub fn factor_prime_powers(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_rings() {
        assert_eq!(BaseRing::parse("Q").unwrap(), BaseRing::Rationals);
        assert_eq!(BaseRing::parse("Z/6").unwrap(), BaseRing::Modular(6));
        assert_eq!(BaseRing::parse("F_5").unwrap(), BaseRing::Modular(5));
        assert!(BaseRing::parse("F_6").is_err());
        assert!(BaseRing::parse("Z/1").is_err());
        let err = BaseRing::parse("Z").unwrap_err();
        assert_eq!(
            err.to_string(),
            "unsupported base ring \"Z\": supported rings are Q and Z/<n> with n >= 2"
        );
    }

    #[test]
    fn modular_arithmetic_is_exact() {
        let r = BaseRing::Modular(7);
        let a = r.from_i64(-3);
        assert_eq!(a, r.from_i64(4));
        let inv = a.inverse().unwrap();
        assert!((&a * &inv).is_one());
        assert!(BaseRing::Modular(4).from_i64(2).inverse().is_none());
    }

    #[test]
    fn rational_parse_and_display() {
        let q = BaseRing::Rationals;
        let x = q.parse_scalar("6/8").unwrap();
        assert_eq!(x.to_string(), "3/4");
        assert_eq!(q.parse_scalar("-2").unwrap().to_string(), "-2");
        let z5 = BaseRing::Modular(5);
        assert_eq!(z5.parse_scalar("1/2").unwrap(), z5.from_i64(3));
        assert!(BaseRing::Modular(4).parse_scalar("1/2").is_err());
    }

    #[test]
    fn unit_normalizer_gives_divisor() {
        let r = BaseRing::Modular(12);
        for v in 1..12 {
            let a = r.from_i64(v);
            let u = r.unit_normalizer(&a);
            assert!(u.is_unit());
            let p = &u * &a;
            assert_eq!(p.residue(), gcd_u64(v as u64, 12));
        }
    }
}
