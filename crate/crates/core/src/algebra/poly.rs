//! Univariate polynomials over a field (Q or F_p), just enough to find the
//! roots of a minimal polynomial that splits into distinct linear factors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalars::{BaseRing, Scalar};

/// Coefficients, lowest degree first, with no trailing zeros.
pub(crate) type Poly = Vec<Scalar>;

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(Scalar::is_zero) {
        p.pop();
    }
    p
}

fn degree(p: &Poly) -> Option<usize> {
    p.len().checked_sub(1)
}

fn mul(ring: &BaseRing, a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![ring.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    trim(out)
}

fn sub(a: &Poly, b: &Poly) -> Poly {
    let n = a.len().max(b.len());
    let ring = a.first().or(b.first()).map(Scalar::ring);
    let Some(ring) = ring else { return Vec::new() };
    let z = ring.zero();
    trim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))
            .collect(),
    )
}

fn rem(ring: &BaseRing, a: &Poly, m: &Poly) -> Poly {
    divrem(ring, a, m).1
}

fn divrem(ring: &BaseRing, a: &Poly, m: &Poly) -> (Poly, Poly) {
    let dm = degree(m).expect("division by the zero polynomial");
    let lead_inv = m[dm].inverse().expect("field coefficient");
    let mut r = a.clone();
    let mut q = vec![ring.zero(); a.len().saturating_sub(dm).max(1)];
    while let Some(dr) = degree(&r) {
        if dr < dm {
            break;
        }
        let c = &r[dr] * &lead_inv;
        let shift = dr - dm;
        for (i, x) in m.iter().enumerate() {
            r[i + shift] = &r[i + shift] - &(&c * x);
        }
        q[shift] = c;
        r = trim(r);
    }
    (trim(q), r)
}

fn monic(p: Poly) -> Poly {
    match p.last() {
        Some(l) => {
            let inv = l.inverse().expect("field coefficient");
            p.iter().map(|x| x * &inv).collect()
        }
        None => p,
    }
}

fn gcd(ring: &BaseRing, a: &Poly, b: &Poly) -> Poly {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = rem(ring, &a, &b);
        a = b;
        b = r;
    }
    monic(a)
}

fn derivative(ring: &BaseRing, p: &Poly) -> Poly {
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| &ring.from_i64(i as i64) * c)
            .collect(),
    )
}

fn powmod(ring: &BaseRing, base: &Poly, mut e: u64, m: &Poly) -> Poly {
    let mut acc = vec![ring.one()];
    let mut b = rem(ring, base, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(ring, &mul(ring, &acc, &b), m);
        }
        b = rem(ring, &mul(ring, &b, &b), m);
        e >>= 1;
    }
    acc
}

fn eval(ring: &BaseRing, p: &Poly, x: &Scalar) -> Scalar {
    p.iter().rev().fold(ring.zero(), |acc, c| &(&acc * x) + c)
}

/// The distinct roots of `p` when `p` is a product of distinct linear
/// factors over the field `ring`; `None` otherwise.
pub(crate) fn split_roots(ring: &BaseRing, p: &Poly) -> Option<Vec<Scalar>> {
    let p = monic(trim(p.clone()));
    let d = degree(&p)?;
    if d == 0 {
        return Some(Vec::new());
    }
    if degree(&gcd(ring, &p, &derivative(ring, &p))) != Some(0) {
        return None;
    }
    let mut roots = match ring {
        BaseRing::Rationals => rational_roots(&p),
        BaseRing::Modular(q) if *q <= 1000 => (0..*q as i64)
            .map(|v| ring.from_i64(v))
            .filter(|x| eval(ring, &p, x).is_zero())
            .collect(),
        BaseRing::Modular(q) => {
            if d > 1 {
                // p splits into distinct linear factors iff p divides x^q - x
                let x = vec![ring.zero(), ring.one()];
                if !sub(&powmod(ring, &x, *q, &p), &x).is_empty() {
                    return None;
                }
            }
            let mut out = Vec::new();
            equal_degree_roots(ring, *q, &p, &mut out);
            out
        }
    };
    roots.sort();
    roots.dedup();
    (roots.len() == d).then_some(roots)
}

/// Cantor-Zassenhaus splitting of a squarefree product of linear factors.
fn equal_degree_roots(ring: &BaseRing, q: u64, p: &Poly, out: &mut Vec<Scalar>) {
    match degree(p) {
        None | Some(0) => {}
        Some(1) => out.push(-&(&p[0] * &p[1].inverse().expect("monic"))),
        Some(_) => {
            for a in 0..q {
                let shifted = vec![ring.from_i64(a as i64), ring.one()];
                let h = sub(&powmod(ring, &shifted, (q - 1) / 2, p), &vec![ring.one()]);
                let g = gcd(ring, &h, p);
                let dg = degree(&g).unwrap_or(0);
                if dg > 0 && dg < degree(p).unwrap() {
                    let (other, _) = divrem(ring, p, &g);
                    equal_degree_roots(ring, q, &g, out);
                    equal_degree_roots(ring, q, &monic(other), out);
                    return;
                }
            }
        }
    }
}

fn rational_roots(p: &Poly) -> Vec<Scalar> {
    let ring = BaseRing::Rationals;
    // clear denominators
    let mut lcm = BigInt::one();
    for c in p {
        if let Scalar::Rational(r) = c {
            lcm = lcm.lcm(r.denom());
        }
    }
    let ints: Vec<BigInt> = p
        .iter()
        .map(|c| match c {
            Scalar::Rational(r) => (r * &num_rational::BigRational::from_integer(lcm.clone())).to_integer(),
            Scalar::Residue { .. } => unreachable!("rational polynomial"),
        })
        .collect();
    let mut roots = Vec::new();
    let low = ints.iter().position(|c| !c.is_zero()).unwrap_or(0);
    if low > 0 {
        roots.push(ring.zero());
    }
    let a0 = ints[low].abs();
    let an = ints.last().expect("nonzero").abs();
    let rest: Poly = p[low..].to_vec();
    for num in divisors(&a0) {
        for den in divisors(&an) {
            for sign in [1i64, -1] {
                let cand = Scalar::Rational(num_rational::BigRational::new(
                    &num * BigInt::from(sign),
                    den.clone(),
                ));
                if eval(&ring, &rest, &cand).is_zero() {
                    roots.push(cand);
                }
            }
        }
    }
    roots
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            small.push(d.clone());
            let other = n / &d;
            if other != d {
                large.push(other);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(ring: &BaseRing, cs: &[i64]) -> Poly {
        cs.iter().map(|c| ring.from_i64(*c)).collect()
    }

    #[test]
    fn rational_roots_of_split_polynomial() {
        let q = BaseRing::Rationals;
        // (x - 1)(x + 1)(2x - 3) = 2x^3 - 3x^2 - 2x + 3
        let r = split_roots(&q, &poly(&q, &[3, -2, -3, 2])).unwrap();
        let expected = vec![q.from_i64(-1), q.from_i64(1), q.parse_scalar("3/2").unwrap()];
        assert_eq!(r, expected);
        assert!(split_roots(&q, &poly(&q, &[-2, 0, 1])).is_none());
        assert!(split_roots(&q, &poly(&q, &[0, 0, 1])).is_none());
    }

    #[test]
    fn roots_mod_large_prime() {
        let p = BaseRing::Modular(1_000_003);
        // (x - 5)(x - 7)(x + 2)
        let f = mul(&p, &mul(&p, &poly(&p, &[-5, 1]), &poly(&p, &[-7, 1])), &poly(&p, &[2, 1]));
        let r = split_roots(&p, &f).unwrap();
        assert_eq!(r, vec![p.from_i64(5), p.from_i64(7), p.from_i64(-2)]);
        // x^2 + 1 is irreducible mod 1000003 (which is 3 mod 4)
        assert!(split_roots(&p, &poly(&p, &[1, 0, 1])).is_none());
    }

    #[test]
    fn roots_mod_small_prime() {
        let f2 = BaseRing::Modular(2);
        assert_eq!(split_roots(&f2, &poly(&f2, &[0, 1, 1])).unwrap().len(), 2);
        assert!(split_roots(&f2, &poly(&f2, &[1, 1, 1])).is_none());
    }
}
