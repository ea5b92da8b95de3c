use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::poly;
use crate::error::{Error, Result};

/// A Euclidean domain the library can compute in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Ring {
    Integers,
    PolynomialsOverPrimeField { characteristic: u64 },
}

/// An element of some [`Ring`].
///
/// Elements do not carry their ring; every operation goes through the
/// `Ring` value so that polynomial coefficients can be reduced.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Elem {
    Int(BigInt),
    /// Coefficients, constant term first, leading coefficient nonzero.
    Poly(Vec<u64>),
}

impl Ring {
    /// `F_p[x]`. The characteristic must be a prime below `2^32` so that
    /// coefficient products fit in a `u64`.
    pub fn polynomials(characteristic: u64) -> Result<Ring> {
        if characteristic >= 1 << 32 {
            return Err(Error::InvalidRing(format!(
                "characteristic {characteristic} exceeds 2^32"
            )));
        }
        if !is_prime_u64(characteristic) {
            return Err(Error::InvalidRing(format!(
                "characteristic {characteristic} is not prime"
            )));
        }
        Ok(Ring::PolynomialsOverPrimeField { characteristic })
    }

    pub fn characteristic(&self) -> Option<u64> {
        match *self {
            Ring::Integers => None,
            Ring::PolynomialsOverPrimeField { characteristic } => Some(characteristic),
        }
    }

    pub fn zero(&self) -> Elem {
        match self {
            Ring::Integers => Elem::Int(BigInt::zero()),
            Ring::PolynomialsOverPrimeField { .. } => Elem::Poly(Vec::new()),
        }
    }

    pub fn one(&self) -> Elem {
        self.from_i64(1)
    }

    /// Image of an integer under the unique ring map `Z -> R`.
    pub fn from_i64(&self, n: i64) -> Elem {
        match *self {
            Ring::Integers => Elem::Int(BigInt::from(n)),
            Ring::PolynomialsOverPrimeField { characteristic: p } => {
                let c = n.rem_euclid(p as i64) as u64;
                Elem::Poly(poly::trim(vec![c]))
            }
        }
    }

    /// The indeterminate `x`, for polynomial rings.
    pub fn x(&self) -> Option<Elem> {
        match *self {
            Ring::Integers => None,
            Ring::PolynomialsOverPrimeField { .. } => Some(Elem::Poly(vec![0, 1])),
        }
    }

    /// Builds a polynomial from coefficients (constant term first).
    pub fn poly(&self, coeffs: &[u64]) -> Elem {
        let p = self.characteristic().expect("poly() on the integers");
        Elem::Poly(poly::trim(coeffs.iter().map(|c| c % p).collect()))
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        match a {
            Elem::Int(x) => x.is_zero(),
            Elem::Poly(c) => c.is_empty(),
        }
    }

    pub fn is_one(&self, a: &Elem) -> bool {
        *a == self.one()
    }

    pub fn is_unit(&self, a: &Elem) -> bool {
        match a {
            Elem::Int(x) => x.magnitude().is_one(),
            Elem::Poly(c) => c.len() == 1,
        }
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (a, b) {
            (Elem::Int(x), Elem::Int(y)) => Elem::Int(x + y),
            (Elem::Poly(x), Elem::Poly(y)) => Elem::Poly(poly::add(x, y, self.p())),
            _ => mixed(),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        match (a, b) {
            (Elem::Int(x), Elem::Int(y)) => Elem::Int(x - y),
            (Elem::Poly(x), Elem::Poly(y)) => Elem::Poly(poly::sub(x, y, self.p())),
            _ => mixed(),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match a {
            Elem::Int(x) => Elem::Int(-x),
            Elem::Poly(x) => Elem::Poly(poly::neg(x, self.p())),
        }
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (a, b) {
            (Elem::Int(x), Elem::Int(y)) => Elem::Int(x * y),
            (Elem::Poly(x), Elem::Poly(y)) => Elem::Poly(poly::mul(x, y, self.p())),
            _ => mixed(),
        }
    }

    pub fn pow(&self, a: &Elem, exp: u32) -> Elem {
        (0..exp).fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    /// Euclidean division: `a = q*b + r` with `r = 0` or `N(r) < N(b)`.
    /// Integer remainders are nonnegative.
    ///
    /// Panics when `b` is zero.
    pub fn div_rem(&self, a: &Elem, b: &Elem) -> (Elem, Elem) {
        match (a, b) {
            (Elem::Int(x), Elem::Int(y)) => {
                assert!(!y.is_zero(), "division by zero");
                let (q, r) = x.div_mod_floor(y);
                if r.is_negative() {
                    // y < 0: shift into [0, |y|)
                    (Elem::Int(q + 1), Elem::Int(r - y))
                } else {
                    (Elem::Int(q), Elem::Int(r))
                }
            }
            (Elem::Poly(x), Elem::Poly(y)) => {
                let (q, r) = poly::div_rem(x, y, self.p());
                (Elem::Poly(q), Elem::Poly(r))
            }
            _ => mixed(),
        }
    }

    /// Canonical representative of `a` modulo `m`: in `0..|m|` for
    /// integers, of degree below `deg m` for polynomials, and `a` itself
    /// when `m` is zero.
    pub fn residue(&self, a: &Elem, m: &Elem) -> Elem {
        if self.is_zero(m) {
            return a.clone();
        }
        self.div_rem(a, m).1
    }

    /// `true` iff `b` divides `a`.
    pub fn divides(&self, b: &Elem, a: &Elem) -> bool {
        if self.is_zero(b) {
            return self.is_zero(a);
        }
        self.is_zero(&self.div_rem(a, b).1)
    }

    /// `a / b`, when the division is exact.
    pub fn exact_div(&self, a: &Elem, b: &Elem) -> Option<Elem> {
        if self.is_zero(b) {
            return None;
        }
        let (q, r) = self.div_rem(a, b);
        self.is_zero(&r).then_some(q)
    }

    /// Compares Euclidean norms: absolute value for integers, degree for
    /// polynomials. Zero is the smallest.
    pub fn norm_cmp(&self, a: &Elem, b: &Elem) -> Ordering {
        match (a, b) {
            (Elem::Int(x), Elem::Int(y)) => x.magnitude().cmp(y.magnitude()),
            (Elem::Poly(x), Elem::Poly(y)) => x.len().cmp(&y.len()),
            _ => mixed(),
        }
    }

    /// Splits `a` as `unit * normal` and returns `(normal, unit^-1)`, with
    /// `normal` nonnegative or monic.
    pub fn normalize(&self, a: &Elem) -> (Elem, Elem) {
        match a {
            Elem::Int(x) => {
                if x.is_negative() {
                    (Elem::Int(-x), Elem::Int(BigInt::from(-1)))
                } else {
                    (a.clone(), self.one())
                }
            }
            Elem::Poly(c) => {
                let (m, inv) = poly::monic(c, self.p());
                (Elem::Poly(m), Elem::Poly(vec![inv]))
            }
        }
    }

    pub fn normal(&self, a: &Elem) -> Elem {
        self.normalize(a).0
    }

    /// Inverse of a unit.
    pub fn unit_inverse(&self, u: &Elem) -> Option<Elem> {
        if !self.is_unit(u) {
            return None;
        }
        Some(match u {
            Elem::Int(x) => Elem::Int(x.clone()),
            Elem::Poly(c) => Elem::Poly(vec![poly::inv_mod(c[0], self.p())]),
        })
    }

    /// Extended Euclid: `(g, s, t)` with `g = s*a + t*b` and `g` the
    /// normalized gcd. `gcd(0, 0) = (0, 0, 0)`.
    pub fn ext_gcd(&self, a: &Elem, b: &Elem) -> (Elem, Elem, Elem) {
        if self.is_zero(a) && self.is_zero(b) {
            return (self.zero(), self.zero(), self.zero());
        }
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (self.one(), self.zero());
        let (mut t0, mut t1) = (self.zero(), self.one());
        while !self.is_zero(&r1) {
            let (q, r) = self.div_rem(&r0, &r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = self.sub(&s0, &self.mul(&q, &s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = self.sub(&t0, &self.mul(&q, &t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        let (g, u) = self.normalize(&r0);
        (g, self.mul(&u, &s0), self.mul(&u, &t0))
    }

    pub fn gcd(&self, a: &Elem, b: &Elem) -> Elem {
        self.ext_gcd(a, b).0
    }

    pub fn lcm(&self, a: &Elem, b: &Elem) -> Elem {
        if self.is_zero(a) || self.is_zero(b) {
            return self.zero();
        }
        let g = self.gcd(a, b);
        self.normal(&self.mul(&self.exact_div(a, &g).expect("gcd divides"), b))
    }

    /// Whether `a` generates a maximal ideal: a prime integer or an
    /// irreducible polynomial.
    pub fn is_prime_element(&self, a: &Elem) -> bool {
        match a {
            Elem::Int(x) => is_prime_big(x.magnitude()),
            Elem::Poly(c) => poly::is_irreducible(c, self.p()),
        }
    }

    /// `|R/(m)|` for nonzero `m`; `None` when the quotient is infinite.
    pub fn quotient_order(&self, m: &Elem) -> Option<BigUint> {
        if self.is_zero(m) {
            return None;
        }
        Some(match m {
            Elem::Int(x) => x.magnitude().clone(),
            Elem::Poly(c) => BigUint::from(self.p()).pow((c.len() - 1) as u32),
        })
    }

    /// All canonical residues modulo a nonzero `m`, in increasing order.
    pub fn residues(&self, m: &Elem) -> Vec<Elem> {
        assert!(!self.is_zero(m), "residues modulo zero are infinite");
        match m {
            Elem::Int(x) => {
                let n = x.magnitude().to_u64().expect("modulus too large to enumerate");
                (0..n).map(|k| Elem::Int(BigInt::from(k))).collect()
            }
            Elem::Poly(c) => {
                let p = self.p();
                let d = c.len() - 1;
                let count = p.checked_pow(d as u32).expect("residue ring too large to enumerate");
                (0..count)
                    .map(|mut k| {
                        let mut coeffs = Vec::with_capacity(d);
                        for _ in 0..d {
                            coeffs.push(k % p);
                            k /= p;
                        }
                        Elem::Poly(poly::trim(coeffs))
                    })
                    .collect()
            }
        }
    }

    /// Canonical text for an element: decimal integers, `x^2+x+1` style
    /// polynomials.
    pub fn format(&self, a: &Elem) -> String {
        match a {
            Elem::Int(x) => x.to_string(),
            Elem::Poly(c) => poly::format(c),
        }
    }

    /// Parses text produced by [`Ring::format`]. Polynomial input must be
    /// canonical.
    pub fn parse(&self, s: &str) -> Result<Elem> {
        match *self {
            Ring::Integers => s
                .parse::<BigInt>()
                .map(Elem::Int)
                .map_err(|_| Error::Parse(format!("`{s}` is not a decimal integer"))),
            Ring::PolynomialsOverPrimeField { characteristic } => poly::parse(s, characteristic)
                .map(Elem::Poly)
                .map_err(Error::Parse),
        }
    }

    /// Whether `a` belongs to this ring and is in canonical storage form.
    pub fn owns(&self, a: &Elem) -> bool {
        match (self, a) {
            (Ring::Integers, Elem::Int(_)) => true,
            (Ring::PolynomialsOverPrimeField { characteristic }, Elem::Poly(c)) => {
                c.last() != Some(&0) && c.iter().all(|x| x < characteristic)
            }
            _ => false,
        }
    }

    fn p(&self) -> u64 {
        self.characteristic().expect("polynomial operation on the integers")
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => write!(f, "Z"),
            Ring::PolynomialsOverPrimeField { characteristic } => write!(f, "F_{characteristic}[x]"),
        }
    }
}

impl From<i64> for Elem {
    fn from(n: i64) -> Elem {
        Elem::Int(BigInt::from(n))
    }
}

impl Elem {
    pub fn as_int(&self) -> Option<&BigInt> {
        match self {
            Elem::Int(x) => Some(x),
            Elem::Poly(_) => None,
        }
    }
}

// Integers are written as JSON numbers when they fit in an i64 and as
// decimal strings otherwise; polynomials as coefficient arrays.
impl Serialize for Elem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Elem::Int(x) => match x.to_i64() {
                Some(v) => s.serialize_i64(v),
                None => s.serialize_str(&x.to_string()),
            },
            Elem::Poly(c) => c.serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for Elem {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Small(i64),
            Text(String),
            Coeffs(Vec<u64>),
        }
        match Repr::deserialize(d)? {
            Repr::Small(v) => Ok(Elem::from(v)),
            Repr::Text(t) => t
                .parse::<BigInt>()
                .map(Elem::Int)
                .map_err(|_| serde::de::Error::custom(format!("`{t}` is not a decimal integer"))),
            Repr::Coeffs(c) => Ok(Elem::Poly(c)),
        }
    }
}

fn mixed() -> ! {
    panic!("elements from different rings mixed in one operation")
}

pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        acc
    };
    // These bases are deterministic for every 64-bit input.
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn is_prime_big(n: &BigUint) -> bool {
    if let Some(v) = n.to_u64() {
        return is_prime_u64(v);
    }
    if n.is_even() {
        return false;
    }
    // Miller-Rabin with the first prime bases; probabilistic beyond 2^64.
    let one = BigUint::one();
    let n1 = n - &one;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    'witness: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53] {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&BigUint::from(2u32), n);
            if x == n1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: i64) -> Elem {
        Elem::from(n)
    }

    #[test]
    fn ext_gcd_integers() {
        let r = Ring::Integers;
        assert_eq!(r.ext_gcd(&z(12), &z(8)), (z(4), z(1), z(-1)));
        let (g, s, t) = r.ext_gcd(&z(-7), &z(0));
        assert_eq!(g, z(7));
        assert_eq!(s, z(-1));
        assert_eq!(t, z(0));
        assert_eq!(r.ext_gcd(&z(0), &z(0)), (z(0), z(0), z(0)));
    }

    #[test]
    fn ext_gcd_polynomials() {
        let r = Ring::polynomials(2).unwrap();
        let a = r.poly(&[0, 1, 1]); // x^2 + x
        let b = r.poly(&[0, 1]); // x
        assert_eq!(r.ext_gcd(&a, &b), (b.clone(), r.zero(), r.one()));
    }

    #[test]
    fn euclidean_division_reduces_norm() {
        let r = Ring::Integers;
        for a in -20..20 {
            for b in (-7..8).filter(|&b| b != 0) {
                let (q, rem) = r.div_rem(&z(a), &z(b));
                assert_eq!(r.add(&r.mul(&q, &z(b)), &rem), z(a));
                assert_eq!(r.norm_cmp(&rem, &z(b)), Ordering::Less);
                assert!(!rem.as_int().unwrap().is_negative());
            }
        }
    }

    #[test]
    fn rejects_composite_characteristic() {
        assert!(Ring::polynomials(4).is_err());
        assert!(Ring::polynomials(1).is_err());
        assert!(Ring::polynomials(3).is_ok());
    }

    #[test]
    fn prime_elements() {
        let r = Ring::Integers;
        assert!(r.is_prime_element(&z(5)));
        assert!(r.is_prime_element(&z(-5)));
        assert!(!r.is_prime_element(&z(6)));
        assert!(!r.is_prime_element(&z(1)));
        let big: BigInt = "170141183460469231731687303715884105727".parse().unwrap();
        assert!(r.is_prime_element(&Elem::Int(big)));
        let f3 = Ring::polynomials(3).unwrap();
        assert!(f3.is_prime_element(&f3.poly(&[1, 1])));
    }

    #[test]
    fn residues_enumerate_quotient() {
        let r = Ring::polynomials(3).unwrap();
        let m = r.poly(&[0, 0, 1]);
        let res = r.residues(&m);
        assert_eq!(res.len(), 9);
        assert_eq!(r.quotient_order(&m).unwrap(), BigUint::from(9u32));
        assert_eq!(Ring::Integers.residues(&z(-4)).len(), 4);
    }
}
