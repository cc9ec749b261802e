//! Exact arithmetic in cyclotomic fields.
//!
//! A [`CycloNum`] is stored in the Zumbroich basis of Q(ζ_n) where n is the
//! conductor of the number itself, so structural equality is field equality.

mod basis;
mod conductor;
mod parse;

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numtheory::{gcd, lcm};

pub(crate) use basis::Layout;
pub use conductor::{conductor, conductor_p};
pub use parse::parse_cyclo;

/// An element of Q(ζ_n) in canonical form.
///
/// `order` is the smallest n with the value in Q(ζ_n); it is never 2 mod 4
/// and is 1 exactly for rationals. `coeffs` lists the nonzero Zumbroich
/// coefficients by ascending exponent.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycloNum {
    order: u64,
    coeffs: Vec<(u64, BigRational)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Applies one of the ring operations; the operands are embedded in the
/// cyclotomic field of the lcm of their orders.
pub fn arith(a: &CycloNum, b: &CycloNum, op: ArithOp) -> CycloNum {
    match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
    }
}

impl CycloNum {
    pub fn zero() -> Self {
        CycloNum {
            order: 1,
            coeffs: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::from_rational(BigRational::from_integer(n))
    }

    pub fn from_rational(q: BigRational) -> Self {
        let coeffs = if q.is_zero() { Vec::new() } else { vec![(0, q)] };
        CycloNum { order: 1, coeffs }
    }

    /// ζ_n^e for n ≥ 1 and any integer e.
    pub fn root_of_unity(n: u64, e: i64) -> Self {
        assert!(n > 0, "root of unity of order 0");
        let mut v = vec![BigRational::zero(); n as usize];
        v[e.rem_euclid(n as i64) as usize] = BigRational::one();
        Self::from_dense(n, v)
    }

    /// Builds the canonical number Σ v[e] ζ_n^e from a dense vector of length n.
    pub fn from_dense(n: u64, v: Vec<BigRational>) -> Self {
        assert_eq!(v.len() as u64, n);
        let (n, mut v) = if n % 4 == 2 {
            let mut w = vec![BigRational::zero(); 2 * n as usize];
            for (e, c) in v.into_iter().enumerate() {
                w[2 * e] = c;
            }
            (2 * n, w)
        } else {
            (n, v)
        };
        Layout::new(n).canonicalize(&mut v);
        let (order, v) = Layout::descend(n, v);
        let coeffs = v
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (e as u64, c))
            .collect();
        CycloNum { order, coeffs }
    }

    /// Dense coefficients over ζ_l, l a multiple of the order (not canonical at l).
    pub fn dense_at(&self, l: u64) -> Vec<BigRational> {
        assert!(
            l.is_multiple_of(self.order),
            "{} does not divide {}",
            self.order,
            l
        );
        let scale = l / self.order;
        let mut v = vec![BigRational::zero(); l as usize];
        for (e, c) in &self.coeffs {
            v[(e * scale) as usize] = c.clone();
        }
        v
    }

    /// Canonical Zumbroich coordinates in Q(ζ_l) for l a multiple of the
    /// order with l not 2 mod 4. Entries are indexed by exponent.
    pub fn coordinates_at(&self, l: u64) -> Vec<BigRational> {
        assert!(l % 4 != 2);
        let mut v = self.dense_at(l);
        Layout::new(l).canonicalize(&mut v);
        v
    }

    /// The conductor of this single number (its stored order).
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (u64, &BigRational)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.order == 1 && self.coeffs.len() == 1 && self.coeffs[0].1.is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.order == 1
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        match (self.order, self.coeffs.first()) {
            (1, None) => Some(BigRational::zero()),
            (1, Some((_, c))) => Some(c.clone()),
            _ => None,
        }
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational()
            .filter(|q| q.is_integer())
            .map(|q| q.to_integer())
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.as_integer().and_then(|n| n.to_i64())
    }

    /// True iff the number lies in Z[ζ_n], the full ring of integers.
    pub fn is_algebraic_integer(&self) -> bool {
        self.coeffs.iter().all(|(_, c)| c.is_integer())
    }

    /// True iff the number lies in Z_(p)[ζ_n], i.e. no coefficient has a
    /// denominator divisible by p.
    pub fn is_p_integral(&self, p: u64) -> bool {
        let p = BigInt::from(p);
        self.coeffs.iter().all(|(_, c)| !(c.denom() % &p).is_zero())
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        CycloNum {
            order: self.order,
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, c * q)).collect(),
        }
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(&BigRational::from_integer(BigInt::from(k)))
    }

    /// The Galois automorphism ζ ↦ ζ^k.
    pub fn galois(&self, k: i64) -> Result<Self> {
        let n = self.order;
        let kk = k.rem_euclid(n as i64) as u64;
        if gcd(kk, n) != 1 {
            return Err(Error::NotCoprime { k, n });
        }
        if n == 1 || kk == 1 {
            return Ok(self.clone());
        }
        let mut v = vec![BigRational::zero(); n as usize];
        for (e, c) in &self.coeffs {
            v[(e * kk % n) as usize] = c.clone();
        }
        Ok(Self::from_dense(n, v))
    }

    /// Complex conjugation, i.e. `galois(-1)`.
    pub fn conj(&self) -> Self {
        self.galois(-1).expect("-1 is a unit")
    }

    /// Multiplicative inverse: the product of the nontrivial Galois
    /// conjugates divided by the (rational) norm.
    pub fn invert(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(q.recip()));
        }
        let n = self.order as i64;
        let mut others = CycloNum::one();
        for k in 2..n {
            if gcd(k as u64, n as u64) == 1 {
                others = &others * &self.galois(k)?;
            }
        }
        let norm = (self * &others)
            .as_rational()
            .expect("norm of a cyclotomic number is rational");
        Ok(others.scale(&norm.recip()))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.invert()?)
    }

    fn combine(a: &Self, b: &Self, sign: i8) -> Self {
        let l = lcm(a.order, b.order);
        let mut v = a.dense_at(l);
        let sb = l / b.order;
        for (e, c) in &b.coeffs {
            let slot = &mut v[(e * sb) as usize];
            if sign > 0 {
                *slot += c;
            } else {
                *slot -= c;
            }
        }
        Self::from_dense(l, v)
    }

    fn product(a: &Self, b: &Self) -> Self {
        if a.is_zero() || b.is_zero() {
            return Self::zero();
        }
        if let Some(q) = a.as_rational() {
            return b.scale(&q);
        }
        if let Some(q) = b.as_rational() {
            return a.scale(&q);
        }
        let l = lcm(a.order, b.order);
        let (sa, sb) = (l / a.order, l / b.order);
        let mut v = vec![BigRational::zero(); l as usize];
        for (ea, ca) in &a.coeffs {
            for (eb, cb) in &b.coeffs {
                v[((ea * sa + eb * sb) % l) as usize] += ca * cb;
            }
        }
        Self::from_dense(l, v)
    }
}

impl Default for CycloNum {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for CycloNum {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl<'a> Add<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn add(self, rhs: &CycloNum) -> CycloNum {
        CycloNum::combine(self, rhs, 1)
    }
}

impl<'a> Sub<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn sub(self, rhs: &CycloNum) -> CycloNum {
        CycloNum::combine(self, rhs, -1)
    }
}

impl<'a> Mul<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn mul(self, rhs: &CycloNum) -> CycloNum {
        CycloNum::product(self, rhs)
    }
}

impl Add for CycloNum {
    type Output = CycloNum;
    fn add(self, rhs: CycloNum) -> CycloNum {
        &self + &rhs
    }
}

impl Sub for CycloNum {
    type Output = CycloNum;
    fn sub(self, rhs: CycloNum) -> CycloNum {
        &self - &rhs
    }
}

impl Mul for CycloNum {
    type Output = CycloNum;
    fn mul(self, rhs: CycloNum) -> CycloNum {
        &self * &rhs
    }
}

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum {
            order: self.order,
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        -&self
    }
}

impl Sum for CycloNum {
    fn sum<I: Iterator<Item = CycloNum>>(iter: I) -> Self {
        iter.fold(CycloNum::zero(), |acc, x| &acc + &x)
    }
}

impl<'a> Sum<&'a CycloNum> for CycloNum {
    fn sum<I: Iterator<Item = &'a CycloNum>>(iter: I) -> Self {
        iter.fold(CycloNum::zero(), |acc, x| &acc + x)
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for CycloNum {
    /// Prints in the same `E(n)^e` grammar the parser accepts.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (i, (e, c)) in self.coeffs.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            let body = if *e == 0 {
                fmt_rational(&a)
            } else {
                let atom = if *e == 1 {
                    format!("E({})", self.order)
                } else {
                    format!("E({})^{}", self.order, e)
                };
                if a.is_one() {
                    atom
                } else {
                    format!("{}*{}", fmt_rational(&a), atom)
                }
            };
            match (i, neg) {
                (0, false) => {}
                (0, true) | (_, true) => out.push('-'),
                (_, false) => out.push('+'),
            }
            out.push_str(&body);
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloNum({self})")
    }
}
