//! Reduction of cyclotomic integers modulo a prime ideal above p.
//!
//! Write N = p^a·n′ with p ∤ n′. The residue field of Z[ζ_N] at a prime above
//! p is F_{p^f}, f = ord_{n′}(p). The field is built as F_p[x]/(m) with m the
//! first monic irreducible of degree f, ordering candidates by the integer
//! whose base-p digits are their coefficients from the constant term up.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::cyclo::CycloNum;
use crate::error::{Error, Result};
use crate::numtheory::{factor, mod_inverse, multiplicative_order, p_split};

/// An element of F_{p^f} as coefficients of 1, x, …, x^(f-1).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeFieldElem {
    coords: Vec<u64>,
}

impl PrimeFieldElem {
    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

impl fmt::Debug for PrimeFieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coords)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteField {
    p: u64,
    f: u32,
    modulus: Vec<u64>,
}

fn poly_from_index(mut idx: u64, p: u64, deg: u32) -> Vec<u64> {
    let mut c = Vec::with_capacity(deg as usize + 1);
    for _ in 0..deg {
        c.push(idx % p);
        idx /= p;
    }
    c.push(1);
    c
}

/// Remainder of `a` modulo the monic polynomial `m` over F_p.
fn poly_rem(mut a: Vec<u64>, m: &[u64], p: u64) -> Vec<u64> {
    while a.len() >= m.len() {
        let lead = a[a.len() - 1] % p;
        let shift = a.len() - m.len();
        for (i, mi) in m.iter().enumerate() {
            a[shift + i] = (a[shift + i] + p * p - lead * mi % p) % p;
        }
        a.pop();
    }
    a
}

impl FiniteField {
    pub fn new(p: u64, f: u32) -> Self {
        assert!(f >= 1);
        let q = p.pow(f);
        let modulus = (0..q)
            .map(|i| poly_from_index(i, p, f))
            .find(|cand| {
                (1..=f / 2).all(|d| {
                    (0..p.pow(d)).all(|j| {
                        let g = poly_from_index(j, p, d);
                        poly_rem(cand.clone(), &g, p).iter().any(|&v| v != 0)
                    })
                })
            })
            .expect("an irreducible polynomial exists in every degree");
        FiniteField { p, f, modulus }
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.f
    }

    pub fn size(&self) -> u64 {
        self.p.pow(self.f)
    }

    /// Monic modulus, constant term first.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// The element whose base-p digits are its coordinates.
    pub fn elem(&self, mut idx: u64) -> PrimeFieldElem {
        let mut coords = Vec::with_capacity(self.f as usize);
        for _ in 0..self.f {
            coords.push(idx % self.p);
            idx /= self.p;
        }
        PrimeFieldElem { coords }
    }

    pub fn zero(&self) -> PrimeFieldElem {
        self.elem(0)
    }

    pub fn one(&self) -> PrimeFieldElem {
        self.elem(1)
    }

    pub fn from_int(&self, n: &BigInt) -> PrimeFieldElem {
        let r = n
            .mod_floor(&BigInt::from(self.p))
            .to_u64()
            .expect("small residue");
        self.elem(r)
    }

    pub fn add(&self, a: &PrimeFieldElem, b: &PrimeFieldElem) -> PrimeFieldElem {
        PrimeFieldElem {
            coords: a
                .coords
                .iter()
                .zip(&b.coords)
                .map(|(x, y)| (x + y) % self.p)
                .collect(),
        }
    }

    pub fn neg(&self, a: &PrimeFieldElem) -> PrimeFieldElem {
        PrimeFieldElem {
            coords: a.coords.iter().map(|x| (self.p - x) % self.p).collect(),
        }
    }

    pub fn scale(&self, k: u64, a: &PrimeFieldElem) -> PrimeFieldElem {
        PrimeFieldElem {
            coords: a.coords.iter().map(|x| k % self.p * x % self.p).collect(),
        }
    }

    pub fn mul(&self, a: &PrimeFieldElem, b: &PrimeFieldElem) -> PrimeFieldElem {
        let f = self.f as usize;
        let mut prod = vec![0u64; 2 * f - 1];
        for (i, x) in a.coords.iter().enumerate() {
            for (j, y) in b.coords.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        let mut r = poly_rem(prod, &self.modulus, self.p);
        r.resize(f, 0);
        PrimeFieldElem { coords: r }
    }

    pub fn pow(&self, a: &PrimeFieldElem, mut e: u64) -> PrimeFieldElem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: &PrimeFieldElem) -> u64 {
        assert!(!a.is_zero(), "zero has no multiplicative order");
        let mut n = self.size() - 1;
        for (r, _) in factor(n) {
            while n.is_multiple_of(r) && self.pow(a, n / r) == self.one() {
                n /= r;
            }
        }
        n
    }

    /// The least generator of the multiplicative group in index order.
    pub fn primitive_element(&self) -> PrimeFieldElem {
        let q = self.size();
        (1..q)
            .map(|i| self.elem(i))
            .find(|x| self.order(x) == q - 1)
            .expect("multiplicative group is cyclic")
    }
}

/// A fixed ring homomorphism Z[ζ_N] → F_{p^f}.
#[derive(Debug, Clone)]
pub struct ResidueMap {
    ambient_order: u64,
    p: u64,
    p_power: u64,
    regular_part: u64,
    field: FiniteField,
    root_image: PrimeFieldElem,
    zeta_image: PrimeFieldElem,
}

/// Builds the reduction map for Q(ζ_N) at p with deterministic choices.
pub fn build_residue_map(n: u64, p: u64) -> ResidueMap {
    assert!(n >= 1);
    let (a, n1) = p_split(n, p);
    let f = multiplicative_order(p % n1.max(1), n1) as u32;
    let field = FiniteField::new(p, f);
    let g = field.primitive_element();
    let root_image = field.pow(&g, (field.size() - 1) / n1);
    let pa = p.pow(a);
    let x = mod_inverse(pa % n1, n1).expect("p^a is a unit mod n'");
    let zeta_image = field.pow(&root_image, x);
    ResidueMap {
        ambient_order: n,
        p,
        p_power: pa,
        regular_part: n1,
        field,
        root_image,
        zeta_image,
    }
}

impl ResidueMap {
    pub fn ambient_order(&self) -> u64 {
        self.ambient_order
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn field_degree(&self) -> u32 {
        self.field.degree()
    }

    pub fn regular_part(&self) -> u64 {
        self.regular_part
    }

    pub fn p_power(&self) -> u64 {
        self.p_power
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn modulus(&self) -> &[u64] {
        self.field.modulus()
    }

    /// Image of ζ_{n′}, of exact multiplicative order n′.
    pub fn root_image(&self) -> &PrimeFieldElem {
        &self.root_image
    }

    /// Image of ζ_N.
    pub fn zeta_image(&self) -> &PrimeFieldElem {
        &self.zeta_image
    }

    /// Reduces an algebraic integer whose order divides the ambient order.
    pub fn reduce(&self, a: &CycloNum) -> Result<PrimeFieldElem> {
        if !a.is_algebraic_integer() {
            return Err(Error::NotIntegral(a.to_string()));
        }
        let m = a.order();
        if !self.ambient_order.is_multiple_of(m) {
            return Err(Error::Precondition(format!(
                "order {m} does not divide ambient order {}",
                self.ambient_order
            )));
        }
        let scale = self.ambient_order / m;
        let mut acc = self.field.zero();
        for (e, c) in a.coeffs() {
            let z = self.field.pow(&self.zeta_image, e * scale);
            let k = self.field.from_int(c.numer());
            acc = self.field.add(&acc, &self.field.mul(&k, &z));
        }
        Ok(acc)
    }
}

/// Free-function form of [`ResidueMap::reduce`].
pub fn reduce(m: &ResidueMap, a: &CycloNum) -> Result<PrimeFieldElem> {
    m.reduce(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::parse_cyclo;

    fn c(s: &str) -> CycloNum {
        parse_cyclo(s).unwrap()
    }

    #[test]
    fn field_sizes() {
        let m = build_residue_map(4, 2);
        assert_eq!((m.regular_part(), m.field_degree(), m.field().size()), (1, 1, 2));
        let m = build_residue_map(5, 5);
        assert_eq!((m.regular_part(), m.field_degree(), m.field().size()), (1, 1, 5));
        let m = build_residue_map(12, 3);
        assert_eq!((m.regular_part(), m.field_degree(), m.field().size()), (4, 2, 9));
    }

    #[test]
    fn first_irreducible_moduli() {
        // x^2 + 1 is the first monic irreducible quadratic over F_3 in digit order
        assert_eq!(FiniteField::new(3, 2).modulus(), &[1, 0, 1]);
        // x^2 + x + 1 over F_2
        assert_eq!(FiniteField::new(2, 2).modulus(), &[1, 1, 1]);
        assert_eq!(FiniteField::new(2, 3).modulus(), &[1, 1, 0, 1]);
    }

    #[test]
    fn reduction_examples() {
        let m = build_residue_map(3, 3);
        assert_eq!(m.reduce(&c("E(3)")).unwrap(), m.field().one());
        let m = build_residue_map(2, 2);
        assert_eq!(m.reduce(&c("7")).unwrap(), m.field().one());
        let m = build_residue_map(12, 3);
        let i = m.reduce(&c("E(4)")).unwrap();
        let f = m.field();
        assert_eq!(f.mul(&i, &i), f.neg(&f.one()));
        assert_eq!(f.order(&i), 4);
        assert!(matches!(m.reduce(&c("1/2")), Err(Error::NotIntegral(_))));
    }

    #[test]
    fn root_orders() {
        for (n, p) in [(12, 3), (30, 2), (60, 5), (24, 2), (7, 2), (21, 5)] {
            let m = build_residue_map(n, p);
            assert_eq!(m.field().order(m.root_image()), m.regular_part(), "N={n} p={p}");
            let z = c(&format!("E({n})"));
            let pa = m.p_power();
            let zp = m.reduce(&c(&format!("E({n})^{pa}"))).unwrap();
            assert_eq!(m.field().order(&zp), m.regular_part());
            assert_eq!(m.field().order(&m.reduce(&z).unwrap()), m.regular_part());
            let collapse = m.reduce(&c(&format!("E({n})^{}", m.regular_part()))).unwrap();
            assert_eq!(collapse, m.field().one());
        }
    }
}
