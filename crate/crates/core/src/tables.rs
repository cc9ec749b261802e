//! Ordinary character tables, class functions and character conductors.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cyclo::{conductor, conductor_p, CycloNum};
use crate::error::{Error, Result};
use crate::numtheory::{crt, factor, gcd, lcm, p_split, primes_dividing};

/// One conjugacy class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassData {
    pub name: String,
    pub size: u64,
    pub element_order: u64,
    /// Prime q to the class of g^q.
    pub power_maps: BTreeMap<u64, usize>,
}

/// An ordinary character table with its power maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharTable {
    group_name: String,
    group_order: u64,
    exponent: u64,
    classes: Vec<ClassData>,
    irreducibles: Vec<Vec<CycloNum>>,
    /// powers[c][k] is the class of g^k, for 0 ≤ k < exponent.
    powers: Vec<Vec<usize>>,
}

impl CharTable {
    /// Builds a table and checks every structural identity.
    pub fn new(
        group_name: impl Into<String>,
        group_order: u64,
        exponent: u64,
        classes: Vec<ClassData>,
        irreducibles: Vec<Vec<CycloNum>>,
    ) -> Result<Self> {
        let group_name = group_name.into();
        let k = classes.len();
        let inv = |m: String| Error::Invariant(format!("{group_name}: {m}"));
        if k == 0 {
            return Err(inv("no classes".into()));
        }
        if group_order == 0 || exponent == 0 {
            return Err(inv("order and exponent must be positive".into()));
        }
        if classes[0].size != 1 || classes[0].element_order != 1 {
            return Err(inv("class 0 must be the identity class".into()));
        }
        let total: u64 = classes.iter().map(|c| c.size).sum();
        if total != group_order {
            return Err(inv(format!(
                "class sizes sum to {total}, group order is {group_order}"
            )));
        }
        let order_lcm = classes.iter().map(|c| c.element_order).fold(1, lcm);
        if !exponent.is_multiple_of(order_lcm) {
            return Err(inv(format!(
                "element orders have lcm {order_lcm}, not dividing exponent {exponent}"
            )));
        }
        for c in &classes {
            if c.size == 0 || !group_order.is_multiple_of(c.size) {
                return Err(inv(format!(
                    "class {} has size {} not dividing |G|",
                    c.name, c.size
                )));
            }
            if c.element_order == 0 || !group_order.is_multiple_of(c.element_order) {
                return Err(inv(format!("class {} has bad element order", c.name)));
            }
            for q in primes_dividing(exponent) {
                let Some(&img) = c.power_maps.get(&q) else {
                    return Err(Error::Missing(format!(
                        "class {} has no power map for prime {q}",
                        c.name
                    )));
                };
                if img >= k {
                    return Err(inv(format!(
                        "power map {q} of class {} points to {img}, out of range",
                        c.name
                    )));
                }
                let want = c.element_order / gcd(c.element_order, q);
                if classes[img].element_order != want {
                    return Err(inv(format!(
                        "power map {q} sends class {} (order {}) to class {} of order {}",
                        c.name, c.element_order, classes[img].name, classes[img].element_order
                    )));
                }
            }
        }
        if irreducibles.len() != k {
            return Err(inv(format!(
                "{} irreducibles for {k} classes",
                irreducibles.len()
            )));
        }
        for (i, row) in irreducibles.iter().enumerate() {
            if row.len() != k {
                return Err(inv(format!("row {i} has {} values, expected {k}", row.len())));
            }
            match row[0].to_i64() {
                Some(d) if d > 0 => {}
                _ => {
                    return Err(inv(format!(
                        "row {i} has degree {} that is not a positive integer",
                        row[0]
                    )))
                }
            }
            for (c, v) in row.iter().enumerate() {
                if !exponent.is_multiple_of(v.order()) {
                    return Err(inv(format!(
                        "value {v} at row {i}, class {c} lies outside Q(zeta_{exponent})"
                    )));
                }
            }
        }
        let mut t = CharTable {
            group_name,
            group_order,
            exponent,
            classes,
            irreducibles,
            powers: Vec::new(),
        };
        t.check_orthogonality()?;
        t.powers = t.build_powers()?;
        Ok(t)
    }

    fn check_orthogonality(&self) -> Result<()> {
        let k = self.classes.len();
        let g = BigRational::from_integer(BigInt::from(self.group_order));
        let conj: Vec<Vec<CycloNum>> = self
            .irreducibles
            .iter()
            .map(|r| r.iter().map(|v| v.conj()).collect())
            .collect();
        for i in 0..k {
            for j in i..k {
                let s: CycloNum = (0..k)
                    .map(|c| (&self.irreducibles[i][c] * &conj[j][c]).scale_int(self.classes[c].size as i64))
                    .sum();
                let want = if i == j { g.clone() } else { BigRational::zero() };
                if s.as_rational() != Some(want) {
                    return Err(Error::Invariant(format!(
                        "{}: row orthogonality rows {i},{j}",
                        self.group_name
                    )));
                }
            }
        }
        for c in 0..k {
            for d in c..k {
                let s: CycloNum = (0..k).map(|i| &self.irreducibles[i][c] * &conj[i][d]).sum();
                let want = if c == d {
                    BigRational::from_integer(BigInt::from(self.group_order / self.classes[c].size))
                } else {
                    BigRational::zero()
                };
                if s.as_rational() != Some(want) {
                    return Err(Error::Invariant(format!(
                        "{}: column orthogonality columns {c},{d}",
                        self.group_name
                    )));
                }
            }
        }
        Ok(())
    }

    /// Class whose column is the Galois twist by k of column c.
    fn galois_column(&self, c: usize, q: u64) -> Result<usize> {
        let twisted: Vec<CycloNum> = self
            .irreducibles
            .iter()
            .map(|r| r[c].galois(q as i64))
            .collect::<Result<_>>()?;
        (0..self.classes.len())
            .find(|&d| self.irreducibles.iter().zip(&twisted).all(|(r, v)| r[d] == *v))
            .ok_or_else(|| {
                Error::Invariant(format!(
                    "{}: Galois twist by {q} of column {c} is not a column",
                    self.group_name
                ))
            })
    }

    fn build_powers(&self) -> Result<Vec<Vec<usize>>> {
        let k = self.classes.len();
        let n = self.exponent as usize;
        let mut pw = vec![vec![0usize; n]; k];
        for c in 0..k {
            if n > 1 {
                pw[c][1] = c;
            }
        }
        for e in 2..n {
            let q = factor(e as u64)[0].0;
            let rest = e / q as usize;
            for c in 0..k {
                pw[c][e] = if self.exponent.is_multiple_of(q) {
                    pw[self.classes[c].power_maps[&q]][rest]
                } else {
                    self.galois_column(pw[c][rest], q)?
                };
            }
        }
        for c in 0..k {
            let m = self.classes[c].element_order as usize;
            for e in 0..n {
                let expect = self.classes[c].element_order / gcd(self.classes[c].element_order, e as u64);
                if self.classes[pw[c][e]].element_order != expect || (e % m == 0 && pw[c][e] != 0) {
                    return Err(Error::Invariant(format!(
                        "{}: power map composition of class {} at {e}",
                        self.group_name, self.classes[c].name
                    )));
                }
            }
        }
        Ok(pw)
    }

    pub fn group_name(&self) -> &str {
        &self.group_name
    }

    pub fn group_order(&self) -> u64 {
        self.group_order
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn classes(&self) -> &[ClassData] {
        &self.classes
    }

    pub fn class(&self, c: usize) -> &ClassData {
        &self.classes[c]
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn irreducibles(&self) -> &[Vec<CycloNum>] {
        &self.irreducibles
    }

    pub fn irreducible(&self, i: usize) -> &[CycloNum] {
        &self.irreducibles[i]
    }

    pub fn degree(&self, i: usize) -> u64 {
        self.irreducibles[i][0].to_i64().expect("validated degree") as u64
    }

    pub fn centralizer_order(&self, c: usize) -> u64 {
        self.group_order / self.classes[c].size
    }

    pub fn class_index(&self, name: &str) -> Option<usize> {
        self.classes.iter().position(|c| c.name == name)
    }

    /// Class of g^k for g in class c.
    pub fn power_class(&self, c: usize, k: u64) -> usize {
        if self.exponent == 1 {
            return 0;
        }
        self.powers[c][(k % self.exponent) as usize]
    }

    pub fn inverse_class(&self, c: usize) -> usize {
        let m = self.classes[c].element_order;
        self.power_class(c, m - 1)
    }

    pub fn is_p_regular(&self, c: usize, p: u64) -> bool {
        !self.classes[c].element_order.is_multiple_of(p)
    }

    /// Classes of p-power order, identity first.
    pub fn p_element_classes(&self, p: u64) -> Vec<usize> {
        (0..self.num_classes())
            .filter(|&c| p_split(self.classes[c].element_order, p).1 == 1)
            .collect()
    }

    pub fn p_regular_classes(&self, p: u64) -> Vec<usize> {
        (0..self.num_classes())
            .filter(|&c| self.is_p_regular(c, p))
            .collect()
    }

    /// Splits g = us into its p-part u and p′-part s, returned as classes.
    pub fn p_decompose(&self, c: usize, p: u64) -> (usize, usize) {
        let m = self.classes[c].element_order;
        let (a, m1) = p_split(m, p);
        let pa = p.pow(a);
        let e = crt(1 % pa, pa, 0, m1);
        let e1 = crt(0, pa, 1 % m1, m1);
        (self.power_class(c, e), self.power_class(c, e1))
    }
}

/// A class function on a fixed table, with cached Irr coordinates.
#[derive(Debug, Clone)]
pub struct ClassFunction {
    table: Arc<CharTable>,
    values: Vec<CycloNum>,
    coords: OnceLock<Option<Vec<BigInt>>>,
}

fn same_table(a: &Arc<CharTable>, b: &Arc<CharTable>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl ClassFunction {
    pub fn new(table: Arc<CharTable>, values: Vec<CycloNum>) -> Result<Self> {
        if values.len() != table.num_classes() {
            return Err(Error::Precondition(format!(
                "{} values for {} classes",
                values.len(),
                table.num_classes()
            )));
        }
        Ok(ClassFunction {
            table,
            values,
            coords: OnceLock::new(),
        })
    }

    pub fn irreducible(table: &Arc<CharTable>, i: usize) -> Self {
        let mut coords = vec![BigInt::zero(); table.num_classes()];
        coords[i] = BigInt::one();
        let values = table.irreducible(i).to_vec();
        ClassFunction {
            table: table.clone(),
            values,
            coords: OnceLock::from(Some(coords)),
        }
    }

    pub fn zero(table: &Arc<CharTable>) -> Self {
        let n = table.num_classes();
        ClassFunction {
            table: table.clone(),
            values: vec![CycloNum::zero(); n],
            coords: OnceLock::from(Some(vec![BigInt::zero(); n])),
        }
    }

    /// Σ coords[i]·χ_i.
    pub fn from_coords(table: &Arc<CharTable>, coords: &[BigInt]) -> Self {
        assert_eq!(coords.len(), table.num_classes());
        let values = (0..table.num_classes())
            .map(|c| {
                coords
                    .iter()
                    .zip(table.irreducibles())
                    .filter(|(a, _)| !a.is_zero())
                    .map(|(a, row)| row[c].scale(&BigRational::from_integer(a.clone())))
                    .sum()
            })
            .collect();
        ClassFunction {
            table: table.clone(),
            values,
            coords: OnceLock::from(Some(coords.to_vec())),
        }
    }

    pub fn from_int_coords(table: &Arc<CharTable>, coords: &[i64]) -> Self {
        let c: Vec<BigInt> = coords.iter().map(|&x| BigInt::from(x)).collect();
        Self::from_coords(table, &c)
    }

    pub fn table(&self) -> &Arc<CharTable> {
        &self.table
    }

    pub fn values(&self) -> &[CycloNum] {
        &self.values
    }

    pub fn value(&self, c: usize) -> &CycloNum {
        &self.values[c]
    }

    /// ⟨self, χ_i⟩ for each irreducible χ_i.
    pub fn irr_multiplicities(&self) -> Vec<CycloNum> {
        let t = self.table.clone();
        (0..t.num_classes())
            .map(|i| {
                let chi = ClassFunction::irreducible(&t, i);
                inner_product(self, &chi).expect("same table")
            })
            .collect()
    }

    /// Integer Irr coordinates, or None when the function is not in ZIrr(G).
    pub fn coords(&self) -> Option<&[BigInt]> {
        self.coords
            .get_or_init(|| {
                self.irr_multiplicities()
                    .into_iter()
                    .map(|m| m.as_integer())
                    .collect()
            })
            .as_deref()
    }

    pub fn is_virtual_character(&self) -> bool {
        self.coords().is_some()
    }

    pub fn is_character(&self) -> bool {
        self.coords()
            .is_some_and(|c| c.iter().all(|x| *x >= BigInt::zero()))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&CycloNum, &CycloNum) -> CycloNum) -> Result<Vec<CycloNum>> {
        if !same_table(&self.table, &other.table) {
            return Err(Error::TableMismatch);
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| f(a, b))
            .collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let values = self.zip_with(other, |a, b| a + b)?;
        let coords = match (self.coords.get(), other.coords.get()) {
            (Some(Some(a)), Some(Some(b))) => {
                OnceLock::from(Some(a.iter().zip(b).map(|(x, y)| x + y).collect()))
            }
            _ => OnceLock::new(),
        };
        Ok(ClassFunction {
            table: self.table.clone(),
            values,
            coords,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale_int(-1))
    }

    pub fn scale_int(&self, k: i64) -> Self {
        let coords = match self.coords.get() {
            Some(Some(a)) => OnceLock::from(Some(a.iter().map(|x| x * k).collect())),
            _ => OnceLock::new(),
        };
        ClassFunction {
            table: self.table.clone(),
            values: self.values.iter().map(|v| v.scale_int(k)).collect(),
            coords,
        }
    }

    /// Pointwise product, e.g. a tensor product of characters.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let values = self.zip_with(other, |a, b| a * b)?;
        ClassFunction::new(self.table.clone(), values)
    }
}

impl PartialEq for ClassFunction {
    fn eq(&self, other: &Self) -> bool {
        same_table(&self.table, &other.table) && self.values == other.values
    }
}

/// (1/|G|) Σ_c |c|·α(c)·conj(β(c)).
pub fn inner_product(a: &ClassFunction, b: &ClassFunction) -> Result<CycloNum> {
    if !same_table(&a.table, &b.table) {
        return Err(Error::TableMismatch);
    }
    let t = &a.table;
    let s: CycloNum = (0..t.num_classes())
        .map(|c| (&a.values[c] * &b.values[c].conj()).scale_int(t.class(c).size as i64))
        .sum();
    Ok(s.scale(&BigRational::new(BigInt::one(), BigInt::from(t.group_order()))))
}

/// Conductor of the value set of χ, or its p-part when `p` is given.
pub fn char_conductor(chi: &ClassFunction, p: Option<u64>) -> u64 {
    match p {
        None => conductor(chi.values()),
        Some(p) => conductor_p(chi.values(), p),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::parse_cyclo;

    fn class(name: &str, size: u64, order: u64, pm: &[(u64, usize)]) -> ClassData {
        ClassData {
            name: name.into(),
            size,
            element_order: order,
            power_maps: pm.iter().copied().collect(),
        }
    }

    fn rows(r: &[&[&str]]) -> Vec<Vec<CycloNum>> {
        r.iter()
            .map(|row| row.iter().map(|s| parse_cyclo(s).unwrap()).collect())
            .collect()
    }

    pub(crate) fn s3() -> Arc<CharTable> {
        let classes = vec![
            class("1a", 1, 1, &[(2, 0), (3, 0)]),
            class("2a", 3, 2, &[(2, 0), (3, 1)]),
            class("3a", 2, 3, &[(2, 2), (3, 0)]),
        ];
        let irr = rows(&[&["1", "1", "1"], &["1", "-1", "1"], &["2", "0", "-1"]]);
        Arc::new(CharTable::new("S3", 6, 6, classes, irr).unwrap())
    }

    fn c4() -> Arc<CharTable> {
        let classes = vec![
            class("1a", 1, 1, &[(2, 0)]),
            class("2a", 1, 2, &[(2, 0)]),
            class("4a", 1, 4, &[(2, 1)]),
            class("4b", 1, 4, &[(2, 1)]),
        ];
        let irr = rows(&[
            &["1", "1", "1", "1"],
            &["1", "1", "-1", "-1"],
            &["1", "-1", "E(4)", "-E(4)"],
            &["1", "-1", "-E(4)", "E(4)"],
        ]);
        Arc::new(CharTable::new("C4", 4, 4, classes, irr).unwrap())
    }

    #[test]
    fn power_classes() {
        let t = s3();
        assert_eq!(t.power_class(2, 2), 2);
        assert_eq!(t.power_class(1, 1), 1);
        assert_eq!(t.power_class(1, 2), 0);
        assert_eq!(t.power_class(2, 5), 2);
        let t = c4();
        assert_eq!(t.power_class(2, 2), 1);
        assert_eq!(t.power_class(2, 3), 3);
        assert_eq!(t.inverse_class(2), 3);
        assert_eq!(t.power_class(2, 4), 0);
    }

    #[test]
    fn p_parts_of_classes() {
        let t = s3();
        assert_eq!(t.p_decompose(2, 2), (0, 2));
        assert_eq!(t.p_decompose(1, 2), (1, 0));
        assert_eq!(t.p_decompose(0, 3), (0, 0));
        assert_eq!(t.p_element_classes(2), vec![0, 1]);
        assert_eq!(t.p_regular_classes(2), vec![0, 2]);
    }

    #[test]
    fn inner_products() {
        let t = s3();
        let triv = ClassFunction::irreducible(&t, 0);
        let sign = ClassFunction::irreducible(&t, 1);
        assert_eq!(inner_product(&triv, &sign).unwrap(), CycloNum::zero());
        for i in 0..3 {
            let chi = ClassFunction::irreducible(&t, i);
            assert_eq!(inner_product(&chi, &chi).unwrap(), CycloNum::one());
        }
        let reg = ClassFunction::new(t.clone(), rows(&[&["6", "0", "0"]]).remove(0)).unwrap();
        for i in 0..3 {
            let chi = ClassFunction::irreducible(&t, i);
            assert_eq!(
                inner_product(&reg, &chi).unwrap(),
                CycloNum::from_integer(t.degree(i) as i64)
            );
        }
        let coords: Vec<i64> = reg
            .coords()
            .unwrap()
            .iter()
            .map(|x| x.try_into().unwrap())
            .collect();
        assert_eq!(coords, vec![1, 1, 2]);
        assert!(matches!(
            inner_product(&reg, &ClassFunction::irreducible(&c4(), 0)),
            Err(Error::TableMismatch)
        ));
    }

    #[test]
    fn conductors_of_characters() {
        let t = s3();
        assert_eq!(char_conductor(&ClassFunction::irreducible(&t, 2), None), 1);
        let t = c4();
        let faithful = ClassFunction::irreducible(&t, 2);
        assert_eq!(char_conductor(&faithful, None), 4);
        assert_eq!(char_conductor(&faithful, Some(2)), 4);
    }

    #[test]
    fn rejects_broken_tables() {
        let classes = vec![class("1a", 1, 1, &[(2, 0)]), class("2a", 1, 2, &[(2, 0)])];
        let bad = rows(&[&["1", "1"], &["1", "1"]]);
        let err = CharTable::new("C2", 2, 2, classes.clone(), bad).unwrap_err();
        assert!(err.to_string().contains("row orthogonality rows 0,1"), "{err}");
        let no_pm = vec![class("1a", 1, 1, &[(2, 0)]), class("2a", 1, 2, &[])];
        let err = CharTable::new("C2", 2, 2, no_pm, rows(&[&["1", "1"], &["1", "-1"]])).unwrap_err();
        assert!(err.to_string().contains("class 2a"), "{err}");
    }
}
