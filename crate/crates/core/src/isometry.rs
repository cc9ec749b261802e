//! Perfect isometries between blocks: checks, exhaustive search, and the
//! conductor-preservation conclusions.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::blocks::Block;
use crate::cyclo::{conductor_p, CycloNum};
use crate::dataset::GroupDataset;
use crate::error::{Error, Result};
use crate::linalg::integer_left_kernel;
use crate::tables::CharTable;

/// (group, prime, block id).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockRef {
    pub group: String,
    pub prime: u64,
    pub block: usize,
}

/// One side of an isometry: a block together with its table.
#[derive(Debug, Clone)]
pub struct BlockSide {
    pub table: Arc<CharTable>,
    pub p: u64,
    pub block: Block,
}

impl BlockSide {
    pub fn new(table: Arc<CharTable>, p: u64, block: Block) -> Self {
        BlockSide { table, p, block }
    }

    pub fn from_dataset(ds: &GroupDataset, p: u64, block: usize) -> Result<Self> {
        let pd = ds.prime(p)?;
        let b = pd
            .blocks
            .get(block)
            .ok_or_else(|| Error::Missing(format!("{} has no block {block} at p={p}", ds.name())))?;
        Ok(BlockSide::new(ds.table.clone(), p, b.clone()))
    }

    /// Block `block` of the named subgroup of `ds`.
    pub fn from_subgroup(ds: &GroupDataset, subgroup: &str, p: u64, block: usize) -> Result<Self> {
        let sub = ds
            .subgroup(subgroup)
            .ok_or_else(|| Error::Missing(format!("{} has no subgroup {subgroup}", ds.name())))?;
        let sp = sub
            .primes
            .get(&p)
            .ok_or_else(|| Error::Missing(format!("subgroup {subgroup} has no data at p={p}")))?;
        let b = sp
            .blocks
            .get(block)
            .ok_or_else(|| Error::Missing(format!("subgroup {subgroup} has no block {block}")))?;
        Ok(BlockSide::new(sub.embedding.subgroup_table.clone(), p, b.clone()))
    }

    pub fn block_ref(&self) -> BlockRef {
        BlockRef {
            group: self.table.group_name().to_string(),
            prime: self.p,
            block: self.block.id,
        }
    }

    pub fn size(&self) -> usize {
        self.block.irr.len()
    }

    /// The i-th character of the block, by position in the block.
    pub fn character(&self, i: usize) -> &[CycloNum] {
        self.table.irreducible(self.block.irr[i])
    }

    /// Values of Σ_i coeffs[i]·χ_i over the block's characters.
    pub fn combination(&self, coeffs: &[i64]) -> Vec<CycloNum> {
        (0..self.table.num_classes())
            .map(|c| {
                coeffs
                    .iter()
                    .enumerate()
                    .filter(|(_, &a)| a != 0)
                    .map(|(i, &a)| self.character(i)[c].scale_int(a))
                    .sum()
            })
            .collect()
    }
}

/// An integer map Φ: ZIrr(B) → ZIrr(B′), Φ(χ_i) = Σ_j matrix[i][j]·χ′_j,
/// indices taken by position inside each block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsometryCandidate {
    pub source: BlockRef,
    pub target: BlockRef,
    pub matrix: Vec<Vec<i64>>,
}

/// Serialized form of a signed bijection χ_i ↦ signs[i]·χ′_{permutation[i]}.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Certificate {
    pub source: BlockRef,
    pub target: BlockRef,
    pub permutation: Vec<usize>,
    pub signs: Vec<i64>,
}

impl IsometryCandidate {
    pub fn signed_bijection(source: BlockRef, target: BlockRef, perm: &[usize], signs: &[i64]) -> Self {
        let n = perm.len();
        let mut matrix = vec![vec![0; n]; n];
        for i in 0..n {
            matrix[i][perm[i]] = signs[i];
        }
        IsometryCandidate {
            source,
            target,
            matrix,
        }
    }

    pub fn identity(side: &BlockSide) -> Self {
        let n = side.size();
        let perm: Vec<usize> = (0..n).collect();
        Self::signed_bijection(side.block_ref(), side.block_ref(), &perm, &vec![1; n])
    }

    /// (permutation, signs) when the matrix is a signed permutation matrix.
    pub fn as_signed_bijection(&self) -> Option<(Vec<usize>, Vec<i64>)> {
        let n = self.matrix.len();
        let mut perm = Vec::with_capacity(n);
        let mut signs = Vec::with_capacity(n);
        for row in &self.matrix {
            let nz: Vec<usize> = (0..row.len()).filter(|&j| row[j] != 0).collect();
            if nz.len() != 1 || row[nz[0]].abs() != 1 {
                return None;
            }
            perm.push(nz[0]);
            signs.push(row[nz[0]]);
        }
        let mut seen = perm.clone();
        seen.sort_unstable();
        seen.dedup();
        (seen.len() == n && perm.iter().all(|&j| j < n)).then_some((perm, signs))
    }

    pub fn to_certificate(&self) -> Option<Certificate> {
        let (permutation, signs) = self.as_signed_bijection()?;
        Some(Certificate {
            source: self.source.clone(),
            target: self.target.clone(),
            permutation,
            signs,
        })
    }

    pub fn from_certificate(cert: &Certificate) -> Result<Self> {
        let n = cert.permutation.len();
        if cert.signs.len() != n {
            return Err(Error::schema("signs", "length differs from permutation"));
        }
        if let Some(s) = cert.signs.iter().find(|s| s.abs() != 1) {
            return Err(Error::schema("signs", format!("sign {s} is not ±1")));
        }
        let mut seen = cert.permutation.clone();
        seen.sort_unstable();
        if seen != (0..n).collect::<Vec<_>>() {
            return Err(Error::schema("permutation", "not a permutation of 0..n"));
        }
        Ok(Self::signed_bijection(
            cert.source.clone(),
            cert.target.clone(),
            &cert.permutation,
            &cert.signs,
        ))
    }

    fn check_shape(&self, a: &BlockSide, b: &BlockSide) -> Result<()> {
        let n = a.size();
        if self.matrix.len() != n || self.matrix.iter().any(|r| r.len() != b.size()) {
            return Err(Error::Precondition(format!(
                "candidate is not a {}x{} matrix",
                n,
                b.size()
            )));
        }
        Ok(())
    }

    /// Values of Φ(χ_i) on the target table.
    pub fn image(&self, b: &BlockSide, i: usize) -> Vec<CycloNum> {
        b.combination(&self.matrix[i])
    }
}

/// Whether Φ preserves the standard scalar product on the Irr basis.
pub fn check_isometry(cand: &IsometryCandidate) -> Result<bool> {
    let n = cand.matrix.len();
    if cand.matrix.iter().any(|r| r.len() != n) {
        return Err(Error::Precondition("isometry matrix must be square".into()));
    }
    for i in 0..n {
        for j in 0..n {
            let g: i64 = (0..n).map(|k| cand.matrix[i][k] * cand.matrix[j][k]).sum();
            if g != i64::from(i == j) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct PerfectionReport {
    pub is_isometry: bool,
    pub integrality_ok: bool,
    pub separation_ok: bool,
    pub conductor_preserved: bool,
    pub l0_preserved: bool,
    pub witnesses: Vec<String>,
}

impl PerfectionReport {
    pub fn perfect(&self) -> bool {
        self.is_isometry && self.integrality_ok && self.separation_ok
    }
}

/// χ_i(g)·χ′_j(g′) for all i, j and class pairs, shared by every candidate.
struct ProductCache {
    n: usize,
    kg: usize,
    kh: usize,
    prod: Vec<CycloNum>,
}

impl ProductCache {
    fn new(a: &BlockSide, b: &BlockSide) -> Self {
        let (n, kg, kh) = (a.size(), a.table.num_classes(), b.table.num_classes());
        let mut prod = Vec::with_capacity(n * n * kg * kh);
        for i in 0..n {
            for j in 0..n {
                for g in 0..kg {
                    for h in 0..kh {
                        prod.push(&a.character(i)[g] * &b.character(j)[h]);
                    }
                }
            }
        }
        ProductCache { n, kg, kh, prod }
    }

    fn get(&self, i: usize, j: usize, g: usize, h: usize) -> &CycloNum {
        &self.prod[((i * self.n + j) * self.kg + g) * self.kh + h]
    }

    /// μ(g, g′) = Σ_i Σ_j M[i][j]·χ_i(g)·χ′_j(g′).
    fn mu(&self, m: &[Vec<i64>], g: usize, h: usize) -> CycloNum {
        let mut acc = CycloNum::zero();
        for (i, row) in m.iter().enumerate() {
            for (j, &c) in row.iter().enumerate() {
                if c != 0 {
                    acc = &acc + &self.get(i, j, g, h).scale_int(c);
                }
            }
        }
        acc
    }
}

/// x/d ∈ Z_(p)[ζ]: integrality over the p-local ring, as in Broué's definition.
fn divided_is_integral(x: &CycloNum, d: u64, p: u64) -> bool {
    x.scale(&BigRational::new(BigInt::one(), BigInt::from(d)))
        .is_p_integral(p)
}

/// Broué's conditions on μ, stopping at the first failure of each kind when
/// `first_only` is set.
fn perfection_conditions(
    a: &BlockSide,
    b: &BlockSide,
    cache: &ProductCache,
    m: &[Vec<i64>],
    first_only: bool,
    witnesses: &mut Vec<String>,
) -> (bool, bool) {
    let (ta, tb) = (&a.table, &b.table);
    let mut sep = true;
    let mut integ = true;
    'sep: for g in 0..ta.num_classes() {
        for h in 0..tb.num_classes() {
            if ta.is_p_regular(g, a.p) != tb.is_p_regular(h, b.p) {
                let mu = cache.mu(m, g, h);
                if !mu.is_zero() {
                    sep = false;
                    witnesses.push(format!(
                        "separation: mu({}, {}) = {mu}",
                        ta.class(g).name,
                        tb.class(h).name
                    ));
                    if first_only {
                        break 'sep;
                    }
                }
            }
        }
    }
    if first_only && !sep {
        return (false, sep);
    }
    'int: for g in 0..ta.num_classes() {
        for h in 0..tb.num_classes() {
            let mu = cache.mu(m, g, h);
            let (cg, ch) = (ta.centralizer_order(g), tb.centralizer_order(h));
            if !divided_is_integral(&mu, cg, a.p) || !divided_is_integral(&mu, ch, a.p) {
                integ = false;
                witnesses.push(format!(
                    "integrality: mu({}, {}) = {mu} with centralizer orders {cg}, {ch}",
                    ta.class(g).name,
                    tb.class(h).name
                ));
                if first_only {
                    break 'int;
                }
            }
        }
    }
    (integ, sep)
}

/// Evaluates all perfection and preservation conditions of a candidate.
pub fn check_perfection(a: &BlockSide, b: &BlockSide, cand: &IsometryCandidate) -> Result<PerfectionReport> {
    cand.check_shape(a, b)?;
    let mut r = PerfectionReport {
        is_isometry: check_isometry(cand)?,
        ..Default::default()
    };
    if !r.is_isometry {
        r.witnesses.push("not an isometry".into());
    }
    let cache = ProductCache::new(a, b);
    let (integ, sep) = perfection_conditions(a, b, &cache, &cand.matrix, false, &mut r.witnesses);
    r.integrality_ok = integ;
    r.separation_ok = sep;
    let (cp, w) = check_conductor_preservation(a, b, cand)?;
    r.conductor_preserved = cp;
    r.witnesses.extend(w);
    r.l0_preserved = check_l0_preservation(a, b, cand)?;
    if !r.l0_preserved {
        r.witnesses.push("an element of L0 maps outside L0".into());
    }
    Ok(r)
}

/// Advances to the next permutation in lexicographic order.
fn next_permutation(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| v[i] < v[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| v[j] > v[i]).expect("successor exists");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

pub const DEFAULT_BOUND: usize = 6;

/// All signed bijections Irr(A) → Irr(B) that are perfect isometries, in
/// lexicographic order of (permutation, signs) with + before −.
pub fn search_perfect_isometries(
    a: &BlockSide,
    b: &BlockSide,
    bound: usize,
) -> Result<Vec<IsometryCandidate>> {
    let n = a.size();
    if n != b.size() {
        return Err(Error::Precondition(format!(
            "blocks have {} and {} characters",
            n,
            b.size()
        )));
    }
    if n > bound {
        return Err(Error::BoundExceeded {
            count: factorial(n) << n,
            size: n,
            bound,
        });
    }
    let mut perms = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        perms.push(p.clone());
        if !next_permutation(&mut p) {
            break;
        }
    }
    let cache = ProductCache::new(a, b);
    let (ra, rb) = (a.block_ref(), b.block_ref());
    let found: Vec<Vec<IsometryCandidate>> = perms
        .par_iter()
        .map(|perm| {
            let mut out = Vec::new();
            for mask in 0u32..(1 << n) {
                let signs: Vec<i64> = (0..n)
                    .map(|i| if mask >> (n - 1 - i) & 1 == 1 { -1 } else { 1 })
                    .collect();
                let cand = IsometryCandidate::signed_bijection(ra.clone(), rb.clone(), perm, &signs);
                let mut sink = Vec::new();
                let (integ, sep) = perfection_conditions(a, b, &cache, &cand.matrix, true, &mut sink);
                if integ && sep {
                    out.push(cand);
                }
            }
            out
        })
        .collect();
    Ok(found.into_iter().flatten().collect())
}

/// Compares c(χ)_p with c(Φ(χ))_p for every χ in the source block.
pub fn check_conductor_preservation(
    a: &BlockSide,
    b: &BlockSide,
    cand: &IsometryCandidate,
) -> Result<(bool, Vec<String>)> {
    cand.check_shape(a, b)?;
    let p = a.p;
    let mut witnesses = Vec::new();
    for i in 0..a.size() {
        let lhs = conductor_p(a.character(i), p);
        let rhs = conductor_p(&cand.image(b, i), p);
        if lhs != rhs {
            witnesses.push(format!(
                "conductor: c(chi_{})_{p} = {lhs} but its image has {rhs}",
                a.block.irr[i]
            ));
        }
    }
    Ok((witnesses.is_empty(), witnesses))
}

/// A Z-basis of L⁰(B): integer combinations of Irr(B) vanishing on all
/// p-regular classes. Rows are coordinates by position in the block.
pub fn l0_basis(side: &BlockSide) -> Vec<Vec<i64>> {
    let t = &side.table;
    let n = if t.exponent() % 4 == 2 {
        2 * t.exponent()
    } else {
        t.exponent()
    };
    let regs = t.p_regular_classes(side.p);
    let m: Vec<Vec<BigInt>> = (0..side.size())
        .map(|i| {
            regs.iter()
                .flat_map(|&s| side.character(i)[s].coordinates_at(n))
                .map(|q| {
                    debug_assert!(q.is_integer());
                    q.to_integer()
                })
                .collect()
        })
        .collect();
    integer_left_kernel(&m)
        .into_iter()
        .map(|v| {
            v.iter()
                .map(|x| i64::try_from(x).expect("small kernel entry"))
                .collect()
        })
        .collect()
}

/// Whether Φ maps every element of L⁰(B) into L⁰(B′).
pub fn check_l0_preservation(a: &BlockSide, b: &BlockSide, cand: &IsometryCandidate) -> Result<bool> {
    cand.check_shape(a, b)?;
    for x in l0_basis(a) {
        let coeffs: Vec<i64> = (0..b.size())
            .map(|j| (0..a.size()).map(|i| x[i] * cand.matrix[i][j]).sum())
            .collect();
        let img = b.combination(&coeffs);
        if b.table.p_regular_classes(b.p).iter().any(|&s| !img[s].is_zero()) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexicographic_permutations() {
        let mut v = vec![0, 1, 2];
        let mut all = vec![v.clone()];
        while next_permutation(&mut v) {
            all.push(v.clone());
        }
        assert_eq!(
            all,
            vec![
                vec![0, 1, 2],
                vec![0, 2, 1],
                vec![1, 0, 2],
                vec![1, 2, 0],
                vec![2, 0, 1],
                vec![2, 1, 0]
            ]
        );
    }

    fn r() -> BlockRef {
        BlockRef {
            group: "X".into(),
            prime: 2,
            block: 0,
        }
    }

    #[test]
    fn isometry_matrices() {
        let id = IsometryCandidate::signed_bijection(r(), r(), &[0, 1, 2], &[1, 1, 1]);
        assert!(check_isometry(&id).unwrap());
        let flip = IsometryCandidate::signed_bijection(r(), r(), &[0, 1, 2], &[1, -1, 1]);
        assert!(check_isometry(&flip).unwrap());
        let repeated = IsometryCandidate {
            source: r(),
            target: r(),
            matrix: vec![vec![1, 0], vec![1, 0]],
        };
        assert!(!check_isometry(&repeated).unwrap());
        let ragged = IsometryCandidate {
            source: r(),
            target: r(),
            matrix: vec![vec![1, 0]],
        };
        assert!(check_isometry(&ragged).is_err());
    }

    #[test]
    fn certificates_round_trip() {
        let c = IsometryCandidate::signed_bijection(r(), r(), &[2, 0, 1], &[1, -1, 1]);
        let cert = c.to_certificate().unwrap();
        assert_eq!(cert.permutation, vec![2, 0, 1]);
        assert_eq!(IsometryCandidate::from_certificate(&cert).unwrap(), c);
        let bad = Certificate {
            signs: vec![1, 2, 1],
            ..cert.clone()
        };
        assert!(IsometryCandidate::from_certificate(&bad).is_err());
        let bad = Certificate {
            permutation: vec![0, 0, 1],
            ..cert
        };
        assert!(IsometryCandidate::from_certificate(&bad).is_err());
    }
}
