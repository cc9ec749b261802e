//! p-blocks, Brauer characters, decomposition and Cartan matrices.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::cyclo::CycloNum;
use crate::error::{Error, Result};
use crate::linalg::rank;
use crate::numtheory::nu;
use crate::residue::{build_residue_map, PrimeFieldElem};
use crate::tables::{CharTable, ClassFunction};

/// Ingested Brauer data of one table at one prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BrauerData {
    pub p: u64,
    pub regular_classes: Vec<usize>,
    pub ibr: Vec<Vec<CycloNum>>,
    pub decomposition: Vec<Vec<i64>>,
    pub block_of_irr: Vec<usize>,
    pub block_of_ibr: Vec<usize>,
}

impl BrauerData {
    /// Validates the data against its table.
    pub fn new(
        table: &CharTable,
        p: u64,
        regular_classes: Vec<usize>,
        ibr: Vec<Vec<CycloNum>>,
        decomposition: Vec<Vec<i64>>,
        block_of_irr: Vec<usize>,
        block_of_ibr: Vec<usize>,
    ) -> Result<Self> {
        let name = table.group_name();
        let inv = |m: String| Error::Invariant(format!("{name} at p={p}: {m}"));
        let expected = table.p_regular_classes(p);
        if regular_classes != expected {
            return Err(inv(format!(
                "regular classes {regular_classes:?}, expected {expected:?}"
            )));
        }
        let r = regular_classes.len();
        let k = table.num_classes();
        if ibr.len() != r || ibr.iter().any(|row| row.len() != r) {
            return Err(inv(format!("ibr must be a {r}x{r} matrix")));
        }
        for row in &ibr {
            if let Some(v) = row.iter().find(|v| !table.exponent().is_multiple_of(v.order())) {
                return Err(inv(format!(
                    "Brauer character value {v} outside the ambient field"
                )));
            }
        }
        if decomposition.len() != k || decomposition.iter().any(|row| row.len() != r) {
            return Err(inv(format!("decomposition matrix must be {k}x{r}")));
        }
        if decomposition.iter().flatten().any(|&d| d < 0) {
            return Err(inv("negative decomposition number".into()));
        }
        if block_of_irr.len() != k || block_of_ibr.len() != r {
            return Err(inv("block label lists have the wrong length".into()));
        }
        for (chi, row) in decomposition.iter().enumerate() {
            for (j, &s) in regular_classes.iter().enumerate() {
                let rhs: CycloNum = row
                    .iter()
                    .zip(&ibr)
                    .filter(|(d, _)| **d != 0)
                    .map(|(d, phi)| phi[j].scale_int(*d))
                    .sum();
                if table.irreducible(chi)[s] != rhs {
                    return Err(inv(format!(
                        "Brauer consistency fails for character {chi} at class {}",
                        table.class(s).name
                    )));
                }
            }
            for (phi, &d) in row.iter().enumerate() {
                if d != 0 && block_of_irr[chi] != block_of_ibr[phi] {
                    return Err(inv(format!(
                        "character {chi} and Brauer character {phi} are linked but labelled apart"
                    )));
                }
            }
        }
        if rank(&ibr) != r {
            return Err(inv("Brauer characters are linearly dependent".into()));
        }
        Ok(BrauerData {
            p,
            regular_classes,
            ibr,
            decomposition,
            block_of_irr,
            block_of_ibr,
        })
    }

    pub fn num_ibr(&self) -> usize {
        self.ibr.len()
    }

    /// Position of a class within `regular_classes`.
    pub fn regular_position(&self, class: usize) -> Option<usize> {
        self.regular_classes.iter().position(|&c| c == class)
    }
}

/// A p-block with its characters.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Block {
    pub id: usize,
    pub irr: Vec<usize>,
    pub ibr: Vec<usize>,
    pub defect: u32,
}

impl Block {
    pub fn contains_irr(&self, i: usize) -> bool {
        self.irr.contains(&i)
    }
}

/// ω_χ(K) = |K|·χ(g)/χ(1) for every class K.
pub fn central_character(table: &CharTable, chi: usize) -> Vec<CycloNum> {
    let deg = CycloNum::from_integer(table.degree(chi) as i64);
    let inv = deg.invert().expect("positive degree");
    (0..table.num_classes())
        .map(|c| (&table.irreducible(chi)[c] * &inv).scale_int(table.class(c).size as i64))
        .collect()
}

/// Groups Irr by the reduction of their central characters modulo a prime
/// above p. Classes are ordered by (defect descending, least Irr index).
pub fn central_character_classes(table: &CharTable, p: u64) -> Result<Vec<(Vec<usize>, u32)>> {
    let map = build_residue_map(table.exponent(), p);
    let mut groups: BTreeMap<Vec<PrimeFieldElem>, Vec<usize>> = BTreeMap::new();
    for chi in 0..table.num_classes() {
        let key = central_character(table, chi)
            .iter()
            .map(|w| map.reduce(w))
            .collect::<Result<Vec<_>>>()?;
        groups.entry(key).or_default().push(chi);
    }
    let full = nu(table.group_order(), p);
    let mut out: Vec<(Vec<usize>, u32)> = groups
        .into_values()
        .map(|irr| {
            let min = irr
                .iter()
                .map(|&i| nu(table.degree(i), p))
                .min()
                .expect("nonempty");
            (irr, full - min)
        })
        .collect();
    out.sort_by(|a, b| b.1.cmp(&a.1).then(a.0[0].cmp(&b.0[0])));
    Ok(out)
}

/// The blocks of the table at `bd.p`, checked against the ingested labels.
pub fn partition_blocks(table: &CharTable, bd: &BrauerData) -> Result<Vec<Block>> {
    let classes = central_character_classes(table, bd.p)?;
    let mut blocks = Vec::with_capacity(classes.len());
    for (id, (irr, defect)) in classes.into_iter().enumerate() {
        let ibr: Vec<usize> = (0..bd.num_ibr())
            .filter(|&phi| irr.iter().any(|&chi| bd.decomposition[chi][phi] != 0))
            .collect();
        for &chi in &irr {
            if bd.block_of_irr[chi] != id {
                return Err(Error::Invariant(format!(
                    "{} at p={}: character {chi} lies in block {id} by central characters, labelled {}",
                    table.group_name(),
                    bd.p,
                    bd.block_of_irr[chi]
                )));
            }
        }
        for &phi in &ibr {
            if bd.block_of_ibr[phi] != id {
                return Err(Error::Invariant(format!(
                    "{} at p={}: Brauer character {phi} lies in block {id}, labelled {}",
                    table.group_name(),
                    bd.p,
                    bd.block_of_ibr[phi]
                )));
            }
        }
        if ibr.is_empty() {
            return Err(Error::Invariant(format!(
                "{} at p={}: block {id} has no Brauer characters",
                table.group_name(),
                bd.p
            )));
        }
        blocks.push(Block { id, irr, ibr, defect });
    }
    let covered: usize = blocks.iter().map(|b| b.ibr.len()).sum();
    if covered != bd.num_ibr() {
        return Err(Error::Invariant(format!(
            "{} at p={}: Brauer characters are not partitioned by blocks",
            table.group_name(),
            bd.p
        )));
    }
    if !blocks[0].contains_irr(0) {
        return Err(Error::Invariant(format!(
            "{} at p={}: the trivial character is not in block 0",
            table.group_name(),
            bd.p
        )));
    }
    Ok(blocks)
}

/// Ψ_φ = Σ_χ D[χ,φ]·χ, one per Brauer character.
pub fn projective_characters(table: &Arc<CharTable>, bd: &BrauerData) -> Result<Vec<ClassFunction>> {
    let k = table.num_classes();
    (0..bd.num_ibr())
        .map(|phi| {
            let coords: Vec<BigInt> = (0..k)
                .map(|chi| BigInt::from(bd.decomposition[chi][phi]))
                .collect();
            let psi = ClassFunction::from_coords(table, &coords);
            for c in 0..k {
                if !table.is_p_regular(c, bd.p) && !psi.value(c).is_zero() {
                    return Err(Error::Invariant(format!(
                        "{} at p={}: projective character {phi} is nonzero at {}",
                        table.group_name(),
                        bd.p,
                        table.class(c).name
                    )));
                }
            }
            Ok(psi)
        })
        .collect()
}

/// C = DᵀD.
pub fn cartan_matrix(bd: &BrauerData) -> Vec<Vec<i64>> {
    let r = bd.num_ibr();
    (0..r)
        .map(|i| {
            (0..r)
                .map(|j| bd.decomposition.iter().map(|row| row[i] * row[j]).sum())
                .collect()
        })
        .collect()
}

/// The part of a generalised character supported on the block.
pub fn block_component(psi: &ClassFunction, b: &Block) -> Result<ClassFunction> {
    let coords = psi
        .coords()
        .ok_or_else(|| Error::Precondition("block component of a non-virtual character".into()))?;
    let masked: Vec<BigInt> = coords
        .iter()
        .enumerate()
        .map(|(i, x)| {
            if b.contains_irr(i) {
                x.clone()
            } else {
                BigInt::from(0)
            }
        })
        .collect();
    Ok(ClassFunction::from_coords(psi.table(), &masked))
}
