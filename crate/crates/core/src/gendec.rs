//! Generalised decomposition numbers d^u_{χ,φ}.
//!
//! For a p-element u and a p-regular s ∈ C_G(u), χ(us) = Σ_φ d^u_{χ,φ}·φ(s)
//! with φ running over IBr(C_G(u)). The numbers are computed twice: through
//! Brauer reciprocity against the projective characters of C_G(u), and by an
//! exact solve of the defining system. The two must agree.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::blocks::{cartan_matrix, projective_characters, Block};
use crate::cyclo::CycloNum;
use crate::dataset::{GroupDataset, SubgroupEmbedding};
use crate::error::{Error, Result};
use crate::linalg::solve;
use crate::numtheory::{p_part, p_split};
use crate::tables::{CharTable, ClassFunction};

/// The p-section of one p-element class u.
#[derive(Debug, Clone)]
pub struct SectionData {
    pub p: u64,
    pub u_class: usize,
    pub u_order: u64,
    pub centralizer: Box<GroupDataset>,
    pub fusion: Vec<usize>,
    pub u_in_centralizer: usize,
    pub u_times: Vec<usize>,
    /// Block of C_G(u) to its Brauer correspondent in G.
    pub correspondent_block: BTreeMap<usize, usize>,
    projectives: Vec<ClassFunction>,
}

impl SectionData {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        table: &CharTable,
        blocks: &[Block],
        p: u64,
        u_class: usize,
        centralizer: GroupDataset,
        fusion: Vec<usize>,
        u_in_centralizer: usize,
        u_times: Vec<usize>,
        correspondent_block: BTreeMap<usize, usize>,
    ) -> Result<Self> {
        let ctx = format!("{} at p={p}, section of class {u_class}", table.group_name());
        let inv = |m: String| Error::Invariant(format!("{ctx}: {m}"));
        if u_class >= table.num_classes() {
            return Err(inv("u_class out of range".into()));
        }
        let u_order = table.class(u_class).element_order;
        if p_split(u_order, p).1 != 1 {
            return Err(inv(format!("u has order {u_order}, not a power of {p}")));
        }
        let ct = centralizer.table.clone();
        if ct.group_order() != table.centralizer_order(u_class) {
            return Err(inv(format!(
                "centralizer order {} differs from |G|/|class| = {}",
                ct.group_order(),
                table.centralizer_order(u_class)
            )));
        }
        let cbd = centralizer
            .primes
            .get(&p)
            .ok_or_else(|| Error::Missing(format!("{ctx}: centralizer has no Brauer data")))?;
        SubgroupEmbedding::new(table, ct.clone(), fusion.clone())?;
        if u_in_centralizer >= ct.num_classes() || ct.class(u_in_centralizer).size != 1 {
            return Err(inv("u_in_centralizer is not a central class".into()));
        }
        if fusion[u_in_centralizer] != u_class {
            return Err(inv("u_in_centralizer does not fuse to u_class".into()));
        }
        if u_times.len() != ct.num_classes() || u_times.iter().any(|&c| c >= ct.num_classes()) {
            return Err(inv("u_times must map every centralizer class into range".into()));
        }
        if u_times[0] != u_in_centralizer {
            return Err(inv("u_times does not send the identity to u".into()));
        }
        let mut images = Vec::new();
        for &s in &cbd.brauer.regular_classes {
            let us = u_times[s];
            let want = u_order * ct.class(s).element_order;
            if ct.class(us).element_order != want {
                return Err(inv(format!(
                    "u times class {} has order {}, expected {want}",
                    ct.class(s).name,
                    ct.class(us).element_order
                )));
            }
            images.push(us);
        }
        images.sort_unstable();
        images.dedup();
        if images.len() != cbd.brauer.regular_classes.len() {
            return Err(inv("u_times is not injective on p-regular classes".into()));
        }
        for (&b, &g) in &correspondent_block {
            if b >= cbd.blocks.len() || g >= blocks.len() {
                return Err(inv(format!("correspondent block {b} -> {g} out of range")));
            }
        }
        let projectives = projective_characters(&ct, &cbd.brauer)?;
        Ok(SectionData {
            p,
            u_class,
            u_order,
            centralizer: Box::new(centralizer),
            fusion,
            u_in_centralizer,
            u_times,
            correspondent_block,
            projectives,
        })
    }

    pub fn centralizer_table(&self) -> &Arc<CharTable> {
        &self.centralizer.table
    }

    fn brauer(&self) -> &crate::blocks::BrauerData {
        &self.centralizer.primes[&self.p].brauer
    }

    pub fn centralizer_blocks(&self) -> &[Block] {
        &self.centralizer.primes[&self.p].blocks
    }

    pub fn num_ibr(&self) -> usize {
        self.brauer().num_ibr()
    }

    /// Block of C_G(u) containing the Brauer character φ.
    pub fn block_of_ibr(&self, phi: usize) -> usize {
        self.brauer().block_of_ibr[phi]
    }

    /// Projective indecomposable characters of C_G(u).
    pub fn projectives(&self) -> &[ClassFunction] {
        &self.projectives
    }

    /// ψ(us) for each p-regular class s of C_G(u), ψ given by its values on G.
    pub fn values_on_section(&self, psi: &[CycloNum]) -> Vec<CycloNum> {
        self.brauer()
            .regular_classes
            .iter()
            .map(|&s| psi[self.fusion[self.u_times[s]]].clone())
            .collect()
    }

    /// d^u_ψ by Brauer reciprocity:
    /// (1/|C|)·Σ_s |s|·ψ(us)·Ψ_φ(s⁻¹), s over p-regular classes of C.
    pub fn reciprocity(&self, psi: &[CycloNum]) -> Vec<CycloNum> {
        let ct = self.centralizer_table();
        let regs = &self.brauer().regular_classes;
        let vals = self.values_on_section(psi);
        let inv_order = BigRational::new(BigInt::one(), BigInt::from(ct.group_order()));
        self.projectives
            .iter()
            .map(|proj| {
                let s: CycloNum = regs
                    .iter()
                    .zip(&vals)
                    .map(|(&s, v)| {
                        let back = proj.value(ct.inverse_class(s));
                        (v * back).scale_int(ct.class(s).size as i64)
                    })
                    .sum();
                s.scale(&inv_order)
            })
            .collect()
    }

    /// d^u_ψ as the unique solution of ψ(us) = Σ_φ d_φ·φ(s).
    pub fn solve(&self, psi: &[CycloNum]) -> Result<Vec<CycloNum>> {
        let bd = self.brauer();
        let r = bd.regular_classes.len();
        let a: Vec<Vec<CycloNum>> = (0..r)
            .map(|j| bd.ibr.iter().map(|phi| phi[j].clone()).collect())
            .collect();
        solve(&a, &self.values_on_section(psi)).map_err(|e| match e {
            Error::Singular(m) => Error::Singular(format!(
                "{}, section {}: {m}",
                self.centralizer_table().group_name(),
                self.u_class
            )),
            other => other,
        })
    }

    /// Σ_φ d_φ·φ(s) for each p-regular s of C_G(u).
    pub fn recombine(&self, d: &[CycloNum]) -> Vec<CycloNum> {
        let bd = self.brauer();
        (0..bd.regular_classes.len())
            .map(|j| d.iter().zip(&bd.ibr).map(|(x, phi)| x * &phi[j]).sum())
            .collect()
    }
}

/// χ(us) for every p-regular class s of C_G(u).
pub fn section_values(table: &CharTable, chi: usize, sec: &SectionData) -> Vec<CycloNum> {
    sec.values_on_section(table.irreducible(chi))
}

pub fn gendec_reciprocity(table: &CharTable, chi: usize, sec: &SectionData) -> Vec<CycloNum> {
    sec.reciprocity(table.irreducible(chi))
}

pub fn gendec_solve(table: &CharTable, chi: usize, sec: &SectionData) -> Result<Vec<CycloNum>> {
    sec.solve(table.irreducible(chi))
}

/// Column range of one section inside a [`GendecMatrix`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SectionSpan {
    pub u_class: usize,
    pub u_name: String,
    pub u_order: u64,
    pub start: usize,
    pub len: usize,
}

/// All generalised decomposition numbers of one group at one prime.
#[derive(Debug, Clone)]
pub struct GendecMatrix {
    pub group: String,
    pub p: u64,
    pub spans: Vec<SectionSpan>,
    /// entries[χ][column]; columns run through the sections in order of u.
    pub entries: Vec<Vec<CycloNum>>,
}

impl GendecMatrix {
    pub fn num_columns(&self) -> usize {
        self.spans.iter().map(|s| s.len).sum()
    }

    /// (u_class, φ) of a column.
    pub fn column(&self, col: usize) -> (usize, usize) {
        let s = self
            .spans
            .iter()
            .find(|s| col >= s.start && col < s.start + s.len)
            .expect("column in range");
        (s.u_class, col - s.start)
    }

    pub fn span(&self, u_class: usize) -> Option<&SectionSpan> {
        self.spans.iter().find(|s| s.u_class == u_class)
    }

    /// d^u_{ψ,φ} for ψ = Σ coords_i·χ_i, extended linearly.
    pub fn row_for(&self, coords: &[BigInt]) -> Vec<CycloNum> {
        (0..self.num_columns())
            .map(|col| {
                coords
                    .iter()
                    .zip(&self.entries)
                    .filter(|(a, _)| !a.is_zero())
                    .map(|(a, row)| row[col].scale(&BigRational::from_integer(a.clone())))
                    .sum()
            })
            .collect()
    }
}

fn sections_in_order(ds: &GroupDataset, p: u64) -> Result<Vec<&SectionData>> {
    let pd = ds.prime(p)?;
    let mut secs: Vec<&SectionData> = pd.sections.iter().collect();
    secs.sort_by_key(|s| s.u_class);
    let have: Vec<usize> = secs.iter().map(|s| s.u_class).collect();
    let want = ds.table.p_element_classes(p);
    if have != want {
        return Err(Error::Missing(format!(
            "{} at p={p}: sections for classes {have:?}, need {want:?}",
            ds.name()
        )));
    }
    Ok(secs)
}

/// Computes every d^u_{χ,φ} by both methods and checks the classical
/// constraints: agreement, u = 1 columns equal D, and entries in Q(ζ_{|u|}).
pub fn gendec_all(ds: &GroupDataset, p: u64) -> Result<GendecMatrix> {
    let table = &ds.table;
    let pd = ds.prime(p)?;
    let secs = sections_in_order(ds, p)?;
    let k = table.num_classes();
    let mut spans = Vec::new();
    let mut start = 0;
    for s in &secs {
        spans.push(SectionSpan {
            u_class: s.u_class,
            u_name: table.class(s.u_class).name.clone(),
            u_order: s.u_order,
            start,
            len: s.num_ibr(),
        });
        start += s.num_ibr();
    }
    let rows: Vec<Vec<CycloNum>> = (0..k)
        .into_par_iter()
        .map(|chi| {
            let mut row = Vec::with_capacity(start);
            for s in &secs {
                let rec = gendec_reciprocity(table, chi, s);
                let sol = gendec_solve(table, chi, s)?;
                if rec != sol {
                    return Err(Error::MethodMismatch(format!(
                        "{} at p={p}, character {chi}, class {}: reciprocity {:?}, solve {:?}",
                        ds.name(),
                        table.class(s.u_class).name,
                        rec,
                        sol
                    )));
                }
                for (phi, d) in rec.iter().enumerate() {
                    if s.u_order % d.order() != 0 {
                        return Err(Error::Invariant(format!(
                            "{} at p={p}: d^{}_{{{chi},{phi}}} = {d} is not in Q(zeta_{})",
                            ds.name(),
                            table.class(s.u_class).name,
                            s.u_order
                        )));
                    }
                }
                row.extend(rec);
            }
            Ok(row)
        })
        .collect::<Result<_>>()?;
    let id = &spans[0];
    debug_assert_eq!(id.u_class, 0);
    if id.len != pd.brauer.num_ibr() {
        return Err(Error::Invariant(format!(
            "{} at p={p}: identity section has {} Brauer characters, G has {}",
            ds.name(),
            id.len,
            pd.brauer.num_ibr()
        )));
    }
    for chi in 0..k {
        for phi in 0..id.len {
            let want = CycloNum::from_integer(pd.brauer.decomposition[chi][phi]);
            if rows[chi][phi] != want {
                return Err(Error::Invariant(format!(
                    "{} at p={p}: d^1_{{{chi},{phi}}} = {} but D has {}",
                    ds.name(),
                    rows[chi][phi],
                    want
                )));
            }
        }
    }
    Ok(GendecMatrix {
        group: ds.name().to_string(),
        p,
        spans,
        entries: rows,
    })
}

/// Re-evaluates Σ_φ d^u_{χ,φ}·φ(s) against χ(us); returns the number of
/// values compared or the first mismatch.
pub fn check_round_trip(gm: &GendecMatrix, ds: &GroupDataset) -> Result<usize> {
    let secs = sections_in_order(ds, gm.p)?;
    let mut count = 0;
    for (span, s) in gm.spans.iter().zip(&secs) {
        for chi in 0..ds.table.num_classes() {
            let d = &gm.entries[chi][span.start..span.start + span.len];
            let got = s.recombine(d);
            let want = section_values(&ds.table, chi, s);
            if got != want {
                return Err(Error::Invariant(format!(
                    "{} at p={}: round trip fails for character {chi} at class {}",
                    gm.group, gm.p, span.u_name
                )));
            }
            count += got.len();
        }
    }
    Ok(count)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SecondMainViolation {
    pub character: usize,
    pub u_class: String,
    pub phi: usize,
    pub reason: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SecondMainReport {
    pub group: String,
    pub prime: u64,
    pub entries_checked: usize,
    pub violations: Vec<SecondMainViolation>,
}

impl SecondMainReport {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Brauer's Second Main Theorem: d^u_{χ,φ} vanishes unless χ lies in the
/// Brauer correspondent of φ's block of C_G(u), and unless |u| ≤ p^d(B).
pub fn check_second_main(gm: &GendecMatrix, ds: &GroupDataset) -> Result<SecondMainReport> {
    let pd = ds.prime(gm.p)?;
    let secs = sections_in_order(ds, gm.p)?;
    let mut violations = Vec::new();
    let mut checked = 0;
    for (span, s) in gm.spans.iter().zip(&secs) {
        for chi in 0..ds.table.num_classes() {
            let b = pd.brauer.block_of_irr[chi];
            let defect = pd.blocks[b].defect;
            for phi in 0..span.len {
                checked += 1;
                let d = &gm.entries[chi][span.start + phi];
                if d.is_zero() {
                    continue;
                }
                let cb = s.block_of_ibr(phi);
                let mut reason = None;
                match s.correspondent_block.get(&cb) {
                    Some(&g) if g == b => {}
                    Some(&g) => {
                        reason = Some(format!(
                            "centralizer block {cb} corresponds to block {g}, character in {b}"
                        ))
                    }
                    None => reason = Some(format!("centralizer block {cb} has no correspondent")),
                }
                if span.u_order > gm.p.pow(defect) {
                    reason = Some(format!(
                        "|u| = {} exceeds p^defect = {}",
                        span.u_order,
                        gm.p.pow(defect)
                    ));
                }
                if let Some(reason) = reason {
                    violations.push(SecondMainViolation {
                        character: chi,
                        u_class: span.u_name.clone(),
                        phi,
                        reason,
                    });
                }
            }
        }
    }
    Ok(SecondMainReport {
        group: gm.group.clone(),
        prime: gm.p,
        entries_checked: checked,
        violations,
    })
}

/// Outcome of Σ_χ d^u_{χ,φ}·d^u_{χ,ψ}′ = C_{φψ} for one section, with the
/// second factor conjugated or taken as is.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CartanCheck {
    pub u_class: String,
    pub with_conj: bool,
    pub without_conj: bool,
}

pub fn cartan_cross_check(gm: &GendecMatrix, ds: &GroupDataset) -> Result<Vec<CartanCheck>> {
    let secs = sections_in_order(ds, gm.p)?;
    let mut out = Vec::new();
    for (span, s) in gm.spans.iter().zip(&secs) {
        let cartan = cartan_matrix(s.brauer());
        let col =
            |phi: usize| -> Vec<&CycloNum> { gm.entries.iter().map(|row| &row[span.start + phi]).collect() };
        let mut with_conj = true;
        let mut without_conj = true;
        for phi in 0..span.len {
            for psi in 0..span.len {
                let a = col(phi);
                let b = col(psi);
                let want = CycloNum::from_integer(cartan[phi][psi]);
                let c1: CycloNum = a.iter().zip(&b).map(|(x, y)| *x * &y.conj()).sum();
                let c2: CycloNum = a.iter().zip(&b).map(|(x, y)| *x * *y).sum();
                with_conj &= c1 == want;
                without_conj &= c2 == want;
            }
        }
        out.push(CartanCheck {
            u_class: span.u_name.clone(),
            with_conj,
            without_conj,
        });
    }
    Ok(out)
}

/// Whether every entry of the u-columns lies in Q(ζ_{p^a}).
pub fn entries_in_p_fields(gm: &GendecMatrix) -> bool {
    gm.spans.iter().all(|span| {
        gm.entries.iter().all(|row| {
            row[span.start..span.start + span.len]
                .iter()
                .all(|d| p_part(d.order(), gm.p) == d.order() && span.u_order % d.order() == 0)
        })
    })
}
