//! JSON dataset ingestion and eager validation.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::Deserialize;

use crate::blocks::{partition_blocks, Block, BrauerData};
use crate::cyclo::{parse_cyclo, CycloNum};
use crate::error::{Error, Result};
use crate::gendec::SectionData;
use crate::numtheory::{is_prime, primes_dividing};
use crate::tables::{CharTable, ClassData};

/// A subgroup H ≤ G given by its table and class fusion into G.
#[derive(Debug, Clone)]
pub struct SubgroupEmbedding {
    pub subgroup_table: Arc<CharTable>,
    pub fusion: Vec<usize>,
}

impl SubgroupEmbedding {
    pub fn new(ambient: &CharTable, subgroup_table: Arc<CharTable>, fusion: Vec<usize>) -> Result<Self> {
        let h = &subgroup_table;
        let ctx = format!("fusion {} -> {}", h.group_name(), ambient.group_name());
        let inv = |m: String| Error::Invariant(format!("{ctx}: {m}"));
        if !ambient.group_order().is_multiple_of(h.group_order()) {
            return Err(inv("subgroup order does not divide the group order".into()));
        }
        if fusion.len() != h.num_classes() {
            return Err(inv(format!(
                "{} entries for {} classes",
                fusion.len(),
                h.num_classes()
            )));
        }
        if fusion[0] != 0 {
            return Err(inv("identity does not fuse to identity".into()));
        }
        let mut fused = vec![0u64; ambient.num_classes()];
        for (c, &g) in fusion.iter().enumerate() {
            if g >= ambient.num_classes() {
                return Err(inv(format!("class {c} fuses to {g}, out of range")));
            }
            if h.class(c).element_order != ambient.class(g).element_order {
                return Err(inv(format!(
                    "class {} of order {} fuses to {} of order {}",
                    h.class(c).name,
                    h.class(c).element_order,
                    ambient.class(g).name,
                    ambient.class(g).element_order
                )));
            }
            if !ambient
                .centralizer_order(g)
                .is_multiple_of(h.centralizer_order(c))
            {
                return Err(inv(format!(
                    "centralizer of {} does not divide centralizer of {}",
                    h.class(c).name,
                    ambient.class(g).name
                )));
            }
            fused[g] += h.class(c).size;
        }
        if let Some(g) = (0..ambient.num_classes()).find(|&g| fused[g] > ambient.class(g).size) {
            return Err(inv(format!(
                "too many elements fuse into {}",
                ambient.class(g).name
            )));
        }
        // Restrictions of irreducibles must be genuine characters of H.
        let order = CycloNum::from_integer(h.group_order() as i64);
        for (i, chi) in ambient.irreducibles().iter().enumerate() {
            for (j, psi) in h.irreducibles().iter().enumerate() {
                let sum: CycloNum = (0..h.num_classes())
                    .map(|c| (&chi[fusion[c]] * &psi[c].conj()).scale_int(h.class(c).size as i64))
                    .sum();
                let m = sum.try_div(&order)?;
                if m.to_i64().is_none_or(|m| m < 0) {
                    return Err(inv(format!(
                        "restriction of irreducible {i} has multiplicity {m} at irreducible {j} of {}",
                        h.group_name()
                    )));
                }
            }
        }
        Ok(SubgroupEmbedding {
            subgroup_table,
            fusion,
        })
    }

    /// Whether the embedding is the identity of a group onto itself.
    pub fn is_identity(&self, ambient: &CharTable) -> bool {
        self.subgroup_table.group_order() == ambient.group_order()
            && self.fusion.iter().enumerate().all(|(i, &g)| i == g)
    }
}

/// Per-prime data of the main table.
#[derive(Debug, Clone)]
pub struct PrimeData {
    pub brauer: BrauerData,
    pub blocks: Vec<Block>,
    pub sections: Vec<SectionData>,
}

/// Per-prime data attached to a subgroup, with the hypotheses asserted by
/// the exporter.
#[derive(Debug, Clone)]
pub struct SubgroupPrimeData {
    pub brauer: BrauerData,
    pub blocks: Vec<Block>,
    /// A Sylow p-subgroup P of H satisfies P ∩ gPg⁻¹ = 1 for all g ∉ H.
    pub ti: bool,
    /// H ⊇ N_G(P).
    pub contains_normalizer: bool,
    /// P is cyclic and H = N_G(P₁) for the subgroup P₁ ≤ P of order p.
    pub cyclic_normalizer: bool,
    /// Classes u of G with C_G(u) ≤ H for some representative.
    pub contains_centralizer_of: Vec<usize>,
    /// Block of G to its Brauer correspondent in H.
    pub correspondent_block: BTreeMap<usize, usize>,
}

#[derive(Debug, Clone)]
pub struct SubgroupData {
    pub name: String,
    pub embedding: SubgroupEmbedding,
    pub primes: BTreeMap<u64, SubgroupPrimeData>,
}

/// One group's ingested data.
#[derive(Debug, Clone)]
pub struct GroupDataset {
    pub table: Arc<CharTable>,
    pub primes: BTreeMap<u64, PrimeData>,
    pub subgroups: Vec<SubgroupData>,
}

impl GroupDataset {
    pub fn name(&self) -> &str {
        self.table.group_name()
    }

    pub fn prime(&self, p: u64) -> Result<&PrimeData> {
        self.primes
            .get(&p)
            .ok_or_else(|| Error::Missing(format!("{} has no data at p={p}", self.name())))
    }

    pub fn subgroup(&self, name: &str) -> Option<&SubgroupData> {
        self.subgroups.iter().find(|s| s.name == name)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawClass {
    name: String,
    size: u64,
    order: u64,
    #[serde(default)]
    powermaps: Option<BTreeMap<String, usize>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTable {
    #[serde(default)]
    format: Option<u32>,
    name: String,
    order: u64,
    exponent: u64,
    classes: Vec<RawClass>,
    irreducibles: Vec<Vec<String>>,
    #[serde(default)]
    primes: BTreeMap<String, RawPrime>,
    #[serde(default)]
    subgroups: Vec<RawSubgroup>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPrime {
    regular_classes: Vec<usize>,
    ibr: Vec<Vec<String>>,
    decomposition: Vec<Vec<i64>>,
    block_of_irr: Vec<usize>,
    block_of_ibr: Vec<usize>,
    #[serde(default)]
    sections: Vec<RawSection>,
    #[serde(default)]
    ti: Option<bool>,
    #[serde(default)]
    contains_normalizer: Option<bool>,
    #[serde(default)]
    cyclic_normalizer: Option<bool>,
    #[serde(default)]
    contains_centralizer_of: Option<Vec<usize>>,
    #[serde(default)]
    correspondent_block: Option<BTreeMap<String, usize>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSection {
    u_class: usize,
    centralizer: RawTable,
    fusion: Vec<usize>,
    u_in_centralizer: usize,
    u_times: Vec<usize>,
    correspondent_block: BTreeMap<String, usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSubgroup {
    name: String,
    table: RawTable,
    fusion: Vec<usize>,
    #[serde(default)]
    primes: BTreeMap<String, RawPrime>,
}

fn join(path: &str, field: impl std::fmt::Display) -> String {
    if path.is_empty() {
        field.to_string()
    } else {
        format!("{path}.{field}")
    }
}

fn parse_prime(key: &str, path: &str) -> Result<u64> {
    match key.parse::<u64>() {
        Ok(p) if is_prime(p) => Ok(p),
        _ => Err(Error::schema(join(path, key), format!("`{key}` is not a prime"))),
    }
}

fn parse_values(rows: &[Vec<String>], path: &str) -> Result<Vec<Vec<CycloNum>>> {
    rows.iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, s)| {
                    parse_cyclo(s).map_err(|e| Error::schema(format!("{path}[{i}][{j}]"), e.to_string()))
                })
                .collect()
        })
        .collect()
}

fn parse_block_map(m: &BTreeMap<String, usize>, path: &str) -> Result<BTreeMap<usize, usize>> {
    m.iter()
        .map(|(k, &v)| {
            k.parse::<usize>()
                .map(|k| (k, v))
                .map_err(|_| Error::schema(join(path, k), "block id must be a non-negative integer"))
        })
        .collect()
}

fn build_table(raw: &RawTable, path: &str) -> Result<CharTable> {
    let needed = primes_dividing(raw.exponent);
    let mut classes = Vec::with_capacity(raw.classes.len());
    for (i, c) in raw.classes.iter().enumerate() {
        let cpath = join(path, format!("classes[{i}]"));
        let Some(pm) = &c.powermaps else {
            return Err(Error::schema(
                join(&cpath, "powermaps"),
                format!("class {} has no power maps", c.name),
            ));
        };
        let mut power_maps = BTreeMap::new();
        for (k, &v) in pm {
            power_maps.insert(parse_prime(k, &join(&cpath, "powermaps"))?, v);
        }
        if let Some(q) = needed.iter().find(|q| !power_maps.contains_key(q)) {
            return Err(Error::schema(
                join(&cpath, "powermaps"),
                format!("class {} has no power map for prime {q}", c.name),
            ));
        }
        classes.push(ClassData {
            name: c.name.clone(),
            size: c.size,
            element_order: c.order,
            power_maps,
        });
    }
    let irr = parse_values(&raw.irreducibles, &join(path, "irreducibles"))?;
    CharTable::new(raw.name.clone(), raw.order, raw.exponent, classes, irr)
}

fn build_brauer(table: &CharTable, p: u64, raw: &RawPrime, path: &str) -> Result<(BrauerData, Vec<Block>)> {
    let ibr = parse_values(&raw.ibr, &join(path, "ibr"))?;
    let bd = BrauerData::new(
        table,
        p,
        raw.regular_classes.clone(),
        ibr,
        raw.decomposition.clone(),
        raw.block_of_irr.clone(),
        raw.block_of_ibr.clone(),
    )?;
    let blocks = partition_blocks(table, &bd)?;
    Ok((bd, blocks))
}

fn build_dataset(raw: &RawTable, path: &str, ambient: u64) -> Result<GroupDataset> {
    if !ambient.is_multiple_of(raw.exponent) {
        return Err(Error::schema(
            join(path, "exponent"),
            format!(
                "exponent {} does not divide the ambient order {ambient}",
                raw.exponent
            ),
        ));
    }
    let table = Arc::new(build_table(raw, path)?);
    let mut primes = BTreeMap::new();
    for (key, rp) in &raw.primes {
        let ppath = join(path, format!("primes.{key}"));
        let p = parse_prime(key, &join(path, "primes"))?;
        let (brauer, blocks) = build_brauer(&table, p, rp, &ppath)?;
        let mut sections = Vec::with_capacity(rp.sections.len());
        for (i, rs) in rp.sections.iter().enumerate() {
            let spath = format!("{ppath}.sections[{i}]");
            let cent = build_dataset(&rs.centralizer, &join(&spath, "centralizer"), ambient)?;
            let corr = parse_block_map(&rs.correspondent_block, &join(&spath, "correspondent_block"))?;
            let sec = SectionData::new(
                &table,
                &blocks,
                p,
                rs.u_class,
                cent,
                rs.fusion.clone(),
                rs.u_in_centralizer,
                rs.u_times.clone(),
                corr,
            )?;
            sections.push(sec);
        }
        let mut seen: Vec<usize> = sections.iter().map(|s| s.u_class).collect();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != sections.len() {
            return Err(Error::schema(join(&ppath, "sections"), "repeated u_class"));
        }
        primes.insert(
            p,
            PrimeData {
                brauer,
                blocks,
                sections,
            },
        );
    }
    let mut subgroups = Vec::with_capacity(raw.subgroups.len());
    for (i, rsub) in raw.subgroups.iter().enumerate() {
        let hpath = join(path, format!("subgroups[{i}]"));
        let htable = Arc::new(build_table(&rsub.table, &join(&hpath, "table"))?);
        if !ambient.is_multiple_of(htable.exponent()) {
            return Err(Error::schema(
                join(&hpath, "table.exponent"),
                "exponent does not divide the ambient order",
            ));
        }
        let embedding = SubgroupEmbedding::new(&table, htable.clone(), rsub.fusion.clone())?;
        let mut hprimes = BTreeMap::new();
        for (key, rp) in &rsub.primes {
            let ppath = join(&hpath, format!("primes.{key}"));
            let p = parse_prime(key, &join(&hpath, "primes"))?;
            let (brauer, blocks) = build_brauer(&htable, p, rp, &ppath)?;
            let correspondent_block = parse_block_map(
                rp.correspondent_block.as_ref().unwrap_or(&BTreeMap::new()),
                &join(&ppath, "correspondent_block"),
            )?;
            let g_blocks = primes.get(&p).map_or(0, |d: &PrimeData| d.blocks.len());
            for (&b, &c) in &correspondent_block {
                if b >= g_blocks || c >= blocks.len() {
                    return Err(Error::schema(
                        join(&ppath, format!("correspondent_block.{b}")),
                        "block id out of range",
                    ));
                }
            }
            let contains_centralizer_of = rp.contains_centralizer_of.clone().unwrap_or_default();
            if let Some(&u) = contains_centralizer_of
                .iter()
                .find(|&&u| u >= table.num_classes())
            {
                return Err(Error::schema(
                    join(&ppath, "contains_centralizer_of"),
                    format!("class index {u} out of range"),
                ));
            }
            hprimes.insert(
                p,
                SubgroupPrimeData {
                    brauer,
                    blocks,
                    ti: rp.ti.unwrap_or(false),
                    contains_normalizer: rp.contains_normalizer.unwrap_or(false),
                    cyclic_normalizer: rp.cyclic_normalizer.unwrap_or(false),
                    contains_centralizer_of,
                    correspondent_block,
                },
            );
        }
        subgroups.push(SubgroupData {
            name: rsub.name.clone(),
            embedding,
            primes: hprimes,
        });
    }
    Ok(GroupDataset {
        table,
        primes,
        subgroups,
    })
}

/// Parses and validates a dataset held in memory.
pub fn parse_dataset(text: &str) -> Result<GroupDataset> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let raw: RawTable = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        Error::schema(
            if path == "." { String::new() } else { path },
            e.inner().to_string(),
        )
    })?;
    match raw.format {
        Some(1) => {}
        Some(f) => return Err(Error::schema("format", format!("unsupported format {f}"))),
        None => return Err(Error::schema("format", "missing format version")),
    }
    build_dataset(&raw, "", raw.exponent)
}

/// Reads, parses and validates one dataset file.
pub fn load_dataset(path: impl AsRef<Path>) -> Result<GroupDataset> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_dataset(&text)
}

#[derive(Debug, Clone, Deserialize)]
pub struct ManifestSubgroup {
    pub name: String,
    pub primes: Vec<u64>,
    #[serde(default)]
    pub ti: BTreeMap<String, bool>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct ManifestEntry {
    pub group: String,
    pub file: String,
    pub primes: Vec<u64>,
    #[serde(default)]
    pub subgroups: Vec<ManifestSubgroup>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct Manifest {
    pub format: u32,
    pub groups: Vec<ManifestEntry>,
}

/// A corpus directory: a manifest plus one dataset file per group.
#[derive(Debug, Clone)]
pub struct Corpus {
    pub dir: PathBuf,
    pub manifest: Manifest,
}

impl Corpus {
    pub fn open(dir: impl AsRef<Path>) -> Result<Self> {
        let dir = dir.as_ref().to_path_buf();
        let mpath = dir.join("manifest.json");
        let text = std::fs::read_to_string(&mpath).map_err(|source| Error::Io {
            path: mpath.clone(),
            source,
        })?;
        let de = &mut serde_json::Deserializer::from_str(&text);
        let manifest: Manifest = serde_path_to_error::deserialize(de)
            .map_err(|e| Error::schema(format!("manifest.json:{}", e.path()), e.inner().to_string()))?;
        if manifest.format != 1 {
            return Err(Error::schema("manifest.json:format", "unsupported format"));
        }
        Ok(Corpus { dir, manifest })
    }

    pub fn entry(&self, group: &str) -> Option<&ManifestEntry> {
        self.manifest.groups.iter().find(|g| g.group == group)
    }

    /// Loads one group and checks it against its manifest entry.
    pub fn load(&self, entry: &ManifestEntry) -> Result<GroupDataset> {
        let ds = load_dataset(self.dir.join(&entry.file)).map_err(|e| match e {
            Error::Schema { path, msg } => Error::Schema {
                path: format!("{}:{path}", entry.file),
                msg,
            },
            other => other,
        })?;
        let primes: Vec<u64> = ds.primes.keys().copied().collect();
        if ds.name() != entry.group || primes != entry.primes {
            return Err(Error::Invariant(format!(
                "{} does not match its manifest entry",
                entry.file
            )));
        }
        for ms in &entry.subgroups {
            let Some(sub) = ds.subgroup(&ms.name) else {
                return Err(Error::Missing(format!(
                    "{}: subgroup {} listed in manifest",
                    entry.group, ms.name
                )));
            };
            for (p, flag) in &ms.ti {
                let p: u64 = p.parse().unwrap_or(0);
                if sub.primes.get(&p).map(|d| d.ti) != Some(*flag) {
                    return Err(Error::Invariant(format!(
                        "{}: ti flag of {} at p={p} disagrees with manifest",
                        entry.group, ms.name
                    )));
                }
            }
        }
        Ok(ds)
    }

    pub fn load_group(&self, group: &str) -> Result<GroupDataset> {
        let entry = self
            .entry(group)
            .ok_or_else(|| Error::Missing(format!("group {group} is not in the corpus")))?;
        self.load(entry)
    }

    pub fn load_all(&self) -> Result<Vec<GroupDataset>> {
        self.manifest.groups.iter().map(|e| self.load(e)).collect()
    }
}
