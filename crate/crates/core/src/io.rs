//! Text and file formats: JSON for maps and hypermaps, JSON lines for shards
//! and graph classes, a JSON manifest per genus, and a CSV count table.
//!
//! Layout under an output directory `out`:
//!
//! ```text
//! out/g<g>/<triple key>.jsonl   one RgEntry per line
//! out/g<g>/manifest.json        triple keys, per-triple counts, total
//! out/g<g>/C.jsonl              canonical graphs of C_g
//! out/table.csv                 genus,R,C,L,M
//! ```

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::enumerate::{Enumeration, RgEntry, CIRCLE_KEY};
use crate::error::{Error, Result};
use crate::graph::{GenusTable, MultiGraph};
use crate::map::{CombinatorialMap, Hypermap};
use crate::perm::Permutation;
use crate::rules::{minsep_genus, TypeTriple};

/// `{"n": .., "sigma": .., "alpha": .., "phi": ..}` with permutations in
/// normalized cycle text.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermTripleRecord {
    pub n: usize,
    pub sigma: String,
    pub alpha: String,
    pub phi: String,
}

impl PermTripleRecord {
    fn new(sigma: &Permutation, alpha: &Permutation, phi: &Permutation) -> Self {
        Self {
            n: sigma.degree(),
            sigma: sigma.to_string(),
            alpha: alpha.to_string(),
            phi: phi.to_string(),
        }
    }

    fn parse(&self) -> Result<(Permutation, Permutation, Permutation)> {
        Ok((
            Permutation::parse_cycles(self.n, &self.sigma)?,
            Permutation::parse_cycles(self.n, &self.alpha)?,
            Permutation::parse_cycles(self.n, &self.phi)?,
        ))
    }
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("record serializes")
}

pub fn hypermap_to_json(h: &Hypermap) -> String {
    to_json(&PermTripleRecord::new(h.sigma(), h.alpha(), h.phi()))
}

pub fn hypermap_from_json(text: &str) -> Result<Hypermap> {
    let (s, a, f) = parse_json::<PermTripleRecord>(text)?.parse()?;
    Hypermap::from_triple(s, a, f)
}

pub fn map_to_json(m: &CombinatorialMap) -> String {
    to_json(&PermTripleRecord::new(m.sigma(), m.alpha(), m.phi()))
}

pub fn map_from_json(text: &str) -> Result<CombinatorialMap> {
    let (s, a, f) = parse_json::<PermTripleRecord>(text)?.parse()?;
    CombinatorialMap::from_triple(s, a, f)
}

#[derive(Serialize, Deserialize)]
struct EntryRecord {
    key: String,
    g: u32,
    g_r: u32,
    hypermap: PermTripleRecord,
}

/// One shard line: `{"key":..,"g":..,"g_r":..,"hypermap":{..}}`.
pub fn entry_to_line(e: &RgEntry) -> String {
    let h = &e.hypermap;
    to_json(&EntryRecord {
        key: e.key.clone(),
        g: e.genus,
        g_r: e.ribbon_genus,
        hypermap: PermTripleRecord::new(h.sigma(), h.alpha(), h.phi()),
    })
}

/// Parses a shard line and checks the recorded genera and key against the
/// hypermap itself.
pub fn entry_from_line(line: &str) -> Result<RgEntry> {
    let rec: EntryRecord = parse_json(line)?;
    let (s, a, f) = rec.hypermap.parse()?;
    if rec.key == CIRCLE_KEY {
        let circle = RgEntry::circle();
        let ok = rec.g == 0
            && rec.g_r == 0
            && (&s, &a, &f) == (circle.hypermap.sigma(), circle.hypermap.alpha(), circle.hypermap.phi());
        return if ok {
            Ok(circle)
        } else {
            Err(Error::Parse(format!("malformed base-case record: {line}")))
        };
    }
    let h = Hypermap::from_triple(s, a, f)?;
    let triple = TypeTriple::parse_key(&rec.key)?;
    if (h.sigma().cycle_type(), h.alpha().cycle_type(), h.phi().cycle_type())
        != (triple.sigma, triple.alpha, triple.phi)
    {
        return Err(Error::Parse(format!("cycle types do not match key {}", rec.key)));
    }
    if minsep_genus(&h) != Some(rec.g) || h.genus() != rec.g_r {
        return Err(Error::Parse(format!(
            "recorded genera g={} g_r={} do not match the hypermap",
            rec.g, rec.g_r
        )));
    }
    RgEntry::new(h, rec.key).ok_or_else(|| Error::Parse("hypermap has no minsep genus".into()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestTriple {
    pub key: String,
    pub count: u64,
}

/// Per-genus index of shard files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub genus: u32,
    pub edges: Option<usize>,
    pub triples: Vec<ManifestTriple>,
    pub total: u64,
}

impl Manifest {
    pub fn from_enumeration(run: &Enumeration, edges: Option<usize>) -> Self {
        let triples: Vec<ManifestTriple> = run
            .triples
            .iter()
            .map(|t| ManifestTriple {
                key: t.key.clone(),
                count: t.count,
            })
            .collect();
        Self {
            genus: run.genus,
            edges,
            total: triples.iter().map(|t| t.count).sum(),
            triples,
        }
    }

    pub fn base_case() -> Self {
        Self {
            genus: 0,
            edges: None,
            triples: vec![ManifestTriple {
                key: CIRCLE_KEY.into(),
                count: 1,
            }],
            total: 1,
        }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("manifest serializes");
        text.push('\n');
        text
    }

    /// Parses a manifest and checks that the total matches the per-triple
    /// counts and that every key is well formed.
    pub fn from_json(text: &str) -> Result<Self> {
        let m: Manifest = parse_json(text)?;
        let sum = m
            .triples
            .iter()
            .try_fold(0u64, |acc, t| acc.checked_add(t.count))
            .ok_or_else(|| Error::Parse("manifest counts overflow".into()))?;
        if sum != m.total {
            return Err(Error::Parse(format!("manifest total {} != sum of counts {sum}", m.total)));
        }
        for t in &m.triples {
            if t.key != CIRCLE_KEY {
                TypeTriple::parse_key(&t.key)?;
            }
        }
        Ok(m)
    }
}

/// Writes canonical graphs, one JSON object per line.
pub fn graphs_to_lines(graphs: &[MultiGraph]) -> String {
    graphs.iter().map(|g| g.to_json() + "\n").collect()
}

pub fn graphs_from_lines(text: &str) -> Result<Vec<MultiGraph>> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(MultiGraph::from_json)
        .collect()
}

fn io_err(path: &Path, e: std::io::Error) -> Error {
    Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    }
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| io_err(path, e))
}

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| io_err(path, e))
}

/// On-disk layout rooted at an output directory.
#[derive(Clone, Debug)]
pub struct OutDir {
    root: PathBuf,
}

impl OutDir {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        Self { root: root.into() }
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn genus_dir(&self, g: u32) -> PathBuf {
        self.root.join(format!("g{g}"))
    }

    pub fn shard_path(&self, g: u32, key: &str) -> PathBuf {
        self.genus_dir(g).join(format!("{key}.jsonl"))
    }

    pub fn manifest_path(&self, g: u32) -> PathBuf {
        self.genus_dir(g).join("manifest.json")
    }

    pub fn classes_path(&self, g: u32) -> PathBuf {
        self.genus_dir(g).join("C.jsonl")
    }

    pub fn table_path(&self) -> PathBuf {
        self.root.join("table.csv")
    }

    fn prepare_genus_dir(&self, g: u32) -> Result<PathBuf> {
        let dir = self.genus_dir(g);
        fs::create_dir_all(&dir).map_err(|e| io_err(&dir, e))?;
        // Shards from an earlier run with a different filter would otherwise
        // linger next to the new manifest.
        let listing = fs::read_dir(&dir).map_err(|e| io_err(&dir, e))?;
        for item in listing {
            let path = item.map_err(|e| io_err(&dir, e))?.path();
            let name = path.file_name().and_then(|n| n.to_str()).unwrap_or("");
            if name.starts_with('E') && name.ends_with(".jsonl") {
                fs::remove_file(&path).map_err(|e| io_err(&path, e))?;
            }
        }
        Ok(dir)
    }

    /// Writes one shard per triple, then the manifest.
    pub fn write_enumeration(&self, run: &Enumeration, edges: Option<usize>) -> Result<Manifest> {
        self.prepare_genus_dir(run.genus)?;
        let manifest = Manifest::from_enumeration(run, edges);
        let mut rest = run.entries.as_slice();
        for t in &manifest.triples {
            let (shard, tail) = rest.split_at(t.count as usize);
            rest = tail;
            let text: String = shard.iter().map(|e| entry_to_line(e) + "\n").collect();
            write_file(&self.shard_path(run.genus, &t.key), &text)?;
        }
        write_file(&self.manifest_path(run.genus), &manifest.to_json())?;
        Ok(manifest)
    }

    /// Writes the genus-0 base case: the circle.
    pub fn write_base_case(&self) -> Result<Manifest> {
        self.prepare_genus_dir(0)?;
        let manifest = Manifest::base_case();
        write_file(
            &self.shard_path(0, CIRCLE_KEY),
            &(entry_to_line(&RgEntry::circle()) + "\n"),
        )?;
        write_file(&self.manifest_path(0), &manifest.to_json())?;
        Ok(manifest)
    }

    pub fn has_manifest(&self, g: u32) -> bool {
        self.manifest_path(g).is_file()
    }

    pub fn read_manifest(&self, g: u32) -> Result<Manifest> {
        if !self.has_manifest(g) {
            return Err(Error::MissingGenus(g));
        }
        let m = Manifest::from_json(&read_file(&self.manifest_path(g))?)?;
        if m.genus != g {
            return Err(Error::Parse(format!("manifest under g{g} records genus {}", m.genus)));
        }
        Ok(m)
    }

    /// Reads every shard listed in the manifest, checking line counts and
    /// that each entry has the shard's key and genus.
    pub fn read_shards(&self, g: u32) -> Result<(Manifest, Vec<RgEntry>)> {
        let manifest = self.read_manifest(g)?;
        let mut entries = Vec::with_capacity(manifest.total as usize);
        for t in &manifest.triples {
            let path = self.shard_path(g, &t.key);
            if !path.is_file() {
                return Err(Error::MissingGenus(g));
            }
            let text = read_file(&path)?;
            let before = entries.len();
            for line in text.lines().filter(|l| !l.is_empty()) {
                let e = entry_from_line(line)?;
                if e.key != t.key || e.genus != g {
                    return Err(Error::Parse(format!(
                        "{}: entry for {} g={} in the wrong shard",
                        path.display(),
                        e.key,
                        e.genus
                    )));
                }
                entries.push(e);
            }
            if (entries.len() - before) as u64 != t.count {
                return Err(Error::Parse(format!(
                    "{}: {} lines but manifest says {}",
                    path.display(),
                    entries.len() - before,
                    t.count
                )));
            }
        }
        Ok((manifest, entries))
    }

    pub fn write_classes(&self, g: u32, graphs: &[MultiGraph]) -> Result<()> {
        let dir = self.genus_dir(g);
        fs::create_dir_all(&dir).map_err(|e| io_err(&dir, e))?;
        write_file(&self.classes_path(g), &graphs_to_lines(graphs))
    }

    pub fn read_classes(&self, g: u32) -> Result<Vec<MultiGraph>> {
        let path = self.classes_path(g);
        if !path.is_file() {
            return Err(Error::MissingGenus(g));
        }
        graphs_from_lines(&read_file(&path)?)
    }

    pub fn write_table(&self, table: &GenusTable) -> Result<()> {
        fs::create_dir_all(&self.root).map_err(|e| io_err(&self.root, e))?;
        write_file(&self.table_path(), &table.to_csv())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::{enumerate_rg, EnumerateConfig};

    fn p(n: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(n, s).unwrap()
    }

    #[test]
    fn hypermap_json_round_trip() {
        let h = Hypermap::new(p(4, "(1,2,3,4)"), p(4, "(1,2,3,4)")).unwrap();
        let text = hypermap_to_json(&h);
        assert_eq!(text, r#"{"n":4,"sigma":"(1,2,3,4)","alpha":"(1,2,3,4)","phi":"(1,3)(2,4)"}"#);
        assert_eq!(hypermap_from_json(&text).unwrap(), h);
        let bad = r#"{"n":4,"sigma":"(1,2,3,4)","alpha":"(1,2,3,4)","phi":"(1,2)(3,4)"}"#;
        assert!(hypermap_from_json(bad).is_err());
    }

    #[test]
    fn map_json_round_trip() {
        let m = CombinatorialMap::new(p(4, "(1,4,3,2)"), p(4, "(1,2)(3,4)")).unwrap();
        assert_eq!(map_from_json(&map_to_json(&m)).unwrap(), m);
        assert!(map_from_json(r#"{"n":2,"sigma":"()","alpha":"()","phi":"()"}"#).is_err());
    }

    #[test]
    fn entry_lines_round_trip_and_validate() {
        let run = enumerate_rg(1, &EnumerateConfig::default()).unwrap();
        for e in &run.entries {
            let line = entry_to_line(e);
            assert_eq!(&entry_from_line(&line).unwrap(), e);
            let lied = line.replacen("\"g\":1", "\"g\":2", 1);
            assert!(entry_from_line(&lied).is_err(), "{lied}");
        }
        let circle = entry_to_line(&RgEntry::circle());
        assert_eq!(entry_from_line(&circle).unwrap(), RgEntry::circle());
    }

    #[test]
    fn manifest_checks_total() {
        let m = Manifest::base_case();
        assert_eq!(Manifest::from_json(&m.to_json()).unwrap(), m);
        let wrong = m.to_json().replace("\"total\": 1", "\"total\": 2");
        assert!(Manifest::from_json(&wrong).is_err());
    }

    #[test]
    fn table_csv_round_trip() {
        let t = GenusTable::build(&[1, 3, 31], &[1, 3, 17]).unwrap();
        assert_eq!(GenusTable::from_csv(&t.to_csv()).unwrap(), t);
        assert!(GenusTable::from_csv("genus,R\n1,1\n").is_err());
    }

    #[test]
    fn shards_round_trip_through_files() {
        let dir = tempfile::tempdir().unwrap();
        let out = OutDir::new(dir.path());
        let run = enumerate_rg(2, &EnumerateConfig::default()).unwrap();
        let m = out.write_enumeration(&run, None).unwrap();
        assert_eq!(m.total, 31);
        let (back, entries) = out.read_shards(2).unwrap();
        assert_eq!(back, m);
        assert_eq!(entries, run.entries);
        assert_eq!(out.read_shards(3).unwrap_err(), Error::MissingGenus(3));
    }
}
