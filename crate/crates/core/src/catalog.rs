//! Bundled configurations and the JSON configuration format.

use crate::coxeter::validate_cluster;
use crate::error::{Error, Result};
use crate::exactnum::{q, QNum};
use crate::geometry::InversiveVector;
use crate::groupwords::Configuration;
use crate::matrix::QMatrix;
use crate::orbit::SampleBox;
use serde::{Deserialize, Serialize};
use std::path::Path;

pub const CATALOG_ENV: &str = "PACKINGLAB_CATALOG";

const BUILTIN: &[(&str, &str)] = &[
    ("d1n3", include_str!("../data/d1n3.json")),
    ("d1n3-base", include_str!("../data/d1n3-base.json")),
    ("d3n3", include_str!("../data/d3n3.json")),
    ("d3n5", include_str!("../data/d3n5.json")),
    ("d3n6", include_str!("../data/d3n6.json")),
    ("d3n7", include_str!("../data/d3n7.json")),
    ("d3n8", include_str!("../data/d3n8.json")),
    ("d3n10", include_str!("../data/d3n10.json")),
    ("d3n11", include_str!("../data/d3n11.json")),
    ("d3n13", include_str!("../data/d3n13.json")),
    ("bi1", include_str!("../data/bi1.json")),
    ("bi1-orbit-basis", include_str!("../data/bi1-orbit-basis.json")),
    ("bi10-example", include_str!("../data/bi10-example.json")),
    ("bi17-cluster48", include_str!("../data/bi17-cluster48.json")),
];

/// On-disk form, field order canonical.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CatalogFile {
    pub id: String,
    pub n: usize,
    pub d: i64,
    pub rows: Vec<Vec<QNum>>,
    pub labels: Vec<String>,
    pub words: Vec<Option<String>>,
    pub gram: Option<Vec<Vec<QNum>>>,
    pub clusters: Option<Vec<Vec<String>>>,
    pub source: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CatalogEntry {
    pub id: String,
    pub config: Configuration,
    pub gram: Option<QMatrix>,
    pub clusters: Vec<Vec<String>>,
    pub source: String,
}

impl CatalogEntry {
    pub fn to_file(&self) -> CatalogFile {
        CatalogFile {
            id: self.id.clone(),
            n: self.config.dim(),
            d: self.config.form_d,
            rows: self.config.rows().iter().map(|r| r.coords().to_vec()).collect(),
            labels: self.config.labels().to_vec(),
            words: self.config.words().to_vec(),
            gram: self.gram.as_ref().map(|g| g.to_rows()),
            clusters: Some(self.clusters.clone()),
            source: self.source.clone(),
        }
    }

    /// Known clusters as 0-based row indices.
    pub fn cluster_indices(&self) -> Result<Vec<Vec<usize>>> {
        self.clusters
            .iter()
            .map(|c| {
                let ls: Vec<&str> = c.iter().map(|s| s.as_str()).collect();
                self.config.indices_of(&ls)
            })
            .collect()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ValidationReport {
    pub id: String,
    pub rows_checked: usize,
    pub gram_checked: bool,
    pub clusters_checked: usize,
    pub findings: Vec<String>,
    /// Known clusters that fail the cluster conditions against the computed Gram.
    pub cluster_findings: Vec<String>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.findings.is_empty() && self.cluster_findings.is_empty()
    }
}

/// Every check on a raw file, collecting findings instead of failing.
pub fn validate_file(f: &CatalogFile) -> ValidationReport {
    let mut rep = ValidationReport { id: f.id.clone(), ..Default::default() };
    let mut rows = Vec::new();
    for (i, r) in f.rows.iter().enumerate() {
        match InversiveVector::new(r.clone()) {
            Ok(v) => {
                let nrm = v.norm();
                if !v.is_normalized() {
                    rep.findings.push(format!("row {} ({}): norm {}, expected -1", i + 1, label(f, i), nrm));
                }
                if v.dim() != f.n {
                    rep.findings.push(format!("row {}: dimension {}, header says {}", i + 1, v.dim(), f.n));
                }
                rows.push(v);
            }
            Err(e) => rep.findings.push(format!("row {}: {}", i + 1, e)),
        }
        rep.rows_checked += 1;
    }
    if f.labels.len() != f.rows.len() || f.words.len() != f.rows.len() {
        rep.findings.push(format!(
            "{} rows, {} labels, {} words",
            f.rows.len(),
            f.labels.len(),
            f.words.len()
        ));
    }
    if rows.len() != f.rows.len() || rows.iter().any(|r| r.dim() != f.n) {
        return rep;
    }
    let g = match crate::geometry::gram(&rows) {
        Ok(g) => g,
        Err(e) => {
            rep.findings.push(e.to_string());
            return rep;
        }
    };
    if let Some(exp) = &f.gram {
        rep.gram_checked = true;
        if exp.len() != rows.len() || exp.iter().any(|r| r.len() != rows.len()) {
            rep.findings.push("gram has the wrong shape".into());
        } else {
            for (i, er) in exp.iter().enumerate() {
                for (j, e) in er.iter().enumerate() {
                    if g.get(i, j) != e {
                        rep.findings.push(format!(
                            "gram mismatch at ({},{}): expected {}, computed {}",
                            i + 1,
                            j + 1,
                            e,
                            g.get(i, j)
                        ));
                    }
                }
            }
        }
    }
    for c in f.clusters.iter().flatten() {
        let idx: Option<Vec<usize>> = c.iter().map(|l| f.labels.iter().position(|x| x == l)).collect();
        let Some(idx) = idx else {
            rep.findings.push(format!("cluster {:?} names an unknown label", c));
            continue;
        };
        rep.clusters_checked += 1;
        match validate_cluster(&g, &idx) {
            Ok(r) if r.verdict => {}
            Ok(r) => {
                let bad: Vec<String> = r
                    .checks
                    .iter()
                    .filter(|k| !k.ok)
                    .map(|k| format!("({},{}) = {}", f.labels[k.i], f.labels[k.j], k.entry))
                    .collect();
                rep.cluster_findings.push(format!("cluster {:?} fails at {}", c, bad.join(", ")));
            }
            Err(e) => rep.cluster_findings.push(format!("cluster {:?}: {}", c, e)),
        }
    }
    rep
}

fn label(f: &CatalogFile, i: usize) -> &str {
    f.labels.get(i).map(|s| s.as_str()).unwrap_or("?")
}

pub fn validate(entry: &CatalogEntry) -> ValidationReport {
    validate_file(&entry.to_file())
}

fn first_error(f: &CatalogFile) -> Option<Error> {
    let rep = validate_file(f);
    let msg = rep.findings.into_iter().next()?;
    Some(if msg.contains("norm") {
        Error::NotNormalized(msg)
    } else {
        Error::InvalidConfig(msg)
    })
}

pub fn parse(text: &str) -> Result<CatalogEntry> {
    let f: CatalogFile = serde_json::from_str(text)?;
    if let Some(e) = first_error(&f) {
        return Err(e);
    }
    let rows = f
        .rows
        .iter()
        .map(|r| InversiveVector::new(r.clone()))
        .collect::<Result<Vec<_>>>()?;
    let config = Configuration::new(f.id.clone(), f.d, rows, f.labels, f.words)?;
    Ok(CatalogEntry {
        id: f.id,
        config,
        gram: f.gram.map(QMatrix::from_rows).transpose()?,
        clusters: f.clusters.unwrap_or_default(),
        source: f.source,
    })
}

pub fn load(path: impl AsRef<Path>) -> Result<CatalogEntry> {
    let p = path.as_ref();
    let text = std::fs::read_to_string(p).map_err(|e| Error::Io(format!("{}: {}", p.display(), e)))?;
    parse(&text)
}

/// Canonical text: two-space indent, trailing newline.
pub fn save(entry: &CatalogEntry) -> String {
    to_canonical(&entry.to_file())
}

pub fn to_canonical(f: &CatalogFile) -> String {
    let mut s = serde_json::to_string_pretty(f).expect("catalog serializes");
    s.push('\n');
    s
}

pub fn list_builtin() -> Vec<&'static str> {
    BUILTIN.iter().map(|(id, _)| *id).collect()
}

pub fn builtin_text(id: &str) -> Option<&'static str> {
    BUILTIN.iter().find(|(i, _)| *i == id).map(|(_, t)| *t)
}

/// Reads `$PACKINGLAB_CATALOG/<id>.json` when the variable is set, the bundled
/// copy otherwise.
pub fn get_builtin(id: &str) -> Result<CatalogEntry> {
    if let Ok(dir) = std::env::var(CATALOG_ENV) {
        let p = Path::new(&dir).join(format!("{}.json", id));
        if !p.exists() {
            return Err(Error::NotFound(format!("{} in {}", id, dir)));
        }
        return load(p);
    }
    let text = builtin_text(id).ok_or_else(|| Error::NotFound(format!("builtin {}", id)))?;
    parse(text)
}

/// `builtin:ID` or a file path.
pub fn resolve(spec: &str) -> Result<CatalogEntry> {
    match spec.strip_prefix("builtin:") {
        Some(id) => get_builtin(id),
        None => load(spec),
    }
}

/// Sampling boxes for the empty-interior check.
pub fn sample_box(id: &str) -> Option<SampleBox> {
    match id {
        "d3n3" => Some(vec![
            (q("2*sqrt(3)-sqrt(2)"), q("2*sqrt(3)+sqrt(2)")),
            (q("-1*sqrt(2)"), q("sqrt(2)")),
        ]),
        "d3n6" => {
            let h = q("1/2*sqrt(6)-1/2*sqrt(2)");
            Some(vec![(-&h, h); 5])
        }
        _ => None,
    }
}
