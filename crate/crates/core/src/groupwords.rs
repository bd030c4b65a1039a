//! Generator words such as `2.3.2.11` or `(3.2.3.1).4.(3.2).~1`, their action on
//! configurations, and doubling.

use crate::coxeter::{classify_entry, EdgeKind, DEFAULT_MAX_ORDER};
use crate::error::{Error, Result};
use crate::geometry::{gram, inner, reflect_unchecked, InversiveVector};
use crate::matrix::QMatrix;
use std::collections::HashSet;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Atom {
    /// 1-based generator index.
    Gen { index: usize, reversed: bool },
    Group { word: Word, reversed: bool },
}

impl Atom {
    fn reversed(&self) -> bool {
        match self {
            Atom::Gen { reversed, .. } | Atom::Group { reversed, .. } => *reversed,
        }
    }
}

/// Right-associative word: `a.b.c` means `a.(b.(c))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    atoms: Vec<Atom>,
}

impl Word {
    pub fn new(atoms: Vec<Atom>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::Parse { pos: 0, msg: "empty word".into() });
        }
        Ok(Word { atoms })
    }

    pub fn generator(index: usize) -> Self {
        Word { atoms: vec![Atom::Gen { index, reversed: false }] }
    }

    /// `m.self`
    pub fn prepend(&self, index: usize) -> Word {
        let mut atoms = vec![Atom::Gen { index, reversed: false }];
        atoms.extend(self.atoms.iter().cloned());
        Word { atoms }
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    /// Flat generator indices; `None` if the word has groups.
    pub fn indices(&self) -> Option<Vec<usize>> {
        self.atoms
            .iter()
            .map(|a| match a {
                Atom::Gen { index, .. } => Some(*index),
                Atom::Group { .. } => None,
            })
            .collect()
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn max_index(&self) -> usize {
        self.atoms
            .iter()
            .map(|a| match a {
                Atom::Gen { index, .. } => *index,
                Atom::Group { word, .. } => word.max_index(),
            })
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.atoms.iter().enumerate() {
            if i > 0 {
                write!(f, ".")?;
            }
            if a.reversed() {
                write!(f, "~")?;
            }
            match a {
                Atom::Gen { index, .. } => write!(f, "{}", index)?,
                Atom::Group { word, .. } => write!(f, "({})", word)?,
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for Word {
    type Err = Error;
    fn from_str(s: &str) -> Result<Word> {
        parse_word(s)
    }
}

pub fn parse_word(text: &str) -> Result<Word> {
    let mut p = WordParser { s: text.as_bytes(), i: 0 };
    let w = p.word()?;
    p.ws();
    if p.i != p.s.len() {
        return p.err("unexpected trailing input");
    }
    Ok(w)
}

struct WordParser<'a> {
    s: &'a [u8],
    i: usize,
}

impl WordParser<'_> {
    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse { pos: self.i, msg: msg.into() })
    }

    fn ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.ws();
        if self.s.get(self.i) == Some(&c) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn word(&mut self) -> Result<Word> {
        let mut atoms = vec![self.atom()?];
        while self.eat(b'.') {
            atoms.push(self.atom()?);
        }
        Ok(Word { atoms })
    }

    fn atom(&mut self) -> Result<Atom> {
        let reversed = self.eat(b'~');
        if self.eat(b'(') {
            let word = self.word()?;
            if !self.eat(b')') {
                return self.err("expected ')'");
            }
            return Ok(Atom::Group { word, reversed });
        }
        self.ws();
        let start = self.i;
        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
            self.i += 1;
        }
        if start == self.i {
            return self.err("expected generator index");
        }
        let txt = std::str::from_utf8(&self.s[start..self.i]).unwrap();
        let index: usize = match txt.parse() {
            Ok(v) => v,
            Err(_) => {
                self.i = start;
                return self.err("index too large");
            }
        };
        if index == 0 {
            self.i = start;
            return self.err("index 0 (generators are 1-based)");
        }
        Ok(Atom::Gen { index, reversed })
    }
}

fn atom_vector(a: &Atom, base: &[InversiveVector]) -> Result<InversiveVector> {
    match a {
        Atom::Gen { index, .. } => base
            .get(index - 1)
            .cloned()
            .ok_or_else(|| Error::Index(format!("generator {} of {}", index, base.len()))),
        Atom::Group { word, .. } => eval_word_rows(word, base),
    }
}

/// Evaluates a word over raw base vectors. The rightmost atom selects the start
/// vector; every atom to its left reflects the partial result; `~` negates the
/// partial result at that atom.
pub fn eval_word_rows(w: &Word, base: &[InversiveVector]) -> Result<InversiveVector> {
    let (last, rest) = w.atoms.split_last().expect("nonempty word");
    let mut v = atom_vector(last, base)?;
    if last.reversed() {
        v = -&v;
    }
    for a in rest.iter().rev() {
        let m = atom_vector(a, base)?;
        if v.dim() != m.dim() {
            return Err(Error::Dimension("mixed dimensions in base".into()));
        }
        m.check_normalized()?;
        v = reflect_unchecked(&v, &m);
        if a.reversed() {
            v = -&v;
        }
    }
    Ok(v)
}

pub fn eval_word(w: &Word, base: &Configuration) -> Result<InversiveVector> {
    eval_word_rows(w, base.rows())
}

/// Named, ordered list of norm −1 vectors with labels and optional defining words.
#[derive(Clone, Debug, PartialEq)]
pub struct Configuration {
    pub name: String,
    pub form_d: i64,
    rows: Vec<InversiveVector>,
    labels: Vec<String>,
    words: Vec<Option<String>>,
}

impl Configuration {
    pub fn new(
        name: impl Into<String>,
        form_d: i64,
        rows: Vec<InversiveVector>,
        labels: Vec<String>,
        words: Vec<Option<String>>,
    ) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::InvalidConfig("no rows".into()));
        }
        if labels.len() != rows.len() || words.len() != rows.len() {
            return Err(Error::InvalidConfig(format!(
                "{} rows, {} labels, {} words",
                rows.len(),
                labels.len(),
                words.len()
            )));
        }
        let n = rows[0].dim();
        for (i, r) in rows.iter().enumerate() {
            if r.dim() != n {
                return Err(Error::Dimension(format!("row {} has dimension {}", i + 1, r.dim())));
            }
            let norm = r.norm();
            if norm != crate::QNum::from_int(-1) {
                return Err(Error::NotNormalized(format!("row {} ({}): {}", i + 1, labels[i], norm)));
            }
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l) {
                return Err(Error::InvalidConfig(format!("duplicate label {}", l)));
            }
        }
        Ok(Configuration { name: name.into(), form_d, rows, labels, words })
    }

    /// Rows labelled `1..m`, no words.
    pub fn from_rows(name: impl Into<String>, rows: Vec<InversiveVector>) -> Result<Self> {
        let m = rows.len();
        Configuration::new(
            name,
            0,
            rows,
            (1..=m).map(|i| i.to_string()).collect(),
            vec![None; m],
        )
    }

    pub fn dim(&self) -> usize {
        self.rows[0].dim()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[InversiveVector] {
        &self.rows
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn words(&self) -> &[Option<String>] {
        &self.words
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn indices_of(&self, labels: &[&str]) -> Result<Vec<usize>> {
        labels
            .iter()
            .map(|l| self.index_of(l).ok_or_else(|| Error::NotFound(format!("label {}", l))))
            .collect()
    }

    pub fn gram(&self) -> QMatrix {
        gram(&self.rows).expect("uniform dimension")
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Doubling {
    pub config: Configuration,
    /// Labels of reflected rows dropped as exact duplicates.
    pub duplicates: Vec<String>,
}

/// Doubles `config` about the 0-based row `j`: keeps every other row and adds its
/// reflection through row `j`, dropping exact duplicates.
pub fn double(config: &Configuration, j: usize, enforce_parity: bool) -> Result<Doubling> {
    if j >= config.len() {
        return Err(Error::Index(format!("row {} of {}", j + 1, config.len())));
    }
    let mj = &config.rows[j];
    let lj = &config.labels[j];
    if enforce_parity {
        for (i, r) in config.rows.iter().enumerate() {
            if i == j {
                continue;
            }
            let g = inner(r, mj)?;
            let bad = match classify_entry(&g, DEFAULT_MAX_ORDER) {
                Ok(EdgeKind::Angle(n)) if n % 2 == 1 => Some(format!("angle pi/{} with {}", n, config.labels[i])),
                Ok(_) => None,
                Err(e) => Some(format!("{} with {}", e, config.labels[i])),
            };
            if let Some(detail) = bad {
                return Err(Error::Parity { node: lj.clone(), detail });
            }
        }
    }
    let mut rows = Vec::new();
    let mut labels = Vec::new();
    let mut words = Vec::new();
    let mut seen = HashSet::new();
    let mut duplicates = Vec::new();
    for (i, r) in config.rows.iter().enumerate() {
        if i != j {
            seen.insert(r.key());
            rows.push(r.clone());
            labels.push(config.labels[i].clone());
            words.push(config.words[i].clone());
        }
    }
    for (i, r) in config.rows.iter().enumerate() {
        if i == j {
            continue;
        }
        let refl = reflect_unchecked(r, mj);
        let label = format!("{}.{}", lj, config.labels[i]);
        if !seen.insert(refl.key()) {
            duplicates.push(label);
            continue;
        }
        rows.push(refl);
        words.push(config.words[i].as_ref().map(|w| format!("{}.{}", lj, w)));
        labels.push(label);
    }
    let config = Configuration::new(format!("{}^{}", config.name, lj), config.form_d, rows, labels, words)?;
    Ok(Doubling { config, duplicates })
}
