//! Loading and auditing the shipped corpus.
//!
//! The manifest is a tab-separated file with one entry per line:
//!
//! ```text
//! name <TAB> file <TAB> reference <TAB> axiom,axiom,...
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. Files are checked in
//! the order in which the manifest first mentions them.

use std::collections::BTreeSet;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use crate::checker::{check_module, CheckOptions, Outcome, Report, Signature};
use crate::surface::{parse_source, SourceModule, SyntaxError};
use crate::syntax::{DeclKind, Name};

/// The only axioms the corpus may postulate.
pub const TRUSTED_AXIOMS: [&str; 6] = [
    "funext",
    "equiv_induction",
    "is_prop_ishadj",
    "is_prop_ishadjl",
    "fib_eq_char",
    "fib_contr",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManifestEntry {
    pub name: Name,
    pub file: PathBuf,
    pub reference: String,
    pub expected_axioms: BTreeSet<Name>,
}

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}:{line}: malformed manifest line: {message}")]
    Manifest {
        path: PathBuf,
        line: usize,
        message: String,
    },
    #[error("{path}: {error}")]
    Syntax { path: PathBuf, error: SyntaxError },
}

pub fn read_file(path: &Path) -> Result<String, CorpusError> {
    fs::read_to_string(path).map_err(|source| CorpusError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn load_source(path: &Path) -> Result<SourceModule, CorpusError> {
    let src = read_file(path)?;
    parse_source(path, &src).map_err(|error| CorpusError::Syntax {
        path: path.to_path_buf(),
        error,
    })
}

pub fn parse_manifest(path: &Path, text: &str) -> Result<Vec<ManifestEntry>, CorpusError> {
    let mut entries = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let malformed = |message: &str| CorpusError::Manifest {
            path: path.to_path_buf(),
            line: i + 1,
            message: message.to_owned(),
        };
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 4 {
            return Err(malformed("expected four tab-separated fields"));
        }
        let name = fields[0].trim();
        if name.is_empty() {
            return Err(malformed("empty name"));
        }
        let expected_axioms = fields[3]
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(Name::from)
            .collect();
        entries.push(ManifestEntry {
            name: name.into(),
            file: PathBuf::from(fields[1].trim()),
            reference: fields[2].trim().to_owned(),
            expected_axioms,
        });
    }
    Ok(entries)
}

/// A manifest together with its parsed source files.
#[derive(Clone, Debug)]
pub struct Corpus {
    pub dir: PathBuf,
    pub entries: Vec<ManifestEntry>,
    pub modules: Vec<SourceModule>,
}

impl Corpus {
    pub fn load(dir: &Path) -> Result<Corpus, CorpusError> {
        let manifest_path = dir.join("manifest");
        let entries = parse_manifest(&manifest_path, &read_file(&manifest_path)?)?;
        let mut files: Vec<&Path> = Vec::new();
        for e in &entries {
            if !files.contains(&e.file.as_path()) {
                files.push(&e.file);
            }
        }
        let modules = files
            .into_iter()
            .map(|f| load_source(&dir.join(f)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Corpus {
            dir: dir.to_path_buf(),
            entries,
            modules,
        })
    }

    pub fn check(&self, opts: CheckOptions) -> CorpusReport {
        let (signature, report) = check_module(&self.modules, opts);
        let mut problems = Vec::new();
        for r in &report.entries {
            if let Outcome::Failed(msg) = &r.outcome {
                problems.push(Problem::new(&r.name, msg.clone()));
            }
            if r.kind == DeclKind::Axiom && !TRUSTED_AXIOMS.contains(&&*r.name) {
                problems.push(Problem::new(&r.name, "axiom outside the trusted prelude".into()));
            }
            if !self.entries.iter().any(|e| e.name == r.name) {
                problems.push(Problem::new(&r.name, "not listed in the manifest".into()));
            }
        }
        for e in &self.entries {
            let Some(r) = report.get(&e.name) else {
                problems.push(Problem::new(&e.name, "not declared in the corpus".into()));
                continue;
            };
            if self.dir.join(&e.file) != r.file {
                problems.push(Problem::new(
                    &e.name,
                    format!("declared in {}, manifest says {}", r.file.display(), e.file.display()),
                ));
            }
            if !r.is_ok() {
                continue;
            }
            let extra: Vec<&str> = r
                .footprint
                .iter()
                .filter(|a| !e.expected_axioms.contains(*a))
                .map(|a| &**a)
                .collect();
            if !extra.is_empty() {
                problems.push(Problem::new(
                    &e.name,
                    format!("unexpected axioms in footprint: {}", extra.join(", ")),
                ));
            }
        }
        CorpusReport {
            signature,
            report,
            problems,
        }
    }
}

/// A reason an entry or declaration does not pass the audit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Problem {
    pub name: Name,
    pub message: String,
}

impl Problem {
    fn new(name: &Name, message: String) -> Problem {
        Problem {
            name: name.clone(),
            message,
        }
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.name, self.message)
    }
}

pub struct CorpusReport {
    pub signature: Signature,
    pub report: Report,
    pub problems: Vec<Problem>,
}

impl CorpusReport {
    pub fn ok(&self) -> bool {
        self.problems.is_empty()
    }
}

/// The corpus shipped with this crate.
pub fn shipped_corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}
