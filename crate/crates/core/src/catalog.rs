//! The knot catalog: named Gauss codes in table order.
//!
//! File format, one knot per line:
//!
//! ```text
//! # comment
//! 3_1 = 1 -3 5 -1 3 -5
//! ```

use std::path::Path;

use crate::error::{Error, Result};
use crate::gauss::{parse_tokens, GaussCode};

/// Bundled catalog: prime knots through 10 crossings, 10_162 omitted.
pub const BUNDLED_CATALOG: &str = include_str!("../../../data/knots.gauss");

pub const BUNDLED_LEN: usize = 249;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub code: GaussCode,
}

/// A leading token dropped while loading.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Repair {
    pub name: String,
    pub dropped: i32,
}

#[derive(Clone, Debug, Default)]
pub struct KnotCatalog {
    entries: Vec<CatalogEntry>,
    repairs: Vec<Repair>,
}

impl KnotCatalog {
    /// Loads the bundled catalog.
    pub fn bundled() -> Self {
        Self::parse(BUNDLED_CATALOG).expect("bundled catalog is valid")
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut catalog = KnotCatalog::default();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (name, body) = line.split_once('=').ok_or_else(|| Error::CatalogLine {
                line: lineno + 1,
                message: "expected `NAME = tokens`".into(),
            })?;
            let name = name.trim();
            if name.is_empty() {
                return Err(Error::CatalogLine {
                    line: lineno + 1,
                    message: "missing knot name".into(),
                });
            }
            let wrap = |source: Error| Error::Knot {
                name: name.to_string(),
                source: Box::new(source),
            };
            let tokens = parse_tokens(body).map_err(wrap)?;
            let (tokens, repair) = repair_leading_token(name, tokens);
            let code = GaussCode::new(tokens).map_err(wrap)?;
            if let Some(r) = repair {
                log::warn!(
                    "catalog: dropped stray leading token {} from {}",
                    r.dropped,
                    r.name
                );
                catalog.repairs.push(r);
            }
            catalog.entries.push(CatalogEntry {
                name: name.to_string(),
                code,
            });
        }
        Ok(catalog)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    /// Entry at 1-based position `index`.
    pub fn get(&self, index: usize) -> Option<&CatalogEntry> {
        index.checked_sub(1).and_then(|i| self.entries.get(i))
    }

    /// 1-based position of the knot called `name`.
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.entries
            .iter()
            .position(|e| e.name == name)
            .map(|i| i + 1)
    }

    pub fn by_name(&self, name: &str) -> Option<&CatalogEntry> {
        self.index_of(name).and_then(|i| self.get(i))
    }

    pub fn repairs(&self) -> &[Repair] {
        &self.repairs
    }

    /// Catalog file text; parsing it yields the same entries.
    pub fn to_file_string(&self) -> String {
        self.entries
            .iter()
            .map(|e| {
                if e.code.is_empty() {
                    format!("{} =\n", e.name)
                } else {
                    format!("{} = {}\n", e.name, e.code.to_catalog_string())
                }
            })
            .collect()
    }
}

/// Crossing number encoded in a table name such as `10_45`.
fn crossing_number(name: &str) -> Option<usize> {
    name.split_once('_')?.0.parse().ok()
}

/// Drops the first token when it has no partner and the remainder is a
/// perfectly paired code of length twice the crossing number in the name.
fn repair_leading_token(name: &str, tokens: Vec<i32>) -> (Vec<i32>, Option<Repair>) {
    let Some(crossings) = crossing_number(name) else {
        return (tokens, None);
    };
    let Some((&first, rest)) = tokens.split_first() else {
        return (tokens, None);
    };
    let partnered = rest.iter().any(|&t| t == -first);
    if partnered || rest.len() != 2 * crossings || GaussCode::new(rest.to_vec()).is_err() {
        return (tokens, None);
    }
    let repaired = rest.to_vec();
    (
        repaired,
        Some(Repair {
            name: name.to_string(),
            dropped: first,
        }),
    )
}
