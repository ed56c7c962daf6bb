//! Signed Gauss codes and their arc/crossing structure.
//!
//! A code is the cyclic list of crossings met while travelling once along an
//! oriented knot diagram: `+k` when passing over crossing `k`, `-k` when
//! passing under it. Odd and even labels mark the two crossing types.
//!
//! Arcs run from one under-passage to the next, so the negative tokens cut
//! the cycle into exactly as many arcs as there are crossings.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussCode {
    tokens: Vec<i32>,
}

impl GaussCode {
    /// Builds a code from tokens, enforcing that every label occurs exactly
    /// once with each sign.
    pub fn new(tokens: Vec<i32>) -> Result<Self> {
        check_pairing(&tokens)?;
        Ok(GaussCode { tokens })
    }

    /// The zero-crossing diagram of the unknot.
    pub fn unknot() -> Self {
        GaussCode::default()
    }

    pub fn tokens(&self) -> &[i32] {
        &self.tokens
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn crossing_count(&self) -> usize {
        self.tokens.len() / 2
    }

    /// Crossing labels in ascending order.
    pub fn labels(&self) -> Vec<u32> {
        let mut labels: Vec<u32> = self
            .tokens
            .iter()
            .filter(|&&t| t > 0)
            .map(|&t| t as u32)
            .collect();
        labels.sort_unstable();
        labels
    }

    /// Cyclic shift: the result starts at token `k mod len`.
    pub fn rotate(&self, k: isize) -> GaussCode {
        if self.tokens.is_empty() {
            return self.clone();
        }
        let shift = k.rem_euclid(self.tokens.len() as isize) as usize;
        let mut tokens = self.tokens.clone();
        tokens.rotate_left(shift);
        GaussCode { tokens }
    }

    /// Space-separated tokens, the form used in catalog files.
    pub fn to_catalog_string(&self) -> String {
        self.tokens
            .iter()
            .map(i32::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for GaussCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, t) in self.tokens.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{t}")?;
        }
        f.write_str("}")
    }
}

impl FromStr for GaussCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_gauss_code(s)
    }
}

/// Reads integers separated by commas and/or whitespace, optionally inside
/// braces. Unicode minus signs are accepted.
pub fn parse_gauss_code(text: &str) -> Result<GaussCode> {
    GaussCode::new(parse_tokens(text)?)
}

/// Tokenizes without checking the pairing invariant.
pub(crate) fn parse_tokens(text: &str) -> Result<Vec<i32>> {
    let mut body = text.trim();
    if let Some(rest) = body.strip_prefix('{') {
        body = rest.strip_suffix('}').ok_or_else(|| Error::Parse {
            position: 0,
            message: "unbalanced braces".into(),
        })?;
    }
    let body = body.replace(['\u{2212}', '\u{2013}'], "-");
    body.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .enumerate()
        .map(|(position, word)| {
            let value: i32 = word.parse().map_err(|_| Error::Parse {
                position,
                message: format!("not an integer: {word:?}"),
            })?;
            if value == 0 {
                return Err(Error::Parse {
                    position,
                    message: "crossing label 0 is not allowed".into(),
                });
            }
            Ok(value)
        })
        .collect()
}

fn check_pairing(tokens: &[i32]) -> Result<()> {
    // label -> (count of +, count of -)
    let mut seen: BTreeMap<u32, (u32, u32)> = BTreeMap::new();
    for &t in tokens {
        if t == 0 {
            return Err(Error::Parse {
                position: tokens.iter().position(|&x| x == 0).unwrap_or(0),
                message: "crossing label 0 is not allowed".into(),
            });
        }
        let entry = seen.entry(t.unsigned_abs()).or_default();
        let slot = if t > 0 { &mut entry.0 } else { &mut entry.1 };
        *slot += 1;
        if *slot > 1 {
            return Err(Error::DuplicateSign {
                label: t.unsigned_abs(),
            });
        }
    }
    let unpaired: Vec<u32> = seen
        .into_iter()
        .filter(|&(_, (p, m))| p != 1 || m != 1)
        .map(|(label, _)| label)
        .collect();
    if unpaired.is_empty() {
        Ok(())
    } else {
        Err(Error::Unpaired { labels: unpaired })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumberingWarning {
    pub position: usize,
    pub label: u32,
    pub expected: u32,
}

impl fmt::Display for NumberingWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "position {}: label {} first appears where {} was expected",
            self.position, self.label, self.expected
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    /// Fatal pairing violations (lenient check).
    pub errors: Vec<String>,
    /// Numbering-order findings from strict mode; never fatal.
    pub warnings: Vec<NumberingWarning>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.errors.is_empty()
    }

    pub fn is_clean(&self) -> bool {
        self.errors.is_empty() && self.warnings.is_empty()
    }
}

/// Lenient mode checks pairing only. Strict mode also checks that odd labels
/// first appear as 1, 3, 5, ... and even labels as 2, 4, 6, ... when read
/// from position 0.
pub fn validate(code: &GaussCode, strict: bool) -> ValidationReport {
    let mut report = ValidationReport::default();
    if let Err(e) = check_pairing(&code.tokens) {
        report.errors.push(e.to_string());
        return report;
    }
    if strict {
        let mut next_odd = 1;
        let mut next_even = 2;
        let mut first_seen = std::collections::HashSet::new();
        for (position, &t) in code.tokens.iter().enumerate() {
            let label = t.unsigned_abs();
            if !first_seen.insert(label) {
                continue;
            }
            let expected = if label % 2 == 1 {
                &mut next_odd
            } else {
                &mut next_even
            };
            if label != *expected {
                report.warnings.push(NumberingWarning {
                    position,
                    label,
                    expected: *expected,
                });
            }
            *expected = label + 2;
        }
    }
    report
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arc {
    pub id: usize,
    /// Token positions strictly between the opening negative token and the
    /// next one, in travel order. All are over-passages; may be empty.
    pub span: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    pub fn of(label: u32) -> Self {
        if label % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CrossingRelation {
    pub label: u32,
    pub parity: Parity,
    /// Arc that ends at the under-passage.
    pub under_in: usize,
    /// Arc that starts after the under-passage.
    pub under_out: usize,
    /// Arc passing over the crossing.
    pub over: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub arcs: Vec<Arc>,
    /// One relation per crossing, ordered by the position of the
    /// under-passage.
    pub relations: Vec<CrossingRelation>,
}

/// Splits the code into arcs and crossing relations. Arc `i` opens at the
/// `i`-th negative token counting from position 0. The empty code yields
/// one arc and no relations.
pub fn decompose(code: &GaussCode) -> Decomposition {
    let tokens = &code.tokens;
    let len = tokens.len();
    if len == 0 {
        return Decomposition {
            arcs: vec![Arc {
                id: 0,
                span: vec![],
            }],
            relations: vec![],
        };
    }
    let unders: Vec<usize> = (0..len).filter(|&p| tokens[p] < 0).collect();
    let arc_count = unders.len();
    let mut arc_at = vec![usize::MAX; len];
    let arcs: Vec<Arc> = unders
        .iter()
        .enumerate()
        .map(|(id, &start)| {
            let mut span = Vec::new();
            let mut p = (start + 1) % len;
            while tokens[p] > 0 {
                arc_at[p] = id;
                span.push(p);
                p = (p + 1) % len;
            }
            Arc { id, span }
        })
        .collect();

    let mut over_position = BTreeMap::new();
    for (p, &t) in tokens.iter().enumerate() {
        if t > 0 {
            over_position.insert(t as u32, p);
        }
    }
    let relations = unders
        .iter()
        .enumerate()
        .map(|(id, &p)| {
            let label = tokens[p].unsigned_abs();
            CrossingRelation {
                label,
                parity: Parity::of(label),
                under_in: (id + arc_count - 1) % arc_count,
                under_out: id,
                over: arc_at[over_position[&label]],
            }
        })
        .collect();
    Decomposition { arcs, relations }
}
