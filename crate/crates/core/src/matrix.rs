//! Coloring profiles and the pairwise distinguishing matrix.
//!
//! A profile lists, for one knot, its coloring count under each quandle of a
//! fixed list. Two knots are told apart by the first quandle whose counts
//! differ; the matrix stores that 1-based position (0 when none does) for
//! every unordered pair.

use std::fmt::Write as _;
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;

use crate::catalog::KnotCatalog;
use crate::error::{Error, Result};
use crate::linear::{count_system_linear, FieldQuandle};
use crate::quandle::Quandle;
use crate::solver::{build_system, count_colorings, Convention};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoringProfile {
    /// 1-based catalog position.
    pub knot_index: usize,
    pub name: String,
    /// `counts[i]` belongs to quandle `i + 1` of the list.
    pub counts: Vec<u64>,
}

#[derive(Clone, Copy, Debug)]
pub struct ProfileOptions {
    /// Worker threads; 0 means rayon's default.
    pub jobs: usize,
    /// Recount field quandles with the linear solver and fail on disagreement.
    pub cross_check: bool,
}

impl Default for ProfileOptions {
    fn default() -> Self {
        ProfileOptions {
            jobs: 0,
            cross_check: true,
        }
    }
}

/// Counts every (knot, quandle) pair. Output is ordered by knot index and
/// quandle position whatever the worker count.
pub fn profile_all(
    catalog: &KnotCatalog,
    quandles: &[Quandle],
    convention: Convention,
    options: ProfileOptions,
) -> Result<Vec<ColoringProfile>> {
    let fields: Vec<Option<FieldQuandle>> =
        quandles.iter().map(|q| FieldQuandle::new(q).ok()).collect();
    let systems: Vec<_> = catalog
        .entries()
        .iter()
        .map(|e| build_system(&e.code, convention))
        .collect();

    let total = systems.len() * quandles.len();
    let done = AtomicUsize::new(0);
    let task = |(k, qi): (usize, usize)| -> Result<u64> {
        let sys = &systems[k];
        let q = &quandles[qi];
        let count = count_colorings(sys, q).count;
        if options.cross_check {
            if let Some(fq) = &fields[qi] {
                let linear = count_system_linear(sys, fq).count;
                if linear != count {
                    return Err(Error::Solver {
                        knot: catalog.entries()[k].name.clone(),
                        quandle: qi + 1,
                        message: format!("propagation counted {count}, linear counted {linear}"),
                    });
                }
            }
        }
        let n = done.fetch_add(1, Ordering::Relaxed) + 1;
        if n.is_multiple_of(250) || n == total {
            log::info!("counted {n}/{total} colorings");
        }
        Ok(count)
    };

    let tasks: Vec<(usize, usize)> = (0..systems.len())
        .flat_map(|k| (0..quandles.len()).map(move |qi| (k, qi)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.jobs)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("worker pool: {e}")))?;
    let counts: Vec<u64> = pool.install(|| {
        tasks
            .par_iter()
            .map(|&t| task(t))
            .collect::<Result<Vec<u64>>>()
    })?;

    Ok(catalog
        .entries()
        .iter()
        .enumerate()
        .map(|(k, e)| ColoringProfile {
            knot_index: k + 1,
            name: e.name.clone(),
            counts: counts[k * quandles.len()..(k + 1) * quandles.len()].to_vec(),
        })
        .collect())
}

/// Smallest 1-based position where the counts differ, or 0.
pub fn first_distinguisher(p: &ColoringProfile, q: &ColoringProfile) -> u8 {
    p.counts
        .iter()
        .zip(&q.counts)
        .position(|(a, b)| a != b)
        .map_or(0, |i| (i + 1) as u8)
}

/// Like [`first_distinguisher`], but scans positions in `order` (0-based)
/// and reports the 1-based rank within `order`.
pub fn first_distinguisher_in_order(
    p: &ColoringProfile,
    q: &ColoringProfile,
    order: &[usize],
) -> u8 {
    order
        .iter()
        .position(|&i| p.counts[i] != q.counts[i])
        .map_or(0, |i| (i + 1) as u8)
}

/// One knot has only the constant colorings and the other has more, for
/// some quandle of the list.
pub fn fenn_rourke_distinguishes(
    p: &ColoringProfile,
    q: &ColoringProfile,
    sizes: &[usize],
) -> bool {
    p.counts
        .iter()
        .zip(&q.counts)
        .zip(sizes)
        .any(|((&a, &b), &s)| {
            let s = s as u64;
            (a == s && b > s) || (b == s && a > s)
        })
}

/// Strict upper triangle of a symmetric matrix indexed `1..=dimension`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistinguishMatrix {
    dimension: usize,
    entries: Vec<u8>,
}

fn triangle_len(dimension: usize) -> usize {
    dimension * dimension.saturating_sub(1) / 2
}

fn triangle_offset(dimension: usize, i: usize, j: usize) -> usize {
    debug_assert!(1 <= i && i < j && j <= dimension);
    (i - 1) * (2 * dimension - i) / 2 + (j - i - 1)
}

impl DistinguishMatrix {
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entry for the unordered pair `{i, j}`; `None` on the diagonal or
    /// out of range.
    pub fn get(&self, i: usize, j: usize) -> Option<u8> {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        if i == 0 || i == j || j > self.dimension {
            return None;
        }
        Some(self.entries[triangle_offset(self.dimension, i, j)])
    }

    /// `(i, j, entry)` with `i < j`, ascending.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, u8)> + '_ {
        let d = self.dimension;
        (1..=d)
            .flat_map(move |i| (i + 1..=d).map(move |j| (i, j)))
            .zip(self.entries.iter().copied())
            .map(|((i, j), v)| (i, j, v))
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(self.entries.len() * 12 + 16);
        out.push_str("i,j,quandle\n");
        for (i, j, v) in self.iter() {
            let _ = writeln!(out, "{i},{j},{v}");
        }
        out
    }
}

pub fn build_matrix(profiles: &[ColoringProfile]) -> DistinguishMatrix {
    build_with(profiles, first_distinguisher)
}

fn build_with<F>(profiles: &[ColoringProfile], f: F) -> DistinguishMatrix
where
    F: Fn(&ColoringProfile, &ColoringProfile) -> u8,
{
    let d = profiles.len();
    let mut entries = Vec::with_capacity(triangle_len(d));
    for i in 0..d {
        for j in i + 1..d {
            entries.push(f(&profiles[i], &profiles[j]));
        }
    }
    DistinguishMatrix {
        dimension: d,
        entries,
    }
}

/// Relabelling under which a printed table lines up with the computed one.
///
/// `quandle_order[k]` is the 0-based list position that the table calls
/// quandle `k + 1`; `knot_order[k]` is the 0-based catalog position the
/// table calls knot `k + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableAlignment {
    pub quandle_order: Vec<usize>,
    pub knot_order: Vec<usize>,
}

impl TableAlignment {
    pub fn identity(knots: usize, quandles: usize) -> Self {
        TableAlignment {
            quandle_order: (0..quandles).collect(),
            knot_order: (0..knots).collect(),
        }
    }

    /// The bundled reference tables number `R_9` as quandle 9 and
    /// `Z_5[T]/(T-2)` as quandle 10, and have the rows and columns of 10_83
    /// (index 167) and 10_86 (index 170) interchanged.
    pub fn bundled_reference() -> Self {
        let mut a = Self::identity(
            crate::catalog::BUNDLED_LEN,
            crate::quandle::STANDARD_LIST_LEN,
        );
        a.quandle_order.swap(8, 9);
        a.knot_order.swap(166, 169);
        a
    }
}

pub fn build_matrix_aligned(
    profiles: &[ColoringProfile],
    alignment: &TableAlignment,
) -> DistinguishMatrix {
    let reordered: Vec<ColoringProfile> = alignment
        .knot_order
        .iter()
        .map(|&k| profiles[k].clone())
        .collect();
    build_with(&reordered, |p, q| {
        first_distinguisher_in_order(p, q, &alignment.quandle_order)
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SummaryStats {
    pub total_pairs: usize,
    pub zeros: usize,
    pub fr_inconclusive: usize,
}

impl std::fmt::Display for SummaryStats {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "pairs={} zeros={} fr_inconclusive={}",
            self.total_pairs, self.zeros, self.fr_inconclusive
        )
    }
}

/// Panics if a pair is told apart by the Fenn–Rourke criterion but not by
/// counts; that can only come from inconsistent inputs.
pub fn summarize(
    m: &DistinguishMatrix,
    profiles: &[ColoringProfile],
    sizes: &[usize],
) -> SummaryStats {
    assert_eq!(
        m.dimension(),
        profiles.len(),
        "matrix and profiles disagree"
    );
    let mut zeros = 0;
    let mut fr_inconclusive = 0;
    for (i, j, v) in m.iter() {
        let fr = fenn_rourke_distinguishes(&profiles[i - 1], &profiles[j - 1], sizes);
        assert!(
            !fr || v != 0,
            "pair ({i}, {j}) is distinguished by Fenn-Rourke but has entry 0"
        );
        zeros += usize::from(v == 0);
        fr_inconclusive += usize::from(!fr);
    }
    let stats = SummaryStats {
        total_pairs: m.len(),
        zeros,
        fr_inconclusive,
    };
    assert!(stats.zeros <= stats.fr_inconclusive);
    stats
}

/// Expected matrix read from CSV. Cells with an empty value were not
/// available in the source and are skipped by verification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReferenceMatrix {
    dimension: usize,
    entries: Vec<Option<u8>>,
}

/// Bundled reference transcribed from the printed tables.
pub const BUNDLED_REFERENCE: &str = include_str!("../../../data/appendix_a.csv");

impl ReferenceMatrix {
    pub fn bundled() -> Self {
        Self::parse(BUNDLED_REFERENCE, crate::catalog::BUNDLED_LEN, 10)
            .expect("bundled reference is valid")
    }

    /// Parses `i,j,quandle` rows. Every pair `i < j` of `1..=dimension`
    /// must appear exactly once in ascending order with a value in
    /// `0..=max_value` or an empty value.
    pub fn parse(text: &str, dimension: usize, max_value: u8) -> Result<Self> {
        let fmt_err = |msg: String| Error::ReferenceFormat(msg);
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        match lines.next() {
            Some((_, h)) if h.trim() == "i,j,quandle" => {}
            _ => return Err(fmt_err("missing `i,j,quandle` header".into())),
        }
        let expected = triangle_len(dimension);
        let mut entries = Vec::with_capacity(expected);
        let mut pairs = (1..=dimension).flat_map(|i| (i + 1..=dimension).map(move |j| (i, j)));
        for (lineno, line) in lines {
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            if fields.len() != 3 {
                return Err(fmt_err(format!("line {}: expected 3 fields", lineno + 1)));
            }
            let parse = |s: &str| -> Result<usize> {
                s.parse()
                    .map_err(|_| fmt_err(format!("line {}: bad integer {s:?}", lineno + 1)))
            };
            let (i, j) = (parse(fields[0])?, parse(fields[1])?);
            let Some(want) = pairs.next() else {
                return Err(fmt_err(format!(
                    "more than {expected} rows (extra pair ({i}, {j}))"
                )));
            };
            if (i, j) != want {
                return Err(fmt_err(format!(
                    "line {}: expected pair {want:?}, found ({i}, {j})",
                    lineno + 1
                )));
            }
            let value = if fields[2].is_empty() {
                None
            } else {
                let v = parse(fields[2])?;
                if v > max_value as usize {
                    return Err(fmt_err(format!(
                        "line {}: value {v} outside 0..={max_value}",
                        lineno + 1
                    )));
                }
                Some(v as u8)
            };
            entries.push(value);
        }
        if entries.len() != expected {
            return Err(fmt_err(format!(
                "expected {expected} rows, found {}",
                entries.len()
            )));
        }
        Ok(ReferenceMatrix { dimension, entries })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn get(&self, i: usize, j: usize) -> Option<u8> {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        if i == 0 || i == j || j > self.dimension {
            return None;
        }
        self.entries[triangle_offset(self.dimension, i, j)]
    }

    pub fn available(&self) -> usize {
        self.entries.iter().filter(|e| e.is_some()).count()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub i: usize,
    pub j: usize,
    pub computed: u8,
    pub reference: u8,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DiffReport {
    pub checked: usize,
    pub unchecked: usize,
    pub mismatches: Vec<Mismatch>,
}

impl DiffReport {
    pub fn is_clean(&self) -> bool {
        self.mismatches.is_empty()
    }
}

pub fn verify_against_reference(
    m: &DistinguishMatrix,
    reference: &ReferenceMatrix,
) -> Result<DiffReport> {
    if m.dimension() != reference.dimension() {
        return Err(Error::ReferenceFormat(format!(
            "reference has dimension {}, matrix has {}",
            reference.dimension(),
            m.dimension()
        )));
    }
    let mut report = DiffReport::default();
    for ((i, j, computed), expected) in m.iter().zip(&reference.entries) {
        match *expected {
            None => report.unchecked += 1,
            Some(r) => {
                report.checked += 1;
                if r != computed {
                    report.mismatches.push(Mismatch {
                        i,
                        j,
                        computed,
                        reference: r,
                    });
                }
            }
        }
    }
    Ok(report)
}

pub fn profiles_to_csv(profiles: &[ColoringProfile]) -> String {
    let width = profiles.first().map_or(0, |p| p.counts.len());
    let mut out = String::from("knot");
    for k in 1..=width {
        let _ = write!(out, ",q{k}");
    }
    out.push('\n');
    for p in profiles {
        out.push_str(&p.name);
        for c in &p.counts {
            let _ = write!(out, ",{c}");
        }
        out.push('\n');
    }
    out
}

/// Reads a profiles CSV; knot indices follow row order.
pub fn profiles_from_csv(text: &str) -> Result<Vec<ColoringProfile>> {
    let err = |msg: String| Error::ReferenceFormat(format!("profiles: {msg}"));
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| err("empty file".into()))?;
    let cols: Vec<&str> = header.split(',').collect();
    if cols.first() != Some(&"knot")
        || cols[1..]
            .iter()
            .enumerate()
            .any(|(k, c)| *c != format!("q{}", k + 1))
    {
        return Err(err(format!("bad header {header:?}")));
    }
    let width = cols.len() - 1;
    lines
        .enumerate()
        .map(|(k, line)| {
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != width + 1 {
                return Err(err(format!("row {} has {} fields", k + 1, fields.len())));
            }
            let counts = fields[1..]
                .iter()
                .map(|f| {
                    f.trim()
                        .parse::<u64>()
                        .map_err(|_| err(format!("bad count {f:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(ColoringProfile {
                knot_index: k + 1,
                name: fields[0].to_string(),
                counts,
            })
        })
        .collect()
}
