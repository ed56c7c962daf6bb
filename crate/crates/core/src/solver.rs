//! Coloring equations and the propagation/backtracking counter.
//!
//! Each crossing contributes one equation `target = source ▷ over`, where
//! `{source, target}` are the two under-arcs. The crossing's label parity and
//! the active [`Convention`] decide which under-arc is the source.

use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;

use crate::error::Error;
use crate::gauss::{decompose, GaussCode, Parity};
use crate::quandle::Quandle;

// 9^10 colorings of a 10-arc diagram must fit a u64 count.
const _: () = assert!(9u64.pow(10) < i64::MAX as u64);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Convention {
    /// Odd labels: `out = in ▷ over`; even labels: `in = out ▷ over`.
    #[default]
    OddForward,
    /// Odd labels: `in = out ▷ over`; even labels: `out = in ▷ over`.
    OddBackward,
}

impl Convention {
    pub const ALL: [Convention; 2] = [Convention::OddForward, Convention::OddBackward];

    /// The calibrated default used by the CLI and the batch pipeline.
    pub const DEFAULT: Convention = Convention::OddForward;

    pub fn is_forward(self, parity: Parity) -> bool {
        matches!(
            (self, parity),
            (Convention::OddForward, Parity::Odd) | (Convention::OddBackward, Parity::Even)
        )
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Convention::OddForward => "odd-forward",
            Convention::OddBackward => "odd-backward",
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Convention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "odd-forward" => Ok(Convention::OddForward),
            "odd-backward" => Ok(Convention::OddBackward),
            other => Err(Error::InvalidParameter(format!(
                "unknown convention {other:?} (expected odd-forward or odd-backward)"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Relation {
    pub label: u32,
    pub under_in: usize,
    pub under_out: usize,
    pub over: usize,
    /// `out = in ▷ over` when true, `in = out ▷ over` otherwise.
    pub forward: bool,
}

impl Relation {
    #[inline]
    pub fn source(&self) -> usize {
        if self.forward {
            self.under_in
        } else {
            self.under_out
        }
    }

    #[inline]
    pub fn target(&self) -> usize {
        if self.forward {
            self.under_out
        } else {
            self.under_in
        }
    }

    pub fn holds(&self, q: &Quandle, colors: &[usize]) -> bool {
        colors[self.target()] == q.op(colors[self.source()], colors[self.over])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoringSystem {
    arc_count: usize,
    relations: Vec<Relation>,
    convention: Convention,
}

impl ColoringSystem {
    pub fn arc_count(&self) -> usize {
        self.arc_count
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn is_satisfied(&self, q: &Quandle, colors: &[usize]) -> bool {
        colors.len() == self.arc_count && self.relations.iter().all(|r| r.holds(q, colors))
    }
}

pub fn build_system(code: &GaussCode, convention: Convention) -> ColoringSystem {
    let d = decompose(code);
    let relations = d
        .relations
        .iter()
        .map(|c| Relation {
            label: c.label,
            under_in: c.under_in,
            under_out: c.under_out,
            over: c.over,
            forward: convention.is_forward(c.parity),
        })
        .collect();
    ColoringSystem {
        arc_count: d.arcs.len(),
        relations,
        convention,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolverTag {
    Propagation,
    Linear,
}

impl fmt::Display for SolverTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SolverTag::Propagation => "propagation",
            SolverTag::Linear => "linear",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CountResult {
    pub count: u64,
    /// More colorings than the `|Q|` constant ones.
    pub nontrivial: bool,
    pub solver: SolverTag,
}

impl CountResult {
    pub(crate) fn new(count: u64, quandle_size: usize, solver: SolverTag) -> Self {
        CountResult {
            count,
            nontrivial: count > quandle_size as u64,
            solver,
        }
    }
}

/// A satisfying assignment of quandle elements to arcs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    pub assignment: Vec<usize>,
}

impl Coloring {
    pub fn is_constant(&self) -> bool {
        self.assignment.windows(2).all(|w| w[0] == w[1])
    }
}

const UNSET: usize = usize::MAX;

/// Backtracking search with unit propagation over one system and quandle.
struct Search<'a> {
    sys: &'a ColoringSystem,
    q: &'a Quandle,
    colors: Vec<usize>,
    trail: Vec<usize>,
    // relations touching each arc
    watch: Vec<Vec<usize>>,
    queue: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(sys: &'a ColoringSystem, q: &'a Quandle) -> Self {
        let mut watch = vec![Vec::new(); sys.arc_count];
        for (i, r) in sys.relations.iter().enumerate() {
            for arc in [r.under_in, r.under_out, r.over] {
                if watch[arc].last() != Some(&i) {
                    watch[arc].push(i);
                }
            }
        }
        Search {
            sys,
            q,
            colors: vec![UNSET; sys.arc_count],
            trail: Vec::with_capacity(sys.arc_count),
            watch,
            queue: Vec::with_capacity(sys.arc_count),
        }
    }

    fn assign(&mut self, arc: usize, color: usize) {
        debug_assert_eq!(self.colors[arc], UNSET);
        self.colors[arc] = color;
        self.trail.push(arc);
        self.queue.push(arc);
    }

    fn undo(&mut self, mark: usize) {
        for arc in self.trail.drain(mark..) {
            self.colors[arc] = UNSET;
        }
    }

    /// Runs the queue to a fixpoint. Returns false on a contradiction.
    fn propagate(&mut self) -> bool {
        while let Some(arc) = self.queue.pop() {
            for k in 0..self.watch[arc].len() {
                let r = self.sys.relations[self.watch[arc][k]];
                let over = self.colors[r.over];
                if over == UNSET {
                    continue;
                }
                let (src, dst) = (r.source(), r.target());
                let (cs, cd) = (self.colors[src], self.colors[dst]);
                if cs != UNSET {
                    let v = self.q.op(cs, over);
                    if cd == UNSET {
                        self.assign(dst, v);
                    } else if cd != v {
                        self.queue.clear();
                        return false;
                    }
                } else if cd != UNSET {
                    let v = self.q.right_inverse(cd, over);
                    self.assign(src, v);
                }
            }
        }
        true
    }

    /// Unassigned arc that is the over-arc of the most unresolved relations;
    /// lowest id on ties.
    fn pick(&self) -> Option<usize> {
        let mut score = vec![0usize; self.sys.arc_count];
        for r in &self.sys.relations {
            let unresolved = [r.under_in, r.under_out, r.over]
                .iter()
                .any(|&a| self.colors[a] == UNSET);
            if unresolved && self.colors[r.over] == UNSET {
                score[r.over] += 1;
            }
        }
        (0..self.sys.arc_count)
            .filter(|&a| self.colors[a] == UNSET)
            .max_by(|&a, &b| score[a].cmp(&score[b]).then(b.cmp(&a)))
    }

    fn run<F>(&mut self, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        let Some(arc) = self.pick() else {
            return visit(&self.colors);
        };
        for color in 0..self.q.size() {
            let mark = self.trail.len();
            self.assign(arc, color);
            let flow = if self.propagate() {
                self.run(visit)
            } else {
                ControlFlow::Continue(())
            };
            self.undo(mark);
            flow?;
        }
        ControlFlow::Continue(())
    }
}

/// Calls `visit` on every coloring, in lexicographic order of the branching
/// choices, until it breaks.
pub fn for_each_coloring<F>(sys: &ColoringSystem, q: &Quandle, mut visit: F)
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let mut search = Search::new(sys, q);
    let _ = search.run(&mut visit);
}

pub fn count_colorings(sys: &ColoringSystem, q: &Quandle) -> CountResult {
    let mut count = 0u64;
    for_each_coloring(sys, q, |_| {
        count += 1;
        ControlFlow::Continue(())
    });
    CountResult::new(count, q.size(), SolverTag::Propagation)
}

/// True iff some coloring is not constant. Stops at the first one found.
pub fn has_nontrivial(sys: &ColoringSystem, q: &Quandle) -> bool {
    let mut found = false;
    for_each_coloring(sys, q, |colors| {
        if colors.windows(2).any(|w| w[0] != w[1]) {
            found = true;
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    found
}

pub fn enumerate_colorings(sys: &ColoringSystem, q: &Quandle, limit: usize) -> Vec<Coloring> {
    let mut out = Vec::new();
    if limit == 0 {
        return out;
    }
    for_each_coloring(sys, q, |colors| {
        out.push(Coloring {
            assignment: colors.to_vec(),
        });
        if out.len() >= limit {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    out
}
