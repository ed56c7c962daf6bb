//! Finite quandles stored as operation tables.
//!
//! Elements are `0..size`; `table[a * size + b]` holds `a ▷ b`. A quandle
//! satisfies
//!
//! 1. `a ▷ a = a`,
//! 2. every map `x ↦ x ▷ b` is a bijection,
//! 3. `(a ▷ b) ▷ c = (a ▷ c) ▷ (b ▷ c)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::ring::{MonicPoly, QuotientRing};

/// The algebraic family a quandle was built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Descriptor {
    /// `R_n`: `Z_n` with `a ▷ b = 2b - a`.
    Dihedral(u32),
    /// `Z_n[T]/(h)` with `a ▷ b = Ta + (1 - T)b`.
    Alexander(MonicPoly),
    /// Raw table with no known algebraic origin.
    Table,
}

#[derive(Clone, Debug)]
pub struct Quandle {
    name: String,
    size: usize,
    table: Vec<u16>,
    // rinv[a * size + b] = x with x ▷ b = a, or NO_INVERSE
    rinv: Vec<u16>,
    descriptor: Descriptor,
}

const NO_INVERSE: u16 = u16::MAX;

impl Quandle {
    /// Wraps an arbitrary table. No axioms are checked here; entries outside
    /// `0..size` are allowed and reported by [`verify_quandle`].
    pub fn from_table(name: impl Into<String>, size: usize, table: Vec<usize>) -> Result<Self> {
        if size == 0 || size >= NO_INVERSE as usize {
            return Err(Error::InvalidParameter(format!(
                "quandle size must be in 1..{NO_INVERSE}, got {size}"
            )));
        }
        if table.len() != size * size {
            return Err(Error::InvalidParameter(format!(
                "table for size {size} needs {} entries, got {}",
                size * size,
                table.len()
            )));
        }
        let table = table
            .into_iter()
            .map(|v| v.min(NO_INVERSE as usize - 1) as u16)
            .collect();
        Ok(Self::assemble(name.into(), size, table, Descriptor::Table))
    }

    fn assemble(name: String, size: usize, table: Vec<u16>, descriptor: Descriptor) -> Self {
        let mut rinv = vec![NO_INVERSE; size * size];
        for x in 0..size {
            for b in 0..size {
                let a = table[x * size + b] as usize;
                if a < size && rinv[a * size + b] == NO_INVERSE {
                    rinv[a * size + b] = x as u16;
                }
            }
        }
        Quandle {
            name,
            size,
            table,
            rinv,
            descriptor,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn descriptor(&self) -> &Descriptor {
        &self.descriptor
    }

    /// Renames the quandle; the table is untouched.
    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// `a ▷ b`.
    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.size + b] as usize
    }

    /// The unique `x` with `x ▷ b = a`.
    ///
    /// Panics if column `b` is not a bijection, which cannot happen for a
    /// quandle that passed [`verify_quandle`].
    #[inline]
    pub fn right_inverse(&self, a: usize, b: usize) -> usize {
        let x = self.rinv[a * self.size + b];
        assert!(
            x != NO_INVERSE,
            "{}: column {b} is not a bijection, no right inverse of {a}",
            self.name
        );
        x as usize
    }

    /// The underlying quotient ring for dihedral and Alexander quandles.
    /// `R_n` is the Alexander quandle of `Z_n[T]/(T + 1)`.
    pub fn ring(&self) -> Option<QuotientRing> {
        let poly = match &self.descriptor {
            Descriptor::Dihedral(n) if *n >= 2 => MonicPoly::new(*n, &[1, 1]).ok()?,
            Descriptor::Alexander(h) => h.clone(),
            _ => return None,
        };
        QuotientRing::new(poly).ok()
    }

    pub fn table_rows(&self) -> impl Iterator<Item = &[u16]> {
        self.table.chunks(self.size)
    }
}

impl PartialEq for Quandle {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size && self.table == other.table
    }
}

impl Eq for Quandle {}

/// `R_n` on `Z_n`.
pub fn make_dihedral(n: u32) -> Result<Quandle> {
    if n < 1 {
        return Err(Error::InvalidParameter(
            "dihedral quandle order must be at least 1".into(),
        ));
    }
    let size = n as usize;
    if size >= NO_INVERSE as usize {
        return Err(Error::InvalidParameter(format!("R_{n} is too large")));
    }
    let mut table = Vec::with_capacity(size * size);
    for a in 0..size {
        for b in 0..size {
            table.push(((2 * b + size - a) % size) as u16);
        }
    }
    Ok(Quandle::assemble(
        format!("R_{n}"),
        size,
        table,
        Descriptor::Dihedral(n),
    ))
}

/// The Alexander quandle on `Z_n[T]/(h)`, `h` given constant term first.
pub fn make_alexander(n: u32, h: &[i64]) -> Result<Quandle> {
    let poly = MonicPoly::new(n, h)?;
    let ring = QuotientRing::new(poly.clone())?;
    let size = ring.size();
    if size >= NO_INVERSE as usize {
        return Err(Error::InvalidParameter(format!(
            "Z_{n}[T]/({poly}) is too large"
        )));
    }
    let t = ring.t();
    let one_minus_t = ring.sub(&ring.one(), &t);
    let scaled_a: Vec<_> = (0..size).map(|a| ring.mul(&t, &ring.decode(a))).collect();
    let scaled_b: Vec<_> = (0..size)
        .map(|b| ring.mul(&one_minus_t, &ring.decode(b)))
        .collect();
    let mut table = Vec::with_capacity(size * size);
    for ta in &scaled_a {
        for sb in &scaled_b {
            table.push(ring.encode(&ring.add(ta, sb)) as u16);
        }
    }
    Ok(Quandle::assemble(
        format!("Z_{n}[T]/({poly})"),
        size,
        table,
        Descriptor::Alexander(poly),
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axiom {
    Idempotence,
    RightInvertibility,
    SelfDistributivity,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::Idempotence => "idempotence",
            Axiom::RightInvertibility => "right invertibility",
            Axiom::SelfDistributivity => "self-distributivity",
        })
    }
}

/// First counterexample found for an axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// `a ▷ a ≠ a`.
    NotIdempotent { a: usize },
    /// Column `b` sends `x1` and `x2` to the same value.
    NotInjective { b: usize, x1: usize, x2: usize },
    /// `(a ▷ b) ▷ c ≠ (a ▷ c) ▷ (b ▷ c)`.
    NotDistributive { a: usize, b: usize, c: usize },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Witness::NotIdempotent { a } => write!(f, "a={a}"),
            Witness::NotInjective { b, x1, x2 } => write!(f, "b={b} x1={x1} x2={x2}"),
            Witness::NotDistributive { a, b, c } => write!(f, "a={a} b={b} c={c}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub idempotence: Option<Witness>,
    pub right_invertibility: Option<Witness>,
    pub self_distributivity: Option<Witness>,
}

impl AxiomReport {
    pub fn passes(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn failures(&self) -> impl Iterator<Item = (Axiom, &Witness)> {
        [
            (Axiom::Idempotence, &self.idempotence),
            (Axiom::RightInvertibility, &self.right_invertibility),
            (Axiom::SelfDistributivity, &self.self_distributivity),
        ]
        .into_iter()
        .filter_map(|(axiom, w)| w.as_ref().map(|w| (axiom, w)))
    }
}

/// Exhaustive check of the three axioms. An out-of-range entry is a
/// structural error and is reported before any axiom is looked at.
pub fn verify_quandle(q: &Quandle) -> Result<AxiomReport> {
    let n = q.size();
    for a in 0..n {
        for b in 0..n {
            let value = q.op(a, b);
            if value >= n {
                return Err(Error::MalformedTable {
                    a,
                    b,
                    value,
                    size: n,
                });
            }
        }
    }

    let idempotence = (0..n)
        .find(|&a| q.op(a, a) != a)
        .map(|a| Witness::NotIdempotent { a });

    let mut right_invertibility = None;
    'cols: for b in 0..n {
        let mut seen = vec![None; n];
        for x in 0..n {
            let v = q.op(x, b);
            if let Some(x1) = seen[v] {
                right_invertibility = Some(Witness::NotInjective { b, x1, x2: x });
                break 'cols;
            }
            seen[v] = Some(x);
        }
    }

    let mut self_distributivity = None;
    'outer: for a in 0..n {
        for b in 0..n {
            let ab = q.op(a, b);
            for c in 0..n {
                if q.op(ab, c) != q.op(q.op(a, c), q.op(b, c)) {
                    self_distributivity = Some(Witness::NotDistributive { a, b, c });
                    break 'outer;
                }
            }
        }
    }

    Ok(AxiomReport {
        idempotence,
        right_invertibility,
        self_distributivity,
    })
}

pub const STANDARD_LIST_LEN: usize = 10;

/// The fixed list of ten quandles used for the distinguishing matrix.
/// Positions are 1-based in matrix entries; this wrapper indexes from 1.
#[derive(Clone, Debug)]
pub struct StandardQuandleList {
    entries: Vec<Quandle>,
}

impl StandardQuandleList {
    /// Quandle at 1-based position `index`.
    pub fn get(&self, index: usize) -> Option<&Quandle> {
        index.checked_sub(1).and_then(|i| self.entries.get(i))
    }

    pub fn as_slice(&self) -> &[Quandle] {
        &self.entries
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.entries.iter().map(Quandle::size).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `(1-based index, quandle)` pairs.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &Quandle)> {
        self.entries.iter().enumerate().map(|(i, q)| (i + 1, q))
    }

    /// `index<TAB>name<TAB>size`, one line per quandle.
    pub fn to_tsv(&self) -> String {
        self.iter()
            .map(|(i, q)| format!("{i}\t{}\t{}\n", q.name(), q.size()))
            .collect()
    }
}

pub fn standard_quandle_list() -> StandardQuandleList {
    let alex = |n, h: &[i64], name: &str| {
        make_alexander(n, h)
            .expect("standard Alexander quandle")
            .with_name(name)
    };
    let dihedral = |n| make_dihedral(n).expect("standard dihedral quandle");
    let entries = vec![
        dihedral(3),
        dihedral(5),
        dihedral(7),
        alex(7, &[-2, 1], "Z_7[T]/(T-2)"),
        alex(3, &[1, 0, 1], "Z_3[T]/(T^2+1)"),
        alex(2, &[1, 1, 1], "Z_2[T]/(T^2+T+1)"),
        alex(3, &[-1, 1, 1], "Z_3[T]/(T^2+T-1)"),
        alex(2, &[1, 0, 1, 1], "Z_2[T]/(T^3+T^2+1)"),
        alex(5, &[-2, 1], "Z_5[T]/(T-2)"),
        dihedral(9),
    ];
    debug_assert_eq!(entries.len(), STANDARD_LIST_LEN);
    StandardQuandleList { entries }
}
