//! Coloring counts by linear algebra over the coefficient field.
//!
//! For an Alexander quandle on a field `F_s`, the crossing condition
//! `target = T·source + (1 - T)·over` is linear in the arc colors, so the
//! colorings form the null space of a `crossings × arcs` matrix and number
//! `s^(arcs - rank)`.

use crate::error::{Error, Result};
use crate::gauss::GaussCode;
use crate::quandle::Quandle;
use crate::ring::FiniteField;
use crate::solver::{build_system, ColoringSystem, Convention, CountResult, SolverTag};

/// The field behind `q` together with the class of `T`.
#[derive(Clone, Debug)]
pub struct FieldQuandle {
    field: FiniteField,
    t: usize,
}

impl FieldQuandle {
    /// Fails for quandles whose ring has zero divisors (such as `R_9`) and
    /// for raw tables.
    pub fn new(q: &Quandle) -> Result<Self> {
        let unsupported = || Error::UnsupportedQuandle(q.name().to_string());
        let ring = q.ring().ok_or_else(unsupported)?;
        let field = ring.field().ok_or_else(unsupported)?;
        let t = ring.encode(&ring.t());
        Ok(FieldQuandle { field, t })
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn size(&self) -> usize {
        self.field.size()
    }
}

/// One row per crossing: `T` on the source, `1 - T` on the over-arc and
/// `-1` on the target, summed where roles share an arc.
pub fn coefficient_matrix(sys: &ColoringSystem, fq: &FieldQuandle) -> Vec<Vec<usize>> {
    let f = &fq.field;
    let t = fq.t;
    let one_minus_t = f.sub(1, t);
    let minus_one = f.neg(1);
    sys.relations()
        .iter()
        .map(|r| {
            let mut row = vec![0; sys.arc_count()];
            for (arc, coeff) in [
                (r.source(), t),
                (r.over, one_minus_t),
                (r.target(), minus_one),
            ] {
                row[arc] = f.add(row[arc], coeff);
            }
            row
        })
        .collect()
}

/// Row-reduces in place and returns the rank.
pub fn rank(field: &FiniteField, rows: &mut [Vec<usize>]) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = field.inv(rows[rank][col]);
        for v in rows[rank].iter_mut() {
            *v = field.mul(*v, inv);
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col] == 0 {
                continue;
            }
            let factor = row[col];
            for (v, &p) in row.iter_mut().zip(&pivot_row) {
                *v = field.sub(*v, field.mul(factor, p));
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

pub fn count_system_linear(sys: &ColoringSystem, fq: &FieldQuandle) -> CountResult {
    let mut rows = coefficient_matrix(sys, fq);
    let r = rank(&fq.field, &mut rows);
    let nullity = (sys.arc_count() - r) as u32;
    let count = (fq.size() as u64).pow(nullity);
    CountResult::new(count, fq.size(), SolverTag::Linear)
}

pub fn count_colorings_linear(
    code: &GaussCode,
    q: &Quandle,
    convention: Convention,
) -> Result<CountResult> {
    let fq = FieldQuandle::new(q)?;
    Ok(count_system_linear(&build_system(code, convention), &fq))
}
