//! Independent oracles: exhaustive coloring enumeration from a direct trace
//! of the Gauss code, and a plain polynomial reduction for Alexander
//! quandle elements. None of this goes through the crate's decomposition,
//! propagation or ring code.

use qkd_core::{
    build_system, count_colorings, count_colorings_linear, decompose, enumerate_colorings,
    has_nontrivial, make_alexander, make_dihedral, parse_gauss_code, standard_quandle_list,
    Convention, GaussCode, KnotCatalog, Quandle,
};

/// Equations `(target, source, over)` read straight off the token cycle.
fn traced_equations(tokens: &[i32], odd_forward: bool) -> (usize, Vec<(usize, usize, usize)>) {
    if tokens.is_empty() {
        return (1, vec![]);
    }
    let len = tokens.len();
    let first_under = tokens.iter().position(|&t| t < 0).unwrap();
    // arc id of every position: arcs are numbered from the first under-passage
    let mut arc_of = vec![0usize; len];
    let mut arc = 0usize;
    let crossings = len / 2;
    for step in 0..len {
        let p = (first_under + step) % len;
        if tokens[p] < 0 && step > 0 {
            arc += 1;
        }
        arc_of[p] = arc;
    }
    let mut eqs = Vec::new();
    for p in 0..len {
        let t = tokens[p];
        if t >= 0 {
            continue;
        }
        let label = -t;
        // the under token opens arc_of[p]; the arc before it closes there
        let out = arc_of[p];
        let inn = (out + crossings - 1) % crossings;
        let over_pos = tokens.iter().position(|&x| x == label).unwrap();
        let over = arc_of[over_pos];
        let odd = label % 2 == 1;
        if odd == odd_forward {
            eqs.push((out, inn, over));
        } else {
            eqs.push((inn, out, over));
        }
    }
    (crossings, eqs)
}

fn brute_force(tokens: &[i32], q: &Quandle, odd_forward: bool) -> (u64, u64) {
    let (arcs, eqs) = traced_equations(tokens, odd_forward);
    let n = q.size();
    let mut colors = vec![0usize; arcs];
    let (mut total, mut nonconstant) = (0u64, 0u64);
    loop {
        if eqs
            .iter()
            .all(|&(t, s, o)| colors[t] == q.op(colors[s], colors[o]))
        {
            total += 1;
            if colors.iter().any(|&c| c != colors[0]) {
                nonconstant += 1;
            }
        }
        // odometer
        let mut k = 0;
        loop {
            if k == arcs {
                return (total, nonconstant);
            }
            colors[k] += 1;
            if colors[k] < n {
                break;
            }
            colors[k] = 0;
            k += 1;
        }
    }
}

const TREFOIL: [i32; 6] = [1, -3, 5, -1, 3, -5];
const FIGURE_EIGHT: [i32; 8] = [-1, 3, -2, 4, -3, 1, -4, 2];

#[test]
fn oracle_small_knot_values() {
    let r3 = make_dihedral(3).unwrap();
    let r5 = make_dihedral(5).unwrap();
    let z7 = make_alexander(7, &[-2, 1]).unwrap();
    // frozen from the oracle: 27, 625 and 343 assignments checked
    assert_eq!(brute_force(&TREFOIL, &r3, true), (9, 6));
    assert_eq!(brute_force(&FIGURE_EIGHT, &r5, true), (25, 20));
    assert_eq!(brute_force(&FIGURE_EIGHT, &r3, true), (3, 0));
    assert_eq!(brute_force(&TREFOIL, &z7, true), (7, 0));
}

#[test]
fn solvers_agree_with_frozen_oracle_values() {
    let trefoil = GaussCode::new(TREFOIL.to_vec()).unwrap();
    let fig8 = GaussCode::new(FIGURE_EIGHT.to_vec()).unwrap();
    let r3 = make_dihedral(3).unwrap();
    let r5 = make_dihedral(5).unwrap();
    let z7 = make_alexander(7, &[-2, 1]).unwrap();
    let fwd = Convention::OddForward;

    assert_eq!(count_colorings(&build_system(&trefoil, fwd), &r3).count, 9);
    assert_eq!(count_colorings(&build_system(&fig8, fwd), &r5).count, 25);
    assert_eq!(count_colorings_linear(&trefoil, &r3, fwd).unwrap().count, 9);
    assert_eq!(count_colorings_linear(&trefoil, &z7, fwd).unwrap().count, 7);
    assert!(has_nontrivial(&build_system(&trefoil, fwd), &r3));
    assert!(!has_nontrivial(&build_system(&fig8, fwd), &r3));

    let colorings = enumerate_colorings(&build_system(&trefoil, fwd), &r3, 100);
    assert_eq!(colorings.len(), 9);
    assert_eq!(colorings.iter().filter(|c| !c.is_constant()).count(), 6);
}

#[test]
fn propagation_matches_exhaustive_count_for_small_knots() {
    let catalog = KnotCatalog::bundled();
    let list = standard_quandle_list();
    let mut checked = 0;
    for entry in catalog
        .entries()
        .iter()
        .filter(|e| e.code.crossing_count() <= 6)
    {
        for (i, q) in list.iter() {
            for (conv, odd_forward) in [
                (Convention::OddForward, true),
                (Convention::OddBackward, false),
            ] {
                let (expected, nonconstant) = brute_force(entry.code.tokens(), q, odd_forward);
                let sys = build_system(&entry.code, conv);
                let got = count_colorings(&sys, q);
                assert_eq!(got.count, expected, "{} quandle {i} {conv}", entry.name);
                assert_eq!(
                    has_nontrivial(&sys, q),
                    nonconstant > 0,
                    "{} quandle {i}",
                    entry.name
                );
                checked += 1;
            }
        }
    }
    assert_eq!(checked, 7 * 10 * 2);
}

#[test]
fn trace_oracle_matches_decomposition() {
    for entry in KnotCatalog::bundled().entries() {
        let (_, eqs) = traced_equations(entry.code.tokens(), true);
        let sys = build_system(&entry.code, Convention::OddForward);
        let mine: Vec<_> = sys
            .relations()
            .iter()
            .map(|r| (r.target(), r.source(), r.over))
            .collect();
        assert_eq!(mine, eqs, "{}", entry.name);
    }
}

#[test]
fn trefoil_arcs_by_trace() {
    // 3_1: crossing 1 closes the arc carrying +5 and sits under the arc carrying +1
    let code = parse_gauss_code("{1, -3, 5, -1, 3, -5}").unwrap();
    let d = decompose(&code);
    assert_eq!(d.arcs.len(), 3);
    let arc_with = |pos: usize| d.arcs.iter().find(|a| a.span.contains(&pos)).unwrap().id;
    let c1 = d.relations.iter().find(|r| r.label == 1).unwrap();
    assert_eq!(c1.under_in, arc_with(2));
    assert_eq!(c1.over, arc_with(0));
}

/// Reduces `a(T)` modulo monic `h(T)` over `Z_n`; both constant term first.
fn poly_mod(mut a: Vec<i64>, h: &[i64], n: i64) -> Vec<i64> {
    let d = h.len() - 1;
    while a.len() > d {
        let lead = a.pop().unwrap();
        let shift = a.len() - d;
        for (k, &hk) in h[..d].iter().enumerate() {
            a[shift + k] -= lead * hk;
        }
    }
    a.resize(d, 0);
    a.into_iter().map(|c| c.rem_euclid(n)).collect()
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn element_index(coeffs: &[i64], n: i64) -> usize {
    coeffs
        .iter()
        .rev()
        .fold(0, |acc, &c| acc * n as usize + c as usize)
}

#[test]
fn alexander_tables_match_symbolic_reduction() {
    let cases: [(i64, &[i64]); 6] = [
        (7, &[-2, 1]),
        (3, &[1, 0, 1]),
        (2, &[1, 1, 1]),
        (3, &[-1, 1, 1]),
        (2, &[1, 0, 1, 1]),
        (5, &[-2, 1]),
    ];
    for (n, h) in cases {
        let q = make_alexander(n as u32, h).unwrap();
        let d = h.len() - 1;
        let t: Vec<i64> = poly_mod(vec![0, 1], h, n);
        let one_minus_t: Vec<i64> = {
            let mut v = vec![0; d];
            v[0] = 1;
            v.iter().zip(&t).map(|(a, b)| a - b).collect()
        };
        for a in 0..q.size() {
            let ac: Vec<i64> = (0..d)
                .map(|k| ((a / (n as usize).pow(k as u32)) % n as usize) as i64)
                .collect();
            for b in 0..q.size() {
                let bc: Vec<i64> = (0..d)
                    .map(|k| ((b / (n as usize).pow(k as u32)) % n as usize) as i64)
                    .collect();
                let mut sum = poly_mul(&t, &ac);
                for (k, v) in poly_mul(&one_minus_t, &bc).into_iter().enumerate() {
                    sum[k] += v;
                }
                let expected = element_index(&poly_mod(sum, h, n), n);
                assert_eq!(q.op(a, b), expected, "Z_{n}/{h:?}: {a} ▷ {b}");
            }
        }
    }
}

#[test]
fn t_acting_on_zero_in_z3_mod_t2_plus_1() {
    // T ▷ 0 = T·T = T^2 ≡ -1 ≡ 2
    let h = [1, 0, 1];
    let t_sq = poly_mod(poly_mul(&[0, 1], &[0, 1]), &h, 3);
    assert_eq!(t_sq, vec![2, 0]);
    let q = make_alexander(3, &h).unwrap();
    assert_eq!(q.op(element_index(&[0, 1], 3), 0), element_index(&t_sq, 3));
}
