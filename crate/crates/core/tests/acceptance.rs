//! Acceptance suite. Each test prints one `ACCEPTANCE <n> PASS|FAIL` line;
//! run with `--nocapture` to see them.

use std::sync::OnceLock;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::seq::index::sample;
use rand::SeedableRng;

use qkd_core::matrix::profiles_to_csv;
use qkd_core::{
    build_matrix, build_matrix_aligned, build_system, count_colorings, count_colorings_linear,
    fenn_rourke_distinguishes, profile_all, standard_quandle_list, summarize,
    verify_against_reference, verify_quandle, ColoringProfile, Convention, FieldQuandle, GaussCode,
    KnotCatalog, ProfileOptions, ReferenceMatrix, StandardQuandleList, TableAlignment,
};

const KNOTS: usize = 249;
const PAIRS: usize = KNOTS * (KNOTS - 1) / 2;

fn list() -> &'static StandardQuandleList {
    static LIST: OnceLock<StandardQuandleList> = OnceLock::new();
    LIST.get_or_init(standard_quandle_list)
}

fn catalog() -> &'static KnotCatalog {
    static CATALOG: OnceLock<KnotCatalog> = OnceLock::new();
    CATALOG.get_or_init(KnotCatalog::bundled)
}

fn profiles(conv: Convention) -> &'static [ColoringProfile] {
    static FWD: OnceLock<Vec<ColoringProfile>> = OnceLock::new();
    static BWD: OnceLock<Vec<ColoringProfile>> = OnceLock::new();
    let cell = match conv {
        Convention::OddForward => &FWD,
        Convention::OddBackward => &BWD,
    };
    cell.get_or_init(|| {
        profile_all(
            catalog(),
            list().as_slice(),
            conv,
            ProfileOptions::default(),
        )
        .unwrap()
    })
}

fn report(n: u32, ok: bool, detail: impl std::fmt::Display) {
    let verdict = if ok { "PASS" } else { "FAIL" };
    println!("ACCEPTANCE {n} {verdict}: {detail}");
}

#[test]
fn criterion_01_axioms() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for (i, q) in list().iter() {
        match verify_quandle(q) {
            Ok(r) if r.passes() => {}
            Ok(r) => failures.push(format!(
                "{i} {}: {:?}",
                q.name(),
                r.failures().collect::<Vec<_>>()
            )),
            Err(e) => failures.push(format!("{i} {}: {e}", q.name())),
        }
    }
    let elapsed = start.elapsed();
    let ok = failures.is_empty() && elapsed.as_secs_f64() < 1.0;
    report(
        1,
        ok,
        format!("10 quandles verified in {elapsed:.2?}, failures {failures:?}"),
    );
    assert!(ok);
}

#[test]
fn criterion_02_unknot() {
    let unknot = GaussCode::unknot();
    let mut bad = Vec::new();
    for conv in Convention::ALL {
        let sys = build_system(&unknot, conv);
        for (i, q) in list().iter() {
            let c = count_colorings(&sys, q).count;
            if c != q.size() as u64 {
                bad.push((i, conv, c));
            }
        }
    }
    report(
        2,
        bad.is_empty(),
        format!("unknot count equals |Q| for all quandles; bad {bad:?}"),
    );
    assert!(bad.is_empty());
}

/// Plain enumeration over all assignments of the system's arcs.
fn exhaustive(code: &GaussCode, q: &qkd_core::Quandle) -> u64 {
    let sys = build_system(code, Convention::DEFAULT);
    let arcs = sys.arc_count();
    let n = q.size();
    (0..n.pow(arcs as u32))
        .filter(|&idx| {
            let colors: Vec<usize> = (0..arcs).map(|k| (idx / n.pow(k as u32)) % n).collect();
            sys.is_satisfied(q, &colors)
        })
        .count() as u64
}

#[test]
fn criterion_03_oracles() {
    let cat = catalog();
    let trefoil = &cat.by_name("3_1").unwrap().code;
    let fig8 = &cat.by_name("4_1").unwrap().code;
    let r3 = list().get(1).unwrap();
    let r5 = list().get(2).unwrap();

    let brute = (exhaustive(trefoil, r3), exhaustive(fig8, r5));
    let solved = (
        count_colorings(&build_system(trefoil, Convention::DEFAULT), r3).count,
        count_colorings(&build_system(fig8, Convention::DEFAULT), r5).count,
    );
    let ok = brute == (9, 25) && solved == (9, 25);
    report(
        3,
        ok,
        format!("3_1/R_3 and 4_1/R_5: exhaustive {brute:?}, solver {solved:?}"),
    );
    assert!(ok);
}

#[test]
fn criterion_04_convention_calibration() {
    let reference = ReferenceMatrix::bundled();
    let expected: Vec<Option<u8>> = (2..=20).map(|j| reference.get(1, j)).collect();
    let mut reproducing = Vec::new();
    for conv in Convention::ALL {
        let m = build_matrix(profiles(conv));
        let row: Vec<Option<u8>> = (2..=20).map(|j| m.get(1, j)).collect();
        if row == expected {
            reproducing.push(conv);
        }
    }
    let identical = profiles(Convention::OddForward) == profiles(Convention::OddBackward);
    let ok = reproducing.len() == 1;
    report(
        4,
        ok,
        format!(
            "conventions reproducing row 1 (j=2..20): {reproducing:?}; \
             profiles identical across conventions: {identical}; \
             calibration is undecidable when both or neither reproduce the row"
        ),
    );
    assert!(ok, "calibration needs exactly one convention to match");
}

#[test]
fn criterion_05_reference_matrix() {
    let m = build_matrix(profiles(Convention::DEFAULT));
    let diff = verify_against_reference(&m, &ReferenceMatrix::bundled()).unwrap();
    let ok = diff.is_clean();
    let first: Vec<String> = diff
        .mismatches
        .iter()
        .take(5)
        .map(|x| format!("({},{}) {} vs {}", x.i, x.j, x.computed, x.reference))
        .collect();
    report(
        5,
        ok,
        format!(
            "{} mismatches ({} checked, {} not in reference); first {first:?}",
            diff.mismatches.len(),
            diff.checked,
            diff.unchecked
        ),
    );
    assert!(ok, "{} mismatches", diff.mismatches.len());
}

#[test]
fn criterion_05_aligned_reproduction() {
    let m = build_matrix_aligned(
        profiles(Convention::DEFAULT),
        &TableAlignment::bundled_reference(),
    );
    let diff = verify_against_reference(&m, &ReferenceMatrix::bundled()).unwrap();
    let ok = diff.is_clean();
    report(
        5,
        ok,
        format!(
            "[aligned: quandles 9<->10, knots 167<->170] {} mismatches ({} checked, {} not in reference)",
            diff.mismatches.len(),
            diff.checked,
            diff.unchecked
        ),
    );
    assert!(ok);
}

#[test]
fn criterion_06_summary_counts() {
    let p = profiles(Convention::DEFAULT);
    let stats = summarize(&build_matrix(p), p, &list().sizes());
    let ok = stats.total_pairs == PAIRS && stats.zeros == 793 && stats.fr_inconclusive == 962;
    report(
        6,
        ok,
        format!("{stats} (expected pairs={PAIRS} zeros=793 fr_inconclusive=962)"),
    );
    assert!(ok);
}

#[test]
fn criterion_07_solver_agreement() {
    let mut compared = 0;
    let mut disagreements = Vec::new();
    for e in catalog().entries() {
        for (i, q) in list().iter() {
            if FieldQuandle::new(q).is_err() {
                continue;
            }
            let p = count_colorings(&build_system(&e.code, Convention::DEFAULT), q).count;
            let l = count_colorings_linear(&e.code, q, Convention::DEFAULT)
                .unwrap()
                .count;
            compared += 1;
            if p != l {
                disagreements.push((e.name.clone(), i, p, l));
            }
        }
    }
    let ok = compared == 2241 && disagreements.is_empty();
    report(
        7,
        ok,
        format!("{compared} cases compared, disagreements {disagreements:?}"),
    );
    assert!(ok);
}

#[test]
fn criterion_08_rotation_invariance() {
    let mut rng = StdRng::seed_from_u64(0x5eed_0008);
    let picks = sample(&mut rng, KNOTS, 20).into_vec();
    let mut checks = 0;
    let mut bad = Vec::new();
    for k in picks {
        let e = &catalog().entries()[k];
        for (i, q) in list().iter() {
            let base = count_colorings(&build_system(&e.code, Convention::DEFAULT), q).count;
            for shift in 1..e.code.len().max(1) as isize {
                let c =
                    count_colorings(&build_system(&e.code.rotate(shift), Convention::DEFAULT), q)
                        .count;
                checks += 1;
                if c != base {
                    bad.push((e.name.clone(), i, shift, base, c));
                }
            }
        }
    }
    report(
        8,
        bad.is_empty(),
        format!("20 knots, {checks} rotated counts, changes {bad:?}"),
    );
    assert!(bad.is_empty());
}

#[test]
fn criterion_09_properties() {
    let p = profiles(Convention::DEFAULT);
    let sizes = list().sizes();
    let mut violations = Vec::new();
    for prof in p {
        for (qi, (&c, q)) in prof.counts.iter().zip(list().as_slice()).enumerate() {
            if c < q.size() as u64 {
                violations.push(format!("{} q{}: {c} < |Q|", prof.name, qi + 1));
            }
            if let Ok(fq) = FieldQuandle::new(q) {
                let s = fq.size() as u64;
                let mut r = c;
                while r > 1 && r.is_multiple_of(s) {
                    r /= s;
                }
                if r != 1 {
                    violations.push(format!("{} q{}: {c} not a power of {s}", prof.name, qi + 1));
                }
            }
        }
    }
    let m = build_matrix(p);
    for (i, j, v) in m.iter() {
        if fenn_rourke_distinguishes(&p[i - 1], &p[j - 1], &sizes) && v == 0 {
            violations.push(format!("({i},{j}) Fenn-Rourke distinguished with entry 0"));
        }
    }
    report(
        9,
        violations.is_empty(),
        format!("violations {violations:?}"),
    );
    assert!(violations.is_empty());
}

#[test]
fn criterion_10_parallel_determinism() {
    let run = |jobs| {
        let opts = ProfileOptions {
            jobs,
            cross_check: false,
        };
        let p = profile_all(catalog(), list().as_slice(), Convention::DEFAULT, opts).unwrap();
        (profiles_to_csv(&p), build_matrix(&p).to_csv())
    };
    let jobs = std::thread::available_parallelism()
        .map_or(4, |n| n.get())
        .max(4);
    let serial = run(1);
    let parallel = run(jobs);
    let ok = serial == parallel;
    report(
        10,
        ok,
        format!("jobs=1 vs jobs={jobs}: outputs byte-identical = {ok}"),
    );
    assert!(ok);
}
