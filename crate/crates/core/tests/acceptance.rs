//! Reproduces the reference tables and the property suites, printing one
//! PASS/FAIL line per criterion.

#![allow(clippy::needless_range_loop)]

use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use coxmut::coxeter::{Family, TypeLabel};
use coxmut::exchange::{dynkin, mutation_class, Diagram, ExchangeMatrix};
use coxmut::group::{todd_coxeter, verify_relators, GroupOrderResult};
use coxmut::manifold::tables::{check_row, RowCheck, TableRow, TABLE1, TABLE2};
use coxmut::manifold::{
    euclidean_quotient_report, manifold_report, track_walls, Realization, Volume,
};
use coxmut::presentation::{build_presentation, evolve_generators, ExtraRelator, Word};
use coxmut::Caps;

struct Outcome {
    passed: bool,
    detail: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { passed: true, detail: Vec::new() }
    }

    fn require(&mut self, ok: bool, line: String) {
        self.passed &= ok;
        self.detail.push(format!("  [{}] {line}", if ok { "ok" } else { "FAIL" }));
    }
}

fn run_rows(rows: &[TableRow], caps: &Caps) -> Vec<(TableRow, Option<RowCheck>)> {
    rows.iter()
        .map(|row| {
            let start = Instant::now();
            let check = check_row(row, caps);
            eprintln!("  {} row {}: {:.1?}", row.table, row.group, start.elapsed());
            (*row, check.map_err(|e| eprintln!("  {}: {e}", row.group)).ok())
        })
        .collect()
}

fn table_outcome(results: &[(TableRow, Option<RowCheck>)]) -> Outcome {
    let mut out = Outcome::new();
    for (row, check) in results {
        match check {
            Some(check) => {
                let best = check.best();
                let summary = best.map_or("no candidates".to_string(), |b| {
                    format!(
                        "d={} |W|={} cusps={} compact={} chi_X={} ({} candidate(s), all agree: {})",
                        b.report.dimension,
                        b.report.group_order.as_ref().map_or("?".into(), |o| o.to_string()),
                        b.report.cusps.as_ref().map_or("-".into(), |c| c.to_string()),
                        b.report.compact,
                        b.report.chi_x.as_ref().map_or("-".into(), |c| c.to_string()),
                        check.candidates.len(),
                        check.all_agree(),
                    )
                });
                let mismatch = if check.passed() {
                    String::new()
                } else {
                    format!(" mismatches {:?}", best.map(|b| &b.mismatches))
                };
                out.require(check.passed(), format!("{}: {summary}{mismatch}", row.group));
            }
            None => out.require(false, format!("{}: search failed", row.group)),
        }
    }
    out
}

fn best_report<'a>(results: &'a [(TableRow, Option<RowCheck>)], group: &str) -> Option<&'a coxmut::manifold::ManifoldReport> {
    results
        .iter()
        .find(|(row, _)| row.group == group)
        .and_then(|(_, c)| c.as_ref())
        .filter(|c| c.passed())
        .and_then(|c| c.best())
        .map(|b| &b.report)
}

fn volumes(table1: &[(TableRow, Option<RowCheck>)], table2: &[(TableRow, Option<RowCheck>)]) -> Outcome {
    let mut out = Outcome::new();
    for (group, num, den, pi) in [("D5", 8, 3, 2), ("E7", 416, 15, 3), ("D8", 8 * 832, 15, 3)] {
        let row = TABLE1.iter().find(|r| r.group == group).unwrap();
        let Some(report) = best_report(table1, group) else {
            out.require(false, format!("{group}: no certified report"));
            continue;
        };
        let Some(volume) = report.volume.as_ref() else {
            out.require(false, format!("{group}: no volume"));
            continue;
        };
        let exact = *volume == Volume { coeff_num: num.into(), coeff_den: den.into(), pi_power: pi };
        let expected = row.order as f64 * row.chamber_volume.unwrap();
        let rel = (volume.approx() - expected).abs() / volume.approx();
        out.require(
            exact && rel < 1e-3,
            format!("{group}: {}/{} π^{} = {:.6}, |W|·chamber = {expected:.6}, relative error {rel:.2e}",
                volume.coeff_num, volume.coeff_den, volume.pi_power, volume.approx()),
        );
    }
    let b4 = &TABLE2[1];
    let d4 = &TABLE1[1];
    let (x, y) = (b4.order as f64 * b4.chamber_volume.unwrap(), d4.order as f64 * d4.chamber_volume.unwrap());
    let rel = (x - y).abs() / y;
    out.require(rel < 1e-4, format!("B4 volume {x:.6} vs D4 volume {y:.6}, relative difference {rel:.2e}"));
    let b4_cusps = best_report(table2, "B4").and_then(|r| r.cusps.clone());
    let d4_cusps = best_report(table1, "D4").and_then(|r| r.cusps.clone());
    out.require(
        b4_cusps.is_some() && b4_cusps == d4_cusps,
        format!("B4 and D4 cusp counts {b4_cusps:?} and {d4_cusps:?}"),
    );
    out
}

fn k4_example(caps: &Caps) -> Result<coxmut::manifold::ManifoldReport, String> {
    let b: Vec<Vec<i64>> =
        (0..4).map(|i: i64| (0..4).map(|j: i64| (j - i).signum()).collect()).collect();
    let g = Diagram::from_matrix(&ExchangeMatrix::skew_symmetric(b).map_err(|e| e.to_string())?);
    let roots = vec![vec![1, 1, 1, 1], vec![0, 1, 1, 1], vec![0, 0, 1, 1], vec![0, 0, 0, 1]];
    let extra = [[0, 1, 2, 1], [0, 2, 3, 2], [1, 2, 3, 2]]
        .iter()
        .map(|w| ExtraRelator { word: Word::new(w.to_vec()), exponent: 2 })
        .collect();
    let r = Realization::from_roots(TypeLabel::finite(Family::A, 4), roots, extra).map_err(|e| e.to_string())?;
    manifold_report(&g, &r, caps).map_err(|e| e.to_string())
}

fn certificates(
    table1: &[(TableRow, Option<RowCheck>)],
    table2: &[(TableRow, Option<RowCheck>)],
    caps: &Caps,
) -> Outcome {
    let mut out = Outcome::new();
    for (row, check) in table1.iter().chain(table2) {
        let Some(check) = check else {
            out.require(false, format!("{}: no candidates", row.group));
            continue;
        };
        let certified = check.candidates.iter().filter(|c| c.report.torsion.torsion_free == Some(true)).count();
        let complete = check.candidates.iter().all(|c| c.report.torsion.entries.len() == c.report.torsion.elliptic_subsets);
        out.require(
            certified == check.candidates.len() && certified > 0 && complete,
            format!("{}: {certified}/{} candidate diagrams torsion-free", row.group, check.candidates.len()),
        );
    }
    match k4_example(caps) {
        Ok(report) => out.require(
            report.torsion.torsion_free == Some(true)
                && report.quotient_order == Some(GroupOrderResult::Exact { order: 120u32.into() })
                && report.cusps == Some(BigUint::from(20u32)),
            format!(
                "K4 custom: torsion-free {:?}, quotient order {:?}, cusps {:?}",
                report.torsion.torsion_free, report.quotient_order, report.cusps
            ),
        ),
        Err(e) => out.require(false, format!("K4 custom: {e}")),
    }
    out
}

fn euclidean(caps: &Caps) -> Outcome {
    let mut out = Outcome::new();
    for (n, order) in [(3usize, 24u32), (4, 192), (5, 1920)] {
        match euclidean_quotient_report(&dynkin::oriented_cycle(n), caps) {
            Ok(r) => out.require(
                r.certified && r.lattice_rank == n - 1 && r.quotient_order.exact() == Some(&BigUint::from(order)),
                format!("{n}-cycle: lattice rank {}, quotient order {:?}", r.lattice_rank, r.quotient_order),
            ),
            Err(e) => out.require(false, format!("{n}-cycle: {e}")),
        }
    }
    out
}

fn random_matrix(rng: &mut StdRng) -> ExchangeMatrix {
    let n = rng.gen_range(2..=6);
    let d: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=3)).collect();
    let mut s = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            s[i][j] = rng.gen_range(-2..=2);
            s[j][i] = -s[i][j];
        }
    }
    let b = (0..n).map(|i| (0..n).map(|j| d[i] * s[i][j]).collect()).collect();
    ExchangeMatrix::new(b, d).expect("D·S is skew-symmetrizable by D")
}

fn properties(table1: &[(TableRow, Option<RowCheck>)], table2: &[(TableRow, Option<RowCheck>)], caps: &Caps) -> Outcome {
    let mut out = Outcome::new();
    let mut rng = StdRng::seed_from_u64(0x5eed);

    let mut involutive = 0;
    for _ in 0..1000 {
        let m = random_matrix(&mut rng);
        let k = rng.gen_range(0..m.rank());
        let once = m.mutate(k).unwrap();
        if once.mutate(k).unwrap() == m
            && once.symmetrizer() == m.symmetrizer()
            && ExchangeMatrix::new(once.rows().to_vec(), once.symmetrizer().to_vec()).is_ok()
        {
            involutive += 1;
        }
    }
    out.require(involutive == 1000, format!("mutation involutive and symmetrizer preserved on {involutive}/1000 random matrices"));

    for row in TABLE1.iter().chain(&TABLE2) {
        let rank: usize = row.group[1..].parse().unwrap();
        if rank > 5 {
            continue;
        }
        let start = dynkin::by_name(row.group.chars().next().unwrap(), rank).unwrap();
        let class = mutation_class(&start, caps);
        let squares = class.members.iter().all(|m| Diagram::from_matrix(&m.matrix).has_square_cycle_products());
        out.require(
            class.is_complete() && squares,
            format!("{}: perfect-square cycle products across {} class members", row.group, class.members.len()),
        );
    }

    for (row, check) in table1.iter().chain(table2) {
        if row.dimension.is_multiple_of(2) {
            continue;
        }
        let zero = check.as_ref().is_some_and(|c| {
            !c.candidates.is_empty()
                && c.candidates.iter().all(|x| x.report.chi_orb.as_ref().is_some_and(BigRational::is_zero))
        });
        out.require(zero, format!("{} (d={}): chi_orb = 0", row.group, row.dimension));
    }

    let small: [(char, usize); 12] = [
        ('A', 1), ('A', 2), ('A', 3), ('A', 4), ('B', 2), ('B', 3), ('B', 4), ('C', 3), ('D', 4), ('F', 4), ('G', 2), ('C', 4),
    ];
    for (family, rank) in small {
        let Some(start) = dynkin::by_name(family, rank) else {
            out.require(false, format!("{family}{rank}: no Dynkin orientation"));
            continue;
        };
        let schreier_sims = Realization::from_dynkin(&start, &[]).map(|r| r.images().order());
        let class = mutation_class(&start, caps);
        let mut orders = Vec::new();
        for member in &class.members {
            let g = Diagram::from_matrix(&member.matrix);
            let order = build_presentation(&g, Vec::new()).ok().map(|p| todd_coxeter(&p, caps.cosets));
            orders.push(order.and_then(|o| o.exact().cloned()));
        }
        let ss = schreier_sims.ok();
        let agree = ss.is_some() && orders.iter().all(|o| o.is_some() && o.as_ref() == ss.as_ref());
        out.require(
            class.is_complete() && agree,
            format!(
                "{family}{rank}: Todd-Coxeter order equals Schreier-Sims order {} on all {} class members",
                ss.map_or("?".into(), |o| o.to_string()),
                class.members.len()
            ),
        );
    }
    out
}

fn evolve_track(caps: &Caps) -> Outcome {
    let _ = caps;
    let mut out = Outcome::new();
    let mut rng = StdRng::seed_from_u64(0xa4b3);
    for (name, start) in [("A4", dynkin::a(4)), ("B3", dynkin::b(3))] {
        let r = Realization::from_dynkin(&start, &[]).unwrap();
        let mut good = 0;
        let trials = 100;
        for _ in 0..trials {
            let len = rng.gen_range(1..=12);
            let seq: Vec<usize> = (0..len).map(|_| rng.gen_range(0..start.rank())).collect();
            let words = evolve_generators(&start, &seq).unwrap();
            let walls = track_walls(&start, &seq).unwrap();
            let agree = walls.walls.iter().enumerate().all(|(i, wall)| {
                r.images().evaluate(&wall.reflection(i)).unwrap() == r.images().evaluate(&words.words()[i]).unwrap()
            });
            let target = Diagram::from_matrix(&start.mutate_along(&seq).unwrap());
            let relators = build_presentation(&target, Vec::new())
                .ok()
                .and_then(|p| verify_relators(r.images(), &words, &p).ok())
                .is_some_and(|report| report.all_pass());
            if agree && relators {
                good += 1;
            }
        }
        out.require(good == trials, format!("{name}: {good}/{trials} random sequences consistent"));
    }
    out
}

fn main() -> ExitCode {
    let caps = Caps::from_env().unwrap_or_default();
    let started = Instant::now();
    eprintln!("running table searches");
    let table1 = run_rows(&TABLE1, &caps);
    let table2 = run_rows(&TABLE2, &caps);
    let outcomes = [
        ("1", "reference table 1", table_outcome(&table1)),
        ("2", "reference table 2", table_outcome(&table2)),
        ("3", "volume crosschecks", volumes(&table1, &table2)),
        ("4", "torsion-freeness certificates", certificates(&table1, &table2, &caps)),
        ("5", "Euclidean quotients", euclidean(&caps)),
        ("6", "property suites", properties(&table1, &table2, &caps)),
        ("7", "evolve/track consistency", evolve_track(&caps)),
    ];
    let mut all = true;
    for (number, name, outcome) in &outcomes {
        println!("criterion {number} ({name}): {}", if outcome.passed { "PASS" } else { "FAIL" });
        for line in &outcome.detail {
            println!("{line}");
        }
        all &= outcome.passed;
    }
    println!("total time {:.1?}", started.elapsed());
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
