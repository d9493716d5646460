use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

use super::tables::{check_row, TABLE2};
use super::*;
use crate::coxeter::{CoxeterMatrix, Family, TypeLabel};
use crate::exchange::{dynkin, Diagram, ExchangeMatrix};
use crate::group::{GroupOrderResult, RootSystem};
use crate::presentation::{evolve_generators, ExtraRelator, Word};
use crate::Caps;

fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

fn triangle() -> ExchangeMatrix {
    dynkin::a(3).mutate(1).unwrap()
}

#[test]
fn orbifold_euler_of_small_groups() {
    let a3 = CoxeterMatrix::from_fn(3, |i, j| if i.abs_diff(j) == 1 { 3 } else { 2 }).unwrap();
    assert_eq!(orbifold_euler(&a3).unwrap(), ratio(1, 24));
    let m = [[1, 3, 4], [3, 1, 4], [4, 4, 1]];
    let hyperbolic = CoxeterMatrix::from_fn(3, |i, j| m[i][j]).unwrap();
    assert_eq!(orbifold_euler(&hyperbolic).unwrap(), ratio(-1, 12));
}

#[test]
fn euclidean_euler_characteristic_vanishes() {
    let g = Diagram::from_matrix(&triangle());
    let c = crate::presentation::coxeter_data(&g).unwrap();
    assert_eq!(orbifold_euler(&c).unwrap(), ratio(0, 1));
}

#[test]
fn volume_from_euler() {
    let v = Volume::from_euler(&ratio(-4, 1), 2).unwrap();
    assert_eq!((v.coeff_num, v.coeff_den, v.pi_power), (BigInt::from(8), BigInt::from(1), 1));
    let v = Volume::from_euler(&ratio(2, 1), 4).unwrap();
    assert_eq!((v.coeff_num, v.coeff_den, v.pi_power), (BigInt::from(8), BigInt::from(3), 2));
    let v = Volume::from_euler(&ratio(-52, 1), 6).unwrap();
    assert_eq!((v.coeff_num, v.coeff_den, v.pi_power), (BigInt::from(416), BigInt::from(15), 3));
    assert!(Volume::from_euler(&ratio(1, 1), 3).is_none());
}

#[test]
fn walls_after_one_mutation() {
    let t = track_walls(&dynkin::a(3), &[1]).unwrap();
    assert_eq!(t.walls[0], Wall { conjugator: Word::generator(1), side: Side::Positive });
    assert_eq!(t.walls[1], Wall { conjugator: Word::identity(), side: Side::Negative });
    assert_eq!(t.walls[2], Wall { conjugator: Word::identity(), side: Side::Positive });
}

#[test]
fn walls_of_empty_sequence() {
    let t = track_walls(&dynkin::d(5), &[]).unwrap();
    assert!(t.walls.iter().all(|w| w.conjugator == Word::identity() && w.side == Side::Positive));
}

#[test]
fn walls_after_double_mutation_are_reflected_originals() {
    let m = dynkin::b(3);
    let r = Realization::from_dynkin(&m, &[]).unwrap();
    for k in 0..3 {
        let t = track_walls(&m, &[k, k]).unwrap();
        let s_k = Word::generator(k);
        for (i, wall) in t.walls.iter().enumerate() {
            let image = r.images().evaluate(&wall.reflection(i)).unwrap();
            let original = r.images().evaluate(&s_k.conjugate(&Word::generator(i))).unwrap();
            assert_eq!(image, original, "k = {k}, generator {i}");
        }
    }
}

#[test]
fn walls_agree_with_evolved_generators() {
    let m = dynkin::a(4);
    let r = Realization::from_dynkin(&m, &[]).unwrap();
    for seq in [vec![0, 2, 1, 3], vec![1, 2, 1, 0, 3, 2], vec![3, 3, 2]] {
        let t = track_walls(&m, &seq).unwrap();
        let words = evolve_generators(&m, &seq).unwrap();
        for (i, wall) in t.walls.iter().enumerate() {
            let tracked = r.images().evaluate(&wall.reflection(i)).unwrap();
            let evolved = r.images().evaluate(&words.words()[i]).unwrap();
            assert_eq!(tracked, evolved, "sequence {seq:?}, generator {i}");
        }
    }
}

#[test]
fn companion_basis_of_dynkin_orientation_is_simple() {
    let basis = companion_basis(&dynkin::d(4), &Caps::default()).unwrap();
    let rs = RootSystem::new(TypeLabel::finite(Family::D, 4)).unwrap();
    let mut roots = basis.roots.clone();
    roots.sort();
    let mut simple: Vec<Vec<i64>> = (0..4).map(|i| rs.simple_root(i)).collect();
    simple.sort();
    assert_eq!(roots, simple);
}

#[test]
fn companion_basis_of_triangle() {
    let basis = companion_basis(&triangle(), &Caps::default()).unwrap();
    let mut roots = basis.roots;
    roots.sort();
    // the two answers differ by the diagram automorphism of A3
    let expected = [
        vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 1, 0]],
        vec![vec![0, 1, 0], vec![0, 1, 1], vec![1, 0, 0]],
    ];
    assert!(expected.contains(&roots), "{roots:?}");
}

#[test]
fn companion_basis_roots_generate() {
    let m = dynkin::d(4).mutate(1).unwrap().mutate(0).unwrap();
    let r = Realization::for_matrix(&m, &Caps::default()).unwrap();
    let basis = companion_basis_of(&r);
    let rs = r.root_system();
    assert!(basis.roots.iter().all(|x| rs.is_root(x)));
    let rep = rs.reflection_rep(&basis.roots).unwrap();
    assert_eq!(rep.order(), BigUint::from(192u32));
}

#[test]
fn euclidean_quotients_of_cycles() {
    for (n, order) in [(3usize, 24u32), (4, 192), (5, 1920)] {
        let report = euclidean_quotient_report(&dynkin::oriented_cycle(n), &Caps::default()).unwrap();
        assert_eq!(report.lattice_rank, n - 1);
        assert!(report.commute);
        assert!(report.translations.iter().all(|t| t.is_translation));
        assert_eq!(report.quotient_order, GroupOrderResult::Exact { order: order.into() });
        assert!(report.certified, "{n}-cycle");
    }
}

#[test]
fn euclidean_report_rejects_dynkin() {
    assert!(matches!(
        euclidean_quotient_report(&dynkin::a(3), &Caps::default()),
        Err(ManifoldError::WrongType { .. })
    ));
}

#[test]
fn integer_rank_of_dependent_vectors() {
    assert_eq!(integer_rank(&[vec![1, 2], vec![2, 4]]), 1);
    assert_eq!(integer_rank(&[vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 0]]), 2);
    assert_eq!(integer_rank(&[]), 0);
}

fn k4() -> (Diagram, Realization) {
    let b: Vec<Vec<i64>> =
        (0..4).map(|i| (0..4).map(|j: usize| (j as i64 - i as i64).signum()).collect()).collect();
    let g = Diagram::from_matrix(&ExchangeMatrix::skew_symmetric(b).unwrap());
    let roots = vec![vec![1, 1, 1, 1], vec![0, 1, 1, 1], vec![0, 0, 1, 1], vec![0, 0, 0, 1]];
    let extra = [[0, 1, 2, 1], [0, 2, 3, 2], [1, 2, 3, 2]]
        .iter()
        .map(|w| ExtraRelator { word: Word::new(w.to_vec()), exponent: 2 })
        .collect();
    let r = Realization::from_roots(TypeLabel::finite(Family::A, 4), roots, extra).unwrap();
    (g, r)
}

#[test]
fn complete_graph_custom_realization() {
    let (g, r) = k4();
    let report = manifold_report(&g, &r, &Caps::default()).unwrap();
    assert_eq!(report.dimension, 3);
    assert_eq!(report.torsion.torsion_free, Some(true));
    assert_eq!(report.cusps, Some(BigUint::from(20u32)));
    assert_eq!(report.quotient_order, Some(GroupOrderResult::Exact { order: 120u32.into() }));
    assert_eq!(report.chi_orb, Some(ratio(0, 1)));
    assert!(report.volume.is_none());
}

#[test]
fn torsion_entries_cover_elliptic_subsets() {
    let m = dynkin::d(5).mutate(2).unwrap().mutate(3).unwrap();
    let cert = verify_torsion_free(&m, &Caps::default()).unwrap();
    let c = crate::presentation::coxeter_data(&Diagram::from_matrix(&m)).unwrap();
    let count = crate::coxeter::elliptic_subsets(&c).unwrap().len() - 1;
    assert_eq!(cert.entries.len(), count);
    assert_eq!(cert.elliptic_subsets, count);
    assert_eq!(cert.torsion_free, Some(true));
}

#[test]
fn affine_neighbour_is_torsion_free() {
    let b = vec![vec![0, 1, 0, 1], vec![-1, 0, 1, 0], vec![0, -1, 0, 1], vec![-1, 0, -1, 0]];
    let m = ExchangeMatrix::skew_symmetric(b).unwrap().mutate(1).unwrap();
    let cert = verify_torsion_free_affine(&m, &Caps::default()).unwrap();
    assert_eq!(cert.torsion_free, Some(true));
    let tiny = Caps { closure: 1, ..Caps::default() };
    assert_eq!(verify_torsion_free_affine(&m, &tiny).unwrap().torsion_free, None);
}

#[test]
fn invariants_need_a_realization() {
    let markov = ExchangeMatrix::skew_symmetric(vec![vec![0, 2, -2], vec![-2, 0, 2], vec![2, -2, 0]]).unwrap();
    assert!(manifold_invariants(&markov, &Caps::default()).is_err());
}

#[test]
fn b3_surface_row() {
    let check = check_row(&TABLE2[0], &Caps::default()).unwrap();
    assert!(check.passed(), "{:#?}", check.candidates.iter().map(|c| &c.mismatches).collect::<Vec<_>>());
    let best = check.best().unwrap();
    assert_eq!(best.report.genus, Some(BigInt::from(3)));
}

#[test]
fn report_serializes_schema() {
    let (g, r) = k4();
    let report = manifold_report(&g, &r, &Caps::default()).unwrap();
    let json = serde_json::to_value(&report).unwrap();
    assert_eq!(json["chi_orb"], serde_json::json!({"num": 0, "den": 1}));
    assert!(json.get("chi_X").is_some());
    assert_eq!(json["torsion"]["torsion_free"], serde_json::json!(true));
}
