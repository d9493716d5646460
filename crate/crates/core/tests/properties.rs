use num_bigint::BigUint;
use proptest::prelude::*;

use coxmut::coxeter::elliptic_subsets;
use coxmut::exchange::{canonical_form, dynkin, Diagram, ExchangeMatrix};
use coxmut::group::verify_relators;
use coxmut::manifold::{orbifold_euler, track_walls, verify_torsion_free, Realization};
use coxmut::presentation::{
    build_presentation, coxeter_data, emit_presentation, evolve_generators, parse_presentation,
};
use coxmut::Caps;

fn skew_symmetrizable() -> impl Strategy<Value = ExchangeMatrix> {
    (2usize..=6).prop_flat_map(|n| {
        let d = prop::collection::vec(1i64..=3, n);
        let s = prop::collection::vec(-3i64..=3, n * (n - 1) / 2);
        (Just(n), d, s).prop_map(|(n, d, s)| {
            let mut b = vec![vec![0; n]; n];
            let mut next = s.into_iter();
            for i in 0..n {
                for j in (i + 1)..n {
                    let x = next.next().unwrap();
                    b[i][j] = d[i] * x;
                    b[j][i] = -d[j] * x;
                }
            }
            ExchangeMatrix::new(b, d).unwrap()
        })
    })
}

fn dynkin_start() -> impl Strategy<Value = ExchangeMatrix> {
    prop_oneof![
        Just(dynkin::a(4)),
        Just(dynkin::b(3)),
        Just(dynkin::d(4)),
        Just(dynkin::b(4)),
        Just(dynkin::f4()),
        Just(dynkin::g2()),
        Just(dynkin::d(5)),
    ]
}

fn walk() -> impl Strategy<Value = (ExchangeMatrix, Vec<usize>)> {
    dynkin_start().prop_flat_map(|m| {
        let n = m.rank();
        (Just(m), prop::collection::vec(0..n, 0..10))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn mutation_is_an_involution(m in skew_symmetrizable(), k in 0usize..6) {
        let k = k % m.rank();
        let once = m.mutate(k).unwrap();
        prop_assert_eq!(once.mutate(k).unwrap(), m.clone());
        prop_assert_eq!(once.symmetrizer(), m.symmetrizer());
        prop_assert!(ExchangeMatrix::new(once.rows().to_vec(), once.symmetrizer().to_vec()).is_ok());
    }

    #[test]
    fn canonical_form_ignores_labels(m in skew_symmetrizable(), seed in any::<u64>()) {
        let n = m.rank();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut state = seed;
        for i in (1..n).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (state >> 33) as usize % (i + 1));
        }
        let relabeled = m.relabel(&perm);
        prop_assert_eq!(
            canonical_form(&Diagram::from_matrix(&m)),
            canonical_form(&Diagram::from_matrix(&relabeled))
        );
    }

    #[test]
    fn evolved_generators_satisfy_the_mutated_presentation((m, seq) in walk()) {
        let r = Realization::from_dynkin(&m, &[]).unwrap();
        let words = evolve_generators(&m, &seq).unwrap();
        let g = Diagram::from_matrix(&m.mutate_along(&seq).unwrap());
        let p = build_presentation(&g, Vec::new()).unwrap();
        prop_assert!(verify_relators(r.images(), &words, &p).unwrap().all_pass());
        prop_assert_eq!(
            Realization::from_dynkin(&m, &seq).unwrap().images().order(),
            r.weyl_order().clone()
        );
    }

    #[test]
    fn tracked_walls_match_evolved_generators((m, seq) in walk()) {
        let r = Realization::from_dynkin(&m, &[]).unwrap();
        let words = evolve_generators(&m, &seq).unwrap();
        let walls = track_walls(&m, &seq).unwrap();
        for (i, wall) in walls.walls.iter().enumerate() {
            prop_assert_eq!(
                r.images().evaluate(&wall.reflection(i)).unwrap(),
                r.images().evaluate(&words.words()[i]).unwrap()
            );
        }
    }

    #[test]
    fn presentation_text_round_trips((m, seq) in walk()) {
        let g = Diagram::from_matrix(&m.mutate_along(&seq).unwrap());
        let p = build_presentation(&g, Vec::new()).unwrap();
        prop_assert_eq!(parse_presentation(&emit_presentation(&p)).unwrap(), p);
    }

    #[test]
    fn cycle_products_are_squares((m, seq) in walk()) {
        let g = Diagram::from_matrix(&m.mutate_along(&seq).unwrap());
        prop_assert!(g.has_square_cycle_products());
    }

    #[test]
    fn torsion_certificates_are_complete_and_pass((m, seq) in walk()) {
        let member = m.mutate_along(&seq).unwrap();
        let cert = verify_torsion_free(&member, &Caps::default()).unwrap();
        let c = coxeter_data(&Diagram::from_matrix(&member)).unwrap();
        prop_assert_eq!(cert.entries.len(), elliptic_subsets(&c).unwrap().len() - 1);
        prop_assert_eq!(cert.torsion_free, Some(true));
    }

    #[test]
    fn euler_times_order_is_an_integer((m, seq) in walk()) {
        let member = m.mutate_along(&seq).unwrap();
        let r = Realization::from_dynkin(&m, &seq).unwrap();
        let chi = orbifold_euler(&coxeter_data(&Diagram::from_matrix(&member)).unwrap()).unwrap();
        let scaled = chi * num_rational::BigRational::from_integer(r.weyl_order().clone().into());
        prop_assert!(scaled.is_integer());
        prop_assert!(r.weyl_order() > &BigUint::from(0u32));
    }
}
