//! Property tests: round trips through every bijection, statistic
//! transport, and count identities on random inputs.

use proptest::prelude::*;

use narayana::bijections::*;
use narayana::monomials::parse;
use narayana::numbers::{catalan, lagrange_narayana, narayana, narayana_row, series_narayana};
use narayana::paths::{in_labeled_q, in_labeled_s, in_q_d, in_s_d};
use narayana::permutations::{avoids_231, contains_pattern, decreasing_runs, in_p_d};
use narayana::trees::{in_labeled_t, in_t_d};
use narayana::{FPath, Factor, LatticePath, Monomial, OrderedTree, Permutation, Step};

#[derive(Clone, Debug)]
enum Shape {
    Leaf,
    Lin(Vec<Shape>),
}

fn shape() -> impl Strategy<Value = Vec<Shape>> {
    let leaf = Just(Shape::Leaf);
    let factor = leaf.prop_recursive(4, 24, 5, |inner| {
        prop_oneof![
            2 => Just(Shape::Leaf),
            1 => prop::collection::vec(inner, 1..5).prop_map(Shape::Lin),
        ]
    });
    prop::collection::vec(factor, 1..6)
}

/// Pads every product with leaves until its length is 1 mod (d - 1).
fn realise(shapes: &[Shape], d: usize) -> Vec<Factor> {
    let mut out: Vec<Factor> = shapes
        .iter()
        .map(|s| match s {
            Shape::Leaf => Factor::Leaf,
            Shape::Lin(inner) => Factor::Lin(realise(inner, d)),
        })
        .collect();
    while !(out.len() - 1).is_multiple_of(d - 1) {
        out.push(Factor::Leaf);
    }
    out
}

fn monomial() -> impl Strategy<Value = Monomial> {
    (2usize..=5, shape()).prop_map(|(d, s)| Monomial::new(d, realise(&s, d)).unwrap())
}

fn dyck_path(max_semi: usize) -> impl Strategy<Value = LatticePath> {
    // a random shuffle of U^n D^n, then the cycle-lemma style repair:
    // start after the lowest point of the prefix walk
    (1..=max_semi)
        .prop_flat_map(|n| Just([vec![Step::U; n], vec![Step::D; n]].concat()).prop_shuffle())
        .prop_map(|steps| {
            let mut h = 0i64;
            let (mut low, mut at) = (0i64, 0);
            for (i, s) in steps.iter().enumerate() {
                h += if *s == Step::U { 1 } else { -1 };
                if h < low {
                    low = h;
                    at = i + 1;
                }
            }
            let rotated = [&steps[at..], &steps[..at]].concat();
            LatticePath::new(rotated).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn monomial_text_and_json_round_trip(m in monomial()) {
        let d = m.arity();
        prop_assert_eq!(&parse(&m.to_string(), d).unwrap(), &m);
        prop_assert_eq!(&Monomial::from_json(&m.to_json()).unwrap(), &m);
        let s = m.stats();
        prop_assert_eq!(s.deg, (s.topt - s.lopt) * (d - 1) + 1);
        prop_assert!(s.lofi <= s.lopt && s.lopt <= s.topt);
    }

    #[test]
    fn schroder_route(m in monomial()) {
        let d = m.arity();
        let s = m.stats();
        let p = f1(&m);
        prop_assert!(in_s_d(&p, d));
        let ps = p.stats();
        prop_assert_eq!(ps.up_count, s.lopt);
        prop_assert_eq!(ps.semilength, s.deg + s.lopt);
        prop_assert_eq!(&f1_inv(&p, d).unwrap(), &m);
    }

    #[test]
    fn tree_dyck_permutation_route(m in monomial()) {
        let d = m.arity();
        let s = m.stats();
        let t = f2(&m);
        prop_assert!(in_t_d(&t, d));
        let ts = t.stats();
        prop_assert_eq!(ts.edges, s.deg + s.lopt);
        prop_assert_eq!(ts.internal_nodes, s.lopt + 1);
        prop_assert_eq!(&f2_inv(&t, d).unwrap(), &m);

        let q = f3(&t);
        prop_assert!(in_q_d(&q, d));
        prop_assert_eq!(q.stats().peaks, s.lopt + 1);
        prop_assert_eq!(&f3_inv(&q, d).unwrap(), &t);

        let p = f4(&q).unwrap();
        prop_assert!(in_p_d(&p, d));
        prop_assert_eq!(p.len(), ts.edges);
        prop_assert_eq!(decreasing_runs(&p).len(), s.lopt + 1);
        prop_assert_eq!(&f4_inv(&p, d).unwrap(), &q);
    }

    #[test]
    fn labelled_route(m in monomial()) {
        let d = m.arity();
        let s = m.stats();
        let ls = f5(&m);
        prop_assert!(in_labeled_s(ls.base(), ls.labels(), d));
        prop_assert_eq!(ls.stats().semilength, s.topt);
        prop_assert_eq!(ls.stats().hdd, s.lopt);
        prop_assert_eq!(&f5_inv(&ls, d).unwrap(), &m);

        let f: FPath = f6(&m);
        prop_assert_eq!(f.stats().length, s.topt);
        prop_assert_eq!(&f6_inv(&f, d).unwrap(), &m);

        let lq = f7(&f);
        prop_assert!(in_labeled_q(lq.base(), lq.labels(), d));
        prop_assert_eq!(lq.stats().semilength, s.topt + 1);
        prop_assert_eq!(lq.stats().uu_count, s.lopt);
        prop_assert_eq!(&f7_inv(&lq, d).unwrap(), &f);

        let lt = f8(&lq);
        prop_assert!(in_labeled_t(lt.tree(), lt.labels(), d));
        prop_assert_eq!(lt.stats().edges, s.topt + 1);
        prop_assert_eq!(lt.stats().leaves, s.lopt + 1);
        prop_assert_eq!(&f8_inv(&lt, d).unwrap(), &lq);
    }

    #[test]
    fn injections_move_statistics(s in shape(), d in 3usize..=5) {
        let m = Monomial::new(2, realise(&s, 2)).unwrap();
        let lifted = inject_2_to_d(&m, d).unwrap();
        prop_assert_eq!(lifted.arity(), d);
        prop_assert_eq!(lifted.stats().topt, m.stats().topt);
        prop_assert_eq!(lifted.stats().lopt, m.stats().lopt);

        let wide = Monomial::new(d, realise(&s, d)).unwrap();
        let (n, k) = (wide.stats().topt, wide.stats().lopt);
        let narrow = reparse_d_to_2(&wide);
        prop_assert_eq!(narrow.arity(), 2);
        prop_assert_eq!(narrow.stats().topt, (n - k) * (d - 1) + k);
        prop_assert_eq!(narrow.stats().lopt, k);
    }

    #[test]
    fn every_dyck_path_is_a_binary_tree_code(p in dyck_path(12)) {
        let t = f3_inv(&p, 2).unwrap();
        prop_assert!(OrderedTree::new(t.outdegrees().to_vec()).is_ok());
        prop_assert_eq!(t.stats().edges, p.semilength());
        prop_assert_eq!(&f3(&t), &p);
        let q = f4(&p).unwrap();
        prop_assert!(avoids_231(&q));
    }

    #[test]
    fn avoidance_agrees_with_brute_force(word in (1usize..=8).prop_flat_map(|n| Just((1..=n).collect::<Vec<_>>()).prop_shuffle())) {
        let p = Permutation::new(word.clone()).unwrap();
        let pattern = Permutation::new(vec![2, 3, 1]).unwrap();
        prop_assert_eq!(avoids_231(&p), !contains_pattern(&p, &pattern));
        let runs = decreasing_runs(&p);
        prop_assert_eq!(runs.concat(), word);
        prop_assert!(runs.iter().all(|r| r.windows(2).all(|w| w[0] > w[1])));
        prop_assert!(runs.windows(2).all(|w| w[0].last() < w[1].first()));
    }

    #[test]
    fn three_count_methods_agree(d in 2usize..=6, n in 0usize..=14, k in 0usize..=14) {
        let k = k.min(n);
        let formula = narayana(d, n, k).unwrap();
        prop_assert_eq!(&lagrange_narayana(d, n, k).unwrap(), &formula);
        prop_assert_eq!(series_narayana(d, n).unwrap().get(n, k), formula);
    }

    #[test]
    fn row_sums_and_borders(d in 2usize..=6, n in 0usize..=20) {
        let row = narayana_row(d, n).unwrap();
        let total = row.iter().fold(num_bigint::BigUint::from(0u8), |acc, x| acc + x.as_biguint());
        let expected = catalan(d, n).unwrap();
        prop_assert_eq!(&total, expected.as_biguint());
        prop_assert!(row[0].to_u64() == Some(1) && row[n].to_u64() == Some(1));
        if d == 2 {
            prop_assert!((0..=n).all(|k| row[k] == row[n - k]));
        }
    }
}
