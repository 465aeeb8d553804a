use lefschetz::bounds;
use lefschetz::dynkin::{canonical_form, isomorphic};
use lefschetz::homology0::{basis0_side, Side};
use lefschetz::join1::{self, Which};
use lefschetz::linalg::{is_skew, is_symmetric, mat_vec};
use lefschetz::petrov;
use lefschetz::polycore::{d1, q, qf, BiForm1, BiPoly, UniPoly, Q};
use lefschetz::scenario::Scenario;
use lefschetz::zlattice::{kernel, Lattice};
use proptest::prelude::*;

fn rat() -> impl Strategy<Value = Q> {
    (-12i64..=12, 1i64..=5).prop_map(|(n, d)| qf(n, d))
}

fn uni(max_deg: usize) -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(rat(), 1..=max_deg + 1).prop_map(UniPoly::new)
}

fn bi(max_deg: u32) -> impl Strategy<Value = BiPoly> {
    prop::collection::vec((0..=max_deg, 0..=max_deg, rat()), 0..8).prop_map(move |ts| {
        let mut p = BiPoly::zero();
        for (i, j, c) in ts {
            if i + j <= max_deg {
                p.add_term(i, j, c);
            }
        }
        p
    })
}

fn form(max_deg: u32) -> impl Strategy<Value = BiForm1> {
    (bi(max_deg), bi(max_deg)).prop_map(|(p, q)| BiForm1::new(p, q))
}

fn l_quadratic() -> BiPoly {
    &BiPoly::monomial(2, 0, q(1)) + &BiPoly::monomial(0, 2, q(1))
}

fn l_cubic() -> BiPoly {
    let mut l = BiPoly::zero();
    l.add_term(3, 0, q(1));
    l.add_term(1, 0, q(-3));
    l.add_term(0, 3, q(2));
    l.add_term(0, 2, q(1));
    l
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn div_rem_identity(a in uni(7), b in uni(4)) {
        prop_assume!(!b.is_zero());
        let (qq, r) = a.div_rem(&b);
        prop_assert_eq!(&(&qq * &b) + &r, a);
        prop_assert!(r.is_zero() || r.degree() < b.degree());
    }

    #[test]
    fn compose_evaluates_pointwise(a in uni(4), b in uni(3), x in rat()) {
        let c = UniPoly::compose(&a, &b);
        prop_assert_eq!(c.eval(&x), a.eval(&b.eval(&x)));
    }

    #[test]
    fn distinct_roots_are_squarefree(mut rs in prop::collection::vec(rat(), 1..6)) {
        rs.sort();
        rs.dedup();
        let p = UniPoly::from_roots(&rs);
        prop_assert!(p.is_squarefree());
        let sq = &p * &UniPoly::from_roots(&rs[..1]);
        prop_assert!(!sq.is_squarefree());
    }

    #[test]
    fn hnf_ignores_generator_order(vs in prop::collection::vec(prop::collection::vec(-6i64..=6, 4), 1..6), rot in 0usize..6) {
        let a = Lattice::from_i64(&vs, 4);
        let mut ws = vs.clone();
        let k = rot % ws.len();
        ws.rotate_left(k);
        ws.reverse();
        prop_assert_eq!(Lattice::from_i64(&ws, 4), a);
    }

    #[test]
    fn kernel_vectors_are_annihilated(m in prop::collection::vec(prop::collection::vec(-4i64..=4, 5), 1..4)) {
        let k = kernel(&m, 5);
        let j = k.to_json();
        prop_assert_eq!(j.hermite_basis.len(), k.rank());
        for v in &j.hermite_basis {
            let v: Vec<i64> = v.iter().map(|x| x.parse().unwrap()).collect();
            prop_assert!(mat_vec(&m, &v).iter().all(|&x| x == 0));
        }
        let r = lefschetz::linalg::rank_q(&m.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect::<Vec<_>>());
        prop_assert_eq!(k.rank(), 5 - r);
    }

    #[test]
    fn petrov_reconstructs(w in form(7), cubic in any::<bool>()) {
        let l = if cubic { l_cubic() } else { l_quadratic() };
        let dec = petrov::decompose(&w, &l).unwrap();
        prop_assert_eq!(dec.reconstruct(&l), w.clone());
        prop_assert!(dec.degree_bounds_hold(w.degree()));
    }

    #[test]
    fn exact_forms_have_no_petrov_part(k in bi(8), cubic in any::<bool>()) {
        let l = if cubic { l_cubic() } else { l_quadratic() };
        let w = BiForm1::exact(&k);
        prop_assert!(d1(&w).is_zero());
        prop_assert!(petrov::decompose(&w, &l).unwrap().h.is_empty());
    }

    #[test]
    fn petrov_is_linear(a in form(6), b in form(6), c in rat()) {
        let l = l_cubic();
        let da = petrov::decompose(&a, &l).unwrap();
        let db = petrov::decompose(&b, &l).unwrap();
        let dab = petrov::decompose(&(&a + &b.scale(&c)), &l).unwrap();
        let basis = petrov::PetrovBasis::new(3);
        for &(i, j) in &basis.labels {
            prop_assert_eq!(dab.coeff(i, j), &da.coeff(i, j) + &db.coeff(i, j).scale(&c));
        }
    }

    #[test]
    fn cyclicity_q2_identity(p in 2i64..60) {
        let c = bounds::cyclicity_pq(p, 2);
        prop_assert_eq!(c, 3 * p * p + p - 13);
        prop_assert_eq!(c, bounds::pullback_cyclicity(p - 1, 2).unwrap());
    }

    #[test]
    fn canonical_form_ignores_labels(
        edges in prop::collection::vec((0usize..6, 0usize..6, 1u64..3), 0..10),
        perm in Just((0..6).collect::<Vec<usize>>()).prop_shuffle(),
    ) {
        let mut adj = vec![vec![0u64; 6]; 6];
        for (u, v, m) in edges {
            if u != v {
                adj[u][v] = m;
                adj[v][u] = m;
            }
        }
        let relabeled: Vec<Vec<u64>> = (0..6).map(|u| (0..6).map(|v| adj[perm[u]][perm[v]]).collect()).collect();
        prop_assert_eq!(canonical_form(&adj), canonical_form(&relabeled));
        prop_assert!(isomorphic(&adj, &relabeled));
    }
}

#[test]
fn intersection_forms_have_expected_symmetry() {
    for (a, n) in [(1, 2), (2, 2), (1, 3), (2, 3), (3, 2)] {
        let s = Scenario::generate(a, n).unwrap();
        for side in [Side::Left, Side::Right] {
            let g = basis0_side(&s, side).unwrap().gram();
            assert!(is_symmetric(&g));
            assert!((0..g.len()).all(|i| g[i][i] == 2));
        }
        for which in [Which::F, Which::FcompF] {
            let b = join1::join_basis(&s, which).unwrap();
            assert!(is_skew(&join1::join_form(&b)));
        }
    }
}
