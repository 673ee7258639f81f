mod common;

use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use stratdom::dominance::{dominating_mixture, reduce_support, verify_certificate};
use stratdom::game::{expected_payoff, normalize_positive, parse_game, serialize_game, transpose, Belief};
use stratdom::geometry::{
    caratheodory_convex, halfspace_covers, minimal_subcover, radon_partition, union_covers, Inequality, OpenHalfSpace,
    Polytope,
};
use stratdom::instances::{random_game, Lcg};
use stratdom::lp::{lp_maximize, simplex_equality, Constraint, LinearProgram, LpOutcome};
use stratdom::oracle::{enumerate_min_support, grid_check_nbr, GridSpec, GridVerdict, DEFAULT_SUBSET_CAP};
use stratdom::rational::{int, rat};
use stratdom::rationalizability::{best_response_belief, constructive_mixture_with_log, BestResponse};
use stratdom::{Game, Player, Point, Rational};

fn game() -> impl Strategy<Value = Game> {
    (1usize..=5, 1usize..=3, any::<u64>()).prop_map(|(n, m, seed)| random_game(n, m, seed, -9, 9).unwrap())
}

fn point(d: usize) -> impl Strategy<Value = Point> {
    prop::collection::vec(-6i64..=6, d).prop_map(|c| Point::from_ints(&c))
}

fn halfspace(d: usize) -> impl Strategy<Value = OpenHalfSpace> {
    (point(d), -4i64..=4)
        .prop_filter("nonzero normal", |(n, _)| !n.is_zero())
        .prop_map(|(n, b)| OpenHalfSpace::new(n, int(b)).unwrap())
}

fn probs(raw: &[u32]) -> Vec<Rational> {
    let total: u32 = raw.iter().sum();
    raw.iter().map(|&w| rat(w.into(), total.into())).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn radon_partitions_are_valid(d in 1usize..=3, seed in any::<u64>()) {
        let mut rng = Lcg::new(seed);
        let mut points: Vec<Point> = Vec::new();
        while points.len() < d + 2 {
            let p = Point::new((0..d).map(|_| int(rng.range(-4, 4))).collect());
            if !points.contains(&p) {
                points.push(p);
            }
        }
        let r = radon_partition(&points).unwrap();
        prop_assert!(r.is_valid_for(&points));
    }

    #[test]
    fn caratheodory_respects_the_bound(
        d in 1usize..=3,
        pts in prop::collection::vec(prop::collection::vec(-5i64..=5, 3), 2..8),
        raw in prop::collection::vec(1u32..10, 8),
    ) {
        let points: Vec<Point> = pts.iter().map(|c| Point::from_ints(&c[..d])).collect();
        let weights = probs(&raw[..points.len()]);
        let x = Point::combination(d, &points, &weights);
        let red = caratheodory_convex(&x, &points, &weights).unwrap();
        prop_assert!(red.len() <= d + 1);
        prop_assert!(red.weights.iter().all(|w| !w.is_negative()));
        prop_assert!(red.weights.iter().sum::<Rational>().is_one());
        prop_assert_eq!(red.evaluate(&points), x);
    }

    #[test]
    fn single_cover_agrees_with_union(d in 2usize..=4, h in halfspace(4)) {
        let h = OpenHalfSpace::new(Point::new(h.normal().coords()[..d].to_vec()), h.offset().clone());
        prop_assume!(h.is_ok());
        let h = h.unwrap();
        let s = Polytope::simplex(d);
        prop_assert_eq!(halfspace_covers(&h, &s).unwrap(), union_covers(&[h], &s).unwrap().is_covered());
    }

    #[test]
    fn uncovered_points_are_really_uncovered(hs in prop::collection::vec(halfspace(3), 1..5)) {
        let s = Polytope::simplex(3);
        match union_covers(&hs, &s).unwrap() {
            stratdom::geometry::Coverage::Uncovered(x) => {
                prop_assert!(s.contains(&x));
                prop_assert!(hs.iter().all(|h| !h.contains(&x)));
            }
            stratdom::geometry::Coverage::Covered => {
                let keep = minimal_subcover(&hs, &s).unwrap();
                prop_assert!(keep.len() <= 3);
                for drop in 0..keep.len() {
                    let rest: Vec<_> = keep.iter().filter(|&&i| i != keep[drop]).map(|&i| hs[i].clone()).collect();
                    prop_assert!(!union_covers(&rest, &s).unwrap().is_covered());
                }
            }
        }
    }

    #[test]
    fn lp_optimum_matches_best_vertex(
        objective in point(3),
        cuts in prop::collection::vec((point(3), 0i64..=4), 0..3),
    ) {
        let extra: Vec<Inequality> = cuts.iter().map(|(n, b)| Inequality::new(n.clone(), rat(*b, 2))).collect();
        let Ok(poly) = Polytope::simplex_with(3, extra.clone()) else { return Ok(()) };
        let mut constraints: Vec<Constraint> =
            extra.iter().map(|c| Constraint::le(c.normal.clone(), c.offset.clone())).collect();
        constraints.push(simplex_equality(3));
        let lp = LinearProgram { objective: objective.clone(), constraints, nonneg: vec![0, 1, 2] };
        let best = poly.vertices().iter().map(|v| objective.dot(v)).max().unwrap();
        match lp_maximize(&lp).unwrap() {
            LpOutcome::Optimal { solution, value } => {
                prop_assert!(lp.is_feasible(&solution));
                prop_assert_eq!(value, best);
            }
            other => prop_assert!(false, "unexpected {:?}", other),
        }
    }

    #[test]
    fn expected_payoff_is_affine_in_beliefs(g in game(), a in prop::collection::vec(1u32..9, 3),
                                            b in prop::collection::vec(1u32..9, 3), t in 0u32..=4) {
        let m = g.num_actions(Player::Col);
        let (qa, qb) = (probs(&a[..m]), probs(&b[..m]));
        let t = rat(t.into(), 4);
        let mix: Vec<Rational> =
            qa.iter().zip(&qb).map(|(x, y)| &t * x + (Rational::one() - &t) * y).collect();
        for i in 0..g.num_actions(Player::Row) {
            let e = |q: &[Rational]| expected_payoff(&g, Player::Row, i, &Belief::new(q.to_vec()).unwrap()).unwrap();
            prop_assert_eq!(e(&mix), &t * e(&qa) + (Rational::one() - &t) * e(&qb));
        }
    }

    #[test]
    fn transpose_is_an_involution(g in game()) {
        prop_assert_eq!(transpose(&transpose(&g)), g.clone());
        let t = transpose(&g);
        for i in 0..g.num_actions(Player::Col) {
            prop_assert_eq!(
                dominating_mixture(&g, Player::Col, i).unwrap().map(|c| c.mixture),
                dominating_mixture(&t, Player::Row, i).unwrap().map(|c| c.mixture)
            );
        }
    }

    #[test]
    fn json_roundtrip(g in game()) {
        prop_assert_eq!(parse_game(serialize_game(&g).as_bytes()).unwrap(), g);
    }

    #[test]
    fn dominance_is_shift_invariant(g in game()) {
        for p in Player::BOTH {
            let (shifted, _) = normalize_positive(&g, p);
            prop_assert_eq!(common::dominated_set(&shifted, p), common::dominated_set(&g, p));
        }
    }

    #[test]
    fn elimination_order_does_not_matter(g in game(), seed in any::<u64>()) {
        let mut rng = Lcg::new(seed);
        prop_assert_eq!(common::random_order_survivors(&g, &mut rng), common::iesds_survivors(&g));
    }

    #[test]
    fn oracles_agree_with_pipeline(g in game()) {
        for p in Player::BOTH {
            let (n, m) = (g.num_actions(p), g.num_actions(p.other()));
            for i in 0..n {
                let min = enumerate_min_support(&g, p, i, DEFAULT_SUBSET_CAP).unwrap();
                let cert = dominating_mixture(&g, p, i).unwrap();
                prop_assert_eq!(min.is_some(), cert.is_some());
                if let (Some(min), Some(cert)) = (min, cert) {
                    let reduced = reduce_support(&g, p, &cert).unwrap();
                    verify_certificate(&g, p, &reduced).unwrap();
                    prop_assert!(min <= reduced.support_size());
                    prop_assert!(reduced.support_size() <= (n - 1).min(m));
                }
                if best_response_belief(&g, p, i).unwrap().is_never() {
                    prop_assert_eq!(grid_check_nbr(&g, p, i, GridSpec::new(6).unwrap()).unwrap(), GridVerdict::Consistent);
                }
            }
        }
    }

    #[test]
    fn merge_loop_keeps_a_cover(g in game()) {
        let p = Player::Row;
        let vectors = g.payoff_vectors(p);
        let s = Polytope::simplex(g.num_actions(Player::Col));
        for i in 0..g.num_actions(p) {
            let BestResponse::Never(nbr) = best_response_belief(&g, p, i).unwrap() else { continue };
            let (_, log) = constructive_mixture_with_log(&g, p, &nbr).unwrap();
            for (_, work) in log {
                let hs: Vec<_> = work.iter().map(|e| e.halfspace.clone()).collect();
                prop_assert!(union_covers(&hs, &s).unwrap().is_covered());
                for e in &work {
                    prop_assert!(e.weights.iter().all(|w| !w.is_negative()));
                    prop_assert!(e.weights.iter().sum::<Rational>().is_one());
                    prop_assert!(e.weights[i].is_zero());
                    let mixed = Point::combination(vectors[i].dim(), &vectors, &e.weights);
                    prop_assert_eq!(e.halfspace.normal(), &vectors[i].sub(&mixed));
                }
            }
        }
    }
}
