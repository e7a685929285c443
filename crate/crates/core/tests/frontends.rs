mod common;

use gapforge::frontends::{
    clique_to_maxcover, colorful_lift, parse_dimacs_cnf, parse_edge_list, sat_to_maxcover, Cnf3,
    FrontEnd, FrontendError, Graph, PartitionedGraph,
};
use gapforge::maxcover::{maxcover_value, projection_profile, MaxCoverGraph};
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use common::{brute_sat, for_each_subset, has_colorful_clique, random_cnf3, rng};

fn random_partitioned(r: &mut ChaCha8Rng, n: usize, t: usize, density: f64) -> PartitionedGraph {
    let part_of: Vec<usize> = (0..n)
        .map(|v| if v < t { v } else { r.gen_range(0..t) })
        .collect();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if part_of[u] != part_of[v] && r.gen_bool(density) {
                edges.push((u, v));
            }
        }
    }
    PartitionedGraph::new(Graph::new(n, &edges).unwrap(), t, part_of).unwrap()
}

fn has_clique(g: &Graph, size: usize) -> bool {
    let mut found = false;
    for_each_subset(g.n(), size, &mut |s| {
        found |= (0..s.len()).all(|a| (a + 1..s.len()).all(|b| g.has_edge(s[a], s[b])));
    });
    found
}

fn dimacs(phi: &Cnf3) -> String {
    let mut out = format!(
        "c generated\np cnf {} {}\n",
        phi.vars(),
        phi.clauses().len()
    );
    for c in phi.clauses() {
        for l in c {
            out.push_str(&format!("{l} "));
        }
        out.push_str("0\n");
    }
    out
}

#[test]
fn clique_front_end_on_every_small_graph() {
    // every graph on 4 vertices split into parts {0, 1}, {2}, {3}
    let part_of = vec![0, 0, 1, 2];
    let cross: Vec<(usize, usize)> = (0..4)
        .flat_map(|u| (u + 1..4).map(move |v| (u, v)))
        .filter(|&(u, v)| part_of[u] != part_of[v])
        .collect();
    for mask in 0..1u32 << cross.len() {
        let edges: Vec<(usize, usize)> = (0..cross.len())
            .filter(|&e| mask >> e & 1 == 1)
            .map(|e| cross[e])
            .collect();
        let h = PartitionedGraph::new(Graph::new(4, &edges).unwrap(), 3, part_of.clone()).unwrap();
        let expected = has_colorful_clique(&h);
        match clique_to_maxcover(&h).unwrap() {
            FrontEnd::DecidedNo(_) => assert!(!expected),
            FrontEnd::Instance(c) => {
                let s = maxcover_value(&c.instance, 1 << 20).unwrap();
                assert_eq!(s.value.is_one(), expected, "mask {mask:b}");
                if expected {
                    let clique = c.decode(&s.labeling).unwrap();
                    assert!((0..3)
                        .all(|a| (a + 1..3).all(|b| h.graph().has_edge(clique[a], clique[b]))));
                }
            }
        }
    }
}

#[test]
fn sat_front_end_decided_no() {
    let phi = Cnf3::new(1, vec![vec![1], vec![-1]]).unwrap();
    assert!(matches!(
        sat_to_maxcover(&phi, 1).unwrap(),
        FrontEnd::DecidedNo(_)
    ));
    assert!(matches!(
        sat_to_maxcover(&phi, 2).unwrap(),
        FrontEnd::Instance(_)
    ));
    assert_eq!(
        sat_to_maxcover(&phi, 0).unwrap_err(),
        FrontendError::TooFewParts { min: 1, got: 0 }
    );
    let unused = Cnf3::new(2, vec![vec![1]]).unwrap();
    assert_eq!(
        sat_to_maxcover(&unused, 1).unwrap_err(),
        FrontendError::UnusedVariable(2)
    );
}

#[test]
fn partitioned_graph_errors() {
    let g = Graph::new(2, &[(0, 1)]).unwrap();
    assert_eq!(
        PartitionedGraph::new(g.clone(), 2, vec![0, 0]).unwrap_err(),
        FrontendError::PartNotIndependent {
            part: 0,
            u: 0,
            v: 1
        }
    );
    assert_eq!(
        PartitionedGraph::new(g.clone(), 1, vec![0, 1]).unwrap_err(),
        FrontendError::PartRange { part: 1, t: 1 }
    );
    let h = PartitionedGraph::new(g, 1, vec![0, 0]);
    assert!(h.is_err());
    let h = PartitionedGraph::new(Graph::new(1, &[]).unwrap(), 1, vec![0]).unwrap();
    assert_eq!(
        clique_to_maxcover(&h).unwrap_err(),
        FrontendError::TooFewParts { min: 2, got: 1 }
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn clique_front_end_matches_oracle(seed in any::<u64>(), n in 2usize..=7, t in 2usize..=4, density in 0.3f64..0.95) {
        prop_assume!(t <= n);
        let h = random_partitioned(&mut rng(seed), n, t, density);
        let expected = has_colorful_clique(&h);
        match clique_to_maxcover(&h).unwrap() {
            FrontEnd::DecidedNo(_) => prop_assert!(!expected),
            FrontEnd::Instance(c) => {
                let p = projection_profile(&c.instance, 1 << 20).unwrap();
                prop_assert!(p.is_pseudo_projection());
                prop_assert_eq!(c.instance.t(), t);
                let s = maxcover_value(&c.instance, 1 << 20).unwrap();
                prop_assert_eq!(s.value.is_one(), expected);
                if expected {
                    let clique = c.decode(&s.labeling).unwrap();
                    for a in 0..t {
                        prop_assert_eq!(h.part_of(clique[a]), a);
                        for b in a + 1..t {
                            prop_assert!(h.graph().has_edge(clique[a], clique[b]));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn lift_preserves_cliques(seed in any::<u64>(), n in 1usize..=5, t in 2usize..=3, density in 0.2f64..0.9) {
        let mut r = rng(seed);
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if r.gen_bool(density) {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::new(n, &edges).unwrap();
        let h = colorful_lift(&g, t);
        prop_assert_eq!(h.graph().n(), n * t);
        prop_assert_eq!(has_colorful_clique(&h), has_clique(&g, t));
    }

    #[test]
    fn sat_front_end_matches_oracle(seed in any::<u64>(), n in 1usize..=8, k in 1usize..=3) {
        let phi = random_cnf3(&mut rng(seed), n);
        let expected = brute_sat(&phi);
        match sat_to_maxcover(&phi, k).unwrap() {
            FrontEnd::DecidedNo(_) => prop_assert!(!expected),
            FrontEnd::Instance(s) => {
                let p = projection_profile(&s.instance, 1 << 20).unwrap();
                prop_assert!(p.is_pseudo_projection());
                let v = maxcover_value(&s.instance, 1 << 20).unwrap();
                prop_assert_eq!(v.value.is_one(), expected);
                if expected {
                    let a = s.decode(&v.labeling, n).unwrap();
                    prop_assert!(phi.satisfied_by(&a));
                }
            }
        }
    }

    #[test]
    fn dimacs_round_trip(seed in any::<u64>(), n in 1usize..=10) {
        let phi = random_cnf3(&mut rng(seed), n);
        prop_assert_eq!(parse_dimacs_cnf(&dimacs(&phi)).unwrap(), phi);
    }

    #[test]
    fn edge_list_round_trip(seed in any::<u64>(), n in 2usize..=8, t in 2usize..=4) {
        prop_assume!(t <= n);
        let h = random_partitioned(&mut rng(seed), n, t, 0.5);
        let mut text = format!("vertices {n}\n");
        for (u, v) in h.graph().edges() {
            text.push_str(&format!("{u} {v}\n"));
        }
        for v in 0..n {
            text.push_str(&format!("part {v} {}  # comment\n", h.part_of(v)));
        }
        prop_assert_eq!(parse_edge_list(&text).unwrap().partitioned(t).unwrap(), h);
    }

    #[test]
    fn parsers_reject_garbage_without_panicking(text in "[pcnf0-9 \\-%#a-z\n]{0,80}") {
        let _ = parse_dimacs_cnf(&text);
        let _ = parse_edge_list(&text);
    }
}
