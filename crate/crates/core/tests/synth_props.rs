mod common;

use num_traits::{One, Zero};
use pathcomplete::graph::expand_labels;
use pathcomplete::linalg::{mat_vec, spectral_radius_estimate, Matrix};
use pathcomplete::synth::{
    build_auxiliary_graph, build_sigma_w, cycle_product_radius, synthesize_conic, synthesize_ellipsoidal,
    topological_numbering, CounterexampleBundle,
};
use pathcomplete::verify::{check_ellipsoidal_inequality, verify_certificate, Direction, Strictness, VerifyOptions};
use pathcomplete::word::words_of_length;
use pathcomplete::{check_path_complete, is_readable, Certificate, NodeMap, Word};

use common::graph_corpus;

#[test]
fn sigma_sums_to_one_cycle() {
    for m in 1..=3 {
        for len in 1..=6 {
            for w in words_of_length(m, len) {
                let s = build_sigma_w(&w, m).unwrap();
                let n = len + 1;
                let sum = s.sum();
                for r in 0..n {
                    for c in 0..n {
                        let expected = c == (r + 1) % n;
                        assert_eq!(sum.get(r, c).is_one(), expected, "{w}: entry ({r},{c})");
                        assert!(sum.get(r, c).is_one() || sum.get(r, c).is_zero());
                    }
                }
                assert!(s.is_binary());
                let (_, radius) = cycle_product_radius(&s, &w).unwrap();
                assert!(radius.is_one(), "{w}");
            }
        }
    }
}

#[test]
fn auxiliary_graphs_are_acyclic() {
    let corpus = graph_corpus(21, 200);
    for g in &corpus.incomplete {
        let x = expand_labels(g).graph;
        let w = check_path_complete(&x).unwrap().missing_word.unwrap();
        let s = build_sigma_w(&w.mirror(), 2).unwrap();
        let aux = build_auxiliary_graph(&x, &s).unwrap();
        let numbering = topological_numbering(&aux).unwrap();
        for e in aux.edges() {
            assert!(numbering[e.from] < numbering[e.to]);
        }
        let mut sorted = numbering.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, (1..=aux.node_count()).collect::<Vec<_>>());
    }
}

#[test]
fn conic_certificates_hold_edge_by_edge() {
    let corpus = graph_corpus(22, 200);
    for g in &corpus.incomplete {
        let c = synthesize_conic(g).unwrap();
        assert!(!is_readable(g, &c.missing_word));
        let x = &c.expansion.graph;
        for e in x.edges() {
            let a = c.matrices.get(e.label.symbols()[0]);
            let vi = c.certificate.get(&x.nodes()[e.from]).unwrap();
            let vj = c.certificate.get(&x.nodes()[e.to]).unwrap();
            let image = mat_vec(a, vi).unwrap();
            for (l, (lhs, rhs)) in image.0.iter().zip(&vj.0).enumerate() {
                assert!(lhs < rhs, "coordinate {l}: {lhs} ≥ {rhs}");
            }
        }
        let (product, radius) = cycle_product_radius(&c.matrices, &c.missing_word.mirror()).unwrap();
        assert!(radius.is_one());
        assert!((spectral_radius_estimate(&product, 40).unwrap() - 1.0).abs() < 1e-9);
    }
}

#[test]
fn conic_certificates_transfer_to_diagonal_quadratics() {
    let corpus = graph_corpus(23, 200);
    for g in &corpus.incomplete {
        let c = synthesize_conic(g).unwrap();
        let x = &c.expansion.graph;
        let diag = |name: &str| Matrix::diagonal(&c.certificate.get(name).unwrap().0);
        let transposed = c.matrices.transposed();
        for e in x.edges() {
            let k = e.label.symbols()[0];
            let (pi, pj) = (diag(&x.nodes()[e.from]), diag(&x.nodes()[e.to]));
            // A_k P_i A_kᵀ ≼ P_j written with the transposed family
            assert!(check_ellipsoidal_inequality(transposed.get(k), &pi, &pj, Direction::Pre, Strictness::OnSupport, 0.0).unwrap());
        }
        // the same inequalities read as V_i(x) = xᵀ P_i⁻¹ x on the original family
        let cert: NodeMap<Matrix> = c.certificate.iter().map(|(n, v)| (n.to_string(), Matrix::diagonal(&v.0))).collect();
        let opts = VerifyOptions {
            direction: Direction::Post,
            strictness: Strictness::Strict,
            tol: 0.0,
            expand: true,
        };
        assert!(verify_certificate(g, &c.matrices, &Certificate::Ellipsoidal(cert), opts).unwrap().overall);
    }
}

#[test]
fn ellipsoidal_bundles_verify_strictly() {
    let corpus = graph_corpus(24, 200);
    for g in &corpus.incomplete {
        let c = synthesize_ellipsoidal(g).unwrap();
        assert!(!is_readable(g, &c.missing_word));
        assert_eq!(c.matrices.dim(), c.missing_word.len() + 1);
        for expand in [true, false] {
            let opts = VerifyOptions {
                strictness: Strictness::Strict,
                tol: 0.0,
                expand,
                ..VerifyOptions::default()
            };
            let report = verify_certificate(g, &c.matrices, &Certificate::Ellipsoidal(c.certificate.clone()), opts).unwrap();
            assert!(report.overall);
        }
        for (_, p) in c.certificate.iter() {
            for r in 0..p.rows() {
                for col in 0..p.cols() {
                    assert_eq!(p.get(r, col).is_zero(), r != col);
                }
            }
        }
    }
}

#[test]
fn bundles_round_trip_through_json() {
    let corpus = graph_corpus(25, 30);
    for g in &corpus.incomplete {
        let conic = CounterexampleBundle::from_conic(g, &synthesize_conic(g).unwrap());
        let back: CounterexampleBundle = serde_json::from_str(&conic.to_json()).unwrap();
        assert_eq!(back, conic);
        let ellipsoidal = CounterexampleBundle::from_ellipsoidal(g, &synthesize_ellipsoidal(g).unwrap());
        let back: CounterexampleBundle = serde_json::from_str(&ellipsoidal.to_json()).unwrap();
        assert_eq!(back, ellipsoidal);
        assert_eq!(conic.expanded_nodes.len(), expand_labels(g).graph.node_count() - g.node_count());
    }
}

#[test]
fn missing_word_of_the_broken_pair_builds_a_four_cycle() {
    let g = pathcomplete::LabeledGraph::from_edges(2, 2, &[(0, 0, &[1]), (1, 0, &[2]), (0, 1, &[2]), (1, 1, &[2])]).unwrap();
    let c = synthesize_ellipsoidal(&g).unwrap();
    assert_eq!(c.missing_word, Word::from([1, 2, 1]));
    assert_eq!(c.matrices, build_sigma_w(&Word::from([1, 2, 1]), 2).unwrap().transposed());
}
