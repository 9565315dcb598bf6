#![allow(dead_code)]

use pathcomplete::graph::Edge;
use pathcomplete::linalg::Matrix;
use pathcomplete::{check_path_complete, LabeledGraph, MatrixSet, Nfa, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Up to `max_nodes` nodes, up to `max_edges` edges, labels of length 1..=`max_label`.
pub fn random_graph(rng: &mut ChaCha8Rng, m: usize, max_nodes: usize, max_edges: usize, max_label: usize) -> LabeledGraph {
    let nodes = rng.random_range(1..=max_nodes);
    let edge_count = rng.random_range(0..=max_edges);
    let edges = (0..edge_count)
        .map(|_| Edge {
            from: rng.random_range(0..nodes),
            to: rng.random_range(0..nodes),
            label: Word::new((0..rng.random_range(1..=max_label)).map(|_| rng.random_range(1..=m)).collect()),
        })
        .collect();
    LabeledGraph::new(m, (1..=nodes).map(|i| format!("P{i}")).collect(), edges).unwrap()
}

/// The graph corpus: random graphs with at most 4 nodes, 6 edges and labels
/// of length 2 over two letters, split by path-completeness. Generation
/// stops once `incomplete_target` graphs that are not path-complete exist.
pub struct Corpus {
    pub incomplete: Vec<LabeledGraph>,
    pub complete: Vec<LabeledGraph>,
}

pub fn graph_corpus(seed: u64, incomplete_target: usize) -> Corpus {
    let mut rng = rng(seed);
    let mut corpus = Corpus {
        incomplete: Vec::new(),
        complete: Vec::new(),
    };
    while corpus.incomplete.len() < incomplete_target {
        let g = random_graph(&mut rng, 2, 4, 6, 2);
        if check_path_complete(&g).unwrap().complete {
            corpus.complete.push(g);
        } else {
            corpus.incomplete.push(g);
        }
    }
    corpus
}

pub fn random_nfa(rng: &mut ChaCha8Rng, max_states: usize, m: usize) -> Nfa {
    let n = rng.random_range(1..=max_states);
    let pick = |rng: &mut ChaCha8Rng, p: f64| (0..n).filter(|_| rng.random_bool(p)).collect::<Vec<_>>();
    let initial = pick(rng, 0.5);
    let accepting = pick(rng, 0.6);
    let mut transitions = Vec::new();
    for from in 0..n {
        for letter in 1..=m {
            for to in 0..n {
                if rng.random_bool(0.4) {
                    transitions.push((from, letter, to));
                }
            }
        }
    }
    Nfa::new(m, (0..n).map(|i| format!("q{i}")).collect(), initial, accepting, transitions).unwrap()
}

pub fn random_binary_set(rng: &mut ChaCha8Rng, m: usize, max_dim: usize) -> MatrixSet {
    let n = rng.random_range(1..=max_dim);
    let matrices = (0..m)
        .map(|_| {
            let rows: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.random_range(0..=1)).collect()).collect();
            let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
            Matrix::from_i64(&refs)
        })
        .collect();
    MatrixSet::new(matrices).unwrap()
}

pub fn fixture(name: &str) -> String {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

pub fn unstable_pair() -> MatrixSet {
    serde_json::from_str(&fixture("unstable_pair.json")).unwrap()
}
