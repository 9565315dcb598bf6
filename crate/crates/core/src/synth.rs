//! Counterexample synthesis for graphs that are not path-complete.
//!
//! Given an unreadable word `w`, the family `Σ_w̄` is built from the `n`-cycle
//! (`n = |w| + 1`), and a Lyapunov certificate is read off a topological
//! numbering of the auxiliary graph on `(node, coordinate)` pairs. The
//! family has a product with spectral radius exactly 1, so the Lyapunov
//! inequalities of the graph are satisfied by an unstable system.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::certificate::{ConicCertificate, EllipsoidalCertificate, NodeMap};
use crate::completeness::{check_path_complete_with, DEFAULT_SUBSET_CAP};
use crate::error::{Error, Result};
use crate::graph::{expand_labels, Expansion, LabeledGraph};
use crate::linalg::{int, mat_mul, Matrix, Scalar, Vector};
use crate::matrix_set::MatrixSet;
use crate::word::{words_of_length, Word};

/// Longest word accepted by [`subproduct_containment_check`].
pub const MAX_CONTAINMENT_WORD: usize = 8;
/// Longest word accepted by [`particular_case_check`].
pub const MAX_PARTICULAR_WORD: usize = 4;

/// The binary family whose sum is the adjacency matrix of the cycle
/// `1 → 2 → … → n → 1`, with step `i` carried by `A_{w_i}` and the closing
/// step `n → 1` carried by `A_1`. Letters absent from `w` give zero matrices.
pub fn build_sigma_w(w: &Word, alphabet_size: usize) -> Result<MatrixSet> {
    if w.is_empty() {
        return Err(Error::word(w, "the cycle construction needs a nonempty word"));
    }
    w.validate(alphabet_size)?;
    let n = w.len() + 1;
    let mut matrices = vec![Matrix::zeros(n, n); alphabet_size];
    for (i, &letter) in w.symbols().iter().enumerate() {
        matrices[letter - 1].set(i, i + 1, Scalar::one());
    }
    matrices[0].set(n - 1, 0, Scalar::one());
    MatrixSet::new(matrices)
}

/// Product `A_w · A_1` for `s = Σ_w`, together with its spectral radius.
///
/// The product is a 0/1 matrix with at most one nonzero per row, i.e. the
/// adjacency matrix of a partial function; its radius is exactly 1 when that
/// function has a cycle and 0 otherwise.
pub fn cycle_product_radius(s: &MatrixSet, w: &Word) -> Result<(Matrix, Scalar)> {
    if s.dim() != w.len() + 1 {
        return Err(Error::dims(format!(
            "a word of length {} needs a family of dimension {}, got {}",
            w.len(),
            w.len() + 1,
            s.dim()
        )));
    }
    let product = mat_mul(&s.product(w)?, s.get(1))?;
    let radius = partial_permutation_radius(&product)?;
    Ok((product, radius))
}

/// Exact spectral radius of a 0/1 matrix with at most one 1 per row.
pub fn partial_permutation_radius(a: &Matrix) -> Result<Scalar> {
    let n = a.rows();
    if !a.is_square() || !a.is_binary() {
        return Err(Error::InvalidArgument("expected a square 0/1 matrix".into()));
    }
    let mut next = vec![None; n];
    for (r, slot) in next.iter_mut().enumerate() {
        let ones: Vec<usize> = (0..n).filter(|&c| a.get(r, c).is_one()).collect();
        match ones.as_slice() {
            [] => {}
            [c] => *slot = Some(*c),
            _ => {
                return Err(Error::InvalidArgument(
                    "row with more than one nonzero entry".into(),
                ))
            }
        }
    }
    // after n steps of a partial function we are on a cycle, if anywhere
    let on_cycle = (0..n).any(|start| {
        let mut at = Some(start);
        for _ in 0..n {
            at = at.and_then(|v| next[v]);
        }
        match at {
            Some(v) => {
                let mut probe = next[v];
                for _ in 0..n {
                    if probe == Some(v) {
                        return true;
                    }
                    probe = probe.and_then(|u| next[u]);
                }
                false
            }
            None => false,
        }
    });
    Ok(if on_cycle { Scalar::one() } else { Scalar::zero() })
}

/// Every nonzero product of `2n` factors from `Σ_w` has an index word that
/// contains `w` contiguously. Zero prefixes are pruned, which keeps the
/// enumeration exhaustive: they only extend to zero products.
pub fn subproduct_containment_check(w: &Word, alphabet_size: usize) -> Result<bool> {
    if w.len() > MAX_CONTAINMENT_WORD {
        return Err(Error::ResourceLimit(format!(
            "containment check is limited to words of length {MAX_CONTAINMENT_WORD}"
        )));
    }
    let s = build_sigma_w(w, alphabet_size)?;
    let depth = 2 * s.dim();
    let mut index = Vec::with_capacity(depth);
    every_nonzero_product(&s, &Matrix::identity(s.dim()), depth, &mut index, &mut |word| {
        Word::new(word.to_vec()).contains_factor(w)
    })
}

fn every_nonzero_product(
    s: &MatrixSet,
    prefix: &Matrix,
    remaining: usize,
    index: &mut Vec<usize>,
    check: &mut impl FnMut(&[usize]) -> bool,
) -> Result<bool> {
    if remaining == 0 {
        return Ok(check(index));
    }
    for k in 1..=s.alphabet_size() {
        let next = mat_mul(prefix, s.get(k))?;
        if next.is_zero() {
            continue;
        }
        index.push(k);
        let ok = every_nonzero_product(s, &next, remaining - 1, index, check)?;
        index.pop();
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// For `Σ' = {A_x : x ∈ {1,2}^l, x ≠ w}` built from `Σ_w`, checks that
/// every product of `n = l + 1` blocks vanishes, so that `ρ(Σ') = 0`.
pub fn particular_case_check(w: &Word) -> Result<bool> {
    if w.is_empty() || w.len() > MAX_PARTICULAR_WORD {
        return Err(Error::ResourceLimit(format!(
            "particular case check needs 1 ≤ |w| ≤ {MAX_PARTICULAR_WORD}"
        )));
    }
    let s = build_sigma_w(w, 2)?;
    let blocks: Vec<Matrix> = words_of_length(2, w.len())
        .filter(|x| x != w)
        .map(|x| s.product(&x))
        .collect::<Result<_>>()?;
    let blocks = MatrixSet::new(blocks)?;
    let mut index = Vec::new();
    every_nonzero_product(&blocks, &Matrix::identity(s.dim()), s.dim(), &mut index, &mut |_| false)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AuxEdge {
    pub from: usize,
    pub to: usize,
    pub symbol: usize,
}

/// Graph on pairs `(i, l)` of a graph node and a coordinate; node ids are
/// `i · n + l` with 0-based `l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuxiliaryGraph {
    graph_nodes: usize,
    dim: usize,
    edges: Vec<AuxEdge>,
}

impl AuxiliaryGraph {
    pub fn node_count(&self) -> usize {
        self.graph_nodes * self.dim
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn id(&self, node: usize, coord: usize) -> usize {
        node * self.dim + coord
    }

    pub fn pair(&self, id: usize) -> (usize, usize) {
        (id / self.dim, id % self.dim)
    }

    pub fn edges(&self) -> &[AuxEdge] {
        &self.edges
    }
}

/// Edge `(i, l) → (j, l')` with symbol `k` iff `(A_k)_{l', l} = 1` and `g`
/// has an edge `i → j` labeled `[k]`.
pub fn build_auxiliary_graph(g: &LabeledGraph, s: &MatrixSet) -> Result<AuxiliaryGraph> {
    if s.alphabet_size() < g.alphabet_size() {
        return Err(Error::dims(format!(
            "graph uses {} letters but the family has {} matrices",
            g.alphabet_size(),
            s.alphabet_size()
        )));
    }
    let n = s.dim();
    let aux = AuxiliaryGraph {
        graph_nodes: g.node_count(),
        dim: n,
        edges: Vec::new(),
    };
    let mut edges = Vec::new();
    for e in g.edges() {
        let [k] = e.label.symbols() else {
            return Err(Error::InvalidGraph(format!(
                "label {} has more than one letter; expand the graph first",
                e.label
            )));
        };
        let a = s.get(*k);
        for l_to in 0..n {
            for l_from in 0..n {
                if a.get(l_to, l_from).is_one() {
                    edges.push(AuxEdge {
                        from: aux.id(e.from, l_from),
                        to: aux.id(e.to, l_to),
                        symbol: *k,
                    });
                }
            }
        }
    }
    Ok(AuxiliaryGraph { edges, ..aux })
}

/// Kahn's algorithm, always releasing the smallest available node id.
/// Returns `s` with `s[v] ∈ 1..=|V|` and `s[u] < s[v]` for every edge.
/// A cyclic input yields [`Error::Cycle`] with one cycle as witness.
pub fn topological_numbering(aux: &AuxiliaryGraph) -> Result<Vec<usize>> {
    let count = aux.node_count();
    let mut indegree = vec![0usize; count];
    let mut succ = vec![Vec::new(); count];
    let mut pred = vec![Vec::new(); count];
    for e in &aux.edges {
        indegree[e.to] += 1;
        succ[e.from].push(e.to);
        pred[e.to].push(e.from);
    }
    let mut ready: BinaryHeap<Reverse<usize>> =
        (0..count).filter(|&v| indegree[v] == 0).map(Reverse).collect();
    let mut numbering = vec![0usize; count];
    let mut next = 1;
    while let Some(Reverse(v)) = ready.pop() {
        numbering[v] = next;
        next += 1;
        for &w in &succ[v] {
            indegree[w] -= 1;
            if indegree[w] == 0 {
                ready.push(Reverse(w));
            }
        }
    }
    if next > count {
        return Ok(numbering);
    }
    // every unnumbered node has an unnumbered predecessor; walk back until
    // a node repeats
    let start = (0..count).find(|&v| numbering[v] == 0).expect("unnumbered node");
    let mut seen_at = vec![usize::MAX; count];
    let mut walk = Vec::new();
    let mut at = start;
    while seen_at[at] == usize::MAX {
        seen_at[at] = walk.len();
        walk.push(at);
        at = *pred[at]
            .iter()
            .find(|&&p| numbering[p] == 0)
            .expect("blocked node has a blocked predecessor");
    }
    let mut cycle = walk[seen_at[at]..].to_vec();
    cycle.reverse();
    Err(Error::Cycle(cycle))
}

/// Certificate vectors and family for a single-letter graph and a word it
/// cannot read.
fn conic_for_letter_graph(g: &LabeledGraph, missing: &Word) -> Result<(MatrixSet, Vec<Vector>)> {
    let s = build_sigma_w(&missing.mirror(), g.alphabet_size())?;
    let aux = build_auxiliary_graph(g, &s)?;
    let numbering = topological_numbering(&aux).map_err(|e| match e {
        Error::Cycle(_) => Error::Internal(format!(
            "auxiliary graph has a cycle although {missing} is unreadable"
        )),
        other => other,
    })?;
    let vectors = (0..g.node_count())
        .map(|i| Vector((0..s.dim()).map(|l| int(numbering[aux.id(i, l)] as i64)).collect()))
        .collect();
    Ok((s, vectors))
}

#[derive(Clone, Debug)]
pub struct ConicCounterexample {
    pub expansion: Expansion,
    pub matrices: MatrixSet,
    /// Vectors for every node of the expanded graph.
    pub certificate: ConicCertificate,
    pub missing_word: Word,
}

#[derive(Clone, Debug)]
pub struct EllipsoidalCounterexample {
    pub expansion: Expansion,
    pub matrices: MatrixSet,
    /// Diagonal matrices for every node of the expanded graph.
    pub certificate: EllipsoidalCertificate,
    pub missing_word: Word,
}

pub fn synthesize_conic(g: &LabeledGraph) -> Result<ConicCounterexample> {
    synthesize_conic_with(g, DEFAULT_SUBSET_CAP)
}

/// Unstable family plus conic certificate for a graph that is not
/// path-complete. For every expanded edge `i → j` with letter `k` the
/// certificate satisfies `A_k v_i < v_j` entrywise.
pub fn synthesize_conic_with(g: &LabeledGraph, subset_cap: usize) -> Result<ConicCounterexample> {
    let expansion = expand_labels(g);
    let check = check_path_complete_with(&expansion.graph, subset_cap)?;
    let missing = check.verdict.missing_word.ok_or(Error::PathComplete)?;
    let (matrices, vectors) = conic_for_letter_graph(&expansion.graph, &missing)?;
    let certificate = expansion
        .graph
        .nodes()
        .iter()
        .cloned()
        .zip(vectors)
        .collect();
    Ok(ConicCounterexample {
        expansion,
        matrices,
        certificate,
        missing_word: missing,
    })
}

pub fn synthesize_ellipsoidal(g: &LabeledGraph) -> Result<EllipsoidalCounterexample> {
    synthesize_ellipsoidal_with(g, DEFAULT_SUBSET_CAP)
}

/// Unstable family plus diagonal quadratic certificate.
///
/// The conic construction is run on the reversed expanded graph; the family
/// returned is the transpose of the conic family and `P_i = diag(v_i)`. For
/// every expanded edge `i → j` with letter `k` this gives
/// `A_kᵀ P_j A_k ≺ P_i`, i.e. `V_j(A_k x) ≤ V_i(x)` for `V_i(x) = xᵀ P_i x`.
/// The reported word is unreadable in `g`.
pub fn synthesize_ellipsoidal_with(
    g: &LabeledGraph,
    subset_cap: usize,
) -> Result<EllipsoidalCounterexample> {
    let expansion = expand_labels(g);
    let reversed = expansion.graph.reversed();
    let check = check_path_complete_with(&reversed, subset_cap)?;
    let missing_reversed = check.verdict.missing_word.ok_or(Error::PathComplete)?;
    let (conic_family, vectors) = conic_for_letter_graph(&reversed, &missing_reversed)?;
    let certificate = expansion
        .graph
        .nodes()
        .iter()
        .cloned()
        .zip(vectors.iter().map(|v| Matrix::diagonal(&v.0)))
        .collect();
    Ok(EllipsoidalCounterexample {
        expansion,
        matrices: conic_family.transposed(),
        certificate,
        missing_word: missing_reversed.mirror(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Conic,
    Ellipsoidal,
}

/// Provenance of an intermediate node introduced by label expansion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpandedNode {
    pub from: String,
    pub to: String,
    pub edge: usize,
    pub offset: usize,
}

/// Serialised counterexample: the family, its certificate over every
/// expanded node, and the unreadable word it was built from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleBundle {
    pub family: Family,
    pub missing_word: Word,
    pub matrices: MatrixSet,
    pub conic_certificate: Option<ConicCertificate>,
    pub ellipsoidal_certificate: Option<EllipsoidalCertificate>,
    pub expanded_nodes: NodeMap<ExpandedNode>,
}

fn expanded_nodes(g: &LabeledGraph, x: &Expansion) -> NodeMap<ExpandedNode> {
    x.origin
        .iter()
        .enumerate()
        .filter_map(|(v, origin)| {
            origin.map(|pos| {
                let e = &g.edges()[pos.edge];
                (
                    x.graph.nodes()[v].clone(),
                    ExpandedNode {
                        from: g.nodes()[e.from].clone(),
                        to: g.nodes()[e.to].clone(),
                        edge: pos.edge,
                        offset: pos.offset,
                    },
                )
            })
        })
        .collect()
}

impl CounterexampleBundle {
    pub fn from_conic(g: &LabeledGraph, c: &ConicCounterexample) -> Self {
        CounterexampleBundle {
            family: Family::Conic,
            missing_word: c.missing_word.clone(),
            matrices: c.matrices.clone(),
            conic_certificate: Some(c.certificate.clone()),
            ellipsoidal_certificate: None,
            expanded_nodes: expanded_nodes(g, &c.expansion),
        }
    }

    pub fn from_ellipsoidal(g: &LabeledGraph, c: &EllipsoidalCounterexample) -> Self {
        CounterexampleBundle {
            family: Family::Ellipsoidal,
            missing_word: c.missing_word.clone(),
            matrices: c.matrices.clone(),
            conic_certificate: None,
            ellipsoidal_certificate: Some(c.certificate.clone()),
            expanded_nodes: expanded_nodes(g, &c.expansion),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("bundle serialises")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::mat_vec;

    fn broken_pair() -> LabeledGraph {
        LabeledGraph::from_edges(2, 2, &[(0, 0, &[1]), (1, 0, &[2]), (0, 1, &[2]), (1, 1, &[2])]).unwrap()
    }

    fn common_pair() -> LabeledGraph {
        LabeledGraph::from_edges(2, 2, &[(0, 0, &[1]), (1, 0, &[1]), (0, 1, &[2]), (1, 1, &[2])]).unwrap()
    }

    fn ones(m: &Matrix) -> Vec<(usize, usize)> {
        (0..m.rows())
            .flat_map(|r| (0..m.cols()).map(move |c| (r, c)))
            .filter(|&(r, c)| !m.get(r, c).is_zero())
            .collect()
    }

    #[test]
    fn sigma_21() {
        let s = build_sigma_w(&Word::from([2, 1]), 2).unwrap();
        assert_eq!(s.dim(), 3);
        assert_eq!(ones(s.get(1)), vec![(1, 2), (2, 0)]);
        assert_eq!(ones(s.get(2)), vec![(0, 1)]);
        // A_2·A_1 has a single 1 at (1,3), 1-based
        assert_eq!(ones(&mat_mul(s.get(2), s.get(1)).unwrap()), vec![(0, 2)]);
        assert_eq!(
            mat_vec(s.get(1), &Vector::from_i64(&[1, 2, 3])).unwrap(),
            Vector::from_i64(&[0, 3, 1])
        );
    }

    #[test]
    fn sigma_1() {
        let s = build_sigma_w(&Word::from([1]), 2).unwrap();
        assert_eq!(*s.get(1), Matrix::from_i64(&[&[0, 1], &[1, 0]]));
        assert!(s.get(2).is_zero());
        assert!(build_sigma_w(&Word::new(vec![]), 2).is_err());
        assert!(build_sigma_w(&Word::from([3]), 2).is_err());
    }

    #[test]
    fn sigma_2212111_follows_the_cycle() {
        let w = Word::from([2, 2, 1, 2, 1, 1, 1]);
        let s = build_sigma_w(&w, 2).unwrap();
        assert_eq!(s.dim(), 8);
        for (i, &letter) in w.symbols().iter().enumerate() {
            assert!(s.get(letter).get(i, i + 1).is_one());
            assert!(s.get(3 - letter).get(i, i + 1).is_zero());
        }
        assert!(s.get(1).get(7, 0).is_one());
        let (_, radius) = cycle_product_radius(&s, &w).unwrap();
        assert!(radius.is_one());
    }

    #[test]
    fn cycle_products() {
        for w in [Word::from([1]), Word::from([2, 1])] {
            let s = build_sigma_w(&w, 2).unwrap();
            let (p, radius) = cycle_product_radius(&s, &w).unwrap();
            assert!(radius.is_one(), "{w}");
            assert!(p.get(0, 0).is_one());
        }
        let s = build_sigma_w(&Word::from([1]), 2).unwrap();
        assert_eq!(cycle_product_radius(&s, &Word::from([1])).unwrap().0, Matrix::identity(2));
        assert!(cycle_product_radius(&s, &Word::from([1, 2])).is_err());
    }

    #[test]
    fn nilpotent_partial_permutation_has_radius_zero() {
        let shift = Matrix::from_i64(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        assert!(partial_permutation_radius(&shift).unwrap().is_zero());
    }

    #[test]
    fn containment_small_words() {
        for w in [Word::from([1]), Word::from([2, 1]), Word::from([2, 2, 1])] {
            assert!(subproduct_containment_check(&w, 2).unwrap(), "{w}");
        }
        assert!(subproduct_containment_check(&Word::new(vec![1; 9]), 2).is_err());
    }

    #[test]
    fn particular_case_small_words() {
        for w in [Word::from([1]), Word::from([2, 2]), Word::from([2, 1, 2])] {
            assert!(particular_case_check(&w).unwrap(), "{w}");
        }
        assert!(particular_case_check(&Word::new(vec![1; 5])).is_err());
    }

    #[test]
    fn auxiliary_graph_of_edgeless_graph() {
        let g = LabeledGraph::from_edges(2, 2, &[]).unwrap();
        let s = build_sigma_w(&Word::from([1, 2]), 2).unwrap();
        let aux = build_auxiliary_graph(&g, &s).unwrap();
        assert_eq!(aux.node_count(), 6);
        assert!(aux.edges().is_empty());
        assert_eq!(topological_numbering(&aux).unwrap(), vec![1, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn auxiliary_graph_rejects_long_labels() {
        let g = LabeledGraph::from_edges(2, 1, &[(0, 0, &[1, 2])]).unwrap();
        let s = build_sigma_w(&Word::from([1]), 2).unwrap();
        assert!(matches!(build_auxiliary_graph(&g, &s), Err(Error::InvalidGraph(_))));
    }

    #[test]
    fn broken_pair_auxiliary_graph_is_acyclic() {
        let s = build_sigma_w(&Word::from([1, 2, 1]), 2).unwrap();
        let aux = build_auxiliary_graph(&broken_pair(), &s).unwrap();
        assert_eq!(aux.node_count(), 8);
        let numbering = topological_numbering(&aux).unwrap();
        for e in aux.edges() {
            assert!(numbering[e.from] < numbering[e.to]);
        }
    }

    #[test]
    fn complete_graph_auxiliary_graph_has_cycle() {
        let s = build_sigma_w(&Word::from([1, 2, 1]), 2).unwrap();
        let aux = build_auxiliary_graph(&common_pair(), &s).unwrap();
        match topological_numbering(&aux) {
            Err(Error::Cycle(cycle)) => {
                assert!(!cycle.is_empty());
                for (i, &v) in cycle.iter().enumerate() {
                    let w = cycle[(i + 1) % cycle.len()];
                    assert!(aux.edges().iter().any(|e| e.from == v && e.to == w));
                }
            }
            other => panic!("expected a cycle, got {other:?}"),
        }
    }

    #[test]
    fn chain_numbering_is_increasing() {
        // one node, letter 1, Σ_[2]: A_1 maps coordinate 2 to 1 only
        let aux = AuxiliaryGraph {
            graph_nodes: 1,
            dim: 3,
            edges: vec![
                AuxEdge { from: 2, to: 1, symbol: 1 },
                AuxEdge { from: 1, to: 0, symbol: 1 },
            ],
        };
        let s = topological_numbering(&aux).unwrap();
        assert!(s[2] < s[1] && s[1] < s[0]);
    }

    #[test]
    fn conic_synthesis_on_broken_pair() {
        let c = synthesize_conic(&broken_pair()).unwrap();
        assert_eq!(c.missing_word, Word::from([1, 2, 1]));
        assert_eq!(c.matrices.dim(), 4);
        for e in c.expansion.graph.edges() {
            let a = c.matrices.get(e.label.symbols()[0]);
            let vi = c.certificate.get(&c.expansion.graph.nodes()[e.from]).unwrap();
            let vj = c.certificate.get(&c.expansion.graph.nodes()[e.to]).unwrap();
            let lhs = mat_vec(a, vi).unwrap();
            assert!(lhs.0.iter().zip(&vj.0).all(|(x, y)| x < y));
        }
        for (_, v) in c.certificate.iter() {
            assert!(v.0.iter().all(|x| *x >= int(1) && *x <= int(8)));
        }
    }

    #[test]
    fn conic_synthesis_single_loop() {
        let g = LabeledGraph::from_edges(2, 1, &[(0, 0, &[1])]).unwrap();
        let c = synthesize_conic(&g).unwrap();
        assert_eq!(c.missing_word, Word::from([2]));
        assert_eq!(c.matrices.dim(), 2);
        let v = c.certificate.get("P1").unwrap();
        let lhs = mat_vec(c.matrices.get(1), v).unwrap();
        assert!(lhs.0.iter().zip(&v.0).all(|(x, y)| x <= y));
    }

    #[test]
    fn synthesis_refuses_complete_graphs() {
        assert!(matches!(synthesize_conic(&common_pair()), Err(Error::PathComplete)));
        assert!(matches!(synthesize_ellipsoidal(&common_pair()), Err(Error::PathComplete)));
    }

    #[test]
    fn ellipsoidal_synthesis_on_broken_pair() {
        let c = synthesize_ellipsoidal(&broken_pair()).unwrap();
        assert_eq!(c.matrices.dim(), 4);
        assert!(!crate::completeness::is_readable(&broken_pair(), &c.missing_word));
        for (_, p) in c.certificate.iter() {
            assert!(p.is_symmetric());
            assert!((0..4).all(|i| *p.get(i, i) > Scalar::zero()));
        }
    }

    #[test]
    fn bundle_json_round_trip() {
        let g = broken_pair();
        let c = synthesize_conic(&g).unwrap();
        let b = CounterexampleBundle::from_conic(&g, &c);
        let back: CounterexampleBundle = serde_json::from_str(&b.to_json()).unwrap();
        assert_eq!(back, b);
        assert!(b.to_json().contains("\"ellipsoidal_certificate\": null"));
    }
}
