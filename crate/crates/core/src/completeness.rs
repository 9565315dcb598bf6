//! Path-completeness: is every finite word a factor of the label sequence
//! of some directed path?
//!
//! The decision procedure runs on the letter-expanded graph, treating every
//! node as a possible start. The set of nodes at which a word can end is
//! tracked through a subset construction; a word is unreadable exactly when
//! it drives that set to `∅`. Breadth-first search with letters tried in
//! increasing order yields the shortest, then lexicographically least,
//! missing word.

use std::collections::{HashMap, HashSet, VecDeque};

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{expand_labels, LabeledGraph};
use crate::word::{words_of_length, Word};

/// Default bound on the number of subsets the determinisation may visit.
pub const DEFAULT_SUBSET_CAP: usize = 1 << 20;
/// Default bound on the number of words an enumeration may visit.
pub const DEFAULT_WORD_CAP: u64 = 1 << 22;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PathCompletenessVerdict {
    pub complete: bool,
    /// Shortest, then lexicographically least, unreadable word.
    pub missing_word: Option<Word>,
}

impl PathCompletenessVerdict {
    fn complete() -> Self {
        PathCompletenessVerdict {
            complete: true,
            missing_word: None,
        }
    }

    fn missing(w: Word) -> Self {
        PathCompletenessVerdict {
            complete: false,
            missing_word: Some(w),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CompletenessCheck {
    pub verdict: PathCompletenessVerdict,
    /// Distinct subsets discovered before the search stopped.
    pub explored_subsets: usize,
}

/// Successor lists per `(node, letter)` of a single-letter graph.
pub(crate) struct LetterTable {
    nodes: usize,
    letters: usize,
    succ: Vec<Vec<usize>>,
}

impl LetterTable {
    pub(crate) fn new(g: &LabeledGraph) -> Self {
        debug_assert!(g.is_single_letter());
        let (nodes, letters) = (g.node_count(), g.alphabet_size());
        let mut succ = vec![Vec::new(); nodes * letters];
        for e in g.edges() {
            succ[e.from * letters + e.label.symbols()[0] - 1].push(e.to);
        }
        LetterTable {
            nodes,
            letters,
            succ,
        }
    }

    /// Image of `set` under `letter` (1-based).
    pub(crate) fn step(&self, set: &FixedBitSet, letter: usize) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.nodes);
        for v in set.ones() {
            for &w in &self.succ[v * self.letters + letter - 1] {
                out.insert(w);
            }
        }
        out
    }
}

/// Breadth-first subset construction from `start`; stops at the first
/// subset satisfying `is_target`, returning the word that reaches it.
pub(crate) fn shortest_word_to(
    table: &LetterTable,
    start: FixedBitSet,
    cap: usize,
    is_target: impl Fn(&FixedBitSet) -> bool,
) -> Result<(Option<Word>, usize)> {
    // parent index and letter for every discovered subset
    let mut parent: Vec<Option<(usize, usize)>> = vec![None];
    let mut index: HashMap<FixedBitSet, usize> = HashMap::new();
    let mut subsets: Vec<FixedBitSet> = vec![start.clone()];
    index.insert(start, 0);
    let rebuild = |parent: &[Option<(usize, usize)>], mut at: usize| {
        let mut letters = Vec::new();
        while let Some((p, letter)) = parent[at] {
            letters.push(letter);
            at = p;
        }
        letters.reverse();
        Word::new(letters)
    };
    if is_target(&subsets[0]) {
        return Ok((Some(Word::new(vec![])), 1));
    }
    let mut queue = VecDeque::from([0usize]);
    while let Some(cur) = queue.pop_front() {
        for letter in 1..=table.letters {
            let next = table.step(&subsets[cur], letter);
            if index.contains_key(&next) {
                continue;
            }
            if subsets.len() >= cap {
                return Err(Error::ResourceLimit(format!(
                    "subset construction exceeded {cap} subsets"
                )));
            }
            let id = subsets.len();
            let hit = is_target(&next);
            index.insert(next.clone(), id);
            subsets.push(next);
            parent.push(Some((cur, letter)));
            if hit {
                return Ok((Some(rebuild(&parent, id)), subsets.len()));
            }
            queue.push_back(id);
        }
    }
    Ok((None, subsets.len()))
}

pub fn check_path_complete(g: &LabeledGraph) -> Result<PathCompletenessVerdict> {
    check_path_complete_with(g, DEFAULT_SUBSET_CAP).map(|c| c.verdict)
}

pub fn check_path_complete_with(g: &LabeledGraph, subset_cap: usize) -> Result<CompletenessCheck> {
    let expanded = expand_labels(g).graph;
    let table = LetterTable::new(&expanded);
    let mut all = FixedBitSet::with_capacity(expanded.node_count());
    all.insert_range(..);
    let (word, explored) = shortest_word_to(&table, all, subset_cap, |s| s.is_clear())?;
    Ok(CompletenessCheck {
        verdict: match word {
            Some(w) => PathCompletenessVerdict::missing(w),
            None => PathCompletenessVerdict::complete(),
        },
        explored_subsets: explored,
    })
}

/// Independent check by enumeration: every word up to `max_len` is tested
/// for readability by searching paths of the original (unexpanded) graph.
pub fn brute_force_path_complete(g: &LabeledGraph, max_len: usize) -> Result<PathCompletenessVerdict> {
    brute_force_path_complete_with(g, max_len, DEFAULT_WORD_CAP)
}

pub fn brute_force_path_complete_with(
    g: &LabeledGraph,
    max_len: usize,
    word_cap: u64,
) -> Result<PathCompletenessVerdict> {
    if max_len == 0 {
        return Err(Error::InvalidArgument("max_len must be at least 1".into()));
    }
    let m = g.alphabet_size() as u64;
    let mut total: u64 = 0;
    for len in 1..=max_len {
        total = m
            .checked_pow(len as u32)
            .and_then(|c| total.checked_add(c))
            .filter(|&t| t <= word_cap)
            .ok_or_else(|| {
                Error::ResourceLimit(format!(
                    "enumerating words up to length {max_len} over {m} letters exceeds {word_cap}"
                ))
            })?;
    }
    for len in 1..=max_len {
        for w in words_of_length(g.alphabet_size(), len) {
            if !is_readable(g, &w) {
                return Ok(PathCompletenessVerdict::missing(w));
            }
        }
    }
    Ok(PathCompletenessVerdict::complete())
}

/// True iff `word` is a factor of the labels along some path of `g`.
pub fn is_readable(g: &LabeledGraph, word: &Word) -> bool {
    if word.is_empty() {
        return true;
    }
    let mut out_edges = vec![Vec::new(); g.node_count()];
    for (i, e) in g.edges().iter().enumerate() {
        out_edges[e.from].push(i);
    }
    let mut dead = HashSet::new();
    g.edges().iter().enumerate().any(|(i, e)| {
        (0..e.label.len()).any(|offset| read_from(g, &out_edges, word.symbols(), 0, i, offset, &mut dead))
    })
}

/// Matches `word[pos..]` starting inside edge `edge` at label position
/// `offset`, continuing along outgoing edges when the label runs out.
fn read_from(
    g: &LabeledGraph,
    out_edges: &[Vec<usize>],
    word: &[usize],
    mut pos: usize,
    edge: usize,
    mut offset: usize,
    dead: &mut HashSet<(usize, usize)>,
) -> bool {
    let label = g.edges()[edge].label.symbols();
    while offset < label.len() && pos < word.len() {
        if label[offset] != word[pos] {
            return false;
        }
        offset += 1;
        pos += 1;
    }
    if pos == word.len() {
        return true;
    }
    let node = g.edges()[edge].to;
    if dead.contains(&(node, pos)) {
        return false;
    }
    let found = out_edges[node]
        .iter()
        .any(|&next| read_from(g, out_edges, word, pos, next, 0, dead));
    if !found {
        dead.insert((node, pos));
    }
    found
}
