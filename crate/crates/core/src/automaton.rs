//! Nondeterministic automata and the reduction from universality to
//! path-completeness.

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::completeness::{shortest_word_to, LetterTable, DEFAULT_SUBSET_CAP};
use crate::error::{Error, Result};
use crate::graph::{Edge, LabeledGraph};
use crate::word::Word;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nfa {
    alphabet_size: usize,
    states: Vec<String>,
    initial: Vec<usize>,
    accepting: Vec<usize>,
    /// `(from, letter, to)` with 1-based letters.
    transitions: Vec<(usize, usize, usize)>,
}

impl Nfa {
    pub fn new(
        alphabet_size: usize,
        states: Vec<String>,
        initial: Vec<usize>,
        accepting: Vec<usize>,
        transitions: Vec<(usize, usize, usize)>,
    ) -> Result<Self> {
        if alphabet_size == 0 {
            return Err(Error::InvalidNfa("alphabet size must be at least 1".into()));
        }
        if states.is_empty() {
            return Err(Error::InvalidNfa("an automaton needs at least one state".into()));
        }
        let n = states.len();
        if initial.iter().chain(&accepting).any(|&s| s >= n) {
            return Err(Error::InvalidNfa("initial/accepting state out of range".into()));
        }
        for &(from, letter, to) in &transitions {
            if from >= n || to >= n {
                return Err(Error::InvalidNfa("transition references a missing state".into()));
            }
            if letter == 0 || letter > alphabet_size {
                return Err(Error::InvalidNfa(format!(
                    "letter {letter} outside 1..={alphabet_size}"
                )));
            }
        }
        Ok(Nfa {
            alphabet_size,
            states,
            initial,
            accepting,
            transitions,
        })
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn initial(&self) -> &[usize] {
        &self.initial
    }

    pub fn accepting(&self) -> &[usize] {
        &self.accepting
    }

    pub fn transitions(&self) -> &[(usize, usize, usize)] {
        &self.transitions
    }

    /// Transition structure as a single-letter graph over the states.
    fn transition_graph(&self, alphabet_size: usize) -> LabeledGraph {
        LabeledGraph::new(
            alphabet_size,
            self.states.clone(),
            self.transitions
                .iter()
                .map(|&(from, letter, to)| Edge {
                    from,
                    to,
                    label: Word::new(vec![letter]),
                })
                .collect(),
        )
        .expect("validated automaton")
    }

    /// Direct simulation; used by tests as an enumeration oracle.
    pub fn accepts(&self, word: &Word) -> bool {
        let mut current: Vec<bool> = vec![false; self.states.len()];
        for &s in &self.initial {
            current[s] = true;
        }
        for &letter in word.symbols() {
            let mut next = vec![false; self.states.len()];
            for &(from, l, to) in &self.transitions {
                if l == letter && current[from] {
                    next[to] = true;
                }
            }
            current = next;
        }
        self.accepting.iter().any(|&s| current[s])
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let wire: NfaWire = serde_json::from_str(text)?;
        wire.try_into()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&NfaWire::from(self)).expect("automaton serialises")
    }
}

/// Adds a fresh letter `m + 1` and an edge labeled with it from every
/// accepting state to every initial state. The result is path-complete iff
/// the automaton accepts every word.
pub fn reduce_universality(n: &Nfa) -> LabeledGraph {
    let fake = n.alphabet_size + 1;
    let mut g = n.transition_graph(fake);
    for &a in &n.accepting {
        for &s in &n.initial {
            g = g
                .with_edge(Edge {
                    from: a,
                    to: s,
                    label: Word::new(vec![fake]),
                })
                .expect("states are valid nodes");
        }
    }
    g
}

pub fn nfa_universal(n: &Nfa) -> Result<bool> {
    nfa_universal_with(n, DEFAULT_SUBSET_CAP)
}

/// Subset construction from the initial set; the automaton is universal iff
/// no reachable subset avoids every accepting state.
pub fn nfa_universal_with(n: &Nfa, subset_cap: usize) -> Result<bool> {
    let g = n.transition_graph(n.alphabet_size);
    let table = LetterTable::new(&g);
    let mut start = FixedBitSet::with_capacity(n.states.len());
    for &s in &n.initial {
        start.insert(s);
    }
    let mut accepting = FixedBitSet::with_capacity(n.states.len());
    for &s in &n.accepting {
        accepting.insert(s);
    }
    let (rejected, _) = shortest_word_to(&table, start, subset_cap, |set| set.is_disjoint(&accepting))?;
    Ok(rejected.is_none())
}

#[derive(Serialize, Deserialize)]
struct NfaWire {
    alphabet_size: usize,
    states: Vec<String>,
    initial: Vec<String>,
    accepting: Vec<String>,
    transitions: Vec<(String, usize, String)>,
}

impl From<&Nfa> for NfaWire {
    fn from(n: &Nfa) -> Self {
        let name = |i: &usize| n.states[*i].clone();
        NfaWire {
            alphabet_size: n.alphabet_size,
            states: n.states.clone(),
            initial: n.initial.iter().map(name).collect(),
            accepting: n.accepting.iter().map(name).collect(),
            transitions: n
                .transitions
                .iter()
                .map(|(f, l, t)| (name(f), *l, name(t)))
                .collect(),
        }
    }
}

impl TryFrom<NfaWire> for Nfa {
    type Error = Error;

    fn try_from(wire: NfaWire) -> Result<Self> {
        let lookup = |s: &str| {
            wire.states
                .iter()
                .position(|x| x == s)
                .ok_or_else(|| Error::InvalidNfa(format!("unknown state {s:?}")))
        };
        let initial = wire.initial.iter().map(|s| lookup(s)).collect::<Result<_>>()?;
        let accepting = wire.accepting.iter().map(|s| lookup(s)).collect::<Result<_>>()?;
        let transitions = wire
            .transitions
            .iter()
            .map(|(f, l, t)| Ok((lookup(f)?, *l, lookup(t)?)))
            .collect::<Result<_>>()?;
        Nfa::new(wire.alphabet_size, wire.states.clone(), initial, accepting, transitions)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::completeness::check_path_complete;

    fn universal_one_state() -> Nfa {
        Nfa::new(2, vec!["q".into()], vec![0], vec![0], vec![(0, 1, 0), (0, 2, 0)]).unwrap()
    }

    #[test]
    fn universal_automaton_reduces_to_complete_graph() {
        let n = universal_one_state();
        assert!(nfa_universal(&n).unwrap());
        let g = reduce_universality(&n);
        assert_eq!(g.alphabet_size(), 3);
        assert_eq!(g.node_count(), 1);
        let labels: Vec<_> = g.edges().iter().map(|e| e.label.symbols()[0]).collect();
        assert_eq!(labels, vec![1, 2, 3]);
        assert!(check_path_complete(&g).unwrap().complete);
    }

    #[test]
    fn empty_accepting_set() {
        let n = Nfa::new(2, vec!["q".into()], vec![0], vec![], vec![(0, 1, 0), (0, 2, 0)]).unwrap();
        assert!(!nfa_universal(&n).unwrap());
        let g = reduce_universality(&n);
        assert!(g.edges().iter().all(|e| e.label.symbols()[0] != 3));
        let v = check_path_complete(&g).unwrap();
        assert_eq!(v.missing_word, Some(Word::from([3])));
    }

    #[test]
    fn words_ending_in_two() {
        // q0 loops on both letters, q0 -2-> q1; q1 accepting; both initial
        let n = Nfa::new(
            2,
            vec!["q0".into(), "q1".into()],
            vec![0, 1],
            vec![1],
            vec![(0, 1, 0), (0, 2, 0), (0, 2, 1)],
        )
        .unwrap();
        // the empty word is accepted via q1, but [1] is not
        assert!(n.accepts(&Word::new(vec![])));
        assert!(!n.accepts(&Word::from([1])));
        assert!(!nfa_universal(&n).unwrap());
        assert!(!check_path_complete(&reduce_universality(&n)).unwrap().complete);
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"alphabet_size":2,"states":["q0","q1"],"initial":["q0"],
            "accepting":["q1"],"transitions":[["q0",1,"q1"],["q1",2,"q0"]]}"#;
        let n = Nfa::from_json(text).unwrap();
        assert_eq!(n.transitions(), &[(0, 1, 1), (1, 2, 0)]);
        assert_eq!(Nfa::from_json(&n.to_json()).unwrap(), n);
        assert!(Nfa::from_json(r#"{"alphabet_size":2,"states":["q"],"initial":["x"],"accepting":[],"transitions":[]}"#).is_err());
        assert!(Nfa::from_json(r#"{"alphabet_size":2,"states":["q"],"initial":[],"accepting":[],"transitions":[["q",3,"q"]]}"#).is_err());
    }
}
