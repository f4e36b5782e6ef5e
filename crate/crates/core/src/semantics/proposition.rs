use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::model::{Model, MAX_WORLDS};

/// An information state: a set of world indices, one bit per world.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct State(u32);

impl State {
    pub const EMPTY: State = State(0);

    pub fn full(world_count: usize) -> State {
        debug_assert!(world_count <= MAX_WORLDS);
        State((1u32 << world_count) - 1)
    }

    pub fn singleton(world: usize) -> State {
        State(1 << world)
    }

    pub fn from_worlds(worlds: impl IntoIterator<Item = usize>) -> State {
        worlds.into_iter().fold(State::EMPTY, |s, w| s.with(w))
    }

    /// The state whose encoding is `index`.
    pub fn from_index(index: usize) -> State {
        State(index as u32)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn with(self, world: usize) -> State {
        State(self.0 | (1 << world))
    }

    pub fn contains(self, world: usize) -> bool {
        self.0 & (1 << world) != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_subset_of(self, other: State) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: State) -> State {
        State(self.0 | other.0)
    }

    pub fn intersection(self, other: State) -> State {
        State(self.0 & other.0)
    }

    pub fn difference(self, other: State) -> State {
        State(self.0 & !other.0)
    }

    /// World indices in ascending order.
    pub fn worlds(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |w| self.contains(*w))
    }

    /// All subsets of this state, starting with the state itself and ending
    /// with the empty state.
    pub fn subsets(self) -> impl Iterator<Item = State> {
        let full = self.0;
        let mut next = Some(full);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == 0 { None } else { Some((cur - 1) & full) };
            Some(State(cur))
        })
    }
}

/// An arbitrary set of states over a fixed number of worlds, not
/// necessarily downward closed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Family {
    world_count: u8,
    bits: Vec<u64>,
}

impl Family {
    pub fn empty(world_count: usize) -> Family {
        assert!(world_count <= MAX_WORLDS, "too many worlds");
        let words = (1usize << world_count).div_ceil(64);
        Family {
            world_count: world_count as u8,
            bits: vec![0; words],
        }
    }

    pub fn from_states(world_count: usize, states: impl IntoIterator<Item = State>) -> Family {
        let mut f = Family::empty(world_count);
        for s in states {
            f.insert(s);
        }
        f
    }

    pub fn world_count(&self) -> usize {
        self.world_count as usize
    }

    fn state_count(&self) -> usize {
        1 << self.world_count
    }

    pub fn contains(&self, s: State) -> bool {
        let i = s.index();
        i < self.state_count() && self.bits[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn insert(&mut self, s: State) {
        let i = s.index();
        assert!(i < self.state_count(), "state outside the model");
        self.bits[i / 64] |= 1 << (i % 64);
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|w| *w == 0)
    }

    /// Members in increasing encoding order.
    pub fn states(&self) -> impl Iterator<Item = State> + '_ {
        (0..self.state_count())
            .map(State::from_index)
            .filter(|s| self.contains(*s))
    }

    fn zip_with(&self, other: &Family, f: impl Fn(u64, u64) -> u64) -> Family {
        debug_assert_eq!(self.world_count, other.world_count);
        Family {
            world_count: self.world_count,
            bits: self
                .bits
                .iter()
                .zip(&other.bits)
                .map(|(a, b)| f(*a, *b))
                .collect(),
        }
    }

    pub fn union(&self, other: &Family) -> Family {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Family) -> Family {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &Family) -> Family {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> Family {
        let mut out = Family {
            world_count: self.world_count,
            bits: self.bits.iter().map(|w| !w).collect(),
        };
        let n = self.state_count();
        if n < 64 {
            out.bits[0] &= (1u64 << n) - 1;
        }
        out
    }

    /// Closes under supersets with one sweep per world.
    pub fn upward_closure(&self) -> Family {
        let mut out = self.clone();
        for w in 0..self.world_count() {
            let bit = 1usize << w;
            for i in 0..self.state_count() {
                if i & bit != 0 && out.contains(State::from_index(i ^ bit)) {
                    out.insert(State::from_index(i));
                }
            }
        }
        out
    }

    /// Closes under subsets with one sweep per world.
    pub fn downward_closure(&self) -> Family {
        let mut out = self.clone();
        for w in 0..self.world_count() {
            let bit = 1usize << w;
            for i in 0..self.state_count() {
                if i & bit != 0 && out.contains(State::from_index(i)) {
                    out.insert(State::from_index(i ^ bit));
                }
            }
        }
        out
    }

    pub fn is_downward_closed(&self) -> bool {
        self.states().all(|s| {
            s.worlds()
                .all(|w| self.contains(s.difference(State::singleton(w))))
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PropositionError {
    #[error("propositions over {left} and {right} worlds cannot be combined")]
    ModelMismatch { left: usize, right: usize },
    #[error("family is not downward closed or lacks the empty state")]
    NotDownwardClosed,
}

/// A downward-closed family of states containing the empty state.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PropositionRepr", into = "PropositionRepr")]
pub struct Proposition {
    family: Family,
}

impl Proposition {
    /// `{∅}`, the proposition of `bot`.
    pub fn bottom(world_count: usize) -> Proposition {
        Proposition {
            family: Family::from_states(world_count, [State::EMPTY]),
        }
    }

    /// The full powerset, the proposition of `top`.
    pub fn top(world_count: usize) -> Proposition {
        Proposition {
            family: Family::empty(world_count).complement(),
        }
    }

    /// All subsets of `s`.
    pub fn powerset_of(world_count: usize, s: State) -> Proposition {
        Proposition::downward_close(world_count, [s])
    }

    /// The smallest proposition containing every given state.
    pub fn downward_close(world_count: usize, states: impl IntoIterator<Item = State>) -> Proposition {
        let mut f = Family::from_states(world_count, states);
        f.insert(State::EMPTY);
        Proposition {
            family: f.downward_closure(),
        }
    }

    pub fn try_from_family(family: Family) -> Result<Proposition, PropositionError> {
        if family.contains(State::EMPTY) && family.is_downward_closed() {
            Ok(Proposition { family })
        } else {
            Err(PropositionError::NotDownwardClosed)
        }
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn world_count(&self) -> usize {
        self.family.world_count()
    }

    pub fn contains(&self, s: State) -> bool {
        self.family.contains(s)
    }

    pub fn len(&self) -> usize {
        self.family.len()
    }

    /// Always false: the empty state is a member of every proposition.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn states(&self) -> impl Iterator<Item = State> + '_ {
        self.family.states()
    }

    pub fn is_bottom(&self) -> bool {
        self.family.len() == 1
    }

    pub fn is_subset_of(&self, other: &Proposition) -> bool {
        self.family.difference(&other.family).is_empty()
    }

    /// The ⊆-maximal members, sorted lexicographically by world indices.
    pub fn maximal_states(&self) -> Vec<State> {
        let n = self.world_count();
        let mut out: Vec<State> = self
            .states()
            .filter(|s| (0..n).all(|w| s.contains(w) || !self.contains(s.with(w))))
            .collect();
        out.sort_by_key(|s| s.worlds().collect::<Vec<_>>());
        out
    }

    /// Maximal-state notation with the model's world names, e.g.
    /// `{w1,w2},{w1,w3} ↓`.
    pub fn render(&self, m: &Model) -> String {
        let parts: Vec<String> = self
            .maximal_states()
            .into_iter()
            .map(|s| m.render_state(s))
            .collect();
        format!("{} ↓", parts.join(","))
    }

    fn check(&self, other: &Proposition) -> Result<(), PropositionError> {
        if self.world_count() == other.world_count() {
            Ok(())
        } else {
            Err(PropositionError::ModelMismatch {
                left: self.world_count(),
                right: other.world_count(),
            })
        }
    }

    pub fn and(&self, other: &Proposition) -> Result<Proposition, PropositionError> {
        self.check(other)?;
        Ok(Proposition {
            family: self.family.intersection(&other.family),
        })
    }

    pub fn or(&self, other: &Proposition) -> Result<Proposition, PropositionError> {
        self.check(other)?;
        Ok(Proposition {
            family: self.family.union(&other.family),
        })
    }

    /// `{s ∪ t | s ∈ self, t ∈ other}`. By downward closure, `u` is in the
    /// result iff some `t ⊆ u` lies in `self` with `u \ t` in `other`.
    pub fn tensor(&self, other: &Proposition) -> Result<Proposition, PropositionError> {
        self.check(other)?;
        let n = self.world_count();
        let mut out = Family::empty(n);
        for u in State::full(n).subsets() {
            if u.subsets()
                .any(|t| self.contains(t) && other.contains(u.difference(t)))
            {
                out.insert(u);
            }
        }
        Ok(Proposition { family: out })
    }

    /// `{s | every t ⊆ s in self is in other}`: the complement of the upward
    /// closure of `self \ other`.
    pub fn implies(&self, other: &Proposition) -> Result<Proposition, PropositionError> {
        self.check(other)?;
        let bad = self.family.difference(&other.family);
        Ok(Proposition {
            family: bad.upward_closure().complement(),
        })
    }

    pub fn neg(&self) -> Proposition {
        self.implies(&Proposition::bottom(self.world_count()))
            .expect("same model")
    }

    pub fn question(&self) -> Proposition {
        self.or(&self.neg()).expect("same model")
    }
}

#[derive(Serialize, Deserialize)]
struct PropositionRepr {
    world_count: usize,
    maximal: Vec<Vec<usize>>,
}

impl From<Proposition> for PropositionRepr {
    fn from(p: Proposition) -> Self {
        PropositionRepr {
            world_count: p.world_count(),
            maximal: p
                .maximal_states()
                .into_iter()
                .map(|s| s.worlds().collect())
                .collect(),
        }
    }
}

impl TryFrom<PropositionRepr> for Proposition {
    type Error = String;

    fn try_from(r: PropositionRepr) -> Result<Self, String> {
        if r.world_count > MAX_WORLDS {
            return Err(format!("too many worlds: {}", r.world_count));
        }
        if let Some(w) = r.maximal.iter().flatten().find(|w| **w >= r.world_count) {
            return Err(format!("world index {w} out of range"));
        }
        Ok(Proposition::downward_close(
            r.world_count,
            r.maximal.into_iter().map(State::from_worlds),
        ))
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ws: Vec<String> = self.worlds().map(|w| (w + 1).to_string()).collect();
        write!(f, "{{{}}}", ws.join(","))
    }
}
