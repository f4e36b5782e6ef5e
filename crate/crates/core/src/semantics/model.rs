use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::State;
use crate::syntax::Letter;

pub const MAX_WORLDS: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("a model may have at most {MAX_WORLDS} worlds, got {0}")]
    TooManyWorlds(usize),
    #[error("duplicate world `{0}`")]
    DuplicateWorld(String),
    #[error("unknown world `{0}`")]
    UnknownWorld(String),
    #[error("invalid letter `{0}`")]
    InvalidLetter(String),
}

/// A finite possible-world model. Letters outside the letter universe are
/// false at every world.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ModelFile", into = "ModelFile")]
pub struct Model {
    world_names: Vec<String>,
    valuation: Vec<BTreeSet<Letter>>,
    letters: BTreeSet<Letter>,
}

impl Model {
    /// Builds a model from `(world name, true letters)` pairs in index order.
    /// `extra_letters` are added to the letter universe without being true
    /// anywhere.
    pub fn new<I, L>(worlds: I, extra_letters: L) -> Result<Self, ModelError>
    where
        I: IntoIterator<Item = (String, BTreeSet<Letter>)>,
        L: IntoIterator<Item = Letter>,
    {
        let mut world_names = Vec::new();
        let mut valuation = Vec::new();
        for (name, letters) in worlds {
            if world_names.contains(&name) {
                return Err(ModelError::DuplicateWorld(name));
            }
            world_names.push(name);
            valuation.push(letters);
        }
        if world_names.len() > MAX_WORLDS {
            return Err(ModelError::TooManyWorlds(world_names.len()));
        }
        let mut letters: BTreeSet<Letter> = valuation.iter().flatten().cloned().collect();
        letters.extend(extra_letters);
        if let Some(bad) = letters.iter().find(|l| !Letter::is_valid_name(l.as_str())) {
            return Err(ModelError::InvalidLetter(bad.to_string()));
        }
        Ok(Model {
            world_names,
            valuation,
            letters,
        })
    }

    /// Convenience constructor for tests and canonical models.
    pub fn from_table(rows: &[(&str, &[&str])], extra_letters: &[&str]) -> Result<Self, ModelError> {
        Model::new(
            rows.iter().map(|(w, ls)| {
                (
                    (*w).to_owned(),
                    ls.iter().map(|l| Letter::from(*l)).collect(),
                )
            }),
            extra_letters.iter().map(|l| Letter::from(*l)),
        )
    }

    pub fn world_count(&self) -> usize {
        self.world_names.len()
    }

    pub fn world_names(&self) -> &[String] {
        &self.world_names
    }

    pub fn world_index(&self, name: &str) -> Option<usize> {
        self.world_names.iter().position(|w| w == name)
    }

    pub fn valuation(&self, world: usize) -> &BTreeSet<Letter> {
        &self.valuation[world]
    }

    pub fn letter_universe(&self) -> &BTreeSet<Letter> {
        &self.letters
    }

    pub fn is_true(&self, world: usize, letter: &Letter) -> bool {
        self.valuation[world].contains(letter)
    }

    /// The worlds where `letter` is true.
    pub fn truth_set(&self, letter: &Letter) -> State {
        (0..self.world_count())
            .filter(|&w| self.is_true(w, letter))
            .fold(State::EMPTY, |s, w| s.with(w))
    }

    pub fn full_state(&self) -> State {
        State::full(self.world_count())
    }

    /// Parses a comma-separated list of world names; the empty string is the
    /// empty state.
    pub fn state_from_names(&self, names: &str) -> Result<State, ModelError> {
        names
            .split(',')
            .map(str::trim)
            .filter(|n| !n.is_empty())
            .try_fold(State::EMPTY, |s, n| {
                self.world_index(n)
                    .map(|w| s.with(w))
                    .ok_or_else(|| ModelError::UnknownWorld(n.to_owned()))
            })
    }

    pub fn render_state(&self, s: State) -> String {
        let names: Vec<&str> = s.worlds().map(|w| self.world_names[w].as_str()).collect();
        format!("{{{}}}", names.join(","))
    }
}

/// The JSON model file layout.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub worlds: Vec<String>,
    #[serde(default)]
    pub valuation: BTreeMap<String, Vec<String>>,
    /// Extra letters in the universe that are false everywhere.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub letters: Vec<String>,
}

impl TryFrom<ModelFile> for Model {
    type Error = ModelError;

    fn try_from(file: ModelFile) -> Result<Self, ModelError> {
        if let Some(key) = file.valuation.keys().find(|k| !file.worlds.contains(k)) {
            return Err(ModelError::UnknownWorld(key.clone()));
        }
        let worlds = file.worlds.iter().map(|w| {
            let letters = file
                .valuation
                .get(w)
                .map(|ls| ls.iter().map(|l| Letter::from(l.as_str())).collect())
                .unwrap_or_default();
            (w.clone(), letters)
        });
        Model::new(worlds, file.letters.iter().map(|l| Letter::from(l.as_str())))
    }
}

impl From<Model> for ModelFile {
    fn from(m: Model) -> Self {
        let mentioned: BTreeSet<&Letter> = m.valuation.iter().flatten().collect();
        let letters = m
            .letters
            .iter()
            .filter(|l| !mentioned.contains(l))
            .map(|l| l.to_string())
            .collect();
        let valuation = m
            .world_names
            .iter()
            .zip(&m.valuation)
            .map(|(w, ls)| (w.clone(), ls.iter().map(|l| l.to_string()).collect()))
            .collect();
        ModelFile {
            worlds: m.world_names,
            valuation,
            letters,
        }
    }
}

/// Three worlds: `w1: {p}`, `w2: {q}`, `w3: {}`; universe `{p, q, r}`.
pub fn canonical_impl_model() -> Model {
    Model::from_table(&[("w1", &["p"]), ("w2", &["q"]), ("w3", &[])], &["r"])
        .expect("static model")
}

/// Three worlds: `w1: {p}`, `w2: {p, q}`, `w3: {q}`; universe `{p, q, r}`.
pub fn canonical_dep_model() -> Model {
    Model::from_table(&[("w1", &["p"]), ("w2", &["p", "q"]), ("w3", &["q"])], &["r"])
        .expect("static model")
}
