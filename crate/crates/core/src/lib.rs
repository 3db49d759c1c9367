//! Reconstructing graph parameters from decks with missing cards.

pub mod canon;
pub mod clique;
pub mod deck;
pub mod error;
pub mod experiment;
pub mod generators;
pub mod graph;
pub mod histogram;
pub mod rational;
pub mod recon;
pub mod suite;
pub mod verification;

pub use canon::{canonical_code, CanonicalCode};
pub use deck::{full_deck, remove_cards, CardStats, DeckOptions, PartialDeck, RemovalPolicy};
pub use error::{Error, Result};
pub use graph::Graph;
pub use histogram::DegreeHistogram;
pub use rational::Rational;
