//! Exact conditional structure of finite categorical random fields.
//!
//! A [`JointField`] holds a joint probability table with exact rational
//! masses. On top of it the crate computes marginals (singly or for the whole
//! subset lattice), conditionals, event-level uninformativeness, and the
//! families of sufficient, minimal and efficiently sufficient information
//! sets that generalize the Markov-random-field neighbor to non-positive
//! joints. The [`miner`] module checks the accompanying lemmas over
//! enumerated fields and searches for counterexamples to the false ones.

pub mod conditional;
pub mod error;
pub mod event;
pub mod field;
pub mod fixtures;
pub mod info;
pub mod io;
pub mod marginal;
pub mod miner;
pub mod rational;
pub mod report;
pub mod site_set;

pub use conditional::{conditional, ConditionalTable};
pub use error::{Error, Result};
pub use event::{event_conditional, probability, Event};
pub use field::{BuildOptions, FieldSpec, JointField, PartialAssignment, RowSpec, SiteSpec};
pub use fixtures::{builtin, Fixture, FixtureId};
pub use info::Analyzer;
pub use marginal::{marginal, marginal_lattice, Lattice, LatticeLimits, MarginalTable};
pub use rational::Rational;
pub use site_set::SiteSet;
