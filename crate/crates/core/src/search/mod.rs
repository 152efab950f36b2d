//! Generator-driven enumeration of multiplicative maps, counterexample
//! mining and the unique-addition probe.

mod enumerate;
mod generators;
mod probe;

pub use enumerate::{
    enumerate_multiplicative_maps, BranchResult, EnumerationQuery, Enumerator, FilterSet, Order, Outcome, DEFAULT_LIMIT,
};
pub use generators::{greedy_generators, irredundant_generators, monoid_generators, GeneratorSet, Operation};
pub use probe::{find_counterexamples, unique_addition_probe, Counterexamples, IsomorphismEntry, UniqueAdditionReport};
