//! Exhaustive link census over the image of Φ and the resulting bounds.

pub mod bounds;
pub mod cylinder;
pub mod experiment;
pub mod oracle;
pub mod phi;
pub mod run;

pub use bounds::{bounds_csv, lower_bounds, seed_based_bound, BoundRow, Bounds, Dyadic};
pub use experiment::{mc_random_seed_experiment, SeedExperiment, NOT_CERTIFIED};
pub use oracle::reference_census;
pub use phi::{build_phi, image_word, satisfies_constraint, PhiMap};
pub use run::{run_census, CensusOptions, CensusResult, EtherTally, CENSUS_ETHER_CAP};
