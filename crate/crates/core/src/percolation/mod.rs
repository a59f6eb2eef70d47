//! Reachability by path type, Z-paths, the χ-path, principal voids and
//! Monte Carlo estimators.

pub mod chi;
pub mod mc;
pub mod path;
pub mod voids;
pub mod zpath;

pub use path::{count_at_least, crosses, cyclic_field, reachable_field, reachable_set, Field, PathType, ReachSet};
pub use zpath::{z_path, z_path_field, Direction, LazyLine, Refresh, Trajectory, TrajectoryKind};
pub use chi::{chi_e_recursion, chi_e_sequence, chi_exit_times, chi_path_xor, chi_slope};
pub use voids::{principal_void, three_free_chain, ChainSegment, PrincipalVoid};
pub use mc::{exact_crossing, mc_crossing, mc_drift, mc_empty_survival, refresh_stats, Estimate, RefreshStats};
pub use zpath::{explore_field, refresh_walk, z_from_refresh};
