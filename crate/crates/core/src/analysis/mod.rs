//! Exhaustive search for maximum running times, tree parameters and
//! certificates checking structural claims about concrete runs.

mod certify;
pub mod enumerate;
mod exhaustive;
mod trees;

pub use certify::{
    bipartite_rounds, extract_copy_sequence, girth_theorem_applicable, verify_simulation, BipartiteAudit,
    CopySequence, SimulationCertificate, Violation,
};
pub use exhaustive::{exhaustive_max_running_time, SearchReport, Source, ENUMERATION_LIMIT, MAX_WITNESSES};
pub use trees::{centre_root, rooted_cover, tree_bound, tree_params, TreeParams, COVER_LIMIT};
