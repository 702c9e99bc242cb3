//! Validators and measurements on equilibria and their underlying graphs.

mod connectivity;
mod expansion;
mod kcenter;
mod poa;
mod structure;

pub use connectivity::{
    check_connectivity_theorem, vertex_connectivity, vertex_connectivity_brute_force, ConnectivityVerdict,
};
pub use expansion::expansion_profile;
pub use kcenter::{brute_force_kcenter, brute_force_kmedian, reduce_kcenter, reduce_kmedian, Reduction};
pub use poa::{price_of_anarchy_exhaustive, PoAReport, Ratio};
pub use structure::{
    tree_bound_holds, tree_diameter_bound_check, unit_budget_structure, StructureReport, StructureVerdict,
    StructureWitness, TreeBoundVerdict,
};
