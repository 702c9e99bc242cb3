//! Best responses, equilibrium checks, dynamics and exhaustive enumeration.

mod best_response;
mod check;
mod dynamics;
mod enumerate;

pub use best_response::{best_response_exact, best_response_swap, BestResponseResult};
pub use check::{is_equilibrium_exact, is_equilibrium_sufficient, EquilibriumCheck, Sufficiency, Witness};
pub use dynamics::{
    best_response_dynamics, random_profile, replay, seeded_rng, DynamicsConfig, DynamicsTrace, Move, MoveOracle,
    OrderPolicy, Outcome,
};
pub use enumerate::{enumerate_equilibria, sweep_profiles, EquilibriumEnumeration};

pub(crate) use check::{ensure_exact_feasible, exact_check_on};
