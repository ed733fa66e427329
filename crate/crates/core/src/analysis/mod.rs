//! Instance-level checks of the structural claims, plus counterexample
//! search.

mod components;
mod fixed_endpoint;
mod sampling;
mod search;
mod verify;

pub use components::{
    count_well_separated, peeling_component_check, well_separated_bound, well_separated_caterpillars, ws_component_check,
    PeelingCheck, WellSeparatedCheck,
};
pub use fixed_endpoint::{
    check_degree_one, fixed_endpoint_graph, matches_generic_flip_graph, min_component_check, FixedEndpointGraph,
};
pub use sampling::{convex_point_set, instance_seeds, random_point_set, DEFAULT_GRID};
pub use search::{search_isolated_caterpillar, slide_count, slide_neighbors_brute, SearchReport, SearchStrategy};
pub use verify::{
    check_instance, instances_for, verify, Claim, Instance, InstanceResult, VerifyReport, ISOLATED_BUDGET, PEELING_PAIRS,
};
