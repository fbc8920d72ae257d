//! Monodromy of a polynomial: numerical continuation of the root fiber
//! around critical values, the canonical labeling, and the permutation-group
//! algorithms that consume the generators.

pub mod continuation;
pub mod perm;

pub use continuation::{
    around_infinity, base_labeling, critical_data, lasso_path, loop_permutation,
    monodromy_generators, reverse_path, transport_fiber, ContinuationSettings, CriticalData,
    Labeling, Monodromy, PathSeg,
};
pub use perm::{
    normal_closure_elements, subgroup_closure, BlockSystem, PermGroup, Permutation,
    DEFAULT_ELEMENT_CAP,
};
