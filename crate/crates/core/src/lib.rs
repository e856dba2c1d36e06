//! Flag complexes, right-angled Artin groups and the Thurston norm on
//! their first cohomology.
//!
//! A flag complex `L` is given by its 1-skeleton; the group `A_L` has one
//! generator per vertex and commuting relations along edges. For chordal
//! connected `L` with at least two vertices the norm of an integral
//! character φ equals the thickness of the L²-polytope along φ, equals
//! `-χ^{(2)}(ker φ)`, and is realised by an explicit dual splitting.
//!
//! ```
//! use raag_core::{thurston_norm, Character, FlagComplex, q};
//!
//! let l = FlagComplex::new(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
//! let phi = Character::from_ints(&l, &[1, 1, 1]).unwrap();
//! assert_eq!(thurston_norm(&l, &phi).unwrap(), q(1));
//! ```

pub mod character;
pub mod chordal;
pub mod complex;
pub mod error;
pub mod gog;
pub mod homology;
pub mod l2;
pub mod rational;
pub mod splitting;
pub mod verify;
pub mod zonotope;

pub use character::{character_from_json, parse_character, Character};
pub use chordal::{
    clique_tree_splitting, find_separating_clique, is_chordal, is_perfect_elimination_ordering,
    lex_bfs, require_chordal, ChordalityWitness,
};
pub use complex::{complex_from_json, parse_complex, FlagComplex, DEFAULT_CLIQUE_CAP};
pub use error::{Error, Result};
pub use gog::{GogEdge, GraphOfGroups, GroupDescriptor, Inclusion, OrientedEdge};
pub use homology::{euler_raag, reduced_betti, ReducedBettiVector};
pub use l2::{
    is_fibered, l2_betti_group, l2_betti_kernel, l2_euler_kernel, l2_euler_kernel_via_betti,
    FiberingReport,
};
pub use rational::{format_q, parse_q, q, q_ratio, Q};
pub use splitting::{
    cyclic_cover_truncation, dual_splitting, euler_check, free_product_splitting, living_blocks,
    splitting_complexity, CoverTruncation, SplittingReport,
};
pub use verify::{cross_check, run_suite, CrossCheckReport, SplitMix64, SuiteConfig, SuiteReport};
pub use zonotope::{
    cut_ranks, l2_polytope, norm_ball, thurston_norm, thurston_norm_real, Direction, NormBall,
    ZonotopeElement,
};
