//! Explicit tame polynomial automorphisms of 3-space with a prescribed
//! multidegree, and exact verification of them.
//!
//! ```
//! use tamedeg::{construct, expand_word, multidegree, Outcome};
//!
//! let Outcome::Constructed(plan) = construct(4, 6, 7).unwrap() else { panic!() };
//! let map = expand_word(&plan.word).unwrap();
//! assert_eq!(multidegree(&map).unwrap().0, [4, 6, 7]);
//! ```

pub mod construct;
pub mod poly;
pub mod rational;
pub mod text;
pub mod verify;
pub mod word;

pub use construct::{
    build_fact1_divisible, build_fact1_semigroup, build_step1, build_step2, build_step2_with_u,
    certify_pair, compute_u, construct, construct_with_report, dispatch_small_a, plan,
    semigroup_decompose, sylvester_bound, theorem_threshold, Case, ConstructError,
    ConstructionPlan, Outcome, Parameters, SemigroupWitness, TamePairReport, TargetTriple,
    ThresholdInfo, UCoefficients,
};
pub use poly::{binomial, Degree, Monomial, Polynomial, Var};
pub use rational::Rational;
pub use text::{format_word, parse_polynomial, parse_word, ParseError, WordParseError};
pub use verify::{
    cancellation_check, degree_formula_check, verify_plan, verify_word, Check,
    VerificationReport,
};
pub use word::{
    apply_word, compose_maps, expand_factor, expand_word, invert_word, jacobian_det,
    maps_equal_probabilistic, multidegree, Factor, Matrix3, Multidegree, PolyMap, TameWord,
    WordError,
};
