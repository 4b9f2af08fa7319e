//! Certified numerics for zeta residues, L-values and the D4 constant.

mod density;
mod lfunc;
mod value;

pub use density::{
    d4_constant, d4_constant_with, d4_term, d4_term_with_divisor_sum, d4_terms, dedekind_zeta_at_2,
    dedekind_zeta_residue, rational_quadratic_density, rel_quadratic_density, rel_quadratic_density_with,
    residue_lemma_sum, summarize, D4Constant, SplittingShape,
};
pub use lfunc::{dirichlet_l_at_1, dirichlet_l_at_2, dirichlet_l_at_2_with, zeta2, Precision, MAX_DIGITS};
pub use value::AnalyticValue;
