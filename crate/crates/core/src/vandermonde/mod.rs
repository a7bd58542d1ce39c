//! Veronese, minor and symmetric-power constructions on point families,
//! together with verifiers for the determinant identities relating them.

mod basis;
mod constructions;
mod verify;

pub use basis::MonomialBasis;
pub use constructions::{
    column_scaling_exponent, eta_matrix, hdv_shape, monomial_basis, mu_matrix, mu_prime,
    mu_prime_with, pairing_matrix, pairing_matrix_with, sym_power_matrix, veronese_matrix,
};
pub use verify::{
    compare_up_to_sign, demo_naive_failure, hdv_sides, naive_degree, symbolic_points,
    verify_abstract, verify_affine, verify_column_lemma, verify_dual, verify_hdv, verify_naive,
    verify_sym_power, Identity, NamedCheck, ReportDocument, Sign, Verdict, VerificationReport,
};
