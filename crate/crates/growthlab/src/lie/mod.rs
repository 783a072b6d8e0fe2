//! Exact invariant-form layer: Chevalley–Eilenberg bicomplexes over the
//! Gaussian rationals, cohomology, and cone certificates.

mod algebra;
mod cert;
mod cohomology;
mod complex;
mod exact;
mod gaussian;

pub use algebra::{
    abelian_algebra, heisenberg_algebra, nakamura_algebra, parse_structure_json, sl2c_algebra,
    structure_equation_strings, ComplexLieAlgebra, InvariantForm, LieError,
};
pub use cert::{
    associated_matrix, certificate_to_json, certify_gauduchon, degenerate_balanced_witness,
    dk_membership_search, exact_power_witness, family_min_eigenvalue, form_to_json,
    hs_positivity_check, metric_matrix, product_witness, CertificateJson, CertificateKind,
    CertifyOutcome, ConeCertificate, DkSearch, FactorData, ProductOutcome, Residual,
    WitnessOutcome,
};
pub use cohomology::{aeppli_class, cohomology_dims, p_map, AeppliClass, CohomologyDims};
pub use complex::{bidegree_basis, build_complex, InvariantComplex};
pub use exact::{
    is_positive_definite, nullspace, rank, rank_certificate, reduce_mod_span, solve, GMatrix,
};
pub use gaussian::GaussianRational;
