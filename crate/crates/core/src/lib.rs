//! Twisted Selberg and Ruelle zeta functions of compact odd-dimensional
//! hyperbolic manifolds: length-spectrum enumeration, truncated Euler-product
//! evaluation, trace-formula sides, and numerical meromorphic continuation
//! from operator spectra.

pub mod continuation;
pub mod data;
pub mod enumerate;
pub mod error;
pub mod quadrature;
pub mod rep;
pub mod trace;
pub mod verify;
pub mod zeta;

pub use data::{
    parse_length_spectrum, square_spectrum, super_multiplicity, wrap_angle, DiracSpectrum, Eigenpair,
    GeodesicClass, LaplaceSpectrum, LengthSpectrum, SingularityRecord, TruncatedValue, ZetaKind,
};
pub use enumerate::{
    complex_length, conjugacy_key, enumerate_spectrum, primitive_decomposition, EnumerationConfig, EnumerationReport,
    GroupPresentation,
};
pub use error::{Error, Result};
pub use rep::{
    ad_nbar_det, c_shift, case_of, character_chi, character_sigma, plancherel, sym_power_trace, weyl_action,
    GammaRep, MRep, PlancherelConfig, PlancherelPoly, WeylCase,
};

pub use num_complex::Complex64;
pub use zeta::{
    log_derivative_super, log_derivative_symmetrized, log_ruelle, log_selberg, log_super, log_super_ruelle,
    log_symmetrized, log_zeta, GrowthModel, ZetaRecord, ZetaRequest,
};
pub use continuation::{
    continued_selberg_logderiv, continued_super_logderiv, continued_sym_logderiv, log_zeta_by_path,
    partial_fraction_weights, parity_report, residue_at, ruelle_factorization_check, singularity_catalog,
    super_resolvent_check, sym_resolvent_check,
    ContinuationContext, FactorizationCheck, IdentityData, ParityEntry, PathEnd, PathSpec, ResolventCheck, ResolventGrid,
    SingularityCatalog,
};
pub use trace::{
    dirac_geometric_side, dirac_spectral_side, fourier_gaussian_check, heat_geometric_side, heat_identity_term,
    heat_spectral_side, identity_term_dirac, identity_term_dirac_with, laplace_kernel_check, GeometricSide,
    HeatParams, KernelCheck, TraceReport, TraceTolerances,
};
pub use verify::{run_all, run_suite, Suite, SuiteReport, VerifyConfig};
