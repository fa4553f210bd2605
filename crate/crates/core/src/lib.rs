//! Exact GF(2) algebra for ℤ/2-equivariant unoriented bordism.
//!
//! The homotopical ring MO^{ℤ/2}_* is modelled by a finite presentation over
//! the coefficient ring N_*, its localization by the Laurent ring
//! N_*[c₁, c₂, …][e, e⁻¹], and the geometric side by fixed-point data in the
//! bundle algebra. Characteristic numbers tie the models together.

pub mod charnum;
pub mod coefficients;
pub mod config;
pub mod conner_floyd;
pub mod error;
pub mod gf2poly;
pub mod linalg;
pub mod localized;
pub mod parse;
pub mod presentation;
pub mod symbols;
pub mod verify;

pub use charnum::{
    identify_in_n, identify_in_nbo1, sw_numbers, CohomRing, LineClass, Space, SpaceDesc,
};
pub use coefficients::{rho, CoefElem, CoefRing, Generators};
pub use config::Config;
pub use conner_floyd::{
    boundary, delta, dictionary, eta, phi, pt_class, underlying, BundleAlgElem, FreeBZ2Elem,
    ManifoldExpr,
};
pub use error::{Error, ParseError, Result};
pub use gf2poly::{solve_gf2, GradedPoly, Monomial, VarTable};
pub use localized::{clear_denominators, loc_euler, loc_p, window_basis, LaurentElem, Window};
pub use presentation::{
    euler, iota, BasisShape, Engine, EngineConfig, FormalMonomial, Membership, Presentation,
    QuotientElem,
};
pub use verify::{verify, Check, Report};
