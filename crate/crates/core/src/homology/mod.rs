//! Cochain complexes, chain maps, double complexes and spectral sequences
//! over the rationals.

mod complex;
mod double;
mod pipeline;
mod spectral;

pub use complex::{relative_cone, ChainComplex, ChainMap, SubquotientComplex};
pub use double::DoubleComplex;
pub use pipeline::{
    cech_de_rham_double_complex, de_rham_of_v, de_rham_spectral_sequence, reduced_local_acyclicity,
    AcyclicityFailure, AcyclicityReport, DeRhamReport,
};
pub use spectral::{spectral_sequence, FilteredComplex, SpectralPage, SpectralSequence};
