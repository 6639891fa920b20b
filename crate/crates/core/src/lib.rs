//! Exact computations on the perfect matching association scheme: integer
//! partitions, symmetric-function transition matrices, the zonal character
//! table, and ratio-bound certificates for t-intersecting families of
//! perfect matchings.

pub mod error;
pub mod extremal;
pub mod matchings;
pub mod matrix;
pub mod partitions;
pub mod rational;
pub mod scheme;
pub mod spectral;
pub mod symfunc;

pub use error::{Error, Result};
pub use matchings::{EdgeSet, NearPerfectMatching, PerfectMatching};
pub use matrix::{QMatrix, RationalMatrix};
pub use partitions::{FatClass, Partition, ScalarTable};
pub use rational::Rational;
pub use scheme::{AssociationScheme, MatchingFunction, Tableau, Tabloid};
pub use spectral::{Certificate, CrossRatio, DerangementGraph, ScanReport};
pub use extremal::{CrossProductReport, ExtremalReport, SearchResult};
pub use symfunc::MatrixKind;
