//! First non-abelian cohomology of finite topological groups.
//!
//! Finite groups carry the coset topology of an open normal subgroup, so
//! continuity hypotheses are real constraints rather than vacuous ones. On top
//! of that the crate validates (partially) crossed `G-R`-bimodules, computes
//! `H^0`, `H^1(G,(A,mu))`, the plain `H^1(G,A)` and `H^2(G,A)` by exhaustive
//! search, runs change of groups (restriction, inflation), the seven-term
//! exact sequence of a proper extension, and the classification of
//! principal homogeneous spaces (torsors).
//!
//! The `examples/` directory has one runnable program per capability; the
//! `nabelh1` binary runs the same machinery against JSON fixture files.

pub mod action;
pub mod bimodule;
pub mod change;
pub mod check;
pub mod cohomology;
pub mod corpus;
pub mod error;
pub mod extension;
pub mod fixture;
pub mod group;
pub mod map;
pub mod report;
pub mod torsor;

pub use action::{FixedPoints, GroupAction};
pub use bimodule::{Bimodule, BimoduleData, BimoduleMorphism, Level};
pub use check::Check;
pub use cohomology::{ClassMap, ClassSet, CrossedHom, DerPair, H1Set, PlainH1};
pub use error::{Error, Result};
pub use group::{validate_group, FiniteTopGroup, GroupRef};
pub use map::GroupMap;

/// Knobs shared by every exhaustive search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Restrict crossed homomorphisms (and cochains) to continuous ones.
    pub continuous_only: bool,
    /// Upper bound on the number of candidates a search may visit.
    pub size_cap: u64,
}

impl SearchOptions {
    pub const DEFAULT_SIZE_CAP: u64 = 10_000_000;

    pub fn all_maps(self) -> Self {
        SearchOptions {
            continuous_only: false,
            ..self
        }
    }

    pub(crate) fn guard(&self, cardinality: u128) -> Result<()> {
        if cardinality > self.size_cap as u128 {
            return Err(Error::SizeGuard {
                cardinality,
                cap: self.size_cap,
            });
        }
        Ok(())
    }
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            continuous_only: true,
            size_cap: Self::DEFAULT_SIZE_CAP,
        }
    }
}

pub(crate) fn pow_u128(base: usize, exp: usize) -> u128 {
    (base as u128).checked_pow(exp as u32).unwrap_or(u128::MAX)
}
