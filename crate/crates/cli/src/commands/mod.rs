//! Subcommand definitions. Every argument struct serializes to the `params`
//! object of the report's config, under the same names as its flags, so a
//! report's config can be fed back through `run --config`.

mod arith;
mod combinatorics;
mod dynamics;

use clap::Subcommand;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use sumset_core::adele::AdeleClassElement;
use sumset_core::folner::FolnerFamily;
use sumset_core::Rational;

use crate::parse::{list, value, CliResult};
use crate::report::Outcome;

pub use arith::*;
pub use combinatorics::*;
pub use dynamics::*;

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exhaustive 5-coloring check over small sets, plus both mechanisms.
    ColorCheck(ColorCheckArgs),
    /// First monochromatic {b1, b2, b1^2 + b2} under a coloring.
    Bergelson(BergelsonArgs),
    /// Weyl sums of generic adelic coefficients over Følner sets.
    Weyl(WeylArgs),
    /// Rotation averages along a polynomial.
    RotationAvg(RotationAvgArgs),
    /// Depth-limited search for a progression chain.
    Efs(EfsArgs),
    /// Exhaustive check of the quadratic counterexample system.
    RemarkCheck(RemarkCheckArgs),
    /// Exact densities of rational sets along a Følner family.
    Density(DensityArgs),
    /// Følner defect under a translation.
    Defect(DefectArgs),
    /// Greedy construction of {b_i^2 + b_j} inside a set.
    BuildSumset(BuildSumsetArgs),
    /// Search for a finite set whose differences lie in A.
    DeltaFind(DeltaFindArgs),
    /// Exhaustive ordered Ramsey number.
    Ramsey(RamseyArgs),
    /// Measure Ramsey inequality on random finite spaces.
    MeasureRamsey(MeasureRamseyArgs),
    /// Corner count and Markov level set of a random F.
    Corners(CornersArgs),
    /// Phase-polynomial and character-derivative identities on random instances.
    PhaseCheck(PhaseCheckArgs),
    /// Derived polynomial sequence.
    DerivedSeq(DerivedSeqArgs),
    /// Van der Corput diagnostic for a polynomial phase sequence.
    VdcReport(VdcReportArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::ColorCheck(_) => "color-check",
            Command::Bergelson(_) => "bergelson",
            Command::Weyl(_) => "weyl",
            Command::RotationAvg(_) => "rotation-avg",
            Command::Efs(_) => "efs",
            Command::RemarkCheck(_) => "remark-check",
            Command::Density(_) => "density",
            Command::Defect(_) => "defect",
            Command::BuildSumset(_) => "build-sumset",
            Command::DeltaFind(_) => "delta-find",
            Command::Ramsey(_) => "ramsey",
            Command::MeasureRamsey(_) => "measure-ramsey",
            Command::Corners(_) => "corners",
            Command::PhaseCheck(_) => "phase-check",
            Command::DerivedSeq(_) => "derived-seq",
            Command::VdcReport(_) => "vdc-report",
        }
    }

    pub fn params(&self) -> Value {
        let v = match self {
            Command::ColorCheck(a) => serde_json::to_value(a),
            Command::Bergelson(a) => serde_json::to_value(a),
            Command::Weyl(a) => serde_json::to_value(a),
            Command::RotationAvg(a) => serde_json::to_value(a),
            Command::Efs(a) => serde_json::to_value(a),
            Command::RemarkCheck(a) => serde_json::to_value(a),
            Command::Density(a) => serde_json::to_value(a),
            Command::Defect(a) => serde_json::to_value(a),
            Command::BuildSumset(a) => serde_json::to_value(a),
            Command::DeltaFind(a) => serde_json::to_value(a),
            Command::Ramsey(a) => serde_json::to_value(a),
            Command::MeasureRamsey(a) => serde_json::to_value(a),
            Command::Corners(a) => serde_json::to_value(a),
            Command::PhaseCheck(a) => serde_json::to_value(a),
            Command::DerivedSeq(a) => serde_json::to_value(a),
            Command::VdcReport(a) => serde_json::to_value(a),
        };
        v.expect("arguments serialize")
    }

    /// Whether output defaults to CSV when no format is given.
    pub fn prefers_csv(&self) -> bool {
        matches!(self, Command::Weyl(a) if a.demo)
    }

    pub fn execute(&self, seed: u64) -> CliResult<Outcome> {
        match self {
            Command::ColorCheck(a) => a.run(),
            Command::Bergelson(a) => a.run(),
            Command::Weyl(a) => a.run(seed),
            Command::RotationAvg(a) => a.run(seed),
            Command::Efs(a) => a.run(seed),
            Command::RemarkCheck(a) => a.run(seed),
            Command::Density(a) => a.run(),
            Command::Defect(a) => a.run(),
            Command::BuildSumset(a) => a.run(seed),
            Command::DeltaFind(a) => a.run(),
            Command::Ramsey(a) => a.run(),
            Command::MeasureRamsey(a) => a.run(seed),
            Command::Corners(a) => a.run(seed),
            Command::PhaseCheck(a) => a.run(seed),
            Command::DerivedSeq(a) => a.run(),
            Command::VdcReport(a) => a.run(seed),
        }
    }
}

pub(crate) fn family(s: &str) -> CliResult<FolnerFamily> {
    value(s, "family")
}

pub(crate) fn primes(s: &str) -> CliResult<Vec<u64>> {
    list(s, "prime")
}

/// Generic element number `index` for a run seeded with `seed`.
pub(crate) fn generic(primes: &[u64], precision: u32, seed: u64, index: u64) -> CliResult<AdeleClassElement> {
    Ok(AdeleClassElement::generic_element(primes, precision, seed.wrapping_add(index))?)
}

/// `num/den` with `den ≤ max_den`, uniform numerator in `[-max_num, max_num]`.
pub(crate) fn random_rational(rng: &mut ChaCha8Rng, max_num: i64, max_den: i64) -> Rational {
    Rational::new(rng.gen_range(-max_num..=max_num), rng.gen_range(1..=max_den))
}

/// A value in `[0, 1]` with denominator at most `max_den`.
pub(crate) fn random_unit(rng: &mut ChaCha8Rng, max_den: i64) -> Rational {
    let d = rng.gen_range(1..=max_den);
    Rational::new(rng.gen_range(0..=d), d)
}

pub(crate) fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
