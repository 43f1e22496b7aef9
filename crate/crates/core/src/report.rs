//! Validation reports shared by every module.

use std::fmt;

/// Which defining condition failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Condition {
    /// Object band sizes disagree with a block's shape.
    BandShape,
    /// σ-paired bands have different sizes.
    SigmaDimension,
    /// `B² ≠ 0`.
    SquareZero,
    /// Morphism block has the wrong shape.
    BlockShape,
    /// `TC ≠ BT`.
    Intertwining,
    /// Nonzero block below the diagonal.
    Triangularity,
    /// σ-paired diagonal blocks differ.
    SigmaDiagonal,
    WitnessShape,
    /// `S − T ≠ BL + LC`.
    WitnessEquation,
    /// Nonzero witness block outside the allowed region.
    WitnessRegion,
    WitnessSigma,
    /// Source or target objects of two morphisms disagree.
    Endpoints,
    ArrowCount,
    NonRelationBranching,
    RelationBranching,
    RelationLength,
    FiniteDimension,
    DifferentialShape,
    /// `∂∂ ≠ 0` in the path basis.
    PathSquareZero,
    ChainMapShape,
    Commutation,
    HomotopyShape,
    HomotopyEquation,
    /// Two constructions that must agree exactly differ.
    Compatibility,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Condition::BandShape => "band-shape",
            Condition::SigmaDimension => "sigma-dimension",
            Condition::SquareZero => "square-zero",
            Condition::BlockShape => "block-shape",
            Condition::Intertwining => "intertwining",
            Condition::Triangularity => "triangularity",
            Condition::SigmaDiagonal => "sigma-diagonal",
            Condition::WitnessShape => "witness-shape",
            Condition::WitnessEquation => "witness-equation",
            Condition::WitnessRegion => "witness-region",
            Condition::WitnessSigma => "witness-sigma",
            Condition::Endpoints => "endpoints",
            Condition::ArrowCount => "arrow-count",
            Condition::NonRelationBranching => "non-relation-branching",
            Condition::RelationBranching => "relation-branching",
            Condition::RelationLength => "relation-length",
            Condition::FiniteDimension => "finite-dimension",
            Condition::DifferentialShape => "differential-shape",
            Condition::PathSquareZero => "path-square-zero",
            Condition::ChainMapShape => "chain-map-shape",
            Condition::Commutation => "commutation",
            Condition::HomotopyShape => "homotopy-shape",
            Condition::HomotopyEquation => "homotopy-equation",
            Condition::Compatibility => "compatibility",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub condition: Condition,
    /// Human-readable coordinates, e.g. `([u,1], [a,2])`.
    pub location: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}", self.condition, self.location)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn new() -> Report {
        Report::default()
    }

    pub fn push(&mut self, condition: Condition, location: impl Into<String>) {
        self.violations.push(Violation { condition, location: location.into() });
    }

    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, condition: Condition) -> bool {
        self.violations.iter().any(|v| v.condition == condition)
    }

    pub fn extend(&mut self, other: Report) {
        self.violations.extend(other.violations);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}
