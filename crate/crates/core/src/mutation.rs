//! Deliberate operator corruptions used to show the checkers are not vacuous.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mutation {
    /// f⋆: never take the `x+1 ∈ h^i ∩ h^{i+1}` branch.
    StarCase1,
    /// f⋆: annihilate whenever the plain move would apply.
    StarCase2,
    /// f on SVT: ignore the exception for a right neighbour holding i and i+1.
    SvtException,
    /// f on SVT: annihilate whenever the plain relabelling would apply.
    SvtPlain,
    /// ⋆-insertion: treat `x ∈ R` like `x ∉ R`.
    InsertCase3,
}

impl Mutation {
    pub const ALL: [Mutation; 5] = [
        Mutation::StarCase1,
        Mutation::StarCase2,
        Mutation::SvtException,
        Mutation::SvtPlain,
        Mutation::InsertCase3,
    ];
}
