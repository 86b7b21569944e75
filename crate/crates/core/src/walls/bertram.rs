use serde::{Deserialize, Serialize};

use super::{meets_vertical, Plane, WallError};
use crate::chern::{ChernCharacter, HNProfile};
use crate::field::rat_to_f64;
use crate::lattice::Frame;

/// Which of the two vertical-line hypotheses hold for a sub/quotient pair in one plane.
/// `sub_case`: the wall reaches s = slope of the last HN factor of the subobject.
/// `quot_case`: the wall reaches s = slope of the first HN factor of H^-1 of the quotient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BertramSplit {
    pub sub_case: bool,
    pub quot_case: bool,
}

pub fn bertram_split(
    sub: &ChernCharacter<f64>,
    quot: &ChernCharacter<f64>,
    frame: &Frame<f64>,
    plane: &Plane,
    sub_profile: &HNProfile,
    quot_h_minus1: &HNProfile,
) -> Result<BertramSplit, WallError> {
    // A single-factor subobject has no smaller HN piece to pass to.
    let sub_case = match (sub_profile.factors().len() > 1, sub_profile.last_slope()) {
        (true, Some(mu)) => meets_vertical(sub, quot, frame, plane, rat_to_f64(mu))?,
        _ => false,
    };
    let quot_case = match quot_h_minus1.first_slope() {
        Some(mu) => meets_vertical(sub, quot, frame, plane, rat_to_f64(mu))?,
        None => false,
    };
    Ok(BertramSplit { sub_case, quot_case })
}
