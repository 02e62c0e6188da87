use num_rational::Ratio;
use serde::Serialize;

use super::{symmetrize, Presentation, SymmetrizedSet};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelatorPieces {
    pub relator_id: usize,
    pub longest_piece: usize,
    pub relator_length: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScWitness {
    pub relator_id: usize,
    pub piece: String,
    pub piece_length: usize,
}

/// Outcome of the metric condition C'(λ): every piece inside a relator `r`
/// must be strictly shorter than `λ|r|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SCReport {
    #[serde(serialize_with = "ser_ratio")]
    pub lambda_required: Ratio<u64>,
    pub max_piece_per_relator: Vec<RelatorPieces>,
    pub verdict: Verdict,
    pub witness: Option<ScWitness>,
}

fn ser_ratio<S: serde::Serializer>(r: &Ratio<u64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{}/{}", r.numer(), r.denom()))
}

impl SCReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

pub fn one_sixth() -> Ratio<u64> {
    Ratio::new(1, 6)
}

pub fn check_small_cancellation(p: &Presentation, lambda: Ratio<u64>) -> Result<SCReport> {
    check_with(p, &symmetrize(p), lambda)
}

/// Same as [`check_small_cancellation`] on an already symmetrized set.
pub fn check_with(p: &Presentation, sym: &SymmetrizedSet, lambda: Ratio<u64>) -> Result<SCReport> {
    if *lambda.numer() == 0 || lambda >= Ratio::from_integer(1) {
        return Err(Error::Parameter(format!("lambda must lie in (0, 1), got {lambda}")));
    }
    let pieces = sym.member_pieces();
    let nrel = p.relators().len();
    // (longest piece, member index achieving it) per relator
    let mut best: Vec<(u32, usize)> = vec![(0, usize::MAX); nrel];
    for (i, m) in sym.members().iter().enumerate() {
        let b = &mut best[m.relator as usize];
        if pieces[i] > b.0 || b.1 == usize::MAX {
            *b = (pieces[i], i);
        }
    }
    let mut table = Vec::with_capacity(nrel);
    let mut witness = None;
    for (ri, r) in p.relators().iter().enumerate() {
        let (piece, member) = best[ri];
        let len = r.len();
        table.push(RelatorPieces { relator_id: ri, longest_piece: piece as usize, relator_length: len });
        let ok = (piece as u64) * lambda.denom() < lambda.numer() * len as u64;
        if !ok && witness.is_none() {
            let letters = &sym.member_letters(&sym.members()[member])[..piece as usize];
            witness = Some(ScWitness {
                relator_id: ri,
                piece: p.alphabet().format_letters(letters),
                piece_length: piece as usize,
            });
        }
    }
    Ok(SCReport {
        lambda_required: lambda,
        max_piece_per_relator: table,
        verdict: if witness.is_none() { Verdict::Pass } else { Verdict::Fail },
        witness,
    })
}
