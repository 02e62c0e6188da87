//! Brackets on conjugacy norms in `N = <x, y>`.

use num_bigint::BigUint;
use serde::Serialize;

use crate::dehn::DehnContext;
use crate::error::{Error, Result};
use crate::numeric::ln_biguint;
use crate::rips::{counts_total, RipsOutput};
use crate::words::{cyclic_reduce, for_each_reduced_word, CyclicWord, Word};

use super::qmetric::QMetric;

/// Largest enumeration radius accepted by [`n_norm_bfs_oracle`].
pub const N_ORACLE_RADIUS_BUDGET: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NormMethod {
    Materialized,
    CountMatrix,
    BfsOracle,
    DehnHeuristic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormMode {
    Materialize,
    Counts,
}

impl std::str::FromStr for NormMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "materialize" => Ok(NormMode::Materialize),
            "counts" => Ok(NormMode::Counts),
            _ => Err(Error::Parameter(format!("mode must be `materialize` or `counts`, got `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NormEstimate {
    pub lower: Option<u64>,
    pub upper: BigUint,
    pub ln_upper: f64,
    pub method: NormMethod,
    /// `|q^n|_Q`, the length of the representative actually applied.
    pub q_length: usize,
}

/// Whose conjugates count when searching for short representatives.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConjugatorAlphabet {
    /// `{x, y}`: conjugacy in `N`, the norm proper.
    N,
    /// Every generator of `G`: conjugacy in `G`, diagnostic only.
    G,
}

/// Upper bound on `||Φ^n(c)||_N` for `Φ = χ(q)`, applying a geodesic
/// representative of `q^n`. Materialize mode cyclically reduces the image;
/// counts mode sums the cancellation-free letter counts.
pub fn n_norm_upper(
    rips: &RipsOutput,
    q_word: &Word,
    c: &CyclicWord,
    n: i64,
    oracle: &dyn QMetric,
    mode: NormMode,
) -> Result<NormEstimate> {
    let geo = oracle.geodesic(&q_word.pow(n))?;
    let phi = rips.outer(geo)?;
    let w = c.as_word();
    let (upper, method) = match mode {
        NormMode::Materialize => {
            let img = phi.apply(&w)?;
            (BigUint::from(cyclic_reduce(&img).0.len()), NormMethod::Materialized)
        }
        NormMode::Counts => {
            let counts = phi.apply_counts(&rips.letter_counts(&w)?)?;
            (counts_total(&counts), NormMethod::CountMatrix)
        }
    };
    let ln_upper = ln_biguint(&upper);
    Ok(NormEstimate { lower: None, upper, ln_upper, method, q_length: phi.q_word().len() })
}

/// Shortest `v` over `{x, y}` with `|v| <= radius` that is conjugate to
/// `target` by a conjugator of length `<= conj_radius` over the chosen
/// alphabet. `None` is inconclusive.
pub fn n_norm_bfs_oracle(
    ctx: &DehnContext,
    rips: &RipsOutput,
    target: &Word,
    radius: usize,
    conj_radius: usize,
    alphabet: ConjugatorAlphabet,
) -> Result<Option<usize>> {
    if !ctx.sc_verified() {
        return Err(Error::UnsupportedContext("N-norm oracle needs a C'(1/6) presentation of G".into()));
    }
    if radius > N_ORACLE_RADIUS_BUDGET {
        return Err(Error::Resource(format!(
            "N-norm oracle radius {radius} exceeds the budget of {N_ORACLE_RADIUS_BUDGET}"
        )));
    }
    if !rips.is_n_word(target) {
        return Err(Error::Alphabet("oracle target must be a word over {x, y}".into()));
    }
    let n_gens = [rips.x().generator(), rips.y().generator()];
    let conj_gens: Vec<u32> = match alphabet {
        ConjugatorAlphabet::N => n_gens.to_vec(),
        ConjugatorAlphabet::G => (0..ctx.presentation().alphabet().len() as u32).collect(),
    };
    // Pre-reduce within the permitted conjugacy: Dehn rotations may pass
    // through relators containing Q-letters, which is G-conjugacy only.
    let target = match alphabet {
        ConjugatorAlphabet::N => cyclic_reduce(target).0.as_word(),
        ConjugatorAlphabet::G => ctx.conjugacy_reduce(target).as_word(),
    };
    let mut result = Ok(None);
    for_each_reduced_word(&n_gens, radius, |v| {
        let v = Word::from_letters(v.iter().copied());
        match ctx.find_conjugator(&v, &target, conj_radius, &conj_gens) {
            Ok(Some(_)) => {
                result = Ok(Some(v.len()));
                false
            }
            Ok(None) => true,
            Err(e) => {
                result = Err(e);
                false
            }
        }
    });
    result
}
