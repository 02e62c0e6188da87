//! Brackets on the Lipschitz displacement of `Φ = χ(q)`: a lower estimate
//! from short conjugacy classes and an upper bound from generator images.

use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use crate::dehn::DehnContext;
use crate::error::{Error, Result};
use crate::metrics::{n_norm_bfs_oracle, ConjugatorAlphabet};
use crate::numeric::ln_biguint;
use crate::rips::{counts_total, OuterAuto};
use crate::words::{cyclic_reduce, for_each_reduced_word, is_cyclically_reduced, CyclicWord, Word};

/// Largest class-enumeration radius accepted by [`lip_lower`].
pub const LIP_RADIUS_BUDGET: usize = 8;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LipEstimate {
    pub lower: f64,
    pub upper: f64,
    /// Class attaining `lower`, in canonical rotation.
    pub witness: String,
    #[serde(skip)]
    pub witness_class: CyclicWord,
    pub radius: usize,
    /// Both norms behind `lower` came from the exact oracle.
    pub certified: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassRatio {
    pub class: CyclicWord,
    pub image_upper: BigUint,
    pub ln_ratio: f64,
    pub exact: bool,
}

/// `κ_s = ln(max over ℓ in {x, y} of |rule(s, ℓ)|)` summed over the letters
/// of the q-word.
pub fn lip_upper(phi: &OuterAuto<'_>) -> Result<f64> {
    Ok(ln_biguint(&lip_upper_exact(phi)?))
}

/// `exp(lip_upper)`: the product of the per-letter maximal rule lengths.
pub fn lip_upper_exact(phi: &OuterAuto<'_>) -> Result<BigUint> {
    let mut prod = BigUint::one();
    for &s in phi.q_word().letters() {
        prod *= phi.rips().max_rule_len(s)?;
    }
    Ok(prod)
}

/// Largest `κ_s` over all letters of `Q`, as the rule length.
pub fn kappa_max_len(phi: &OuterAuto<'_>) -> Result<usize> {
    phi.rips().max_conjugation_rule_len()
}

fn image_upper(phi: &OuterAuto<'_>, c: &Word) -> Result<(BigUint, Option<Word>)> {
    match phi.apply(c) {
        Ok(img) => Ok((BigUint::from(cyclic_reduce(&img).0.len()), Some(img))),
        Err(Error::Resource(_)) => {
            let counts = phi.apply_counts(&phi.rips().letter_counts(c)?)?;
            Ok((counts_total(&counts), None))
        }
        Err(e) => Err(e),
    }
}

/// Per-class ratios `ln(||Φ(c)|| / ||c||)` for the classes enumerated by
/// [`lip_lower`], in enumeration order.
pub fn class_ratios(phi: &OuterAuto<'_>, radius: usize, ctx: &DehnContext) -> Result<Vec<ClassRatio>> {
    if radius == 0 {
        return Err(Error::Parameter("radius 0 contains no nontrivial conjugacy class".into()));
    }
    if radius > LIP_RADIUS_BUDGET {
        return Err(Error::Resource(format!("class radius {radius} exceeds the budget of {LIP_RADIUS_BUDGET}")));
    }
    let rips = phi.rips();
    let n_gens = [rips.x().generator(), rips.y().generator()];
    let verified = ctx.sc_verified();

    // canonical rotations first
    let mut seen: HashSet<Word> = HashSet::new();
    let mut buckets: Vec<Vec<CyclicWord>> = vec![Vec::new(); radius + 1];
    for_each_reduced_word(&n_gens, radius, |w| {
        if !w.is_empty() && is_cyclically_reduced(w) {
            let c = CyclicWord::new(&Word::from_letters(w.iter().copied()));
            if seen.insert(c.canonical()) {
                buckets[c.len()].push(c);
            }
        }
        true
    });
    // then bounded N-conjugacy inside equal-length buckets
    let mut classes = Vec::new();
    for bucket in buckets {
        let mut kept: Vec<CyclicWord> = Vec::new();
        for c in bucket {
            let dup = verified
                && kept.iter().any(|k| {
                    ctx.find_conjugator(&k.as_word(), &c.as_word(), 1, &n_gens).ok().flatten().is_some()
                });
            if !dup {
                kept.push(c);
            }
        }
        classes.extend(kept);
    }

    let mut out = Vec::with_capacity(classes.len());
    for c in classes {
        let w = c.as_word();
        let (upper, img) = image_upper(phi, &w)?;
        let mut num = upper.clone();
        let mut den = BigUint::from(c.len());
        let mut exact = false;
        if verified {
            if let Some(img) = img.filter(|_| c.len() <= 2) {
                let oracle_radius = 2;
                let num_exact = n_norm_bfs_oracle(ctx, rips, &img, oracle_radius, 1, ConjugatorAlphabet::N)?;
                let den_exact = n_norm_bfs_oracle(ctx, rips, &w, oracle_radius, 1, ConjugatorAlphabet::N)?;
                if let (Some(a), Some(b)) = (num_exact, den_exact) {
                    num = BigUint::from(a);
                    den = BigUint::from(b);
                    exact = true;
                }
            }
        }
        let ln_ratio = ln_biguint(&num) - ln_biguint(&den);
        out.push(ClassRatio { class: c, image_upper: upper, ln_ratio, exact });
    }
    Ok(out)
}

/// Max over enumerated classes of the logged norm ratio. Labeled certified
/// only when the maximizing class had both norms from the exact oracle.
pub fn lip_lower(phi: &OuterAuto<'_>, radius: usize, ctx: &DehnContext) -> Result<LipEstimate> {
    let ratios = class_ratios(phi, radius, ctx)?;
    let mut best = &ratios[0];
    for r in &ratios[1..] {
        if r.ln_ratio > best.ln_ratio {
            best = r;
        }
    }
    let g = phi.rips().g_presentation();
    Ok(LipEstimate {
        lower: best.ln_ratio,
        upper: f64::INFINITY,
        witness: g.format_word(&best.class.canonical()),
        witness_class: best.class.clone(),
        radius,
        certified: best.exact,
    })
}

/// Both sides of the bracket.
pub fn lip_estimate(phi: &OuterAuto<'_>, radius: usize, ctx: &DehnContext) -> Result<LipEstimate> {
    let mut est = lip_lower(phi, radius, ctx)?;
    est.upper = lip_upper(phi)?;
    Ok(est)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::Presentation;
    use crate::rips::{rips_presentation, RipsMode, RipsOutput, RipsScheme};

    fn rips(k: u32) -> RipsOutput {
        let q = Presentation::parse("gens a b ; rel [a,[a,b]] ; rel [b,[a,b]]").unwrap();
        rips_presentation(&q, RipsScheme::complete(k).unwrap()).unwrap()
    }

    #[test]
    fn identity_is_zero() {
        let r = rips(10);
        let ctx = DehnContext::new(r.g_presentation().clone());
        let id = r.outer(Word::empty()).unwrap();
        let e = lip_estimate(&id, 3, &ctx).unwrap();
        assert_eq!(e.lower, 0.0);
        assert_eq!(e.upper, 0.0);
        assert!(lip_lower(&id, 0, &ctx).is_err());
    }

    #[test]
    fn single_letter() {
        let r = rips(10);
        let ctx = DehnContext::new(r.g_presentation().clone());
        let a = r.outer(r.g_presentation().parse_word("a").unwrap()).unwrap();
        let ratios = class_ratios(&a, 1, &ctx).unwrap();
        let x = ratios.iter().find(|c| c.class.as_word() == Word::letter(r.x())).unwrap();
        assert!((x.ln_ratio - 155f64.ln()).abs() < 1e-12);
        assert!(!x.exact);
        let e = lip_estimate(&a, 1, &ctx).unwrap();
        // the y-rule of a has length 355
        assert!((e.lower - 355f64.ln()).abs() < 1e-12);
        assert!((e.upper - 355f64.ln()).abs() < 1e-12);
        assert!(!e.certified);
    }

    #[test]
    fn upper_is_additive_over_letters() {
        let r = rips(10);
        let g = r.g_presentation();
        let up = |s: &str| lip_upper(&r.outer(g.parse_word(s).unwrap()).unwrap()).unwrap();
        assert!((up("a b") - up("a") - up("b")).abs() < 1e-9);
        assert!((up("a^-1 b a") - (up("a^-1") + up("b") + up("a"))).abs() < 1e-9);
        let x_only = rips_presentation(r.q_presentation(), RipsScheme::new(10, RipsMode::XOnly).unwrap()).unwrap();
        assert!(lip_upper(&x_only.outer(g.parse_word("a").unwrap()).unwrap()).is_err());
    }
}
