use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    Dominates,
    Equivalent,
    Fails,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counterexample {
    pub n: i64,
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EquivalenceReport {
    pub relation: Relation,
    pub constant_c: Option<u64>,
    pub counterexample: Option<Counterexample>,
    /// `(min n, max n, number of points)`.
    pub domain: (i64, i64, usize),
}

impl EquivalenceReport {
    pub fn holds(&self) -> bool {
        self.relation != Relation::Fails
    }
}

// Absorbs rounding in the last printed digit of logged quantities.
fn within(lhs: f64, rhs: f64) -> bool {
    lhs <= rhs + 1e-9 * (1.0 + lhs.abs())
}

fn holds_with(vals: &[(i64, f64, f64)], c: u64) -> bool {
    let c = c as f64;
    vals.iter().all(|&(_, f, g)| within(f, c * g + c))
}

fn domain_of(domain: &[i64]) -> Result<(i64, i64, usize)> {
    let lo = *domain.iter().min().ok_or(Error::EmptyDomain)?;
    let hi = *domain.iter().max().unwrap();
    Ok((lo, hi, domain.len()))
}

/// Smallest integer `C` in `[1, c_max]` with `f(n) <= C g(n) + C` on the
/// domain, by doubling then bisection. On failure the counterexample is the
/// `n` with the largest violation at `C = c_max`. Assumes `g >= -1`, which
/// makes the predicate monotone in `C`.
pub fn dominates(
    f: impl Fn(i64) -> f64,
    g: impl Fn(i64) -> f64,
    domain: &[i64],
    c_max: u64,
) -> Result<EquivalenceReport> {
    let dom = domain_of(domain)?;
    let vals: Vec<(i64, f64, f64)> = domain.iter().map(|&n| (n, f(n), g(n))).collect();
    let c_max = c_max.max(1);
    if !holds_with(&vals, c_max) {
        let cm = c_max as f64;
        let worst = vals
            .iter()
            .max_by(|a, b| (a.1 - cm * a.2 - cm).total_cmp(&(b.1 - cm * b.2 - cm)).then(b.0.cmp(&a.0)))
            .unwrap();
        return Ok(EquivalenceReport {
            relation: Relation::Fails,
            constant_c: None,
            counterexample: Some(Counterexample { n: worst.0, lhs: worst.1, rhs: cm * worst.2 + cm }),
            domain: dom,
        });
    }
    // doubling
    let (mut lo, mut hi) = (0u64, 1u64);
    while hi < c_max && !holds_with(&vals, hi) {
        lo = hi;
        hi = (hi * 2).min(c_max);
    }
    // invariant: fails at lo (or lo = 0), holds at hi
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if holds_with(&vals, mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(EquivalenceReport { relation: Relation::Dominates, constant_c: Some(hi), counterexample: None, domain: dom })
}

/// Both directions of [`dominates`]; the reported constant is the larger.
pub fn equivalent(
    f: impl Fn(i64) -> f64,
    g: impl Fn(i64) -> f64,
    domain: &[i64],
    c_max: u64,
) -> Result<EquivalenceReport> {
    let fg = dominates(&f, &g, domain, c_max)?;
    if !fg.holds() {
        return Ok(fg);
    }
    let gf = dominates(&g, &f, domain, c_max)?;
    if !gf.holds() {
        return Ok(gf);
    }
    Ok(EquivalenceReport {
        relation: Relation::Equivalent,
        constant_c: fg.constant_c.max(gf.constant_c),
        counterexample: None,
        domain: fg.domain,
    })
}
