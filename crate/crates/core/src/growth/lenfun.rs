use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::stream_rng;

/// Length functions `L : Z -> N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LengthKind {
    /// `ceil(|n|^(num/den))`, `0 < num <= den`.
    Power { num: u32, den: u32 },
    /// `ceil(log2(1 + |n|))`.
    Logarithmic,
    /// `values[|n|]`, defined for `|n| < values.len()`.
    Table(Vec<u64>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LengthFunctionZ {
    kind: LengthKind,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl LengthFunctionZ {
    pub fn power(num: u32, den: u32) -> Result<Self> {
        if num == 0 || den == 0 || num > den {
            return Err(Error::Parameter(format!("exponent {num}/{den} must lie in (0, 1]")));
        }
        let g = gcd(num as u64, den as u64) as u32;
        Ok(LengthFunctionZ { kind: LengthKind::Power { num: num / g, den: den / g } })
    }

    /// Parses `0.5`, `1/3` or `1` into an exact exponent.
    pub fn power_from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parameter(format!("cannot read exponent `{s}`"));
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            return Self::power(n.trim().parse().map_err(|_| bad())?, d.trim().parse().map_err(|_| bad())?);
        }
        let (int, frac) = s.split_once('.').unwrap_or((s, ""));
        if frac.len() > 6 || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let den = 10u32.pow(frac.len() as u32);
        let int: u32 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
        let frac_v: u32 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
        Self::power(int * den + frac_v, den)
    }

    pub fn logarithmic() -> Self {
        LengthFunctionZ { kind: LengthKind::Logarithmic }
    }

    pub fn table(values: Vec<u64>) -> Self {
        LengthFunctionZ { kind: LengthKind::Table(values) }
    }

    fn table_len(&self) -> usize {
        match &self.kind {
            LengthKind::Table(v) => v.len(),
            _ => 0,
        }
    }

    pub fn kind(&self) -> &LengthKind {
        &self.kind
    }

    pub fn eval(&self, n: i64) -> Result<u64> {
        let a = n.unsigned_abs();
        match &self.kind {
            LengthKind::Power { num, den } => {
                if a == 0 {
                    return Ok(0);
                }
                // smallest m with m^den >= a^num
                let target = BigUint::from(a).pow(*num);
                let guess = (a as f64).powf(*num as f64 / *den as f64).ceil() as u64;
                let mut m = guess.saturating_sub(1).max(1);
                while BigUint::from(m).pow(*den) < target {
                    m += 1;
                }
                while m > 1 && BigUint::from(m - 1).pow(*den) >= target {
                    m -= 1;
                }
                Ok(m)
            }
            // ceil(log2(1 + a)) is the bit length of a
            LengthKind::Logarithmic => Ok(64 - a.leading_zeros() as u64),
            LengthKind::Table(v) => v.get(a as usize).copied().ok_or(Error::Domain(n)),
        }
    }

    /// `|{n : L(n) <= r}|` via monotone inversion, with a flag telling
    /// whether the count is exact. Tables only give a lower bound when the
    /// ball reaches their last entry.
    fn ball_count(&self, r: u64) -> (BigUint, bool) {
        match &self.kind {
            LengthKind::Power { num, den } => {
                // L(n) <= r  iff  |n|^num <= r^den
                let root = BigUint::from(r).pow(*den).nth_root(*num);
                (root * 2u32 + 1u32, true)
            }
            LengthKind::Logarithmic => ((BigUint::one() << (r + 1)) - 1u32, true),
            LengthKind::Table(v) => {
                let c: u64 = v.iter().enumerate().filter(|&(_, &x)| x <= r).map(|(i, _)| if i == 0 { 1 } else { 2 }).sum();
                (BigUint::from(c), v.last().is_some_and(|&x| x > r))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AxiomResult {
    pub axiom: u8,
    pub pass: bool,
    /// Offending arguments, if any.
    pub witness: Option<Vec<i64>>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LengthFunctionReport {
    pub function: String,
    pub lambda: f64,
    pub r_max: u64,
    pub axioms: Vec<AxiomResult>,
    pub pass: bool,
}

impl std::fmt::Display for LengthFunctionZ {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.kind {
            LengthKind::Power { num, den } => write!(f, "ceil(|n|^({num}/{den}))"),
            LengthKind::Logarithmic => write!(f, "ceil(log2(1+|n|))"),
            LengthKind::Table(v) => write!(f, "table[{}]", v.len()),
        }
    }
}

/// Checks the four axioms: `L(0) = 0` and `L(n) > 0` otherwise, symmetry
/// (both on `[-r_max^2, r_max^2]`), subadditivity on `sample_budget` seeded
/// pairs, and `|{n : L(n) <= r}| <= lambda^r` for `r <= r_max` by exact
/// counting.
pub fn check_length_function(
    l: &LengthFunctionZ,
    r_max: u64,
    lambda: f64,
    sample_budget: usize,
    seed: u64,
) -> Result<LengthFunctionReport> {
    if !(lambda > 1.0) {
        return Err(Error::Parameter(format!("lambda must exceed 1, got {lambda}")));
    }
    let span = (r_max * r_max) as i64;
    let mut axioms = Vec::new();

    let mut w1 = None;
    if l.eval(0)? != 0 {
        w1 = Some(0);
    } else {
        for a in 1..=span.max(1) {
            for n in [a, -a] {
                if l.eval(n)? == 0 {
                    w1 = Some(n);
                    break;
                }
            }
            if w1.is_some() {
                break;
            }
        }
    }
    axioms.push(AxiomResult {
        axiom: 1,
        pass: w1.is_none(),
        witness: w1.map(|n| vec![n]),
        detail: "L(0) = 0 and L(n) > 0 for n != 0".into(),
    });

    let mut w2 = None;
    for n in 1..=span {
        if l.eval(n)? != l.eval(-n)? {
            w2 = Some(n);
            break;
        }
    }
    axioms.push(AxiomResult {
        axiom: 2,
        pass: w2.is_none(),
        witness: w2.map(|n| vec![n, -n]),
        detail: "L(n) = L(-n)".into(),
    });

    let mut rng = stream_rng(seed, "lenfun");
    let mut w3 = None;
    for _ in 0..sample_budget {
        // both summands and the sum stay in [-span, span]
        let h1 = rng.gen_range(-span..=span);
        let h2 = rng.gen_range((-span).max(-span - h1)..=span.min(span - h1));
        if l.eval(h1 + h2)? > l.eval(h1)? + l.eval(h2)? {
            w3 = Some(vec![h1, h2]);
            break;
        }
    }
    axioms.push(AxiomResult {
        axiom: 3,
        pass: w3.is_none(),
        witness: w3,
        detail: format!("L(h1 + h2) <= L(h1) + L(h2) on {sample_budget} seeded pairs"),
    });

    let mut w4 = None;
    let mut detail = String::from("|{n : L(n) <= r}| <= lambda^r, exact counts");
    for r in 0..=r_max {
        let (count, exact) = l.ball_count(r);
        let bound = lambda.powi(r as i32);
        let c = count.to_f64().unwrap_or(f64::INFINITY);
        if !exact && c <= bound {
            return Err(Error::Domain(l.table_len() as i64));
        }
        if c > bound {
            detail = format!("r = {r}: {count} elements > lambda^r = {bound}");
            w4 = Some(vec![r as i64]);
            break;
        }
    }
    axioms.push(AxiomResult { axiom: 4, pass: w4.is_none(), witness: w4, detail });

    let pass = axioms.iter().all(|a| a.pass);
    Ok(LengthFunctionReport { function: l.to_string(), lambda, r_max, axioms, pass })
}
