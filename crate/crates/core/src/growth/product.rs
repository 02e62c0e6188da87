use std::sync::{Arc, Mutex};

use num_bigint::BigUint;
use num_traits::Zero;
use rand::Rng;

use crate::error::{Error, Result};
use crate::metrics::{n_norm_upper, NormMode, QMetric};
use crate::numeric::{ln_biguint, stream_rng};
use crate::rips::RipsOutput;
use crate::words::{cyclic_reduce, CyclicWord, Letter, Word};

use super::curve::{CurveMeta, GrowthCurve, GrowthSample};

/// One direct factor `N_i` with its automorphism `φ_i`.
pub trait Factor: Send + Sync {
    fn name(&self) -> String;
    /// Conjugacy norm (or its upper bound) of `g`.
    fn norm(&self, g: &Word) -> Result<BigUint>;
    /// Conjugacy norm (or its upper bound) of `φ^n(g)`.
    fn power_norm(&self, g: &Word, n: u32) -> Result<BigUint>;
}

/// Free group of rank `r` on generators `0..r` with an automorphism given
/// by generator images. Powers are composed once and memoized.
pub struct FreeFactor {
    rank: u32,
    images: Vec<Word>,
    powers: Mutex<Vec<Vec<Word>>>,
}

impl FreeFactor {
    pub fn new(rank: u32, images: Vec<Word>) -> Result<Self> {
        if images.len() != rank as usize {
            return Err(Error::ArityMismatch { expected: rank as usize, got: images.len() });
        }
        if images.iter().any(|w| w.max_generator().is_some_and(|g| g >= rank)) {
            return Err(Error::Alphabet("automorphism image leaves the factor".into()));
        }
        let identity: Vec<Word> = (0..rank).map(|g| Word::letter(Letter::positive(g))).collect();
        Ok(FreeFactor { rank, images, powers: Mutex::new(vec![identity]) })
    }

    /// Composition of `moves` seeded Nielsen moves `s_i -> s_i s_j^±1` or
    /// `s_i -> s_j^±1 s_i`, which are automorphisms of the free group.
    pub fn random_nielsen(rank: u32, moves: usize, seed: u64, stream: &str) -> Result<Self> {
        if rank < 2 {
            return Err(Error::Parameter("Nielsen moves need rank at least 2".into()));
        }
        let mut rng = stream_rng(seed, stream);
        let mut images: Vec<Word> = (0..rank).map(|g| Word::letter(Letter::positive(g))).collect();
        for _ in 0..moves {
            let i = rng.gen_range(0..rank) as usize;
            let mut j = rng.gen_range(0..rank - 1) as usize;
            if j >= i {
                j += 1;
            }
            let sj = if rng.gen_bool(0.5) { images[j].clone() } else { images[j].inverse() };
            images[i] = if rng.gen_bool(0.5) { images[i].concat(&sj) } else { sj.concat(&images[i]) };
        }
        Self::new(rank, images)
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    fn substitute(images: &[Word], w: &Word) -> Word {
        let raw: Vec<Letter> = w
            .letters()
            .iter()
            .flat_map(|l| {
                let img = &images[l.generator() as usize];
                if l.is_inverse() {
                    img.inverse().into_letters()
                } else {
                    img.letters().to_vec()
                }
            })
            .collect();
        Word::from_letters(raw)
    }

    /// `φ^n(g)`, freely reduced.
    pub fn apply_power(&self, g: &Word, n: u32) -> Word {
        let mut memo = self.powers.lock().unwrap();
        while memo.len() <= n as usize {
            let last = memo.last().unwrap();
            // φ^{m+1}(s) = φ^m(φ(s))
            let next: Vec<Word> = self.images.iter().map(|img| Self::substitute(last, img)).collect();
            memo.push(next);
        }
        Self::substitute(&memo[n as usize], g)
    }
}

impl Factor for FreeFactor {
    fn name(&self) -> String {
        format!("free(rank {})", self.rank)
    }
    fn norm(&self, g: &Word) -> Result<BigUint> {
        Ok(BigUint::from(cyclic_reduce(g).0.len()))
    }
    fn power_norm(&self, g: &Word, n: u32) -> Result<BigUint> {
        self.norm(&self.apply_power(g, n))
    }
}

/// `N` of a Rips construction with `Φ = χ(q)`; norms are count-matrix
/// upper bounds along geodesic representatives of `q^n`.
pub struct RipsFactor {
    rips: Arc<RipsOutput>,
    q_word: Word,
    metric: Arc<dyn QMetric>,
}

impl RipsFactor {
    pub fn new(rips: Arc<RipsOutput>, q_word: Word, metric: Arc<dyn QMetric>) -> Self {
        RipsFactor { rips, q_word, metric }
    }
}

impl Factor for RipsFactor {
    fn name(&self) -> String {
        format!("rips(k={}, q={})", self.rips.scheme().k, self.rips.g_presentation().format_word(&self.q_word))
    }
    fn norm(&self, g: &Word) -> Result<BigUint> {
        self.power_norm(g, 0)
    }
    fn power_norm(&self, g: &Word, n: u32) -> Result<BigUint> {
        let c = CyclicWord::new(g);
        if c.is_empty() {
            return Ok(BigUint::zero());
        }
        let est = n_norm_upper(&self.rips, &self.q_word, &c, n as i64, self.metric.as_ref(), NormMode::Counts)?;
        Ok(est.upper)
    }
}

/// `N_1 x ... x N_m` with generating set the disjoint union of the factors'
/// generating sets; components are words over each factor's own alphabet.
pub struct ProductGroup {
    factors: Vec<Box<dyn Factor>>,
}

impl ProductGroup {
    pub fn new(factors: Vec<Box<dyn Factor>>) -> Self {
        ProductGroup { factors }
    }

    pub fn factors(&self) -> &[Box<dyn Factor>] {
        &self.factors
    }

    fn check_arity(&self, g: &[Word]) -> Result<()> {
        if g.len() != self.factors.len() {
            return Err(Error::ArityMismatch { expected: self.factors.len(), got: g.len() });
        }
        Ok(())
    }

    /// `||g|| = Σ ||g_i||`.
    pub fn product_norm(&self, g: &[Word]) -> Result<BigUint> {
        self.check_arity(g)?;
        let mut total = BigUint::zero();
        for (f, gi) in self.factors.iter().zip(g) {
            total += f.norm(gi)?;
        }
        Ok(total)
    }

    /// `||φ^n(g)|| = Σ ||φ_i^n(g_i)||`.
    pub fn power_norm(&self, g: &[Word], n: u32) -> Result<BigUint> {
        self.check_arity(g)?;
        let mut total = BigUint::zero();
        for (f, gi) in self.factors.iter().zip(g) {
            if !gi.is_empty() {
                total += f.power_norm(gi, n)?;
            }
        }
        Ok(total)
    }

    pub fn product_growth_curve(&self, g: &[Word], ns: &[u32]) -> Result<GrowthCurve> {
        self.check_arity(g)?;
        let support: Vec<usize> = g.iter().enumerate().filter(|(_, w)| !CyclicWord::new(w).is_empty()).map(|(i, _)| i).collect();
        let meta = CurveMeta {
            phi: self.factors.iter().map(|f| f.name()).collect::<Vec<_>>().join(" x "),
            class: format!("{} components", g.len()),
            mode: "product".into(),
            degenerate: support.is_empty(),
            support,
        };
        let mut samples = Vec::with_capacity(ns.len());
        for &n in ns {
            let mut s = GrowthSample { n: n as i64, q_length: None, ln_upper: None, oracle_exact: None, gap: None };
            if meta.degenerate {
                s.gap = Some("trivial class: norm is 0".into());
            } else {
                s.ln_upper = Some(ln_biguint(&self.power_norm(g, n)?));
            }
            samples.push(s);
        }
        GrowthCurve::new(samples, meta)
    }
}

/// Growth curve of a single factor, for comparison with product curves.
pub fn factor_growth_curve(f: &dyn Factor, g: &Word, ns: &[u32]) -> Result<GrowthCurve> {
    if CyclicWord::new(g).is_empty() {
        return Err(Error::TrivialClass);
    }
    let mut samples = Vec::with_capacity(ns.len());
    for &n in ns {
        samples.push(GrowthSample {
            n: n as i64,
            q_length: None,
            ln_upper: Some(ln_biguint(&f.power_norm(g, n)?)),
            oracle_exact: None,
            gap: None,
        });
    }
    GrowthCurve::new(samples, CurveMeta { phi: f.name(), mode: "factor".into(), ..Default::default() })
}
