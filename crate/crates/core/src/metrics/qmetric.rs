//! Word-length oracles for the quotient `Q`.

use std::collections::HashSet;

use crate::dehn::DehnContext;
use crate::error::{Error, Result};
use crate::presentations::Presentation;
use crate::words::{for_each_reduced_word, CyclicWord, Letter, Word};

use super::heisenberg::{heisenberg_eval, HeisenbergOracle};

/// `|w|_Q` and a geodesic representative.
pub trait QMetric: Send + Sync {
    fn length(&self, w: &Word) -> Result<usize>;
    fn geodesic(&self, w: &Word) -> Result<Word>;
    /// Short backing tag for reports.
    fn backing(&self) -> &'static str;
}

pub fn q_geodesic(oracle: &dyn QMetric, w: &Word) -> Result<Word> {
    oracle.geodesic(w)
}

/// Free group: the freely reduced word is the geodesic.
#[derive(Clone, Copy, Debug, Default)]
pub struct FreeMetric;

impl QMetric for FreeMetric {
    fn length(&self, w: &Word) -> Result<usize> {
        Ok(w.len())
    }
    fn geodesic(&self, w: &Word) -> Result<Word> {
        Ok(w.clone())
    }
    fn backing(&self) -> &'static str {
        "free"
    }
}

/// Exact metric of the Heisenberg group on generators `a`, `b`.
#[derive(Clone, Debug)]
pub struct HeisenbergMetric {
    oracle: HeisenbergOracle,
    a: u32,
    b: u32,
}

impl HeisenbergMetric {
    pub fn new(radius: u32, a: u32, b: u32) -> Result<Self> {
        Ok(HeisenbergMetric { oracle: HeisenbergOracle::new(radius)?, a, b })
    }

    pub fn oracle(&self) -> &HeisenbergOracle {
        &self.oracle
    }

    /// Generators `(a, b)` if `q` presents the Heisenberg group as
    /// `<a, b | [a,[a,b]], [b,[a,b]]>`, relators compared up to rotation and
    /// inversion.
    pub fn detect(q: &Presentation) -> Option<(u32, u32)> {
        if q.alphabet().len() != 2 || q.relators().len() != 2 {
            return None;
        }
        let key = |w: &CyclicWord| {
            let (c, i) = (w.canonical(), w.inverse().canonical());
            if c <= i {
                c
            } else {
                i
            }
        };
        // generators in alphabet order play a, b
        let (a, b) = (Word::letter(Letter::positive(0)), Word::letter(Letter::positive(1)));
        let z = Word::commutator(&a, &b);
        let want: HashSet<Word> = [
            key(&CyclicWord::new(&Word::commutator(&a, &z))),
            key(&CyclicWord::new(&Word::commutator(&b, &z))),
        ]
        .into();
        let have: HashSet<Word> = q.relators().iter().map(key).collect();
        (have == want).then_some((0, 1))
    }
}

impl QMetric for HeisenbergMetric {
    fn length(&self, w: &Word) -> Result<usize> {
        Ok(self.oracle.length(heisenberg_eval(w, self.a, self.b)?)? as usize)
    }
    fn geodesic(&self, w: &Word) -> Result<Word> {
        self.oracle.geodesic(heisenberg_eval(w, self.a, self.b)?, self.a, self.b)
    }
    fn backing(&self) -> &'static str {
        "heisenberg-bfs"
    }
}

/// Shortest word equal to `w` under Dehn's algorithm, found by enumeration.
/// Exact only for C'(1/6) presentations, which is all it accepts.
#[derive(Clone, Debug)]
pub struct DehnBallMetric {
    ctx: DehnContext,
    radius: usize,
}

impl DehnBallMetric {
    pub fn new(q: Presentation, radius: usize) -> Result<Self> {
        let ctx = DehnContext::new(q);
        if !ctx.sc_verified() {
            return Err(Error::UnsupportedContext(
                "Q is neither free, Heisenberg, nor C'(1/6); no word-length oracle available".into(),
            ));
        }
        Ok(DehnBallMetric { ctx, radius })
    }
}

impl QMetric for DehnBallMetric {
    fn length(&self, w: &Word) -> Result<usize> {
        Ok(self.geodesic(w)?.len())
    }
    fn geodesic(&self, w: &Word) -> Result<Word> {
        let gens: Vec<u32> = (0..self.ctx.presentation().alphabet().len() as u32).collect();
        let target = self.ctx.dehn_reduce(w);
        let mut found = None;
        for_each_reduced_word(&gens, self.radius.min(target.len()), |v| {
            let v = Word::from_letters(v.iter().copied());
            if self.ctx.proves_equal(&v, &target) {
                found = Some(v);
                false
            } else {
                true
            }
        });
        // the Dehn-reduced word itself is a fallback only when within radius
        match found {
            Some(v) => Ok(v),
            None if target.len() <= self.radius => Ok(target),
            None => Err(Error::RadiusExceeded { cap: self.radius as u32 }),
        }
    }
    fn backing(&self) -> &'static str {
        "dehn-ball"
    }
}

/// Picks the exact oracle for `q`: free, Heisenberg, or Dehn enumeration.
pub fn metric_for(q: &Presentation, radius: u32) -> Result<Box<dyn QMetric>> {
    if q.relators().is_empty() {
        return Ok(Box::new(FreeMetric));
    }
    if let Some((a, b)) = HeisenbergMetric::detect(q) {
        return Ok(Box::new(HeisenbergMetric::new(radius, a, b)?));
    }
    Ok(Box::new(DehnBallMetric::new(q.clone(), radius as usize)?))
}
