//! Rips construction over a presentation of `Q`, its conjugation rules and the
//! induced action `Q -> Out(N)` on words in `N = <x, y>`.
//!
//! Relation `j` (1-based, emission order) has right-hand side
//! `x y^{jk} x y^{jk+1} ... x y^{(j+1)k-1}`: exactly `k` letters `x` and the
//! y-exponent block `[jk, (j+1)k)`.

use num_bigint::BigUint;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::ln_biguint;
use crate::presentations::Presentation;
use crate::words::{free_reduce, Alphabet, Letter, Word};

/// Materialization cap for [`OuterAuto::apply`], in letters before reduction.
pub const DEFAULT_MATERIALIZE_BUDGET: usize = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RipsMode {
    /// Only the x-conjugation relations, as displayed for the Heisenberg example.
    #[serde(rename = "paper")]
    XOnly,
    /// Adds y-conjugation relations so every `(s^±1, x|y)` pair has a rule.
    Complete,
}

impl std::str::FromStr for RipsMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" => Ok(RipsMode::XOnly),
            "complete" => Ok(RipsMode::Complete),
            _ => Err(Error::Parameter(format!("mode must be `paper` or `complete`, got `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RipsScheme {
    pub k: u32,
    pub mode: RipsMode,
}

impl RipsScheme {
    pub fn new(k: u32, mode: RipsMode) -> Result<Self> {
        if k == 0 {
            return Err(Error::Parameter("k must be at least 1".into()));
        }
        Ok(RipsScheme { k, mode })
    }

    pub fn complete(k: u32) -> Result<Self> {
        Self::new(k, RipsMode::Complete)
    }

    /// Emitted length of relation `j`'s right-hand side.
    pub fn rhs_length(&self, j: u64) -> u64 {
        let k = self.k as u64;
        k + j * k * k + k * (k - 1) / 2
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum RelationKind {
    /// `s^sign ℓ s^-sign = RHS`.
    Conjugation { generator: u32, inverse: bool, target: u32 },
    /// `ρ = RHS` for relator `ρ` of `Q`.
    Relator { relator: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockEntry {
    pub relation_id: usize,
    pub block_start: u64,
    pub block_end: u64,
    pub relation: RelationKind,
}

/// Presentation of `G`, conjugation rules and the block layout.
#[derive(Clone, Debug)]
pub struct RipsOutput {
    q: Presentation,
    scheme: RipsScheme,
    g: Presentation,
    /// Right-hand side of each relation in emission order.
    rhs: Vec<Word>,
    blocks: Vec<BlockEntry>,
    /// `rules[2 * s + inverse][t]` indexes `rhs`, `t = 0` for x, `1` for y.
    rules: Vec<[Option<usize>; 2]>,
}

fn block_rhs(k: u32, j: u64, x: Letter, y: Letter) -> Word {
    let k64 = k as u64;
    let mut letters = Vec::new();
    for e in j * k64..(j + 1) * k64 {
        letters.push(x);
        letters.extend(std::iter::repeat(y).take(e as usize));
    }
    Word::from_letters(letters)
}

pub fn rips_presentation(q: &Presentation, scheme: RipsScheme) -> Result<RipsOutput> {
    if scheme.k == 0 {
        return Err(Error::Parameter("k must be at least 1".into()));
    }
    let nq = q.alphabet().len() as u32;
    let mut alphabet: Alphabet = q.alphabet().clone();
    let xg = alphabet
        .push("x")
        .map_err(|_| Error::Parameter("Q already uses the generator name `x`".into()))?;
    let yg = alphabet
        .push("y")
        .map_err(|_| Error::Parameter("Q already uses the generator name `y`".into()))?;
    let (x, y) = (Letter::positive(xg), Letter::positive(yg));

    let mut lhs: Vec<Word> = Vec::new();
    let mut kinds = Vec::new();
    let mut rules = vec![[None, None]; 2 * nq as usize];
    let targets: &[u32] = match scheme.mode {
        RipsMode::XOnly => &[0],
        RipsMode::Complete => &[0, 1],
    };
    for s in 0..nq {
        for &t in targets {
            for inverse in [false, true] {
                let sl = Word::letter(Letter::new(s, inverse));
                let tl = Word::letter(if t == 0 { x } else { y });
                rules[2 * s as usize + inverse as usize][t as usize] = Some(lhs.len());
                lhs.push(tl.conjugate_by(&sl));
                kinds.push(RelationKind::Conjugation { generator: s, inverse, target: t });
            }
        }
    }
    for (i, r) in q.relator_words().iter().enumerate() {
        lhs.push(r.clone());
        kinds.push(RelationKind::Relator { relator: i });
    }

    let k = scheme.k as u64;
    let mut rhs = Vec::with_capacity(lhs.len());
    let mut relators = Vec::with_capacity(lhs.len());
    let mut blocks = Vec::with_capacity(lhs.len());
    for (idx, (l, kind)) in lhs.iter().zip(kinds).enumerate() {
        let j = idx as u64 + 1;
        let w = block_rhs(scheme.k, j, x, y);
        relators.push(l.concat(&w.inverse()));
        rhs.push(w);
        blocks.push(BlockEntry { relation_id: idx + 1, block_start: j * k, block_end: (j + 1) * k, relation: kind });
    }
    let g = Presentation::new(alphabet, relators)?;
    Ok(RipsOutput { q: q.clone(), scheme, g, rhs, blocks, rules })
}

impl RipsOutput {
    pub fn q_presentation(&self) -> &Presentation {
        &self.q
    }

    pub fn g_presentation(&self) -> &Presentation {
        &self.g
    }

    pub fn scheme(&self) -> RipsScheme {
        self.scheme
    }

    pub fn block_table(&self) -> &[BlockEntry] {
        &self.blocks
    }

    /// Right-hand side of relation `id` (1-based).
    pub fn relation_rhs(&self, id: usize) -> &Word {
        &self.rhs[id - 1]
    }

    /// `W_ρ`: the element of `N` equal to relator `i` of `Q` in `G`.
    pub fn relator_rhs(&self, i: usize) -> &Word {
        let nconj = self.blocks.len() - self.q.relators().len();
        &self.rhs[nconj + i]
    }

    pub fn x(&self) -> Letter {
        Letter::positive(self.q.alphabet().len() as u32)
    }

    pub fn y(&self) -> Letter {
        Letter::positive(self.q.alphabet().len() as u32 + 1)
    }

    pub fn is_n_letter(&self, l: Letter) -> bool {
        l.generator() >= self.q.alphabet().len() as u32
    }

    pub fn is_n_word(&self, w: &Word) -> bool {
        w.letters().iter().all(|&l| self.is_n_letter(l))
    }

    /// The literal element of `G` given by a word over `Q`'s generators.
    pub fn lift(&self, q_word: &Word) -> Word {
        q_word.clone()
    }

    fn rule_index(&self, s: Letter, l: Letter) -> Result<usize> {
        if s.generator() as usize >= self.q.alphabet().len() {
            return Err(Error::Alphabet(format!("letter {s:?} is not a generator of Q")));
        }
        if !self.is_n_letter(l) {
            return Err(Error::Alphabet(format!("letter {l:?} is not x or y")));
        }
        let t = (l.generator() - self.q.alphabet().len() as u32) as usize;
        self.rules[2 * s.generator() as usize + s.is_inverse() as usize][t].ok_or_else(|| {
            Error::Coverage(self.q.alphabet().format_letters(&[s]), self.g.alphabet().format_letters(&[l]))
        })
    }

    /// Rewriting of `s ℓ s^-1` inside `N`.
    pub fn conjugation_rule(&self, s: Letter, l: Letter) -> Result<Word> {
        let w = &self.rhs[self.rule_index(s, l)?];
        Ok(if l.is_inverse() { w.inverse() } else { w.clone() })
    }

    /// Length of the longest rule for conjugation by `s`.
    pub fn max_rule_len(&self, s: Letter) -> Result<usize> {
        let (x, y) = (self.x(), self.y());
        let mut best = 0;
        for l in [x, y] {
            best = best.max(self.rhs[self.rule_index(s, l)?].len());
        }
        Ok(best)
    }

    /// Longest conjugation rule over all of `Q`'s letters.
    pub fn max_conjugation_rule_len(&self) -> Result<usize> {
        let mut best = 0;
        for g in 0..self.q.alphabet().len() as u32 {
            for s in [Letter::positive(g), Letter::negative(g)] {
                best = best.max(self.max_rule_len(s)?);
            }
        }
        Ok(best)
    }

    /// 4x4 count matrix for conjugation by `s`, basis `x, x^-1, y, y^-1`;
    /// column `c` counts the letters of the image of basis letter `c`.
    pub fn count_matrix(&self, s: Letter) -> Result<[[u64; 4]; 4]> {
        let mut m = [[0u64; 4]; 4];
        for c in 0..4 {
            let img = self.conjugation_rule(s, self.basis_letter(c))?;
            for &l in img.letters() {
                m[self.basis_index(l)][c] += 1;
            }
        }
        Ok(m)
    }

    fn basis_letter(&self, c: usize) -> Letter {
        let base = if c < 2 { self.x() } else { self.y() };
        if c % 2 == 1 {
            base.inverse()
        } else {
            base
        }
    }

    fn basis_index(&self, l: Letter) -> usize {
        2 * (l.generator() - self.q.alphabet().len() as u32) as usize + l.is_inverse() as usize
    }

    /// Letter counts of an N-word in the basis `x, x^-1, y, y^-1`.
    pub fn letter_counts(&self, w: &Word) -> Result<[BigUint; 4]> {
        let mut c = [0u64; 4];
        for &l in w.letters() {
            if !self.is_n_letter(l) {
                return Err(Error::Alphabet("word is not over {x, y}".into()));
            }
            c[self.basis_index(l)] += 1;
        }
        Ok(c.map(BigUint::from))
    }

    pub fn outer(&self, q_word: Word) -> Result<OuterAuto<'_>> {
        if !self.q.alphabet().contains_word(&q_word) {
            return Err(Error::Alphabet("q-word is not over the generators of Q".into()));
        }
        Ok(OuterAuto { q_word, rips: self })
    }
}

/// `Φ = χ(q)`: conjugation of `N` by the lift of `q_word`.
#[derive(Clone, Debug)]
pub struct OuterAuto<'a> {
    q_word: Word,
    rips: &'a RipsOutput,
}

/// An image split as `outer · inner · outer^-1`, with `inner` materialized
/// over `{x, y}` and `outer` the unapplied prefix of the q-word.
#[derive(Clone, Debug)]
pub struct StagedImage {
    pub outer: Word,
    pub inner: Word,
}

impl StagedImage {
    /// Literal word in `G`.
    pub fn to_g_word(&self) -> Word {
        self.inner.conjugate_by(&self.outer)
    }
}

impl<'a> OuterAuto<'a> {
    pub fn q_word(&self) -> &Word {
        &self.q_word
    }

    pub fn rips(&self) -> &'a RipsOutput {
        self.rips
    }

    fn check_n_word(&self, w: &Word) -> Result<()> {
        if self.rips.is_n_word(w) {
            Ok(())
        } else {
            Err(Error::Alphabet("automorphism argument must be a word over {x, y}".into()))
        }
    }

    fn pass(&self, s: Letter, w: &Word, budget: usize) -> Result<Word> {
        let mut images: [Option<Word>; 4] = Default::default();
        let mut raw_len = 0usize;
        for &l in w.letters() {
            let i = self.rips.basis_index(l);
            if images[i].is_none() {
                images[i] = Some(self.rips.conjugation_rule(s, l)?);
            }
            raw_len = raw_len.saturating_add(images[i].as_ref().unwrap().len());
        }
        if raw_len > budget {
            return Err(Error::Resource(format!(
                "materialized image needs {raw_len} letters, budget is {budget}; use apply_outer_counts for a length bound"
            )));
        }
        let mut raw = Vec::with_capacity(raw_len);
        for &l in w.letters() {
            raw.extend_from_slice(images[self.rips.basis_index(l)].as_ref().unwrap().letters());
        }
        Ok(free_reduce(&raw))
    }

    /// Letter-by-letter image of `w`, conjugating by the last letter of the
    /// q-word first and freely reducing after each pass.
    pub fn apply(&self, w: &Word) -> Result<Word> {
        self.apply_with_budget(w, DEFAULT_MATERIALIZE_BUDGET)
    }

    pub fn apply_with_budget(&self, w: &Word, budget: usize) -> Result<Word> {
        self.check_n_word(w)?;
        let mut cur = w.clone();
        for &s in self.q_word.letters().iter().rev() {
            cur = self.pass(s, &cur, budget)?;
        }
        Ok(cur)
    }

    /// Applies the longest suffix of the q-word that fits `budget` and keeps
    /// the rest as a literal conjugator. Equal in `G` to the full image.
    pub fn apply_staged(&self, w: &Word, budget: usize) -> Result<StagedImage> {
        self.check_n_word(w)?;
        let letters = self.q_word.letters();
        let mut cur = w.clone();
        let mut split = letters.len();
        while split > 0 {
            match self.pass(letters[split - 1], &cur, budget) {
                Ok(next) => {
                    cur = next;
                    split -= 1;
                }
                Err(Error::Resource(_)) => break,
                Err(e) => return Err(e),
            }
        }
        Ok(StagedImage { outer: Word::from_letters(letters[..split].iter().copied()), inner: cur })
    }

    /// Image of a letter-count vector (basis `x, x^-1, y, y^-1`) with no
    /// cancellation: an upper bound on the materialized image's length.
    pub fn apply_counts(&self, counts: &[BigUint; 4]) -> Result<[BigUint; 4]> {
        let mut cur = counts.clone();
        for &s in self.q_word.letters().iter().rev() {
            let m = self.rips.count_matrix(s)?;
            let mut next: [BigUint; 4] = Default::default();
            for (r, row) in m.iter().enumerate() {
                let mut acc = BigUint::zero();
                for (c, &v) in row.iter().enumerate() {
                    if v != 0 && !cur[c].is_zero() {
                        acc += &cur[c] * v;
                    }
                }
                next[r] = acc;
            }
            cur = next;
        }
        Ok(cur)
    }
}

pub fn counts_total(c: &[BigUint; 4]) -> BigUint {
    c.iter().sum()
}

pub fn ln_counts_total(c: &[BigUint; 4]) -> f64 {
    ln_biguint(&counts_total(c))
}
