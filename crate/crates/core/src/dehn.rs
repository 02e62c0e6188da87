//! Dehn's algorithm over a symmetrized relator set.
//!
//! Reduction is sound in any presentation: every replacement multiplies by a
//! conjugate of a relator, so reaching the empty word proves triviality. The
//! converse (non-empty output means non-trivial) needs C'(1/6), which is why the
//! decision procedures refuse unverified contexts.

use crate::error::{Error, Result};
use crate::presentations::{check_with, one_sixth, Presentation, SymmetrizedSet};
use crate::words::{cyclic_reduce, for_each_reduced_word, rotate, CyclicWord, Letter, Word};

/// Largest conjugator radius accepted by [`DehnContext::are_conjugate_bounded`].
pub const DEFAULT_CONJUGATOR_BUDGET: usize = 8;

#[derive(Clone, Debug)]
pub struct DehnContext {
    presentation: Presentation,
    symmetrized: SymmetrizedSet,
    sc_verified: bool,
    conjugator_budget: usize,
}

impl DehnContext {
    pub fn new(presentation: Presentation) -> Self {
        let symmetrized = SymmetrizedSet::new(&presentation);
        let sc_verified = presentation.relators().is_empty()
            || check_with(&presentation, &symmetrized, one_sixth())
                .map(|r| r.passed())
                .unwrap_or(false);
        DehnContext { presentation, symmetrized, sc_verified, conjugator_budget: DEFAULT_CONJUGATOR_BUDGET }
    }

    pub fn with_conjugator_budget(mut self, budget: usize) -> Self {
        self.conjugator_budget = budget;
        self
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn symmetrized(&self) -> &SymmetrizedSet {
        &self.symmetrized
    }

    /// True iff the presentation satisfies C'(1/6).
    pub fn sc_verified(&self) -> bool {
        self.sc_verified
    }

    fn require_verified(&self) -> Result<()> {
        if self.sc_verified {
            Ok(())
        } else {
            Err(Error::UnsupportedContext(
                "presentation is not C'(1/6); Dehn's algorithm does not decide the word problem".into(),
            ))
        }
    }

    /// Longest member prefix at the start of `s` that exceeds half its member.
    /// Ties go to the lowest member index. Returns `(length, member index)`.
    fn find_match(&self, s: &[Letter]) -> Option<(usize, usize)> {
        let sym = &self.symmetrized;
        let k = sym.key_len();
        if s.len() < k || sym.is_empty() {
            return None;
        }
        let (lo, hi) = sym.key_range(&s[..k])?;
        let members = sym.members();
        let lcp = sym.adjacent_lcp();
        let q = &s[..s.len().min(sym.max_member_len())];
        let pos = lo + members[lo..hi].partition_point(|m| sym.member_letters(m) < q);

        let direct = |i: usize| -> usize {
            sym.member_letters(&members[i]).iter().zip(q).take_while(|(a, b)| a == b).count()
        };
        let mut best: Option<(usize, usize)> = None;
        let consider = |i: usize, common: usize, best: &mut Option<(usize, usize)>| {
            if common >= members[i].half() {
                let better = match *best {
                    None => true,
                    Some((bl, bi)) => common > bl || (common == bl && i < bi),
                };
                if better {
                    *best = Some((common, i));
                }
            }
        };
        // walk right
        if pos < hi {
            let mut cur = direct(pos);
            let mut i = pos;
            loop {
                consider(i, cur, &mut best);
                i += 1;
                if i >= hi {
                    break;
                }
                cur = cur.min(lcp[i - 1] as usize);
                if best.is_some_and(|(bl, _)| cur < bl) {
                    break;
                }
            }
        }
        // walk left
        if pos > lo {
            let mut i = pos - 1;
            let mut cur = direct(i);
            loop {
                consider(i, cur, &mut best);
                if i == lo {
                    break;
                }
                cur = cur.min(lcp[i - 1] as usize);
                i -= 1;
                if best.is_some_and(|(bl, _)| cur < bl) {
                    break;
                }
            }
        }
        best
    }

    /// Leftmost, then longest, then lowest-member replacement of a subword
    /// longer than half a relator by the inverse of the complementary part,
    /// repeated until no such subword remains.
    pub fn dehn_reduce(&self, w: &Word) -> Word {
        let sym = &self.symmetrized;
        if sym.is_empty() {
            return w.clone();
        }
        let rewind = sym.max_member_len().saturating_sub(1);
        // Gap buffer: scanned prefix is buf[..p], unscanned suffix buf[g..].
        let mut buf: Vec<Letter> = w.letters().to_vec();
        let (mut p, mut g) = (0usize, 0usize);
        while g < buf.len() {
            match self.find_match(&buf[g..]) {
                Some((len, idx)) => {
                    let m = sym.members()[idx];
                    let letters = sym.member_letters(&m);
                    let comp = m.len as usize - len;
                    let ng = g + len - comp;
                    for t in 0..comp {
                        buf[ng + t] = letters[m.len as usize - 1 - t].inverse();
                    }
                    g = ng;
                    while p > 0 && g < buf.len() && buf[p - 1] == buf[g].inverse() {
                        p -= 1;
                        g += 1;
                    }
                    for _ in 0..rewind.min(p) {
                        p -= 1;
                        g -= 1;
                        buf[g] = buf[p];
                    }
                }
                None => {
                    buf[p] = buf[g];
                    p += 1;
                    g += 1;
                }
            }
        }
        buf.truncate(p);
        Word::from_reduced_unchecked(buf)
    }

    /// Semi-decision valid in every presentation: `true` is a proof that
    /// `w = 1` in the group, `false` proves nothing unless C'(1/6) holds.
    pub fn proves_trivial(&self, w: &Word) -> bool {
        self.dehn_reduce(w).is_empty()
    }

    pub fn proves_equal(&self, u: &Word, v: &Word) -> bool {
        self.proves_trivial(&u.concat(&v.inverse()))
    }

    pub fn is_trivial(&self, w: &Word) -> Result<bool> {
        self.require_verified()?;
        Ok(self.proves_trivial(w))
    }

    pub fn are_equal(&self, u: &Word, v: &Word) -> Result<bool> {
        self.require_verified()?;
        Ok(self.proves_equal(u, v))
    }

    /// Shortened conjugacy representative, in canonical rotation.
    pub fn conjugacy_reduce(&self, w: &Word) -> CyclicWord {
        let (c, _) = self.conjugacy_reduce_with_witness(w);
        CyclicWord::new(&c.canonical())
    }

    /// Returns `(core, t)` with `w = t * core * t^-1` in the group, where
    /// `core` is read from its stored representative.
    pub fn conjugacy_reduce_with_witness(&self, w: &Word) -> (CyclicWord, Word) {
        let (core, t) = cyclic_reduce(w);
        let mut cur: Vec<Letter> = core.letters().to_vec();
        let mut conj = t;
        'outer: loop {
            let n = cur.len();
            for o in 0..n {
                let rot = Word::from_reduced_unchecked(rotate(&cur, o));
                let r = self.dehn_reduce(&rot);
                if r.len() < n {
                    // cur = u * rot * u^-1 with u = cur[..o]
                    let u = Word::from_reduced_unchecked(cur[..o].to_vec());
                    let (c2, t2) = cyclic_reduce(&r);
                    conj = Word::concat_all([&conj, &u, &t2]);
                    cur = c2.letters().to_vec();
                    continue 'outer;
                }
            }
            break;
        }
        (CyclicWord::new(&Word::from_reduced_unchecked(cur)), conj)
    }

    /// Searches for `t` of length `<= radius` over `generators` with
    /// `t u t^-1 = v`. `None` is not a proof of non-conjugacy.
    pub fn find_conjugator(&self, u: &Word, v: &Word, radius: usize, generators: &[u32]) -> Result<Option<Word>> {
        self.require_verified()?;
        if radius > self.conjugator_budget {
            return Err(Error::Resource(format!(
                "conjugator radius {radius} exceeds the budget of {}",
                self.conjugator_budget
            )));
        }
        let vi = v.inverse();
        let mut found = None;
        for_each_reduced_word(generators, radius, |t| {
            let t = Word::from_reduced_unchecked(t.to_vec());
            let probe = Word::concat_all([&t, u, &t.inverse(), &vi]);
            if self.proves_trivial(&probe) {
                found = Some(t);
                false
            } else {
                true
            }
        });
        Ok(found)
    }

    /// Bounded conjugacy search over the full generating set.
    pub fn are_conjugate_bounded(&self, u: &Word, v: &Word, radius: usize) -> Result<bool> {
        let gens: Vec<u32> = (0..self.presentation.alphabet().len() as u32).collect();
        Ok(self.find_conjugator(u, v, radius, &gens)?.is_some())
    }
}
