//! Free-group word algebra.
//!
//! A [`Letter`] is an interned generator index together with a sign, packed
//! into a single `u32` as `2 * generator + (sign < 0)`. The packing gives the
//! total order `(generator index, sign)` with the positive letter first, which
//! is the order used for canonical rotations.
//!
//! [`Word`] values are always freely reduced; raw letter sequences only exist
//! at construction boundaries. [`CyclicWord`] values are cyclically reduced and
//! compare equal exactly when they are rotations of one another.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(u32);

impl Letter {
    pub fn new(generator: u32, inverse: bool) -> Self {
        Letter(generator * 2 + inverse as u32)
    }

    pub fn positive(generator: u32) -> Self {
        Letter::new(generator, false)
    }

    pub fn negative(generator: u32) -> Self {
        Letter::new(generator, true)
    }

    pub fn generator(self) -> u32 {
        self.0 >> 1
    }

    pub fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn sign(self) -> i32 {
        if self.is_inverse() {
            -1
        } else {
            1
        }
    }

    #[inline]
    pub fn inverse(self) -> Self {
        Letter(self.0 ^ 1)
    }

    /// Raw packed code, dense in `0..2 * generators`.
    #[inline]
    pub fn code(self) -> u32 {
        self.0
    }

    pub fn from_code(code: u32) -> Self {
        Letter(code)
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_inverse() {
            write!(f, "g{}^-1", self.generator())
        } else {
            write!(f, "g{}", self.generator())
        }
    }
}

/// Freely reduces a raw letter sequence with a single stack pass.
pub fn free_reduce(raw: &[Letter]) -> Word {
    let mut out = Vec::with_capacity(raw.len());
    push_reduced(&mut out, raw.iter().copied());
    Word(out)
}

fn push_reduced(out: &mut Vec<Letter>, letters: impl IntoIterator<Item = Letter>) {
    for l in letters {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
}

/// A freely reduced word.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    pub fn from_letters(raw: impl IntoIterator<Item = Letter>) -> Self {
        let mut out = Vec::new();
        push_reduced(&mut out, raw);
        Word(out)
    }

    /// Wraps letters the caller already knows to be freely reduced.
    pub(crate) fn from_reduced_unchecked(letters: Vec<Letter>) -> Self {
        debug_assert!(is_freely_reduced(&letters));
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut out = Vec::with_capacity(self.len() + other.len());
        out.extend_from_slice(&self.0);
        push_reduced(&mut out, other.0.iter().copied());
        Word(out)
    }

    pub fn concat_all<'a>(parts: impl IntoIterator<Item = &'a Word>) -> Word {
        let mut out = Vec::new();
        for p in parts {
            push_reduced(&mut out, p.0.iter().copied());
        }
        Word(out)
    }

    /// `w^n` for any integer `n`; negative powers use the inverse.
    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Vec::new();
        for _ in 0..n.unsigned_abs() {
            push_reduced(&mut out, base.0.iter().copied());
        }
        Word(out)
    }

    /// `t w t^-1`.
    pub fn conjugate_by(&self, t: &Word) -> Word {
        Word::concat_all([t, self, &t.inverse()])
    }

    pub fn commutator(u: &Word, v: &Word) -> Word {
        Word::concat_all([u, v, &u.inverse(), &v.inverse()])
    }

    pub fn max_generator(&self) -> Option<u32> {
        self.0.iter().map(|l| l.generator()).max()
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

pub fn is_freely_reduced(letters: &[Letter]) -> bool {
    letters.windows(2).all(|w| w[0] != w[1].inverse())
}

pub fn is_cyclically_reduced(letters: &[Letter]) -> bool {
    is_freely_reduced(letters)
        && match (letters.first(), letters.last()) {
            (Some(&a), Some(&b)) => letters.len() == 1 || a != b.inverse(),
            _ => true,
        }
}

/// Peels matching inverse letters from both ends.
///
/// Returns the cyclically reduced core and the conjugator `t` with
/// `w = t * core * t^-1` in the free group.
pub fn cyclic_reduce(w: &Word) -> (CyclicWord, Word) {
    let l = w.letters();
    let (mut i, mut j) = (0usize, l.len());
    while j >= i + 2 && l[i] == l[j - 1].inverse() {
        i += 1;
        j -= 1;
    }
    let core = CyclicWord::from_cyclically_reduced(l[i..j].to_vec());
    let conj = Word(l[..i].to_vec());
    (core, conj)
}

/// Start index of the lexicographically least rotation (Booth's algorithm).
pub fn least_rotation<T: Ord + Copy>(s: &[T]) -> usize {
    let n = s.len();
    if n == 0 {
        return 0;
    }
    let at = |i: usize| s[i % n];
    let mut f = vec![usize::MAX; 2 * n];
    let mut k = 0usize;
    for j in 1..2 * n {
        let sj = at(j);
        let mut i = f[j - k - 1];
        while i != usize::MAX && sj != at(k + i + 1) {
            if sj < at(k + i + 1) {
                k = j - i - 1;
            }
            i = f[i];
        }
        if i == usize::MAX && sj != at(k) {
            // i == -1 and the characters differ
            if sj < at(k) {
                k = j;
            }
            f[j - k] = usize::MAX;
        } else {
            f[j - k] = if i == usize::MAX { 0 } else { i + 1 };
        }
    }
    k % n
}

pub fn rotate<T: Copy>(s: &[T], offset: usize) -> Vec<T> {
    if s.is_empty() {
        return Vec::new();
    }
    let o = offset % s.len();
    s[o..].iter().chain(&s[..o]).copied().collect()
}

/// A cyclically reduced word up to rotation: a conjugacy class of the free
/// group. Keeps the representative it was built from and the offset of its
/// canonical (least) rotation.
#[derive(Clone)]
pub struct CyclicWord {
    letters: Vec<Letter>,
    canon: usize,
}

impl CyclicWord {
    /// Cyclically reduces `w`, discarding the conjugator.
    pub fn new(w: &Word) -> Self {
        cyclic_reduce(w).0
    }

    pub(crate) fn from_cyclically_reduced(letters: Vec<Letter>) -> Self {
        debug_assert!(is_cyclically_reduced(&letters));
        let canon = least_rotation(&letters);
        CyclicWord { letters, canon }
    }

    /// The representative as given.
    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn as_word(&self) -> Word {
        Word(self.letters.clone())
    }

    pub fn canonical(&self) -> Word {
        Word(rotate(&self.letters, self.canon))
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> CyclicWord {
        let inv: Vec<Letter> = self.letters.iter().rev().map(|l| l.inverse()).collect();
        CyclicWord::from_cyclically_reduced(inv)
    }

    /// Rotation starting at `offset`, as a freely reduced word.
    pub fn rotation(&self, offset: usize) -> Word {
        Word(rotate(&self.letters, offset))
    }

    fn canon_iter(&self) -> impl Iterator<Item = &Letter> {
        self.letters[self.canon..].iter().chain(&self.letters[..self.canon])
    }
}

impl PartialEq for CyclicWord {
    fn eq(&self, other: &Self) -> bool {
        self.len() == other.len() && self.canon_iter().eq(other.canon_iter())
    }
}

impl Eq for CyclicWord {}

impl Hash for CyclicWord {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.len().hash(state);
        for l in self.canon_iter() {
            l.hash(state);
        }
    }
}

impl fmt::Debug for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclic{:?}", self.letters)
    }
}

/// Ordered generator symbols. Owned by a presentation; words refer to
/// generators by index.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Alphabet {
    names: Vec<String>,
    index: HashMap<String, u32>,
}

pub(crate) fn is_symbol(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Alphabet {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let mut a = Alphabet::default();
        for n in names {
            a.push(n.as_ref())?;
        }
        Ok(a)
    }

    pub fn push(&mut self, name: &str) -> Result<u32> {
        if !is_symbol(name) {
            return Err(Error::Alphabet(format!("invalid generator symbol `{name}`")));
        }
        if self.index.contains_key(name) {
            return Err(Error::Alphabet(format!("generator `{name}` declared twice")));
        }
        let id = self.names.len() as u32;
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, generator: u32) -> &str {
        &self.names[generator as usize]
    }

    pub fn lookup(&self, name: &str) -> Option<u32> {
        self.index.get(name).copied()
    }

    pub fn letter(&self, name: &str) -> Result<Letter> {
        self.lookup(name)
            .map(Letter::positive)
            .ok_or_else(|| Error::Alphabet(format!("unknown generator `{name}`")))
    }

    pub fn contains_word(&self, w: &Word) -> bool {
        w.letters().iter().all(|l| (l.generator() as usize) < self.len())
    }

    /// Parses the word syntax: whitespace-separated `g`, `g^-1`, `g^k`, plus
    /// commutators `[u,v]` and groups `(u)`, both of which accept a `^k`
    /// suffix. Empty input is the identity.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        crate::presentations::parse::parse_word(self, text, 1)
    }

    /// Formats with runs collapsed into powers, e.g. `x y^12 a^-1`.
    pub fn format_word(&self, w: &Word) -> String {
        self.format_letters(w.letters())
    }

    pub fn format_letters(&self, letters: &[Letter]) -> String {
        let mut out = String::new();
        let mut i = 0;
        while i < letters.len() {
            let l = letters[i];
            let mut j = i + 1;
            while j < letters.len() && letters[j] == l {
                j += 1;
            }
            let run = (j - i) as i64 * l.sign() as i64;
            if !out.is_empty() {
                out.push(' ');
            }
            out.push_str(self.name(l.generator()));
            if run != 1 {
                out.push('^');
                out.push_str(&run.to_string());
            }
            i = j;
        }
        out
    }
}

/// Calls `f` on every freely reduced word over `generators` (and their
/// inverses) of length `0..=max_len`, shortest first, lexicographic within a
/// length. Stops early when `f` returns `false`; returns whether it ran to
/// completion.
pub fn for_each_reduced_word(
    generators: &[u32],
    max_len: usize,
    mut f: impl FnMut(&[Letter]) -> bool,
) -> bool {
    let mut letters: Vec<Letter> = generators
        .iter()
        .flat_map(|&g| [Letter::positive(g), Letter::negative(g)])
        .collect();
    letters.sort();
    fn rec(
        letters: &[Letter],
        target: usize,
        buf: &mut Vec<Letter>,
        f: &mut dyn FnMut(&[Letter]) -> bool,
    ) -> bool {
        if buf.len() == target {
            return f(buf);
        }
        for &l in letters {
            if buf.last() == Some(&l.inverse()) {
                continue;
            }
            buf.push(l);
            let go = rec(letters, target, buf, f);
            buf.pop();
            if !go {
                return false;
            }
        }
        true
    }
    let mut buf = Vec::with_capacity(max_len);
    for len in 0..=max_len {
        if !rec(&letters, len, &mut buf, &mut f) {
            return false;
        }
    }
    true
}
