//! The discrete Heisenberg group in coordinates, with an exact word-length
//! table computed by breadth-first search over a box that contains the ball.

use crate::error::{Error, Result};
use crate::words::{Letter, Word};

/// `(p, q, r)` with `(p,q,r)(p',q',r') = (p+p', q+q', r+r'+p q')`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct HeisenbergElement {
    pub p: i64,
    pub q: i64,
    pub r: i64,
}

impl HeisenbergElement {
    pub const IDENTITY: Self = HeisenbergElement { p: 0, q: 0, r: 0 };
    pub const A: Self = HeisenbergElement { p: 1, q: 0, r: 0 };
    pub const B: Self = HeisenbergElement { p: 0, q: 1, r: 0 };

    pub fn new(p: i64, q: i64, r: i64) -> Self {
        HeisenbergElement { p, q, r }
    }

    /// `z^n`, with `z = [a,b]` central.
    pub fn z_power(n: i64) -> Self {
        HeisenbergElement { p: 0, q: 0, r: n }
    }

    pub fn mul(self, o: Self) -> Self {
        HeisenbergElement { p: self.p + o.p, q: self.q + o.q, r: self.r + o.r + self.p * o.q }
    }

    pub fn inverse(self) -> Self {
        HeisenbergElement { p: -self.p, q: -self.q, r: -self.r + self.p * self.q }
    }

    fn mul_letter(self, l: HLetter) -> Self {
        match l {
            HLetter::A => HeisenbergElement { p: self.p + 1, ..self },
            HLetter::AInv => HeisenbergElement { p: self.p - 1, ..self },
            HLetter::B => HeisenbergElement { q: self.q + 1, r: self.r + self.p, ..self },
            HLetter::BInv => HeisenbergElement { q: self.q - 1, r: self.r - self.p, ..self },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum HLetter {
    A,
    AInv,
    B,
    BInv,
}

impl HLetter {
    /// Fixed descent order.
    const ORDER: [HLetter; 4] = [HLetter::A, HLetter::AInv, HLetter::B, HLetter::BInv];

    fn inverse(self) -> Self {
        match self {
            HLetter::A => HLetter::AInv,
            HLetter::AInv => HLetter::A,
            HLetter::B => HLetter::BInv,
            HLetter::BInv => HLetter::B,
        }
    }

    fn to_letter(self, a: u32, b: u32) -> Letter {
        match self {
            HLetter::A => Letter::positive(a),
            HLetter::AInv => Letter::negative(a),
            HLetter::B => Letter::positive(b),
            HLetter::BInv => Letter::negative(b),
        }
    }
}

/// Evaluates a word whose letters are the generators `a` and `b`.
pub fn heisenberg_eval(w: &Word, a: u32, b: u32) -> Result<HeisenbergElement> {
    let mut e = HeisenbergElement::IDENTITY;
    for &l in w.letters() {
        let h = match (l.generator(), l.is_inverse()) {
            (g, false) if g == a => HLetter::A,
            (g, true) if g == a => HLetter::AInv,
            (g, false) if g == b => HLetter::B,
            (g, true) if g == b => HLetter::BInv,
            _ => return Err(Error::Alphabet(format!("letter {l:?} is neither a nor b"))),
        };
        e = e.mul_letter(h);
    }
    Ok(e)
}

/// `a^s b a^{w-s} b^{h-1} a^{-w} b^{-h}` with `m = w(h-1) + s`, a word for
/// `z^m` of length `2(w + h)`; `w = ceil(sqrt m)`, `h = ceil(m / w)`.
pub fn z_power_word(m: i64, a: u32, b: u32) -> Word {
    if m == 0 {
        return Word::empty();
    }
    let n = m.unsigned_abs();
    let w = ceil_sqrt(n);
    let h = n.div_ceil(w);
    let s = n - w * (h - 1);
    let (la, lb) = (Word::letter(Letter::positive(a)), Word::letter(Letter::positive(b)));
    let word = Word::concat_all([
        &la.pow(s as i64),
        &lb,
        &la.pow((w - s) as i64),
        &lb.pow(h as i64 - 1),
        &la.pow(-(w as i64)),
        &lb.pow(-(h as i64)),
    ]);
    if m < 0 {
        word.inverse()
    } else {
        word
    }
}

/// Length of [`z_power_word`], an upper bound on `|z^m|`.
pub fn z_power_upper_bound(m: i64) -> u32 {
    if m == 0 {
        return 0;
    }
    let n = m.unsigned_abs();
    let w = ceil_sqrt(n);
    (2 * (w + n.div_ceil(w))) as u32
}

/// Smallest BFS radius guaranteed to contain `z^n` for every `|n| <= n_max`.
pub fn radius_for_z_powers(n_max: u64) -> u32 {
    (0..=n_max as i64).map(z_power_upper_bound).max().unwrap_or(0)
}

fn ceil_sqrt(n: u64) -> u64 {
    let mut s = (n as f64).sqrt() as u64;
    while s * s < n {
        s += 1;
    }
    while s > 0 && (s - 1) * (s - 1) >= n {
        s -= 1;
    }
    s
}

/// Exact word lengths on the ball of a given radius.
///
/// Distances live in a dense byte array over the box `|p|, |q| <= R`,
/// `|r| <= R^2/4`. Any word of length `d` with `i` letters `a^±1` and `d - i`
/// letters `b^±1` reaches `|r| <= i (d - i) <= d^2 / 4`, so the box holds the
/// whole ball.
#[derive(Clone, Debug)]
pub struct HeisenbergOracle {
    radius: u32,
    rbound: i64,
    dist: Vec<u8>,
}

const UNSEEN: u8 = u8::MAX;

/// Largest radius the byte table supports.
pub const MAX_RADIUS: u32 = 120;

impl HeisenbergOracle {
    pub fn new(radius: u32) -> Result<Self> {
        if radius > MAX_RADIUS {
            return Err(Error::Resource(format!("Heisenberg BFS radius {radius} exceeds {MAX_RADIUS}")));
        }
        let rr = radius as i64;
        let rbound = rr * rr / 4;
        let side = (2 * rr + 1) as usize;
        let depth = (2 * rbound + 1) as usize;
        let mut o = HeisenbergOracle { radius, rbound, dist: vec![UNSEEN; side * side * depth] };
        o.bfs();
        Ok(o)
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    fn index(&self, e: HeisenbergElement) -> Option<usize> {
        let rr = self.radius as i64;
        if e.p.abs() > rr || e.q.abs() > rr || e.r.abs() > self.rbound {
            return None;
        }
        let side = 2 * rr + 1;
        let depth = 2 * self.rbound + 1;
        Some((((e.p + rr) * side + (e.q + rr)) * depth + (e.r + self.rbound)) as usize)
    }

    fn decode(&self, i: usize) -> HeisenbergElement {
        let rr = self.radius as i64;
        let side = 2 * rr + 1;
        let depth = 2 * self.rbound + 1;
        let i = i as i64;
        let r = i % depth - self.rbound;
        let pq = i / depth;
        HeisenbergElement { p: pq / side - rr, q: pq % side - rr, r }
    }

    fn bfs(&mut self) {
        let start = self.index(HeisenbergElement::IDENTITY).unwrap();
        self.dist[start] = 0;
        let mut frontier = vec![start as u32];
        let mut next = Vec::new();
        for d in 1..=self.radius {
            for &i in &frontier {
                let e = self.decode(i as usize);
                for l in HLetter::ORDER {
                    // the box contains the ball, so in-ball neighbours always index
                    if let Some(j) = self.index(e.mul_letter(l)) {
                        if self.dist[j] == UNSEEN {
                            self.dist[j] = d as u8;
                            next.push(j as u32);
                        }
                    }
                }
            }
            std::mem::swap(&mut frontier, &mut next);
            next.clear();
            if frontier.is_empty() {
                break;
            }
        }
    }

    /// Exact `|e|`, or an error if `e` lies outside the ball.
    pub fn length(&self, e: HeisenbergElement) -> Result<u32> {
        match self.index(e).map(|i| self.dist[i]) {
            Some(d) if d != UNSEEN => Ok(d as u32),
            _ => Err(Error::RadiusExceeded { cap: self.radius }),
        }
    }

    /// Geodesic word for `e`, built backwards by descent: the last letter is
    /// the first of `a, a^-1, b, b^-1` that steps one closer to the identity.
    pub fn geodesic(&self, e: HeisenbergElement, a: u32, b: u32) -> Result<Word> {
        let mut d = self.length(e)?;
        let mut cur = e;
        let mut rev = Vec::with_capacity(d as usize);
        while d > 0 {
            let (l, prev) = HLetter::ORDER
                .iter()
                .map(|&l| (l, cur.mul_letter(l.inverse())))
                .find(|&(_, p)| self.length(p).ok() == Some(d - 1))
                .expect("BFS table is consistent");
            rev.push(l.to_letter(a, b));
            cur = prev;
            d -= 1;
        }
        rev.reverse();
        Ok(Word::from_letters(rev))
    }

    /// Number of elements in the ball.
    pub fn ball_size(&self) -> usize {
        self.dist.iter().filter(|&&d| d != UNSEEN).count()
    }
}
