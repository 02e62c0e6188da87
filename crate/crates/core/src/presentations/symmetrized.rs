use std::collections::HashMap;

use super::Presentation;
use crate::words::{Letter, Word};

/// A cyclic rotation of a relator or of its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Member {
    pub relator: u32,
    pub inverted: bool,
    pub offset: u32,
    pub len: u32,
}

impl Member {
    /// Replacement threshold for Dehn's algorithm: strictly more than half.
    pub fn half(&self) -> usize {
        self.len as usize / 2 + 1
    }
}

/// Closure of the relators under rotation and inversion.
///
/// Members are stored as `(relator, orientation, offset)` views into doubled
/// copies of each relator, so no rotation is ever materialized. They are kept
/// in lexicographic order with the longest-common-prefix array of adjacent
/// members, which is the whole piece structure: the longest common prefix of a
/// member with any other member is attained at one of its sorted neighbours.
#[derive(Clone, Debug)]
pub struct SymmetrizedSet {
    doubled: Vec<Vec<Letter>>,
    members: Vec<Member>,
    lcp: Vec<u32>,
    key_len: usize,
    key_index: HashMap<Box<[Letter]>, (u32, u32)>,
    max_len: usize,
}

fn lcp_len(a: &[Letter], b: &[Letter]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

pub fn symmetrize(p: &Presentation) -> SymmetrizedSet {
    SymmetrizedSet::new(p)
}

impl SymmetrizedSet {
    pub fn new(p: &Presentation) -> Self {
        let mut doubled = Vec::with_capacity(2 * p.relators().len());
        let mut members = Vec::new();
        for (ri, r) in p.relators().iter().enumerate() {
            let fwd = r.letters().to_vec();
            let inv: Vec<Letter> = fwd.iter().rev().map(|l| l.inverse()).collect();
            for (inverted, letters) in [(false, fwd), (true, inv)] {
                let n = letters.len();
                let mut d = letters.clone();
                d.extend_from_slice(&letters);
                doubled.push(d);
                for offset in 0..n {
                    members.push(Member {
                        relator: ri as u32,
                        inverted,
                        offset: offset as u32,
                        len: n as u32,
                    });
                }
            }
        }
        let view = |m: &Member| -> &[Letter] {
            let d = &doubled[2 * m.relator as usize + m.inverted as usize];
            &d[m.offset as usize..(m.offset + m.len) as usize]
        };
        // Stable: equal words keep the lowest (relator, orientation, offset).
        members.sort_by(|a, b| view(a).cmp(view(b)));
        members.dedup_by(|later, earlier| view(later) == view(earlier));

        let lcp: Vec<u32> = members
            .windows(2)
            .map(|w| lcp_len(view(&w[0]), view(&w[1])) as u32)
            .collect();

        let key_len = members.iter().map(|m| m.half()).min().unwrap_or(1);
        let max_len = members.iter().map(|m| m.len as usize).max().unwrap_or(0);
        let mut key_index: HashMap<Box<[Letter]>, (u32, u32)> = HashMap::new();
        let mut start = 0usize;
        for i in 0..members.len() {
            let end_of_run = i + 1 == members.len() || (lcp[i] as usize) < key_len;
            if end_of_run {
                let key: Box<[Letter]> = view(&members[start])[..key_len].into();
                key_index.insert(key, (start as u32, (i + 1) as u32));
                start = i + 1;
            }
        }
        SymmetrizedSet { doubled, members, lcp, key_len, key_index, max_len }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Members in lexicographic order.
    pub fn members(&self) -> &[Member] {
        &self.members
    }

    pub fn member_letters(&self, m: &Member) -> &[Letter] {
        let d = &self.doubled[2 * m.relator as usize + m.inverted as usize];
        &d[m.offset as usize..(m.offset + m.len) as usize]
    }

    pub fn member_word(&self, idx: usize) -> Word {
        Word::from_reduced_unchecked(self.member_letters(&self.members[idx]).to_vec())
    }

    pub fn contains(&self, w: &[Letter]) -> bool {
        self.members
            .binary_search_by(|m| self.member_letters(m).cmp(w))
            .is_ok()
    }

    /// `lcp[i]` is the longest common prefix of members `i` and `i + 1`.
    pub fn adjacent_lcp(&self) -> &[u32] {
        &self.lcp
    }

    /// Longest piece that is a prefix of each member, aligned with
    /// [`members`](Self::members).
    pub fn member_pieces(&self) -> Vec<u32> {
        let n = self.members.len();
        (0..n)
            .map(|i| {
                let left = if i > 0 { self.lcp[i - 1] } else { 0 };
                let right = if i + 1 < n { self.lcp[i] } else { 0 };
                left.max(right)
            })
            .collect()
    }

    pub fn max_member_len(&self) -> usize {
        self.max_len
    }

    /// Length of the prefix key; never longer than any member's Dehn threshold.
    pub fn key_len(&self) -> usize {
        self.key_len
    }

    /// Range of members whose first [`key_len`](Self::key_len) letters equal `key`.
    pub(crate) fn key_range(&self, key: &[Letter]) -> Option<(usize, usize)> {
        self.key_index.get(key).map(|&(a, b)| (a as usize, b as usize))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::Presentation;
    use std::collections::BTreeSet;

    fn words(p: &Presentation) -> BTreeSet<String> {
        let s = symmetrize(p);
        (0..s.len()).map(|i| p.format_word(&s.member_word(i))).collect()
    }

    #[test]
    fn single_relator_ab() {
        let p = Presentation::parse("gens a b\nrel a b").unwrap();
        let expect: BTreeSet<String> =
            ["a b", "b a", "b^-1 a^-1", "a^-1 b^-1"].iter().map(|s| s.to_string()).collect();
        assert_eq!(words(&p), expect);
    }

    #[test]
    fn empty_and_proper_power() {
        let p = Presentation::parse("gens a b").unwrap();
        assert!(symmetrize(&p).is_empty());
        let p = Presentation::parse("gens a\nrel a^2").unwrap();
        let expect: BTreeSet<String> = ["a^2", "a^-2"].iter().map(|s| s.to_string()).collect();
        assert_eq!(words(&p), expect);
    }

    #[test]
    fn closure_under_rotation_and_inversion() {
        let p = Presentation::parse("gens a b c\nrel a b a^-1 b^-2\nrel c^3 a b\nrel [a,c]").unwrap();
        let s = symmetrize(&p);
        let total: usize = p.relators().iter().map(|r| r.len()).sum();
        assert!(s.len() <= 2 * total);
        for i in 0..s.len() {
            let w = s.member_word(i);
            let l = w.letters();
            for o in 0..l.len() {
                let rot: Vec<Letter> = l[o..].iter().chain(&l[..o]).copied().collect();
                assert!(s.contains(&rot));
            }
            assert!(s.contains(w.inverse().letters()));
        }
    }

    #[test]
    fn key_ranges_partition_members() {
        let p = Presentation::parse("gens a b\nrel a^5 b^3\nrel a^2 b a b").unwrap();
        let s = symmetrize(&p);
        let mut covered = 0;
        for (i, m) in s.members().iter().enumerate() {
            let key = &s.member_letters(m)[..s.key_len()];
            let (lo, hi) = s.key_range(key).unwrap();
            assert!(lo <= i && i < hi);
            covered += 1;
        }
        assert_eq!(covered, s.len());
    }
}
