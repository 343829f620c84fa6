//! Teams as bitmasks over the valuations of a context.

use core::fmt;

/// A set of valuations. Bit `i` is set iff valuation `i` (in the owning
/// [`Context`](crate::Context)'s order) is a member.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Team(u64);

impl Team {
    pub const EMPTY: Team = Team(0);

    pub const fn from_bits(bits: u64) -> Team {
        Team(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(valuation: usize) -> Team {
        Team(1 << valuation)
    }

    pub fn from_valuations(valuations: impl IntoIterator<Item = usize>) -> Team {
        Team(valuations.into_iter().fold(0, |acc, v| acc | (1 << v)))
    }

    pub fn contains(self, valuation: usize) -> bool {
        valuation < 64 && self.0 >> valuation & 1 == 1
    }

    pub fn insert(&mut self, valuation: usize) {
        self.0 |= 1 << valuation;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: Team) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Team) -> Team {
        Team(self.0 | other.0)
    }

    pub fn intersection(self, other: Team) -> Team {
        Team(self.0 & other.0)
    }

    pub fn difference(self, other: Team) -> Team {
        Team(self.0 & !other.0)
    }

    /// Member valuations in ascending order.
    pub fn members(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        core::iter::from_fn(move || {
            (rest != 0).then(|| {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                v
            })
        })
    }

    /// All subteams in ascending bitmask order, `∅` first and `self` last.
    pub fn subteams(self) -> Subteams {
        Subteams { mask: self.0, next: Some(0) }
    }

    /// All teams `S` with `self ⊆ S ⊆ universe`, ascending.
    pub fn superteams(self, universe: Team) -> impl Iterator<Item = Team> {
        let base = self;
        universe.difference(self).subteams().map(move |extra| extra.union(base))
    }
}

pub struct Subteams {
    mask: u64,
    next: Option<u64>,
}

impl Iterator for Subteams {
    type Item = Team;

    fn next(&mut self) -> Option<Team> {
        let current = self.next?;
        self.next = (current != self.mask).then(|| current.wrapping_sub(self.mask) & self.mask);
        Some(Team(current))
    }
}

impl fmt::Debug for Team {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.members()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    #[test]
    fn subteams_ascending() {
        let t = Team::from_valuations([0, 2, 3]);
        let subs: Vec<u64> = t.subteams().map(Team::bits).collect();
        assert_eq!(subs, [0b0000, 0b0001, 0b0100, 0b0101, 0b1000, 0b1001, 0b1100, 0b1101]);
        assert_eq!(Team::EMPTY.subteams().count(), 1);
    }

    #[test]
    fn superteams_within_universe() {
        let universe = Team::from_bits(0b1111);
        let t = Team::from_valuations([1]);
        let sups: Vec<u64> = t.superteams(universe).map(Team::bits).collect();
        assert_eq!(sups.len(), 8);
        assert!(sups.iter().all(|&s| s & 0b10 != 0 && s & !0b1111 == 0));
        assert_eq!(sups[0], 0b10);
    }

    #[test]
    fn members_and_set_ops() {
        let a = Team::from_valuations([1, 3]);
        let b = Team::from_valuations([3, 5]);
        assert_eq!(a.members().collect::<Vec<_>>(), [1, 3]);
        assert_eq!(a.union(b).len(), 3);
        assert_eq!(a.intersection(b), Team::singleton(3));
        assert_eq!(a.difference(b), Team::singleton(1));
        assert!(Team::EMPTY.is_subset(a));
        assert!(!a.is_subset(b));
    }
}
