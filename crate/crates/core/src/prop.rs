//! Team propositions: sets of teams over one context, stored as bitsets
//! indexed by team mask.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::context::Context;
use crate::error::{Error, Result};
use crate::team::Team;

/// Largest number of valuations for which propositions are materialised
/// (four variables, 65,536 teams, 8 KiB per proposition).
pub const MAX_PROP_VALUATIONS: usize = 16;

// Word masks selecting team indices whose bit `i` is clear, for i < 6.
const LOW_MASKS: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0F0F_0F0F_0F0F_0F0F,
    0x00FF_00FF_00FF_00FF,
    0x0000_FFFF_0000_FFFF,
    0x0000_0000_FFFF_FFFF,
];

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TeamProposition {
    valuations: usize,
    words: Vec<u64>,
}

impl TeamProposition {
    /// The empty proposition over `ctx`, or a resource error when the
    /// context is too large to materialise.
    pub fn empty(ctx: &Context) -> Result<TeamProposition> {
        TeamProposition::with_valuations(ctx.num_valuations())
    }

    pub fn with_valuations(valuations: usize) -> Result<TeamProposition> {
        if valuations > MAX_PROP_VALUATIONS {
            return Err(Error::ResourceCap(format!(
                "a team proposition over {valuations} valuations needs 2^{valuations} bits"
            )));
        }
        let teams = 1usize << valuations;
        Ok(TeamProposition { valuations, words: vec![0; teams.div_ceil(64)] })
    }

    pub fn full(ctx: &Context) -> Result<TeamProposition> {
        let mut p = TeamProposition::empty(ctx)?;
        p.fill();
        Ok(p)
    }

    /// The empty proposition over the same context as `self`.
    pub fn empty_like(&self) -> TeamProposition {
        TeamProposition { valuations: self.valuations, words: vec![0; self.words.len()] }
    }

    pub fn full_like(&self) -> TeamProposition {
        self.empty_like().complement()
    }

    pub fn from_teams(ctx: &Context, teams: impl IntoIterator<Item = Team>) -> Result<TeamProposition> {
        let mut p = TeamProposition::empty(ctx)?;
        for t in teams {
            ctx.check_team(t)?;
            p.insert(t);
        }
        Ok(p)
    }

    /// `{T : pred(T)}` over all teams.
    pub fn from_predicate(valuations: usize, mut pred: impl FnMut(Team) -> bool) -> Result<TeamProposition> {
        let mut p = TeamProposition::with_valuations(valuations)?;
        for t in 0..p.num_teams() as u64 {
            if pred(Team::from_bits(t)) {
                p.insert(Team::from_bits(t));
            }
        }
        Ok(p)
    }

    pub fn num_valuations(&self) -> usize {
        self.valuations
    }

    pub fn num_teams(&self) -> usize {
        1 << self.valuations
    }

    pub fn universe(&self) -> Team {
        Team::from_bits(if self.valuations == 64 { u64::MAX } else { (1u64 << self.valuations) - 1 })
    }

    fn tail_mask(&self) -> u64 {
        match self.num_teams() % 64 {
            0 => u64::MAX,
            r => (1u64 << r) - 1,
        }
    }

    fn trim(&mut self) {
        let mask = self.tail_mask();
        if let Some(last) = self.words.last_mut() {
            *last &= mask;
        }
    }

    fn fill(&mut self) {
        self.words.iter_mut().for_each(|w| *w = u64::MAX);
        self.trim();
    }

    pub fn contains(&self, team: Team) -> bool {
        let t = team.bits() as usize;
        t < self.num_teams() && self.words[t / 64] >> (t % 64) & 1 == 1
    }

    pub fn insert(&mut self, team: Team) {
        let t = team.bits() as usize;
        self.words[t / 64] |= 1 << (t % 64);
    }

    pub fn remove(&mut self, team: Team) {
        let t = team.bits() as usize;
        self.words[t / 64] &= !(1 << (t % 64));
    }

    pub fn with(mut self, team: Team) -> TeamProposition {
        self.insert(team);
        self
    }

    pub fn without(mut self, team: Team) -> TeamProposition {
        self.remove(team);
        self
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.num_teams()
    }

    /// Member teams in ascending mask order.
    pub fn iter(&self) -> impl Iterator<Item = Team> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut rest = w;
            core::iter::from_fn(move || {
                (rest != 0).then(|| {
                    let b = rest.trailing_zeros() as u64;
                    rest &= rest - 1;
                    Team::from_bits(i as u64 * 64 + b)
                })
            })
        })
    }

    pub fn first(&self) -> Option<Team> {
        self.iter().next()
    }

    fn zip_with(&self, other: &TeamProposition, f: impl Fn(u64, u64) -> u64) -> TeamProposition {
        assert_eq!(self.valuations, other.valuations, "propositions over different contexts");
        let mut out = TeamProposition {
            valuations: self.valuations,
            words: self.words.iter().zip(&other.words).map(|(&a, &b)| f(a, b)).collect(),
        };
        out.trim();
        out
    }

    pub fn union(&self, other: &TeamProposition) -> TeamProposition {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &TeamProposition) -> TeamProposition {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &TeamProposition) -> TeamProposition {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> TeamProposition {
        let mut out = TeamProposition {
            valuations: self.valuations,
            words: self.words.iter().map(|w| !w).collect(),
        };
        out.trim();
        out
    }

    pub fn is_subset(&self, other: &TeamProposition) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    /// Closes upward: every superteam of a member becomes a member.
    #[allow(clippy::needless_range_loop)]
    pub fn up_closure(&self) -> TeamProposition {
        let mut out = self.clone();
        for i in 0..self.valuations {
            if i < 6 {
                let shift = 1 << i;
                for w in &mut out.words {
                    *w |= (*w & LOW_MASKS[i]) << shift;
                }
            } else {
                let step = 1 << (i - 6);
                for w in 0..out.words.len() {
                    if w & step == 0 {
                        out.words[w | step] |= out.words[w];
                    }
                }
            }
        }
        out.trim();
        out
    }

    /// Closes downward: every subteam of a member becomes a member.
    #[allow(clippy::needless_range_loop)]
    pub fn down_closure(&self) -> TeamProposition {
        let mut out = self.clone();
        for i in 0..self.valuations {
            if i < 6 {
                let shift = 1 << i;
                for w in &mut out.words {
                    *w |= (*w >> shift) & LOW_MASKS[i];
                }
            } else {
                let step = 1 << (i - 6);
                for w in 0..out.words.len() {
                    if w & step == 0 {
                        out.words[w] |= out.words[w | step];
                    }
                }
            }
        }
        out
    }

    /// The image under team complementation `T ↦ U ∖ T`; swaps subteams
    /// with superteams.
    pub fn dual(&self) -> TeamProposition {
        let n = self.num_teams();
        if n >= 64 {
            TeamProposition {
                valuations: self.valuations,
                words: self.words.iter().rev().map(|w| w.reverse_bits()).collect(),
            }
        } else {
            TeamProposition {
                valuations: self.valuations,
                words: vec![self.words[0].reverse_bits() >> (64 - n)],
            }
        }
    }

    pub fn describe(&self, ctx: &Context) -> alloc::string::String {
        let parts: Vec<_> = self.iter().map(|t| ctx.describe_team(t)).collect();
        format!("{{{}}}", parts.join(", "))
    }
}

impl fmt::Debug for TeamProposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
