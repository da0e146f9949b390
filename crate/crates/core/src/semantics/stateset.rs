use crate::models::State;

/// A set of states of a `k`-world universe: bit `s` is set iff state `s`
/// belongs to the set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StateSet {
    worlds: usize,
    words: Vec<u64>,
}

/// `MASKS[i]` selects the bit positions whose index has bit `i` clear.
const MASKS: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0F0F_0F0F_0F0F_0F0F,
    0x00FF_00FF_00FF_00FF,
    0x0000_FFFF_0000_FFFF,
    0x0000_0000_FFFF_FFFF,
];

/// Largest universe whose full state lattice is materialized.
pub const MAX_LATTICE_WORLDS: usize = 26;

impl StateSet {
    pub fn empty(worlds: usize) -> Self {
        assert!(worlds <= MAX_LATTICE_WORLDS, "state lattice over {worlds} worlds is too large");
        let states = 1usize << worlds;
        StateSet { worlds, words: vec![0; states.div_ceil(64)] }
    }

    pub fn all(worlds: usize) -> Self {
        let mut s = StateSet::empty(worlds);
        s.words.iter_mut().for_each(|w| *w = !0);
        s.trim();
        s
    }

    pub fn worlds(&self) -> usize {
        self.worlds
    }

    pub fn num_states(&self) -> usize {
        1 << self.worlds
    }

    fn trim(&mut self) {
        if self.worlds < 6 {
            self.words[0] &= (1u64 << (1 << self.worlds)) - 1;
        }
    }

    /// The states included in `t`, i.e. the principal ideal of `t`.
    pub fn subsets_of(worlds: usize, t: State) -> Self {
        let mut s = StateSet::empty(worlds);
        let outside = !t.bits();
        let low = (0..64u64.min(1 << worlds)).filter(|b| b & outside & 63 == 0).fold(0u64, |acc, b| acc | 1 << b);
        for (j, word) in s.words.iter_mut().enumerate() {
            if ((j as u64) << 6) & outside == 0 {
                *word = low;
            }
        }
        s
    }

    pub fn contains(&self, s: State) -> bool {
        let i = s.bits() as usize;
        i < self.num_states() && self.words[i >> 6] >> (i & 63) & 1 == 1
    }

    pub fn insert(&mut self, s: State) {
        let i = s.bits() as usize;
        self.words[i >> 6] |= 1 << (i & 63);
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_all(&self) -> bool {
        *self == StateSet::all(self.worlds)
    }

    /// Least state in the set, by bitmask.
    pub fn first(&self) -> Option<State> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(j, w)| State((j * 64 + w.trailing_zeros() as usize) as u64))
    }

    pub fn iter(&self) -> impl Iterator<Item = State> + '_ {
        self.words.iter().enumerate().flat_map(|(j, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                (w != 0).then(|| {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    State((j * 64 + b) as u64)
                })
            })
        })
    }

    pub fn and_assign(&mut self, other: &StateSet) {
        self.words.iter_mut().zip(&other.words).for_each(|(a, b)| *a &= b);
    }

    pub fn or_assign(&mut self, other: &StateSet) {
        self.words.iter_mut().zip(&other.words).for_each(|(a, b)| *a |= b);
    }

    pub fn and_not_assign(&mut self, other: &StateSet) {
        self.words.iter_mut().zip(&other.words).for_each(|(a, b)| *a &= !b);
    }

    pub fn complement(&self) -> StateSet {
        let mut out = self.clone();
        out.words.iter_mut().for_each(|w| *w = !*w);
        out.trim();
        out
    }

    /// Replaces the set by its upward closure: `s` is included iff some
    /// subset of `s` was.
    pub(crate) fn upward_closure(&mut self) {
        for (i, mask) in MASKS.iter().enumerate().take(self.worlds) {
            self.words.iter_mut().for_each(|w| *w |= (*w & mask) << (1 << i));
        }
        for i in 6..self.worlds {
            let step = 1 << (i - 6);
            for j in 0..self.words.len() {
                if j & step != 0 {
                    self.words[j] |= self.words[j ^ step];
                }
            }
        }
    }

    /// Whether every subset of a member is a member.
    pub fn is_downward_closed(&self) -> bool {
        let mut up = self.complement();
        up.upward_closure();
        up.complement() == *self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_closure(set: &StateSet) -> StateSet {
        let mut out = StateSet::empty(set.worlds());
        for s in State::all(set.worlds()) {
            if s.substates().any(|t| set.contains(t)) {
                out.insert(s);
            }
        }
        out
    }

    #[test]
    fn upward_closure_matches_brute_force() {
        for k in 0..=8 {
            for seed in 0..20u64 {
                let mut set = StateSet::empty(k);
                let mut x = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) | 1;
                for s in State::all(k) {
                    x ^= x << 13;
                    x ^= x >> 7;
                    x ^= x << 17;
                    if x % 7 == 0 {
                        set.insert(s);
                    }
                }
                let mut fast = set.clone();
                fast.upward_closure();
                assert_eq!(fast, brute_closure(&set), "k={k} seed={seed}");
            }
        }
    }

    #[test]
    fn subsets_of_matches_definition() {
        for k in [0, 3, 6, 8] {
            for t in State::all(k).step_by(5) {
                let set = StateSet::subsets_of(k, t);
                for s in State::all(k) {
                    assert_eq!(set.contains(s), s.is_subset(t));
                }
                assert_eq!(set.count(), 1 << t.len());
                assert!(set.is_downward_closed());
            }
        }
    }

    #[test]
    fn iteration_and_bounds() {
        let mut set = StateSet::empty(3);
        set.insert(State(5));
        set.insert(State(2));
        assert_eq!(set.iter().collect::<Vec<_>>(), vec![State(2), State(5)]);
        assert_eq!(set.first(), Some(State(2)));
        assert_eq!(StateSet::all(3).count(), 8);
        assert_eq!(set.complement().count(), 6);
        assert!(!StateSet::all(2).contains(State(4)));
    }
}
