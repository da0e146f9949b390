use std::fmt;

/// Largest number of worlds a [`State`] bitmask can address.
pub const MAX_WORLDS: usize = 64;

/// An information state: a set of worlds of a fixed model, as a bitmask.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct State(pub u64);

impl State {
    pub const EMPTY: State = State(0);

    /// All worlds of an `n`-world model.
    pub fn full(n: usize) -> State {
        assert!(n <= MAX_WORLDS);
        if n == 64 {
            State(u64::MAX)
        } else {
            State((1u64 << n) - 1)
        }
    }

    pub fn singleton(w: usize) -> State {
        State(1u64 << w)
    }

    pub fn from_worlds(worlds: impl IntoIterator<Item = usize>) -> State {
        State(worlds.into_iter().fold(0, |m, w| m | (1u64 << w)))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, w: usize) -> bool {
        w < 64 && self.0 >> w & 1 == 1
    }

    pub fn is_subset(self, other: State) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersect(self, other: State) -> State {
        State(self.0 & other.0)
    }

    pub fn union(self, other: State) -> State {
        State(self.0 | other.0)
    }

    pub fn without(self, w: usize) -> State {
        State(self.0 & !(1u64 << w))
    }

    pub fn worlds(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let w = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(w)
        })
    }

    /// Every substate, from `self` down to the empty state.
    pub fn substates(self) -> Substates {
        Substates { set: self.0, next: Some(self.0) }
    }

    /// All `2^n` states of an `n`-world model in increasing bitmask order.
    pub fn all(n: usize) -> impl Iterator<Item = State> {
        assert!(n < 64, "cannot enumerate the states of a {n}-world model");
        (0..1u64 << n).map(State)
    }
}

/// Decreasing submask iteration: `t = (t - 1) & s`.
#[derive(Clone, Debug)]
pub struct Substates {
    set: u64,
    next: Option<u64>,
}

impl Iterator for Substates {
    type Item = State;

    fn next(&mut self) -> Option<State> {
        let cur = self.next?;
        self.next = if cur == 0 { None } else { Some(cur.wrapping_sub(1) & self.set) };
        Some(State(cur))
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, w) in self.worlds().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{w}")?;
        }
        f.write_str("}")
    }
}
