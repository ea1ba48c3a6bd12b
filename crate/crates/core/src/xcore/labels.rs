use std::fmt;

use serde::{Deserialize, Serialize};

/// One of the four diagonal/anti-diagonal blocks of an X-matrix, numbered 1..=4.
///
/// Slot `i` owns the diagonal entries at rows `i` and `9 - i` (1-based) and
/// the anti-diagonal entry `(i, 9 - i)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct Slot(u8);

impl Slot {
    pub const ALL: [Slot; 4] = [Slot(1), Slot(2), Slot(3), Slot(4)];

    pub fn new(number: u8) -> Option<Slot> {
        (1..=4).contains(&number).then_some(Slot(number))
    }

    /// Panics unless `number` is in 1..=4.
    pub const fn of(number: u8) -> Slot {
        assert!(number >= 1 && number <= 4, "slot number out of range");
        Slot(number)
    }

    pub fn from_index(index: usize) -> Slot {
        Slot::of(index as u8 + 1)
    }

    /// Zero-based array index.
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize - 1
    }

    #[inline]
    pub fn number(self) -> u8 {
        self.0
    }

    /// The three other slots in increasing order.
    pub fn others(self) -> [Slot; 3] {
        let mut out = [self; 3];
        let mut n = 0;
        for s in Slot::ALL {
            if s != self {
                out[n] = s;
                n += 1;
            }
        }
        out
    }

    /// The two slots not in `{self, other}`, in increasing order.
    pub fn complement(self, other: Slot) -> (Slot, Slot) {
        let mut rest = Slot::ALL.into_iter().filter(|&s| s != self && s != other);
        let k = rest.next().expect("distinct slots leave two");
        let l = rest.next().expect("distinct slots leave two");
        (k, l)
    }
}

impl TryFrom<u8> for Slot {
    type Error = String;

    fn try_from(value: u8) -> Result<Self, Self::Error> {
        Slot::new(value).ok_or_else(|| format!("slot {value} out of range 1..=4"))
    }
}

impl From<Slot> for u8 {
    fn from(s: Slot) -> u8 {
        s.0
    }
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A tensor factor of the three-qubit system. `A` is the most significant
/// bit of the lexicographic basis index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Party {
    A,
    B,
    C,
}

impl Party {
    pub const ALL: [Party; 3] = [Party::A, Party::B, Party::C];

    /// Bit position in the 3-bit basis index.
    #[inline]
    pub fn shift(self) -> usize {
        match self {
            Party::A => 2,
            Party::B => 1,
            Party::C => 0,
        }
    }

    /// The two slot pairs exchanged by this party's partial transpose.
    pub fn partition(self) -> [(Slot, Slot); 2] {
        match self {
            Party::A => [(Slot(1), Slot(4)), (Slot(2), Slot(3))],
            Party::B => [(Slot(1), Slot(3)), (Slot(2), Slot(4))],
            Party::C => [(Slot(1), Slot(2)), (Slot(3), Slot(4))],
        }
    }

    /// The party whose partition contains the unordered pair `{i, j}`.
    pub fn owning(i: Slot, j: Slot) -> Option<Party> {
        if i == j {
            return None;
        }
        Party::ALL.into_iter().find(|p| {
            p.partition()
                .iter()
                .any(|&(x, y)| (x == i && y == j) || (x == j && y == i))
        })
    }

    /// Slot paired with `s` in this party's partition.
    pub fn partner(self, s: Slot) -> Slot {
        for (x, y) in self.partition() {
            if x == s {
                return y;
            }
            if y == s {
                return x;
            }
        }
        unreachable!("every slot appears in each partition")
    }

    pub fn others(self) -> (Party, Party) {
        match self {
            Party::A => (Party::B, Party::C),
            Party::B => (Party::C, Party::A),
            Party::C => (Party::A, Party::B),
        }
    }
}

impl fmt::Display for Party {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Party::A => "A",
            Party::B => "B",
            Party::C => "C",
        };
        f.write_str(s)
    }
}

/// An unordered pair of distinct parties.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PartyPair {
    AB,
    BC,
    CA,
}

impl PartyPair {
    pub const ALL: [PartyPair; 3] = [PartyPair::AB, PartyPair::BC, PartyPair::CA];

    pub fn parties(self) -> (Party, Party) {
        match self {
            PartyPair::AB => (Party::A, Party::B),
            PartyPair::BC => (Party::B, Party::C),
            PartyPair::CA => (Party::C, Party::A),
        }
    }

    /// The party not in the pair.
    pub fn complement(self) -> Party {
        match self {
            PartyPair::AB => Party::C,
            PartyPair::BC => Party::A,
            PartyPair::CA => Party::B,
        }
    }

    pub fn without(p: Party) -> PartyPair {
        match p {
            Party::A => PartyPair::BC,
            Party::B => PartyPair::CA,
            Party::C => PartyPair::AB,
        }
    }

    pub fn of(p: Party, q: Party) -> Option<PartyPair> {
        if p == q {
            return None;
        }
        let third = Party::ALL.into_iter().find(|&r| r != p && r != q)?;
        Some(PartyPair::without(third))
    }

    pub fn contains(self, p: Party) -> bool {
        self.complement() != p
    }
}

impl fmt::Display for PartyPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (p, q) = self.parties();
        write!(f, "{p}{q}")
    }
}

/// A relabelling of the three tensor factors: the factor held by party `P`
/// is moved to the position of party `self.apply(P)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SystemPerm {
    images: [Party; 3],
}

impl SystemPerm {
    pub const IDENTITY: SystemPerm = SystemPerm {
        images: [Party::A, Party::B, Party::C],
    };

    /// `images[k]` is the image of `Party::ALL[k]`. Returns `None` unless
    /// the images are a permutation.
    pub fn new(images: [Party; 3]) -> Option<SystemPerm> {
        let distinct = images[0] != images[1] && images[1] != images[2] && images[0] != images[2];
        distinct.then_some(SystemPerm { images })
    }

    pub fn swap(p: Party, q: Party) -> SystemPerm {
        let images = Party::ALL.map(|r| {
            if r == p {
                q
            } else if r == q {
                p
            } else {
                r
            }
        });
        SystemPerm { images }
    }

    /// All six permutations, identity first.
    pub fn all() -> [SystemPerm; 6] {
        use Party::*;
        [[A, B, C], [B, A, C], [C, B, A], [A, C, B], [B, C, A], [C, A, B]].map(|images| SystemPerm { images })
    }

    #[inline]
    pub fn apply(&self, p: Party) -> Party {
        self.images[p as usize]
    }

    pub fn inverse(&self) -> SystemPerm {
        let mut images = [Party::A; 3];
        for p in Party::ALL {
            images[self.apply(p) as usize] = p;
        }
        SystemPerm { images }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &SystemPerm) -> SystemPerm {
        SystemPerm {
            images: Party::ALL.map(|p| self.apply(other.apply(p))),
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == SystemPerm::IDENTITY
    }

    pub fn apply_pair(&self, pair: PartyPair) -> PartyPair {
        let (p, q) = pair.parties();
        PartyPair::of(self.apply(p), self.apply(q)).expect("permutations keep parties distinct")
    }

    /// Image of a 3-bit basis index.
    pub fn apply_basis(&self, v: usize) -> usize {
        let mut out = 0;
        for p in Party::ALL {
            let bit = (v >> p.shift()) & 1;
            out |= bit << self.apply(p).shift();
        }
        out
    }
}

impl fmt::Display for SystemPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.images;
        write!(f, "(A,B,C)->({a},{b},{c})")
    }
}
