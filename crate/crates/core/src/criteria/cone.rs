use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::xcore::{Party, PartyPair, SystemPerm};
use crate::Error;

/// The eleven cones of unnormalised states ordered by inclusion.
///
/// `A`, `B`, `C` are the states separable across A-BC, B-CA and C-AB.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Cone {
    A,
    B,
    C,
    AbMeet,
    BcMeet,
    CaMeet,
    AbcMeet,
    AbJoin,
    BcJoin,
    CaJoin,
    AbcJoin,
}

/// How a cone is built from the basic cones.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    Basic(Party),
    Meet(PartyPair),
    Join(PartyPair),
    MeetAll,
    JoinAll,
}

impl Cone {
    pub const ALL: [Cone; 11] = [
        Cone::A,
        Cone::B,
        Cone::C,
        Cone::AbMeet,
        Cone::BcMeet,
        Cone::CaMeet,
        Cone::AbcMeet,
        Cone::AbJoin,
        Cone::BcJoin,
        Cone::CaJoin,
        Cone::AbcJoin,
    ];

    /// Inclusion arrows `(smaller, larger)` of the Hasse diagram.
    pub const ARROWS: [(Cone, Cone); 18] = [
        (Cone::AbcMeet, Cone::AbMeet),
        (Cone::AbcMeet, Cone::BcMeet),
        (Cone::AbcMeet, Cone::CaMeet),
        (Cone::AbMeet, Cone::A),
        (Cone::AbMeet, Cone::B),
        (Cone::BcMeet, Cone::B),
        (Cone::BcMeet, Cone::C),
        (Cone::CaMeet, Cone::C),
        (Cone::CaMeet, Cone::A),
        (Cone::A, Cone::AbJoin),
        (Cone::A, Cone::CaJoin),
        (Cone::B, Cone::AbJoin),
        (Cone::B, Cone::BcJoin),
        (Cone::C, Cone::BcJoin),
        (Cone::C, Cone::CaJoin),
        (Cone::AbJoin, Cone::AbcJoin),
        (Cone::BcJoin, Cone::AbcJoin),
        (Cone::CaJoin, Cone::AbcJoin),
    ];

    pub fn basic(p: Party) -> Cone {
        match p {
            Party::A => Cone::A,
            Party::B => Cone::B,
            Party::C => Cone::C,
        }
    }

    pub fn meet(pair: PartyPair) -> Cone {
        match pair {
            PartyPair::AB => Cone::AbMeet,
            PartyPair::BC => Cone::BcMeet,
            PartyPair::CA => Cone::CaMeet,
        }
    }

    pub fn join(pair: PartyPair) -> Cone {
        match pair {
            PartyPair::AB => Cone::AbJoin,
            PartyPair::BC => Cone::BcJoin,
            PartyPair::CA => Cone::CaJoin,
        }
    }

    pub fn shape(self) -> Shape {
        match self {
            Cone::A => Shape::Basic(Party::A),
            Cone::B => Shape::Basic(Party::B),
            Cone::C => Shape::Basic(Party::C),
            Cone::AbMeet => Shape::Meet(PartyPair::AB),
            Cone::BcMeet => Shape::Meet(PartyPair::BC),
            Cone::CaMeet => Shape::Meet(PartyPair::CA),
            Cone::AbcMeet => Shape::MeetAll,
            Cone::AbJoin => Shape::Join(PartyPair::AB),
            Cone::BcJoin => Shape::Join(PartyPair::BC),
            Cone::CaJoin => Shape::Join(PartyPair::CA),
            Cone::AbcJoin => Shape::JoinAll,
        }
    }

    /// Position in [`Cone::ALL`].
    pub fn ordinal(self) -> usize {
        self as usize
    }

    /// Reflexive-transitive closure of [`Cone::ARROWS`].
    pub fn is_subset_of(self, other: Cone) -> bool {
        if self == other {
            return true;
        }
        Cone::ARROWS
            .iter()
            .filter(|(lo, _)| *lo == self)
            .any(|&(_, hi)| hi.is_subset_of(other))
    }

    /// The cone obtained by relabelling parties with `sigma`.
    pub fn permuted(self, sigma: &SystemPerm) -> Cone {
        match self.shape() {
            Shape::Basic(p) => Cone::basic(sigma.apply(p)),
            Shape::Meet(pair) => Cone::meet(sigma.apply_pair(pair)),
            Shape::Join(pair) => Cone::join(sigma.apply_pair(pair)),
            Shape::MeetAll | Shape::JoinAll => self,
        }
    }

    /// Shell-safe name: `A`, `A^B`, `A+B`, `A^B^C`, ...
    pub fn name(self) -> &'static str {
        match self {
            Cone::A => "A",
            Cone::B => "B",
            Cone::C => "C",
            Cone::AbMeet => "A^B",
            Cone::BcMeet => "B^C",
            Cone::CaMeet => "C^A",
            Cone::AbcMeet => "A^B^C",
            Cone::AbJoin => "A+B",
            Cone::BcJoin => "B+C",
            Cone::CaJoin => "C+A",
            Cone::AbcJoin => "A+B+C",
        }
    }

    /// Name of the dual cone written in terms of `A°`, `B°`, `C°`.
    pub fn dual_name(self) -> &'static str {
        match self {
            Cone::A => "A°",
            Cone::B => "B°",
            Cone::C => "C°",
            Cone::AbMeet => "A°+B°",
            Cone::BcMeet => "B°+C°",
            Cone::CaMeet => "C°+A°",
            Cone::AbcMeet => "A°+B°+C°",
            Cone::AbJoin => "A°∩B°",
            Cone::BcJoin => "B°∩C°",
            Cone::CaJoin => "C°∩A°",
            Cone::AbcJoin => "A°∩B°∩C°",
        }
    }
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Cone {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().to_ascii_uppercase().replace(' ', "");
        let t = t.replace('&', "^");
        let cone = match t.as_str() {
            "A" => Cone::A,
            "B" => Cone::B,
            "C" => Cone::C,
            "A^B" | "B^A" => Cone::AbMeet,
            "B^C" | "C^B" => Cone::BcMeet,
            "C^A" | "A^C" => Cone::CaMeet,
            "A^B^C" => Cone::AbcMeet,
            "A+B" | "B+A" => Cone::AbJoin,
            "B+C" | "C+B" => Cone::BcJoin,
            "C+A" | "A+C" => Cone::CaJoin,
            "A+B+C" => Cone::AbcJoin,
            _ => return Err(Error::InvalidInput(format!("unknown cone name {s:?}"))),
        };
        Ok(cone)
    }
}

/// A primal cone or the dual of one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ConeId {
    Primal(Cone),
    Dual(Cone),
}

impl ConeId {
    pub fn dual(self) -> ConeId {
        match self {
            ConeId::Primal(c) => ConeId::Dual(c),
            ConeId::Dual(c) => ConeId::Primal(c),
        }
    }

    /// The underlying primal cone (for `Dual(c)` this is `c`, not `c°`).
    pub fn base(self) -> Cone {
        match self {
            ConeId::Primal(c) | ConeId::Dual(c) => c,
        }
    }

    pub fn is_dual(self) -> bool {
        matches!(self, ConeId::Dual(_))
    }

    pub fn is_subset_of(self, other: ConeId) -> bool {
        match (self, other) {
            (ConeId::Primal(x), ConeId::Primal(y)) => x.is_subset_of(y),
            (ConeId::Dual(x), ConeId::Dual(y)) => y.is_subset_of(x),
            _ => false,
        }
    }

    pub fn permuted(self, sigma: &SystemPerm) -> ConeId {
        match self {
            ConeId::Primal(c) => ConeId::Primal(c.permuted(sigma)),
            ConeId::Dual(c) => ConeId::Dual(c.permuted(sigma)),
        }
    }

    pub fn all() -> impl Iterator<Item = ConeId> {
        Cone::ALL
            .into_iter()
            .map(ConeId::Primal)
            .chain(Cone::ALL.into_iter().map(ConeId::Dual))
    }

    pub fn describe(self) -> String {
        match self {
            ConeId::Primal(c) => c.name().to_string(),
            ConeId::Dual(c) => c.dual_name().to_string(),
        }
    }
}

impl fmt::Display for ConeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConeId::Primal(c) => write!(f, "{c}"),
            ConeId::Dual(c) => write!(f, "dual:{c}"),
        }
    }
}

impl FromStr for ConeId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        match t.strip_prefix("dual:").or_else(|| t.strip_prefix("DUAL:")) {
            Some(rest) => Ok(ConeId::Dual(rest.parse()?)),
            None => Ok(ConeId::Primal(t.parse()?)),
        }
    }
}
