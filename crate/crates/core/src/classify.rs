//! Lattice profiles over the eleven cones and partial-separability class
//! labels.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::criteria::{state_in_cone, witness_in_cone, Cone};
use crate::xcore::{Party, SystemPerm, Tolerance, XMatrix};
use crate::{Error, Real, Result};

/// Membership in each of the eleven primal cones, or in each of their duals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeProfile {
    pub dual: bool,
    /// Indexed by [`Cone::ordinal`].
    pub membership: [bool; 11],
    /// PSD for states, nonnegative diagonal for witnesses.
    pub positivity: bool,
}

/// Cones entering the class signature, in signature order.
pub const SIGNATURE_CONES: [Cone; 7] = [
    Cone::A,
    Cone::B,
    Cone::C,
    Cone::AbJoin,
    Cone::BcJoin,
    Cone::CaJoin,
    Cone::AbcJoin,
];

impl LatticeProfile {
    pub fn get(&self, c: Cone) -> bool {
        self.membership[c.ordinal()]
    }

    /// Arrows `(smaller, larger)` of the inclusion order broken by this
    /// profile. For dual profiles the order is reversed.
    pub fn violations(&self) -> Vec<(Cone, Cone)> {
        Cone::ARROWS
            .iter()
            .copied()
            .filter(|&(lo, hi)| {
                if self.dual {
                    self.get(hi) && !self.get(lo)
                } else {
                    self.get(lo) && !self.get(hi)
                }
            })
            .collect()
    }

    pub fn signature_bits(&self) -> [bool; 7] {
        SIGNATURE_CONES.map(|c| self.get(c))
    }

    /// Seven `0`/`1` characters over `A, B, C, A+B, B+C, C+A, A+B+C`.
    pub fn signature(&self) -> String {
        self.signature_bits()
            .iter()
            .map(|&b| if b { '1' } else { '0' })
            .collect()
    }

    /// The profile of the party-relabelled input.
    pub fn permuted(&self, sigma: &SystemPerm) -> LatticeProfile {
        let mut membership = [false; 11];
        for c in Cone::ALL {
            membership[c.permuted(sigma).ordinal()] = self.get(c);
        }
        LatticeProfile { membership, ..*self }
    }
}

fn checked(profile: LatticeProfile) -> Result<LatticeProfile> {
    let bad = profile.violations();
    if bad.is_empty() {
        Ok(profile)
    } else {
        let list: Vec<String> = bad.iter().map(|(lo, hi)| format!("{lo} -> {hi}")).collect();
        Err(Error::Inconsistent(format!(
            "inclusion order broken at {}",
            list.join(", ")
        )))
    }
}

/// Membership of a state in all eleven primal cones.
pub fn lattice_profile<T: Real>(x: &XMatrix<T>, tol: &Tolerance<T>) -> Result<LatticeProfile> {
    let positivity = x.is_psd(tol);
    let membership = Cone::ALL.map(|c| positivity && state_in_cone(x, c, tol).member);
    checked(LatticeProfile {
        dual: false,
        membership,
        positivity,
    })
}

/// Membership of a witness in all eleven dual cones.
pub fn witness_profile<T: Real>(w: &XMatrix<T>, tol: &Tolerance<T>) -> Result<LatticeProfile> {
    let verdicts = Cone::ALL.map(|c| witness_in_cone(w, c, tol));
    let positivity = verdicts[0].positivity;
    let membership = verdicts.map(|v| v.member);
    checked(LatticeProfile {
        dual: true,
        membership,
        positivity,
    })
}

/// Named classes; each is the pivot-`A` version, other pivots are reached by
/// swapping `A` with the pivot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum NamedClass {
    /// `A ∩ (B+C)`, outside `B` and `C`.
    C261,
    /// All pairwise joins, outside `A`, `B` and `C`.
    C24,
    /// `(A+B) ∩ (C+A)`, outside `A` and `B+C`.
    C231,
}

impl NamedClass {
    pub const ALL: [NamedClass; 3] = [NamedClass::C261, NamedClass::C24, NamedClass::C231];

    pub fn name(self) -> &'static str {
        match self {
            NamedClass::C261 => "C^{2,6,1}",
            NamedClass::C24 => "C^{2,4}",
            NamedClass::C231 => "C^{2,3,1}",
        }
    }

    /// Signature of the pivot-`A` version.
    pub fn signature(self) -> [bool; 7] {
        match self {
            NamedClass::C261 => [true, false, false, true, true, true, true],
            NamedClass::C24 => [false, false, false, true, true, true, true],
            NamedClass::C231 => [false, false, false, true, false, true, true],
        }
    }

    fn pivots(self) -> &'static [Party] {
        match self {
            NamedClass::C24 => &[Party::A],
            _ => &Party::ALL,
        }
    }
}

/// A partial-separability class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassLabel {
    pub name: String,
    pub signature: String,
    /// The named class, when the signature matches one.
    pub base: Option<NamedClass>,
    /// The party playing the role of `A` in the named class; `None` for the
    /// symmetric class.
    pub pivot: Option<Party>,
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

fn pivot_suffix(p: Party) -> &'static str {
    match p {
        Party::A => "",
        Party::B => "[A<->B]",
        Party::C => "[A<->C]",
    }
}

fn signature_with_pivot(base: NamedClass, pivot: Party) -> [bool; 7] {
    let sigma = SystemPerm::swap(Party::A, pivot);
    let mut membership = [false; 11];
    for (c, bit) in SIGNATURE_CONES.iter().zip(base.signature()) {
        membership[c.permuted(&sigma).ordinal()] = bit;
    }
    SIGNATURE_CONES.map(|c| membership[c.ordinal()])
}

/// Class label of a primal profile.
pub fn partition_class(p: &LatticeProfile) -> ClassLabel {
    let signature = p.signature();
    let plain = |name: &str| ClassLabel {
        name: name.to_string(),
        signature: signature.clone(),
        base: None,
        pivot: None,
    };
    if p.dual {
        return plain(&format!("dual signature {signature}"));
    }
    if !p.positivity {
        return plain("not a state");
    }
    if !p.get(Cone::AbcJoin) {
        return plain("genuinely entangled");
    }
    if p.get(Cone::AbcMeet) {
        return plain("fully X-biseparable");
    }
    let bits = p.signature_bits();
    for base in NamedClass::ALL {
        for &pivot in base.pivots() {
            if signature_with_pivot(base, pivot) == bits {
                return ClassLabel {
                    name: format!("{}{}", base.name(), pivot_suffix(pivot)),
                    signature,
                    base: Some(base),
                    pivot: (base != NamedClass::C24).then_some(pivot),
                };
            }
        }
    }
    plain(&signature)
}

/// Profile and label of a state in one call.
pub fn classify_state<T: Real>(x: &XMatrix<T>, tol: &Tolerance<T>) -> Result<(LatticeProfile, ClassLabel)> {
    let profile = lattice_profile(x, tol)?;
    let label = partition_class(&profile);
    Ok((profile, label))
}
