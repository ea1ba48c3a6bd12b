use std::fmt;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::criteria::{ConeId, Shape};
use crate::xcore::{Party, PartyPair, Slot, Tolerance, XMatrix};
use crate::{Error, Real, Result};

/// Which diagonal entry of slot `i` a `Delta` generator occupies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    /// `a_i`, at position `(i, i)`.
    A,
    /// `b_i`, at position `(9-i, 9-i)`.
    B,
}

/// Extreme-ray families of the X-restricted cones.
///
/// A family fixes which slots carry a diagonal pair `(r, 1/r)` ("ratio
/// slots") and which carry a unit anti-diagonal entry `e^{iθ}` ("phase
/// slots"). The continuous parameters live in [`GeneratorParams`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    /// A single diagonal unit `X(E_i, 0, 0)` or `X(0, E_i, 0)`.
    Delta(Slot, Side),
    /// `X_i(r, 1/r, e^{iθ})`.
    WDelta(Slot),
    /// Ratios and phases on a pair `{i, j}` from the party's partition.
    E1(Party, Slot, Slot),
    /// Ratios on every slot but `j`, phase on `i`; `{i, j}` lies in the
    /// partition of the party missing from the pair.
    E2(PartyPair, Slot, Slot),
    /// Ratios and phases on all four slots.
    E3,
    /// Ratio on `i`, phase on `j`; `{i, j}` from the party's partition.
    We1(Party, Slot, Slot),
    /// Ratios on `i, j`, phases on the complementary pair; `{i, j}` lies in
    /// the partition of the party missing from the pair.
    We2(PartyPair, Slot, Slot),
    /// Phase on `i`, ratios on the other three slots.
    We3(Slot),
}

fn in_partition(p: Party, i: Slot, j: Slot) -> bool {
    Party::owning(i, j) == Some(p)
}

impl Family {
    pub fn validate(self) -> Result<Self> {
        let ok = match self {
            Family::Delta(..) | Family::WDelta(_) | Family::E3 | Family::We3(_) => true,
            Family::E1(p, i, j) | Family::We1(p, i, j) => in_partition(p, i, j),
            Family::E2(pair, i, j) | Family::We2(pair, i, j) => in_partition(pair.complement(), i, j),
        };
        if ok {
            Ok(self)
        } else {
            Err(Error::InvalidGenerator(format!(
                "{self}: index pair outside the family's partition"
            )))
        }
    }

    /// Slots carrying `(a_k, b_k) = (r_k, 1/r_k)`.
    pub fn ratio_slots(self) -> Vec<Slot> {
        match self {
            Family::Delta(..) => vec![],
            Family::WDelta(i) => vec![i],
            Family::E1(_, i, j) => vec![i, j],
            Family::E2(_, i, j) => {
                let (k, l) = i.complement(j);
                vec![i, k, l]
            }
            Family::E3 => Slot::ALL.to_vec(),
            Family::We1(_, i, _) => vec![i],
            Family::We2(_, i, j) => vec![i, j],
            Family::We3(i) => i.others().to_vec(),
        }
    }

    /// Slots carrying `z_k = e^{iθ_k}`.
    pub fn phase_slots(self) -> Vec<Slot> {
        match self {
            Family::Delta(..) => vec![],
            Family::WDelta(i) => vec![i],
            Family::E1(_, i, j) => vec![i, j],
            Family::E2(_, i, _) => vec![i],
            Family::E3 => Slot::ALL.to_vec(),
            Family::We1(_, _, j) => vec![j],
            Family::We2(_, i, j) => {
                let (k, l) = i.complement(j);
                vec![k, l]
            }
            Family::We3(i) => vec![i],
        }
    }

    /// True for families that only generate witnesses.
    pub fn is_witness_family(self) -> bool {
        matches!(
            self,
            Family::WDelta(_) | Family::We1(..) | Family::We2(..) | Family::We3(_)
        )
    }

    /// The family obtained by relabelling the parties with `sigma`.
    pub fn permuted(self, sigma: &crate::SystemPerm) -> Family {
        let slot = |s: Slot| {
            let v = sigma.apply_basis(s.index());
            if v < 4 {
                (Slot::from_index(v), false)
            } else {
                (Slot::from_index(7 - v), true)
            }
        };
        let s = |x: Slot| slot(x).0;
        match self {
            Family::Delta(i, side) => {
                let (j, flipped) = slot(i);
                let side = match (side, flipped) {
                    (Side::A, false) | (Side::B, true) => Side::A,
                    _ => Side::B,
                };
                Family::Delta(j, side)
            }
            Family::WDelta(i) => Family::WDelta(s(i)),
            Family::E1(p, i, j) => Family::E1(sigma.apply(p), s(i), s(j)),
            Family::E2(pair, i, j) => Family::E2(sigma.apply_pair(pair), s(i), s(j)),
            Family::E3 => Family::E3,
            Family::We1(p, i, j) => Family::We1(sigma.apply(p), s(i), s(j)),
            Family::We2(pair, i, j) => Family::We2(sigma.apply_pair(pair), s(i), s(j)),
            Family::We3(i) => Family::We3(s(i)),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Delta(i, Side::A) => write!(f, "Delta({i},a)"),
            Family::Delta(i, Side::B) => write!(f, "Delta({i},b)"),
            Family::WDelta(i) => write!(f, "WDelta({i})"),
            Family::E1(p, i, j) => write!(f, "E1({p};{i},{j})"),
            Family::E2(pair, i, j) => write!(f, "E2({pair};{i},{j})"),
            Family::E3 => write!(f, "E3"),
            Family::We1(p, i, j) => write!(f, "We1({p};{i},{j})"),
            Family::We2(pair, i, j) => write!(f, "We2({pair};{i},{j})"),
            Family::We3(i) => write!(f, "We3({i})"),
        }
    }
}

/// Free parameters of a generator: `r_k > 0` on ratio slots, `θ_k` on phase
/// slots, `None` elsewhere.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorParams<T> {
    pub ratios: [Option<T>; 4],
    pub phases: [Option<T>; 4],
}

impl<T: Real> Default for GeneratorParams<T> {
    fn default() -> Self {
        GeneratorParams {
            ratios: [None; 4],
            phases: [None; 4],
        }
    }
}

impl<T: Real> GeneratorParams<T> {
    /// Unit ratios and zero phases on the family's slots.
    pub fn unit(f: Family) -> Self {
        Self::from_fn(f, |_| T::one(), |_| T::zero())
    }

    pub fn from_fn(f: Family, ratio: impl Fn(Slot) -> T, phase: impl Fn(Slot) -> T) -> Self {
        let mut p = Self::default();
        for s in f.ratio_slots() {
            p.ratios[s.index()] = Some(ratio(s));
        }
        for s in f.phase_slots() {
            p.phases[s.index()] = Some(phase(s));
        }
        p
    }

    pub fn ratio(&self, s: Slot) -> Option<T> {
        self.ratios[s.index()]
    }

    pub fn phase(&self, s: Slot) -> Option<T> {
        self.phases[s.index()]
    }

    pub fn cast<U: Real>(&self) -> GeneratorParams<U> {
        let f = |v: Option<T>| v.map(|x| U::lit(x.as_f64()));
        GeneratorParams {
            ratios: self.ratios.map(f),
            phases: self.phases.map(f),
        }
    }
}

/// Builds the family element with the given parameters.
pub fn generator<T: Real>(f: Family, p: &GeneratorParams<T>) -> Result<XMatrix<T>> {
    let f = f.validate()?;
    let ratio_slots = f.ratio_slots();
    let phase_slots = f.phase_slots();
    let mut x = XMatrix::zero();
    if let Family::Delta(i, side) = f {
        match side {
            Side::A => x.a[i.index()] = T::one(),
            Side::B => x.b[i.index()] = T::one(),
        }
    }
    for s in Slot::ALL {
        match (ratio_slots.contains(&s), p.ratio(s)) {
            (true, Some(r)) if r.is_finite() && r > T::zero() => {
                x.a[s.index()] = r;
                x.b[s.index()] = r.recip();
            }
            (true, Some(r)) => {
                return Err(Error::InvalidGenerator(format!(
                    "{f}: ratio at {s} must be positive, got {r}"
                )))
            }
            (true, None) => return Err(Error::InvalidGenerator(format!("{f}: missing ratio at {s}"))),
            (false, Some(_)) => return Err(Error::InvalidGenerator(format!("{f}: slot {s} takes no ratio"))),
            (false, None) => {}
        }
        match (phase_slots.contains(&s), p.phase(s)) {
            (true, Some(t)) if t.is_finite() => x.z[s.index()] = Complex::from_polar(T::one(), t),
            (true, Some(t)) => return Err(Error::InvalidGenerator(format!("{f}: non-finite phase {t} at {s}"))),
            (true, None) => return Err(Error::InvalidGenerator(format!("{f}: missing phase at {s}"))),
            (false, Some(_)) => return Err(Error::InvalidGenerator(format!("{f}: slot {s} takes no phase"))),
            (false, None) => {}
        }
    }
    Ok(x)
}

/// If `m` is a positive multiple of a member of `f`, returns the multiple and
/// the parameters.
pub fn extract_params<T: Real>(m: &XMatrix<T>, f: Family, tol: &Tolerance<T>) -> Option<(T, GeneratorParams<T>)> {
    let f = f.validate().ok()?;
    let scale = m.scale();
    let small = |v: T| v.abs() <= tol.eps * scale;
    if let Family::Delta(i, side) = f {
        let (on, off_side) = match side {
            Side::A => (m.a[i.index()], m.b[i.index()]),
            Side::B => (m.b[i.index()], m.a[i.index()]),
        };
        let rest_zero = Slot::ALL
            .iter()
            .all(|&s| small(m.modulus(s)) && (s == i || (small(m.a[s.index()]) && small(m.b[s.index()]))));
        return (rest_zero && small(off_side) && !small(on) && on > T::zero())
            .then(|| (on, GeneratorParams::default()));
    }
    let ratio_slots = f.ratio_slots();
    let phase_slots = f.phase_slots();
    let mut levels = Vec::with_capacity(8);
    for s in Slot::ALL {
        let (a, b) = (m.a[s.index()], m.b[s.index()]);
        if ratio_slots.contains(&s) {
            if small(a) || small(b) || a < T::zero() || b < T::zero() {
                return None;
            }
            levels.push((a * b).sqrt());
        } else if !small(a) || !small(b) {
            return None;
        }
        if phase_slots.contains(&s) {
            levels.push(m.modulus(s));
        } else if !small(m.modulus(s)) {
            return None;
        }
    }
    let c = levels.iter().copied().sum::<T>() / T::lit(levels.len() as f64);
    if small(c) || levels.iter().any(|&v| !tol.close(v, c, scale)) {
        return None;
    }
    let params = GeneratorParams::from_fn(f, |s| (m.a[s.index()] / m.b[s.index()]).sqrt(), |s| m.phase(s));
    Some((c, params))
}

/// Ray-normalised pattern match of `m` against family `f`.
pub fn matches_family<T: Real>(m: &XMatrix<T>, f: Family, tol: &Tolerance<T>) -> bool {
    extract_params(m, f, tol).is_some()
}

/// A weighted generator.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Term<T> {
    pub weight: T,
    pub family: Family,
    pub params: GeneratorParams<T>,
}

impl<T: Real> Term<T> {
    pub fn unit_matrix(&self) -> Result<XMatrix<T>> {
        generator(self.family, &self.params)
    }

    pub fn matrix(&self) -> Result<XMatrix<T>> {
        Ok(self.unit_matrix()? * self.weight)
    }
}

/// `Σ weight · generator` over `terms`.
pub fn combine<T: Real>(terms: &[Term<T>]) -> Result<XMatrix<T>> {
    let mut x = XMatrix::zero();
    for t in terms {
        x += t.matrix()?;
    }
    Ok(x)
}

fn deltas() -> impl Iterator<Item = Family> {
    Slot::ALL
        .into_iter()
        .flat_map(|s| [Family::Delta(s, Side::A), Family::Delta(s, Side::B)])
}

fn wdeltas() -> impl Iterator<Item = Family> {
    Slot::ALL.into_iter().map(Family::WDelta)
}

fn e1(p: Party) -> impl Iterator<Item = Family> {
    p.partition().into_iter().map(move |(i, j)| Family::E1(p, i, j))
}

fn we1(p: Party) -> impl Iterator<Item = Family> {
    p.partition()
        .into_iter()
        .flat_map(move |(i, j)| [Family::We1(p, i, j), Family::We1(p, j, i)])
}

/// The extreme-ray families of the X-restriction of `cone`.
pub fn ext_families(cone: ConeId) -> Vec<Family> {
    let mut out: Vec<Family> = match cone {
        ConeId::Primal(c) => match c.shape() {
            Shape::Basic(p) => e1(p).collect(),
            Shape::MeetAll => vec![Family::E3],
            Shape::Meet(pair) => pair
                .complement()
                .partition()
                .into_iter()
                .flat_map(|(i, j)| [Family::E2(pair, i, j), Family::E2(pair, j, i)])
                .chain([Family::E3])
                .collect(),
            Shape::Join(pair) => {
                let (p, q) = pair.parties();
                e1(p).chain(e1(q)).collect()
            }
            Shape::JoinAll => Party::ALL.into_iter().flat_map(e1).collect(),
        },
        ConeId::Dual(c) => {
            let mut v: Vec<Family> = match c.shape() {
                Shape::Basic(p) => we1(p).collect(),
                Shape::MeetAll => Party::ALL.into_iter().flat_map(we1).collect(),
                Shape::Meet(pair) => {
                    let (p, q) = pair.parties();
                    we1(p).chain(we1(q)).collect()
                }
                Shape::Join(pair) => pair
                    .complement()
                    .partition()
                    .into_iter()
                    .map(|(i, j)| Family::We2(pair, i, j))
                    .collect(),
                Shape::JoinAll => Slot::ALL.into_iter().map(Family::We3).collect(),
            };
            v.extend(wdeltas());
            v
        }
    };
    out.extend(deltas());
    out
}

/// Whether `f` appears among the extreme-ray families of `cone`, up to the
/// order of unordered index pairs.
pub fn family_in_cone(f: Family, cone: ConeId) -> bool {
    let norm = |f: Family| match f {
        Family::E1(p, i, j) if i > j => Family::E1(p, j, i),
        Family::We2(pair, i, j) if i > j => Family::We2(pair, j, i),
        other => other,
    };
    ext_families(cone).into_iter().any(|g| norm(g) == norm(f))
}
