use std::fmt;

use serde::{Deserialize, Serialize};

use crate::xcore::{Slot, Tolerance, XMatrix};
use crate::{Error, Real, Result};

/// One boxed inequality family with its index payload.
///
/// `S*` are conditions on states `X(a, b, z)`, `W*` on witnesses `X(s, t, u)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IneqKind {
    /// `min{√(a_i b_i), √(a_j b_j)} ≥ max{|z_i|, |z_j|}`.
    S1(Slot, Slot),
    /// `min{√(a_i b_i)+√(a_j b_j), √(a_k b_k)+√(a_l b_l)} ≥ max{|z_i|+|z_j|, |z_k|+|z_l|}`.
    S2(Slot, Slot),
    /// `Σ_{j≠i} √(a_j b_j) ≥ |z_i|`.
    S3(Slot),
    /// `√(s_i t_i) + √(s_j t_j) ≥ |u_i| + |u_j|`.
    W1(Slot, Slot),
    /// `Σ_{k≠j} √(s_k t_k) ≥ |u_i|` and `Σ_{k≠i} √(s_k t_k) ≥ |u_j|`.
    W2(Slot, Slot),
    /// `Σ √(s_i t_i) ≥ Σ |u_i|`.
    W3,
}

impl IneqKind {
    pub fn validate(self) -> Result<Self> {
        match self {
            IneqKind::S1(i, j) | IneqKind::S2(i, j) | IneqKind::W1(i, j) | IneqKind::W2(i, j) if i == j => {
                Err(Error::InvalidInput(format!("{self} needs distinct indices")))
            }
            _ => Ok(self),
        }
    }

    pub fn is_state_condition(self) -> bool {
        matches!(self, IneqKind::S1(..) | IneqKind::S2(..) | IneqKind::S3(..))
    }
}

impl fmt::Display for IneqKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IneqKind::S1(i, j) => write!(f, "S1[{i},{j}]"),
            IneqKind::S2(i, j) => write!(f, "S2[{i},{j}]"),
            IneqKind::S3(i) => write!(f, "S3[{i}]"),
            IneqKind::W1(i, j) => write!(f, "W1[{i},{j}]"),
            IneqKind::W2(i, j) => write!(f, "W2[{i},{j}]"),
            IneqKind::W3 => write!(f, "W3"),
        }
    }
}

/// An evaluated inequality `lhs ≥ rhs`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IneqReport<T> {
    pub kind: IneqKind,
    pub lhs: T,
    pub rhs: T,
    /// `lhs - rhs`; for `W2` the smaller of its two slacks.
    pub slack: T,
    pub satisfied: bool,
    /// The two raw slacks of a `W2` condition.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parts: Option<[T; 2]>,
}

impl<T: Real> IneqReport<T> {
    fn new(kind: IneqKind, lhs: T, rhs: T, tol: &Tolerance<T>) -> Self {
        let slack = lhs - rhs;
        let scale = T::one() + lhs.abs().max(rhs.abs());
        IneqReport {
            kind,
            lhs,
            rhs,
            slack,
            satisfied: tol.nonneg(slack, scale),
            parts: None,
        }
    }

    /// Slack divided by the comparison scale.
    pub fn relative_slack(&self) -> T {
        self.slack / (T::one() + self.lhs.abs().max(self.rhs.abs()))
    }
}

fn check_diagonals<T: Real>(x: &XMatrix<T>, kind: IneqKind, tol: &Tolerance<T>, names: (&str, &str)) -> Result<()> {
    let scale = x.scale();
    for s in Slot::ALL {
        for (value, name) in [(x.a[s.index()], names.0), (x.b[s.index()], names.1)] {
            if !tol.nonneg(value, scale) {
                return Err(Error::NegativeDiagonal {
                    entry: format!("{name}{s}"),
                    value: value.as_f64(),
                    context: kind.to_string(),
                });
            }
        }
    }
    Ok(())
}

/// Evaluates `S1`, `S2` or `S3` on a state with nonnegative diagonal.
pub fn eval_state_inequality<T: Real>(x: &XMatrix<T>, kind: IneqKind, tol: &Tolerance<T>) -> Result<IneqReport<T>> {
    let kind = kind.validate()?;
    if !kind.is_state_condition() {
        return Err(Error::InvalidInput(format!("{kind} is a witness condition")));
    }
    check_diagonals(x, kind, tol, ("a", "b"))?;
    let root = |s: Slot| x.root(s);
    let modulus = |s: Slot| x.modulus(s);
    let report = match kind {
        IneqKind::S1(i, j) => IneqReport::new(kind, root(i).min(root(j)), modulus(i).max(modulus(j)), tol),
        IneqKind::S2(i, j) => {
            let (k, l) = i.complement(j);
            IneqReport::new(
                kind,
                (root(i) + root(j)).min(root(k) + root(l)),
                (modulus(i) + modulus(j)).max(modulus(k) + modulus(l)),
                tol,
            )
        }
        IneqKind::S3(i) => IneqReport::new(kind, i.others().iter().map(|&j| root(j)).sum(), modulus(i), tol),
        _ => unreachable!(),
    };
    Ok(report)
}

/// Evaluates `W1`, `W2` or `W3` on a witness with nonnegative diagonal.
pub fn eval_witness_inequality<T: Real>(w: &XMatrix<T>, kind: IneqKind, tol: &Tolerance<T>) -> Result<IneqReport<T>> {
    let kind = kind.validate()?;
    if kind.is_state_condition() {
        return Err(Error::InvalidInput(format!("{kind} is a state condition")));
    }
    check_diagonals(w, kind, tol, ("s", "t"))?;
    let root = |s: Slot| w.root(s);
    let modulus = |s: Slot| w.modulus(s);
    let report = match kind {
        IneqKind::W1(i, j) => IneqReport::new(kind, root(i) + root(j), modulus(i) + modulus(j), tol),
        IneqKind::W2(i, j) => {
            let first = IneqReport::new(
                kind,
                i.others().iter().filter(|&&k| k != j).map(|&k| root(k)).sum::<T>() + root(i),
                modulus(i),
                tol,
            );
            let second = IneqReport::new(
                kind,
                j.others().iter().filter(|&&k| k != i).map(|&k| root(k)).sum::<T>() + root(j),
                modulus(j),
                tol,
            );
            let binding = if first.relative_slack() <= second.relative_slack() {
                first
            } else {
                second
            };
            IneqReport {
                satisfied: first.satisfied && second.satisfied,
                parts: Some([first.slack, second.slack]),
                ..binding
            }
        }
        IneqKind::W3 => IneqReport::new(
            kind,
            Slot::ALL.iter().map(|&s| root(s)).sum(),
            Slot::ALL.iter().map(|&s| modulus(s)).sum(),
            tol,
        ),
        _ => unreachable!(),
    };
    Ok(report)
}
