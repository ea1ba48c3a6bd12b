//! Inequality evaluation and cone membership for X-shaped states and
//! witnesses.

mod cone;
mod inequality;
mod membership;

pub use cone::{Cone, ConeId, Shape};
pub use inequality::{eval_state_inequality, eval_witness_inequality, IneqKind, IneqReport};
pub use membership::{
    governing_inequalities, in_cone, necessary_check_general, ppt_member, ppt_parties, state_in_cone, witness_in_cone,
    GeneralVerdict, MembershipVerdict,
};
