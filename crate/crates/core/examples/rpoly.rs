//! R-polynomials: the generalized recurrence on a worked pair, the tilde form,
//! and what goes wrong when t is not inversion-minimal.

use bruhat_polytopes::perm::{Permutation, Transposition};
use bruhat_polytopes::rpoly::{generalized_r_identity, r_from_tilde, r_tilde, recurrence_counterexample_check};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (u, v): (Permutation, Permutation) = ("21345".parse()?, "53421".parse()?);
    let t = Transposition::new(1, 3)?;
    let sides = generalized_r_identity(&u, &v, t)?;
    println!("R_{{{u},{v}}}       = {}", sides.lhs);
    println!("R_{{{},{}}}       = {}", u.times(t), v.times(t), sides.r_ut_vt);
    println!("R_{{{},{}}}       = {}", u, v.times(t), sides.r_u_vt);
    println!("q R + (q-1) R = {}  (holds: {})", sides.rhs, sides.holds());

    let tilde = r_tilde(&u, &v);
    println!("R~ = {tilde}; back to R: {}", r_from_tilde(&tilde, v.length() - u.length()));

    let report = recurrence_counterexample_check();
    println!(
        "({}, {}, {}): lifting relations hold {}, inversion-minimal {}",
        report.u, report.v, report.t, report.lifting_relations_hold, report.t_inversion_minimal
    );
    println!("  R = {} but the recurrence gives {}", report.sides.lhs, report.sides.rhs);
    for (t, ok) in &report.minimal_alternatives {
        println!("  inversion-minimal {t} instead: identity holds {ok}");
    }
    if let Err(e) = generalized_r_identity(&report.u, &report.v, report.t) {
        println!("guarded call refuses: {e}");
    }
    Ok(())
}
