//! Generalized lifting on a pair with no usable simple descent, and the
//! atom/coatom chains it produces.

use bruhat_polytopes::interval::{
    chain_via_atoms, chain_via_coatoms, classical_lift, generalized_lift, inversion_minimal_transpositions,
    BruhatInterval,
};
use bruhat_polytopes::perm::{Permutation, Side};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let u: Permutation = "2143".parse()?;
    let v: Permutation = "3241".parse()?;
    let iv = BruhatInterval::new(u, v)?;
    println!("[{u}, {v}] has {} elements and rank {}", iv.len(), iv.rank());

    // D_R(v) \ D_R(u) is empty here, so the classical property has nothing to lift by
    let usable: Vec<usize> = v.descents(Side::Right).into_iter().filter(|&i| !u.has_right_descent(i)).collect();
    println!("simple descents usable by classical lifting: {usable:?}");
    for i in 1..u.n() {
        if let Err(e) = classical_lift(&u, &v, i) {
            println!("  s_{i}: {e}");
        }
    }

    for t in inversion_minimal_transpositions(&u, &v)? {
        println!("inversion-minimal {t}: u·t = {}, v·t = {}", u.times(t), v.times(t));
    }
    let lift = generalized_lift(&u, &v)?;
    println!("chosen lift {}: {u} ≤ {} ⋖ {v} and {u} ⋖ {} ≤ {v}", lift.t, lift.vt, lift.ut);

    for (name, chain) in [("atoms", chain_via_atoms(&iv)?), ("coatoms", chain_via_coatoms(&iv)?)] {
        let steps: Vec<String> = chain.elements().iter().map(|z| z.to_string()).collect();
        let labels: Vec<String> = chain.transpositions().iter().map(|t| t.to_string()).collect();
        println!("chain via {name}: {} with labels {}", steps.join(" ⋖ "), labels.join(" "));
    }
    Ok(())
}
