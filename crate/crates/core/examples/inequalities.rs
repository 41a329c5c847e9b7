//! Inequality description of Q_{1324,2431}, and the raw rank-sum systems of
//! both matroid conventions next to it.

use bruhat_polytopes::interval::BruhatInterval;
use bruhat_polytopes::perm::all_permutations;
use bruhat_polytopes::polytope::{bip_inequalities, rank_sum_system, MatroidConvention, PolytopeDescription};

fn show(d: &PolytopeDescription) {
    for e in &d.equalities {
        println!("  Σx = {}", e.rhs);
    }
    for i in &d.inequalities {
        let lhs: Vec<String> = i.subset.iter().map(|k| format!("x{k}")).collect();
        println!("  {} ≤ {}", lhs.join(" + "), i.rhs);
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let iv = BruhatInterval::new("1324".parse()?, "2431".parse()?)?;
    let desc = bip_inequalities(&iv)?;
    println!("Q_{{1324,2431}}:");
    show(&desc);

    let inside: Vec<String> =
        all_permutations(4).into_iter().filter(|w| desc.contains(&w.to_vector())).map(|w| w.to_string()).collect();
    println!("permutation vectors satisfying it: {}", inside.join(" "));

    for c in MatroidConvention::ALL {
        let raw = rank_sum_system(&iv, c)?;
        println!("rank sums, {} convention (vertices sum to {}):", c.name(), raw.equalities[0].rhs);
        show(&raw);
    }
    Ok(())
}
