//! Parabolic polytopes Q^J_{u,v}: a Grassmannian octahedron, two cells with
//! the same point set, and the full-flag case.

use bruhat_polytopes::parabolic::{min_coset_rep, parabolic_bip_vertices, parabolic_faces_check, ParabolicSubset};
use bruhat_polytopes::perm::Permutation;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = |s: &str| s.parse::<Permutation>();
    let e = Permutation::identity(4);

    let gr = ParabolicSubset::parse(4, "2")?;
    let report = parabolic_faces_check(&e, &p("3412")?, &gr)?;
    println!("J = {gr}, [1234, 3412]: {} points, f-vector {:?}, theorem holds {}", report.points, report.f_vector, report.ok());

    let j = ParabolicSubset::parse(4, "1,3")?;
    let a = parabolic_bip_vertices(&e, &p("4231")?, &j)?;
    let b = parabolic_bip_vertices(&p("1324")?, &p("4231")?, &j)?;
    println!("J = {j}: [1234, 4231] and [1324, 4231] share their {} points: {}", a.len(), a == b);
    match parabolic_bip_vertices(&e, &p("4321")?, &j) {
        Ok(_) => unreachable!(),
        Err(err) => println!("4321 rejected: {err} (min_coset_rep = {})", min_coset_rep(&p("4321")?, &j)?),
    }

    let full = ParabolicSubset::full_flag(4);
    for pt in parabolic_bip_vertices(&e, &p("2134")?, &full)? {
        println!("full flag point {pt:?}");
    }
    Ok(())
}
