//! The face criterion on a worked pair, its normal-cone witness, and the face
//! lattice and diameter of the ambient polytope.

use bruhat_polytopes::interval::BruhatInterval;
use bruhat_polytopes::oracle;
use bruhat_polytopes::perm::Permutation;
use bruhat_polytopes::polytope::{diameter, enumerate_faces, f_vector, face_graph, normal_cone, vertices};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = |s: &str| s.parse::<Permutation>();
    let (u, v, x, y) = (p("1243")?, p("4132")?, p("2143")?, p("4132")?);

    let g = face_graph(&x, &y, &u, &v)?;
    println!("G for [{x}, {y}] in [{u}, {v}]: nodes {}, edges {:?}, acyclic {}", g.nodes, g.edges, g.is_acyclic());
    let cone = normal_cone(&x, &y, &u, &v)?;
    println!("witness ω = {:?}; ω_i = ω_j for {:?}; ω_i < ω_j for {:?}", cone.witness, cone.equalities, cone.strict);

    // cross-check with the exact LP
    let iv = BruhatInterval::new(u, v)?;
    let face: Vec<Vec<i64>> = BruhatInterval::new(x, y)?.elements().iter().map(|z| z.to_vector()).collect();
    println!("LP agrees: {}", oracle::is_face(&face, &vertices(&iv))?);

    let faces = enumerate_faces(&iv);
    println!("f-vector of Q_{{{u},{v}}}: {:?}", f_vector(&faces));
    for f in faces.iter().filter(|f| f.dim == 2) {
        println!("  2-face [{}, {}]", f.x, f.y);
    }
    println!("diameter {} = rank {}", diameter(&iv), iv.rank());
    Ok(())
}
