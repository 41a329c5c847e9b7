//! Dimension from the atom partition, checked against exact affine rank, plus
//! the toric and crown criteria on rank-3 intervals.

use bruhat_polytopes::interval::BruhatInterval;
use bruhat_polytopes::oracle::affine_rank;
use bruhat_polytopes::polytope::{block_partition, chain_graph_is_forest, crown_type, dimension, is_toric, vertices};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (u, v) in [("1234", "1432"), ("1234", "3412"), ("1324", "2431"), ("3142", "3142"), ("1234", "2413")] {
        let (u, v) = (u.parse()?, v.parse()?);
        let iv = BruhatInterval::new(u, v)?;
        let rank = affine_rank(&vertices(&iv))?;
        let toric = is_toric(&u, &v)?;
        print!(
            "[{u}, {v}]: B = {}, dim {} (affine rank {rank}), toric {toric}, forest {}",
            block_partition(&u, &v)?,
            dimension(&u, &v)?,
            chain_graph_is_forest(&iv)?
        );
        if iv.rank() == 3 {
            match crown_type(&iv)? {
                Some(k) => print!(", {k}-crown"),
                None => print!(", not a crown"),
            }
        }
        println!();
    }
    Ok(())
}
