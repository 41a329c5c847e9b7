//! Extending M(v) = vt, M(u) = ut to a special matching: one success and one
//! forced contradiction.

use bruhat_polytopes::perm::Transposition;
use bruhat_polytopes::rpoly::{extend_to_special_matching, Extension};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (u, v, (i, k)) in [("143265", "254163", (3, 6)), ("1324", "4312", (2, 4))] {
        let (u, v) = (u.parse()?, v.parse()?);
        let t = Transposition::new(i, k)?;
        match extend_to_special_matching(&u, &v, t)? {
            Extension::Found { matching } => {
                println!("[{u}, {v}] with {t}: special matching on {} elements", matching.len());
                for (a, b) in matching.iter().filter(|(a, b)| a < b).take(6) {
                    println!("  {a} ↔ {b}");
                }
            }
            Extension::Failed { witness } => {
                println!("[{u}, {v}] with {t}: no special matching; forced assignments:");
                for (a, b) in &witness.forced {
                    println!("  M({a}) = {b}");
                }
                println!("  then {}", witness.contradiction);
            }
        }
    }
    Ok(())
}
