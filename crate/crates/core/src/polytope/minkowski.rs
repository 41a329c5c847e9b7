use serde::Serialize;

use super::{interval_matroids, vertices, Matroid, MatroidConvention, PolytopeError};
use crate::interval::BruhatInterval;
use crate::oracle::extreme_points;

pub const MINKOWSKI_MAX_N: usize = 4;

/// Extreme points of `Σ_k Γ_{M_k}`, sorted.
pub fn minkowski_sum_vertices(matroids: &[Matroid]) -> Result<Vec<Vec<i64>>, PolytopeError> {
    let n = matroids.first().map_or(0, Matroid::n);
    let mut acc: Vec<Vec<i64>> = vec![vec![0; n]];
    for m in matroids {
        let mut next: Vec<Vec<i64>> = Vec::new();
        for a in &acc {
            for b in m.polytope_vertices() {
                next.push(a.iter().zip(&b).map(|(x, y)| x + y).collect());
            }
        }
        next.sort();
        next.dedup();
        // ext(A + B) ⊆ ext(A) + ext(B), so pruning each partial sum is safe
        acc = extreme_points(&next)?;
    }
    acc.sort();
    Ok(acc)
}

fn normalized(points: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = points.first().map_or(0, Vec::len);
    let mins: Vec<i64> = (0..n).map(|i| points.iter().map(|p| p[i]).min().unwrap_or(0)).collect();
    let mut out: Vec<Vec<i64>> =
        points.iter().map(|p| p.iter().zip(&mins).map(|(x, m)| x - m).collect()).collect();
    out.sort();
    out.dedup();
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinkowskiVerdict {
    pub convention: MatroidConvention,
    /// Both vertex sets agree after translating their coordinatewise minima to zero.
    pub equal: bool,
    pub sum_vertices: usize,
    pub polytope_vertices: usize,
}

/// Compares `Q_{u,v}` with the Minkowski sum of its matroid polytopes under one convention.
pub fn minkowski_check(
    interval: &BruhatInterval,
    convention: MatroidConvention,
) -> Result<MinkowskiVerdict, PolytopeError> {
    let n = interval.n();
    if n > MINKOWSKI_MAX_N {
        return Err(PolytopeError::SizeGuard(n, MINKOWSKI_MAX_N));
    }
    let q = vertices(interval);
    let sum = if n == 1 { vec![vec![0]] } else { minkowski_sum_vertices(&interval_matroids(interval, convention)?)? };
    let (a, b) = (normalized(&q), normalized(&sum));
    Ok(MinkowskiVerdict { convention, equal: a == b, sum_vertices: sum.len(), polytope_vertices: q.len() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(u: &str, v: &str) -> BruhatInterval {
        BruhatInterval::new(u.parse().unwrap(), v.parse().unwrap()).unwrap()
    }

    #[test]
    fn point_and_hexagon() {
        for c in MatroidConvention::ALL {
            assert!(minkowski_check(&iv("2413", "2413"), c).unwrap().equal);
            let hex = minkowski_check(&iv("123", "321"), c).unwrap();
            assert!(hex.equal);
            assert_eq!(hex.sum_vertices, 6);
        }
    }

    #[test]
    fn top_positions_matches_example() {
        assert!(minkowski_check(&iv("1324", "2431"), MatroidConvention::TopPositions).unwrap().equal);
        assert!(minkowski_check(&iv("12345", "12345"), MatroidConvention::TopPositions).is_err());
    }
}
