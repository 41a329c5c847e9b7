use serde::Serialize;

use super::PolytopeError;
use crate::interval::BruhatInterval;
use crate::perm::Permutation;

/// Subsets of `{1..n}` are bitmasks with bit `i - 1` standing for `i`.
pub type Subset = u16;

pub fn subset_elements(mask: Subset) -> Vec<usize> {
    (0..16).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect()
}

pub fn subset_mask(elems: &[usize]) -> Subset {
    elems.iter().fold(0, |m, &i| m | 1 << (i - 1))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matroid {
    n: usize,
    k: usize,
    bases: Vec<Subset>,
}

impl Matroid {
    /// Validates equal cardinality and the basis-exchange axiom.
    pub fn new(n: usize, bases: impl IntoIterator<Item = Subset>) -> Result<Self, PolytopeError> {
        let mut bases: Vec<Subset> = bases.into_iter().collect();
        bases.sort_unstable();
        bases.dedup();
        let k = bases.first().ok_or(PolytopeError::NoBases)?.count_ones() as usize;
        if bases.iter().any(|b| b.count_ones() as usize != k || (*b as u32) >> n != 0) {
            return Err(PolytopeError::NotMatroid("bases of unequal size or outside [n]".into()));
        }
        for &b1 in &bases {
            for &b2 in &bases {
                for a in subset_elements(b1 & !b2) {
                    let ok = subset_elements(b2 & !b1)
                        .into_iter()
                        .any(|b| bases.binary_search(&(b1 & !(1 << (a - 1)) | 1 << (b - 1))).is_ok());
                    if !ok {
                        return Err(PolytopeError::NotMatroid(format!(
                            "exchange fails for {:?}, {:?} at {a}",
                            subset_elements(b1),
                            subset_elements(b2)
                        )));
                    }
                }
            }
        }
        Ok(Matroid { n, k, bases })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.k
    }

    pub fn bases(&self) -> &[Subset] {
        &self.bases
    }

    pub fn bases_as_sets(&self) -> Vec<Vec<usize>> {
        self.bases.iter().map(|&b| subset_elements(b)).collect()
    }

    /// `r(A) = max_B |A ∩ B|`.
    pub fn rank_of(&self, a: Subset) -> usize {
        self.bases.iter().map(|b| (a & b).count_ones() as usize).max().unwrap_or(0)
    }

    /// Vertices of the matroid polytope: indicator vectors of the bases.
    pub fn polytope_vertices(&self) -> Vec<Vec<i64>> {
        self.bases
            .iter()
            .map(|&b| (0..self.n).map(|i| (b >> i & 1) as i64).collect())
            .collect()
    }
}

/// Which `k`-subset of `z` spans the `k`-th matroid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MatroidConvention {
    /// `{z(1), ..., z(k)}` (values in the first `k` positions).
    FirstValues,
    /// `{z⁻¹(n), ..., z⁻¹(n-k+1)}` (positions of the `k` largest values).
    TopPositions,
}

impl MatroidConvention {
    pub const ALL: [MatroidConvention; 2] = [MatroidConvention::FirstValues, MatroidConvention::TopPositions];

    pub fn subset(self, z: &Permutation, k: usize) -> Subset {
        let n = z.n();
        match self {
            MatroidConvention::FirstValues => (1..=k).fold(0, |m, i| m | 1 << (z.at(i) - 1)),
            MatroidConvention::TopPositions => {
                let inv = z.inverse();
                (n - k + 1..=n).fold(0, |m, val| m | 1 << (inv.at(val) - 1))
            }
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            MatroidConvention::FirstValues => "first-values",
            MatroidConvention::TopPositions => "top-positions",
        }
    }
}

impl std::str::FromStr for MatroidConvention {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "first-values" => Ok(MatroidConvention::FirstValues),
            "top-positions" => Ok(MatroidConvention::TopPositions),
            _ => Err(format!("unknown convention {s:?} (first-values | top-positions)")),
        }
    }
}

pub fn interval_matroid(
    interval: &BruhatInterval,
    k: usize,
    convention: MatroidConvention,
) -> Result<Matroid, PolytopeError> {
    let n = interval.n();
    if k == 0 || k >= n {
        return Err(PolytopeError::BadRank(k));
    }
    Matroid::new(n, interval.elements().iter().map(|z| convention.subset(z, k)))
}

/// The matroids `M_1, ..., M_{n-1}` of an interval.
pub fn interval_matroids(
    interval: &BruhatInterval,
    convention: MatroidConvention,
) -> Result<Vec<Matroid>, PolytopeError> {
    (1..interval.n()).map(|k| interval_matroid(interval, k, convention)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Equality {
    pub coeffs: Vec<i64>,
    pub rhs: i64,
}

/// `Σ_{i ∈ subset} x_i ≤ rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Inequality {
    pub subset: Vec<usize>,
    pub rhs: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PolytopeDescription {
    pub vertices: Vec<Vec<i64>>,
    pub equalities: Vec<Equality>,
    pub inequalities: Vec<Inequality>,
}

impl PolytopeDescription {
    /// Exact membership test for an integer point.
    pub fn contains(&self, x: &[i64]) -> bool {
        self.equalities
            .iter()
            .all(|e| e.coeffs.iter().zip(x).map(|(c, v)| c * v).sum::<i64>() == e.rhs)
            && self
                .inequalities
                .iter()
                .all(|ie| ie.subset.iter().map(|&i| x[i - 1]).sum::<i64>() <= ie.rhs)
    }

    pub fn inequality_for(&self, subset: &[usize]) -> Option<&Inequality> {
        self.inequalities.iter().find(|ie| ie.subset == subset)
    }
}

/// Proper nonempty subsets of `[n]`, largest first, then lexicographically.
fn proper_subsets(n: usize) -> Vec<Vec<usize>> {
    let mut subsets: Vec<Vec<usize>> = (1..(1u32 << n) - 1).map(|m| subset_elements(m as Subset)).collect();
    subsets.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    subsets
}

/// The rank-sum system `Σ x = Σ k,  x_A ≤ Σ_k r_{M_k}(A)` for the matroids of
/// one convention. This cuts out the Minkowski sum of the matroid polytopes
/// themselves, not `Q_{u,v}`.
pub fn rank_sum_system(
    interval: &BruhatInterval,
    convention: MatroidConvention,
) -> Result<PolytopeDescription, PolytopeError> {
    let n = interval.n();
    let matroids = interval_matroids(interval, convention)?;
    let inequalities = proper_subsets(n)
        .into_iter()
        .map(|a| {
            let mask = subset_mask(&a);
            let rhs = matroids.iter().map(|m| m.rank_of(mask) as i64).sum();
            Inequality { subset: a, rhs }
        })
        .collect();
    Ok(PolytopeDescription {
        vertices: elementwise_basis_sums(interval, convention),
        equalities: vec![Equality { coeffs: vec![1; n], rhs: (n * (n - 1) / 2) as i64 }],
        inequalities,
    })
}

/// `Σ_k e_{I_k(z)}` for each `z` — the per-element sum of basis indicators.
fn elementwise_basis_sums(interval: &BruhatInterval, convention: MatroidConvention) -> Vec<Vec<i64>> {
    let n = interval.n();
    let mut out: Vec<Vec<i64>> = interval
        .elements()
        .iter()
        .map(|z| {
            let mut x = vec![0; n];
            for k in 1..n {
                for i in subset_elements(convention.subset(z, k)) {
                    x[i - 1] += 1;
                }
            }
            x
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Inequality description of `Q_{u,v}`:
/// `Σ x = n(n+1)/2` and `x_A ≤ |A| + Σ_k r_{M_k}(A)` over all proper nonempty
/// `A`, with the top-positions matroids. The `|A|` shift accounts for
/// `Q_{u,v} - (1, ..., 1)` being the Minkowski sum of their polytopes.
pub fn bip_inequalities(interval: &BruhatInterval) -> Result<PolytopeDescription, PolytopeError> {
    let n = interval.n();
    let base = rank_sum_system(interval, MatroidConvention::TopPositions)?;
    let inequalities = base
        .inequalities
        .into_iter()
        .map(|ie| Inequality { rhs: ie.rhs + ie.subset.len() as i64, subset: ie.subset })
        .collect();
    let vertices = interval.elements().iter().map(|z| z.to_vector()).collect();
    Ok(PolytopeDescription {
        vertices,
        equalities: vec![Equality { coeffs: vec![1; n], rhs: (n * (n + 1) / 2) as i64 }],
        inequalities,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(u: &str, v: &str) -> BruhatInterval {
        BruhatInterval::new(u.parse().unwrap(), v.parse().unwrap()).unwrap()
    }

    #[test]
    fn first_values_matroids_of_example() {
        let i = iv("1324", "2431");
        let m = |k| interval_matroid(&i, k, MatroidConvention::FirstValues).unwrap().bases_as_sets();
        assert_eq!(m(1), vec![vec![1], vec![2]]);
        let mut m2 = m(2);
        m2.sort();
        assert_eq!(m2, vec![vec![1, 3], vec![1, 4], vec![2, 3], vec![2, 4]]);
        assert_eq!(m(3).len(), 4);
    }

    #[test]
    fn rank_function() {
        let i = iv("1324", "2431");
        let m2 = interval_matroid(&i, 2, MatroidConvention::FirstValues).unwrap();
        assert_eq!(m2.rank_of(0), 0);
        assert_eq!(m2.rank_of(0b1111), 2);
        assert_eq!(m2.rank_of(subset_mask(&[3, 4])), 1);
    }

    #[test]
    fn exchange_axiom_rejects_non_matroid() {
        // {12, 34} fails exchange
        assert!(Matroid::new(4, [subset_mask(&[1, 2]), subset_mask(&[3, 4])]).is_err());
        assert!(Matroid::new(4, [subset_mask(&[1, 2]), subset_mask(&[1, 3])]).is_ok());
        assert!(interval_matroid(&iv("1234", "1234"), 4, MatroidConvention::FirstValues).is_err());
    }

    #[test]
    fn singleton_description_is_a_point() {
        let i = iv("2413", "2413");
        let d = bip_inequalities(&i).unwrap();
        for z in crate::perm::all_permutations(4) {
            assert_eq!(d.contains(&z.to_vector()), z.to_string() == "2413");
        }
    }

    #[test]
    fn description_of_example_and_its_shape() {
        let i = iv("1324", "2431");
        let d = bip_inequalities(&i).unwrap();
        assert_eq!(d.inequalities.len(), 14);
        assert_eq!(d.equalities[0].rhs, 10);
        assert_eq!(d.inequalities[0].subset, vec![1, 2, 3]);
        for z in crate::perm::all_permutations(4) {
            assert_eq!(d.contains(&z.to_vector()), i.contains(&z), "{z}");
        }
    }
}
