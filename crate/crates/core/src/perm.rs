//! Permutations of `{1..n}` in one-line notation and the strong Bruhat order.
//!
//! Positions and values are 1-based everywhere in the public API. A
//! permutation `w` is stored as its word `w(1) w(2) ... w(n)`; right
//! multiplication by a transposition `(i k)` swaps the entries in positions
//! `i` and `k`, left multiplication swaps the values `i` and `k`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Largest supported `n`.
pub const MAX_N: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("permutation size {0} outside 1..={MAX_N}")]
    BadSize(usize),
    #[error("word {0:?} is not a permutation of 1..n")]
    NotBijection(Vec<u8>),
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("cannot parse permutation from {0:?}")]
    Parse(String),
    #[error("invalid transposition ({0} {1})")]
    BadTransposition(usize, usize),
}

/// A permutation of `{1..n}`, `n <= MAX_N`, in one-line notation.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Permutation {
    n: u8,
    word: [u8; MAX_N],
}

/// Ordered by size, then lexicographically by word.
impl Ord for Permutation {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.n, self.word).cmp(&(other.n, other.word))
    }
}

impl PartialOrd for Permutation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The transposition `(i k)` with `1 <= i < k <= n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Transposition {
    i: u8,
    k: u8,
}

impl Transposition {
    pub fn new(i: usize, k: usize) -> Result<Self, PermError> {
        if i == 0 || i >= k || k > MAX_N {
            return Err(PermError::BadTransposition(i, k));
        }
        Ok(Transposition { i: i as u8, k: k as u8 })
    }

    /// Builds `(a b)` from an unordered pair of distinct positions.
    pub fn unordered(a: usize, b: usize) -> Result<Self, PermError> {
        Self::new(a.min(b), a.max(b))
    }

    /// The simple reflection `s_i = (i i+1)`.
    pub fn simple(i: usize) -> Result<Self, PermError> {
        Self::new(i, i + 1)
    }

    pub fn i(&self) -> usize {
        self.i as usize
    }

    pub fn k(&self) -> usize {
        self.k as usize
    }

    pub fn is_simple(&self) -> bool {
        self.k == self.i + 1
    }
}

impl fmt::Display for Transposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.k)
    }
}

impl FromStr for Transposition {
    type Err = PermError;

    /// Accepts `2,4`, `(2,4)`, `(2 4)` and, for single digits, `24`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<&str> = trimmed
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|p| !p.is_empty())
            .collect();
        let nums: Vec<usize> = if parts.len() == 1 && parts[0].len() == 2 {
            parts[0].chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect::<Option<_>>()
        } else {
            parts.iter().map(|p| p.parse().ok()).collect::<Option<_>>()
        }
        .ok_or_else(|| PermError::Parse(s.to_string()))?;
        match nums.as_slice() {
            [a, b] => Transposition::unordered(*a, *b),
            _ => Err(PermError::Parse(s.to_string())),
        }
    }
}

impl Serialize for Transposition {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        [self.i, self.k].serialize(serializer)
    }
}

/// Left or right descents.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl Permutation {
    /// Builds a permutation from its one-line word.
    pub fn new(word: &[u8]) -> Result<Self, PermError> {
        let n = word.len();
        if n == 0 || n > MAX_N {
            return Err(PermError::BadSize(n));
        }
        let mut seen = [false; MAX_N + 1];
        for &x in word {
            let x = x as usize;
            if x == 0 || x > n || seen[x] {
                return Err(PermError::NotBijection(word.to_vec()));
            }
            seen[x] = true;
        }
        let mut buf = [0u8; MAX_N];
        buf[..n].copy_from_slice(word);
        Ok(Permutation { n: n as u8, word: buf })
    }

    pub fn identity(n: usize) -> Self {
        assert!((1..=MAX_N).contains(&n), "size {n} out of range");
        let mut buf = [0u8; MAX_N];
        for (i, slot) in buf.iter_mut().take(n).enumerate() {
            *slot = i as u8 + 1;
        }
        Permutation { n: n as u8, word: buf }
    }

    /// The longest element `w_0 = n (n-1) ... 1`.
    pub fn longest(n: usize) -> Self {
        assert!((1..=MAX_N).contains(&n), "size {n} out of range");
        let mut buf = [0u8; MAX_N];
        for (i, slot) in buf.iter_mut().take(n).enumerate() {
            *slot = (n - i) as u8;
        }
        Permutation { n: n as u8, word: buf }
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn word(&self) -> &[u8] {
        &self.word[..self.n()]
    }

    /// `w(i)` for a 1-based position `i`.
    pub fn at(&self, i: usize) -> usize {
        self.word[i - 1] as usize
    }

    /// The permutation vector `(w(1), ..., w(n))`.
    pub fn to_vector(&self) -> Vec<i64> {
        self.word().iter().map(|&x| x as i64).collect()
    }

    pub fn inverse(&self) -> Self {
        let mut buf = [0u8; MAX_N];
        for (pos, &val) in self.word().iter().enumerate() {
            buf[val as usize - 1] = pos as u8 + 1;
        }
        Permutation { n: self.n, word: buf }
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Self, PermError> {
        if self.n != other.n {
            return Err(PermError::SizeMismatch(self.n(), other.n()));
        }
        let mut buf = [0u8; MAX_N];
        for (slot, &o) in buf.iter_mut().zip(other.word()) {
            *slot = self.word[o as usize - 1];
        }
        Ok(Permutation { n: self.n, word: buf })
    }

    /// `self · t`: swaps the entries in positions `t.i()` and `t.k()`.
    pub fn times(&self, t: Transposition) -> Self {
        assert!(t.k() <= self.n(), "transposition {t} outside S_{}", self.n);
        let mut out = *self;
        out.word.swap(t.i() - 1, t.k() - 1);
        out
    }

    /// `t · self`: swaps the values `t.i()` and `t.k()`.
    pub fn left_times(&self, t: Transposition) -> Self {
        assert!(t.k() <= self.n(), "transposition {t} outside S_{}", self.n);
        let (a, b) = (t.i as u8, t.k as u8);
        let mut out = *self;
        for x in out.word.iter_mut().take(self.n()) {
            if *x == a {
                *x = b;
            } else if *x == b {
                *x = a;
            }
        }
        out
    }

    /// Number of inversions, which equals the Coxeter length.
    pub fn length(&self) -> usize {
        let w = self.word();
        let mut count = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Inversion pairs `(i, j)`, `i < j`, `w(i) > w(j)`, as transpositions.
    pub fn inversions(&self) -> Vec<Transposition> {
        let w = self.word();
        let mut out = Vec::new();
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    out.push(Transposition { i: i as u8 + 1, k: j as u8 + 1 });
                }
            }
        }
        out
    }

    /// Indices `i` of the simple reflections `s_i` in the descent set.
    pub fn descents(&self, side: Side) -> Vec<usize> {
        let w = match side {
            Side::Right => *self,
            Side::Left => self.inverse(),
        };
        (1..w.n()).filter(|&i| w.at(i) > w.at(i + 1)).collect()
    }

    pub fn has_right_descent(&self, i: usize) -> bool {
        self.at(i) > self.at(i + 1)
    }

    /// Strong Bruhat order via the rank-matrix criterion. Panics if the sizes differ.
    pub fn bruhat_le(&self, other: &Permutation) -> bool {
        assert_eq!(self.n, other.n, "Bruhat comparison across sizes");
        let n = self.n();
        // r[j] = #{a <= i : w(a) >= j} for the current prefix length i
        let mut mine = [0i32; MAX_N + 2];
        let mut theirs = [0i32; MAX_N + 2];
        for i in 0..n {
            let a = self.word[i] as usize;
            let b = other.word[i] as usize;
            for j in 1..=a {
                mine[j] += 1;
            }
            for j in 1..=b {
                theirs[j] += 1;
            }
            if (1..=n).any(|j| mine[j] > theirs[j]) {
                return false;
            }
        }
        true
    }

    /// If `other = self · t` with `length` one larger, returns `t`.
    pub fn cover_transposition(&self, other: &Permutation) -> Option<Transposition> {
        if self.n != other.n || other.length() != self.length() + 1 {
            return None;
        }
        let diff: Vec<usize> = (1..=self.n()).filter(|&i| self.at(i) != other.at(i)).collect();
        match diff.as_slice() {
            [i, k] if self.at(*i) == other.at(*k) && self.at(*k) == other.at(*i) => {
                Some(Transposition { i: *i as u8, k: *k as u8 })
            }
            _ => None,
        }
    }

    /// All `self · t` covering `self`: `w(i) < w(k)` with no value in between at positions `i < j < k`.
    pub fn upper_covers(&self) -> Vec<(Permutation, Transposition)> {
        let n = self.n();
        let mut out = Vec::new();
        for i in 1..=n {
            for k in i + 1..=n {
                let (a, b) = (self.at(i), self.at(k));
                if a < b && !(i + 1..k).any(|j| (a..b).contains(&self.at(j))) {
                    let t = Transposition { i: i as u8, k: k as u8 };
                    out.push((self.times(t), t));
                }
            }
        }
        out
    }

    /// All `self · t` covered by `self`.
    pub fn lower_covers(&self) -> Vec<(Permutation, Transposition)> {
        let n = self.n();
        let mut out = Vec::new();
        for i in 1..=n {
            for k in i + 1..=n {
                let (a, b) = (self.at(i), self.at(k));
                if a > b && !(i + 1..k).any(|j| (b..a).contains(&self.at(j))) {
                    let t = Transposition { i: i as u8, k: k as u8 };
                    out.push((self.times(t), t));
                }
            }
        }
        out
    }
}

/// `u <= v` in strong Bruhat order.
pub fn bruhat_leq(u: &Permutation, v: &Permutation) -> Result<bool, PermError> {
    if u.n != v.n {
        return Err(PermError::SizeMismatch(u.n(), v.n()));
    }
    Ok(u.bruhat_le(v))
}

/// `u ⋖ v`: `v = u·t` for a transposition `t` and `length(v) = length(u) + 1`.
pub fn is_cover(u: &Permutation, v: &Permutation) -> bool {
    u.cover_transposition(v).is_some()
}

/// Left or right descent set as simple-reflection indices.
pub fn descents(p: &Permutation, side: Side) -> Vec<usize> {
    p.descents(side)
}

/// All permutations of `{1..n}` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut word: Vec<u8> = (1..=n as u8).collect();
    let mut out = vec![Permutation::new(&word).expect("identity")];
    // next lexicographic permutation
    loop {
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| word[i] < word[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| word[j] > word[i]).expect("successor exists");
        word.swap(i, j);
        word[i + 1..].reverse();
        out.push(Permutation::new(&word).expect("valid permutation"));
    }
    out
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n() <= 9 {
            for &x in self.word() {
                write!(f, "{x}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.word().iter().map(|x| x.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl FromStr for Permutation {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let word: Option<Vec<u8>> = if s.contains(',') {
            s.split(',').map(|p| p.trim().parse::<u8>().ok()).collect()
        } else {
            s.chars().map(|c| c.to_digit(10).map(|d| d as u8)).collect()
        };
        let word = word.ok_or_else(|| PermError::Parse(s.to_string()))?;
        Permutation::new(&word)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn compose_examples() {
        let w = p("2431");
        assert_eq!(Permutation::identity(4).compose(&w).unwrap(), w);
        assert_eq!(p("2143").times(Transposition::new(2, 4).unwrap()), p("2341"));
        assert_eq!(w.compose(&w.inverse()).unwrap(), Permutation::identity(4));
        assert!(matches!(w.compose(&Permutation::identity(3)), Err(PermError::SizeMismatch(4, 3))));
    }

    #[test]
    fn right_times_is_composition_with_transposition() {
        let w = p("31524");
        let t = Transposition::new(2, 5).unwrap();
        let t_perm = Permutation::identity(5).times(t);
        assert_eq!(w.times(t), w.compose(&t_perm).unwrap());
        assert_eq!(w.left_times(t), t_perm.compose(&w).unwrap());
    }

    #[test]
    fn length_examples() {
        assert_eq!(p("1234").length(), 0);
        assert_eq!(p("4321").length(), 6);
        assert_eq!(p("2143").length(), 2);
        assert_eq!(Permutation::longest(7).length(), 21);
    }

    #[test]
    fn bruhat_examples() {
        let e = Permutation::identity(4);
        for w in all_permutations(4) {
            assert!(e.bruhat_le(&w));
        }
        assert!(bruhat_leq(&p("1324"), &p("2431")).unwrap());
        assert!(!bruhat_leq(&p("2143"), &p("1342")).unwrap());
        assert!(bruhat_leq(&p("123"), &p("1234")).is_err());
    }

    #[test]
    fn cover_examples() {
        assert!(is_cover(&p("1234"), &p("1243")));
        assert!(!is_cover(&p("1234"), &p("1432")));
        assert!(is_cover(&p("2143"), &p("2341")));
        assert_eq!(p("2143").cover_transposition(&p("2341")), Some(Transposition::new(2, 4).unwrap()));
        assert!(!is_cover(&p("1234"), &p("123")));
    }

    #[test]
    fn descent_examples() {
        assert!(p("1234").descents(Side::Right).is_empty());
        assert!(p("1234").descents(Side::Left).is_empty());
        assert_eq!(p("4321").descents(Side::Right), vec![1, 2, 3]);
        assert_eq!(p("2143").descents(Side::Right), vec![1, 3]);
        // 2431^{-1} = 4132
        assert_eq!(p("2431").descents(Side::Left), vec![1, 3]);
    }

    #[test]
    fn covers_agree_with_definition() {
        for w in all_permutations(4) {
            let ups = w.upper_covers();
            for z in all_permutations(4) {
                let by_def = z.length() == w.length() + 1 && w.cover_transposition(&z).is_some();
                assert_eq!(ups.iter().any(|(c, _)| *c == z), by_def, "{w} {z}");
            }
            for (c, t) in w.lower_covers() {
                assert_eq!(c.cover_transposition(&w), Some(t));
            }
        }
    }

    #[test]
    fn text_format() {
        assert_eq!(p("2431").to_string(), "2431");
        let big: Permutation = "10,2,3,4,5,6,7,8,9,1".parse().unwrap();
        assert_eq!(big.n(), 10);
        assert_eq!(big.to_string(), "10,2,3,4,5,6,7,8,9,1");
        assert!("1224".parse::<Permutation>().is_err());
        assert!("12a4".parse::<Permutation>().is_err());
        assert!("".parse::<Permutation>().is_err());
        assert_eq!("2,4".parse::<Transposition>().unwrap(), Transposition::new(2, 4).unwrap());
        assert_eq!("(4 2)".parse::<Transposition>().unwrap(), Transposition::new(2, 4).unwrap());
        assert_eq!("24".parse::<Transposition>().unwrap(), Transposition::new(2, 4).unwrap());
        assert!(Transposition::new(3, 3).is_err());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(all_permutations(1).len(), 1);
        assert_eq!(all_permutations(4).len(), 24);
        let five = all_permutations(5);
        assert_eq!(five.len(), 120);
        assert!(five.windows(2).all(|w| w[0] < w[1]));
    }
}
