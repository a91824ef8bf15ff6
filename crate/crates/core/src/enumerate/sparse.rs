//! Sparse rational vectors and row-major sparse matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Sorted by index, no zero entries.
pub type SparseVec = Vec<(u32, BigRational)>;

/// Sums a list of `(index, value)` contributions into a [`SparseVec`].
pub fn collect(mut parts: Vec<(u32, BigRational)>) -> SparseVec {
    parts.sort_unstable_by_key(|(i, _)| *i);
    let mut out: SparseVec = Vec::with_capacity(parts.len());
    for (i, c) in parts {
        match out.last_mut() {
            Some((j, acc)) if *j == i => *acc += c,
            _ => {
                if let Some((_, last)) = out.last() {
                    if last.is_zero() {
                        out.pop();
                    }
                }
                out.push((i, c));
            }
        }
    }
    if out.last().is_some_and(|(_, c)| c.is_zero()) {
        out.pop();
    }
    out
}

/// `a + k·b`.
pub fn add_scaled(
    a: &[(u32, BigRational)],
    b: &[(u32, BigRational)],
    k: &BigRational,
) -> SparseVec {
    if k.is_zero() {
        return a.to_vec();
    }
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, &b[j].1 * k));
            j += 1;
        } else {
            let v = &a[i].1 + &b[j].1 * k;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale(v: &[(u32, BigRational)], k: &BigRational) -> SparseVec {
    if k.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, c)| (*i, c * k)).collect()
}

pub fn unit(i: u32) -> SparseVec {
    vec![(i, BigRational::one())]
}

/// Square matrix acting on row vectors: row `i` is the image of basis vector
/// `i`, so a word `g1 g2 … gk` acts by `M_{g1} M_{g2} … M_{gk}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    pub dim: usize,
    pub rows: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zero(dim: usize) -> Self {
        SparseMatrix {
            dim,
            rows: vec![Vec::new(); dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        SparseMatrix {
            dim,
            rows: (0..dim as u32).map(unit).collect(),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> BigRational {
        self.rows[i]
            .binary_search_by_key(&(j as u32), |(k, _)| *k)
            .map(|pos| self.rows[i][pos].1.clone())
            .unwrap_or_else(|_| BigRational::zero())
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// `v · self`
    pub fn vec_mul(&self, v: &[(u32, BigRational)]) -> SparseVec {
        let mut parts = Vec::new();
        for (i, c) in v {
            for (j, d) in &self.rows[*i as usize] {
                parts.push((*j, c * d));
            }
        }
        collect(parts)
    }

    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.dim, other.dim);
        let other = IntegralMatrix::new(other);
        SparseMatrix {
            dim: self.dim,
            rows: self.rows.par_iter().map(|r| other.vec_mul(r)).collect(),
        }
    }

    pub fn add_scaled(&self, other: &SparseMatrix, k: &BigRational) -> SparseMatrix {
        assert_eq!(self.dim, other.dim);
        SparseMatrix {
            dim: self.dim,
            rows: self
                .rows
                .iter()
                .zip(&other.rows)
                .map(|(a, b)| add_scaled(a, b, k))
                .collect(),
        }
    }

    pub fn scale(&self, k: &BigRational) -> SparseMatrix {
        SparseMatrix {
            dim: self.dim,
            rows: self.rows.iter().map(|r| scale(r, k)).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(i, r)| r.len() == 1 && r[0].0 as usize == i && r[0].1.is_one())
    }

    /// Row-major `(row, col, value)` triplets with values as strings.
    pub fn to_triplets(&self) -> Vec<Triplet> {
        let mut out = Vec::with_capacity(self.nnz());
        for (i, r) in self.rows.iter().enumerate() {
            for (j, c) in r {
                out.push(Triplet(i as u32, *j, c.to_string()));
            }
        }
        out
    }

    pub fn from_triplets(dim: usize, triplets: &[Triplet]) -> Result<Self, String> {
        let mut rows = vec![Vec::new(); dim];
        for Triplet(i, j, v) in triplets {
            if *i as usize >= dim || *j as usize >= dim {
                return Err(format!(
                    "triplet ({i}, {j}) out of range for dimension {dim}"
                ));
            }
            let v: BigRational = v.parse().map_err(|_| format!("bad rational {v:?}"))?;
            rows[*i as usize].push((*j, v));
        }
        let rows = rows.into_iter().map(collect).collect();
        Ok(SparseMatrix { dim, rows })
    }
}

/// A sparse vector as integer numerators over one positive denominator,
/// with no common factor between the numerators and the denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntRow {
    pub den: BigInt,
    pub nums: Vec<(u32, BigInt)>,
}

fn lcm_into(acc: &mut BigInt, x: &BigInt) {
    if !(&*acc % x).is_zero() {
        *acc = acc.lcm(x);
    }
}

impl IntRow {
    pub fn zero() -> Self {
        IntRow {
            den: BigInt::one(),
            nums: Vec::new(),
        }
    }

    pub fn unit(i: u32) -> Self {
        IntRow {
            den: BigInt::one(),
            nums: vec![(i, BigInt::one())],
        }
    }

    pub fn is_empty(&self) -> bool {
        self.nums.is_empty()
    }

    /// Divides out the common content and makes the denominator positive.
    pub fn normalized(mut den: BigInt, mut nums: Vec<(u32, BigInt)>) -> Self {
        if nums.is_empty() {
            return IntRow::zero();
        }
        if den.is_negative() {
            den = -den;
            for (_, n) in nums.iter_mut() {
                *n = -std::mem::take(n);
            }
        }
        let mut g = den.clone();
        for (_, n) in &nums {
            if g.is_one() {
                break;
            }
            g = g.gcd(n);
        }
        if !g.is_one() {
            den /= &g;
            for (_, n) in nums.iter_mut() {
                *n /= &g;
            }
        }
        IntRow { den, nums }
    }

    pub fn from_sparse(v: &[(u32, BigRational)]) -> Self {
        let mut den = BigInt::one();
        for (_, c) in v {
            lcm_into(&mut den, c.denom());
        }
        let nums = v
            .iter()
            .map(|(j, c)| (*j, c.numer() * (&den / c.denom())))
            .collect();
        IntRow { den, nums }
    }

    pub fn to_sparse(&self) -> SparseVec {
        self.nums
            .iter()
            .map(|(j, n)| (*j, BigRational::new(n.clone(), self.den.clone())))
            .collect()
    }

    /// The numerator at index `j`.
    pub fn coeff(&self, j: u32) -> Option<&BigInt> {
        self.nums
            .binary_search_by_key(&j, |(k, _)| *k)
            .ok()
            .map(|p| &self.nums[p].1)
    }
}

/// A term `(num / den) · row` of a linear combination.
pub struct Term<'a> {
    pub num: BigInt,
    pub den: BigInt,
    pub row: &'a IntRow,
}

impl<'a> Term<'a> {
    pub fn rational(c: &BigRational, row: &'a IntRow) -> Self {
        Term {
            num: c.numer().clone(),
            den: c.denom().clone(),
            row,
        }
    }

    pub fn int(num: BigInt, row: &'a IntRow) -> Self {
        Term {
            num,
            den: BigInt::one(),
            row,
        }
    }
}

/// `Σ terms` over indices below `dim`, accumulated on a common denominator
/// with one content reduction at the end.
pub fn combine_int(dim: usize, terms: &[Term<'_>]) -> IntRow {
    let mut common = BigInt::one();
    let dens: Vec<BigInt> = terms.iter().map(|t| &t.den * &t.row.den).collect();
    for (t, d) in terms.iter().zip(&dens) {
        if !t.num.is_zero() && !t.row.is_empty() {
            lcm_into(&mut common, d);
        }
    }
    let mut acc = vec![BigInt::zero(); dim];
    let mut touched = Vec::new();
    for (t, d) in terms.iter().zip(&dens) {
        if t.num.is_zero() || t.row.is_empty() {
            continue;
        }
        let k = &t.num * (&common / d);
        for (j, n) in &t.row.nums {
            let slot = &mut acc[*j as usize];
            if slot.is_zero() {
                touched.push(*j);
            }
            *slot += &k * n;
        }
    }
    touched.sort_unstable();
    touched.dedup();
    let mut nums = Vec::with_capacity(touched.len());
    for j in touched {
        let n = std::mem::take(&mut acc[j as usize]);
        if !n.is_zero() {
            nums.push((j, n));
        }
    }
    IntRow::normalized(common, nums)
}

/// `Σ c_k · rows_k` as a rational vector.
pub fn combine<'a>(
    dim: usize,
    terms: impl IntoIterator<Item = (&'a BigRational, &'a IntRow)>,
) -> SparseVec {
    let terms: Vec<Term<'_>> = terms
        .into_iter()
        .map(|(c, r)| Term::rational(c, r))
        .collect();
    combine_int(dim, &terms).to_sparse()
}

/// A [`SparseMatrix`] with integral rows, for repeated products.
#[derive(Clone, Debug)]
pub struct IntegralMatrix {
    pub dim: usize,
    pub rows: Vec<IntRow>,
}

impl IntegralMatrix {
    pub fn new(m: &SparseMatrix) -> Self {
        IntegralMatrix {
            dim: m.dim,
            rows: m.rows.iter().map(|r| IntRow::from_sparse(r)).collect(),
        }
    }

    /// `v · self`
    pub fn vec_mul(&self, v: &[(u32, BigRational)]) -> SparseVec {
        combine(
            self.dim,
            v.iter().map(|(i, c)| (c, &self.rows[*i as usize])),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Triplet(pub u32, pub u32, pub String);

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn collect_merges_and_drops_zeros() {
        let v = collect(vec![(3, q(1)), (1, q(2)), (3, q(-1)), (0, q(5)), (1, q(1))]);
        assert_eq!(v, vec![(0, q(5)), (1, q(3))]);
        assert!(collect(vec![(2, q(1)), (2, q(-1))]).is_empty());
    }

    #[test]
    fn add_scaled_cancels() {
        let a = vec![(0, q(1)), (2, q(2))];
        let b = vec![(1, q(1)), (2, q(1))];
        assert_eq!(add_scaled(&a, &b, &q(-2)), vec![(0, q(1)), (1, q(-2))]);
    }

    #[test]
    fn combine_matches_rational_sum() {
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        let a = vec![(0, r(1, 2)), (3, r(-2, 3))];
        let b = vec![(0, r(1, 6)), (1, r(5, 4)), (3, r(2, 3))];
        let (ia, ib) = (IntRow::from_sparse(&a), IntRow::from_sparse(&b));
        assert_eq!(ia.to_sparse(), a);
        let (ka, kb) = (r(3, 7), r(-2, 5));
        let got = combine(4, [(&ka, &ia), (&kb, &ib)]);
        let want = add_scaled(&scale(&a, &ka), &b, &kb);
        assert_eq!(got, want);
        let m = SparseMatrix {
            dim: 4,
            rows: vec![a.clone(), b.clone(), unit(2), a],
        };
        let v = vec![(1, r(2, 9)), (3, r(-1, 1))];
        assert_eq!(IntegralMatrix::new(&m).vec_mul(&v), m.vec_mul(&v));
    }

    #[test]
    fn matrix_products() {
        // swap matrix squared is the identity
        let s = SparseMatrix {
            dim: 2,
            rows: vec![unit(1), unit(0)],
        };
        assert!(s.mul(&s).is_identity());
        assert_eq!(s.vec_mul(&[(0, q(3))]), vec![(1, q(3))]);
        let t = SparseMatrix::from_triplets(2, &s.to_triplets()).unwrap();
        assert_eq!(t, s);
    }
}
