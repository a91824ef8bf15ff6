//! Reduction of an enumeration result modulo a prime.
//!
//! Reduction `ℤ_(p) → 𝔽_p` is a ring morphism, so coordinates computed from
//! the reduced matrices are the reductions of the exact coordinates. A set of
//! vectors independent modulo `p` is independent over `ℚ`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::freealg::Word;

use super::EnumerationResult;

/// Primes tried in order; all below `2^62` so sums of two residues fit.
pub const PRIMES: [u64; 4] = [
    2305843009213693951,
    4611686018427387847,
    2147483647,
    1000000007,
];

#[derive(Clone, Debug)]
pub struct ModularImage {
    pub p: u64,
    identity: u32,
    rows: Vec<Vec<Vec<(u32, u64)>>>,
    order_coeffs: Vec<Vec<u64>>,
}

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn int_mod(n: &BigInt, p: u64) -> u64 {
    n.mod_floor(&BigInt::from(p))
        .to_u64()
        .expect("residue fits")
}

/// `None` when `p` divides the denominator.
pub fn rational_mod(q: &BigRational, p: u64) -> Option<u64> {
    let den = int_mod(q.denom(), p);
    if den == 0 {
        return None;
    }
    Some(mul_mod(int_mod(q.numer(), p), inv_mod(den, p), p))
}

impl ModularImage {
    /// Reduces `r` modulo `p`; `None` if some entry or inverse constant is
    /// not `p`-integral.
    pub fn new(r: &EnumerationResult, p: u64) -> Option<Self> {
        let identity = r.basis.iter().position(Word::is_identity)? as u32;
        let mut rows = Vec::with_capacity(r.matrices.len());
        for m in &r.matrices {
            let mut reduced = Vec::with_capacity(m.dim);
            for row in &m.rows {
                let mut out = Vec::with_capacity(row.len());
                for (j, c) in row {
                    let v = rational_mod(c, p)?;
                    if v != 0 {
                        out.push((*j, v));
                    }
                }
                reduced.push(out);
            }
            rows.push(reduced);
        }
        let mut order_coeffs = Vec::with_capacity(r.order_coeffs.len());
        for coeffs in &r.order_coeffs {
            let reduced = coeffs
                .iter()
                .map(|c| rational_mod(c, p))
                .collect::<Option<Vec<_>>>()?;
            if reduced[0] == 0 {
                return None;
            }
            order_coeffs.push(reduced);
        }
        Some(ModularImage {
            p,
            identity,
            rows,
            order_coeffs,
        })
    }

    /// The first prime of [`PRIMES`] at which `r` reduces.
    pub fn first_good(r: &EnumerationResult) -> Option<Self> {
        PRIMES.iter().find_map(|&p| Self::new(r, p))
    }

    pub fn dimension(&self) -> usize {
        self.rows.first().map_or(1, Vec::len)
    }

    fn vec_mul(&self, v: &[u64], g: usize) -> Vec<u64> {
        let mut out = vec![0u64; v.len()];
        for (i, &c) in v.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for &(j, d) in &self.rows[g][i] {
                let j = j as usize;
                out[j] = (out[j] + mul_mod(c, d, self.p)) % self.p;
            }
        }
        out
    }

    fn vec_mul_inverse(&self, v: &[u64], g: usize) -> Vec<u64> {
        let p = self.p;
        let coeffs = &self.order_coeffs[g];
        let n = coeffs.len();
        let mut powers = vec![v.to_vec()];
        for _ in 1..n {
            let next = self.vec_mul(powers.last().unwrap(), g);
            powers.push(next);
        }
        let mut out = powers[n - 1].clone();
        for (i, &a) in coeffs.iter().enumerate().skip(1) {
            let neg = (p - a) % p;
            for (o, x) in out.iter_mut().zip(&powers[i - 1]) {
                *o = (*o + mul_mod(neg, *x, p)) % p;
            }
        }
        let k = inv_mod(coeffs[0], p);
        out.iter().map(|x| mul_mod(*x, k, p)).collect()
    }

    /// Reduced coordinates of `w`: `e_ε · M_w mod p`.
    pub fn coordinates(&self, w: &Word) -> Vec<u64> {
        let mut v = vec![0u64; self.dimension()];
        v[self.identity as usize] = 1;
        for (g, e) in w.unit_letters() {
            v = if e > 0 {
                self.vec_mul(&v, g as usize)
            } else {
                self.vec_mul_inverse(&v, g as usize)
            };
        }
        v
    }

    pub fn coordinates_all(&self, words: &[Word]) -> Vec<Vec<u64>> {
        words.par_iter().map(|w| self.coordinates(w)).collect()
    }
}

/// Greedy row reduction in listed order: indices of rows independent of all
/// earlier rows.
pub fn greedy_independent_mod(rows: Vec<Vec<u64>>, p: u64) -> Vec<usize> {
    let mut pivots: Vec<(usize, Vec<u64>)> = Vec::new();
    let mut chosen = Vec::new();
    for (idx, mut v) in rows.into_iter().enumerate() {
        for (col, pv) in &pivots {
            let c = v[*col];
            if c != 0 {
                let k = (p - c) % p;
                for (x, y) in v.iter_mut().zip(pv) {
                    if *y != 0 {
                        *x = (*x + mul_mod(k, *y, p)) % p;
                    }
                }
            }
        }
        if let Some(col) = v.iter().position(|x| *x != 0) {
            let k = inv_mod(v[col], p);
            for x in v.iter_mut() {
                *x = mul_mod(*x, k, p);
            }
            pivots.push((col, v));
            chosen.push(idx);
        }
    }
    chosen
}

/// Exact greedy row reduction over `ℚ`; same contract as
/// [`greedy_independent_mod`].
pub fn greedy_independent_exact(rows: Vec<Vec<(u32, BigRational)>>) -> Vec<usize> {
    let mut pivots: Vec<(u32, Vec<(u32, BigRational)>)> = Vec::new();
    let mut chosen = Vec::new();
    for (idx, mut v) in rows.into_iter().enumerate() {
        for (col, pv) in &pivots {
            if let Ok(pos) = v.binary_search_by_key(col, |(j, _)| *j) {
                let k = -v[pos].1.clone();
                v = super::sparse::add_scaled(&v, pv, &k);
            }
        }
        if let Some((col, lead)) = v.first().cloned() {
            debug_assert!(!lead.is_zero());
            let v = super::sparse::scale(&v, &lead.recip());
            pivots.push((col, v));
            chosen.push(idx);
        }
    }
    chosen
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residues() {
        let p = 7;
        assert_eq!(inv_mod(3, p), 5);
        let q = BigRational::new((-1).into(), 3.into());
        assert_eq!(rational_mod(&q, p), Some(2));
        assert_eq!(
            rational_mod(&BigRational::new(1.into(), 14.into()), p),
            None
        );
    }

    #[test]
    fn greedy_selection() {
        let p = 1000000007;
        let rows = vec![vec![1, 2, 0], vec![2, 4, 0], vec![0, 0, 1], vec![1, 2, 1]];
        assert_eq!(greedy_independent_mod(rows, p), vec![0, 2]);
        let q = |n: i64| BigRational::from_integer(n.into());
        let rows = vec![
            vec![(0, q(1)), (1, q(2))],
            vec![(0, q(2)), (1, q(4))],
            vec![(2, q(1))],
            vec![(1, q(1))],
        ];
        assert_eq!(greedy_independent_exact(rows), vec![0, 2, 3]);
    }
}
