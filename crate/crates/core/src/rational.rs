//! Exact rank over the rationals, used for characteristic-zero computations.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::f2::{self, BitMatrix};

/// Field characteristic for the circle-equivariant computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Characteristic {
    Zero,
    Two,
}

impl Characteristic {
    pub const ALL: [Characteristic; 2] = [Characteristic::Zero, Characteristic::Two];

    pub fn as_u32(self) -> u32 {
        match self {
            Characteristic::Zero => 0,
            Characteristic::Two => 2,
        }
    }

    pub fn from_u32(p: u32) -> Option<Self> {
        match p {
            0 => Some(Characteristic::Zero),
            2 => Some(Characteristic::Two),
            _ => None,
        }
    }
}

/// Rank of an integer matrix (given as rows) by Gaussian elimination over ℚ.
pub fn rank_rational(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| BigRational::from_integer(BigInt::from(*x)))
                .collect()
        })
        .collect();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = BigRational::one() / m[rank][col].clone();
        let pivot: Vec<BigRational> = m[rank].iter().map(|x| x * &inv).collect();
        for row in m.iter_mut().skip(rank + 1) {
            if row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot) {
                *x -= &f * p;
            }
        }
        m[rank] = pivot;
        rank += 1;
    }
    rank
}

/// Rank of an integer matrix reduced modulo 2.
pub fn rank_mod2(rows: &[Vec<i64>]) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let bits: Vec<Vec<u8>> = rows
        .iter()
        .map(|r| r.iter().map(|x| u8::from(x.rem_euclid(2) == 1)).collect())
        .collect();
    let m = BitMatrix::from_rows(ncols, &bits).expect("rows have uniform length");
    f2::rank(&m)
}

/// Rank over a field of the given characteristic.
pub fn rank_over(rows: &[Vec<i64>], p: Characteristic) -> usize {
    match p {
        Characteristic::Zero => rank_rational(rows),
        Characteristic::Two => rank_mod2(rows),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_rank_examples() {
        assert_eq!(rank_rational(&[vec![0, 0], vec![0, 0]]), 0);
        assert_eq!(rank_rational(&[vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(rank_rational(&[vec![1, 1], vec![1, -1]]), 2);
        assert_eq!(rank_rational(&[]), 0);
    }

    #[test]
    fn characteristic_matters() {
        // det = -2: invertible over Q, singular mod 2
        let rows = [vec![1, 1], vec![1, -1]];
        assert_eq!(rank_over(&rows, Characteristic::Zero), 2);
        assert_eq!(rank_over(&rows, Characteristic::Two), 1);
        assert_eq!(rank_over(&[vec![2]], Characteristic::Two), 0);
        assert_eq!(rank_over(&[vec![2]], Characteristic::Zero), 1);
    }
}
