use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::IntMatrix;
use super::snf::smith_normal_form;

/// A finitely generated abelian group `Z^free_rank ⊕ Z/t_1 ⊕ ... ⊕ Z/t_k`
/// in invariant-factor form: every `t_i >= 2` and `t_i | t_{i+1}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub free_rank: usize,
    #[serde(with = "crate::io::bigint_list")]
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    /// Builds the group `Z^free_rank ⊕ ⊕ Z/c` for arbitrary cyclic orders `c`
    /// and brings it into invariant-factor form. Orders 0 count as free summands
    /// and orders ±1 vanish.
    pub fn from_cyclic_orders(free_rank: usize, orders: &[BigInt]) -> Self {
        let mut free = free_rank;
        let mut finite: Vec<BigInt> = Vec::new();
        for c in orders {
            if c.is_zero() {
                free += 1;
            } else if !c.abs().is_one() {
                finite.push(c.abs());
            }
        }
        if finite.len() <= 1 {
            return AbelianGroup {
                free_rank: free,
                torsion: finite,
            };
        }
        let diag = IntMatrix::diagonal(finite.len(), finite.len(), &finite);
        let torsion = smith_normal_form(&diag)
            .invariant_factors()
            .into_iter()
            .filter(|d| !d.is_one())
            .collect();
        AbelianGroup {
            free_rank: free,
            torsion,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn direct_sum(&self, other: &AbelianGroup) -> AbelianGroup {
        let mut orders = self.torsion.clone();
        orders.extend(other.torsion.iter().cloned());
        Self::from_cyclic_orders(self.free_rank + other.free_rank, &orders)
    }

    /// True when the torsion list is a divisibility chain of entries >= 2.
    pub fn is_canonical(&self) -> bool {
        self.torsion.iter().all(|t| *t >= BigInt::from(2)) && self.torsion.windows(2).all(|w| (&w[1] % &w[0]).is_zero())
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn cyclic_orders_normalize() {
        let g = AbelianGroup::from_cyclic_orders(1, &big(&[2, 3, 1, 0, 4]));
        assert_eq!(g.free_rank, 2);
        // Z/2 + Z/3 + Z/4 = Z/2 + Z/12
        assert_eq!(g.torsion, big(&[2, 12]));
        assert!(g.is_canonical());
    }

    #[test]
    fn display() {
        assert_eq!(AbelianGroup::zero().to_string(), "0");
        assert_eq!(AbelianGroup::free(3).to_string(), "Z^3");
        assert_eq!(AbelianGroup::from_cyclic_orders(1, &big(&[2])).to_string(), "Z + Z/2");
    }
}
