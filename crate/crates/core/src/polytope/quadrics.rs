use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{HPolytope, PolytopeError};
use crate::linalg::{IntMatrix, RatMatrix};
use crate::subset::VertexSet;

/// The system `sum_k c_jk (|z_k|^2 - b_k) = 0`, `j = 1..m-n`.
///
/// Columns of `c` are indexed by facets in their original order. `permutation`
/// records the facet order used to build `c`: its first `n` entries are the
/// facets through the chosen vertex, and row `j` of `c` is the relation that
/// expresses facet `permutation[n + j]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadricSystem {
    #[serde(rename = "C", with = "crate::io::bigint_rows")]
    pub c: Vec<Vec<BigInt>>,
    #[serde(with = "crate::io::bigint_list")]
    pub b: Vec<BigInt>,
    pub permutation: Vec<usize>,
}

impl QuadricSystem {
    pub fn equation_count(&self) -> usize {
        self.c.len()
    }

    pub fn variable_count(&self) -> usize {
        self.b.len()
    }

    pub fn matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(self.b.len(), &self.c)
    }

    /// `C b`: the constant terms, and the level of the moment map.
    pub fn target(&self) -> Vec<BigInt> {
        self.matrix().mul_vec(&self.b)
    }

    /// Plain-text equations such as `|z_1|^2+|z_4|^2-3=0`.
    pub fn render_equations(&self) -> Vec<String> {
        let target = self.target();
        self.c
            .iter()
            .zip(&target)
            .map(|(row, t)| {
                let mut s = String::new();
                for (k, c) in row.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let coef = if c.abs().is_one() {
                        String::new()
                    } else {
                        c.abs().to_string()
                    };
                    if c.is_negative() {
                        s.push('-');
                    } else if !s.is_empty() {
                        s.push('+');
                    }
                    s.push_str(&format!("{coef}|z_{}|^2", k + 1));
                }
                if !t.is_zero() {
                    if t.is_positive() {
                        s.push_str(&format!("-{t}"));
                    } else {
                        s.push_str(&format!("+{}", -t));
                    }
                }
                if s.is_empty() {
                    s.push('0');
                }
                s.push_str("=0");
                s
            })
            .collect()
    }

    /// Residuals `sum_k c_jk (|z_k|^2 - b_k)` at squared moduli `w_k = |z_k|^2`.
    pub fn residuals(&self, squared_moduli: &[f64]) -> Vec<f64> {
        use num_traits::ToPrimitive;
        self.c
            .iter()
            .map(|row| {
                row.iter()
                    .zip(squared_moduli.iter().zip(&self.b))
                    .map(|(c, (w, b))| {
                        let c = c.to_f64().unwrap_or(f64::NAN);
                        let b = b.to_f64().unwrap_or(f64::NAN);
                        c * (w - b)
                    })
                    .sum()
            })
            .collect()
    }
}

/// Builds the cokernel matrix `C` with `C A = 0`.
///
/// With `order = None` the facets of the lexicographically smallest vertex
/// incidence set lead, followed by the remaining facets in increasing order.
/// An explicit `order` (a permutation of `1..=m`) must start with the facets
/// of some vertex. Writing `B` for the leading `n x n` block of normals and
/// `R` for the rest, the rows of `C` are `(-R B^-1 | I)` in the permuted
/// coordinates; when `B` is not unimodular a row can have denominators and is
/// scaled to a primitive integer vector.
pub fn cokernel_matrix(p: &HPolytope, order: Option<&[usize]>) -> Result<QuadricSystem, PolytopeError> {
    p.require_simple()?;
    let n = p.dimension();
    let m = p.facet_count();
    let permutation: Vec<usize> = match order {
        Some(o) => {
            let mut seen = vec![false; m + 1];
            if o.len() != m
                || o.iter()
                    .any(|&i| i == 0 || i > m || std::mem::replace(&mut seen[i], true))
            {
                return Err(PolytopeError::BadFacetOrder(format!(
                    "expected a permutation of 1..={m}, got {o:?}"
                )));
            }
            let lead = VertexSet::from_labels(&o[..n]);
            if !p.vertices().iter().any(|v| v.facets == lead) {
                return Err(PolytopeError::BadFacetOrder(format!(
                    "facets {lead} do not meet at a vertex"
                )));
            }
            o.to_vec()
        }
        None => {
            let lead = p
                .vertices()
                .iter()
                .map(|v| v.facets.labels())
                .min()
                .expect("polytope has vertices");
            let mut perm = lead.clone();
            perm.extend((1..=m).filter(|i| !lead.contains(i)));
            perm
        }
    };

    let a = p.normals().to_rational();
    let lead_rows: Vec<Vec<BigRational>> = permutation[..n].iter().map(|&i| a.row(i - 1).to_vec()).collect();
    let lead_inv = RatMatrix::from_rows(n, &lead_rows)
        .inverse()
        .expect("normals at a simple vertex are independent");

    let c: Vec<Vec<BigInt>> = permutation[n..]
        .iter()
        .map(|&facet| {
            // coefficients on the leading facets: -a_facet * B^-1
            let a_row = a.row(facet - 1);
            let mut row = vec![BigRational::zero(); m];
            for (k, &lead_facet) in permutation[..n].iter().enumerate() {
                let x: BigRational = (0..n).map(|t| &a_row[t] * lead_inv.get(t, k)).sum();
                row[lead_facet - 1] = -x;
            }
            row[facet - 1] = BigRational::one();
            let den = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.into_iter()
                .map(|x| (x * BigRational::from_integer(den.clone())).to_integer())
                .collect()
        })
        .collect();

    Ok(QuadricSystem {
        c,
        b: p.offsets().to_vec(),
        permutation,
    })
}
