use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::linalg::AbelianGroup;
use crate::parallel;
use crate::simplicial::{CohomologyTable, SimplicialComplex};
use crate::subset::VertexSet;

/// `H^degree` as free rank plus torsion coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeGroup {
    pub degree: usize,
    pub free_rank: usize,
    #[serde(with = "crate::io::bigint_list")]
    pub torsion: Vec<BigInt>,
}

impl DegreeGroup {
    pub fn group(&self) -> AbelianGroup {
        AbelianGroup {
            free_rank: self.free_rank,
            torsion: self.torsion.clone(),
        }
    }
}

/// One entry `b^{-i, 2j}` of the bigraded Betti table (`j = |I|`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BigradedEntry {
    pub i: usize,
    #[serde(rename = "2j")]
    pub two_j: usize,
    pub rank: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty", with = "crate::io::bigint_list")]
    pub torsion: Vec<BigInt>,
}

/// A nonzero summand `H~^{degree - |I| - 1}(K(I))` of `H^degree`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Contribution {
    pub degree: usize,
    pub multidegree: Vec<usize>,
    pub free_rank: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty", with = "crate::io::bigint_list")]
    pub torsion: Vec<BigInt>,
}

/// An additive generator of `H^degree` written in u/v notation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorEntry {
    pub degree: usize,
    pub cocycle: String,
    pub multidegree: Vec<usize>,
    /// Additive order, omitted for generators of infinite order.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyReport {
    pub betti: Vec<usize>,
    pub groups: Vec<DegreeGroup>,
    pub bigraded: Vec<BigradedEntry>,
    pub contributions: Vec<Contribution>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<GeneratorEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poincare_duality: Option<bool>,
}

impl CohomologyReport {
    /// Top degree with nonzero cohomology.
    pub fn top_degree(&self) -> usize {
        self.betti.len().saturating_sub(1)
    }

    pub fn group(&self, degree: usize) -> AbelianGroup {
        self.groups.get(degree).map(DegreeGroup::group).unwrap_or_default()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.groups.iter().all(|g| g.torsion.is_empty())
    }
}

/// Reduced cohomology of `K(I)` for each `I`, computed in parallel, in input order.
pub fn subcomplex_tables(k: &SimplicialComplex, subsets: &[VertexSet]) -> Vec<CohomologyTable> {
    parallel::map(subsets, |&i| k.full_subcomplex(i).reduced_cohomology())
}

/// `H^k(Z_K) = sum_I H~^{k-|I|-1}(K(I))` over all `I` in `[m]`.
pub fn hochster_cohomology(k: &SimplicialComplex) -> CohomologyReport {
    let subsets = VertexSet::full(k.vertex_count()).subsets_by_size();
    let tables = subcomplex_tables(k, &subsets);
    let entries: Vec<(VertexSet, CohomologyTable)> = subsets.into_iter().zip(tables).collect();
    assemble_report(&entries)
}

/// Accumulates per-subset tables into a report. The result depends only on
/// the set of entries, not on their order.
pub fn assemble_report(entries: &[(VertexSet, CohomologyTable)]) -> CohomologyReport {
    let mut sorted: Vec<&(VertexSet, CohomologyTable)> = entries.iter().collect();
    sorted.sort_by_cached_key(|(i, _)| i.graded_key());

    let mut by_degree: BTreeMap<usize, AbelianGroup> = BTreeMap::new();
    let mut bigraded: BTreeMap<(usize, usize), AbelianGroup> = BTreeMap::new();
    let mut contributions = Vec::new();
    for (i, table) in sorted {
        let j = i.len();
        for (p, g) in table.iter() {
            let degree = (p + j as isize + 1) as usize;
            let bi = (j as isize - p - 1) as usize;
            let slot = by_degree.entry(degree).or_default();
            *slot = slot.direct_sum(g);
            let slot = bigraded.entry((j, bi)).or_default();
            *slot = slot.direct_sum(g);
            contributions.push(Contribution {
                degree,
                multidegree: i.labels(),
                free_rank: g.free_rank,
                torsion: g.torsion.clone(),
            });
        }
    }
    contributions.sort_by(|a, b| {
        (a.degree, a.multidegree.len(), &a.multidegree).cmp(&(b.degree, b.multidegree.len(), &b.multidegree))
    });

    let top = by_degree.keys().next_back().copied().unwrap_or(0);
    let groups: Vec<DegreeGroup> = (0..=top)
        .map(|degree| {
            let g = by_degree.get(&degree).cloned().unwrap_or_default();
            DegreeGroup {
                degree,
                free_rank: g.free_rank,
                torsion: g.torsion,
            }
        })
        .collect();
    CohomologyReport {
        betti: groups.iter().map(|g| g.free_rank).collect(),
        groups,
        bigraded: bigraded
            .into_iter()
            .map(|((j, i), g)| BigradedEntry {
                i,
                two_j: 2 * j,
                rank: g.free_rank,
                torsion: g.torsion,
            })
            .collect(),
        contributions,
        generators: None,
        poincare_duality: None,
    }
}

/// Free ranks satisfy `b_k = b_{m+n-k}` for all `k`, with nothing above `m + n`.
pub fn poincare_duality_check(report: &CohomologyReport, m: usize, n: usize) -> bool {
    let d = m + n;
    if report.betti.len() > d + 1 {
        return false;
    }
    let b = |k: usize| report.betti.get(k).copied().unwrap_or(0);
    (0..=d).all(|k| b(k) == b(d - k))
}
