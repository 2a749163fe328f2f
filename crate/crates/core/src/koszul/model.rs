use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::cochain::{Cochain, Monomial};
use super::hochster::{hochster_cohomology, CohomologyReport};
use super::KoszulError;
use crate::linalg::{kernel_basis, smith_normal_form, unimodular_inverse, AbelianGroup, IntMatrix};
use crate::parallel;
use crate::simplicial::SimplicialComplex;
use crate::subset::VertexSet;

/// Blocks wider than this skip the binomial generator search.
const BINOMIAL_SEARCH_LIMIT: usize = 48;

/// A cocycle together with its total degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyClass {
    pub representative: Cochain,
    pub degree: usize,
}

impl CohomologyClass {
    pub fn zero(degree: usize) -> Self {
        CohomologyClass {
            representative: Cochain::zero(),
            degree,
        }
    }

    pub fn multidegrees(&self) -> Vec<VertexSet> {
        self.representative.multidegrees().into_iter().collect()
    }
}

/// Canonical coordinates of a class: for each multidegree with a nonzero
/// component, its coordinates in the chosen generators of that block, with
/// torsion coordinates reduced to `0..order`.
pub type ClassCoordinates = BTreeMap<VertexSet, Vec<BigInt>>;

/// The multidegree-`I` summand of the reduced model, split by `t = |tau|`;
/// level `t` sits in total degree `|I| + t`.
#[derive(Debug)]
pub struct KoszulBlock {
    multidegree: VertexSet,
    levels: Vec<Level>,
}

#[derive(Debug)]
struct Level {
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    d_out: IntMatrix,
    d_in: IntMatrix,
    group: AbelianGroup,
    /// Rows map a cocycle vector to class coordinates in the SNF generators.
    coords: IntMatrix,
    /// Order of each coordinate, 0 for free ones.
    moduli: Vec<BigInt>,
    snf_generators: Vec<Vec<BigInt>>,
    preferred: OnceLock<Preferred>,
}

#[derive(Debug)]
struct Preferred {
    vectors: Vec<Vec<BigInt>>,
    /// SNF coordinates to preferred-generator coordinates.
    change: IntMatrix,
}

impl KoszulBlock {
    pub fn multidegree(&self) -> VertexSet {
        self.multidegree
    }

    /// Number of levels, i.e. one more than the largest face inside `I`.
    pub fn level_count(&self) -> usize {
        self.levels.len()
    }

    /// Cohomology in total degree `|I| + t`.
    pub fn group(&self, t: usize) -> AbelianGroup {
        self.levels.get(t).map(|l| l.group.clone()).unwrap_or_default()
    }

    pub fn basis(&self, t: usize) -> &[Monomial] {
        self.levels.get(t).map(|l| l.basis.as_slice()).unwrap_or(&[])
    }

    /// Differential from level `t` to level `t + 1` (rows index level `t + 1`).
    pub fn differential(&self, t: usize) -> &IntMatrix {
        &self.levels[t].d_out
    }

    fn level_of_degree(&self, degree: usize) -> Option<usize> {
        let t = degree.checked_sub(self.multidegree.len())?;
        (t < self.levels.len()).then_some(t)
    }

    fn vector(&self, t: usize, c: &Cochain) -> Vec<BigInt> {
        let level = &self.levels[t];
        let mut x = vec![BigInt::zero(); level.basis.len()];
        for (m, coef) in c.terms() {
            x[level.index[m]] = coef.clone();
        }
        x
    }

    fn cochain(&self, t: usize, x: &[BigInt]) -> Cochain {
        let mut c = Cochain::zero();
        for (m, coef) in self.levels[t].basis.iter().zip(x) {
            c.add_term(*m, coef.clone());
        }
        c
    }

    /// Generators of the level-`t` cohomology, preferring monomials and then
    /// binomials with unit coefficients; torsion blocks use SNF generators.
    pub fn generators(&self, t: usize) -> Vec<Cochain> {
        let Some(level) = self.levels.get(t) else {
            return Vec::new();
        };
        let pref = level.preferred.get_or_init(|| choose_generators(level));
        pref.vectors.iter().map(|x| self.cochain(t, x)).collect()
    }

    /// Orders of the generators returned by [`Self::generators`], 0 for infinite order.
    pub fn generator_orders(&self, t: usize) -> Vec<BigInt> {
        self.levels.get(t).map(|l| l.moduli.clone()).unwrap_or_default()
    }

    /// Canonical coordinates of a level-`t` cocycle.
    fn coordinates(&self, t: usize, x: &[BigInt]) -> Vec<BigInt> {
        let level = &self.levels[t];
        let snf_coords = level.coords.mul_vec(x);
        let pref = level.preferred.get_or_init(|| choose_generators(level));
        let mut y = pref.change.mul_vec(&snf_coords);
        for (yi, d) in y.iter_mut().zip(&level.moduli) {
            if !d.is_zero() {
                *yi = yi.mod_floor(d);
            }
        }
        y
    }

    fn is_cocycle(&self, t: usize, x: &[BigInt]) -> bool {
        self.levels[t].d_out.mul_vec(x).iter().all(Zero::is_zero)
    }
}

fn build_level(basis: Vec<Monomial>, d_in: IntMatrix, d_out: IntMatrix) -> Level {
    let dim = basis.len();
    let index = basis.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let z = if d_out.rows() == 0 {
        IntMatrix::identity(dim)
    } else {
        kernel_basis(&d_out)
    };
    let r = z.cols();
    // Z is saturated, so Uz Z Vz = [I; 0] and Z y = x gives y = Vz (Uz x)[..r].
    let snf_z = smith_normal_form(&z);
    let top: Vec<usize> = (0..r).collect();
    let proj = &snf_z.right * &snf_z.left.select_rows(&top);
    let image = &proj * &d_in;
    let snf = smith_normal_form(&image);
    let factors: Vec<BigInt> = (0..r)
        .map(|i| {
            if i < snf.rank() {
                snf.diagonal.get(i, i).clone()
            } else {
                BigInt::zero()
            }
        })
        .collect();
    let kept: Vec<usize> = (0..r).filter(|&i| !factors[i].is_one()).collect();
    let coords = (&snf.left * &proj).select_rows(&kept);
    let moduli: Vec<BigInt> = kept.iter().map(|&i| factors[i].clone()).collect();
    let gens = &z * &snf.left_inverse;
    let snf_generators = kept.iter().map(|&i| gens.column(i)).collect();
    let group = AbelianGroup::from_cyclic_orders(
        moduli.iter().filter(|d| d.is_zero()).count(),
        &moduli.iter().filter(|d| !d.is_zero()).cloned().collect::<Vec<_>>(),
    );
    Level {
        basis,
        index,
        d_out,
        d_in,
        group,
        coords,
        moduli,
        snf_generators,
        preferred: OnceLock::new(),
    }
}

fn choose_generators(level: &Level) -> Preferred {
    let k = level.moduli.len();
    let snf = || Preferred {
        vectors: level.snf_generators.clone(),
        change: IntMatrix::identity(k),
    };
    if k == 0 || level.moduli.iter().any(|d| !d.is_zero()) {
        return snf();
    }
    let dim = level.basis.len();
    let d_cols = level.d_out.columns();
    let c_cols = level.coords.columns();
    let mut chosen_vectors: Vec<Vec<BigInt>> = Vec::new();
    let mut chosen_coords: Vec<Vec<BigInt>> = Vec::new();
    let mut try_accept = |x: Vec<BigInt>, c: Vec<BigInt>| {
        if chosen_coords.len() == k || c.iter().all(Zero::is_zero) {
            return;
        }
        let mut rows = chosen_coords.clone();
        rows.push(c.clone());
        let f = smith_normal_form(&IntMatrix::from_rows(k, &rows));
        if f.rank() == rows.len() && f.nonzero_factors().iter().all(One::is_one) {
            chosen_coords.push(c);
            chosen_vectors.push(x);
        }
    };
    for a in 0..dim {
        if d_cols[a].iter().all(Zero::is_zero) {
            let mut x = vec![BigInt::zero(); dim];
            x[a] = BigInt::one();
            try_accept(x, c_cols[a].clone());
        }
    }
    if dim <= BINOMIAL_SEARCH_LIMIT {
        for a in 0..dim {
            for b in a + 1..dim {
                for s in [1i64, -1] {
                    let s = BigInt::from(s);
                    let closed = d_cols[a].iter().zip(&d_cols[b]).all(|(x, y)| (x + &s * y).is_zero());
                    if !closed {
                        continue;
                    }
                    let mut x = vec![BigInt::zero(); dim];
                    x[a] = BigInt::one();
                    x[b] = s.clone();
                    let c: Vec<BigInt> = c_cols[a].iter().zip(&c_cols[b]).map(|(p, q)| p + &s * q).collect();
                    try_accept(x, c);
                }
            }
        }
    }
    if chosen_coords.len() < k {
        return snf();
    }
    let g = IntMatrix::from_columns(k, &chosen_coords);
    let change = unimodular_inverse(&g).expect("chosen generators form a basis");
    Preferred {
        vectors: chosen_vectors,
        change,
    }
}

/// The reduced Koszul model of a complex, with blocks built on demand and
/// memoized per multidegree.
#[derive(Debug)]
pub struct KoszulModel {
    k: SimplicialComplex,
    faces: Vec<VertexSet>,
    blocks: RwLock<HashMap<VertexSet, Arc<KoszulBlock>>>,
}

impl KoszulModel {
    pub fn new(k: SimplicialComplex) -> Self {
        let faces = k.faces();
        KoszulModel {
            k,
            faces,
            blocks: RwLock::new(HashMap::new()),
        }
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.k
    }

    pub fn block(&self, i: VertexSet) -> Arc<KoszulBlock> {
        if let Some(b) = self.blocks.read().expect("block cache poisoned").get(&i) {
            return Arc::clone(b);
        }
        let block = Arc::new(self.build_block(i));
        let mut cache = self.blocks.write().expect("block cache poisoned");
        Arc::clone(cache.entry(i).or_insert(block))
    }

    fn build_block(&self, i: VertexSet) -> KoszulBlock {
        let mut by_size: Vec<Vec<Monomial>> = Vec::new();
        for &tau in self.faces.iter().filter(|f| f.is_subset(i)) {
            let t = tau.len();
            if by_size.len() <= t {
                by_size.resize_with(t + 1, Vec::new);
            }
            by_size[t].push(Monomial::new(i.difference(tau), tau));
        }
        for b in &mut by_size {
            b.sort();
        }
        let index: Vec<HashMap<Monomial, usize>> = by_size
            .iter()
            .map(|b| b.iter().enumerate().map(|(n, m)| (*m, n)).collect())
            .collect();
        let mut d: Vec<IntMatrix> = Vec::new();
        for t in 0..by_size.len() {
            let rows = by_size.get(t + 1).map_or(0, Vec::len);
            let mut mat = IntMatrix::zeros(rows, by_size[t].len());
            if rows > 0 {
                for (col, m) in by_size[t].iter().enumerate() {
                    let image = Cochain::monomial(*m).differential(&self.k);
                    for (target, coef) in image.terms() {
                        mat.set(index[t + 1][target], col, coef.clone());
                    }
                }
            }
            d.push(mat);
        }
        let levels = by_size
            .into_iter()
            .enumerate()
            .map(|(t, basis)| {
                let d_in = if t == 0 {
                    IntMatrix::zeros(basis.len(), 0)
                } else {
                    d[t - 1].clone()
                };
                build_level(basis, d_in, d[t].clone())
            })
            .collect();
        KoszulBlock { multidegree: i, levels }
    }

    /// Checks that `c` is a homogeneous cocycle and wraps it as a class.
    pub fn class(&self, c: &Cochain) -> Result<CohomologyClass, KoszulError> {
        let degree = match c.degree() {
            Some(d) => d,
            None if c.is_zero() => 0,
            None => return Err(KoszulError::NotHomogeneous),
        };
        self.class_in_degree(c, degree)
    }

    pub fn class_in_degree(&self, c: &Cochain, degree: usize) -> Result<CohomologyClass, KoszulError> {
        if !c.is_zero() && c.degree() != Some(degree) {
            return Err(KoszulError::NotHomogeneous);
        }
        if !c.differential(&self.k).is_zero() {
            return Err(KoszulError::NotCocycle);
        }
        Ok(CohomologyClass {
            representative: c.clone(),
            degree,
        })
    }

    pub fn parse_class(&self, s: &str) -> Result<CohomologyClass, KoszulError> {
        self.class(&Cochain::parse(s, &self.k)?)
    }

    /// Canonical coordinates; two classes are equal iff their coordinates are.
    pub fn coordinates(&self, x: &CohomologyClass) -> ClassCoordinates {
        let mut out = ClassCoordinates::new();
        for i in x.representative.multidegrees() {
            let block = self.block(i);
            let t = block.level_of_degree(x.degree).expect("cocycle terms lie in the block");
            let v = block.vector(t, &x.representative.component(i));
            debug_assert!(block.is_cocycle(t, &v));
            let c = block.coordinates(t, &v);
            if c.iter().any(|y| !y.is_zero()) {
                out.insert(i, c);
            }
        }
        out
    }

    pub fn is_zero_class(&self, x: &CohomologyClass) -> bool {
        self.coordinates(x).is_empty()
    }

    pub fn same_class(&self, x: &CohomologyClass, y: &CohomologyClass) -> bool {
        x.degree == y.degree && self.coordinates(x) == self.coordinates(y)
    }

    /// The representative `sum coord_i * generator_i` of a class.
    pub fn canonical(&self, x: &CohomologyClass) -> CohomologyClass {
        let mut rep = Cochain::zero();
        for (i, c) in self.coordinates(x) {
            let block = self.block(i);
            let t = block.level_of_degree(x.degree).expect("class lies in the block");
            for (coef, g) in c.iter().zip(block.generators(t)) {
                rep = rep.add(&g.scale(coef));
            }
        }
        CohomologyClass {
            representative: rep,
            degree: x.degree,
        }
    }

    pub fn cup_product(&self, x: &CohomologyClass, y: &CohomologyClass) -> CohomologyClass {
        let raw = CohomologyClass {
            representative: x.representative.product(&y.representative, &self.k),
            degree: x.degree + y.degree,
        };
        self.canonical(&raw)
    }

    /// Some `e` with `d e = x`, or `None` if `x` is not a coboundary.
    pub fn solve_coboundary(&self, x: &Cochain) -> Option<Cochain> {
        if x.is_zero() {
            return Some(Cochain::zero());
        }
        let degree = x.degree()?;
        let mut e = Cochain::zero();
        for i in x.multidegrees() {
            let block = self.block(i);
            let t = block.level_of_degree(degree)?;
            if t == 0 {
                return None;
            }
            let v = block.vector(t, &x.component(i));
            let y = crate::linalg::solve_integer(&block.levels[t].d_in, &v)?;
            e = e.add(&block.cochain(t - 1, &y));
        }
        Some(e)
    }

    /// Generators of `H^degree` in multidegree `i`.
    pub fn generators_in(&self, i: VertexSet, degree: usize) -> Vec<CohomologyClass> {
        let block = self.block(i);
        match block.level_of_degree(degree) {
            Some(t) => block
                .generators(t)
                .into_iter()
                .map(|g| CohomologyClass {
                    representative: g,
                    degree,
                })
                .collect(),
            None => Vec::new(),
        }
    }

    /// All additive generators as `(multidegree, class, order)`, ordered by
    /// degree, then multidegree (size, then labels).
    pub fn all_generators(&self) -> Vec<(VertexSet, CohomologyClass, BigInt)> {
        let subsets = VertexSet::full(self.k.vertex_count()).subsets_by_size();
        let per_block = parallel::map(&subsets, |&i| {
            let block = self.block(i);
            let mut out = Vec::new();
            for t in 0..block.level_count() {
                if block.group(t).is_zero() {
                    continue;
                }
                let degree = i.len() + t;
                for (g, d) in block.generators(t).into_iter().zip(block.generator_orders(t)) {
                    out.push((
                        i,
                        CohomologyClass {
                            representative: g,
                            degree,
                        },
                        d,
                    ));
                }
            }
            out
        });
        let mut all: Vec<_> = per_block.into_iter().flatten().collect();
        all.sort_by_key(|(_, c, _)| c.degree);
        all
    }

    /// `H^k` for `k = 0..=top` assembled from the blocks.
    pub fn groups_by_degree(&self) -> Vec<AbelianGroup> {
        let subsets = VertexSet::full(self.k.vertex_count()).subsets_by_size();
        let per_block = parallel::map(&subsets, |&i| {
            let block = self.block(i);
            (0..block.level_count())
                .map(|t| (i.len() + t, block.group(t)))
                .filter(|(_, g)| !g.is_zero())
                .collect::<Vec<_>>()
        });
        let mut out: Vec<AbelianGroup> = Vec::new();
        for (degree, g) in per_block.into_iter().flatten() {
            if out.len() <= degree {
                out.resize_with(degree + 1, AbelianGroup::zero);
            }
            out[degree] = out[degree].direct_sum(&g);
        }
        out
    }
}

/// Outcome of comparing the Koszul blocks with the Hochster summands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossCheckReport {
    pub agrees: bool,
    pub differences: Vec<String>,
}

/// Compares, for every `I`, the block cohomology with the shifted reduced
/// cohomology of `K(I)`, and the assembled groups with the Hochster report.
pub fn cross_check_hochster_koszul(k: &SimplicialComplex) -> CrossCheckReport {
    let model = KoszulModel::new(k.clone());
    let subsets = VertexSet::full(k.vertex_count()).subsets_by_size();
    let per_subset = parallel::map(&subsets, |&i| {
        let table = k.full_subcomplex(i).reduced_cohomology();
        let block = model.block(i);
        let mut diffs = Vec::new();
        let top = block
            .level_count()
            .max(table.iter().map(|(d, _)| (d + 2) as usize).max().unwrap_or(0));
        for t in 0..top {
            let simplicial = table.get(t as isize - 1);
            let koszul = block.group(t);
            if simplicial != koszul {
                diffs.push(format!(
                    "I={i}, degree {}: simplicial {simplicial}, koszul {koszul}",
                    i.len() + t
                ));
            }
        }
        diffs
    });
    let mut differences: Vec<String> = per_subset.into_iter().flatten().collect();
    let report: CohomologyReport = hochster_cohomology(k);
    let koszul = model.groups_by_degree();
    let top = report.groups.len().max(koszul.len());
    for degree in 0..top {
        let h = report.groups.get(degree).map(|g| g.group()).unwrap_or_default();
        let kz = koszul.get(degree).cloned().unwrap_or_default();
        if h != kz {
            differences.push(format!("H^{degree}: hochster {h}, koszul {kz}"));
        }
    }
    CrossCheckReport {
        agrees: differences.is_empty(),
        differences,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn cut_cube() -> KoszulModel {
        KoszulModel::new(fixtures::cut_cube_complex())
    }

    fn set(labels: &[usize]) -> VertexSet {
        VertexSet::from_labels(labels)
    }

    #[test]
    fn unit_block() {
        let model = cut_cube();
        let block = model.block(VertexSet::EMPTY);
        assert_eq!(block.level_count(), 1);
        assert_eq!(block.group(0), AbelianGroup::free(1));
        assert_eq!(block.generators(0), vec![Cochain::one()]);
    }

    #[test]
    fn pair_of_non_adjacent_facets() {
        let model = cut_cube();
        let gens = model.generators_in(set(&[1, 4]), 3);
        assert_eq!(gens.len(), 1);
        assert_eq!(gens[0].representative.to_string(), "u_1v_4");
        let other = model.parse_class("u_4v_1").unwrap();
        // d(u_1 u_4) = v_1 u_4 - u_1 v_4
        assert!(model.same_class(&other, &gens[0]));
    }

    #[test]
    fn binomial_generator() {
        let model = cut_cube();
        let gens = model.generators_in(set(&[2, 5, 7, 8]), 5);
        assert_eq!(gens.len(), 1);
        let binomial = model.parse_class("u_2u_7u_5v_8-u_2u_7u_8v_5").unwrap();
        let coords = model.coordinates(&binomial);
        assert_eq!(coords.len(), 1);
        let c = &coords[&set(&[2, 5, 7, 8])];
        assert!(c == &vec![BigInt::one()] || c == &vec![-BigInt::one()]);
        assert_eq!(gens[0].representative.len(), 2);
    }

    #[test]
    fn non_cocycle_is_rejected() {
        let model = cut_cube();
        assert_eq!(model.parse_class("u_1").unwrap_err(), KoszulError::NotCocycle);
        assert_eq!(
            model.parse_class("u_1v_4+u_1").unwrap_err(),
            KoszulError::NotHomogeneous
        );
    }

    #[test]
    fn coboundaries_are_zero() {
        let model = cut_cube();
        let x = Cochain::parse("u_1u_2u_5u_4", model.complex())
            .unwrap()
            .differential(model.complex());
        let class = model.class(&x).unwrap();
        assert!(model.is_zero_class(&class));
        let e = model.solve_coboundary(&x).unwrap();
        assert_eq!(e.differential(model.complex()), x);
        let a = model.parse_class("u_1v_4").unwrap();
        assert!(model.solve_coboundary(&a.representative).is_none());
    }

    #[test]
    fn products_of_degree_three_classes() {
        let model = cut_cube();
        let c = |s: &str| model.parse_class(s).unwrap();
        assert!(model.is_zero_class(&model.cup_product(&c("u_1v_4"), &c("u_1v_7"))));
        assert!(model.is_zero_class(&model.cup_product(&c("u_1v_7"), &c("u_2v_4"))));
        let p = model.cup_product(&c("u_1v_4"), &c("u_3v_6"));
        assert!(model.same_class(&p, &c("u_1u_3v_4v_6")));
        assert_eq!(p.representative.to_string(), "u_1u_3v_4v_6");
    }

    #[test]
    fn cross_check_small() {
        for k in [
            SimplicialComplex::simplex_boundary(3),
            fixtures::three_points(),
            fixtures::octahedron_boundary(),
        ] {
            let r = cross_check_hochster_koszul(&k);
            assert!(r.agrees, "{:?}", r.differences);
        }
    }

    #[test]
    fn torsion_block() {
        // six-vertex real projective plane
        let k = fixtures::rp2();
        let model = KoszulModel::new(k.clone());
        let block = model.block(VertexSet::full(6));
        // H^2(RP^2) = Z/2 lands in degree 6 + 2 + 1
        assert_eq!(block.group(3), AbelianGroup::from_cyclic_orders(0, &[BigInt::from(2)]));
        let gens = block.generators(3);
        assert_eq!(gens.len(), 1);
        let g = model.class(&gens[0]).unwrap();
        assert!(!model.is_zero_class(&g));
        let twice = CohomologyClass {
            representative: g.representative.scale(&BigInt::from(2)),
            degree: g.degree,
        };
        assert!(model.is_zero_class(&twice));
        assert!(cross_check_hochster_koszul(&k).agrees);
    }
}
