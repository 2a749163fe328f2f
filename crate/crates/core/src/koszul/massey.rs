use num_bigint::BigInt;
use num_traits::Zero;

use super::model::{CohomologyClass, KoszulModel};
use super::{Cochain, KoszulError};
use crate::linalg::{lattice_membership, IntMatrix};
use crate::subset::VertexSet;

/// Which pairwise product fails to vanish.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductPair {
    Ab,
    Bc,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MasseyResult {
    /// `a f + (-1)^{|a|+1} e c`, a cocycle of degree `|a|+|b|+|c|-1`.
    pub representative: CohomologyClass,
    pub e: Cochain,
    pub f: Cochain,
    /// The set of values contains zero.
    pub trivial: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MasseyOutcome {
    Undefined(ProductPair),
    Defined(MasseyResult),
}

impl MasseyOutcome {
    pub fn is_defined(&self) -> bool {
        matches!(self, MasseyOutcome::Defined(_))
    }

    pub fn result(&self) -> Option<&MasseyResult> {
        match self {
            MasseyOutcome::Defined(r) => Some(r),
            MasseyOutcome::Undefined(_) => None,
        }
    }
}

fn single_multidegree(x: &CohomologyClass) -> Result<Option<VertexSet>, KoszulError> {
    let mds = x.multidegrees();
    match mds.len() {
        0 => Ok(None),
        1 => Ok(Some(mds[0])),
        _ => Err(KoszulError::NotHomogeneous),
    }
}

/// The triple product `<a, b, c>` for classes that are each concentrated in
/// one multidegree.
///
/// Solves `d e = a b` and `d f = b c` over Z. Triviality is decided in the
/// target block: the representative must lie in the span of coboundaries,
/// `a H` and `H c`.
pub fn massey_triple(
    model: &KoszulModel,
    a: &CohomologyClass,
    b: &CohomologyClass,
    c: &CohomologyClass,
) -> Result<MasseyOutcome, KoszulError> {
    let k = model.complex();
    let (ia, ib, ic) = (single_multidegree(a)?, single_multidegree(b)?, single_multidegree(c)?);
    let ab = a.representative.product(&b.representative, k);
    let bc = b.representative.product(&c.representative, k);
    let Some(e) = model.solve_coboundary(&ab) else {
        return Ok(MasseyOutcome::Undefined(ProductPair::Ab));
    };
    let Some(f) = model.solve_coboundary(&bc) else {
        return Ok(MasseyOutcome::Undefined(ProductPair::Bc));
    };
    let degree = (a.degree + b.degree + c.degree).saturating_sub(1);
    let af = a.representative.product(&f, k);
    let ec = e.product(&c.representative, k);
    let rep = if a.degree % 2 == 1 { af.add(&ec) } else { af.sub(&ec) };
    debug_assert!(rep.differential(k).is_zero());
    let representative = CohomologyClass {
        representative: rep,
        degree,
    };

    let trivial = match (ia, ib, ic) {
        _ if model.is_zero_class(&representative) => true,
        (Some(ia), Some(ib), Some(ic)) => in_indeterminacy(model, &representative, (a, ia), (c, ic), ib),
        _ => false,
    };
    Ok(MasseyOutcome::Defined(MasseyResult {
        representative,
        e,
        f,
        trivial,
    }))
}

/// Whether a nonzero representative in block `I_a + I_b + I_c` lies in
/// `a H^{|b|+|c|-1} + H^{|a|+|b|-1} c` modulo coboundaries.
fn in_indeterminacy(
    model: &KoszulModel,
    rep: &CohomologyClass,
    (a, ia): (&CohomologyClass, VertexSet),
    (c, ic): (&CohomologyClass, VertexSet),
    ib: VertexSet,
) -> bool {
    let k = model.complex();
    let target = ia.union(ib).union(ic);
    let degree = rep.degree;
    let Some(v) = model.coordinates(rep).remove(&target) else {
        return false;
    };
    let orders = model.block(target).generator_orders(degree - target.len());
    let coords = |x: Cochain| {
        let cls = CohomologyClass {
            representative: x.component(target),
            degree,
        };
        model
            .coordinates(&cls)
            .remove(&target)
            .unwrap_or_else(|| vec![BigInt::zero(); orders.len()])
    };
    let mut columns: Vec<Vec<BigInt>> = Vec::new();
    if let Some(g_degree) = degree.checked_sub(a.degree) {
        for g in model.generators_in(target.difference(ia), g_degree) {
            columns.push(coords(a.representative.product(&g.representative, k)));
        }
    }
    if let Some(h_degree) = degree.checked_sub(c.degree) {
        for h in model.generators_in(target.difference(ic), h_degree) {
            columns.push(coords(h.representative.product(&c.representative, k)));
        }
    }
    for (n, d) in orders.iter().enumerate() {
        if !d.is_zero() {
            let mut col = vec![BigInt::zero(); orders.len()];
            col[n] = d.clone();
            columns.push(col);
        }
    }
    lattice_membership(&v, &IntMatrix::from_columns(orders.len(), &columns))
}
