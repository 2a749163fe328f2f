use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::KoszulError;
use crate::simplicial::SimplicialComplex;
use crate::subset::VertexSet;

/// `u_sigma v_tau` with `sigma` and `tau` disjoint, `u`'s in increasing order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub u: VertexSet,
    pub v: VertexSet,
}

impl Monomial {
    pub const ONE: Monomial = Monomial {
        u: VertexSet::EMPTY,
        v: VertexSet::EMPTY,
    };

    pub fn new(u: VertexSet, v: VertexSet) -> Self {
        assert!(u.is_disjoint(v), "u and v parts must be disjoint");
        Monomial { u, v }
    }

    pub fn degree(self) -> usize {
        self.u.len() + 2 * self.v.len()
    }

    pub fn multidegree(self) -> VertexSet {
        self.u.union(self.v)
    }
}

// Lexicographic on the u labels, then on the v labels.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.u
            .iter()
            .cmp(other.u.iter())
            .then_with(|| self.v.iter().cmp(other.v.iter()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.u.is_empty() && self.v.is_empty() {
            return write!(f, "1");
        }
        for i in self.u.iter() {
            write!(f, "u_{i}")?;
        }
        for i in self.v.iter() {
            write!(f, "v_{i}")?;
        }
        Ok(())
    }
}

/// Sign of `u_a u_b = sign * u_{a+b}`: one factor `-1` per pair `i in a`, `j in b`, `i > j`.
pub(crate) fn shuffle_sign(a: VertexSet, b: VertexSet) -> bool {
    let inversions: u32 = b.iter().map(|j| (a.bits() >> j).count_ones()).sum();
    inversions % 2 == 1
}

/// An integer combination of monomials with no zero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Cochain {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Cochain {
    pub fn zero() -> Self {
        Cochain::default()
    }

    pub fn one() -> Self {
        Cochain::term(Monomial::ONE, BigInt::one())
    }

    pub fn term(m: Monomial, coefficient: BigInt) -> Self {
        let mut c = Cochain::zero();
        c.add_term(m, coefficient);
        c
    }

    pub fn monomial(m: Monomial) -> Self {
        Cochain::term(m, BigInt::one())
    }

    pub fn add_term(&mut self, m: Monomial, coefficient: BigInt) {
        if coefficient.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(BigInt::zero);
        *entry += coefficient;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// The common total degree of all terms, `None` for the zero cochain or a mixed one.
    pub fn degree(&self) -> Option<usize> {
        let mut degrees = self.terms.keys().map(|m| m.degree());
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn multidegrees(&self) -> BTreeSet<VertexSet> {
        self.terms.keys().map(|m| m.multidegree()).collect()
    }

    /// The terms whose multidegree is `i`.
    pub fn component(&self, i: VertexSet) -> Cochain {
        Cochain {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.multidegree() == i)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        self.add(&other.scale(&-BigInt::one()))
    }

    pub fn scale(&self, k: &BigInt) -> Cochain {
        let mut out = Cochain::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, c * k);
        }
        out
    }

    /// `d(u_s v_t) = sum_j (-1)^j u_{s - s_j} v_{t + s_j}`, `j` the 0-based
    /// position of `s_j` in `s`; terms with `t + s_j` not a face vanish.
    pub fn differential(&self, k: &SimplicialComplex) -> Cochain {
        let mut out = Cochain::zero();
        for (m, c) in &self.terms {
            for (j, i) in m.u.iter().enumerate() {
                let v = m.v.with(i);
                if !k.is_face(v) {
                    continue;
                }
                let target = Monomial { u: m.u.without(i), v };
                out.add_term(target, if j % 2 == 0 { c.clone() } else { -c });
            }
        }
        out
    }

    /// Product in the reduced model: zero when supports meet or the v part
    /// leaves `K`, otherwise the shuffle sign of the u parts.
    pub fn product(&self, other: &Cochain, k: &SimplicialComplex) -> Cochain {
        let mut out = Cochain::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                if !a.multidegree().is_disjoint(b.multidegree()) {
                    continue;
                }
                let v = a.v.union(b.v);
                if !k.is_face(v) {
                    continue;
                }
                let coef = x * y;
                let m = Monomial { u: a.u.union(b.u), v };
                out.add_term(m, if shuffle_sign(a.u, b.u) { -coef } else { coef });
            }
        }
        out
    }

    /// Parses the u/v notation, e.g. `u_2u_7u_5v_8 - u_2u_7u_8v_5` or `2u_1v_4`.
    ///
    /// Factors are multiplied in the written order, so reordering `u`'s
    /// contributes a sign. Terms that vanish in the reduced model (repeated
    /// index, `u_i v_i`, or a v part outside `K`) are dropped.
    pub fn parse(input: &str, k: &SimplicialComplex) -> Result<Cochain, KoszulError> {
        let fail = |reason: &str| KoszulError::Parse {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let normalized: String = input
            .chars()
            .map(|c| if c == '\u{2212}' { '-' } else { c })
            .filter(|c| !c.is_whitespace() && *c != '*' && *c != '{' && *c != '}')
            .collect();
        if normalized.is_empty() {
            return Err(fail("empty input"));
        }
        let chars: Vec<char> = normalized.chars().collect();
        let mut pos = 0;
        let mut out = Cochain::zero();
        let mut first = true;
        while pos < chars.len() {
            let mut negative = false;
            let mut saw_sign = false;
            while pos < chars.len() && (chars[pos] == '+' || chars[pos] == '-') {
                negative ^= chars[pos] == '-';
                saw_sign = true;
                pos += 1;
            }
            if !first && !saw_sign {
                return Err(fail("expected + or - between terms"));
            }
            first = false;
            let digits_start = pos;
            while pos < chars.len() && chars[pos].is_ascii_digit() {
                pos += 1;
            }
            let mut coef: BigInt = if pos > digits_start {
                chars[digits_start..pos]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| fail("bad coefficient"))?
            } else {
                BigInt::one()
            };
            let mut factors: Vec<(char, usize)> = Vec::new();
            while pos < chars.len() && (chars[pos] == 'u' || chars[pos] == 'v') {
                let kind = chars[pos];
                pos += 1;
                if pos < chars.len() && chars[pos] == '_' {
                    pos += 1;
                }
                let start = pos;
                while pos < chars.len() && chars[pos].is_ascii_digit() {
                    pos += 1;
                }
                if pos == start {
                    return Err(fail("expected an index after u or v"));
                }
                let index: usize = chars[start..pos]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| fail("bad index"))?;
                if index == 0 || index > k.vertex_count() {
                    return Err(KoszulError::IndexOutOfRange {
                        index,
                        m: k.vertex_count(),
                    });
                }
                factors.push((kind, index));
            }
            if factors.is_empty() && pos == digits_start {
                return Err(fail("expected a monomial"));
            }
            if negative {
                coef = -coef;
            }
            if let Some(m) = build_monomial(&factors, &mut coef, k) {
                out.add_term(m, coef);
            }
        }
        Ok(out)
    }
}

fn build_monomial(factors: &[(char, usize)], coef: &mut BigInt, k: &SimplicialComplex) -> Option<Monomial> {
    let mut u = VertexSet::EMPTY;
    let mut v = VertexSet::EMPTY;
    let mut negative = false;
    for &(kind, i) in factors {
        if u.contains(i) || v.contains(i) {
            return None;
        }
        if kind == 'u' {
            // moving u_i left past the u's with larger index
            negative ^= u.difference(VertexSet::full(i)).len() % 2 == 1;
            u.insert(i);
        } else {
            v.insert(i);
        }
    }
    if !k.is_face(v) {
        return None;
    }
    if negative {
        *coef = -&*coef;
    }
    Some(Monomial { u, v })
}

impl fmt::Display for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            if c.is_negative() {
                write!(f, "-")?;
            } else if n > 0 {
                write!(f, "+")?;
            }
            let abs = c.abs();
            if !abs.is_one() {
                write!(f, "{abs}")?;
            } else if *m == Monomial::ONE {
                write!(f, "1")?;
                continue;
            }
            if *m != Monomial::ONE {
                write!(f, "{m}")?;
            }
        }
        Ok(())
    }
}
