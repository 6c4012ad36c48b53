use num_bigint::BigUint;
use num_traits::Signed;
use serde::Serialize;

use super::{count_hom_tree, count_injective, falling_factorial, CountError};
use crate::exact::{from_biguint, from_usize, is_integer, Rational};
use crate::graph::{Graph, RootedTree};

/// Which side of the equality dichotomy an equality instance falls on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EqualityClass {
    CliqueUnionOfSizeDPlus1,
    DRegular,
    Other,
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountReport {
    #[serde(with = "crate::exact::biguint_str")]
    pub mon_count: BigUint,
    #[serde(with = "crate::exact::biguint_str")]
    pub hom_count: BigUint,
    /// `n (d)_t`.
    #[serde(with = "crate::exact::rational_str")]
    pub bound: Rational,
    pub holds: bool,
    pub equality: bool,
    pub equality_classification: EqualityClass,
}

fn is_clique_union_of_size_d_plus_1(g: &Graph) -> bool {
    let d = g.average_degree();
    if !is_integer(&d) {
        return false;
    }
    let comps = g.components();
    comps.iter().all(|c| from_usize(c.len()) == &d + from_usize(1)) && g.is_equal_clique_union()
}

fn is_d_regular(g: &Graph) -> bool {
    g.is_regular()
}

/// Counts `|Mon(T,G)|` and `|Hom(T,G)|`, compares against `n (d)_t` exactly
/// and classifies equality instances: diameter `>= 3` trees test for a union
/// of `K_{d+1}`'s, diameter-2 trees for regularity.
pub fn main_bound_check(tree: &RootedTree, g: &Graph) -> CountReport {
    let mon_count = count_injective(tree, g);
    let hom_count = count_hom_tree(tree, g);
    let bound = from_usize(g.n()) * falling_factorial(&g.average_degree(), tree.edge_count());
    let mon = from_biguint(&mon_count);
    let holds = mon >= bound;
    let equality = mon == bound;
    let equality_classification = if !equality {
        EqualityClass::NotApplicable
    } else if tree.diameter() >= 3 {
        if is_clique_union_of_size_d_plus_1(g) {
            EqualityClass::CliqueUnionOfSizeDPlus1
        } else {
            EqualityClass::Other
        }
    } else if is_d_regular(g) {
        EqualityClass::DRegular
    } else if is_clique_union_of_size_d_plus_1(g) {
        EqualityClass::CliqueUnionOfSizeDPlus1
    } else {
        EqualityClass::Other
    };
    CountReport { mon_count, hom_count, bound, holds, equality, equality_classification }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdversaryBound {
    /// `n (d - t(t-1))^t`.
    #[serde(with = "crate::exact::rational_str")]
    pub value: Rational,
    /// Set when `d - t(t-1) <= 0`.
    pub vacuous: bool,
}

/// The walk-with-adversary lower bound `n (d - t(t-1))^t`.
pub fn adversary_lower_bound(g: &Graph, t: usize) -> AdversaryBound {
    let base = g.average_degree() - from_usize(t * t.saturating_sub(1));
    let mut value = from_usize(g.n());
    for _ in 0..t {
        value *= &base;
    }
    AdversaryBound { value, vacuous: !base.is_positive() }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BipartiteBound {
    pub a: usize,
    pub b: usize,
    pub e: usize,
    pub t1: usize,
    pub t2: usize,
    /// Formula with `t1` the tree part containing `x_0`.
    #[serde(with = "crate::exact::rational_str")]
    pub value: Rational,
    /// Same formula with the tree parts swapped.
    #[serde(with = "crate::exact::rational_str")]
    pub value_swapped: Rational,
}

fn bipartite_formula(a: usize, b: usize, e: usize, t1: usize, t2: usize) -> Rational {
    let ea = Rational::new(e.into(), a.into());
    let eb = Rational::new(e.into(), b.into());
    let first = from_usize(a) * falling_factorial(&ea, t2) * falling_factorial(&eb, t1 - 1);
    let second = from_usize(b) * falling_factorial(&ea, t1 - 1) * falling_factorial(&eb, t2);
    first + second
}

/// `a (e/a)_{t2} (e/b)_{t1-1} + b (e/a)_{t1-1} (e/b)_{t2}`, evaluated for both
/// assignments of the tree's colour classes.
pub fn bipartite_bound(g: &Graph, tree: &RootedTree) -> Result<BipartiteBound, CountError> {
    let (pa, pb) = g.bipartition().ok_or(CountError::NotBipartite)?;
    let (a, b) = (pa.len(), pb.len());
    if a == 0 || b == 0 {
        return Err(CountError::EmptyPart);
    }
    let e = g.m();
    let (t1, t2) = tree.bipartition_sizes();
    let value = bipartite_formula(a, b, e, t1, t2);
    let value_swapped = if t2 == 0 { value.clone() } else { bipartite_formula(a, b, e, t2, t1) };
    Ok(BipartiteBound { a, b, e, t1, t2, value, value_swapped })
}
