//! Weight arithmetic for Schur functors of the rank-2 bundle `U∨` on `Gr(2,N)`.
//!
//! A [`Weight`] `(a,b)` with `a >= b` names `Σ^{a,b}U∨`; determinant twists
//! `O(cH)` are always folded into the weight, so `O(cH) = Σ^{c,c}U∨` and
//! `S^kU∨(cH) = Σ^{k+c,c}U∨`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Highest weight `(a,b)`, `a >= b`, of an irreducible `GL(2)` bundle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight {
    a: i64,
    b: i64,
}

impl Weight {
    pub fn new(a: i64, b: i64) -> Result<Self> {
        if a < b {
            return Err(Error::WeightOrder { a, b });
        }
        Ok(Self { a, b })
    }

    /// The line bundle `O(cH)`.
    pub fn line(c: i64) -> Self {
        Self { a: c, b: c }
    }

    /// `S^kU∨`.
    pub fn sym(k: u32) -> Self {
        Self { a: k as i64, b: 0 }
    }

    /// `S^kU = (S^kU∨)∨`.
    pub fn sym_dual(k: u32) -> Self {
        Self { a: 0, b: -(k as i64) }
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    /// Symmetric-power degree `a - b`.
    pub fn degree(&self) -> u32 {
        (self.a - self.b) as u32
    }

    pub fn rank(&self) -> u64 {
        (self.a - self.b + 1) as u64
    }

    pub fn dual(self) -> Self {
        Self { a: -self.b, b: -self.a }
    }

    pub fn det_twist(self, c: i64) -> Self {
        Self { a: self.a + c, b: self.b + c }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Σ^{{{},{}}}U∨", self.a, self.b)
    }
}

pub fn dual(w: Weight) -> Weight {
    w.dual()
}

pub fn det_twist(w: Weight, c: i64) -> Weight {
    w.det_twist(c)
}

/// Clebsch-Gordan decomposition of `Σ^{w1} ⊗ Σ^{w2}` for `GL(2)`:
/// `⊕_{t=0}^{m} Σ^{a1+a2-t, b1+b2+t}` with `m = min(a1-b1, a2-b2)`.
pub fn cg_tensor(w1: Weight, w2: Weight) -> GrSum {
    let m = (w1.a - w1.b).min(w2.a - w2.b);
    let mut out = GrSum::zero();
    for t in 0..=m {
        let w = Weight { a: w1.a + w2.a - t, b: w1.b + w2.b + t };
        out.add_term(w, 0, 1);
    }
    out
}

/// Formal direct sum of shifted Schur functors on `Gr(2,N)`.
///
/// Terms are kept merged and in lexicographic `(a, b, shift)` order; the
/// shift `s` of a term means the object `Σ^{a,b}U∨[s]`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GrSum {
    terms: BTreeMap<(Weight, i64), u64>,
}

impl GrSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_weight(w: Weight) -> Self {
        Self::shifted(w, 0)
    }

    pub fn shifted(w: Weight, shift: i64) -> Self {
        let mut s = Self::zero();
        s.add_term(w, shift, 1);
        s
    }

    pub fn add_term(&mut self, w: Weight, shift: i64, mult: u64) {
        if mult == 0 {
            return;
        }
        *self.terms.entry((w, shift)).or_insert(0) += mult;
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterates `(weight, shift, multiplicity)` in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (Weight, i64, u64)> + '_ {
        self.terms.iter().map(|(&(w, s), &m)| (w, s, m))
    }

    pub fn rank(&self) -> u64 {
        self.iter().map(|(w, _, m)| w.rank() * m).sum()
    }

    pub fn plus(mut self, other: &GrSum) -> Self {
        for (w, s, m) in other.iter() {
            self.add_term(w, s, m);
        }
        self
    }

    pub fn shift(&self, by: i64) -> Self {
        let mut out = Self::zero();
        for (w, s, m) in self.iter() {
            out.add_term(w, s + by, m);
        }
        out
    }

    pub fn det_twist(&self, c: i64) -> Self {
        let mut out = Self::zero();
        for (w, s, m) in self.iter() {
            out.add_term(w.det_twist(c), s, m);
        }
        out
    }

    pub fn dual(&self) -> Self {
        let mut out = Self::zero();
        for (w, s, m) in self.iter() {
            out.add_term(w.dual(), -s, m);
        }
        out
    }

    /// Bilinear tensor product; shifts add.
    pub fn tensor(&self, other: &GrSum) -> Self {
        let mut out = Self::zero();
        for (w1, s1, m1) in self.iter() {
            for (w2, s2, m2) in other.iter() {
                for (w, _, m) in cg_tensor(w1, w2).iter() {
                    out.add_term(w, s1 + s2, m * m1 * m2);
                }
            }
        }
        out
    }
}

impl From<Weight> for GrSum {
    fn from(w: Weight) -> Self {
        GrSum::from_weight(w)
    }
}

impl fmt::Display for GrSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, s, m) in self.iter() {
            if !first {
                write!(f, " ⊕ ")?;
            }
            first = false;
            if m > 1 {
                write!(f, "{m}·")?;
            }
            write!(f, "{w}")?;
            if s != 0 {
                write!(f, "[{s}]")?;
            }
        }
        Ok(())
    }
}

/// `A∨ ⊗ B`, term by term; each output shift is `shift(B) - shift(A)`.
pub fn hom_object(a: &GrSum, b: &GrSum) -> GrSum {
    a.dual().tensor(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(a: i64, b: i64) -> Weight {
        Weight::new(a, b).unwrap()
    }

    fn sum(ws: &[(i64, i64)]) -> GrSum {
        let mut s = GrSum::zero();
        for &(a, b) in ws {
            s.add_term(w(a, b), 0, 1);
        }
        s
    }

    #[test]
    fn rejects_increasing_pair() {
        assert_eq!(Weight::new(0, 1), Err(Error::WeightOrder { a: 0, b: 1 }));
    }

    #[test]
    fn duals() {
        assert_eq!(dual(w(0, 0)), w(0, 0));
        assert_eq!(dual(Weight::sym(3)), Weight::sym_dual(3));
        assert_eq!(dual(Weight::line(1)), Weight::line(-1));
    }

    #[test]
    fn twists() {
        let k = 4;
        assert_eq!(det_twist(Weight::sym(k), 1), w(5, 1));
        let n = 5;
        assert_eq!(det_twist(Weight::sym(n - 1), -1), w(n as i64 - 2, -1));
        assert_eq!(det_twist(w(0, 0), -7), Weight::line(-7));
    }

    #[test]
    fn standard_plethysm() {
        assert_eq!(cg_tensor(w(1, 0), w(1, 0)), sum(&[(2, 0), (1, 1)]));
    }

    #[test]
    fn line_bundle_tensor_is_single_term() {
        assert_eq!(cg_tensor(w(3, 3), w(2, -1)), sum(&[(5, 2)]));
    }

    #[test]
    fn lr_display_for_boundary_case() {
        for n in 1..7i64 {
            let expect: Vec<(i64, i64)> = (0..n).map(|t| (n - t - 1, -n + t)).collect();
            assert_eq!(cg_tensor(w(-1, -n), w(n, 0)), sum(&expect));
            // hom(S^{n-1}U∨(H), S^nU∨) is the same sum
            let a = GrSum::from(Weight::sym(n as u32 - 1).det_twist(1));
            let b = GrSum::from(Weight::sym(n as u32));
            assert_eq!(hom_object(&a, &b), sum(&expect));
        }
    }

    #[test]
    fn hom_trivial() {
        let o = GrSum::from(Weight::line(0));
        assert_eq!(hom_object(&o, &o), o);
    }

    #[test]
    fn hom_shifts_subtract() {
        let a = GrSum::shifted(w(0, 0), 2);
        let b = GrSum::shifted(w(1, 0), -1);
        assert_eq!(hom_object(&a, &b), GrSum::shifted(w(1, 0), -3));
    }

    #[test]
    fn empty_sum_is_zero_object() {
        let z = GrSum::zero();
        assert!(z.is_zero());
        assert!(hom_object(&z, &sum(&[(1, 0)])).is_zero());
        assert_eq!(z.to_string(), "0");
    }

    fn weight_strategy() -> impl Strategy<Value = Weight> {
        (-8i64..8, 0i64..8).prop_map(|(b, d)| Weight::new(b + d, b).unwrap())
    }

    proptest! {
        #[test]
        fn cg_commutes(w1 in weight_strategy(), w2 in weight_strategy()) {
            prop_assert_eq!(cg_tensor(w1, w2), cg_tensor(w2, w1));
        }

        #[test]
        fn cg_conserves_rank(w1 in weight_strategy(), w2 in weight_strategy()) {
            let out = cg_tensor(w1, w2);
            prop_assert_eq!(out.rank(), w1.rank() * w2.rank());
            for (x, s, m) in out.iter() {
                prop_assert!(x.a() >= x.b());
                prop_assert_eq!(s, 0);
                prop_assert_eq!(m, 1);
            }
        }

        #[test]
        fn dual_and_twist_invert(x in weight_strategy(), c in -10i64..10) {
            prop_assert_eq!(x.dual().dual(), x);
            prop_assert_eq!(x.det_twist(c).det_twist(-c), x);
        }
    }
}
