//! Objects on the flag variety `E = Fl(1,2,N) = P_{Gr}(U)` and Ext groups on
//! `E` and on the total space `X` of `O(-H-h)` over `E`.
//!
//! An [`EObject`] term `(w, d, s)` stands for `p₂*Σ^w U∨ ⊗ O(d·h)[s]`; `H`
//! twists are folded into `w`. Ext on `E` goes through the projection formula
//! and `Rp₂*O(d·h)`, then Borel-Weil-Bott on the Grassmannian. Ext on `X`
//! between objects pushed forward from `E` uses the triangle
//! `A(H+h)[1] → Lj*j_*A → A`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use dashmap::DashMap;
use serde::{Deserialize, Serialize};

use crate::bwb::{sum_cohomology, GradedDims};
use crate::error::{Error, Result};
use crate::weights::{GrSum, Weight};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ETerm {
    pub weight: Weight,
    pub twist_h: i64,
    pub shift: i64,
}

/// Formal sum of shifted homogeneous bundles on `E`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EObject {
    terms: BTreeMap<ETerm, u64>,
}

impl EObject {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(weight: Weight, twist_h: i64, shift: i64) -> Self {
        let mut o = Self::zero();
        o.add_term(ETerm { weight, twist_h, shift }, 1);
        o
    }

    /// `Σ^w U∨ ⊗ O(d·h)`.
    pub fn bundle(weight: Weight, twist_h: i64) -> Self {
        Self::term(weight, twist_h, 0)
    }

    /// The line bundle `O(small·h + big·H)`.
    pub fn line(small: i64, big: i64) -> Self {
        Self::bundle(Weight::line(big), small)
    }

    /// `S^kU∨(big·H + small·h)`.
    pub fn sym(k: u32, big: i64, small: i64) -> Self {
        Self::bundle(Weight::sym(k).det_twist(big), small)
    }

    pub fn add_term(&mut self, t: ETerm, mult: u64) {
        if mult == 0 {
            return;
        }
        *self.terms.entry(t).or_insert(0) += mult;
    }

    pub fn plus(mut self, other: &EObject) -> Self {
        for (t, m) in other.iter() {
            self.add_term(t, m);
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (ETerm, u64)> + '_ {
        self.terms.iter().map(|(&t, &m)| (t, m))
    }

    /// The unique term when the object is a single unshifted bundle.
    pub fn as_bundle(&self) -> Option<(Weight, i64)> {
        let mut it = self.terms.iter();
        match (it.next(), it.next()) {
            (Some((t, 1)), None) if t.shift == 0 => Some((t.weight, t.twist_h)),
            _ => None,
        }
    }

    /// Tensor with the line bundle `O(big·H + small·h)`.
    pub fn twist(&self, big: i64, small: i64) -> Self {
        let mut out = Self::zero();
        for (t, m) in self.iter() {
            out.add_term(
                ETerm { weight: t.weight.det_twist(big), twist_h: t.twist_h + small, shift: t.shift },
                m,
            );
        }
        out
    }

    pub fn shift(&self, by: i64) -> Self {
        let mut out = Self::zero();
        for (t, m) in self.iter() {
            out.add_term(ETerm { shift: t.shift + by, ..t }, m);
        }
        out
    }

    pub fn dual(&self) -> Self {
        let mut out = Self::zero();
        for (t, m) in self.iter() {
            out.add_term(ETerm { weight: t.weight.dual(), twist_h: -t.twist_h, shift: -t.shift }, m);
        }
        out
    }

    /// Cells `(x, y)` of the chessboard (`x` counts `h`, `y` counts `H`) filled
    /// by the line-bundle filtration of each term, with multiplicity.
    pub fn cells(&self) -> Vec<(i64, i64)> {
        let mut out = Vec::new();
        for (t, m) in self.iter() {
            let k = t.weight.degree() as i64;
            for l in 0..=k {
                for _ in 0..m {
                    out.push((k - 2 * l + t.twist_h, l + t.weight.b()));
                }
            }
        }
        out
    }

    /// Canonical ASCII form accepted by the expression parser.
    pub fn to_expr(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (t, m) in self.iter() {
            let k = t.weight.degree();
            let base = if k == 0 { "O".to_string() } else { format!("S{{{k}}}Uv") };
            let twist = ascii_twist(t.weight.b(), t.twist_h);
            let shift = if t.shift != 0 { format!("[{}]", t.shift) } else { String::new() };
            for _ in 0..m {
                parts.push(format!("{base}{twist}{shift}"));
            }
        }
        parts.join(" + ")
    }
}

fn ascii_twist(big: i64, small: i64) -> String {
    match (big, small) {
        (0, 0) => String::new(),
        (c, 0) => format!("({c}H)"),
        (0, d) => format!("({d}h)"),
        (c, d) => format!("({c}H{d:+}h)"),
    }
}

/// Twist in the form `(2H-3h)`.
pub fn render_twist(big: i64, small: i64) -> String {
    fn coef(c: i64, sym: &str, lead: bool) -> String {
        let sign = if c < 0 { "-" } else if lead { "" } else { "+" };
        let mag = c.abs();
        if mag == 1 {
            format!("{sign}{sym}")
        } else {
            format!("{sign}{mag}{sym}")
        }
    }
    match (big, small) {
        (0, 0) => String::new(),
        (c, 0) => format!("({})", coef(c, "H", true)),
        (0, d) => format!("({})", coef(d, "h", true)),
        (c, d) => format!("({}{})", coef(c, "H", true), coef(d, "h", false)),
    }
}

impl fmt::Display for EObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (t, m) in self.iter() {
            if !first {
                write!(f, " ⊕ ")?;
            }
            first = false;
            if m > 1 {
                write!(f, "{m}·")?;
            }
            let k = t.weight.degree();
            match k {
                0 => write!(f, "O")?,
                1 => write!(f, "U∨")?,
                k if k < 10 => write!(f, "S^{k}U∨")?,
                k => write!(f, "S^{{{k}}}U∨")?,
            }
            write!(f, "{}", render_twist(t.weight.b(), t.twist_h))?;
            if t.shift != 0 {
                write!(f, "[{}]", t.shift)?;
            }
        }
        Ok(())
    }
}

/// `Rp₂* O(d·h)` as a sum on `Gr(2,N)`.
pub fn push_p2(d_h: i64, _n: usize) -> GrSum {
    match d_h {
        d if d >= 0 => GrSum::from(Weight::sym(d as u32)),
        -1 => GrSum::zero(),
        // S^{-d-2}U ⊗ O(-H)[-1]
        d => GrSum::shifted(Weight::new(-1, d + 1).expect("d <= -2"), -1),
    }
}

/// `RHom_E(A, B)` pushed to `Gr(2,N)`: the sum whose cohomology is `Ext•_E(A,B)`.
pub fn e_hom_pushforward(a: &EObject, b: &EObject, n: usize) -> GrSum {
    let mut out = GrSum::zero();
    for (ta, ma) in a.iter() {
        for (tb, mb) in b.iter() {
            let hom = GrSum::shifted(ta.weight.dual(), -ta.shift)
                .tensor(&GrSum::shifted(tb.weight, tb.shift));
            let pushed = hom.tensor(&push_p2(tb.twist_h - ta.twist_h, n));
            for (w, s, m) in pushed.iter() {
                out.add_term(w, s, m * ma * mb);
            }
        }
    }
    out
}

/// `Ext•_E(A, B)`.
pub fn e_ext(a: &EObject, b: &EObject, n: usize) -> Result<GradedDims> {
    sum_cohomology(&e_hom_pushforward(a, b, n), n)
}

pub fn e_euler(a: &EObject, b: &EObject, n: usize) -> Result<i128> {
    Ok(e_ext(a, b, n)?.euler())
}

/// Outcome of `Ext•_X(j_*A, j_*B)`.
///
/// `front` is `Ext•_E(A(H+h), B)` moved up one degree, `back` is `Ext•_E(A,B)`;
/// they fit into a long exact sequence whose connecting map sends front
/// degree `k` to back degree `k+1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ExtResult {
    Zero,
    Exact { dims: GradedDims },
    Bounded { front: GradedDims, back: GradedDims },
}

impl ExtResult {
    pub fn is_zero(&self) -> bool {
        matches!(self, ExtResult::Zero)
    }

    pub fn exact(&self) -> Option<&GradedDims> {
        match self {
            ExtResult::Zero => None,
            ExtResult::Exact { dims } => Some(dims),
            ExtResult::Bounded { .. } => None,
        }
    }

    pub fn is_bounded(&self) -> bool {
        matches!(self, ExtResult::Bounded { .. })
    }
}

impl fmt::Display for ExtResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtResult::Zero => write!(f, "0"),
            ExtResult::Exact { dims } => write!(f, "{dims}"),
            ExtResult::Bounded { front, back } => {
                write!(f, "bounded(front={front}, back={back})")
            }
        }
    }
}

/// `Ext•_X(j_*A, j_*B)` from the two long-exact-sequence contributions.
pub fn x_ext(a: &EObject, b: &EObject, n: usize) -> Result<ExtResult> {
    let back = e_ext(a, b, n)?;
    let front = e_ext(&a.twist(1, 1), b, n)?.shift_degrees(1);
    if front.is_zero() && back.is_zero() {
        return Ok(ExtResult::Zero);
    }
    let interacts = front.degrees().any(|k| back.get(k + 1) != 0);
    if interacts {
        Ok(ExtResult::Bounded { front, back })
    } else {
        Ok(ExtResult::Exact { dims: front.plus(&back) })
    }
}

/// True only when `RHom_X(A, B) = 0` is certified.
pub fn x_vanishes(a: &EObject, b: &EObject, n: usize) -> Result<bool> {
    Ok(x_ext(a, b, n)?.is_zero())
}

/// Weights of the full exceptional collection of `D(Gr(2,N))` used as a
/// K-theory basis: `⟨𝒜(k)⟩_{0≤k<N}` for odd `N`, and
/// `⟨𝒜(k)⟩_{0≤k<n}, ⟨𝒜¹(k)⟩_{n≤k<2n}` for `N = 2n`.
pub fn gr_collection(n: usize) -> Vec<Weight> {
    let half = (n / 2) as u32;
    let mut out = Vec::new();
    if n % 2 == 1 {
        for k in 0..n as i64 {
            out.extend((0..half).map(|j| Weight::sym(j).det_twist(k)));
        }
    } else {
        for k in 0..half as i64 {
            out.extend((0..half).map(|j| Weight::sym(j).det_twist(k)));
        }
        for k in half as i64..n as i64 {
            out.extend((0..half - 1).map(|j| Weight::sym(j).det_twist(k)));
        }
    }
    out
}

/// Class in `K₀(E)` recorded as Euler pairings against a fixed full exceptional collection.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KVector(pub Vec<i128>);

impl KVector {
    pub fn zero(len: usize) -> Self {
        Self(vec![0; len])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn add_scaled(&self, other: &KVector, c: i128) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(x, y)| x + c * y).collect())
    }

    pub fn sub(&self, other: &KVector) -> Self {
        self.add_scaled(other, -1)
    }

    pub fn add(&self, other: &KVector) -> Self {
        self.add_scaled(other, 1)
    }
}

/// The collection `⟨p₂*T_i⟩, ⟨p₂*T_i ⊗ O(h)⟩` on `E`, checked exceptional and
/// semiorthogonal when built, so its Euler pairing matrix is upper unitriangular.
#[derive(Debug, Clone)]
pub struct KBasis {
    n: usize,
    objects: Vec<EObject>,
}

impl KBasis {
    pub fn build(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::BadRank(n));
        }
        let gr = gr_collection(n);
        let mut objects: Vec<EObject> = gr.iter().map(|&w| EObject::bundle(w, 0)).collect();
        objects.extend(gr.iter().map(|&w| EObject::bundle(w, 1)));
        for (i, oi) in objects.iter().enumerate() {
            let self_ext = e_ext(oi, oi, n)?;
            if self_ext != GradedDims::single(0, 1) {
                return Err(Error::BasisInvalid { n, reason: format!("{oi} is not exceptional: {self_ext}") });
            }
            for oj in &objects[..i] {
                let back = e_ext(oi, oj, n)?;
                if !back.is_zero() {
                    return Err(Error::BasisInvalid {
                        n,
                        reason: format!("Ext({oi}, {oj}) = {back} breaks semiorthogonality"),
                    });
                }
            }
        }
        Ok(Self { n, objects })
    }

    /// Shared, validated basis for `N`.
    pub fn for_rank(n: usize) -> Result<Arc<KBasis>> {
        static BASES: OnceLock<DashMap<usize, Arc<KBasis>>> = OnceLock::new();
        let bases = BASES.get_or_init(DashMap::new);
        if let Some(b) = bases.get(&n) {
            return Ok(Arc::clone(&b));
        }
        let basis = Arc::new(KBasis::build(n)?);
        bases.insert(n, Arc::clone(&basis));
        Ok(basis)
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn objects(&self) -> &[EObject] {
        &self.objects
    }

    pub fn class(&self, a: &EObject) -> Result<KVector> {
        let entries = self
            .objects
            .iter()
            .map(|b| e_euler(b, a, self.n))
            .collect::<Result<Vec<_>>>()?;
        Ok(KVector(entries))
    }
}

pub fn k_class(a: &EObject, n: usize) -> Result<KVector> {
    KBasis::for_rank(n)?.class(a)
}
