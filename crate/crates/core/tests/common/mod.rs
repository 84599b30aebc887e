#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;

/// Cohomology of the homogeneous line bundle on a partial flag variety of
/// GL_N attached to `lambda` (length N), computed by direct Bott: returns
/// `None` when everything vanishes, else `(degree, dimension)`.
pub fn gl_bott(lambda: &[i64]) -> Option<(i64, BigInt)> {
    let n = lambda.len();
    let shifted: Vec<i64> = lambda.iter().enumerate().map(|(i, &l)| l + (n - 1 - i) as i64).collect();
    let mut inversions = 0i64;
    for i in 0..n {
        for j in i + 1..n {
            if shifted[i] == shifted[j] {
                return None;
            }
            if shifted[i] < shifted[j] {
                inversions += 1;
            }
        }
    }
    let mut sorted = shifted;
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    for i in 0..n {
        for j in i + 1..n {
            num *= sorted[i] - sorted[j];
            den *= (j - i) as i64;
        }
    }
    Some((inversions, num / den))
}

fn padded(head: &[i64], n: usize) -> Vec<i64> {
    let mut v = head.to_vec();
    v.resize(n, 0);
    v
}

/// `H•(Gr(2,N), Σ^{a,b}U∨)` as degree ↦ dimension.
pub fn gr_oracle(a: i64, b: i64, n: usize) -> BTreeMap<i64, BigInt> {
    gl_bott(&padded(&[a, b], n)).into_iter().collect()
}

/// `H•(E, O(d·h + e·H))` on `E = Fl(1,2,N)`.
pub fn e_line_oracle(d: i64, e: i64, n: usize) -> BTreeMap<i64, BigInt> {
    gl_bott(&padded(&[d + e, e], n)).into_iter().collect()
}

pub fn as_map(d: &flipcheck::bwb::GradedDims) -> BTreeMap<i64, BigInt> {
    d.iter().map(|(k, v)| (k, BigInt::from(v))).collect()
}

/// `H•(P^{N-1}, O(d))`.
pub fn projective_oracle(d: i64, n: usize) -> BTreeMap<i64, BigInt> {
    let binom = |top: i64, k: i64| -> BigInt {
        let mut r = BigInt::from(1);
        for i in 0..k {
            r = r * (top - i) / (i + 1);
        }
        r
    };
    let m = n as i64 - 1;
    let mut out = BTreeMap::new();
    if d >= 0 {
        out.insert(0, binom(d + m, m));
    } else if d <= -(m + 1) {
        out.insert(m, binom(-d - 1, m));
    }
    out
}

fn euler(m: &BTreeMap<i64, BigInt>) -> BigInt {
    m.iter().map(|(k, v)| if k % 2 == 0 { v.clone() } else { -v.clone() }).sum()
}

/// `χ(E, A)` from the filtration of `S^kU∨` on `E` by `O((k-2i)h + iH)`.
pub fn e_chi_oracle(a: &flipcheck::flagx::EObject, n: usize) -> BigInt {
    let mut total = BigInt::from(0);
    for (t, m) in a.iter() {
        let (wa, wb) = (t.weight.a(), t.weight.b());
        let k = wa - wb;
        let mut chi = BigInt::from(0);
        for i in 0..=k {
            chi += euler(&e_line_oracle(k - 2 * i + t.twist_h, wb + i, n));
        }
        let sign = if t.shift % 2 == 0 { 1 } else { -1 };
        total += chi * sign * m as i64;
    }
    total
}
