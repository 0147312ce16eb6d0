//! Dense exact matrices, the standard symplectic form, Pfaffians and the tilde pairing.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde_json::Value as Json;

use crate::error::{Error, Result};
use crate::ring::{same_ring, Ring, RingElement};

pub type ColumnVector = Vec<RingElement>;

#[derive(Clone, Debug)]
pub struct ExactMatrix {
    pub ring: Ring,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<RingElement>,
}

impl PartialEq for ExactMatrix {
    fn eq(&self, o: &Self) -> bool {
        self.rows == o.rows && self.cols == o.cols && self.entries == o.entries
    }
}

impl Eq for ExactMatrix {}

impl ExactMatrix {
    pub fn zeros(ring: &Ring, rows: usize, cols: usize) -> Self {
        ExactMatrix { ring: ring.clone(), rows, cols, entries: vec![RingElement::zero(ring); rows * cols] }
    }

    pub fn identity(ring: &Ring, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.entries[i * n + i] = RingElement::one(ring);
        }
        m
    }

    pub fn from_fn(ring: &Ring, rows: usize, cols: usize, f: impl Fn(usize, usize) -> RingElement) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        ExactMatrix { ring: ring.clone(), rows, cols, entries }
    }

    pub fn from_rows(ring: &Ring, rows: Vec<Vec<RingElement>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        let entries: Vec<RingElement> = rows.into_iter().flatten().collect();
        if entries.iter().any(|e| !same_ring(&e.ring, ring)) {
            return Err(Error::DescriptorMismatch);
        }
        Ok(ExactMatrix { ring: ring.clone(), rows: r, cols: c, entries })
    }

    pub fn from_ints(ring: &Ring, rows: &[&[i64]]) -> Self {
        Self::from_fn(ring, rows.len(), rows[0].len(), |r, c| RingElement::int(ring, rows[r][c]))
    }

    pub fn column(ring: &Ring, v: &[RingElement]) -> Self {
        Self::from_fn(ring, v.len(), 1, |r, _| v[r].clone())
    }

    pub fn row(ring: &Ring, v: &[RingElement]) -> Self {
        Self::from_fn(ring, 1, v.len(), |_, c| v[c].clone())
    }

    pub fn get(&self, r: usize, c: usize) -> &RingElement {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: RingElement) {
        self.entries[r * self.cols + c] = x;
    }

    pub fn col_vec(&self, c: usize) -> ColumnVector {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row_vec(&self, r: usize) -> ColumnVector {
        (0..self.cols).map(|c| self.get(r, c).clone()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let e = self.get(r, c);
                    if r == c { e.is_one() } else { e.is_zero() }
                })
            })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.ring, self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut out = Self::zeros(&self.ring, self.rows, o.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..o.cols {
                    let b = o.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = r * o.cols + c;
                    out.entries[idx] = out.entries[idx].add(&a.mul(b));
                }
            }
        }
        Ok(out)
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.try_mul(o).expect("matrix shapes")
    }

    fn zip(&self, o: &Self, f: impl Fn(&RingElement, &RingElement) -> RingElement) -> Self {
        assert!(self.rows == o.rows && self.cols == o.cols, "matrix shapes");
        ExactMatrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&o.entries).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.zip(o, RingElement::add)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.zip(o, RingElement::sub)
    }

    pub fn neg(&self) -> Self {
        self.scale(&RingElement::int(&self.ring, -1))
    }

    pub fn scale(&self, s: &RingElement) -> Self {
        ExactMatrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e.mul(s)).collect(),
        }
    }

    /// Block diagonal sum `self ⊥ o`.
    pub fn direct_sum(&self, o: &Self) -> Self {
        let (r, c) = (self.rows + o.rows, self.cols + o.cols);
        Self::from_fn(&self.ring, r, c, |i, j| {
            if i < self.rows && j < self.cols {
                self.get(i, j).clone()
            } else if i >= self.rows && j >= self.cols {
                o.get(i - self.rows, j - self.cols).clone()
            } else {
                RingElement::zero(&self.ring)
            }
        })
    }

    /// Apply `f` to every entry, keeping the shape; used for substitution.
    pub fn map(&self, ring: &Ring, f: impl Fn(&RingElement) -> Result<RingElement>) -> Result<Self> {
        Ok(ExactMatrix {
            ring: ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect::<Result<_>>()?,
        })
    }

    /// First entry where the two matrices differ, as (row, col, left, right).
    pub fn first_mismatch(&self, o: &Self) -> Option<(usize, usize, String, String)> {
        if self.rows != o.rows || self.cols != o.cols {
            return Some((self.rows, self.cols, "shape".into(), format!("{}x{}", o.rows, o.cols)));
        }
        (0..self.rows * self.cols)
            .find(|&k| self.entries[k] != o.entries[k])
            .map(|k| (k / self.cols, k % self.cols, self.entries[k].to_string(), o.entries[k].to_string()))
    }

    pub fn det(&self) -> Result<RingElement> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("determinant of non-square matrix".into()));
        }
        if self.rows > 30 {
            return Err(Error::ShapeMismatch("matrix too large for cofactor expansion".into()));
        }
        let mut memo = HashMap::new();
        let full = if self.rows == 0 { 0 } else { (1u32 << self.rows) - 1 };
        Ok(self.det_rec(0, full, &mut memo))
    }

    // Laplace expansion along row `k` over the column set `cols`.
    fn det_rec(&self, k: usize, cols: u32, memo: &mut HashMap<u32, RingElement>) -> RingElement {
        if cols == 0 {
            return RingElement::one(&self.ring);
        }
        if let Some(v) = memo.get(&cols) {
            return v.clone();
        }
        let mut acc = RingElement::zero(&self.ring);
        let mut sign = 1;
        for c in 0..self.cols {
            if cols & (1 << c) == 0 {
                continue;
            }
            let a = self.get(k, c);
            if !a.is_zero() {
                let minor = self.det_rec(k + 1, cols & !(1 << c), memo);
                let t = a.mul(&minor);
                acc = if sign > 0 { acc.add(&t) } else { acc.sub(&t) };
            }
            sign = -sign;
        }
        memo.insert(cols, acc.clone());
        acc
    }

    fn minor(&self, r: usize, c: usize) -> Self {
        Self::from_fn(&self.ring, self.rows - 1, self.cols - 1, |i, j| {
            self.get(i + usize::from(i >= r), j + usize::from(j >= c)).clone()
        })
    }

    pub fn adjugate(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("adjugate of non-square matrix".into()));
        }
        let n = self.rows;
        if n == 1 {
            return Ok(Self::identity(&self.ring, 1));
        }
        let mut out = Self::zeros(&self.ring, n, n);
        for r in 0..n {
            for c in 0..n {
                let d = self.minor(r, c).det()?;
                out.set(c, r, if (r + c) % 2 == 0 { d } else { d.neg() });
            }
        }
        Ok(out)
    }

    /// Exact inverse via the adjugate; requires a unit determinant.
    pub fn inverse(&self) -> Result<Self> {
        let d = self.det()?;
        let di = crate::ring::invert_unit(&d)?;
        let inv = self.adjugate()?.scale(&di);
        debug_assert!(self.mul(&inv).is_identity());
        Ok(inv)
    }

    pub fn to_json(&self) -> Json {
        Json::Array(
            (0..self.rows)
                .map(|r| Json::Array((0..self.cols).map(|c| self.get(r, c).to_json()).collect()))
                .collect(),
        )
    }

    pub fn from_json(ring: &Ring, j: &Json) -> Result<Self> {
        let rows = j.as_array().ok_or_else(|| Error::Malformed("matrix: expected rows".into()))?;
        let rows = rows
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| Error::Malformed("matrix row".into()))?
                    .iter()
                    .map(|e| RingElement::from_json(ring, e))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(ring, rows)
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

pub fn vector_to_json(v: &[RingElement]) -> Json {
    Json::Array(v.iter().map(RingElement::to_json).collect())
}

pub fn vector_from_json(ring: &Ring, j: &Json) -> Result<ColumnVector> {
    j.as_array()
        .ok_or_else(|| Error::Malformed("vector: expected array".into()))?
        .iter()
        .map(|e| RingElement::from_json(ring, e))
        .collect()
}

/// `ψ_n`, of size `2n`.
pub fn standard_symplectic_form(ring: &Ring, n: usize) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(ring, 2 * n, 2 * n);
    for i in 0..n {
        m.set(2 * i, 2 * i + 1, RingElement::one(ring));
        m.set(2 * i + 1, 2 * i, RingElement::int(ring, -1));
    }
    m
}

pub fn is_alternating(m: &ExactMatrix) -> bool {
    m.is_square()
        && (0..m.rows).all(|i| {
            m.get(i, i).is_zero() && (0..i).all(|j| m.get(i, j).add(m.get(j, i)).is_zero())
        })
}

/// Whether `α^t ψ α = ψ`.
pub fn is_symplectic(a: &ExactMatrix) -> Result<bool> {
    if !a.is_square() {
        return Err(Error::ShapeMismatch("non-square".into()));
    }
    if a.rows % 2 == 1 {
        return Err(Error::OddDimension(a.rows));
    }
    let psi = standard_symplectic_form(&a.ring, a.rows / 2);
    Ok(a.transpose().mul(&psi).mul(a) == psi)
}

/// Whether `α^t φ α = φ` for an arbitrary form.
pub fn preserves_form(a: &ExactMatrix, phi: &ExactMatrix) -> bool {
    a.transpose().mul(phi).mul(a) == *phi
}

pub fn pfaffian(phi: &ExactMatrix) -> Result<RingElement> {
    if !is_alternating(phi) {
        return Err(Error::NotAlternating);
    }
    if phi.rows % 2 == 1 {
        return Err(Error::OddDimension(phi.rows));
    }
    if phi.rows > 30 {
        return Err(Error::ShapeMismatch("matrix too large for Pfaffian expansion".into()));
    }
    let mut memo = HashMap::new();
    let full = if phi.rows == 0 { 0 } else { (1u32 << phi.rows) - 1 };
    Ok(pf_rec(phi, full, &mut memo))
}

// First-row expansion over the index set `set`.
fn pf_rec(phi: &ExactMatrix, set: u32, memo: &mut HashMap<u32, RingElement>) -> RingElement {
    if set == 0 {
        return RingElement::one(&phi.ring);
    }
    if let Some(v) = memo.get(&set) {
        return v.clone();
    }
    let first = set.trailing_zeros() as usize;
    let rest = set & !(1 << first);
    let mut acc = RingElement::zero(&phi.ring);
    let mut sign = 1;
    for j in 0..phi.rows {
        if rest & (1 << j) == 0 {
            continue;
        }
        let a = phi.get(first, j);
        if !a.is_zero() {
            let t = a.mul(&pf_rec(phi, rest & !(1 << j), memo));
            acc = if sign > 0 { acc.add(&t) } else { acc.sub(&t) };
        }
        sign = -sign;
    }
    memo.insert(set, acc.clone());
    acc
}

/// The row `v^t ψ_n`.
pub fn tilde(v: &[RingElement]) -> Result<ExactMatrix> {
    if v.len() % 2 == 1 {
        return Err(Error::OddDimension(v.len()));
    }
    let ring = &v.first().ok_or(Error::OddDimension(0))?.ring;
    Ok(ExactMatrix::row(ring, &tilde_vec(v)))
}

/// Entries of `v^t ψ_n`: position `2i-1` holds `-v_{2i}`, position `2i` holds `v_{2i-1}`.
pub fn tilde_vec(v: &[RingElement]) -> Vec<RingElement> {
    (0..v.len()).map(|k| if k % 2 == 0 { v[k + 1].neg() } else { v[k - 1].clone() }).collect()
}

/// `ṽ w`, the symplectic pairing.
pub fn pairing(v: &[RingElement], w: &[RingElement]) -> RingElement {
    dot(&tilde_vec(v), w)
}

pub fn dot(a: &[RingElement], b: &[RingElement]) -> RingElement {
    let ring = &a[0].ring;
    a.iter().zip(b).fold(RingElement::zero(ring), |acc, (x, y)| acc.add(&x.mul(y)))
}

/// Coefficients `a_ij = c_i u_j - c_j u_i` (1-based, `i < j`) with `c = Σ a_ij (w_j e_i - w_i e_j)`.
pub fn kernel_decomposition(
    c: &[RingElement],
    w: &[RingElement],
    u: &[RingElement],
) -> Result<BTreeMap<(usize, usize), RingElement>> {
    let n = c.len();
    if w.len() != n || u.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: w.len().min(u.len()) });
    }
    if !dot(u, w).is_one() {
        return Err(Error::CertificateInvalid("u^t w != 1".into()));
    }
    if !dot(c, w).is_zero() {
        return Err(Error::NotInKernel);
    }
    let mut out = BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            out.insert((i + 1, j + 1), c[i].mul(&u[j]).sub(&c[j].mul(&u[i])));
        }
    }
    if kernel_reconstruct(&out, w) != c {
        return Err(Error::VerificationFailed("kernel reconstruction".into()));
    }
    Ok(out)
}

pub fn kernel_reconstruct(a: &BTreeMap<(usize, usize), RingElement>, w: &[RingElement]) -> ColumnVector {
    let ring = &w[0].ring;
    let mut out = vec![RingElement::zero(ring); w.len()];
    for (&(i, j), x) in a {
        out[i - 1] = out[i - 1].add(&x.mul(&w[j - 1]));
        out[j - 1] = out[j - 1].sub(&x.mul(&w[i - 1]));
    }
    out
}

/// `VerificationFailed` naming the first differing entry.
pub(crate) fn mismatch(what: &str, expected: &ExactMatrix, got: &ExactMatrix) -> Error {
    match got.first_mismatch(expected) {
        Some((r, c, x, y)) => {
            Error::VerificationFailed(format!("{what}: entry ({}, {}) is {x}, expected {y}", r + 1, c + 1))
        }
        None => Error::VerificationFailed(what.to_string()),
    }
}
