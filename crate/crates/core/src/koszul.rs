//! Koszul complexes, exterior powers of coefficient matrices and the determinant identity.
//!
//! Bases of `K_k` are the `k`-subsets of `{0..d}` in lexicographic order, and
//! `d(e_I) = sum_j (-1)^(j+1) x_{i_j} e_{I minus i_j}`. A lift `y = A x` induces the chain map
//! `K(y) -> K(x)` whose level-`k` matrix on column vectors is the transpose of `wedge^k A`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::RingPresentation;
use crate::idealops::{pow_reduced, ElementSequence};
use crate::poly::Polynomial;

/// A rectangular matrix of ring elements, row-major.
#[derive(Clone, Debug)]
pub struct CoeffMatrix {
    ring: Arc<RingPresentation>,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

/// Entry-wise equality of the stored polynomials, not equality in `S`.
impl PartialEq for CoeffMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.entries == other.entries
    }
}

impl CoeffMatrix {
    pub fn new(ring: &Arc<RingPresentation>, rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Shape("ragged matrix rows".into()));
        }
        let entries: Vec<Polynomial> = rows.into_iter().flatten().collect();
        for e in &entries {
            ring.check(e)?;
        }
        Ok(CoeffMatrix {
            ring: ring.clone(),
            rows: nrows,
            cols: ncols,
            entries,
        })
    }

    pub fn parse(ring: &Arc<RingPresentation>, rows: &[&[&str]]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|s| ring.parse_element(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(ring, rows)
    }

    pub(crate) fn from_fn(
        ring: &Arc<RingPresentation>,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Polynomial,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        CoeffMatrix {
            ring: ring.clone(),
            rows,
            cols,
            entries,
        }
    }

    pub fn identity(ring: &Arc<RingPresentation>, d: usize) -> Self {
        Self::from_fn(ring, d, d, |i, j| {
            if i == j {
                Polynomial::one(ring.ambient())
            } else {
                Polynomial::zero(ring.ambient())
            }
        })
    }

    pub fn diagonal(ring: &Arc<RingPresentation>, diag: &[Polynomial]) -> Self {
        Self::from_fn(ring, diag.len(), diag.len(), |i, j| {
            if i == j {
                diag[i].clone()
            } else {
                Polynomial::zero(ring.ambient())
            }
        })
    }

    pub fn ring(&self) -> &Arc<RingPresentation> {
        &self.ring
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Polynomial] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> CoeffMatrix {
        Self::from_fn(&self.ring, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &CoeffMatrix) -> Result<CoeffMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let zero = Polynomial::zero(self.ring.ambient());
        Ok(Self::from_fn(&self.ring, self.rows, other.cols, |i, j| {
            (0..self.cols).fold(zero.clone(), |acc, k| &acc + &(self.get(i, k) * other.get(k, j)))
        }))
    }

    pub fn add(&self, other: &CoeffMatrix) -> Result<CoeffMatrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Shape("matrix sizes differ".into()));
        }
        Ok(Self::from_fn(&self.ring, self.rows, self.cols, |i, j| self.get(i, j) + other.get(i, j)))
    }

    /// Entrywise `q`-th powers.
    pub fn bracket(&self, q: u32) -> Result<CoeffMatrix> {
        let entries = self.entries.iter().map(|e| e.pow(q)).collect::<Result<Vec<_>>>()?;
        Ok(CoeffMatrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    /// `A x` for a sequence with as many entries as `A` has columns.
    pub fn apply(&self, x: &[Polynomial]) -> Result<Vec<Polynomial>> {
        if x.len() != self.cols {
            return Err(Error::Shape(format!("matrix has {} columns, sequence has {} entries", self.cols, x.len())));
        }
        let zero = Polynomial::zero(self.ring.ambient());
        Ok((0..self.rows)
            .map(|i| (0..self.cols).fold(zero.clone(), |acc, j| &acc + &(self.get(i, j) * &x[j])))
            .collect())
    }

    /// Entrywise normal form modulo `J`.
    pub fn reduced(&self) -> Result<CoeffMatrix> {
        let entries = self.entries.iter().map(|e| self.ring.reduce(e)).collect::<Result<Vec<_>>>()?;
        Ok(CoeffMatrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Equality of all entries in `S`.
    pub fn equals_in_ring(&self, other: &CoeffMatrix) -> Result<bool> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Ok(false);
        }
        for (a, b) in self.entries.iter().zip(&other.entries) {
            if !self.ring.is_zero_in(&(a - b))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Minor on the given row and column index sets (same size), by memoized Laplace expansion.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Polynomial {
        assert_eq!(rows.len(), cols.len());
        let mut memo: HashMap<(usize, u64), Polynomial> = HashMap::new();
        self.minor_rec(rows, cols, 0, 0, &mut memo)
    }

    fn minor_rec(
        &self,
        rows: &[usize],
        cols: &[usize],
        depth: usize,
        used: u64,
        memo: &mut HashMap<(usize, u64), Polynomial>,
    ) -> Polynomial {
        let ambient = self.ring.ambient();
        if depth == rows.len() {
            return Polynomial::one(ambient);
        }
        if let Some(p) = memo.get(&(depth, used)) {
            return p.clone();
        }
        let mut acc = Polynomial::zero(ambient);
        let mut sign_pos = true;
        for (k, &c) in cols.iter().enumerate() {
            if used & (1 << k) != 0 {
                continue;
            }
            let e = self.get(rows[depth], c);
            if !e.is_zero() {
                let sub = self.minor_rec(rows, cols, depth + 1, used | (1 << k), memo);
                let term = e * &sub;
                acc = if sign_pos { &acc + &term } else { &acc - &term };
            }
            sign_pos = !sign_pos;
        }
        memo.insert((depth, used), acc.clone());
        acc
    }

    pub fn determinant(&self) -> Result<Polynomial> {
        if !self.is_square() {
            return Err(Error::Shape("determinant of a non-square matrix".into()));
        }
        let idx: Vec<usize> = (0..self.rows).collect();
        Ok(self.minor(&idx, &idx))
    }

    pub fn render(&self) -> String {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                format!(
                    "[{}]",
                    self.row(i).iter().map(|e| e.to_string()).collect::<Vec<_>>().join(", ")
                )
            })
            .collect();
        format!("[{}]", rows.join(", "))
    }
}

/// All `k`-subsets of `0..d` in lexicographic order.
pub fn subsets(d: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, d: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..d {
            cur.push(v);
            rec(v + 1, d, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= d {
        rec(0, d, k, &mut Vec::new(), &mut out);
    }
    out
}

/// `wedge^k A`: the matrix of `k x k` minors, rows and columns indexed by lexicographic subsets.
pub fn exterior_power_map(a: &CoeffMatrix, k: usize) -> Result<CoeffMatrix> {
    if !a.is_square() {
        return Err(Error::Shape("exterior power of a non-square matrix".into()));
    }
    let d = a.nrows();
    if k > d {
        return Err(Error::BadLevel { level: k, max: d });
    }
    let basis = subsets(d, k);
    let n = basis.len();
    Ok(CoeffMatrix::from_fn(a.ring(), n, n, |i, j| a.minor(&basis[i], &basis[j])))
}

pub const MAX_KOSZUL_LENGTH: usize = 8;

#[derive(Clone, Debug)]
pub struct KoszulComplex {
    pub seq: ElementSequence,
    /// `differentials[k-1]` is `d_k : K_k -> K_(k-1)`, of size `C(d,k-1) x C(d,k)`.
    pub differentials: Vec<CoeffMatrix>,
}

impl KoszulComplex {
    pub fn differential(&self, k: usize) -> &CoeffMatrix {
        &self.differentials[k - 1]
    }
}

fn differential(seq: &ElementSequence, k: usize) -> CoeffMatrix {
    let d = seq.len();
    let ring = seq.ring();
    let targets = subsets(d, k - 1);
    let sources = subsets(d, k);
    let index: HashMap<&Vec<usize>, usize> = targets.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut m = CoeffMatrix::from_fn(ring, targets.len(), sources.len(), |_, _| Polynomial::zero(ring.ambient()));
    for (col, s) in sources.iter().enumerate() {
        for j in 0..s.len() {
            let mut face = s.clone();
            let v = face.remove(j);
            let row = index[&face];
            let x = &seq.elems()[v];
            m.entries[row * m.cols + col] = if j % 2 == 0 { x.clone() } else { -x };
        }
    }
    m
}

pub fn koszul_complex(seq: &ElementSequence) -> Result<KoszulComplex> {
    let d = seq.len();
    if d > MAX_KOSZUL_LENGTH {
        return Err(Error::TooLong(d));
    }
    if d == 0 {
        return Err(Error::Shape("Koszul complex of an empty sequence".into()));
    }
    let differentials: Vec<CoeffMatrix> = (1..=d).map(|k| differential(seq, k)).collect();
    for k in 1..d {
        let comp = differentials[k - 1].mul(&differentials[k])?;
        if !comp.equals_in_ring(&CoeffMatrix::from_fn(seq.ring(), comp.rows, comp.cols, |_, _| {
            Polynomial::zero(seq.ring().ambient())
        }))? {
            return Err(Error::Invariant(format!("d_{k} composed with d_{} is not zero", k + 1)));
        }
    }
    Ok(KoszulComplex {
        seq: seq.clone(),
        differentials,
    })
}

/// Check `y = A x` in `S`, reporting the first failing row.
pub fn verify_lift(x: &ElementSequence, y: &ElementSequence, a: &CoeffMatrix) -> Result<()> {
    x.ideal().check_same(&y.ideal())?;
    if a.nrows() != y.len() || a.ncols() != x.len() {
        return Err(Error::Shape(format!(
            "matrix is {}x{}, sequences have lengths {} and {}",
            a.nrows(),
            a.ncols(),
            y.len(),
            x.len()
        )));
    }
    let ax = a.apply(x.elems())?;
    for (i, (lhs, yi)) in ax.iter().zip(y.elems()).enumerate() {
        if !x.ring().is_zero_in(&(lhs - yi))? {
            return Err(Error::NotALift { index: i });
        }
    }
    Ok(())
}

/// Whether the transposed exterior powers of `A` commute with the Koszul differentials.
pub fn chain_map_check(x: &ElementSequence, y: &ElementSequence, a: &CoeffMatrix) -> Result<bool> {
    verify_lift(x, y, a)?;
    if x.len() != y.len() {
        return Err(Error::Shape("chain maps need sequences of equal length".into()));
    }
    let kx = koszul_complex(x)?;
    let ky = koszul_complex(y)?;
    let d = x.len();
    let levels: Vec<CoeffMatrix> = (0..=d)
        .map(|k| exterior_power_map(a, k).map(|m| m.transpose()))
        .collect::<Result<_>>()?;
    for k in 1..=d {
        let lhs = kx.differential(k).mul(&levels[k])?;
        let rhs = levels[k - 1].mul(ky.differential(k))?;
        if !lhs.equals_in_ring(&rhs)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `(y_1 ... y_d)^d (det A - det B)` lies in `(y)^[d+1]`.
pub fn detcor_check(y: &ElementSequence, a: &CoeffMatrix, b: &CoeffMatrix, x: &ElementSequence) -> Result<bool> {
    verify_lift(x, y, a)?;
    verify_lift(x, y, b)?;
    let ring = y.ring();
    let d = y.len() as u32;
    let diff = ring.reduce(&(&a.determinant()? - &b.determinant()?))?;
    if diff.is_zero() {
        return Ok(true);
    }
    let prod = pow_reduced(ring, &y.product()?, d)?;
    let target = ring.reduce(&(&prod * &diff))?;
    y.powers(d + 1)?.ideal().contains(&target)
}

/// Successive colon checks; returns the 1-based index of the first failure.
pub fn is_regular_sequence(seq: &ElementSequence) -> Result<(bool, Option<usize>)> {
    let ring = seq.ring();
    for i in 0..seq.len() {
        let prev = seq.prefix_ideal(i);
        let xi = &seq.elems()[i];
        if ring.is_zero_in(xi)? {
            return Ok((false, Some(i + 1)));
        }
        let c = crate::idealops::colon(&prev, xi)?;
        if !prev.contains_ideal(&c)? {
            return Ok((false, Some(i + 1)));
        }
    }
    if seq.ideal().is_unit()? {
        return Ok((false, None));
    }
    Ok((true, None))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn highpower() -> Arc<RingPresentation> {
        RingPresentation::parse(&["a", "b", "c", "d"], 0, &["a*c", "a*d", "b*c", "b*d"]).unwrap()
    }

    #[test]
    fn small_differentials() {
        let r = RingPresentation::parse(&["x1", "x2"], 0, &[]).unwrap();
        let s = ElementSequence::parse(&r, &["x1", "x2"]).unwrap();
        let k = koszul_complex(&s).unwrap();
        assert_eq!(k.differential(1).render(), "[[x1, x2]]");
        assert_eq!(k.differential(2).render(), "[[0 - x2], [x1]]");
        let one = koszul_complex(&ElementSequence::parse(&r, &["x1"]).unwrap()).unwrap();
        assert_eq!(one.differentials.len(), 1);
    }

    #[test]
    fn exterior_powers() {
        let r = highpower();
        let a = CoeffMatrix::parse(&r, &[&["a", "0"], &["0", "b"]]).unwrap();
        assert_eq!(exterior_power_map(&a, 1).unwrap(), a);
        assert_eq!(exterior_power_map(&a, 2).unwrap().render(), "[[a*b]]");
        assert_eq!(exterior_power_map(&a, 0).unwrap().render(), "[[1]]");
        assert_eq!(exterior_power_map(&a, 3), Err(Error::BadLevel { level: 3, max: 2 }));
        let id = CoeffMatrix::identity(&r, 3);
        for k in 0..=3 {
            let e = exterior_power_map(&id, k).unwrap();
            assert_eq!(e, CoeffMatrix::identity(&r, subsets(3, k).len()));
        }
    }

    #[test]
    fn highpower_chain_map() {
        let r = highpower();
        let x = ElementSequence::parse(&r, &["a+c", "b+d"]).unwrap();
        let y = ElementSequence::parse(&r, &["a^2", "b^2"]).unwrap();
        let a = CoeffMatrix::parse(&r, &[&["a", "0"], &["0", "b"]]).unwrap();
        assert!(chain_map_check(&x, &y, &a).unwrap());
        assert!(chain_map_check(&x, &x, &CoeffMatrix::identity(&r, 2)).unwrap());
        let bad = CoeffMatrix::parse(&r, &[&["b", "0"], &["0", "b"]]).unwrap();
        assert_eq!(chain_map_check(&x, &y, &bad), Err(Error::NotALift { index: 0 }));
    }

    #[test]
    fn highpower_detcor_with_syzygy_rows() {
        let r = highpower();
        let x = ElementSequence::parse(&r, &["a+c", "b+d"]).unwrap();
        let y = ElementSequence::parse(&r, &["a^2", "b^2"]).unwrap();
        let a = CoeffMatrix::parse(&r, &[&["a", "0"], &["0", "b"]]).unwrap();
        let b = CoeffMatrix::parse(&r, &[&["a + b + d", "0 - a - c"], &["c*(b+d)", "b - c*(a+c)"]]).unwrap();
        assert!(detcor_check(&y, &a, &b, &x).unwrap());
        assert!(detcor_check(&y, &a, &a, &x).unwrap());
    }

    #[test]
    fn regular_sequences() {
        let r = RingPresentation::parse(&["x", "z"], 0, &[]).unwrap();
        assert_eq!(is_regular_sequence(&ElementSequence::parse(&r, &["x", "z"]).unwrap()).unwrap(), (true, None));
        let s = RingPresentation::parse(&["x", "z"], 0, &["x^2*z", "z^2"]).unwrap();
        assert_eq!(is_regular_sequence(&ElementSequence::parse(&s, &["x"]).unwrap()).unwrap(), (false, Some(1)));
        let h = highpower();
        assert!(!is_regular_sequence(&ElementSequence::parse(&h, &["a+c", "b+d"]).unwrap()).unwrap().0);
    }
}
