//! Matrices over `F_q` indexed by the signed order, the partition ↔ matrix
//! correspondences, and the two-sided canonical form.

use std::fmt;

use crate::error::{Error, Result};
use crate::ffield::{Field, FieldElement};
use crate::partitions::{Family, LabelledArc, LabelledPartition, PosArc};

/// A dense square matrix over `F_q`. Rows and columns are 0-based here;
/// position `k` corresponds to partition position `k + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UtMatrix {
    size: usize,
    entries: Vec<FieldElement>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixGroup {
    /// `U^D_{2n}(q)`, the even orthogonal unipotent group.
    UnipotentD,
    /// `u^D(q)`, its nilpotent algebra.
    NilpotentD,
    /// `U_{2n}(q)`, upper unitriangular matrices.
    Unipotent,
    /// `u_{2n}(q)`, strictly upper triangular matrices.
    Nilpotent,
}

impl MatrixGroup {
    fn name(self) -> &'static str {
        match self {
            MatrixGroup::UnipotentD => "U^D",
            MatrixGroup::NilpotentD => "u^D",
            MatrixGroup::Unipotent => "U",
            MatrixGroup::Nilpotent => "u",
        }
    }
}

impl UtMatrix {
    pub fn zero(size: usize) -> Self {
        Self {
            size,
            entries: vec![FieldElement::ZERO; size * size],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zero(size);
        for k in 0..size {
            m.set(k, k, FieldElement::ONE);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<FieldElement>>) -> Result<Self> {
        let size = rows.len();
        if rows.iter().any(|r| r.len() != size) {
            return Err(Error::Malformed("matrix rows must form a square".into()));
        }
        Ok(Self {
            size,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_entries(size: usize, entries: Vec<FieldElement>) -> Result<Self> {
        if entries.len() != size * size {
            return Err(Error::Malformed(format!(
                "expected {} entries for a {size}x{size} matrix, got {}",
                size * size,
                entries.len()
            )));
        }
        Ok(Self { size, entries })
    }

    /// `I + t·e_{i,j}`.
    pub fn elementary(size: usize, i: usize, j: usize, t: FieldElement) -> Self {
        let mut m = Self::identity(size);
        m.set(i, j, t);
        m
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        self.entries[r * self.size + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        self.entries[r * self.size + c] = v;
    }

    pub fn mul(&self, other: &Self, f: &Field) -> Self {
        assert_eq!(self.size, other.size);
        let n = self.size;
        let mut out = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = f.add(out.get(i, j), f.mul(a, b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self, f: &Field) -> Self {
        self.zip(other, |a, b| f.add(a, b))
    }

    pub fn sub(&self, other: &Self, f: &Field) -> Self {
        self.zip(other, |a, b| f.sub(a, b))
    }

    pub fn neg(&self, f: &Field) -> Self {
        Self {
            size: self.size,
            entries: self.entries.iter().map(|&a| f.neg(a)).collect(),
        }
    }

    fn zip(&self, other: &Self, op: impl Fn(FieldElement, FieldElement) -> FieldElement) -> Self {
        assert_eq!(self.size, other.size);
        Self {
            size: self.size,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| op(a, b))
                .collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.size);
        for r in 0..self.size {
            for c in 0..self.size {
                out.set(c, r, self.get(r, c));
            }
        }
        out
    }

    /// `J·M·J` with `J` the antidiagonal matrix of ones.
    pub fn antidiagonal_conjugate(&self) -> Self {
        let n = self.size;
        let mut out = Self::zero(n);
        for r in 0..n {
            for c in 0..n {
                out.set(r, c, self.get(n - 1 - r, n - 1 - c));
            }
        }
        out
    }

    pub fn block(&self, r0: usize, c0: usize, h: usize) -> Self {
        let mut out = Self::zero(h);
        for r in 0..h {
            for c in 0..h {
                out.set(r, c, self.get(r0 + r, c0 + c));
            }
        }
        out
    }

    fn set_block(&mut self, r0: usize, c0: usize, b: &Self) {
        for r in 0..b.size {
            for c in 0..b.size {
                self.set(r0 + r, c0 + c, b.get(r, c));
            }
        }
    }

    /// `[[tl, tr], [0, br]]`.
    pub fn from_blocks(tl: &Self, tr: &Self, br: &Self) -> Self {
        let h = tl.size;
        let mut out = Self::zero(2 * h);
        out.set_block(0, 0, tl);
        out.set_block(0, h, tr);
        out.set_block(h, h, br);
        out
    }

    pub fn is_upper_unitriangular(&self) -> bool {
        (0..self.size).all(|r| {
            (0..=r).all(|c| {
                let v = self.get(r, c);
                if r == c {
                    v == FieldElement::ONE
                } else {
                    v.is_zero()
                }
            })
        })
    }

    pub fn is_strictly_upper(&self) -> bool {
        (0..self.size).all(|r| (0..=r).all(|c| self.get(r, c).is_zero()))
    }

    /// Inverse of an upper unitriangular matrix by back substitution.
    pub fn inverse_unitriangular(&self, f: &Field) -> Result<Self> {
        if !self.is_upper_unitriangular() {
            return Err(Error::NotInGroup {
                which: "U",
                reason: "matrix is not upper unitriangular".into(),
            });
        }
        let n = self.size;
        let mut inv = Self::identity(n);
        for c in 0..n {
            for r in (0..c).rev() {
                // (M·X)_{r,c} = X_{r,c} + Σ_{r<k≤c} M_{r,k} X_{k,c} = 0
                let mut acc = FieldElement::ZERO;
                for k in r + 1..=c {
                    acc = f.add(acc, f.mul(self.get(r, k), inv.get(k, c)));
                }
                inv.set(r, c, f.neg(acc));
            }
        }
        Ok(inv)
    }

    /// Number of nonzero entries.
    pub fn weight(&self) -> usize {
        self.entries.iter().filter(|a| !a.is_zero()).count()
    }

    /// At most one nonzero entry in every row and every column.
    pub fn is_arc_form(&self) -> bool {
        let n = self.size;
        (0..n).all(|r| (0..n).filter(|&c| !self.get(r, c).is_zero()).count() <= 1)
            && (0..n).all(|c| (0..n).filter(|&r| !self.get(r, c).is_zero()).count() <= 1)
    }

    /// The nonzero entries as positional arcs.
    pub fn support_arcs(&self) -> Vec<PosArc> {
        let n = self.size;
        let mut out = Vec::new();
        for r in 0..n {
            for c in 0..n {
                let v = self.get(r, c);
                if !v.is_zero() {
                    out.push(PosArc::new(r + 1, c + 1, v));
                }
            }
        }
        out
    }

    pub fn membership(&self, which: MatrixGroup, f: &Field) -> bool {
        self.check_membership(which, f).is_ok()
    }

    /// Exact block-condition check, with the failing condition on error.
    pub fn check_membership(&self, which: MatrixGroup, f: &Field) -> Result<()> {
        let fail = |reason: &str| {
            Err(Error::NotInGroup {
                which: which.name(),
                reason: reason.to_string(),
            })
        };
        match which {
            MatrixGroup::Unipotent => {
                if !self.is_upper_unitriangular() {
                    return fail("not upper unitriangular");
                }
            }
            MatrixGroup::Nilpotent => {
                if !self.is_strictly_upper() {
                    return fail("not strictly upper triangular");
                }
            }
            MatrixGroup::UnipotentD => {
                if !self.size.is_multiple_of(2) {
                    return fail("odd size");
                }
                if !self.is_upper_unitriangular() {
                    return fail("not upper unitriangular");
                }
                let h = self.size / 2;
                let p = self.block(0, 0, h);
                let p_inv = p.inverse_unitriangular(f)?;
                if self.block(h, h, h) != p_inv.transpose().antidiagonal_conjugate() {
                    return fail("lower-right block is not J P^{-t} J");
                }
                let q = p_inv.mul(&self.block(0, h, h), f);
                if q.transpose().antidiagonal_conjugate() != q.neg(f) {
                    return fail("Q = P^{-1}·(upper-right block) violates J Q^t J = -Q");
                }
            }
            MatrixGroup::NilpotentD => {
                if !self.size.is_multiple_of(2) {
                    return fail("odd size");
                }
                if !self.is_strictly_upper() {
                    return fail("not strictly upper triangular");
                }
                let h = self.size / 2;
                let r = self.block(0, 0, h);
                if self.block(h, h, h) != r.transpose().antidiagonal_conjugate().neg(f) {
                    return fail("lower-right block is not -J R^t J");
                }
                let q = self.block(0, h, h);
                if q.transpose().antidiagonal_conjugate() != q.neg(f) {
                    return fail("upper-right block violates J Q^t J = -Q");
                }
            }
        }
        Ok(())
    }

    /// Reads an arc-form matrix back as a partition of the given family.
    pub fn to_partition(&self, family: Family, f: &Field) -> Result<LabelledPartition> {
        let n = match family {
            Family::B if self.size % 2 == 1 => self.size / 2,
            Family::D | Family::C if self.size.is_multiple_of(2) => self.size / 2,
            _ => {
                return Err(Error::ContextMismatch(format!(
                    "size {} does not fit family {family}",
                    self.size
                )))
            }
        };
        if !self.is_arc_form() {
            return Err(Error::Malformed(
                "matrix has a row or column with two nonzero entries".into(),
            ));
        }
        let arcs: Vec<LabelledArc> = self
            .support_arcs()
            .into_iter()
            .map(|a| LabelledArc::new(family.signed(n, a.row()), family.signed(n, a.col()), a.label))
            .collect();
        LabelledPartition::validate(family, n, &arcs, f).map_err(Error::InvalidPartition)
    }
}

impl fmt::Display for UtMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.size {
            let row: Vec<String> = (0..self.size)
                .map(|c| self.get(r, c).to_string())
                .collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// `y_λ = Σ a·e_{i,j}` over the full arc set.
pub fn y_of_partition(lambda: &LabelledPartition) -> UtMatrix {
    let mut m = UtMatrix::zero(lambda.size());
    for a in lambda.arcs() {
        m.set(a.row() - 1, a.col() - 1, a.label);
    }
    m
}

/// The superclass representative `x_λ = [[P, PQ], [0, J P^{-t} J]]` with
/// `P = I + R`, where `y_λ = [[R, Q], [0, −J R^t J]]`.
pub fn x_of_partition(lambda: &LabelledPartition, f: &Field) -> Result<UtMatrix> {
    if lambda.family() == Family::B {
        return Err(Error::UnsupportedFamily {
            family: Family::B,
            what: "superclass representatives",
        });
    }
    let y = y_of_partition(lambda);
    Ok(partner_of_nilpotent(&y, f))
}

fn partner_of_nilpotent(y: &UtMatrix, f: &Field) -> UtMatrix {
    let h = y.size() / 2;
    let p = y.block(0, 0, h).add(&UtMatrix::identity(h), f);
    let q = y.block(0, h, h);
    let p_inv = p
        .inverse_unitriangular(f)
        .expect("I + strictly upper is unitriangular");
    UtMatrix::from_blocks(
        &p,
        &p.mul(&q, f),
        &p_inv.transpose().antidiagonal_conjugate(),
    )
}

/// The partner `y = [[P − I, Q], [0, −J (P − I)^t J]]` of `x ∈ U^D`,
/// with `Q = P^{-1}·(upper-right block of x)`.
pub fn x_to_y(x: &UtMatrix, f: &Field) -> Result<UtMatrix> {
    x.check_membership(MatrixGroup::UnipotentD, f)?;
    let h = x.size() / 2;
    let p = x.block(0, 0, h);
    let r = p.sub(&UtMatrix::identity(h), f);
    let q = p.inverse_unitriangular(f)?.mul(&x.block(0, h, h), f);
    Ok(UtMatrix::from_blocks(
        &r,
        &q,
        &r.transpose().antidiagonal_conjugate().neg(f),
    ))
}

/// Inverse of [`x_to_y`] on all of `u^D`.
pub fn y_to_x(y: &UtMatrix, f: &Field) -> Result<UtMatrix> {
    y.check_membership(MatrixGroup::NilpotentD, f)?;
    Ok(partner_of_nilpotent(y, f))
}

/// Canonical representative of the two-sided orbit `U·M·U` of a strictly
/// upper triangular `M`: the unique matrix in the orbit with at most one
/// nonzero entry per row and column.
///
/// Columns are scanned left to right. In each column the lowest nonzero
/// entry in a row without an earlier pivot becomes the pivot; column
/// operations clear the rest of its row and row operations clear the rest
/// of its column. Pivots are never rescaled.
pub fn verge_reduce(m: &UtMatrix, f: &Field) -> Result<UtMatrix> {
    if !m.is_strictly_upper() {
        return Err(Error::NotInGroup {
            which: "u",
            reason: "canonical form needs a strictly upper triangular matrix".into(),
        });
    }
    let n = m.size();
    let mut a = m.clone();
    let mut pivot_row = vec![false; n];
    for j in 0..n {
        let Some(i) = (0..j).rev().find(|&i| !pivot_row[i] && !a.get(i, j).is_zero()) else {
            continue;
        };
        pivot_row[i] = true;
        let neg_inv = f.neg(f.inv(a.get(i, j)).expect("pivot is nonzero"));
        // col j' += c·col j, j < j'
        for j2 in j + 1..n {
            let v = a.get(i, j2);
            if v.is_zero() {
                continue;
            }
            let c = f.mul(v, neg_inv);
            for r in 0..=i {
                let x = a.get(r, j);
                if !x.is_zero() {
                    let nv = f.add(a.get(r, j2), f.mul(c, x));
                    a.set(r, j2, nv);
                }
            }
        }
        // row i' += c·row i, i' < i; row i is now supported on column j alone
        for i2 in 0..i {
            let v = a.get(i2, j);
            if !v.is_zero() {
                a.set(i2, j, FieldElement::ZERO);
            }
        }
    }
    debug_assert!(a.is_arc_form());
    Ok(a)
}

/// The superclass label of `x ∈ U^D`: the partition read off the canonical
/// form of its partner `y`.
pub fn classify(x: &UtMatrix, f: &Field) -> Result<LabelledPartition> {
    let y = x_to_y(x, f)?;
    let canon = verge_reduce(&y, f)?;
    canon.to_partition(Family::D, f).map_err(|e| {
        Error::Indexing(format!(
            "canonical form of the partner is not a D-partition ({e}):\n{canon}"
        ))
    })
}
