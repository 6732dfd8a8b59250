//! Labelled set partitions of `[±n]` (families D, C and B).
//!
//! Indices are signed integers ordered `1 ≺ 2 ≺ … ≺ n ≺ −n ≺ … ≺ −1`
//! (family B inserts `0` between `n` and `−n`). Internally an arc is stored
//! by the 1-based *positions* of its endpoints in that order, which are also
//! the row and column of its entry in the associated matrix.

mod enumerate;
mod ops;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffield::{Field, FieldElement};

pub use enumerate::{count, enumerate, enumerate_within, extensions, superset_closure};
pub use ops::{Restriction, Subset};

/// Largest supported matrix size; row/column masks are `u64`.
pub const MAX_SIZE: usize = 63;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    D,
    C,
    B,
}

impl Family {
    /// Number of points of the ground set, i.e. the matrix size.
    pub fn size(self, n: usize) -> usize {
        match self {
            Family::D | Family::C => 2 * n,
            Family::B => 2 * n + 1,
        }
    }

    /// 1-based position of a signed index, or `None` when out of range.
    pub fn pos(self, n: usize, s: i32) -> Option<usize> {
        let n_i = n as i32;
        match s {
            0 if self == Family::B => Some(n + 1),
            0 => None,
            s if s > 0 && s <= n_i => Some(s as usize),
            s if s < 0 && -s <= n_i => Some(self.size(n) + 1 - (-s) as usize),
            _ => None,
        }
    }

    /// Inverse of [`Family::pos`].
    pub fn signed(self, n: usize, pos: usize) -> i32 {
        let size = self.size(n);
        debug_assert!((1..=size).contains(&pos));
        if pos <= n {
            pos as i32
        } else if self == Family::B && pos == n + 1 {
            0
        } else {
            -((size + 1 - pos) as i32)
        }
    }

    /// Whether arcs `i ⌒ −i` are allowed.
    pub fn allows_antipodal(self) -> bool {
        self == Family::C
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::D => "D",
            Family::C => "C",
            Family::B => "B",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "D" | "d" => Ok(Family::D),
            "C" | "c" => Ok(Family::C),
            "B" | "b" => Ok(Family::B),
            other => Err(Error::Malformed(format!("unknown family {other:?}"))),
        }
    }
}

/// An arc `i ⌒_a j` in signed notation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabelledArc {
    pub i: i32,
    pub j: i32,
    pub label: FieldElement,
}

impl LabelledArc {
    pub fn new(i: i32, j: i32, label: FieldElement) -> Self {
        Self { i, j, label }
    }
}

impl fmt::Display for LabelledArc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}⌒[{}]{}", self.i, self.label, self.j)
    }
}

/// An arc by matrix position: entry `label` at `(row, col)`, `row < col`,
/// both 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PosArc {
    pub row: u16,
    pub col: u16,
    pub label: FieldElement,
}

impl PosArc {
    pub fn new(row: usize, col: usize, label: FieldElement) -> Self {
        Self {
            row: row as u16,
            col: col as u16,
            label,
        }
    }

    pub fn row(self) -> usize {
        self.row as usize
    }

    pub fn col(self) -> usize {
        self.col as usize
    }

    /// The mirror arc `−j ⌒_{−a} −i` in a ground set of `size` points.
    pub fn mirror(self, size: usize, field: &Field) -> PosArc {
        PosArc::new(
            size + 1 - self.col(),
            size + 1 - self.row(),
            field.neg(self.label),
        )
    }

    /// `i ⌒ −i`, its own mirror partner.
    pub fn is_antipodal(self, size: usize) -> bool {
        self.row() + self.col() == size + 1
    }

    /// Whether this arc is the canonical (λ⁺) member of its mirror pair.
    pub fn is_plus(self, size: usize) -> bool {
        self.row() + self.col() <= size + 1
    }

    /// `i ≺ k ≺ l ≺ j` for `self = (i, j)` and `inner = (k, l)`.
    pub fn strictly_nests(self, inner: PosArc) -> bool {
        self.row < inner.row && inner.col < self.col
    }
}

/// A condition violated by a candidate arc set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    IndexOutOfRange(LabelledArc),
    NotIncreasing(LabelledArc),
    ZeroLabel(LabelledArc),
    LabelNotInField(LabelledArc),
    AntipodalArc(LabelledArc),
    MissingMirror {
        arc: LabelledArc,
        expected: LabelledArc,
    },
    SharedLeftEndpoint(LabelledArc, LabelledArc),
    SharedRightEndpoint(LabelledArc, LabelledArc),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::IndexOutOfRange(a) => write!(f, "{a}: index out of range"),
            Violation::NotIncreasing(a) => write!(f, "{a}: left endpoint does not precede right"),
            Violation::ZeroLabel(a) => write!(f, "{a}: label is zero"),
            Violation::LabelNotInField(a) => write!(f, "{a}: label is not a field element"),
            Violation::AntipodalArc(a) => write!(f, "{a}: arcs i⌒−i are not allowed in this family"),
            Violation::MissingMirror { arc, expected } => {
                write!(f, "{arc}: mirror arc {expected} is missing")
            }
            Violation::SharedLeftEndpoint(a, b) => {
                write!(f, "{a} and {b} share a left endpoint")
            }
            Violation::SharedRightEndpoint(a, b) => {
                write!(f, "{a} and {b} share a right endpoint")
            }
        }
    }
}

/// A valid labelled partition. The full arc set is stored (both mirror
/// halves), sorted by position.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabelledPartition {
    family: Family,
    n: u16,
    arcs: Vec<PosArc>,
}

impl LabelledPartition {
    pub fn empty(family: Family, n: usize) -> Self {
        Self {
            family,
            n: n as u16,
            arcs: Vec::new(),
        }
    }

    /// Checks a full arc set (both halves) and returns the canonical
    /// partition, or every violated condition.
    pub fn validate(
        family: Family,
        n: usize,
        arcs: &[LabelledArc],
        field: &Field,
    ) -> std::result::Result<Self, Vec<Violation>> {
        let size = family.size(n);
        let mut violations = Vec::new();
        if size > MAX_SIZE {
            violations.extend(arcs.iter().map(|&a| Violation::IndexOutOfRange(a)));
            return Err(violations);
        }
        let mut set = BTreeSet::new();
        for &arc in arcs {
            let (Some(r), Some(c)) = (family.pos(n, arc.i), family.pos(n, arc.j)) else {
                violations.push(Violation::IndexOutOfRange(arc));
                continue;
            };
            if r >= c {
                violations.push(Violation::NotIncreasing(arc));
                continue;
            }
            if arc.label.is_zero() {
                violations.push(Violation::ZeroLabel(arc));
                continue;
            }
            if field.check(arc.label).is_err() {
                violations.push(Violation::LabelNotInField(arc));
                continue;
            }
            let pa = PosArc::new(r, c, arc.label);
            if pa.is_antipodal(size) && !family.allows_antipodal() {
                violations.push(Violation::AntipodalArc(arc));
                continue;
            }
            set.insert(pa);
        }
        let candidate = Self {
            family,
            n: n as u16,
            arcs: set.into_iter().collect(),
        };
        for &a in &candidate.arcs {
            if a.is_antipodal(size) {
                continue;
            }
            let m = a.mirror(size, field);
            if candidate.arcs.binary_search(&m).is_err() {
                violations.push(Violation::MissingMirror {
                    arc: candidate.to_signed(a),
                    expected: candidate.to_signed(m),
                });
            }
        }
        for (x, &a) in candidate.arcs.iter().enumerate() {
            for &b in &candidate.arcs[x + 1..] {
                if a.row == b.row {
                    violations.push(Violation::SharedLeftEndpoint(
                        candidate.to_signed(a),
                        candidate.to_signed(b),
                    ));
                }
                if a.col == b.col {
                    violations.push(Violation::SharedRightEndpoint(
                        candidate.to_signed(a),
                        candidate.to_signed(b),
                    ));
                }
            }
        }
        if violations.is_empty() {
            Ok(candidate)
        } else {
            Err(violations)
        }
    }

    /// Builds a partition from its λ⁺ half; mirrors are materialized here.
    pub fn from_plus(
        family: Family,
        n: usize,
        plus: &[LabelledArc],
        field: &Field,
    ) -> Result<Self> {
        let mut all = plus.to_vec();
        for a in plus {
            if a.i == -a.j {
                continue;
            }
            all.push(LabelledArc::new(-a.j, -a.i, field.neg(a.label)));
        }
        Self::validate(family, n, &all, field).map_err(Error::InvalidPartition)
    }

    /// Convenience for literals: `(i, j, label_code)` triples.
    pub fn from_plus_triples(
        family: Family,
        n: usize,
        plus: &[(i32, i32, u32)],
        field: &Field,
    ) -> Result<Self> {
        let arcs = plus
            .iter()
            .map(|&(i, j, a)| Ok(LabelledArc::new(i, j, field.element(a as u64)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_plus(family, n, &arcs, field)
    }

    /// Assembles a partition from positional arcs already known to be valid.
    pub(crate) fn from_pos_unchecked(family: Family, n: usize, mut arcs: Vec<PosArc>) -> Self {
        arcs.sort_unstable();
        arcs.dedup();
        Self {
            family,
            n: n as u16,
            arcs,
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn size(&self) -> usize {
        self.family.size(self.n())
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    /// The full arc set, sorted by position.
    pub fn arcs(&self) -> &[PosArc] {
        &self.arcs
    }

    /// λ⁺: one representative per mirror pair.
    pub fn plus_arcs(&self) -> impl Iterator<Item = PosArc> + '_ {
        let size = self.size();
        self.arcs.iter().copied().filter(move |a| a.is_plus(size))
    }

    /// Number of mirror pairs (arcs of λ⁺).
    pub fn num_pairs(&self) -> usize {
        self.plus_arcs().count()
    }

    pub fn to_signed(&self, a: PosArc) -> LabelledArc {
        LabelledArc::new(
            self.family.signed(self.n(), a.row()),
            self.family.signed(self.n(), a.col()),
            a.label,
        )
    }

    pub fn signed_arcs(&self) -> Vec<LabelledArc> {
        self.arcs.iter().map(|&a| self.to_signed(a)).collect()
    }

    pub fn signed_plus(&self) -> Vec<LabelledArc> {
        self.plus_arcs().map(|a| self.to_signed(a)).collect()
    }

    pub fn contains_arc(&self, a: PosArc) -> bool {
        self.arcs.binary_search(&a).is_ok()
    }

    /// `A(self) ⊆ A(other)`, the order defining the P-basis.
    pub fn is_below(&self, other: &Self) -> bool {
        self.family == other.family
            && self.n == other.n
            && self.arcs.iter().all(|&a| other.contains_arc(a))
    }

    /// Applies `i ⌒_a j ↦ −j ⌒_{−a} −i` to every arc.
    pub fn mirror_image(&self, field: &Field) -> Vec<PosArc> {
        let size = self.size();
        let mut out: Vec<PosArc> = self
            .arcs
            .iter()
            .map(|&a| {
                if a.is_antipodal(size) {
                    a
                } else {
                    a.mirror(size, field)
                }
            })
            .collect();
        out.sort_unstable();
        out
    }
}

impl fmt::Display for LabelledPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{{", self.family, self.n)?;
        for (k, a) in self.signed_plus().iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({},{},{})", a.i, a.j, a.label)?;
        }
        write!(f, "}}")
    }
}
