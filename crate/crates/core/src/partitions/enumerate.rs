use super::{Family, LabelledPartition, PosArc, MAX_SIZE};
use crate::error::{Error, Result};
use crate::ffield::Field;

/// Backtracking over λ⁺ candidate positions with used-row / used-column masks.
struct Search<'a> {
    family: Family,
    n: usize,
    size: usize,
    field: &'a Field,
    candidates: Vec<(usize, usize)>,
    rows: u64,
    cols: u64,
    chosen: Vec<PosArc>,
}

impl<'a> Search<'a> {
    fn new(family: Family, n: usize, field: &'a Field, base: &[PosArc]) -> Self {
        Self::filtered(family, n, field, base, |_, _| true)
    }

    fn filtered(
        family: Family,
        n: usize,
        field: &'a Field,
        base: &[PosArc],
        allow: impl Fn(usize, usize) -> bool,
    ) -> Self {
        let size = family.size(n);
        assert!(size <= MAX_SIZE, "ground set of {size} points is too large");
        let mut rows = 0u64;
        let mut cols = 0u64;
        for a in base {
            rows |= 1 << a.row;
            cols |= 1 << a.col;
        }
        let mut candidates = Vec::new();
        for r in 1..=size {
            for c in r + 1..=size {
                let s = r + c;
                let plus = s < size + 1 || (s == size + 1 && family.allows_antipodal());
                if plus && allow(r, c) {
                    candidates.push((r, c));
                }
            }
        }
        Self {
            family,
            n,
            size,
            field,
            candidates,
            rows,
            cols,
            chosen: base.to_vec(),
        }
    }

    /// Masks for placing the pair at `(r, c)`, or `None` if it collides.
    fn footprint(&self, r: usize, c: usize) -> Option<(u64, u64)> {
        let (mr, mc) = (self.size + 1 - c, self.size + 1 - r);
        let rows = (1u64 << r) | (1u64 << mr);
        let cols = (1u64 << c) | (1u64 << mc);
        (self.rows & rows == 0 && self.cols & cols == 0).then_some((rows, cols))
    }

    fn collect(&mut self, idx: usize, out: &mut Vec<LabelledPartition>) {
        if idx == self.candidates.len() {
            out.push(LabelledPartition::from_pos_unchecked(
                self.family,
                self.n,
                self.chosen.clone(),
            ));
            return;
        }
        self.collect(idx + 1, out);
        let (r, c) = self.candidates[idx];
        let Some((rows, cols)) = self.footprint(r, c) else {
            return;
        };
        self.rows |= rows;
        self.cols |= cols;
        for label in self.field.nonzero() {
            let arc = PosArc::new(r, c, label);
            let pushed = if arc.is_antipodal(self.size) {
                self.chosen.push(arc);
                1
            } else {
                self.chosen.push(arc);
                self.chosen.push(arc.mirror(self.size, self.field));
                2
            };
            self.collect(idx + 1, out);
            self.chosen.truncate(self.chosen.len() - pushed);
        }
        self.rows &= !rows;
        self.cols &= !cols;
    }

    fn count(&mut self, idx: usize, labels: u128) -> u128 {
        if idx == self.candidates.len() {
            return 1;
        }
        let mut total = self.count(idx + 1, labels);
        let (r, c) = self.candidates[idx];
        if let Some((rows, cols)) = self.footprint(r, c) {
            self.rows |= rows;
            self.cols |= cols;
            total += labels * self.count(idx + 1, labels);
            self.rows &= !rows;
            self.cols &= !cols;
        }
        total
    }
}

/// Every valid partition of the family on `[±n]`, in lexicographic order of
/// the canonical arc lists.
pub fn enumerate(family: Family, n: usize, field: &Field) -> Vec<LabelledPartition> {
    let mut out = Vec::new();
    Search::new(family, n, field, &[]).collect(0, &mut out);
    out.sort_unstable();
    out
}

/// [`enumerate`], refusing when the result would exceed `budget` partitions.
pub fn enumerate_within(
    family: Family,
    n: usize,
    field: &Field,
    budget: u64,
) -> Result<Vec<LabelledPartition>> {
    check_size(family, n)?;
    let required = count(family, n, field.q());
    if required > budget as u128 {
        return Err(Error::BudgetExceeded {
            what: format!("{family}_{}({}) partitions", family.size(n), field.q()),
            required,
            budget,
        });
    }
    Ok(enumerate(family, n, field))
}

/// Number of partitions, without materializing them. Only `q` matters.
pub fn count(family: Family, n: usize, q: u32) -> u128 {
    // The counter never reads labels, so any field will do here.
    let dummy = Field::prime(3).expect("3 is an odd prime");
    let mut s = Search::new(family, n, &dummy, &[]);
    s.count(0, (q - 1) as u128)
}

/// All valid `μ` with `A(λ) ⊆ A(μ)`, sorted.
pub fn superset_closure(lambda: &LabelledPartition, field: &Field) -> Vec<LabelledPartition> {
    let mut out = Vec::new();
    Search::new(lambda.family(), lambda.n(), field, lambda.arcs()).collect(0, &mut out);
    out.sort_unstable();
    out
}

/// All valid `μ ⊇ λ` whose extra arcs of `μ⁺` sit at positions `(row, col)`
/// accepted by `allow` (1-based positions, `row < col`), sorted.
pub fn extensions(
    lambda: &LabelledPartition,
    field: &Field,
    allow: impl Fn(usize, usize) -> bool,
) -> Vec<LabelledPartition> {
    let mut out = Vec::new();
    Search::filtered(lambda.family(), lambda.n(), field, lambda.arcs(), allow).collect(0, &mut out);
    out.sort_unstable();
    out
}

fn check_size(family: Family, n: usize) -> Result<()> {
    if family.size(n) > MAX_SIZE {
        return Err(Error::OutOfRange(format!(
            "n = {n} exceeds the supported ground-set size {MAX_SIZE}"
        )));
    }
    Ok(())
}
