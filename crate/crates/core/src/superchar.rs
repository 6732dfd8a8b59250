//! Supercharacter values, degrees and character tables for type D.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffield::{CycValue, Field};
use crate::oracle::ClassFunction;
use crate::partitions::{enumerate_within, Family, LabelledPartition, PosArc};

/// How the exponent `N` counts arcs of `μ` lying strictly under arcs of `λ⁺`.
///
/// The readings agree for `n ≤ 3`. From `n = 4` on, an arc of `λ⁺` crossing
/// the middle can cover a `μ⁺` arc together with its mirror; only
/// [`NestingCount::AllArcs`] then gives an orthogonal table.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NestingCount {
    /// Every nested arc of `μ`, from either half, once.
    #[default]
    AllArcs,
    /// Each nested `μ⁺` arc once, however many `λ⁺` arcs cover it.
    PlusArcs,
    /// Every (covering `λ⁺` arc, nested `μ⁺` arc) pair.
    PlusPairs,
}

impl std::str::FromStr for NestingCount {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all-arcs" => Ok(NestingCount::AllArcs),
            "plus-arcs" => Ok(NestingCount::PlusArcs),
            "plus-pairs" => Ok(NestingCount::PlusPairs),
            other => Err(Error::Malformed(format!("unknown nesting count {other:?}"))),
        }
    }
}

fn require_d(lambda: &LabelledPartition) -> Result<()> {
    if lambda.family() != Family::D {
        return Err(Error::UnsupportedFamily {
            family: lambda.family(),
            what: "supercharacters",
        });
    }
    Ok(())
}

/// `log_q χ^λ(1)`: each arc `i ⌒ j` of `λ⁺` contributes `pos(j) − pos(i) − 1`.
pub fn degree_exponent(lambda: &LabelledPartition) -> u32 {
    lambda
        .plus_arcs()
        .map(|a| (a.col() - a.row() - 1) as u32)
        .sum()
}

pub fn degree(lambda: &LabelledPartition, field: &Field) -> CycValue {
    CycValue::power_of(field.p(), field.q(), degree_exponent(lambda) as i64)
}

/// The single-pair partitions `λ_ij`, one per arc of `λ⁺`.
pub fn arc_pairs(lambda: &LabelledPartition, field: &Field) -> Vec<LabelledPartition> {
    lambda
        .plus_arcs()
        .map(|a| {
            let arcs = if a.is_antipodal(lambda.size()) {
                vec![a]
            } else {
                vec![a, a.mirror(lambda.size(), field)]
            };
            LabelledPartition::from_pos_unchecked(lambda.family(), lambda.n(), arcs)
        })
        .collect()
}

fn kills(outer: PosArc, arc: PosArc) -> bool {
    (arc.row() == outer.row() && outer.row() < arc.col() && arc.col() < outer.col())
        || (arc.col() == outer.col() && outer.row() < arc.row() && arc.row() < outer.col())
}

/// `χ^λ(x_μ)`.
pub fn chi_value(
    lambda: &LabelledPartition,
    mu: &LabelledPartition,
    field: &Field,
    nesting: NestingCount,
) -> Result<CycValue> {
    require_d(lambda)?;
    if lambda.family() != mu.family() || lambda.n() != mu.n() {
        return Err(Error::ContextMismatch(format!(
            "χ^{lambda} evaluated at x_{mu}"
        )));
    }
    let p = field.p();
    for outer in lambda.plus_arcs() {
        if mu.arcs().iter().any(|&b| kills(outer, b)) {
            return Ok(CycValue::zero(p));
        }
    }
    let nested = |inner: PosArc| lambda.plus_arcs().filter(move |&o| o.strictly_nests(inner));
    let n_exp: usize = match nesting {
        NestingCount::AllArcs => mu.arcs().iter().filter(|&&b| nested(b).next().is_some()).count(),
        NestingCount::PlusArcs => mu.plus_arcs().filter(|&b| nested(b).next().is_some()).count(),
        NestingCount::PlusPairs => mu.plus_arcs().map(|b| nested(b).count()).sum(),
    };
    let mut value = CycValue::power_of(
        p,
        field.q(),
        degree_exponent(lambda) as i64 - n_exp as i64,
    );
    for a in lambda.plus_arcs() {
        if let Some(b) = mu
            .plus_arcs()
            .find(|b| b.row() == a.row() && b.col() == a.col())
        {
            value = &value * &field.theta(field.mul(a.label, b.label));
        }
    }
    Ok(value)
}

/// `χ^λ` as a function on superclass labels.
pub fn supercharacter(
    lambda: &LabelledPartition,
    labels: &[LabelledPartition],
    field: &Field,
    nesting: NestingCount,
) -> Result<ClassFunction> {
    let mut err = None;
    let f = ClassFunction::from_fn(lambda.n(), field, labels.iter().cloned(), |mu| {
        chi_value(lambda, mu, field, nesting).unwrap_or_else(|e| {
            err.get_or_insert(e);
            CycValue::zero(field.p())
        })
    });
    match err {
        Some(e) => Err(e),
        None => Ok(f),
    }
}

#[derive(Clone, Debug)]
pub struct CharTable {
    pub n: usize,
    pub q: u32,
    pub labels: Vec<LabelledPartition>,
    /// Rows are supercharacters, columns superclasses, both in `labels` order.
    pub values: Vec<Vec<CycValue>>,
    pub class_sizes: Option<Vec<u64>>,
}

pub fn char_table(
    family: Family,
    n: usize,
    field: &Field,
    nesting: NestingCount,
    budget: u64,
) -> Result<CharTable> {
    if family != Family::D {
        return Err(Error::UnsupportedFamily {
            family,
            what: "character tables",
        });
    }
    let labels = enumerate_within(family, n, field, budget)?;
    let values = labels
        .iter()
        .map(|l| {
            labels
                .iter()
                .map(|m| chi_value(l, m, field, nesting))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CharTable {
        n,
        q: field.q(),
        labels,
        values,
        class_sizes: None,
    })
}

impl CharTable {
    /// Attaches class sizes from a brute-force census of the same group.
    pub fn with_class_sizes(mut self, group: &crate::oracle::GroupTable) -> Result<Self> {
        let sizes = self
            .labels
            .iter()
            .map(|l| {
                group.class_size(l).ok_or_else(|| {
                    Error::ContextMismatch(format!("the census has no class {l}"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        self.class_sizes = Some(sizes);
        Ok(self)
    }
}

/// Both sides of `χ^λ(1)·χ^μ(1) = q^{2mα}·χ^{λ⊔μ↑n}(1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeProduct {
    pub lhs: CycValue,
    pub rhs: CycValue,
    /// Arcs of `λ⁺` ending at a negative index.
    pub alpha: usize,
}

pub fn degree_product_check(
    lambda: &LabelledPartition,
    mu: &LabelledPartition,
    field: &Field,
) -> Result<DegreeProduct> {
    require_d(lambda)?;
    require_d(mu)?;
    let n = lambda.n();
    let m = mu.n();
    let alpha = lambda.plus_arcs().filter(|a| a.col() > n).count();
    let lhs = &degree(lambda, field) * &degree(mu, field);
    let joined = lambda.concat(mu)?;
    let rhs = &CycValue::power_of(field.p(), field.q(), (2 * m * alpha) as i64) * &degree(&joined, field);
    Ok(DegreeProduct { lhs, rhs, alpha })
}
