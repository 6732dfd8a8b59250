//! JSON documents exchanged by the command-line tool.
//!
//! Field elements are written as their integer codes and rationals as
//! strings (`"-3/2"`), so every document is exact.

use std::str::FromStr;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffield::{CycValue, Field};
use crate::hopf::{Basis, ScElement, TensorElement};
use crate::matrixrep::{self, UtMatrix};
use crate::oracle::GroupTable;
use crate::partitions::{Family, LabelledArc, LabelledPartition};
use crate::superchar::{CharTable, NestingCount};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionDoc {
    pub family: Family,
    pub n: usize,
    pub q: u32,
    /// Arcs of `λ⁺` as `[i, j, label]`.
    pub plus: Vec<(i32, i32, u32)>,
}

impl PartitionDoc {
    pub fn from_partition(lambda: &LabelledPartition, q: u32) -> Self {
        Self {
            family: lambda.family(),
            n: lambda.n(),
            q,
            plus: lambda
                .signed_plus()
                .iter()
                .map(|a| (a.i, a.j, a.label.code()))
                .collect(),
        }
    }

    pub fn to_partition(&self, field: &Field) -> Result<LabelledPartition> {
        check_q(self.q, field)?;
        let arcs = self
            .plus
            .iter()
            .map(|&(i, j, a)| Ok(LabelledArc::new(i, j, field.element(a as u64)?)))
            .collect::<Result<Vec<_>>>()?;
        LabelledPartition::from_plus(self.family, self.n, &arcs, field)
    }
}

fn check_q(q: u32, field: &Field) -> Result<()> {
    if q != field.q() {
        return Err(Error::ContextMismatch(format!(
            "document is over F_{q}, the field in use is F_{}",
            field.q()
        )));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDoc {
    pub size: usize,
    pub q: u32,
    /// Row-major element codes.
    pub entries: Vec<u32>,
}

impl MatrixDoc {
    pub fn from_matrix(m: &UtMatrix, q: u32) -> Self {
        Self {
            size: m.size(),
            q,
            entries: m.entries().iter().map(|e| e.code()).collect(),
        }
    }

    pub fn to_matrix(&self, field: &Field) -> Result<UtMatrix> {
        check_q(self.q, field)?;
        let entries = self
            .entries
            .iter()
            .map(|&c| field.element(c as u64))
            .collect::<Result<Vec<_>>>()?;
        UtMatrix::from_entries(self.size, entries)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDoc {
    pub coef: String,
    pub label: PartitionDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScElementDoc {
    pub basis: Basis,
    pub q: u32,
    /// Needed only when `terms` is empty; otherwise read off the labels.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<Family>,
    pub terms: Vec<TermDoc>,
}

fn parse_coef(s: &str) -> Result<BigRational> {
    BigRational::from_str(s.trim()).map_err(|_| Error::Malformed(format!("bad coefficient {s:?}")))
}

impl ScElementDoc {
    pub fn from_element(x: &ScElement) -> Self {
        Self {
            basis: x.basis(),
            q: x.q(),
            family: Some(x.family()),
            terms: x
                .terms()
                .iter()
                .map(|(l, c)| TermDoc {
                    coef: c.to_string(),
                    label: PartitionDoc::from_partition(l, x.q()),
                })
                .collect(),
        }
    }

    pub fn to_element(&self, field: &Field) -> Result<ScElement> {
        check_q(self.q, field)?;
        let family = match (self.family, self.terms.first()) {
            (Some(f), _) => f,
            (None, Some(t)) => t.label.family,
            (None, None) => {
                return Err(Error::Malformed(
                    "an element without terms must name its family".into(),
                ))
            }
        };
        let mut x = ScElement::zero(self.basis, family, self.q);
        for t in &self.terms {
            if t.label.family != family {
                return Err(Error::ContextMismatch(format!(
                    "term in family {} inside a family {family} element",
                    t.label.family
                )));
            }
            x.add_term(t.label.to_partition(field)?, parse_coef(&t.coef)?);
        }
        Ok(x)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorTermDoc {
    pub coef: String,
    pub labels: Vec<PartitionDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorDoc {
    pub basis: Basis,
    pub q: u32,
    pub terms: Vec<TensorTermDoc>,
}

impl TensorDoc {
    pub fn from_tensor(t: &TensorElement, q: u32) -> Self {
        Self {
            basis: t.basis(),
            q,
            terms: t
                .terms()
                .iter()
                .map(|(k, c)| TensorTermDoc {
                    coef: c.to_string(),
                    labels: k.iter().map(|l| PartitionDoc::from_partition(l, q)).collect(),
                })
                .collect(),
        }
    }
}

/// `scale · Σ coeffs[k] ζ_p^k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycDoc {
    pub scale: String,
    pub coeffs: Vec<String>,
}

impl CycDoc {
    pub fn from_value(v: &CycValue) -> Self {
        let (scale, coeffs) = v.integral_form();
        Self {
            scale: scale.to_string(),
            coeffs: coeffs.iter().map(|c| c.to_string()).collect(),
        }
    }

    pub fn to_value(&self, p: u32) -> Result<CycValue> {
        if self.coeffs.len() != p as usize - 1 {
            return Err(Error::Malformed(format!(
                "expected {} cyclotomic coefficients, got {}",
                p - 1,
                self.coeffs.len()
            )));
        }
        let scale = parse_coef(&self.scale)?;
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| parse_coef(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(CycValue::from_coeffs(p, coeffs).scale(&scale))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharTableDoc {
    pub family: Family,
    pub n: usize,
    pub q: u32,
    pub p: u32,
    pub nesting: NestingCount,
    pub labels: Vec<PartitionDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class_sizes: Option<Vec<u64>>,
    /// Rows are supercharacters, columns superclasses.
    pub values: Vec<Vec<CycDoc>>,
}

impl CharTableDoc {
    pub fn from_table(t: &CharTable, field: &Field, nesting: NestingCount) -> Self {
        Self {
            family: Family::D,
            n: t.n,
            q: t.q,
            p: field.p(),
            nesting,
            labels: t.labels.iter().map(|l| PartitionDoc::from_partition(l, t.q)).collect(),
            class_sizes: t.class_sizes.clone(),
            values: t
                .values
                .iter()
                .map(|row| row.iter().map(CycDoc::from_value).collect())
                .collect(),
        }
    }
}

/// CSV: a header of column labels, then one row per supercharacter.
pub fn char_table_csv(t: &CharTable) -> String {
    let quote = |s: String| format!("\"{}\"", s.replace('"', "\"\""));
    let mut out = String::new();
    let header: Vec<String> = std::iter::once("chi".to_string())
        .chain(t.labels.iter().map(|l| quote(l.to_string())))
        .collect();
    out.push_str(&header.join(","));
    out.push('\n');
    for (l, row) in t.labels.iter().zip(&t.values) {
        let cells: Vec<String> = std::iter::once(quote(l.to_string()))
            .chain(row.iter().map(|v| quote(v.to_string())))
            .collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassDoc {
    pub label: PartitionDoc,
    pub size: u64,
    pub representative: MatrixDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusDoc {
    pub family: Family,
    pub n: usize,
    pub q: u32,
    pub order: u64,
    pub classes: Vec<ClassDoc>,
}

impl CensusDoc {
    /// The representative is `x_λ`, which lies in its class by the census.
    pub fn from_table(t: &GroupTable) -> Result<Self> {
        let q = t.field().q();
        let classes = t
            .classes()
            .iter()
            .map(|(l, info)| {
                Ok(ClassDoc {
                    label: PartitionDoc::from_partition(l, q),
                    size: info.size,
                    representative: MatrixDoc::from_matrix(&matrixrep::x_of_partition(l, t.field())?, q),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            family: Family::D,
            n: t.n(),
            q,
            order: t.order() as u64,
            classes,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::enumerate;

    #[test]
    fn partition_round_trip() {
        let f = Field::prime(3).unwrap();
        for family in [Family::D, Family::C, Family::B] {
            for l in enumerate(family, 2, &f) {
                let doc = PartitionDoc::from_partition(&l, 3);
                let text = serde_json::to_string(&doc).unwrap();
                let back: PartitionDoc = serde_json::from_str(&text).unwrap();
                assert_eq!(back.to_partition(&f).unwrap(), l);
            }
        }
    }

    #[test]
    fn partition_schema() {
        let f = Field::prime(3).unwrap();
        let doc: PartitionDoc = serde_json::from_str(
            r#"{"family":"D","n":4,"q":3,"plus":[[1,2,1],[2,3,2],[3,-4,1]]}"#,
        )
        .unwrap();
        let l = doc.to_partition(&f).unwrap();
        assert_eq!(l.num_pairs(), 3);
        let bad: PartitionDoc =
            serde_json::from_str(r#"{"family":"D","n":2,"q":3,"plus":[[1,2,1],[1,-2,1]]}"#).unwrap();
        assert!(matches!(bad.to_partition(&f), Err(Error::InvalidPartition(_))));
        assert!(doc.to_partition(&Field::prime(5).unwrap()).is_err());
    }

    #[test]
    fn element_and_value_round_trip() {
        let f = Field::prime(3).unwrap();
        let text = r#"{"basis":"kappa","q":3,"terms":[{"coef":"-3/2","label":{"family":"D","n":2,"q":3,"plus":[[1,2,1]]}}]}"#;
        let doc: ScElementDoc = serde_json::from_str(text).unwrap();
        let x = doc.to_element(&f).unwrap();
        assert_eq!(ScElementDoc::from_element(&x).to_element(&f).unwrap(), x);
        let v = &f.theta(f.element(1).unwrap()).scale(&BigRational::new(2.into(), 9.into()))
            + &CycValue::from_int(3, 1);
        assert_eq!(CycDoc::from_value(&v).to_value(3).unwrap(), v);
    }
}
