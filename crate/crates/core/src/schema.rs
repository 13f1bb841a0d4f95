//! Canonical JSON form of an [`AlgebraTable`].
//!
//! ```json
//! {"dim": 3, "kind": "lie", "labels": ["e","h","f"], "weights": [-1,0,1],
//!  "products": [{"i":0,"j":1,"out":[0]}, {"i":0,"j":2,"out":[1]}, {"i":1,"j":2,"out":[2]}]}
//! ```
//!
//! Only pairs `i <= j` are listed and absent pairs are zero. Coefficients are
//! implicit (GF(2)), indices 0-based. Tensor-product bases are ordered with
//! the first factor major: `x_s ⊗ a_t` sits at `s * dim(A) + t`.

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraKind, AlgebraTable, TableBuilder};
use crate::constructions as c;
use crate::deform::fifteen_dim;
use crate::error::{Error, Result};
use crate::gf2::{BitVector, Subspace};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraJson {
    pub dim: usize,
    pub kind: AlgebraKind,
    pub labels: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<usize>,
    pub products: Vec<ProductEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<serde_json::Value>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductEntry {
    pub i: usize,
    pub j: usize,
    pub out: Vec<usize>,
}

impl AlgebraJson {
    /// Exports the `i <= j` half of the table. Asymmetric tables lose their
    /// lower half; run [`AlgebraTable::validate`] first if that matters.
    pub fn from_table(t: &AlgebraTable) -> Self {
        let n = t.dim();
        let mut products = Vec::new();
        for i in 0..n {
            for j in i..n {
                let p = t.product(i, j);
                if !p.is_zero() {
                    products.push(ProductEntry {
                        i,
                        j,
                        out: p.ones().collect(),
                    });
                }
            }
        }
        Self {
            dim: n,
            kind: t.kind(),
            labels: t.labels().to_vec(),
            weights: t.weights().map(<[i64]>::to_vec),
            unit: t.unit(),
            products,
            provenance: t.provenance().cloned(),
        }
    }

    pub fn into_table(self) -> Result<AlgebraTable> {
        let n = self.dim;
        if self.labels.len() != n {
            return Err(Error::InvalidTable(format!(
                "labels has {} entries, dim is {n}",
                self.labels.len()
            )));
        }
        let mut b = TableBuilder::new(self.kind, self.labels);
        if let Some(w) = self.weights {
            if w.len() != n {
                return Err(Error::InvalidTable(format!("weights has {} entries, dim is {n}", w.len())));
            }
            b = b.weights(w);
        }
        if let Some(u) = self.unit {
            if u >= n {
                return Err(Error::InvalidTable(format!("unit index {u} out of range")));
            }
            b = b.unit(u);
        }
        let mut seen = std::collections::HashSet::new();
        for (k, e) in self.products.iter().enumerate() {
            if e.i > e.j {
                return Err(Error::InvalidTable(format!("products[{k}]: requires i <= j")));
            }
            if e.j >= n {
                return Err(Error::InvalidTable(format!("products[{k}]: index {} out of range", e.j)));
            }
            if let Some(&bad) = e.out.iter().find(|&&o| o >= n) {
                return Err(Error::InvalidTable(format!("products[{k}]: output index {bad} out of range")));
            }
            if !seen.insert((e.i, e.j)) {
                return Err(Error::InvalidTable(format!("products[{k}]: duplicate pair ({}, {})", e.i, e.j)));
            }
            b.set(e.i, e.j, BitVector::from_indices(n, e.out.iter().copied()));
        }
        let t = b.build();
        Ok(match self.provenance {
            Some(p) => t.with_provenance(p),
            None => t,
        })
    }
}

pub fn table_to_json(t: &AlgebraTable) -> serde_json::Value {
    serde_json::to_value(AlgebraJson::from_table(t)).expect("algebra json serializes")
}

pub fn table_from_str(s: &str) -> Result<AlgebraTable> {
    let parsed: AlgebraJson = serde_json::from_str(s).map_err(|e| Error::Json(e.to_string()))?;
    parsed.into_table()
}

pub fn table_to_string(t: &AlgebraTable) -> String {
    serde_json::to_string_pretty(&AlgebraJson::from_table(t)).expect("algebra json serializes")
}

/// A construction request, e.g. `{"construct": "divided_powers", "n": 2}` or
/// `{"construct": "current", "lie": {"construct": "sl2"}, "coeff": {...}}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "construct", rename_all = "snake_case", deny_unknown_fields)]
pub enum ConstructionSpec {
    GroundField,
    DividedPowers { n: u32 },
    Zassenhaus { n: u32 },
    ZassenhausDerived { n: u32 },
    Sl2,
    W12,
    Current {
        lie: Box<ConstructionSpec>,
        coeff: Box<ConstructionSpec>,
    },
    /// `𝔰 ⊗ O₁(n) + g ⊗ U + K∂`, `U` given by coordinate indices.
    Extension {
        n: u32,
        #[serde(default)]
        u: Vec<usize>,
    },
    FifteenDim { beta: u8, delta: u8 },
    Table { table: AlgebraJson },
}

fn bit(name: &str, v: u8) -> Result<bool> {
    match v {
        0 => Ok(false),
        1 => Ok(true),
        _ => Err(Error::InvalidParameter(format!("{name} must be 0 or 1, got {v}"))),
    }
}

impl ConstructionSpec {
    pub fn build(&self) -> Result<AlgebraTable> {
        match self {
            Self::GroundField => Ok(c::ground_field()),
            Self::DividedPowers { n } => c::divided_powers(*n),
            Self::Zassenhaus { n } => c::zassenhaus(*n),
            Self::ZassenhausDerived { n } => c::zassenhaus_derived(*n),
            Self::Sl2 => Ok(c::sl2()),
            Self::W12 => Ok(c::w1_2()),
            Self::Current { lie, coeff } => c::current_algebra(&lie.build()?, &coeff.build()?),
            Self::Extension { n, u } => {
                let dim = c::divided_powers(*n)?.dim();
                c::divided_powers_extension(*n, &Subspace::coordinate(dim, u)?)
            }
            Self::FifteenDim { beta, delta } => Ok(fifteen_dim(bit("beta", *beta)?, bit("delta", *delta)?)),
            Self::Table { table } => table.clone().into_table(),
        }
    }
}

pub fn spec_from_str(s: &str) -> Result<ConstructionSpec> {
    serde_json::from_str(s).map_err(|e| Error::Json(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_documented_example() {
        let s = r#"{"dim": 3, "kind": "lie", "labels": ["e","h","f"], "weights": [-1,0,1],
            "products": [{"i":0,"j":1,"out":[0]}, {"i":0,"j":2,"out":[1]}, {"i":1,"j":2,"out":[2]}]}"#;
        let t = table_from_str(s).unwrap();
        assert!(t.validate().is_valid());
        assert_eq!(t.product(2, 1), &BitVector::unit(3, 2));
    }

    #[test]
    fn rejects_malformed_entries() {
        let bad_order = r#"{"dim":2,"kind":"lie","labels":["a","b"],"products":[{"i":1,"j":0,"out":[0]}]}"#;
        assert!(matches!(table_from_str(bad_order), Err(Error::InvalidTable(_))));
        let bad_out = r#"{"dim":2,"kind":"lie","labels":["a","b"],"products":[{"i":0,"j":1,"out":[5]}]}"#;
        assert!(matches!(table_from_str(bad_out), Err(Error::InvalidTable(_))));
        let dup = r#"{"dim":2,"kind":"lie","labels":["a","b"],"products":[{"i":0,"j":1,"out":[0]},{"i":0,"j":1,"out":[1]}]}"#;
        assert!(matches!(table_from_str(dup), Err(Error::InvalidTable(_))));
        assert!(matches!(table_from_str("{"), Err(Error::Json(_))));
        let labels = r#"{"dim":3,"kind":"lie","labels":["a"],"products":[]}"#;
        assert!(table_from_str(labels).is_err());
    }

    #[test]
    fn construction_specs_build() {
        let s = spec_from_str(r#"{"construct":"current","lie":{"construct":"sl2"},"coeff":{"construct":"divided_powers","n":2}}"#)
            .unwrap();
        assert_eq!(s.build().unwrap().dim(), 12);
        let e = spec_from_str(r#"{"construct":"extension","n":2,"u":[0,1]}"#).unwrap();
        assert_eq!(e.build().unwrap().dim(), 15);
        let bad = spec_from_str(r#"{"construct":"fifteen_dim","beta":2,"delta":0}"#).unwrap();
        assert!(matches!(bad.build(), Err(Error::InvalidParameter(_))));
        assert!(spec_from_str(r#"{"construct":"nope"}"#).is_err());
    }
}
