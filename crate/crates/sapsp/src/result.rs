//! Solve output and its serialized forms.
//!
//! JSON files carry the matrix row-major with `"inf"` for unreachable
//! pairs, the per-vertex lists as `[source, dist]` pairs with 1-based
//! sources (matching the graph file convention), the counters, and the
//! potential vector when the acyclic pipeline produced the result.

use serde::{Deserialize, Serialize};

use crate::counters::RunCounters;
use crate::driver::{ShortestPathList, Variant};
use crate::graph::Graph;
use crate::sssp::SsspEngine;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ApspResult {
    pub n: usize,
    #[serde(with = "engine_repr")]
    pub engine: SsspEngine,
    #[serde(with = "variant_repr")]
    pub variant: Variant,
    /// `matrix[source][target]`, infinity for unreachable pairs.
    #[serde(with = "inf_matrix")]
    pub matrix: Vec<Vec<f64>>,
    /// Full per-vertex lists including the `(owner, 0)` head entry;
    /// 0-based sources in memory, 1-based in JSON.
    #[serde(with = "lists_repr")]
    pub lists: Vec<Vec<(usize, f64)>>,
    /// Vertex potentials when the acyclic pipeline reweighted the input.
    pub potentials: Option<Vec<f64>>,
    pub counters: RunCounters,
}

impl ApspResult {
    pub(crate) fn from_run(
        g: &Graph,
        engine: SsspEngine,
        variant: Variant,
        lists: &[ShortestPathList],
        counters: RunCounters,
    ) -> ApspResult {
        let n = g.n();
        let mut matrix = vec![vec![f64::INFINITY; n]; n];
        for (v, row) in matrix.iter_mut().enumerate() {
            row[v] = 0.0;
        }
        for list in lists {
            for &(source, dist) in list.inner() {
                matrix[source][list.owner()] = dist;
            }
        }
        ApspResult {
            n,
            engine,
            variant,
            matrix,
            lists: lists.iter().map(|l| l.entries().to_vec()).collect(),
            potentials: None,
            counters,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("result serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<ApspResult, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// Tab-separated matrix, one row per source, `inf` for unreachable.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for row in &self.matrix {
            let cells: Vec<String> = row.iter().map(|&x| weight_str(x)).collect();
            out.push_str(&cells.join("\t"));
            out.push('\n');
        }
        out
    }
}

pub(crate) fn weight_str(x: f64) -> String {
    if x.is_infinite() {
        "inf".to_string()
    } else {
        format!("{x}")
    }
}

mod engine_repr {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    use crate::sssp::SsspEngine;

    pub fn serialize<S: Serializer>(e: &SsspEngine, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(e.name())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<SsspEngine, D::Error> {
        let name = String::deserialize(d)?;
        SsspEngine::from_name(&name).ok_or_else(|| D::Error::custom(format!("unknown engine '{name}'")))
    }
}

mod variant_repr {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    use crate::driver::Variant;

    pub fn serialize<S: Serializer>(v: &Variant, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(v.name())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Variant, D::Error> {
        let name = String::deserialize(d)?;
        Variant::from_name(&name).ok_or_else(|| D::Error::custom(format!("unknown variant '{name}'")))
    }
}

mod inf_matrix {
    use serde::de::Error;
    use serde::{Deserialize, Deserializer, Serializer};
    use serde_json::{json, Value};

    pub fn serialize<S: Serializer>(matrix: &[Vec<f64>], s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<Value>> = matrix
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&x| if x.is_infinite() { json!("inf") } else { json!(x) })
                    .collect()
            })
            .collect();
        serde::Serialize::serialize(&rows, s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<f64>>, D::Error> {
        let rows: Vec<Vec<Value>> = Vec::deserialize(d)?;
        rows.into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|cell| match cell {
                        Value::String(s) if s == "inf" => Ok(f64::INFINITY),
                        Value::Number(num) => {
                            num.as_f64().ok_or_else(|| D::Error::custom("bad matrix entry"))
                        }
                        other => Err(D::Error::custom(format!("bad matrix entry {other}"))),
                    })
                    .collect()
            })
            .collect()
    }
}

mod lists_repr {
    use serde::de::Error;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(lists: &[Vec<(usize, f64)>], s: S) -> Result<S::Ok, S::Error> {
        let shifted: Vec<Vec<(usize, f64)>> = lists
            .iter()
            .map(|list| list.iter().map(|&(source, dist)| (source + 1, dist)).collect())
            .collect();
        serde::Serialize::serialize(&shifted, s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<(usize, f64)>>, D::Error> {
        let shifted: Vec<Vec<(usize, f64)>> = Vec::deserialize(d)?;
        shifted
            .into_iter()
            .map(|list| {
                list.into_iter()
                    .map(|(source, dist)| {
                        if source == 0 {
                            Err(D::Error::custom("list sources are 1-based"))
                        } else {
                            Ok((source - 1, dist))
                        }
                    })
                    .collect()
            })
            .collect()
    }
}
