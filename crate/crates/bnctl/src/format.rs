//! JSON network files.
//!
//! Nodes are named 1-based in files; `inputs` of an NC function repeat its
//! layer literals in layer order.

use std::path::Path;

use bnctl_core::{BooleanNetwork, Connective, Literal, NcLayer, NodeFunction, MAX_NODES};
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid value at {field}: {message}")]
    Semantic { field: String, message: String },
}

impl FormatError {
    fn at(field: impl Into<String>, message: impl Into<String>) -> Self {
        FormatError::Semantic {
            field: field.into(),
            message: message.into(),
        }
    }
}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        let full = e.to_string();
        // serde_json appends " at line L column C"; keep the bare message.
        let message = match full.rfind(" at line ") {
            Some(i) => full[..i].to_string(),
            None => full,
        };
        FormatError::Syntax {
            line: e.line(),
            column: e.column(),
            message,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkFile {
    pub n: usize,
    #[serde(default)]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    pub functions: Vec<FunctionEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionEntry {
    pub connective: String,
    #[serde(default)]
    pub inputs: Vec<LiteralEntry>,
    #[serde(default)]
    pub nc: Option<NcEntry>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LiteralEntry {
    pub node: usize,
    #[serde(default)]
    pub neg: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NcEntry {
    pub layers: Vec<LayerEntry>,
    pub default: u8,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LayerEntry {
    pub node: usize,
    #[serde(default)]
    pub neg: bool,
    pub out: u8,
}

fn literal_entry(l: Literal) -> LiteralEntry {
    LiteralEntry {
        node: l.node + 1,
        neg: l.negated,
    }
}

impl NetworkFile {
    pub fn from_network(net: &BooleanNetwork, meta: Option<Value>) -> Self {
        let functions = net
            .functions()
            .iter()
            .map(|f| FunctionEntry {
                connective: f.connective.name().to_string(),
                inputs: f.inputs.iter().map(|&l| literal_entry(l)).collect(),
                nc: f.nc.as_ref().map(|spec| NcEntry {
                    layers: spec
                        .layers
                        .iter()
                        .map(|layer| LayerEntry {
                            node: layer.literal.node + 1,
                            neg: layer.literal.negated,
                            out: layer.output as u8,
                        })
                        .collect(),
                    default: spec.default as u8,
                }),
            })
            .collect();
        NetworkFile {
            n: net.n(),
            k: net.regular_degree(),
            family: Some(net.family().name().to_string()),
            functions,
            meta,
        }
    }

    pub fn to_network(&self) -> Result<BooleanNetwork, FormatError> {
        let n = self.n;
        if n == 0 || n > MAX_NODES {
            return Err(FormatError::at("n", format!("must be in 1..={MAX_NODES}, got {n}")));
        }
        if self.functions.len() != n {
            return Err(FormatError::at(
                "functions",
                format!("expected {n} entries, got {}", self.functions.len()),
            ));
        }
        let mut fs = Vec::with_capacity(n);
        for (i, entry) in self.functions.iter().enumerate() {
            fs.push(parse_function(n, i, entry)?);
        }
        let net = BooleanNetwork::new(fs).map_err(|e| FormatError::at("functions", e.to_string()))?;
        if let Some(k) = self.k {
            if net.regular_degree() != Some(k) {
                return Err(FormatError::at(
                    "k",
                    format!("declared {k} but the network is not {k}-{k}"),
                ));
            }
        }
        if let Some(family) = &self.family {
            if family != net.family().name() {
                return Err(FormatError::at(
                    "family",
                    format!("declared {family:?} but the functions give {:?}", net.family().name()),
                ));
            }
        }
        Ok(net)
    }
}

fn check_node(n: usize, node: usize, field: &str) -> Result<usize, FormatError> {
    if node == 0 || node > n {
        return Err(FormatError::at(field, format!("node {node} outside 1..={n}")));
    }
    Ok(node - 1)
}

fn bit(v: u8, field: &str) -> Result<bool, FormatError> {
    match v {
        0 => Ok(false),
        1 => Ok(true),
        _ => Err(FormatError::at(field, format!("expected 0 or 1, got {v}"))),
    }
}

fn parse_function(n: usize, i: usize, entry: &FunctionEntry) -> Result<NodeFunction, FormatError> {
    let base = format!("functions[{i}]");
    let connective = match entry.connective.as_str() {
        "xor" => Connective::Xor,
        "and" => Connective::And,
        "or" => Connective::Or,
        "nc" => Connective::Nc,
        other => {
            return Err(FormatError::at(
                format!("{base}.connective"),
                format!("unknown connective {other:?}"),
            ))
        }
    };
    let mut inputs = Vec::with_capacity(entry.inputs.len());
    let mut seen = 0u32;
    for (j, lit) in entry.inputs.iter().enumerate() {
        let field = format!("{base}.inputs[{j}].node");
        let node = check_node(n, lit.node, &field)?;
        if seen >> node & 1 == 1 {
            return Err(FormatError::at(
                format!("{base}.inputs[{j}]"),
                format!("duplicate input x{}", lit.node),
            ));
        }
        seen |= 1 << node;
        inputs.push(Literal {
            node,
            negated: lit.neg,
        });
    }
    match (connective, &entry.nc) {
        (Connective::Nc, None) => Err(FormatError::at(
            format!("{base}.nc"),
            "nc functions need a layer list",
        )),
        (Connective::Nc, Some(spec)) => {
            let mut layers = Vec::with_capacity(spec.layers.len());
            for (j, layer) in spec.layers.iter().enumerate() {
                let field = format!("{base}.nc.layers[{j}]");
                let node = check_node(n, layer.node, &format!("{field}.node"))?;
                layers.push(NcLayer {
                    literal: Literal {
                        node,
                        negated: layer.neg,
                    },
                    output: bit(layer.out, &format!("{field}.out"))?,
                });
            }
            let default = bit(spec.default, &format!("{base}.nc.default"))?;
            let f = NodeFunction::nested(layers, default);
            if !entry.inputs.is_empty() && f.inputs != inputs {
                return Err(FormatError::at(
                    format!("{base}.inputs"),
                    "must list the layer literals in layer order",
                ));
            }
            Ok(f)
        }
        (_, Some(_)) => Err(FormatError::at(
            format!("{base}.nc"),
            "only nc functions take a layer list",
        )),
        (Connective::Xor, None) => Ok(NodeFunction::xor(inputs)),
        (Connective::And, None) => Ok(NodeFunction::and(inputs)),
        (Connective::Or, None) => Ok(NodeFunction::or(inputs)),
    }
}

/// Pretty JSON, with an optional `meta` block.
pub fn network_to_json(net: &BooleanNetwork, meta: Option<Value>) -> String {
    let file = NetworkFile::from_network(net, meta);
    serde_json::to_string_pretty(&file).expect("network files always serialize")
}

pub fn parse_network_file(text: &str) -> Result<NetworkFile, FormatError> {
    Ok(serde_json::from_str(text)?)
}

pub fn parse_network(text: &str) -> Result<BooleanNetwork, FormatError> {
    parse_network_file(text)?.to_network()
}

/// Reads a network file; IO errors are reported separately from format errors.
pub fn read_network(path: &Path) -> Result<Result<(BooleanNetwork, Option<Value>), FormatError>, std::io::Error> {
    let text = std::fs::read_to_string(path)?;
    Ok(parse_network_file(&text).and_then(|f| {
        let net = f.to_network()?;
        Ok((net, f.meta))
    }))
}
