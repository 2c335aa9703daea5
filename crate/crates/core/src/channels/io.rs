//! Channel JSON files:
//!
//! ```json
//! {"kind": "ccqq" | "ccq" | "cccq",
//!  "alphabets": [...],
//!  "dims": [d1, d2] | [d],
//!  "states": [{"in": [x1, x2], "rho": {"dim": d, "re": [[..]], "im": [[..]]}}, ...]}
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{row_major, CcqMac, CcqqChannel};
use crate::error::{QicError, Result};
use crate::qmatrix::{DensityOperator, HermitianOperator, MatrixJson};

#[derive(Clone, Debug, PartialEq)]
pub enum AnyChannel {
    Ccqq(CcqqChannel),
    Mac(CcqMac),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ChannelFile {
    kind: String,
    alphabets: Vec<usize>,
    dims: Vec<usize>,
    states: Vec<StateEntry>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StateEntry {
    #[serde(rename = "in")]
    input: Vec<usize>,
    rho: MatrixJson,
}

pub fn parse_channel(text: &str) -> Result<AnyChannel> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let file: ChannelFile = serde_path_to_error::deserialize(de)
        .map_err(|e| QicError::Schema(format!("at '{}': {}", e.path(), e.inner())))?;
    let senders = match file.kind.as_str() {
        "ccqq" | "ccq" => 2,
        "cccq" => 3,
        other => return Err(QicError::Schema(format!("at 'kind': unknown kind '{other}'"))),
    };
    let want_dims = if file.kind == "ccqq" { 2 } else { 1 };
    if file.alphabets.len() != senders || file.alphabets.contains(&0) {
        return Err(QicError::Schema(format!(
            "at 'alphabets': kind '{}' needs {senders} positive alphabet sizes",
            file.kind
        )));
    }
    if file.dims.len() != want_dims || file.dims.contains(&0) {
        return Err(QicError::Schema(format!("at 'dims': kind '{}' needs {want_dims} positive dimensions", file.kind)));
    }
    let dim: usize = file.dims.iter().product();
    let total: usize = file.alphabets.iter().product();
    let mut slots: Vec<Option<DensityOperator>> = vec![None; total];
    for (k, entry) in file.states.iter().enumerate() {
        let inp = &entry.input;
        if inp.len() != senders || inp.iter().zip(&file.alphabets).any(|(x, a)| x >= a) {
            return Err(QicError::Schema(format!("at 'states[{k}].in': input {inp:?} out of range")));
        }
        let invalid = |reason: String| QicError::InvalidState { indices: inp.clone(), reason };
        let m = entry.rho.to_matrix().map_err(|e| invalid(e.to_string()))?;
        if m.nrows() != dim {
            return Err(invalid(format!("dimension {} but the output dimension is {dim}", m.nrows())));
        }
        let rho = HermitianOperator::new(m).and_then(DensityOperator::new).map_err(|e| invalid(e.to_string()))?;
        let slot = &mut slots[row_major(inp, &file.alphabets)];
        if slot.is_some() {
            return Err(QicError::Schema(format!("at 'states[{k}].in': duplicate input {inp:?}")));
        }
        *slot = Some(rho);
    }
    let states = slots
        .into_iter()
        .enumerate()
        .map(|(flat, s)| {
            s.ok_or_else(|| {
                QicError::Schema(format!("at 'states': missing input {:?}", super::unflatten(flat, &file.alphabets)))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(if file.kind == "ccqq" {
        AnyChannel::Ccqq(CcqqChannel::new(
            [file.alphabets[0], file.alphabets[1]],
            [file.dims[0], file.dims[1]],
            states,
        )?)
    } else {
        AnyChannel::Mac(CcqMac::new(file.alphabets, dim, states)?)
    })
}

pub fn load_channel(path: impl AsRef<Path>) -> Result<AnyChannel> {
    parse_channel(&std::fs::read_to_string(path)?)
}

pub fn to_json_string(ch: &AnyChannel) -> String {
    let file = match ch {
        AnyChannel::Ccqq(c) => {
            let a = c.alphabets();
            ChannelFile {
                kind: "ccqq".into(),
                alphabets: a.to_vec(),
                dims: c.dims().to_vec(),
                states: (0..a[0])
                    .flat_map(|x1| (0..a[1]).map(move |x2| (x1, x2)))
                    .map(|(x1, x2)| StateEntry {
                        input: vec![x1, x2],
                        rho: MatrixJson::from_matrix(c.state(x1, x2).matrix()),
                    })
                    .collect(),
            }
        }
        AnyChannel::Mac(m) => {
            let total: usize = m.alphabets().iter().product();
            ChannelFile {
                kind: if m.senders() == 2 { "ccq" } else { "cccq" }.into(),
                alphabets: m.alphabets().to_vec(),
                dims: vec![m.dim()],
                states: (0..total)
                    .map(|flat| {
                        let input = super::unflatten(flat, m.alphabets());
                        let rho = MatrixJson::from_matrix(m.state_matrix(&input));
                        StateEntry { input, rho }
                    })
                    .collect(),
            }
        }
    };
    serde_json::to_string_pretty(&file).expect("channel file serializes")
}

pub fn save_channel(ch: &AnyChannel, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, to_json_string(ch) + "\n")?;
    Ok(())
}
