//! JSON form of [`PbpInstance`].
//!
//! ```json
//! {
//!   "version": 1,
//!   "n": 3,
//!   "sigma_connected": true,
//!   "l_orientable": true,
//!   "exact_data": true,
//!   "h1_L": {"rank": 1, "torsion": []},
//!   "h1_Sigma": {"rank": 2, "torsion": []},
//!   "i1": {"matrix": [[1], [0]]},
//!   "maslov_class": [1, 0]
//! }
//! ```
//!
//! Optional keys: `h3_L`, `h3_Sigma`, `i3`, `su_class`, `h1_rel`, `b1_Sigma`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::PbpInstance;
use crate::intalg::{FgAbelianGroup, GroupHom};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{path}: {message}")]
pub struct SchemaError {
    /// Dotted path of the offending field, `.` for the document root.
    pub path: String,
    pub message: String,
}

impl SchemaError {
    fn at(path: &str, message: impl Into<String>) -> Self {
        Self {
            path: path.to_string(),
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDoc {
    pub rank: usize,
    #[serde(default)]
    pub torsion: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomDoc {
    pub matrix: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDocument {
    pub version: u32,
    pub n: usize,
    pub sigma_connected: bool,
    pub l_orientable: bool,
    pub exact_data: bool,
    #[serde(rename = "h1_L")]
    pub h1_l: GroupDoc,
    #[serde(rename = "h1_Sigma")]
    pub h1_sigma: GroupDoc,
    #[serde(rename = "h3_L", default, skip_serializing_if = "Option::is_none")]
    pub h3_l: Option<GroupDoc>,
    #[serde(rename = "h3_Sigma", default, skip_serializing_if = "Option::is_none")]
    pub h3_sigma: Option<GroupDoc>,
    pub i1: HomDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub i3: Option<HomDoc>,
    pub maslov_class: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub su_class: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h1_rel: Option<GroupDoc>,
    #[serde(rename = "b1_Sigma", default, skip_serializing_if = "Option::is_none")]
    pub b1_sigma: Option<usize>,
}

fn group(path: &str, doc: &GroupDoc) -> Result<FgAbelianGroup, SchemaError> {
    FgAbelianGroup::new(doc.rank, doc.torsion.clone())
        .map_err(|e| SchemaError::at(&format!("{path}.torsion"), e.to_string()))
}

fn hom(
    path: &str,
    doc: &HomDoc,
    domain: &FgAbelianGroup,
    codomain: &FgAbelianGroup,
) -> Result<GroupHom, SchemaError> {
    let rows = codomain.num_generators();
    let cols = domain.num_generators();
    if doc.matrix.len() != rows {
        return Err(SchemaError::at(
            &format!("{path}.matrix"),
            format!("expected {rows} rows, found {}", doc.matrix.len()),
        ));
    }
    if let Some((i, row)) = doc.matrix.iter().enumerate().find(|(_, r)| r.len() != cols) {
        return Err(SchemaError::at(
            &format!("{path}.matrix[{i}]"),
            format!("expected {cols} entries, found {}", row.len()),
        ));
    }
    GroupHom::from_i64(domain.clone(), codomain.clone(), &doc.matrix)
        .map_err(|e| SchemaError::at(&format!("{path}.matrix"), e.to_string()))
}

fn element(path: &str, x: &[i64], g: &FgAbelianGroup) -> Result<(), SchemaError> {
    g.check_element(x)
        .map_err(|e| SchemaError::at(path, e.to_string()))
}

impl InstanceDocument {
    pub fn into_instance(self) -> Result<PbpInstance, SchemaError> {
        if self.version != SCHEMA_VERSION {
            return Err(SchemaError::at(
                "version",
                format!(
                    "unsupported version {}, expected {SCHEMA_VERSION}",
                    self.version
                ),
            ));
        }
        if self.n < 2 {
            return Err(SchemaError::at(
                "n",
                format!("complex dimension must be at least 2, found {}", self.n),
            ));
        }
        let h1_l = group("h1_L", &self.h1_l)?;
        let h1_sigma = group("h1_Sigma", &self.h1_sigma)?;
        let i1 = hom("i1", &self.i1, &h1_l, &h1_sigma)?;
        element("maslov_class", &self.maslov_class, &h1_sigma)?;
        let h3_l = self.h3_l.as_ref().map(|g| group("h3_L", g)).transpose()?;
        let h3_sigma = self
            .h3_sigma
            .as_ref()
            .map(|g| group("h3_Sigma", g))
            .transpose()?;
        let i3 = match (&self.i3, &h3_l, &h3_sigma) {
            (Some(doc), Some(d), Some(c)) => Some(hom("i3", doc, d, c)?),
            (Some(_), None, _) => return Err(SchemaError::at("h3_L", "required when i3 is given")),
            (Some(_), _, None) => {
                return Err(SchemaError::at("h3_Sigma", "required when i3 is given"))
            }
            (None, ..) => None,
        };
        if let Some(theta) = &self.su_class {
            let h3 = h3_sigma
                .as_ref()
                .ok_or_else(|| SchemaError::at("h3_Sigma", "required when su_class is given"))?;
            element("su_class", theta, h3)?;
        }
        let h1_rel = self
            .h1_rel
            .as_ref()
            .map(|g| group("h1_rel", g))
            .transpose()?;
        Ok(PbpInstance {
            n: self.n,
            sigma_connected: self.sigma_connected,
            l_orientable: self.l_orientable,
            exact_data: self.exact_data,
            h1_l,
            h1_sigma,
            h3_l,
            h3_sigma,
            i1,
            i3,
            maslov_class: self.maslov_class,
            su_class: self.su_class,
            h1_rel,
            b1_sigma: self.b1_sigma,
        })
    }
}

fn group_doc(g: &FgAbelianGroup) -> GroupDoc {
    GroupDoc {
        rank: g.rank(),
        torsion: g.torsion().to_vec(),
    }
}

fn hom_doc(h: &GroupHom) -> HomDoc {
    let m = h.matrix();
    let matrix = (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| i64::try_from(&m[(i, j)]).expect("matrix entries originate from i64"))
                .collect()
        })
        .collect();
    HomDoc { matrix }
}

impl From<&PbpInstance> for InstanceDocument {
    fn from(inst: &PbpInstance) -> Self {
        Self {
            version: SCHEMA_VERSION,
            n: inst.n,
            sigma_connected: inst.sigma_connected,
            l_orientable: inst.l_orientable,
            exact_data: inst.exact_data,
            h1_l: group_doc(&inst.h1_l),
            h1_sigma: group_doc(&inst.h1_sigma),
            h3_l: inst.h3_l.as_ref().map(group_doc),
            h3_sigma: inst.h3_sigma.as_ref().map(group_doc),
            i1: hom_doc(&inst.i1),
            i3: inst.i3.as_ref().map(hom_doc),
            maslov_class: inst.maslov_class.clone(),
            su_class: inst.su_class.clone(),
            h1_rel: inst.h1_rel.as_ref().map(group_doc),
            b1_sigma: inst.b1_sigma,
        }
    }
}

/// Parses and validates an instance document; errors name the field path.
pub fn parse_instance(json: &str) -> Result<PbpInstance, SchemaError> {
    let de = &mut serde_json::Deserializer::from_str(json);
    let doc: InstanceDocument = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        SchemaError {
            path,
            message: e.into_inner().to_string(),
        }
    })?;
    doc.into_instance()
}
