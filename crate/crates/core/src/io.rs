//! JSON instance files: `m`, `n`, row-major `A`, `b_lower`, `b_upper`, `c`, `r`, optional `name`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::dense::Matrix;
use crate::error::{OrpError, Result};
use crate::ilp::IlpInstance;
use crate::interval::IntervalVector;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub m: usize,
    pub n: usize,
    #[serde(rename = "A")]
    pub a: Vec<Vec<f64>>,
    pub b_lower: Vec<f64>,
    pub b_upper: Vec<f64>,
    pub c: Vec<f64>,
    pub r: Vec<f64>,
}

impl InstanceFile {
    pub fn from_parts(name: Option<String>, inst: &IlpInstance, r: &[f64]) -> Self {
        Self {
            name,
            m: inst.m(),
            n: inst.n(),
            a: inst.a().to_rows(),
            b_lower: inst.b().lower().to_vec(),
            b_upper: inst.b().upper().to_vec(),
            c: inst.c().to_vec(),
            r: r.to_vec(),
        }
    }

    /// Validates declared sizes against the data and builds the instance.
    pub fn to_instance(&self) -> Result<(IlpInstance, Vec<f64>)> {
        let mismatch = |what: &str, got: usize, want: usize| {
            OrpError::DimensionMismatch(format!("{what} has {got} entries, expected {want}"))
        };
        if self.a.len() != self.m {
            return Err(mismatch("A", self.a.len(), self.m));
        }
        if let Some(row) = self.a.iter().find(|row| row.len() != self.n) {
            return Err(mismatch("a row of A", row.len(), self.n));
        }
        if self.b_lower.len() != self.m {
            return Err(mismatch("b_lower", self.b_lower.len(), self.m));
        }
        if self.b_upper.len() != self.m {
            return Err(mismatch("b_upper", self.b_upper.len(), self.m));
        }
        if self.c.len() != self.n {
            return Err(mismatch("c", self.c.len(), self.n));
        }
        if self.r.len() != self.n {
            return Err(mismatch("r", self.r.len(), self.n));
        }
        let a = if self.m == 0 {
            Matrix::zeros(0, self.n)
        } else {
            Matrix::from_rows(&self.a)?
        };
        let b = IntervalVector::new(self.b_lower.clone(), self.b_upper.clone())?;
        let inst = IlpInstance::new(a, self.c.clone(), b)?;
        inst.check_outcome(&self.r)?;
        Ok((inst, self.r.clone()))
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| OrpError::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("instance serializes");
        s.push('\n');
        s
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| OrpError::Parse(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json())
            .map_err(|e| OrpError::Parse(format!("{}: {e}", path.display())))
    }
}
