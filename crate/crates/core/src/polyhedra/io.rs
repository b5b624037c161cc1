//! Cone file formats: JSON and a PORTA-style plaintext mirror.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{HRep, VRep};
use crate::arith::{Int, IntVec};
use crate::error::{Error, Result};

/// On-disk cone. Either or both descriptions may be present.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeFile {
    pub dimension: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub coordinates: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub equalities: Option<Vec<IntVec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inequalities: Option<Vec<IntVec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rays: Option<Vec<IntVec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lineality: Option<Vec<IntVec>>,
}

impl ConeFile {
    pub fn from_hrep(h: &HRep, coordinates: Vec<String>) -> Self {
        ConeFile {
            dimension: h.dim,
            coordinates,
            equalities: Some(h.equalities.clone()),
            inequalities: Some(h.inequalities.clone()),
            rays: None,
            lineality: None,
        }
    }

    pub fn from_vrep(v: &VRep, coordinates: Vec<String>) -> Self {
        ConeFile {
            dimension: v.dim,
            coordinates,
            equalities: None,
            inequalities: None,
            rays: Some(v.rays.clone()),
            lineality: Some(v.lineality.clone()),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let file: ConeFile = serde_json::from_str(text).map_err(|e| Error::Format {
            field: format!("line {} column {}", e.line(), e.column()),
            message: e.to_string(),
        })?;
        file.validate()?;
        Ok(file)
    }

    fn validate(&self) -> Result<()> {
        if self.dimension == 0 {
            return Err(Error::Format {
                field: "dimension".into(),
                message: "must be positive".into(),
            });
        }
        if !self.coordinates.is_empty() && self.coordinates.len() != self.dimension {
            return Err(Error::Format {
                field: "coordinates".into(),
                message: format!(
                    "{} names for dimension {}",
                    self.coordinates.len(),
                    self.dimension
                ),
            });
        }
        for (name, rows) in [
            ("equalities", &self.equalities),
            ("inequalities", &self.inequalities),
            ("rays", &self.rays),
            ("lineality", &self.lineality),
        ] {
            if let Some(rows) = rows {
                if let Some(i) = rows.iter().position(|r| r.len() != self.dimension) {
                    return Err(Error::Format {
                        field: format!("{name}[{i}]"),
                        message: format!(
                            "row has {} entries, expected {}",
                            rows[i].len(),
                            self.dimension
                        ),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn hrep(&self) -> Result<Option<HRep>> {
        if self.equalities.is_none() && self.inequalities.is_none() {
            return Ok(None);
        }
        HRep::new(
            self.dimension,
            self.equalities.clone().unwrap_or_default(),
            self.inequalities.clone().unwrap_or_default(),
        )
        .map(Some)
    }

    pub fn vrep(&self) -> Result<Option<VRep>> {
        if self.rays.is_none() && self.lineality.is_none() {
            return Ok(None);
        }
        VRep::new(
            self.dimension,
            self.rays.clone().unwrap_or_default(),
            self.lineality.clone().unwrap_or_default(),
        )
        .map(Some)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("cone file serializes")
    }

    /// PORTA-style text: `DIM`, `INEQUALITIES_SECTION`, `CONE_SECTION`, `END`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "DIM = {}", self.dimension);
        if !self.coordinates.is_empty() {
            let _ = writeln!(out, "\nCOORDINATES");
            for (i, c) in self.coordinates.iter().enumerate() {
                let _ = writeln!(out, "x{} = {}", i + 1, c);
            }
        }
        if self.equalities.is_some() || self.inequalities.is_some() {
            let _ = writeln!(out, "\nINEQUALITIES_SECTION");
            let mut k = 1;
            for e in self.equalities.iter().flatten() {
                let _ = writeln!(out, "({k:>3}) {} == 0", porta_row(e));
                k += 1;
            }
            for a in self.inequalities.iter().flatten() {
                let _ = writeln!(out, "({k:>3}) {} >= 0", porta_row(a));
                k += 1;
            }
        }
        if self.rays.is_some() || self.lineality.is_some() {
            let _ = writeln!(out, "\nCONE_SECTION");
            for r in self.rays.iter().flatten() {
                let _ = writeln!(out, "{}", plain_vector(r));
            }
            if let Some(lin) = &self.lineality {
                if !lin.is_empty() {
                    let _ = writeln!(out, "\nLINEALITY_SECTION");
                    for l in lin {
                        let _ = writeln!(out, "{}", plain_vector(l));
                    }
                }
            }
        }
        let _ = writeln!(out, "\nEND");
        out
    }
}

fn porta_row(row: &[Int]) -> String {
    let mut s = String::new();
    for (i, c) in row.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let sign = if c.is_negative() { '-' } else { '+' };
        let mag = c.abs();
        if mag == Int::ONE {
            let _ = write!(s, "{sign}x{} ", i + 1);
        } else {
            let _ = write!(s, "{sign}{mag}x{} ", i + 1);
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s.trim_end().to_string()
}

/// Space-separated integers.
pub fn plain_vector(v: &[Int]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_roundtrip_and_validation() {
        let h = HRep::from_i64(2, &[], &[vec![1, 0], vec![0, 1]]).unwrap();
        let f = ConeFile::from_hrep(&h, vec!["a".into(), "b".into()]);
        let back = ConeFile::parse(&f.to_json()).unwrap();
        assert_eq!(back.hrep().unwrap().unwrap(), h);

        let bad = r#"{"dimension": 2, "inequalities": [[1, 0], [1]]}"#;
        match ConeFile::parse(bad) {
            Err(Error::Format { field, .. }) => assert_eq!(field, "inequalities[1]"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn porta_text_layout() {
        let h = HRep::from_i64(3, &[vec![1, 1, -1]], &[vec![0, 2, -1]]).unwrap();
        let text = ConeFile::from_hrep(&h, vec![]).to_text();
        assert!(text.contains("(  1) +x1 +x2 -x3 == 0"));
        assert!(text.contains("(  2) +2x2 -x3 >= 0"));
        assert!(text.starts_with("DIM = 3"));
    }
}
