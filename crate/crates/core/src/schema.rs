//! JSON descriptor files.
//!
//! ```json
//! {"weights": [1, 2, 2, 2], "degrees": [4], "equations": [[1, 1, 2, 1, 0, 0], [1, 1, 0, 0, 2, 0], [1, 1, 0, 0, 0, 2]]}
//! ```
//!
//! Each row is `[num, den, e_0, ..., e_N]`. A flat list of rows is a single
//! equation; for `k > 1` `equations` is a list of such lists. Without
//! `equations` the file describes a general member only.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{Field, Polynomial, SerializedTerm};
use crate::qs::ExplicitWci;
use crate::wci::WciDescriptor;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Equations {
    Single(Vec<SerializedTerm>),
    Several(Vec<Vec<SerializedTerm>>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DescriptorFile {
    pub weights: Vec<u64>,
    pub degrees: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub equations: Option<Equations>,
}

/// A parsed descriptor file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Parsed {
    Descriptor(WciDescriptor),
    Explicit(ExplicitWci),
}

impl Parsed {
    pub fn descriptor(&self) -> &WciDescriptor {
        match self {
            Parsed::Descriptor(d) => d,
            Parsed::Explicit(x) => x.descriptor(),
        }
    }

    pub fn explicit(&self) -> Option<&ExplicitWci> {
        match self {
            Parsed::Explicit(x) => Some(x),
            Parsed::Descriptor(_) => None,
        }
    }
}

impl DescriptorFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidParameter(format!("descriptor JSON: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("descriptor files serialize")
    }

    pub fn parse(&self) -> Result<Parsed> {
        let Some(equations) = &self.equations else {
            return Ok(Parsed::Descriptor(WciDescriptor::new(self.weights.clone(), self.degrees.clone())?));
        };
        let rows: Vec<&Vec<SerializedTerm>> = match equations {
            Equations::Single(rows) => vec![rows],
            Equations::Several(eqs) => eqs.iter().collect(),
        };
        let n = self.weights.len();
        let polys = rows
            .into_iter()
            .map(|r| Polynomial::from_serialized(n, Field::Rationals, r))
            .collect::<Result<Vec<_>>>()?;
        Ok(Parsed::Explicit(ExplicitWci::with_degrees(self.weights.clone(), self.degrees.clone(), polys)?))
    }

    pub fn from_descriptor(d: &WciDescriptor) -> Self {
        DescriptorFile { weights: d.weights().to_vec(), degrees: d.degrees().to_vec(), equations: None }
    }

    pub fn from_explicit(x: &ExplicitWci) -> Result<Self> {
        let w = x.descriptor().weights();
        let mut eqs = x.equations().iter().map(|f| f.to_serialized(w)).collect::<Result<Vec<_>>>()?;
        let equations = if eqs.len() == 1 { Equations::Single(eqs.remove(0)) } else { Equations::Several(eqs) };
        Ok(DescriptorFile {
            weights: w.to_vec(),
            degrees: x.descriptor().degrees().to_vec(),
            equations: Some(equations),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{general_member, rng};

    #[test]
    fn descriptor_only() {
        let f = DescriptorFile::from_json(r#"{"weights":[2,1,1],"degrees":[4]}"#).unwrap();
        let p = f.parse().unwrap();
        assert!(p.explicit().is_none());
        assert_eq!(p.descriptor().weights(), &[1, 1, 2]);
        assert_eq!(DescriptorFile::from_json(&f.to_json()).unwrap(), f);
    }

    #[test]
    fn single_equation() {
        let text = r#"{"weights":[1,2,2,2],"degrees":[4],"equations":[[1,1,2,1,0,0],[1,1,0,0,2,0],[1,1,0,0,0,2]]}"#;
        let f = DescriptorFile::from_json(text).unwrap();
        let x = f.parse().unwrap().explicit().unwrap().clone();
        assert_eq!(x.equations()[0].len(), 3);
        let back = DescriptorFile::from_explicit(&x).unwrap();
        assert_eq!(back.parse().unwrap().explicit().unwrap(), &x);
    }

    #[test]
    fn several_equations_round_trip() {
        let w = [1u64, 1, 1, 1, 1];
        let x = ExplicitWci::new(w.to_vec(), vec![general_member(&w, 3, &mut rng(1)), general_member(&w, 2, &mut rng(2))])
            .unwrap();
        let file = DescriptorFile::from_explicit(&x).unwrap();
        assert!(matches!(file.equations, Some(Equations::Several(_))));
        let text = file.to_json();
        let parsed = DescriptorFile::from_json(&text).unwrap().parse().unwrap();
        assert_eq!(parsed.explicit().unwrap(), &x);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(DescriptorFile::from_json(r#"{"weights":[1,1],"degrees":[2],"extra":1}"#).is_err());
        assert!(DescriptorFile::from_json(r#"{"weights":[1,1,1],"degrees":[3],"equations":[[1,1,2,0,0]]}"#)
            .unwrap()
            .parse()
            .is_err());
        // declared degree differs from the equation's degree
        assert!(DescriptorFile::from_json(r#"{"weights":[1,1,1],"degrees":[3],"equations":[[1,1,2,0,0]]}"#)
            .unwrap()
            .parse()
            .is_err());
        assert!(DescriptorFile::from_json(r#"{"weights":[1,1,1],"degrees":[2],"equations":[[1,0,2,0,0]]}"#)
            .unwrap()
            .parse()
            .is_err());
        assert!(DescriptorFile::from_json("not json").is_err());
    }
}
