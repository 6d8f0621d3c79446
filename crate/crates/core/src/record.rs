//! One-line-per-instance jsonl records.
//!
//! Schema: `{r, n, classification, certificate?, value_numerator?,
//! value_denominator?}`. Rational parts are decimal strings so consumers
//! with 53-bit numbers lose nothing.

use serde::{Deserialize, Serialize};

use crate::experiments::InstanceResult;
use crate::integrality::{Certificate, Classification, Instance};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceRecord {
    pub r: u64,
    pub n: u64,
    pub classification: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value_numerator: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value_denominator: Option<String>,
}

impl InstanceRecord {
    pub fn new(r: u64, n: u64, classification: &Classification) -> Self {
        let value = classification.value();
        Self {
            r,
            n,
            classification: classification.label().to_owned(),
            certificate: classification.certificate().cloned(),
            value_numerator: value.map(|v| v.numer().to_string()),
            value_denominator: value.map(|v| v.denom().to_string()),
        }
    }

    pub fn is_integral(&self) -> bool {
        self.classification == "oracle_integral"
    }

    /// Re-verifies the stored certificate, if any, against the library.
    pub fn verify_certificate(&self) -> Option<bool> {
        let inst = Instance::new(self.r, self.n).ok()?;
        self.certificate.as_ref().map(|c| c.verify(&inst))
    }

    /// Compact JSON followed by a newline.
    pub fn to_jsonl(&self) -> String {
        let mut line = serde_json::to_string(self).expect("record serializes");
        line.push('\n');
        line
    }
}

impl From<&InstanceResult> for InstanceRecord {
    fn from(result: &InstanceResult) -> Self {
        InstanceRecord::new(result.r, result.n, &result.classification)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::integrality::{classify, ClassifyBudget};

    #[test]
    fn jsonl_shapes() {
        let budget = ClassifyBudget::default();
        let cert = InstanceRecord::new(3, 4, &classify(&Instance::new(3, 4).unwrap(), &budget));
        assert_eq!(
            cert.to_jsonl(),
            "{\"r\":3,\"n\":4,\"classification\":\"certified_nonintegral\",\"certificate\":{\"type\":\"sylvester\",\"p\":5,\"k0\":2}}\n"
        );
        let oracle = InstanceRecord::new(1, 5, &classify(&Instance::new(1, 5).unwrap(), &budget));
        assert_eq!(
            oracle.to_jsonl(),
            "{\"r\":1,\"n\":5,\"classification\":\"oracle_nonintegral\",\"value_numerator\":\"43\",\"value_denominator\":\"2\"}\n"
        );
    }

    #[test]
    fn records_round_trip_and_reverify() {
        let budget = ClassifyBudget::default();
        for r in 1..=6 {
            for n in 1..=60 {
                let rec = InstanceRecord::new(r, n, &classify(&Instance::new(r, n).unwrap(), &budget));
                let back: InstanceRecord = serde_json::from_str(rec.to_jsonl().trim_end()).unwrap();
                assert_eq!(back, rec);
                assert_ne!(back.verify_certificate(), Some(false));
            }
        }
        assert!(serde_json::from_str::<InstanceRecord>(r#"{"r":1,"n":1,"classification":"x","extra":1}"#).is_err());
    }
}
