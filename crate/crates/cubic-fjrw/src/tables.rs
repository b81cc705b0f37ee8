//! The fixture tables used by the intersection computation, with JSON dump and load.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::m13::{PairingJson, PairingTable};
use crate::threespin::{StratumData, StratumJson};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tables {
    pub pairing: PairingTable,
    pub strata: StratumData,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TablesJson {
    pub pairing: PairingJson,
    pub strata: StratumJson,
}

impl Default for Tables {
    fn default() -> Self {
        Self::standard()
    }
}

impl Tables {
    pub fn standard() -> Self {
        Self { pairing: PairingTable::standard(), strata: StratumData::standard() }
    }

    pub fn to_json(&self) -> TablesJson {
        TablesJson { pairing: self.pairing.to_json(), strata: self.strata.to_json() }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("tables serialize") + "\n"
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let j: TablesJson = serde_json::from_str(s).map_err(|e| Error::InvalidTable(e.to_string()))?;
        Ok(Self { pairing: PairingTable::from_json(&j.pairing)?, strata: StratumData::from_json(&j.strata)? })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let t = Tables::standard();
        assert_eq!(Tables::from_json_str(&t.to_json_string()).unwrap(), t);
    }

    #[test]
    fn rejects_garbage() {
        assert!(Tables::from_json_str("{}").is_err());
        assert!(Tables::from_json_str("not json").is_err());
    }
}
