use std::fmt;

use serde::{Deserialize, Serialize};

use super::SeedError;
use crate::arith::render::parse_ratfunc;
use crate::quiver::{IceQuiver, QuiverError};
use crate::RationalFunc;

/// A Y-seed: a quiver with one rational function in `y1..yn` per vertex.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "YSeedJson", into = "YSeedJson")]
pub struct YSeed {
    quiver: IceQuiver,
    vars: Vec<RationalFunc>,
}

/// Wire form: `{"v": 1, "quiver": {..}, "vars": ["y1", "y1*y2/(1 + y1)", ..]}`.
#[derive(Serialize, Deserialize)]
pub struct YSeedJson {
    #[serde(default = "one")]
    pub v: u32,
    pub quiver: IceQuiver,
    pub vars: Vec<String>,
}

fn one() -> u32 {
    1
}

impl TryFrom<YSeedJson> for YSeed {
    type Error = SeedError;
    fn try_from(j: YSeedJson) -> Result<Self, SeedError> {
        let n = j.quiver.n();
        let vars = j.vars.iter().map(|s| parse_ratfunc(s, n, "y")).collect::<Result<Vec<_>, _>>()?;
        YSeed::new(j.quiver, vars)
    }
}

impl From<YSeed> for YSeedJson {
    fn from(s: YSeed) -> Self {
        YSeedJson { v: 1, vars: s.vars.iter().map(|r| r.render("y")).collect(), quiver: s.quiver }
    }
}

impl YSeed {
    /// `(q, (y1, .., yn))` for a quiver without frozen vertices.
    pub fn initial(quiver: IceQuiver) -> Result<Self, SeedError> {
        if !quiver.is_good() {
            return Err(QuiverError::HasFrozenVertices.into());
        }
        let n = quiver.n();
        let vars = (0..n).map(|i| RationalFunc::var(n, i)).collect();
        Ok(YSeed { quiver, vars })
    }

    pub fn new(quiver: IceQuiver, vars: Vec<RationalFunc>) -> Result<Self, SeedError> {
        if !quiver.is_good() {
            return Err(QuiverError::HasFrozenVertices.into());
        }
        if vars.len() != quiver.n() {
            return Err(SeedError::VariableCount { expected: quiver.n(), got: vars.len() });
        }
        Ok(YSeed { quiver, vars })
    }

    pub fn quiver(&self) -> &IceQuiver {
        &self.quiver
    }

    pub fn vars(&self) -> &[RationalFunc] {
        &self.vars
    }

    /// Y-seed mutation at `k`.
    pub fn mutate(&self, k: usize) -> Result<Self, SeedError> {
        let quiver = self.quiver.mutate(k)?;
        let n = self.quiver.n();
        let vk = &self.vars[k];
        let one = RationalFunc::one(n);
        let up = &one + vk;
        let down = &one + &vk.inv()?;
        let mut vars = Vec::with_capacity(n);
        for i in 0..n {
            let b = self.quiver.b(i, k);
            let v = if i == k {
                vk.inv()?
            } else if b > 0 {
                &self.vars[i] * &up.pow(b)?
            } else if b < 0 {
                &self.vars[i] * &down.pow(b)?
            } else {
                self.vars[i].clone()
            };
            vars.push(v);
        }
        Ok(YSeed { quiver, vars })
    }

    pub fn mutate_sequence(&self, seq: &[usize]) -> Result<Self, SeedError> {
        seq.iter().try_fold(self.clone(), |s, &k| s.mutate(k))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("y-seed serializes")
    }
}

impl fmt::Debug for YSeed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "YSeed({:?}, {})", self.quiver, self)
    }
}

impl fmt::Display for YSeed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vars.iter().map(|v| v.render("y")).collect();
        write!(f, "( {} )", parts.join(" , "))
    }
}
