use serde::{Deserialize, Serialize};

use super::{K0Element, LambdaError, LambdaSymbol};
use crate::scalar::binomial;
use num_bigint::BigInt;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub rank: u32,
}

/// Generators with ranks; each generator `g` of rank `r` carries λ-symbols
/// `Λ^k g` for `1 <= k <= r`, of rank `C(r, k)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawPresentation", into = "RawPresentation")]
pub struct RingPresentation {
    generators: Vec<Generator>,
}

#[derive(Serialize, Deserialize)]
struct RawPresentation {
    generators: Vec<Generator>,
}

impl TryFrom<RawPresentation> for RingPresentation {
    type Error = LambdaError;
    fn try_from(raw: RawPresentation) -> Result<Self, LambdaError> {
        RingPresentation::new(raw.generators)
    }
}

impl From<RingPresentation> for RawPresentation {
    fn from(p: RingPresentation) -> Self {
        RawPresentation {
            generators: p.generators,
        }
    }
}

pub(crate) fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

impl RingPresentation {
    pub fn new(generators: Vec<Generator>) -> Result<Self, LambdaError> {
        let mut out = RingPresentation { generators: vec![] };
        for g in generators {
            out.push(g)?;
        }
        Ok(out)
    }

    pub fn empty() -> Self {
        RingPresentation { generators: vec![] }
    }

    pub fn from_json(text: &str) -> Result<Self, LambdaError> {
        serde_json::from_str(text).map_err(|e| LambdaError::Json(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("presentation serializes")
    }

    /// Appends a generator; names must be unique identifiers and ranks positive.
    pub fn push(&mut self, g: Generator) -> Result<(), LambdaError> {
        if !valid_name(&g.name) {
            return Err(LambdaError::InvalidName(g.name));
        }
        if g.rank == 0 {
            return Err(LambdaError::ZeroRank(g.name));
        }
        if self.rank(&g.name).is_some() {
            return Err(LambdaError::DuplicateGenerator(g.name));
        }
        self.generators.push(g);
        Ok(())
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn rank(&self, name: &str) -> Option<u32> {
        self.generators
            .iter()
            .find(|g| g.name == name)
            .map(|g| g.rank)
    }

    fn require_rank(&self, name: &str) -> Result<u32, LambdaError> {
        self.rank(name)
            .ok_or_else(|| LambdaError::UnknownGenerator(name.to_string()))
    }

    /// Rank of `Λ^k g`, which is `C(rank g, k)`.
    pub fn symbol_rank(&self, s: &LambdaSymbol) -> Result<BigInt, LambdaError> {
        let r = self.require_rank(&s.generator)?;
        if s.degree == 0 || s.degree > r {
            return Err(LambdaError::BadDegree {
                generator: s.generator.to_string(),
                degree: s.degree,
                rank: r,
            });
        }
        Ok(binomial(r as u64, s.degree as u64))
    }

    pub fn check_symbol(&self, s: &LambdaSymbol) -> Result<(), LambdaError> {
        self.symbol_rank(s).map(|_| ())
    }

    /// Errors unless every symbol of `x` belongs to this presentation.
    pub fn check_element(&self, x: &K0Element) -> Result<(), LambdaError> {
        for s in x.symbols() {
            self.check_symbol(s).map_err(|e| match e {
                LambdaError::UnknownGenerator(g) => LambdaError::PresentationMismatch(g),
                other => other,
            })?;
        }
        Ok(())
    }

    pub fn generator(&self, name: &str) -> Result<K0Element, LambdaError> {
        self.require_rank(name)?;
        Ok(K0Element::symbol(LambdaSymbol::new(name, 1)))
    }

    /// `[Λ^k g]`; `k = 0` gives the unit.
    pub fn lambda(&self, name: &str, k: u32) -> Result<K0Element, LambdaError> {
        if k == 0 {
            self.require_rank(name)?;
            return Ok(K0Element::unit());
        }
        let s = LambdaSymbol::new(name, k);
        self.check_symbol(&s)?;
        Ok(K0Element::symbol(s))
    }
}
