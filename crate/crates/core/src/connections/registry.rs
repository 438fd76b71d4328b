//! Classes of connections in a free presentation of `K₀(conn)`.
//!
//! Each registered connection becomes a generator of its dimension. Two
//! connections get the same class only when
//! - they are rank one and differ by a logarithmic form (the witness is a
//!   horizontal section of the difference), or
//! - the connection was supplied as the middle term of an exact triple, in
//!   which case its class is `[U] + [W]`.
//!
//! `Λ^k` of a generator is realized on demand as `conn_exterior(C, k)`.

use std::sync::Mutex;

use num_traits::{One, Zero};

use super::{conn_exterior, ConnError, ExactTriple, MatrixConnection};
use crate::cartier::{is_logarithmic, OneForm};
use crate::chern::{chern_class, total_class};
use crate::lambda_ring::{Generator, K0Element, LambdaSymbol, RingPresentation};

#[derive(Default)]
struct Inner {
    pres: RingPresentation,
    /// Registered connections with their classes, in registration order.
    classes: Vec<(MatrixConnection, K0Element)>,
    generators: Vec<(String, MatrixConnection)>,
}

impl Inner {
    fn lookup(&self, c: &MatrixConnection) -> Option<K0Element> {
        self.classes
            .iter()
            .find(|(d, _)| d == c)
            .map(|(_, x)| x.clone())
    }

    fn class_of(&mut self, c: &MatrixConnection) -> Result<K0Element, ConnError> {
        if let Some(x) = self.lookup(c) {
            return Ok(x);
        }
        let class = match self.rank1_identification(c) {
            Some(x) => x,
            None => self.fresh_generator(c)?,
        };
        self.classes.push((c.clone(), class.clone()));
        Ok(class)
    }

    fn rank1_identification(&self, c: &MatrixConnection) -> Option<K0Element> {
        if c.dim() != 1 {
            return None;
        }
        let h = c.matrix().get(0, 0);
        if is_logarithmic(&OneForm(h.clone())).is_some() {
            return Some(K0Element::one());
        }
        self.generators.iter().find_map(|(name, g)| {
            if g.dim() != 1 || g.modulus() != c.modulus() {
                return None;
            }
            let diff = h - g.matrix().get(0, 0);
            is_logarithmic(&OneForm(diff))
                .map(|_| K0Element::symbol(LambdaSymbol::new(name.clone(), 1)))
        })
    }

    fn fresh_generator(&mut self, c: &MatrixConnection) -> Result<K0Element, ConnError> {
        let name = format!("C{}", self.generators.len() + 1);
        self.pres.push(Generator {
            name: name.clone(),
            rank: c.dim() as u32,
        })?;
        self.generators.push((name.clone(), c.clone()));
        Ok(K0Element::symbol(LambdaSymbol::new(name, 1)))
    }
}

/// Append-only registry; registering the same connection twice returns the
/// same class.
#[derive(Default)]
pub struct ConnRegistry {
    inner: Mutex<Inner>,
}

impl ConnRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    fn lock(&self) -> std::sync::MutexGuard<'_, Inner> {
        self.inner.lock().unwrap_or_else(|e| e.into_inner())
    }

    /// Snapshot of the current presentation.
    pub fn presentation(&self) -> RingPresentation {
        self.lock().pres.clone()
    }

    pub fn conn_class(&self, c: &MatrixConnection) -> Result<K0Element, ConnError> {
        self.lock().class_of(c)
    }

    /// Registers `V` from `0 → U → V → W → 0` with class `[U] + [W]`.
    /// A `V` registered earlier keeps its earlier class.
    pub fn register_triple(&self, t: &ExactTriple) -> Result<K0Element, ConnError> {
        let mut inner = self.lock();
        let v = t.total();
        if let Some(x) = inner.lookup(&v) {
            return Ok(x);
        }
        let class = inner.class_of(&t.sub())? + inner.class_of(&t.quotient())?;
        inner.classes.push((v, class.clone()));
        Ok(class)
    }

    /// The connection a λ-symbol stands for.
    pub fn materialize(&self, s: &LambdaSymbol) -> Result<Option<MatrixConnection>, ConnError> {
        let inner = self.lock();
        match inner.generators.iter().find(|(n, _)| **n == *s.generator) {
            Some((_, c)) => Ok(Some(conn_exterior(c, s.degree as usize)?)),
            None => Ok(None),
        }
    }

    pub fn conn_chern(&self, c: &MatrixConnection, l: usize) -> Result<K0Element, ConnError> {
        let x = self.conn_class(c)?;
        let pres = self.presentation();
        Ok(chern_class(&pres, &x, l)?)
    }

    /// `φ(ω) = c(K, ρ_ω)`, the total Chern class of the rank-one connection.
    pub fn phi_class(&self, w: &OneForm) -> Result<K0Element, ConnError> {
        let x = self.conn_class(&MatrixConnection::from_form(w))?;
        let pres = self.presentation();
        let total = total_class(&pres, &x)?;
        debug_assert!(!total.is_zero());
        Ok(total)
    }
}
