use std::collections::BTreeMap;

use super::{lambda_series, rank_e, K0Element, LambdaError, RingPresentation};

/// Ring homomorphism induced by sending each source generator to an
/// effective, rank-preserving combination of `[1]` and target generators.
///
/// `Λ^k g` goes to the `t^k` coefficient of `λ_t(f(g))`, so the map commutes
/// with λ_t by construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingMorphism {
    source: RingPresentation,
    target: RingPresentation,
    images: BTreeMap<String, K0Element>,
    /// `λ^k(f(g))` for `0 <= k <= rank g`.
    lambda_images: BTreeMap<String, Vec<K0Element>>,
}

impl RingMorphism {
    pub fn new(
        source: RingPresentation,
        target: RingPresentation,
        images: BTreeMap<String, K0Element>,
    ) -> Result<Self, LambdaError> {
        let mut lambda_images = BTreeMap::new();
        for g in source.generators() {
            let img = images.get(&g.name).ok_or_else(|| {
                LambdaError::Morphism(format!("no image for generator `{}`", g.name))
            })?;
            target.check_element(img)?;
            if !img.is_effective() {
                return Err(LambdaError::Morphism(format!(
                    "image of `{}` must be effective, got {img}",
                    g.name
                )));
            }
            let r = rank_e(&target, img)?;
            if r != g.rank as i64 {
                return Err(LambdaError::Morphism(format!(
                    "image of `{}` has rank {r}, expected {}",
                    g.name, g.rank
                )));
            }
            let series = lambda_series(&target, img, g.rank as usize)?;
            lambda_images.insert(g.name.clone(), series.into_coeffs());
        }
        if let Some(extra) = images.keys().find(|k| source.rank(k).is_none()) {
            return Err(LambdaError::Morphism(format!(
                "image given for unknown generator `{extra}`"
            )));
        }
        Ok(RingMorphism {
            source,
            target,
            images,
            lambda_images,
        })
    }

    /// Identity on a presentation.
    pub fn identity(pres: &RingPresentation) -> Self {
        let images = pres
            .generators()
            .iter()
            .map(|g| {
                (
                    g.name.clone(),
                    pres.generator(&g.name).expect("own generator"),
                )
            })
            .collect();
        Self::new(pres.clone(), pres.clone(), images).expect("identity is valid")
    }

    pub fn source(&self) -> &RingPresentation {
        &self.source
    }

    pub fn target(&self) -> &RingPresentation {
        &self.target
    }

    pub fn image_of(&self, generator: &str) -> Option<&K0Element> {
        self.images.get(generator)
    }

    pub fn apply(&self, x: &K0Element) -> Result<K0Element, LambdaError> {
        self.source.check_element(x)?;
        Ok(x.poly().eval_with(
            |n| K0Element::from_bigint(n.clone()),
            |s| self.lambda_images[&*s.generator][s.degree as usize].clone(),
        ))
    }
}

/// Applies `f` to `x`; errors when `x` is not over the source presentation.
pub fn apply_morphism(f: &RingMorphism, x: &K0Element) -> Result<K0Element, LambdaError> {
    f.apply(x)
}
