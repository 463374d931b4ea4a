use std::collections::VecDeque;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::chain::StabChain;
use super::group::FinGroup;
use super::perm::Perm;
use crate::error::{Error, Result};

/// Sources up to this order are checked exhaustively.
pub const HOM_EXHAUSTIVE_LIMIT: u64 = 10_000;
pub const HOM_SAMPLE_PAIRS: u64 = 100_000;
pub const HOM_SAMPLE_SEED: u64 = 0xB1A5E;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HomVerify {
    /// Exhaustive up to [`HOM_EXHAUSTIVE_LIMIT`], sampled above.
    Auto,
    Exhaustive,
    Sampled { pairs: u64, seed: u64 },
}

/// How a homomorphism was verified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HomCheck {
    /// Every product `x * s` with `x` in the source and `s` a generator was
    /// checked; this covers all pairs.
    Exhaustive,
    Sampled { pairs: u64, seed: u64 },
}

/// Homomorphism given by generator images.
///
/// Evaluation sifts through the stabilizer chain of the graph
/// `{(x, phi(x))}` acting on the disjoint union of both domains.
#[derive(Clone, Debug)]
pub struct GroupHom {
    source: FinGroup,
    target: FinGroup,
    gen_images: Vec<Perm>,
    check: HomCheck,
    graph: Arc<StabChain>,
}

fn graph_perm(x: &Perm, y: &Perm) -> Perm {
    let d1 = x.degree();
    let mut images: Vec<u32> = x.images().to_vec();
    images.extend(y.images().iter().map(|&j| j + d1 as u32));
    Perm::from_images_unchecked(images)
}

pub fn hom_from_images(
    source: &FinGroup,
    target: &FinGroup,
    gen_images: Vec<Perm>,
    verify: HomVerify,
) -> Result<GroupHom> {
    if gen_images.len() != source.generators().len() {
        return Err(Error::Precondition(format!(
            "{} generator images for {} source generators",
            gen_images.len(),
            source.generators().len()
        )));
    }
    for (index, img) in gen_images.iter().enumerate() {
        if img.degree() != target.degree() {
            return Err(Error::DegreeMismatch {
                expected: target.degree(),
                found: img.degree(),
            });
        }
        if !target.contains(img) {
            return Err(Error::ImageNotInTarget { index });
        }
    }
    let d1 = source.degree();
    let d2 = target.degree();
    let graph_gens: Vec<Perm> = source
        .generators()
        .iter()
        .zip(&gen_images)
        .map(|(x, y)| graph_perm(x, y))
        .collect();

    let exhaustive = match verify {
        HomVerify::Auto => source.order() <= HOM_EXHAUSTIVE_LIMIT,
        HomVerify::Exhaustive => true,
        HomVerify::Sampled { .. } => false,
    };
    if exhaustive {
        cayley_check(source, &gen_images, d2)?;
    }

    let graph = StabChain::from_generators(d1 + d2, &graph_gens);
    if graph.order() != source.order() {
        return Err(Error::NotAHomomorphism(format!(
            "graph of the map has order {} but the source has order {}",
            graph.order(),
            source.order()
        )));
    }
    let mut hom = GroupHom {
        source: source.clone(),
        target: target.clone(),
        gen_images,
        check: HomCheck::Exhaustive,
        graph: Arc::new(graph),
    };
    if !exhaustive {
        let (pairs, seed) = match verify {
            HomVerify::Sampled { pairs, seed } => (pairs, seed),
            _ => (HOM_SAMPLE_PAIRS, HOM_SAMPLE_SEED),
        };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..pairs {
            let x = source.random_element(&mut rng);
            let y = source.random_element(&mut rng);
            let lhs = hom.eval(&x.compose(&y));
            let rhs = hom.eval(&x).compose(&hom.eval(&y));
            if lhs != rhs {
                return Err(Error::NotAHomomorphism(format!("pair ({x}, {y})")));
            }
        }
        hom.check = HomCheck::Sampled { pairs, seed };
    }
    Ok(hom)
}

/// Walks the Cayley graph of the source and checks `phi(x s) = phi(x) phi(s)`
/// on every edge.
fn cayley_check(source: &FinGroup, gen_images: &[Perm], d2: usize) -> Result<()> {
    let n = source.order() as usize;
    let mut image: Vec<Option<Perm>> = vec![None; n];
    let id = source.identity();
    let r0 = source.rank(&id).unwrap() as usize;
    image[r0] = Some(Perm::identity(d2));
    let mut queue = VecDeque::from([(id, r0)]);
    while let Some((x, rx)) = queue.pop_front() {
        let fx = image[rx].clone().unwrap();
        for (s, fs) in source.generators().iter().zip(gen_images) {
            let y = x.compose(s);
            let ry = source.rank(&y).unwrap() as usize;
            let fy = fx.compose(fs);
            match &image[ry] {
                None => {
                    image[ry] = Some(fy);
                    queue.push_back((y, ry));
                }
                Some(prev) if *prev != fy => {
                    return Err(Error::NotAHomomorphism(format!("pair ({x}, {s})")));
                }
                Some(_) => {}
            }
        }
    }
    Ok(())
}

impl GroupHom {
    pub fn source(&self) -> &FinGroup {
        &self.source
    }

    pub fn target(&self) -> &FinGroup {
        &self.target
    }

    pub fn gen_images(&self) -> &[Perm] {
        &self.gen_images
    }

    pub fn check(&self) -> HomCheck {
        self.check
    }

    /// Image of a source element. Panics when `x` is not in the source.
    pub fn eval(&self, x: &Perm) -> Perm {
        self.try_eval(x).expect("element lies in the source group")
    }

    pub fn try_eval(&self, x: &Perm) -> Option<Perm> {
        let d1 = self.source.degree();
        let d2 = self.target.degree();
        let mut cur = x.clone();
        let mut acc = Perm::identity(d2);
        for level in &self.graph.levels {
            let k = level.index_of(cur.apply(level.base))?;
            let inv = level.reps_inv[k].restrict(0, d1);
            cur = inv.compose(&cur);
            acc = acc.compose(&level.reps[k].restrict(d1, d2));
        }
        cur.is_identity().then_some(acc)
    }

    pub fn image(&self) -> FinGroup {
        FinGroup::generated(self.gen_images.clone(), self.target.degree())
    }

    pub fn image_of(&self, sub: &FinGroup) -> FinGroup {
        let gens = sub.generators().iter().map(|g| self.eval(g)).collect();
        FinGroup::generated(gens, self.target.degree())
    }

    pub fn kernel(&self) -> FinGroup {
        self.source.filter_subgroup(|x| self.eval(x).is_identity())
    }

    pub fn is_injective(&self) -> bool {
        self.image().order() == self.source.order()
    }

    pub fn is_surjective(&self) -> bool {
        self.image().order() == self.target.order()
    }

    /// `other ∘ self`
    pub fn then(&self, other: &GroupHom) -> Result<GroupHom> {
        let images = self.gen_images.iter().map(|y| other.eval(y)).collect();
        hom_from_images(&self.source, &other.target, images, HomVerify::Auto)
    }

    /// Restriction to a subgroup of the source.
    pub fn restrict_to(&self, sub: &FinGroup) -> Result<GroupHom> {
        let images = sub.generators().iter().map(|g| self.eval(g)).collect();
        hom_from_images(sub, &self.target, images, HomVerify::Auto)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: usize) -> FinGroup {
        FinGroup::cyclic(n)
    }

    #[test]
    fn identity_on_c6() {
        let g = c(6);
        let h = hom_from_images(&g, &g, g.generators().to_vec(), HomVerify::Auto).unwrap();
        assert_eq!(h.check(), HomCheck::Exhaustive);
        for x in g.elements() {
            assert_eq!(h.eval(&x), x);
        }
    }

    #[test]
    fn c4_onto_c2() {
        let (c4, c2) = (c(4), c(2));
        let h = hom_from_images(&c4, &c2, c2.generators().to_vec(), HomVerify::Auto).unwrap();
        assert!(h.is_surjective());
        assert_eq!(h.kernel().order(), 2);
    }

    #[test]
    fn c2_to_c3_is_rejected() {
        let (c2, c3) = (c(2), c(3));
        let err = hom_from_images(&c2, &c3, c3.generators().to_vec(), HomVerify::Auto).unwrap_err();
        assert!(matches!(err, Error::NotAHomomorphism(_)));
        let err = hom_from_images(
            &c2,
            &c3,
            c3.generators().to_vec(),
            HomVerify::Sampled { pairs: 100, seed: 1 },
        )
        .unwrap_err();
        assert!(matches!(err, Error::NotAHomomorphism(_)));
    }

    #[test]
    fn image_outside_target_is_rejected() {
        let s3 = FinGroup::symmetric(3);
        let c3 = FinGroup::from_generators(vec![Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap()], 3).unwrap();
        let err = hom_from_images(&c(2), &c3, vec![s3.generators()[0].clone()], HomVerify::Auto).unwrap_err();
        assert!(matches!(err, Error::ImageNotInTarget { index: 0 }));
    }

    #[test]
    fn sign_map_on_s4() {
        let s4 = FinGroup::symmetric(4);
        let c2 = c(2);
        let images: Vec<Perm> = s4
            .generators()
            .iter()
            .map(|g| {
                let odd = g.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 1;
                if odd { c2.generators()[0].clone() } else { Perm::identity(2) }
            })
            .collect();
        let h = hom_from_images(&s4, &c2, images, HomVerify::Auto).unwrap();
        assert_eq!(h.kernel(), FinGroup::alternating(4));
    }
}
