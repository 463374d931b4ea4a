use crate::error::{Error, Result};
use crate::perm_core::{quotient, FinGroup};
use crate::search::subgroups::{solvable_subgroups, OrderFilter, SUBGROUP_LIMIT};

/// A subgroup `C` with `G = K ⋊ C`, or `None` when no complement exists.
///
/// Cyclic `G` is handled directly; otherwise the solvable subgroup classes
/// of order `[G : K]` are scanned, which requires `G/K` to be solvable.
pub fn complement(g: &FinGroup, k: &FinGroup) -> Result<Option<FinGroup>> {
    if !k.is_normal_in(g) {
        return Err(Error::NotNormal);
    }
    let index = g.order() / k.order();
    if index == 1 {
        return Ok(Some(FinGroup::trivial(g.degree())));
    }
    if let Some(gen) = cyclic_generator(g) {
        // the only subgroup of order [G:K] is ⟨gen^|K|⟩
        let c = g.subgroup(vec![gen.pow(k.order())])?;
        let ok = crate::perm_core::perm::gcd(k.order(), index) == 1;
        return Ok(ok.then_some(c));
    }
    if g.order() > SUBGROUP_LIMIT {
        return Err(Error::size_limit("complement search", SUBGROUP_LIMIT, g.order()));
    }
    let (q, _) = quotient(g, k)?;
    if !q.is_solvable() {
        return Err(Error::Precondition(
            "complement search needs a solvable quotient".into(),
        ));
    }
    let list = solvable_subgroups(g, OrderFilter::Equal(index))?;
    Ok(list
        .classes
        .into_iter()
        .map(|c| c.rep)
        .find(|c| c.intersection(k).is_trivial()))
}

/// A generator when `g` is cyclic.
fn cyclic_generator(g: &FinGroup) -> Option<crate::perm_core::Perm> {
    if !g.is_abelian() {
        return None;
    }
    if g.generators().len() == 1 {
        return Some(g.generators()[0].clone());
    }
    if g.order() > SUBGROUP_LIMIT {
        return None;
    }
    g.elements().into_iter().find(|x| x.order() == g.order())
}
