//! Deterministic Schreier–Sims.
//!
//! Levels are processed bottom-up; every Schreier generator of a level is
//! sifted through the levels below it, and a non-trivial residue is installed
//! as a new strong generator before the sweep resumes at the level where the
//! residue fell out. Transversal elements are never replaced once created, so
//! a pair that sifted to the identity stays sifted.

use rand::Rng;

use super::perm::Perm;

const NONE: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub(crate) struct Level {
    pub base: usize,
    pub gens: Vec<Perm>,
    pub orbit: Vec<u32>,
    /// point -> index into `orbit`, or `NONE`
    pub pos: Vec<u32>,
    /// `reps[k](base) == orbit[k]`
    pub reps: Vec<Perm>,
    pub reps_inv: Vec<Perm>,
    /// number of orbit points whose Schreier generator with `gens[i]` was sifted
    checked: Vec<usize>,
}

impl Level {
    fn new(base: usize, degree: usize) -> Self {
        let mut pos = vec![NONE; degree];
        pos[base] = 0;
        Level {
            base,
            gens: Vec::new(),
            orbit: vec![base as u32],
            pos,
            reps: vec![Perm::identity(degree)],
            reps_inv: vec![Perm::identity(degree)],
            checked: Vec::new(),
        }
    }

    fn push_gen(&mut self, g: Perm) {
        self.gens.push(g);
        self.checked.push(0);
        self.extend_orbit();
    }

    fn extend_orbit(&mut self) {
        let mut k = 0;
        while k < self.orbit.len() {
            let p = self.orbit[k] as usize;
            for gi in 0..self.gens.len() {
                let q = self.gens[gi].apply(p);
                if self.pos[q] == NONE {
                    let rep = self.gens[gi].compose(&self.reps[k]);
                    self.pos[q] = self.orbit.len() as u32;
                    self.orbit.push(q as u32);
                    self.reps_inv.push(rep.inverse());
                    self.reps.push(rep);
                }
            }
            k += 1;
        }
    }

    #[inline]
    pub fn index_of(&self, point: usize) -> Option<usize> {
        match self.pos[point] {
            NONE => None,
            k => Some(k as usize),
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct StabChain {
    pub degree: usize,
    pub levels: Vec<Level>,
}

impl StabChain {
    pub fn new(degree: usize) -> Self {
        StabChain {
            degree,
            levels: Vec::new(),
        }
    }

    pub fn from_generators(degree: usize, gens: &[Perm]) -> Self {
        let mut chain = StabChain::new(degree);
        for g in gens {
            chain.add_generator(g);
        }
        chain
    }

    pub fn order(&self) -> u64 {
        self.levels.iter().fold(1u64, |acc, l| {
            acc.checked_mul(l.orbit.len() as u64)
                .expect("group order overflows u64")
        })
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    /// Sifts `g` starting at level `from`; returns the residue and the level
    /// at which sifting stopped (`levels.len()` when it went all the way).
    pub fn strip(&self, mut g: Perm, from: usize) -> (Perm, usize) {
        for (l, level) in self.levels.iter().enumerate().skip(from) {
            match level.index_of(g.apply(level.base)) {
                None => return (g, l),
                Some(k) => g = level.reps_inv[k].compose(&g),
            }
        }
        (g, self.levels.len())
    }

    pub fn contains(&self, g: &Perm) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (h, l) = self.strip(g.clone(), 0);
        l == self.levels.len() && h.is_identity()
    }

    /// Adds a generator; returns false when it was already a member.
    pub fn add_generator(&mut self, g: &Perm) -> bool {
        let (h, j) = self.strip(g.clone(), 0);
        if h.is_identity() {
            return false;
        }
        self.install(h, 0, j);
        self.complete(j);
        true
    }

    fn install(&mut self, h: Perm, from: usize, to: usize) {
        if to == self.levels.len() {
            let b = h
                .smallest_moved_point()
                .expect("non-identity residue moves a point");
            self.levels.push(Level::new(b, self.degree));
        }
        for l in from..=to {
            self.levels[l].push_gen(h.clone());
        }
    }

    fn complete(&mut self, start: usize) {
        let mut i = start as isize;
        'outer: while i >= 0 {
            let l = i as usize;
            let mut gi = 0;
            while gi < self.levels[l].gens.len() {
                while self.levels[l].checked[gi] < self.levels[l].orbit.len() {
                    let level = &self.levels[l];
                    let k = level.checked[gi];
                    let p = level.orbit[k] as usize;
                    let s = &level.gens[gi];
                    let target = level.pos[s.apply(p)] as usize;
                    let schreier = level.reps_inv[target].compose(&s.compose(&level.reps[k]));
                    self.levels[l].checked[gi] += 1;
                    if schreier.is_identity() {
                        continue;
                    }
                    let (h, j) = self.strip(schreier, l + 1);
                    if !h.is_identity() {
                        self.install(h, l + 1, j);
                        i = j as isize;
                        continue 'outer;
                    }
                }
                gi += 1;
            }
            i -= 1;
        }
    }

    /// Mixed-radix rank of a member (transversal indices, first level most
    /// significant), or `None` for non-members.
    pub fn rank(&self, g: &Perm) -> Option<u64> {
        if g.degree() != self.degree {
            return None;
        }
        let mut g = g.clone();
        let mut rank = 0u64;
        for level in &self.levels {
            let k = level.index_of(g.apply(level.base))?;
            rank = rank * level.orbit.len() as u64 + k as u64;
            g = level.reps_inv[k].compose(&g);
        }
        g.is_identity().then_some(rank)
    }

    pub fn unrank(&self, mut rank: u64) -> Perm {
        let mut idx = vec![0usize; self.levels.len()];
        for (l, level) in self.levels.iter().enumerate().rev() {
            let m = level.orbit.len() as u64;
            idx[l] = (rank % m) as usize;
            rank /= m;
        }
        let mut g = Perm::identity(self.degree);
        for (l, level) in self.levels.iter().enumerate() {
            g = g.compose(&level.reps[idx[l]]);
        }
        g
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Perm {
        let mut g = Perm::identity(self.degree);
        for level in &self.levels {
            let k = rng.random_range(0..level.orbit.len());
            g = g.compose(&level.reps[k]);
        }
        g
    }

    /// All elements paired with their mixed-radix rank. At every level the
    /// identity coset comes first and the remaining cosets follow in order of
    /// base image, so the identity is always element 0.
    pub fn elements_lex(&self) -> Vec<(Perm, u64)> {
        let mut out = Vec::with_capacity(self.order() as usize);
        let prefix = Perm::identity(self.degree);
        self.lex_dfs(0, prefix, 0, &mut out);
        out
    }

    fn lex_dfs(&self, l: usize, prefix: Perm, rank: u64, out: &mut Vec<(Perm, u64)>) {
        if l == self.levels.len() {
            out.push((prefix, rank));
            return;
        }
        let level = &self.levels[l];
        let mut order: Vec<usize> = (0..level.orbit.len()).collect();
        order[1..].sort_by_key(|&k| prefix.apply(level.orbit[k] as usize));
        let m = level.orbit.len() as u64;
        for k in order {
            let next = prefix.compose(&level.reps[k]);
            self.lex_dfs(l + 1, next, rank * m + k as u64, out);
        }
    }

    /// Strong generating set (union of level generators, deduplicated).
    pub fn strong_generators(&self) -> Vec<Perm> {
        let mut out: Vec<Perm> = Vec::new();
        for level in &self.levels {
            for g in &level.gens {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(n: usize) -> Vec<Perm> {
        let mut cyc: Vec<usize> = (0..n).collect();
        cyc.rotate_left(1);
        vec![
            Perm::from_cycles(n, &[&[0, 1]]).unwrap(),
            Perm::from_usize(&cyc).unwrap(),
        ]
    }

    #[test]
    fn symmetric_group_orders() {
        let mut fact = 1u64;
        for n in 2..9 {
            fact *= n as u64;
            let chain = StabChain::from_generators(n, &sym(n));
            assert_eq!(chain.order(), fact, "S_{n}");
        }
    }

    #[test]
    fn rank_unrank_roundtrip() {
        let chain = StabChain::from_generators(5, &sym(5));
        for r in 0..chain.order() {
            let g = chain.unrank(r);
            assert_eq!(chain.rank(&g), Some(r));
        }
    }

    #[test]
    fn lex_order_starts_at_identity() {
        // first generator's smallest moved point is not the smallest in its orbit
        let gens = vec![
            Perm::from_cycles(5, &[&[1, 4], &[2, 3]]).unwrap(),
            Perm::from_cycles(5, &[&[1, 2], &[3, 4]]).unwrap(),
            Perm::from_cycles(5, &[&[0, 4], &[2, 3]]).unwrap(),
        ];
        for gens in [sym(5), gens] {
            let chain = StabChain::from_generators(5, &gens);
            let elems = chain.elements_lex();
            assert!(elems[0].0.is_identity());
            assert_eq!(elems.len() as u64, chain.order());
            for (g, r) in &elems {
                assert_eq!(chain.rank(g), Some(*r));
            }
        }
    }
}
