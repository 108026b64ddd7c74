//! Deterministic Schreier–Sims.
//!
//! Points are acted on from the right: `b^g = g.image(b)` and the product
//! `x·y` means "`x` then `y`".

use super::perm::Permutation;

#[derive(Clone, Debug)]
struct Level {
    base_point: usize,
    /// `transversal[b]` maps the base point to `b`.
    transversal: Vec<Option<Permutation>>,
    orbit: Vec<usize>,
}

/// Base and strong generating set of a permutation group.
#[derive(Clone, Debug)]
pub struct Bsgs {
    degree: usize,
    base: Vec<usize>,
    strong: Vec<Permutation>,
    levels: Vec<Level>,
}

impl Bsgs {
    pub fn new(degree: usize, generators: &[Permutation]) -> Bsgs {
        let mut bsgs = Bsgs {
            degree,
            base: Vec::new(),
            strong: Vec::new(),
            levels: Vec::new(),
        };
        for g in generators {
            if g.is_identity() {
                continue;
            }
            bsgs.strong.push(g.clone());
            if bsgs.base.iter().all(|&b| g.image(b) == b) {
                let moved = (0..degree).find(|&p| g.image(p) != p).unwrap();
                bsgs.base.push(moved);
            }
        }
        for i in 0..bsgs.base.len() {
            let lvl = bsgs.build_level(i);
            bsgs.levels.push(lvl);
        }
        bsgs.complete();
        bsgs
    }

    fn level_generators(&self, i: usize) -> Vec<&Permutation> {
        self.strong
            .iter()
            .filter(|s| self.base[..i].iter().all(|&b| s.image(b) == b))
            .collect()
    }

    fn build_level(&self, i: usize) -> Level {
        let beta = self.base[i];
        let gens = self.level_generators(i);
        let mut transversal: Vec<Option<Permutation>> = vec![None; self.degree];
        transversal[beta] = Some(Permutation::identity(self.degree));
        let mut orbit = vec![beta];
        let mut k = 0;
        while k < orbit.len() {
            let b = orbit[k];
            let u = transversal[b].clone().unwrap();
            for s in &gens {
                let c = s.image(b);
                if transversal[c].is_none() {
                    transversal[c] = Some(u.then(s));
                    orbit.push(c);
                }
            }
            k += 1;
        }
        Level {
            base_point: beta,
            transversal,
            orbit,
        }
    }

    /// Sifts `h` starting at `from`. Returns the residue and the level at
    /// which sifting stopped (`levels.len()` if it went all the way down).
    fn sift_from(&self, mut h: Permutation, from: usize) -> (Permutation, usize) {
        for (l, lvl) in self.levels.iter().enumerate().skip(from) {
            let b = h.image(lvl.base_point);
            match &lvl.transversal[b] {
                None => return (h, l),
                Some(u) => h = h.then(&u.inverse()),
            }
        }
        (h, self.levels.len())
    }

    fn complete(&mut self) {
        if self.levels.is_empty() {
            return;
        }
        let mut i = self.levels.len() as isize - 1;
        'outer: while i >= 0 {
            let iu = i as usize;
            let gens: Vec<Permutation> = self.level_generators(iu).into_iter().cloned().collect();
            let orbit = self.levels[iu].orbit.clone();
            for &b in &orbit {
                let ub = self.levels[iu].transversal[b].clone().unwrap();
                for s in &gens {
                    let c = s.image(b);
                    let uc = self.levels[iu].transversal[c].clone().unwrap();
                    let schreier = ub.then(s).then(&uc.inverse());
                    let (residue, j) = self.sift_from(schreier, iu + 1);
                    if residue.is_identity() {
                        continue;
                    }
                    if j == self.levels.len() {
                        let moved = (0..self.degree)
                            .find(|&p| residue.image(p) != p)
                            .unwrap();
                        self.base.push(moved);
                        self.strong.push(residue);
                        let lvl = self.build_level(j);
                        self.levels.push(lvl);
                    } else {
                        self.strong.push(residue);
                    }
                    for l in (iu + 1)..=j {
                        self.levels[l] = self.build_level(l);
                    }
                    i = j as isize;
                    continue 'outer;
                }
            }
            i -= 1;
        }
    }

    pub fn order(&self) -> u128 {
        self.levels
            .iter()
            .map(|l| l.orbit.len() as u128)
            .product()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (residue, _) = self.sift_from(g.clone(), 0);
        residue.is_identity()
    }

    pub fn base(&self) -> &[usize] {
        &self.base
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        &self.strong
    }
}
