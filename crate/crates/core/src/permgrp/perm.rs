use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::GroupError;

/// Largest supported degree. Points are stored as `u16`.
pub const MAX_DEGREE: usize = u16::MAX as usize;

/// A bijection of `{0, .., n-1}` stored by its image table.
///
/// Composition follows the usual functional convention: `p.compose(&q)` is
/// `p ∘ q`, i.e. `q` is applied first. [`Permutation::then`] is the reverse
/// order and is what loop concatenation uses.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Box<[u16]>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        assert!(degree <= MAX_DEGREE, "degree {degree} too large");
        Permutation {
            images: (0..degree as u16).collect(),
        }
    }

    pub fn from_images(images: &[usize]) -> Result<Self, GroupError> {
        let n = images.len();
        if n > MAX_DEGREE {
            return Err(GroupError::DegreeTooLarge(n));
        }
        let mut seen = vec![false; n];
        for &i in images {
            if i >= n || seen[i] {
                return Err(GroupError::NotABijection(images.to_vec()));
            }
            seen[i] = true;
        }
        Ok(Permutation {
            images: images.iter().map(|&i| i as u16).collect(),
        })
    }

    /// Builds a permutation from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self, GroupError> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                if a >= degree || touched[a] {
                    return Err(GroupError::NotABijection(cycle.to_vec()));
                }
                touched[a] = true;
                images[a] = cycle[(k + 1) % cycle.len()];
            }
        }
        Self::from_images(&images)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i as usize).collect()
    }

    /// `self ∘ other`: apply `other`, then `self`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other.images.iter().map(|&i| self.images[i as usize]).collect(),
        }
    }

    /// Apply `self`, then `other`.
    #[inline]
    pub fn then(&self, other: &Permutation) -> Permutation {
        other.compose(self)
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u16; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u16;
        }
        Permutation { images: inv.into() }
    }

    pub fn pow(&self, mut k: i64) -> Permutation {
        let mut base = if k < 0 {
            k = -k;
            self.inverse()
        } else {
            self.clone()
        };
        let mut acc = Permutation::identity(self.degree());
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            k >>= 1;
        }
        acc
    }

    /// `g ∘ self ∘ g⁻¹`
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        g.compose(self).compose(&g.inverse())
    }

    /// `self⁻¹ ∘ other⁻¹ ∘ self ∘ other`
    pub fn commutator(&self, other: &Permutation) -> Permutation {
        self.inverse()
            .compose(&other.inverse())
            .compose(self)
            .compose(other)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        (0..self.degree()).all(|i| self.image(other.image(i)) == other.image(self.image(i)))
    }

    /// Nontrivial cycles, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut j = self.image(start);
            while j != start {
                seen[j] = true;
                cycle.push(j);
                j = self.image(j);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| lcm(acc, c.len() as u64))
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.degree()).filter(|&i| self.image(i) == i).collect()
    }

    /// Image of a point set, sorted.
    pub fn image_of_set(&self, set: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = set.iter().map(|&i| self.image(i)).collect();
        out.sort_unstable();
        out
    }

    /// Transport along a bijection of the underlying points: returns
    /// `relabel ∘ self ∘ relabel⁻¹`, where `relabel` sends old points to new ones.
    pub fn relabel(&self, relabel: &Permutation) -> Permutation {
        self.conjugate_by(relabel)
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.images().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let images = Vec::<usize>::deserialize(d)?;
        Permutation::from_images(&images).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_applies_right_factor_first() {
        let p = Permutation::from_cycles(3, &[&[0, 1]]).unwrap();
        let q = Permutation::from_cycles(3, &[&[1, 2]]).unwrap();
        // q first: 1 -> 2, then p fixes 2
        assert_eq!(p.compose(&q).image(1), 2);
        assert_eq!(p.then(&q).image(1), 0);
        assert_eq!(p.compose(&q).order(), 3);
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(&[0, 0, 1]).is_err());
        assert!(Permutation::from_images(&[0, 3, 1]).is_err());
        assert!(Permutation::from_cycles(4, &[&[0, 1], &[1, 2]]).is_err());
    }

    #[test]
    fn power_and_inverse() {
        let c = Permutation::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap();
        assert!(c.pow(5).is_identity());
        assert_eq!(c.pow(-1), c.inverse());
        assert_eq!(c.pow(2).compose(&c.pow(3)), Permutation::identity(5));
    }

    #[test]
    fn display_cycles() {
        let p = Permutation::from_cycles(6, &[&[0, 2], &[3, 5, 4]]).unwrap();
        assert_eq!(p.to_string(), "(0 2)(3 5 4)");
        assert_eq!(p.order(), 6);
    }
}
