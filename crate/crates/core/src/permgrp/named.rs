//! Oracle constructions of concrete groups.

use serde::{Deserialize, Serialize};

use super::{GroupError, PermGroup, Permutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NamedGroup {
    C2xC2,
    S3,
    S4,
    C6,
    S3xC3,
    S3xC2,
    S3xS3,
    S3xS3xS3,
    S4xC2xC2,
    #[serde(rename = "S3xC2_sq")]
    S3xC2Sq,
    ASL2F3,
    #[serde(rename = "PGO4p3_model")]
    PGO4p3Model,
    #[serde(rename = "GO4p3_model")]
    GO4p3Model,
}

impl NamedGroup {
    pub const ALL: [NamedGroup; 13] = [
        NamedGroup::C2xC2,
        NamedGroup::S3,
        NamedGroup::S4,
        NamedGroup::C6,
        NamedGroup::S3xC3,
        NamedGroup::S3xC2,
        NamedGroup::S3xS3,
        NamedGroup::S3xS3xS3,
        NamedGroup::S4xC2xC2,
        NamedGroup::S3xC2Sq,
        NamedGroup::ASL2F3,
        NamedGroup::PGO4p3Model,
        NamedGroup::GO4p3Model,
    ];

    pub fn abstract_order(self) -> u128 {
        match self {
            NamedGroup::C2xC2 => 4,
            NamedGroup::S3 => 6,
            NamedGroup::S4 => 24,
            NamedGroup::C6 => 6,
            NamedGroup::S3xC3 => 18,
            NamedGroup::S3xC2 => 12,
            NamedGroup::S3xS3 => 36,
            NamedGroup::S3xS3xS3 => 216,
            NamedGroup::S4xC2xC2 => 96,
            NamedGroup::S3xC2Sq => 144,
            NamedGroup::ASL2F3 => 216,
            NamedGroup::PGO4p3Model => 576,
            NamedGroup::GO4p3Model => 1152,
        }
    }
}

pub fn named_group(name: NamedGroup) -> PermGroup {
    let dp = |parts: &[PermGroup]| direct_product(parts).expect("small direct product");
    match name {
        NamedGroup::C2xC2 => dp(&[cyclic(2), cyclic(2)]),
        NamedGroup::S3 => symmetric(3),
        NamedGroup::S4 => symmetric(4),
        NamedGroup::C6 => cyclic(6),
        NamedGroup::S3xC3 => dp(&[symmetric(3), cyclic(3)]),
        NamedGroup::S3xC2 => dp(&[symmetric(3), cyclic(2)]),
        NamedGroup::S3xS3 => dp(&[symmetric(3), symmetric(3)]),
        NamedGroup::S3xS3xS3 => dp(&[symmetric(3), symmetric(3), symmetric(3)]),
        NamedGroup::S4xC2xC2 => dp(&[symmetric(4), cyclic(2), cyclic(2)]),
        NamedGroup::S3xC2Sq => dp(&[symmetric(3), cyclic(2), symmetric(3), cyclic(2)]),
        NamedGroup::ASL2F3 => asl2_f3(),
        NamedGroup::PGO4p3Model => orthogonal_f3_model(OrthogonalAction::ProjectivePoints),
        NamedGroup::GO4p3Model => orthogonal_f3_model(OrthogonalAction::Vectors),
    }
}

/// Cyclic group of order `n` acting regularly on `n` points.
pub fn cyclic(n: usize) -> PermGroup {
    let gen = Permutation::from_images(&(0..n).map(|i| (i + 1) % n).collect::<Vec<_>>())
        .expect("cycle");
    PermGroup::new(n, vec![gen]).expect("cyclic group")
}

/// Symmetric group on `n` points.
pub fn symmetric(n: usize) -> PermGroup {
    if n < 2 {
        return PermGroup::trivial(n);
    }
    let t = Permutation::from_cycles(n, &[&[0, 1]]).expect("transposition");
    let c = Permutation::from_images(&(0..n).map(|i| (i + 1) % n).collect::<Vec<_>>())
        .expect("cycle");
    PermGroup::new(n, vec![t, c]).expect("symmetric group")
}

/// Direct product acting on the disjoint union of the factors' domains.
pub fn direct_product(factors: &[PermGroup]) -> Result<PermGroup, GroupError> {
    let degree: usize = factors.iter().map(|g| g.degree()).sum();
    let mut gens = Vec::new();
    let mut offset = 0;
    for g in factors {
        for s in g.generators() {
            let mut images: Vec<usize> = (0..degree).collect();
            for i in 0..g.degree() {
                images[offset + i] = offset + s.image(i);
            }
            gens.push(Permutation::from_images(&images)?);
        }
        offset += g.degree();
    }
    PermGroup::new(degree, gens)
}

/// ASL₂(F₃) acting on F₃², the point `(x, y)` having index `3x + y`.
pub fn asl2_f3() -> PermGroup {
    let affine = |m: [[usize; 2]; 2], t: [usize; 2]| {
        let images: Vec<usize> = (0..9)
            .map(|p| {
                let (x, y) = (p / 3, p % 3);
                let nx = (m[0][0] * x + m[0][1] * y + t[0]) % 3;
                let ny = (m[1][0] * x + m[1][1] * y + t[1]) % 3;
                3 * nx + ny
            })
            .collect();
        Permutation::from_images(&images).expect("affine bijection")
    };
    let id = [[1, 0], [0, 1]];
    let gens = vec![
        affine(id, [1, 0]),
        affine(id, [0, 1]),
        affine([[1, 1], [0, 1]], [0, 0]),
        affine([[0, 2], [1, 0]], [0, 0]),
    ];
    PermGroup::new(9, gens).expect("ASL2(F3)")
}

/// Domain for the orthogonal-group model over F₃.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrthogonalAction {
    /// The 80 nonzero vectors of F₃⁴; faithful for GO₄⁺(3).
    Vectors,
    /// The 40 points of P³(F₃); faithful for PGO₄⁺(3).
    ProjectivePoints,
}

fn vec_of(index: usize) -> [usize; 4] {
    [index / 27, (index / 9) % 3, (index / 3) % 3, index % 3]
}

fn index_of(v: [usize; 4]) -> usize {
    27 * v[0] + 9 * v[1] + 3 * v[2] + v[3]
}

fn polar(u: [usize; 4], v: [usize; 4]) -> usize {
    (u[0] * v[1] + u[1] * v[0] + u[2] * v[3] + u[3] * v[2]) % 3
}

fn quad(v: [usize; 4]) -> usize {
    (v[0] * v[1] + v[2] * v[3]) % 3
}

/// Matrices (as column lists) preserving `Q = x₀x₁ + x₂x₃` over F₃.
fn orthogonal_matrices() -> Vec<[[usize; 4]; 4]> {
    let basis: [[usize; 4]; 4] = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]];
    let candidates: Vec<[usize; 4]> = (1..81).map(vec_of).filter(|v| quad(*v) == 0).collect();
    let mut out = Vec::new();
    let mut cols: Vec<[usize; 4]> = Vec::new();
    fn search(
        k: usize,
        cols: &mut Vec<[usize; 4]>,
        candidates: &[[usize; 4]],
        basis: &[[usize; 4]; 4],
        out: &mut Vec<[[usize; 4]; 4]>,
    ) {
        if k == 4 {
            out.push([cols[0], cols[1], cols[2], cols[3]]);
            return;
        }
        for &c in candidates {
            if (0..k).all(|j| polar(cols[j], c) == polar(basis[j], basis[k])) {
                cols.push(c);
                search(k + 1, cols, candidates, basis, out);
                cols.pop();
            }
        }
    }
    search(0, &mut cols, &candidates, &basis, &mut out);
    out
}

fn apply(m: &[[usize; 4]; 4], v: [usize; 4]) -> [usize; 4] {
    let mut r = [0; 4];
    for (j, col) in m.iter().enumerate() {
        for i in 0..4 {
            r[i] += col[i] * v[j];
        }
    }
    r.map(|x| x % 3)
}

/// GO₄⁺(3) or PGO₄⁺(3), built from the quadratic form `x₀x₁ + x₂x₃` over F₃.
pub fn orthogonal_f3_model(action: OrthogonalAction) -> PermGroup {
    let mats = orthogonal_matrices();
    let nonzero: Vec<usize> = (1..81).collect();
    let perms: Vec<Permutation> = match action {
        OrthogonalAction::Vectors => {
            let pos = |v: [usize; 4]| index_of(v) - 1;
            mats.iter()
                .map(|m| {
                    let images: Vec<usize> =
                        nonzero.iter().map(|&i| pos(apply(m, vec_of(i)))).collect();
                    Permutation::from_images(&images).expect("linear bijection")
                })
                .collect()
        }
        OrthogonalAction::ProjectivePoints => {
            // representative: first nonzero coordinate equal to 1
            let normalize = |v: [usize; 4]| {
                let lead = *v.iter().find(|&&x| x != 0).unwrap();
                if lead == 1 {
                    v
                } else {
                    v.map(|x| (2 * x) % 3)
                }
            };
            let points: Vec<usize> = nonzero
                .iter()
                .copied()
                .filter(|&i| normalize(vec_of(i)) == vec_of(i))
                .collect();
            let pos = |v: [usize; 4]| {
                let i = index_of(normalize(v));
                points.iter().position(|&p| p == i).unwrap()
            };
            mats.iter()
                .map(|m| {
                    let images: Vec<usize> =
                        points.iter().map(|&i| pos(apply(m, vec_of(i)))).collect();
                    Permutation::from_images(&images).expect("projective bijection")
                })
                .collect()
        }
    };
    let degree = perms[0].degree();
    PermGroup::generated_by_all(degree, &perms).expect("orthogonal group")
}

/// One permutation representative of every group of order at most 12,
/// up to isomorphism, with a short name.
pub fn small_groups_up_to_12() -> Vec<(&'static str, PermGroup)> {
    let g = |n: usize, cycles: &[&[&[usize]]]| {
        let gens = cycles
            .iter()
            .map(|c| Permutation::from_cycles(n, c).unwrap())
            .collect();
        PermGroup::new(n, gens).unwrap()
    };
    let dp = |parts: &[PermGroup]| direct_product(parts).unwrap();
    let q8 = {
        let i = Permutation::from_images(&[2, 3, 1, 0, 6, 7, 5, 4]).unwrap();
        let j = Permutation::from_images(&[4, 5, 7, 6, 1, 0, 2, 3]).unwrap();
        PermGroup::new(8, vec![i, j]).unwrap()
    };
    vec![
        ("C1", PermGroup::trivial(1)),
        ("C2", cyclic(2)),
        ("C3", cyclic(3)),
        ("C4", cyclic(4)),
        ("C2xC2", dp(&[cyclic(2), cyclic(2)])),
        ("C5", cyclic(5)),
        ("C6", cyclic(6)),
        ("S3", symmetric(3)),
        ("C7", cyclic(7)),
        ("C8", cyclic(8)),
        ("C4xC2", dp(&[cyclic(4), cyclic(2)])),
        ("C2^3", dp(&[cyclic(2), cyclic(2), cyclic(2)])),
        ("D8", g(4, &[&[&[0, 1, 2, 3]], &[&[0, 2]]])),
        ("Q8", q8),
        ("C9", cyclic(9)),
        ("C3xC3", dp(&[cyclic(3), cyclic(3)])),
        ("C10", cyclic(10)),
        ("D10", g(5, &[&[&[0, 1, 2, 3, 4]], &[&[1, 4], &[2, 3]]])),
        ("C11", cyclic(11)),
        ("C12", cyclic(12)),
        ("C6xC2", dp(&[cyclic(6), cyclic(2)])),
        ("A4", g(4, &[&[&[0, 1, 2]], &[&[0, 1], &[2, 3]]])),
        ("D12", g(6, &[&[&[0, 1, 2, 3, 4, 5]], &[&[1, 5], &[2, 4]]])),
        ("Dic3", g(7, &[&[&[0, 1, 2]], &[&[1, 2], &[3, 4, 5, 6]]])),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_orders_match_abstract_orders() {
        for name in NamedGroup::ALL {
            assert_eq!(named_group(name).order(), name.abstract_order(), "{name:?}");
        }
    }

    #[test]
    fn asl2_is_transitive_with_sl2_stabilizer() {
        let g = asl2_f3();
        assert!(g.is_transitive());
        let stab = g.point_stabilizer(0).unwrap();
        assert_eq!(stab.order(), 24);
        // SL2(F3) has a unique involution
        assert_eq!(stab.element_order_histogram().unwrap()[&2], 1);
    }

    #[test]
    fn orthogonal_model_order_eight_and_center() {
        let go = named_group(NamedGroup::GO4p3Model);
        assert_eq!(go.degree(), 80);
        assert!(go.has_element_of_order(8).unwrap());
        assert_eq!(go.center().unwrap().order(), 2);
        let pgo = named_group(NamedGroup::PGO4p3Model);
        assert_eq!(pgo.degree(), 40);
        assert!(!pgo.has_element_of_order(8).unwrap());
    }

    #[test]
    fn small_group_catalog_is_complete_and_distinct() {
        let cat = small_groups_up_to_12();
        assert_eq!(cat.len(), 24);
        let mut counts = [0usize; 13];
        for (_, g) in &cat {
            counts[g.order() as usize] += 1;
        }
        assert_eq!(counts[1..], [1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5]);
        let fps: Vec<_> = cat.iter().map(|(_, g)| g.fingerprint().unwrap()).collect();
        for i in 0..fps.len() {
            for j in i + 1..fps.len() {
                assert_ne!(fps[i], fps[j], "{} vs {}", cat[i].0, cat[j].0);
            }
        }
    }
}
