//! Cubic surfaces, the symmetric families and their symmetry matrices,
//! Eckardt points, and induced permutations of the 27 lines.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector, SMatrix, SVector};
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linesolver::{self, Line, SolveError};
use crate::numeric::{
    self, c, chordal_distance, cubic_monomials, random_complex, zeta3, SymTensor, C, ONE,
    ZERO,
};
use crate::permgrp::Permutation;
use crate::schlafli::SchlafliLabeling;

/// Tolerance for a matrix preserving a surface up to scalar.
pub const INVARIANCE_TOL: f64 = 1e-10;
/// Coincidence tolerance for the three pairwise intersections of an Eckardt triple.
pub const ECKARDT_TOL: f64 = 1e-8;
pub const CONDITION_LIMIT: f64 = 1e12;

#[derive(Clone, Debug, Error, PartialEq)]
pub enum SurfaceError {
    #[error("cubic form is identically zero")]
    ZeroForm,
    #[error("matrix condition number {0:e} exceeds limit")]
    SingularMatrix(f64),
    #[error("matrix does not preserve the surface (residual {0:e})")]
    NotPreserved(f64),
    #[error("parameter outside the family's domain: {0}")]
    OutOfDomain(String),
    #[error("expected {expected} parameters, got {found}")]
    ParameterCount { expected: usize, found: usize },
    #[error("family {0:?} does not consist of cubic surfaces")]
    NotASurfaceFamily(Family),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("no involution found for the Eckardt point (residual {0:e})")]
    NoInvolution(f64),
}

/// Cubic form in `(x, y, z, w)`; coefficients in graded-lex order
/// `x³, x²y, x²z, x²w, xy², ..., w³`, scaled by a positive real so that the
/// largest modulus is 1.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CubicForm {
    coefficients: Vec<C>,
}

pub fn monomial_index(exps: [u8; 4]) -> usize {
    cubic_monomials::<4>()
        .iter()
        .position(|m| *m == exps)
        .expect("cubic monomial")
}

pub fn coefficients_from_terms(terms: &[([u8; 4], C)]) -> Vec<C> {
    let mut coeffs = vec![ZERO; 20];
    for &(e, k) in terms {
        coeffs[monomial_index(e)] += k;
    }
    coeffs
}

impl CubicForm {
    pub fn new(coefficients: &[C]) -> Result<CubicForm, SurfaceError> {
        assert_eq!(coefficients.len(), 20, "cubic forms in 4 variables have 20 coefficients");
        let max = coefficients.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if max == 0.0 || !max.is_finite() {
            return Err(SurfaceError::ZeroForm);
        }
        Ok(CubicForm {
            coefficients: coefficients.iter().map(|z| z / max).collect(),
        })
    }

    pub fn fermat() -> CubicForm {
        let t = |e: [u8; 4]| (e, ONE);
        CubicForm::new(&coefficients_from_terms(&[
            t([3, 0, 0, 0]),
            t([0, 3, 0, 0]),
            t([0, 0, 3, 0]),
            t([0, 0, 0, 3]),
        ]))
        .unwrap()
    }

    /// Coefficients i.i.d. standard complex Gaussian.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> CubicForm {
        let coeffs: Vec<C> = (0..20).map(|_| random_complex(rng)).collect();
        CubicForm::new(&coeffs).unwrap()
    }

    pub fn coefficients(&self) -> &[C] {
        &self.coefficients
    }

    pub fn coefficient(&self, exps: [u8; 4]) -> C {
        self.coefficients[monomial_index(exps)]
    }

    pub fn tensor(&self) -> SymTensor<4> {
        SymTensor::from_coeffs(&self.coefficients)
    }

    pub fn eval(&self, x: &[C; 4]) -> C {
        self.tensor().eval(x)
    }

    /// The form `x ↦ F(Mx)`.
    pub fn compose(&self, m: &ProjectiveMatrix) -> Result<CubicForm, SurfaceError> {
        CubicForm::new(&self.tensor().compose_linear(m.entries()).to_coeffs())
    }

    /// `min_λ ‖other − λ·self‖ / ‖other‖`.
    pub fn proportionality_residual(&self, other: &CubicForm) -> f64 {
        let a = &self.coefficients;
        let b = &other.coefficients;
        let lambda = numeric::inner(a, b) / numeric::inner(a, a).re;
        let r: Vec<C> = a.iter().zip(b).map(|(x, y)| y - lambda * x).collect();
        numeric::norm(&r) / numeric::norm(b)
    }
}

/// Invertible 4×4 complex matrix acting on points by `x ↦ Mx`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProjectiveMatrix {
    entries: [[C; 4]; 4],
}

impl ProjectiveMatrix {
    pub fn new(entries: [[C; 4]; 4]) -> Result<Self, SurfaceError> {
        let cond = numeric::condition_number(&numeric::from_array(&entries));
        if !(cond < CONDITION_LIMIT) {
            return Err(SurfaceError::SingularMatrix(cond));
        }
        Ok(ProjectiveMatrix { entries })
    }

    pub fn from_real(rows: [[f64; 4]; 4]) -> Result<Self, SurfaceError> {
        Self::new(rows.map(|r| r.map(C::from)))
    }

    pub fn from_nalgebra(m: SMatrix<C, 4, 4>) -> Result<Self, SurfaceError> {
        Self::new(numeric::to_array(&m))
    }

    pub fn identity() -> Self {
        Self::diagonal([ONE; 4])
    }

    pub fn diagonal(d: [C; 4]) -> Self {
        let mut e = [[ZERO; 4]; 4];
        for i in 0..4 {
            e[i][i] = d[i];
        }
        Self::new(e).expect("nonzero diagonal")
    }

    /// The matrix sending `e_i` to `e_{σ(i)}`.
    pub fn permutation(sigma: [usize; 4]) -> Self {
        let mut e = [[ZERO; 4]; 4];
        for i in 0..4 {
            e[sigma[i]][i] = ONE;
        }
        Self::new(e).expect("permutation matrix")
    }

    pub fn entries(&self) -> &[[C; 4]; 4] {
        &self.entries
    }

    pub fn apply(&self, x: &[C; 4]) -> [C; 4] {
        numeric::mat_vec(&self.entries, x)
    }

    /// `self · other`.
    pub fn mul(&self, other: &ProjectiveMatrix) -> ProjectiveMatrix {
        let m = numeric::from_array(&self.entries) * numeric::from_array(&other.entries);
        ProjectiveMatrix {
            entries: numeric::to_array(&m),
        }
    }

    pub fn inverse(&self) -> ProjectiveMatrix {
        let m = numeric::from_array(&self.entries).try_inverse().expect("invertible");
        ProjectiveMatrix {
            entries: numeric::to_array(&m),
        }
    }

    /// Distance of `self` from the scalar matrices, relative to its norm.
    pub fn non_scalar_residual(&self) -> f64 {
        let m = numeric::from_array(&self.entries);
        let lambda = m.trace() / C::from(4.0);
        (m - SMatrix::<C, 4, 4>::identity() * lambda).norm() / m.norm()
    }
}

/// `‖F∘M − λF‖/‖F‖` for the best scalar λ.
pub fn invariance_residual(form: &CubicForm, m: &ProjectiveMatrix) -> f64 {
    match form.compose(m) {
        Ok(g) => form.proportionality_residual(&g),
        Err(_) => f64::INFINITY,
    }
}

pub fn family_s4(a: C) -> Result<CubicForm, SurfaceError> {
    if a.norm() == 0.0 {
        return Err(SurfaceError::OutOfDomain("S4 family requires a ≠ 0".into()));
    }
    CubicForm::new(&Family::S4.raw_coefficients(&[a])?)
}

pub fn family_s3(a: C, b: C) -> Result<CubicForm, SurfaceError> {
    CubicForm::new(&Family::S3.raw_coefficients(&[a, b])?)
}

pub fn family_s3c2(a: C) -> Result<CubicForm, SurfaceError> {
    CubicForm::new(&Family::S3xC2.raw_coefficients(&[a])?)
}

/// `x²·L(y,z,w) + C3(y,z,w)`; `c3` in the ternary graded-lex order.
pub fn family_c2(l: [C; 3], c3: [C; 10]) -> Result<CubicForm, SurfaceError> {
    let params: Vec<C> = l.iter().chain(c3.iter()).copied().collect();
    CubicForm::new(&Family::C2Even.raw_coefficients(&params)?)
}

/// Parameter families used in the campaigns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    Generic20,
    S4,
    S3,
    S3xC2,
    C2Even,
    FlexP9,
}

/// Serializable summary of a family.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FamilySpec {
    pub name: Family,
    pub parameter_dim: usize,
    pub symmetry_generators: Vec<(String, ProjectiveMatrix)>,
    pub known_punctures: Vec<Vec<C>>,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Generic20,
        Family::S4,
        Family::S3,
        Family::S3xC2,
        Family::C2Even,
        Family::FlexP9,
    ];

    pub fn parameter_dim(self) -> usize {
        match self {
            Family::Generic20 => 20,
            Family::S4 => 1,
            Family::S3 => 2,
            Family::S3xC2 => 1,
            Family::C2Even => 13,
            Family::FlexP9 => 10,
        }
    }

    pub fn is_surface_family(self) -> bool {
        self != Family::FlexP9
    }

    /// Coefficient vector (20 entries, or 10 for plane cubics). Affine-linear
    /// in the parameters for every family.
    pub fn raw_coefficients(self, p: &[C]) -> Result<Vec<C>, SurfaceError> {
        if p.len() != self.parameter_dim() {
            return Err(SurfaceError::ParameterCount {
                expected: self.parameter_dim(),
                found: p.len(),
            });
        }
        let fermat = |extra: &[([u8; 4], C)]| {
            let mut terms = vec![
                ([3, 0, 0, 0], ONE),
                ([0, 3, 0, 0], ONE),
                ([0, 0, 3, 0], ONE),
                ([0, 0, 0, 3], ONE),
            ];
            terms.extend_from_slice(extra);
            coefficients_from_terms(&terms)
        };
        Ok(match self {
            Family::Generic20 | Family::FlexP9 => p.to_vec(),
            Family::S4 => {
                let m = -ONE;
                coefficients_from_terms(&[
                    ([3, 0, 0, 0], p[0]),
                    ([1, 2, 0, 0], ONE),
                    ([1, 0, 2, 0], ONE),
                    ([1, 0, 0, 2], ONE),
                    ([1, 1, 0, 1], m),
                    ([1, 0, 1, 1], m),
                    ([0, 1, 0, 2], ONE),
                    ([0, 2, 0, 1], m),
                    ([0, 0, 1, 2], m),
                    ([0, 0, 2, 1], ONE),
                ])
            }
            Family::S3 => fermat(&[([1, 0, 1, 1], p[0]), ([0, 1, 1, 1], p[1])]),
            Family::S3xC2 => fermat(&[([1, 0, 1, 1], p[0]), ([0, 1, 1, 1], p[0])]),
            Family::C2Even => {
                let mut terms = vec![([2, 1, 0, 0], p[0]), ([2, 0, 1, 0], p[1]), ([2, 0, 0, 1], p[2])];
                for (k, e) in cubic_monomials::<3>().iter().enumerate() {
                    terms.push(([0, e[0], e[1], e[2]], p[3 + k]));
                }
                coefficients_from_terms(&terms)
            }
        })
    }

    pub fn form(self, p: &[C]) -> Result<CubicForm, SurfaceError> {
        match self {
            Family::FlexP9 => Err(SurfaceError::NotASurfaceFamily(self)),
            Family::S4 => {
                if p.len() == 1 && p[0].norm() == 0.0 {
                    return Err(SurfaceError::OutOfDomain("S4 family requires a ≠ 0".into()));
                }
                CubicForm::new(&self.raw_coefficients(p)?)
            }
            _ => CubicForm::new(&self.raw_coefficients(p)?),
        }
    }

    /// Parameter-independent symmetry matrices of every member.
    pub fn symmetry_generators(self) -> Vec<(String, ProjectiveMatrix)> {
        let z = zeta3();
        let s3 = || {
            let mut m13 = [[ZERO; 4]; 4];
            m13[0][0] = ONE;
            m13[1][1] = ONE;
            m13[2][3] = z;
            m13[3][2] = z * z;
            vec![
                ("(12)".to_string(), ProjectiveMatrix::permutation([0, 1, 3, 2])),
                ("(13)".to_string(), ProjectiveMatrix::new(m13).unwrap()),
            ]
        };
        match self {
            Family::S4 => {
                let m = |rows| ProjectiveMatrix::from_real(rows).unwrap();
                vec![
                    (
                        "(12)".into(),
                        m([[1., 0., 0., 0.], [0., 1., 0., 0.], [0., 0., 1., 0.], [0., 1., 1., -1.]]),
                    ),
                    (
                        "(13)".into(),
                        m([[1., 0., 0., 0.], [0., -1., 0., 1.], [0., 0., 1., 0.], [0., 0., 0., 1.]]),
                    ),
                    (
                        "(34)".into(),
                        m([[1., 0., 0., 0.], [0., 0., -1., 0.], [0., -1., 0., 0.], [0., -1., -1., 1.]]),
                    ),
                ]
            }
            Family::S3 => s3(),
            Family::S3xC2 => {
                let mut g = s3();
                g.push(("iota".into(), ProjectiveMatrix::permutation([1, 0, 2, 3])));
                g
            }
            Family::C2Even => vec![("iota".into(), ProjectiveMatrix::diagonal([-ONE, ONE, ONE, ONE]))],
            Family::Generic20 | Family::FlexP9 => Vec::new(),
        }
    }

    /// Parameter values known in advance to be singular.
    pub fn known_punctures(self) -> Vec<Vec<C>> {
        match self {
            Family::S4 => vec![vec![ZERO], vec![c(-0.5, 0.0)]],
            Family::S3xC2 => s3c2_punctures().into_iter().map(|a| vec![a]).collect(),
            _ => Vec::new(),
        }
    }

    pub fn spec(self) -> FamilySpec {
        FamilySpec {
            name: self,
            parameter_dim: self.parameter_dim(),
            symmetry_generators: self.symmetry_generators(),
            known_punctures: self.known_punctures(),
        }
    }
}

/// Roots of `4a³ + 27`.
pub fn s3c2_punctures() -> Vec<C> {
    let r = (27.0f64 / 4.0).cbrt();
    [1.0, 3.0, 5.0]
        .iter()
        .map(|k| C::from_polar(r, k * PI / 3.0))
        .collect()
}

/// The Eckardt points listed for the S4 family.
pub fn s4_eckardt_points() -> Vec<[C; 4]> {
    [
        [0., 0., 0., 1.],
        [0., 1., 0., 0.],
        [0., 1., 0., 1.],
        [0., 1., 1., 1.],
        [0., 0., 1., 0.],
        [0., 0., 1., 1.],
    ]
    .iter()
    .map(|p| p.map(C::from))
    .collect()
}

/// The Eckardt points listed for the S3 family (first three) and the S3×C2
/// family (all four).
pub fn s3_eckardt_points() -> Vec<[C; 4]> {
    let z = zeta3();
    vec![
        [ZERO, ZERO, ONE, -ONE],
        [ZERO, ZERO, ONE, -z * z],
        [ZERO, ZERO, ONE, -z],
        [ONE, -ONE, ZERO, ZERO],
    ]
}

/// Permutation of line slots induced by `m`: slot `s` goes to the slot of
/// the line `m(L_s)`. Also returns the smallest matching gap ratio.
pub fn symmetry_slot_permutation(m: &ProjectiveMatrix, lines: &[Line]) -> Result<(Permutation, f64), SurfaceError> {
    let images: Vec<Line> = lines.iter().map(|l| l.transform(m)).collect();
    Ok(linesolver::match_lines(&images, lines)?)
}

/// Permutation of canonical labels induced by a symmetry of the surface.
pub fn symmetry_permutation(
    m: &ProjectiveMatrix,
    form: &CubicForm,
    lines: &[Line],
    labeling: &SchlafliLabeling,
) -> Result<Permutation, SurfaceError> {
    let res = invariance_residual(form, m);
    if res > INVARIANCE_TOL {
        return Err(SurfaceError::NotPreserved(res));
    }
    let (p, _) = symmetry_slot_permutation(m, lines)?;
    Ok(labeling.to_canonical(&p))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EckardtPoint {
    pub point: Vec<C>,
    /// Slots of the three lines through the point.
    pub lines: [usize; 3],
}

/// All points where three of the lines meet.
pub fn eckardt_points(lines: &[Line]) -> Vec<EckardtPoint> {
    let n = lines.len();
    let meets = |i: usize, j: usize| lines[i].pairing(&lines[j]).norm() < linesolver::MEET_TOL;
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if !meets(i, j) {
                continue;
            }
            let pij = lines[i].intersection(&lines[j]);
            for k in j + 1..n {
                if !(meets(i, k) && meets(j, k)) {
                    continue;
                }
                let pik = lines[i].intersection(&lines[k]);
                let pjk = lines[j].intersection(&lines[k]);
                if chordal_distance(&pij, &pik) < ECKARDT_TOL && chordal_distance(&pij, &pjk) < ECKARDT_TOL {
                    out.push(EckardtPoint {
                        point: pij.to_vec(),
                        lines: [i, j, k],
                    });
                }
            }
        }
    }
    out
}

/// The harmonic homology `x ↦ x − 2 (ℓ·x)/(ℓ·e) e` preserving the surface,
/// where `e` is an Eckardt point. The fixed plane `ℓ` is read off the polar
/// quadric of `e`, which factors as (tangent plane)·(fixed plane).
pub fn eckardt_involution(form: &CubicForm, point: &[C; 4]) -> Result<ProjectiveMatrix, SurfaceError> {
    let t = form.tensor();
    let e = numeric::normalized(point);
    let q = t.contract(&e);
    let tang = t.gradient(&e);
    // solve 3 q[a][b] = (tang_a l_b + l_a tang_b)/2 · (3/…): least squares in l
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for a in 0..4 {
        for b in a..4 {
            let mut row = vec![ZERO; 4];
            row[b] += tang[a] * 0.5;
            row[a] += tang[b] * 0.5;
            rows.push(row);
            rhs.push(q[a][b] * 3.0);
        }
    }
    let a_mat = DMatrix::from_fn(rows.len(), 4, |r, col| rows[r][col]);
    let b_vec = DVector::from_vec(rhs);
    let svd = a_mat.svd(true, true);
    let l = svd
        .solve(&b_vec, 1e-12)
        .map_err(|_| SurfaceError::NoInvolution(f64::INFINITY))?;
    let le: C = (0..4).map(|k| l[k] * e[k]).sum();
    if le.norm() < 1e-12 {
        return Err(SurfaceError::NoInvolution(f64::INFINITY));
    }
    let mut m = [[ZERO; 4]; 4];
    for r in 0..4 {
        for col in 0..4 {
            m[r][col] = if r == col { ONE } else { ZERO } - 2.0 * e[r] * l[col] / le;
        }
    }
    let m = ProjectiveMatrix::new(m)?;
    let res = invariance_residual(form, &m);
    if res > ECKARDT_TOL {
        return Err(SurfaceError::NoInvolution(res));
    }
    Ok(m)
}

/// A parameter value at which the line solve degenerates.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PunctureCandidate {
    pub parameter: Vec<C>,
    /// Position `s` on the segment `start + s (end − start)`; complex after refinement.
    pub path_coordinate: C,
    /// Whether Newton refinement on the singular-point system converged.
    pub refined: bool,
    pub gradient_residual: f64,
}

fn segment_point(start: &[C], end: &[C], s: C) -> Vec<C> {
    start.iter().zip(end).map(|(a, b)| a + s * (b - a)).collect()
}

/// Newton on `∇F_s(x) = 0, v·x = 1` in the unknowns `(x, s)`.
fn refine_singular(a: &SymTensor<4>, delta: &SymTensor<4>, x0: [C; 4], s0: C) -> Option<([C; 4], C, f64)> {
    let v = numeric::normalized(&x0).map(|z| z.conj());
    let vx0: C = (0..4).map(|k| v[k] * x0[k]).sum();
    let mut x = x0.map(|z| z / vx0);
    let mut s = s0;
    for _ in 0..100 {
        let t = a.axpy(s, delta);
        let g = t.gradient(&x);
        let h = t.contract(&x);
        let gs = delta.gradient(&x);
        let vx: C = (0..4).map(|k| v[k] * x[k]).sum();
        let jac = SMatrix::<C, 5, 5>::from_fn(|r, col| match (r, col) {
            (4, 4) => ZERO,
            (4, k) => v[k],
            (r, 4) => gs[r],
            (r, k) => 6.0 * h[r][k],
        });
        let f = SVector::<C, 5>::from_fn(|r, _| if r < 4 { g[r] } else { vx - ONE });
        let dx = jac.lu().solve(&(-f))?;
        for k in 0..4 {
            x[k] += dx[k];
        }
        s += dx[4];
        if !s.re.is_finite() || s.norm() > 1e6 {
            return None;
        }
        if dx.norm() < 1e-14 * (1.0 + s.norm()) {
            break;
        }
    }
    let xn = numeric::normalized(&x);
    let res = numeric::norm(&a.axpy(s, delta).gradient(&xn));
    Some((x, s, res))
}

/// Samples the segment, solves lines at each sample, and refines the
/// samples where the minimal pairwise line distance dips or the solve fails.
pub fn puncture_scan(
    family: Family,
    start: &[C],
    end: &[C],
    samples: usize,
    seed: u64,
) -> Result<Vec<PunctureCandidate>, SurfaceError> {
    if !family.is_surface_family() {
        return Err(SurfaceError::NotASurfaceFamily(family));
    }
    let samples = samples.max(3);
    let ss: Vec<f64> = (0..samples).map(|k| k as f64 / (samples - 1) as f64).collect();
    let solves: Vec<Option<linesolver::SolveReport>> = ss
        .iter()
        .enumerate()
        .map(|(k, &s)| {
            let p = segment_point(start, end, C::from(s));
            family
                .form(&p)
                .ok()
                .and_then(|f| linesolver::solve_lines(&f, seed.wrapping_add(k as u64)).ok())
        })
        .collect();
    let dist: Vec<f64> = solves
        .iter()
        .map(|r| r.as_ref().map_or(0.0, |r| r.min_pairwise_distance))
        .collect();
    let mut sorted = dist.clone();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let median = sorted[samples / 2];
    let a_t = SymTensor::<4>::from_coeffs(&family.raw_coefficients(start)?);
    let b_t = SymTensor::<4>::from_coeffs(&family.raw_coefficients(end)?);
    let delta = b_t.axpy(-ONE, &a_t);
    let h = 1.0 / (samples - 1) as f64;

    let mut out: Vec<PunctureCandidate> = Vec::new();
    for k in 0..samples {
        let left = if k > 0 { dist[k - 1] } else { f64::INFINITY };
        let right = if k + 1 < samples { dist[k + 1] } else { f64::INFINITY };
        let is_dip = dist[k] <= left && dist[k] <= right && dist[k] < 0.25 * median;
        if !is_dip {
            continue;
        }
        // seed from the closest pair of lines at this or a neighbouring sample
        let seed_report = [k, k.wrapping_sub(1), k + 1]
            .into_iter()
            .filter(|&j| j < samples)
            .find_map(|j| solves[j].as_ref().map(|r| (j, r)));
        let mut found = None;
        if let Some((j, rep)) = seed_report {
            let tj = a_t.axpy(C::from(ss[j]), &delta);
            let (mut bi, mut bd) = (0, f64::INFINITY);
            for i1 in 0..rep.lines.len() {
                for i2 in i1 + 1..rep.lines.len() {
                    let d = rep.lines[i1].distance(&rep.lines[i2]);
                    if d < bd {
                        bd = d;
                        bi = i1;
                    }
                }
            }
            let line = &rep.lines[bi];
            let mut best = (f64::INFINITY, [ZERO; 4]);
            for m in 0..48 {
                let ang = C::from_polar(1.0, m as f64 * PI / 24.0);
                for r in [0.0, 0.3, 1.0, 3.0] {
                    let p = numeric::normalized(&line.point(ONE, ang * r));
                    let g = numeric::norm(&tj.gradient(&p));
                    if g < best.0 {
                        best = (g, p);
                    }
                }
                let p = numeric::normalized(&line.point(ZERO, ONE));
                let g = numeric::norm(&tj.gradient(&p));
                if g < best.0 {
                    best = (g, p);
                }
            }
            if let Some((_, s, res)) = refine_singular(&a_t, &delta, best.1, C::from(ss[k])) {
                if res < 1e-9 && (s - ss[k]).norm() < 3.0 * h {
                    found = Some(PunctureCandidate {
                        parameter: segment_point(start, end, s),
                        path_coordinate: s,
                        refined: true,
                        gradient_residual: res,
                    });
                }
            }
        }
        let cand = found.unwrap_or_else(|| {
            // golden-section search on the sampled distance along the real segment
            let f = |s: f64| {
                let p = segment_point(start, end, C::from(s));
                family
                    .form(&p)
                    .ok()
                    .and_then(|form| linesolver::solve_lines(&form, seed ^ 0x9e37).ok())
                    .map_or(0.0, |r| r.min_pairwise_distance)
            };
            let (mut lo, mut hi) = ((ss[k] - h).max(0.0), (ss[k] + h).min(1.0));
            let g = (5f64.sqrt() - 1.0) / 2.0;
            while hi - lo > 1e-10 {
                let m1 = hi - g * (hi - lo);
                let m2 = lo + g * (hi - lo);
                if f(m1) < f(m2) {
                    hi = m2;
                } else {
                    lo = m1;
                }
            }
            let s = C::from((lo + hi) / 2.0);
            PunctureCandidate {
                parameter: segment_point(start, end, s),
                path_coordinate: s,
                refined: false,
                gradient_residual: f64::NAN,
            }
        });
        if out
            .iter()
            .all(|o| (o.path_coordinate - cand.path_coordinate).norm() > 1e-6)
        {
            out.push(cand);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn s4_member_coefficients() {
        let f = family_s4(ONE).unwrap();
        assert_eq!(f.coefficient([3, 0, 0, 0]), ONE);
        assert_eq!(f.coefficient([0, 3, 0, 0]), ZERO);
        assert!(family_s4(ZERO).is_err());
    }

    #[test]
    fn s4_symmetries_are_exact() {
        for a in [c(2.0, 0.0), c(-0.3, 1.7)] {
            let f = family_s4(a).unwrap();
            let t = f.tensor();
            for (name, m) in Family::S4.symmetry_generators() {
                let g = t.compose_linear(m.entries());
                let diff: f64 = g.to_coeffs().iter().zip(f.coefficients()).map(|(x, y)| (x - y).norm()).sum();
                assert!(diff < 1e-14, "{name}: {diff}");
            }
        }
    }

    #[test]
    fn s4_eckardt_candidates_lie_on_surface() {
        let f = family_s4(c(3.0, 0.0)).unwrap();
        for p in s4_eckardt_points() {
            assert!(f.eval(&p).norm() < 1e-15);
        }
    }

    #[test]
    fn s3_family_examples() {
        let f0 = family_s3(ZERO, ZERO).unwrap();
        assert_eq!(f0, CubicForm::fermat());
        let a = c(0.4, -1.2);
        assert_eq!(family_s3c2(a).unwrap(), family_s3(a, a).unwrap());
        let f = family_s3(ONE, c(2.0, 0.0)).unwrap();
        for (_, m) in Family::S3.symmetry_generators() {
            assert!(invariance_residual(&f, &m) < 1e-14);
        }
        let swap = ProjectiveMatrix::permutation([1, 0, 2, 3]);
        let g = family_s3(c(2.0, 0.0), ONE).unwrap().compose(&swap).unwrap();
        assert!(f.proportionality_residual(&g) < 1e-15);
    }

    #[test]
    fn s3c2_and_c2_symmetries() {
        let f = family_s3c2(c(1.3, 0.2)).unwrap();
        for (_, m) in Family::S3xC2.symmetry_generators() {
            assert!(invariance_residual(&f, &m) < 1e-14);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let l: [C; 3] = std::array::from_fn(|_| random_complex(&mut rng));
        let c3: [C; 10] = std::array::from_fn(|_| random_complex(&mut rng));
        let g = family_c2(l, c3).unwrap();
        assert_eq!(g.eval(&[ONE, ZERO, ZERO, ZERO]), ZERO);
        let iota = &Family::C2Even.symmetry_generators()[0].1;
        assert!(invariance_residual(&g, iota) < 1e-15);
    }

    #[test]
    fn twisted_identifications() {
        let z = zeta3();
        let a = c(0.7, 0.1);
        let d = ProjectiveMatrix::diagonal([z, z, ONE, ONE]);
        let lhs = family_s3c2(z * a).unwrap();
        let rhs = family_s3c2(a).unwrap().compose(&d).unwrap();
        assert!(lhs.proportionality_residual(&rhs) < 1e-14);
    }

    #[test]
    fn harmonic_homology_of_s4_point() {
        let f = family_s4(c(2.0, 0.0)).unwrap();
        let m = eckardt_involution(&f, &s4_eckardt_points()[1]).unwrap();
        let expected = &Family::S4.symmetry_generators()[1].1;
        let ratio = m.mul(&expected.inverse());
        assert!(ratio.non_scalar_residual() < 1e-10);
    }

    #[test]
    fn matrix_condition_guard() {
        let mut e = [[ZERO; 4]; 4];
        e[0][0] = ONE;
        assert!(matches!(ProjectiveMatrix::new(e), Err(SurfaceError::SingularMatrix(_))));
    }
}
