//! Complex linear algebra and cubic-form helpers shared by the solvers.

use nalgebra::{DMatrix, SMatrix, SVector};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

pub type C = Complex64;

pub const ZERO: C = C::new(0.0, 0.0);
pub const ONE: C = C::new(1.0, 0.0);

/// Primitive cube root of unity `e^{2πi/3}`.
pub fn zeta3() -> C {
    C::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0)
}

pub fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

/// Exponent vectors of the cubic monomials in `V` variables, graded-lex
/// descending (`x³, x²y, ...`).
pub fn cubic_monomials<const V: usize>() -> Vec<[u8; V]> {
    let mut out = Vec::new();
    fn rec<const V: usize>(k: usize, left: u8, cur: &mut [u8; V], out: &mut Vec<[u8; V]>) {
        if k == V - 1 {
            cur[k] = left;
            out.push(*cur);
            return;
        }
        for e in (0..=left).rev() {
            cur[k] = e;
            rec(k + 1, left - e, cur, out);
        }
    }
    rec(0, 3, &mut [0; V], &mut out);
    out
}

fn monomial_of(idx: [usize; 3], nvars: usize) -> Vec<u8> {
    let mut e = vec![0u8; nvars];
    for i in idx {
        e[i] += 1;
    }
    e
}

fn multinomial(e: &[u8]) -> f64 {
    let fact = |n: u8| (1..=n as u64).product::<u64>() as f64;
    6.0 / e.iter().map(|&k| fact(k)).product::<f64>()
}

/// Symmetric cubic tensor with `F(x) = Σ T[a][b][c] x_a x_b x_c`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SymTensor<const V: usize>(pub [[[C; V]; V]; V]);

impl<const V: usize> SymTensor<V> {
    pub fn zero() -> Self {
        SymTensor([[[ZERO; V]; V]; V])
    }

    pub fn from_coeffs(coeffs: &[C]) -> Self {
        let monos = cubic_monomials::<V>();
        assert_eq!(coeffs.len(), monos.len());
        let mut t = Self::zero();
        for a in 0..V {
            for b in 0..V {
                for cc in 0..V {
                    let e = monomial_of([a, b, cc], V);
                    let k = monos.iter().position(|m| m[..] == e[..]).unwrap();
                    t.0[a][b][cc] = coeffs[k] / multinomial(&e);
                }
            }
        }
        t
    }

    pub fn to_coeffs(&self) -> Vec<C> {
        cubic_monomials::<V>()
            .iter()
            .map(|m| {
                let mut idx = [0usize; 3];
                let mut p = 0;
                for (v, &k) in m.iter().enumerate() {
                    for _ in 0..k {
                        idx[p] = v;
                        p += 1;
                    }
                }
                self.0[idx[0]][idx[1]][idx[2]] * multinomial(&m[..])
            })
            .collect()
    }

    /// `Σ T[a][b][c] u_a v_b w_c`
    pub fn eval3(&self, u: &[C; V], v: &[C; V], w: &[C; V]) -> C {
        let mut s = ZERO;
        for a in 0..V {
            for b in 0..V {
                let uv = u[a] * v[b];
                for cc in 0..V {
                    s += self.0[a][b][cc] * uv * w[cc];
                }
            }
        }
        s
    }

    /// The matrix `M[a][b] = Σ_c T[a][b][c] v_c`.
    pub fn contract(&self, v: &[C; V]) -> [[C; V]; V] {
        let mut m = [[ZERO; V]; V];
        for a in 0..V {
            for b in 0..V {
                let mut s = ZERO;
                for cc in 0..V {
                    s += self.0[a][b][cc] * v[cc];
                }
                m[a][b] = s;
            }
        }
        m
    }

    /// Gradient `∂F/∂x_a = 3 Σ T[a][b][c] x_b x_c`.
    pub fn gradient(&self, x: &[C; V]) -> [C; V] {
        let m = self.contract(x);
        let mut g = [ZERO; V];
        for a in 0..V {
            let mut s = ZERO;
            for b in 0..V {
                s += m[a][b] * x[b];
            }
            g[a] = 3.0 * s;
        }
        g
    }

    pub fn eval(&self, x: &[C; V]) -> C {
        self.eval3(x, x, x)
    }

    /// Tensor of `F∘M`, i.e. `x ↦ F(Mx)`.
    pub fn compose_linear(&self, m: &[[C; V]; V]) -> Self {
        // contract one index at a time
        let mut t1 = Self::zero();
        for a in 0..V {
            for b in 0..V {
                for cc in 0..V {
                    let mut s = ZERO;
                    for f in 0..V {
                        s += self.0[a][b][f] * m[f][cc];
                    }
                    t1.0[a][b][cc] = s;
                }
            }
        }
        let mut t2 = Self::zero();
        for a in 0..V {
            for b in 0..V {
                for cc in 0..V {
                    let mut s = ZERO;
                    for e in 0..V {
                        s += t1.0[a][e][cc] * m[e][b];
                    }
                    t2.0[a][b][cc] = s;
                }
            }
        }
        let mut t3 = Self::zero();
        for a in 0..V {
            for b in 0..V {
                for cc in 0..V {
                    let mut s = ZERO;
                    for d in 0..V {
                        s += t2.0[d][b][cc] * m[d][a];
                    }
                    t3.0[a][b][cc] = s;
                }
            }
        }
        t3
    }

    pub fn axpy(&self, alpha: C, other: &Self) -> Self {
        let mut t = *self;
        for a in 0..V {
            for b in 0..V {
                for cc in 0..V {
                    t.0[a][b][cc] += alpha * other.0[a][b][cc];
                }
            }
        }
        t
    }

    pub fn scale(&self, alpha: C) -> Self {
        Self::zero().axpy(alpha, self)
    }
}

pub fn norm(v: &[C]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn normalized<const N: usize>(v: &[C; N]) -> [C; N] {
    let n = norm(v);
    v.map(|z| z / n)
}

/// Hermitian inner product `Σ conj(u_i) v_i`.
pub fn inner(u: &[C], v: &[C]) -> C {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

/// Chordal distance between the points of projective space spanned by two
/// unit vectors.
pub fn chordal_distance(u: &[C], v: &[C]) -> f64 {
    // norm of the component of v orthogonal to u; avoids cancellation in 1 - |<u,v>|²
    let ip = inner(u, v);
    u.iter()
        .zip(v)
        .map(|(a, b)| (b - ip * a).norm_sqr())
        .sum::<f64>()
        .sqrt()
        .min(1.0)
}

/// Scales a nonzero vector to unit norm with its first non-negligible entry
/// real and positive.
pub fn projective_normalize(v: &[C]) -> Vec<C> {
    let n = norm(v);
    let out: Vec<C> = v.iter().map(|z| z / n).collect();
    let lead = out
        .iter()
        .find(|z| z.norm() > 1e-6)
        .copied()
        .unwrap_or(ONE);
    let phase = lead.conj() / lead.norm();
    out.iter().map(|z| z * phase).collect()
}

pub fn random_complex<R: Rng + ?Sized>(rng: &mut R) -> C {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C::new(re, im) / std::f64::consts::SQRT_2
}

pub fn random_unit_complex<R: Rng + ?Sized>(rng: &mut R) -> C {
    C::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU))
}

/// Unitary matrix from the QR factorization of a complex Gaussian matrix.
pub fn random_unitary<const N: usize, R: Rng + ?Sized>(rng: &mut R) -> SMatrix<C, N, N> {
    let g = DMatrix::<C>::from_fn(N, N, |_, _| random_complex(rng));
    let q = g.qr().q();
    SMatrix::from_fn(|i, j| q[(i, j)])
}

pub fn to_array<const N: usize>(m: &SMatrix<C, N, N>) -> [[C; N]; N] {
    let mut a = [[ZERO; N]; N];
    for i in 0..N {
        for j in 0..N {
            a[i][j] = m[(i, j)];
        }
    }
    a
}

pub fn from_array<const N: usize>(a: &[[C; N]; N]) -> SMatrix<C, N, N> {
    SMatrix::from_fn(|i, j| a[i][j])
}

pub fn mat_vec<const N: usize>(m: &[[C; N]; N], v: &[C; N]) -> [C; N] {
    let mut out = [ZERO; N];
    for i in 0..N {
        for j in 0..N {
            out[i] += m[i][j] * v[j];
        }
    }
    out
}

pub fn svec<const N: usize>(a: &[C; N]) -> SVector<C, N> {
    SVector::from_column_slice(a)
}

/// Ratio of largest to smallest singular value.
pub fn condition_number<const N: usize>(m: &SMatrix<C, N, N>) -> f64 {
    let s = DMatrix::from_fn(N, N, |i, j| m[(i, j)]).singular_values();
    let max = s.max();
    let min = s.min();
    if min == 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn monomial_order() {
        let m4 = cubic_monomials::<4>();
        assert_eq!(m4.len(), 20);
        assert_eq!(m4[0], [3, 0, 0, 0]);
        assert_eq!(m4[1], [2, 1, 0, 0]);
        assert_eq!(m4[5], [1, 1, 1, 0]);
        assert_eq!(m4[10], [0, 3, 0, 0]);
        assert_eq!(m4[19], [0, 0, 0, 3]);
        let m3 = cubic_monomials::<3>();
        assert_eq!(m3.len(), 10);
        assert_eq!(m3[4], [1, 1, 1]);
    }

    #[test]
    fn tensor_round_trip_and_evaluation() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let coeffs: Vec<C> = (0..20).map(|_| random_complex(&mut rng)).collect();
        let t = SymTensor::<4>::from_coeffs(&coeffs);
        let back = t.to_coeffs();
        for (a, b) in coeffs.iter().zip(&back) {
            assert!((a - b).norm() < 1e-14);
        }
        let x = [c(0.3, 1.0), c(-1.0, 0.2), c(0.5, 0.5), c(2.0, -1.0)];
        let direct: C = cubic_monomials::<4>()
            .iter()
            .zip(&coeffs)
            .map(|(m, k)| k * (0..4).map(|i| x[i].powi(m[i] as i32)).product::<C>())
            .sum();
        assert!((direct - t.eval(&x)).norm() < 1e-12);
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let coeffs: Vec<C> = (0..10).map(|_| random_complex(&mut rng)).collect();
        let t = SymTensor::<3>::from_coeffs(&coeffs);
        let x = [c(0.1, 0.4), c(1.0, -0.3), c(-0.7, 0.2)];
        let g = t.gradient(&x);
        let h = 1e-6;
        for i in 0..3 {
            let mut xp = x;
            xp[i] += h;
            let mut xm = x;
            xm[i] -= h;
            let fd = (t.eval(&xp) - t.eval(&xm)) / (2.0 * h);
            assert!((fd - g[i]).norm() < 1e-7);
        }
    }

    #[test]
    fn composition_with_linear_map() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let coeffs: Vec<C> = (0..20).map(|_| random_complex(&mut rng)).collect();
        let t = SymTensor::<4>::from_coeffs(&coeffs);
        let m: [[C; 4]; 4] = std::array::from_fn(|_| std::array::from_fn(|_| random_complex(&mut rng)));
        let x: [C; 4] = std::array::from_fn(|_| random_complex(&mut rng));
        let lhs = t.compose_linear(&m).eval(&x);
        let rhs = t.eval(&mat_vec(&m, &x));
        assert!((lhs - rhs).norm() < 1e-12 * (1.0 + rhs.norm()));
    }

    #[test]
    fn random_unitary_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let u = random_unitary::<4, _>(&mut rng);
        let e = u.adjoint() * u - SMatrix::<C, 4, 4>::identity();
        assert!(e.norm() < 1e-12);
    }

    #[test]
    fn chordal_distance_is_phase_invariant() {
        let u = normalized(&[c(1.0, 0.0), c(0.0, 1.0)]);
        let v = u.map(|z| z * C::from_polar(1.0, 0.7));
        assert!(chordal_distance(&u, &v) < 1e-7);
        let w = normalized(&[c(1.0, 0.0), c(0.0, -1.0)]);
        assert!((chordal_distance(&u, &w) - 1.0).abs() < 1e-12);
    }
}
