//! Numeric word-triviality oracle for the triangle group
//! `<alpha, beta, gamma | alpha^a = beta^b = gamma^c = alpha beta gamma = 1>`.
//!
//! The generators are realized as isometries of the hyperboloid model of
//! the hyperbolic plane (Lorentz form `diag(1,1,-1)`): each generator is
//! the product of reflections in two sides of the geodesic triangle with
//! angles `pi/a, pi/b, pi/c`, which makes the defining relations hold by
//! construction up to rounding. A word is declared trivial when its matrix
//! product is within `tol` of the identity in Frobenius norm.
//!
//! Elliptic signatures get the analogous Euclidean (affine) representation;
//! it is only reachable through the experimental elliptic path.

use crate::words::{CyclicWord, Letter, OrbifoldSignature, SpaceForm};
use crate::{Error, Result};
use num_traits::{Float, FloatConst};

pub type Mat3<F> = [[F; 3]; 3];

fn mat_identity<F: Float>() -> Mat3<F> {
    let (o, l) = (F::zero(), F::one());
    [[l, o, o], [o, l, o], [o, o, l]]
}

fn mat_mul<F: Float>(a: &Mat3<F>, b: &Mat3<F>) -> Mat3<F> {
    let mut out = [[F::zero(); 3]; 3];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            let mut acc = F::zero();
            for (k, bk) in b.iter().enumerate() {
                acc = acc + a[i][k] * bk[j];
            }
            *cell = acc;
        }
    }
    out
}

fn mat_pow<F: Float>(m: &Mat3<F>, e: u32) -> Mat3<F> {
    let mut out = mat_identity();
    for _ in 0..e {
        out = mat_mul(&out, m);
    }
    out
}

/// Frobenius-norm distance to the identity.
fn identity_distance<F: Float>(m: &Mat3<F>) -> F {
    let mut acc = F::zero();
    for (i, row) in m.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            let target = if i == j { F::one() } else { F::zero() };
            let d = x - target;
            acc = acc + d * d;
        }
    }
    acc.sqrt()
}

/// Matrix representation of the three generators.
#[derive(Clone, Debug)]
pub struct TriangleRep<F: Float> {
    pub m_alpha: Mat3<F>,
    pub m_beta: Mat3<F>,
    pub m_gamma: Mat3<F>,
    pub sig: OrbifoldSignature,
    pub tol: F,
}

impl<F: Float + FloatConst> TriangleRep<F> {
    pub fn matrix_of(&self, letter: Letter) -> &Mat3<F> {
        match letter {
            Letter::Alpha => &self.m_alpha,
            Letter::Beta => &self.m_beta,
            Letter::Gamma => &self.m_gamma,
        }
    }

    /// Ordered matrix product along the word.
    pub fn product(&self, w: &CyclicWord) -> Mat3<F> {
        let mut acc = mat_identity();
        for &l in w.letters() {
            acc = mat_mul(&acc, self.matrix_of(l));
        }
        acc
    }

    fn check_relations(&self) -> Result<()> {
        let residuals = [
            identity_distance(&mat_pow(&self.m_alpha, self.sig.a)),
            identity_distance(&mat_pow(&self.m_beta, self.sig.b)),
            identity_distance(&mat_pow(&self.m_gamma, self.sig.c)),
            identity_distance(&mat_mul(
                &mat_mul(&self.m_alpha, &self.m_beta),
                &self.m_gamma,
            )),
        ];
        for r in residuals {
            if !(r < self.tol) {
                return Err(Error::RepresentationFailed(format!(
                    "defining-relation residual {:e} >= tol for {}",
                    r.to_f64().unwrap_or(f64::NAN),
                    self.sig
                )));
            }
        }
        Ok(())
    }
}

/// Lorentz inner product for `diag(1,1,-1)`.
fn lorentz_dot<F: Float>(u: &[F; 3], v: &[F; 3]) -> F {
    u[0] * v[0] + u[1] * v[1] - u[2] * v[2]
}

/// Spacelike normal of the geodesic through two hyperboloid points.
fn lorentz_normal<F: Float>(u: &[F; 3], v: &[F; 3]) -> [F; 3] {
    let cross = [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ];
    [cross[0], cross[1], -cross[2]]
}

/// Reflection in the geodesic through `u` and `v`.
fn reflection<F: Float>(u: &[F; 3], v: &[F; 3]) -> Mat3<F> {
    let n = lorentz_normal(u, v);
    let nn = lorentz_dot(&n, &n);
    let two = F::one() + F::one();
    let mut m = mat_identity::<F>();
    let metric = [F::one(), F::one(), -F::one()];
    for i in 0..3 {
        for j in 0..3 {
            m[i][j] = m[i][j] - two * n[i] * metric[j] * n[j] / nn;
        }
    }
    m
}

/// Builds the hyperbolic representation with rotation angles
/// `2 pi / a, 2 pi / b, 2 pi / c` about the triangle vertices.
pub fn build_rep<F: Float + FloatConst>(
    sig: &OrbifoldSignature,
    tol: F,
) -> Result<TriangleRep<F>> {
    if sig.kind() != SpaceForm::Hyperbolic {
        return Err(Error::NonHyperbolic(format!(
            "{sig} is {}; the hyperboloid oracle needs a hyperbolic signature",
            sig.kind()
        )));
    }
    let pi = F::PI();
    let of = |n: u32| pi / F::from(n).expect("small integer fits in float");
    let (aa, bb, cc) = (of(sig.a), of(sig.b), of(sig.c));
    // hyperbolic law of cosines: side AB is opposite the angle at C
    let side = |x: F, y: F, z: F| ((x.cos() * y.cos() + z.cos()) / (x.sin() * y.sin())).acosh();
    let len_ab = side(aa, bb, cc);
    let len_ac = side(aa, cc, bb);
    let v_a = [F::zero(), F::zero(), F::one()];
    let v_b = [len_ab.sinh(), F::zero(), len_ab.cosh()];
    let v_c = [
        len_ac.sinh() * aa.cos(),
        len_ac.sinh() * aa.sin(),
        len_ac.cosh(),
    ];
    let s_ab = reflection(&v_a, &v_b);
    let s_bc = reflection(&v_b, &v_c);
    let s_ca = reflection(&v_c, &v_a);
    // alpha = s_ca s_ab, beta = s_ab s_bc, gamma = s_bc s_ca:
    // the product alpha beta gamma telescopes to the identity.
    let rep = TriangleRep {
        m_alpha: mat_mul(&s_ca, &s_ab),
        m_beta: mat_mul(&s_ab, &s_bc),
        m_gamma: mat_mul(&s_bc, &s_ca),
        sig: *sig,
        tol,
    };
    rep.check_relations()?;
    Ok(rep)
}

/// Euclidean (affine) representation for elliptic signatures; reachable
/// only through the experimental elliptic path.
pub fn build_rep_euclidean<F: Float + FloatConst>(
    sig: &OrbifoldSignature,
    tol: F,
) -> Result<TriangleRep<F>> {
    if sig.kind() != SpaceForm::Elliptic {
        return Err(Error::Domain(format!(
            "{sig} is {}; the affine oracle needs an elliptic signature",
            sig.kind()
        )));
    }
    let pi = F::PI();
    let of = |n: u32| pi / F::from(n).expect("small integer fits in float");
    let (aa, bb, cc) = (of(sig.a), of(sig.b), of(sig.c));
    // law of sines with unit circumdiameter: side AB is opposite angle C
    let v_a = [F::zero(), F::zero(), F::one()];
    let v_b = [cc.sin(), F::zero(), F::one()];
    let v_c = [bb.sin() * aa.cos(), bb.sin() * aa.sin(), F::one()];
    let s_ab = affine_reflection(&v_a, &v_b);
    let s_bc = affine_reflection(&v_b, &v_c);
    let s_ca = affine_reflection(&v_c, &v_a);
    let rep = TriangleRep {
        m_alpha: mat_mul(&s_ca, &s_ab),
        m_beta: mat_mul(&s_ab, &s_bc),
        m_gamma: mat_mul(&s_bc, &s_ca),
        sig: *sig,
        tol,
    };
    rep.check_relations()?;
    Ok(rep)
}

/// Affine reflection in the line through `p` and `q` (points with last
/// coordinate 1), as a 3x3 matrix acting on `(x, y, 1)`.
fn affine_reflection<F: Float>(p: &[F; 3], q: &[F; 3]) -> Mat3<F> {
    let dx = q[0] - p[0];
    let dy = q[1] - p[1];
    let norm = (dx * dx + dy * dy).sqrt();
    let (dx, dy) = (dx / norm, dy / norm);
    let two = F::one() + F::one();
    // linear part 2 d d^T - I
    let r = [
        [two * dx * dx - F::one(), two * dx * dy],
        [two * dx * dy, two * dy * dy - F::one()],
    ];
    let tx = p[0] - (r[0][0] * p[0] + r[0][1] * p[1]);
    let ty = p[1] - (r[1][0] * p[0] + r[1][1] * p[1]);
    [
        [r[0][0], r[0][1], tx],
        [r[1][0], r[1][1], ty],
        [F::zero(), F::zero(), F::one()],
    ]
}

/// True iff the ordered matrix product along `w` is within `rep.tol`
/// of the identity.
pub fn is_trivial<F: Float + FloatConst>(w: &CyclicWord, rep: &TriangleRep<F>) -> bool {
    identity_distance(&rep.product(w)) < rep.tol
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::CyclicWord;

    fn sig(a: u32, b: u32, c: u32) -> OrbifoldSignature {
        OrbifoldSignature::new(a, b, c).unwrap()
    }

    fn w(text: &str) -> CyclicWord {
        CyclicWord::parse(text).unwrap()
    }

    #[test]
    fn defining_relations_hold() {
        for s in [sig(4, 4, 4), sig(3, 4, 5), sig(2, 4, 5), sig(2, 3, 7)] {
            let rep = build_rep::<f64>(&s, 1e-9).unwrap();
            assert!(is_trivial(&w("abc"), &rep), "{s}");
        }
    }

    #[test]
    fn torsion_relations_hold() {
        let rep = build_rep::<f64>(&sig(3, 4, 5), 1e-9).unwrap();
        assert!(is_trivial(&w("(bc)^3"), &rep));
        assert!(is_trivial(&w("(ca)^4"), &rep));
        assert!(is_trivial(&w("(ab)^5"), &rep));
    }

    #[test]
    fn short_products_are_not_trivial() {
        let rep = build_rep::<f64>(&sig(3, 4, 5), 1e-6).unwrap();
        // ab = gamma^-1 has order 5, so it is not the identity
        assert!(!is_trivial(&w("ab"), &rep));
        assert!(!is_trivial(&w("(bc)^2"), &rep));
    }

    #[test]
    fn run_subwords_are_nontrivial() {
        // nonempty subwords of (gamma beta alpha)^inf up to length 30
        for s in [sig(4, 4, 4), sig(2, 3, 7), sig(2, 4, 5)] {
            let rep = build_rep::<f64>(&s, 1e-6).unwrap();
            let mut letters = Vec::new();
            let mut cur = Letter::Gamma;
            for len in 1..=30 {
                letters.push(cur);
                cur = cur.run_next();
                let word = CyclicWord::from_letters(&letters).unwrap();
                assert!(!is_trivial(&word, &rep), "run word of length {len} in {s}");
            }
        }
    }

    #[test]
    fn rejects_non_hyperbolic() {
        assert!(build_rep::<f64>(&sig(2, 3, 6), 1e-6).is_err());
        assert!(build_rep::<f64>(&sig(2, 3, 5), 1e-6).is_err());
    }

    #[test]
    fn euclidean_rep_for_elliptic() {
        for s in [sig(2, 3, 6), sig(2, 4, 4), sig(3, 3, 3)] {
            let rep = build_rep_euclidean::<f64>(&s, 1e-9).unwrap();
            assert!(is_trivial(&w("abc"), &rep), "{s}");
            assert!(!is_trivial(&w("ab"), &rep), "{s}");
        }
    }

    #[test]
    fn f32_rep_also_builds() {
        let rep = build_rep::<f32>(&sig(4, 4, 4), 1e-3f32).unwrap();
        assert!(is_trivial(&w("abc"), &rep));
    }
}
