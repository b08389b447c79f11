//! Dense complex matrix helpers and the operator-vectorization convention.
//!
//! The vectorization used everywhere stacks a `k×k` matrix row by row into a
//! length-`k²` vector. Under this enumeration the sandwich identity
//! `vectorize(A X B) = (A ⊗ Bᵀ) · vectorize(X)` holds exactly, which is what
//! every superoperator construction in the crate relies on.

use ndarray::{s, Array1, Array2};
use ndarray_linalg::{Eig, Eigh, SVD, UPLO};

use crate::error::{FcsError, Result};

pub type C64 = num_complex::Complex<f64>;
pub type CMat = Array2<C64>;
pub type CVec = Array1<C64>;

pub const ONE: C64 = C64::new(1.0, 0.0);
pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

pub fn identity(k: usize) -> CMat {
    Array2::eye(k)
}

/// Matrix unit e_{ij} in dimension k.
pub fn mat_unit(k: usize, i: usize, j: usize) -> CMat {
    let mut m = CMat::zeros((k, k));
    m[(i, j)] = ONE;
    m
}

pub fn dagger(a: &CMat) -> CMat {
    a.t().mapv(|z| z.conj())
}

pub fn conj(a: &CMat) -> CMat {
    a.mapv(|z| z.conj())
}

pub fn frob_norm(a: &CMat) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn max_abs(a: &CMat) -> f64 {
    a.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn trace(a: &CMat) -> C64 {
    a.diag().sum()
}

pub fn herm_part(a: &CMat) -> CMat {
    (a + &dagger(a)).mapv(|z| 0.5 * z)
}

/// Kronecker product, row-major index order: (i1,i2) ↦ i1*n2 + i2.
pub fn kron(a: &CMat, b: &CMat) -> CMat {
    let (m1, n1) = a.dim();
    let (m2, n2) = b.dim();
    let mut out = CMat::zeros((m1 * m2, n1 * n2));
    for i1 in 0..m1 {
        for j1 in 0..n1 {
            let z = a[(i1, j1)];
            if z == ZERO {
                continue;
            }
            let mut block = out.slice_mut(s![i1 * m2..(i1 + 1) * m2, j1 * n2..(j1 + 1) * n2]);
            block.zip_mut_with(b, |o, &w| *o += z * w);
        }
    }
    out
}

/// Row-major stacking of a square matrix into a vector.
pub fn vectorize_op(x: &CMat) -> CVec {
    CVec::from_iter(x.iter().cloned())
}

pub fn unvectorize_op(v: &CVec, k: usize) -> CMat {
    CMat::from_shape_vec((k, k), v.to_vec()).expect("vector length must be k*k")
}

/// Matrix of the map X ↦ A X B under the row-major vectorization.
pub fn sandwich_matrix(a: &CMat, b: &CMat) -> CMat {
    kron(a, &b.t().to_owned())
}

/// Hermitian eigendecomposition, eigenvalues ascending.
pub fn eigh_ascending(a: &CMat) -> Result<(Array1<f64>, CMat)> {
    let (w, v) = a
        .eigh(UPLO::Lower)
        .map_err(|e| FcsError::Convergence(format!("eigh: {e}")))?;
    Ok((w, v))
}

/// General complex eigendecomposition (eigenvalues, right eigenvectors as columns).
pub fn eig(a: &CMat) -> Result<(CVec, CMat)> {
    a.eig()
        .map_err(|e| FcsError::Convergence(format!("eig: {e}")))
}

/// Orthonormal basis of the null space of `a`, from the SVD.
pub fn null_space(a: &CMat, tol: f64) -> Result<Vec<CVec>> {
    let (_, sv, vt) = a
        .svd(false, true)
        .map_err(|e| FcsError::Convergence(format!("svd: {e}")))?;
    let vt = vt.expect("requested V^T");
    let n = vt.ncols();
    let mut basis = Vec::new();
    for j in 0..n {
        let s_j = if j < sv.len() { sv[j] } else { 0.0 };
        if s_j < tol {
            basis.push(vt.row(j).mapv(|z| z.conj()));
        }
    }
    Ok(basis)
}

pub fn rank(a: &CMat, tol: f64) -> Result<usize> {
    let (_, sv, _) = a
        .svd(false, false)
        .map_err(|e| FcsError::Convergence(format!("svd: {e}")))?;
    Ok(sv.iter().filter(|&&s| s >= tol).count())
}

/// Unitary polar factor U from A = U P (via SVD).
pub fn polar_unitary(a: &CMat) -> Result<CMat> {
    let (u, _, vt) = a
        .svd(true, true)
        .map_err(|e| FcsError::Convergence(format!("svd: {e}")))?;
    Ok(u.expect("U").dot(&vt.expect("Vt")))
}

/// Power of a positive-semidefinite Hermitian matrix with eigenvalue floor.
pub fn psd_power(a: &CMat, p: f64, floor: f64) -> Result<CMat> {
    let (w, v) = eigh_ascending(a)?;
    let vd = dagger(&v);
    let mut d = CMat::zeros((w.len(), w.len()));
    for (i, &wi) in w.iter().enumerate() {
        let x = wi.max(floor);
        d[(i, i)] = C64::new(x.powf(p), 0.0);
    }
    Ok(v.dot(&d).dot(&vd))
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_eig_hermitian(a: &CMat) -> Result<f64> {
    let (w, _) = eigh_ascending(a)?;
    Ok(w[0])
}

/// exp(iθ H) for Hermitian H.
pub fn expi_hermitian(h: &CMat, theta: f64) -> Result<CMat> {
    let (w, v) = eigh_ascending(h)?;
    let vd = dagger(&v);
    let mut d = CMat::zeros((w.len(), w.len()));
    for (i, &wi) in w.iter().enumerate() {
        d[(i, i)] = C64::from_polar(1.0, theta * wi);
    }
    Ok(v.dot(&d).dot(&vd))
}

/// Least-squares solve min ‖A x − b‖ via SVD pseudoinverse.
pub fn lstsq(a: &CMat, b: &CVec, tol: f64) -> Result<CVec> {
    let (u, sv, vt) = a
        .svd(true, true)
        .map_err(|e| FcsError::Convergence(format!("svd: {e}")))?;
    let u = u.expect("U");
    let vt = vt.expect("Vt");
    let ub = dagger(&u).dot(b);
    let r = sv.len();
    let mut y = CVec::zeros(vt.nrows());
    for i in 0..r {
        if sv[i] > tol {
            y[i] = ub[i] / C64::new(sv[i], 0.0);
        }
    }
    Ok(dagger(&vt).dot(&y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    pub fn random_cmat(rng: &mut ChaCha8Rng, m: usize, n: usize) -> CMat {
        CMat::from_shape_fn((m, n), |_| {
            C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
        })
    }

    #[test]
    fn vectorize_round_trip_identity() {
        let x = identity(2);
        let v = vectorize_op(&x);
        assert_eq!(unvectorize_op(&v, 2), x);
        // unit-trace pattern: entries 1 at slots 0 and 3
        assert_eq!(v[0], ONE);
        assert_eq!(v[3], ONE);
        assert_eq!(v[1], ZERO);
    }

    #[test]
    fn vectorize_matrix_unit_slot() {
        // e_{01} in 2x2 lands at row-major slot 0*2+1 = 1
        let v = vectorize_op(&mat_unit(2, 0, 1));
        assert_eq!(v[1], ONE);
        assert_eq!(v.iter().filter(|&&z| z != ZERO).count(), 1);
    }

    #[test]
    fn sandwich_identity_random_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for k in [2usize, 3, 4] {
            for _ in 0..100 {
                let a = random_cmat(&mut rng, k, k);
                let x = random_cmat(&mut rng, k, k);
                let b = random_cmat(&mut rng, k, k);
                let lhs = vectorize_op(&a.dot(&x).dot(&b));
                let rhs = sandwich_matrix(&a, &b).dot(&vectorize_op(&x));
                let err = (&lhs - &rhs).iter().map(|z| z.norm()).fold(0.0, f64::max);
                assert!(err < 1e-12, "k={k} err={err}");
            }
        }
    }

    #[test]
    fn null_space_of_projector_complement() {
        let mut a = identity(3);
        a[(2, 2)] = ZERO;
        let ns = null_space(&a, 1e-10).unwrap();
        assert_eq!(ns.len(), 1);
        assert!((ns[0][2].norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn polar_of_unitary_is_itself() {
        let h = CMat::from_shape_vec(
            (2, 2),
            vec![C64::new(0.3, 0.0), C64::new(0.1, 0.2), C64::new(0.1, -0.2), C64::new(-0.4, 0.0)],
        )
        .unwrap();
        let u = expi_hermitian(&h, 1.0).unwrap();
        let p = polar_unitary(&u).unwrap();
        assert!(frob_norm(&(&p - &u)) < 1e-12);
    }
}
