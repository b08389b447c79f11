//! Kraus (Popescu) systems, transfer superoperators, stationary states and
//! the induced translation-invariant chain state.

use ndarray::Array2;

use crate::error::{FcsError, Result};
use crate::mat::{
    self, dagger, frob_norm, identity, null_space, psd_power, sandwich_matrix, trace,
    vectorize_op, CMat, CVec, C64,
};
use crate::word::{word_count, Word, WordTable};

pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_WORD_CAP: usize = 100_000;
/// Largest d^n for which a window density matrix may be materialized.
pub const DEFAULT_WINDOW_CAP: usize = 4096;

/// A family v_1..v_d of k×k matrices with Σ v_k v_k* = 1.
#[derive(Debug, Clone)]
pub struct PopescuSystem {
    pub d: usize,
    pub k: usize,
    pub kraus: Vec<CMat>,
    /// ‖Σ v_k v_k* − 1‖_F recorded at validation time.
    pub norm_residual: f64,
}

impl PopescuSystem {
    /// Construct without checking normalization (zoo/internal use).
    pub fn new_unchecked(kraus: Vec<CMat>) -> Self {
        let d = kraus.len();
        let k = kraus[0].nrows();
        let sum = kraus
            .iter()
            .fold(CMat::zeros((k, k)), |acc, v| acc + v.dot(&dagger(v)));
        let norm_residual = frob_norm(&(&sum - &identity(k)));
        PopescuSystem { d, k, kraus, norm_residual }
    }

    /// Unital transfer map τ(x) = Σ v_k x v_k*.
    pub fn tau(&self, x: &CMat) -> CMat {
        self.kraus
            .iter()
            .fold(CMat::zeros((self.k, self.k)), |acc, v| acc + v.dot(x).dot(&dagger(v)))
    }

    /// Trace-preserving dual τ*(x) = Σ v_k* x v_k.
    pub fn tau_adjoint(&self, x: &CMat) -> CMat {
        self.kraus
            .iter()
            .fold(CMat::zeros((self.k, self.k)), |acc, v| acc + dagger(v).dot(x).dot(v))
    }
}

/// Validate shapes and the normalization Σ v_k v_k* = 1.
pub fn validate_system(kraus: Vec<CMat>, tol: f64) -> Result<PopescuSystem> {
    if kraus.len() < 2 {
        return Err(FcsError::Shape(format!(
            "need d >= 2 Kraus matrices, got {}",
            kraus.len()
        )));
    }
    let k = kraus[0].nrows();
    if k == 0 {
        return Err(FcsError::Shape("bond dimension must be >= 1".into()));
    }
    for (i, v) in kraus.iter().enumerate() {
        if v.nrows() != k || v.ncols() != k {
            return Err(FcsError::Shape(format!(
                "kraus[{i}] has shape {}x{}, expected {k}x{k}",
                v.nrows(),
                v.ncols()
            )));
        }
    }
    let sys = PopescuSystem::new_unchecked(kraus);
    if sys.norm_residual > tol {
        return Err(FcsError::Normalization { residual: sys.norm_residual, tol });
    }
    Ok(sys)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum SuperKind {
    /// x ↦ Σ v_k x v_k* (unital)
    Transfer,
    /// x ↦ Σ v_k* x v_k (trace-preserving)
    Adjoint,
    /// X ↦ Σ a_k X b_k*-type twisted map (covariance solves)
    Twisted,
}

/// A k²×k² matrix acting on vectorized bond operators.
pub struct Superoperator {
    pub matrix: CMat,
    pub kind: SuperKind,
}

/// Matrix of τ or τ* under the row-major vectorization.
pub fn transfer_superoperator(sys: &PopescuSystem, kind: SuperKind) -> Superoperator {
    let k2 = sys.k * sys.k;
    let mut m = CMat::zeros((k2, k2));
    for v in &sys.kraus {
        let term = match kind {
            SuperKind::Transfer => sandwich_matrix(v, &dagger(v)),
            SuperKind::Adjoint => sandwich_matrix(&dagger(v), v),
            SuperKind::Twisted => panic!("twisted maps are built in the symmetry module"),
        };
        m = m + term;
    }
    Superoperator { matrix: m, kind }
}

/// Matrix of X ↦ Σ a_k X b_k* for two operator families.
pub fn paired_superoperator(a: &[CMat], b: &[CMat]) -> CMat {
    let k2 = a[0].nrows() * a[0].nrows();
    let mut m = CMat::zeros((k2, k2));
    for (ai, bi) in a.iter().zip(b.iter()) {
        m = m + sandwich_matrix(ai, &dagger(bi));
    }
    m
}

#[derive(Debug, Clone)]
pub struct StationaryData {
    /// Stationary density matrix: τ*(ρ) = ρ, ρ ⪰ 0, Tr ρ = 1.
    pub rho: CMat,
    pub faithful: bool,
    pub unique: bool,
    /// ‖τ*(ρ) − ρ‖_F
    pub residual: f64,
    /// Dimension of the eigenvalue-1 eigenspace of τ*.
    pub fixed_dim: usize,
}

/// Extract a stationary density matrix of τ*.
///
/// The fixed space of τ* − id is computed as an SVD null space (robust when
/// the eigenvalue-1 eigenspace is degenerate); the canonical member is the
/// orthogonal projection of the maximally mixed state onto that space,
/// Hermitized, clipped and trace-normalized.
pub fn stationary_state(sys: &PopescuSystem, tol: f64) -> Result<StationaryData> {
    let k = sys.k;
    let sup = transfer_superoperator(sys, SuperKind::Adjoint);
    let m = &sup.matrix - &identity(k * k);
    let kernel = null_space(&m, tol.max(1e-12).sqrt() * 1e-3)?;
    if kernel.is_empty() {
        return Err(FcsError::NoStationaryState(
            "empty kernel of the trace-preserving transfer map".into(),
        ));
    }
    let fixed_dim = kernel.len();
    // project vec(1/k) onto the kernel
    let mixed = vectorize_op(&identity(k).mapv(|z| z / k as f64));
    let mut proj = CVec::zeros(k * k);
    for b in &kernel {
        let ip: C64 = b.iter().zip(mixed.iter()).map(|(p, c)| p.conj() * c).sum();
        proj = proj + b.mapv(|z| z * ip);
    }
    let cand = mat::unvectorize_op(&proj, k);
    let herm = mat::herm_part(&cand);
    // clip tiny negative eigenvalues and renormalize
    let (w, vecs) = mat::eigh_ascending(&herm)?;
    let vd = dagger(&vecs);
    let mut dmat = CMat::zeros((k, k));
    for (i, &wi) in w.iter().enumerate() {
        dmat[(i, i)] = C64::new(wi.max(0.0), 0.0);
    }
    let mut rho = vecs.dot(&dmat).dot(&vd);
    let tr = trace(&rho).re;
    if tr <= tol {
        return Err(FcsError::NoStationaryState(
            "projected stationary candidate has vanishing trace".into(),
        ));
    }
    rho = rho.mapv(|z| z / tr);
    let residual = frob_norm(&(&sys.tau_adjoint(&rho) - &rho));
    if residual > 10.0 * tol.max(1e-12) {
        return Err(FcsError::NoStationaryState(format!(
            "stationarity residual {residual:.3e}"
        )));
    }
    let (w, _) = mat::eigh_ascending(&rho)?;
    let faithful = w[0] > 1e-9;
    Ok(StationaryData {
        rho,
        faithful,
        unique: fixed_dim == 1,
        residual,
        fixed_dim,
    })
}

/// Restrict the Kraus family to the support of ρ. The support of a
/// stationary state is invariant, so the compressed family is again
/// normalized; this is re-validated.
pub fn compress_to_support(
    sys: &PopescuSystem,
    rho: &CMat,
    tol: f64,
) -> Result<(PopescuSystem, CMat)> {
    let (w, vecs) = mat::eigh_ascending(rho)?;
    let keep: Vec<usize> = (0..w.len()).filter(|&i| w[i] > 1e-9).collect();
    if keep.is_empty() {
        return Err(FcsError::NotFaithful("stationary state has empty support".into()));
    }
    let r = keep.len();
    let mut iso = CMat::zeros((sys.k, r));
    for (c, &i) in keep.iter().enumerate() {
        iso.column_mut(c).assign(&vecs.column(i));
    }
    let isod = dagger(&iso);
    let kraus: Vec<CMat> = sys.kraus.iter().map(|v| isod.dot(v).dot(&iso)).collect();
    let compressed = validate_system(kraus, (tol * 100.0).max(1e-8))?;
    Ok((compressed, iso))
}

/// A stationary Popescu system together with its chain-state evaluator.
///
/// Construction compresses to the support of the stationary state when
/// needed, so `rho` is always faithful on the retained bond space.
pub struct ChainState {
    pub system: PopescuSystem,
    pub stationary: StationaryData,
    pub rho_sqrt: CMat,
    /// Bond dimension before support compression, if any was applied.
    pub original_k: usize,
}

impl ChainState {
    pub fn new(sys: PopescuSystem, tol: f64) -> Result<ChainState> {
        let original_k = sys.k;
        let mut sys = sys;
        let mut st = stationary_state(&sys, tol)?;
        let mut guard = 0;
        while !st.faithful {
            let (compressed, _) = compress_to_support(&sys, &st.rho, tol)?;
            sys = compressed;
            st = stationary_state(&sys, tol)?;
            guard += 1;
            if guard > original_k {
                return Err(FcsError::NotFaithful(
                    "support compression did not stabilize".into(),
                ));
            }
        }
        let rho_sqrt = psd_power(&st.rho, 0.5, 0.0)?;
        Ok(ChainState { system: sys, stationary: st, rho_sqrt, original_k })
    }

    /// φ₀(x) = Tr(ρ x)
    pub fn phi(&self, x: &CMat) -> C64 {
        trace(&self.stationary.rho.dot(x))
    }

    /// ψ(s_I s_J*) = φ₀(v_I v_J*)
    pub fn cuntz_moment(&self, table: &WordTable, i: &Word, j: &Word) -> C64 {
        let vi = table.product(i);
        let vj = table.product(j);
        self.phi(&vi.dot(&dagger(vj)))
    }

    /// Word-product table for all |I| ≤ max_len.
    pub fn word_table(&self, max_len: usize, cap: usize) -> Result<WordTable> {
        WordTable::build(&self.system.kraus, max_len, cap)
    }

    /// Reduced density matrix of an n-site window, entry
    /// ⟨I|ρ_w|J⟩ = φ₀(v_I v_J*), with site 1 as the most significant digit.
    ///
    /// Assembled as a Gram matrix of the vectors v_I* ρ^{1/2}, which keeps it
    /// Hermitian PSD to machine precision.
    pub fn window_density(&self, n: usize, cap: usize) -> Result<CMat> {
        if n == 0 {
            return Err(FcsError::Shape("window length must be >= 1".into()));
        }
        let d = self.system.d;
        let dim = d
            .checked_pow(n as u32)
            .ok_or_else(|| FcsError::Cap("window dimension overflow".into()))?;
        if dim > cap {
            return Err(FcsError::Cap(format!("window dimension {dim} exceeds cap {cap}")));
        }
        let k = self.system.k;
        let table = WordTable::build(&self.system.kraus, n, word_count(d, n).max(1))?;
        // columns x_I = vec(v_I* ρ^{1/2})
        let mut x = CMat::zeros((k * k, dim));
        for (idx, (_, v)) in table.words_of_len(n).enumerate() {
            let col = vectorize_op(&dagger(v).dot(&self.rho_sqrt));
            x.column_mut(idx).assign(&col);
        }
        let gram = dagger(&x).dot(&x);
        Ok(gram)
    }
}

/// Partial trace over the last site of a d^n-dim window density.
pub fn trace_out_last(m: &CMat, d: usize) -> CMat {
    let dim = m.nrows();
    let sub = dim / d;
    let mut out = Array2::zeros((sub, sub));
    for i in 0..sub {
        for j in 0..sub {
            let mut acc = C64::new(0.0, 0.0);
            for a in 0..d {
                acc += m[(i * d + a, j * d + a)];
            }
            out[(i, j)] = acc;
        }
    }
    out
}

/// Partial trace over the first site of a d^n-dim window density.
pub fn trace_out_first(m: &CMat, d: usize) -> CMat {
    let dim = m.nrows();
    let sub = dim / d;
    let mut out = Array2::zeros((sub, sub));
    for i in 0..sub {
        for j in 0..sub {
            let mut acc = C64::new(0.0, 0.0);
            for a in 0..d {
                acc += m[(a * sub + i, a * sub + j)];
            }
            out[(i, j)] = acc;
        }
    }
    out
}
