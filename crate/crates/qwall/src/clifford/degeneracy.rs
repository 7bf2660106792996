//! Numerical witness that the symmetry algebra forces band degeneracy.
//!
//! A random Hermitian matrix is averaged over the finite group generated by
//! the k-local symmetries (the translation matrices and, when present, the
//! parity-time product). Whatever survives commutes with every one of them,
//! so its eigenvalue multiplicities are dictated by the commutant, not by the
//! randomness.

use super::gauss::GaussMat;
use super::momentum::{compose, BandRep};
use super::CliffordError;
use nalgebra::{Complex, DMatrix};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Closure of the k-local symmetry matrices under composition, each tagged
/// with whether it acts antiunitarily. Breadth-first, deterministic order.
pub fn symmetrizer_closure(rep: &BandRep) -> Vec<(GaussMat, bool)> {
    let mut gens: Vec<(GaussMat, bool)> = vec![
        (rep.l_x.matrix.clone(), false),
        (rep.l_y.matrix.clone(), false),
    ];
    if let Some(pt) = &rep.pt {
        let pt_op = compose(&pt.parity, &pt.time_reversal);
        assert!(
            !pt_op.inverts_k,
            "parity-time product must be local in k to constrain H(k)"
        );
        gens.push((pt_op.matrix, pt_op.antiunitary));
    }

    let mut seen = std::collections::HashSet::new();
    let mut order = Vec::new();
    let mut queue = std::collections::VecDeque::new();
    let id = (GaussMat::identity(rep.bands), false);
    seen.insert(id.clone());
    order.push(id.clone());
    queue.push_back(id);
    while let Some((m, anti)) = queue.pop_front() {
        for (g, ganti) in &gens {
            let gm = if anti { g.conj() } else { g.clone() };
            let next = (m.mul(&gm), anti ^ ganti);
            if seen.insert(next.clone()) {
                assert!(order.len() < 4096, "symmetrizer closure did not stay finite");
                order.push(next.clone());
                queue.push_back(next);
            }
        }
    }
    order
}

fn to_dmatrix(m: &GaussMat) -> DMatrix<Complex<f64>> {
    let n = m.n();
    DMatrix::from_fn(n, n, |i, j| {
        let z = m.get(i, j);
        Complex::new(z.re as f64, z.im as f64)
    })
}

/// Group average of `h` over the closure; commutes with every element.
pub fn symmetrize(
    h: &DMatrix<Complex<f64>>,
    closure: &[(GaussMat, bool)],
) -> DMatrix<Complex<f64>> {
    let n = h.nrows();
    let mut acc = DMatrix::from_element(n, n, Complex::new(0.0, 0.0));
    for (m, anti) in closure {
        let u = to_dmatrix(m);
        let hh = if *anti { h.map(|z| z.conj()) } else { h.clone() };
        acc += &u * hh * u.adjoint();
    }
    acc / Complex::new(closure.len() as f64, 0.0)
}

fn random_hermitian(n: usize, rng: &mut ChaCha8Rng) -> DMatrix<Complex<f64>> {
    let mut h = DMatrix::from_element(n, n, Complex::new(0.0, 0.0));
    for i in 0..n {
        h[(i, i)] = Complex::new(rng.gen_range(-1.0..1.0), 0.0);
        for j in i + 1..n {
            let z = Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            h[(i, j)] = z;
            h[(j, i)] = z.conj();
        }
    }
    h
}

enum Clustering {
    Resolved(usize),
    Ambiguous,
}

/// Smallest eigenvalue multiplicity, with a guard band: gaps comparable to
/// the split tolerance are treated as unresolved rather than guessed.
fn cluster_multiplicity(h: &DMatrix<Complex<f64>>) -> Clustering {
    let eig = h.clone().symmetric_eigen();
    let mut vals: Vec<f64> = eig.eigenvalues.iter().cloned().collect();
    vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let scale = vals.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    let tol = 1e-9 * scale;
    let mut sizes = Vec::new();
    let mut current = 1usize;
    for w in vals.windows(2) {
        let gap = w[1] - w[0];
        if gap > 1e-3 * tol && gap < 1e3 * tol {
            return Clustering::Ambiguous;
        }
        if gap > tol {
            sizes.push(current);
            current = 1;
        } else {
            current += 1;
        }
    }
    sizes.push(current);
    Clustering::Resolved(sizes.into_iter().min().unwrap())
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct DegeneracyReport {
    pub bands: usize,
    pub samples: usize,
    pub closure_size: usize,
    /// Smallest eigenvalue multiplicity seen in each sample.
    pub multiplicities: Vec<usize>,
    pub min_multiplicity: usize,
    pub resamples: usize,
}

/// Draws `samples` random Hermitians, symmetrizes each, and reports the
/// eigenvalue multiplicities the symmetry forces.
pub fn degeneracy_check(
    rep: &BandRep,
    samples: usize,
    seed: u64,
) -> Result<DegeneracyReport, CliffordError> {
    let closure = symmetrizer_closure(rep);
    degeneracy_check_with_closure(rep.bands, &closure, samples, seed)
}

pub fn degeneracy_check_with_closure(
    bands: usize,
    closure: &[(GaussMat, bool)],
    samples: usize,
    seed: u64,
) -> Result<DegeneracyReport, CliffordError> {
    use rand::SeedableRng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut multiplicities = Vec::with_capacity(samples);
    let mut resamples = 0usize;
    for _ in 0..samples {
        let mut attempts = 0usize;
        loop {
            let h0 = random_hermitian(bands, &mut rng);
            let h = symmetrize(&h0, closure);
            match cluster_multiplicity(&h) {
                Clustering::Resolved(mult) => {
                    multiplicities.push(mult);
                    break;
                }
                Clustering::Ambiguous => {
                    attempts += 1;
                    resamples += 1;
                    if attempts > 3 {
                        return Err(CliffordError::DegeneracyUnresolved { attempts });
                    }
                }
            }
        }
    }
    let min_multiplicity = multiplicities.iter().copied().min().unwrap_or(0);
    Ok(DegeneracyReport {
        bands,
        samples,
        closure_size: closure.len(),
        multiplicities,
        min_multiplicity,
        resamples,
    })
}
