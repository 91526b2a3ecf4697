//! Named states and seeded random state samplers.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qlinalg::{ComplexMatrix, DensityMatrix, Dims, PureState, C64};

/// A reproducible random source identified by `(seed, stream_id)`.
///
/// Backed by ChaCha20 with the stream id selecting an independent
/// keystream, so distinct ids never overlap.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RandomStream {
    pub seed: u64,
    pub stream_id: u64,
}

impl RandomStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        Self { seed, stream_id }
    }

    pub fn rng(&self) -> ChaCha20Rng {
        let mut rng = ChaCha20Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream_id);
        rng
    }

    /// A child stream keyed on this stream and `child`.
    pub fn fork(&self, child: u64) -> Self {
        Self {
            seed: splitmix64(self.seed ^ splitmix64(self.stream_id ^ 0x5851_f42d_4c95_7f2d)),
            stream_id: child,
        }
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// (N(0,1) + i·N(0,1)) / √2
pub fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Ghz,
    W,
    Bell,
    Product,
    HaarPure,
    GinibreMixed,
    CustomAmplitudes,
}

impl Family {
    pub fn is_random(self) -> bool {
        matches!(self, Family::HaarPure | Family::GinibreMixed)
    }
}

/// Family-specific parameters.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateParams {
    /// Mixes the state with white noise: v·ρ + (1 − v)·I/d.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub visibility: Option<f64>,
    /// Ginibre rank.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    /// Real parts of custom amplitudes.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub re: Option<Vec<f64>>,
    /// Imaginary parts of custom amplitudes; zero when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub im: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateSpec {
    pub family: Family,
    pub dims: Dims,
    #[serde(default)]
    pub params: StateParams,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// Either a state vector or a density operator.
#[derive(Debug, Clone, PartialEq)]
pub enum QuantumState {
    Pure(PureState),
    Mixed(DensityMatrix),
}

impl QuantumState {
    pub fn dims(&self) -> &Dims {
        match self {
            QuantumState::Pure(p) => p.dims(),
            QuantumState::Mixed(m) => m.dims(),
        }
    }

    pub fn is_pure(&self) -> bool {
        matches!(self, QuantumState::Pure(_))
    }

    pub fn to_density(&self) -> DensityMatrix {
        match self {
            QuantumState::Pure(p) => p.projector(),
            QuantumState::Mixed(m) => m.clone(),
        }
    }

    pub fn fingerprint(&self) -> String {
        match self {
            QuantumState::Pure(p) => p.fingerprint(),
            QuantumState::Mixed(m) => m.fingerprint(),
        }
    }
}

impl StateSpec {
    pub fn new(family: Family, dims: Dims) -> Self {
        Self {
            family,
            dims,
            params: StateParams::default(),
            seed: None,
        }
    }

    /// Checks family/dims consistency and parameter ranges.
    pub fn validate(&self) -> Result<()> {
        let dims = &self.dims;
        match self.family {
            Family::Ghz | Family::W => {
                if !dims.is_qubits() {
                    return Err(Error::argument(format!(
                        "{:?} requires qubit subsystems, got {:?}",
                        self.family,
                        dims.local()
                    )));
                }
                if dims.count() < 2 {
                    return Err(Error::argument("GHZ/W states need at least two qubits"));
                }
            }
            Family::Bell => {
                if dims.local() != [2, 2] {
                    return Err(Error::argument(format!(
                        "bell requires dims [2, 2], got {:?}",
                        dims.local()
                    )));
                }
            }
            Family::GinibreMixed => {
                let rank = self
                    .params
                    .rank
                    .ok_or_else(|| Error::argument("ginibre_mixed requires params.rank"))?;
                if rank == 0 || rank > dims.total() {
                    return Err(Error::argument(format!(
                        "rank {rank} outside 1..={}",
                        dims.total()
                    )));
                }
            }
            Family::CustomAmplitudes => {
                let re = self
                    .params
                    .re
                    .as_ref()
                    .ok_or_else(|| Error::argument("custom_amplitudes requires params.re"))?;
                if re.len() != dims.total() {
                    return Err(Error::DimensionMismatch {
                        expected: dims.total(),
                        found: re.len(),
                    });
                }
                if let Some(im) = &self.params.im {
                    if im.len() != dims.total() {
                        return Err(Error::DimensionMismatch {
                            expected: dims.total(),
                            found: im.len(),
                        });
                    }
                }
            }
            Family::Product | Family::HaarPure => {}
        }
        if let Some(v) = self.params.visibility {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::argument(format!("visibility {v} outside [0, 1]")));
            }
        }
        Ok(())
    }

    /// True when [`StateSpec::realize`] yields a mixed state.
    pub fn is_mixed(&self) -> bool {
        self.family == Family::GinibreMixed || self.params.visibility.is_some_and(|v| v < 1.0)
    }

    /// Builds the state; random families draw from `rng`.
    pub fn realize(&self, rng: &RandomStream) -> Result<QuantumState> {
        self.validate()?;
        let base = match self.family {
            Family::HaarPure => QuantumState::Pure(sample_haar_pure(&self.dims, rng)?),
            Family::GinibreMixed => QuantumState::Mixed(sample_ginibre_mixed(
                &self.dims,
                self.params.rank.unwrap_or(1),
                rng,
            )?),
            _ => QuantumState::Pure(make_named(self)?),
        };
        match (self.params.visibility, base) {
            (Some(v), state) if v < 1.0 => {
                Ok(QuantumState::Mixed(state.to_density().with_white_noise(v)?))
            }
            (_, state) => Ok(state),
        }
    }
}

/// Deterministic named states: GHZ, W, Bell, |0…0⟩ and custom amplitudes.
pub fn make_named(spec: &StateSpec) -> Result<PureState> {
    spec.validate()?;
    let dims = spec.dims.clone();
    let n = dims.total();
    let mut amps = vec![C64::new(0.0, 0.0); n];
    match spec.family {
        Family::Ghz => {
            amps[0] = C64::new(1.0, 0.0);
            amps[n - 1] = C64::new(1.0, 0.0);
        }
        Family::W => {
            let qubits = dims.count();
            for k in 0..qubits {
                amps[1 << k] = C64::new(1.0, 0.0);
            }
        }
        Family::Bell => {
            amps[0] = C64::new(1.0, 0.0);
            amps[3] = C64::new(1.0, 0.0);
        }
        Family::Product => amps[0] = C64::new(1.0, 0.0),
        Family::CustomAmplitudes => {
            let re = spec.params.re.as_deref().unwrap_or(&[]);
            let im = spec.params.im.as_deref();
            for (k, a) in amps.iter_mut().enumerate() {
                *a = C64::new(re[k], im.map_or(0.0, |im| im[k]));
            }
        }
        Family::HaarPure | Family::GinibreMixed => {
            return Err(Error::argument(format!(
                "{:?} is a random family; use a sampler",
                spec.family
            )))
        }
    }
    PureState::normalized(amps, dims)
}

/// Haar-random pure state: a normalized complex Gaussian vector.
pub fn sample_haar_pure(dims: &Dims, rng: &RandomStream) -> Result<PureState> {
    sample_haar_pure_with(dims, &mut rng.rng())
}

pub fn sample_haar_pure_with<R: Rng + ?Sized>(dims: &Dims, rng: &mut R) -> Result<PureState> {
    let amps = (0..dims.total()).map(|_| complex_normal(rng)).collect();
    PureState::normalized(amps, dims.clone())
}

/// ρ = GG†/tr(GG†) with G a `dim × rank` complex Gaussian matrix.
pub fn sample_ginibre_mixed(dims: &Dims, rank: usize, rng: &RandomStream) -> Result<DensityMatrix> {
    sample_ginibre_mixed_with(dims, rank, &mut rng.rng())
}

pub fn sample_ginibre_mixed_with<R: Rng + ?Sized>(
    dims: &Dims,
    rank: usize,
    rng: &mut R,
) -> Result<DensityMatrix> {
    let d = dims.total();
    if rank == 0 || rank > d {
        return Err(Error::argument(format!("rank {rank} outside 1..={d}")));
    }
    let g = ComplexMatrix::new(d, rank, (0..d * rank).map(|_| complex_normal(rng)).collect())?;
    let mut rho = g.matmul(&g.adjoint());
    let tr = rho.trace().re;
    rho = rho.scale_real(1.0 / tr).hermitian_part();
    DensityMatrix::new(rho, dims.clone())
}

/// Haar-random pure state on 2⊗2⊗3.
pub fn embed_223_family(rng: &RandomStream) -> PureState {
    let dims = Dims::new(vec![2, 2, 3]).expect("2⊗2⊗3 is within the dimension cap");
    sample_haar_pure(&dims, rng).expect("Gaussian vectors are normalizable")
}

/// Convenience constructors for the common named states.
pub fn ghz(n: usize) -> Result<PureState> {
    make_named(&StateSpec::new(Family::Ghz, Dims::qubits(n)?))
}

pub fn w_state(n: usize) -> Result<PureState> {
    make_named(&StateSpec::new(Family::W, Dims::qubits(n)?))
}

/// (|00⟩ + |11⟩)/√2
pub fn bell() -> PureState {
    make_named(&StateSpec::new(Family::Bell, Dims::qubits(2).expect("two qubits")))
        .expect("bell state is well formed")
}

/// Normalizes real amplitudes on `dims`.
pub fn from_real_amplitudes(amps: &[f64], dims: &[usize]) -> Result<PureState> {
    PureState::normalized(
        amps.iter().map(|&x| C64::new(x, 0.0)).collect(),
        Dims::new(dims.to_vec())?,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlinalg::{eig_hermitian, validate_density};

    const S2: f64 = std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn ghz3_amplitudes() {
        let g = ghz(3).unwrap();
        for (k, a) in g.amplitudes().iter().enumerate() {
            let want = if k == 0 || k == 7 { S2 } else { 0.0 };
            assert!((a.re - want).abs() < 1e-15 && a.im == 0.0);
        }
    }

    #[test]
    fn w3_amplitudes() {
        let w = w_state(3).unwrap();
        let third = 1.0 / 3f64.sqrt();
        for (k, a) in w.amplitudes().iter().enumerate() {
            let want = if [1, 2, 4].contains(&k) { third } else { 0.0 };
            assert!((a.re - want).abs() < 1e-15);
        }
    }

    #[test]
    fn bell_amplitudes() {
        let b = bell();
        assert!((b.amplitudes()[0].re - S2).abs() < 1e-15);
        assert!((b.amplitudes()[3].re - S2).abs() < 1e-15);
    }

    #[test]
    fn family_dims_mismatch() {
        let spec = StateSpec::new(Family::Ghz, Dims::new(vec![2, 3]).unwrap());
        assert!(make_named(&spec).is_err());
        let spec = StateSpec::new(Family::Bell, Dims::qubits(3).unwrap());
        assert!(make_named(&spec).is_err());
        let mut spec = StateSpec::new(Family::CustomAmplitudes, Dims::qubits(1).unwrap());
        spec.params.re = Some(vec![0.0, 0.0]);
        assert!(make_named(&spec).is_err());
        spec.params.re = Some(vec![1.0]);
        assert!(make_named(&spec).is_err());
    }

    #[test]
    fn haar_is_reproducible_and_normalized() {
        let dims = Dims::qubits(2).unwrap();
        let a = sample_haar_pure(&dims, &RandomStream::new(42, 0)).unwrap();
        let b = sample_haar_pure(&dims, &RandomStream::new(42, 0)).unwrap();
        let c = sample_haar_pure(&dims, &RandomStream::new(42, 1)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert!((a.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ginibre_rank_one_is_pure() {
        let dims = Dims::qubits(2).unwrap();
        let rho = sample_ginibre_mixed(&dims, 1, &RandomStream::new(3, 0)).unwrap();
        assert!((rho.purity() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn ginibre_rank_control() {
        let dims = Dims::qubits(3).unwrap();
        let rho = sample_ginibre_mixed(&dims, 2, &RandomStream::new(9, 4)).unwrap();
        let vals = eig_hermitian(rho.matrix()).unwrap();
        assert!(vals[2].abs() <= 1e-10);
        assert!(validate_density(&rho).passed);
    }

    #[test]
    fn ginibre_rank_errors_and_determinism() {
        let dims = Dims::qubits(2).unwrap();
        assert!(sample_ginibre_mixed(&dims, 0, &RandomStream::new(1, 0)).is_err());
        assert!(sample_ginibre_mixed(&dims, 5, &RandomStream::new(1, 0)).is_err());
        let a = sample_ginibre_mixed(&dims, 4, &RandomStream::new(1, 0)).unwrap();
        let b = sample_ginibre_mixed(&dims, 4, &RandomStream::new(1, 0)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn embed_223_shape() {
        let s = embed_223_family(&RandomStream::new(5, 5));
        assert_eq!(s.dims().total(), 12);
        assert_eq!(s.dims().local(), &[2, 2, 3]);
        assert!((s.norm() - 1.0).abs() < 1e-12);
        assert_eq!(s, embed_223_family(&RandomStream::new(5, 5)));
    }

    #[test]
    fn spec_json_roundtrip_and_visibility() {
        let json = r#"{"family":"ghz","dims":[2,2,2],"params":{"visibility":0.9}}"#;
        let spec: StateSpec = serde_json::from_str(json).unwrap();
        assert!(spec.is_mixed());
        let st = spec.realize(&RandomStream::new(0, 0)).unwrap();
        let rho = match st {
            QuantumState::Mixed(m) => m,
            _ => panic!("expected mixed"),
        };
        assert!(validate_density(&rho).passed);
        assert!((rho.matrix()[(0, 7)].re - 0.45).abs() < 1e-12);
        let bad = r#"{"family":"ghz","dims":[2,2,2],"params":{"visibility":1.5}}"#;
        let spec: StateSpec = serde_json::from_str(bad).unwrap();
        assert!(spec.validate().is_err());
        assert!(serde_json::from_str::<StateSpec>(r#"{"family":"x","dims":[2]}"#).is_err());
    }

    #[test]
    fn fork_gives_distinct_streams() {
        let base = RandomStream::new(7, 3);
        assert_ne!(base.fork(0), base.fork(1));
        assert_eq!(base.fork(2), base.fork(2));
        assert_ne!(base.fork(0), RandomStream::new(7, 4).fork(0));
    }
}
