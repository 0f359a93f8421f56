//! Named ansatz families and parameter-count matching.

use std::fmt;

use sealab::ansatz::{build_alt, build_random_circuit, build_sea, AnsatzCircuit, SchmidtLayer, SeaSpec};
use sealab::rng::seeded;
use sealab::{Error, Result};

/// Width of the SEA Schmidt layer or entangler, relative to `N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SeaWidth {
    One,
    /// `⌊N/2⌋`, at least 1.
    Half,
    Full,
    Fixed(usize),
}

impl SeaWidth {
    pub fn resolve(self, n_sub: usize) -> usize {
        match self {
            SeaWidth::One => 1,
            SeaWidth::Half => (n_sub / 2).max(1),
            SeaWidth::Full => n_sub,
            SeaWidth::Fixed(w) => w,
        }
    }
}

/// An ansatz family by name:
///
/// | name          | circuit                                          |
/// |---------------|--------------------------------------------------|
/// | `random`      | random single-qubit axes with CZ ladders         |
/// | `alt`         | alternating layered Ry/CZ                        |
/// | `sea1`        | SEA with `m = k = 1`                             |
/// | `sea_half`    | SEA with `m = k = ⌊N/2⌋`                         |
/// | `sea_full`    | SEA with `m = k = N`                             |
/// | `sea_m2_k3`   | SEA with explicit `m`, `k`                       |
///
/// A `_ry` suffix on any SEA name swaps the Schmidt layer for one Ry per
/// qubit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AnsatzSpec {
    Random,
    Alt,
    Sea {
        m: SeaWidth,
        k: SeaWidth,
        schmidt_layer: SchmidtLayer,
    },
}

impl AnsatzSpec {
    pub fn parse(name: &str) -> Result<Self> {
        let bad = || Error::Argument(format!("unknown ansatz family `{name}`"));
        match name {
            "random" => return Ok(AnsatzSpec::Random),
            "alt" => return Ok(AnsatzSpec::Alt),
            _ => {}
        }
        let (base, schmidt_layer) = match name.strip_suffix("_ry") {
            Some(b) => (b, SchmidtLayer::RyProduct),
            None => (name, SchmidtLayer::Alt),
        };
        let (m, k) = match base {
            "sea1" => (SeaWidth::One, SeaWidth::One),
            "sea_half" => (SeaWidth::Half, SeaWidth::Half),
            "sea_full" => (SeaWidth::Full, SeaWidth::Full),
            _ => {
                let rest = base.strip_prefix("sea_m").ok_or_else(bad)?;
                let (m, k) = rest.split_once("_k").ok_or_else(bad)?;
                let m: usize = m.parse().map_err(|_| bad())?;
                let k: usize = k.parse().map_err(|_| bad())?;
                if m == 0 || k == 0 {
                    return Err(bad());
                }
                (SeaWidth::Fixed(m), SeaWidth::Fixed(k))
            }
        };
        Ok(AnsatzSpec::Sea { m, k, schmidt_layer })
    }

    pub fn is_sea(&self) -> bool {
        matches!(self, AnsatzSpec::Sea { .. })
    }

    fn sea_spec(&self, n_qubits: usize, layers: usize) -> Result<SeaSpec> {
        match *self {
            AnsatzSpec::Sea { m, k, schmidt_layer } => {
                let n_sub = n_qubits / 2;
                Ok(SeaSpec::new(n_qubits, m.resolve(n_sub), k.resolve(n_sub), layers)?
                    .with_schmidt_layer(schmidt_layer))
            }
            _ => Err(Error::Argument("not a SEA family".into())),
        }
    }

    pub fn param_count(&self, n_qubits: usize, layers: usize) -> Result<usize> {
        match self {
            AnsatzSpec::Random => Ok(n_qubits * layers),
            AnsatzSpec::Alt => {
                if n_qubits < 2 {
                    return Err(Error::Argument("ALT needs at least two qubits".into()));
                }
                Ok(n_qubits + 2 * (n_qubits - 1) * layers)
            }
            AnsatzSpec::Sea { .. } => Ok(self.sea_spec(n_qubits, layers)?.n_params()),
        }
    }

    /// Builds the circuit. Random circuits draw their axes from `seed`.
    pub fn build(&self, n_qubits: usize, layers: usize, seed: u64) -> Result<AnsatzCircuit> {
        match self {
            AnsatzSpec::Random => build_random_circuit(n_qubits, layers, &mut seeded(seed)),
            AnsatzSpec::Alt => build_alt(n_qubits, layers),
            AnsatzSpec::Sea { .. } => build_sea(&self.sea_spec(n_qubits, layers)?),
        }
    }
}

impl fmt::Display for AnsatzSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = |w: &SeaWidth| match w {
            SeaWidth::One => "1".to_string(),
            SeaWidth::Half => "half".to_string(),
            SeaWidth::Full => "full".to_string(),
            SeaWidth::Fixed(v) => v.to_string(),
        };
        match self {
            AnsatzSpec::Random => write!(f, "random"),
            AnsatzSpec::Alt => write!(f, "alt"),
            AnsatzSpec::Sea { m, k, schmidt_layer } => {
                match (m, k) {
                    (SeaWidth::One, SeaWidth::One) => write!(f, "sea1")?,
                    (SeaWidth::Half, SeaWidth::Half) => write!(f, "sea_half")?,
                    (SeaWidth::Full, SeaWidth::Full) => write!(f, "sea_full")?,
                    _ => write!(f, "sea_m{}_k{}", width(m), width(k))?,
                }
                if *schmidt_layer == SchmidtLayer::RyProduct {
                    write!(f, "_ry")?;
                }
                Ok(())
            }
        }
    }
}

/// Layer count whose parameter total is nearest to `target`, ties broken
/// towards fewer layers. Returns `(layers, params)`.
pub fn matched_layers(spec: &AnsatzSpec, n_qubits: usize, target: usize) -> Result<(usize, usize)> {
    let mut best = (0, spec.param_count(n_qubits, 0)?);
    let mut prev = best.1;
    for layers in 1.. {
        let p = spec.param_count(n_qubits, layers)?;
        if p.abs_diff(target) < best.1.abs_diff(target) {
            best = (layers, p);
        }
        // counts grow with depth unless the family has no layered part
        if p >= target || p == prev {
            break;
        }
        prev = p;
    }
    Ok(best)
}

/// Depths for a set of families at one qubit count: the first SEA family in
/// the list uses `layers`, and every other family takes the depth whose
/// parameter count is nearest to it. Without a SEA family all families use
/// `layers`.
#[derive(Clone, Debug, PartialEq)]
pub struct DepthPlan {
    pub reference_params: usize,
    pub entries: Vec<(AnsatzSpec, usize, usize)>,
}

impl DepthPlan {
    pub fn new(families: &[AnsatzSpec], n_qubits: usize, layers: usize) -> Result<Self> {
        let reference = families.iter().find(|f| f.is_sea());
        let mut entries = Vec::with_capacity(families.len());
        let reference_params = match reference {
            Some(r) => r.param_count(n_qubits, layers)?,
            None => 0,
        };
        for f in families {
            let (l, p) = if reference.is_none() || f.is_sea() {
                (layers, f.param_count(n_qubits, layers)?)
            } else {
                matched_layers(f, n_qubits, reference_params)?
            };
            entries.push((*f, l, p));
        }
        Ok(Self {
            reference_params,
            entries,
        })
    }

    /// Whether every family is within 10% of the reference parameter count.
    pub fn within_ten_percent(&self) -> bool {
        let reference = if self.reference_params > 0 {
            self.reference_params
        } else {
            self.entries.first().map_or(0, |e| e.2)
        };
        self.entries
            .iter()
            .all(|&(_, _, p)| (p as f64 - reference as f64).abs() <= 0.1 * reference as f64)
    }
}
