use rand::Rng;

use super::{AnsatzCircuit, Axis, Family, GateOp};
use crate::{Error, Result};

struct OpList {
    ops: Vec<GateOp>,
    next_param: usize,
}

impl OpList {
    fn new() -> Self {
        Self {
            ops: Vec::new(),
            next_param: 0,
        }
    }

    fn rotation(&mut self, axis: Axis, qubit: usize) {
        self.ops.push(GateOp::Rotation {
            axis,
            qubit,
            param: self.next_param,
        });
        self.next_param += 1;
    }

    /// ALT on qubits `offset..offset + width`: an Ry column, then per layer a
    /// CZ brick on pairs (2i, 2i+1) followed by one on (2i+1, 2i+2), each CZ
    /// immediately followed by Ry on both of its qubits.
    fn alt(&mut self, offset: usize, width: usize, layers: usize) {
        for q in offset..offset + width {
            self.rotation(Axis::Y, q);
        }
        for _ in 0..layers {
            for start in [0, 1] {
                let mut i = start;
                while i + 1 < width {
                    let (a, b) = (offset + i, offset + i + 1);
                    self.ops.push(GateOp::Cz(a, b));
                    self.rotation(Axis::Y, a);
                    self.rotation(Axis::Y, b);
                    i += 2;
                }
            }
        }
    }
}

/// Alternating layered ansatz with `n_qubits + 2(n_qubits - 1)·layers`
/// parameters.
pub fn build_alt(n_qubits: usize, layers: usize) -> Result<AnsatzCircuit> {
    if n_qubits < 2 {
        return Err(Error::arg("ALT needs at least two qubits"));
    }
    let mut list = OpList::new();
    list.alt(0, n_qubits, layers);
    AnsatzCircuit::new(n_qubits, list.ops, Family::Alt)
}

/// Random circuit: each layer is one rotation per qubit about an axis drawn
/// uniformly from {X, Y, Z} when the circuit is built, followed by a CZ
/// ladder on (i, i+1).
pub fn build_random_circuit<R: Rng + ?Sized>(
    n_qubits: usize,
    layers: usize,
    rng: &mut R,
) -> Result<AnsatzCircuit> {
    if n_qubits == 0 {
        return Err(Error::arg("random circuit needs at least one qubit"));
    }
    let mut list = OpList::new();
    for _ in 0..layers {
        for q in 0..n_qubits {
            let axis = match rng.random_range(0..3u8) {
                0 => Axis::X,
                1 => Axis::Y,
                _ => Axis::Z,
            };
            list.rotation(axis, q);
        }
        for q in 0..n_qubits.saturating_sub(1) {
            list.ops.push(GateOp::Cz(q, q + 1));
        }
    }
    AnsatzCircuit::new(n_qubits, list.ops, Family::Random)
}

/// Structure of the Schmidt coefficient layer `U₁`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SchmidtLayer {
    /// ALT on the first `schmidt_qubits` qubits with `block_layers` layers.
    Alt,
    /// One independent Ry per qubit.
    RyProduct,
}

/// Shape of a `2N`-qubit SEA.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SeaSpec {
    n_sub: usize,
    schmidt_qubits: usize,
    n_cnots: usize,
    block_layers: usize,
    schmidt_layer: SchmidtLayer,
}

impl SeaSpec {
    /// `n_total = 2N` qubits, `U₁` on `schmidt_qubits` qubits, `n_cnots`
    /// entangler pairs `(i, N + i)`, and `block_layers` ALT layers per block.
    pub fn new(
        n_total: usize,
        schmidt_qubits: usize,
        n_cnots: usize,
        block_layers: usize,
    ) -> Result<Self> {
        if n_total < 2 || !n_total.is_multiple_of(2) {
            return Err(Error::arg(format!(
                "SEA needs an even qubit count >= 2, got {n_total}"
            )));
        }
        let n_sub = n_total / 2;
        if schmidt_qubits == 0 || schmidt_qubits > n_sub {
            return Err(Error::arg(format!(
                "Schmidt layer width {schmidt_qubits} outside 1..={n_sub}"
            )));
        }
        if n_cnots == 0 || n_cnots > n_sub {
            return Err(Error::arg(format!(
                "entangler count {n_cnots} outside 1..={n_sub}"
            )));
        }
        Ok(Self {
            n_sub,
            schmidt_qubits,
            n_cnots,
            block_layers,
            schmidt_layer: SchmidtLayer::Alt,
        })
    }

    pub fn with_schmidt_layer(mut self, layer: SchmidtLayer) -> Self {
        self.schmidt_layer = layer;
        self
    }

    pub fn n_total(&self) -> usize {
        2 * self.n_sub
    }

    pub fn n_sub(&self) -> usize {
        self.n_sub
    }

    pub fn schmidt_qubits(&self) -> usize {
        self.schmidt_qubits
    }

    pub fn n_cnots(&self) -> usize {
        self.n_cnots
    }

    pub fn block_layers(&self) -> usize {
        self.block_layers
    }

    pub fn schmidt_layer(&self) -> SchmidtLayer {
        self.schmidt_layer
    }

    pub fn n_params(&self) -> usize {
        let m = self.schmidt_qubits;
        let n = self.n_sub;
        let l = self.block_layers;
        let u1 = match self.schmidt_layer {
            SchmidtLayer::Alt => m + 2 * (m - 1) * l,
            SchmidtLayer::RyProduct => m,
        };
        u1 + 2 * (n + 2 * (n - 1) * l)
    }
}

/// `(U₂ ⊗ U₃) · V · (U₁ ⊗ I)` with ALT blocks.
pub fn build_sea(spec: &SeaSpec) -> Result<AnsatzCircuit> {
    let n = spec.n_sub;
    let l = spec.block_layers;
    let mut list = OpList::new();
    match spec.schmidt_layer {
        SchmidtLayer::Alt => list.alt(0, spec.schmidt_qubits, l),
        SchmidtLayer::RyProduct => {
            for q in 0..spec.schmidt_qubits {
                list.rotation(Axis::Y, q);
            }
        }
    }
    for i in 0..spec.n_cnots {
        list.ops.push(GateOp::Cnot {
            control: i,
            target: n + i,
        });
    }
    list.alt(0, n, l);
    list.alt(n, n, l);
    AnsatzCircuit::new(2 * n, list.ops, Family::Sea)
}

/// Closed-form parameter counts for a `2N`-qubit system with `layers` layers
/// per block: SEA `3N + 6(N-1)l`, ALT `2N + 2(2N-1)l`, random `2N·l`.
/// Exact SEA circuits are parameter-free.
pub fn parameter_count(family: Family, n_sub: usize, layers: usize) -> usize {
    let n = n_sub;
    let l = layers;
    match family {
        Family::Sea => 3 * n + 6 * n.saturating_sub(1) * l,
        Family::Alt => 2 * n + 2 * (2 * n).saturating_sub(1) * l,
        Family::Random => 2 * n * l,
        Family::ExactSea => 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ansatz::GateKind;
    use crate::rng::seeded;

    #[test]
    fn alt_counts() {
        assert_eq!(build_alt(6, 2).unwrap().n_params(), 26);
        assert_eq!(build_alt(5, 0).unwrap().n_params(), 5);
        assert_eq!(build_alt(4, 3).unwrap().n_params(), 22);
        assert!(build_alt(1, 3).is_err());
    }

    #[test]
    fn alt_layer_structure_matches_brick_pattern() {
        let c = build_alt(4, 1).unwrap();
        let kinds: Vec<(GateKind, Vec<usize>)> =
            c.ops().iter().map(|o| (o.kind(), o.targets())).collect();
        use GateKind::*;
        let expect = vec![
            (Ry, vec![0]), (Ry, vec![1]), (Ry, vec![2]), (Ry, vec![3]),
            (Cz, vec![0, 1]), (Ry, vec![0]), (Ry, vec![1]),
            (Cz, vec![2, 3]), (Ry, vec![2]), (Ry, vec![3]),
            (Cz, vec![1, 2]), (Ry, vec![1]), (Ry, vec![2]),
        ];
        assert_eq!(kinds, expect);
    }

    #[test]
    fn random_counts_and_determinism() {
        let mut rng = seeded(0);
        assert_eq!(build_random_circuit(14, 40, &mut rng).unwrap().n_params(), 560);
        assert_eq!(build_random_circuit(5, 0, &mut rng).unwrap().n_params(), 0);
        let a = build_random_circuit(6, 10, &mut seeded(42)).unwrap();
        let b = build_random_circuit(6, 10, &mut seeded(42)).unwrap();
        assert_eq!(a, b);
        let axes: std::collections::HashSet<GateKind> = a.ops().iter().map(|o| o.kind()).collect();
        assert!(axes.contains(&GateKind::Rx) && axes.contains(&GateKind::Ry) && axes.contains(&GateKind::Rz));
    }

    #[test]
    fn sea_counts() {
        let full = SeaSpec::new(14, 7, 7, 30).unwrap();
        assert_eq!(build_sea(&full).unwrap().n_params(), 1101);
        assert_eq!(build_sea(&SeaSpec::new(2, 1, 1, 0).unwrap()).unwrap().n_params(), 3);
        let sea2 = SeaSpec::new(14, 2, 2, 30).unwrap();
        assert_eq!(build_sea(&sea2).unwrap().n_params(), 796);
        assert_eq!(sea2.n_params(), 796);
        let ry = SeaSpec::new(12, 6, 6, 5).unwrap().with_schmidt_layer(SchmidtLayer::RyProduct);
        assert_eq!(build_sea(&ry).unwrap().n_params(), ry.n_params());
    }

    #[test]
    fn sea_entangler_uses_leading_pairs() {
        let c = build_sea(&SeaSpec::new(14, 2, 2, 1).unwrap()).unwrap();
        let cnots: Vec<Vec<usize>> = c
            .ops()
            .iter()
            .filter(|o| o.kind() == GateKind::Cnot)
            .map(|o| o.targets())
            .collect();
        assert_eq!(cnots, vec![vec![0, 7], vec![1, 8]]);
    }

    #[test]
    fn sea_spec_validation() {
        assert!(SeaSpec::new(5, 1, 1, 1).is_err());
        assert!(SeaSpec::new(4, 3, 1, 1).is_err());
        assert!(SeaSpec::new(4, 1, 0, 1).is_err());
        assert!(SeaSpec::new(0, 1, 1, 1).is_err());
    }

    #[test]
    fn table_formulas() {
        assert_eq!(parameter_count(Family::Sea, 7, 30), 1101);
        assert_eq!(parameter_count(Family::Alt, 7, 30), 794);
        assert_eq!(parameter_count(Family::Random, 7, 40), 560);
        let mut rng = seeded(1);
        for n in 1..=6 {
            for l in 0..=4 {
                let sea = build_sea(&SeaSpec::new(2 * n, n, n, l).unwrap()).unwrap();
                assert_eq!(sea.n_params(), parameter_count(Family::Sea, n, l));
                let alt = build_alt(2 * n, l).unwrap();
                assert_eq!(alt.n_params(), parameter_count(Family::Alt, n, l));
                let rnd = build_random_circuit(2 * n, l, &mut rng).unwrap();
                assert_eq!(rnd.n_params(), parameter_count(Family::Random, n, l));
            }
        }
    }
}
