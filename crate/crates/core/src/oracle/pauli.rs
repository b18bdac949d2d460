//! Single-qubit Pauli errors and their propagation through controlled-phase gates.

/// Non-identity single-qubit Pauli; `Y` is the composite of `X` and `Z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 3] = [Pauli::X, Pauli::Y, Pauli::Z];

    pub fn has_x(self) -> bool {
        matches!(self, Pauli::X | Pauli::Y)
    }

    pub fn has_z(self) -> bool {
        matches!(self, Pauli::Z | Pauli::Y)
    }

    pub fn from_bits(x: bool, z: bool) -> Option<Pauli> {
        match (x, z) {
            (false, false) => None,
            (true, false) => Some(Pauli::X),
            (true, true) => Some(Pauli::Y),
            (false, true) => Some(Pauli::Z),
        }
    }

    /// Product up to phase; `None` is the identity.
    pub fn compose(a: Option<Pauli>, b: Option<Pauli>) -> Option<Pauli> {
        let bits = |p: Option<Pauli>| p.map_or((false, false), |p| (p.has_x(), p.has_z()));
        let (ax, az) = bits(a);
        let (bx, bz) = bits(b);
        Pauli::from_bits(ax ^ bx, az ^ bz)
    }
}

/// Errors on the two output legs of a controlled-phase gate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CzOutput {
    pub same: Option<Pauli>,
    pub other: Option<Pauli>,
}

/// Pushes an error on one input leg of a controlled-phase gate to its outputs:
/// a Z stays a Z, an X stays an X and adds a Z on the other leg.
pub fn propagate_through_cz(error: Pauli) -> CzOutput {
    match error {
        Pauli::Z => CzOutput {
            same: Some(Pauli::Z),
            other: None,
        },
        Pauli::X => CzOutput {
            same: Some(Pauli::X),
            other: Some(Pauli::Z),
        },
        Pauli::Y => CzOutput {
            same: Some(Pauli::Y),
            other: Some(Pauli::Z),
        },
    }
}

/// Pushes errors on both input legs through the gate, factor by factor.
pub fn propagate_pair(a: Option<Pauli>, b: Option<Pauli>) -> (Option<Pauli>, Option<Pauli>) {
    let mut out_a = None;
    let mut out_b = None;
    if let Some(p) = a {
        let o = propagate_through_cz(p);
        out_a = Pauli::compose(out_a, o.same);
        out_b = Pauli::compose(out_b, o.other);
    }
    if let Some(p) = b {
        let o = propagate_through_cz(p);
        out_b = Pauli::compose(out_b, o.same);
        out_a = Pauli::compose(out_a, o.other);
    }
    (out_a, out_b)
}
