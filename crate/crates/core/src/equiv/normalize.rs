use serde::{Deserialize, Serialize};

use super::{apply_move, Move};
use crate::cdp::Cdp;
use crate::error::Result;
use crate::fano::{verify_certificate, FanoCertificate};
use crate::lattice::{LatticeVector, UnimodularAffineMap};

/// A normalized CDP, its certificate at the origin, and the moves that
/// produce it from the input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Normalized {
    pub cdp: Cdp,
    pub certificate: FanoCertificate,
    pub moves: Vec<Move>,
}

/// Moves the certified origin to zero, then folds every integral-affine
/// function into another one and drops it, stopping at two functions.
///
/// Writing `Ψ'_i = 1 + <g, u>`, the shear by `g` and the translation by `a_i`
/// move `Ψ_i` onto `Ψ_j` and leave zero behind; the new shift of `Ψ_j` is
/// `a_j + a_i`, so the certificate survives.
pub fn normalize(c: &Cdp, cert: &FanoCertificate) -> Result<Normalized> {
    verify_certificate(c, cert)?;
    let mut moves = Vec::new();
    let mut cur = c.clone();
    let mut a = cert.a.clone();
    if !cert.origin.is_zero() {
        let m = Move::TransformBase { map: UnimodularAffineMap::translation_by(cert.origin.neg()) };
        cur = apply_move(&cur, &m)?;
        moves.push(m);
    }
    let d = c.dim();
    let zero = LatticeVector::zero(d);
    while cur.n() > 2 {
        let Some(i) = cur.functions().iter().position(|f| f.is_integral_affine()) else { break };
        let j = cur
            .functions()
            .iter()
            .enumerate()
            .position(|(k, f)| k != i && !f.is_integral_affine())
            .unwrap_or(if i == 0 { 1 } else { 0 });
        let f = &cur.functions()[i];
        // integral gradient of the single piece
        let g: Vec<i64> = f.pieces()[0].gradient.iter().map(|x| x.to_i64().expect("integral gradient")).collect();
        let c0 = f.evaluate_lattice(&zero)?.to_i64().expect("integral constant");
        let n = cur.n();
        let mut step = Vec::new();
        if g.iter().any(|&x| x != 0) {
            let mut beta = vec![0; n];
            beta[i] = -1;
            beta[j] = 1;
            step.push(Move::Shear { v: LatticeVector(g), beta });
        }
        if c0 != 0 {
            let mut alpha = vec![0; n];
            alpha[i] = -c0;
            alpha[j] = c0;
            step.push(Move::Translate { alpha });
        }
        step.push(Move::RemoveZero { index: i });
        for m in step {
            cur = apply_move(&cur, &m)?;
            moves.push(m);
        }
        a[j] += a[i];
        a.remove(i);
    }
    let certificate = FanoCertificate { origin: zero, a };
    verify_certificate(&cur, &certificate)?;
    Ok(Normalized { cdp: cur, certificate, moves })
}

/// Number of functions that are not integral-affine. Every move preserves it:
/// shears and translations add integral-affine functions, base maps keep
/// integral affinity and only zero functions come and go.
pub fn essential_functions(c: &Cdp) -> usize {
    c.functions().iter().filter(|f| !f.is_integral_affine()).count()
}

/// Equivalent to a CDP with at most two functions. Integral-affine functions
/// can always be folded into a neighbour and removed, and the count of the
/// others is invariant, so this test is exact.
pub fn is_toric(c: &Cdp) -> bool {
    essential_functions(c) <= 2
}
