//! Normal forms for scattered parts: finite sums of `k`, `N`, `N~`, `Z`
//! atoms, plus `Pow` nodes for ω-, ω*- and ζ-indexed sums that do not
//! reduce to those atoms.

use serde::Serialize;

/// Index order of a `Pow` atom.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum PowKind {
    Omega,
    OmegaStar,
    Zeta,
}

impl PowKind {
    pub fn mirrored(self) -> Self {
        match self {
            PowKind::Omega => PowKind::OmegaStar,
            PowKind::OmegaStar => PowKind::Omega,
            PowKind::Zeta => PowKind::Zeta,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ScatAtom {
    /// A finite order with at least one point.
    Fin(u64),
    W,
    Wstar,
    Zat,
    /// `kind`-many copies of `body`.
    Pow(PowKind, ScatNF),
}

impl ScatAtom {
    pub fn is_tame(&self) -> bool {
        !matches!(self, ScatAtom::Pow(..))
    }

    fn mirrored(&self) -> ScatAtom {
        match self {
            ScatAtom::W => ScatAtom::Wstar,
            ScatAtom::Wstar => ScatAtom::W,
            ScatAtom::Pow(kind, body) => ScatAtom::Pow(kind.mirrored(), body.mirrored()),
            other => other.clone(),
        }
    }
}

/// A normalized sequence of scattered atoms.
///
/// Invariants: no two adjacent `Fin`; no `Fin` directly before `W`; no `Fin`
/// directly after `Wstar`; no `Wstar` directly before `W`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ScatNF {
    atoms: Vec<ScatAtom>,
}

impl ScatNF {
    pub fn empty() -> Self {
        ScatNF { atoms: Vec::new() }
    }

    pub fn atom(atom: ScatAtom) -> Self {
        Self::from_atoms([atom])
    }

    /// Normalizes an arbitrary atom sequence.
    pub fn from_atoms<I: IntoIterator<Item = ScatAtom>>(atoms: I) -> Self {
        let mut out = ScatNF::empty();
        for atom in atoms {
            out.push(atom);
        }
        out
    }

    pub fn atoms(&self) -> &[ScatAtom] {
        &self.atoms
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_tame(&self) -> bool {
        self.atoms.iter().all(ScatAtom::is_tame)
    }

    fn push(&mut self, atom: ScatAtom) {
        use ScatAtom::*;
        if matches!(atom, Fin(0)) {
            return;
        }
        self.atoms.push(atom);
        while self.atoms.len() >= 2 {
            let n = self.atoms.len();
            let merged = match (&self.atoms[n - 2], &self.atoms[n - 1]) {
                (Fin(a), Fin(b)) => Fin(a.saturating_add(*b)),
                // k + ℕ ≅ ℕ
                (Fin(_), W) => W,
                // ℕ* + k ≅ ℕ*
                (Wstar, Fin(_)) => Wstar,
                (Wstar, W) => Zat,
                _ => break,
            };
            self.atoms.truncate(n - 2);
            self.atoms.push(merged);
        }
    }

    pub fn concat(&self, other: &ScatNF) -> ScatNF {
        let mut out = self.clone();
        for atom in &other.atoms {
            out.push(atom.clone());
        }
        out
    }

    pub fn mirrored(&self) -> ScatNF {
        ScatNF::from_atoms(self.atoms.iter().rev().map(ScatAtom::mirrored))
    }

    /// `kind`-many copies of `body`, reduced as far as the atom rules allow.
    pub fn indexed_sum(kind: PowKind, body: &ScatNF) -> ScatNF {
        match body.atoms.as_slice() {
            [] => return ScatNF::empty(),
            [ScatAtom::Fin(_)] => {
                return ScatNF::atom(match kind {
                    PowKind::Omega => ScatAtom::W,
                    PowKind::OmegaStar => ScatAtom::Wstar,
                    PowKind::Zeta => ScatAtom::Zat,
                })
            }
            _ => {}
        }
        let n = body.len();
        // ω·(b₀ ⧺ rest) ≅ b₀ ⧺ ω·(rest ⧺ b₀), and dually; only taken when the
        // rotated body normalizes to something strictly shorter.
        let rotate_left = || ScatNF::from_atoms(body.atoms[1..].iter().chain(&body.atoms[..1]).cloned());
        let rotate_right = || ScatNF::from_atoms(body.atoms[n - 1..].iter().chain(&body.atoms[..n - 1]).cloned());
        match kind {
            PowKind::Omega => {
                let rot = rotate_left();
                if rot.len() < n {
                    let head = ScatNF::atom(body.atoms[0].clone());
                    return head.concat(&ScatNF::indexed_sum(kind, &rot));
                }
            }
            PowKind::OmegaStar => {
                let rot = rotate_right();
                if rot.len() < n {
                    let tail = ScatNF::atom(body.atoms[n - 1].clone());
                    return ScatNF::indexed_sum(kind, &rot).concat(&tail);
                }
            }
            PowKind::Zeta => {
                for rot in [rotate_left(), rotate_right()] {
                    if rot.len() < n {
                        return ScatNF::indexed_sum(kind, &rot);
                    }
                }
            }
        }
        ScatNF::atom(ScatAtom::Pow(kind, body.clone()))
    }

    /// Forms obtained by unrolling one `Pow(ω, B) ≅ B ⧺ Pow(ω, B)` (or the
    /// ω* dual) at any top-level position.
    pub fn unrollings(&self) -> Vec<ScatNF> {
        let mut out = Vec::new();
        for (i, atom) in self.atoms.iter().enumerate() {
            let ScatAtom::Pow(kind, body) = atom else {
                continue;
            };
            let mut atoms: Vec<ScatAtom> = self.atoms[..i].to_vec();
            match kind {
                PowKind::Omega => {
                    atoms.extend(body.atoms.iter().cloned());
                    atoms.push(atom.clone());
                }
                PowKind::OmegaStar => {
                    atoms.push(atom.clone());
                    atoms.extend(body.atoms.iter().cloned());
                }
                PowKind::Zeta => continue,
            }
            atoms.extend(self.atoms[i + 1..].iter().cloned());
            out.push(ScatNF::from_atoms(atoms));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::ScatAtom::*;
    use super::*;

    fn nf(atoms: Vec<ScatAtom>) -> ScatNF {
        ScatNF::from_atoms(atoms)
    }

    #[test]
    fn atom_rewrites() {
        assert_eq!(nf(vec![Wstar, Fin(3), W]).atoms(), &[Zat]);
        assert_eq!(nf(vec![Fin(1), W]).atoms(), &[W]);
        assert_eq!(nf(vec![Fin(2), Fin(5)]).atoms(), &[Fin(7)]);
        assert_eq!(nf(vec![W, Fin(1)]).atoms(), &[W, Fin(1)]);
        assert_eq!(nf(vec![Fin(1), Wstar]).atoms(), &[Fin(1), Wstar]);
        assert_eq!(nf(vec![Wstar, Wstar, W]).atoms(), &[Wstar, Zat]);
        assert_eq!(nf(vec![Zat, Zat]).atoms(), &[Zat, Zat]);
    }

    #[test]
    fn indexed_sums_of_finite_bodies_are_atoms() {
        let three = ScatNF::atom(Fin(3));
        assert_eq!(ScatNF::indexed_sum(PowKind::Omega, &three).atoms(), &[W]);
        assert_eq!(ScatNF::indexed_sum(PowKind::OmegaStar, &three).atoms(), &[Wstar]);
        assert_eq!(ScatNF::indexed_sum(PowKind::Zeta, &three).atoms(), &[Zat]);
    }

    #[test]
    fn rotation_rule() {
        // ω·(ω + 1) = ω + ω·ω
        let body = nf(vec![W, Fin(1)]);
        let w2 = Pow(PowKind::Omega, ScatNF::atom(W));
        assert_eq!(ScatNF::indexed_sum(PowKind::Omega, &body).atoms(), &[W, w2]);
        // ω*·(1 + ω*) = ω*·ω* + ω*
        let body = nf(vec![Fin(1), Wstar]);
        let w2s = Pow(PowKind::OmegaStar, ScatNF::atom(Wstar));
        assert_eq!(ScatNF::indexed_sum(PowKind::OmegaStar, &body).atoms(), &[w2s, Wstar]);
        // ζ·(ℕ + ℕ*) = ζ·ζ
        let body = nf(vec![W, Wstar]);
        assert_eq!(ScatNF::indexed_sum(PowKind::Zeta, &body).atoms(), &[Pow(PowKind::Zeta, ScatNF::atom(Zat))]);
    }

    #[test]
    fn mirror_is_involutive() {
        let s = nf(vec![Fin(2), Wstar, Zat, W, Pow(PowKind::Omega, nf(vec![W, Zat]))]);
        assert_eq!(s.mirrored().mirrored(), s);
    }

    #[test]
    fn unroll_omega() {
        let w2 = ScatNF::atom(Pow(PowKind::Omega, ScatNF::atom(W)));
        let unrolled = w2.unrollings();
        assert_eq!(unrolled.len(), 1);
        assert_eq!(unrolled[0].atoms()[0], W);
    }
}
