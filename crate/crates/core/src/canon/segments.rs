use super::{CanonError, CanonicalForm, Component, ScatAtom, ScatNF};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Piece<'a> {
    Atom(&'a ScatAtom),
    Shuf(&'a [CanonicalForm]),
}

fn pieces(cf: &CanonicalForm) -> Vec<Piece<'_>> {
    let mut out = Vec::new();
    for c in cf.components() {
        match c {
            Component::Scat(s) => out.extend(s.atoms().iter().map(Piece::Atom)),
            Component::Shuf(blocks) => out.push(Piece::Shuf(blocks)),
        }
    }
    out
}

fn require_tame(s: &CanonicalForm, t: &CanonicalForm) -> Result<(), CanonError> {
    if s.is_tame() && t.is_tame() {
        Ok(())
    } else {
        Err(CanonError::Unsupported("segment decisions need forms without Pow atoms".to_string()))
    }
}

/// Whether `s` is isomorphic to a down-closed subset of `t`.
pub fn is_initial_segment(s: &CanonicalForm, t: &CanonicalForm) -> Result<bool, CanonError> {
    require_tame(s, t)?;
    Ok(initial(&pieces(s), &pieces(t)))
}

/// Whether `s` is isomorphic to an up-closed subset of `t`.
pub fn is_final_segment(s: &CanonicalForm, t: &CanonicalForm) -> Result<bool, CanonError> {
    is_initial_segment(&s.mirrored(), &t.mirrored())
}

fn initial(s: &[Piece<'_>], t: &[Piece<'_>]) -> bool {
    if s.is_empty() {
        return true;
    }
    for (i, piece) in t.iter().enumerate() {
        if s.len() <= i || s[..i] != t[..i] {
            return false;
        }
        if piece_initial(&s[i..], piece) {
            return true;
        }
    }
    s == t
}

/// Whether `rest` is a nonempty initial segment of the single piece.
fn piece_initial(rest: &[Piece<'_>], piece: &Piece<'_>) -> bool {
    match piece {
        Piece::Atom(atom) => {
            let [Piece::Atom(r)] = rest else {
                return false;
            };
            match (atom, r) {
                (ScatAtom::Fin(k), ScatAtom::Fin(j)) => j <= k,
                (ScatAtom::W, ScatAtom::Fin(_) | ScatAtom::W) => true,
                (ScatAtom::Wstar, ScatAtom::Wstar) => true,
                (ScatAtom::Zat, ScatAtom::Wstar | ScatAtom::Zat) => true,
                _ => false,
            }
        }
        Piece::Shuf(blocks) => {
            if rest.first() != Some(piece) {
                return false;
            }
            let tail = &rest[1..];
            tail.is_empty() || blocks.iter().any(|b| initial(tail, &pieces(b)))
        }
    }
}

/// Representatives of the nonempty initial segments of `t`, with finite
/// runs capped at `max_finite` points and shuffle tails recursing to
/// `depth` levels.
pub fn initial_segment_samples(t: &CanonicalForm, max_finite: u64, depth: usize) -> Vec<CanonicalForm> {
    let comps: Vec<Component> = t
        .components()
        .iter()
        .flat_map(|c| match c {
            Component::Scat(s) => {
                s.atoms().iter().map(|a| Component::Scat(ScatNF::atom(a.clone()))).collect::<Vec<_>>()
            }
            shuf => vec![shuf.clone()],
        })
        .collect();
    let mut out = Vec::new();
    for i in 0..comps.len() {
        let prefix = CanonicalForm::from_components(comps[..i].iter().cloned());
        let tails: Vec<CanonicalForm> = match &comps[i] {
            Component::Scat(s) => match &s.atoms()[0] {
                ScatAtom::Fin(k) => (1..=(*k).min(max_finite))
                    .map(|j| CanonicalForm::from_scat(ScatNF::atom(ScatAtom::Fin(j))))
                    .collect(),
                ScatAtom::W => (1..=max_finite)
                    .map(ScatAtom::Fin)
                    .chain([ScatAtom::W])
                    .map(|a| CanonicalForm::from_scat(ScatNF::atom(a)))
                    .collect(),
                ScatAtom::Wstar => vec![CanonicalForm::from_scat(ScatNF::atom(ScatAtom::Wstar))],
                ScatAtom::Zat => [ScatAtom::Wstar, ScatAtom::Zat]
                    .into_iter()
                    .map(|a| CanonicalForm::from_scat(ScatNF::atom(a)))
                    .collect(),
                ScatAtom::Pow(..) => Vec::new(),
            },
            Component::Shuf(blocks) => {
                let shuf = CanonicalForm::from_components([comps[i].clone()]);
                let mut tails = vec![shuf.clone()];
                if depth > 0 {
                    for b in blocks {
                        for r in initial_segment_samples(b, max_finite, depth - 1) {
                            tails.push(shuf.concat(&r));
                        }
                    }
                }
                tails
            }
        };
        out.extend(tails.iter().map(|tail| prefix.concat(tail)));
    }
    out.sort();
    out.dedup();
    out
}

/// Mirror image of [`initial_segment_samples`].
pub fn final_segment_samples(t: &CanonicalForm, max_finite: u64, depth: usize) -> Vec<CanonicalForm> {
    let mut out: Vec<CanonicalForm> =
        initial_segment_samples(&t.mirrored(), max_finite, depth).iter().map(CanonicalForm::mirrored).collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::canonicalize;
    use crate::textio::parse;

    fn cf(s: &str) -> CanonicalForm {
        canonicalize(&parse(s).unwrap()).unwrap()
    }

    #[test]
    fn atom_segments() {
        assert!(is_final_segment(&cf("N"), &cf("Z")).unwrap());
        assert!(!is_initial_segment(&cf("N"), &cf("Z")).unwrap());
        assert!(is_initial_segment(&cf("N~"), &cf("Z")).unwrap());
        assert!(is_initial_segment(&cf("3"), &cf("N")).unwrap());
        assert!(!is_initial_segment(&cf("4"), &cf("3")).unwrap());
        assert!(is_initial_segment(&cf("0"), &cf("N~")).unwrap());
        assert!(!is_initial_segment(&cf("1"), &cf("N~")).unwrap());
    }

    #[test]
    fn shuffle_segments() {
        assert!(is_initial_segment(&cf("Q[Z] + N~"), &cf("Q[Z]")).unwrap());
        assert!(is_initial_segment(&cf("Q[Z]"), &cf("Q[Z]")).unwrap());
        assert!(!is_initial_segment(&cf("Q[Z] + N"), &cf("Q[Z]")).unwrap());
        assert!(is_final_segment(&cf("N + Q[Z]"), &cf("Q[Z]")).unwrap());
        assert!(!is_initial_segment(&cf("N + 2"), &cf("N + Q[Z]")).unwrap());
        assert!(is_initial_segment(&cf("N + Q[Z] + N~ + 7"), &cf("N + Q[Z]")).unwrap());
        assert!(is_initial_segment(&cf("N + Q[Z] + N~"), &cf("N + Q[Z] + 5")).unwrap());
    }

    #[test]
    fn pow_inputs_are_unsupported() {
        assert!(matches!(is_initial_segment(&cf("N*N"), &cf("Z")), Err(CanonError::Unsupported(_))));
    }

    #[test]
    fn samples_are_segments() {
        for s in ["Z", "N + 3", "Q[N,Z]", "2 + Q[1 + N~]"] {
            let t = cf(s);
            for seg in initial_segment_samples(&t, 3, 1) {
                assert!(is_initial_segment(&seg, &t).unwrap(), "{seg} in {s}");
            }
            for seg in final_segment_samples(&t, 3, 1) {
                assert!(is_final_segment(&seg, &t).unwrap(), "{seg} in {s}");
            }
        }
    }
}
