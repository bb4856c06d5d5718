//! Multisets `Σ` of nonzero integers that are opposite-free, congruent to
//! `−Σ` modulo each of their elements, sum to zero and have a unique positive
//! apex. Every such multiset has the shape `{a+b, −a, −b}`; this module
//! evaluates the hypotheses, recognises the shape, and searches exhaustively
//! for counterexamples within bounds.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::model::{ModelError, WeightMultiset};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LemmaError {
    #[error("multiset must be nonempty")]
    Empty,
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("modulus must be positive, got {0}")]
    BadModulus(i64),
}

/// The four hypotheses, evaluated on one multiset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaHypotheses {
    pub subject: WeightMultiset,
    /// `N(ℓ)·N(−ℓ) = 0` for every `ℓ`.
    pub opposite_free: bool,
    /// `Σ ≡ −Σ (mod |α|)` as residue multisets, for every `α ∈ Σ`.
    pub self_negative_congruent: bool,
    pub zero_sum: bool,
    /// Some natural `n` has `N(n) = 1` and nothing larger in absolute value.
    pub apex: bool,
    pub apex_value: Option<i64>,
}

impl SigmaHypotheses {
    pub fn all_hold(&self) -> bool {
        self.opposite_free && self.self_negative_congruent && self.zero_sum && self.apex
    }
}

/// `{a+b, −a, −b}` with `1 ≤ a ≤ b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SigmaPattern {
    pub a: i64,
    pub b: i64,
}

impl SigmaPattern {
    pub fn new(a: i64, b: i64) -> Self {
        assert!(a >= 1 && b >= 1, "pattern parameters are natural numbers");
        Self { a: a.min(b), b: a.max(b) }
    }

    pub fn multiset(&self) -> WeightMultiset {
        WeightMultiset::from_sorted_unchecked(vec![-self.b, -self.a, self.a + self.b])
    }
}

pub fn is_opposite_free(sigma: &WeightMultiset) -> bool {
    let s = sigma.as_slice();
    s.iter().all(|&w| w < 0 || s.binary_search(&-w).is_err())
}

/// Residue multisets of `sigma` and `−sigma` agree modulo `|m|`.
pub fn congruent_to_negation(sigma: &WeightMultiset, m: i64) -> bool {
    if m.abs() == 1 {
        return true;
    }
    sigma.residues(m) == sigma.negated().residues(m)
}

pub fn apex_of(sigma: &WeightMultiset) -> Option<i64> {
    let top = sigma.max_abs();
    (top > 0 && sigma.count(top) == 1).then_some(top)
}

pub fn evaluate_hypotheses(sigma: &WeightMultiset) -> Result<SigmaHypotheses, LemmaError> {
    if sigma.is_empty() {
        return Err(LemmaError::Empty);
    }
    Ok(evaluate_unchecked(sigma))
}

fn evaluate_unchecked(sigma: &WeightMultiset) -> SigmaHypotheses {
    let mut moduli: Vec<i64> = sigma.as_slice().iter().map(|w| w.abs()).collect();
    moduli.sort_unstable();
    moduli.dedup();
    let apex_value = apex_of(sigma);
    SigmaHypotheses {
        subject: sigma.clone(),
        opposite_free: is_opposite_free(sigma),
        self_negative_congruent: moduli.iter().all(|&m| congruent_to_negation(sigma, m)),
        zero_sum: sigma.sum() == 0,
        apex: apex_value.is_some(),
        apex_value,
    }
}

/// Recognises exactly `{a+b, −a, −b}` with naturals `a ≤ b`.
pub fn classify(sigma: &WeightMultiset) -> Option<SigmaPattern> {
    match *sigma.as_slice() {
        [nb, na, c] if nb < 0 && na < 0 && c > 0 && c == -na - nb => Some(SigmaPattern::new(-na, -nb)),
        _ => None,
    }
}

/// An involution `θ` on the element slots of a sorted multiset with
/// `θ(α) + α ≡ 0` modulo a fixed modulus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pairing {
    pub slots: Vec<i64>,
    pub modulus: i64,
    /// `partner[i] = j` means `θ` maps slot `i` to slot `j`.
    pub partner: Vec<usize>,
}

impl Pairing {
    pub fn is_involution(&self) -> bool {
        self.partner.iter().enumerate().all(|(i, &j)| j < self.partner.len() && self.partner[j] == i)
    }

    pub fn respects_congruence(&self) -> bool {
        self.partner
            .iter()
            .enumerate()
            .all(|(i, &j)| (self.slots[i] + self.slots[j]).rem_euclid(self.modulus) == 0)
    }

    /// Pairs `(α, θ(α))` with `α` taken from the lower slot.
    pub fn pairs(&self) -> Vec<(i64, i64)> {
        self.partner
            .iter()
            .enumerate()
            .filter(|(i, &j)| *i <= j)
            .map(|(i, &j)| (self.slots[i], self.slots[j]))
            .collect()
    }
}

/// Greedy matching on residue classes over the sorted slots. Multiples of the
/// modulus are fixed by `θ`; other slots pair with the first free slot of the
/// opposite residue, and a lone slot of residue `m/2` is fixed. Returns `None`
/// when no matching exists, which means the congruence hypothesis fails.
pub fn build_pairings(sigma: &WeightMultiset, modulus: i64) -> Result<Option<Pairing>, LemmaError> {
    if modulus <= 0 {
        return Err(LemmaError::BadModulus(modulus));
    }
    let slots = sigma.as_slice().to_vec();
    let residues: Vec<i64> = slots.iter().map(|w| w.rem_euclid(modulus)).collect();
    let mut partner: Vec<Option<usize>> = vec![None; slots.len()];
    for i in 0..slots.len() {
        if partner[i].is_some() {
            continue;
        }
        let r = residues[i];
        if r == 0 {
            partner[i] = Some(i);
            continue;
        }
        let want = (modulus - r) % modulus;
        match (i + 1..slots.len()).find(|&j| partner[j].is_none() && residues[j] == want) {
            Some(j) => {
                partner[i] = Some(j);
                partner[j] = Some(i);
            }
            None if 2 * r == modulus => partner[i] = Some(i),
            None => return Ok(None),
        }
    }
    Ok(Some(Pairing {
        slots,
        modulus,
        partner: partner.into_iter().map(|p| p.expect("every slot assigned")).collect(),
    }))
}

/// Every multiset of size `1..=max_size` with entries in
/// `[−max_apex, max_apex] \ {0}` satisfying all four hypotheses, sorted and
/// deduplicated.
pub fn enumerate_satisfying(max_apex: i64, max_size: usize) -> Vec<WeightMultiset> {
    if max_apex < 1 || max_size < 1 {
        return Vec::new();
    }
    let alphabet: Vec<i64> = (-max_apex..=max_apex).filter(|&w| w != 0).collect();
    let parts: Vec<(usize, usize)> =
        (1..=max_size).flat_map(|size| (0..alphabet.len()).map(move |lead| (size, lead))).collect();
    let found: BTreeSet<WeightMultiset> = parts
        .into_par_iter()
        .flat_map_iter(|(size, lead)| {
            let mut out = Vec::new();
            let mut cur = vec![alphabet[lead]];
            extend(&alphabet, lead, size, &mut cur, &mut out);
            out
        })
        .collect();
    found.into_iter().collect()
}

fn extend(alphabet: &[i64], from: usize, size: usize, cur: &mut Vec<i64>, out: &mut Vec<WeightMultiset>) {
    if cur.len() == size {
        let m = WeightMultiset::from_sorted_unchecked(cur.clone());
        if evaluate_unchecked(&m).all_hold() {
            out.push(m);
        }
        return;
    }
    for idx in from..alphabet.len() {
        cur.push(alphabet[idx]);
        extend(alphabet, idx, size, cur, out);
        cur.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ms(w: &[i64]) -> WeightMultiset {
        WeightMultiset::new(w.to_vec()).unwrap()
    }

    #[test]
    fn hypotheses_examples() {
        let h = evaluate_hypotheses(&ms(&[3, -1, -2])).unwrap();
        assert!(h.all_hold());
        assert_eq!(h.apex_value, Some(3));

        let h = evaluate_hypotheses(&ms(&[2, 2, -1, -3])).unwrap();
        assert!(!h.apex);
        assert_eq!(h.apex_value, None);

        let h = evaluate_hypotheses(&ms(&[1, -1, 2, -2])).unwrap();
        assert!(!h.opposite_free);

        assert_eq!(evaluate_hypotheses(&ms(&[])), Err(LemmaError::Empty));
        assert!(WeightMultiset::new(vec![1, 0]).is_err());
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&ms(&[3, -1, -2])), Some(SigmaPattern { a: 1, b: 2 }));
        assert_eq!(classify(&ms(&[2, -1, -1])), Some(SigmaPattern { a: 1, b: 1 }));
        assert_eq!(classify(&ms(&[1, 2, -3])), None);
        assert_eq!(classify(&ms(&[4, -1, -2])), None);
        assert_eq!(classify(&ms(&[2, -1, -1, 1, -1])), None);
    }

    #[test]
    fn pairing_examples() {
        let p = build_pairings(&ms(&[3, -1, -2]), 3).unwrap().unwrap();
        assert_eq!(p.pairs(), vec![(-2, -1), (3, 3)]);

        let p = build_pairings(&ms(&[2, -1, -1]), 2).unwrap().unwrap();
        assert_eq!(p.pairs(), vec![(-1, -1), (2, 2)]);

        let p = build_pairings(&ms(&[5, -7, 4]), 1).unwrap().unwrap();
        assert_eq!(p.partner, vec![0, 1, 2]);

        assert_eq!(build_pairings(&ms(&[1]), 0), Err(LemmaError::BadModulus(0)));
        assert_eq!(build_pairings(&ms(&[1, 1]), 3).unwrap(), None);
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate_satisfying(3, 3), vec![ms(&[-2, -1, 3]), ms(&[-1, -1, 2])]);
        assert!(enumerate_satisfying(1, 3).is_empty());
        assert!(enumerate_satisfying(2, 2).is_empty());
    }

    #[test]
    fn pattern_multiset_satisfies_hypotheses() {
        for a in 1..6 {
            for b in a..6 {
                let m = SigmaPattern::new(a, b).multiset();
                assert!(evaluate_hypotheses(&m).unwrap().all_hold(), "{m}");
                assert_eq!(classify(&m), Some(SigmaPattern::new(a, b)));
            }
        }
    }
}
