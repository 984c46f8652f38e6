//! Rewriting of products into normal order.
//!
//! Axioms (units with ħ = 1):
//!
//! ```text
//! [N_i, N_j] = 0     [L_i, N_j] = i ε_ijk N_k     [L_i, L_j] = i ε_ijk L_k
//! NX² + NY² + NZ² = 1
//! ```
//!
//! `[L_i, ·]` acts on the commutative N-polynomials as a derivation, so
//! moving an L-letter to the right of an N-polynomial `P` gives
//! `L_i P = P L_i + D_i(P)`. Each `D_i` is an infinitesimal rotation and
//! annihilates `N·N - 1`, which is why it can be applied to reduced
//! polynomials without leaving the quotient.

use super::monomial::Monomial;
use crate::scalar::{imag_unit, real, GaussRational};
use num_traits::Zero;
use std::collections::{BTreeMap, HashMap};

pub(crate) type NPoly = BTreeMap<[u32; 3], GaussRational>;
pub(crate) type LCombo = BTreeMap<[u32; 3], GaussRational>;

pub(crate) fn levi_civita(i: usize, j: usize, k: usize) -> i64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
        _ => 0,
    }
}

fn accumulate(map: &mut BTreeMap<[u32; 3], GaussRational>, key: [u32; 3], c: GaussRational) {
    if c.is_zero() {
        return;
    }
    let slot = map.entry(key).or_insert_with(GaussRational::zero);
    *slot += c;
    if slot.is_zero() {
        map.remove(&key);
    }
}

/// Adds `c · N^e` after eliminating `NZ^2 = 1 - NX^2 - NY^2`.
pub(crate) fn add_n_reduced(out: &mut NPoly, e: [u32; 3], c: GaussRational) {
    if e[2] < 2 {
        accumulate(out, e, c);
        return;
    }
    let base = [e[0], e[1], e[2] - 2];
    add_n_reduced(out, base, c.clone());
    add_n_reduced(out, [base[0] + 2, base[1], base[2]], -c.clone());
    add_n_reduced(out, [base[0], base[1] + 2, base[2]], -c);
}

fn n_times(p: &NPoly, q: &NPoly) -> NPoly {
    let mut out = NPoly::new();
    for (e1, c1) in p {
        for (e2, c2) in q {
            let e = [e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]];
            add_n_reduced(&mut out, e, c1 * c2);
        }
    }
    out
}

/// `D_axis(P) = [L_axis, P]` for an N-polynomial `P`.
fn rotate(axis: usize, p: &NPoly) -> NPoly {
    let mut out = NPoly::new();
    let i = imag_unit();
    for (e, c) in p {
        for j in 0..3 {
            if e[j] == 0 {
                continue;
            }
            for k in 0..3 {
                let eps = levi_civita(axis, j, k);
                if eps == 0 {
                    continue;
                }
                let mut e2 = *e;
                e2[j] -= 1;
                e2[k] += 1;
                let w = c * &i * real(eps * e[j] as i64, 1);
                add_n_reduced(&mut out, e2, w);
            }
        }
    }
    out
}

/// Normal-orders products; caches L-word orderings for its lifetime.
#[derive(Default)]
pub(crate) struct Rewriter {
    l_memo: HashMap<Vec<u8>, LCombo>,
}

impl Rewriter {
    pub(crate) fn new() -> Self {
        Self::default()
    }

    /// Orders a word in L-letters into `LX^q1 LY^q2 LZ^q3` combinations.
    pub(crate) fn order_l_word(&mut self, word: &[u8]) -> LCombo {
        if let Some(hit) = self.l_memo.get(word) {
            return hit.clone();
        }
        let result = match word.windows(2).position(|w| w[0] > w[1]) {
            None => {
                let mut e = [0u32; 3];
                for &g in word {
                    e[g as usize] += 1;
                }
                let mut out = LCombo::new();
                out.insert(e, real(1, 1));
                out
            }
            Some(pos) => {
                let (j, k) = (word[pos] as usize, word[pos + 1] as usize);
                let mut swapped = word.to_vec();
                swapped.swap(pos, pos + 1);
                let mut out = self.order_l_word(&swapped);
                // L_j L_k = L_k L_j + i ε_jkl L_l
                let l = 3 - j - k;
                let eps = levi_civita(j, k, l);
                let mut contracted = word[..pos].to_vec();
                contracted.push(l as u8);
                contracted.extend_from_slice(&word[pos + 2..]);
                let coeff = imag_unit() * real(eps, 1);
                for (e, c) in self.order_l_word(&contracted) {
                    accumulate(&mut out, e, c * &coeff);
                }
                out
            }
        };
        self.l_memo.insert(word.to_vec(), result.clone());
        result
    }

    /// Product of two normal-ordered monomials, in normal order.
    pub(crate) fn mul_monomials(&mut self, m1: &Monomial, m2: &Monomial) -> BTreeMap<Monomial, GaussRational> {
        // (N1 L1)(N2 L2) = N1 (L1 N2) L2; push the letters of L1 through N2
        // from the right.
        let mut n2 = NPoly::new();
        n2.insert(m2.n, real(1, 1));
        let mut state: Vec<(NPoly, Vec<u8>)> = vec![(n2, Vec::new())];
        for axis in (0..3).rev() {
            for _ in 0..m1.l[axis] {
                let mut next = Vec::with_capacity(state.len() * 2);
                for (p, w) in state {
                    let d = rotate(axis, &p);
                    let mut w2 = Vec::with_capacity(w.len() + 1);
                    w2.push(axis as u8);
                    w2.extend_from_slice(&w);
                    next.push((p, w2));
                    if !d.is_empty() {
                        next.push((d, w));
                    }
                }
                state = next;
            }
        }

        let mut n1 = NPoly::new();
        n1.insert(m1.n, real(1, 1));
        let mut tail = Vec::new();
        for axis in 0..3 {
            tail.extend(std::iter::repeat(axis as u8).take(m2.l[axis] as usize));
        }

        let mut out: BTreeMap<Monomial, GaussRational> = BTreeMap::new();
        for (p, mut w) in state {
            w.extend_from_slice(&tail);
            let ls = self.order_l_word(&w);
            let ns = n_times(&n1, &p);
            for (ne, nc) in &ns {
                for (le, lc) in &ls {
                    let m = Monomial::new(*ne, *le);
                    let c = nc * lc;
                    let slot = out.entry(m).or_insert_with(GaussRational::zero);
                    *slot += c;
                    if slot.is_zero() {
                        out.remove(&m);
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opalg::Generator;

    #[test]
    fn l_commutator_from_ordering() {
        let mut rw = Rewriter::new();
        // LY LX = LX LY - i LZ
        let out = rw.order_l_word(&[1, 0]);
        assert_eq!(out.get(&[1, 1, 0]), Some(&real(1, 1)));
        assert_eq!(out.get(&[0, 0, 1]), Some(&-imag_unit()));
    }

    #[test]
    fn lx_past_ny() {
        let mut rw = Rewriter::new();
        let lx = Monomial::generator(Generator::LX);
        let ny = Monomial::generator(Generator::NY);
        let out = rw.mul_monomials(&lx, &ny);
        assert_eq!(out.get(&Monomial::new([0, 1, 0], [1, 0, 0])), Some(&real(1, 1)));
        assert_eq!(out.get(&Monomial::generator(Generator::NZ)), Some(&imag_unit()));
        assert_eq!(out.len(), 2);
    }

    #[test]
    fn nz_squared_is_eliminated() {
        let mut rw = Rewriter::new();
        let nz = Monomial::generator(Generator::NZ);
        let out = rw.mul_monomials(&nz, &nz);
        assert_eq!(out.get(&Monomial::ONE), Some(&real(1, 1)));
        assert_eq!(out.get(&Monomial::new([2, 0, 0], [0; 3])), Some(&real(-1, 1)));
        assert_eq!(out.get(&Monomial::new([0, 2, 0], [0; 3])), Some(&real(-1, 1)));
    }
}
