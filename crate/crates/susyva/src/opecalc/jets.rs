//! Jets `D_Z^m Γ_{α,β}(Z,W)|_{Z=W}` written as sums of right-nested words in the
//! letters `T^k α`, `T^k Sα`, closed by `Γ_{α+β}`.
//!
//! `D` acts as an odd derivation: `D(T^k α) = T^k Sα`, `D(T^k Sα) = T^{k+1} α` and
//! `D Γ_{α,β} = :α Γ_{α,β}:`.

use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::exactnum::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) struct JetLetter {
    pub k: u32,
    /// `true` for `T^k Sα` (even), `false` for `T^k α` (odd).
    pub s: bool,
}

impl JetLetter {
    fn odd(self) -> bool {
        !self.s
    }

    fn d(self) -> JetLetter {
        if self.s {
            JetLetter { k: self.k + 1, s: false }
        } else {
            JetLetter { k: self.k, s: true }
        }
    }
}

pub(crate) type Words = BTreeMap<Vec<JetLetter>, Scalar>;

fn acc(out: &mut Words, w: Vec<JetLetter>, c: Scalar) {
    match out.entry(w) {
        Entry::Occupied(mut e) => {
            let s = e.get() + &c;
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
        Entry::Vacant(e) => {
            if !c.is_zero() {
                e.insert(c);
            }
        }
    }
}

fn derive(words: &Words) -> Words {
    let mut out = Words::new();
    for (w, c) in words {
        let mut c = c.clone();
        for i in 0..w.len() {
            let mut v = w.clone();
            v[i] = w[i].d();
            acc(&mut out, v, c.clone());
            if w[i].odd() {
                c = -c;
            }
        }
        let mut v = w.clone();
        v.push(JetLetter { k: 0, s: false });
        acc(&mut out, v, c);
    }
    out
}

/// `D^m Γ_{α,β}` for `m = 0, …, depth`.
pub(crate) fn jet_table(depth: u32) -> Vec<Words> {
    let mut cur = Words::new();
    cur.insert(Vec::new(), Scalar::one());
    let mut out = Vec::with_capacity(depth as usize + 1);
    for _ in 0..depth {
        let next = derive(&cur);
        out.push(cur);
        cur = next;
    }
    out.push(cur);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn third_jet_matches_expansion() {
        // D³G = :(Tα)G: + :α:(Sα)G:: − :α:α:αG:::
        let t = jet_table(3);
        let l = |k, s| JetLetter { k, s };
        let mut want = Words::new();
        want.insert(vec![l(1, false)], Scalar::one());
        want.insert(vec![l(0, false), l(0, true)], Scalar::one());
        want.insert(vec![l(0, false), l(0, false), l(0, false)], Scalar::int(-1));
        assert_eq!(t[3], want);
    }
}
