//! Zumbroich basis of Q(ζ_n) and reduction to it.
//!
//! Write n = ∏ p^k. The exponent e of ζ_n^e splits (CRT) into components
//! a_p ∈ Z/p^k, and each a_p is written as j + p^(k-1)·i with j < p^(k-1).
//! The basis consists of the ζ_n^e whose every component has an admissible
//! top digit i: i = 0 for p = 2, and i ∈ {1, …, p-1} for odd p.
//!
//! A non-admissible exponent e is rewritten with the relation
//! Σ_{i<p} ζ_n^(e + i·n/p) = 0, which only touches the p-component.

use num_rational::BigRational;
use num_traits::Zero;

use crate::numtheory::{factor, mod_inverse};

#[derive(Debug, Clone)]
struct Component {
    p: u64,
    k: u32,
    pk: u64,
    top: u64,
    unit_inv: u64,
}

impl Component {
    fn digit(&self, e: u64) -> u64 {
        ((e % self.pk) * self.unit_inv % self.pk) / self.top
    }

    fn admissible(&self, e: u64) -> bool {
        let d = self.digit(e);
        if self.p == 2 {
            d == 0
        } else {
            d != 0
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Layout {
    n: u64,
    comps: Vec<Component>,
}

impl Layout {
    pub(crate) fn new(n: u64) -> Self {
        debug_assert!(n % 4 != 2, "order {n} is 2 mod 4");
        let comps = factor(n)
            .into_iter()
            .map(|(p, k)| {
                let pk = p.pow(k);
                Component {
                    p,
                    k,
                    pk,
                    top: pk / p,
                    unit_inv: mod_inverse((n / pk) % pk, pk).expect("coprime cofactor"),
                }
            })
            .collect();
        Layout { n, comps }
    }

    #[cfg(test)]
    pub(crate) fn is_basis(&self, e: u64) -> bool {
        self.comps.iter().all(|c| c.admissible(e))
    }

    /// Rewrites a dense coefficient vector in place so that only basis
    /// exponents carry nonzero coefficients.
    pub(crate) fn canonicalize(&self, c: &mut [BigRational]) {
        let n = self.n;
        for comp in &self.comps {
            let step = n / comp.p;
            for e in 0..n {
                if c[e as usize].is_zero() || comp.admissible(e) {
                    continue;
                }
                let v = std::mem::replace(&mut c[e as usize], BigRational::zero());
                for i in 1..comp.p {
                    let t = ((e + i * step) % n) as usize;
                    c[t] -= &v;
                }
            }
        }
    }

    /// Moves a canonical vector into the smallest Q(ζ_m) containing it.
    pub(crate) fn descend(mut n: u64, mut c: Vec<BigRational>) -> (u64, Vec<BigRational>) {
        'outer: while n > 1 {
            let layout = Layout::new(n);
            for comp in &layout.comps {
                let p = comp.p;
                if p != 2 && comp.k == 1 {
                    let step = n / p;
                    let mut out = vec![BigRational::zero(); (n / p) as usize];
                    let mut ok = true;
                    for e in (0..n).filter(|&e| comp.digit(e) == 0) {
                        let first = &c[((e + step) % n) as usize];
                        if (2..p).any(|i| c[((e + i * step) % n) as usize] != *first) {
                            ok = false;
                            break;
                        }
                        if !first.is_zero() {
                            out[(e / p) as usize] = -first.clone();
                        }
                    }
                    if ok {
                        n /= p;
                        c = out;
                        continue 'outer;
                    }
                } else {
                    let div = if p == 2 && comp.k == 2 { 4 } else { p };
                    let fits = c
                        .iter()
                        .enumerate()
                        .all(|(e, v)| v.is_zero() || (e as u64).is_multiple_of(div));
                    if fits {
                        let m = n / div;
                        let mut out = vec![BigRational::zero(); m as usize];
                        for (e, v) in c.into_iter().enumerate() {
                            if !v.is_zero() {
                                out[e / div as usize] = v;
                            }
                        }
                        n = m;
                        c = out;
                        continue 'outer;
                    }
                }
            }
            break;
        }
        (n, c)
    }
}

/// Number of basis exponents, i.e. Euler's φ(n).
#[cfg(test)]
fn basis_size(n: u64) -> usize {
    let l = Layout::new(n);
    (0..n).filter(|&e| l.is_basis(e)).count()
}
