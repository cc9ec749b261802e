use super::CycloNum;
use crate::numtheory::{divisors, gcd, lcm, p_part};

/// Least n with every element of `set` in Q(ζ_n).
///
/// Scans the divisors d of N = lcm of the orders (skipping d ≡ 2 mod 4) and
/// returns the first d whose Galois group Gal(Q(ζ_N)/Q(ζ_d)) fixes the set.
pub fn conductor<'a, I>(set: I) -> u64
where
    I: IntoIterator<Item = &'a CycloNum>,
{
    let set: Vec<&CycloNum> = set.into_iter().collect();
    let n = set.iter().map(|a| a.order()).fold(1, lcm);
    if n == 1 {
        return 1;
    }
    for d in divisors(n) {
        if d % 4 == 2 {
            continue;
        }
        let fixed = (1..n).filter(|k| k % d == 1 % d && gcd(*k, n) == 1).all(|k| {
            set.iter()
                .all(|a| a.galois(k as i64).expect("k is a unit") == **a)
        });
        if fixed {
            return d;
        }
    }
    n
}

/// The p-part of [`conductor`].
pub fn conductor_p<'a, I>(set: I, p: u64) -> u64
where
    I: IntoIterator<Item = &'a CycloNum>,
{
    p_part(conductor(set), p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::parse_cyclo;

    fn c(exprs: &[&str]) -> u64 {
        let v: Vec<CycloNum> = exprs.iter().map(|s| parse_cyclo(s).unwrap()).collect();
        conductor(&v)
    }

    #[test]
    fn examples() {
        assert_eq!(c(&["-1"]), 1);
        assert_eq!(c(&["E(4)"]), 4);
        assert_eq!(c(&["E(6)"]), 3);
        assert_eq!(c(&["E(3)", "E(4)"]), 12);
        let v: Vec<CycloNum> = ["E(8)", "E(3)"].iter().map(|s| parse_cyclo(s).unwrap()).collect();
        assert_eq!(conductor(&v), 24);
        assert_eq!(conductor_p(&v, 2), 8);
        assert_eq!(conductor_p(&[parse_cyclo("E(3)").unwrap()], 2), 1);
        assert_eq!(conductor_p(&[parse_cyclo("E(4)").unwrap()], 2), 4);
    }

    #[test]
    fn agrees_with_minimal_orders() {
        // sqrt(-3) = 2ζ3 + 1 lives in Q(ζ3); sqrt(2) = ζ8 - ζ8^3 in Q(ζ8)
        assert_eq!(c(&["2*E(3)+1"]), 3);
        assert_eq!(c(&["E(8)-E(8)^3"]), 8);
        assert_eq!(c(&["E(8)-E(8)^3", "E(5)+E(5)^4"]), 40);
        assert_eq!(c(&["E(12)^4"]), 3);
    }
}
