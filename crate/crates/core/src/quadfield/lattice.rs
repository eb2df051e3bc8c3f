use num_integer::Integer;

/// Hermite normal form `{(a, 0), (b, c)}` of a full-rank lattice in `Z²`,
/// with `a, c > 0` and `0 ≤ b < a`. Returns `None` for degenerate input.
pub(crate) fn hnf2(gens: &[(i128, i128)]) -> Option<(i128, i128, i128)> {
    let mut pivot: Option<(i128, i128)> = None;
    let mut a: i128 = 0;
    for &g in gens {
        if g.1 == 0 {
            a = a.gcd(&g.0);
            continue;
        }
        match pivot {
            None => pivot = Some(g),
            Some(p) => {
                let (mut u, mut v) = (p, g);
                while v.1 != 0 {
                    let q = Integer::div_floor(&u.1, &v.1);
                    let r = (u.0 - q * v.0, u.1 - q * v.1);
                    u = v;
                    v = r;
                }
                // v has zero second coordinate now
                a = a.gcd(&v.0);
                pivot = Some(u);
            }
        }
    }
    let (mut b, mut c) = pivot?;
    if c < 0 {
        b = -b;
        c = -c;
    }
    if a == 0 {
        return None;
    }
    Some((a, b.rem_euclid(a), c))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hnf_of_standard_lattice() {
        assert_eq!(hnf2(&[(1, 0), (0, 1)]), Some((1, 0, 1)));
        assert_eq!(hnf2(&[(2, 0), (3, 1), (0, 2)]), Some((2, 1, 1)));
        assert_eq!(hnf2(&[(4, 0), (6, 2)]), Some((4, 2, 2)));
        assert_eq!(hnf2(&[(1, 1)]), None);
    }

    #[test]
    fn hnf_is_basis_independent() {
        let a = hnf2(&[(6, 0), (4, 2)]).unwrap();
        let b = hnf2(&[(10, 2), (-4, -2), (18, 0)]).unwrap();
        assert_eq!(a, b);
    }
}
