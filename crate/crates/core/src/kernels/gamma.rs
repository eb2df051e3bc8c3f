use num_complex::Complex64;
use std::f64::consts::PI;

const G: f64 = 7.0;
const COEF: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// `log Γ(z)` by the Lanczos approximation, with reflection for `Re z < 1/2`.
pub fn ln_gamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // Γ(z)Γ(1−z) = π / sin(πz)
        let s = (Complex64::from(PI) * z).sin();
        return Complex64::from(PI.ln()) - s.ln() - ln_gamma(Complex64::from(1.0) - z);
    }
    let z = z - 1.0;
    let mut x = Complex64::from(COEF[0]);
    for (i, c) in COEF.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + G + 0.5;
    Complex64::from(0.5 * (2.0 * PI).ln()) + (z + 0.5) * t.ln() - t + x.ln()
}

pub fn gamma(z: Complex64) -> Complex64 {
    ln_gamma(z).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_factorials_and_half() {
        let mut f = 1.0;
        for n in 1..15 {
            let g = gamma(Complex64::new(n as f64, 0.0));
            assert!((g.re - f).abs() / f < 1e-12, "n = {n}");
            assert!(g.im.abs() / f < 1e-12);
            f *= n as f64;
        }
        let h = gamma(Complex64::new(0.5, 0.0));
        assert!((h.re - PI.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn functional_equation_off_axis() {
        let z = Complex64::new(2.3, 1.7);
        let lhs = gamma(z + 1.0);
        let rhs = z * gamma(z);
        assert!((lhs - rhs).norm() / lhs.norm() < 1e-12);
        let w = Complex64::new(-1.4, 0.6);
        let refl = gamma(w) * gamma(Complex64::from(1.0) - w);
        let exact = Complex64::from(PI) / (Complex64::from(PI) * w).sin();
        assert!((refl - exact).norm() / exact.norm() < 1e-11);
    }
}
