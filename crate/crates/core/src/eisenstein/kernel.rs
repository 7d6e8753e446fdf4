//! Inner exponential sums over `d` for a fixed modulus.

use num_complex::Complex64;
use num_integer::Integer;

use crate::arith::{dedekind_sum_scaled, e_of_ratio, e_of_turns, mod_inverse, prime_factors};
use crate::error::{Error, Result};
use crate::par::ComplexSum;

/// How the exponents `r1, rp` enter the phase.
#[derive(Clone, Copy, Debug)]
pub(crate) enum Weights {
    /// `r1 = u1 / den`, `rp = up / den`: phases are exact integer ratios.
    Exact { u1: i128, up: i128, den: i128 },
    /// Real exponents; the Dedekind part of the phase is rounded once.
    Real { r1: f64, rp: f64 },
}

/// Inner sum of the expansion at infinity,
/// `sum_{0 <= d < pc, (d, pc) = 1} e((-n_inf a + (n - n_inf) d)/(pc) - (r1 s(-d,pc) + rp s(-d,c))/2)`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct InftySum {
    pub p: i64,
    pub n_inf: i64,
    pub weights: Weights,
}

impl InftySum {
    /// One value per entry of `ns` plus the number of terms.
    ///
    /// The terms at `d` and `pc - d` are complex conjugates, so only
    /// `d < pc/2` is visited (in ascending order) and the sum is real.
    pub fn sums(&self, c: i64, ns: &[i64]) -> (Vec<Complex64>, usize) {
        self.accumulate(c, ns, true)
    }

    fn accumulate(&self, c: i64, ns: &[i64], paired: bool) -> (Vec<Complex64>, usize) {
        let m = self.p * c;
        let factors: Vec<i64> = prime_factors(m as u64)
            .into_iter()
            .map(|q| q as i64)
            .collect();
        let mut acc = vec![ComplexSum::default(); ns.len()];
        let mut count = 0usize;
        let last = if paired { m / 2 } else { m - 1 };
        for d in 1..=last {
            if factors.iter().any(|q| d % q == 0) {
                continue;
            }
            let twin = paired && 2 * d != m;
            count += if twin { 2 } else { 1 };
            let add = |slot: &mut ComplexSum, z: Complex64| {
                if twin {
                    slot.add(Complex64::new(2.0 * z.re, 0.0));
                } else {
                    slot.add(z);
                }
            };
            // 6m s(d, m) and 6c s(d, c); s(-d, .) = -s(d, .)
            let s1 = dedekind_sum_scaled(d, m);
            let s2 = dedekind_sum_scaled(d, c);
            let a = if self.n_inf != 0 {
                mod_inverse(d, m).expect("coprime")
            } else {
                0
            };
            let lin = -(self.n_inf as i128) * (d as i128 + a as i128);
            match self.weights {
                Weights::Exact { u1, up, den } => {
                    let modulus = 12 * den * m as i128;
                    let base =
                        (12 * den * lin + u1 * s1 + self.p as i128 * up * s2).rem_euclid(modulus);
                    let step = 12 * den * d as i128;
                    for (slot, &n) in acc.iter_mut().zip(ns) {
                        let num = (base + step * n as i128).rem_euclid(modulus);
                        add(slot, e_of_ratio(num, modulus));
                    }
                }
                Weights::Real { r1, rp } => {
                    let dedekind =
                        (r1 * s1 as f64 + self.p as f64 * rp * s2 as f64) / (12.0 * m as f64);
                    for (slot, &n) in acc.iter_mut().zip(ns) {
                        let frac =
                            (lin + n as i128 * d as i128).rem_euclid(m as i128) as f64 / m as f64;
                        add(slot, e_of_turns(frac + dedekind));
                    }
                }
            }
        }
        (acc.iter().map(ComplexSum::value).collect(), count)
    }
}

/// `(a, b)` with `a d - b c = 1`, `p | a + c` and `0 < a + c <= pc`.
pub fn complete_matrix_cusp1(c: i64, d: i64, p: u64) -> Result<(i64, i64)> {
    let pi = p as i64;
    if c <= 0 || d.gcd(&c) != 1 || c.gcd(&pi) != 1 {
        return Err(Error::Precondition(format!(
            "cusp-1 completion needs c > 0, gcd(c, d) = 1 and gcd(c, p) = 1; got c = {c}, d = {d}, p = {p}"
        )));
    }
    let x = mod_inverse(d, c).expect("coprime") as i128; // a = x mod c
    let y = (-c).rem_euclid(pi) as i128; // a = y mod p
                                         // CRT: a = x + c t, c t = y - x (mod p)
    let c_inv_p = mod_inverse(c, pi).expect("coprime") as i128;
    let t = ((y - x).rem_euclid(pi as i128) * c_inv_p).rem_euclid(pi as i128);
    let modulus = pi as i128 * c as i128;
    let a0 = (x + c as i128 * t).rem_euclid(modulus);
    // shift into (-c, pc - c]
    let mut a = a0;
    if a > modulus - c as i128 {
        a -= modulus;
    }
    let num = a * d as i128 - 1;
    debug_assert_eq!(num.rem_euclid(c as i128), 0);
    let b = num / c as i128;
    match (i64::try_from(a), i64::try_from(b)) {
        (Ok(a), Ok(b)) => Ok((a, b)),
        _ => Err(Error::Overflow("completing a matrix for the cusp 1")),
    }
}

/// Inner sum of the expansion at the cusp `1`,
/// `sum_{0 <= d < c m, (c, d) = 1} e(dn/(cm) - n_inf (a+b+d)/(a+c) - (r1 s(-b-d, a+c) + rp s(-b-d, (a+c)/p))/2)`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct OneSum {
    pub p: i64,
    /// `n_inf = v_inf / m_inf` in lowest terms.
    pub v_inf: i128,
    pub m_inf: i64,
    pub u1: i128,
    pub up: i128,
    pub den: i128,
}

impl OneSum {
    pub fn sums(&self, c: i64, ns: &[i64]) -> (Vec<Complex64>, usize) {
        let mut acc = vec![ComplexSum::default(); ns.len()];
        if c.gcd(&self.p) != 1 {
            return (acc.iter().map(ComplexSum::value).collect(), 0);
        }
        let width = c * self.m_inf;
        let den1 = width as i128;
        let mut count = 0usize;
        for d in 0..width {
            if d.gcd(&c) != 1 {
                continue;
            }
            count += 1;
            let (a, b) = complete_matrix_cusp1(c, d, self.p as u64).expect("valid completion");
            let (num2, den2) = self.dedekind_phase(c, d, a, b);
            let modulus = den1 * den2;
            let base = num2 * den1;
            for (slot, &n) in acc.iter_mut().zip(ns) {
                let num1 = (d as i128 * n as i128).rem_euclid(den1);
                let num = (num1 * den2 + base).rem_euclid(modulus);
                slot.add(e_of_ratio(num, modulus));
            }
        }
        (acc.iter().map(ComplexSum::value).collect(), count)
    }

    /// The part of the phase not involving `n`, as `num / den` with `0 <= num < den`,
    /// for the completion `(a, b)` of `(c, d)`.
    pub fn dedekind_phase(&self, c: i64, d: i64, a: i64, b: i64) -> (i128, i128) {
        let big_a = a + c;
        let h = b + d;
        let s = dedekind_sum_scaled(h, big_a);
        let s_p = dedekind_sum_scaled(h, big_a / self.p);
        let m = self.m_inf as i128;
        let den2 = 12 * self.den * big_a as i128 * m;
        let num2 = -12 * self.den * self.v_inf * (a as i128 + b as i128 + d as i128)
            + m * (self.u1 * s + self.p as i128 * self.up * s_p);
        (num2.rem_euclid(den2), den2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn completion_examples() {
        assert_eq!(complete_matrix_cusp1(1, 0, 3).unwrap(), (2, -1));
        assert_eq!(complete_matrix_cusp1(2, 1, 3).unwrap(), (1, 0));
        assert!(complete_matrix_cusp1(3, 1, 3).is_err());
        assert!(complete_matrix_cusp1(4, 2, 3).is_err());
        for p in [2u64, 3, 5, 11] {
            for c in 1..40i64 {
                for d in -50..50i64 {
                    if let Ok((a, b)) = complete_matrix_cusp1(c, d, p) {
                        assert_eq!(a as i128 * d as i128 - b as i128 * c as i128, 1);
                        assert_eq!((a + c) % p as i64, 0);
                        assert!(a + c > 0 && a + c <= p as i64 * c);
                    }
                }
            }
        }
    }

    #[test]
    fn trivial_weights_give_ramanujan_sums() {
        // r1 = r2 = 0 is not a valid eta quotient, but the inner sum is then c_{pc}(n)
        let k = InftySum {
            p: 2,
            n_inf: 0,
            weights: Weights::Exact {
                u1: 0,
                up: 0,
                den: 1,
            },
        };
        let (s, count) = k.sums(3, &[1, 2, 3, 6]);
        assert_eq!(count, 2);
        let expected = [1.0, -1.0, -2.0, 2.0];
        for (z, e) in s.iter().zip(expected) {
            assert!((z.re - e).abs() < 1e-14 && z.im.abs() < 1e-14);
        }
    }

    #[test]
    fn conjugate_pairing_matches_full_sum() {
        let cases = [
            InftySum {
                p: 2,
                n_inf: 1,
                weights: Weights::Exact {
                    u1: 8,
                    up: 8,
                    den: 1,
                },
            },
            InftySum {
                p: 3,
                n_inf: 0,
                weights: Weights::Exact {
                    u1: 27,
                    up: -9,
                    den: 4,
                },
            },
            InftySum {
                p: 11,
                n_inf: 0,
                weights: Weights::Exact {
                    u1: 44,
                    up: -4,
                    den: 9,
                },
            },
            InftySum {
                p: 5,
                n_inf: 2,
                weights: Weights::Exact {
                    u1: 3,
                    up: 9,
                    den: 1,
                },
            },
            InftySum {
                p: 3,
                n_inf: 0,
                weights: Weights::Real {
                    r1: 3.0 * 2.7,
                    rp: -2.7,
                },
            },
        ];
        for k in cases {
            for c in 1..40 {
                let (x, nx) = k.accumulate(c, &[1, 2, 7], true);
                let (y, ny) = k.accumulate(c, &[1, 2, 7], false);
                assert_eq!(nx, ny);
                for (a, b) in x.iter().zip(&y) {
                    assert!((a - b).norm() < 1e-11, "{k:?} c = {c}: {a} vs {b}");
                }
            }
        }
    }

    #[test]
    fn real_weights_match_exact() {
        let exact = InftySum {
            p: 3,
            n_inf: 0,
            weights: Weights::Exact {
                u1: 27,
                up: -9,
                den: 4,
            },
        };
        let real = InftySum {
            p: 3,
            n_inf: 0,
            weights: Weights::Real {
                r1: 27.0 / 4.0,
                rp: -9.0 / 4.0,
            },
        };
        for c in [1, 7, 40] {
            let (x, _) = exact.sums(c, &[1, 2]);
            let (y, _) = real.sums(c, &[1, 2]);
            for (a, b) in x.iter().zip(&y) {
                assert!((a - b).norm() < 1e-10, "c = {c}");
            }
        }
    }
}
