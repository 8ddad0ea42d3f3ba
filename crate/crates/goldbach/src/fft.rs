//! Power-of-two complex FFT and the real linear convolution built on it.

use num_complex::Complex64;

/// In-place iterative radix-2 transform. `inverse` conjugates the twiddles
/// and applies the 1/n scale.
pub fn fft_in_place(a: &mut [Complex64], inverse: bool) {
    let n = a.len();
    assert!(n.is_power_of_two(), "fft length must be a power of two");
    if n <= 1 {
        return;
    }

    // bit reversal
    let mut j = 0usize;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j |= bit;
        if i < j {
            a.swap(i, j);
        }
    }

    // twiddles for the full size, reused by striding at each stage
    let sign = if inverse { 1.0 } else { -1.0 };
    let half = n / 2;
    let mut twiddle = Vec::with_capacity(half);
    for k in 0..half {
        let ang = sign * std::f64::consts::TAU * k as f64 / n as f64;
        twiddle.push(Complex64::from_polar(1.0, ang));
    }

    let mut len = 2;
    while len <= n {
        let step = n / len;
        for start in (0..n).step_by(len) {
            for k in 0..len / 2 {
                let w = twiddle[k * step];
                let u = a[start + k];
                let v = a[start + k + len / 2] * w;
                a[start + k] = u + v;
                a[start + k + len / 2] = u - v;
            }
        }
        len <<= 1;
    }

    if inverse {
        let scale = 1.0 / n as f64;
        for x in a.iter_mut() {
            *x *= scale;
        }
    }
}

/// Linear convolution of two real sequences, output length u.len()+v.len()-1.
///
/// Both inputs ride one transform by packing them as real and imaginary
/// parts; the spectra are separated with the conjugate-symmetry split.
pub fn convolve_real(u: &[f64], v: &[f64]) -> Vec<f64> {
    let out_len = u.len() + v.len() - 1;
    let n = out_len.next_power_of_two();
    let mut packed = vec![Complex64::new(0.0, 0.0); n];
    for (i, &x) in u.iter().enumerate() {
        packed[i].re = x;
    }
    for (i, &x) in v.iter().enumerate() {
        packed[i].im = x;
    }
    fft_in_place(&mut packed, false);

    let mut prod = vec![Complex64::new(0.0, 0.0); n];
    for k in 0..n {
        let pk = packed[k];
        let pnk = packed[(n - k) & (n - 1)].conj();
        let uk = (pk + pnk) * 0.5;
        let vk = (pk - pnk) * Complex64::new(0.0, -0.5);
        prod[k] = uk * vk;
    }
    fft_in_place(&mut prod, true);
    prod.truncate(out_len);
    prod.into_iter().map(|z| z.re).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn convolution_matches_schoolbook() {
        let u = [1.0, 2.0, 3.0, 0.5];
        let v = [-1.0, 4.0, 0.25];
        let got = convolve_real(&u, &v);
        let mut want = vec![0.0; u.len() + v.len() - 1];
        for (i, &a) in u.iter().enumerate() {
            for (j, &b) in v.iter().enumerate() {
                want[i + j] += a * b;
            }
        }
        assert_eq!(got.len(), want.len());
        for (g, w) in got.iter().zip(&want) {
            assert!((g - w).abs() < 1e-12, "{got:?} vs {want:?}");
        }
    }

    #[test]
    fn roundtrip_is_identity() {
        let mut state = 0xDEADBEEFu64;
        let mut rand = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        let orig: Vec<Complex64> = (0..256).map(|_| Complex64::new(rand(), rand())).collect();
        let mut a = orig.clone();
        fft_in_place(&mut a, false);
        fft_in_place(&mut a, true);
        for (x, y) in a.iter().zip(&orig) {
            assert!((x - y).norm() < 1e-12);
        }
    }
}
