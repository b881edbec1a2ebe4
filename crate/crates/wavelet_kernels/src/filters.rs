use crate::{Result, WaveletError};

const DB4: [f64; 8] = [
    0.230377813308897,
    0.714846570552916,
    0.630880767929859,
    -0.027983769416860,
    -0.187034811719093,
    0.030841381835561,
    0.032883011666885,
    -0.010597401785069,
];

const DB5: [f64; 10] = [
    0.160102397974193,
    0.603829269797190,
    0.724308528437773,
    0.138428145901321,
    -0.242294887066382,
    -0.032244869584638,
    0.077571493840046,
    -0.006241490212798,
    -0.012580751999082,
    0.003335725285474,
];

/// Daubechies-K quadrature-mirror filter pair.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveletFamily {
    k: usize,
    h: Vec<f64>,
    g: Vec<f64>,
}

impl WaveletFamily {
    /// Builds a family from scale coefficients; `g` follows from the QMF relation.
    pub fn from_scale_filter(h: Vec<f64>) -> Result<Self> {
        if h.len() < 2 || h.len() % 2 != 0 {
            return Err(WaveletError::InvalidArgument(format!(
                "filter length {} is not a positive even number",
                h.len()
            )));
        }
        let len = h.len();
        let g = (0..len)
            .map(|n| if n % 2 == 0 { h[len - 1 - n] } else { -h[len - 1 - n] })
            .collect();
        Ok(Self { k: len / 2, h, g })
    }

    /// Number of vanishing moments K.
    pub fn k(&self) -> usize {
        self.k
    }

    /// Scale (low-pass) coefficients h_0..h_{2K-1}.
    pub fn h(&self) -> &[f64] {
        &self.h
    }

    /// Wavelet (high-pass) coefficients g_n = (-1)^n h_{2K-1-n}.
    pub fn g(&self) -> &[f64] {
        &self.g
    }

    /// Filter length 2K.
    pub fn len(&self) -> usize {
        self.h.len()
    }

    pub fn is_empty(&self) -> bool {
        self.h.is_empty()
    }

    /// Largest offset 2K-2 at which derivative overlaps are nonzero.
    pub fn overlap_reach(&self) -> usize {
        2 * self.k - 2
    }

    /// Right end 2K-1 of the support of s(x) and w(x).
    pub fn support_end(&self) -> usize {
        2 * self.k - 1
    }

    /// Smallest periodic ring size L = 2(2K-1).
    pub fn min_ring(&self) -> usize {
        2 * (2 * self.k - 1)
    }
}

/// Returns the tabulated Daubechies filter pair for K in {3, 4, 5}.
///
/// K = 3 is evaluated from its closed radical form; K = 4 and K = 5 use
/// 15-digit decimals.
pub fn daubechies_filters(k: usize) -> Result<WaveletFamily> {
    let h = match k {
        3 => {
            let s10 = 10f64.sqrt();
            let q = (5.0 + 2.0 * s10).sqrt();
            let d = 16.0 * 2f64.sqrt();
            vec![
                (1.0 + s10 + q) / d,
                (5.0 + s10 + 3.0 * q) / d,
                (10.0 - 2.0 * s10 + 2.0 * q) / d,
                (10.0 - 2.0 * s10 - 2.0 * q) / d,
                (5.0 + s10 - 3.0 * q) / d,
                (1.0 + s10 - q) / d,
            ]
        }
        4 => DB4.to_vec(),
        5 => DB5.to_vec(),
        other => return Err(WaveletError::UnsupportedFamily(other)),
    };
    WaveletFamily::from_scale_filter(h)
}
