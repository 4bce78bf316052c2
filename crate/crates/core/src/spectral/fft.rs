use std::cell::RefCell;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftDirection, FftPlanner};

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn plan(m: usize, direction: FftDirection) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| p.borrow_mut().plan_fft(m, direction))
}

/// Unnormalized in-place 2D transform of a row-major `m × m` buffer.
///
/// `inverse = false` uses `e^{-i k x}`, `inverse = true` uses `e^{+i k x}`.
pub(crate) fn fft2(buf: &mut [Complex64], m: usize, inverse: bool) {
    debug_assert_eq!(buf.len(), m * m);
    let direction = if inverse {
        FftDirection::Inverse
    } else {
        FftDirection::Forward
    };
    let fft = plan(m, direction);
    let mut scratch = vec![Complex64::new(0.0, 0.0); fft.get_inplace_scratch_len()];
    // rows are contiguous; rustfft processes the buffer in chunks of m
    fft.process_with_scratch(buf, &mut scratch);
    let mut t = vec![Complex64::new(0.0, 0.0); m * m];
    transpose(buf, &mut t, m);
    fft.process_with_scratch(&mut t, &mut scratch);
    transpose(&t, buf, m);
}

fn transpose(src: &[Complex64], dst: &mut [Complex64], m: usize) {
    const BLOCK: usize = 16;
    for ib in (0..m).step_by(BLOCK) {
        for jb in (0..m).step_by(BLOCK) {
            for i in ib..(ib + BLOCK).min(m) {
                for j in jb..(jb + BLOCK).min(m) {
                    dst[j * m + i] = src[i * m + j];
                }
            }
        }
    }
}
