//! Matrix exponential by scaling and squaring with Padé approximants,
//! following Higham's degree-selection thresholds.

use super::lu::Lu;
use super::{identity, one_norm, CMat};

const THETA_3: f64 = 1.495_585_217_958_292e-2;
const THETA_5: f64 = 2.539_398_330_063_23e-1;
const THETA_7: f64 = 9.504_178_996_162_932e-1;
const THETA_9: f64 = 2.097_847_961_257_068;
const THETA_13: f64 = 5.371_920_351_148_152;

pub fn expm(a: &CMat) -> CMat {
    let norm = one_norm(a);
    if norm <= THETA_9 {
        let coeffs: &[f64] = if norm <= THETA_3 {
            &[120.0, 60.0, 12.0, 1.0]
        } else if norm <= THETA_5 {
            &[30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0]
        } else if norm <= THETA_7 {
            &[17_297_280.0, 8_648_640.0, 1_995_840.0, 277_200.0, 25_200.0, 1_512.0, 56.0, 1.0]
        } else {
            &[
                17_643_225_600.0,
                8_821_612_800.0,
                2_075_673_600.0,
                302_702_400.0,
                30_270_240.0,
                2_162_160.0,
                110_880.0,
                3_960.0,
                90.0,
                1.0,
            ]
        };
        return pade(a, coeffs);
    }
    let squarings = ((norm / THETA_13).log2().ceil() as i32).max(0) as u32;
    let scaled = a.mapv(|z| z * 2f64.powi(-(squarings as i32)));
    let mut result = pade13(&scaled);
    for _ in 0..squarings {
        result = result.dot(&result);
    }
    result
}

/// Padé approximant of odd degree from the coefficient list b0..bm.
fn pade(a: &CMat, b: &[f64]) -> CMat {
    let n = a.nrows();
    let a2 = a.dot(a);
    // U = A * (b3 A2 + b1), V = b2 A2 + b0, iterated in powers of A2
    let mut u_poly = scaled_identity(n, b[1]);
    let mut v_poly = scaled_identity(n, b[0]);
    let mut power = identity(n);
    let mut k = 2;
    while k < b.len() {
        power = power.dot(&a2);
        v_poly += &power.mapv(|z| z * b[k]);
        if k + 1 < b.len() {
            u_poly += &power.mapv(|z| z * b[k + 1]);
        }
        k += 2;
    }
    let u = a.dot(&u_poly);
    solve_pade(&u, &v_poly)
}

fn pade13(a: &CMat) -> CMat {
    const B: [f64; 14] = [
        64_764_752_532_480_000.0,
        32_382_376_266_240_000.0,
        7_771_770_303_897_600.0,
        1_187_353_796_428_800.0,
        129_060_195_264_000.0,
        10_559_470_521_600.0,
        670_442_572_800.0,
        33_522_128_640.0,
        1_323_241_920.0,
        40_840_800.0,
        960_960.0,
        16_380.0,
        182.0,
        1.0,
    ];
    let n = a.nrows();
    let a2 = a.dot(a);
    let a4 = a2.dot(&a2);
    let a6 = a2.dot(&a4);
    let u_inner = a6.mapv(|z| z * B[13]) + a4.mapv(|z| z * B[11]) + a2.mapv(|z| z * B[9]);
    let u_poly = a6.dot(&u_inner)
        + a6.mapv(|z| z * B[7])
        + a4.mapv(|z| z * B[5])
        + a2.mapv(|z| z * B[3])
        + scaled_identity(n, B[1]);
    let u = a.dot(&u_poly);
    let v_inner = a6.mapv(|z| z * B[12]) + a4.mapv(|z| z * B[10]) + a2.mapv(|z| z * B[8]);
    let v = a6.dot(&v_inner)
        + a6.mapv(|z| z * B[6])
        + a4.mapv(|z| z * B[4])
        + a2.mapv(|z| z * B[2])
        + scaled_identity(n, B[0]);
    solve_pade(&u, &v)
}

/// (V - U)^{-1} (V + U)
fn solve_pade(u: &CMat, v: &CMat) -> CMat {
    let numer = v + u;
    let denom = v - u;
    Lu::factor(&denom, 0.0).solve_mat(&numer)
}

fn scaled_identity(n: usize, x: f64) -> CMat {
    identity(n).mapv(|z| z * x)
}
