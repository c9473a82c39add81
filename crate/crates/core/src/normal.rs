//! Standard normal density, distribution and quantile functions.
//!
//! Both tails are computed from `erfc` so that probabilities near 0 and 1 keep
//! full relative accuracy. The quantile is Wichura's AS241 (PPND16), relative
//! error around 1e-16.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// φ(z).
pub fn pdf(z: f64) -> f64 {
    (-0.5 * z * z - LN_SQRT_2PI).exp()
}

/// Φ(z).
pub fn cdf(z: f64) -> f64 {
    0.5 * libm::erfc(-z * FRAC_1_SQRT_2)
}

/// 1 - Φ(z), accurate for large positive z.
pub fn sf(z: f64) -> f64 {
    0.5 * libm::erfc(z * FRAC_1_SQRT_2)
}

/// ln(1 - Φ(z)). Switches to the asymptotic Mills-ratio series once `erfc`
/// would underflow.
pub fn ln_sf(z: f64) -> f64 {
    if z < 35.0 {
        return sf(z).ln();
    }
    let w = 1.0 / (z * z);
    // 1 - 1/z² + 3/z⁴ - 15/z⁶ + 105/z⁸ - 945/z¹⁰
    let series = 1.0 + w * (-1.0 + w * (3.0 + w * (-15.0 + w * (105.0 - 945.0 * w))));
    -0.5 * z * z - LN_SQRT_2PI - z.ln() + series.ln()
}

/// ln Φ(z).
pub fn ln_cdf(z: f64) -> f64 {
    ln_sf(-z)
}

/// Φ⁻¹(p) for p in (0, 1). Returns ∓∞ at the endpoints and NaN outside.
pub fn quantile(p: f64) -> f64 {
    if p.is_nan() || !(0.0..=1.0).contains(&p) {
        return f64::NAN;
    }
    if p == 0.0 {
        return f64::NEG_INFINITY;
    }
    if p == 1.0 {
        return f64::INFINITY;
    }
    let q = p - 0.5;
    if q.abs() <= 0.425 {
        let r = 0.180625 - q * q;
        return q * poly(&A, r) / poly(&B, r);
    }
    let tail = if q < 0.0 { p } else { 1.0 - p };
    let x = tail_quantile(tail);
    if q < 0.0 {
        -x
    } else {
        x
    }
}

/// Φ⁻¹(1 - q), computed from the upper-tail probability `q` directly so that
/// no precision is lost forming `1 - q`.
pub fn quantile_upper(q: f64) -> f64 {
    -quantile(q)
}

/// φ(Φ⁻¹(p)), the density at the p-quantile. Zero at p ∈ {0, 1}.
pub fn pdf_at_quantile(p: f64) -> f64 {
    if p <= 0.0 || p >= 1.0 {
        return 0.0;
    }
    pdf(quantile(p))
}

/// φ(Φ⁻¹(1 - q)) from the upper-tail probability.
pub fn pdf_at_upper_quantile(q: f64) -> f64 {
    pdf_at_quantile(q)
}

/// Positive quantile magnitude for a tail probability `r` ≤ 0.075.
fn tail_quantile(r: f64) -> f64 {
    let s = (-r.ln()).sqrt();
    if s <= 5.0 {
        let s = s - 1.6;
        poly(&C, s) / poly(&D, s)
    } else {
        let s = s - 5.0;
        poly(&E, s) / poly(&F, s)
    }
}

#[inline]
fn poly(coef: &[f64; 8], x: f64) -> f64 {
    coef.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

const A: [f64; 8] = [
    3.387_132_872_796_366_608,
    1.331_416_678_917_843_774_5e2,
    1.971_590_950_306_551_442_7e3,
    1.373_169_376_550_946_112_5e4,
    4.592_195_393_154_987_145_7e4,
    6.726_577_092_700_870_085_3e4,
    3.343_057_558_358_812_810_5e4,
    2.509_080_928_730_122_672_7e3,
];
const B: [f64; 8] = [
    1.0,
    4.231_333_070_160_091_125_2e1,
    6.871_870_074_920_579_083e2,
    5.394_196_021_424_751_107_7e3,
    2.121_379_430_158_659_586_7e4,
    3.930_789_580_009_271_061e4,
    2.872_908_573_572_194_267_4e4,
    5.226_495_278_852_854_561e3,
];
const C: [f64; 8] = [
    1.423_437_110_749_683_577_34,
    4.630_337_846_156_545_295_9,
    5.769_497_221_460_691_405_5,
    3.647_848_324_763_204_605_04,
    1.270_458_252_452_368_382_58,
    2.417_807_251_774_506_117_7e-1,
    2.272_384_498_926_918_458_33e-2,
    7.745_450_142_783_414_076_4e-4,
];
const D: [f64; 8] = [
    1.0,
    2.053_191_626_637_758_821_87,
    1.676_384_830_183_803_849_4,
    6.897_673_349_851_000_045_5e-1,
    1.481_039_764_274_800_745_9e-1,
    1.519_866_656_361_645_719_66e-2,
    5.475_938_084_995_344_946e-4,
    1.050_750_071_644_416_843_24e-9,
];
const E: [f64; 8] = [
    6.657_904_643_501_103_777_2,
    5.463_784_911_164_114_369_9,
    1.784_826_539_917_291_335_8,
    2.965_605_718_285_048_912_3e-1,
    2.653_218_952_657_612_309_3e-2,
    1.242_660_947_388_078_438_6e-3,
    2.711_555_568_743_487_578_15e-5,
    2.010_334_399_292_288_132_65e-7,
];
const F: [f64; 8] = [
    1.0,
    5.998_322_065_558_879_376_9e-1,
    1.369_298_809_227_358_053_1e-1,
    1.487_536_129_085_061_485_25e-2,
    7.868_691_311_456_132_591e-4,
    1.846_318_317_510_054_681_8e-5,
    1.421_511_758_316_445_888_7e-7,
    2.044_263_103_389_939_785_64e-15,
];

/// E|Z| for standard normal Z.
pub fn half_normal_mean() -> f64 {
    (2.0 / PI).sqrt()
}

/// sd(|Z|) for standard normal Z.
pub fn half_normal_sd() -> f64 {
    ((PI - 2.0) / PI).sqrt()
}
