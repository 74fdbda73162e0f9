//! Fixed inputs shared by the benchmarks.

use plateau_core::{parse_anf, BooleanFunction};

/// Majority function on `n` variables (`n` odd gives a balanced function).
pub fn majority(n: u32) -> BooleanFunction {
    BooleanFunction::from_fn(n, |x| x.count_ones() > n / 2).expect("valid n")
}

/// The bent function `x1x2 + x3x4 + …` on an even number of variables.
pub fn inner_product(n: u32) -> BooleanFunction {
    let terms: Vec<String> = (1..=n / 2).map(|i| format!("x{}*x{}", 2 * i - 1, 2 * i)).collect();
    parse_anf(&terms.join(" + "), n).expect("well-formed").to_function()
}

/// A deterministic pseudo-random truth table with `f(0) = 0`.
pub fn scrambled(n: u32) -> BooleanFunction {
    BooleanFunction::from_fn(n, |x| x != 0 && (x.wrapping_mul(0x9E37_79B9) >> 7) & 1 == 1).expect("valid n")
}
