//! Boolean functions on F₂ⁿ as truth tables and algebraic normal forms.
//!
//! Index convention, shared by every module in this crate: the point with
//! index `i` has `x_j` equal to bit `n - j` of `i` (bit 0 being the least
//! significant). So `x1` is the most significant bit, index 1 is the point
//! `(0, …, 0, 1)` and index `2ⁿ - 1` is `(1, …, 1)`; the truth table lists
//! the points in lexicographic order.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// Largest number of variables accepted anywhere in the crate (2²⁴ entries).
pub const MAX_VARIABLES: u32 = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoolFunError {
    #[error("truth table length {0} is not 2^n for n >= 1")]
    NonPowerOfTwoLength(usize),
    #[error("{0} variables requested, at most {MAX_VARIABLES} are supported")]
    TooManyVariables(u32),
    #[error("number of variables must be at least 1")]
    NoVariables,
    #[error("parse error at position {position}: {message}")]
    ParseError { position: usize, message: String },
    #[error("variable x{index} out of range for n = {n}")]
    VariableOutOfRange { index: u32, n: u32 },
    #[error("line {line}: {source}")]
    Line {
        line: usize,
        #[source]
        source: Box<BoolFunError>,
    },
    #[error("functions on {0} and {1} variables cannot be combined")]
    VariableCountMismatch(u32, u32),
}

fn parse_error(position: usize, message: impl Into<String>) -> BoolFunError {
    BoolFunError::ParseError {
        position,
        message: message.into(),
    }
}

fn check_variables(n: u32) -> Result<(), BoolFunError> {
    if n == 0 {
        Err(BoolFunError::NoVariables)
    } else if n > MAX_VARIABLES {
        Err(BoolFunError::TooManyVariables(n))
    } else {
        Ok(())
    }
}

/// Value of variable `x_var` (1-based) at point `index` of an `n`-variable space.
#[inline]
pub fn variable_bit(index: usize, var: u32, n: u32) -> bool {
    (index >> (n - var)) & 1 == 1
}

/// In-place binary Möbius transform over F₂. It is an involution, so the same
/// routine maps truth tables to ANF coefficient vectors and back.
pub fn mobius_in_place(values: &mut [bool]) {
    let len = values.len();
    debug_assert!(len.is_power_of_two());
    let mut half = 1;
    while half < len {
        for block in (0..len).step_by(2 * half) {
            for i in block..block + half {
                values[i + half] ^= values[i];
            }
        }
        half <<= 1;
    }
}

/// A Boolean function given by its full truth table.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BooleanFunction {
    n: u32,
    table: Vec<bool>,
}

impl BooleanFunction {
    pub fn from_truth_table(bits: &[bool]) -> Result<Self, BoolFunError> {
        Self::from_vec(bits.to_vec())
    }

    pub fn from_vec(table: Vec<bool>) -> Result<Self, BoolFunError> {
        let len = table.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(BoolFunError::NonPowerOfTwoLength(len));
        }
        let n = len.trailing_zeros();
        check_variables(n)?;
        Ok(Self { n, table })
    }

    /// Builds `f` by evaluating `eval` at every point index.
    pub fn from_fn(n: u32, eval: impl Fn(usize) -> bool) -> Result<Self, BoolFunError> {
        check_variables(n)?;
        Ok(Self {
            n,
            table: (0..1usize << n).map(eval).collect(),
        })
    }

    /// Truth table packed into the low `2ⁿ` bits of an integer, bit `i` holding `f(v_i)`.
    /// Used by the exhaustive enumerators.
    pub fn from_packed(n: u32, packed: u64) -> Result<Self, BoolFunError> {
        if n > 6 {
            return Err(BoolFunError::TooManyVariables(n));
        }
        Self::from_fn(n, |i| (packed >> i) & 1 == 1)
    }

    /// Parses an ASCII bit string such as `00010111`.
    pub fn from_bit_string(text: &str) -> Result<Self, BoolFunError> {
        let bits = text
            .trim()
            .char_indices()
            .map(|(pos, c)| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(parse_error(
                    pos,
                    format!("unexpected character {other:?} in bit string"),
                )),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_vec(bits)
    }

    /// Parses a hexadecimal truth table. Each digit carries four consecutive
    /// truth-table bits, most significant bit first, so `17` is `00010111`.
    pub fn from_hex(text: &str) -> Result<Self, BoolFunError> {
        let text = text.trim();
        let text = text.strip_prefix("0x").unwrap_or(text);
        let mut bits = Vec::with_capacity(text.len() * 4);
        for (pos, c) in text.char_indices() {
            let nibble = c
                .to_digit(16)
                .ok_or_else(|| parse_error(pos, format!("unexpected character {c:?} in hex string")))?;
            bits.extend((0..4).rev().map(|b| (nibble >> b) & 1 == 1));
        }
        Self::from_vec(bits)
    }

    pub fn zero(n: u32) -> Result<Self, BoolFunError> {
        Self::from_fn(n, |_| false)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of points, `2ⁿ`.
    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    #[inline]
    pub fn value(&self, index: usize) -> bool {
        self.table[index]
    }

    pub fn truth_table(&self) -> &[bool] {
        &self.table
    }

    /// Hamming weight `wt(f) = |Ω_f|`.
    pub fn weight(&self) -> u64 {
        self.table.iter().filter(|&&b| b).count() as u64
    }

    /// The support `Ω_f`, ascending.
    pub fn support(&self) -> Vec<u32> {
        self.table
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| i as u32)
            .collect()
    }

    pub fn is_balanced(&self) -> bool {
        self.weight() == (self.len() as u64) / 2
    }

    /// Algebraic degree; 0 for the constants.
    pub fn degree(&self) -> u32 {
        self.to_anf().degree()
    }

    /// `f ⊕ 1`.
    pub fn complement(&self) -> Self {
        Self {
            n: self.n,
            table: self.table.iter().map(|b| !b).collect(),
        }
    }

    pub fn xor(&self, other: &Self) -> Result<Self, BoolFunError> {
        if self.n != other.n {
            return Err(BoolFunError::VariableCountMismatch(self.n, other.n));
        }
        Ok(Self {
            n: self.n,
            table: self.table.iter().zip(&other.table).map(|(a, b)| a ^ b).collect(),
        })
    }

    /// Shifts the input: `x ↦ f(x ⊕ c)`.
    pub fn translate(&self, c: usize) -> Self {
        Self {
            n: self.n,
            table: (0..self.len()).map(|i| self.table[i ^ c]).collect(),
        }
    }

    pub fn to_anf(&self) -> AnfPolynomial {
        let mut coeffs = self.table.clone();
        mobius_in_place(&mut coeffs);
        let n = self.n;
        let monomials = coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c)
            .map(|(mask, _)| Monomial::from_index_mask(mask, n))
            .collect();
        AnfPolynomial { n, monomials }
    }

    pub fn to_bit_string(&self) -> String {
        self.table.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }

    /// Inverse of [`BooleanFunction::from_hex`]; `None` for `n = 1`, which has no whole nibble.
    pub fn to_hex(&self) -> Option<String> {
        if self.n < 2 {
            return None;
        }
        Some(
            self.table
                .chunks(4)
                .map(|c| {
                    let nibble = c.iter().fold(0u32, |acc, &b| (acc << 1) | b as u32);
                    char::from_digit(nibble, 16).expect("nibble < 16")
                })
                .collect(),
        )
    }
}

impl fmt::Debug for BooleanFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BooleanFunction(n={}, {})", self.n, self.to_bit_string())
    }
}

impl fmt::Display for BooleanFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bit_string())
    }
}

/// A monomial `x_{j1} x_{j2} …`, stored with bit `j - 1` set for each `x_j`.
/// The empty monomial is the constant 1.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(u32);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn from_variables(vars: &[u32], n: u32) -> Result<Self, BoolFunError> {
        let mut mask = 0u32;
        for &v in vars {
            if v == 0 || v > n {
                return Err(BoolFunError::VariableOutOfRange { index: v, n });
            }
            mask |= 1 << (v - 1);
        }
        Ok(Monomial(mask))
    }

    fn from_index_mask(mask: usize, n: u32) -> Self {
        let mut m = 0u32;
        for var in 1..=n {
            if variable_bit(mask, var, n) {
                m |= 1 << (var - 1);
            }
        }
        Monomial(m)
    }

    fn to_index_mask(self, n: u32) -> usize {
        self.variables().fold(0usize, |acc, var| acc | (1 << (n - var)))
    }

    pub fn degree(self) -> u32 {
        self.0.count_ones()
    }

    /// Variable indices, ascending, 1-based.
    pub fn variables(self) -> impl Iterator<Item = u32> {
        (0..32).filter(move |b| (self.0 >> b) & 1 == 1).map(|b| b + 1)
    }

    pub fn max_variable(self) -> u32 {
        32 - self.0.leading_zeros()
    }

    /// Product of monomials (`x·x = x`).
    pub fn times(self, other: Monomial) -> Monomial {
        Monomial(self.0 | other.0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.variables().cmp(other.variables()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return f.write_str("1");
        }
        for (i, v) in self.variables().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "x{v}")?;
        }
        Ok(())
    }
}

/// XOR of monomials over `x1..xn`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AnfPolynomial {
    n: u32,
    monomials: BTreeSet<Monomial>,
}

impl AnfPolynomial {
    pub fn zero(n: u32) -> Result<Self, BoolFunError> {
        check_variables(n)?;
        Ok(Self {
            n,
            monomials: BTreeSet::new(),
        })
    }

    /// Builds a polynomial from variable lists; repeated monomials cancel.
    pub fn from_monomials<I, V>(n: u32, monomials: I) -> Result<Self, BoolFunError>
    where
        I: IntoIterator<Item = V>,
        V: AsRef<[u32]>,
    {
        let mut p = Self::zero(n)?;
        for vars in monomials {
            p.toggle(Monomial::from_variables(vars.as_ref(), n)?);
        }
        Ok(p)
    }

    pub fn parse(text: &str, n: u32) -> Result<Self, BoolFunError> {
        parse_anf(text, n)
    }

    fn toggle(&mut self, m: Monomial) {
        if !self.monomials.remove(&m) {
            self.monomials.insert(m);
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn monomials(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.monomials.iter().copied()
    }

    /// Monomials as sorted 1-based variable lists.
    pub fn monomial_sets(&self) -> Vec<Vec<u32>> {
        self.monomials.iter().map(|m| m.variables().collect()).collect()
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn degree(&self) -> u32 {
        self.monomials.iter().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn xor(&self, other: &Self) -> Result<Self, BoolFunError> {
        if self.n != other.n {
            return Err(BoolFunError::VariableCountMismatch(self.n, other.n));
        }
        let monomials = self.monomials.symmetric_difference(&other.monomials).copied().collect();
        Ok(Self { n: self.n, monomials })
    }

    pub fn to_function(&self) -> BooleanFunction {
        let mut table = vec![false; 1usize << self.n];
        for m in &self.monomials {
            table[m.to_index_mask(self.n)] = true;
        }
        mobius_in_place(&mut table);
        BooleanFunction { n: self.n, table }
    }
}

impl fmt::Display for AnfPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.monomials.is_empty() {
            return f.write_str("0");
        }
        for (i, m) in self.monomials.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

/// Parses `+`-separated products such as `x1*x2 + x3 + 1`.
///
/// Grammar: `expr := term ('+' term)*`, `term := factor ('*' factor)*`,
/// `factor := 'x' digits | '1' | '0' | '(' term ')'`. `+` is XOR; products are
/// written with an explicit `*`. Equal monomials cancel pairwise.
pub fn parse_anf(text: &str, n: u32) -> Result<AnfPolynomial, BoolFunError> {
    let mut parser = AnfParser {
        src: text.as_bytes(),
        pos: 0,
        n,
    };
    let mut poly = AnfPolynomial::zero(n)?;
    loop {
        if let Some(m) = parser.term()? {
            poly.toggle(m);
        }
        parser.skip_ws();
        match parser.peek() {
            None => break,
            Some(b'+') => parser.pos += 1,
            Some(c) => {
                return Err(parse_error(
                    parser.pos,
                    format!("expected '+' or end of input, found {:?}", c as char),
                ))
            }
        }
    }
    Ok(poly)
}

struct AnfParser<'a> {
    src: &'a [u8],
    pos: usize,
    n: u32,
}

impl AnfParser<'_> {
    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    /// `None` is the zero product (a factor `0` appeared).
    fn term(&mut self) -> Result<Option<Monomial>, BoolFunError> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            if self.peek() != Some(b'*') {
                return Ok(acc);
            }
            self.pos += 1;
            let rhs = self.factor()?;
            acc = acc.zip(rhs).map(|(a, b)| a.times(b));
        }
    }

    fn factor(&mut self) -> Result<Option<Monomial>, BoolFunError> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some(b'x') | Some(b'X') => {
                self.pos += 1;
                let digits_start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                if digits_start == self.pos {
                    return Err(parse_error(digits_start, "expected variable index after 'x'"));
                }
                let digits = std::str::from_utf8(&self.src[digits_start..self.pos]).expect("ascii digits");
                let index: u32 = digits
                    .parse()
                    .map_err(|_| parse_error(digits_start, "variable index too large"))?;
                Monomial::from_variables(&[index], self.n).map(Some)
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(Some(Monomial::ONE))
            }
            Some(b'0') => {
                self.pos += 1;
                Ok(None)
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.term()?;
                self.skip_ws();
                if self.peek() != Some(b')') {
                    return Err(parse_error(self.pos, "expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) => Err(parse_error(start, format!("unexpected {:?}", c as char))),
            None => Err(parse_error(start, "unexpected end of input")),
        }
    }
}

/// Parses one line of a `.tt` file: `tt:<bits>`, `hex:<hex>` or `anf:<n>:<expr>`.
/// Blank lines and `#` comments give `Ok(None)`.
pub fn parse_tt_line(line: &str) -> Result<Option<BooleanFunction>, BoolFunError> {
    let line = line.trim();
    if line.is_empty() || line.starts_with('#') {
        return Ok(None);
    }
    if let Some(bits) = line.strip_prefix("tt:") {
        return BooleanFunction::from_bit_string(bits).map(Some);
    }
    if let Some(hex) = line.strip_prefix("hex:") {
        return BooleanFunction::from_hex(hex).map(Some);
    }
    if let Some(rest) = line.strip_prefix("anf:") {
        let (n, expr) = rest
            .split_once(':')
            .ok_or_else(|| parse_error(4, "expected anf:<n>:<expression>"))?;
        let n: u32 = n
            .trim()
            .parse()
            .map_err(|_| parse_error(4, format!("invalid variable count {n:?}")))?;
        return parse_anf(expr, n).map(|p| Some(p.to_function()));
    }
    Err(parse_error(0, "expected a tt:, hex: or anf: prefix"))
}

/// Parses a whole `.tt` document, one function per non-comment line.
pub fn parse_tt_file(text: &str) -> Result<Vec<BooleanFunction>, BoolFunError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        match parse_tt_line(line) {
            Ok(Some(f)) => out.push(f),
            Ok(None) => {}
            Err(e) => {
                return Err(BoolFunError::Line {
                    line: i + 1,
                    source: Box::new(e),
                })
            }
        }
    }
    Ok(out)
}
