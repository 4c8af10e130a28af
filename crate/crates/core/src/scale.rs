//! Finite equidistant chains of grades with a t-norm and its residuum.
//!
//! A [`Scale`] with `levels = n + 1` holds the grades `0, 1/n, ..., 1`.
//! Grades are stored as integer levels, so the Łukasiewicz and Gödel
//! structures are computed exactly. The product (Goguen) t-norm leaves
//! the chain and is only available on scales built with
//! [`Scale::with_rounding`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest distance from a representable level that strict parsing accepts.
pub const STRICT_TOLERANCE: f64 = 1e-9;

/// Maximum number of fractional digits written for a grade.
pub const MAX_FRACTION_DIGITS: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TNorm {
    /// `max(0, a + b - 1)`
    Lukasiewicz,
    /// `min(a, b)`
    Godel,
    /// `a * b`, rounded half-up back onto the chain.
    Goguen,
}

impl TNorm {
    pub const ALL: [TNorm; 3] = [TNorm::Lukasiewicz, TNorm::Godel, TNorm::Goguen];

    pub fn name(self) -> &'static str {
        match self {
            TNorm::Lukasiewicz => "lukasiewicz",
            TNorm::Godel => "godel",
            TNorm::Goguen => "goguen",
        }
    }
}

impl fmt::Display for TNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TNorm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "lukasiewicz" | "luk" => Ok(TNorm::Lukasiewicz),
            "godel" | "goedel" | "min" | "minimum" => Ok(TNorm::Godel),
            "goguen" | "product" => Ok(TNorm::Goguen),
            other => Err(Error::Config(format!("unknown t-norm `{other}`"))),
        }
    }
}

/// A grade, stored as its level `i` on a chain `0 = g_0 < ... < g_n = 1`.
///
/// A `Grade` does not remember its scale; containers such as
/// [`GradedMatrix`](crate::GradedMatrix) carry the scale and reject
/// operands built on a different one.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
#[serde(transparent)]
#[repr(transparent)]
pub struct Grade(u16);

impl Grade {
    pub const ZERO: Grade = Grade(0);

    pub const fn new(level: u16) -> Self {
        Grade(level)
    }

    pub const fn level(self) -> u16 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// How textual grades that fall between two levels are treated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ParseMode {
    /// Reject values that are not (up to [`STRICT_TOLERANCE`]) on the chain.
    #[default]
    Strict,
    /// Round to the nearest level (half-up).
    Lenient,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Scale {
    top: u16,
    kind: TNorm,
    rounded: bool,
}

impl Scale {
    /// Scale with `levels` equidistant grades. Rejects the product t-norm.
    pub fn new(levels: u32, kind: TNorm) -> Result<Self> {
        if kind == TNorm::Goguen {
            return Err(Error::ProductNotClosed);
        }
        Self::build(levels, kind, false)
    }

    /// Like [`Scale::new`] but allows the product t-norm, whose values are
    /// rounded half-up to the nearest level.
    pub fn with_rounding(levels: u32, kind: TNorm) -> Result<Self> {
        Self::build(levels, kind, kind == TNorm::Goguen)
    }

    /// The two-element chain `{0, 1}`.
    pub fn boolean() -> Self {
        Scale {
            top: 1,
            kind: TNorm::Godel,
            rounded: false,
        }
    }

    fn build(levels: u32, kind: TNorm, rounded: bool) -> Result<Self> {
        if levels < 2 {
            return Err(Error::TooFewLevels(levels));
        }
        let top = u16::try_from(levels - 1).map_err(|_| Error::TooManyLevels(levels))?;
        Ok(Scale { top, kind, rounded })
    }

    /// Number of grades on the chain (`n + 1`).
    pub fn levels(&self) -> u32 {
        u32::from(self.top) + 1
    }

    /// The index `n` of the top grade.
    pub fn max_level(&self) -> u16 {
        self.top
    }

    pub fn kind(&self) -> TNorm {
        self.kind
    }

    pub fn is_rounded(&self) -> bool {
        self.rounded
    }

    pub fn is_boolean(&self) -> bool {
        self.top == 1
    }

    pub fn zero(&self) -> Grade {
        Grade::ZERO
    }

    pub fn one(&self) -> Grade {
        Grade(self.top)
    }

    pub fn grade(&self, level: u16) -> Result<Grade> {
        if level > self.top {
            return Err(Error::NotOnScale {
                value: format!("L{level}"),
                levels: self.levels(),
            });
        }
        Ok(Grade(level))
    }

    pub fn contains(&self, g: Grade) -> bool {
        g.0 <= self.top
    }

    /// All grades in increasing order.
    pub fn grades(&self) -> impl DoubleEndedIterator<Item = Grade> + Clone {
        (0..=self.top).map(Grade)
    }

    /// Numeric value `level / n` of a grade.
    pub fn value(&self, g: Grade) -> f64 {
        f64::from(g.0) / f64::from(self.top)
    }

    pub fn tnorm(&self, a: Grade, b: Grade) -> Grade {
        debug_assert!(self.contains(a) && self.contains(b));
        let n = u32::from(self.top);
        let (x, y) = (u32::from(a.0), u32::from(b.0));
        let level = match self.kind {
            TNorm::Lukasiewicz => (x + y).saturating_sub(n),
            TNorm::Godel => x.min(y),
            // round-half-up of x*y/n
            TNorm::Goguen => (2 * x * y + n) / (2 * n),
        };
        Grade(level as u16)
    }

    /// The residuum `a -> b`, the largest `c` with `a ⊗ c <= b`.
    pub fn residuum(&self, a: Grade, b: Grade) -> Grade {
        debug_assert!(self.contains(a) && self.contains(b));
        if a <= b {
            return self.one();
        }
        match self.kind {
            TNorm::Lukasiewicz => Grade(self.top - a.0 + b.0),
            TNorm::Godel => b,
            TNorm::Goguen => {
                // the rounded product is monotone in c; binary search the
                // largest c with a ⊗ c <= b (c = b always qualifies)
                let (mut lo, mut hi) = (b.0, self.top);
                while lo < hi {
                    let mid = lo + (hi - lo).div_ceil(2);
                    if self.tnorm(a, Grade(mid)) <= b {
                        lo = mid;
                    } else {
                        hi = mid - 1;
                    }
                }
                Grade(lo)
            }
        }
    }

    pub fn meet(&self, a: Grade, b: Grade) -> Grade {
        a.min(b)
    }

    pub fn join(&self, a: Grade, b: Grade) -> Grade {
        a.max(b)
    }

    /// Nearest level to a value in `[0, 1]`, ties rounded up.
    pub fn nearest(&self, x: f64) -> Grade {
        let x = x.clamp(0.0, 1.0);
        Grade((x * f64::from(self.top) + 0.5).floor() as u16)
    }

    /// Canonical decimal rendering: between 2 and 6 fractional digits.
    pub fn format_grade(&self, g: Grade) -> String {
        let mut s = format!("{:.*}", MAX_FRACTION_DIGITS, self.value(g));
        while s.ends_with('0') && s.len() - s.find('.').unwrap_or(0) > 3 {
            s.pop();
        }
        s
    }

    /// Parse a decimal in `[0, 1]` or a level literal such as `L3`.
    pub fn parse_grade(&self, text: &str, mode: ParseMode) -> Result<Grade> {
        let text = text.trim();
        let not_on_scale = || Error::NotOnScale {
            value: text.to_string(),
            levels: self.levels(),
        };
        if let Some(level) = text.strip_prefix(['L', 'l']) {
            let level: u16 = level.parse().map_err(|_| not_on_scale())?;
            return self.grade(level);
        }
        let x: f64 = text.parse().map_err(|_| not_on_scale())?;
        if !x.is_finite() || !(0.0..=1.0).contains(&x) {
            return Err(not_on_scale());
        }
        let g = self.nearest(x);
        match mode {
            ParseMode::Lenient => Ok(g),
            ParseMode::Strict => {
                // canonical output is accepted even when six digits cannot
                // represent the level exactly (e.g. 1/3)
                let exact = (x - self.value(g)).abs() <= STRICT_TOLERANCE;
                if exact || text == self.format_grade(g) {
                    Ok(g)
                } else {
                    Err(not_on_scale())
                }
            }
        }
    }
}

impl fmt::Display for Scale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-level {}", self.levels(), self.kind)?;
        if self.rounded {
            f.write_str(" (rounded)")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn luk(levels: u32) -> Scale {
        Scale::new(levels, TNorm::Lukasiewicz).unwrap()
    }

    fn godel(levels: u32) -> Scale {
        Scale::new(levels, TNorm::Godel).unwrap()
    }

    fn brute_residuum(s: &Scale, a: Grade, b: Grade) -> Grade {
        s.grades().filter(|&c| s.tnorm(a, c) <= b).max().unwrap()
    }

    #[test]
    fn lukasiewicz_product() {
        let s = luk(5);
        assert_eq!(s.tnorm(Grade::new(3), Grade::new(2)), Grade::new(1));
    }

    #[test]
    fn godel_product() {
        let s = godel(5);
        assert_eq!(s.tnorm(Grade::new(3), Grade::new(2)), Grade::new(2));
    }

    #[test]
    fn one_is_neutral() {
        for n in [1u16, 4, 100] {
            for kind in TNorm::ALL {
                let s = Scale::with_rounding(u32::from(n) + 1, kind).unwrap();
                for a in s.grades() {
                    assert_eq!(s.tnorm(a, s.one()), a);
                    assert_eq!(s.tnorm(s.one(), a), a);
                }
            }
        }
    }

    #[test]
    fn residuum_values() {
        let s = luk(5);
        assert_eq!(s.residuum(Grade::new(2), Grade::new(1)), Grade::new(3));
        let g = godel(5);
        assert_eq!(g.residuum(Grade::new(1), Grade::new(3)), Grade::new(4));
        assert_eq!(g.residuum(Grade::new(3), Grade::new(1)), Grade::new(1));
        // frozen against the brute-force maximum
        assert_eq!(
            brute_residuum(&g, Grade::new(1), Grade::new(3)),
            Grade::new(4)
        );
        assert_eq!(
            brute_residuum(&g, Grade::new(3), Grade::new(1)),
            Grade::new(1)
        );
    }

    #[test]
    fn residuum_corner_cases() {
        for kind in TNorm::ALL {
            let s = Scale::with_rounding(5, kind).unwrap();
            for a in s.grades() {
                assert_eq!(s.residuum(a, a), s.one());
                assert_eq!(s.residuum(s.zero(), a), s.one());
            }
        }
    }

    #[test]
    fn residuum_matches_brute_force() {
        for kind in TNorm::ALL {
            for levels in [2, 3, 5, 11] {
                let s = Scale::with_rounding(levels, kind).unwrap();
                for a in s.grades() {
                    for b in s.grades() {
                        assert_eq!(
                            s.residuum(a, b),
                            brute_residuum(&s, a, b),
                            "{s} {a:?} {b:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn meet_and_join() {
        let s = luk(5);
        let (a, b) = (Grade::new(3), Grade::new(2));
        assert_eq!(s.meet(a, b), b);
        assert_eq!(s.join(a, b), a);
        assert_eq!(s.meet(a, s.one()), a);
    }

    #[test]
    fn boolean_chain_is_classical() {
        for kind in TNorm::ALL {
            let s = Scale::with_rounding(2, kind).unwrap();
            for a in [false, true] {
                for b in [false, true] {
                    let (ga, gb) = (Grade::new(a as u16), Grade::new(b as u16));
                    assert_eq!(s.tnorm(ga, gb).level() == 1, a && b);
                    assert_eq!(s.residuum(ga, gb).level() == 1, !a || b);
                }
            }
        }
    }

    #[test]
    fn tnorm_laws_small_chains() {
        for kind in [TNorm::Lukasiewicz, TNorm::Godel] {
            for levels in [2, 3, 5, 8] {
                let s = Scale::new(levels, kind).unwrap();
                for a in s.grades() {
                    for b in s.grades() {
                        assert_eq!(s.tnorm(a, b), s.tnorm(b, a));
                        for c in s.grades() {
                            assert_eq!(s.tnorm(s.tnorm(a, b), c), s.tnorm(a, s.tnorm(b, c)));
                            if b <= c {
                                assert!(s.tnorm(a, b) <= s.tnorm(a, c));
                            }
                            assert_eq!(
                                s.tnorm(a, s.join(b, c)),
                                s.join(s.tnorm(a, b), s.tnorm(a, c))
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn product_requires_rounding() {
        assert!(matches!(
            Scale::new(5, TNorm::Goguen),
            Err(Error::ProductNotClosed)
        ));
        let s = Scale::with_rounding(5, TNorm::Goguen).unwrap();
        // 0.5 * 0.75 = 0.375 -> 0.5 (half-up)
        assert_eq!(s.tnorm(Grade::new(2), Grade::new(3)), Grade::new(2));
        assert!(s.is_rounded());
    }

    #[test]
    fn scale_needs_two_levels() {
        assert!(matches!(luk_err(1), Error::TooFewLevels(1)));
        assert!(matches!(luk_err(70_000), Error::TooManyLevels(_)));
    }

    fn luk_err(levels: u32) -> Error {
        Scale::new(levels, TNorm::Lukasiewicz).unwrap_err()
    }

    #[test]
    fn parse_and_format() {
        let s = luk(5);
        assert_eq!(
            s.parse_grade("0.50", ParseMode::Strict).unwrap(),
            Grade::new(2)
        );
        assert_eq!(
            s.parse_grade("L3", ParseMode::Strict).unwrap(),
            Grade::new(3)
        );
        assert!(s.parse_grade("L5", ParseMode::Strict).is_err());
        assert!(s.parse_grade("0.3", ParseMode::Strict).is_err());
        assert_eq!(
            s.parse_grade("0.3", ParseMode::Lenient).unwrap(),
            Grade::new(1)
        );
        assert!(s.parse_grade("1.5", ParseMode::Lenient).is_err());
        assert!(s.parse_grade("abc", ParseMode::Lenient).is_err());
        assert_eq!(s.format_grade(Grade::new(2)), "0.50");
        assert_eq!(s.format_grade(Grade::new(4)), "1.00");
        let thirds = luk(4);
        assert_eq!(thirds.format_grade(Grade::new(1)), "0.333333");
        assert_eq!(
            thirds.parse_grade("0.333333", ParseMode::Strict).unwrap(),
            Grade::new(1)
        );
        let hundred = luk(101);
        assert_eq!(hundred.format_grade(Grade::new(7)), "0.07");
    }

    #[test]
    fn nearest_rounds_half_up() {
        let s = luk(5);
        assert_eq!(s.nearest(0.625), Grade::new(3));
        assert_eq!(s.nearest(0.62), Grade::new(2));
        assert_eq!(s.nearest(0.0), Grade::ZERO);
        assert_eq!(s.nearest(1.0), s.one());
    }
}
