//! Unit-suffixed numeric arguments (`30um`, `2.5kHz`, `0.15`).

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Length,
    Frequency,
    Power,
}

impl Kind {
    /// Unit names with their power-of-ten exponent.
    fn units(self) -> &'static [(&'static str, i32)] {
        match self {
            Kind::Length => &[
                ("km", 3),
                ("m", 0),
                ("cm", -2),
                ("mm", -3),
                ("um", -6),
                ("µm", -6),
                ("nm", -9),
            ],
            Kind::Frequency => &[("hz", 0), ("khz", 3), ("mhz", 6), ("ghz", 9), ("thz", 12)],
            Kind::Power => &[("w", 0), ("mw", -3), ("kw", 3)],
        }
    }
}

/// Parses `<number>[unit]` into SI. A bare number is already SI.
pub fn parse(text: &str, kind: Kind) -> Result<f64, String> {
    let t = text.trim();
    let split = t
        .char_indices()
        .find(|&(i, c)| c.is_alphabetic() && !is_exponent(t, i))
        .map_or(t.len(), |(i, _)| i);
    let (num, unit) = t.split_at(split);
    let value: f64 = num.trim().parse().map_err(|_| format!("invalid number `{text}`"))?;
    let unit = unit.trim();
    let exp = if unit.is_empty() {
        0
    } else {
        let lower = unit.to_lowercase();
        kind.units()
            .iter()
            .find(|(u, _)| *u == lower)
            .map(|&(_, s)| s)
            .ok_or_else(|| format!("unknown unit `{unit}` in `{text}`"))?
    };
    // dividing by an exact power of ten keeps `30um` == 30e-6
    let v = if exp < 0 {
        value / 10f64.powi(-exp)
    } else {
        value * 10f64.powi(exp)
    };
    if !v.is_finite() {
        return Err(format!("`{text}` is not finite"));
    }
    Ok(v)
}

// `e` in `1e-3` belongs to the number, not a unit
fn is_exponent(t: &str, i: usize) -> bool {
    let b = t.as_bytes();
    if !matches!(b[i], b'e' | b'E') || i == 0 || !b[i - 1].is_ascii_digit() && b[i - 1] != b'.' {
        return false;
    }
    match b.get(i + 1) {
        Some(c) if c.is_ascii_digit() => true,
        Some(b'-' | b'+') => b.get(i + 2).is_some_and(u8::is_ascii_digit),
        _ => false,
    }
}

pub fn length(s: &str) -> Result<f64, String> {
    parse(s, Kind::Length)
}

pub fn frequency(s: &str) -> Result<f64, String> {
    parse(s, Kind::Frequency)
}

pub fn power(s: &str) -> Result<f64, String> {
    parse(s, Kind::Power)
}
