//! Polynomial and number formatting for the output formats.

use coinrace_core::{Poly, Rational};
use num_traits::{Signed, Zero};

/// Groups the digits of an unsigned decimal string in threes: `1816` → `1,816`.
pub fn group_digits(digits: &str) -> String {
    let mut out = String::with_capacity(digits.len() + digits.len() / 3);
    for (i, ch) in digits.chars().enumerate() {
        if i > 0 && (digits.len() - i).is_multiple_of(3) {
            out.push(',');
        }
        out.push(ch);
    }
    out
}

fn latex_magnitude(c: &Rational) -> String {
    let c = c.abs();
    if c.is_integer() {
        group_digits(&c.numer().to_string())
    } else {
        format!(
            "\\tfrac{{{}}}{{{}}}",
            group_digits(&c.numer().to_string()),
            group_digits(&c.denom().to_string())
        )
    }
}

/// Ascending-power LaTeX body without the surrounding `$`, e.g. `1 - 1,816p^5 + p^{12}`.
pub fn poly_latex(poly: &Poly) -> String {
    if poly.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (power, c) in poly.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let negative = c.is_negative();
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let unit = c.abs() == Rational::from_integer(1.into());
        if power == 0 || !unit {
            out.push_str(&latex_magnitude(c));
        }
        match power {
            0 => {}
            1 => out.push('p'),
            2..=9 => out.push_str(&format!("p^{power}")),
            _ => out.push_str(&format!("p^{{{power}}}")),
        }
    }
    out
}

/// Coefficients as exact decimal strings, lowest power first.
pub fn coeff_strings(poly: &Poly) -> Vec<String> {
    if poly.is_zero() {
        return vec!["0".into()];
    }
    poly.coeffs().iter().map(|c| c.to_string()).collect()
}

pub fn csv_field(value: &str) -> String {
    if value.contains([',', '"', '\n']) {
        format!("\"{}\"", value.replace('"', "\"\""))
    } else {
        value.to_string()
    }
}
