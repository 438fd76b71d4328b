//! Output formats for K₀ elements and series of them.

use std::fmt::Write as _;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::lambda_ring::{K0Element, K0Monomial, K0Series, LambdaSymbol};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    Json,
    Latex,
    #[default]
    Text,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "latex" => Ok(Format::Latex),
            "text" => Ok(Format::Text),
            _ => Err(format!(
                "unknown format `{s}` (expected json, latex or text)"
            )),
        }
    }
}

fn json_string(s: &str) -> String {
    serde_json::to_string(s).expect("strings serialize")
}

/// `[{"coeff":c,"monomial":["E","L2 E"]}, ...]` in term order, with each
/// monomial listed factor by factor with repetition.
pub fn element_json(x: &K0Element) -> String {
    let mut out = String::from("[");
    for (i, (m, c)) in x.terms().enumerate() {
        if i > 0 {
            out.push(',');
        }
        let factors: Vec<String> = m.expanded().map(|s| json_string(&s.to_string())).collect();
        write!(
            out,
            "{{\"coeff\":{c},\"monomial\":[{}]}}",
            factors.join(",")
        )
        .expect("string write");
    }
    out.push(']');
    out
}

/// `{"degree":l,"class":[...]}`.
pub fn class_json(degree: usize, x: &K0Element) -> String {
    format!("{{\"degree\":{degree},\"class\":{}}}", element_json(x))
}

/// `{"order":N,"coefficients":[[...],...]}`.
pub fn series_json(s: &K0Series) -> String {
    let coeffs: Vec<String> = s.coeffs().iter().map(element_json).collect();
    format!(
        "{{\"order\":{},\"coefficients\":[{}]}}",
        s.order(),
        coeffs.join(",")
    )
}

fn symbol_latex(s: &LambdaSymbol) -> String {
    if s.degree == 1 {
        format!("[{}]", s.generator)
    } else {
        format!("[\\wedge^{{{}}} {}]", s.degree, s.generator)
    }
}

fn monomial_latex(m: &K0Monomial) -> String {
    if m.is_one() {
        return "[\\mathbf{1}]".to_string();
    }
    m.factors()
        .iter()
        .map(|(s, e)| {
            if *e == 1 {
                symbol_latex(s)
            } else {
                format!("{}^{{{e}}}", symbol_latex(s))
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn element_latex(x: &K0Element) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in x.terms().enumerate() {
        let sign = match (i, c.is_negative()) {
            (0, true) => "-",
            (0, false) => "",
            (_, true) => " - ",
            (_, false) => " + ",
        };
        let mag = c.abs();
        if mag.is_one() {
            write!(out, "{sign}{}", monomial_latex(m))
        } else {
            write!(out, "{sign}{mag}{}", monomial_latex(m))
        }
        .expect("string write");
    }
    out
}

/// A class in the chosen format; `degree` labels JSON output.
pub fn render_class(x: &K0Element, degree: usize, fmt: Format) -> String {
    match fmt {
        Format::Json => class_json(degree, x),
        Format::Latex => element_latex(x),
        Format::Text => x.to_string(),
    }
}

/// A truncated series, one coefficient per line in text and LaTeX.
pub fn render_series(s: &K0Series, fmt: Format) -> String {
    match fmt {
        Format::Json => series_json(s),
        Format::Latex => s
            .coeffs()
            .iter()
            .enumerate()
            .map(|(k, c)| format!("t^{{{k}}}: {}", element_latex(c)))
            .collect::<Vec<_>>()
            .join("\n"),
        Format::Text => s
            .coeffs()
            .iter()
            .enumerate()
            .map(|(k, c)| format!("t^{k}: {c}"))
            .collect::<Vec<_>>()
            .join("\n"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_element;

    #[test]
    fn chern_class_json() {
        let x = parse_element("[1] - [E] + [L2 E]").unwrap();
        assert_eq!(
            class_json(2, &x),
            r#"{"degree":2,"class":[{"coeff":1,"monomial":[]},{"coeff":-1,"monomial":["E"]},{"coeff":1,"monomial":["L2 E"]}]}"#
        );
        assert_eq!(
            class_json(0, &K0Element::zero()),
            r#"{"degree":0,"class":[]}"#
        );
        let sq = parse_element("3*[E]^2").unwrap();
        assert_eq!(element_json(&sq), r#"[{"coeff":3,"monomial":["E","E"]}]"#);
    }

    #[test]
    fn json_is_valid() {
        let x = parse_element("2*[E] - [F] + 3*[L2 E]*[F]").unwrap();
        let v: serde_json::Value = serde_json::from_str(&class_json(1, &x)).unwrap();
        assert_eq!(v["class"].as_array().unwrap().len(), 3);
    }

    #[test]
    fn latex() {
        assert_eq!(element_latex(&K0Element::one()), "[\\mathbf{1}]");
        assert_eq!(element_latex(&K0Element::zero()), "0");
        let x = parse_element("2 - [E] + [L2 E]*[F]^2").unwrap();
        assert_eq!(
            element_latex(&x),
            "2[\\mathbf{1}] - [E] + [\\wedge^{2} E] [F]^{2}"
        );
    }

    #[test]
    fn text_matches_display() {
        let x = parse_element("[E] - 2").unwrap();
        assert_eq!(render_class(&x, 1, Format::Text), x.to_string());
        assert_eq!(render_class(&K0Element::zero(), 3, Format::Text), "0");
    }
}
