//! Evaluation-point syntax: comma-separated `a`, `bi`, `a+bi` or `a-bi`.

use num_complex::Complex64;

fn number(text: &str, item: &str) -> Result<f64, String> {
    let v: f64 = text
        .parse()
        .map_err(|_| format!("malformed number `{text}` in point coordinate `{item}`"))?;
    if !v.is_finite() {
        return Err(format!("point coordinate `{item}` is not finite"));
    }
    Ok(v)
}

/// Index of the sign separating real and imaginary parts, if any.
fn split_index(body: &str) -> Option<usize> {
    let bytes = body.as_bytes();
    (1..bytes.len())
        .rev()
        .find(|&p| matches!(bytes[p], b'+' | b'-') && !matches!(bytes[p - 1], b'e' | b'E'))
}

pub fn parse_coordinate(item: &str) -> Result<Complex64, String> {
    if item.is_empty() {
        return Err("empty coordinate in point list".to_string());
    }
    let Some(body) = item.strip_suffix('i') else {
        return Ok(Complex64::new(number(item, item)?, 0.0));
    };
    match split_index(body) {
        Some(p) => Ok(Complex64::new(
            number(&body[..p], item)?,
            number(&body[p..], item)?,
        )),
        None => Ok(Complex64::new(0.0, number(body, item)?)),
    }
}

/// A parsed point and whether any coordinate was written in complex form.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Point {
    pub coords: Vec<Complex64>,
    pub complex: bool,
}

/// Whitespace is ignored; an empty list is an empty point.
pub fn parse_point(text: &str) -> Result<Point, String> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Ok(Point::default());
    }
    let coords = compact
        .split(',')
        .map(parse_coordinate)
        .collect::<Result<_, _>>()?;
    Ok(Point {
        coords,
        complex: compact.contains('i'),
    })
}
