//! Parsers for the small value-list language used by sweep flags.
//!
//! Real-valued flags accept a single value, a comma list, or an inclusive
//! range `lo:hi:step`. Integer flags accept a single value, a comma list, or
//! an inclusive range `lo..hi`. Whitespace around tokens is ignored.

/// Hard cap on how many values a single range may expand to.
const MAX_EXPANSION: usize = 100_000;

/// Expands a real-valued spec.
///
/// Range endpoints are inclusive: the last grid point is kept when it lands
/// within `step * 1e-9` of `hi`, and clamped onto `hi` so step roundoff never
/// leaks into the output.
pub fn parse_reals(spec: &str) -> Result<Vec<f64>, String> {
    let spec = spec.trim();
    if spec.is_empty() {
        return Err("empty value list".to_string());
    }
    if spec.contains(',') {
        return spec.split(',').map(real_token).collect();
    }
    if spec.contains(':') {
        let parts: Vec<&str> = spec.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("range '{spec}' must have the form lo:hi:step"));
        }
        let lo = real_token(parts[0])?;
        let hi = real_token(parts[1])?;
        let step = real_token(parts[2])?;
        if step <= 0.0 {
            return Err(format!("step must be positive (got {step})"));
        }
        if hi < lo {
            return Err(format!("range '{spec}' is empty: {hi} < {lo}"));
        }
        let slack = step * 1e-9;
        let mut values = Vec::new();
        for k in 0..=MAX_EXPANSION {
            let v = lo + k as f64 * step;
            if v > hi + slack {
                return Ok(values);
            }
            values.push(if v > hi { hi } else { v });
        }
        return Err(format!(
            "range '{spec}' expands to more than {MAX_EXPANSION} values"
        ));
    }
    Ok(vec![real_token(spec)?])
}

/// Expands an integer spec; `lo..hi` includes both endpoints.
pub fn parse_ints(spec: &str) -> Result<Vec<u32>, String> {
    let spec = spec.trim();
    if spec.is_empty() {
        return Err("empty value list".to_string());
    }
    if spec.contains(',') {
        return spec.split(',').map(int_token).collect();
    }
    if let Some((lo, hi)) = spec.split_once("..") {
        let lo = int_token(lo)?;
        let hi = int_token(hi)?;
        if hi < lo {
            return Err(format!("range '{spec}' is empty: {hi} < {lo}"));
        }
        if (u64::from(hi) - u64::from(lo)) as usize >= MAX_EXPANSION {
            return Err(format!(
                "range '{spec}' expands to more than {MAX_EXPANSION} values"
            ));
        }
        return Ok((lo..=hi).collect());
    }
    Ok(vec![int_token(spec)?])
}

/// Parses `degree:coefficient` pairs, e.g. `-2:0.25,2:0.25`.
///
/// Repeated degrees are summed by the polynomial constructor downstream.
pub fn parse_coeffs(spec: &str) -> Result<Vec<(i64, f64)>, String> {
    let spec = spec.trim();
    if spec.is_empty() {
        return Err("empty coefficient list".to_string());
    }
    spec.split(',')
        .map(|pair| {
            let pair = pair.trim();
            let (degree, coeff) = pair
                .split_once(':')
                .ok_or_else(|| format!("term '{pair}' must have the form degree:coefficient"))?;
            let degree = degree
                .trim()
                .parse::<i64>()
                .map_err(|_| format!("invalid degree '{}'", degree.trim()))?;
            Ok((degree, real_token(coeff)?))
        })
        .collect()
}

fn real_token(token: &str) -> Result<f64, String> {
    let token = token.trim();
    match token.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(format!("invalid real value '{token}'")),
    }
}

fn int_token(token: &str) -> Result<u32, String> {
    let token = token.trim();
    token
        .parse::<u32>()
        .map_err(|_| format!("invalid integer value '{token}'"))
}
