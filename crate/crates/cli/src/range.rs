//! Parameter lists on the command line.
//!
//! Accepted forms: a single number, a comma-separated list, `start:stop:step`
//! (inclusive of `stop` when it lands on the grid) and `start:stop:log`
//! (ten log-spaced points per decade, both ends included).

pub const LOG_POINTS_PER_DECADE: f64 = 10.0;
const MAX_POINTS: usize = 100_000;

pub fn parse_list(s: &str) -> Result<Vec<f64>, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty parameter list".into());
    }
    if s.contains(':') {
        return parse_range(s);
    }
    s.split(',').map(parse_number).collect()
}

fn parse_number(s: &str) -> Result<f64, String> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| format!("not a number: {s:?}"))?;
    if !v.is_finite() {
        return Err(format!("not a finite number: {s:?}"));
    }
    Ok(v)
}

fn parse_range(s: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("range must be start:stop:step or start:stop:log, got {s:?}"));
    }
    let start = parse_number(parts[0])?;
    let stop = parse_number(parts[1])?;
    if stop < start {
        return Err(format!("range stop {stop} is below start {start}"));
    }
    if parts[2].trim() == "log" {
        if !(start > 0.0) {
            return Err("log range needs a positive start".into());
        }
        let decades = (stop / start).log10();
        let n = (decades * LOG_POINTS_PER_DECADE).round() as usize;
        if n > MAX_POINTS {
            return Err(format!("range {s:?} has too many points"));
        }
        if n == 0 {
            return Ok(vec![start]);
        }
        let (l0, l1) = (start.ln(), stop.ln());
        return Ok((0..=n)
            .map(|i| {
                if i == 0 {
                    start
                } else if i == n {
                    stop
                } else {
                    (l0 + (l1 - l0) * i as f64 / n as f64).exp()
                }
            })
            .collect());
    }
    let step = parse_number(parts[2])?;
    if !(step > 0.0) {
        return Err(format!("range step must be positive, got {step}"));
    }
    let n = ((stop - start) / step + 1e-9).floor();
    if n > MAX_POINTS as f64 {
        return Err(format!("range {s:?} has too many points"));
    }
    // Multiply rather than accumulate so that grid values are as exact as possible.
    Ok((0..=n as usize).map(|i| start + i as f64 * step).collect())
}
