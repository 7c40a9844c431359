use std::fmt::Write;

use super::Format;

pub const CSV_HEADER: &str =
    "quantity,n,p,q,closed_form,numeric,abs_err,rel_err,argmax_t,samples,seed,runtime_ms";

/// One output row. Rows gated by a property rather than by `rel_err` carry
/// `:pass` or `:fail` at the end of `quantity`.
#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub quantity: String,
    pub n: usize,
    pub p: f64,
    pub q: f64,
    pub closed_form: f64,
    pub numeric: f64,
    pub abs_err: f64,
    pub rel_err: f64,
    /// Maximiser for sup rows, otherwise the radius the row is evaluated at.
    pub argmax_t: f64,
    /// Monte Carlo samples behind `numeric`; 0 for deterministic rows.
    pub samples: usize,
    pub seed: u64,
    pub runtime_ms: f64,
    pub passed: bool,
}

fn conjugate(p_or_q: f64) -> f64 {
    if p_or_q == 1.0 {
        f64::INFINITY
    } else if p_or_q.is_infinite() {
        1.0
    } else {
        p_or_q / (p_or_q - 1.0)
    }
}

impl Row {
    fn base(quantity: String, n: usize, closed_form: f64, numeric: f64) -> Self {
        let abs_err = (numeric - closed_form).abs();
        let rel_err = if closed_form == 0.0 {
            abs_err
        } else {
            abs_err / closed_form.abs()
        };
        Self {
            quantity,
            n,
            p: f64::NAN,
            q: f64::NAN,
            closed_form,
            numeric,
            abs_err,
            rel_err,
            argmax_t: 0.0,
            samples: 0,
            seed: 0,
            runtime_ms: 0.0,
            passed: true,
        }
    }

    /// Row gated by `rel_err <= tol`; `rel_err` falls back to `abs_err` when
    /// the closed form is 0.
    pub fn compare(quantity: &str, n: usize, closed_form: f64, numeric: f64, tol: f64) -> Self {
        let mut row = Self::base(quantity.to_string(), n, closed_form, numeric);
        row.passed = row.rel_err <= tol;
        row
    }

    /// Row gated by a property; `closed_form` and `numeric` are the reference
    /// and the measured quantity the property was decided on.
    pub fn property(name: &str, n: usize, closed_form: f64, numeric: f64, passed: bool) -> Self {
        let suffix = if passed { "pass" } else { "fail" };
        let mut row = Self::base(format!("{name}:{suffix}"), n, closed_form, numeric);
        row.passed = passed;
        row
    }

    pub fn with_q(mut self, q: f64) -> Self {
        self.q = q;
        self.p = conjugate(q);
        self
    }

    pub fn with_p(mut self, p: f64) -> Self {
        self.p = p;
        self.q = conjugate(p);
        self
    }

    pub fn at(mut self, t: f64) -> Self {
        self.argmax_t = t;
        self
    }

    pub fn sampled(mut self, samples: usize) -> Self {
        self.samples = samples;
        self
    }
}

/// Shortest round-trip-safe rendering: 17 significant digits in scientific form.
fn num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        format!("{x}")
    }
}

fn json_num(x: f64) -> String {
    if x.is_finite() {
        num(x)
    } else {
        format!("\"{x}\"")
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn json_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// Renders rows as CSV (with [`CSV_HEADER`]) or as a JSON array of objects
/// with the same keys. Non-finite numbers appear as `inf`/`NaN`, quoted in JSON.
pub fn render(rows: &[Row], format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Csv => {
            out.push_str(CSV_HEADER);
            out.push('\n');
            for r in rows {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{},{},{},{}",
                    csv_field(&r.quantity),
                    r.n,
                    num(r.p),
                    num(r.q),
                    num(r.closed_form),
                    num(r.numeric),
                    num(r.abs_err),
                    num(r.rel_err),
                    num(r.argmax_t),
                    r.samples,
                    r.seed,
                    num(r.runtime_ms)
                );
            }
        }
        Format::Json => {
            out.push('[');
            for (i, r) in rows.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                let _ = write!(
                    out,
                    "\n  {{\"quantity\": {}, \"n\": {}, \"p\": {}, \"q\": {}, \"closed_form\": {}, \"numeric\": {}, \
                     \"abs_err\": {}, \"rel_err\": {}, \"argmax_t\": {}, \"samples\": {}, \"seed\": {}, \"runtime_ms\": {}}}",
                    json_string(&r.quantity),
                    r.n,
                    json_num(r.p),
                    json_num(r.q),
                    json_num(r.closed_form),
                    json_num(r.numeric),
                    json_num(r.abs_err),
                    json_num(r.rel_err),
                    json_num(r.argmax_t),
                    r.samples,
                    r.seed,
                    json_num(r.runtime_ms)
                );
            }
            if !rows.is_empty() {
                out.push('\n');
            }
            out.push_str("]\n");
        }
    }
    out
}
