//! CSV output. Reals are printed with 12 significant digits, lines end in `\n`.

use std::io::{self, Write};

use crate::parity::ParityRecord;
use crate::series::{SeriesValue, SumProfile};

pub const PARITY_HEADER: &str = "n,o,e,D";
pub const SUMS_HEADER: &str = "x,sum_D,M,avg_D,M_over_x";
pub const SERIES_HEADER: &str = "sigma,t,re_F,im_F,error_bound";

/// `printf("%.{digits}g", v)`.
pub fn fmt_sig(v: f64, digits: usize) -> String {
    assert!(digits >= 1);
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return if v.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{:.*e}", digits - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent in scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.unsigned_abs())
    } else {
        let decimals = (digits as i32 - 1 - exp) as usize;
        trim_zeros(&format!("{v:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn sig(v: f64) -> String {
    fmt_sig(v, 12)
}

pub fn write_parity_csv<W: Write + ?Sized>(
    out: &mut W,
    records: impl IntoIterator<Item = ParityRecord>,
) -> io::Result<()> {
    writeln!(out, "{PARITY_HEADER}")?;
    for r in records {
        write_parity_row(out, &r)?;
    }
    Ok(())
}

pub fn write_parity_row<W: Write + ?Sized>(out: &mut W, r: &ParityRecord) -> io::Result<()> {
    writeln!(out, "{},{},{},{}", r.n, r.odd, r.even, r.d())
}

pub fn write_sums_csv<W: Write + ?Sized>(out: &mut W, profile: &SumProfile) -> io::Result<()> {
    writeln!(out, "{SUMS_HEADER}")?;
    for p in &profile.points {
        writeln!(out, "{},{},{},{},{}", p.x, p.sum_d, sig(p.mollified), sig(p.avg_d()), sig(p.mollified_over_x()))?;
    }
    Ok(())
}

pub fn write_series_csv<W: Write + ?Sized>(out: &mut W, values: &[SeriesValue]) -> io::Result<()> {
    writeln!(out, "{SERIES_HEADER}")?;
    for v in values {
        writeln!(
            out,
            "{},{},{},{},{}",
            sig(v.s.re),
            sig(v.s.im),
            sig(v.value.re),
            sig(v.value.im),
            sig(v.error_bound)
        )?;
    }
    Ok(())
}
