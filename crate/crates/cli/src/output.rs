//! CSV serialization of ensemble statistics.

use std::io::Write;
use std::path::Path;

use qrl_core::EnsembleStatsF64;

use crate::error::CliError;

pub const SIGNIFICANT_DIGITS: usize = 12;

/// Formats `x` like C's `%.{digits}g`: shortest of fixed or exponent form,
/// trailing zeros dropped.
pub fn format_sig(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn csv_header(dual: bool) -> Vec<&'static str> {
    let mut h = vec!["k", "W", "F_e", "F_g", "F_max"];
    if dual {
        h.extend(["F_e_b1", "F_g_b1"]);
    }
    h.extend(["se_W", "se_F_e", "se_F_g", "se_F_max"]);
    h
}

/// Writes the CSV form of `stats` to any writer.
pub fn write_csv<W: Write>(stats: &EnsembleStatsF64, writer: W) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(writer);
    w.write_record(csv_header(stats.dual.is_some()))?;
    let f = |v: f64| format_sig(v, SIGNIFICANT_DIGITS);
    for i in 0..stats.iterations() {
        let mut row = vec![
            (i + 1).to_string(),
            f(stats.w.mean[i]),
            f(stats.f_e.mean[i]),
            f(stats.f_g.mean[i]),
            f(stats.f_max.mean[i]),
        ];
        if let Some(d) = &stats.dual {
            row.push(f(d.f_e.mean[i]));
            row.push(f(d.f_g.mean[i]));
        }
        row.extend([
            f(stats.w.std_err[i]),
            f(stats.f_e.std_err[i]),
            f(stats.f_g.std_err[i]),
            f(stats.f_max.std_err[i]),
        ]);
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn emit_csv(stats: &EnsembleStatsF64, path: &Path) -> Result<(), CliError> {
    let file = std::fs::File::create(path).map_err(|e| CliError::io(path, e))?;
    write_csv(stats, std::io::BufWriter::new(file)).map_err(|e| match e.into_kind() {
        csv::ErrorKind::Io(io) => CliError::io(path, io),
        other => CliError::Data {
            path: path.to_path_buf(),
            message: format!("{other:?}"),
        },
    })
}

/// Reads one named column of a CSV written by [`emit_csv`].
pub fn read_csv_column(path: &Path, column: &str) -> Result<Vec<f64>, CliError> {
    let data_err = |message: String| CliError::Data {
        path: path.to_path_buf(),
        message,
    };
    let mut reader = csv::Reader::from_path(path).map_err(|e| match e.into_kind() {
        csv::ErrorKind::Io(io) => CliError::io(path, io),
        other => data_err(format!("{other:?}")),
    })?;
    let headers = reader
        .headers()
        .map_err(|e| data_err(e.to_string()))?
        .clone();
    let idx = headers
        .iter()
        .position(|h| h == column)
        .ok_or_else(|| data_err(format!("no column `{column}`")))?;
    reader
        .records()
        .enumerate()
        .map(|(row, rec)| {
            let rec = rec.map_err(|e| data_err(e.to_string()))?;
            rec.get(idx)
                .and_then(|v| v.parse::<f64>().ok())
                .ok_or_else(|| data_err(format!("row {}: bad `{column}` value", row + 1)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digit_formatting() {
        assert_eq!(format_sig(3f64.sqrt() / 2.0, 12), "0.866025403784");
        assert_eq!(format_sig(0.9, 12), "0.9");
        assert_eq!(format_sig(1.0, 12), "1");
        assert_eq!(format_sig(0.0, 12), "0");
        assert_eq!(format_sig(0.9f64.powi(100), 12), "2.65613988876e-05");
        assert_eq!(format_sig(0.000123456789012345, 12), "0.000123456789012");
        assert_eq!(format_sig(123.456, 12), "123.456");
        assert_eq!(format_sig(9.9999999999999e-5, 12), "0.0001");
        assert_eq!(format_sig(-0.25, 12), "-0.25");
        assert_eq!(format_sig(1.5e13, 12), "1.5e+13");
    }

    #[test]
    fn header_layout() {
        assert_eq!(
            csv_header(false).join(","),
            "k,W,F_e,F_g,F_max,se_W,se_F_e,se_F_g,se_F_max"
        );
        assert_eq!(
            csv_header(true).join(","),
            "k,W,F_e,F_g,F_max,F_e_b1,F_g_b1,se_W,se_F_e,se_F_g,se_F_max"
        );
    }
}
