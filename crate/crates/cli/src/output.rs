use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use rug::Float;
use rzl_core::mpcore::format_float;

/// CSV writer on `out`, or on stdout when no path is given.
pub fn csv_writer(out: Option<&Path>) -> io::Result<csv::Writer<Box<dyn Write>>> {
    let sink: Box<dyn Write> = match out {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(io::stdout().lock()),
    };
    Ok(csv::Writer::from_writer(sink))
}

/// `x` with `digits` significant digits.
pub fn big(x: &Float, digits: usize) -> String {
    format_float(x, digits)
}

/// `x` with `digits` significant digits; 17 round-trips any `f64`.
pub fn real(x: f64, digits: usize) -> String {
    format_float(&Float::with_val(53, x), digits)
}

/// Where progress and summary lines go: stderr when CSV takes stdout.
pub fn note(to_stdout: bool, line: &str) {
    if to_stdout {
        println!("{line}");
    } else {
        eprintln!("{line}");
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reals_round_trip() {
        for x in [0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 1.1567116437508] {
            assert_eq!(real(x, 17).parse::<f64>().unwrap(), x);
        }
        assert_eq!(real(0.0, 17), "0");
        assert_eq!(real(f64::INFINITY, 17), "inf");
    }
}
