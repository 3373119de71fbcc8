//! Read a CSV series, fit it both ways and print the JSON report.
//! Usage: cargo run --example csv_report [-- FILE]

use std::fs::File;

use trendwalk::report::{self, ReportMethod};
use trendwalk::synth::{self, GridSpec, NoiseSpec};

fn main() -> trendwalk::Result<()> {
    let series = match std::env::args().nth(1) {
        Some(path) => report::read_series(
            File::open(&path).map_err(|e| trendwalk::Error::Io(e.to_string()))?,
        )?,
        None => {
            let s = synth::gen_series(
                &GridSpec::unit(24)?,
                1.0,
                0.0,
                &NoiseSpec::gaussian(0.0, 1.0, 1)?,
            )?;
            let mut buf = Vec::new();
            report::write_series(&mut buf, &s)?;
            println!("{}", String::from_utf8_lossy(&buf));
            report::read_series(buf.as_slice())?
        }
    };
    let r = report::trend_report(&series, ReportMethod::Both)?;
    println!("{}", report::to_json(&r)?);
    println!("significant at t=2: {}", r.is_significant(2.0));
    Ok(())
}
