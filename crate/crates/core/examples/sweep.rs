//! Sweeps the coupling through a JSON config and prints CSV, as the
//! `sweep` command does.

use nc_spectra::config::RunConfig;
use nc_spectra::runner::{cmd_sweep, Format, Render};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let config = RunConfig::from_json(
        r#"{
            "topology": "identical-N",
            "particles": [{"mass": 1.0, "omega": 1.0, "c_theta": 0.1, "c_eta": 0.1}],
            "N": 3,
            "command": {"sweep": {"axis": "k", "start": 0.0, "stop": 2.0, "steps": 5}}
        }"#,
    )?;
    print!("{}", cmd_sweep(&config)?.render(Format::Csv));
    Ok(())
}
