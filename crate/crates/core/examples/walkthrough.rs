//! Run every audit with the default configuration and print the text report.
//! Pass `json` or `tsv` as the first argument for the other formats.

use quadfield_audit::report::{cmd_walkthrough, Format, RunConfig};

fn main() -> quadfield_audit::Result<()> {
    let format: Format = std::env::args().nth(1).as_deref().unwrap_or("text").parse()?;
    let report = cmd_walkthrough(&RunConfig::default())?;
    print!("{}", report.render(format));
    std::process::exit(if report.has_failures() { 1 } else { 0 })
}
