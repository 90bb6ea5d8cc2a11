//! Command dispatch on the positional command path.

pub mod groupoid;
pub mod numeric;
pub mod period;

use crate::config::RunConfig;
use crate::error::CliError;
use crate::report::Report;
use crate::suite;

pub const COMMANDS: &str =
    "algebroid validate | path build|check | homotopy solve|check|associator | oracle develop|equiv | \
convergence | period verdict|discrete|member|integral | \
groupoid check|compose|morita|two-morphisms|weinstein|associator | paper-suite";

pub fn dispatch(config: &RunConfig) -> Result<Report, CliError> {
    let words: Vec<&str> = config.command.iter().map(String::as_str).collect();
    let action = |name: &str| -> Result<&str, CliError> {
        words
            .get(1)
            .copied()
            .ok_or_else(|| CliError::Usage(format!("`{name}` needs an action; commands: {COMMANDS}")))
    };
    match words.first().copied() {
        Some("algebroid") => numeric::algebroid(config, action("algebroid")?),
        Some("path") => numeric::path(config, action("path")?),
        Some("homotopy") => numeric::homotopy(config, action("homotopy")?),
        Some("oracle") => numeric::oracle(config, action("oracle")?),
        Some("convergence") => numeric::convergence(config),
        Some("period") => period::run(config, action("period")?),
        Some("groupoid") => groupoid::run(config, action("groupoid")?),
        Some("paper-suite") => suite::run(config),
        Some(other) => Err(CliError::Usage(format!("unknown command `{other}`; commands: {COMMANDS}"))),
        None => Err(CliError::Usage(format!("no command given; commands: {COMMANDS}"))),
    }
}
