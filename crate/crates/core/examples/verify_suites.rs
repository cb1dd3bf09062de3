//! Runs two seeded verification suites and prints their table.

use caustics::verify::{run, table, VerifyConfig};

fn main() -> caustics::Result<()> {
    let cfg = VerifyConfig::parse("nephroid\ndelay\nseed = 7\ndraws = 10\n")?;
    print!("{}", table(&run(&cfg)?));
    Ok(())
}
