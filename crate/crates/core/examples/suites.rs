//! Run a few property suites on seeded random instances.

use accat::cli::generate::SuiteConfig;
use accat::cli::suite::run_suite;

fn main() -> accat::Result<()> {
    let cfg = SuiteConfig {
        instance_count: 25,
        ..SuiteConfig::default()
    };
    for name in ["pushsieve-acyclic", "pushsieve-oracle", "filtered-colimit", "reflect-acyclic", "generator-counts"] {
        println!("{}", run_suite(name, &cfg)?.summary());
    }
    Ok(())
}
