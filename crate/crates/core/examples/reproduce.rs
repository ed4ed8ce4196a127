//! Runs every stored reproduction and prints its report.

use zariski_torsion::cli::{run_reproduction, Options, REPRODUCTIONS};

fn main() {
    let opts = Options::default();
    let mut failed = 0;
    for name in REPRODUCTIONS {
        match run_reproduction(name, &opts) {
            Ok(rep) => {
                println!("{}", rep.render().split("--- machine").next().unwrap_or_default());
                failed += usize::from(!rep.passed());
            }
            Err(e) => {
                println!("{name}: error: {e}");
                failed += 1;
            }
        }
    }
    std::process::exit(i32::from(failed > 0));
}
