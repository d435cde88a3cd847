//! Writes the bulk/edge dispersion table of the planar model to
//! `dispersion.csv` (or the path given as the first argument), ready for
//! `scripts/plot_dispersion.py`.
//!
//! ```text
//! cargo run --example dispersion -- dispersion.csv
//! ```

use std::f64::consts::PI;
use std::fs::File;

use qwalk::ae::{dispersion_table, AEParams, ModeClass};

fn main() -> qwalk::Result<()> {
    let path = std::env::args().nth(1).unwrap_or_else(|| "dispersion.csv".into());
    let table = dispersion_table(AEParams::new(5.0 * PI / 4.0, PI / 6.0), 1024)?;
    table.write_csv(File::create(&path)?)?;

    let count = |c: ModeClass| table.rows.iter().filter(|r| r.class == c).count();
    println!("wrote {} rows to {path}", table.rows.len());
    println!(
        "positive recurrent {}, transient {}, null recurrent {}",
        count(ModeClass::PositiveRecurrent),
        count(ModeClass::Transient),
        count(ModeClass::NullRecurrent)
    );
    for r in table.rows.iter().step_by(128) {
        let t0 = r.theta0.map_or("-".to_string(), |t| format!("{t:.6}"));
        println!("k = {:.4}  theta_c = {:.6}  theta_0 = {t0}", r.k, r.theta_c);
    }
    Ok(())
}
