// Rebuilds every row of the summary table and compares the computed
// cosines with the printed ones and with the reduction formula.

use fewcosine::forge::catalog::{self, RowStatus};
use fewcosine::forge::Workbench;
use fewcosine::sphere;
use fewcosine::Result;

pub fn run() -> Result<()> {
    let mut wb = Workbench::new();
    for row in catalog::verify_table1(&mut wb)? {
        let status = match row.status {
            RowStatus::Pass => "ok",
            RowStatus::MismatchWithErratum => "formula",
            RowStatus::Fail => "FAIL",
        };
        println!(
            "{status:>7} {:<22} computed {} printed {}",
            row.symbol,
            sphere::format_cosine_set(&row.computed),
            sphere::format_cosine_set(&row.printed)
        );
        if let Some(note) = &row.note {
            println!("        {note}");
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
