// Writes a catalog code as JSON and CSV, then reads both back.

use fewcosine::forge::io::{self, CodeFile};
use fewcosine::forge::{build_entry, Workbench};
use fewcosine::{Error, Result};

pub fn run(dir: &std::path::Path) -> Result<()> {
    let mut wb = Workbench::new();
    let built = build_entry(&mut wb, "DSC_7_64")?;
    let code = built.code.ok_or(Error::InvalidCode("entry has no spherical code".into()))?;
    let file = CodeFile::from_code(&built.name, &code, built.construction);
    let json_path = dir.join("dsc_7_64.json");
    let csv_path = dir.join("dsc_7_64.csv");
    std::fs::write(&json_path, io::to_json(&file)?)?;
    std::fs::write(&csv_path, io::to_csv(&code))?;
    let from_json = io::read_code(&json_path)?;
    let from_csv = io::read_code(&csv_path)?;
    println!("wrote {} and {}", json_path.display(), csv_path.display());
    println!("cosines {:?}", file.cosines);
    println!("round trip equal: {}", from_json == code && from_csv == code);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run(&std::env::temp_dir())
}
